"""Tietze simplification with a replayable move log.

Moves act on a relator list whose order is kept stable:

* ``eliminate``: relator ``index`` contains generator ``g`` exactly once;
  solve it for g, substitute into every other relator and remove both.
* ``drop``: relator ``index`` is freely trivial.
* ``drop_duplicate``: relator ``index`` is a cyclic permutation of relator
  ``of`` or of its inverse.

Generators keep their original numbers; eliminated ones are recorded
together with the word that replaces them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import GroupPresentation, Word, cyclic_reduce, free_reduce, invert


def _canonical_cyclic(word: Word) -> Word:
    if not word:
        return ()
    best = None
    for w in (word, invert(word)):
        for k in range(len(w)):
            rot = w[k:] + w[:k]
            if best is None or rot < best:
                best = rot
    return best


def _substitute(word: Word, g: int, value: Word) -> Word:
    inv = invert(value)
    out: list[int] = []
    for x in word:
        if x == g:
            out.extend(value)
        elif x == -g:
            out.extend(inv)
        else:
            out.append(x)
    return cyclic_reduce(out)


def _solve_for(relator: Word, g: int) -> Word:
    """The word w with g = w implied by relator = 1 (g occurs once)."""
    pos = next(i for i, x in enumerate(relator) if abs(x) == g)
    rotated = relator[pos:] + relator[:pos]
    rest = rotated[1:]
    # g^e rest = 1
    return free_reduce(invert(rest)) if rotated[0] > 0 else free_reduce(rest)


@dataclass
class _State:
    generators: set[int]
    relators: list[Word]
    moves: list[dict] = field(default_factory=list)
    eliminated: list[tuple[int, Word]] = field(default_factory=list)

    def apply(self, move: dict) -> None:
        kind = move["move"]
        i = move["index"]
        if kind == "drop":
            if self.relators[i]:
                raise ValueError("drop of a nontrivial relator")
            del self.relators[i]
        elif kind == "drop_duplicate":
            j = move["of"]
            if j == i or _canonical_cyclic(self.relators[i]) != _canonical_cyclic(self.relators[j]):
                raise ValueError("relators are not cyclic conjugates")
            del self.relators[i]
        elif kind == "eliminate":
            g = move["generator"]
            r = self.relators[i]
            if g not in self.generators or sum(1 for x in r if abs(x) == g) != 1:
                raise ValueError(f"generator {g} does not occur exactly once in relator {i}")
            value = _solve_for(r, g)
            del self.relators[i]
            self.relators = [_substitute(w, g, value) if any(abs(x) == g for x in w) else w
                             for w in self.relators]
            self.generators.discard(g)
            self.eliminated.append((g, value))
        else:
            raise ValueError(f"unknown move {kind!r}")
        self.moves.append(move)

    def presentation(self, original: GroupPresentation) -> "ReducedPresentation":
        return ReducedPresentation(tuple(sorted(self.generators)), tuple(self.relators),
                                   tuple(self.eliminated), original)


@dataclass(frozen=True)
class ReducedPresentation:
    """A Tietze-equivalent presentation on a subset of the original generators."""

    generators: tuple[int, ...]
    relators: tuple[Word, ...]
    eliminated: tuple[tuple[int, Word], ...]
    original: GroupPresentation = field(repr=False)

    def is_empty(self) -> bool:
        return not self.generators and not self.relators

    def compact(self) -> GroupPresentation:
        """Renumber the surviving generators 1..k."""
        index = {g: k + 1 for k, g in enumerate(self.generators)}
        rels = tuple(tuple((1 if x > 0 else -1) * index[abs(x)] for x in r) for r in self.relators)
        return GroupPresentation(len(self.generators), rels)

    def extend_images(self, images: dict[int, object], mul, inv, identity) -> dict[int, object]:
        """Images of all original generators from images of the survivors."""
        out = dict(images)
        for g, value in reversed(self.eliminated):
            acc = identity
            for x in value:
                acc = mul(acc, out[x] if x > 0 else inv(out[-x]))
            out[g] = acc
        return out


@dataclass(frozen=True)
class TietzeResult:
    reduced: ReducedPresentation
    moves: tuple[dict, ...]
    trivialized: bool
    budget_exhausted: bool


def _cleanup(state: _State, budget: int) -> bool:
    """Drop trivial and duplicate relators; False when the budget runs out."""
    seen: dict[Word, int] = {}
    i = 0
    while i < len(state.relators):
        if len(state.moves) >= budget:
            return False
        w = state.relators[i]
        if not w:
            state.apply({"move": "drop", "index": i})
            continue
        key = _canonical_cyclic(w)
        if key in seen:
            state.apply({"move": "drop_duplicate", "index": i, "of": seen[key]})
            continue
        seen[key] = i
        i += 1
    return True


def _candidates(state: _State):
    counts: dict[int, int] = {}
    for w in state.relators:
        for x in w:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
    for i, w in enumerate(state.relators):
        local: dict[int, int] = {}
        for x in w:
            local[abs(x)] = local.get(abs(x), 0) + 1
        for g, c in local.items():
            if c == 1:
                growth = (len(w) - 2) * (counts[g] - 1)
                yield growth, len(w), i, g


_ORDERINGS = (
    lambda c: (c[0], c[1], c[2], c[3]),
    lambda c: (c[1], c[0], c[2], -c[3]),
    lambda c: (c[0], -c[3], c[2]),
)


def simplify(G: GroupPresentation, budget: int = 5000) -> TietzeResult:
    """Greedy length-reducing elimination, retried under a few tie-break orders."""
    best = None
    used = 0
    for key in _ORDERINGS:
        remaining = budget - used
        if remaining <= 0:
            break
        result = _run(G, remaining, key)
        used += len(result.moves)
        if result.trivialized:
            return result
        if best is None or _size(result.reduced) < _size(best.reduced):
            best = result
    exhausted = used >= budget
    return TietzeResult(best.reduced, best.moves, False, exhausted)


def _size(p: ReducedPresentation) -> tuple[int, int]:
    return (len(p.generators), sum(len(r) for r in p.relators))


def _run(G: GroupPresentation, budget: int, key) -> TietzeResult:
    state = _State(set(range(1, G.generators + 1)), [cyclic_reduce(r) for r in G.relators])
    exhausted = False
    while True:
        if not _cleanup(state, budget):
            exhausted = True
            break
        if not state.generators and not state.relators:
            break
        cands = list(_candidates(state))
        if not cands or len(state.moves) >= budget:
            exhausted = bool(cands)
            break
        _, _, i, g = min(cands, key=key)
        state.apply({"move": "eliminate", "index": i, "generator": g})
    reduced = state.presentation(G)
    return TietzeResult(reduced, tuple(state.moves), reduced.is_empty(), exhausted)


def replay(G: GroupPresentation, moves) -> ReducedPresentation:
    """Re-apply a move log to G from scratch, checking every precondition."""
    state = _State(set(range(1, G.generators + 1)), [cyclic_reduce(r) for r in G.relators])
    for move in moves:
        state.apply(dict(move))
    return state.presentation(G)
