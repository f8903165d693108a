"""Regenerate the shipped Poincare homology sphere facet list.

The 600-cell has the binary icosahedral group I* as its vertex set, and
left multiplication by I* acts freely on it.  The barycentric subdivision
of the 600-cell descends to a regular cell structure Q on S^3/I*; its
barycentric subdivision sd(Q) is a simplicial complex with 2880
tetrahedra.  Bistellar moves then shrink it to a 16-vertex triangulation
with f-vector (16, 106, 180, 90).

Usage: python3 tools/make_poincare.py [seed] > src/plman/data/poincare16.txt
"""

import itertools
import random
import sys
from collections import defaultdict

PHI = (1 + 5 ** 0.5) / 2


def icosians():
    pts = []
    for i in range(4):
        for s in (1, -1):
            v = [0.0] * 4
            v[i] = s
            pts.append(tuple(v))
    for signs in itertools.product((0.5, -0.5), repeat=4):
        pts.append(signs)
    even = [p for p in itertools.permutations(range(4)) if _parity(p) == 0]
    base = (0.0, 0.5, PHI / 2, 1 / (2 * PHI))
    for s1, s2, s3 in itertools.product((1, -1), repeat=3):
        vals = (0.0, s1 * base[1], s2 * base[2], s3 * base[3])
        for p in even:
            pts.append(tuple(vals[p[k]] for k in range(4)))
    assert len(pts) == 120
    return pts


def _parity(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quotient_complex():
    pts = icosians()
    key = {tuple(round(x, 6) for x in p): i for i, p in enumerate(pts)}

    def find(q):
        return key[tuple(round(x, 6) + 0.0 for x in q)]

    mult = [[find(qmul(pts[g], pts[v])) for v in range(120)] for g in range(120)]
    inverse = [next(h for h in range(120) if mult[h][g] == find((1, 0, 0, 0))) for g in range(120)]

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    adj = defaultdict(set)
    for i in range(120):
        for j in range(i + 1, 120):
            if abs(dot(pts[i], pts[j]) - PHI / 2) < 1e-9:
                adj[i].add(j)
                adj[j].add(i)
    tets = set()
    for i in range(120):
        for j in adj[i]:
            for k in adj[i] & adj[j]:
                for m in adj[i] & adj[j] & adj[k]:
                    tets.add(frozenset((i, j, k, m)))
    assert len(tets) == 600

    def canon(flag):
        # flag: tuple of frozensets, increasing; translate the smallest cell to contain 0
        best = None
        for v in flag[0]:
            g = inverse[v]
            image = tuple(tuple(sorted(mult[g][x] for x in cell)) for cell in flag)
            if best is None or image < best:
                best = image
        return best

    orbit_id = {}
    chains = set()
    for tet in tets:
        for order in itertools.permutations(sorted(tet)):
            cells = tuple(frozenset(order[: r + 1]) for r in range(4))
            # cells is a full flag of the 600-cell, i.e. a tetrahedron of sd(600)
            for perm in itertools.permutations(range(4)):
                sub = [tuple(cells[i] for i in sorted(perm[: r + 1])) for r in range(4)]
                labels = []
                for s in sub:
                    c = canon(s)
                    if c not in orbit_id:
                        orbit_id[c] = len(orbit_id)
                    labels.append(orbit_id[c])
                chains.add(tuple(sorted(labels)))
    return chains


def build_maps(tets):
    vt = defaultdict(set)
    et = defaultdict(set)
    tt = defaultdict(set)
    for t in tets:
        for v in t:
            vt[v].add(t)
        for e in itertools.combinations(sorted(t), 2):
            et[frozenset(e)].add(t)
        for f in itertools.combinations(sorted(t), 3):
            tt[frozenset(f)].add(t)
    return vt, et, tt


class Flipper:
    def __init__(self, tets, seed):
        self.tets = set(frozenset(t) for t in tets)
        self.vt, self.et, self.tt = build_maps(self.tets)
        self.rng = random.Random(seed)

    def _add(self, t):
        self.tets.add(t)
        for v in t:
            self.vt[v].add(t)
        for e in itertools.combinations(t, 2):
            self.et[frozenset(e)].add(t)
        for f in itertools.combinations(t, 3):
            self.tt[frozenset(f)].add(t)

    def _remove(self, t):
        self.tets.remove(t)
        for v in t:
            self.vt[v].discard(t)
            if not self.vt[v]:
                del self.vt[v]
        for e in itertools.combinations(t, 2):
            e = frozenset(e)
            self.et[e].discard(t)
            if not self.et[e]:
                del self.et[e]
        for f in itertools.combinations(t, 3):
            f = frozenset(f)
            self.tt[f].discard(t)
            if not self.tt[f]:
                del self.tt[f]

    def try_41(self, v):
        star = self.vt.get(v)
        if not star or len(star) != 4:
            return False
        others = frozenset().union(*star) - {v}
        if len(others) != 4 or others in self.tets:
            return False
        for t in list(star):
            self._remove(t)
        self._add(others)
        return True

    def try_32(self, e):
        star = self.et.get(e)
        if not star or len(star) != 3:
            return False
        tri = frozenset().union(*star) - e
        if len(tri) != 3 or tri in self.tt:
            return False
        for t in list(star):
            self._remove(t)
        for v in e:
            self._add(tri | {v})
        return True

    def try_23(self, f):
        star = self.tt.get(f)
        if not star or len(star) != 2:
            return False
        t1, t2 = star
        d = next(iter(t1 - f))
        e = next(iter(t2 - f))
        de = frozenset((d, e))
        if de in self.et:
            return False
        self._remove(t1)
        self._remove(t2)
        for pair in itertools.combinations(f, 2):
            self._add(frozenset(pair) | de)
        return True

    def f_vector(self):
        return (len(self.vt), len(self.et), len(self.tt), len(self.tets))

    def reduce(self, target_vertices, max_rounds=200000):
        rounds = 0
        while len(self.vt) > target_vertices and rounds < max_rounds:
            rounds += 1
            progressed = False
            for v in sorted(self.vt, key=lambda x: (len(self.vt[x]), x)):
                if self.try_41(v):
                    progressed = True
                    break
            if progressed:
                continue
            edges = sorted((e for e, s in self.et.items() if len(s) == 3), key=sorted)
            self.rng.shuffle(edges)
            for e in edges:
                if self.try_32(e):
                    progressed = True
                    break
            if progressed:
                continue
            # stuck: random 2-3 moves around a low-degree vertex to open up 3-2 moves
            v = min(sorted(self.vt), key=lambda x: (len(self.vt[x]), self.rng.random()))
            faces = [f for t in sorted(self.vt[v], key=sorted) for f in map(frozenset, itertools.combinations(t, 3)) if v in f]
            self.rng.shuffle(faces)
            for f in faces[:2]:
                self.try_23(f)
        return rounds

    def tune_edges(self, target_edges, max_steps=400000):
        # biased random walk over 2-3 / 3-2 moves; vertex count stays fixed
        steps = 0
        while len(self.et) != target_edges and steps < max_steps:
            steps += 1
            p_up = 0.35 if len(self.et) < target_edges + 6 else 0.05
            if self.rng.random() < p_up:
                self.try_23(self.rng.choice(sorted(self.tt, key=sorted)))
            else:
                edges = sorted((e for e, s in self.et.items() if len(s) == 3), key=sorted)
                if edges:
                    self.try_32(self.rng.choice(edges))
        return steps


def relabel(tets):
    verts = sorted(set().union(*tets))
    index = {v: i + 1 for i, v in enumerate(verts)}
    return sorted(tuple(sorted(index[v] for v in t)) for t in tets)


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    chains = quotient_complex()
    print(f"# quotient sd(Q): {len(chains)} tetrahedra", file=sys.stderr)
    flipper = Flipper(chains, seed)
    print("# start", flipper.f_vector(), file=sys.stderr)
    for attempt in range(200):
        flipper.reduce(16)
        print("# reduced", flipper.f_vector(), file=sys.stderr)
        if len(flipper.vt) == 16:
            break
        # random kicks
        for _ in range(50):
            flipper.try_23(flipper.rng.choice(sorted(flipper.tt, key=sorted)))
    flipper.tune_edges(106)
    print("# final", flipper.f_vector(), file=sys.stderr)
    print("# Poincare homology sphere, 16 vertices, f-vector (16, 106, 180, 90)")
    print("# generated by tools/make_poincare.py from the 600-cell quotient by I*")
    for t in relabel(flipper.tets):
        print(" ".join(str(x) for x in t))


if __name__ == "__main__":
    main()
