"""Command line front end: plman gen|check|homology|css|obstruct.

Exit codes: 0 success, 2 when ``check`` finds no homology manifold, 1 on
errors.  JSON output uses sorted keys so identical inputs give identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import corpus
from .complex import SimplicialComplex, cone, format_facets, join, read_facets, simplex, sphere, suspension
from .errors import PlmanError
from .homology.chains import simplicial_chain_complex
from .homology.coefficients import CoefficientSystem, parse_coefficients
from .manifold.verdict import Budgets

EXIT_OK, EXIT_ERROR, EXIT_NO = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    coeff: str
    theta: str | None
    budgets: Budgets
    fmt: str
    jobs: int

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        if self.fmt not in ("json", "text"):
            raise ValueError("--format must be json or text")


class UsageError(PlmanError, ValueError):
    pass


# -- helpers -------------------------------------------------------------------


def load_complex(arg: str) -> SimplicialComplex:
    """A facet file path, or a corpus name when no such file exists."""
    if not Path(arg).exists() and arg in corpus.NAMED:
        return corpus.named(arg)
    return read_facets(arg)


def load_model(path: str | None):
    from .css.theta import ThetaModel
    return ThetaModel.load(path) if path else ThetaModel.default()


def coefficients(spec: str) -> CoefficientSystem:
    if spec.startswith("model:"):
        twisted = spec.endswith("-")
        path = spec[len("model:"):].rstrip("-") if twisted else spec[len("model:"):]
        return load_model(path).coefficients(twisted)
    return parse_coefficients(spec)


def emit(data: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _int(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {value!r}") from None


# -- commands ------------------------------------------------------------------


def cmd_gen(name: str, params: list[str]) -> SimplicialComplex:
    if name in ("sphere", "simplex"):
        if len(params) != 1:
            raise UsageError(f"gen {name} takes one dimension")
        d = _int(params[0], "dimension")
        if d < 0:
            raise UsageError("dimension must be nonnegative")
        return sphere(d) if name == "sphere" else simplex(d)
    if name == "cone":
        if len(params) != 1:
            raise UsageError("gen cone takes one facet file")
        return cone(load_complex(params[0]))
    if name == "susp":
        if len(params) not in (1, 2):
            raise UsageError("gen susp takes a facet file and an optional count")
        k = _int(params[1], "suspension count") if len(params) == 2 else 1
        if k < 1:
            raise UsageError("suspension count must be positive")
        return suspension(load_complex(params[0]), k)
    if name == "join":
        if len(params) != 2:
            raise UsageError("gen join takes two facet files")
        return join(load_complex(params[0]), load_complex(params[1]))
    if name in corpus.NAMED:
        if params:
            raise UsageError(f"gen {name} takes no parameters")
        return corpus.named(name)
    raise UsageError(f"unknown corpus name {name!r}")


def cmd_check(K: SimplicialComplex, cfg: RunConfig):
    from .manifold.certify import is_homology_manifold
    report = is_homology_manifold(K, jobs=cfg.jobs, budgets=cfg.budgets)
    data = report.to_json()
    data["budgets"] = _budgets_json(cfg.budgets)
    lines = [
        f"dimension: {report.dimension}",
        f"homology manifold: {'yes' if report.is_homology_manifold else 'no'}",
        f"closed: {'yes' if report.closed else 'no'}",
    ]
    if report.bad_simplices:
        lines.append("bad simplices: " + ", ".join(_fmt_simplex(s) for s in report.bad_simplices))
    if report.singular is not None:
        lines.append("singular vertices: " + (", ".join(str(v) for v in report.singular_vertices) or "none"))
        unknown = [str(v.vertex) for v in report.singular.unknown]
        if unknown:
            lines.append("undecided vertices: " + ", ".join(unknown))
    lines.extend(f"note: {n}" for n in report.notes)
    emit(data, cfg.fmt, "\n".join(lines))
    return EXIT_OK if report.is_homology_manifold else EXIT_NO


def cmd_homology(K: SimplicialComplex, cfg: RunConfig, degree: int | None, cochains: bool):
    A = coefficients(cfg.coeff)
    cover = None
    if A.is_twisted:
        from .cover import orientability_and_double_cover
        _, cover = orientability_and_double_cover(K)
    C = simplicial_chain_complex(K, A, cover, cochains=cochains)
    degrees = [degree] if degree is not None else list(range(K.dim + 1))
    groups = {}
    for d in degrees:
        groups[d] = C.homology(d) if 0 <= d <= K.dim else None
    kind = "cohomology" if cochains else "homology"
    data = {
        "kind": kind,
        "coefficients": A.name,
        "groups": {str(d): (g.to_json() if g else {"free_rank": 0, "torsion": []}) for d, g in groups.items()},
    }
    sym = "H^" if cochains else "H_"
    text = "\n".join(f"{sym}{d}({A.name}) = {g if g else '0'}" for d, g in groups.items())
    emit(data, cfg.fmt, text)
    return EXIT_OK


def cmd_css(K: SimplicialComplex, cfg: RunConfig):
    from .css.report import css_report
    from .manifold.certify import is_homology_manifold
    report = is_homology_manifold(K, jobs=cfg.jobs, singular=False)
    if report.is_homology_manifold and not report.boundary_subcomplex.is_empty():
        return _css_with_boundary(K, cfg, report)
    rep = css_report(K, load_model(cfg.theta), cfg.budgets, report=report, jobs=cfg.jobs)
    data = rep.to_json()
    data["budgets"] = _budgets_json(cfg.budgets)
    lines = [
        f"css support: {', '.join(_fmt_simplex(s) for s in rep.cochain.support()) or 'none'}",
        f"cocycle: {'yes' if rep.is_cocycle else 'no'}",
    ]
    if rep.css is not None:
        lines.append(f"class in H^4 = {rep.css.handle.group}: {list(rep.css.handle.coordinates)}")
    if rep.ksm is not None:
        lines.append(f"ksm support: {', '.join(_fmt_simplex(s) for s in rep.ksm_support()) or 'none'}")
    if rep.obstruction is not None:
        lines.append(f"obstruction: {'nonzero' if not rep.obstruction.is_zero() else 'zero'}"
                     f" in H^5 = {rep.obstruction.group}")
    lines.append(f"duality match: {'yes' if rep.duality else 'no'}")
    lines.extend(f"warning: {w}" for w in rep.cochain.warnings)
    lines.extend(f"note: {n}" for n in rep.notes)
    emit(data, cfg.fmt, "\n".join(lines))
    return EXIT_OK


def _css_with_boundary(K: SimplicialComplex, cfg: RunConfig, report):
    """Manifolds with boundary: only the boundary naturality check is computed."""
    from .css.boundary import boundary_naturality
    rep = boundary_naturality(K, load_model(cfg.theta), cfg.budgets, report=report)
    data = {"dimension": K.dim, "boundary_naturality": rep.to_json(), "budgets": _budgets_json(cfg.budgets)}
    lines = [
        f"relative cycle: {'yes' if rep.relative_cycle else 'no'}",
        f"boundary of the relative chain equals the boundary css chain: {'yes' if rep.matches else 'no'}",
    ]
    lines.extend(f"warning: {w}" for w in rep.warnings)
    emit(data, cfg.fmt, "\n".join(lines))
    return EXIT_OK if rep.holds else EXIT_NO


def _read_cocycle(spec: str, C, degree: int) -> list[int]:
    """``gen:i`` picks a Smith generator of H^degree(K; Z/2); otherwise a JSON file.

    The file holds either a list of values in simplex order or an object
    {"support": [[tokens...], ...]} listing the simplices with value 1.
    """
    if spec.startswith("gen"):
        i = _int(spec.split(":", 1)[1], "generator index") if ":" in spec else 0
        group = C.subquotient(degree).descriptor
        n = group.free_rank + len(group.torsion)
        if not 0 <= i < n:
            raise UsageError(f"H^{degree}(K; Z/2) has {n} generators, index {i} is out of range")
        coords = [1 if j == i else 0 for j in range(n)]
        return C.subquotient(degree).representative(coords)
    try:
        data = json.loads(Path(spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read cocycle file {spec}: {exc}") from None
    if isinstance(data, list):
        if len(data) != C.width(degree):
            raise UsageError(f"cocycle has {len(data)} values, expected {C.width(degree)}")
        return [int(x) % 2 for x in data]
    vec = [0] * C.width(degree)
    for s in data.get("support", []):
        key = tuple(s)
        try:
            vec[C.position(degree, key)] = 1
        except KeyError:
            raise UsageError(f"{list(s)} is not a {degree}-simplex") from None
    return vec


def cmd_obstruct(K: SimplicialComplex, cfg: RunConfig, cocycle: str, degree: int):
    from .css.obstruction import triangulation_obstruction
    if cfg.coeff.startswith("model:"):
        model = load_model(cfg.coeff[len("model:"):])
    else:
        model = load_model(cfg.theta)
    C = simplicial_chain_complex(K, CoefficientSystem.mod(2), cochains=True)
    if degree not in C.labels:
        raise UsageError(f"complex has no {degree}-simplices")
    x = _read_cocycle(cocycle, C, degree)
    rep = triangulation_obstruction(K, x, model, degree, complexes={"C": C})
    data = rep.to_json()
    data["model"] = model.to_json()
    data["ksm_support"] = [[str(t) for t in s] for s, v in zip(C.labels[degree], x) if v]
    text = (f"obstruction in H^{degree + 1}(K; ker rok) = {rep.group}: "
            f"{'nonzero' if not rep.is_zero() else 'zero'} {list(rep.handle.coordinates)}\n"
            f"ksm lifts to the model: {'yes' if rep.liftable else 'no'}")
    emit(data, cfg.fmt, text)
    return EXIT_OK


def _fmt_simplex(s) -> str:
    return "{" + " ".join(str(t) for t in s) + "}"


def _budgets_json(b: Budgets) -> dict:
    return {"tietze_moves": b.tietze_moves, "quotient_bound": b.quotient_bound, "seed": b.seed}


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coeff", default="z", help="z | z2 | zk:<k> | model:<path>; trailing - twists")
    common.add_argument("--theta", help="ThetaModel JSON file (default: free on Poincare, rok 1)")
    common.add_argument("--tietze-budget", type=int, default=5000)
    common.add_argument("--quotient-bound", type=int, default=120)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="plman", description="PL homology manifold toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    g = sub.add_parser("gen", help="write a corpus complex as a facet file")
    g.add_argument("name")
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")
    c = sub.add_parser("check", parents=[common], help="certify a homology manifold")
    c.add_argument("file")
    h = sub.add_parser("homology", parents=[common], help="(co)homology groups")
    h.add_argument("file")
    h.add_argument("degree", nargs="?", type=int)
    h.add_argument("--cohomology", action="store_true")
    s = sub.add_parser("css", parents=[common], help="css cochain, class, ksm and duality")
    s.add_argument("file")
    o = sub.add_parser("obstruct", parents=[common], help="Bockstein obstruction of a Z/2 cocycle")
    o.add_argument("file")
    o.add_argument("--cocycle", default="gen:0", help="gen[:i] or a JSON file")
    o.add_argument("--degree", type=int, default=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            K = cmd_gen(args.name, args.params)
            header = [f"plman gen {' '.join([args.name] + args.params)}", f"f-vector {K.f_vector()}"]
            text = format_facets(K, header)
            if args.output:
                Path(args.output).write_text(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        cfg = RunConfig(args.command, args.file, args.coeff, args.theta,
                        Budgets(args.tietze_budget, args.quotient_bound, args.seed), args.format, args.jobs)
        K = load_complex(args.file)
        if args.command == "check":
            return cmd_check(K, cfg)
        if args.command == "homology":
            return cmd_homology(K, cfg, args.degree, args.cohomology)
        if args.command == "css":
            return cmd_css(K, cfg)
        return cmd_obstruct(K, cfg, args.cocycle, args.degree)
    except (PlmanError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"plman: error: {msg}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
