"""``eea`` command line: gen | analyze | certify | mix | audit.

Exit codes: 0 success, 1 certified false or assertable audit failure,
2 usage or I/O error, 3 inconclusive, 4 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .algebra import DEFAULT_MAX_BITS, EvolutionAlgebra, is_graphicable, is_symmetric
from .audit import run_full_audit
from .constructions import (
    cayley_evolution_algebra,
    complete_algebra,
    cycle_algebra,
    direct_sum,
    kronecker_product,
    normalize_rows,
    petersen_algebra,
    random_regular_algebra,
)
from .errors import EEAError, InconclusiveError, PreconditionError, ResourceCapError
from .expansion import DEFAULT_ENUM_CAP, cheeger, is_h_eea
from .fields import parse_field
from .graphs import connected_components, degrees, diameter, digraph, has_directed_cycle, is_regular, underlying_graph
from .groups import (
    cyclic_group,
    dihedral_group,
    elementary_generating_set,
    generating_set,
    lps_generating_set,
    sl2,
    symmetric_group,
)
from .io import dumps, read_algebra
from .markov import corrected_mixing_bound, is_doubly_stochastic, mixing_simulation, paper_mixing_bound, tmix_bound
from .spectral import is_ramanujan, spectral_gap, symmetric_eigenvalues
from .structure import cover_time, hierarchy_report

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_CAP = 0, 1, 2, 3, 4
FAMILIES = (
    "cycle", "complete", "petersen", "cayley-cyclic", "cayley-dihedral", "cayley-sym",
    "cayley-sl2", "lps", "kron", "dsum", "random-regular",
)
DETAIL_MAX_N = 64


class UsageError(Exception):
    pass


# ------------------------------------------------------------- families


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for family {args.family!r}")
    return v


def _factor(spec: str, field, seed):
    """``cycle:N``, ``complete:N``, ``petersen`` or ``random-regular:N:D``."""
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "cycle" and len(parts) == 2:
            return cycle_algebra(int(parts[1]), field)
        if kind == "complete" and len(parts) == 2:
            return complete_algebra(int(parts[1]), field)
        if kind == "petersen" and len(parts) == 1:
            return petersen_algebra(field)
        if kind == "random-regular" and len(parts) == 3:
            return random_regular_algebra(int(parts[1]), int(parts[2]), seed, field)
    except ValueError as exc:
        raise UsageError(f"bad factor {spec!r}: {exc}") from exc
    raise UsageError(f"bad factor {spec!r}; expected cycle:N, complete:N, petersen or random-regular:N:D")


def build_family(args) -> tuple:
    """``(algebra, factors)``; factors is set for ``kron``."""
    name, field = args.family, args.field
    factors = None
    if name == "cycle":
        A = cycle_algebra(_need(args, "n"), field)
    elif name == "complete":
        A = complete_algebra(_need(args, "n"), field)
    elif name == "petersen":
        A = petersen_algebra(field)
    elif name == "cayley-cyclic":
        n = _need(args, "n")
        G = cyclic_group(n)
        A = cayley_evolution_algebra(G, generating_set(G, [[1 % n]], symmetrize=True), field)
    elif name == "cayley-dihedral":
        n = _need(args, "n")
        G = dihedral_group(n)
        rot = [(i + 1) % n for i in range(n)]
        ref = [(-i) % n for i in range(n)]
        A = cayley_evolution_algebra(G, generating_set(G, [rot, ref], symmetrize=True), field)
    elif name == "cayley-sym":
        m = _need(args, "n")
        G = symmetric_group(m)
        swap = list(range(m))
        swap[0], swap[1] = 1, 0
        cyc = [(i + 1) % m for i in range(m)]
        A = cayley_evolution_algebra(G, generating_set(G, [swap, cyc], symmetrize=True), field)
    elif name == "cayley-sl2":
        G = sl2(_need(args, "p"))
        A = cayley_evolution_algebra(G, elementary_generating_set(G), field)
    elif name == "lps":
        gs = lps_generating_set(_need(args, "p"), _need(args, "q"))
        A = cayley_evolution_algebra(gs.group, gs, field)
    elif name in ("kron", "dsum"):
        if not args.factor or len(args.factor) != 2:
            raise UsageError(f"{name} needs exactly two --factor specs")
        f1, f2 = (_factor(s, field, args.seed) for s in args.factor)
        if name == "kron":
            A, factors = kronecker_product(f1, f2), (f1, f2)
        else:
            A = direct_sum(f1, f2)
    elif name == "random-regular":
        A = random_regular_algebra(_need(args, "n"), _need(args, "d"), args.seed, field)
    else:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if args.stochastic:
        A = normalize_rows(A)
        factors = None
    return A, factors


def _provenance(args) -> dict:
    prov = {"family": args.family, "seed": args.seed, "tool_version": __version__}
    for k in ("n", "d", "p", "q"):
        v = getattr(args, k, None)
        if v is not None:
            prov[k] = v
    if getattr(args, "factor", None):
        prov["factors"] = list(args.factor)
    if getattr(args, "stochastic", False):
        prov["stochastic"] = True
    return prov


def load_input(args) -> tuple:
    has_family = args.family is not None
    has_file = args.input is not None
    if has_family == has_file:
        raise UsageError("give exactly one input source: a family name or --input FILE")
    if has_file:
        try:
            A = read_algebra(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
        except (ValueError, KeyError) as exc:
            raise UsageError(f"cannot parse {args.input}: {exc}") from exc
        if args.stochastic:
            A = normalize_rows(A)
        return A, None
    return build_family(args)


# ------------------------------------------------------------- output


def _emit(text: str, args):
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    return str(v)


def _table(d: dict, prefix: str = "") -> str:
    lines = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict):
            lines.append(_table(v, f"{prefix}{k}.").rstrip("\n"))
        else:
            lines.append(f"{prefix}{k}: {v}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    A, _ = build_family(args)
    if args.format == "dot":
        _emit(underlying_graph(A).to_dot(), args)
    elif args.format in ("json", None):
        _emit(dumps(A, _provenance(args)), args)
    else:
        raise UsageError(f"gen supports --format json or dot, not {args.format}")
    return EXIT_OK


def analyze(A: EvolutionAlgebra, cap: int, max_bits: int) -> dict:
    g = underlying_graph(A)
    comps = connected_components(g)
    degs = degrees(g)
    diam = diameter(g)
    rep = {
        "n": A.n,
        "field": str(A.field),
        "graph": {
            "edges": len(g.edges),
            "connected": len(comps) == 1,
            "components": len(comps),
            "min_degree": min(degs),
            "max_degree": max(degs),
            "regular": is_regular(g),
            "diameter": "inf" if diam == math.inf else diam,
            "nilpotent": not has_directed_cycle(digraph(A)),
        },
        "degraded": [],
    }
    try:
        cert = cheeger(g, cap)
        rep["cheeger"] = cert.to_json()
        if cert.method != "exact-enumeration":
            rep["degraded"].append("exact Cheeger -> spectral bounds")
    except ResourceCapError as exc:
        rep["cheeger"] = {"error": str(exc)}
    if A.field.kind != "prime" and is_symmetric(A):
        spec = symmetric_eigenvalues(A)
        s = spec.to_json()
        if spec.partial:
            rep["degraded"].append("full spectrum -> extreme eigenvalues")
        elif A.n > DETAIL_MAX_N:
            s["eigenvalues"] = s["eigenvalues"][:3] + s["eigenvalues"][-3:]
            rep["degraded"].append(f"eigenvalue listing trimmed to the extremes for n > {DETAIL_MAX_N}")
        rep["spectrum"] = s
        if A.n >= 2:
            rep["spectral_gap"] = spectral_gap(spec)
        if is_graphicable(A) and rep["graph"]["regular"]:
            try:
                rep["ramanujan"] = is_ramanujan(A, spectrum=spec).to_json()
            except PreconditionError as exc:
                rep["ramanujan"] = {"error": str(exc)}
    if A.n <= DETAIL_MAX_N:
        if A.field.exact:
            try:
                h = hierarchy_report(A, max_bits=max_bits)
                rep["persistency"] = {
                    "persistent": list(h.persistent),
                    "transient": list(h.transient),
                    "trivial_hierarchy": h.trivial,
                    "first_absence": {str(r.i): r.first_absence for r in h.records if r.first_absence is not None},
                }
            except ResourceCapError as exc:
                rep["persistency"] = {"error": str(exc)}
        rep["cover_time_combinatorial"] = [cover_time(A, i, "combinatorial", A.n) for i in range(A.n)]
    else:
        rep["cover_time_combinatorial"] = {"0": cover_time(A, 0, "combinatorial", A.n)}
        rep["degraded"].append(f"per-generator detail limited to n <= {DETAIL_MAX_N}")
    return rep


def cmd_analyze(args) -> int:
    A, _ = load_input(args)
    rep = analyze(A, args.cap, args.max_bits)
    _emit(_table(rep) if args.format == "table" else _json(rep), args)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.h is None:
        raise UsageError("certify needs --h")
    try:
        h = Fraction(args.h)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--h must be rational: {exc}") from exc
    A, _ = load_input(args)
    try:
        verdict = is_h_eea(A, h, args.cap)
    except InconclusiveError as exc:
        _emit(_json({"threshold": str(h), "holds": None, "inconclusive": True,
                     "lower": exc.lower, "upper": exc.upper, "method": "spectral-bounds-only"}), args)
        return EXIT_INCONCLUSIVE
    _emit(_json(verdict.to_json()), args)
    return EXIT_OK if verdict.holds else EXIT_FALSE


def cmd_mix(args) -> int:
    A, _ = load_input(args)
    if A.field.kind == "prime" or not is_doubly_stochastic(A):
        raise UsageError("mix needs a doubly stochastic algebra (try --stochastic)")
    k_max = 60 if args.kmax is None else args.kmax
    eps = 0.01 if args.eps is None else args.eps
    trace = mixing_simulation(A, args.start, k_max)
    spec = symmetric_eigenvalues(A)
    corrected = [corrected_mixing_bound(spec, A.n, k) for k in range(k_max + 1)]
    published = None
    h = d = None
    g = underlying_graph(A)
    if A.n <= args.cap:
        c = cheeger(g, args.cap)
        h = c.value if c.method == "exact-enumeration" else None
        d = int(A.nonzero_mask.sum(axis=1).max())
        if h:
            published = [paper_mixing_bound(A.n, h, d, k) for k in range(k_max + 1)]
    tmix = trace.empirical_tmix(eps)
    periodic = A.n > 1 and abs(spec.lambda_min + 1.0) <= 1e-9
    summary = {
        "i": args.start,
        "eps": eps,
        "empirical_tmix": tmix,
        "tmix_bound": tmix_bound(A.n, h, d, eps) if h else None,
        "periodic": periodic,
    }
    if args.format == "json":
        doc = trace.to_json(published, corrected)
        doc.update(summary)
        _emit(_json(doc), args)
    else:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "distance", "paper_bound", "corrected_bound"])
        for k in range(k_max + 1):
            w.writerow([k, repr(trace.distances[k]), repr(published[k]) if published else "", repr(corrected[k])])
        text = buf.getvalue()
        _emit(text, args)
        sys.stderr.write(_json(summary))
    return EXIT_OK


def cmd_audit(args) -> int:
    if args.sweep:
        return _audit_sweep(args)
    A, factors = load_input(args)
    rep = run_full_audit(A, factors=factors, cap=args.cap, k_max=args.kmax)
    if args.format == "table":
        _emit(rep.render_table(), args)
    else:
        _emit(_json(rep.to_json()), args)
    return EXIT_FALSE if rep.assertable_failures else EXIT_OK


def _audit_sweep(args) -> int:
    if args.family is None:
        raise UsageError("--sweep needs a family name")
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["seed", "theorem", "input", "assertable", "lhs", "rhs", "margin"])
    failures = 0
    base = args.seed
    for seed in range(base, base + args.sweep):
        args.seed = seed
        A, factors = build_family(args)
        rep = run_full_audit(A, factors=factors, cap=args.cap, k_max=args.kmax)
        failures += rep.assertable_failures
        for c in rep.findings():
            j = c.to_json()
            w.writerow([seed, c.theorem, c.input, c.assertable, j["lhs"], j["rhs"], j["margin"]])
    args.seed = base
    _emit(buf.getvalue(), args)
    return EXIT_FALSE if failures else EXIT_OK


# ------------------------------------------------------------- parser


def _env_int(name, default):
    v = os.environ.get(name)
    return int(v) if v else default


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("family", nargs="?", help=f"one of: {', '.join(FAMILIES)}")
    common.add_argument("--input", help="algebra JSON file (instead of a family)")
    common.add_argument("--field", type=parse_field, default=parse_field("rational"),
                        help="rational | real | prime:P (default rational)")
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--kmax", type=int)
    common.add_argument("--eps", type=float)
    common.add_argument("--h")
    common.add_argument("--cap", type=int, default=_env_int("EEA_ENUM_CAP", DEFAULT_ENUM_CAP),
                        help="largest n for exact Cheeger enumeration (env EEA_ENUM_CAP)")
    common.add_argument("--max-bits", type=int, default=_env_int("EEA_MAX_BITS", DEFAULT_MAX_BITS),
                        help="bit-length cap for exact plenary powers (env EEA_MAX_BITS)")
    common.add_argument("--format", choices=["json", "table", "dot", "csv"])
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--factor", action="append", help="factor spec for kron/dsum, e.g. cycle:4 (give twice)")
    common.add_argument("--stochastic", action="store_true", help="normalise rows to sum 1")
    common.add_argument("--start", type=int, default=0, help="start generator for mix")
    common.add_argument("--sweep", type=int, default=0, help="audit: run seeds seed..seed+N-1 and emit findings CSV")

    parser = argparse.ArgumentParser(prog="eea", description="Expander evolution algebra toolkit")
    parser.add_argument("--version", action="version", version=f"eea {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, helptext in [
        ("gen", cmd_gen, "build a named algebra and write it as JSON (or DOT)"),
        ("analyze", cmd_analyze, "graph, expansion, spectrum and dynamics report"),
        ("certify", cmd_certify, "decide h(Gamma) >= h; exit 0 true, 1 false, 3 inconclusive"),
        ("mix", cmd_mix, "Markov mixing trace as CSV (k, distance, paper_bound, corrected_bound)"),
        ("audit", cmd_audit, "evaluate every applicable claim; exit 1 only on assertable failures"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cap <= 0 or args.max_bits <= 0:
        sys.stderr.write("eea: caps must be positive\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"eea: {exc}\n")
        return EXIT_USAGE
    except ResourceCapError as exc:
        sys.stderr.write(f"eea: resource cap: {exc}\n")
        return EXIT_CAP
    except InconclusiveError as exc:
        sys.stderr.write(f"eea: inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (EEAError, ValueError, KeyError) as exc:
        sys.stderr.write(f"eea: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
