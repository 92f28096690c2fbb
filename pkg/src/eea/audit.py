"""Quantitative claims about expander evolution algebras, checked on concrete inputs.

Every check is recorded as a :class:`TheoremCheck` oriented as ``lhs <= rhs``
with ``margin = rhs - lhs``.  Checks come in two kinds:

* *assertable* checks follow from standard results and must always hold;
  any failure is a bug and makes the audit exit nonzero;
* *report-only* checks evaluate published constants that admit small
  counterexamples; failures are findings, never errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import EvolutionAlgebra, is_graphicable, is_symmetric
from .constructions import kronecker_product
from .errors import EEAError, ResourceCapError
from .expansion import DEFAULT_ENUM_CAP, cheeger_exact
from .graphs import degrees, diameter, is_connected, is_regular, underlying_graph
from .groups import FiniteGroup
from .markov import (
    corrected_mixing_bound,
    is_doubly_stochastic,
    mixing_simulation,
    paper_mixing_bound,
)
from .spectral import (
    alon_boppana_floor,
    is_ramanujan,
    ramanujan_expansion_lower,
    spectral_gap,
    symmetric_eigenvalues,
)
from .structure import NOT_SIMPLE, decompose, default_k_max, is_simple, persistency, support_trace

FLOAT_TOL = 1e-9
MIXING_TOL = 1e-8
DEFAULT_MIXING_STEPS = 60


@dataclass(frozen=True)
class TheoremCheck:
    """One evaluated inequality ``lhs <= rhs``.

    ``holds`` is ``lhs <= rhs + tol``; ``tol`` is zero for exact comparisons
    and absorbs floating-point noise for spectral ones.
    """

    theorem: str
    hypotheses_met: bool
    lhs: object
    rhs: object
    holds: bool
    assertable: bool
    input: str = ""
    witness: Optional[dict] = None
    tol: float = 0.0
    note: str = ""

    @property
    def margin(self):
        if self.lhs is None or self.rhs is None:
            return None
        if isinstance(self.lhs, float) or isinstance(self.rhs, float):
            return float(self.rhs) - float(self.lhs)
        return self.rhs - self.lhs

    @property
    def failed(self) -> bool:
        return self.hypotheses_met and not self.holds

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "input": self.input,
            "hypotheses_met": self.hypotheses_met,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "margin": _num(self.margin),
            "holds": self.holds,
            "assertable": self.assertable,
            "witness": self.witness,
            "note": self.note,
        }


def _num(v):
    if v is None:
        return None
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _leq(theorem, lhs, rhs, assertable, label, witness=None, tol=0.0, note="") -> TheoremCheck:
    ok = lhs <= rhs + tol if tol else lhs <= rhs
    return TheoremCheck(theorem, True, lhs, rhs, bool(ok), assertable, label, witness, tol, note)


def _skipped(theorem, assertable, label, note) -> TheoremCheck:
    return TheoremCheck(theorem, False, None, None, True, assertable, label, None, 0.0, note)


def _label(algebra: EvolutionAlgebra) -> str:
    return algebra.name or f"algebra(n={algebra.n})"


def _exact_h(algebra, cap):
    """``(h, witness)`` with ``h = None`` for ``+inf``; raises when enumeration is capped."""
    cert = cheeger_exact(underlying_graph(algebra), cap)
    return cert.value, cert.witness


def _constant_weight(algebra: EvolutionAlgebra):
    """Common off-diagonal nonzero value with zero diagonal, or ``None``."""
    M = algebra.matrix
    if any(M[i, i] != 0 for i in range(algebra.n)):
        return None
    vals = {M[i, j] for i, j in zip(*np.nonzero(algebra.nonzero_mask))}
    if len(vals) != 1:
        return None
    c = vals.pop()
    return c if c > 0 else None


# ---------------------------------------------------------------- checks


def check_diameter_bound(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP, log: Callable = math.log) -> TheoremCheck:
    """``diam <= (2 d / h) log n + 1`` with ``d`` the maximum degree."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    if algebra.n < 2 or not is_connected(g):
        return _skipped("Thm4.1", True, label, "needs a connected graph on at least two vertices")
    if g.n > cap:
        return _skipped("Thm4.1", True, label, "exact h unavailable above the enumeration cap")
    h, _ = _exact_h(algebra, cap)
    d = max(degrees(g))
    rhs = 2 * d / float(h) * log(algebra.n) + 1
    return _leq("Thm4.1", diameter(g), rhs, True, label, {"d": d, "h": _num(h)})


def check_support_growth(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP, k_max: Optional[int] = None) -> list:
    """Per generator: the step inequality (assertable) and the closed form (report-only).

    Step: ``(1 + h/d) |S_k| <= |S_{k+1}|`` while ``|S_k| <= n/2``.
    Closed form: ``min(n, (1 + h/d)^k) <= |S_k|`` for every ``k``.
    Both use combinatorial supports, exact rationals, and ``d`` the maximum degree.
    """
    label = _label(algebra)
    g = underlying_graph(algebra)
    if not is_symmetric(algebra) or algebra.n < 2 or not is_connected(g) or g.n > cap:
        return [
            _skipped("Thm4.3-step", True, label, "needs a symmetric connected algebra within the enumeration cap"),
            _skipped("Thm4.3-closed", False, label, "needs a symmetric connected algebra within the enumeration cap"),
        ]
    h, _ = _exact_h(algebra, cap)
    d = max(degrees(g))
    rate = 1 + h / d
    n = algebra.n
    if k_max is None:
        k_max = diameter(g) + 1
    out = []
    for i in range(n):
        sizes = [len(s) for s in support_trace(algebra, i, k_max, "combinatorial").supports]
        step = [(rate * sizes[k], Fraction(sizes[k + 1]), k) for k in range(k_max) if 2 * sizes[k] <= n]
        lhs, rhs, k = min(step, key=lambda t: t[1] - t[0])
        out.append(_leq("Thm4.3-step", lhs, rhs, True, f"{label} e_{i}", {"i": i, "k": k}))
        closed = [(min(Fraction(n), rate**k), Fraction(sizes[k]), k) for k in range(k_max + 1)]
        lhs, rhs, k = min(closed, key=lambda t: t[1] - t[0])
        out.append(_leq("Thm4.3-closed", lhs, rhs, False, f"{label} e_{i}", {"i": i, "k": k}))
    return out


def check_monotone_supports(algebra: EvolutionAlgebra, k_max: Optional[int] = None) -> TheoremCheck:
    """Combinatorial supports are nested and cover within ``diam + 1`` steps."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    if not is_connected(g):
        return _skipped("Cor4.4", True, label, "needs a connected graph")
    diam = diameter(g)
    k_max = diam + 1 if k_max is None else k_max
    worst, nested = 0, True
    for i in range(algebra.n):
        tr = support_trace(algebra, i, k_max, "combinatorial")
        sups = [set(s) for s in tr.supports]
        nested = nested and all(a <= b for a, b in zip(sups, sups[1:]))
        c = tr.cover_step(algebra.n)
        worst = max(worst, c if c is not None else math.inf)
    chk = _leq("Cor4.4", worst, diam + 1, True, label, {"nested": nested})
    if not nested:
        chk = TheoremCheck(chk.theorem, True, chk.lhs, chk.rhs, False, True, label, chk.witness)
    return chk


def check_cheeger_paper(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> list:
    """Both published forms of the weighted Cheeger inequality plus the standard one.

    * ``Cheeger-standard`` (assertable): ``c h^2/(2d) <= gap <= 2 c h``;
    * ``Thm7.2-statement`` (report-only): ``(cd)^2 h^2 / (2 d^2 lambda_1) <= gap <= 2 c h``;
    * ``Thm7.2-proof-end`` (report-only): ``c h^2 / 2 <= gap <= 2 c d h``.
    """
    label = _label(algebra)
    names = [
        ("Cheeger-standard-lower", True), ("Cheeger-standard-upper", True),
        ("Thm7.2-statement-lower", False), ("Thm7.2-statement-upper", False),
        ("Thm7.2-proof-end-lower", False), ("Thm7.2-proof-end-upper", False),
    ]
    g = underlying_graph(algebra)
    c = _constant_weight(algebra) if algebra.field.kind != "prime" else None
    d = is_regular(g)
    if c is None or d is None or d == 0 or not is_symmetric(algebra) or g.n > cap or algebra.n < 2:
        note = "needs a symmetric d-regular algebra with one constant edge weight, zero diagonal, n within the cap"
        return [_skipped(t, a, label, note) for t, a in names]
    h, W = _exact_h(algebra, cap)
    spec = symmetric_eigenvalues(algebra)
    gap = spectral_gap(spec)
    lam1 = spec.lambda1
    c, hf = float(c), float(h)
    wit = {"h": _num(h), "d": d, "c": c, "gap": gap, "subset": list(W or ())}
    return [
        _leq("Cheeger-standard-lower", c * hf * hf / (2 * d), gap, True, label, wit, FLOAT_TOL),
        _leq("Cheeger-standard-upper", gap, 2 * c * hf, True, label, wit, FLOAT_TOL),
        _leq("Thm7.2-statement-lower", (c * d) ** 2 * hf * hf / (2 * d * d * lam1), gap, False, label, wit, FLOAT_TOL),
        _leq("Thm7.2-statement-upper", gap, 2 * c * hf, False, label, wit, FLOAT_TOL),
        _leq("Thm7.2-proof-end-lower", c * hf * hf / 2, gap, False, label, wit, FLOAT_TOL),
        _leq("Thm7.2-proof-end-upper", gap, 2 * c * d * hf, False, label, wit, FLOAT_TOL),
    ]


def check_sandwich(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> list:
    """``(d - lambda_2)/2 <= h <= sqrt(2 d (d - lambda_2))`` on the underlying d-regular graph."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    d = is_regular(g)
    if d is None or g.n < 2 or g.n > cap:
        note = "needs a regular graph on 2..cap vertices"
        return [_skipped("Cheeger-sandwich-lower", True, label, note), _skipped("Cheeger-sandwich-upper", True, label, note)]
    h, _ = _exact_h(algebra, cap)
    lam2 = symmetric_eigenvalues(g).lambda2
    hf = float(h)
    wit = {"d": d, "lambda2": lam2, "h": _num(h)}
    return [
        _leq("Cheeger-sandwich-lower", (d - lam2) / 2, hf, True, label, wit, FLOAT_TOL),
        _leq("Cheeger-sandwich-upper", hf, math.sqrt(max(2 * d * (d - lam2), 0.0)), True, label, wit, FLOAT_TOL),
    ]


def check_trivial_bound(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> TheoremCheck:
    """``h <= d/2`` for graphicable d-regular algebras (report-only)."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    d = is_regular(g)
    if not is_graphicable(algebra) or d is None or g.n < 2 or g.n > cap:
        return _skipped("Thm7.4", False, label, "needs a graphicable regular algebra within the cap")
    h, W = _exact_h(algebra, cap)
    return _leq("Thm7.4", h, Fraction(d, 2), False, label, {"subset": list(W or ())})


def check_ramanujan_expansion(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> TheoremCheck:
    """Certified Ramanujan and connected implies ``h >= (d - 2 sqrt(d-1))/2`` (assertable)."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    d = is_regular(g)
    if not (is_symmetric(algebra) and is_graphicable(algebra)) or d is None or d < 2 or g.n > cap:
        return _skipped("Thm8.4", True, label, "needs a graphicable d-regular algebra (d >= 2) within the cap")
    if not is_connected(g):
        # a second eigenvalue equal to d is hidden by the |lambda| = d carve-out
        return _skipped("Thm8.4", True, label, "needs a connected graph")
    cert = is_ramanujan(algebra)
    if not cert:
        return _skipped("Thm8.4", True, label, "not Ramanujan")
    h, _ = _exact_h(algebra, cap)
    return _leq("Thm8.4", ramanujan_expansion_lower(d), float(h), True, label, {"margin": cert.margin}, FLOAT_TOL)


def check_spectral_gap_bound(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> TheoremCheck:
    """``h^2 / (2d) <= gap``; assertable only for constant-weight graphicable algebras."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    if algebra.field.kind == "prime" or not is_symmetric(algebra) or g.n < 2 or g.n > cap:
        return _skipped("Thm5.6(ii)", False, label, "needs a real symmetric algebra within the cap")
    d = max(degrees(g))
    if d == 0:
        return _skipped("Thm5.6(ii)", False, label, "edgeless graph")
    h, _ = _exact_h(algebra, cap)
    gap = spectral_gap(symmetric_eigenvalues(algebra))
    assertable = is_graphicable(algebra) and is_regular(g) is not None
    return _leq("Thm5.6(ii)", float(h) ** 2 / (2 * d), gap, assertable, label, {"d": d, "h": _num(h)}, FLOAT_TOL)


def check_prop_2_5(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> list:
    """``h > 0`` iff connected; ``2/n <= h <= min degree`` when connected."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    if g.n < 2 or g.n > cap:
        note = "needs 2..cap vertices"
        return [_skipped(t, True, label, note) for t in ("Prop2.5(i)", "Prop2.5(iii)-lower", "Prop2.5(iii)-upper")]
    h, _ = _exact_h(algebra, cap)
    conn = is_connected(g)
    out = [_leq("Prop2.5(i)", int((h > 0) != conn), 0, True, label, {"connected": conn, "h": _num(h)})]
    if conn:
        out.append(_leq("Prop2.5(iii)-lower", Fraction(2, g.n), h, True, label))
        out.append(_leq("Prop2.5(iii)-upper", h, Fraction(min(degrees(g))), True, label))
    else:
        out.append(_skipped("Prop2.5(iii)-lower", True, label, "disconnected"))
        out.append(_skipped("Prop2.5(iii)-upper", True, label, "disconnected"))
    return out


def check_connectivity_equivalences(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> TheoremCheck:
    """Connected, one block, ``h > 0`` and not ``not-simple`` agree (lhs counts disagreements)."""
    label = _label(algebra)
    g = underlying_graph(algebra)
    flags = {
        "connected": is_connected(g),
        "one_block": len(decompose(algebra)) == 1,
        "not_split": is_simple(algebra) != NOT_SIMPLE,
    }
    if 2 <= g.n <= cap:
        h, _ = _exact_h(algebra, cap)
        flags["h_positive"] = h > 0
    disagreements = len(flags) - max(sum(flags.values()), len(flags) - sum(flags.values()))
    return _leq("Thm3.5", disagreements, 0, True, label, flags)


def check_persistency(algebra: EvolutionAlgebra, k_max: Optional[int] = None) -> list:
    """Occurrence of every generator in its own plenary powers (report-only).

    ``Thm4.5`` counts generators missing from some ``e_i^[k]``, ``k >= 0``;
    ``Thm4.5-window`` ignores ``k = 1``.  Witnesses give the first absence.
    """
    label = _label(algebra)
    if not algebra.field.exact:
        note = "exact supports need a rational or prime field"
        return [_skipped("Thm4.5", False, label, note), _skipped("Thm4.5-window", False, label, note)]
    if k_max is None:
        k_max = default_k_max(algebra)
    try:
        recs = [persistency(algebra, i, k_max) for i in range(algebra.n)]
    except ResourceCapError as exc:
        return [_skipped("Thm4.5", False, label, str(exc)), _skipped("Thm4.5-window", False, label, str(exc))]
    strict = [r for r in recs if not r.strictly_persistent]
    window = [r for r in recs if not r.persistent]
    absences = {str(r.i): r.first_absence for r in strict}
    wit = {"k_max": k_max, "first_absence": absences, "occurrence_e0": [bool(o) for o in recs[0].occurrence]}
    return [
        _leq("Thm4.5", len(strict), 0, False, label, wit),
        _leq("Thm4.5-window", len(window), 0, False, label, {"k_max": k_max, "generators": [r.i for r in window]}),
    ]


def check_mixing(algebra: EvolutionAlgebra, k_max: int = DEFAULT_MIXING_STEPS, start: int = 0, cap: int = DEFAULT_ENUM_CAP) -> list:
    """Simulated distance against the corrected bound (assertable) and the published bound (report-only).

    The published bound uses the exact ``h`` of the underlying graph and
    ``d`` the largest number of positive entries in a row; its witness is the
    first violating step.
    """
    label = _label(algebra)
    if algebra.field.kind == "prime" or not (is_symmetric(algebra) and is_doubly_stochastic(algebra)):
        note = "needs a symmetric doubly stochastic algebra"
        return [_skipped("Mixing-corrected", True, label, note), _skipped("Thm6.3", False, label, note)]
    n = algebra.n
    trace = mixing_simulation(algebra, start, k_max)
    spec = symmetric_eigenvalues(algebra)
    corrected = [corrected_mixing_bound(spec, n, k) for k in range(k_max + 1)]
    k_c = min(range(k_max + 1), key=lambda k: corrected[k] - trace.distances[k])
    out = [_leq("Mixing-corrected", trace.distances[k_c], corrected[k_c], True, label, {"k": k_c}, MIXING_TOL)]
    g = underlying_graph(algebra)
    if n < 2 or n > cap:
        out.append(_skipped("Thm6.3", False, label, "needs 2..cap states for exact h"))
        return out
    h, _ = _exact_h(algebra, cap)
    if not h:
        out.append(_skipped("Thm6.3", False, label, "h = 0"))
        return out
    d = int(np.asarray(algebra.nonzero_mask).sum(axis=1).max())
    published = [paper_mixing_bound(n, h, d, k) for k in range(k_max + 1)]
    ks = range(1, k_max + 1)
    bad = [k for k in ks if trace.distances[k] > published[k]]
    k_p = bad[0] if bad else min(ks, key=lambda k: published[k] - trace.distances[k])
    wit = {"k": k_p, "first_violation": bad[0] if bad else None, "h": _num(h), "d": d}
    out.append(_leq("Thm6.3", trace.distances[k_p], published[k_p], False, label, wit))
    return out


def check_tensor_cheeger(A1: EvolutionAlgebra, A2: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> TheoremCheck:
    """``min(h1, h2) <= h(A1 (x) A2)`` (report-only)."""
    label = f"kron({_label(A1)},{_label(A2)})"
    g1, g2 = underlying_graph(A1), underlying_graph(A2)
    if not (is_connected(g1) and is_connected(g2)) or A1.n < 2 or A2.n < 2:
        return _skipped("Thm9.6", False, label, "needs connected factors on at least two vertices")
    if A1.n * A2.n > cap:
        return _skipped("Thm9.6", False, label, "product exceeds the enumeration cap")
    h1, _ = _exact_h(A1, cap)
    h2, _ = _exact_h(A2, cap)
    hp, W = _exact_h(kronecker_product(A1, A2), cap)
    components = len(decompose(kronecker_product(A1, A2)))
    wit = {"h1": _num(h1), "h2": _num(h2), "subset": list(W or ()), "components": components}
    return _leq("Thm9.6", min(h1, h2), hp, False, label, wit)


def check_cayley_identity(group: FiniteGroup, gens, algebra: EvolutionAlgebra) -> TheoremCheck:
    """Underlying graph of the Cayley algebra equals ``Cay(G, S)`` edge for edge (lhs = mismatches)."""
    label = _label(algebra)
    S = tuple(gens)
    expected = set()
    for s in S:
        right = group.right_multiply(s)
        expected.update((min(g, int(t)), max(g, int(t))) for g, t in enumerate(right) if g != int(t))
    actual = set(underlying_graph(algebra).edges)
    mismatches = len(expected ^ actual)
    return _leq("Thm9.2", mismatches, 0, True, label, {"edges": len(actual)})


@dataclass(frozen=True)
class AlonBoppanaTrend:
    """Per-member ``lambda_2`` against ``2 sqrt(d-1)`` for a growing d-regular sample."""

    d: int
    members: tuple  # (n, lambda_2, floor - lambda_2)
    verdict: str
    lambda2_within_d: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "floor": alon_boppana_floor(self.d),
            "members": [{"n": n, "lambda2": l2, "deficit": df} for n, l2, df in self.members],
            "verdict": self.verdict,
            "lambda2_within_d": self.lambda2_within_d,
        }


def check_alon_boppana(family: Sequence[EvolutionAlgebra], d: int) -> AlonBoppanaTrend:
    """Trend only: ``consistent`` when the deficit ``2 sqrt(d-1) - lambda_2`` ends no larger than it starts."""
    floor = alon_boppana_floor(d)
    members = []
    for A in family:
        g = underlying_graph(A)
        if is_regular(g) != d:
            raise ValueError(f"{_label(A)} is not {d}-regular")
        lam2 = symmetric_eigenvalues(g).lambda2
        members.append((A.n, lam2, floor - lam2))
    ns = [m[0] for m in members]
    if any(a >= b for a, b in zip(ns, ns[1:])):
        raise ValueError("family sizes must be strictly increasing")
    within = all(m[1] <= d + FLOAT_TOL for m in members)
    if len(members) < 2:
        verdict = "undefined"
    else:
        verdict = "consistent" if members[-1][2] <= members[0][2] + FLOAT_TOL else "inconsistent"
    return AlonBoppanaTrend(d, tuple(members), verdict, within)


# ----------------------------------------------------------------- report


@dataclass
class AuditReport:
    input: str
    checks: list = field(default_factory=list)
    trends: list = field(default_factory=list)

    @property
    def assertable_failures(self) -> int:
        return sum(1 for c in self.checks if c.assertable and c.failed)

    @property
    def report_findings(self) -> int:
        return sum(1 for c in self.checks if not c.assertable and c.failed)

    def findings(self, theorem: str | None = None) -> list:
        return [c for c in self.checks if c.failed and (theorem is None or c.theorem == theorem)]

    def to_json(self) -> dict:
        d = {
            "input": self.input,
            "checks": [c.to_json() for c in self.checks],
            "assertable_failures": self.assertable_failures,
            "report_findings": self.report_findings,
        }
        if self.trends:
            d["trends"] = [t.to_json() for t in self.trends]
        return d

    def render_table(self) -> str:
        rows = [("theorem", "input", "kind", "status", "lhs", "rhs", "margin")]
        for c in self.checks:
            kind = "assert" if c.assertable else "report"
            if not c.hypotheses_met:
                status = "n/a"
            else:
                status = "ok" if c.holds else ("FAIL" if c.assertable else "FINDING")
            rows.append((c.theorem, c.input, kind, status, _cell(c.lhs), _cell(c.rhs), _cell(c.margin)))
        widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
        lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
        lines.append(f"assertable failures: {self.assertable_failures}   report findings: {self.report_findings}")
        return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(_num(v))


def audit_algebra(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP, k_max: Optional[int] = None, mixing_steps: int = DEFAULT_MIXING_STEPS) -> list:
    """Every single-algebra check that applies; inapplicable ones are recorded with ``hypotheses_met = False``."""
    checks = []

    def run(fn, *args):
        try:
            res = fn(*args)
        except EEAError as exc:
            res = [_skipped(fn.__name__, False, _label(algebra), f"{type(exc).__name__}: {exc}")]
        checks.extend(res if isinstance(res, list) else [res])

    run(check_prop_2_5, algebra, cap)
    run(check_connectivity_equivalences, algebra, cap)
    run(check_diameter_bound, algebra, cap)
    run(check_support_growth, algebra, cap)
    run(check_monotone_supports, algebra)
    run(check_persistency, algebra, k_max)
    if algebra.field.kind != "prime":
        run(check_sandwich, algebra, cap)
        run(check_cheeger_paper, algebra, cap)
        run(check_spectral_gap_bound, algebra, cap)
        run(check_trivial_bound, algebra, cap)
        run(check_ramanujan_expansion, algebra, cap)
        run(check_mixing, algebra, mixing_steps, 0, cap)
    else:
        run(check_trivial_bound, algebra, cap)
    return checks


def run_full_audit(
    algebra: EvolutionAlgebra | None = None,
    factors: Sequence[EvolutionAlgebra] | None = None,
    family: Sequence[EvolutionAlgebra] | None = None,
    cap: int = DEFAULT_ENUM_CAP,
    k_max: Optional[int] = None,
    label: str | None = None,
) -> AuditReport:
    """Audit one algebra, a Kronecker pair (``factors``), and/or a regular family.

    With ``factors`` and no ``algebra``, the product is audited as well.
    Checks are sorted by theorem id, then input.
    """
    if algebra is None and factors is not None:
        algebra = kronecker_product(*factors)
    parts = []
    if algebra is not None:
        parts.append(_label(algebra))
    if family:
        parts.append("family[" + ",".join(_label(A) for A in family) + "]")
    report = AuditReport(label or " + ".join(parts) or "empty")
    if algebra is not None:
        report.checks.extend(audit_algebra(algebra, cap, k_max))
    if factors is not None:
        A1, A2 = factors
        report.checks.append(check_tensor_cheeger(A1, A2, cap))
    if family:
        d = is_regular(underlying_graph(family[0]))
        if d is not None and d >= 2:
            trend = check_alon_boppana(family, d)
            report.trends.append(trend)
            n, lam2, _ = trend.members[-1]
            report.checks.append(
                _leq("Thm8.2", alon_boppana_floor(d), lam2, False, f"family n={n}", {"verdict": trend.verdict}, FLOAT_TOL)
            )
    report.checks.sort(key=lambda c: (c.theorem, c.input))
    return report
