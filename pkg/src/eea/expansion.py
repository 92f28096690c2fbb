"""Cheeger constants: exact enumeration with witnesses, spectral sandwich, h-EEA certificates."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .algebra import EvolutionAlgebra
from .errors import EnumerationCapError, InconclusiveError, PreconditionError
from .graphs import SimpleGraph, degrees, is_regular, underlying_graph
from .spectral import symmetric_eigenvalues

DEFAULT_ENUM_CAP = int(os.environ.get("EEA_ENUM_CAP", 26))
_CHUNK = 1 << 22

EXACT = "exact-enumeration"
SPECTRAL = "spectral-bounds-only"


@dataclass(frozen=True)
class CheegerCertificate:
    """Cheeger value with the witness subset achieving it.

    ``value is None`` encodes ``+inf`` (graphs with at most one vertex).
    Spectral-only certificates carry ``lower``/``upper`` and no exact value.
    """

    value: Optional[Fraction]
    witness: Optional[tuple]
    method: str = EXACT
    lower: Optional[float] = None
    upper: Optional[float] = None

    @property
    def infinite(self) -> bool:
        return self.method == EXACT and self.value is None

    def at_least(self, h) -> Optional[bool]:
        """``h(G) >= h`` if decidable from this certificate, else ``None``."""
        if self.method == EXACT:
            return True if self.value is None else self.value >= h
        if self.lower is not None and self.lower >= h:
            return True
        if self.upper is not None and self.upper < h:
            return False
        return None

    def to_json(self) -> dict:
        if self.method == EXACT:
            h = "inf" if self.value is None else _frac_str(self.value)
        else:
            h = None
        d = {"h": h, "witness": list(self.witness) if self.witness else [], "method": self.method}
        if self.method == SPECTRAL:
            d["lower"] = self.lower
            d["upper"] = self.upper
        return d


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def edge_boundary(graph: SimpleGraph, W: Iterable[int]) -> tuple:
    """Edges with exactly one endpoint in ``W``, sorted."""
    W = set(W)
    for v in W:
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex {v} out of range 0..{graph.n - 1}")
    return tuple(e for e in graph.edges if (e[0] in W) != (e[1] in W))


def _boundary_table(graph: SimpleGraph):
    """``|E(W)|`` and ``|W|`` for every subset mask, built incrementally on the top bit."""
    n = graph.n
    N = 1 << n
    bdry = np.zeros(N, dtype=np.int32 if n > 15 else np.int16)
    size = np.zeros(N, dtype=np.int8)
    deg = degrees(graph)
    adj_mask = [sum(1 << u for u in graph.neighbors[v]) for v in range(n)]
    for j in range(n):
        lo = 1 << j
        for start in range(0, lo, _CHUNK):
            stop = min(lo, start + _CHUNK)
            masks = np.arange(start, stop, dtype=np.uint32)
            inner = np.bitwise_count(masks & np.uint32(adj_mask[j])).astype(bdry.dtype)
            bdry[lo + start:lo + stop] = bdry[start:stop] + deg[j] - 2 * inner
            size[lo + start:lo + stop] = size[start:stop] + 1
    return bdry, size


def _lex_least(masks: np.ndarray, n: int) -> tuple:
    # among equal-size sets, lexicographically least sorted tuple == largest bit-reversed mask
    rev = np.zeros(len(masks), dtype=np.int64)
    for v in range(n):
        rev |= ((masks >> v) & 1).astype(np.int64) << (n - 1 - v)
    m = int(masks[int(np.argmax(rev))])
    return tuple(v for v in range(n) if m >> v & 1)


def cheeger_exact(graph: SimpleGraph, cap: int = DEFAULT_ENUM_CAP) -> CheegerCertificate:
    """Exact ``min |E(W)|/|W|`` over nonempty ``W`` with ``|W| <= n/2``.

    Ties are broken by smallest ``|W|``, then lexicographically least witness.
    Raises :class:`EnumerationCapError` when ``n > cap``.
    """
    n = graph.n
    if n <= 1:
        return CheegerCertificate(None, None, EXACT)
    if n > cap:
        raise EnumerationCapError(f"exact Cheeger enumeration capped at n <= {cap}, got n = {n}")
    bdry, size = _boundary_table(graph)
    best = None
    for k in range(1, n // 2 + 1):
        sel = size == k
        mb = int(bdry[sel].min())
        q = Fraction(mb, k)
        if best is None or q < best[0]:
            best = (q, k, mb)
    q, k, mb = best
    masks = np.nonzero((size == k) & (bdry == mb))[0].astype(np.int64)
    return CheegerCertificate(q, _lex_least(masks, n), EXACT)


def cheeger_spectral_bounds(graph: SimpleGraph) -> tuple:
    """Two-sided estimate ``((d - l2)/2, sqrt(2 d (d - l2)))`` for a d-regular graph."""
    d = is_regular(graph)
    if d is None:
        raise PreconditionError("not regular")
    if graph.n < 2:
        raise PreconditionError("graph has fewer than two vertices")
    spec = symmetric_eigenvalues(graph)
    gap = max(d - spec.lambda2, 0.0)
    return gap / 2.0, math.sqrt(2.0 * d * gap)


def cheeger(graph: SimpleGraph, cap: int = DEFAULT_ENUM_CAP) -> CheegerCertificate:
    """Exact certificate when ``n <= cap``, else spectral bounds (regular graphs only)."""
    if graph.n <= cap:
        return cheeger_exact(graph, cap)
    if is_regular(graph) is None:
        raise EnumerationCapError(
            f"n = {graph.n} exceeds the enumeration cap {cap} and the graph is not regular"
        )
    lo, hi = cheeger_spectral_bounds(graph)
    return CheegerCertificate(None, None, SPECTRAL, lo, hi)


@dataclass(frozen=True)
class EEAVerdict:
    holds: bool
    h: Fraction
    certificate: CheegerCertificate

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        d = self.certificate.to_json()
        d["threshold"] = _frac_str(self.h)
        d["holds"] = self.holds
        return d


def is_h_eea(algebra: EvolutionAlgebra, h, cap: int = DEFAULT_ENUM_CAP) -> EEAVerdict:
    """Decide ``h(Gamma(A)) >= h``; raises :class:`InconclusiveError` if bounds straddle ``h``."""
    h = Fraction(h)
    if h <= 0:
        raise ValueError("expansion threshold must be positive")
    cert = cheeger(underlying_graph(algebra), cap)
    verdict = cert.at_least(h)
    if verdict is None:
        raise InconclusiveError(
            f"spectral bounds [{cert.lower:.6g}, {cert.upper:.6g}] straddle h = {h}",
            cert.lower,
            cert.upper,
        )
    return EEAVerdict(verdict, h, cert)


@dataclass(frozen=True)
class FamilyMember:
    n: int
    max_degree: int
    h: Optional[Fraction]  # None = +inf


@dataclass(frozen=True)
class FamilyReport:
    """Finite-sample check of the three expander-family conditions.

    This is a trend report over the given members, not a statement about an
    infinite family.
    """

    members: tuple
    sizes_increasing: bool
    degree_bounded: bool
    expansion_bounded_below: bool
    inf_h: Optional[Fraction]

    @property
    def verdict(self) -> str:
        failed = []
        if not self.sizes_increasing:
            failed.append("(i) sizes do not grow")
        if not self.degree_bounded:
            failed.append("(ii) degree unbounded")
        if not self.expansion_bounded_below:
            failed.append("(iii) h -> 0 trend")
        if not failed:
            return "expander-like"
        return "not expander-like: " + "; ".join(failed)

    def to_json(self) -> dict:
        return {
            "members": [
                {"n": m.n, "max_degree": m.max_degree, "h": "inf" if m.h is None else _frac_str(m.h)}
                for m in self.members
            ],
            "sizes_increasing": self.sizes_increasing,
            "degree_bounded": self.degree_bounded,
            "expansion_bounded_below": self.expansion_bounded_below,
            "inf_h": None if self.inf_h is None else _frac_str(self.inf_h),
            "verdict": self.verdict,
        }


def is_eea_family_report(algebras: Sequence[EvolutionAlgebra], cap: int = DEFAULT_ENUM_CAP) -> FamilyReport:
    """Per-member ``(n, max degree, h)`` plus sample-level verdicts.

    (ii) fails when the maximum degree of the last member exceeds that of the
    first; (iii) fails when some ``h`` is zero or when ``h`` is non-increasing
    along the sample and ends strictly below where it started.
    """
    if len(algebras) < 2:
        raise ValueError("a family report needs at least two algebras")
    members = []
    for A in algebras:
        g = underlying_graph(A)
        cert = cheeger_exact(g, cap)
        members.append(FamilyMember(A.n, max(degrees(g), default=0), cert.value))
    ns = [m.n for m in members]
    increasing = all(a < b for a, b in zip(ns, ns[1:]))
    degree_bounded = members[-1].max_degree <= members[0].max_degree
    finite = [m.h for m in members if m.h is not None]
    inf_h = min(finite) if finite else None
    if any(h == 0 for h in finite):
        bounded_below = False
    else:
        non_increasing = all(a >= b for a, b in zip(finite, finite[1:]))
        bounded_below = not (len(finite) >= 2 and non_increasing and finite[-1] < finite[0])
    return FamilyReport(tuple(members), increasing, degree_bounded, bounded_below, inf_h)
