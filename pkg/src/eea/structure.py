"""Graph-driven structure queries: connectivity, simplicity, support growth of
plenary powers, cover time, persistency, hierarchy and algebraic distance.

Supports of plenary powers ``e_i^[k]`` are tracked in one of two modes:

* ``combinatorial``: ``S_{k+1} = S_k | N(S_k)`` in the underlying graph,
  i.e. the radius-k ball around ``i``;
* ``exact``: the true support of ``e_i^[k]`` computed in the algebra's field.

Exact supports only depend on the element up to a nonzero scalar, so over
the rationals the structural matrix is cleared of denominators and each
iterate is divided by the gcd of its entries.  When every structural
constant is nonnegative no cancellation can happen and the exact support is
propagated on the sign pattern alone, which is both exact and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional

import numpy as np

from .algebra import DEFAULT_MAX_BITS, EvolutionAlgebra, is_symmetric
from .errors import FieldMismatchError, ResourceCapError
from .expansion import DEFAULT_ENUM_CAP, cheeger_exact
from .graphs import (
    bfs_distances,
    connected_components,
    degrees,
    diameter,
    is_connected,
    underlying_graph,
)

COMBINATORIAL = "combinatorial"
EXACT = "exact"
MODES = (COMBINATORIAL, EXACT)

SIMPLE = "simple"
NOT_SIMPLE = "not-simple"
UNRESOLVED = "connected-but-unresolved"


def is_connected_algebra(algebra: EvolutionAlgebra) -> bool:
    return is_connected(underlying_graph(algebra))


def decompose(algebra: EvolutionAlgebra) -> list:
    """Vertex sets of the connected components; each spans an evolution subalgebra."""
    return [tuple(c) for c in connected_components(underlying_graph(algebra))]


def is_simple(algebra: EvolutionAlgebra) -> str:
    """``simple`` for connected symmetric algebras, ``not-simple`` when disconnected.

    Connected non-symmetric algebras are reported as ``connected-but-unresolved``.
    """
    if not is_connected_algebra(algebra):
        return NOT_SIMPLE
    if algebra.n == 1 or is_symmetric(algebra):
        return SIMPLE
    return UNRESOLVED


def default_mode(algebra: EvolutionAlgebra) -> str:
    return EXACT if algebra.field.exact else COMBINATORIAL


def default_k_max(algebra: EvolutionAlgebra, cap: int = DEFAULT_ENUM_CAP) -> int:
    """``ceil((d/h) ln n) + 4`` when ``h`` is known exactly and positive, else ``2 diam + 4``.

    ``d`` is the maximum degree.  Disconnected algebras fall back to ``2n + 4``.
    """
    g = underlying_graph(algebra)
    n = algebra.n
    if n <= 1:
        return 4
    if n <= cap:
        h = cheeger_exact(g, cap).value
        if h is not None and h > 0:
            d = max(degrees(g))
            return math.ceil(d / h * math.log(n)) + 4
    diam = diameter(g)
    if diam == math.inf:
        return 2 * n + 4
    return 2 * diam + 4


@dataclass(frozen=True)
class SupportTrace:
    i: int
    mode: str
    supports: tuple  # S_0 .. S_kmax as sorted tuples

    @property
    def k_max(self) -> int:
        return len(self.supports) - 1

    def cover_step(self, n: int) -> Optional[int]:
        return next((k for k, s in enumerate(self.supports) if len(s) == n), None)

    def to_json(self, n: int) -> dict:
        return {
            "i": self.i,
            "mode": self.mode,
            "supports": [list(s) for s in self.supports],
            "cover": self.cover_step(n),
        }


def _check_index(algebra: EvolutionAlgebra, i: int):
    if not 0 <= i < algebra.n:
        raise IndexError(f"generator index {i} out of range for dimension {algebra.n}")


def _combinatorial_supports(algebra: EvolutionAlgebra, i: int, k_max: int) -> list:
    nb = underlying_graph(algebra).neighbors
    cur = {i}
    out = [cur]
    for _ in range(k_max):
        nxt = set(cur)
        for v in cur:
            nxt.update(nb[v])
        cur = nxt
        out.append(cur)
    return out


def _pattern_supports(mask: np.ndarray, i: int, k_max: int) -> list:
    # nonnegative matrices: supp(x^2 A) = rows of S_k that have any nonzero entry
    cur = np.zeros(mask.shape[0], dtype=bool)
    cur[i] = True
    out = [cur]
    for _ in range(k_max):
        cur = mask[cur].any(axis=0)
        out.append(cur)
    return [set(np.nonzero(s)[0].tolist()) for s in out]


def _integer_matrix(algebra: EvolutionAlgebra) -> list:
    M = algebra.matrix
    den = reduce(math.lcm, (Fraction(v).denominator for v in M.ravel() if v != 0), 1)
    return [[int(Fraction(v) * den) for v in row] for row in M]


def _integer_supports(algebra: EvolutionAlgebra, i: int, k_max: int, max_bits: int) -> list:
    n = algebra.n
    B = _integer_matrix(algebra)
    rows = [[(k, v) for k, v in enumerate(r) if v] for r in B]
    x = {i: 1}
    out = [{i}]
    for step in range(1, k_max + 1):
        y = {}
        for j, xj in x.items():
            sq = xj * xj
            for k, v in rows[j]:
                y[k] = y.get(k, 0) + sq * v
        y = {k: v for k, v in y.items() if v}
        if y:
            g = reduce(math.gcd, y.values())
            y = {k: v // g for k, v in y.items()}
            bits = max(abs(v).bit_length() for v in y.values())
            if bits > max_bits:
                raise ResourceCapError(
                    f"plenary power e_{i}^[{step}] needs {bits} bits, exceeding the cap of {max_bits}"
                )
        x = y
        out.append(set(x))
    return out


def _prime_supports(algebra: EvolutionAlgebra, i: int, k_max: int) -> list:
    p = algebra.field.p
    A = np.array(algebra.matrix, dtype=np.int64)
    x = np.zeros(algebra.n, dtype=np.int64)
    x[i] = 1
    out = [{i}]
    for _ in range(k_max):
        x = ((x * x) % p) @ A % p
        out.append(set(np.nonzero(x)[0].tolist()))
    return out


def support_trace(algebra: EvolutionAlgebra, i: int, k_max: int, mode: Optional[str] = None, max_bits: int = DEFAULT_MAX_BITS) -> SupportTrace:
    """Supports ``S_0 .. S_kmax`` of ``e_i^[k]`` (exact) or of the radius-k balls (combinatorial)."""
    _check_index(algebra, i)
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    mode = mode or default_mode(algebra)
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == COMBINATORIAL:
        sups = _combinatorial_supports(algebra, i, k_max)
    elif not algebra.field.exact:
        raise FieldMismatchError("exact supports need a rational or prime field")
    elif algebra.field.kind == "prime":
        sups = _prime_supports(algebra, i, k_max)
    elif all(v >= 0 for v in algebra.matrix[algebra.nonzero_mask]):
        sups = _pattern_supports(np.asarray(algebra.nonzero_mask), i, k_max)
    else:
        sups = _integer_supports(algebra, i, k_max, max_bits)
    return SupportTrace(i, mode, tuple(tuple(sorted(s)) for s in sups))


def cover_time(algebra: EvolutionAlgebra, i: int, mode: Optional[str] = None, k_cap: Optional[int] = None, max_bits: int = DEFAULT_MAX_BITS) -> Optional[int]:
    """Least ``k <= k_cap`` with full support, or ``None``."""
    if k_cap is None:
        k_cap = default_k_max(algebra)
    return support_trace(algebra, i, k_cap, mode, max_bits).cover_step(algebra.n)


@dataclass(frozen=True)
class PersistencyRecord:
    """Occurrence of ``e_i`` in ``e_i^[k]`` for ``k = 0..k_max``.

    ``persistent`` checks ``k in {0} | [2, k_max]``; ``strictly_persistent``
    checks every ``k``; ``eventually_persistent`` asks that the final
    unbroken run of occurrences covers at least the second half of
    ``[2, k_max]``.
    """

    i: int
    mode: str
    occurrence: tuple

    @property
    def k_max(self) -> int:
        return len(self.occurrence) - 1

    @property
    def first_absence(self) -> Optional[int]:
        return next((k for k, o in enumerate(self.occurrence) if not o), None)

    @property
    def persistent(self) -> bool:
        return all(o for k, o in enumerate(self.occurrence) if k != 1)

    @property
    def strictly_persistent(self) -> bool:
        return all(self.occurrence)

    @property
    def eventually_persistent(self) -> bool:
        occ = self.occurrence
        if self.k_max < 2:
            return all(occ)
        start = self.k_max
        while start >= 2 and occ[start]:
            start -= 1
        run = self.k_max - start
        window = self.k_max - 1
        return run > 0 and 2 * run >= window

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "mode": self.mode,
            "occurrence": list(self.occurrence),
            "first_absence": self.first_absence,
            "persistent": self.persistent,
            "strictly_persistent": self.strictly_persistent,
            "eventually_persistent": self.eventually_persistent,
        }


def persistency(algebra: EvolutionAlgebra, i: int, k_max: int, mode: Optional[str] = None, max_bits: int = DEFAULT_MAX_BITS) -> PersistencyRecord:
    tr = support_trace(algebra, i, k_max, mode, max_bits)
    return PersistencyRecord(i, tr.mode, tuple(i in s for s in tr.supports))


@dataclass(frozen=True)
class HierarchyReport:
    persistent: tuple
    transient: tuple
    records: tuple

    @property
    def trivial(self) -> bool:
        return not self.transient

    def to_json(self) -> dict:
        return {
            "persistent": list(self.persistent),
            "transient": list(self.transient),
            "trivial": self.trivial,
            "records": [r.to_json() for r in self.records],
        }


def hierarchy_report(algebra: EvolutionAlgebra, k_max: Optional[int] = None, max_bits: int = DEFAULT_MAX_BITS) -> HierarchyReport:
    """Split generators by eventual occurrence over ``[2, k_max]`` using exact supports."""
    if not algebra.field.exact:
        raise FieldMismatchError("hierarchy needs a rational or prime field")
    if k_max is None:
        k_max = default_k_max(algebra)
    records = tuple(persistency(algebra, i, k_max, EXACT, max_bits) for i in range(algebra.n))
    pers = tuple(r.i for r in records if r.eventually_persistent)
    trans = tuple(r.i for r in records if not r.eventually_persistent)
    return HierarchyReport(pers, trans, records)


def algebraic_distance(algebra: EvolutionAlgebra, i: int, j: int):
    """Graph distance in the underlying graph (``math.inf`` across components)."""
    _check_index(algebra, i)
    _check_index(algebra, j)
    return bfs_distances(underlying_graph(algebra), i)[j]
