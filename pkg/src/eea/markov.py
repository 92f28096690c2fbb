"""Markov evolution algebras: stochasticity, irreducibility and mixing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import EvolutionAlgebra
from .errors import FieldMismatchError, PreconditionError
from .spectral import Spectrum, symmetric_eigenvalues

STOCHASTIC_TOL = 1e-10
EXACT_MIXING_MAX_N = 64


def _reject_prime(algebra: EvolutionAlgebra):
    if algebra.field.kind == "prime":
        raise FieldMismatchError("stochasticity is undefined over a prime field")


def _sums_are_one(sums, exact: bool) -> bool:
    if exact:
        return all(s == 1 for s in sums)
    return bool(np.all(np.abs(np.asarray(sums, dtype=float) - 1.0) <= STOCHASTIC_TOL))


def _nonnegative(algebra: EvolutionAlgebra) -> bool:
    return all(v >= 0 for v in algebra.matrix[algebra.nonzero_mask])


def is_markov(algebra: EvolutionAlgebra) -> bool:
    """Nonnegative entries and every row summing to 1."""
    _reject_prime(algebra)
    M = algebra.matrix
    return _nonnegative(algebra) and _sums_are_one(M.sum(axis=1), algebra.field.exact)


def is_doubly_stochastic(algebra: EvolutionAlgebra) -> bool:
    _reject_prime(algebra)
    M = algebra.matrix
    return is_markov(algebra) and _sums_are_one(M.sum(axis=0), algebra.field.exact)


def is_irreducible(algebra: EvolutionAlgebra) -> bool:
    """Single strongly connected component on the arcs with positive weight."""
    if not is_markov(algebra):
        raise PreconditionError("not Markov")
    pos = np.asarray(algebra.nonzero_mask)
    return _reaches_all(pos) and _reaches_all(pos.T)


def _reaches_all(adj: np.ndarray) -> bool:
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


@dataclass(frozen=True)
class MixingTrace:
    """``distances[k] = || S^k e_i - pi ||_1`` with ``pi`` uniform."""

    i: int
    distances: tuple
    exact: bool = False

    def empirical_tmix(self, eps: float) -> Optional[int]:
        return next((k for k, d in enumerate(self.distances) if d <= eps), None)

    def to_json(self, paper_bound=None, corrected_bound=None) -> dict:
        d = {"i": self.i, "distances": [float(v) for v in self.distances]}
        if paper_bound is not None:
            d["paper_bound"] = [float(v) for v in paper_bound]
        if corrected_bound is not None:
            d["corrected_bound"] = [float(v) for v in corrected_bound]
        return d


def mixing_simulation(algebra: EvolutionAlgebra, i: int, k_max: int, exact: bool = False) -> MixingTrace:
    """Iterate ``dist <- S dist`` from the point mass at ``i``.

    ``exact=True`` runs in rational arithmetic (rational algebras, ``n <= 64``).
    """
    if not is_doubly_stochastic(algebra):
        raise PreconditionError("not doubly stochastic")
    n = algebra.n
    if not 0 <= i < n:
        raise IndexError(f"start state {i} out of range for dimension {n}")
    if exact:
        if algebra.field.kind != "rational":
            raise FieldMismatchError("exact mixing needs a rational algebra")
        if n > EXACT_MIXING_MAX_N:
            raise ValueError(f"exact mixing is limited to n <= {EXACT_MIXING_MAX_N}")
        S = algebra.matrix
        x = np.array([Fraction(int(k == i)) for k in range(n)], dtype=object)
        pi = Fraction(1, n)
    else:
        S = algebra.to_float()
        x = np.zeros(n)
        x[i] = 1.0
        pi = 1.0 / n
    dists = []
    for k in range(k_max + 1):
        if k:
            x = S @ x
        dists.append(float(sum(abs(v - pi) for v in x)) if exact else float(np.abs(x - pi).sum()))
    return MixingTrace(i, tuple(dists), exact)


def paper_mixing_bound(n: int, h, d, k: int) -> float:
    """``n (1 - h^2 / (2 d^2))^k``."""
    if not h > 0:
        raise ValueError("h must be positive")
    if d < 1:
        raise ValueError("d must be at least 1")
    h = Fraction(h)
    return n * float(1 - h * h / (2 * Fraction(d) ** 2)) ** k


def second_modulus(spectrum: Spectrum) -> float:
    """``max(|mu_2|, |mu_n|)``."""
    if spectrum.n < 2:
        return 0.0
    return max(abs(spectrum.lambda2), abs(spectrum.lambda_min))


def corrected_mixing_bound(spectrum: Spectrum, n: int, k: int) -> float:
    """``sqrt(n) * mu_*^k`` with ``mu_* = max(|mu_2|, |mu_n|)``."""
    return math.sqrt(n) * second_modulus(spectrum) ** k


def tmix_bound(n: int, h, d, eps: float) -> float:
    """``(2 d^2 / h^2) ln(n / eps)`` (natural log)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not h > 0:
        raise ValueError("h must be positive")
    return 2.0 * d * d / float(h) ** 2 * math.log(n / eps)


def mixing_report(algebra: EvolutionAlgebra, i: int, k_max: int, h=None, d=None) -> dict:
    """Distances with the corrected bound and, when ``h`` and ``d`` are given, the published bound."""
    trace = mixing_simulation(algebra, i, k_max)
    spec = symmetric_eigenvalues(algebra)
    corrected = [corrected_mixing_bound(spec, algebra.n, k) for k in range(k_max + 1)]
    published = None
    if h is not None and d is not None and h > 0:
        published = [paper_mixing_bound(algebra.n, h, d, k) for k in range(k_max + 1)]
    return trace.to_json(published, corrected)
