"""Finite groups by breadth-first closure, with vectorised multiplication laws.

Each group element is a canonical integer row (a residue, a permutation
image vector, or the four entries of a 2x2 matrix).  A *law* knows how to
multiply, invert, canonicalise, and encode whole arrays of such rows, so
closure and Cayley constructions stay vectorised even for PGL2(F_37).
Elements are numbered in breadth-first discovery order from the identity,
which is always index 0.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceCapError
from .fields import is_prime

DEFAULT_CLOSURE_CAP = int(os.environ.get("EEA_CLOSURE_CAP", 200_000))
FULL_ASSOCIATIVITY_MAX = 256
TABLE_MAX_ORDER = 6000
MATRIX_PRIME_MAX = 37


class CyclicLaw:
    """Integers mod n under addition."""

    width = 1

    def __init__(self, n: int):
        self.n = n
        self.identity = np.zeros(1, dtype=np.int64)

    def compose(self, X, Y):
        return (X + Y) % self.n

    def inverse(self, X):
        return (-X) % self.n

    def canonical(self, X):
        return X % self.n

    def encode(self, X):
        return X[:, 0].astype(np.int64)

    def render(self, x) -> str:
        return str(int(x[0]))


class PermutationLaw:
    """Permutations of ``0..degree-1``; ``(x * y)[i] = x[y[i]]`` (apply y first)."""

    def __init__(self, degree: int):
        self.width = degree
        self.identity = np.arange(degree, dtype=np.int64)

    def compose(self, X, Y):
        return np.take_along_axis(X, Y, axis=1)

    def inverse(self, X):
        return np.argsort(X, axis=1).astype(np.int64)

    def canonical(self, X):
        return X

    def encode(self, X):
        key = np.zeros(len(X), dtype=np.int64)
        for c in range(self.width):
            key = key * self.width + X[:, c]
        return key

    def render(self, x) -> str:
        return "(" + " ".join(str(int(v)) for v in x) + ")"


class MatrixLaw:
    """2x2 matrices over F_p stored row-major as ``(a, b, c, d)``.

    ``quotient`` is ``"none"``, ``"pm"`` (modulo +-I, representative with the
    lexicographically smaller entry tuple) or ``"scalar"`` (modulo scalars,
    first nonzero entry in column-major order scaled to 1).
    """

    width = 4

    def __init__(self, p: int, quotient: str = "none"):
        if not is_prime(p):
            raise ValueError(f"matrix groups need a prime modulus, got {p}")
        if quotient not in ("none", "pm", "scalar"):
            raise ValueError(f"unknown quotient {quotient!r}")
        self.p = p
        self.quotient = quotient
        self.identity = np.array([1, 0, 0, 1], dtype=np.int64)
        self._inv = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)

    def det(self, X):
        return (X[:, 0] * X[:, 3] - X[:, 1] * X[:, 2]) % self.p

    def compose(self, X, Y):
        a, b, c, d = X.T
        e, f, g, h = Y.T
        out = np.stack([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], axis=1) % self.p
        return self.canonical(out)

    def inverse(self, X):
        di = self._inv[self.det(X)]
        a, b, c, d = X.T
        out = np.stack([d, -b, -c, a], axis=1) * di[:, None] % self.p
        return self.canonical(out)

    def canonical(self, X):
        p = self.p
        X = X % p
        if self.quotient == "pm":
            Y = (-X) % p
            take_neg = self._encode_raw(Y) < self._encode_raw(X)
            return np.where(take_neg[:, None], Y, X)
        if self.quotient == "scalar":
            lead = np.where(X[:, 0] != 0, X[:, 0], X[:, 2])
            return X * self._inv[lead][:, None] % p
        return X

    def _encode_raw(self, X):
        p = self.p
        return ((X[:, 0] * p + X[:, 1]) * p + X[:, 2]) * p + X[:, 3]

    def encode(self, X):
        return self._encode_raw(X)

    def render(self, x) -> str:
        a, b, c, d = (int(v) for v in x)
        return f"[[{a},{b}],[{c},{d}]]"


class FiniteGroup:
    """A finite group as an array of canonical element rows plus a law."""

    def __init__(self, law, elements: np.ndarray, name: str = "G"):
        self.law = law
        self.elements = elements
        self.elements.flags.writeable = False
        self.name = name
        keys = law.encode(elements)
        self._order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    identity = 0

    def index_of(self, rows) -> np.ndarray:
        """Indices of canonical element rows; raises ``KeyError`` for non-members."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        keys = self.law.encode(self.law.canonical(rows))
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise KeyError("element not in group")
        return self._order[pos]

    def mul(self, i: int, j: int) -> int:
        prod = self.law.compose(self.elements[[i]], self.elements[[j]])
        return int(self.index_of(prod)[0])

    def mul_many(self, I, J) -> np.ndarray:
        return self.index_of(self.law.compose(self.elements[np.asarray(I)], self.elements[np.asarray(J)]))

    def right_multiply(self, s: int) -> np.ndarray:
        """Indices of ``g * s`` for every element ``g``."""
        S = np.broadcast_to(self.elements[s], self.elements.shape)
        return self.index_of(self.law.compose(self.elements, np.ascontiguousarray(S)))

    @cached_property
    def inverse_table(self) -> np.ndarray:
        inv = self.index_of(self.law.inverse(self.elements))
        inv.flags.writeable = False
        return inv

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table, ``table[i, j] = index(g_i * g_j)``."""
        m = self.order
        if m > TABLE_MAX_ORDER:
            raise ResourceCapError(f"multiplication table of order {m} exceeds {TABLE_MAX_ORDER}")
        T = np.empty((m, m), dtype=np.int32)
        for j in range(m):
            T[:, j] = self.right_multiply(j)
        T.flags.writeable = False
        return T

    def label(self, i: int) -> str:
        return self.law.render(self.elements[i])

    @property
    def labels(self) -> list:
        return [self.label(i) for i in range(self.order)]

    def verify(self, seed: int = 0) -> None:
        """Check closure, identity, inverses and associativity; raise ``AssertionError`` on failure.

        Associativity is checked on all triples up to order 256 and on
        ``10 m^2`` seeded random triples above that.
        """
        m = self.order
        idx = np.arange(m)
        e = self.identity
        if m <= TABLE_MAX_ORDER:
            T = self.table
            assert np.all((0 <= T) & (T < m)), "closure"
            mul = lambda a, b: T[a, b]
        else:
            mul = self.mul_many
        assert np.array_equal(mul(idx, np.full(m, e)), idx), "right identity"
        assert np.array_equal(mul(np.full(m, e), idx), idx), "left identity"
        inv = self.inverse_table
        assert np.all(mul(idx, inv) == e), "right inverse"
        assert np.all(mul(inv, idx) == e), "left inverse"
        if m <= FULL_ASSOCIATIVITY_MAX:
            left = T[T[:, :, None], idx[None, None, :]]
            right = T[idx[:, None, None], T[None, :, :]]
            assert np.array_equal(left, right), "associativity"
            return
        rng = np.random.default_rng(seed)
        remaining = 10 * m * m
        while remaining > 0:
            k = min(remaining, 1 << 21)
            a, b, c = rng.integers(0, m, size=(3, k))
            assert np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c))), "associativity (sampled)"
            remaining -= k

    def to_json(self, include_table: bool = True) -> dict:
        d = {
            "name": self.name,
            "order": self.order,
            "identity": self.identity,
            "labels": self.labels,
            "inverse": self.inverse_table.tolist(),
        }
        if include_table:
            d["table"] = self.table.tolist()
        return d


def closure(law, generators: Sequence, name: str = "G", cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Breadth-first closure of ``generators`` under right multiplication."""
    gens = law.canonical(np.atleast_2d(np.asarray(generators, dtype=np.int64)).reshape(-1, law.width))
    ident = law.canonical(law.identity[None, :])
    found = [ident]
    known = {int(law.encode(ident)[0])}
    frontier = ident
    count = 1
    while len(frontier) and len(gens):
        F = np.repeat(frontier, len(gens), axis=0)
        G = np.tile(gens, (len(frontier), 1))
        prods = law.compose(F, G)
        keys = law.encode(prods)
        _, first = np.unique(keys, return_index=True)
        first.sort()
        fresh = [k for k in first if int(keys[k]) not in known]
        if not fresh:
            break
        frontier = prods[fresh]
        known.update(int(keys[k]) for k in fresh)
        count += len(fresh)
        if count > cap:
            raise ResourceCapError(f"group closure exceeded {cap} elements")
        found.append(frontier)
    return FiniteGroup(law, np.concatenate(found, axis=0), name)


def group_from_generators(generators: Sequence, p: int | None = None, quotient: str = "none", cap: int = DEFAULT_CLOSURE_CAP, name: str = "G") -> FiniteGroup:
    """Close a list of permutations (``p is None``) or of 2x2 matrices over F_p.

    Matrices may be given as ``[[a, b], [c, d]]`` or flat ``(a, b, c, d)``.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    if p is None:
        perms = [list(map(int, g)) for g in generators]
        deg = len(perms[0])
        for g in perms:
            if len(g) != deg or sorted(g) != list(range(deg)):
                raise ValueError(f"malformed permutation {g}")
        return closure(PermutationLaw(deg), perms, name, cap)
    law = MatrixLaw(p, quotient)
    flat = []
    for g in generators:
        arr = np.asarray(g, dtype=np.int64).reshape(-1)
        if arr.shape != (4,):
            raise ValueError(f"malformed 2x2 matrix {g}")
        flat.append(arr % p)
    flat = np.array(flat)
    if np.any(law.det(flat) == 0):
        raise ValueError("singular generator matrix")
    return closure(law, flat, name, cap)


def _check_matrix_prime(p: int):
    if not (is_prime(p) and p % 2 == 1 and p <= MATRIX_PRIME_MAX):
        raise ValueError(f"matrix groups take odd primes <= {MATRIX_PRIME_MAX}, got {p}")


def primitive_root(p: int) -> int:
    phi = p - 1
    factors = {f for f in range(2, phi + 1) if phi % f == 0 and is_prime(f)}
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    return 1


ELEMENTARY = ([1, 1, 0, 1], [1, 0, 1, 1])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return closure(CyclicLaw(n), [[1 % n]], f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon as permutations of its vertices (order 2n)."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return closure(PermutationLaw(n), [rot, ref], f"D{n}")


def symmetric_group(m: int) -> FiniteGroup:
    if not 1 <= m <= 7:
        raise ValueError("symmetric groups are supported for 1 <= m <= 7")
    if m == 1:
        return FiniteGroup(PermutationLaw(1), np.zeros((1, 1), dtype=np.int64), "S1")
    swap = list(range(m))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % m for i in range(m)]
    return closure(PermutationLaw(m), [swap, cycle], f"S{m}")


def sl2(p: int) -> FiniteGroup:
    _check_matrix_prime(p)
    return closure(MatrixLaw(p), ELEMENTARY, f"SL2(F{p})")


def psl2(q: int) -> FiniteGroup:
    _check_matrix_prime(q)
    return closure(MatrixLaw(q, "pm"), ELEMENTARY, f"PSL2(F{q})")


def pgl2(q: int) -> FiniteGroup:
    _check_matrix_prime(q)
    g = primitive_root(q)
    return closure(MatrixLaw(q, "scalar"), list(ELEMENTARY) + [[g, 0, 0, 1]], f"PGL2(F{q})")


@dataclass(frozen=True)
class GeneratingSet:
    """Indices into ``group``; ``symmetric`` means closed under inversion."""

    group: FiniteGroup
    indices: tuple

    @property
    def symmetric(self) -> bool:
        inv = self.group.inverse_table
        s = set(self.indices)
        return all(int(inv[i]) in s for i in s)

    @property
    def contains_identity(self) -> bool:
        return self.group.identity in self.indices

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def generating_set(group: FiniteGroup, elements: Iterable, symmetrize: bool = False) -> GeneratingSet:
    """Locate element rows in ``group``; optionally add missing inverses."""
    idx = [int(i) for i in group.index_of(np.asarray(list(elements), dtype=np.int64).reshape(-1, group.law.width))]
    if symmetrize:
        inv = group.inverse_table
        idx = idx + [int(inv[i]) for i in idx]
    seen, out = set(), []
    for i in idx:
        if i not in seen:
            seen.add(i)
            out.append(i)
    return GeneratingSet(group, tuple(out))


def elementary_generating_set(group: FiniteGroup) -> GeneratingSet:
    """``{A, A^-1, B, B^-1}`` for the elementary matrices A = [[1,1],[0,1]], B = [[1,0],[1,1]]."""
    return generating_set(group, ELEMENTARY, symmetrize=True)


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def lps_quadruples(p: int) -> list:
    """Integer solutions of ``a^2+b^2+c^2+d^2 = p`` with ``a > 0`` odd and ``b, c, d`` even."""
    r = int(p**0.5) + 1
    sols = []
    for a in range(1, r + 1, 2):
        for b in range(-r, r + 1):
            for c in range(-r, r + 1):
                for d in range(-r, r + 1):
                    if b % 2 or c % 2 or d % 2:
                        continue
                    if a * a + b * b + c * c + d * d == p:
                        sols.append((a, b, c, d))
    return sols


def lps_generating_set(p: int, q: int) -> GeneratingSet:
    """The p+1 LPS generators, in PSL2(F_q) if p is a square mod q, else in PGL2(F_q)."""
    if not (is_prime(p) and is_prime(q)) or p == q or p % 4 != 1 or q % 4 != 1:
        raise ValueError(f"LPS needs distinct primes p, q = 1 mod 4, got p={p}, q={q}")
    quads = lps_quadruples(p)
    if len(quads) != p + 1:
        raise RuntimeError(f"internal error: found {len(quads)} quadruples for p={p}, expected {p + 1}")
    i = next(x for x in range(1, q) if (x * x + 1) % q == 0)
    mats = np.array(
        [[a + i * b, c + i * d, -c + i * d, a - i * b] for a, b, c, d in quads], dtype=np.int64
    ) % q
    if legendre(p, q) == 1:
        group = psl2(q)
        # scale by t with t^2 = 1/p so every generator has determinant 1
        t = next(x for x in range(1, q) if x * x * p % q == 1)
        mats = mats * t % q
    else:
        group = pgl2(q)
    gs = generating_set(group, mats)
    if len(gs) != p + 1:
        # distinctness is only guaranteed for q > 2 sqrt(p)
        raise ValueError(f"LPS generators coincide mod q: {p + 1} quadruples give {len(gs)} elements for q={q}")
    return gs
