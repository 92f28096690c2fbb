"""Scalar fields: exact rationals, prime fields F_p, and double-precision reals.

Scalars are stored in their native Python form: :class:`fractions.Fraction`
for the rationals (always in lowest terms), a reduced ``int`` residue for
F_p, and ``float`` for the reals.  Vectors and matrices are numpy arrays
with ``dtype=object`` for the exact fields and ``float64`` for the reals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import FieldMismatchError

KINDS = ("rational", "prime", "real")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.kind} field takes no modulus")

    @property
    def exact(self) -> bool:
        return self.kind != "real"

    @property
    def dtype(self):
        return float if self.kind == "real" else object

    def __str__(self):
        return f"prime:{self.p}" if self.kind == "prime" else self.kind

    # -- scalars -------------------------------------------------------

    def coerce(self, value):
        """Convert ``value`` (int, Fraction, float, or string) into this field."""
        if isinstance(value, str):
            value = value.strip()
            if self.kind == "real":
                return float(Fraction(value)) if "/" in value else float(value)
            value = Fraction(value)
        if self.kind == "rational":
            if isinstance(value, float) and not np.isfinite(value):
                raise ValueError("non-finite value in rational field")
            return Fraction(value)
        if self.kind == "real":
            return float(value)
        p = self.p
        if isinstance(value, (int, np.integer)):
            return int(value) % p
        value = Fraction(value)
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
        return value.numerator * pow(den, -1, p) % p

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "prime":
            return pow(a, -1, self.p)
        if self.kind == "rational":
            return 1 / a
        return 1.0 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        if self.kind == "real":
            return repr(float(a))
        return str(a)

    # -- arrays ----------------------------------------------------------

    def zeros(self, shape) -> np.ndarray:
        if self.kind == "real":
            return np.zeros(shape, dtype=float)
        # one shared immutable zero keeps large object arrays cheap
        return np.full(shape, self.zero, dtype=object)

    def array(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=object if self.exact else float)
        if self.kind == "real":
            return values.astype(float)
        out = np.empty(values.shape, dtype=object)
        flat_in = values.ravel()
        flat_out = out.ravel()
        for k, v in enumerate(flat_in):
            flat_out[k] = self.coerce(v)
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Bring an array produced by ring operations back into canonical form."""
        if self.kind == "prime":
            return arr % self.p
        return arr

    def check_same(self, other: "Field"):
        if self != other:
            raise FieldMismatchError(f"field mismatch: {self} vs {other}")

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "prime":
            d["p"] = self.p
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Field":
        return cls(d["kind"], d.get("p"))


RATIONAL = Field("rational")
REAL = Field("real")


def prime_field(p: int) -> Field:
    return Field("prime", p)


def parse_field(text) -> Field:
    """Parse ``rational``, ``real``, ``prime:P`` (also ``F_P`` / ``GF(P)``)."""
    if isinstance(text, Field):
        return text
    t = str(text).strip().lower()
    if t in ("rational", "q", "qq"):
        return RATIONAL
    if t in ("real", "r", "rr"):
        return REAL
    for prefix in ("prime:", "f_", "f", "gf(", "gf"):
        if t.startswith(prefix):
            digits = t[len(prefix):].rstrip(")")
            if digits.isdigit():
                return prime_field(int(digits))
    raise ValueError(f"cannot parse field {text!r}")
