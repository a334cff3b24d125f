"""Exact scalar fields: the rationals and prime fields.

Rational scalars are ``gmpy2.mpq`` values (exact like
:class:`fractions.Fraction`, several times faster), prime-field scalars are
plain ``int`` residues in ``range(p)``.  Both are immutable and
compare structurally, so vectors of scalars can be stored in tuples and used
as dictionary keys.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from gmpy2 import mpq

RATIONALS = "Q"
PRIME = "GF"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Which field the scalars live in.

    Use the module-level :data:`QQ` and :func:`GF` rather than calling the
    constructor directly.
    """

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME

    @property
    def name(self) -> str:
        """Short name as used on the command line: ``q`` or ``f<p>``."""
        return "q" if self.kind == RATIONALS else f"f{self.p}"

    @classmethod
    def from_name(cls, name: str) -> "FieldSpec":
        name = name.strip().lower()
        if name in ("q", "qq", "rationals"):
            return QQ
        if name.startswith("f") and name[1:].isdigit():
            return GF(int(name[1:]))
        raise ValueError(f"unknown field {name!r}; expected 'q' or 'f<prime>'")

    def __repr__(self):
        return "QQ" if self.kind == RATIONALS else f"GF({self.p})"

    # -- element handling ---------------------------------------------------

    def __call__(self, value):
        """Coerce an int, rational or string such as ``"-3/4"`` into the field."""
        if isinstance(value, str):
            value = mpq(value.strip())
        if self.p is None:
            return mpq(value)
        if isinstance(value, int):
            return value % self.p
        return int(value.numerator) * pow(int(value.denominator), -1, self.p) % self.p

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def reduce(self, a):
        """Normalize the result of ring arithmetic on field elements."""
        return a if self.p is None else a % self.p

    def elements(self) -> Iterator[int]:
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return iter(range(self.p))

    # -- serialization ------------------------------------------------------

    def encode(self, a):
        """JSON form: ``"a/b"`` (``"a"`` when b is 1) over Q, an int residue over GF(p)."""
        if self.p is None:
            return str(a)
        return int(a)

    def decode(self, token):
        if self.p is None:
            if isinstance(token, (bool, float)) or not isinstance(token, (int, str)):
                raise ValueError(f"inexact or malformed scalar {token!r}; use an integer or 'a/b' string")
            return self(token)
        if isinstance(token, bool) or isinstance(token, float):
            raise ValueError(f"bad residue {token!r}")
        return self(token)


QQ = FieldSpec(RATIONALS)


def GF(p: int) -> FieldSpec:
    return FieldSpec(PRIME, p)
