"""Exact coefficient arithmetic over GF(p) and the rationals.

Scalars are plain Python values: canonical residues (``int`` in ``[0, p)``)
for a prime field and ``fractions.Fraction`` for the rationals.  A field
object supplies the arithmetic and the canonical form; values are never
coerced between fields, a mismatch is a :class:`UsageError`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import UsageError

Scalar = Union[int, Fraction]


def _is_prime(p: int) -> bool:
    # trial division; moduli used here are small (2, 5, 32003, ...)
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


class FieldSpec:
    """Interface shared by :class:`PrimeField` and :class:`RationalField`."""

    zero: Scalar
    one: Scalar

    def normalize(self, a) -> Scalar:
        raise NotImplementedError

    def check(self, a) -> Scalar:
        """Return ``a`` if it is a canonical member of this field, else raise."""
        raise NotImplementedError

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def neg(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def is_zero(self, a: Scalar) -> bool:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def format(self, a: Scalar) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise UsageError(f"modulus {self.p} is not prime")

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def normalize(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, int):
            raise UsageError(f"{a!r} is not a GF({self.p}) scalar")
        return a % self.p

    def check(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.p:
            raise UsageError(f"{a!r} is not a canonical GF({self.p}) residue")
        return a

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, -1, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def parse(self, text: str) -> int:
        try:
            return int(text, 10) % self.p
        except ValueError:
            raise UsageError(f"{text!r} is not a GF({self.p}) scalar") from None

    def format(self, a: int) -> str:
        return str(a % self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class RationalField(FieldSpec):
    # Fraction keeps lowest terms and a positive denominator, which is
    # exactly the canonical form; ints are accepted and promoted.

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def normalize(self, a) -> Fraction:
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise UsageError(f"{a!r} is not a rational scalar")
        return Fraction(a)

    def check(self, a) -> Fraction:
        return self.normalize(a)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        return 1 / Fraction(a)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{text!r} is not a rational scalar") from None

    def format(self, a: Fraction) -> str:
        return str(Fraction(a))

    def __str__(self) -> str:
        return "Q"


def field_from_text(token: str) -> FieldSpec:
    """Build a field from a CLI token: a prime, or ``q`` for the rationals."""
    tok = token.strip().lower()
    if tok in ("q", "rational", "rationals"):
        return RationalField()
    try:
        p = int(tok, 10)
    except ValueError:
        raise UsageError(f"unknown field {token!r} (expected a prime or 'q')") from None
    return PrimeField(p)


def arith(field: FieldSpec, op: str, a: Scalar, b: Scalar) -> Scalar:
    """Checked binary operation; both operands must be canonical for *field*."""
    a = field.check(a)
    b = field.check(b)
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    raise UsageError(f"unknown operation {op!r}")


def inv(field: FieldSpec, a: Scalar) -> Scalar:
    return field.inv(field.check(a))
