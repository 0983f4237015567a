"""Exact scalar arithmetic over the rationals and prime fields.

Scalars are either reduced fractions (characteristic 0) or canonical residues
in [0, p).  Square roots are decided exactly: perfect-square test over the
rationals, Euler criterion plus Tonelli-Shanks over F_p.  No floating point
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .errors import DivisionByZero, FieldMismatch, NonPrimeModulus, UnsupportedModulus

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^31."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # Miller-Rabin with bases (2, 7, 61) is exact below 3 215 031 751,
    # which covers the whole supported range.
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The rationals, or a prime field F_p with 2 <= p < 2^31."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: Optional[int] = None):
        if kind == "Q":
            p = None
        elif kind == "Fp":
            if p is None or p >= MAX_MODULUS or p < 2:
                raise UnsupportedModulus(p if p is not None else -1)
            if not is_prime(p):
                raise NonPrimeModulus(p)
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Field is immutable")

    @property
    def char(self) -> int:
        return 0 if self.kind == "Q" else self.p  # type: ignore[return-value]

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"

    def scalar(self, value: Union[int, str, Fraction, "Scalar"]) -> "Scalar":
        """Coerce an int, Fraction, "num/den" string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value} is not a {self} scalar")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if self.kind == "Q":
            return Scalar(self, Fraction(value))
        p = self.p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {p}")
            return Scalar(self, value.numerator * pow(value.denominator, -1, p) % p)
        return Scalar(self, value % p)

    def zero(self) -> "Scalar":
        return self.scalar(0)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def elements(self):
        """Iterate all field elements (prime fields only)."""
        if self.kind != "Fp":
            raise ValueError("cannot enumerate the rationals")
        return (Scalar(self, v) for v in range(self.p))

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}


def field_make(spec) -> Field:
    """Construct a field from {"kind":"Q"} / {"kind":"Fp","p":5}, "Q"/"F5",
    a bare prime, or a Field."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, int) and not isinstance(spec, bool):
        return Field("Fp", spec)
    if isinstance(spec, dict):
        if spec.get("kind") == "Q":
            return QQ
        return Field("Fp", int(spec["p"]))
    if isinstance(spec, str):
        if spec == "Q":
            return QQ
        if spec.startswith("F") and spec[1:].isdigit():
            return Field("Fp", int(spec[1:]))
        raise ValueError(f"bad field spec {spec!r}")
    raise ValueError(f"bad field spec {spec!r}")


class Scalar:
    """Immutable exact field element: Fraction over Q, residue in [0,p) over F_p."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _check(self, other: "Scalar"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        v = self.value + other.value
        return Scalar(self.field, v % self.field.p if self.field.kind == "Fp" else v)

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        v = self.value - other.value
        return Scalar(self.field, v % self.field.p if self.field.kind == "Fp" else v)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        v = self.value * other.value
        return Scalar(self.field, v % self.field.p if self.field.kind == "Fp" else v)

    def __neg__(self) -> "Scalar":
        v = -self.value
        return Scalar(self.field, v % self.field.p if self.field.kind == "Fp" else v)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * inv(other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Scalar)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return str(self.value)

    def to_json(self):
        """Rationals as "num/den" strings, F_p residues as plain ints."""
        if self.field.kind == "Fp":
            return int(self.value)
        return str(self.value)


def inv(a: Scalar) -> Scalar:
    """Exact multiplicative inverse; raises DivisionByZero on 0."""
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    if a.field.kind == "Q":
        return Scalar(a.field, 1 / a.value)
    return Scalar(a.field, pow(a.value, -1, a.field.p))


def _isqrt_exact(n: int) -> Optional[int]:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _tonelli_shanks(a: int, p: int) -> int:
    """A square root of a mod odd prime p, assuming one exists."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Factor p-1 = q * 2^s with q odd.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    # Smallest quadratic nonresidue as the auxiliary generator (deterministic).
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt(a: Scalar) -> Optional[Scalar]:
    """Some r with r*r == a, or None if a is not a square.

    Deterministic choice: nonnegative root over Q, smaller residue over F_p.
    """
    if a.field.kind == "Q":
        v: Fraction = a.value
        if v < 0:
            return None
        num = _isqrt_exact(v.numerator)
        den = _isqrt_exact(v.denominator)
        if num is None or den is None:
            return None
        return Scalar(a.field, Fraction(num, den))
    p = a.field.p
    if p == 2 or a.value == 0:
        return Scalar(a.field, a.value)  # squaring is the identity on F_2
    if pow(a.value, (p - 1) // 2, p) != 1:
        return None
    r = _tonelli_shanks(a.value, p)
    return Scalar(a.field, min(r, p - r))


QQ = Field("Q")
F2 = Field("Fp", 2)
F3 = Field("Fp", 3)
F5 = Field("Fp", 5)
