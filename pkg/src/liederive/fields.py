"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values.  Prime-field
scalars are :class:`GFElement` instances carrying their modulus, so every
algorithm in the package can be written with ordinary ``+ - * /`` operators
and ``x == 0`` tests regardless of the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


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


class GFElement:
    """Residue class modulo a prime ``p``; ``value`` is kept in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p}) elements")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return 1 / GFElement(pow(self.value, -e, self.p), self.p)
        return GFElement(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF{self.p}({self.value})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``kind="Q"``) or a prime field (``kind="GF"``)."""

    kind: str = "Q"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "GF":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"GF requires a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, GFElement or scalar string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "Q":
            if isinstance(x, GFElement):
                raise TypeError("cannot coerce a prime-field element to Q")
            return Fraction(x)
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError(f"GF({x.p}) element in GF({self.p})")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
        return GFElement(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def parse(self, s: str):
        s = s.strip()
        if self.kind == "Q":
            return Fraction(s)
        return self(Fraction(s))

    def format(self, x) -> str:
        """Serialize: ``"a/b"`` (reduced, b > 0) over Q, decimal residue over GF(p)."""
        x = self(x)
        if self.kind == "Q":
            return f"{x.numerator}/{x.denominator}"
        return str(x.value)

    def elements(self):
        """All field elements (prime fields only)."""
        if self.kind != "GF":
            raise ValueError("Q is infinite")
        return [GFElement(v, self.p) for v in range(self.p)]

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "GF", "p": self.p}

    @classmethod
    def from_json(cls, d: dict) -> FieldSpec:
        kind = d.get("kind", "Q")
        return cls("Q") if kind == "Q" else cls("GF", int(d["p"]))

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("GF", p)
