"""Exact field arithmetic over arbitrary-precision rationals and prime fields.

A :class:`FieldCtx` fixes the field (the rationals, or GF(p) for a prime p);
a :class:`FieldElement` is an immutable, canonical-form value tagged with its
context.  Mixing elements from different contexts raises
:class:`~tdpverify.errors.CtxMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .errors import CtxMismatch, DivisionByZero

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


@dataclass(frozen=True)
class FieldCtx:
    """Field context: rationals when ``p`` is None, GF(p) otherwise."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not is_probable_prime(self.p)):
            raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def rational(cls) -> "FieldCtx":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldCtx":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def canonical(self, value) -> Fraction | int:
        """Reduce a raw int/Fraction into canonical form for this field."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value % self.p

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.canonical(value))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def from_integer(self, n: int) -> "FieldElement":
        return self.element(n)

    def parse(self, text: str) -> "FieldElement":
        """Parse "num", "-num" or "num/den" in this context."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.element(Fraction(int(num), int(den)))
        return self.element(int(text))

    def random_element(self, rng: Random, span: int = 999) -> "FieldElement":
        """Uniform residue for GF(p); uniform integer in [-span, span] for Q."""
        if self.p is not None:
            return self.element(rng.randrange(self.p))
        return self.element(rng.randint(-span, span))

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldCtx":
        if obj.get("kind") == "rational":
            return cls.rational()
        if obj.get("kind") == "prime":
            return cls.prime(int(obj["p"]))
        raise ValueError(f"unknown field kind: {obj!r}")

    def __str__(self):
        return "rational" if self.p is None else f"prime:{self.p}"

    @classmethod
    def from_str(cls, text: str) -> "FieldCtx":
        """Parse the compact "rational" / "prime:P" form used by the CLI."""
        text = text.strip()
        if text == "rational":
            return cls.rational()
        if text.startswith("prime:"):
            return cls.prime(int(text.split(":", 1)[1]))
        raise ValueError(f"unknown field spec: {text!r}")


@dataclass(frozen=True)
class FieldElement:
    """Immutable canonical-form scalar tagged with its FieldCtx."""

    ctx: FieldCtx
    value: Fraction | int

    def _coerced(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __neg__(self):
        return self.ctx.element(-self.value)

    def __pow__(self, k: int):
        if self.ctx.p is not None:
            try:
                return self.ctx.element(pow(self.value, k, self.ctx.p))
            except ValueError:
                raise DivisionByZero("0 has no negative power") from None
        if k < 0:
            return self.inv() ** (-k)
        return self.ctx.element(self.value**k)

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero("inverse of zero")
        if self.ctx.p is not None:
            return self.ctx.element(pow(self.value, self.ctx.p - 2, self.ctx.p))
        return self.ctx.element(1 / Fraction(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        if self.ctx.p is None and self.value.denominator != 1:
            return f"{self.value.numerator}/{self.value.denominator}"
        return str(self.value if self.ctx.p is not None else self.value.numerator)

    def __repr__(self):
        return f"FieldElement({self.ctx}, {self})"


def from_integer(n: int, ctx: FieldCtx) -> FieldElement:
    """Canonical image of the integer n in the field."""
    return ctx.from_integer(n)


def arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Dispatch a named field operation; unary ops ignore b."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b is None or b.is_zero:
            raise DivisionByZero("division by zero")
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation: {op!r}")
