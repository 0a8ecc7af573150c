"""Exact scalar ring (a + b*sqrt(2)) / 2**k.

Every diagram value lives in this ring: it is closed under the arithmetic
generated by the H, X, Z, CNOT, and CZ gate amplitudes, and it supports exact
equality and hashing, which hash-consing requires.  Booleans and plain
integers are carried as degenerate cases: false = (0,0,0), true = (1,0,0),
and an integer n = (n,0,0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValueDomainError


@dataclass(frozen=True, slots=True)
class Value:
    """The real number (a + b*sqrt(2)) / 2**k, kept in canonical form.

    Canonical form: while a and b are both even and k > 0, the triple is
    rewritten (a/2, b/2, k-1).  Zero is uniquely (0, 0, 0).
    """

    a: int
    b: int
    k: int = 0

    def __post_init__(self) -> None:
        a, b, k = self.a, self.b, self.k
        if k < 0:
            raise ValueError(f"denominator exponent must be >= 0, got {k}")
        while k > 0 and a % 2 == 0 and b % 2 == 0:
            a //= 2
            b //= 2
            k -= 1
        if a == 0 and b == 0:
            k = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_int(cls, n: int) -> Value:
        return cls(n, 0, 0)

    @classmethod
    def from_bool(cls, flag: bool) -> Value:
        return TRUE if flag else FALSE

    def __add__(self, other: Value) -> Value:
        if not isinstance(other, Value):
            return NotImplemented
        k = max(self.k, other.k)
        sa = self.a << (k - self.k)
        sb = self.b << (k - self.k)
        oa = other.a << (k - other.k)
        ob = other.b << (k - other.k)
        return Value(sa + oa, sb + ob, k)

    def __sub__(self, other: Value) -> Value:
        return self + (-other)

    def __neg__(self) -> Value:
        return Value(-self.a, -self.b, self.k)

    def __mul__(self, other: Value) -> Value:
        if not isinstance(other, Value):
            return NotImplemented
        a = self.a * other.a + 2 * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return Value(a, b, self.k + other.k)

    def scale_int(self, n: int) -> Value:
        return Value(self.a * n, self.b * n, self.k)

    def div_pow2(self, n: int) -> Value:
        """Exact division by 2**n (always closed in the ring)."""
        return Value(self.a, self.b, self.k + n)

    def squared_magnitude(self) -> Value:
        # values are real, so |v|^2 is plain squaring
        return self * self

    def sign(self) -> int:
        """Exact sign: -1, 0, or +1.  Uses a*a vs 2*b*b when a, b disagree."""
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # signs differ; sqrt(2) irrational, so a*a == 2*b*b only at zero
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return -1 if a * a > 2 * b * b else 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_boolean(self) -> bool:
        return self == FALSE or self == TRUE

    def as_bool(self) -> bool:
        if self == TRUE:
            return True
        if self == FALSE:
            return False
        raise ValueDomainError(f"{self!r} is not a boolean value")

    def fixed_point(self, precision: int = 128) -> int:
        """Round to an integer numerator over 2**(precision + k).

        Used only for cumulative sampling draws; all comparisons that affect
        correctness (signs, equality) stay exact.
        """
        sqrt2 = math.isqrt(2 << (2 * precision))
        return (self.a << precision) + self.b * sqrt2

    def to_float(self) -> float:
        return (self.a + self.b * math.sqrt(2.0)) / (1 << self.k)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.k}"

    def __repr__(self) -> str:
        return f"Value({self.a}, {self.b}, {self.k})"


FALSE = Value(0, 0, 0)
TRUE = Value(1, 0, 0)
ZERO = FALSE
ONE = TRUE
SQRT2_HALF = Value(0, 1, 1)  # 1/sqrt(2), the Hadamard amplitude


def as_value(x: Value | bool | int) -> Value:
    """Coerce a boolean or integer into the ring; Values pass through."""
    if isinstance(x, Value):
        return x
    if isinstance(x, bool):
        return Value.from_bool(x)
    if isinstance(x, int):
        return Value.from_int(x)
    raise TypeError(f"cannot interpret {x!r} as a ring value")


def _require_bool(u: Value, v: Value) -> None:
    if not (u.is_boolean() and v.is_boolean()):
        raise ValueDomainError(f"boolean operation on non-boolean values {u!r}, {v!r}")


@dataclass(frozen=True, slots=True)
class BinaryOp:
    """A pointwise binary operation on ring values.

    The name doubles as the memoization key, so user-supplied operations must
    be pure and uniquely named.
    """

    name: str
    fn: object  # Callable[[Value, Value], Value]; kept loose for frozen slots

    def __call__(self, u: Value, v: Value) -> Value:
        return self.fn(u, v)  # type: ignore[operator]


def _and(u: Value, v: Value) -> Value:
    _require_bool(u, v)
    return TRUE if (u == TRUE and v == TRUE) else FALSE


def _or(u: Value, v: Value) -> Value:
    _require_bool(u, v)
    return TRUE if (u == TRUE or v == TRUE) else FALSE


def _xor(u: Value, v: Value) -> Value:
    _require_bool(u, v)
    return TRUE if u != v else FALSE


PLUS = BinaryOp("plus", lambda u, v: u + v)
MINUS = BinaryOp("minus", lambda u, v: u - v)
TIMES = BinaryOp("times", lambda u, v: u * v)
AND = BinaryOp("and", _and)
OR = BinaryOp("or", _or)
XOR = BinaryOp("xor", _xor)
FIRST = BinaryOp("first", lambda u, v: u)

OPS = {op.name: op for op in (PLUS, MINUS, TIMES, AND, OR, XOR, FIRST)}
