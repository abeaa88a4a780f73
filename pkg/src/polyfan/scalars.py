"""Exact ordered-field scalars: rationals and real quadratic extensions.

Rational values are plain :class:`fractions.Fraction` (or ``int``) objects.
Irrational values are :class:`Quadratic` elements ``a + b*sqrt(d)`` over a
square-free integer ``d >= 2``.  All comparisons are decided by integer
arithmetic; nothing in this package ever rounds to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class FieldMismatchError(ValueError):
    """Raised when quadratic scalars with different radicands are combined."""


class ScalarParseError(ValueError):
    """Raised when a serialized scalar cannot be parsed."""


def is_square_free(d: int) -> bool:
    if d < 2:
        return False
    n, p = d, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 1
    return True


class Quadratic:
    """Element ``a + b*sqrt(d)`` of the real quadratic field Q(sqrt(d)).

    ``a`` and ``b`` are stored as reduced fractions, ``d`` is a square-free
    integer >= 2 fixed per computation.  Instances are immutable and mix
    freely with ``int`` and ``Fraction`` operands.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not is_square_free(d):
            raise ValueError(f"radicand must be square-free and >= 2, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Quadratic is immutable")

    def _coerce(self, other) -> "Quadratic | None":
        if isinstance(other, Quadratic):
            if other.d != self.d:
                raise FieldMismatchError(
                    f"cannot mix sqrt({self.d}) with sqrt({other.d})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Quadratic(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(o.a - self.a, o.b - self.b, self.d)

    def __neg__(self):
        return Quadratic(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - o.b * o.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Quadratic(
            (self.a * o.a - self.b * o.b * self.d) / norm,
            (self.b * o.a - self.a * o.b) / norm,
            self.d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (Quadratic(1, 0, self.d) / self) ** (-exponent)
        out = Quadratic(1, 0, self.d)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "Quadratic":
        return Quadratic(self.a, -self.b, self.d)

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return _frac_sign(a)
        if a == 0:
            return _frac_sign(b)
        sa, sb = _frac_sign(a), _frac_sign(b)
        if sa == sb:
            return sa
        # Opposite signs: compare a^2 against b^2 * d exactly.
        cmp = _frac_sign(a * a - b * b * self.d)
        return sa if cmp > 0 else sb

    def __eq__(self, other):
        if isinstance(other, Quadratic):
            if other.d != self.d and (self.b != 0 or other.b != 0):
                return False
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"Quadratic({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        op = "+" if self.b > 0 else "-"
        return f"{self.a}{op}{abs(self.b)}*sqrt({self.d})"


Scalar = Union[int, Fraction, Quadratic]


def _frac_sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def sign(x: Scalar) -> int:
    """Exact sign (-1, 0, +1) of a scalar."""
    if isinstance(x, Quadratic):
        return x.sign()
    return _frac_sign(x)


def is_rational(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, Quadratic) and x.b == 0)


def to_fraction(x: Scalar) -> Fraction:
    """Rational value of a scalar; raises if the scalar is irrational."""
    if isinstance(x, Quadratic):
        if x.b != 0:
            raise ValueError(f"{x} is irrational")
        return x.a
    return Fraction(x)


@dataclass(frozen=True)
class Field:
    """Coefficient-field context: the rationals, or Q(sqrt(d)) for fixed d.

    The context owns scalar (de)serialization.  Rationals serialize as
    ``"p/q"`` or ``"p"``; quadratic scalars as a pair ``["p/q", "r/s"]``
    meaning ``p/q + (r/s)*sqrt(d)``.
    """

    d: int | None = None

    def __post_init__(self):
        if self.d is not None and not is_square_free(self.d):
            raise ValueError(f"radicand must be square-free and >= 2, got {self.d}")

    @staticmethod
    def rational() -> "Field":
        return Field(None)

    @staticmethod
    def quadratic(d: int) -> "Field":
        return Field(d)

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.is_rational else Quadratic(0, 0, self.d)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.is_rational else Quadratic(1, 0, self.d)

    def sqrt_generator(self) -> Quadratic:
        if self.is_rational:
            raise ValueError("the rational field has no radical generator")
        return Quadratic(0, 1, self.d)

    def parse(self, item) -> Scalar:
        """Parse one serialized scalar belonging to this field."""
        if isinstance(item, str):
            return _parse_fraction(item)
        if isinstance(item, list):
            if self.is_rational:
                raise ScalarParseError(
                    f"pair {item!r} only valid in a quadratic field context"
                )
            if len(item) != 2 or not all(isinstance(s, str) for s in item):
                raise ScalarParseError(f"expected [\"p/q\", \"r/s\"], got {item!r}")
            return Quadratic(_parse_fraction(item[0]), _parse_fraction(item[1]), self.d)
        raise ScalarParseError(f"cannot parse scalar {item!r}")

    def format(self, x: Scalar):
        """Serialize a scalar of this field (inverse of :meth:`parse`)."""
        if self.is_rational:
            return str(to_fraction(x))
        if isinstance(x, Quadratic):
            if x.d != self.d:
                raise FieldMismatchError(f"scalar {x} not in Q(sqrt({self.d}))")
            return [str(x.a), str(x.b)]
        return [str(Fraction(x)), "0"]

    def coerce(self, x: Scalar) -> Scalar:
        """Bring an int/Fraction/Quadratic into this field's representation."""
        if isinstance(x, Quadratic):
            if self.is_rational:
                return to_fraction(x)
            if x.d != self.d:
                raise FieldMismatchError(f"scalar {x} not in Q(sqrt({self.d}))")
            return x
        return Fraction(x) if self.is_rational else Quadratic(x, 0, self.d)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarParseError(f"invalid rational {text!r}: {exc}") from None
