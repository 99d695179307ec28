"""Exact ground fields: the rationals and prime fields F_p.

Internally scalars are plain Python numbers: ``int`` residues in ``[0, p)``
for F_p, and ``int`` or ``Fraction`` for Q (integral rationals are kept as
``int`` so the common +-1 structure constants stay cheap).  :class:`Scalar`
wraps a value together with its field for use at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Number = Union[int, Fraction]


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    # deterministic Miller-Rabin for p < 3.3e24
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Field:
    """Either Q (``p is None``) or F_p for a prime ``p <= 2**61``."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int | None = None):
        if p is not None:
            if not _is_prime(p) or p > 2**61:
                raise FieldError(f"modulus {p} is not a prime <= 2^61")
        self.p = p
        self.zero = 0
        self.one = 1

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def __call__(self, x) -> Number:
        """Coerce ints, Fractions, Scalars and strings like ``"-3/4"``."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldError(f"cannot mix {x.field} with {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            raise FieldError(f"not a rational: {x!r}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise FieldError(f"not coercible to {self}: {x!r}")

    def reduce(self, x: Number) -> Number:
        if self.p is not None:
            return x % self.p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x: Number) -> Number:
        if self.p is not None:
            x %= self.p
            if x == 0:
                raise ZeroDivisionError("inverse of zero in " + repr(self))
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return self.reduce(Fraction(1) / x)

    def div(self, a: Number, b: Number) -> Number:
        return self.reduce(a * self.inv(b))

    def elements(self) -> Iterator[int]:
        if self.p is None:
            raise FieldError("QQ is infinite")
        return iter(range(self.p))

    def render(self, x: Number):
        """Canonical JSON rendering: ints for F_p, ``"a/b"`` strings for Q."""
        if self.p is not None:
            return int(x) % self.p
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def describe(self) -> dict:
        return {"rational": True} if self.p is None else {"prime": self.p}


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: Field
    value: Number

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, o) -> Number:
        if isinstance(o, Scalar):
            if o.field != self.field:
                raise FieldError("arithmetic across different fields")
            return o.value
        return self.field(o)

    def __add__(self, o):
        return Scalar(self.field, self.value + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return Scalar(self.field, self.value - self._other(o))

    def __rsub__(self, o):
        return Scalar(self.field, self._other(o) - self.value)

    def __mul__(self, o):
        return Scalar(self.field, self.value * self._other(o))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __truediv__(self, o):
        return Scalar(self.field, self.value * self.field.inv(self._other(o)))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __eq__(self, o) -> bool:
        if isinstance(o, Scalar):
            return self.field == o.field and self.value == o.value
        try:
            return self.value == self.field(o)
        except FieldError:
            return False

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return str(self.field.render(self.value))
