"""Exact scalar fields: the rationals and prime fields GF(p) with p > 3.

A field object converts Python numbers and strings into its elements and
exposes ``zero``, ``one`` and ``characteristic``.  Elements support the usual
arithmetic operators, so the linear algebra code is field-agnostic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

import gmpy2
from gmpy2 import mpq

__all__ = ["Field", "QQ", "GF", "PrimeField", "parse_field"]

_MPQ = type(mpq(0))


class Field:
    characteristic: int = 0
    name: str = "?"

    zero: object
    one: object

    def __call__(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        """Read an integer or ``p/q`` literal."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(int(num)) / self(int(den))
        return self(int(text))

    def format(self, value) -> str:
        return str(value)

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    """The rationals, backed by :class:`gmpy2.mpq` (always in lowest terms)."""

    characteristic = 0
    name = "QQ"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, PrimeFieldElement):
            raise TypeError("cannot coerce a prime-field element into QQ")
        return mpq(value)

    def format(self, value) -> str:
        value = mpq(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (_rational_field, ())


@total_ordering
class PrimeFieldElement:
    __slots__ = ("v",)
    p: int = 0

    def __init__(self, v: int):
        self.v = v % self.p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise TypeError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.v)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return type(self)(pow(self.v, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * type(self)(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(o) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    # ordering only exists so elements can be sorted deterministically
    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.v < o % self.p

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"

    def __str__(self):
        return str(self.v)

    def __reduce__(self):
        return (_prime_element, (self.p, self.v))


_element_classes: dict[int, type] = {}


def _element_class(p: int) -> type:
    cls = _element_classes.get(p)
    if cls is None:
        cls = type(f"GF{p}Element", (PrimeFieldElement,), {"__slots__": (), "p": p})
        _element_classes[p] = cls
    return cls


def _prime_element(p: int, v: int):
    return _element_class(p)(v)


def _rational_field():
    return QQ


class PrimeField(Field):
    """GF(p) for a prime p other than 2 and 3."""

    def __init__(self, p: int):
        p = int(p)
        if p in (2, 3):
            raise ValueError("characteristic 2 and 3 are not supported")
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"GF({p})"
        self._cls = _element_class(p)
        self.zero = self._cls(0)
        self.one = self._cls(1)

    def __call__(self, value):
        if isinstance(value, PrimeFieldElement):
            if value.p != self.characteristic:
                raise TypeError(f"cannot coerce GF({value.p}) element into {self.name}")
            return value
        if isinstance(value, int):
            return self._cls(value)
        if isinstance(value, _MPQ):
            num, den = int(value.numerator), int(value.denominator)
        else:
            frac = Fraction(value)
            num, den = frac.numerator, frac.denominator
        return self._cls(num) / self._cls(den)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __reduce__(self):
        return (GF, (self.characteristic,))


QQ = RationalField()

_prime_fields: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    field = _prime_fields.get(p)
    if field is None:
        field = PrimeField(p)
        _prime_fields[p] = field
    return field


def parse_field(text: str | None) -> Field:
    """``None``/``"QQ"``/``"rationals"`` -> QQ; ``"p=251"``/``"251"``/``"GF(251)"`` -> GF(251)."""
    if text is None:
        return QQ
    t = text.strip().lower()
    if t in ("", "qq", "q", "rationals", "rational"):
        return QQ
    for prefix in ("p=", "gf(", "gf"):
        if t.startswith(prefix):
            t = t[len(prefix):]
            break
    t = t.rstrip(")")
    return GF(int(t))
