"""Exact scalars over Q and prime fields F_p, with a fixed total order.

Rationals are stored as `fractions.Fraction` (always reduced, positive
denominator), residues as plain ints in {0,...,p-1}.  The total order is the
natural order on Q and the residue order on F_p, so comparisons are
deterministic across runs.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, InputFormatError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Base class; use the QQ singleton or PrimeField(p)."""

    is_rationals = False
    p: int | None = None

    def elem(self, x) -> "FieldElement":
        raise NotImplementedError

    @property
    def zero(self) -> "FieldElement":
        return self.elem(0)

    @property
    def one(self) -> "FieldElement":
        return self.elem(1)

    def parse(self, text: str) -> "FieldElement":
        raise NotImplementedError

    def format(self, e: "FieldElement") -> str:
        return str(e.value)


class RationalField(Field):
    is_rationals = True

    def elem(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise FieldMismatchError("element of %r is not rational" % (x.field,))
            return x
        return FieldElement(self, Fraction(x))

    def parse(self, text: str) -> "FieldElement":
        try:
            return FieldElement(self, Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError("bad rational scalar %r: %s" % (text, exc)) from exc

    def __repr__(self):
        return "QQ"

    def __reduce__(self):  # keep the singleton under pickling
        return (_get_qq, ())


def _get_qq():
    return QQ


QQ = RationalField()


class PrimeField(Field):
    _cache: dict[int, "PrimeField"] = {}

    def __new__(cls, p: int):
        # interned per p so `field is field` works across call sites
        inst = cls._cache.get(p)
        if inst is None:
            if not is_prime(p):
                raise ValueError("modulus %r is not prime" % (p,))
            inst = super().__new__(cls)
            inst.p = p
            cls._cache[p] = inst
        return inst

    def elem(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise FieldMismatchError("element of %r is not in F_%d" % (x.field, self.p))
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            num = x.numerator % self.p
            den = pow(x.denominator % self.p, self.p - 2, self.p)
            return FieldElement(self, num * den % self.p)
        return FieldElement(self, int(x) % self.p)

    def elements(self):
        """All residues in increasing order."""
        for v in range(self.p):
            yield FieldElement(self, v)

    def parse(self, text: str) -> "FieldElement":
        try:
            return self.elem(int(text.strip()))
        except ValueError as exc:
            raise InputFormatError("bad residue %r: %s" % (text, exc)) from exc

    def __repr__(self):
        return "F%d" % self.p


class FieldElement:
    """An immutable exact scalar tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatchError("%r vs %r" % (self.field, other.field))
            return other
        if isinstance(other, int):
            return self.field.elem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.is_rationals:
            return FieldElement(self.field, self.value + other.value)
        return FieldElement(self.field, (self.value + other.value) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.is_rationals:
            return FieldElement(self.field, self.value - other.value)
        return FieldElement(self.field, (self.value - other.value) % self.field.p)

    def __rsub__(self, other):
        return self.field.elem(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.is_rationals:
            return FieldElement(self.field, self.value * other.value)
        return FieldElement(self.field, (self.value * other.value) % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.elem(other) / self

    def __neg__(self):
        if self.field.is_rationals:
            return FieldElement(self.field, -self.value)
        return FieldElement(self.field, (-self.value) % self.field.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in %r" % (self.field,))
        if self.field.is_rationals:
            return FieldElement(self.field, 1 / self.value)
        return FieldElement(self.field, pow(self.value, self.field.p - 2, self.field.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.value == other.value

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __lt__(self, other):
        return field_cmp(self, other) < 0

    def __le__(self, other):
        return field_cmp(self, other) <= 0

    def __gt__(self, other):
        return field_cmp(self, other) > 0

    def __ge__(self, other):
        return field_cmp(self, other) >= 0

    def __repr__(self):
        return self.field.format(self)


def field_cmp(a: FieldElement, b: FieldElement) -> int:
    """Total order: -1, 0 or +1.  Natural order on Q, residue order on F_p."""
    if not isinstance(a, FieldElement) or not isinstance(b, FieldElement):
        raise TypeError("field_cmp expects FieldElement operands")
    if a.field is not b.field:
        raise FieldMismatchError("%r vs %r" % (a.field, b.field))
    if a.value < b.value:
        return -1
    if a.value > b.value:
        return 1
    return 0


def parse_field(spec) -> Field:
    """Field from its JSON form: "Q" or {"Fp": p}."""
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        try:
            return PrimeField(int(spec["Fp"]))
        except ValueError as exc:
            raise InputFormatError(str(exc)) from exc
    if isinstance(spec, str) and spec.startswith("F"):
        try:
            return PrimeField(int(spec[1:]))
        except ValueError as exc:
            raise InputFormatError("bad field %r: %s" % (spec, exc)) from exc
    raise InputFormatError("bad field spec %r" % (spec,))


def field_to_json(field: Field):
    return "Q" if field.is_rationals else {"Fp": field.p}
