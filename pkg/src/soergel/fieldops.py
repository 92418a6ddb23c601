# Exact coefficient fields: the rationals (fractions.Fraction) and GF(p).

from __future__ import annotations

from fractions import Fraction


class GFElt:
    """An element of a prime field, usable with the arithmetic operators."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, GFElt):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return GFElt(self.p, other)
        if isinstance(other, Fraction):
            return GFElt(self.p, other.numerator) / GFElt(self.p, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return GFElt(self.p, self.v + o.v) if o is not NotImplemented else o

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return GFElt(self.p, self.v - o.v) if o is not NotImplemented else o

    def __rsub__(self, other):
        o = self._lift(other)
        return GFElt(self.p, o.v - self.v) if o is not NotImplemented else o

    def __mul__(self, other):
        o = self._lift(other)
        return GFElt(self.p, self.v * o.v) if o is not NotImplemented else o

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElt(self.p, self.v * pow(o.v, -1, self.p))

    def __rtruediv__(self, other):
        o = self._lift(other)
        return o / self if o is not NotImplemented else o

    def __neg__(self):
        return GFElt(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, GFElt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, Fraction):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v


class FieldSpec:
    """Tag for the coefficient field: the rationals or a prime field."""

    def __init__(self, char=0):
        if char != 0:
            if char < 2 or any(char % q == 0 for q in range(2, int(char ** 0.5) + 1)):
                raise ValueError("field characteristic must be 0 or a prime")
        self.char = char

    @property
    def is_rational(self):
        return self.char == 0

    def zero(self):
        return Fraction(0) if self.char == 0 else GFElt(self.char, 0)

    def one(self):
        return Fraction(1) if self.char == 0 else GFElt(self.char, 1)

    def of(self, x):
        """Coerce an int, Fraction, GFElt or "p/q" string into the field."""
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, GFElt):
            if self.char != x.p:
                raise ValueError("mixed characteristics")
            return x
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return GFElt(self.char, x.numerator) / GFElt(self.char, x.denominator)
        return GFElt(self.char, x)

    def to_json(self):
        return "Q" if self.char == 0 else {"Fp": self.char}

    @staticmethod
    def from_json(doc):
        if doc == "Q" or doc is None:
            return FieldSpec(0)
        if isinstance(doc, dict) and set(doc) == {"Fp"}:
            return FieldSpec(int(doc["Fp"]))
        raise ValueError("bad field tag: %r" % (doc,))

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.char == other.char

    def __hash__(self):
        return hash(("FieldSpec", self.char))

    def __repr__(self):
        return "Q" if self.char == 0 else "F%d" % self.char


QQ = FieldSpec(0)


def parse_rational(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def fmt_rational(x):
    if isinstance(x, GFElt):
        return str(x.v)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)
