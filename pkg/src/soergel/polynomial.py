# Sparse multivariate polynomials over an exact field, graded with deg(V) = 2,
# and the fraction field kept in factored num/den form.
#
# Exponent vectors are tuples of small ints; a polynomial is {exps: coeff}.
# Everything downstream (Demazure operators, weight rows, Hilbert counting)
# stays homogeneous, but the class itself does not insist on it.

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fieldops import QQ


@lru_cache(maxsize=None)
def monomials_of_polydeg(nv, k):
    """All exponent tuples of total degree k in nv variables, lex-descending."""
    if nv == 0:
        return ((),) if k == 0 else ()
    if nv == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in monomials_of_polydeg(nv - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nv, k):
    return {m: i for i, m in enumerate(monomials_of_polydeg(nv, k))}


def dim_graded_piece(nv, degree):
    """Dimension of the degree-d part of Sym(V), deg(V) = 2."""
    if degree < 0 or degree % 2 != 0:
        return 0
    return len(monomials_of_polydeg(nv, degree // 2))


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    __slots__ = ("nv", "field", "terms", "_hash")

    def __init__(self, nv, terms=None, field=QQ):
        self.nv = nv
        self.field = field
        self.terms = {e: c for e, c in (terms or {}).items() if c != field.zero()}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nv, field=QQ):
        return Poly(nv, {}, field)

    @staticmethod
    def constant(c, nv, field=QQ):
        c = field.of(c)
        return Poly(nv, {(0,) * nv: c}, field)

    @staticmethod
    def one(nv, field=QQ):
        return Poly.constant(1, nv, field)

    @staticmethod
    def variable(i, nv, field=QQ):
        e = tuple(1 if j == i else 0 for j in range(nv))
        return Poly(nv, {e: field.one()}, field)

    @staticmethod
    def linear_form(coeffs, field=QQ):
        """Degree-2 element of R with the given coordinates in the V-basis."""
        nv = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field.of(c)
            if c != field.zero():
                e = tuple(1 if j == i else 0 for j in range(nv))
                terms[e] = c
        return Poly(nv, terms, field)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        z = self.field.zero()
        for e, c in other.terms.items():
            s = out.get(e, z) + c
            if s == z:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.nv, out, self.field)

    def __sub__(self, other):
        out = dict(self.terms)
        z = self.field.zero()
        for e, c in other.terms.items():
            s = out.get(e, z) - c
            if s == z:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.nv, out, self.field)

    def __neg__(self):
        return Poly(self.nv, {e: -c for e, c in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out = {}
        z = self.field.zero()
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                e = _add_exps(e1, e2)
                s = out.get(e, z) + c1 * c2
                if s == z:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.nv, out, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.field.of(c)
        if c == self.field.zero():
            return Poly.zero(self.nv, self.field)
        return Poly(self.nv, {e: c * a for e, a in self.terms.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return not self.terms
            return self == Poly.constant(other, self.nv, self.field)
        return self.nv == other.nv and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nv, tuple(sorted(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Graded degree (2 * polynomial degree); None for the zero polynomial."""
        if not self.terms:
            return None
        return 2 * max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero())

    def constant_coeff(self):
        return self.terms.get((0,) * self.nv, self.field.zero())

    def leading(self):
        """(exps, coeff) of the lex-largest monomial."""
        e = max(self.terms)
        return e, self.terms[e]

    # -- division -----------------------------------------------------------

    def div_exact(self, g):
        """Exact division self / g; raises ValueError when not exact."""
        if g.is_zero:
            raise ValueError("polynomial division by zero")
        z = self.field.zero()
        ge, gc = g.leading()
        rem = dict(self.terms)
        out = {}
        while rem:
            re = max(rem)
            qe = tuple(a - b for a, b in zip(re, ge))
            if any(x < 0 for x in qe):
                raise ValueError("inexact polynomial division")
            qc = rem[re] / gc
            out[qe] = out.get(qe, z) + qc
            for e2, c2 in g.terms.items():
                e = _add_exps(qe, e2)
                s = rem.get(e, z) - qc * c2
                if s == z:
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return Poly(self.nv, out, self.field)

    def divides(self, other):
        try:
            other.div_exact(self)
            return True
        except ValueError:
            return False

    # -- substitution -------------------------------------------------------

    def subst_linear(self, images):
        """Substitute variable i by the linear form images[i] (a Poly)."""
        out = Poly.zero(self.nv, self.field)
        for e, c in self.terms.items():
            term = Poly.constant(c, self.nv, self.field)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * images[i]
            out = out + term
        return out

    def fmt(self, names=None):
        if not self.terms:
            return "0"
        names = names or ["e%d" % (i + 1) for i in range(self.nv)]
        from .fieldops import fmt_rational

        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = " ".join(
                names[i] if k == 1 else "%s^%d" % (names[i], k)
                for i, k in enumerate(e)
                if k
            )
            cs = fmt_rational(c)
            if mono:
                body = mono if cs == "1" else ("-" + mono if cs == "-1" else cs + " " + mono)
            else:
                body = cs
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "Poly(%s)" % self.fmt()


def normalize_key(p):
    """Scale a nonzero Poly so its lex-leading coefficient is 1.

    Returns (key, unit) with p == unit * key.
    """
    _, c = p.leading()
    one = p.field.one()
    if c == one:
        return p, one
    return p.scale(one / c), c


class RatFunc:
    """num / prod(key^mult) with monic factor keys; cancellation is attempted
    against the stored keys only (denominators in this artifact are products
    of root linear forms, so this is canonical enough in practice)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = dict(den or {})
        self._cancel()

    @staticmethod
    def from_poly(p):
        return RatFunc(p, {})

    @staticmethod
    def zero(nv, field=QQ):
        return RatFunc(Poly.zero(nv, field), {})

    @staticmethod
    def one(nv, field=QQ):
        return RatFunc(Poly.one(nv, field), {})

    def _cancel(self):
        if self.num.is_zero:
            self.den = {}
            return
        for key in list(self.den):
            while self.den.get(key, 0) > 0:
                try:
                    self.num = self.num.div_exact(key)
                except ValueError:
                    break
                self.den[key] -= 1
                if self.den[key] == 0:
                    del self.den[key]

    def den_poly(self):
        p = Poly.one(self.num.nv, self.num.field)
        for key, k in self.den.items():
            for _ in range(k):
                p = p * key
        return p

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_poly(self):
        return not self.den

    def to_poly(self):
        if self.den:
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def __add__(self, other):
        other = self._coerce(other)
        den = dict(self.den)
        for key, k in other.den.items():
            den[key] = max(den.get(key, 0), k)
        a = self.num
        for key, k in den.items():
            extra = k - self.den.get(key, 0)
            for _ in range(extra):
                a = a * key
        b = other.num
        for key, k in den.items():
            extra = k - other.den.get(key, 0)
            for _ in range(extra):
                b = b * key
        return RatFunc(a + b, den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        den = dict(self.den)
        for key, k in other.den.items():
            den[key] = den.get(key, 0) + k
        return RatFunc(self.num * other.num, den)

    def __rmul__(self, other):
        return self * other

    def inv(self):
        if self.num.is_zero:
            raise ZeroDivisionError("inverting zero rational function")
        key, unit = normalize_key(self.num)
        num = self.den_poly().scale(self.num.field.one() / unit)
        if key == Poly.one(key.nv, key.field):
            return RatFunc(num, {})
        return RatFunc(num, {key: 1})

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, {})
        return RatFunc(Poly.constant(other, self.num.nv, self.num.field), {})

    def __eq__(self, other):
        other = self._coerce(other)
        return (self - other).is_zero

    def __bool__(self):
        return not self.num.is_zero

    def __hash__(self):
        raise TypeError("RatFunc is unhashable")

    def subst_linear(self, images):
        num = self.num.subst_linear(images)
        den = {}
        for key, k in self.den.items():
            new_key, unit = normalize_key(key.subst_linear(images))
            for _ in range(k):
                num = num.scale(self.num.field.one() / unit)
            den[new_key] = den.get(new_key, 0) + k
        return RatFunc(num, den)

    def degree(self):
        if self.num.is_zero:
            return None
        return self.num.degree() - self.den_poly().degree()

    def __repr__(self):
        if not self.den:
            return "RatFunc(%s)" % self.num.fmt()
        return "RatFunc((%s) / (%s))" % (self.num.fmt(), self.den_poly().fmt())
