# The Hecke algebra of (W, S) in the {H_w} normalization with
# (H_s - v^-1)(H_s + v) = 0, its parabolic bimodules with basis
# {^{S1}H^{S2}_x}, the bar involution, omega, epsilon, the star product,
# character-level predictions and bar-invariant triangular bases.

from __future__ import annotations

from . import laurent as L
from .errors import MiddleMismatch, NonUnitriangularBar, NotInParabolicModule


class HeckeElt:
    """Finitely supported Z[v,v^-1]-combination of the standard basis."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}

    @staticmethod
    def zero(group):
        return HeckeElt(group, {})

    @staticmethod
    def unit(group):
        return HeckeElt(group, {group.identity: L.one()})

    @staticmethod
    def std(group, w):
        """H_w for an Element or word string."""
        if isinstance(w, str):
            w = group.from_word(w)
        return HeckeElt(group, {w: L.one()})

    @property
    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def coeff(self, w):
        return self.coeffs.get(w, {})

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = L.add(out.get(w, {}), c)
        return HeckeElt(self.group, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = L.sub(out.get(w, {}), c)
        return HeckeElt(self.group, out)

    def __neg__(self):
        return HeckeElt(self.group, {w: L.scale(c, -1) for w, c in self.coeffs.items()})

    def scale(self, lau):
        return HeckeElt(
            self.group, {w: L.mul(c, lau) for w, c in self.coeffs.items()}
        )

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and self.coeffs == other.coeffs

    def __hash__(self):
        raise TypeError("HeckeElt is unhashable")

    def to_json(self):
        out = {}
        for w in sorted(self.coeffs):
            out["H" + w.name()] = L.fmt(self.coeffs[w])
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            "(%s)H%s" % (L.fmt(c), w.name()) for w, c in sorted(self.coeffs.items())
        )


class _HeckeOps:
    """Per-group multiplication/inversion tables."""

    def __init__(self, group):
        self.group = group
        self._left_lines = {}
        self._inverses = {}

    def left_gen(self, i, w):
        """H_{s_i} * H_w as a coefficient dict."""
        key = (i, w)
        line = self._left_lines.get(key)
        if line is None:
            g = self.group
            sw = g.mul(g.generator(i), w)
            if sw.length > w.length:
                line = {sw: L.one()}
            else:
                line = {sw: L.one(), w: L.parse("v^-1 - v")}
            self._left_lines[key] = line
        return line

    def inverse(self, w):
        """H_w^{-1} as a HeckeElt."""
        out = self._inverses.get(w)
        if out is None:
            g = self.group
            if not w.word:
                out = HeckeElt.unit(g)
            else:
                i = w.word[0]
                rest = g.from_word(w.word[1:])
                # H_w = H_s H_rest, so H_w^-1 = H_rest^-1 H_s^-1
                s_inv = HeckeElt(
                    g,
                    {g.generator(i): L.one(), g.identity: L.parse("v - v^-1")},
                )
                out = hecke_mul(self.inverse(rest), s_inv)
            self._inverses[w] = out
        return out


_OPS = {}


def _ops(group):
    ops = _OPS.get(id(group))
    if ops is None:
        ops = _HeckeOps(group)
        _OPS[id(group)] = ops
    return ops


def hecke_mul(h1, h2):
    """Bilinear product; computed by peeling reduced words on the left factor."""
    g = h1.group
    ops = _ops(g)
    out = {}

    def accumulate(word_rev, coeff, w2):
        # multiply H_{word} * H_{w2}, word given reversed (peel from the right)
        cur = {w2: coeff}
        for i in word_rev:
            nxt = {}
            for y, c in cur.items():
                for z, lc in ops.left_gen(i, y).items():
                    key = z
                    nxt[key] = L.add(nxt.get(key, {}), L.mul(c, lc))
            cur = nxt
        for y, c in cur.items():
            out[y] = L.add(out.get(y, {}), c)

    for w1, c1 in h1.coeffs.items():
        for w2, c2 in h2.coeffs.items():
            accumulate(tuple(reversed(w1.word)), L.mul(c1, c2), w2)
    return HeckeElt(g, out)


def longest_kl(group, subset):
    """The Kazhdan-Lusztig element of the longest element of a finitary subset."""
    L0 = subset.longest.length
    return HeckeElt(
        group, {w: L.v_power(L0 - w.length) for w in subset.elements}
    )


def bar(h):
    """The bar involution: v -> v^-1, H_w -> H_{w^-1}^{-1}."""
    g = h.group
    ops = _ops(g)
    out = HeckeElt.zero(g)
    for w, c in h.coeffs.items():
        out = out + ops.inverse(g.inv(w)).scale(L.bar(c))
    return out


def omega(h):
    """The anti-involution: sum a_w H_w -> sum bar(a_w) H_w^{-1}."""
    g = h.group
    ops = _ops(g)
    out = HeckeElt.zero(g)
    for w, c in h.coeffs.items():
        out = out + ops.inverse(w).scale(L.bar(c))
    return out


def eps(h):
    """The coefficient of H_1."""
    return h.coeff(h.group.identity)


def bar_eps(h):
    """bar(eps(bar(h)))."""
    return L.bar(eps(bar(h)))


def poincare_factor(subset):
    """sum_{w in W_S} v^{l(w_S) - 2l(w)} (the star normalization)."""
    L0 = subset.longest.length
    out = {}
    for w in subset.elements:
        k = L0 - 2 * w.length
        out[k] = out.get(k, 0) + 1
    return out


class SingularHeckeElt:
    """An element of the parabolic bimodule in the double-coset basis."""

    __slots__ = ("group", "s1", "s2", "coeffs")

    def __init__(self, group, s1, s2, coeffs=None):
        self.group = group
        self.s1 = s1
        self.s2 = s2
        self.coeffs = {x: c for x, c in (coeffs or {}).items() if c}

    @staticmethod
    def zero(group, s1, s2):
        return SingularHeckeElt(group, s1, s2, {})

    @staticmethod
    def basis(group, s1, s2, coset):
        return SingularHeckeElt(group, s1, s2, {coset: L.one()})

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, coset):
        return self.coeffs.get(coset, {})

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = L.add(out.get(x, {}), c)
        return SingularHeckeElt(self.group, self.s1, self.s2, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = L.sub(out.get(x, {}), c)
        return SingularHeckeElt(self.group, self.s1, self.s2, out)

    def scale(self, lau):
        return SingularHeckeElt(
            self.group,
            self.s1,
            self.s2,
            {x: L.mul(c, lau) for x, c in self.coeffs.items()},
        )

    def _check(self, other):
        if self.s1.indices != other.s1.indices or self.s2.indices != other.s2.indices:
            raise MiddleMismatch("singular elements over different parabolic pairs")

    def __eq__(self, other):
        return (
            isinstance(other, SingularHeckeElt)
            and self.s1.indices == other.s1.indices
            and self.s2.indices == other.s2.indices
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("SingularHeckeElt is unhashable")

    def to_json(self):
        g = self.group
        out = {
            "s1": [g.cox.generators[i] for i in sorted(self.s1.indices)],
            "s2": [g.cox.generators[i] for i in sorted(self.s2.indices)],
        }
        for x in sorted(self.coeffs, key=lambda c: c.min_rep):
            out["c:" + x.min_rep.name()] = L.fmt(self.coeffs[x])
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            "(%s)[%s]" % (L.fmt(c), x.min_rep.name())
            for x, c in sorted(self.coeffs.items(), key=lambda p: p[0].min_rep)
        )


def singular_std(group, s1, s2, coset):
    """^{S1}H^{S2}_x = sum_{a in x} v^{l(x_+) - l(a)} H_a as a HeckeElt."""
    lp = coset.max_rep.length
    return HeckeElt(group, {a: L.v_power(lp - a.length) for a in coset.members})


def from_singular(sh):
    out = HeckeElt.zero(sh.group)
    for x, c in sh.coeffs.items():
        out = out + singular_std(sh.group, sh.s1, sh.s2, x).scale(c)
    return out


def to_singular(h, s1, s2):
    """Coordinates in the double-coset basis; error if h is not in the module."""
    g = h.group
    cosets = sorted(
        g.double_cosets(s1, s2), key=lambda c: c.max_rep.length, reverse=True
    )
    rem = h
    out = {}
    for x in cosets:
        c = rem.coeff(x.max_rep)
        if c:
            out[x] = c
            rem = rem - singular_std(g, s1, s2, x).scale(c)
    if not rem.is_zero:
        w = rem.support()[0]
        raise NotInParabolicModule(
            "element is not in the parabolic bimodule (offending coefficient at H_%s)"
            % w.name(),
            witness={"H" + w.name(): L.fmt(rem.coeff(w))},
        )
    return SingularHeckeElt(g, s1, s2, out)


def star(sh1, sh2):
    """The product *_{S2}: the Hecke product divided by the Poincare factor."""
    if sh1.s2.indices != sh2.s1.indices:
        raise MiddleMismatch("star needs matching middle subsets")
    g = sh1.group
    prod = hecke_mul(from_singular(sh1), from_singular(sh2))
    factor = poincare_factor(sh1.s2)
    quotient = {}
    for w, c in prod.coeffs.items():
        try:
            quotient[w] = L.div_exact(c, factor)
        except ValueError:
            raise NotInParabolicModule(
                "Hecke product is not divisible by the Poincare factor at H_%s"
                % w.name()
            ) from None
    return to_singular(HeckeElt(g, quotient), sh1.s1, sh2.s2)


def push_char(h, s1, s2):
    """v^{-l(w_{S2})} Hbar_{w_{S1}} h Hbar_{w_{S2}} in the singular basis."""
    g = h.group
    prod = hecke_mul(hecke_mul(longest_kl(g, s1), h), longest_kl(g, s2))
    prod = prod.scale(L.v_power(-s2.longest.length))
    return to_singular(prod, s1, s2)


def omega_singular(sh):
    """omega maps the (S1,S2)-bimodule onto the (S2,S1)-bimodule."""
    return to_singular(omega(from_singular(sh)), sh.s2, sh.s1)


def hom_grk_formula(sh1, sh2):
    """Predicted graded rank of Hom(M1, M2) over R^{S1}:
    v^{l(w_{S2})} bar_eps(ch(M2) *_{S2} omega(ch(M1)))."""
    sh1._check(sh2)
    om = omega_singular(sh1)
    prod = star(sh2, om)
    val = bar_eps(from_singular(prod))
    return L.shift(val, sh1.s2.longest.length)


def bar_singular(sh):
    return to_singular(bar(from_singular(sh)), sh.s1, sh.s2)


def bar_invariant_basis(s1, s2, group, length_bound=None):
    """The unique bar-fixed unitriangular family b_x = H_x + sum_{y<x} m_y H_y
    with m_y in v Z[v], by the standard fixed-point recursion."""
    cosets = sorted(group.double_cosets(s1, s2, length_bound), key=lambda c: c.min_rep)
    out = []
    for x in cosets:
        b = SingularHeckeElt.basis(group, s1, s2, x)
        guard = 0
        while True:
            delta = bar_singular(b) - b
            if delta.is_zero:
                break
            guard += 1
            if guard > 4 * len(cosets) + 8:
                raise NonUnitriangularBar("bar recursion failed to terminate")
            top = max(delta.coeffs, key=lambda c: c.min_rep)
            if not group.coset_leq(top, x) or top == x:
                raise NonUnitriangularBar(
                    "bar correction outside the lower order ideal"
                )
            d = delta.coeff(top)
            if L.coeff(d, 0) != 0 or L.add(L.bar(d), d):
                raise NonUnitriangularBar("bar defect is not skew-symmetric")
            m = {k: c for k, c in d.items() if k > 0}
            b = b + SingularHeckeElt.basis(group, s1, s2, top).scale(m)
        out.append(b)
    return out


def parse_hecke(group, text):
    """Parse the CLI mini-grammar for Hecke elements.

    Terms: ``H<word>`` (standard basis, ``H1`` the unit), ``uH<letters>``
    (the longest Kazhdan-Lusztig element of the subset of the given letters),
    with optional Laurent coefficients like ``(v^-1 - v)`` or ``3`` or
    ``2v^2`` in front.  Whitespace is ignored; terms are joined by + or -.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Hecke expression")
    terms = []
    depth = 0
    cur = ""
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "^+-(":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = HeckeElt.zero(group)
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        coeff = L.one()
        if t.startswith("("):
            close = t.index(")")
            coeff = L.parse(t[1:close])
            t = t[close + 1:]
        elif not t.startswith(("H", "uH")):
            # bare numeric/v-power prefix before H
            cut = 0
            while cut < len(t) and t[cut] not in "Hu":
                cut += 1
            coeff = L.parse(t[:cut])
            t = t[cut:]
        coeff = L.scale(coeff, sign)
        if t.startswith("uH"):
            subset = group.parse_subset(",".join(sorted(set(t[2:]))))
            out = out + longest_kl(group, subset).scale(coeff)
        elif t.startswith("H"):
            out = out + HeckeElt.std(group, t[1:]).scale(coeff)
        else:
            raise ValueError("bad Hecke term: %r" % t)
    return out
