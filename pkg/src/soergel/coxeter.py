# Exact group arithmetic in W via the rational geometric representation:
# canonical (ShortLex-minimal reduced) words, Bruhat order, finitary
# subsets, reflections and (S1, S2)-double cosets.

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import LengthBoundExceeded, SchemaError
from .realization import CoxeterData, geometric_representation

DEFAULT_LENGTH_BOUND = 24


class Element:
    """A group element: canonical reduced word plus its geometric matrix."""

    __slots__ = ("group", "word", "mat", "_hash")

    def __init__(self, group, word, mat):
        self.group = group
        self.word = word
        self.mat = mat
        self._hash = hash(mat)

    @property
    def length(self):
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, Element) and self.mat == other.mat

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def name(self):
        if not self.word:
            return "1"
        return "".join(self.group.cox.generators[i] for i in self.word)

    def __repr__(self):
        return self.name()


class FinitarySubset:
    """A subset of S generating a finite parabolic subgroup."""

    def __init__(self, group, indices, elements, longest):
        self.group = group
        self.indices = frozenset(indices)
        self.elements = elements  # sorted by (length, word)
        self.longest = longest

    @property
    def order(self):
        return len(self.elements)

    def names(self):
        return [self.group.cox.generators[i] for i in sorted(self.indices)]

    def lengths_poincare(self):
        """{exponent: count} for sum_w q^{l(w)} (q-Poincare polynomial)."""
        out = {}
        for w in self.elements:
            out[w.length] = out.get(w.length, 0) + 1
        return out

    def __repr__(self):
        return "{%s}" % ",".join(self.names())


class DoubleCoset:
    """An (S1, S2)-double coset with its extreme representatives."""

    def __init__(self, s1, s2, members):
        self.s1 = s1
        self.s2 = s2
        self.members = sorted(members)
        self.min_rep = self.members[0]
        self.max_rep = self.members[-1]
        if (
            sum(1 for w in self.members if w.length == self.min_rep.length) != 1
            or sum(1 for w in self.members if w.length == self.max_rep.length) != 1
        ):
            raise AssertionError("double coset without unique extreme representatives")

    def __eq__(self, other):
        return (
            isinstance(other, DoubleCoset)
            and self.s1 == other.s1
            and self.s2 == other.s2
            and self.min_rep == other.min_rep
        )

    def __hash__(self):
        return hash((self.s1, self.s2, self.min_rep))

    def __contains__(self, w):
        return w in set(self.members)

    def intersection_subgroup_indices(self):
        """I = S1 cap x_- S2 x_-^{-1} as a set of generator indices in S1."""
        g = self.min_rep.group
        xm = self.min_rep
        xmi = g.inv(xm)
        conj = {g.mul(g.mul(xm, g.generator(j)), xmi) for j in self.s2}
        return frozenset(i for i in self.s1 if g.generator(i) in conj)

    def to_json(self):
        g = self.min_rep.group
        return {
            "s1": [g.cox.generators[i] for i in sorted(self.s1)],
            "s2": [g.cox.generators[i] for i in sorted(self.s2)],
            "min": self.min_rep.name(),
            "max": self.max_rep.name(),
            "size": len(self.members),
        }

    def __repr__(self):
        return "[%s..%s]" % (self.min_rep.name(), self.max_rep.name())


class CoxeterGroup:
    """Element arithmetic, Bruhat order and coset combinatorics for (W, S)."""

    def __init__(self, cox: CoxeterData, length_bound=DEFAULT_LENGTH_BOUND):
        self.cox = cox
        self.length_bound = length_bound
        self.geom = geometric_representation(cox)
        n = cox.rank
        ident = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        e = Element(self, (), ident)
        self._by_mat = {ident: e}
        self._levels = [[e]]
        self._closed = False
        self._gen_mats = [
            tuple(tuple(row) for row in self.geom.action[g]) for g in cox.generators
        ]
        self._bruhat_cache = {}
        self._subset_cache = {}
        self._cosets_cache = {}

    # -- enumeration ---------------------------------------------------------

    def _mat_mul(self, a, b):
        n = self.cox.rank
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )

    def _extend(self, upto):
        while not self._closed and len(self._levels) - 1 < upto:
            if len(self._levels) - 1 >= self.length_bound:
                break
            frontier = self._levels[-1]
            new_level = []
            for w in frontier:
                for i in range(self.cox.rank):
                    mat = self._mat_mul(w.mat, self._gen_mats[i])
                    if mat not in self._by_mat:
                        el = Element(self, w.word + (i,), mat)
                        self._by_mat[mat] = el
                        new_level.append(el)
            if not new_level:
                self._closed = True
                return
            self._levels.append(new_level)

    @property
    def is_finite(self):
        self._extend(self.length_bound)
        return self._closed

    def elements(self, max_length=None):
        bound = self.length_bound if max_length is None else max_length
        self._extend(bound)
        if max_length is None and not self._closed:
            raise LengthBoundExceeded(
                "group not closed within length bound %d" % self.length_bound
            )
        out = []
        for lvl in self._levels[: bound + 1]:
            out.extend(lvl)
        return out

    @property
    def order(self):
        return len(self.elements())

    # -- arithmetic ----------------------------------------------------------

    @property
    def identity(self):
        return self._levels[0][0]

    def generator(self, i):
        self._extend(1)
        return self._by_mat[self._gen_mats[i]]

    def from_word(self, word):
        """Element of a word of generator indices or a name string like "sts"."""
        if isinstance(word, str):
            if word in ("", "1"):
                return self.identity
            word = [self.cox.index(ch) for ch in word]
        out = self.identity
        for i in word:
            out = self.mul(out, self.generator(i))
        return out

    def _lookup(self, mat, max_len):
        el = self._by_mat.get(mat)
        if el is not None:
            return el
        self._extend(min(max_len, self.length_bound))
        el = self._by_mat.get(mat)
        if el is None:
            raise LengthBoundExceeded(
                "product escapes the configured length bound %d" % self.length_bound
            )
        return el

    def mul(self, a, b):
        return self._lookup(self._mat_mul(a.mat, b.mat), a.length + b.length)

    def inv(self, a):
        n = self.cox.rank
        mat = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        for i in reversed(a.word):
            mat = self._mat_mul(mat, self._gen_mats[i])
        return self._lookup(mat, a.length)

    def length(self, a):
        return a.length

    def left_descent(self, i, w):
        """True iff l(s_i w) < l(w)."""
        return self.mul(self.generator(i), w).length < w.length

    def right_descent(self, w, i):
        return self.mul(w, self.generator(i)).length < w.length

    # -- Bruhat order --------------------------------------------------------

    def bruhat_leq(self, a, b):
        if a.length > b.length:
            return False
        if a.length == b.length:
            return a == b
        if not a.word:
            return True
        key = (a, b)
        cached = self._bruhat_cache.get(key)
        if cached is not None:
            return cached
        # lifting property with the last letter s of b's canonical word
        s = self.generator(b.word[-1])
        bs = self.mul(b, s)
        a_s = self.mul(a, s)
        if a_s.length < a.length:
            res = self.bruhat_leq(a_s, bs)
        else:
            res = self.bruhat_leq(a, bs)
        self._bruhat_cache[key] = res
        return res

    # -- subsets and cosets --------------------------------------------------

    def subset(self, indices):
        """FinitarySubset for a set of generator indices or names."""
        idx = frozenset(
            self.cox.index(i) if isinstance(i, str) else int(i) for i in indices
        )
        if idx in self._subset_cache:
            return self._subset_cache[idx]
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                if w.length >= self.length_bound:
                    raise LengthBoundExceeded(
                        "subset %s is not finitary within the length bound"
                        % sorted(idx)
                    )
                for i in idx:
                    x = self.mul(w, self.generator(i))
                    if x not in elems:
                        elems.add(x)
                        new.append(x)
            frontier = new
        ordered = sorted(elems)
        longest = ordered[-1]
        if sum(1 for w in ordered if w.length == longest.length) != 1:
            raise AssertionError("parabolic subgroup without unique longest element")
        out = FinitarySubset(self, idx, ordered, longest)
        self._subset_cache[idx] = out
        return out

    def parse_subset(self, text):
        """Subset from CLI-style text: "s,t", "st" or "" for the empty set."""
        if text is None or text == "":
            return self.subset(())
        parts = text.split(",") if "," in text else list(text)
        return self.subset([p.strip() for p in parts if p.strip()])

    def double_cosets(self, s1, s2, length_bound=None):
        """All (S1,S2)-double cosets of W (or of the ball of the given radius)."""
        key = (s1.indices, s2.indices, length_bound)
        if key in self._cosets_cache:
            return self._cosets_cache[key]
        pool = self.elements(length_bound)
        pool_set = set(pool)
        seen = set()
        cosets = []
        for w in sorted(pool):
            if w in seen:
                continue
            orbit = {w}
            frontier = [w]
            while frontier:
                new = []
                for x in frontier:
                    for i in s1.indices:
                        y = self.mul(self.generator(i), x)
                        if y not in orbit:
                            if y not in pool_set and length_bound is not None:
                                raise LengthBoundExceeded(
                                    "double coset escapes the length bound"
                                )
                            orbit.add(y)
                            new.append(y)
                    for i in s2.indices:
                        y = self.mul(x, self.generator(i))
                        if y not in orbit:
                            if y not in pool_set and length_bound is not None:
                                raise LengthBoundExceeded(
                                    "double coset escapes the length bound"
                                )
                            orbit.add(y)
                            new.append(y)
                frontier = new
            seen |= orbit
            cosets.append(DoubleCoset(s1.indices, s2.indices, orbit))
        cosets.sort(key=lambda c: c.min_rep)
        self._cosets_cache[key] = cosets
        return cosets

    def coset_of(self, w, s1, s2, length_bound=None):
        for c in self.double_cosets(s1, s2, length_bound):
            if w in c:
                return c
        raise LengthBoundExceeded("element outside the enumerated cosets")

    def coset_leq(self, x, y):
        """Coset order: x <= y iff x_- <= y_- in Bruhat order."""
        return self.bruhat_leq(x.min_rep, y.min_rep)

    def is_open(self, subset, all_cosets):
        """Upward-closed in the coset order."""
        sub = set(subset)
        return all(
            (y in sub) or not self.coset_leq(x, y)
            for x in sub
            for y in all_cosets
        )

    def is_closed(self, subset, all_cosets):
        sub = set(subset)
        return self.is_open([c for c in all_cosets if c not in sub], all_cosets)

    def coset_product(self, x, y, s3=None):
        """The (S1,S3)-cosets meeting the set product xy (middle sets match)."""
        from .errors import MiddleMismatch

        if x.s2 != y.s1:
            raise MiddleMismatch("coset product needs matching middle subsets")
        s1 = self.subset(x.s1)
        s3_sub = self.subset(y.s2 if s3 is None else s3)
        prod = set()
        for a in x.members:
            for b in y.members:
                prod.add(self.mul(a, b))
        out = []
        for c in self.double_cosets(s1, s3_sub):
            if any(w in prod for w in c.members):
                out.append(c)
        return out, prod

    # -- reflections ---------------------------------------------------------

    def reflections_up_to(self, bound, realization=None):
        """All reflections of length <= bound with their roots.

        The pair (w, s) defining alpha_t = w(alpha_s) is fixed as the first in
        (ShortLex word of w, generator index) order.
        """
        if realization is None:
            realization = self.geom
        found = {}
        half = (bound - 1) // 2 if bound else 0
        for w in sorted(self.elements(min(half, self.length_bound))):
            for i in range(self.cox.rank):
                t = self.mul(self.mul(w, self.generator(i)), self.inv(w))
                if t.length > bound or t in found:
                    continue
                root = self.act_on_vector(realization, w, realization.alpha[
                    self.cox.generators[i]
                ])
                found[t] = (root, w, i)
        out = [
            Reflection(t, root, w, i)
            for t, (root, w, i) in found.items()
        ]
        out.sort(key=lambda r: r.element)
        return out

    def act_on_vector(self, realization, w, vec):
        """Apply w to a coordinate vector of V in the given realization."""
        field = realization.field
        out = list(vec)
        for i in reversed(w.word):
            mat = realization.action[self.cox.generators[i]]
            out = [
                sum((mat[r][c] * out[c] for c in range(len(out))), field.zero())
                for r in range(len(out))
            ]
        return tuple(out)


class Reflection:
    """A reflection t = w s w^{-1} with its root alpha_t = w(alpha_s)."""

    def __init__(self, element, root, w, gen_index):
        self.element = element
        self.root = root
        self.w = w
        self.gen_index = gen_index

    def __repr__(self):
        return "Reflection(%s)" % self.element.name()


@lru_cache(maxsize=None)
def group_for(cox: CoxeterData, length_bound=DEFAULT_LENGTH_BOUND):
    return CoxeterGroup(cox, length_bound)
