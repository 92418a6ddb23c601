# Exact graded polynomial calculus on R = Sym(V) with the W-action:
# Demazure operators, the unit-trace assumption check, Demazure bases and
# Frobenius dual bases, and the calculus on R (x)_{R^S} R in phi-coordinates
# phi_w(f (x) g) = f w(g).

from __future__ import annotations

from .errors import AssumptionFailed, InexactDivision, SingularTransition
from .linalg import kernel_field, solve_generic
from .polynomial import Poly, RatFunc, dim_graded_piece, monomials_of_polydeg


class PhiTuple:
    """An element of R (x)_{R^S} R stored by its coordinates phi_w, w in W_S."""

    __slots__ = ("subset", "phi")

    def __init__(self, subset, phi):
        self.subset = subset
        self.phi = phi  # {Element: RatFunc}

    def __add__(self, other):
        return PhiTuple(
            self.subset, {w: self.phi[w] + other.phi[w] for w in self.phi}
        )

    def __sub__(self, other):
        return PhiTuple(
            self.subset, {w: self.phi[w] - other.phi[w] for w in self.phi}
        )

    def scale(self, c):
        return PhiTuple(self.subset, {w: self.phi[w] * c for w in self.phi})

    @property
    def is_zero(self):
        return all(not v for v in self.phi.values())

    def degree(self):
        degs = [v.degree() for v in self.phi.values() if v]
        return max(degs) if degs else None

    def __repr__(self):
        return "PhiTuple(%s)" % {w.name(): v for w, v in self.phi.items()}


class FrobeniusData:
    """Chosen p, the Demazure basis of R over R^S and its dual basis."""

    def __init__(self, subset, p, basis, duals, units):
        self.subset = subset
        self.p = p
        self.basis = basis  # {Element w: Poly partial_w(p)}
        self.duals = duals  # {Element w: Poly q_w}
        self.units = units  # {Element x: a_x in K^x}


class AssumptionReport:
    def __init__(self, ok, p, reasons):
        self.ok = ok
        self.p = p
        self.reasons = reasons


class Calculus:
    """Polynomial side of a realization: W-action, Demazure and Frobenius."""

    def __init__(self, real, group):
        self.real = real
        self.W = group
        self.nv = real.dim_v
        self.field = real.field
        self._act_images = {}
        self._frob = {}
        self._felts = {}
        self._assumption = {}

    # -- action and Demazure operators ----------------------------------------

    def alpha(self, i):
        """The root alpha_s of generator i as a degree-2 element of R."""
        g = self.W.cox.generators[i]
        return Poly.linear_form(self.real.alpha[g], self.field)

    def var(self, i):
        return Poly.variable(i, self.nv, self.field)

    def _images(self, w):
        imgs = self._act_images.get(w)
        if imgs is None:
            field = self.field
            mat = [
                [field.one() if i == j else field.zero() for j in range(self.nv)]
                for i in range(self.nv)
            ]
            for idx in w.word:
                g = self.W.cox.generators[idx]
                act = self.real.action[g]
                # w = s_1...s_l acts as s_1 o ... o s_l, so compose on the right
                mat = [
                    [
                        sum((mat[i][k] * act[k][j] for k in range(self.nv)), field.zero())
                        for j in range(self.nv)
                    ]
                    for i in range(self.nv)
                ]
            imgs = [
                Poly.linear_form([mat[i][j] for i in range(self.nv)], field)
                for j in range(self.nv)
            ]
            self._act_images[w] = imgs
        return imgs

    def act(self, w, f):
        """Ring automorphism of R induced by w."""
        if not w.word or f.is_zero:
            return f
        return f.subst_linear(self._images(w))

    def act_rat(self, w, rf):
        if not w.word:
            return rf
        return rf.subst_linear(self._images(w))

    def demazure(self, i, f):
        """partial_s(f) = (f - s(f)) / alpha_s; division is always exact."""
        s = self.W.generator(i)
        num = f - self.act(s, f)
        try:
            return num.div_exact(self.alpha(i))
        except ValueError:
            raise InexactDivision(
                "Demazure division by alpha_%s failed" % self.W.cox.generators[i]
            ) from None

    def demazure_word(self, word, f):
        for i in reversed(list(word)):
            f = self.demazure(i, f)
        return f

    def demazure_element(self, w, f):
        """partial_w along the canonical ShortLex reduced expression of w."""
        return self.demazure_word(w.word, f)

    # -- invariants ------------------------------------------------------------

    def invariant_basis(self, subset, degree):
        """Exact basis of (R^{W_S})_degree, computed as a kernel."""
        if degree % 2 or degree < 0:
            return []
        monos = monomials_of_polydeg(self.nv, degree // 2)
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for i in subset.indices:
            s = self.W.generator(i)
            for k, m in enumerate(monos):
                img = self.act(s, Poly(self.nv, {m: self.field.one()}, self.field))
                row = {}
                for e, c in img.terms.items():
                    row[index[e]] = row.get(index[e], self.field.zero()) + c
                row[k] = row.get(k, self.field.zero()) - self.field.one()
                row = {c: v for c, v in row.items() if v != self.field.zero()}
                if row:
                    rows.append(row)
        vecs = kernel_field(rows, len(monos), self.field)
        out = []
        for vec in vecs:
            terms = {m: self.field.of(c) for m, c in zip(monos, vec)}
            out.append(Poly(self.nv, terms, self.field))
        return out

    def is_invariant(self, subset, f):
        return all(
            self.act(self.W.generator(i), f) == f for i in subset.indices
        )

    # -- the assumption ---------------------------------------------------------

    def find_p(self, subset):
        """A polynomial of degree 2 l(w_S) with partial_{w_S}(p) = 1, or None.

        Returns the single monomial solution whose exponent vector comes first
        in the lex-descending monomial enumeration (ties cannot occur).
        """
        k = subset.longest.length
        monos = monomials_of_polydeg(self.nv, k)
        for m in monos:
            val = self.demazure_element(
                subset.longest, Poly(self.nv, {m: self.field.one()}, self.field)
            )
            c = val.constant_coeff()
            if c != self.field.zero():
                return Poly(self.nv, {m: self.field.one() / c}, self.field)
        return None

    def assumption(self, subset):
        """Check the finitary/faithfulness/unit-trace assumption for a subset."""
        key = subset.indices
        if key in self._assumption:
            return self._assumption[key]
        reasons = []
        mats = set()
        for w in subset.elements:
            imgs = self._images(w)
            mats.add(tuple(tuple(sorted(p.terms.items())) for p in imgs))
        if len(mats) != subset.order:
            reasons.append("representation of the parabolic subgroup is not faithful")
        p = self.find_p(subset)
        if p is None:
            reasons.append(
                "no degree-%d polynomial has unit image under the longest Demazure operator"
                % (2 * subset.longest.length)
            )
        report = AssumptionReport(not reasons, p, reasons)
        self._assumption[key] = report
        return report

    # -- Frobenius structure -----------------------------------------------------

    def frobenius_data(self, subset):
        key = subset.indices
        if key in self._frob:
            return self._frob[key]
        report = self.assumption(subset)
        if not report.ok:
            raise AssumptionFailed(
                "assumption fails for subset %s: %s"
                % (subset.names(), "; ".join(report.reasons))
            )
        p = report.p
        w0 = subset.longest
        basis = {w: self.demazure_element(w, p) for w in subset.elements}
        units = {}
        for x in subset.elements:
            rest = self.W.mul(w0, self.W.inv(x))
            val = self.demazure_element(rest, basis[x])
            c = val.constant_coeff()
            if val != Poly.constant(c, self.nv, self.field) or c == self.field.zero():
                raise SingularTransition(
                    "Demazure unit a_x is not a nonzero constant at %s" % x.name()
                )
            units[x] = c
        duals = {}
        for y in subset.elements:
            monos = monomials_of_polydeg(self.nv, y.length)
            # condition per x: partial_{w0}(basis[x] * q_y) == delta_{xy} as a
            # polynomial identity, flattened into one scalar row per exponent
            rows = []
            rhs = []
            for x in subset.elements:
                vals = [
                    self.demazure_element(
                        w0, basis[x] * Poly(self.nv, {m: self.field.one()}, self.field)
                    )
                    for m in monos
                ]
                exps = sorted({e for v in vals for e in v.terms})
                if x == y and (0,) * self.nv not in exps:
                    exps.append((0,) * self.nv)
                for e in exps:
                    rows.append([v.coeff(e) for v in vals])
                    want = x == y and e == (0,) * self.nv
                    rhs.append(self.field.one() if want else self.field.zero())
            sol = solve_generic(rows, rhs, len(monos), self.field.zero())
            if sol is None:
                raise SingularTransition("no dual basis element q_%s" % y.name())
            duals[y] = Poly(
                self.nv, {m: c for m, c in zip(monos, sol)}, self.field
            )
        data = FrobeniusData(subset, p, basis, duals, units)
        self._frob[key] = data
        return data

    def frobenius_trace(self, subset, f):
        """The trace partial_{w_S}(f); lands in the invariant ring."""
        return self.demazure_element(subset.longest, f)

    def express(self, subset, f):
        """Coordinates of f over R^S in the Demazure basis {partial_w(p)}."""
        data = self.frobenius_data(subset)
        w0 = subset.longest
        coords = {}
        rem = f
        for x in sorted(subset.elements):
            rest = self.W.mul(w0, self.W.inv(x))
            val = self.demazure_element(rest, rem)
            c = val.scale(self.field.one() / data.units[x])
            coords[x] = c
            rem = rem - c * data.basis[x]
        if not rem.is_zero:
            raise SingularTransition("Demazure expression did not terminate")
        return coords

    # -- phi-calculus on R (x)_{R^S} R --------------------------------------------

    def phi_simple(self, subset, f, g):
        """phi-coordinates of f (x) g."""
        return PhiTuple(
            subset,
            {w: RatFunc.from_poly(f * self.act(w, g)) for w in subset.elements},
        )

    def phi_dR(self, subset, i, F):
        """phi-coordinates of (1 (x) partial_s)(F) via
        phi_x = x(alpha_s)^{-1} (phi_x(F) - phi_{xs}(F))."""
        s = self.W.generator(i)
        alpha = self.alpha(i)
        out = {}
        for x in subset.elements:
            xs = self.W.mul(x, s)
            denom = RatFunc.from_poly(self.act(x, alpha))
            out[x] = (F.phi[x] - F.phi[xs]) / denom
        return PhiTuple(subset, out)

    def phi_dR_element(self, subset, w, F):
        for i in reversed(w.word):
            F = self.phi_dR(subset, i, F)
        return F

    def phi_left_act(self, subset, w, F):
        """phi_x(w . F) = w(phi_{w^{-1} x}(F)) (the twisted left action)."""
        wi = self.W.inv(w)
        out = {}
        for x in subset.elements:
            out[x] = self.act_rat(w, F.phi[self.W.mul(wi, x)])
        return PhiTuple(subset, out)

    def phi_right_act(self, subset, w, F):
        """phi_x(F . w) = phi_{x w^{-1}}(F) (left-linear right action)."""
        wi = self.W.inv(w)
        out = {}
        for x in subset.elements:
            out[x] = F.phi[self.W.mul(x, wi)]
        return PhiTuple(subset, out)

    def phi_right_mul(self, subset, F, g):
        """phi-coordinates of F . g for g in R: phi_x -> phi_x * x(g)."""
        return PhiTuple(
            subset,
            {x: F.phi[x] * self.act(x, g) for x in subset.elements},
        )

    def _demazure_op_coeffs(self, subset, w):
        """partial_w = sum_y c_y . y as operators on Q; returns {y: RatFunc}."""
        coeffs = {self.W.identity: RatFunc.one(self.nv, self.field)}
        for i in w.word:
            s = self.W.generator(i)
            alpha = RatFunc.from_poly(self.alpha(i))
            # compose with partial_s on the right: c.y |-> c.y o alpha^-1(1 - s)
            new = {}
            for y, c in coeffs.items():
                ya = self.act_rat(y, alpha)
                term = c / ya
                new[y] = new.get(y, RatFunc.zero(self.nv, self.field)) + term
                ys = self.W.mul(y, s)
                new[ys] = new.get(ys, RatFunc.zero(self.nv, self.field)) - term
            coeffs = {y: c for y, c in new.items() if c}
        return coeffs

    def reflections_in(self, subset):
        """Reflections of the parabolic subgroup, with the global root choice."""
        refl = {
            r.element: r for r in self.W.reflections_up_to(
                subset.longest.length, self.real
            )
        }
        subset_elems = set(subset.elements)
        return [refl[t] for t in sorted(refl) if t in subset_elems]

    def root_product(self, subset):
        out = Poly.one(self.nv, self.field)
        for r in self.reflections_in(subset):
            out = out * Poly.linear_form(r.root, self.field)
        return out

    def f_elements(self, subset):
        """The generic-decomposition family F_w with
        phi_x(F_w) = delta_{xw} * unit * prod(alpha_t), normalized so that
        phi_{w_S}(F_{w_S}) is exactly the root product."""
        key = subset.indices
        if key in self._felts:
            return self._felts[key]
        report = self.assumption(subset)
        if not report.ok:
            raise AssumptionFailed(
                "assumption fails for subset %s: %s"
                % (subset.names(), "; ".join(report.reasons))
            )
        p = report.p
        w0 = subset.longest
        order = sorted(subset.elements)
        # candidates G_w = 1 (x) partial_{w^{-1} w_S}(p), degree 2 l(w)
        dcoeffs = {w: self._demazure_op_coeffs(subset, w) for w in order}

        def D_op(w, F):
            total = RatFunc.zero(self.nv, self.field)
            for y, c in dcoeffs[w].items():
                total = total + c * F.phi[y]
            return total

        fprime = {}
        for w in order:
            rest = self.W.mul(self.W.inv(w), w0)
            g = self.demazure_element(rest, p)
            F = self.phi_simple(subset, Poly.one(self.nv, self.field), g)
            for u in order:
                if u.length >= w.length:
                    break
                val = D_op(u, F)
                unit = D_op(u, fprime[u])
                F = F - fprime[u].scale(val / unit)
            fprime[w] = F
        F_top = fprime[w0]
        rho = self.root_product(subset)
        lead = F_top.phi[w0]
        ratio = lead / RatFunc.from_poly(rho)
        if not ratio.is_poly():
            raise SingularTransition("phi_{w_S}(F) is not a multiple of the root product")
        unit_poly = ratio.to_poly()
        c = unit_poly.constant_coeff()
        if unit_poly != Poly.constant(c, self.nv, self.field) or c == self.field.zero():
            raise SingularTransition("phi_{w_S}(F) is not a unit multiple of the root product")
        F_top = F_top.scale(RatFunc.from_poly(Poly.constant(self.field.one() / c, self.nv, self.field)))
        out = {}
        for w in order:
            twist = self.W.mul(self.W.inv(w), w0)
            out[w] = self.phi_right_act(subset, self.W.inv(twist), F_top)
        self._felts[key] = out
        return out

    def equivariant_basis(self, subset):
        """The left-R basis {partial^R_w(F_{w_S})} of R (x)_{R^S} R, with the
        Bruhat-leading weight of each basis element."""
        felts = self.f_elements(subset)
        w0 = subset.longest
        top = felts[w0]
        out = {}
        for w in subset.elements:
            out[w] = self.phi_dR_element(subset, w, top)
        leading = {w: self.W.mul(w0, self.W.inv(w)) for w in subset.elements}
        return out, leading

    def phi_membership(self, subset, F):
        """Expand F over {partial^R_w(F_{w_S})}; coordinates are rational
        functions, and membership in the lattice means they are polynomial.

        Returns (coords, member, witness) where witness names a coordinate
        with a nontrivial denominator when member is False.
        """
        basis, leading = self.equivariant_basis(subset)
        # basis[w] is supported on weights >= leading[w]; eliminating along
        # ascending leading weights (descending length of w) keeps cleared
        # pivots untouched by the later subtractions
        order = sorted(subset.elements, reverse=True)
        rem = F
        coords = {}
        member = True
        witness = None
        for w in order:
            x = leading[w]
            denom = basis[w].phi[x]
            c = rem.phi[x] / denom
            coords[w] = c
            if not c.is_poly():
                member = False
                if witness is None:
                    witness = (w, c)
            rem = rem - basis[w].scale(c)
        if not rem.is_zero:
            raise SingularTransition("phi expansion did not terminate")
        return coords, member, witness
