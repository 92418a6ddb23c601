# Realizations (V, {(alpha_s, alpha_s^vee)}) of a Coxeter system over an
# exact field, with built-in presets and validation, plus the rational
# reflection representation used for group-element identity.

from __future__ import annotations

import json
from fractions import Fraction

from .errors import (
    BraidFailure,
    IrrationalCosine,
    PairingNotTwo,
    SchemaError,
    ZeroRoot,
)
from .fieldops import QQ, FieldSpec, fmt_rational, parse_rational

INF = None  # m(s,t) = infinity in a Coxeter matrix


class CoxeterData:
    """Generator names and the Coxeter matrix m(s,t)."""

    def __init__(self, generators, coxeter_matrix):
        self.generators = tuple(generators)
        self.matrix = tuple(tuple(row) for row in coxeter_matrix)
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise SchemaError("duplicate generator names")
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise SchemaError("coxeter_matrix must be square of size len(generators)")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise SchemaError("m(s,s) must be 1")
            for j in range(n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise SchemaError("coxeter_matrix must be symmetric")
                if i != j and m is not INF and (not isinstance(m, int) or m < 2):
                    raise SchemaError("m(s,t) must be an integer >= 2 or infinity")

    @property
    def rank(self):
        return len(self.generators)

    def m(self, i, j):
        return self.matrix[i][j]

    def index(self, name):
        try:
            return self.generators.index(name)
        except ValueError:
            raise SchemaError("unknown generator %r" % name) from None

    def __eq__(self, other):
        return (
            isinstance(other, CoxeterData)
            and self.generators == other.generators
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.generators, self.matrix))


def _mat_mul(a, b, field):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), field.zero()) for j in range(n))
        for i in range(n)
    )


def _identity(n, field):
    return tuple(
        tuple(field.one() if i == j else field.zero() for j in range(n)) for i in range(n)
    )


class Realization:
    """A realization: exact root/coroot data and the generator actions on V."""

    def __init__(self, coxeter, dim_v, alpha, alpha_check, field=QQ,
                 assume_balancedness=True, name=None):
        self.coxeter = coxeter
        self.dim_v = dim_v
        self.field = field
        self.assume_balancedness = bool(assume_balancedness)
        self.name = name
        self.alpha = {g: tuple(field.of(c) for c in vec) for g, vec in alpha.items()}
        self.alpha_check = {
            g: tuple(field.of(c) for c in vec) for g, vec in alpha_check.items()
        }
        for g in coxeter.generators:
            if g not in self.alpha or g not in self.alpha_check:
                raise SchemaError("missing alpha/alpha_check for generator %r" % g)
            if len(self.alpha[g]) != dim_v or len(self.alpha_check[g]) != dim_v:
                raise SchemaError("alpha vectors must have length dim_v")
        self.action = {g: self._reflection_matrix(g) for g in coxeter.generators}
        self._validate()

    def _pair(self, check_vec, vec):
        return sum((a * b for a, b in zip(check_vec, vec)), self.field.zero())

    def _reflection_matrix(self, g):
        """Matrix of v --> v - <alpha_g^vee, v> alpha_g (columns = basis images)."""
        n = self.dim_v
        al = self.alpha[g]
        av = self.alpha_check[g]
        cols = []
        for j in range(n):
            basis = [self.field.one() if i == j else self.field.zero() for i in range(n)]
            pairing = av[j]
            cols.append([basis[i] - pairing * al[i] for i in range(n)])
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def _validate(self):
        field = self.field
        zero = field.zero()
        for g in self.coxeter.generators:
            if all(c == zero for c in self.alpha[g]):
                raise ZeroRoot("alpha is zero for generator %r" % g)
            if all(c == zero for c in self.alpha_check[g]):
                raise ZeroRoot("alpha_check is zero for generator %r" % g)
            p = self._pair(self.alpha_check[g], self.alpha[g])
            if p != field.of(2):
                raise PairingNotTwo(
                    "<alpha^vee, alpha> = %s for generator %r" % (p, g)
                )
        ident = _identity(self.dim_v, field)
        for i, g in enumerate(self.coxeter.generators):
            if _mat_mul(self.action[g], self.action[g], field) != ident:
                raise BraidFailure("action(%s)^2 is not the identity" % g)
            for j, h in enumerate(self.coxeter.generators):
                if j <= i:
                    continue
                m = self.coxeter.m(i, j)
                if m is INF:
                    continue
                prod = _mat_mul(self.action[g], self.action[h], field)
                acc = ident
                for _ in range(m):
                    acc = _mat_mul(acc, prod, field)
                if acc != ident:
                    raise BraidFailure(
                        "(action(%s) action(%s))^%d is not the identity" % (g, h, m)
                    )

    # -- serialization -------------------------------------------------------

    def to_doc(self):
        mat = [[m if m is not INF else "inf" for m in row] for row in self.coxeter.matrix]
        return {
            "generators": list(self.coxeter.generators),
            "coxeter_matrix": mat,
            "dim_v": self.dim_v,
            "alpha": {g: [fmt_rational(c) for c in v] for g, v in self.alpha.items()},
            "alpha_check": {
                g: [fmt_rational(c) for c in v] for g, v in self.alpha_check.items()
            },
            "field": self.field.to_json(),
            "assume_balancedness": self.assume_balancedness,
        }

    def serialize(self):
        return json.dumps(self.to_doc(), indent=2, sort_keys=True)


def load_realization(doc, field_override=None):
    """Build a Realization from a configuration document or preset name."""
    if isinstance(doc, str):
        stripped = doc.strip()
        if stripped.startswith("{"):
            doc = json.loads(stripped)
        else:
            doc = preset_doc(stripped)
    if not isinstance(doc, dict):
        raise SchemaError("realization document must be a mapping or preset name")
    required = {"generators", "coxeter_matrix", "dim_v", "alpha", "alpha_check"}
    missing = required - set(doc)
    if missing:
        raise SchemaError("missing fields: %s" % ", ".join(sorted(missing)))
    try:
        mat = [
            [INF if m in ("inf", None) else int(m) for m in row]
            for row in doc["coxeter_matrix"]
        ]
        cox = CoxeterData(doc["generators"], mat)
        field = FieldSpec.from_json(field_override or doc.get("field", "Q"))
        dim_v = int(doc["dim_v"])
    except (TypeError, ValueError, KeyError) as exc:
        raise SchemaError(str(exc)) from None
    return Realization(
        cox,
        dim_v,
        doc["alpha"],
        doc["alpha_check"],
        field,
        doc.get("assume_balancedness", True),
        name=doc.get("name"),
    )


# -- presets -----------------------------------------------------------------

_CARTAN_PAIRING = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INF: (-2, -2)}


def preset_doc(name):
    docs = {
        "A1-adjoint": {
            "generators": ["s"],
            "coxeter_matrix": [[1]],
            "dim_v": 1,
            "alpha": {"s": [2]},
            "alpha_check": {"s": [1]},
        },
        "A1-GL2": {
            "generators": ["s"],
            "coxeter_matrix": [[1]],
            "dim_v": 2,
            "alpha": {"s": [1, -1]},
            "alpha_check": {"s": [1, -1]},
        },
        "A2-GL3": {
            "generators": ["s", "t"],
            "coxeter_matrix": [[1, 3], [3, 1]],
            "dim_v": 3,
            "alpha": {"s": [1, -1, 0], "t": [0, 1, -1]},
            "alpha_check": {"s": [1, -1, 0], "t": [0, 1, -1]},
        },
        "B2": {
            "generators": ["s", "t"],
            "coxeter_matrix": [[1, 4], [4, 1]],
            "dim_v": 2,
            "alpha": {"s": [1, 0], "t": [0, 1]},
            "alpha_check": {"s": [2, -1], "t": [-2, 2]},
        },
        "G2": {
            "generators": ["s", "t"],
            "coxeter_matrix": [[1, 6], [6, 1]],
            "dim_v": 2,
            "alpha": {"s": [1, 0], "t": [0, 1]},
            "alpha_check": {"s": [2, -1], "t": [-3, 2]},
        },
        "A3-GL4": {
            "generators": ["s", "t", "u"],
            "coxeter_matrix": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
            "dim_v": 4,
            "alpha": {
                "s": [1, -1, 0, 0],
                "t": [0, 1, -1, 0],
                "u": [0, 0, 1, -1],
            },
            "alpha_check": {
                "s": [1, -1, 0, 0],
                "t": [0, 1, -1, 0],
                "u": [0, 0, 1, -1],
            },
        },
    }
    aliases = {"A1": "A1-GL2", "A2": "A2-GL3", "A3": "A3-GL4"}
    name = aliases.get(name, name)
    if name not in docs:
        raise SchemaError(
            "unknown preset %r (available: %s)" % (name, ", ".join(sorted(docs)))
        )
    doc = dict(docs[name])
    doc["name"] = name
    return doc


PRESETS = ("A1-adjoint", "A1-GL2", "A2-GL3", "B2", "G2", "A3-GL4")


def geometric_representation(coxeter):
    """The rational reflection representation used for element identity.

    Built from the crystallographic Cartan pairings, so it exists only when
    every off-diagonal order lies in {2, 3, 4, 6, inf}; it is faithful and is
    always taken over the rationals, independently of the user's field.
    """
    n = coxeter.rank
    alpha = {}
    alpha_check = {}
    for i, g in enumerate(coxeter.generators):
        alpha[g] = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
    for i, g in enumerate(coxeter.generators):
        row = []
        for j in range(n):
            if j == i:
                row.append(Fraction(2))
            else:
                m = coxeter.m(i, j)
                if m not in _CARTAN_PAIRING:
                    raise IrrationalCosine(
                        "m(%s,%s) = %r has no rational Cartan pairing"
                        % (g, coxeter.generators[j], m)
                    )
                a_ij, a_ji = _CARTAN_PAIRING[m]
                # asymmetric integral pairing: <alpha_i^vee, alpha_j>
                row.append(Fraction(a_ij if i < j else a_ji))
        alpha_check[g] = row
    return Realization(coxeter, n, alpha, alpha_check, QQ, True, name="geometric")
