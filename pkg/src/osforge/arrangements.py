"""Hyperplane arrangements over the rationals, given by linear forms.

Only central arrangements have matroids here; affine arrangements appear as
decones and are used for their defining polynomials.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .constructions import merged_label
from .matroid import Matroid, bits


class ArrangementError(ValueError):
    pass


def _frac(v) -> Fraction:
    return Fraction(v) if not isinstance(v, str) else Fraction(v.strip())


class MultivariatePolynomial:
    """Sparse polynomial keyed by monomials ``((var, exp), ...)`` sorted by name."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(sorted((v, e) for v, e in mono if e))] = c

    @classmethod
    def const(cls, c) -> "MultivariatePolynomial":
        return cls({(): c})

    @classmethod
    def from_form(cls, form: "LinearForm") -> "MultivariatePolynomial":
        terms = {((v, 1),): c for v, c in form.coeffs.items()}
        terms[()] = form.const
        return cls(terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return MultivariatePolynomial(out)

    def __sub__(self, other):
        return self + MultivariatePolynomial({k: -c for k, c in other.terms.items()})

    def __mul__(self, other):
        out: dict[tuple, Fraction] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                exps = dict(a)
                for v, e in b:
                    exps[v] = exps.get(v, 0) + e
                k = tuple(sorted(exps.items()))
                out[k] = out.get(k, 0) + c * d
        return MultivariatePolynomial(out)

    def __eq__(self, other):
        if not isinstance(other, MultivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def variables(self) -> set[str]:
        return {v for mono in self.terms for v, _ in mono}

    def rename(self, mapping: Mapping[str, str]) -> "MultivariatePolynomial":
        return MultivariatePolynomial({tuple((mapping.get(v, v), e) for v, e in m): c
                                       for m, c in self.terms.items()})

    def substitute(self, var: str, value) -> "MultivariatePolynomial":
        value = Fraction(value)
        out: dict[tuple, Fraction] = {}
        for mono, c in self.terms.items():
            e = dict(mono).get(var, 0)
            k = tuple((v, x) for v, x in mono if v != var)
            out[k] = out.get(k, 0) + c * value ** e
        return MultivariatePolynomial(out)

    def _sorted(self):
        # graded lexicographic, highest first
        return sorted(self.terms.items(), key=lambda kv: (-sum(e for _, e in kv[0]), [(v, -e) for v, e in kv[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for k, (mono, c) in enumerate(self._sorted()):
            name = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(c)
            body = name if (name and mag == 1) else (f"{mag}*{name}" if name else str(mag))
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"MultivariatePolynomial({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"monomial": {v: e for v, e in mono}, "coeff": _fstr(c)} for mono, c in self._sorted()],
                "string": str(self)}


def _fstr(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LinearForm:
    coeffs: Mapping[str, Fraction]
    const: Fraction = Fraction(0)
    label: str | None = None

    def __post_init__(self):
        cs = {str(v): _frac(c) for v, c in dict(self.coeffs).items() if _frac(c)}
        const = _frac(self.const)
        if not cs:
            raise ArrangementError("a linear form needs a non-constant part")
        object.__setattr__(self, "coeffs", dict(sorted(cs.items())))
        object.__setattr__(self, "const", const)

    @property
    def central(self) -> bool:
        return self.const == 0

    def __hash__(self):
        return hash((tuple(self.coeffs.items()), self.const, self.label))

    def coordinate(self) -> str | None:
        """Variable name if the form is exactly that coordinate."""
        if self.const == 0 and len(self.coeffs) == 1:
            (v, c), = self.coeffs.items()
            if c == 1:
                return v
        return None

    def substitute(self, var: str, value) -> tuple[dict, Fraction]:
        cs = dict(self.coeffs)
        c = cs.pop(var, Fraction(0))
        return cs, self.const + c * Fraction(value)

    def rename(self, mapping: Mapping[str, str], label: str | None = None) -> "LinearForm":
        return LinearForm({mapping.get(v, v): c for v, c in self.coeffs.items()}, self.const,
                          self.label if label is None else label)

    def __str__(self):
        parts = []
        for v, c in self.coeffs.items():
            parts.append((c, v))
        out = ""
        for k, (c, v) in enumerate(parts):
            mag = abs(c)
            body = v if mag == 1 else f"{mag}*{v}"
            out += (("-" if c < 0 else "") if k == 0 else (" - " if c < 0 else " + ")) + body
        if self.const:
            out += (" - " if self.const < 0 else " + ") + str(abs(self.const))
        return out


@dataclass(frozen=True)
class Arrangement:
    variables: tuple[str, ...]
    forms: tuple[LinearForm, ...]
    allow_repeated: bool = field(default=False, compare=False)

    def __post_init__(self):
        vs = tuple(str(v) for v in self.variables)
        if len(set(vs)) != len(vs):
            raise ArrangementError("duplicate variable")
        forms = []
        for k, f in enumerate(self.forms):
            if f.label is None:
                f = LinearForm(f.coeffs, f.const, f"H{k + 1}")
            forms.append(f)
        for f in forms:
            if set(f.coeffs) - set(vs):
                raise ArrangementError(f"form {f} uses undeclared variables")
        if len({f.label for f in forms}) != len(forms):
            raise ArrangementError("duplicate form label")
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "forms", tuple(forms))
        if not self.allow_repeated:
            for f, g in itertools.combinations(forms, 2):
                if _proportional(f, g):
                    raise ArrangementError(f"forms {f.label} and {g.label} define the same hyperplane")

    @property
    def central(self) -> bool:
        return all(f.central for f in self.forms)

    @property
    def labels(self) -> list[str]:
        return [f.label for f in self.forms]

    def index_of(self, h) -> int:
        if isinstance(h, int) and not isinstance(h, bool):
            if not 0 <= h < len(self.forms):
                raise ArrangementError(f"no form with index {h}")
            return h
        if isinstance(h, LinearForm):
            h = h.label
        for k, f in enumerate(self.forms):
            if f.label == h:
                return k
        raise ArrangementError(f"form {h!r} is not in the arrangement")


def _proportional(f: LinearForm, g: LinearForm) -> bool:
    vf = dict(f.coeffs, __const__=f.const)
    vg = dict(g.coeffs, __const__=g.const)
    if set(k for k, v in vf.items() if v) != set(k for k, v in vg.items() if v):
        return False
    ratios = {vf[k] / vg[k] for k in vf if vf[k]}
    return len(ratios) == 1


def defining_polynomial(a: Arrangement) -> MultivariatePolynomial:
    out = MultivariatePolynomial.const(1)
    for f in a.forms:
        out = out * MultivariatePolynomial.from_form(f)
    return out


def coordinate_change(a: Arrangement, h=0) -> Arrangement:
    """Change coordinates so the form ``h`` becomes a coordinate, placed first.

    A variable ``v`` with nonzero coefficient in ``h`` is eliminated with
    ``v_old = (v_new - sum of h's other terms) / coeff``; the new coordinate
    keeps the name ``v``.
    """
    if not a.central:
        raise ArrangementError("coordinate change is defined for central arrangements")
    k = a.index_of(h)
    form = a.forms[k]
    v = next(iter(form.coeffs))
    a_v = form.coeffs[v]
    # v_old = (1/a_v) v_new - sum_{w != v} (a_w / a_v) w
    subst = {w: -c / a_v for w, c in form.coeffs.items() if w != v}
    new_forms = []
    for j, f in enumerate(a.forms):
        if j == k:
            new_forms.append(LinearForm({v: 1}, 0, f.label))
            continue
        cs = dict(f.coeffs)
        c = cs.pop(v, Fraction(0))
        if c:
            cs[v] = cs.get(v, 0) + c / a_v
            for w, s in subst.items():
                cs[w] = cs.get(w, 0) + c * s
        new_forms.append(LinearForm(cs, f.const, f.label))
    order = (v,) + tuple(x for x in a.variables if x != v)
    return Arrangement(order, tuple(new_forms), a.allow_repeated)


def coordinate_change_matrix(a: Arrangement, h=0) -> tuple[tuple[str, ...], list[list[Fraction]]]:
    """Change of basis used by ``coordinate_change``.

    Returns the new variable order and the matrix whose row for a new
    coordinate lists its coefficients in the old variables.
    """
    form = a.forms[a.index_of(h)]
    v = next(iter(form.coeffs))
    order = (v,) + tuple(x for x in a.variables if x != v)
    rows = []
    for w in order:
        if w == v:
            rows.append([form.coeffs.get(x, Fraction(0)) for x in a.variables])
        else:
            rows.append([Fraction(int(x == w)) for x in a.variables])
    return order, rows


def _coordinate_of(a: Arrangement, h) -> tuple[int, str]:
    k = a.index_of(h)
    v = a.forms[k].coordinate()
    if v is None:
        raise ArrangementError(f"form {a.forms[k].label} is not a coordinate; apply coordinate_change first")
    return k, v


def decone(a: Arrangement, h=0) -> Arrangement:
    """Drop the coordinate hyperplane ``h`` and set that coordinate to 1 in the rest."""
    if not a.central:
        raise ArrangementError("decone needs a central arrangement")
    k, v = _coordinate_of(a, h)
    forms = []
    for j, f in enumerate(a.forms):
        if j == k:
            continue
        cs, const = f.substitute(v, 1)
        if not any(cs.values()):
            raise ArrangementError(f"form {f.label} is parallel to the deconed hyperplane")
        forms.append(LinearForm(cs, const, f.label))
    return Arrangement(tuple(x for x in a.variables if x != v), tuple(forms), a.allow_repeated)


def recone(a: Arrangement, var: str = "x1", label: str = "H0") -> Arrangement:
    """Homogenize with a new first coordinate and add its hyperplane."""
    if var in a.variables:
        raise ArrangementError(f"variable {var} already present")
    forms = [LinearForm({var: 1}, 0, label)]
    for f in a.forms:
        cs = dict(f.coeffs)
        if f.const:
            cs[var] = f.const
        forms.append(LinearForm(cs, 0, f.label))
    return Arrangement((var,) + a.variables, tuple(forms), a.allow_repeated)


def arr_direct_sum(a0: Arrangement, a1: Arrangement) -> Arrangement:
    clash = set(a0.variables) & set(a1.variables)
    if clash:
        raise ArrangementError(f"variable collision: {sorted(clash)}")
    return Arrangement(a0.variables + a1.variables, a0.forms + a1.forms,
                       a0.allow_repeated or a1.allow_repeated)


def rename_arrangement(a: Arrangement, mapping: Mapping[str, str]) -> Arrangement:
    return Arrangement(tuple(mapping.get(v, v) for v in a.variables),
                       tuple(f.rename(mapping) for f in a.forms), a.allow_repeated)


def _second_factor_names(a1: Arrangement, shared: str, shared_into: str) -> dict[str, str]:
    mapping = {shared: shared_into}
    k = 2
    for v in a1.variables:
        if v != shared:
            mapping[v] = f"y{k}"
            k += 1
    return mapping


def arr_parallel_connection(a0: Arrangement, a1: Arrangement, h0=0, h1=0) -> Arrangement:
    """Glue along the coordinate hyperplanes ``h0`` of ``a0`` and ``h1`` of ``a1``.

    ``a1``'s shared coordinate is identified with ``a0``'s and its other
    variables become y2, y3, ...; the shared hyperplane appears once.
    """
    if not (a0.central and a1.central):
        raise ArrangementError("parallel connection needs central arrangements")
    k0, v0 = _coordinate_of(a0, h0)
    k1, v1 = _coordinate_of(a1, h1)
    mapping = _second_factor_names(a1, v1, v0)
    new_vars = [mapping[v] for v in a1.variables if v != v1]
    if set(new_vars) & set(a0.variables):
        raise ArrangementError("renamed variables of the second arrangement collide with the first")
    forms = list(a0.forms)
    forms[k0] = LinearForm(a0.forms[k0].coeffs, 0, merged_label(a0.forms[k0].label, a1.forms[k1].label))
    forms += [f.rename(mapping) for j, f in enumerate(a1.forms) if j != k1]
    return Arrangement(a0.variables + tuple(new_vars), tuple(forms), a0.allow_repeated or a1.allow_repeated)


def _vector(a: Arrangement, f: LinearForm) -> dict:
    idx = {v: i for i, v in enumerate(a.variables)}
    return {idx[v]: c for v, c in f.coeffs.items()}


def underlying_matroid(a: Arrangement) -> Matroid:
    """Matroid of the normal vectors: circuits are minimal dependent subsets."""
    if not a.central:
        raise ArrangementError("underlying matroid needs a central arrangement")
    vecs = [_vector(a, f) for f in a.forms]
    n = len(vecs)
    circuits: list[int] = []
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            mask = sum(1 << i for i in combo)
            if any(c & mask == c for c in circuits):
                continue
            if linalg.rank([vecs[i] for i in combo]) < k:
                circuits.append(mask)
    return Matroid(tuple(a.labels), frozenset(circuits))


def realize_generic(n: int, var: str = "x") -> Arrangement:
    """n central hyperplanes in n-1 variables, any n-1 of them independent.

    The coordinate hyperplanes plus the sum of all coordinates; for n = 2 the
    two forms coincide (a parallel pair).
    """
    if n < 2:
        raise ArrangementError("n >= 2")
    names = tuple(f"{var}{i}" for i in range(1, n))
    forms = [LinearForm({v: 1}, 0, f"H{i + 1}") for i, v in enumerate(names)]
    forms.append(LinearForm({v: 1 for v in names}, 0, f"H{n}"))
    a = Arrangement(names, tuple(forms), allow_repeated=(n == 2))
    vecs = [_vector(a, f) for f in a.forms]
    for combo in itertools.combinations(range(n), n - 1):
        if linalg.rank([vecs[i] for i in combo]) != n - 1:
            raise AssertionError("generic realization is degenerate")
    return a


def graphic_arrangement(g, var: str = "v") -> Arrangement:
    """Forms x_u - x_v for the (non-loop) edges of a graph; realizes its cycle matroid."""
    names = {u: f"{var}{u}" for u in g.vertices}
    forms = []
    for label, u, w in g.edges:
        if u == w:
            raise ArrangementError("loops have no hyperplane")
        forms.append(LinearForm({names[u]: 1, names[w]: -1}, 0, label))
    return Arrangement(tuple(names[u] for u in g.vertices), tuple(forms))


def form_label_circuits(m: Matroid) -> set[frozenset[str]]:
    return {frozenset(m.labels[i] for i in bits(c)) for c in m.circuits}


@dataclass
class HomotopyIdentityReport:
    ok: bool
    lhs: MultivariatePolynomial
    rhs: MultivariatePolynomial
    hyperplanes: tuple[int, int]
    ambient_dims: tuple[int, int]
    punctured_line_factors: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "decone_parallel_connection": self.lhs.to_json(),
            "decone_direct_sum": self.rhs.to_json(),
            "hyperplanes": {"isthmus_plus_parallel": self.hyperplanes[0], "direct_sum": self.hyperplanes[1]},
            "ambient_dims": {"isthmus_plus_parallel": self.ambient_dims[0], "direct_sum": self.ambient_dims[1]},
            "punctured_line_factors": {"isthmus_plus_parallel": self.punctured_line_factors[0],
                                       "direct_sum": self.punctured_line_factors[1]},
        }


def single_hyperplane(var: str = "x", label: str = "S") -> Arrangement:
    """The arrangement {x = 0} in one variable."""
    return Arrangement((var,), (LinearForm({var: 1}, 0, label),))


def verify_theorem_homo_identity(a0: Arrangement, a1: Arrangement, h0=0, h1=0) -> HomotopyIdentityReport:
    """Compare the decone of the parallel connection with the sum of the two decones."""
    k0, v0 = _coordinate_of(a0, h0)
    k1, v1 = _coordinate_of(a1, h1)
    p = arr_parallel_connection(a0, a1, k0, k1)
    lhs = defining_polynomial(decone(p, k0))
    mapping = _second_factor_names(a1, v1, v0)
    d0 = decone(a0, k0)
    d1 = rename_arrangement(decone(a1, k1), mapping)
    rhs = defining_polynomial(arr_direct_sum(d0, d1))

    # bookkeeping: S + P(A0, A1) against A0 + A1
    s = single_hyperplane("s0")
    sp = arr_direct_sum(s, p)
    hyper = (len(sp.forms), len(a0.forms) + len(a1.forms))
    dims = (len(sp.variables), len(a0.variables) + len(a1.variables))
    # one punctured line from S, one from deconing P; one from deconing each summand
    factors = (1 + 1, 1 + 1)
    ok = lhs == rhs and hyper[0] == hyper[1] and dims[0] == dims[1]
    return HomotopyIdentityReport(ok, lhs, rhs, hyper, dims, factors)


# JSON


def arrangement_to_json(a: Arrangement) -> dict:
    return {"variables": list(a.variables),
            "forms": [{"label": f.label, "coeffs": {v: _fstr(c) for v, c in f.coeffs.items()},
                       "const": _fstr(f.const)} for f in a.forms]}


def arrangement_from_json(data: Mapping, allow_repeated: bool = False) -> Arrangement:
    forms = []
    for k, f in enumerate(data["forms"]):
        forms.append(LinearForm({v: _frac(c) for v, c in f["coeffs"].items()},
                                _frac(f.get("const", "0")), f.get("label") or f"H{k + 1}"))
    return Arrangement(tuple(data["variables"]), tuple(forms), allow_repeated)


def forms_up_to_scaling(a: Arrangement) -> set[tuple]:
    """Hyperplanes as normalized coefficient tuples (first nonzero entry 1)."""
    out = set()
    for f in a.forms:
        vec = [f.coeffs.get(v, Fraction(0)) for v in a.variables] + [f.const]
        lead = next(c for c in vec if c)
        out.add(tuple(c / lead for c in vec))
    return out

