"""Orlik-Solomon algebras: quotient of the exterior algebra by circuit boundaries.

Normal forms are computed by broken-circuit rewriting. Ideal membership and
graded dimensions are double-checked by exact linear algebra on the ideal's
homogeneous pieces; a disagreement raises ``DualCheckError``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import linalg
from .exterior import ExteriorElement, boundary, merge_sign
from .matroid import Matroid, bits, closure, is_loop, rank
from .tutte import poincare_dims

# set by the test suite; release callers may opt in per call
DUAL_CHECK = False

WHITNEY_SIZE_LIMIT = 16


class DualCheckError(AssertionError):
    """Two independent computations of the same quantity disagreed."""


def _mask(mono) -> int:
    m = 0
    for i in mono:
        m |= 1 << i
    return m


def circuit_boundary(c_mask: int) -> ExteriorElement:
    return boundary(ExteriorElement({tuple(bits(c_mask)): 1}))


def os_ideal_generators(m: Matroid) -> list[ExteriorElement]:
    """One boundary per circuit, circuits listed by (size, ids)."""
    cs = sorted(m.circuits, key=lambda c: (c.bit_count(), bits(c)))
    return [circuit_boundary(c) for c in cs]


@dataclass(frozen=True)
class WitnessTerm:
    """``coeff * d(e_C) * e_right`` with C given as a sorted id tuple."""
    circuit: tuple
    right: tuple
    coeff: Fraction

    def expand(self) -> ExteriorElement:
        return (circuit_boundary(_mask(self.circuit)) * ExteriorElement({self.right: 1})).scale(self.coeff)


class OSAlgebra:
    def __init__(self, matroid: Matroid, order: Sequence | None = None):
        self.matroid = matroid
        n = matroid.size
        if order is None:
            order = list(range(n))
        else:
            order = [matroid.id_of(e) for e in order]
        if sorted(order) != list(range(n)):
            raise ValueError("order must list every element exactly once")
        self.order = tuple(order)
        self.pos = {e: k for k, e in enumerate(order)}
        # (broken circuit mask, circuit mask, min element) in a fixed order
        rules = []
        for c in sorted(matroid.circuits, key=lambda c: (c.bit_count(), bits(c))):
            low = min(bits(c), key=self.pos.__getitem__)
            rules.append((c & ~(1 << low), c, low))
        self.rules = tuple(rules)
        self.broken_circuits = frozenset(b for b, _, _ in rules)
        self._boundaries = {c: circuit_boundary(c) for _, c, _ in rules}
        self._nf: dict[tuple, ExteriorElement] = {}
        self._ideal: dict[int, linalg.Echelon] = {}
        self.nbc_basis = self._nbc()

    @property
    def size(self) -> int:
        return self.matroid.size

    def _nbc(self) -> list[list[tuple]]:
        n = self.size
        by_degree: list[list[tuple]] = [[] for _ in range(n + 1)]
        for k in range(n + 1):
            for combo in itertools.combinations(range(n), k):
                s = _mask(combo)
                if not any(b & s == b for b in self.broken_circuits):
                    by_degree[k].append(combo)
        while len(by_degree) > 1 and not by_degree[-1]:
            by_degree.pop()
        return by_degree

    def _rule_for(self, s: int):
        for b, c, low in self.rules:
            if b & s == b:
                return b, c, low
        return None

    def _step(self, mono: tuple, rule) -> tuple[WitnessTerm, ExteriorElement]:
        """Rewrite e_mono with one relation: e_mono = witness + rest."""
        b, c, _ = rule
        right = tuple(i for i in mono if not b >> i & 1)
        s, _ = merge_sign(tuple(bits(b)), right)
        bc = tuple(bits(c))
        j = bc.index(next(i for i in bc if not b >> i & 1))
        coeff = Fraction(s * (-1) ** j)
        term = WitnessTerm(bc, right, coeff)
        rest = ExteriorElement({mono: 1}) - term.expand()
        if mono in rest.terms:
            raise AssertionError("rewriting step failed to remove its monomial")
        return term, rest

    def _nf_monomial(self, mono: tuple) -> ExteriorElement:
        hit = self._nf.get(mono)
        if hit is not None:
            return hit
        rule = self._rule_for(_mask(mono))
        if rule is None:
            out = ExteriorElement({mono: 1})
        else:
            _, rest = self._step(mono, rule)
            out = ExteriorElement()
            for m, c in rest.terms.items():
                out = out + self._nf_monomial(m).scale(c)
        self._nf[mono] = out
        return out

    def normal_form(self, x: ExteriorElement) -> ExteriorElement:
        acc: dict[tuple, Fraction] = {}
        for mono, c in x.terms.items():
            for m, d in self._nf_monomial(mono).terms.items():
                acc[m] = acc.get(m, 0) + c * d
        return ExteriorElement(acc)

    def reduce_with_witness(self, x: ExteriorElement) -> tuple[ExteriorElement, list[WitnessTerm]]:
        """Return (normal form, terms) with x = normal form + sum of the terms."""
        current = dict(x.terms)
        witness: list[WitnessTerm] = []
        weight = lambda m: sum(self.pos[i] for i in m)  # noqa: E731
        while True:
            todo = [m for m in current if self._rule_for(_mask(m)) is not None]
            if not todo:
                break
            mono = max(todo, key=lambda m: (weight(m), m))
            coeff = current[mono]
            term, rest = self._step(mono, self._rule_for(_mask(mono)))
            witness.append(WitnessTerm(term.circuit, term.right, term.coeff * coeff))
            del current[mono]
            for m, c in rest.terms.items():
                v = current.get(m, 0) + coeff * c
                if v:
                    current[m] = v
                else:
                    current.pop(m, None)
        return ExteriorElement(current), witness

    # linear algebra side

    def ideal_echelon(self, p: int) -> linalg.Echelon:
        """Echelon basis of the degree-p part of the ideal, spanned by d(e_C) e_T."""
        hit = self._ideal.get(p)
        if hit is not None:
            return hit
        ech = linalg.Echelon()
        full = comb(self.size, p)
        for _, c, _ in self.rules:
            k = p - c.bit_count() + 1
            if k < 0 or ech.rank >= full:
                continue
            bd = self._boundaries[c]
            for t in itertools.combinations(range(self.size), k):
                ech.add((bd * ExteriorElement({t: 1})).terms)
                if ech.rank >= full:
                    break
        self._ideal[p] = ech
        return ech

    def quotient_dimension(self, p: int) -> int:
        return comb(self.size, p) - self.ideal_echelon(p).rank


def nbc_sets(m: Matroid, order=None) -> list[list[tuple]]:
    return OSAlgebra(m, order).nbc_basis


def normal_form(a: OSAlgebra, x: ExteriorElement) -> ExteriorElement:
    return a.normal_form(x)


@dataclass
class MembershipResult:
    member: bool
    normal_form: ExteriorElement
    witness: list[WitnessTerm] = field(default_factory=list)

    def __bool__(self):
        return self.member


def ideal_membership(a: OSAlgebra, x: ExteriorElement) -> MembershipResult:
    """Decide x in I(M) by rewriting and, per degree, by span membership."""
    nf, witness = a.reduce_with_witness(x)
    if nf != a.normal_form(x):
        raise DualCheckError("iterative and memoized rewriting disagree")
    member = not nf
    for p in sorted(x.degrees()):
        in_span = a.ideal_echelon(p).contains(x.component(p).terms)
        if in_span != (not nf.component(p)):
            raise DualCheckError(f"rewriting and linear algebra disagree in degree {p}")
    return MembershipResult(member, nf, witness if member else [])


def graded_dimensions(a: OSAlgebra, verify: bool | None = None) -> list[int]:
    """dim A^p from nbc counts, optionally checked two other ways."""
    dims = [len(b) for b in a.nbc_basis]
    if all(d == 0 for d in dims):
        dims = [0]
    if verify if verify is not None else DUAL_CHECK:
        by_algebra = [a.quotient_dimension(p) for p in range(a.size + 1)]
        while len(by_algebra) > 1 and by_algebra[-1] == 0:
            by_algebra.pop()
        if by_algebra != dims:
            raise DualCheckError(f"nbc {dims} vs linear algebra {by_algebra}")
        if any(is_loop(a.matroid, i) for i in range(a.size)):
            by_chi = [0]
        else:
            by_chi = poincare_dims(a.matroid)
        if by_chi != dims:
            raise DualCheckError(f"nbc {dims} vs characteristic polynomial {by_chi}")
    return dims


def flats(m: Matroid) -> dict[int, int]:
    """All flats as masks, mapped to their rank."""
    bottom = closure(m, 0)
    found = {bottom: 0}
    frontier = [bottom]
    while frontier:
        nxt = []
        for f in frontier:
            r = found[f]
            for i in range(m.size):
                if f >> i & 1:
                    continue
                g = closure(m, f | 1 << i)
                if g not in found:
                    found[g] = r + 1
                    nxt.append(g)
        frontier = nxt
    return found


def mobius_from_bottom(m: Matroid) -> dict[int, int]:
    fl = flats(m)
    mu: dict[int, int] = {}
    for f in sorted(fl, key=lambda f: (fl[f], f)):
        below = [g for g in mu if g & f == g and g != f]
        mu[f] = 1 if not below else -sum(mu[g] for g in below)
    return mu


def whitney_dimension_oracle(m: Matroid) -> list[int]:
    """Sum of |mu(bottom, X)| over flats X of each rank."""
    if m.size > WHITNEY_SIZE_LIMIT:
        raise ValueError(f"flat enumeration refused above {WHITNEY_SIZE_LIMIT} elements")
    if any(is_loop(m, i) for i in range(m.size)):
        return [0]
    fl = flats(m)
    mu = mobius_from_bottom(m)
    out = [0] * (rank(m) + 1)
    for f, v in mu.items():
        out[fl[f]] += abs(v)
    return out
