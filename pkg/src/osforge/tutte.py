"""Tutte and characteristic polynomials by deletion-contraction.

The engine works on raw circuit masks. Each minor is memoized under a
relabeled circuit set: elements are renumbered by (circuit profile, id), so two
minors with the same key are isomorphic and share a Tutte polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .constructions import direct_sum
from .matroid import Matroid, MatroidError, bits, contract, delete, minimal_sets, rank
from .polynomials import BivariatePolynomial, UnivariatePolynomial, substitute_chi

X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()
ONE = BivariatePolynomial.const(1)


def _canonical(ground: int, circuits: frozenset[int]) -> tuple:
    ids = bits(ground)
    prof = {i: [] for i in ids}
    for c in circuits:
        k = c.bit_count()
        for i in bits(c):
            prof[i].append(k)
    order = sorted(ids, key=lambda i: (sorted(prof[i]), i))
    new = {old: k for k, old in enumerate(order)}
    relabeled = sorted(sum(1 << new[i] for i in bits(c)) for c in circuits)
    return len(ids), tuple(relabeled)


class _Engine:
    def __init__(self, pivot_order: Sequence[int] | None):
        self.memo: dict[tuple, BivariatePolynomial] = {}
        self.pivot_order = pivot_order
        self.calls = 0

    def pick(self, ground: int, circuits) -> int:
        if self.pivot_order is None:
            for i in bits(ground):
                yield i
        else:
            for i in self.pivot_order:
                if ground >> i & 1:
                    yield i

    def run(self, ground: int, circuits: frozenset[int]) -> BivariatePolynomial:
        self.calls += 1
        # factor out loops and isthmuses
        covered = 0
        loops = 0
        for c in circuits:
            covered |= c
            if c.bit_count() == 1:
                loops |= c
        isthmuses = ground & ~covered
        factor = X ** isthmuses.bit_count() * Y ** loops.bit_count()
        ground &= ~(isthmuses | loops)
        if loops:
            circuits = frozenset(c for c in circuits if not c & loops)
        if not ground:
            return factor
        key = _canonical(ground, circuits)
        hit = self.memo.get(key)
        if hit is not None:
            return factor * hit
        e = next(self.pick(ground, circuits))
        bit = 1 << e
        deleted = frozenset(c for c in circuits if not c & bit)
        contracted = minimal_sets(c & ~bit for c in circuits)
        result = self.run(ground & ~bit, deleted) + self.run(ground & ~bit, contracted)
        self.memo[key] = result
        return factor * result


def tutte(m: Matroid, pivot_order: Sequence | None = None) -> BivariatePolynomial:
    """Tutte polynomial of ``m``; the empty matroid gives 1.

    ``pivot_order`` (element ids or labels) fixes which element is deleted and
    contracted first; by default the lowest id is used.
    """
    order = None if pivot_order is None else [m.id_of(e) for e in pivot_order]
    return _Engine(order).run(m.full_mask, m.circuits)


def tutte_product_check(m0: Matroid, m1: Matroid) -> bool:
    return tutte(direct_sum(m0, m1)) == tutte(m0) * tutte(m1)


def tutte_cycle(n: int) -> BivariatePolynomial:
    """x + x^2 + ... + x^(n-1) + y."""
    return sum((X ** i for i in range(1, n)), Y)


def closed_form_Mn(m0_tutte: BivariatePolynomial, n: int) -> BivariatePolynomial:
    if n < 2:
        raise ValueError("n >= 2")
    return tutte_cycle(n) * m0_tutte


def tutte_Pn_recursive(m0_tutte, m0_contract_tutte, n: int) -> BivariatePolynomial:
    """Tutte polynomial of the parallel connection with C_n, built up from n = 2."""
    if n < 2:
        raise ValueError("n >= 2")
    t = m0_tutte + Y * m0_contract_tutte
    for k in range(3, n + 1):
        t = X ** (k - 2) * m0_tutte + t
    return t


def closed_form_Mn_prime(m0_tutte, m0_contract_tutte, n: int) -> BivariatePolynomial:
    if n < 2:
        raise ValueError("n >= 2")
    closed = sum((X ** i for i in range(1, n)), BivariatePolynomial()) * m0_tutte \
        + X * Y * m0_contract_tutte
    recursive = X * tutte_Pn_recursive(m0_tutte, m0_contract_tutte, n)
    if closed != recursive:
        raise AssertionError("recursive and closed forms disagree")
    return closed


def characteristic(m: Matroid) -> UnivariatePolynomial:
    return substitute_chi(tutte(m))


def beta_invariant(m: Matroid) -> int:
    if m.size < 2:
        raise MatroidError("beta invariant needs at least two elements")
    return tutte(m).coefficient(1, 0)


def poincare_from_chi(chi: UnivariatePolynomial, r: int) -> UnivariatePolynomial:
    """Coefficients of t^r chi(-1/t)."""
    if chi.degree > r:
        raise ValueError(f"t^{r} chi(-1/t) is not a polynomial (deg chi = {chi.degree})")
    out = [0] * (r + 1)
    for k, a in enumerate(chi.coeffs):
        out[r - k] = a * (-1) ** k
    for c in out:
        if Fraction(c).denominator != 1 or c < 0:
            raise ValueError(f"coefficient {c} is not a non-negative integer")
    return UnivariatePolynomial(tuple(out))


def poincare_dims(m: Matroid) -> list[int]:
    r = rank(m)
    p = poincare_from_chi(characteristic(m), r)
    return list(p.coeffs) + [0] * (r + 1 - len(p.coeffs))


def split_at_basepoint(m0: Matroid, e) -> dict:
    """Deletion/contraction values at (1,1) for a non-isthmus basepoint."""
    t = tutte(m0)
    t_del = tutte(delete(m0, e))
    t_con = tutte(contract(m0, e))
    return {
        "T(1,1)": t(1, 1),
        "T_del(1,1)": t_del(1, 1),
        "T_con(1,1)": t_con(1, 1),
        "T != x*T_con": t != X * t_con,
    }
