import itertools

import pytest

from osforge import os_algebra
from osforge.constructions import (FamilySpec, Graph, build_Gm, build_Mn, build_Mn_prime, complete_graph,
                                   cycle_matroid_Cn, direct_sum, graphic_matroid, parallel_connection, relabel)
from osforge.matroid import Matroid, free_matroid
from osforge.polynomials import BivariatePolynomial


@pytest.fixture(autouse=True)
def _dual_check(monkeypatch):
    monkeypatch.setattr(os_algebra, "DUAL_CHECK", True)


# independent oracles


def brute_rank(m: Matroid, mask: int) -> int:
    elems = [i for i in range(m.size) if mask >> i & 1]
    for k in range(len(elems), -1, -1):
        for combo in itertools.combinations(elems, k):
            s = sum(1 << i for i in combo)
            if not any(c & s == c for c in m.circuits):
                return k
    return 0


def rank_generating_tutte(m: Matroid) -> BivariatePolynomial:
    """Sum over all subsets A of (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))."""
    xm1 = BivariatePolynomial({(1, 0): 1, (0, 0): -1})
    ym1 = BivariatePolynomial({(0, 1): 1, (0, 0): -1})
    full = brute_rank(m, (1 << m.size) - 1)
    total = BivariatePolynomial()
    for mask in range(1 << m.size):
        r = brute_rank(m, mask)
        total = total + xm1 ** (full - r) * ym1 ** (bin(mask).count("1") - r)
    return total


def graphic_circuits_by_union_find(g: Graph) -> set[frozenset[str]]:
    """Minimal edge sets that are not forests."""
    labels = [l for l, _, _ in g.edges]

    def is_forest(idx):
        parent = {v: v for v in g.vertices}

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        for i in idx:
            _, u, v = g.edges[i]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    circuits = []
    for k in range(1, len(labels) + 1):
        for combo in itertools.combinations(range(len(labels)), k):
            if any(set(c) <= set(combo) for c in circuits):
                continue
            if not is_forest(combo):
                circuits.append(combo)
    return {frozenset(labels[i] for i in c) for c in circuits}


def brute_nbc_counts(m: Matroid, order=None) -> list[int]:
    order = list(range(m.size)) if order is None else order
    pos = {e: k for k, e in enumerate(order)}
    broken = []
    for c in m.circuits:
        ids = [i for i in range(m.size) if c >> i & 1]
        low = min(ids, key=pos.__getitem__)
        broken.append(set(ids) - {low})
    counts = [0] * (m.size + 1)
    for k in range(m.size + 1):
        for combo in itertools.combinations(range(m.size), k):
            if not any(b <= set(combo) for b in broken):
                counts[k] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


# corpus


def uniform(r: int, n: int) -> Matroid:
    labels = [f"u{i}" for i in range(1, n + 1)]
    return Matroid.from_labels(labels, itertools.combinations(labels, r + 1))


def fano() -> Matroid:
    lines = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    pts = set(range(1, 8))
    circuits = [set(l) for l in lines] + [pts - set(l) for l in lines]
    return Matroid.from_labels([str(i) for i in range(1, 8)], circuits)


def c3c3() -> Matroid:
    return direct_sum(cycle_matroid_Cn(3), relabel(cycle_matroid_Cn(3), prefix="b"))


def p_c3c3() -> Matroid:
    return parallel_connection(cycle_matroid_Cn(3), "1", relabel(cycle_matroid_Cn(3), prefix="b"), "b1")


def k4() -> Matroid:
    return graphic_matroid(complete_graph(4))


def g2() -> Matroid:
    return graphic_matroid(build_Gm(2))


SEEDS = {
    "C3": (cycle_matroid_Cn(3), "1"),
    "C4": (cycle_matroid_Cn(4), "1"),
    "G2": (g2(), "s2"),
    "K4": (k4(), "e01"),
}


def small_corpus() -> dict[str, Matroid]:
    out = {f"C{n}": cycle_matroid_Cn(n) for n in range(2, 7)}
    out.update({
        "free3": free_matroid(3),
        "C3+C3": c3c3(),
        "P(C3,C3)": p_c3c3(),
        "K4": k4(),
        "G2": g2(),
        "U24": uniform(2, 4),
        "U25": uniform(2, 5),
        "Fano": fano(),
    })
    for name, (seed, bp) in SEEDS.items():
        for n in (2, 3):
            spec = FamilySpec(seed, bp, n)
            out[f"M{n}[{name}]"] = build_Mn(spec)
            out[f"M'{n}[{name}]"] = build_Mn_prime(spec)
    return out


CORPUS = small_corpus()


def corpus_upto(k: int) -> list[tuple[str, Matroid]]:
    return [(name, m) for name, m in CORPUS.items() if m.size <= k]
