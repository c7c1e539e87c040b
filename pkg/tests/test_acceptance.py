"""Acceptance criteria, one test each, with runtime budgets.

Each test prints a single PASS/FAIL line (visible under ``pytest -v`` or ``-s``).
"""
import itertools
import json
import random
import time

import pytest

from conftest import CORPUS, brute_nbc_counts, brute_rank, c3c3, rank_generating_tutte
from osforge.arrangements import (Arrangement, LinearForm, arr_parallel_connection, coordinate_change,
                                  graphic_arrangement, realize_generic, underlying_matroid,
                                  verify_theorem_homo_identity)
from osforge.constructions import (FamilySpec, Graph, build_Gm, build_Mn, build_Mn_prime, build_Pn, complete_graph,
                                   cycle_matroid_Cn, direct_sum, graphic_matroid, parallel_connection, relabel)
from osforge.exterior import ExteriorElement, boundary
from osforge.iso import certify_iso, demonstrate_corollary_cor, verify_certificate
from osforge.matroid import contract, is_connected, is_loop, validate
from osforge.os_algebra import OSAlgebra, graded_dimensions, whitney_dimension_oracle
from osforge.polynomials import BivariatePolynomial
from osforge.tutte import (beta_invariant, characteristic, closed_form_Mn, closed_form_Mn_prime, poincare_dims,
                           split_at_basepoint, tutte, tutte_Pn_recursive)

X, Y = BivariatePolynomial.x(), BivariatePolynomial.y()


def seeds():
    """The four seeds; K4 goes through the Graph input path."""
    return {
        "C3": (cycle_matroid_Cn(3), "1"),
        "C4": (cycle_matroid_Cn(4), "1"),
        "M(G2)": (graphic_matroid(build_Gm(2)), "s2"),
        "M(K4)": (graphic_matroid(complete_graph(4)), "e01"),
    }


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, budget, detail=""):
        status = "PASS" if ok and elapsed < budget else "FAIL"
        line = f"[{status}] criterion {number}: {title} ({elapsed:.2f} s, budget {budget:g} s)"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail or title
        assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"
    return emit


def test_criterion_1_cycle_tutte(report):
    t0 = time.perf_counter()
    ok = all(tutte(cycle_matroid_Cn(n)) == sum((X ** i for i in range(1, n)), Y) for n in range(2, 9))
    report(1, "T(C_n) = x + ... + x^(n-1) + y for n = 2..8", ok, time.perf_counter() - t0, 1)


def test_criterion_2_family_closed_forms(report):
    t0 = time.perf_counter()
    bad = []
    for name, (seed, bp) in seeds().items():
        t_seed, t_con = tutte(seed), tutte(contract(seed, bp))
        prev = None
        for n in range(2, 6):
            spec = FamilySpec(seed, bp, n)
            tp = tutte(build_Pn(spec))
            if tutte(build_Mn(spec)) != closed_form_Mn(t_seed, n):
                bad.append(f"{name} M_{n}")
            if tutte(build_Mn_prime(spec)) != closed_form_Mn_prime(t_seed, t_con, n):
                bad.append(f"{name} M'_{n}")
            if tp != tutte_Pn_recursive(t_seed, t_con, n):
                bad.append(f"{name} P^{n}")
            if prev is not None and tp != X ** (n - 2) * t_seed + prev:
                bad.append(f"{name} P^{n} step")
            prev = tp
    report(2, "closed forms for M_n, M'_n and the P^n recursion, 4 seeds x n = 2..5",
           not bad, time.perf_counter() - t0, 10, ", ".join(bad))


def test_criterion_3_tutte_differs_chi_agrees(report):
    t0 = time.perf_counter()
    bad = []
    for name, (seed, bp) in seeds().items():
        assert is_connected(seed)
        for n in range(3, 6):
            spec = FamilySpec(seed, bp, n)
            mn, mnp = build_Mn(spec), build_Mn_prime(spec)
            if tutte(mn) == tutte(mnp):
                bad.append(f"{name} n={n}: Tutte equal")
            if characteristic(mn) != characteristic(mnp):
                bad.append(f"{name} n={n}: chi differs")
    spec = FamilySpec(cycle_matroid_Cn(3), "1", 3)
    mn, mnp = build_Mn(spec), build_Mn_prime(spec)
    brute = rank_generating_tutte(mn) - rank_generating_tutte(mnp)
    expected = Y * (X + Y - X * Y)
    if brute != expected or tutte(mn) - tutte(mnp) != expected:
        bad.append(f"C3 n=3 difference {brute}")
    report(3, "T(M_n) != T(M'_n), chi equal; C3 n=3 difference y(x + y - xy)",
           not bad, time.perf_counter() - t0, 5, ", ".join(bad))


def test_criterion_4_certificates(report):
    t_all = time.perf_counter()
    bad = []
    slowest = 0.0
    for name, (seed, bp) in seeds().items():
        for n in range(2, 6):
            t0 = time.perf_counter()
            cert = certify_iso(FamilySpec(seed, bp, n))
            data = json.loads(json.dumps(cert.to_json()))
            ok, checks = verify_certificate(data)
            slowest = max(slowest, time.perf_counter() - t0)
            stages = cert.stages
            if not (cert.accepted and ok and stages["degree1"] and stages["relations"]
                    and stages["dimensions"] and stages["surjectivity"]):
                bad.append(f"{name} n={n}: {stages} {checks}")
    report(4, f"certify_iso accepts and re-verifies on 16 instances (total {time.perf_counter() - t_all:.2f} s)",
           not bad, slowest, 60, ", ".join(bad))


def test_criterion_5_triple_agreement(report):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for name, m in CORPUS.items():
        if m.size > 10:
            continue
        count += 1
        a = OSAlgebra(m)
        nbc = [len(b) for b in a.nbc_basis]
        quotient = [a.quotient_dimension(p) for p in range(len(nbc))]
        chi = poincare_dims(m)
        if not (nbc == quotient == chi == brute_nbc_counts(m) == whitney_dimension_oracle(m)):
            bad.append(name)
    dims = graded_dimensions(OSAlgebra(c3c3()), verify=True)
    if dims != [1, 6, 13, 12, 4] or brute_nbc_counts(c3c3()) != [1, 6, 13, 12, 4]:
        bad.append(f"C3+C3 {dims}")
    report(5, f"nbc = exact quotient ranks = t^r chi(-1/t) on {count} corpus matroids; C3+C3 = (1,6,13,12,4)",
           not bad, time.perf_counter() - t0, 30, ", ".join(bad))


def test_criterion_6_multiple_matroids(report):
    t0 = time.perf_counter()
    rep = demonstrate_corollary_cor(2, 6)
    longest = [m["longest_circuit"] for m in rep.members]
    exhaustive = all(p["exhaustive_nonisomorphic"] is True for m in rep.members for p in m["pairs"])
    reference = direct_sum(relabel(cycle_matroid_Cn(6), prefix="c"), graphic_matroid(build_Gm(2)))
    ok = (longest == [7, 8] and rep.pairwise_nonisomorphic and exhaustive and rep.all_certified
          and rep.reference == reference)
    report(6, "m=2, n=6: longest circuits 7 and 8, non-isomorphic (exhaustive), both certified",
           ok, time.perf_counter() - t0, 300, f"longest {longest}")


def test_criterion_7_split_and_beta(report):
    t0 = time.perf_counter()
    bad = []
    for name, (seed, bp) in seeds().items():
        s = split_at_basepoint(seed, bp)
        if not (s["T(1,1)"] == s["T_del(1,1)"] + s["T_con(1,1)"] and s["T_del(1,1)"] > 0 and s["T_con(1,1)"] > 0):
            bad.append(f"{name} split {s}")
        if not beta_invariant(seed) > 0:
            bad.append(f"{name} beta")
    if beta_invariant(c3c3()) != 0:
        bad.append("C3+C3 beta nonzero")
    report(7, "T(1,1) splits into positive parts at the basepoint; beta > 0 iff connected",
           not bad, time.perf_counter() - t0, 1, ", ".join(bad))


def _prefixed(a, prefix):
    return Arrangement(a.variables, tuple(LinearForm(f.coeffs, f.const, prefix + f.label) for f in a.forms))


def _rank3_generic(k):
    forms = [{"x": 1}, {"y": 1}, {"z": 1}, {"x": 1, "y": 1, "z": 1}, {"x": 1, "y": 2, "z": 3}][:k]
    return Arrangement(("x", "y", "z"), tuple(LinearForm(c) for c in forms))


def test_criterion_8_arrangement_identity(report):
    t0 = time.perf_counter()
    pool = {
        "C3": (realize_generic(3), "H1"),
        "C4": (realize_generic(4), "H1"),
        "generic 5 in 4-space": (realize_generic(5), "H1"),
        "generic 4 in 3-space": (_rank3_generic(4), "H1"),
        "generic 5 in 3-space": (_rank3_generic(5), "H1"),
        "G2": (coordinate_change(graphic_arrangement(build_Gm(2)), "s2"), "s2"),
    }
    bad = []
    for (n0, (a0, h0)), (n1, (a1, h1)) in itertools.product(pool.items(), repeat=2):
        a1, h1 = _prefixed(a1, "b"), "b" + h1
        rep = verify_theorem_homo_identity(a0, a1, h0, h1)
        if not rep.ok or rep.punctured_line_factors != (2, 2):
            bad.append(f"{n0} / {n1}: identity")
        p = arr_parallel_connection(a0, a1, h0, h1)
        expected = parallel_connection(underlying_matroid(a0), h0, underlying_matroid(a1), h1)
        if underlying_matroid(p) != expected:
            bad.append(f"{n0} / {n1}: matroid")
    report(8, f"decone identity and matroid of the parallel connection on {len(pool) ** 2} pairs",
           not bad, time.perf_counter() - t0, 10, ", ".join(bad))


def _brute_basis_count(m):
    r = brute_rank(m, (1 << m.size) - 1)
    count = 0
    for combo in itertools.combinations(range(m.size), r):
        s = sum(1 << i for i in combo)
        if not any(c & s == c for c in m.circuits):
            count += 1
    return count


def _random_graph(rng, nv, ne):
    vs = [str(v) for v in range(nv)]
    edges = [(f"e{k}", rng.choice(vs), rng.choice(vs)) for k in range(ne)]
    return Graph(tuple(vs), tuple(edges))


def test_criterion_9_property_suites(report):
    t0 = time.perf_counter()
    rng = random.Random(20261017)
    bad = []
    sample = [m for m in CORPUS.values() if m.size <= 10]
    sample += [graphic_matroid(_random_graph(rng, rng.randint(2, 6), rng.randint(1, 9))) for _ in range(40)]

    # constructor outputs satisfy the circuit axioms
    built = list(CORPUS.values())
    for name, (seed, bp) in seeds().items():
        for n in range(2, 6):
            spec = FamilySpec(seed, bp, n)
            built += [build_Mn(spec), build_Pn(spec), build_Mn_prime(spec)]
    built += [graphic_matroid(build_Gm(m)) for m in (2, 3, 4)]
    if not all(validate(m) for m in built + sample):
        bad.append("circuit axioms")

    # boundary squares to zero
    for k in range(8):
        for mono in itertools.combinations(range(8), k):
            if boundary(boundary(ExteriorElement({mono: 1}))):
                bad.append(f"d^2 on {mono}")

    for m in sample:
        # normal form idempotent and multiplicative
        a = OSAlgebra(m)
        monos = [ExteriorElement({c: 1}) for k in (1, 2) for c in itertools.combinations(range(m.size), k)]
        picks = rng.sample(monos, min(12, len(monos)))
        for x in picks:
            nx = a.normal_form(x)
            if a.normal_form(nx) != nx:
                bad.append("nf idempotence")
            for y in picks[:4]:
                if a.normal_form(x * y) != a.normal_form(nx * a.normal_form(y)):
                    bad.append("nf multiplicativity")
        # pivot order invariance
        t = tutte(m)
        order = list(m.labels)
        rng.shuffle(order)
        if tutte(m, pivot_order=order) != t:
            bad.append("pivot order")
        # nbc count order invariance
        perm = list(range(m.size))
        rng.shuffle(perm)
        if brute_nbc_counts(m, perm) != brute_nbc_counts(m):
            bad.append("nbc order")
        if [len(b) for b in OSAlgebra(m, [m.labels[i] for i in perm]).nbc_basis] != [len(b) for b in a.nbc_basis]:
            bad.append("nbc order (algebra)")
        # T(1,1) counts bases
        if t(1, 1) != _brute_basis_count(m):
            bad.append("T(1,1) basis count")
        if not any(is_loop(m, i) for i in range(m.size)) and graded_dimensions(a) != poincare_dims(m):
            bad.append("dims")
    report(9, f"property sweeps on {len(sample)} matroids (<= 10 elements) and {len(built)} constructor outputs",
           not bad, time.perf_counter() - t0, 120, ", ".join(sorted(set(bad))))
