"""The exterior-algebra map between the two family members and its certificate.

``certify_iso`` builds both matroids, the generator map, and checks in turn:
degree-1 unimodularity, that every circuit relation lands in the target ideal,
equal graded dimensions, and full rank of the induced map in every degree.
The resulting certificate is plain JSON and can be re-checked by
``verify_certificate`` without rerunning the pipeline.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import __version__, linalg
from .constructions import (FamilySpec, Graph, build_Gm, build_Mn, build_Mn_prime,
                            graphic_matroid, merged_label, spoke)
from .exterior import ExteriorElement, boundary
from .io import matroid_to_json as matroid_json
from .matroid import Matroid, MatroidError, are_isomorphic, bits, longest_circuit, validate
from .os_algebra import OSAlgebra, graded_dimensions, ideal_membership
from .tutte import characteristic

SCHEMA_VERSION = 1


class CertificationError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def element_to_json(x: ExteriorElement, labels) -> list:
    return [{"monomial": [labels[i] for i in m], "coeff": frac_str(c)}
            for m, c in sorted(x.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]


def element_from_json(data, labels) -> ExteriorElement:
    index = {l: i for i, l in enumerate(labels)}
    out = ExteriorElement()
    for t in data:
        out = out + ExteriorElement.monomial([index[l] for l in t["monomial"]], Fraction(t["coeff"]))
    return out


@dataclass
class GeneratorMap:
    source: Matroid
    target: Matroid
    images: dict[int, ExteriorElement]
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i, img in self.images.items():
            if img and img.degrees() != {1}:
                raise ValueError(f"image of generator {i} is not homogeneous of degree 1")

    def image_of_monomial(self, mono: tuple) -> ExteriorElement:
        if not mono:
            return ExteriorElement.one()
        hit = self._memo.get(mono)
        if hit is None:
            hit = self.image_of_monomial(mono[:-1]) * self.images[mono[-1]]
            self._memo[mono] = hit
        return hit

    def __call__(self, x: ExteriorElement) -> ExteriorElement:
        return extend_multiplicatively(self, x)

    def matrix(self) -> list[list[int]]:
        """Degree-1 matrix: row per source generator, column per target generator."""
        rows = []
        for i in range(self.source.size):
            img = self.images[i]
            rows.append([int(img.terms.get((j,), 0)) for j in range(self.target.size)])
        return rows


def extend_multiplicatively(gm: GeneratorMap, x: ExteriorElement) -> ExteriorElement:
    acc: dict[tuple, Fraction] = {}
    for mono, c in x.terms.items():
        for m, d in gm.image_of_monomial(mono).terms.items():
            acc[m] = acc.get(m, 0) + c * d
    return ExteriorElement(acc)


@dataclass(frozen=True)
class FamilyPair:
    spec: FamilySpec
    source: Matroid  # C_n + M0
    target: Matroid  # P^n + isthmus
    merged: str


def build_pair(spec: FamilySpec) -> FamilyPair:
    return FamilyPair(spec, build_Mn(spec), build_Mn_prime(spec), merged_label("c1", spec.basepoint))


def _target_id(pair: FamilyPair, label: str) -> int:
    if label in ("c1", pair.spec.basepoint):
        label = pair.merged
    return pair.target.id_of(label)


def build_phi_hat(spec: FamilySpec) -> GeneratorMap:
    """e_i -> e_i - e_n + e_p (i < n), e_n -> e_p, e_eps -> e_eps, on the merged target."""
    pair = build_pair(spec)
    n = spec.n
    src, tgt = pair.source, pair.target
    gen = ExteriorElement.gen
    t = lambda label: _target_id(pair, label)  # noqa: E731
    images = {}
    for i in range(1, n):
        images[src.id_of(f"c{i}")] = gen(t(f"c{i}")) - gen(t(f"c{n}")) + gen(t("p"))
    images[src.id_of(f"c{n}")] = gen(t("p"))
    for eps in spec.seed.labels:
        images[src.id_of(eps)] = gen(t(eps))
    if sorted(images) != list(range(src.size)):
        raise MatroidError("generator map does not cover the source")
    return GeneratorMap(src, tgt, images)


def stated_inverse(spec: FamilySpec) -> GeneratorMap:
    """Degree-1 inverse: e_i -> e_i - e_1 + e_eps0, e_eps -> e_eps, e_p -> e_n."""
    pair = build_pair(spec)
    src, tgt = pair.source, pair.target
    gen = ExteriorElement.gen
    s = src.id_of
    images = {}
    for i in range(1, spec.n + 1):
        images[_target_id(pair, f"c{i}")] = gen(s(f"c{i}")) - gen(s("c1")) + gen(s(spec.basepoint))
    for eps in spec.seed.labels:
        if eps != spec.basepoint:
            images[_target_id(pair, eps)] = gen(s(eps))
    images[tgt.id_of("p")] = gen(s(f"c{spec.n}"))
    return GeneratorMap(tgt, src, images)


@dataclass
class Degree1Witness:
    matrix: list[list[int]]
    determinant: int
    inverse: list[list[int]]
    inverse_matches_formula: bool

    @property
    def ok(self) -> bool:
        return abs(self.determinant) == 1 and self.inverse_matches_formula


def check_degree1_bijective(gm: GeneratorMap, inverse_map: GeneratorMap | None = None) -> Degree1Witness:
    if gm.source.size != gm.target.size:
        raise CertificationError("degree1", "generator counts differ")
    a = gm.matrix()
    det = linalg.determinant(a)
    if det == 0:
        raise CertificationError("degree1", "singular degree-1 matrix")
    inv = linalg.inverse(a)
    if any(v.denominator != 1 for row in inv for v in row):
        raise CertificationError("degree1", "inverse is not integral")
    inv_int = [[int(v) for v in row] for row in inv]
    matches = True
    if inverse_map is not None:
        matches = inverse_map.matrix() == inv_int
        n = gm.source.size
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        matches = matches and linalg.matmul(a, inverse_map.matrix()) == ident \
            and linalg.matmul(inverse_map.matrix(), a) == ident
    return Degree1Witness(a, int(det), inv_int, matches)


@dataclass
class RelationRecord:
    circuit: list[str]
    case: str
    image: ExteriorElement
    literal: bool  # image equals the boundary of the corresponding target circuit
    member: bool
    witness: list


def check_relations(gm: GeneratorMap, spec: FamilySpec, target_algebra: OSAlgebra) -> list[RelationRecord]:
    """Map every circuit boundary of the source and test membership in the target ideal."""
    pair = build_pair(spec)
    src = gm.source
    records = []
    for c in sorted(src.circuits, key=lambda c: (c.bit_count(), bits(c))):
        ids = bits(c)
        labels = src.labels_of(c)
        image = gm(boundary(ExteriorElement({tuple(ids): 1})))
        if all(l in spec.seed.labels for l in labels):
            case = "seed circuit"
        elif set(labels) == {f"c{i}" for i in range(1, spec.n + 1)}:
            case = "cycle circuit"
        else:
            raise CertificationError("relations", f"unexpected circuit {labels}")
        expected = boundary(ExteriorElement.monomial([_target_id(pair, l) for l in labels]))
        res = ideal_membership(target_algebra, image)
        if not res.member:
            raise CertificationError("relations", f"image of circuit {labels} is not in the target ideal")
        records.append(RelationRecord(labels, case, image, image == expected, True, res.witness))
    return records


def telescoping_sign(n: int) -> int:
    """Sign s with d(e_1...e_n) = s * (e_1 - e_2)(e_2 - e_3)...(e_{n-1} - e_n)."""
    d = boundary(ExteriorElement({tuple(range(n)): 1}))
    prod = ExteriorElement.one()
    for i in range(n - 1):
        prod = prod * (ExteriorElement.gen(i) - ExteriorElement.gen(i + 1))
    if d == prod:
        return 1
    if d == -prod:
        return -1
    raise AssertionError("telescoping identity fails")


def induced_matrices(gm: GeneratorMap, source_algebra: OSAlgebra, target_algebra: OSAlgebra) -> list[list[dict]]:
    """Per degree, rows = images of source nbc monomials in target nbc coordinates."""
    out = []
    for p, basis in enumerate(source_algebra.nbc_basis):
        tgt_basis = target_algebra.nbc_basis[p] if p < len(target_algebra.nbc_basis) else []
        index = {m: k for k, m in enumerate(tgt_basis)}
        rows = []
        for mono in basis:
            nf = target_algebra.normal_form(gm.image_of_monomial(mono))
            rows.append({index[m]: c for m, c in nf.terms.items()})
        out.append(rows)
    return out


def _matrix_rank(rows: list[dict], ncols: int) -> tuple[int, str]:
    """Rank with the method used; the modular rank is a lower bound, so full means full."""
    if all(v.denominator == 1 for r in rows for v in map(Fraction, r.values())):
        r = linalg.rank_mod_p(rows)
        if r == min(len(rows), ncols):
            return r, f"mod {linalg.PRIME}"
    return linalg.rank(rows), "exact rational"


@dataclass
class IsoCertificate:
    spec: FamilySpec
    source: Matroid
    target: Matroid
    degree1: Degree1Witness
    relations: list[RelationRecord]
    telescoping_sign: int
    dims_source: list[int]
    dims_target: list[int]
    chi_equal: bool
    matrices: list[list[dict]]
    ranks: list[int]
    rank_methods: list[str]
    stages: dict[str, bool]
    notes: list[str]

    @property
    def accepted(self) -> bool:
        return all(self.stages.values())

    def to_json(self) -> dict:
        src_l, tgt_l = self.source.labels, self.target.labels
        return {
            "schema": SCHEMA_VERSION,
            "tool": f"osforge {__version__}",
            "kind": "os-isomorphism-certificate",
            "family": {"seed": matroid_json(self.spec.seed), "basepoint": self.spec.basepoint, "n": self.spec.n},
            "source": matroid_json(self.source),
            "target": matroid_json(self.target),
            "stages": dict(self.stages),
            "accepted": self.accepted,
            "degree1": {
                "source_order": list(src_l),
                "target_order": list(tgt_l),
                "matrix": _triplets(self.degree1.matrix),
                "inverse": _triplets(self.degree1.inverse),
                "determinant": self.degree1.determinant,
                "inverse_matches_formula": self.degree1.inverse_matches_formula,
            },
            "relations": [
                {
                    "circuit": r.circuit,
                    "case": r.case,
                    "image": element_to_json(r.image, tgt_l),
                    "literal_boundary": r.literal,
                    "witness": [
                        {"circuit": [tgt_l[i] for i in w.circuit],
                         "right": [tgt_l[i] for i in w.right],
                         "coeff": frac_str(w.coeff)} for w in r.witness],
                } for r in self.relations],
            "telescoping_sign": self.telescoping_sign,
            "dims": {"source": self.dims_source, "target": self.dims_target},
            "chi_equal": self.chi_equal,
            "degrees": [
                {"degree": p, "rows": len(rows), "cols": self.dims_target[p] if p < len(self.dims_target) else 0,
                 "rank": self.ranks[p], "rank_method": self.rank_methods[p],
                 "entries": [[i, j, frac_str(v)] for i, row in enumerate(rows) for j, v in sorted(row.items())]}
                for p, rows in enumerate(self.matrices)],
            "notes": list(self.notes),
        }


def _triplets(matrix) -> list:
    return [[i, j, frac_str(v)] for i, row in enumerate(matrix) for j, v in enumerate(row) if v]


def certify_iso(spec: FamilySpec, dual_check: bool | None = None) -> IsoCertificate:
    stages: dict[str, bool] = {}
    pair = build_pair(spec)
    for name, m in (("seed", spec.seed), ("source", pair.source), ("target", pair.target)):
        rep = validate(m)
        if not rep:
            raise CertificationError("validate", f"{name} fails {rep.failures}: {rep.witness}")
    stages["validate"] = True

    gm = build_phi_hat(spec)
    w1 = check_degree1_bijective(gm, stated_inverse(spec))
    if not w1.ok:
        raise CertificationError("degree1", f"determinant {w1.determinant}, formula match {w1.inverse_matches_formula}")
    stages["degree1"] = True

    src_alg = OSAlgebra(pair.source)
    tgt_alg = OSAlgebra(pair.target)
    relations = check_relations(gm, spec, tgt_alg)
    stages["relations"] = all(r.member for r in relations)

    dims_s = graded_dimensions(src_alg, dual_check)
    dims_t = graded_dimensions(tgt_alg, dual_check)
    chi_equal = characteristic(pair.source) == characteristic(pair.target)
    if dims_s != dims_t or not chi_equal:
        raise CertificationError("dimensions", f"{dims_s} vs {dims_t}, chi equal: {chi_equal}")
    stages["dimensions"] = True

    mats = induced_matrices(gm, src_alg, tgt_alg)
    ranks, methods = [], []
    for p, rows in enumerate(mats):
        r, how = _matrix_rank(rows, dims_t[p])
        if r != dims_t[p] or len(rows) != dims_t[p]:
            raise CertificationError("surjectivity", f"degree {p}: rank {r} of {dims_t[p]}")
        ranks.append(r)
        methods.append(how)
    stages["surjectivity"] = True

    notes = [
        "source generator of the basepoint maps to the merged generator of c1 and the basepoint",
        f"d(e_1...e_n) = {telescoping_sign(spec.n):+d} * (e_1-e_2)...(e_(n-1)-e_n)",
        "phi(e_i - e_(i+1)) = e_i - e_(i+1) for 1 <= i <= n-1",
    ]
    return IsoCertificate(spec, pair.source, pair.target, w1, relations, telescoping_sign(spec.n),
                          dims_s, dims_t, chi_equal, mats, ranks, methods, stages, notes)


def verify_certificate(data: Mapping) -> tuple[bool, dict[str, bool]]:
    """Re-check a serialized certificate from its own contents."""
    checks: dict[str, bool] = {}
    src = Matroid.from_labels(data["source"]["ground"], data["source"]["circuits"])
    tgt = Matroid.from_labels(data["target"]["ground"], data["target"]["circuits"])
    checks["matroids valid"] = bool(validate(src)) and bool(validate(tgt))
    n = src.size
    d1 = data["degree1"]

    def dense(trips):
        a = [[Fraction(0)] * n for _ in range(n)]
        for i, j, v in trips:
            a[i][j] = Fraction(v)
        return a

    a, b = dense(d1["matrix"]), dense(d1["inverse"])
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    checks["degree1 inverse"] = linalg.matmul(a, b) == ident and linalg.matmul(b, a) == ident
    checks["degree1 unimodular"] = abs(linalg.determinant(a)) == 1
    src_l, tgt_l = d1["source_order"], d1["target_order"]
    images = {i: ExteriorElement({(j,): a[i][j] for j in range(n) if a[i][j]}) for i in range(n)}

    relations_ok = True
    src_circuits = {frozenset(c) for c in data["source"]["circuits"]}
    tgt_circuits = {frozenset(c) for c in data["target"]["circuits"]}
    seen = set()
    for rel in data["relations"]:
        circ = rel["circuit"]
        seen.add(frozenset(circ))
        ids = sorted(src_l.index(l) for l in circ)
        bd = boundary(ExteriorElement({tuple(ids): 1}))
        img = ExteriorElement()
        for mono, c in bd.terms.items():
            prod = ExteriorElement.one()
            for i in mono:
                prod = prod * images[i]
            img = img + prod.scale(c)
        stored = element_from_json(rel["image"], tgt_l)
        total = ExteriorElement()
        for w in rel["witness"]:
            if frozenset(w["circuit"]) not in tgt_circuits:
                relations_ok = False
            cid = tuple(sorted(tgt_l.index(l) for l in w["circuit"]))
            rid = [tgt_l.index(l) for l in w["right"]]
            total = total + (boundary(ExteriorElement({cid: 1})) * ExteriorElement.monomial(rid)).scale(Fraction(w["coeff"]))
        relations_ok = relations_ok and img == stored and total == img
    checks["relations"] = relations_ok and seen == src_circuits
    dims = data["dims"]
    checks["dimensions equal"] = dims["source"] == dims["target"]
    ranks_ok = True
    for deg in data["degrees"]:
        p = deg["degree"]
        rows: list[dict] = [dict() for _ in range(deg["rows"])]
        for i, j, v in deg["entries"]:
            rows[i][j] = Fraction(v)
        size = dims["target"][p]
        r = linalg.rank_mod_p(rows) if all(v.denominator == 1 for row in rows for v in row.values()) else 0
        if r != size:
            r = linalg.rank(rows)
        ranks_ok = ranks_ok and deg["rows"] == size and deg["cols"] == size and r == size
    checks["full rank per degree"] = ranks_ok and len(data["degrees"]) == len(dims["target"])

    # recompute the induced matrices so a full-rank but wrong matrix is caught
    gm = GeneratorMap(src, tgt, images)
    src_alg, tgt_alg = OSAlgebra(src), OSAlgebra(tgt)
    recomputed = induced_matrices(gm, src_alg, tgt_alg)
    stored = [sorted((i, j, Fraction(v)) for i, j, v in deg["entries"]) for deg in data["degrees"]]
    fresh = [sorted((i, j, v) for i, row in enumerate(rows) for j, v in row.items()) for rows in recomputed]
    checks["induced matrices reproduce"] = stored == fresh
    checks["dimensions reproduce"] = dims["source"] == graded_dimensions(src_alg) \
        and dims["target"] == graded_dimensions(tgt_alg)
    return all(checks.values()), checks


# multi-matroid demonstration


def _single_edge_graph() -> Graph:
    return Graph(("0", "1"), ((spoke(1), "0", "1"),))


@dataclass
class MultiMatroidReport:
    m: int
    n: int
    members: list[dict]
    pairwise_nonisomorphic: bool
    all_certified: bool
    shared_dims: list[int] | None
    reference: Matroid

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool": f"osforge {__version__}",
            "kind": "multi-matroid-report",
            "m": self.m,
            "n": self.n,
            "reference": matroid_json(self.reference),
            "members": self.members,
            "pairwise_nonisomorphic": self.pairwise_nonisomorphic,
            "all_certified": self.all_certified,
            "shared_dims": self.shared_dims,
        }


def demonstrate_corollary_cor(m: int, n: int, exhaustive_limit: int = 14) -> MultiMatroidReport:
    """Build the m primed matroids over M(G_m) and certify each against C_n + M(G_m)."""
    if m < 1:
        raise ValueError("m must be positive")
    if not n > 2 * m + 1:
        raise ValueError(f"need n > 2m+1, got n={n}, m={m}")
    graph = _single_edge_graph() if m == 1 else build_Gm(m)
    seed = graphic_matroid(graph)
    members = []
    matroids = []
    dims = None
    certified = True
    reference = None
    for i in range(m, 2 * m):
        spec = FamilySpec(seed, spoke(i), n)
        cert = certify_iso(spec)
        reference = cert.source
        matroids.append(cert.target)
        certified = certified and cert.accepted
        if dims is None:
            dims = cert.dims_source
        certified = certified and cert.dims_target == dims
        members.append({
            "i": i,
            "basepoint": spoke(i),
            "matroid": matroid_json(cert.target),
            "longest_circuit": longest_circuit(cert.target),
            "certificate_accepted": cert.accepted,
            "dims": cert.dims_target,
        })
    distinct = True
    pairs = []
    for a, b in itertools.combinations(range(len(matroids)), 2):
        by_invariant = members[a]["longest_circuit"] != members[b]["longest_circuit"]
        exhaustive = None
        if matroids[a].size <= exhaustive_limit:
            exhaustive = are_isomorphic(matroids[a], matroids[b], use_invariants=False) is None
        pairs.append({"pair": [members[a]["i"], members[b]["i"]],
                      "longest_circuit_differs": by_invariant, "exhaustive_nonisomorphic": exhaustive})
        distinct = distinct and (exhaustive if exhaustive is not None else by_invariant)
    for mem in members:
        mem["pairs"] = [p for p in pairs if mem["i"] in p["pair"]]
    return MultiMatroidReport(m, n, members, distinct, certified, dims, reference)
