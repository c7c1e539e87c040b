"""Matroid and graph families: cycles, sums, parallel connections, G_m."""
from __future__ import annotations

from dataclasses import dataclass

from .matroid import Matroid, MatroidError, bits, is_loop, is_simple, minimal_sets, relabel


@dataclass(frozen=True)
class Graph:
    """Multigraph with labeled edges; ``edges`` holds (label, u, v) triples."""
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        es = tuple((str(l), str(u), str(v)) for l, u, v in self.edges)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex")
        known = set(vs)
        for l, u, v in es:
            if u not in known or v not in known:
                raise ValueError(f"edge {l} has an undeclared endpoint")
        if len({l for l, _, _ in es}) != len(es):
            raise ValueError("duplicate edge label")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    def edge(self, label: str) -> tuple[str, str]:
        for l, u, v in self.edges:
            if l == label:
                return u, v
        raise KeyError(label)


@dataclass(frozen=True)
class FamilySpec:
    seed: Matroid
    basepoint: str
    n: int

    def __post_init__(self):
        object.__setattr__(self, "basepoint", str(self.basepoint))
        if self.n < 2:
            raise MatroidError("n must be at least 2")
        if self.basepoint not in self.seed.labels:
            raise MatroidError(f"basepoint {self.basepoint!r} is not in the seed")
        if not is_simple(self.seed):
            raise MatroidError("seed matroid must be simple (no loops or parallel pairs)")


def cycle_matroid_Cn(n: int) -> Matroid:
    if n < 2:
        raise MatroidError("C_n needs n >= 2")
    return Matroid(tuple(str(i) for i in range(1, n + 1)), frozenset({(1 << n) - 1}))


def isthmus(label: str = "p") -> Matroid:
    return Matroid((label,), frozenset())


def direct_sum(m0: Matroid, m1: Matroid) -> Matroid:
    clash = set(m0.labels) & set(m1.labels)
    if clash:
        raise MatroidError(f"label collision in direct sum: {sorted(clash)}")
    shift = m0.size
    circuits = set(m0.circuits) | {c << shift for c in m1.circuits}
    return Matroid(m0.labels + m1.labels, frozenset(circuits))


def merged_label(b0: str, b1: str) -> str:
    return f"b̄:{b0}={b1}"


def parallel_connection(m0: Matroid, b0, m1: Matroid, b1, label: str | None = None) -> Matroid:
    """Glue ``m0`` and ``m1`` by identifying ``b0`` with ``b1``.

    The merged element takes ``b0``'s position; ``m1``'s other elements follow
    ``m0``'s. Circuits are both circuit families plus the mixed sets
    ``(C - b0) | (C' - b1)``.
    """
    i0, i1 = m0.id_of(b0), m1.id_of(b1)
    if is_loop(m0, i0) or is_loop(m1, i1):
        raise MatroidError("cannot connect along a loop")
    l0, l1 = m0.labels[i0], m1.labels[i1]
    rest1 = [j for j in range(m1.size) if j != i1]
    labels = list(m0.labels)
    labels[i0] = label or merged_label(l0, l1)
    labels += [m1.labels[j] for j in rest1]
    if len(set(labels)) != len(labels):
        raise MatroidError("label collision in parallel connection")

    # ids of m1 elements in the new ground set
    pos1 = {i1: i0}
    for k, j in enumerate(rest1):
        pos1[j] = m0.size + k

    def move(c: int) -> int:
        return sum(1 << pos1[j] for j in bits(c))

    bit0, bit1 = 1 << i0, 1 << i1
    family0 = set(m0.circuits)
    family1 = {move(c) for c in m1.circuits}
    mixed = {(c0 & ~bit0) | move(c1 & ~bit1)
             for c0 in m0.circuits if c0 & bit0
             for c1 in m1.circuits if c1 & bit1}
    combined = family0 | family1 | mixed
    circuits = minimal_sets(combined)
    if len(circuits) != len(combined) and is_simple(m0) and is_simple(m1):
        raise AssertionError("minimalization removed circuits for simple inputs")
    return Matroid(tuple(labels), circuits)


def cycle_labels(n: int, prefix: str = "c") -> dict[str, str]:
    return {str(i): f"{prefix}{i}" for i in range(1, n + 1)}


def family_cycle(n: int) -> Matroid:
    """C_n with labels c1..cn, the cycle factor used by the families."""
    return relabel(cycle_matroid_Cn(n), cycle_labels(n))


def build_Mn(spec: FamilySpec) -> Matroid:
    return direct_sum(family_cycle(spec.n), spec.seed)


def build_Pn(spec: FamilySpec) -> Matroid:
    return parallel_connection(family_cycle(spec.n), "c1", spec.seed, spec.basepoint)


def build_Mn_prime(spec: FamilySpec) -> Matroid:
    return direct_sum(build_Pn(spec), isthmus())


def graphic_matroid(g: Graph) -> Matroid:
    """Cycle matroid of a multigraph; circuits are edge sets of simple cycles.

    Each cycle is found once, from its lowest-index edge ``(u, v)``, as a
    path from ``v`` back to ``u`` over higher-index edges.
    """
    adj: dict[str, list[tuple[int, str]]] = {v: [] for v in g.vertices}
    for k, (_, u, v) in enumerate(g.edges):
        adj[u].append((k, v))
        if u != v:
            adj[v].append((k, u))
    circuits = set()
    for k0, (_, u0, v0) in enumerate(g.edges):
        if u0 == v0:
            circuits.add(1 << k0)
            continue
        stack = [(v0, 1 << k0, {v0})]
        while stack:
            at, used, seen = stack.pop()
            for k, w in adj[at]:
                if k <= k0 or used >> k & 1:
                    continue
                if w == u0:
                    circuits.add(used | 1 << k)
                elif w not in seen and w != at:
                    stack.append((w, used | 1 << k, seen | {w}))
    return Matroid(tuple(l for l, _, _ in g.edges), frozenset(circuits))


def cycle_graph(n: int) -> Graph:
    vs = [str(i) for i in range(n)]
    edges = [(str(i + 1), str(i), str((i + 1) % n)) for i in range(n)]
    return Graph(tuple(vs), tuple(edges))


def complete_graph(k: int) -> Graph:
    vs = [str(i) for i in range(k)]
    edges = [(f"e{i}{j}", str(i), str(j)) for i in range(k) for j in range(i + 1, k)]
    return Graph(tuple(vs), tuple(edges))


def spoke(i: int) -> str:
    return f"s{i}"


def build_Gm(m: int) -> Graph:
    """Fan on Z_{2m}: rim path 1-2-...-(2m-1) plus spokes {0,i}.

    Rim edges are labeled ``r{i}`` for {i, i+1}; spokes ``s{i}`` for {0, i}.
    """
    if m < 2:
        raise ValueError("G_m needs m >= 2")
    vs = [str(v) for v in range(2 * m)]
    rim = [(f"r{i}", str(i), str(i + 1)) for i in range(1, 2 * m - 1)]
    spokes = [(spoke(i), "0", str(i)) for i in range(1, 2 * m)]
    edges = {}
    for l, u, v in rim + spokes:
        key = frozenset((u, v))
        edges.setdefault(key, (l, u, v))
    return Graph(tuple(vs), tuple(edges.values()))


def build_Mn_prime_i(m: int, n: int, i: int) -> Matroid:
    """Isthmus plus the parallel connection of C_n with M(G_m) along spoke {0,i}."""
    if not m <= i <= 2 * m - 1:
        raise ValueError(f"i={i} outside [{m}, {2 * m - 1}]")
    if not n > 2 * m + 1:
        raise ValueError(f"need n > 2m+1, got n={n}, m={m}")
    return build_Mn_prime(FamilySpec(graphic_matroid(build_Gm(m)), spoke(i), n))


def graph_Mn_prime(g: Graph, basepoint: str, n: int) -> Graph:
    """Graph whose cycle matroid is the primed family member for a graphic seed.

    A path of length n-1 is attached to the endpoints of the basepoint edge,
    and a pendant edge ``p`` is added.
    """
    u, v = g.edge(basepoint)
    vs = list(g.vertices)
    edges = [(merged_label("c1", basepoint) if l == basepoint else l, a, b) for l, a, b in g.edges]
    path = [u] + [f"q{k}" for k in range(1, n - 1)] + [v]
    vs += path[1:-1]
    for k in range(n - 1):
        edges.append((f"c{k + 2}", path[k], path[k + 1]))
    vs.append("pendant")
    edges.append(("p", u, "pendant"))
    return Graph(tuple(vs), tuple(edges))
