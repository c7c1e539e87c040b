"""Circuit-based matroids.

A matroid is stored as an ordered tuple of labels plus a frozenset of circuits,
each circuit a bit mask over element ids (bit ``i`` is the element with id ``i``).
Rank, independence, minors and connectivity are all derived from the circuits.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable


class MatroidError(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    id: int
    label: str


def bits(mask: int) -> list[int]:
    """Ids of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def minimal_sets(masks: Iterable[int]) -> frozenset[int]:
    """Inclusion-minimal members of a family of nonempty masks."""
    ordered = sorted(set(m for m in masks if m), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...] = ()
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class Matroid:
    labels: tuple[str, ...]
    circuits: frozenset[int]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        if len(set(labels)) != len(labels):
            raise MatroidError(f"duplicate labels in {labels}")
        full = (1 << len(labels)) - 1
        circuits = frozenset(self.circuits)
        for c in circuits:
            if c == 0:
                raise MatroidError("empty circuit")
            if c & ~full:
                raise MatroidError(f"circuit {c:b} uses unknown element ids")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "circuits", circuits)
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(labels)})

    @classmethod
    def from_labels(cls, ground: Iterable, circuits: Iterable[Iterable]) -> "Matroid":
        ground = [str(g) for g in ground]
        index = {l: i for i, l in enumerate(ground)}
        masks = []
        for c in circuits:
            c = [str(x) for x in c]
            if len(set(c)) != len(c):
                raise MatroidError(f"duplicate element in circuit {c}")
            try:
                masks.append(sum(1 << index[x] for x in c))
            except KeyError as exc:
                raise MatroidError(f"circuit element {exc.args[0]!r} not in ground set") from None
        if len(set(masks)) != len(masks):
            raise MatroidError("duplicate circuit")
        return cls(tuple(ground), frozenset(masks))

    # basic accessors

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def ground(self) -> list[Element]:
        return [Element(i, l) for i, l in enumerate(self.labels)]

    def id_of(self, e) -> int:
        """Element id for an Element, an int id, or a label."""
        if isinstance(e, Element):
            if e.id >= self.size or self.labels[e.id] != e.label:
                raise MatroidError(f"unknown element {e}")
            return e.id
        if isinstance(e, int) and not isinstance(e, bool):
            if not 0 <= e < self.size:
                raise MatroidError(f"unknown element id {e}")
            return e
        try:
            return self._index[str(e)]
        except KeyError:
            raise MatroidError(f"unknown element {e!r}") from None

    def mask_of(self, s) -> int:
        """Bit mask for an int mask (passed through) or an iterable of elements."""
        if isinstance(s, int) and not isinstance(s, bool):
            if s & ~self.full_mask:
                raise MatroidError(f"mask {s:b} has unknown element ids")
            return s
        m = 0
        for e in s:
            m |= 1 << self.id_of(e)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def circuit_label_sets(self) -> set[frozenset[str]]:
        return {frozenset(self.labels_of(c)) for c in self.circuits}

    def same_as(self, other: "Matroid") -> bool:
        """Equality as labeled matroids (element order ignored)."""
        return set(self.labels) == set(other.labels) and \
            self.circuit_label_sets() == other.circuit_label_sets()

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((frozenset(self.labels), frozenset(self.circuit_label_sets())))

    def __repr__(self):
        cs = sorted((sorted(self.labels_of(c)) for c in self.circuits), key=lambda c: (len(c), c))
        return f"Matroid(ground={list(self.labels)}, circuits={cs})"


def free_matroid(k_or_labels) -> Matroid:
    if isinstance(k_or_labels, int):
        labels = [str(i + 1) for i in range(k_or_labels)]
    else:
        labels = list(k_or_labels)
    return Matroid(tuple(labels), frozenset())


def relabel(m: Matroid, mapping=None, prefix: str = "") -> Matroid:
    """Rename elements by a dict (missing labels kept) and/or a prefix."""
    mapping = mapping or {}
    labels = tuple(prefix + str(mapping.get(l, l)) for l in m.labels)
    return Matroid(labels, m.circuits)


def validate(m: Matroid) -> ValidationReport:
    """Check the antichain and circuit-elimination axioms."""
    if 0 in m.circuits:
        return ValidationReport(False, ("empty circuit",), ())
    cs = sorted(m.circuits)
    for a, b in itertools.permutations(cs, 2):
        if a & b == a:
            return ValidationReport(
                False, ("antichain",), (m.labels_of(a), m.labels_of(b)))
    for a, b in itertools.combinations(cs, 2):
        union = a | b
        for e in bits(a & b):
            rest = union & ~(1 << e)
            if not any(c & rest == c for c in cs):
                return ValidationReport(
                    False, ("circuit elimination",),
                    (m.labels_of(a), m.labels_of(b), m.labels[e]))
    return ValidationReport(True)


def is_independent(m: Matroid, s) -> bool:
    s = m.mask_of(s)
    return not any(c & s == c for c in m.circuits)


def _rank_mask(circuits, s: int) -> int:
    # greedy: correct by the exchange property
    chosen = 0
    r = 0
    for i in bits(s):
        trial = chosen | (1 << i)
        if not any(c & trial == c for c in circuits):
            chosen = trial
            r += 1
    return r


def rank(m: Matroid, s=None) -> int:
    s = m.full_mask if s is None else m.mask_of(s)
    return _rank_mask(m.circuits, s)


def closure(m: Matroid, s) -> int:
    s = m.mask_of(s)
    r = _rank_mask(m.circuits, s)
    cl = s
    for i in range(m.size):
        if not s >> i & 1 and _rank_mask(m.circuits, s | 1 << i) == r:
            cl |= 1 << i
    return cl


def _drop_bit(mask: int, i: int) -> int:
    low = mask & ((1 << i) - 1)
    return low | (mask >> (i + 1)) << i


def delete(m: Matroid, e) -> Matroid:
    i = m.id_of(e)
    labels = m.labels[:i] + m.labels[i + 1:]
    circuits = frozenset(_drop_bit(c, i) for c in m.circuits if not c >> i & 1)
    return Matroid(labels, circuits)


def contract(m: Matroid, e) -> Matroid:
    i = m.id_of(e)
    labels = m.labels[:i] + m.labels[i + 1:]
    residues = minimal_sets(_drop_bit(c, i) for c in m.circuits)
    return Matroid(labels, residues)


def restrict(m: Matroid, s) -> Matroid:
    """Restriction to a subset; circuits are those contained in it."""
    s = m.mask_of(s)
    keep = bits(s)
    pos = {old: new for new, old in enumerate(keep)}
    circuits = frozenset(sum(1 << pos[i] for i in bits(c)) for c in m.circuits if c & s == c)
    return Matroid(tuple(m.labels[i] for i in keep), circuits)


def is_loop(m: Matroid, e) -> bool:
    return (1 << m.id_of(e)) in m.circuits


def is_isthmus(m: Matroid, e) -> bool:
    bit = 1 << m.id_of(e)
    return not any(c & bit for c in m.circuits)


def is_connected(m: Matroid) -> bool:
    """Every pair of distinct elements lies in a common circuit."""
    if m.size == 0:
        raise MatroidError("connectivity of the empty matroid is undefined")
    if m.size == 1:
        return not is_loop(m, 0)
    # union-find over "shares a circuit"; the relation is transitive for matroids
    parent = list(range(m.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in m.circuits:
        ids = bits(c)
        for j in ids[1:]:
            parent[find(j)] = find(ids[0])
    return len({find(i) for i in range(m.size)}) == 1


def is_simple(m: Matroid) -> bool:
    return all(c.bit_count() > 2 for c in m.circuits)


def longest_circuit(m: Matroid) -> int:
    if not m.circuits:
        raise MatroidError("matroid has no circuits")
    return max(c.bit_count() for c in m.circuits)


def bases(m: Matroid) -> list[int]:
    """All bases by brute force (used as an oracle)."""
    r = rank(m)
    out = []
    for combo in itertools.combinations(range(m.size), r):
        mask = sum(1 << i for i in combo)
        if is_independent(m, mask):
            out.append(mask)
    return out


# isomorphism

ISO_SIZE_LIMIT = 14


def _profiles(m: Matroid) -> list[tuple]:
    prof = [[] for _ in range(m.size)]
    for c in m.circuits:
        k = c.bit_count()
        for i in bits(c):
            prof[i].append(k)
    return [tuple(sorted(p)) for p in prof]


def are_isomorphic(m1: Matroid, m2: Matroid, use_invariants: bool = True) -> dict[str, str] | None:
    """Find a bijection of ground sets carrying circuits onto circuits.

    Returns a label mapping ``m1 -> m2`` or None. With ``use_invariants`` the
    circuit-size multiset is compared up front; the backtracking search itself
    always prunes candidates by per-element circuit profiles.
    """
    if max(m1.size, m2.size) > ISO_SIZE_LIMIT:
        raise MatroidError(f"isomorphism search refused above {ISO_SIZE_LIMIT} elements")
    if m1.size != m2.size or len(m1.circuits) != len(m2.circuits):
        return None
    if use_invariants:
        if Counter(c.bit_count() for c in m1.circuits) != Counter(c.bit_count() for c in m2.circuits):
            return None
    p1, p2 = _profiles(m1), _profiles(m2)
    if sorted(p1) != sorted(p2):
        return None

    n = m1.size
    # most constrained first: rarest profile, then most circuits
    freq = Counter(p1)
    order = sorted(range(n), key=lambda i: (freq[p1[i]], -len(p1[i]), i))
    candidates = {i: [j for j in range(n) if p2[j] == p1[i]] for i in range(n)}
    circuits2 = m2.circuits
    by_last: dict[int, list[int]] = {i: [] for i in range(n)}
    rank_in_order = {v: k for k, v in enumerate(order)}
    for c in m1.circuits:
        last = max(bits(c), key=lambda v: rank_in_order[v])
        by_last[last].append(c)
    image = [0] * n
    used = 0

    def consistent(i: int) -> bool:
        for c in by_last[i]:
            img = 0
            for v in bits(c):
                img |= 1 << image[v]
            if img not in circuits2:
                return False
        return True

    def search(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used >> j & 1:
                continue
            image[i] = j
            used |= 1 << j
            if consistent(i) and search(k + 1):
                return True
            used &= ~(1 << j)
        return False

    if not search(0):
        return None
    # circuit counts are equal and the map is injective on circuits, so it is onto
    return {m1.labels[i]: m2.labels[image[i]] for i in range(n)}
