"""Sparse exterior algebra with exact rational coefficients.

Monomials are strictly increasing tuples of generator ids.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def merge_sign(a: tuple, b: tuple) -> tuple[int, tuple | None]:
    """Sign and sorted monomial of ``e_a * e_b``; (0, None) if they overlap."""
    if set(a) & set(b):
        return 0, None
    inversions = 0
    j = 0
    # count pairs (x in a, y in b) with x > y
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


def sort_sign(seq: Iterable[int]) -> tuple[int, tuple | None]:
    """Sign of the permutation sorting ``seq``; (0, None) on a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


class ExteriorElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        out = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                mono = tuple(mono)
                if any(mono[i] >= mono[i + 1] for i in range(len(mono) - 1)):
                    raise ValueError(f"monomial {mono} is not strictly increasing")
                out[mono] = c
        self.terms = out

    @classmethod
    def monomial(cls, ids: Iterable[int], coeff=1) -> "ExteriorElement":
        """Product e_{i1} e_{i2} ... in the given order (sign applied)."""
        sign, mono = sort_sign(ids)
        if not sign:
            return cls()
        return cls({mono: sign * Fraction(coeff)})

    @classmethod
    def one(cls) -> "ExteriorElement":
        return cls({(): 1})

    @classmethod
    def gen(cls, i: int) -> "ExteriorElement":
        return cls({(i,): 1})

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ExteriorElement(out)

    def __neg__(self):
        return ExteriorElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        c = Fraction(c)
        return ExteriorElement({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[tuple, Fraction] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                s, m = merge_sign(a, b)
                if s:
                    out[m] = out.get(m, 0) + s * c * d
        return ExteriorElement(out)

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def component(self, p: int) -> "ExteriorElement":
        return ExteriorElement({m: c for m, c in self.terms.items() if len(m) == p})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def relabel(self, mapping: Mapping[int, int]) -> "ExteriorElement":
        out = ExteriorElement()
        for m, c in self.terms.items():
            out = out + ExteriorElement.monomial([mapping[i] for i in m], c)
        return out

    def format(self, labels=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            name = "*".join(f"e{labels[i]}" if labels else f"e{i}" for i in m) or "1"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"ExteriorElement({self.format()})"


def boundary_monomial(mono: tuple) -> dict[tuple, int]:
    return {mono[:i] + mono[i + 1:]: (-1) ** i for i in range(len(mono))}


def boundary(x: ExteriorElement) -> ExteriorElement:
    """Linear map sending e_1...e_k to sum_i (-1)^(i-1) e_1..^e_i..e_k."""
    out: dict[tuple, Fraction] = {}
    for mono, c in x.terms.items():
        for face, s in boundary_monomial(mono).items():
            out[face] = out.get(face, 0) + s * c
    return ExteriorElement(out)
