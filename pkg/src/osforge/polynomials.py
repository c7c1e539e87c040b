"""Integer polynomials in x, y and in t."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


def _mono_str(var: str, k: int) -> str:
    return var if k == 1 else f"{var}^{k}"


class BivariatePolynomial:
    """Sparse polynomial in x and y with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = {k: int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def x(cls, k: int = 1) -> "BivariatePolynomial":
        return cls({(k, 0): 1})

    @classmethod
    def y(cls, k: int = 1) -> "BivariatePolynomial":
        return cls({(0, k): 1})

    def _coerce(self, other):
        if isinstance(other, BivariatePolynomial):
            return other
        if isinstance(other, int):
            return BivariatePolynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            for (d, e), f in other.terms.items():
                k = (a + d, b + e)
                out[k] = out.get(k, 0) + c * f
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BivariatePolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.terms.items())

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        # total degree, then x-degree, descending
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1]))
        return [(i, j, self.terms[(i, j)]) for i, j in keys]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, j, c in self.sorted_terms():
            mono = "*".join(s for s in (_mono_str("x", i) if i else "", _mono_str("y", j) if j else "") if s)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"BivariatePolynomial({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"x": i, "y": j, "c": c} for i, j, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: dict) -> "BivariatePolynomial":
        out: dict[tuple[int, int], int] = {}
        for t in data["terms"]:
            k = (int(t["x"]), int(t["y"]))
            if k in out:
                raise ValueError(f"repeated monomial {k}")
            out[k] = int(t["c"])
        return cls(out)


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Polynomial in t; coefficients by ascending degree, trailing zeros trimmed."""
    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        cs = [int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in cs]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "UnivariatePolynomial"):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UnivariatePolynomial(tuple(p + q for p, q in zip(a, b)))

    def __mul__(self, other: "UnivariatePolynomial"):
        if not self.coeffs or not other.coeffs:
            return UnivariatePolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePolynomial(tuple(out))

    def __call__(self, t):
        return sum(c * t ** i for i, c in enumerate(self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else _mono_str("t", i)
            body = str(abs(c)) if (not mono or abs(c) != 1) else ""
            body = f"{body}*{mono}" if body and mono else (body or mono)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


def substitute_chi(t_poly: BivariatePolynomial) -> UnivariatePolynomial:
    """T(1 - t, 0) as a polynomial in t."""
    one_minus_t = UnivariatePolynomial((1, -1))
    out = UnivariatePolynomial(())
    for (i, j), c in t_poly.terms.items():
        if j:
            continue
        power = UnivariatePolynomial((c,))
        for _ in range(i):
            power = power * one_minus_t
        out = out + power
    return out
