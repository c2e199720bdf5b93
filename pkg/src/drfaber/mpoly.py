"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients.  Instances are treated as immutable once built.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "MPoly",
    "poly_eval",
    "coefficient_of",
    "interpolate_grid",
    "strip_monomials_divisible_by_all",
    "equivalent",
]

Exponent = tuple[int, ...]


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Fraction | int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for expo, c in (terms or {}).items():
            expo = tuple(expo)
            if len(expo) != nvars:
                raise ValueError(f"exponent {expo} does not have length {nvars}")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            c = clean.get(expo, 0) + Fraction(c)
            if c:
                clean[expo] = c
            else:
                clean.pop(expo, None)
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, value: Fraction | int) -> MPoly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> MPoly:
        expo = [0] * nvars
        expo[index] = 1
        return cls(nvars, {tuple(expo): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        return MPoly.constant(self.nvars, other)

    def __add__(self, other) -> MPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MPoly:
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def specialize(self, index: int, value: Fraction | int) -> MPoly:
        """Substitute ``value`` for variable ``index``; the result has one variable fewer."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[index] and not value:
                continue
            rest = e[:index] + e[index + 1:]
            out[rest] = out.get(rest, 0) + c * Fraction(value) ** e[index]
        return MPoly(self.nvars - 1, out)

    def slice(self, index: int, power: int) -> MPoly:
        """Coefficient of ``x_index**power`` as a polynomial in the other variables."""
        out = {e[:index] + e[index + 1:]: c for e, c in self.terms.items() if e[index] == power}
        return MPoly(self.nvars - 1, out)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        # graded lex, highest degree first
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self, var: str = "a") -> str:
        if not self.terms:
            return "0"
        chunks = []
        for expo, c in self.sorted_terms():
            factors = [str(c)]
            factors += [f"{var}{i + 1}^{e}" for i, e in enumerate(expo) if e]
            chunks.append("*".join(factors))
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self.to_text()!r})"


def poly_eval(p: MPoly, point: Sequence[Fraction | int]) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    point = [Fraction(x) for x in point]
    total = Fraction(0)
    for expo, c in p.terms.items():
        term = c
        for x, e in zip(point, expo):
            if e:
                term *= x ** e
        total += term
    return total


def coefficient_of(p: MPoly, expo: Sequence[int]) -> Fraction:
    if len(expo) != p.nvars:
        raise ValueError(f"exponent has length {len(expo)}, polynomial has {p.nvars} variables")
    return p.terms.get(tuple(expo), Fraction(0))


def _inverse_vandermonde(nodes: Sequence[int]) -> list[list[Fraction]]:
    """Row e, column j: coefficient of x**e in the Lagrange basis polynomial of node j."""
    k = len(nodes)
    inv = [[Fraction(0)] * k for _ in range(k)]
    for j, xj in enumerate(nodes):
        # expand prod_{m != j} (x - x_m) / (xj - x_m), lowest degree first
        coeffs = [Fraction(1)]
        denom = 1
        for m, xm in enumerate(nodes):
            if m == j:
                continue
            denom *= xj - xm
            shifted = [Fraction(0)] + coeffs
            for i, c in enumerate(coeffs):
                shifted[i] -= xm * c
            coeffs = shifted
        for e, c in enumerate(coeffs):
            inv[e][j] = c / denom
    return inv


def interpolate_grid(
    nvars: int,
    per_var_degree_bound: int,
    evaluator: Callable[[tuple[int, ...]], Fraction | int],
) -> MPoly:
    """Interpolate ``evaluator`` on the tensor grid ``{1..bound+1}**nvars``.

    The univariate transform is applied one axis at a time, so the result is
    the unique polynomial of degree at most ``per_var_degree_bound`` in each
    variable that agrees with the evaluator on the grid.
    """
    k = per_var_degree_bound + 1
    nodes = list(range(1, k + 1))
    values: dict[tuple[int, ...], Fraction] = {
        idx: Fraction(evaluator(tuple(nodes[i] for i in idx)))
        for idx in itertools.product(range(k), repeat=nvars)
    }
    inv = _inverse_vandermonde(nodes)
    for axis in range(nvars):
        transformed: dict[tuple[int, ...], Fraction] = {}
        for idx in values:
            if idx[axis]:
                continue
            column = [values[idx[:axis] + (j,) + idx[axis + 1:]] for j in range(k)]
            for e in range(k):
                transformed[idx[:axis] + (e,) + idx[axis + 1:]] = sum(
                    (inv[e][j] * column[j] for j in range(k) if column[j]), Fraction(0)
                )
        values = transformed
    return MPoly(nvars, values)


def strip_monomials_divisible_by_all(p: MPoly) -> MPoly:
    """Drop every monomial divisible by the product of all variables.

    What remains is the part of ``p`` that the equivalence of :func:`equivalent`
    ignores, so ``f`` and ``g`` are equivalent iff ``f - g`` survives unchanged.
    """
    return MPoly(p.nvars, {e: c for e, c in p.terms.items() if not all(e)})


def equivalent(f: MPoly, g: MPoly) -> bool:
    """True when ``f - g`` has no monomial divisible by the product of all variables."""
    diff = f - g
    return strip_monomials_divisible_by_all(diff) == diff


def from_terms(nvars: int, items: Iterable[tuple[Sequence[int], Fraction | int]]) -> MPoly:
    out: dict[Exponent, Fraction] = {}
    for e, c in items:
        e = tuple(e)
        out[e] = out.get(e, 0) + Fraction(c)
    return MPoly(nvars, out)
