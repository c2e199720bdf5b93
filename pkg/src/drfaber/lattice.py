"""Lattice-path counts and the closed-form coefficient brackets.

Index sets ``I`` are 0-based collections of coordinates.  A path is a
sequence of lattice points in which each step decreases exactly one
coordinate by one.  The special point of a set ``I`` is its indicator
vector ``1_I``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .drbracket import MemoStore, Mode, bracket_polynomial
from .mpoly import coefficient_of
from .numbase import multinomial

__all__ = [
    "w0",
    "wI_closed",
    "wI_bruteforce",
    "coeff_bracket",
    "coeff_from_polynomial",
    "coefreduction_check",
    "nonempty_subsets",
]

BRUTEFORCE_MAX_DIM = 5
BRUTEFORCE_MAX_COORD = 6


def nonempty_subsets(m: int) -> Iterable[tuple[int, ...]]:
    for size in range(1, m + 1):
        yield from itertools.combinations(range(m), size)


def w0(c: Sequence[int]) -> int:
    """Number of decreasing paths from ``c`` to the origin."""
    if any(x < 0 for x in c):
        return 0
    return multinomial(c)


def _indicator(I: Iterable[int], m: int) -> tuple[int, ...]:
    I = set(I)
    return tuple(1 if i in I else 0 for i in range(m))


def wI_closed(I: Iterable[int], c: Sequence[int]) -> int:
    I = tuple(sorted(set(I)))
    if not I:
        raise ValueError("I must be nonempty")
    target = _indicator(I, len(c))
    if tuple(c) == target:
        return 1
    base = [x - t for x, t in zip(c, target)]
    total = 0
    for k in I:
        base[k] -= 1
        total += w0(base)
        base[k] += 1
    return total


def wI_bruteforce(I: Iterable[int], c: Sequence[int]) -> int:
    """Count paths from ``c`` to ``1_I`` by walking the lattice step by step.

    Every point of the path except the endpoint must differ from all special
    points ``1_J`` with ``J != I``.
    """
    I = frozenset(I)
    c = tuple(c)
    m = len(c)
    if not I:
        raise ValueError("I must be nonempty")
    if m > BRUTEFORCE_MAX_DIM or any(x < 0 or x > BRUTEFORCE_MAX_COORD for x in c):
        raise ValueError(
            f"brute force limited to m <= {BRUTEFORCE_MAX_DIM} and coordinates in [0, {BRUTEFORCE_MAX_COORD}]"
        )
    target = _indicator(I, m)

    def forbidden(p: tuple[int, ...]) -> bool:
        return p != target and all(x in (0, 1) for x in p)

    @lru_cache(maxsize=None)
    def count(p: tuple[int, ...]) -> int:
        if p == target:
            return 1
        if forbidden(p):
            return 0
        total = 0
        for k in range(m):
            if p[k] > target[k]:
                total += count(p[:k] + (p[k] - 1,) + p[k + 1:])
        return total

    return count(c)


def _check_entries(entries: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    entries = [(int(p), int(c)) for p, c in entries]
    if not entries:
        raise ValueError("a coefficient bracket needs at least one column")
    for p, c in entries:
        if p < 0 or c < 0:
            raise ValueError(f"column |{p};{c}| has a negative entry")
        if p + c < 1:
            raise ValueError("every column needs p + c >= 1")
    return entries


def coeff_bracket(g: int, entries: Sequence[Sequence[int]]) -> Fraction:
    """Normalized monomial coefficient ``<prod |p_i; c_i|>_g`` by path counting."""
    entries = _check_entries(entries)
    m = len(entries)
    ps = [p for p, _ in entries]
    cs = [c for _, c in entries]
    if sum(ps) != 2 * g or sum(cs) != m - 1:
        return Fraction(0)
    if m == 1:
        # the path sum is empty here, but the seed a**(2g) fixes this coefficient to 1
        return Fraction(1)
    total = Fraction(0)
    for I in nonempty_subsets(m):
        w = wI_closed(I, cs)
        if not w:
            continue
        num = 1
        for i in range(1, len(I) + 1):
            num *= 2 * g + i - 1
        den = 1
        for i in I:
            den *= ps[i] + cs[i]
        total += Fraction(num * w, den)
    return total


def coeff_from_polynomial(
    g: int,
    dvec: Sequence[int],
    expo: Sequence[int],
    store: MemoStore | None = None,
) -> Fraction:
    """The same coefficient read off the interpolated bracket polynomial."""
    if len(expo) != len(dvec):
        raise ValueError("exponent and psi-power vectors differ in length")
    if sum(expo) != 2 * g:
        raise ValueError(f"exponents must sum to 2g = {2 * g}")
    poly = bracket_polynomial(g, dvec, Mode.SIMPLIFIED, store)
    return coefficient_of(poly, expo) / multinomial(expo)


def coefreduction_check(g: int, entries: Sequence[Sequence[int]]) -> bool:
    """Merge the two trailing ``|p;0|`` columns and compare both sides."""
    entries = _check_entries(entries)
    if len(entries) < 2:
        raise ValueError("need at least two columns")
    (p1, c1), (p2, c2) = entries[-2:]
    if c1 or c2 or p1 < 1 or p2 < 1:
        raise ValueError("the last two columns must be |p;0| with p >= 1")
    head = entries[:-2]
    lhs = coeff_bracket(g, entries)
    rhs = Fraction(0)
    for i, (p, c) in enumerate(head):
        if c == 0:
            continue
        moved = head[:i] + head[i + 1:] + [(p + 1, c - 1), (p1 + p2 - 1, 0)]
        rhs += coeff_bracket(g, moved)
    return lhs == rhs
