"""Brackets over double ramification cycles.

A bracket ``<[a_1;d_1] ... [a_n;d_n]>_g`` is the integral of
``lambda_g lambda_{g-1} psi_0^0 prod psi_i^{d_i}`` over ``DR_g(m_{a_1}...m_{a_n})``.
It is nonzero only when ``sum d_i == n - 1``.  Every psi-class is removed by
the genus-0 topological recursion pulled back to the DR-cycle, leaving the
one-part seeds ``<[a;0]>_g``, which are ``a**(2g)`` (SIMPLIFIED) or
``a**(2g) - 1`` (EXACT), both with the genus constant normalized to one.
"""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .mpoly import MPoly, coefficient_of, interpolate_grid
from .numbase import format_rational, parse_rational

__all__ = [
    "Part",
    "Mode",
    "MemoStore",
    "DimensionError",
    "canonical_parts",
    "genus0_bracket",
    "genusg_bracket",
    "bracket_polynomial",
    "degree0_part",
    "parse_parts",
]

CACHE_VERSION = "v1"


class DimensionError(ValueError):
    """Raised when psi-powers do not match the dimension of the cycle."""


class Part(NamedTuple):
    a: int
    d: int


class Mode(enum.Enum):
    SIMPLIFIED = "S"
    EXACT = "E"

    @classmethod
    def parse(cls, text: str) -> Mode:
        text = text.strip().lower()
        for mode in cls:
            if text in (mode.name.lower(), mode.value.lower()):
                return mode
        raise ValueError(f"unknown mode {text!r}")


Key = tuple[int, Mode, tuple[Part, ...]]


def canonical_parts(parts: Iterable[Sequence[int]]) -> tuple[Part, ...]:
    return tuple(sorted((Part(int(a), int(d)) for a, d in parts), reverse=True))


def parse_parts(text: str) -> list[Part]:
    """Parse ``"a1:d1,a2:d2,..."``."""
    parts = []
    for chunk in text.split(","):
        a, sep, d = chunk.strip().partition(":")
        if not sep:
            raise ValueError(f"part {chunk!r} is not of the form a:d")
        parts.append(Part(int(a), int(d)))
    return parts


class MemoStore:
    """Bracket values keyed by ``(g, mode, canonical parts)``.

    Insertion is get-or-insert under a lock, so concurrent workers that race
    on a key all end up with the first value stored.
    """

    def __init__(self, path: str | Path | None = None):
        self._values: dict[Key, Fraction] = {}
        self._lock = threading.Lock()
        self.polys: dict[tuple, MPoly] = {}
        self.evaluations = 0
        self.hits = 0
        self.path = Path(path) if path is not None else None
        if self.path is not None and self.path.exists():
            self.load(self.path)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, key: Key) -> bool:
        return key in self._values

    def get(self, key: Key) -> Fraction | None:
        value = self._values.get(key)
        if value is not None:
            self.hits += 1
        return value

    def get_or_insert(self, key: Key, value: Fraction) -> Fraction:
        with self._lock:
            return self._values.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._values.clear()
            self.polys.clear()
            self.evaluations = 0
            self.hits = 0

    def items(self):
        return sorted(self._values.items(), key=lambda kv: (kv[0][0], kv[0][1].value, kv[0][2]))

    def save(self, path: str | Path | None = None) -> None:
        path = Path(path) if path is not None else self.path
        if path is None:
            raise ValueError("no cache path given")
        lines = []
        for (g, mode, parts), value in self.items():
            spec = ",".join(f"{p.a}:{p.d}" for p in parts)
            lines.append(
                f"{CACHE_VERSION}\tg={g}\tmode={mode.value}\tparts={spec}\tvalue={format_rational(value)}\n"
            )
        path.write_text("".join(lines))

    def load(self, path: str | Path) -> int:
        """Merge a cache file into the store; returns the number of lines read."""
        count = 0
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            if not line.strip():
                continue
            fields = line.split("\t")
            if fields[0] != CACHE_VERSION or len(fields) != 5:
                raise ValueError(f"{path}:{lineno}: unsupported cache line")
            kv = dict(f.split("=", 1) for f in fields[1:])
            key = (int(kv["g"]), Mode(kv["mode"]), canonical_parts(parse_parts(kv["parts"])))
            value = parse_rational(kv["value"])
            if self.get_or_insert(key, value) != value:
                raise ValueError(f"{path}:{lineno}: conflicts with a stored value")
            count += 1
        return count


def _genus0(k: int, sum_d: int, prod_dfact: int) -> Fraction | int:
    if k < 2 or sum_d != k - 2:
        return 0
    return Fraction(factorial(k - 2), prod_dfact)


def genus0_bracket(parts: Sequence[Sequence[int]]) -> Fraction:
    """``(n-2)!/prod d_i!`` when ``sum d_i == n-2`` and ``n >= 2``, else 0."""
    parts = [Part(*p) for p in parts]
    if any(p.a < 1 for p in parts):
        raise ValueError("multiplicities must be positive")
    prod = 1
    for p in parts:
        prod *= factorial(p.d)
    return Fraction(_genus0(len(parts), sum(p.d for p in parts), prod))


def _seed(g: int, a: int, mode: Mode) -> Fraction:
    value = a ** (2 * g)
    return Fraction(value - 1 if mode is Mode.EXACT else value)


def _default_pivot(parts: tuple[Part, ...]) -> int:
    best = 0
    for i, p in enumerate(parts):
        q = parts[best]
        if (p.d, p.a) > (q.d, q.a):
            best = i
    return best


def _evaluate(g: int, parts: tuple[Part, ...], mode: Mode, store: MemoStore) -> Fraction:
    """Bracket value for canonical ``parts``; zero off the dimension locus."""
    n = len(parts)
    if sum(p.d for p in parts) != n - 1:
        return Fraction(0)
    if n == 1:
        return _seed(g, parts[0].a, mode)
    key = (g, mode, parts)
    cached = store.get(key)
    if cached is not None:
        return cached
    value = _expand(g, parts, _default_pivot(parts), mode, store)
    store.evaluations += 1
    return store.get_or_insert(key, value)


def _expand(g: int, parts: Sequence[Part], pivot: int, mode: Mode, store: MemoStore) -> Fraction:
    a, d = parts[pivot].a, parts[pivot].d - 1
    rest = [p for i, p in enumerate(parts) if i != pivot]
    m = len(rest)
    full = (1 << m) - 1

    # subset sums indexed by bitmask
    size = 1 << m
    sum_a = [0] * size
    sum_d = [0] * size
    dfact = [1] * size
    count = [0] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        prev = mask & (mask - 1)
        sum_a[mask] = sum_a[prev] + rest[low].a
        sum_d[mask] = sum_d[prev] + rest[low].d
        dfact[mask] = dfact[prev] * factorial(rest[low].d)
        count[mask] = count[prev] + 1

    def members(mask: int) -> list[Part]:
        return [rest[i] for i in range(m) if mask >> i & 1]

    def genus_g(extra: list[Part], mask: int) -> Fraction:
        return _evaluate(g, canonical_parts(extra + members(mask)), mode, store)

    pivot_d = Part(a, d)
    d_fact = factorial(d)
    total = Fraction(0)
    for I in range(size):
        J = full ^ I
        nI, nJ = count[I], count[J]
        sJ = sum_a[J]
        A = a + sJ
        if nI:
            c = _genus0(nI + 1, sum_d[I], dfact[I])
            if c:
                total += A * nI * c * genus_g([pivot_d], J)
        if nJ:
            c = _genus0(nJ + 1, d + sum_d[J], d_fact * dfact[J])
            if c:
                total += A * (2 * g + nI) * c * genus_g([Part(A, 0)], I)
            c = _genus0(nI + 2, d + sum_d[I], d_fact * dfact[I])
            if c:
                total -= sJ * (2 * g + nJ - 1) * c * genus_g([], J)
            if nJ >= 2:
                c = _genus0(nJ, sum_d[J], dfact[J])
                if c:
                    total -= sJ * (nJ - 1) * c * genus_g([pivot_d, Part(sJ, 0)], I)
    return total / (a * (2 * g + m))


def _check_parts(g: int, parts: Sequence[Sequence[int]]) -> list[Part]:
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    parts = [Part(int(a), int(d)) for a, d in parts]
    if not parts:
        raise ValueError("a bracket needs at least one part")
    if any(p.a < 1 for p in parts):
        raise ValueError("multiplicities must be positive")
    if any(p.d < 0 for p in parts):
        raise ValueError("psi-powers must be nonnegative")
    if sum(p.d for p in parts) != len(parts) - 1:
        raise DimensionError("dimension: sum of psi-powers must be n-1")
    return parts


def genusg_bracket(
    g: int,
    parts: Sequence[Sequence[int]],
    mode: Mode = Mode.SIMPLIFIED,
    store: MemoStore | None = None,
    pivot: int | None = None,
) -> Fraction:
    """Evaluate ``<prod [a_i; d_i]>_g`` exactly.

    ``pivot`` overrides which part (an index into ``parts`` as given) has its
    psi-class eliminated first; it must carry a positive psi-power.  Only the
    top-level step honours the override and its result is not memoized.
    """
    parts = _check_parts(g, parts)
    store = store if store is not None else MemoStore()
    if pivot is None:
        return _evaluate(g, canonical_parts(parts), mode, store)
    if parts[pivot].d < 1:
        raise ValueError("pivot part must carry a positive psi-power")
    return _expand(g, parts, pivot, mode, store)


def bracket_polynomial(
    g: int,
    dvec: Sequence[int],
    mode: Mode = Mode.SIMPLIFIED,
    store: MemoStore | None = None,
) -> MPoly:
    """The bracket as a polynomial in the multiplicities ``a_1..a_n``."""
    dvec = tuple(int(d) for d in dvec)
    _check_parts(g, [(1, d) for d in dvec])
    store = store if store is not None else MemoStore()
    key = (g, tuple(dvec), mode)
    poly = store.polys.get(key)
    if poly is None:
        def evaluator(point: tuple[int, ...]) -> Fraction:
            return _evaluate(g, canonical_parts(zip(point, dvec)), mode, store)

        poly = interpolate_grid(len(dvec), 2 * g, evaluator)
        store.polys[key] = poly
    return poly


def degree0_part(g: int, dvec: Sequence[int], store: MemoStore | None = None) -> Fraction:
    """Constant term of the EXACT-mode bracket polynomial."""
    poly = bracket_polynomial(g, dvec, Mode.EXACT, store)
    return coefficient_of(poly, (0,) * len(dvec))
