"""Moduli-space integrals against lambda_g lambda_{g-1} and the Faber check.

Two families of integrals appear here, always in units where the genus
constant of the seeds is one:

* extended form ``G(d) = int_{M_{g,1+n}} lambda_g lambda_{g-1} psi_0^0 prod psi_i^{d_i}``
  with ``sum d = g + n - 1``;
* original form ``F(d) = int_{M_{g,n}} prod psi_i^{d_i} lambda_g lambda_{g-1}``
  with ``sum d = g + n - 2``.

``G`` is computed three ways (binomial reduction to DR brackets, coefficient
brackets by path counting, closed form) and ``F`` is recovered from ``G`` by
inverting the string equation.
"""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterator, Sequence

from .drbracket import DimensionError, MemoStore, Mode, Part, canonical_parts, _evaluate
from .lattice import coeff_bracket
from .numbase import double_factorial_odd, format_rational

__all__ = [
    "ReductionSpec",
    "QueryResult",
    "VerificationReport",
    "integral_via_binomial",
    "integral_via_coeff",
    "closed_form_extended",
    "closed_form_original",
    "one_point_base",
    "string_forward",
    "faber_original",
    "extended_queries",
    "original_queries",
    "verify_range",
    "random_spec",
]

UNITS = "C_g=1"


@dataclass(frozen=True)
class ReductionSpec:
    """Auxiliary multiplicities ``a`` (one per marked point) and ``b`` (one per genus)."""

    avec: tuple[int, ...]
    bvec: tuple[int, ...]

    def __post_init__(self):
        if any(x < 1 for x in self.avec + self.bvec):
            raise ValueError("reduction multiplicities must be positive")

    @classmethod
    def default(cls, g: int, n: int) -> ReductionSpec:
        return cls((1,) * n, (1,) * g)


def random_spec(g: int, n: int, rng: random.Random, high: int = 5) -> ReductionSpec:
    return ReductionSpec(
        tuple(rng.randint(1, high) for _ in range(n)),
        tuple(rng.randint(1, high) for _ in range(g)),
    )


def _check_extended(g: int, dvec: Sequence[int], allow_zero: bool = False) -> tuple[int, ...]:
    dvec = tuple(int(d) for d in dvec)
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if not dvec:
        raise ValueError("need at least one marked point")
    if any(d < (0 if allow_zero else 1) for d in dvec):
        raise ValueError("psi-powers must be positive" if not allow_zero else "psi-powers must be nonnegative")
    if sum(dvec) != g + len(dvec) - 1:
        raise DimensionError("dimension: extended form needs sum of psi-powers = g+n-1")
    return dvec


def _check_original(g: int, dvec: Sequence[int]) -> tuple[int, ...]:
    dvec = tuple(int(d) for d in dvec)
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if dvec == (g - 1,):
        # the one-point base, which is psi^0 when g = 1
        return dvec
    if not dvec or any(d < 1 for d in dvec):
        raise ValueError("psi-powers must be positive")
    if sum(dvec) != g + len(dvec) - 2:
        raise DimensionError("dimension: original form needs sum of psi-powers = g+n-2")
    return dvec


def integral_via_binomial(
    g: int,
    dvec: Sequence[int],
    spec: ReductionSpec | None = None,
    store: MemoStore | None = None,
    mode: Mode = Mode.SIMPLIFIED,
) -> Fraction:
    """Reduce the extended integral to DR brackets with ``g`` forgotten points."""
    dvec = _check_extended(g, dvec)
    n = len(dvec)
    spec = spec or ReductionSpec.default(g, n)
    if len(spec.avec) != n or len(spec.bvec) != g:
        raise ValueError("reduction spec has the wrong shape")
    store = store if store is not None else MemoStore()
    total = Fraction(0)
    # block[j] = 0 sends b_j to its own [b_j;0] column, block[j] = i >= 1 merges it into point i
    for blocks in itertools.product(range(n + 1), repeat=g):
        used = [0] * (n + 1)
        merged = list(spec.avec)
        for j, i in enumerate(blocks):
            used[i] += 1
            if i:
                merged[i - 1] += spec.bvec[j]
        if any(used[i + 1] > dvec[i] for i in range(n)):
            continue
        parts = [Part(merged[i], dvec[i] - used[i + 1]) for i in range(n)]
        parts += [Part(spec.bvec[j], 0) for j, i in enumerate(blocks) if i == 0]
        value = _evaluate(g, canonical_parts(parts), mode, store)
        total += value if (g - used[0]) % 2 == 0 else -value
    norm = factorial(g)
    for b in spec.bvec:
        norm *= b * b
    return total / norm


def _compositions(total: int, caps: Sequence[int | None]) -> Iterator[tuple[int, ...]]:
    """Tuples ``x`` with ``sum x == total`` and ``0 <= x_k <= caps[k]`` (None = no cap)."""
    if len(caps) == 1:
        cap = caps[0]
        if cap is None or total <= cap:
            yield (total,)
        return
    top = total if caps[0] is None else min(total, caps[0])
    for x in range(top + 1):
        for rest in _compositions(total - x, caps[1:]):
            yield (x,) + rest


def integral_via_coeff(g: int, dvec: Sequence[int], store: MemoStore | None = None) -> Fraction:
    """The extended integral as a signed sum of coefficient brackets."""
    dvec = _check_extended(g, dvec)
    total = Fraction(0)
    for i0, *iv in _compositions(g, [None, *dvec]):
        columns = [(2 * i, d - i) for i, d in zip(iv, dvec)] + [(2, 0)] * i0
        weight = factorial(g)
        for i in (i0, *iv):
            weight //= factorial(i)
        term = weight * coeff_bracket(g, columns)
        total += term if (g - i0) % 2 == 0 else -term
    return Fraction(factorial(2 * g), factorial(g) * 2 ** g) * total


def one_point_base(g: int) -> Fraction:
    """``g!/2**(g-1)``: the extended integral with a single point carrying psi^g."""
    return Fraction(factorial(g), 2 ** (g - 1))


def closed_form_extended(g: int, dvec: Sequence[int]) -> Fraction:
    dvec = _check_extended(g, dvec)
    n = len(dvec)
    den = factorial(2 * g - 1)
    for d in dvec:
        den *= double_factorial_odd(d)
    return Fraction(factorial(2 * g - 2 + n) * double_factorial_odd(g), den) * one_point_base(g)


def closed_form_original(g: int, dvec: Sequence[int]) -> Fraction:
    """Faber's proportionality, scaled by ``F(g-1) = G(g)`` in the same units."""
    dvec = _check_original(g, dvec)
    n = len(dvec)
    den = factorial(2 * g - 2)
    for d in dvec:
        den *= double_factorial_odd(d)
    return Fraction(factorial(2 * g - 3 + n) * double_factorial_odd(g - 1), den) * one_point_base(g)


ExtendedFn = Callable[[int, tuple[int, ...]], Fraction]
OriginalFn = Callable[[int, tuple[int, ...]], Fraction]


def _reduce_zero(g: int, dvec: tuple[int, ...], fn: OriginalFn) -> Fraction:
    """Original-form value, removing psi^0 points with the string equation."""
    if any(d < 0 for d in dvec):
        return Fraction(0)
    if 0 not in dvec or len(dvec) == 1:
        return fn(g, dvec)
    k = dvec.index(0)
    rest = dvec[:k] + dvec[k + 1:]
    total = Fraction(0)
    for j in range(len(rest)):
        if rest[j]:
            total += _reduce_zero(g, rest[:j] + (rest[j] - 1,) + rest[j + 1:], fn)
    return total


def faber_original(
    g: int,
    dvec: Sequence[int],
    store: MemoStore | None = None,
    extended: ExtendedFn | None = None,
) -> Fraction:
    """Recover ``F(d)`` from extended-form values by inverting the string equation.

    ``extended`` supplies ``G`` at positive psi-powers; the default is the
    binomial pathway with the default reduction spec.
    """
    dvec = _check_original(g, dvec)
    store = store if store is not None else MemoStore()
    if extended is None:
        def extended(gg: int, d: tuple[int, ...]) -> Fraction:
            return integral_via_binomial(gg, d, store=store)

    @lru_cache(maxsize=None)
    def F(d: tuple[int, ...]) -> Fraction:
        d = tuple(sorted(d, reverse=True))
        if len(d) == 1:
            return extended(g, (d[0] + 1,))
        bumped = (d[0] + 1,) + d[1:]
        value = extended(g, bumped)
        for j in range(1, len(d)):
            other = bumped[:j] + (bumped[j] - 1,) + bumped[j + 1:]
            value -= _reduce_zero(g, other, lambda _g, dd: F(dd))
        return value

    return F(dvec)


def string_forward(
    g: int,
    dvec: Sequence[int],
    store: MemoStore | None = None,
    original: OriginalFn | None = None,
) -> Fraction:
    """``G(d) = sum_j F(d - e_j)``, with zero entries of ``F`` removed recursively.

    ``original`` supplies ``F`` at positive psi-powers (default: ``faber_original``).
    """
    dvec = _check_extended(g, dvec, allow_zero=True)
    store = store if store is not None else MemoStore()
    if original is None:
        def original(gg: int, d: tuple[int, ...]) -> Fraction:
            return faber_original(gg, d, store)

    total = Fraction(0)
    for j in range(len(dvec)):
        if dvec[j]:
            total += _reduce_zero(g, dvec[:j] + (dvec[j] - 1,) + dvec[j + 1:], original)
    return total


def _partitions(total: int, parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of ``parts`` positive integers summing to ``total``."""
    largest = total if largest is None else largest
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total - parts + 1, largest), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def extended_queries(g: int, nmax: int) -> list[tuple[int, ...]]:
    """Positive psi-vectors with ``sum d = g+n-1``, one per permutation class."""
    return [d for n in range(1, nmax + 1) for d in _partitions(g + n - 1, n)]


def original_queries(g: int, nmax: int) -> list[tuple[int, ...]]:
    return [d for n in range(1, nmax + 1) for d in _partitions(g + n - 2, n)]


@dataclass
class QueryResult:
    g: int
    d: tuple[int, ...]
    form: str
    binomial: Fraction
    coeff: Fraction
    closed: Fraction
    informational: bool = False
    binomial_alt: Fraction | None = None

    @property
    def passed(self) -> bool:
        if self.binomial_alt is not None and self.binomial_alt != self.binomial:
            return False
        if self.informational:
            return self.binomial == self.coeff
        return self.binomial == self.coeff == self.closed

    def to_dict(self) -> dict:
        out = {
            "g": self.g,
            "d": list(self.d),
            "form": self.form,
            "binomial": format_rational(self.binomial),
            "coeff": format_rational(self.coeff),
            "closed": format_rational(self.closed),
            "pass": self.passed,
        }
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class VerificationReport:
    queries: list[QueryResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(q.passed for q in self.queries)

    def to_dict(self) -> dict:
        return {"units": UNITS, "queries": [q.to_dict() for q in self.queries], "pass": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"units: {UNITS}"]
        for q in self.queries:
            status = "pass" if q.passed else "FAIL"
            note = " (closed form informational)" if q.informational else ""
            alt = "" if q.binomial_alt is None else f" binomial_alt={format_rational(q.binomial_alt)}"
            lines.append(
                f"g={q.g} form={q.form} d={','.join(map(str, q.d))}: "
                f"binomial={format_rational(q.binomial)}{alt} coeff={format_rational(q.coeff)} "
                f"closed={format_rational(q.closed)} {status}{note}"
            )
        lines.append("overall: " + ("pass" if self.passed else "FAIL"))
        return "\n".join(lines)


def _check_query(g: int, d: tuple[int, ...], form: str, store: MemoStore) -> QueryResult:
    informational = g == 1
    if form == "extended":
        n = len(d)
        a = integral_via_binomial(g, d, ReductionSpec.default(g, n), store)
        alt = ReductionSpec(tuple(range(2, n + 2)), tuple(range(1, g + 1)))
        a2 = integral_via_binomial(g, d, alt, store)
        b = integral_via_coeff(g, d, store)
        c = closed_form_extended(g, d)
        return QueryResult(g, d, form, a, b, c, informational, binomial_alt=a2)
    a = faber_original(g, d, store)
    b = faber_original(g, d, store, extended=lambda gg, dd: integral_via_coeff(gg, dd, store))
    c = closed_form_original(g, d)
    return QueryResult(g, d, form, a, b, c, informational)


def verify_range(
    gmin: int,
    gmax: int,
    nmax: int,
    store: MemoStore | None = None,
    threads: int = 1,
) -> VerificationReport:
    """Compare every pathway on all queries with ``gmin <= g <= gmax`` and ``n <= nmax``.

    Extended queries check two reduction specs of the binomial pathway, the
    coefficient pathway and the closed form.  Original queries compare the
    string inversion fed by the binomial and by the coefficient pathway with
    Faber's closed form.  At g = 1 only the pathway agreement is binding.
    Queries are independent; with ``threads > 1`` they share ``store`` across
    a worker pool and the report keeps the sequential order.
    """
    if not 1 <= gmin <= gmax or nmax < 1:
        raise ValueError("need 1 <= gmin <= gmax and nmax >= 1")
    store = store if store is not None else MemoStore()
    jobs = []
    for g in range(gmin, gmax + 1):
        jobs += [(g, d, "extended") for d in extended_queries(g, nmax)]
        jobs += [(g, d, "original") for d in original_queries(g, nmax)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _check_query(*job, store), jobs))
    else:
        results = [_check_query(*job, store) for job in jobs]
    return VerificationReport(results)
