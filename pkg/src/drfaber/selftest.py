"""Property suites runnable without pytest (``drfaber selftest``)."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from . import faber, lattice
from .drbracket import MemoStore, Mode, bracket_polynomial, degree0_part, genusg_bracket
from .mpoly import MPoly, coefficient_of, interpolate_grid, poly_eval, strip_monomials_divisible_by_all
from .numbase import binomial, multinomial

__all__ = ["SuiteResult", "run_selftest"]


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def expect(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    @property
    def passed(self) -> bool:
        return not self.failures


def _dvecs(n: int):
    """psi-vectors of length n with sum n-1."""
    return [d for d in itertools.product(range(n), repeat=n) if sum(d) == n - 1]


def suite_numbase(r: SuiteResult, gmax: int, store: MemoStore, rng: random.Random) -> None:
    for _ in range(200):
        parts = [rng.randint(0, 6) for _ in range(rng.randint(0, 5))]
        prod = 1
        for p in parts:
            prod *= factorial(p)
        r.expect(multinomial(parts) * prod == factorial(sum(parts)), f"multinomial {parts}")
        shuffled = parts[:]
        rng.shuffle(shuffled)
        r.expect(multinomial(parts) == multinomial(shuffled), f"multinomial symmetry {parts}")


def suite_mpoly(r: SuiteResult, gmax: int, store: MemoStore, rng: random.Random) -> None:
    for _ in range(10):
        nvars = rng.randint(1, 3)
        bound = rng.randint(0, 3)
        terms = {
            tuple(rng.randint(0, bound) for _ in range(nvars)): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            for _ in range(rng.randint(0, 6))
        }
        p = MPoly(nvars, terms)
        q = interpolate_grid(nvars, bound, lambda pt: poly_eval(p, pt))
        r.expect(q == p, f"interpolation round trip {p}")
        r.expect(strip_monomials_divisible_by_all(strip_monomials_divisible_by_all(p))
                 == strip_monomials_divisible_by_all(p), "strip idempotent")


def suite_brackets(r: SuiteResult, gmax: int, store: MemoStore, rng: random.Random) -> None:
    glim = min(gmax, 3)
    for g in range(1, min(gmax, 2) + 1):
        for n in range(1, 4):
            for dv in _dvecs(n):
                avec = [rng.randint(1, 5) for _ in range(n)]
                parts = list(zip(avec, dv))
                base = genusg_bracket(g, parts, Mode.SIMPLIFIED, store)
                for perm in itertools.permutations(parts):
                    r.expect(genusg_bracket(g, perm, Mode.SIMPLIFIED, store) == base, f"symmetry g={g} {parts}")
                for i, (_, d) in enumerate(parts):
                    if d:
                        r.expect(genusg_bracket(g, parts, Mode.SIMPLIFIED, store, pivot=i) == base,
                                 f"pivot {i} g={g} {parts}")
    for g in range(1, glim + 1):
        for n in range(1, 4):
            for dv in _dvecs(n):
                poly = bracket_polynomial(g, dv, Mode.SIMPLIFIED, store)
                r.expect(poly.total_degrees() <= {2 * g}, f"homogeneity g={g} d={dv}")
        # restriction: I_n(a, a_1..a_{n-1}, 0) = I_{n-1}
        for n in range(1, 4):
            big = bracket_polynomial(g, (n,) + (0,) * n, Mode.SIMPLIFIED, store)
            small = bracket_polynomial(g, (n - 1,) + (0,) * (n - 1), Mode.SIMPLIFIED, store)
            r.expect(big.specialize(n, 0) == small, f"restriction g={g} n={n}")
        # congruence of the a-slices modulo monomials divisible by a_1...a_n
        for n in range(1, 4):
            poly = bracket_polynomial(g, (n,) + (0,) * n, Mode.SIMPLIFIED, store)
            total = sum((MPoly.variable(n, k) for k in range(n)), MPoly.constant(n, 0))
            for i in range(-n, 2 * g - n + 1):
                part = poly.slice(0, i) if i >= 0 else MPoly(n)
                if i >= 0:
                    part = part - Fraction(2 * g, n + i) * binomial(2 * g, i) * total ** (2 * g - i)
                r.expect(strip_monomials_divisible_by_all(part) == part, f"congruence g={g} n={n} i={i}")
    for g in range(1, min(gmax, 2) + 1):
        for n in range(1, 4):
            for dv in _dvecs(n):
                expected = Fraction(-factorial(n - 1), _dfact(dv))
                r.expect(degree0_part(g, dv, store) == expected, f"degree-0 g={g} d={dv}")
    for g in range(1, glim + 1):
        for n in range(1, 4):
            for dv in itertools.product(range(n + 1), repeat=n):
                if sum(dv) != n:
                    continue
                avec = [rng.randint(1, 4) for _ in range(n)]
                D = interpolate_grid(1, 2 * g, lambda pt: _divisibility_defect(g, avec, dv, pt[0], store))
                r.expect(coefficient_of(D, (0,)) == 0 and coefficient_of(D, (1,)) == 0,
                         f"b^2 divisibility g={g} a={avec} d={dv}")


def _dfact(dv) -> int:
    out = 1
    for d in dv:
        out *= factorial(d)
    return out


def _divisibility_defect(g: int, avec, dv, b: int, store: MemoStore) -> Fraction:
    parts = list(zip(avec, dv))
    value = genusg_bracket(g, [(b, 0)] + parts, Mode.SIMPLIFIED, store)
    for j, (a, d) in enumerate(parts):
        if d:
            moved = parts[:j] + [(a + b, d - 1)] + parts[j + 1:]
            value -= genusg_bracket(g, moved, Mode.SIMPLIFIED, store)
    return value


def _valid_keys(g: int, m: int):
    for cs in itertools.product(range(m), repeat=m):
        if sum(cs) != m - 1:
            continue
        for ps in itertools.product(range(2 * g + 1), repeat=m):
            if sum(ps) == 2 * g and all(p + c >= 1 for p, c in zip(ps, cs)):
                yield list(zip(ps, cs))


def suite_lattice(r: SuiteResult, gmax: int, store: MemoStore, rng: random.Random) -> None:
    glim = min(gmax, 3)
    for m in range(1, 5):
        for c in itertools.product(range(4), repeat=m):
            r.expect(lattice.w0(c) == _count_to_origin(c), f"w0 {c}")
            for I in lattice.nonempty_subsets(m):
                r.expect(lattice.wI_closed(I, c) == lattice.wI_bruteforce(I, c), f"wI {I} {c}")
    for g in range(1, glim + 1):
        for n in range(1, 4):
            for entries in _valid_keys(g, n):
                ps = [p for p, _ in entries]
                cs = [c for _, c in entries]
                r.expect(lattice.coeff_bracket(g, entries) == lattice.coeff_from_polynomial(g, cs, ps, store),
                         f"coefficients g={g} {entries}")
        for m in range(1, 5):
            for entries in _valid_keys(g, m):
                if all(c == 1 for _, c in entries[:-1]) and entries[-1][1] == 0 and entries[-1][0] >= 1:
                    expected = Fraction(1)
                    for i, (p, _) in enumerate(entries[:-1], 1):
                        expected *= Fraction(2 * g + i - 1, p + 1)
                    r.expect(lattice.coeff_bracket(g, entries) == expected, f"one-zero column g={g} {entries}")
                if m >= 2 and entries[-1][1] == 0 and entries[-2][1] == 0:
                    (p1, _), (p2, _) = entries[-2:]
                    if p1 >= 2 and p2 >= 1:
                        moved = entries[:-2] + [(p1 - 1, 0), (p2 + 1, 0)]
                        r.expect(lattice.coeff_bracket(g, entries) == lattice.coeff_bracket(g, moved),
                                 f"transfer g={g} {entries}")
                    if p1 >= 1 and p2 >= 1:
                        r.expect(lattice.coefreduction_check(g, entries), f"column merge g={g} {entries}")
                if entries[-1] == (1, 0) and m >= 2:
                    head = entries[:-1]
                    rhs = sum(
                        (lattice.coeff_bracket(g, head[:i] + head[i + 1:] + [(p + 1, c - 1)])
                         for i, (p, c) in enumerate(head) if c),
                        Fraction(0),
                    )
                    r.expect(lattice.coeff_bracket(g, entries) == rhs, f"unit column g={g} {entries}")


def _count_to_origin(c) -> int:
    if any(x < 0 for x in c):
        return 0
    if not any(c):
        return 1
    return sum(_count_to_origin(c[:k] + (c[k] - 1,) + c[k + 1:]) for k in range(len(c)) if c[k])


def suite_faber(r: SuiteResult, gmax: int, store: MemoStore, rng: random.Random) -> None:
    report = faber.verify_range(1, gmax, 3, store)
    for q in report.queries:
        r.expect(q.passed, f"pathways g={q.g} {q.form} d={q.d}")
    for g in range(1, min(gmax, 3) + 1):
        for d in faber.extended_queries(g, 3):
            base = faber.integral_via_binomial(g, d, store=store)
            r.expect(faber.integral_via_binomial(g, d, store=store, mode=Mode.EXACT) == base,
                     f"mode independence g={g} d={d}")
            for _ in range(20):
                spec = faber.random_spec(g, len(d), rng)
                r.expect(faber.integral_via_binomial(g, d, spec, store) == base,
                         f"spec independence g={g} d={d} {spec}")
            r.expect(faber.string_forward(g, d, store) == base, f"string forward g={g} d={d}")


SUITES: list[tuple[str, Callable]] = [
    ("numbase", suite_numbase),
    ("mpoly", suite_mpoly),
    ("drbracket", suite_brackets),
    ("lattice", suite_lattice),
    ("faber", suite_faber),
]


def run_selftest(full: bool = False, store: MemoStore | None = None, emit: Callable[[str], None] = print,
                 seed: int = 20240601) -> bool:
    """Run every suite at quick (g <= 2) or full (g <= 4) scale."""
    gmax = 4 if full else 2
    store = store if store is not None else MemoStore()
    rng = random.Random(seed)
    ok = True
    for name, fn in SUITES:
        result = SuiteResult(name)
        start = time.perf_counter()
        fn(result, gmax, store, rng)
        result.seconds = time.perf_counter() - start
        status = "pass" if result.passed else "FAIL"
        emit(f"{name}: {result.checks} checks, {len(result.failures)} failures, {result.seconds:.1f}s {status}")
        for what in result.failures[:10]:
            emit(f"  failed: {what}")
        ok = ok and result.passed
    emit("selftest: " + ("pass" if ok else "FAIL"))
    return ok
