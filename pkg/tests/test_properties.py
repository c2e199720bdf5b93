"""Randomized invariants checked with hypothesis."""
import itertools
from fractions import Fraction
from math import factorial, prod

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from drfaber import faber, lattice
from drfaber.drbracket import MemoStore, Mode, genusg_bracket
from drfaber.mpoly import MPoly, coefficient_of, interpolate_grid, poly_eval, strip_monomials_divisible_by_all
from drfaber.numbase import multinomial

STORE = MemoStore()

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


@given(st.lists(st.integers(0, 8), max_size=5))
def test_multinomial_identity(parts):
    assert multinomial(parts) * prod(factorial(p) for p in parts) == factorial(sum(parts))


@given(st.lists(st.integers(0, 8), max_size=5), st.randoms())
def test_multinomial_symmetric(parts, rnd):
    shuffled = parts[:]
    rnd.shuffle(shuffled)
    assert multinomial(parts) == multinomial(shuffled)


@given(rationals, rationals, rationals)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@st.composite
def polys(draw, max_vars=3, max_deg=3):
    nvars = draw(st.integers(1, max_vars))
    deg = draw(st.integers(0, max_deg))
    expo = st.tuples(*[st.integers(0, deg)] * nvars)
    terms = draw(st.dictionaries(expo, rationals, max_size=6))
    return MPoly(nvars, terms), deg


@settings(max_examples=60, deadline=None)
@given(polys(), st.data())
def test_interpolation_hold_out(pd, data):
    p, deg = pd
    q = interpolate_grid(p.nvars, deg, lambda pt: poly_eval(p, pt))
    for _ in range(10):
        point = data.draw(st.tuples(*[st.integers(-30, 30)] * p.nvars))
        assert poly_eval(q, point) == poly_eval(p, point)


@given(polys(), st.data())
def test_coefficients_consistent_with_eval(pd, data):
    p, _ = pd
    point = data.draw(st.tuples(*[rationals] * p.nvars))
    expanded = sum(
        (coefficient_of(p, e) * prod(x ** k for x, k in zip(point, e)) for e in p.terms),
        Fraction(0),
    )
    assert expanded == poly_eval(p, point)


@given(polys())
def test_strip_idempotent(pd):
    p, _ = pd
    once = strip_monomials_divisible_by_all(p)
    assert strip_monomials_divisible_by_all(once) == once


@st.composite
def bracket_args(draw):
    g = draw(st.integers(1, 2))
    n = draw(st.integers(1, 3))
    dvec = draw(st.sampled_from([d for d in itertools.product(range(n), repeat=n) if sum(d) == n - 1]))
    avec = draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    return g, list(zip(avec, dvec))


@settings(max_examples=50, deadline=None)
@given(bracket_args(), st.randoms(), st.sampled_from(list(Mode)))
def test_bracket_permutation_symmetry(args, rnd, mode):
    g, parts = args
    shuffled = parts[:]
    rnd.shuffle(shuffled)
    assert genusg_bracket(g, parts, mode, STORE) == genusg_bracket(g, shuffled, mode, STORE)


@settings(max_examples=50, deadline=None)
@given(bracket_args())
def test_bracket_pivot_independence(args):
    g, parts = args
    base = genusg_bracket(g, parts, Mode.SIMPLIFIED, STORE)
    for i, (_, d) in enumerate(parts):
        if d:
            assert genusg_bracket(g, parts, Mode.SIMPLIFIED, STORE, pivot=i) == base


@settings(max_examples=40, deadline=None)
@given(bracket_args())
def test_fresh_store_reproduces(args):
    g, parts = args
    assert genusg_bracket(g, parts, Mode.SIMPLIFIED, MemoStore()) == genusg_bracket(g, parts, Mode.SIMPLIFIED, STORE)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(
    st.lists(st.integers(0, 3), min_size=m, max_size=m),
    st.sets(st.integers(0, m - 1), min_size=1),
)))
def test_path_counts_agree(args):
    c, I = args
    assert lattice.wI_closed(I, c) == lattice.wI_bruteforce(I, c)


@st.composite
def coeff_keys(draw):
    g = draw(st.integers(1, 3))
    m = draw(st.integers(1, 4))
    cs = draw(st.sampled_from([c for c in itertools.product(range(m), repeat=m) if sum(c) == m - 1]))
    ps = draw(st.sampled_from([p for p in itertools.product(range(2 * g + 1), repeat=m) if sum(p) == 2 * g]))
    entries = list(zip(ps, cs))
    assume(all(p + c >= 1 for p, c in entries))
    return g, entries


@given(coeff_keys(), st.randoms())
def test_coeff_bracket_permutation_invariant(key, rnd):
    g, entries = key
    shuffled = entries[:]
    rnd.shuffle(shuffled)
    assert lattice.coeff_bracket(g, entries) == lattice.coeff_bracket(g, shuffled)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda g: st.tuples(
    st.just(g),
    st.sampled_from(faber.extended_queries(g, 3)),
    st.lists(st.integers(1, 5), min_size=3, max_size=3),
    st.lists(st.integers(1, 5), min_size=g, max_size=g),
    st.sampled_from(list(Mode)),
)))
def test_integral_spec_independent(args):
    g, d, avec, bvec, mode = args
    spec = faber.ReductionSpec(tuple(avec[: len(d)]), tuple(bvec))
    assert faber.integral_via_binomial(g, d, spec, STORE, mode) == faber.closed_form_extended(g, d)
