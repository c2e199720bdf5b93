import itertools
from fractions import Fraction

import pytest

from drfaber.drbracket import (
    DimensionError,
    MemoStore,
    Mode,
    Part,
    bracket_polynomial,
    canonical_parts,
    degree0_part,
    genus0_bracket,
    genusg_bracket,
    parse_parts,
)
from drfaber.mpoly import MPoly


@pytest.mark.parametrize("parts,expected", [
    ([(1, 1), (1, 0), (1, 0)], 1),
    ([(7, 0), (4, 0)], 1),
    ([(2, 2), (3, 0)], 0),
    ([(5, 0)], 0),
    ([(1, 2), (1, 0), (1, 0), (1, 0)], 1),
    ([(1, 1), (1, 1), (1, 0), (1, 0)], 2),
])
def test_genus0(parts, expected):
    assert genus0_bracket(parts) == expected


def test_seeds():
    assert genusg_bracket(2, [(3, 0)], Mode.SIMPLIFIED) == 81
    assert genusg_bracket(1, [(1, 0)], Mode.EXACT) == 0
    assert genusg_bracket(2, [(3, 0)], Mode.EXACT) == 80


def test_two_point_genus_one():
    # hand expansion of the recursion: 3a*I = a^3 - 2 a1^3 + 2 (a + a1)^3
    for a, a1 in [(1, 1), (2, 3), (5, 1)]:
        hand = Fraction(a ** 3 - 2 * a1 ** 3 + 2 * (a + a1) ** 3, 3 * a)
        assert genusg_bracket(1, [(a, 1), (a1, 0)]) == hand
    assert genusg_bracket(1, [(1, 1), (1, 0)]) == 5


@pytest.mark.parametrize("mode", list(Mode))
def test_dimension_rejected(mode):
    with pytest.raises(DimensionError, match="dimension: sum of psi-powers must be n-1"):
        genusg_bracket(1, [(1, 2), (1, 0)], mode)


def test_nonpositive_multiplicity_rejected():
    with pytest.raises(ValueError):
        genusg_bracket(1, [(0, 1), (1, 0)])


def test_polynomials():
    expected = MPoly(2, {(2, 0): 1, (1, 1): 2, (0, 2): 2})
    assert bracket_polynomial(1, (1, 0), Mode.SIMPLIFIED) == expected
    assert bracket_polynomial(1, (0,), Mode.SIMPLIFIED) == MPoly(1, {(2,): 1})
    assert bracket_polynomial(1, (1, 0), Mode.EXACT) == expected - 1


@pytest.mark.parametrize("g,dvec,expected", [(1, (0,), -1), (1, (1, 0), -1), (2, (1, 1, 0), -2)])
def test_degree0(g, dvec, expected):
    assert degree0_part(g, dvec) == expected


def test_permutation_and_pivot_independence():
    store = MemoStore()
    parts = [(2, 1), (3, 1), (1, 0)]
    base = genusg_bracket(2, parts, store=store)
    for perm in itertools.permutations(parts):
        assert genusg_bracket(2, perm, store=store) == base
        for i, (_, d) in enumerate(perm):
            if d:
                assert genusg_bracket(2, perm, store=store, pivot=i) == base


def test_bad_pivot():
    with pytest.raises(ValueError):
        genusg_bracket(1, [(1, 1), (1, 0)], pivot=1)


def test_homogeneity():
    for g in (1, 2):
        for dvec in [(0,), (1, 0), (2, 0, 0), (1, 1, 0)]:
            assert bracket_polynomial(g, dvec, Mode.SIMPLIFIED).total_degrees() == {2 * g}


def test_memo_clear_reproduces():
    store = MemoStore()
    parts = [(2, 2), (1, 0), (3, 0)]
    first = genusg_bracket(2, parts, store=store)
    assert store.evaluations > 0 and len(store) > 0
    store.clear()
    assert len(store) == 0
    assert genusg_bracket(2, parts, store=store) == first


def test_cache_round_trip(tmp_path):
    path = tmp_path / "memo.tsv"
    store = MemoStore()
    value = genusg_bracket(2, [(2, 2), (1, 0), (3, 0)], store=store)
    genusg_bracket(1, [(2, 1), (1, 0)], Mode.EXACT, store=store)
    store.save(path)
    text = path.read_text()
    assert text.startswith("v1\tg=")
    assert "mode=E" in text and "mode=S" in text
    warm = MemoStore(path)
    assert len(warm) == len(store)
    assert genusg_bracket(2, [(2, 2), (1, 0), (3, 0)], store=warm) == value
    assert warm.evaluations == 0
    store.save(path)
    assert path.read_text() == text  # deterministic


def test_cache_rejects_bad_lines(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("v9\tg=1\tmode=S\tparts=1:0\tvalue=1\n")
    with pytest.raises(ValueError):
        MemoStore(path)
    path.write_text("v1\tg=1\tmode=S\tparts=2:1,1:0\tvalue=1\n")
    store = MemoStore(path)
    with pytest.raises(OSError):
        store.load(path.parent / "missing.tsv")
    path2 = tmp_path / "conflict.tsv"
    path2.write_text("v1\tg=1\tmode=S\tparts=2:1,1:0\tvalue=2\n")
    with pytest.raises(ValueError):
        store.load(path2)


def test_parse_helpers():
    assert parse_parts("1:1,1:0") == [Part(1, 1), Part(1, 0)]
    assert canonical_parts([(1, 0), (3, 2), (1, 1)]) == (Part(3, 2), Part(1, 1), Part(1, 0))
    assert Mode.parse("exact") is Mode.EXACT and Mode.parse("S") is Mode.SIMPLIFIED
    with pytest.raises(ValueError):
        parse_parts("1-1")
    with pytest.raises(ValueError):
        Mode.parse("fast")
