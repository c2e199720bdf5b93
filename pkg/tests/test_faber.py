import json
from fractions import Fraction

import pytest

from drfaber import faber
from drfaber.drbracket import DimensionError, MemoStore


def test_genus_one_one_point():
    spec = faber.ReductionSpec((1,), (1,))
    assert faber.integral_via_binomial(1, (1,), spec) == 1
    assert faber.one_point_base(1) == 1


@pytest.mark.parametrize("spec", [None, faber.ReductionSpec((3,), (2, 5)), faber.ReductionSpec((1,), (4, 1))])
def test_binomial_values(spec):
    assert faber.integral_via_binomial(2, (2,), spec) == 1


def test_binomial_two_point():
    assert faber.integral_via_binomial(2, (2, 1), faber.ReductionSpec((2, 3), (1, 4))) == 4


def test_coeff_values():
    assert faber.integral_via_coeff(2, (2,)) == 1
    assert faber.integral_via_coeff(2, (2, 1)) == 4


def test_genus_three_two_point_values():
    assert faber.integral_via_coeff(3, (3, 1)) == 9
    assert faber.integral_via_coeff(3, (2, 2)) == 15


def test_wrong_dimension_rejected():
    # psi-powers (3,2) sum to 5, but two points in genus 3 need 4
    with pytest.raises(DimensionError):
        faber.integral_via_coeff(3, (3, 2))
    with pytest.raises(DimensionError):
        faber.integral_via_binomial(3, (3, 2))
    with pytest.raises(DimensionError):
        faber.closed_form_extended(3, (3, 2))


def test_spec_shape_checked():
    with pytest.raises(ValueError):
        faber.integral_via_binomial(2, (2, 1), faber.ReductionSpec((1,), (1, 1)))
    with pytest.raises(ValueError):
        faber.ReductionSpec((0,), (1,))


def test_closed_forms():
    assert faber.closed_form_extended(2, (2,)) == 1
    assert faber.closed_form_extended(2, (2, 1)) == 4
    assert faber.closed_form_extended(4, (2, 2, 2)) == 840
    assert faber.closed_form_original(3, (2, 1)) == Fraction(15, 2)


def test_original_values():
    assert faber.faber_original(2, (1, 1)) == 3
    assert faber.faber_original(2, (1,)) == 1
    assert faber.faber_original(3, (2, 1)) == Fraction(15, 2)
    with pytest.raises(ValueError):
        faber.faber_original(2, (1, 0))


def test_string_forward_with_zero():
    # G(2,1,0) has a psi^0 point; the string rule removes it
    assert faber.string_forward(2, (2, 1)) == 4
    assert faber.string_forward(1, (1,)) == 1


def test_query_lists():
    assert faber.extended_queries(2, 2) == [(2,), (2, 1)]
    assert faber.original_queries(3, 2) == [(2,), (2, 1)]


def test_verify_range_small():
    report = faber.verify_range(2, 2, 2)
    assert report.passed
    ext = [q.d for q in report.queries if q.form == "extended"]
    assert ext == [(2,), (2, 1)]


def test_verify_range_genus_one_informational():
    report = faber.verify_range(1, 1, 2)
    assert report.passed
    rows = report.to_dict()["queries"] if isinstance(report.to_dict(), dict) else report.to_dict()
    assert all(r.get("informational") for r in rows)


def test_report_json_deterministic():
    a = faber.verify_range(2, 3, 2, MemoStore()).to_json()
    b = faber.verify_range(2, 3, 2, MemoStore(), threads=4).to_json()
    assert a == b
    json.loads(a)


def test_units_label():
    assert faber.UNITS == "C_g=1"
