"""Tests for exact orbits, distance traces, spheres and basin sampling."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmobius.mobius import FamilyParameter, Infinity, MobiusMap, case_C, from_parameter
from qmobius.orbit import (
    SizeBudgetError,
    basin_sample,
    distance_trace,
    invariant_sphere_check,
    run_orbit,
)
from qmobius.padic import Place

F = Fraction

small_rationals = st.fractions(min_value=-50, max_value=50, max_denominator=50)
parameters = st.builds(
    FamilyParameter,
    t=small_rationals.filter(lambda t: t not in (1, -1)),
    sign=st.sampled_from((1, -1)),
    a=small_rationals,
    c=small_rationals.filter(lambda x: x != 0),
)


def std_map():
    return MobiusMap.make(2, 0, 1, F(1, 2))


def test_run_orbit_worked():
    record = run_orbit(case_C(F(2), F(1)), F(2), 3)
    assert record.points == (F(2), F(3, 2), F(4, 3), F(5, 4))
    assert record.length == 3
    assert record.initial == F(2)


def test_run_orbit_constant_at_fixed_point():
    record = run_orbit(std_map(), F(3, 2), 5)
    assert set(record.points) == {F(3, 2)}


def test_run_orbit_through_pole():
    f = std_map()
    pole = -f.d / f.c
    record = run_orbit(f, pole, 3)
    assert record.points[0] == pole
    assert isinstance(record.points[1], Infinity)
    assert record.points[2] == f.a / f.c  # infinity maps to a/c


def test_run_orbit_rejects_bad_length():
    with pytest.raises(ValueError, match=">= 1"):
        run_orbit(std_map(), F(1), 0)


def test_run_orbit_size_budget():
    with pytest.raises(SizeBudgetError, match="size budget"):
        run_orbit(std_map(), F(7), 100, max_bits=50)


@given(parameters, small_rationals, st.integers(min_value=1, max_value=25))
def test_orbit_agrees_with_matrix_power(fp, x0, n):
    f = from_parameter(fp)
    record = run_orbit(f, x0, n)
    assert record.points[n] == f.power(n).apply(x0)


def test_distance_trace_attractor_valuations():
    """v2(x_n) = 2n along the dyadic attractor orbit."""
    f = std_map()
    trace = distance_trace(f, F(1), F(0), Place.finite(2), 10)
    valuations = [-v.exponent for v in trace.values]
    assert valuations == [2 * n for n in range(11)]


def test_distance_trace_constant_indifferent():
    trace = distance_trace(case_C(F(2), F(1)), F(4), F(1), Place.finite(3), 8)
    assert all(v.exponent == -1 for v in trace.values)  # |x_n - 1|_3 = 1/3 throughout


def test_distance_trace_real_parabolic():
    trace = distance_trace(case_C(F(2), F(1)), F(2), F(1), Place.real(), 5)
    assert [v.value for v in trace.values] == [F(1, k) for k in range(1, 7)]


def test_distance_trace_marks_infinity():
    f = std_map()
    trace = distance_trace(f, -f.d / f.c, F(0), Place.real(), 2)
    assert trace.values[1] is None


def test_distance_trace_rejects_non_fixed_center():
    with pytest.raises(ValueError, match="not a fixed point"):
        distance_trace(std_map(), F(1), F(1), Place.real(), 3)


def test_invariant_sphere_holds_for_case_C():
    ok, witness = invariant_sphere_check(case_C(F(2), F(1)), F(1), 3, -1, samples=2, n=200)
    assert ok
    assert witness is None


def test_invariant_sphere_fails_at_attractor():
    ok, witness = invariant_sphere_check(std_map(), F(0), 2, 0, samples=1, n=10)
    assert not ok
    assert witness == (F(1), 1)  # x0 = 0 + 1*2^0 leaves the unit sphere at step 1


def test_invariant_sphere_samples_stay_on_sphere():
    # s = 1, 2 at p = 3 with rho_exp = -1: x0 in {4, 7}, both with |x0-1|_3 = 1/3
    ok, _ = invariant_sphere_check(case_C(F(2), F(1)), F(1), 3, -1, samples=5, n=50)
    assert ok


def test_basin_sample_dyadic():
    sample = basin_sample(std_map(), F(0), Place.finite(2), [F(1), F(3), F(1, 3), F(5)], n=30)
    assert all(t.converged for t in sample.tested)
    assert all(not t.hit_pole for t in sample.tested)
    # valuation gains 2 per step, so the default threshold of 20 is met at step 10
    assert [t.steps_observed for t in sample.tested] == [10, 10, 10, 10]


def test_basin_sample_real():
    sample = basin_sample(
        std_map(), F(3, 2), Place.real(), [F(1), F(2), F(10), F(-5)], n=200
    )
    assert all(t.converged for t in sample.tested)


def test_basin_sample_grid_containing_attractor():
    sample = basin_sample(std_map(), F(0), Place.finite(2), [F(0)], n=10)
    assert sample.tested[0].converged
    assert sample.tested[0].steps_observed == 0


def test_basin_sample_rejects_non_attractor():
    with pytest.raises(ValueError, match="basin undefined"):
        basin_sample(std_map(), F(0), Place.real(), [F(1)], n=10)
    with pytest.raises(ValueError, match="basin undefined"):
        basin_sample(case_C(F(2), F(1)), F(1), Place.finite(3), [F(4)], n=10)


def test_orbit_json_round_trip():
    record = run_orbit(std_map(), -std_map().d / std_map().c, 2)
    doc = record.to_json_dict()
    assert doc["points"][1] == "inf"
    assert doc["length"] == 2


def test_trace_json_shapes():
    f = std_map()
    finite = distance_trace(f, F(1), F(0), Place.finite(2), 3).to_json_dict()
    assert finite["valuations"] == [0, 2, 4, 6]
    real = distance_trace(f, F(1), F(0), Place.real(), 2).to_json_dict()
    assert real["norms"][0] == "1"

    at_center = distance_trace(f, F(0), F(0), Place.finite(2), 1).to_json_dict()
    assert at_center["valuations"] == ["inf", "inf"]


def test_basin_json_shape():
    sample = basin_sample(std_map(), F(0), Place.finite(2), [F(1)], n=25)
    doc = sample.to_json_dict()
    assert doc["place"] == "2"
    assert doc["attractor"] == "0"
    assert doc["tested"][0]["x0"] == "1"
    assert doc["tested"][0]["converged"] is True
