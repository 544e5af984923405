import math

import numpy as np
import pytest

from qcherenkov import (TriangleSides, closed_form_amplitude,
                        oracle_triple_bessel, random_interior_cases,
                        triangle_area)


def test_oracle_zero_orders_small_sides():
    sides = TriangleSides(3e-3, 4e-3, 5e-3)
    res = oracle_triple_bessel(0, 0, 0, sides)
    expected = 1.0 / (2.0 * math.pi * 6e-6)
    assert res.value == pytest.approx(expected, rel=0.01)
    assert res.reliable


def test_oracle_vanishes_outside_triangle_region():
    interior_scale = abs(closed_form_amplitude(1, 0, TriangleSides(1.0, 1.3, 1.9)))
    for sides in (TriangleSides(1.0, 1.0, 3.0),
                  TriangleSides(0.6, 0.5, 2.9),
                  TriangleSides(2.6, 1.1, 0.9)):
        res = oracle_triple_bessel(1, 0, 1, sides)
        assert abs(res.value) < 1e-3 * interior_scale


def test_oracle_tracks_inverse_area_divergence():
    # squeeze s_ph towards s_i + s_f; |amplitude| must follow 1/area
    a, b = 1.0, 1.4
    deltas = np.geomspace(0.2, 0.004, 6)
    areas = []
    values = []
    for d in deltas:
        sides = TriangleSides(a, b, a + b - float(d))
        areas.append(triangle_area(sides))
        values.append(abs(oracle_triple_bessel(1, 0, 1, sides).value))
    slope = np.polyfit(np.log(areas), np.log(values), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.1)


def test_oracle_agrees_with_closed_form_on_random_cases():
    for l_i, l_f, sides in random_interior_cases(8, seed=3):
        cf = closed_form_amplitude(l_i, l_f, sides)
        res = oracle_triple_bessel(l_i, l_f, l_i - l_f, sides)
        assert res.value == pytest.approx(cf, rel=0.01)
        assert res.spread <= 0.1 * abs(res.value)


def test_oracle_flags_truncated_run_unreliable():
    # a run far too short to average the slow beat must confess
    res = oracle_triple_bessel(1, 0, 1, TriangleSides(1.0, 1.3, 1.9), r_max=4.0)
    assert not res.reliable


def test_oracle_respects_explicit_r_max():
    res = oracle_triple_bessel(0, 0, 0, TriangleSides(1.0, 1.3, 1.9), r_max=500.0)
    assert res.r_max >= 500.0
    assert res.r_max < 505.0


def test_oracle_input_validation():
    sides = TriangleSides(1.0, 1.3, 1.9)
    with pytest.raises(ValueError):
        oracle_triple_bessel(0.5, 0, 0, sides)
    with pytest.raises(ValueError):
        oracle_triple_bessel(0, 0, 0, TriangleSides(0.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        oracle_triple_bessel(0, 0, 0, sides, n_periods_avg=0)
    with pytest.raises(ValueError):
        oracle_triple_bessel(0, 0, 0, sides, r_max=-1.0)


def test_random_case_generator_is_reproducible():
    a = random_interior_cases(5, seed=11)
    b = random_interior_cases(5, seed=11)
    assert [(li, lf, s.as_tuple()) for li, lf, s in a] == \
        [(li, lf, s.as_tuple()) for li, lf, s in b]
    for _, _, sides in a:
        area = triangle_area(sides)
        assert area is not None and area > 0.05 * sides.max_side**2


def test_scipy_bessel_meets_accuracy_target():
    # spot-check the library Bessel evaluations against 50-digit values;
    # tolerance is relative to the oscillation envelope, not the local value
    import mpmath as mp
    from scipy.special import jv

    mp.mp.dps = 50
    rng = np.random.default_rng(2)
    for _ in range(40):
        order = int(rng.integers(-32, 33))
        x = float(10 ** rng.uniform(-1, 4))
        got = jv(order, x)
        exact = float(mp.besselj(order, mp.mpf(x)))
        envelope = max(abs(exact), math.sqrt(2.0 / (math.pi * x)))
        assert abs(got - exact) <= 1e-10 * envelope
