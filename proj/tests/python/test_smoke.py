import cmath
import math

import pytest

import m2ma


def test_version():
    assert m2ma.__version__ == "0.1.0"


def test_noise_and_norming():
    model = m2ma.make_tail_model(0.8, 0.5)
    z = m2ma.sample_noise(model, 1000, 1, 7)
    assert len(z) == 1000
    assert all(abs(v) >= 1.0 for v in z)
    assert z == m2ma.sample_noise(model, 1000, 1, 7)
    assert m2ma.norming_constant(m2ma.make_tail_model(0.5), 100) == 10000.0
    with pytest.raises(ValueError):
        m2ma.make_tail_model(1.0, 0.7)


def test_distances():
    a = m2ma.StepFunction([0.5], [0.0, 1.0])
    b = m2ma.StepFunction([0.75], [0.0, 1.0])
    assert m2ma.m2_distance(a, a) == 0.0
    assert m2ma.m2_distance(a, b) == 0.25
    assert m2ma.uniform_distance(a, b) == 1.0
    assert abs(m2ma.sampled_hausdorff(a, b, 1e-3) - 0.25) <= 1e-3
    back = m2ma.StepFunction.from_csv(a.to_csv())
    assert back.jump_times == [0.5]
    assert back.values == [0.0, 1.0]


def test_coefficients():
    assert m2ma.validate_coefficients([0.5, -0.5, 1.0]) is None
    v = m2ma.validate_coefficients([2.0, -1.0])
    assert v.s == 0 and v.ratio == 2.0
    assert "s=0, ratio=2" in str(v)
    with pytest.raises(ValueError):
        m2ma.Coefficients([2.0, -1.0])


def test_paths():
    model = m2ma.make_tail_model(0.8)
    vn, vnz = m2ma.build_paths(model, m2ma.Coefficients([0.5, -0.5, 1.0]), 64, 3)
    assert len(vn.jump_times) == 64
    assert m2ma.m2_distance(vnz, vn) <= m2ma.uniform_distance(vnz, vn) + 1e-12


def test_lk_exponent():
    model = m2ma.make_tail_model(1.0)
    assert abs(m2ma.lk_exponent(model, 2.0) - (-math.pi)) <= 1e-8
    assert m2ma.limit_cf(model, 1.0, 0.0) == 1.0
    assert abs(m2ma.limit_cf(model, 1.0, 1.0) - cmath.exp(-math.pi / 2)) <= 1e-8


def test_run_experiment():
    cfg = "alpha = 0.8\ncoeffs = 0.5, -0.5, 1\nn_grid = 32, 64\nreps = 20\n"
    rows = m2ma.run_experiment("slutsky", cfg)
    assert [r["n"] for r in rows] == [32, 64]
    assert rows == m2ma.run_experiment("slutsky", cfg, jobs=2)
    with pytest.raises(ValueError):
        m2ma.run_experiment("slutsky", "alpha = 2.5\n")
    with pytest.raises(ValueError):
        m2ma.run_experiment("nonsense", cfg)
