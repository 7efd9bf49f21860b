import math

import pytest

import pspline_kernels as pk


def test_psi_roots():
    roots = pk.psi_roots(2)
    s = 1 / math.sqrt(2)
    assert abs(roots[0] - complex(s, s)) < 1e-14
    assert abs(roots[1] - complex(s, -s)) < 1e-14
    with pytest.raises(ValueError):
        pk.psi_roots(0)


def test_kernel_moments():
    assert pk.kernel_moment(2, 0) == pytest.approx(1.0, abs=1e-8)
    assert pk.kernel_moment(2, 2) == pytest.approx(0.0, abs=1e-8)
    assert pk.kernel_moment(2, 4) == pytest.approx(-24.0, rel=1e-6)
    assert pk.eval_H(1, 0.0) == pytest.approx(0.5)


def test_boundary_kernel_at_zero():
    for xt in (0.0, 0.7, 3.0):
        expect = math.sqrt(2) * math.exp(-xt / math.sqrt(2)) * math.cos(xt / math.sqrt(2))
        assert pk.boundary_kernel(2, 0.0, xt) == pytest.approx(expect, abs=1e-10)
    bias, var = pk.boundary_bias_var(2, 0.5, 0.0, 1.0, 1.0)
    assert bias == pytest.approx(-0.25, rel=1e-9)
    assert var > 0


def test_fit_reproduces_lines():
    xs = pk.midpoint_design(200)
    f = pk.fit(xs, [2 * x - 1 for x in xs], p=3, m=2, knots=20, lam=10.0)
    for x in (0.0, 0.4, 1.0):
        assert f(x) == pytest.approx(2 * x - 1, abs=1e-9)
    w = pk.weights(xs, 3, 2, 20, 10.0, 0.5)
    assert sum(w) == pytest.approx(1.0, abs=1e-12)


def test_binning_and_roots():
    centers, means, counts = pk.bin_data([0.1, 0.12, 0.9], [1.0, 3.0, 5.0], 4)
    assert counts == [2, 0, 0, 1]
    assert means[0] == pytest.approx(2.0)
    kernel, small, errs = pk.characteristic_roots(3, 2, 1e6)
    assert len(kernel) == 2 and len(small) == 1
    assert all(e < 1.0 for e in errs)


def test_compare_and_simulate():
    r = pk.compare(1000, 50, 3, 2, 10.0, 0.5)
    assert r.sup_discrepancy >= 0
    assert len(r.kernel_term) == 1000
    csv = pk.simulate_csv("sizes=400\nreps=4\n")
    assert csv.startswith("n,x,scaled_bias_emp")
    with pytest.raises(ValueError):
        pk.simulate_csv("sizes=400\ntau=0.2\n")
