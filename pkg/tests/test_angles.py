import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from boxl1.angles import (
    BINARY,
    ModelKind,
    ProblemDims,
    box_model,
    char_fn,
    phi_ext_f1,
    phi_ext_f2,
    phi_int_f1,
    phi_int_f2,
)
from boxl1.errors import InvalidDims, InvalidFace
from boxl1.numerics import integrate_adaptive

from oracles import angle_oracle_rows, ext_f1_mc, face_list, int_f1_mc


def test_model_and_dims_validation():
    assert ModelKind("binary").k_mu == 0
    assert ModelKind("box", 3).is_box
    with pytest.raises(InvalidDims):
        box_model(-1)
    with pytest.raises(InvalidDims):
        ProblemDims(5, 6, 1)
    with pytest.raises(InvalidDims):
        ProblemDims(5, 2, 3).check(box_model(3))


def test_char_fn_at_zero():
    assert char_fn(BINARY, ProblemDims(10, 3, 2), 4, 1, 0.0) == pytest.approx(1.0)
    assert char_fn(box_model(2), ProblemDims(10, 3, 2), 4, 1, 0.0) == pytest.approx(1.0)


@settings(max_examples=60)
@given(st.floats(-50, 50), st.integers(1, 8), st.integers(0, 4))
def test_char_fn_conjugate_symmetry_and_bound(t, l, sub):
    dims = ProblemDims(12, 2, 4)
    a, b = 4 - sub, l - 4 + sub
    if a < 0 or b < 0:
        with pytest.raises(InvalidFace):
            char_fn(BINARY, dims, l, sub, t)
        return
    z = char_fn(BINARY, dims, l, sub, t)
    assert abs(z) <= 1.0 + 1e-12
    assert char_fn(BINARY, dims, l, sub, -t) == pytest.approx(z.conjugate(), abs=1e-14)


def test_char_fn_matches_empirical_cf():
    # l=2, k=1, sub=0: one positive and one negative half-normal
    rng = np.random.default_rng(11)
    t = 1.0
    acc = []
    for _ in range(10):
        x = np.abs(rng.standard_normal(10**6)) - np.abs(rng.standard_normal(10**6))
        acc.append(np.exp(1j * t * x))
    samples = np.concatenate(acc)
    est = samples.mean()
    se_re = samples.real.std() / math.sqrt(samples.size)
    se_im = samples.imag.std() / math.sqrt(samples.size)
    z = char_fn(BINARY, ProblemDims(10, 2, 1), 2, 0, t)
    assert abs(z.real - est.real) < 3 * se_re
    assert abs(z.imag - est.imag) < 3 * se_im + 1e-12


def test_char_fn_box_includes_free_normals():
    rng = np.random.default_rng(2)
    x = np.abs(rng.standard_normal(10**6)) + rng.standard_normal(10**6)
    est = np.exp(1j * 0.8 * x).mean()
    # box, k=1 free, k_mu=1: l=2 with sub=0 gives a=1, b=0
    z = char_fn(box_model(1), ProblemDims(10, 2, 1), 2, 0, 0.8)
    assert abs(z - est) < 5e-3


def test_char_fn_rejects_negative_exponents():
    with pytest.raises(InvalidFace):
        char_fn(BINARY, ProblemDims(10, 2, 3), 1, 0, 0.5)


def test_phi_int_f1_gaussian_expectation_example():
    rng = np.random.default_rng(3)
    est, se = int_f1_mc(2, 0, 0, 2, 10**6, rng)
    q = phi_int_f1(BINARY, ProblemDims(6, 1, 2), 2, 0)
    assert abs(q - est) < 3 * se


def test_phi_int_f1_apex_and_degenerate():
    dims = ProblemDims(10, 1, 3)
    assert phi_int_f1(BINARY, dims, 0, 2) == 1.0
    # l=1, l1=1 leaves two negative half-normals and no positive one
    assert phi_int_f1(BINARY, dims, 1, 1) == 0.0


def test_phi_int_f1_integrand_even():
    # binary k=3, l=3, l1=1 integrates psi^2 conj(psi)^2, the l=4, sub=1 char_fn
    dims = ProblemDims(10, 1, 3)
    f = lambda t: char_fn(BINARY, dims, 4, 1, t).real
    assert f(1.3) == pytest.approx(f(-1.3), abs=1e-15)
    full, _ = integrate_adaptive(f, -15.0, 15.0)
    half, _ = integrate_adaptive(f, 0.0, 15.0)
    assert full == pytest.approx(2 * half, abs=1e-9)


def test_phi_int_f2_trivial_cases():
    dims = ProblemDims(12, 1, 4)
    # b = 0: only positive half-normals
    assert phi_int_f2(BINARY, dims, 3, 1) == pytest.approx(2.0**-3)
    # a = 0: only negative half-normals (needs sub = k, outside the binary range)
    with pytest.raises(InvalidFace):
        phi_int_f2(BINARY, dims, 3, 4)
    # a = b
    assert phi_int_f2(BINARY, dims, 4, 2) == pytest.approx(2.0**-5)


def test_phi_int_f2_matches_epsilon_limit_form():
    # P(0 <= X <= x) by the truncated two-sided inversion integral
    dims = ProblemDims(10, 1, 3)
    l, l2 = 3, 1  # a = 2, b = 1
    x, eps = 50.0, 1e-4

    def g(t):
        z = char_fn(BINARY, dims, l, l2, t)
        return (z * (1 - np.exp(-1j * t * x)) / (1j * t)).real

    # the t < 0 half is the complex conjugate, so twice the real part
    val, _ = integrate.quad(g, eps, 400.0, limit=5000, epsabs=1e-11)
    limit_form = 2.0**-l * (2 * val) / (2 * math.pi)
    assert phi_int_f2(BINARY, dims, l, l2) == pytest.approx(limit_form, abs=2e-4)


def test_phi_ext_f1_examples():
    assert phi_ext_f1(BINARY, ProblemDims(5, 1, 2), 4, 0) == pytest.approx(0.5, abs=1e-12)
    assert phi_ext_f1(BINARY, ProblemDims(5, 1, 2), 3, 1) < 0.25
    rng = np.random.default_rng(4)
    est, se = ext_f1_mc(6, 2, 1, 10**6, rng)
    q = phi_ext_f1(BINARY, ProblemDims(6, 1, 3), 2, 1)
    assert abs(q - est) < 3 * se


def test_phi_ext_f2_values():
    d = ProblemDims(8, 1, 2)
    assert phi_ext_f2(d, 8) == 1.0
    assert phi_ext_f2(d, 7) == 0.5
    assert phi_ext_f2(d, 5) == 0.125
    assert phi_ext_f1(BINARY, d, 7, 0) == pytest.approx(phi_ext_f2(d, 7), abs=1e-12)
    with pytest.raises(InvalidFace):
        phi_ext_f2(d, 9)


@pytest.mark.parametrize("k0", [2, 3, 4])
def test_box_without_interior_equals_binary(k0):
    n = 12
    db = ProblemDims(n, 1, k0)
    dx = ProblemDims(n, 1, 0)
    for fam, l, sub, *_ in face_list(BINARY, db, n):
        if fam.value == "F1":
            assert phi_int_f1(box_model(k0), dx, l, sub) == phi_int_f1(BINARY, db, l, sub)
            assert phi_ext_f1(box_model(k0), dx, l, sub) == phi_ext_f1(BINARY, db, l, sub)
        else:
            assert phi_int_f2(box_model(k0), dx, l, sub) == phi_int_f2(BINARY, db, l, sub)


def test_all_angles_in_unit_interval():
    for model, dims in [(BINARY, ProblemDims(14, 1, 4)), (box_model(3), ProblemDims(14, 1, 3))]:
        for fam, l, sub, *_ in face_list(model, dims, 14):
            if fam.value == "F1":
                vals = [phi_int_f1(model, dims, l, sub), phi_ext_f1(model, dims, l, sub)]
            else:
                vals = [phi_int_f2(model, dims, l, sub), phi_ext_f2(dims, l)]
            for v in vals:
                assert -1e-9 <= v <= 1.0 + 1e-9


@pytest.mark.parametrize("model,dims", [(BINARY, ProblemDims(9, 1, 2)), (box_model(1), ProblemDims(8, 1, 1))])
def test_angles_against_monte_carlo_small(model, dims):
    for tag, q, est, se in angle_oracle_rows(model, dims, 4, 2 * 10**5, 99):
        assert abs(q - est) <= 3.5 * se + 1e-12, tag
