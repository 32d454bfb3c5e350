import math

import numpy as np
import pytest
from scipy import special

from boxl1.asympt import (
    entropy_H,
    ldp_rate,
    psi_com,
    psi_ext,
    psi_int,
    pt_alpha,
    rho1_interval,
)
from boxl1.errors import DomainError, EmptyRange

LN2 = math.log(2.0)


def grid_psi_int(kind, alpha, beta, mu, rho1, step=1e-4, top=20.0):
    u = np.arange(0.0, top + step / 2, step)
    rho = alpha
    if kind == "binary":
        cp, cn, sh = rho + rho1 - beta, beta - rho1, rho
    else:
        kp, zp = (1 - mu) * (1 - beta), mu * (1 - beta)
        cp, cn, sh = zp - (1 - rho - rho1), kp - rho1, rho - beta
    f = cp * np.log(special.erfc(u / math.sqrt(2))) + cn * np.log(special.erfc(-u / math.sqrt(2))) + rho * u * u / 2
    return f.min() - sh * LN2


def grid_psi_ext(alpha, rho1, step=1e-4, top=20.0):
    g = np.arange(0.0, top + step / 2, step)
    rho = alpha
    f = -rho * g * g + (1 - rho - rho1) * np.log(0.5 * special.erfc(-g)) + rho1 * np.log(0.5 * special.erfc(g))
    return f.max()


def test_entropy_examples():
    assert entropy_H(0.5) == pytest.approx(-LN2)
    assert entropy_H(0.0) == 0.0 and entropy_H(1.0) == 0.0
    assert entropy_H(0.3) == pytest.approx(0.3 * math.log(0.3) + 0.7 * math.log(0.7))
    with pytest.raises(DomainError):
        entropy_H(1.2)


def test_psi_com_examples():
    assert psi_com("binary", 0.5, 0.2, None, 0.1) == pytest.approx(LN2, abs=1e-12)
    # rho1 = beta zeroes the first entropy term
    assert psi_com("binary", 0.5, 0.2, None, 0.2) == pytest.approx(-0.8 * entropy_H(0.3 / 0.8))
    assert psi_com("box", 0.5, 0.0, 0.7, 0.1) == pytest.approx(psi_com("binary", 0.5, 0.3, None, 0.1), abs=1e-14)
    with pytest.raises(DomainError):
        psi_com("binary", 0.5, 0.2, None, 0.3)


def test_psi_int_balanced_and_bound():
    # rho + rho1 - beta == beta - rho1
    assert psi_int("binary", 0.4, 0.3, None, 0.1) == pytest.approx(-0.4 * LN2, abs=1e-12)
    assert psi_int("binary", 0.32, 1 / 6, None, 0.05) <= -0.32 * LN2 + 1e-15
    assert psi_int("box", 0.6, 0.1, 0.7, 0.2) <= -(0.6 - 0.1) * LN2 + 1e-15


def test_psi_int_grid_example():
    v = psi_int("binary", 0.32, 1 / 6, None, 0.05)
    assert v == pytest.approx(grid_psi_int("binary", 0.32, 1 / 6, None, 0.05), abs=1e-6)


def test_psi_ext_examples():
    rho = 0.32
    assert psi_ext(rho, (1 - rho) / 2) == pytest.approx((1 - rho) * math.log(0.5), abs=1e-12)
    assert psi_ext(rho, 0.05) == pytest.approx(grid_psi_ext(rho, 0.05), abs=1e-6)
    for r1 in np.linspace(0.0, 0.6, 7):
        assert psi_ext(0.4, r1) >= -(1 - 0.4) * LN2 - 1e-12


def test_box_with_zero_beta_reduces_to_binary():
    for a in (0.3, 0.5, 0.7):
        b = ldp_rate("binary", a, 0.2)
        x = ldp_rate("box", a, 0.0, 0.8)
        assert x.exponent == pytest.approx(b.exponent, abs=1e-8)
    assert psi_int("box", 0.5, 0.0, 0.8, 0.1) == pytest.approx(psi_int("binary", 0.5, 0.2, None, 0.1), abs=1e-12)


def test_rho1_interval_and_empty_range():
    assert rho1_interval("binary", 0.1, 0.2) == pytest.approx((0.1, 0.2))
    lo, hi = rho1_interval("box", 0.4, 1 / 6, 0.8)
    assert lo == pytest.approx(0.0) and hi == pytest.approx(1 / 6)
    with pytest.raises(EmptyRange):
        ldp_rate("box", 0.5, 0.2, 1.0)


def test_terms_finite_inside_interval():
    for model, beta, mu in (("binary", 0.2, None), ("box", 0.15, 0.7)):
        for alpha in (0.3, 0.6, 0.9):
            lo, hi = rho1_interval(model, alpha, beta, mu)
            for r1 in np.linspace(lo, hi, 7)[1:-1]:
                vals = (psi_com(model, alpha, beta, mu, r1), psi_int(model, alpha, beta, mu, r1), psi_ext(alpha, r1))
                assert all(math.isfinite(v) for v in vals)


def test_rate_decreasing_above_transition():
    a_w = 0.3416
    grid = np.linspace(a_w + 0.01, 0.95, 12)
    vals = [ldp_rate("binary", a, 1 / 6).exponent for a in grid]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert all(v < 0 for v in vals)


def test_rate_nonpositive_everywhere():
    for a in np.linspace(0.2, 0.95, 9):
        assert ldp_rate("binary", a, 1 / 6).exponent <= 1e-9


@pytest.mark.slow
def test_pt_alpha_tangency():
    a_w = pt_alpha("binary", 1 / 6)
    assert abs(ldp_rate("binary", a_w, 1 / 6).exponent) <= 1e-6
    assert ldp_rate("binary", a_w + 0.01, 1 / 6).exponent < 0
    assert ldp_rate("binary", a_w - 0.01, 1 / 6).exponent < 0


def test_psi_int_minimiser_beyond_initial_scan():
    # the minimiser here lies near mu_y = 8.1, past the coarse scan window
    args = ("binary", 0.788, 0.157, None, 0.1458)
    assert psi_int(*args) == pytest.approx(grid_psi_int(*args), abs=1e-6)
