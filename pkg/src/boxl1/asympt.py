"""Large-deviation exponents and phase-transition points as ``n -> inf``.

Ratios: ``alpha = m/n``, ``beta = k/n`` and, for box vectors,
``mu`` with ``k_mu = (1 - mu)(n - k)``.  The face-dimension ratio ``rho``
is pinned to ``alpha``; ``rho1`` is the pinned fraction of the negative
block and is optimised over its admissible interval.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .angles import Kind, ModelKind
from .errors import DomainError, EmptyRange
from .numerics import golden_section, maximize_1d, minimize_1d

__all__ = [
    "RatePoint",
    "entropy_H",
    "rho1_interval",
    "psi_com",
    "psi_int",
    "psi_ext",
    "ldp_rate",
    "pt_alpha",
]

_LN2 = math.log(2.0)
_SCAN = np.linspace(0.0, 8.0, 161)
_N_RHO1_SCAN = 200


@dataclass(frozen=True)
class RatePoint:
    alpha: float
    beta: float
    mu_box: float | None
    rho1: float
    exponent: float
    mu_y: float = 0.0
    gamma: float = 0.0


def _kind(model) -> Kind:
    if isinstance(model, ModelKind):
        return model.kind
    return Kind(str(model).lower())


def entropy_H(x: float) -> float:
    """``x ln x + (1-x) ln(1-x)``, zero at both endpoints."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy_H needs x in [0, 1], got {x}")
    return sum(v * math.log(v) for v in (x, 1.0 - x) if v > 0.0)


def _weighted_H(w: float, num: float) -> float:
    # w * H(num / w); rounding may push the ratio a hair past [0, 1]
    if w == 0.0:
        if abs(num) > 1e-12:
            raise DomainError("nonzero fraction of an empty block")
        return 0.0
    x = num / w
    if -1e-12 < x < 0.0:
        x = 0.0
    elif 1.0 < x < 1.0 + 1e-12:
        x = 1.0
    return w * entropy_H(x)


def _check_ratios(kind: Kind, beta: float, mu_box):
    if kind is Kind.BINARY:
        if not 0.0 < beta < 1.0:
            raise DomainError(f"beta must lie in (0, 1), got {beta}")
        return
    if not 0.0 <= beta < 1.0:
        raise DomainError(f"beta must lie in [0, 1), got {beta}")
    if mu_box is None or not 0.0 <= mu_box <= 1.0:
        raise DomainError(f"box model needs mu_box in [0, 1], got {mu_box}")


def _box_blocks(beta, mu_box):
    return (1.0 - mu_box) * (1.0 - beta), mu_box * (1.0 - beta)


def rho1_interval(model, alpha: float, beta: float, mu_box: float | None = None) -> tuple[float, float]:
    kind = _kind(model)
    _check_ratios(kind, beta, mu_box)
    rho = alpha
    if kind is Kind.BINARY:
        return max(0.0, beta - rho), min(beta, 1.0 - rho)
    kp, _ = _box_blocks(beta, mu_box)
    return max(0.0, beta + kp - rho), min(kp, 1.0 - rho)


def psi_com(model, alpha: float, beta: float, mu_box: float | None, rho1: float) -> float:
    """Combinatorial exponent: log face count per dimension."""
    kind = _kind(model)
    _check_ratios(kind, beta, mu_box)
    rest = 1.0 - alpha - rho1
    if kind is Kind.BINARY:
        return -_weighted_H(beta, rho1) - _weighted_H(1.0 - beta, rest)
    kp, zp = _box_blocks(beta, mu_box)
    return -_weighted_H(kp, rho1) - _weighted_H(zp, rest)


def _log_erfc_scaled(u):
    # ln erfc(u / sqrt 2)
    return _LN2 + special.log_ndtr(-u)


def _scan_then_refine(f, find_max: bool, tol: float):
    """Grid scan on [0, 8] followed by 1-D refinement near the best point."""
    vals = f(_SCAN)
    i = int(np.argmax(vals) if find_max else np.argmin(vals))
    lo = _SCAN[max(i - 1, 0)]
    hi_hint = _SCAN[min(i + 1, len(_SCAN) - 1)]
    if i == len(_SCAN) - 1:
        hi_hint = lo + 1.0
    search = maximize_1d if find_max else minimize_1d
    x, fx = search(lambda v: float(f(np.float64(v))), lo, hi_hint, tol)
    if find_max and vals[0] >= fx:
        return 0.0, float(vals[0])
    if not find_max and vals[0] <= fx:
        return 0.0, float(vals[0])
    return x, fx


def _psi_int_full(kind, alpha, beta, mu_box, rho1, tol):
    rho = alpha
    if kind is Kind.BINARY:
        cp, cn, shift = rho + rho1 - beta, beta - rho1, rho
    else:
        kp, zp = _box_blocks(beta, mu_box)
        cp, cn, shift = zp - (1.0 - rho - rho1), kp - rho1, rho - beta

    def f(u):
        return cp * _log_erfc_scaled(u) + cn * _log_erfc_scaled(-u) + 0.5 * rho * u * u

    u, val = _scan_then_refine(f, False, tol)
    return val - shift * _LN2, u


def psi_int(model, alpha: float, beta: float, mu_box: float | None, rho1: float, tol: float = 1e-10) -> float:
    """Internal-angle exponent, a minimum over the auxiliary ``mu_y >= 0``."""
    kind = _kind(model)
    _check_ratios(kind, beta, mu_box)
    return _psi_int_full(kind, alpha, beta, mu_box, rho1, tol)[0]


def _psi_ext_full(alpha, rho1, tol):
    rho = alpha
    rest = 1.0 - rho - rho1
    if rho1 < 0.0 or rest < -1e-12:
        raise DomainError("psi_ext needs rho1 >= 0 and rho + rho1 <= 1")
    rest = max(rest, 0.0)
    root2 = math.sqrt(2.0)

    def f(g):
        # ln(erfc(-g)/2) = log_ndtr(sqrt2 g)
        return -rho * g * g + rest * special.log_ndtr(root2 * g) + rho1 * special.log_ndtr(-root2 * g)

    g, val = _scan_then_refine(f, True, tol)
    return val, g


def psi_ext(alpha: float, rho1: float, tol: float = 1e-10) -> float:
    """External-angle exponent, a maximum over ``gamma >= 0``."""
    return _psi_ext_full(alpha, rho1, tol)[0]


def _total(kind, alpha, beta, mu_box, rho1, tol):
    com = psi_com(kind.value, alpha, beta, mu_box, rho1)
    pint, u = _psi_int_full(kind, alpha, beta, mu_box, rho1, tol)
    pext, g = _psi_ext_full(alpha, rho1, tol)
    return com + pint + pext, u, g


def ldp_rate(model, alpha: float, beta: float, mu_box: float | None = None, tol: float = 1e-10) -> RatePoint:
    """Exponent of ``p_err`` (negative above the transition) with ``rho = alpha``."""
    kind = _kind(model)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    lo, hi = rho1_interval(kind.value, alpha, beta, mu_box)
    width = hi - lo
    if not width > 0.0:
        raise EmptyRange(f"rho1 interval ({lo}, {hi}) is empty")
    eps = 1e-9 * width
    a, b = lo + eps, hi - eps

    def obj(r1):
        return _total(kind, alpha, beta, mu_box, r1, tol)[0]

    grid = np.linspace(a, b, _N_RHO1_SCAN)
    vals = [obj(r) for r in grid]
    i = int(np.argmax(vals))
    left, right = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    r1, neg = golden_section(lambda r: -obj(r), left, right, tol * width)
    if -neg < vals[i]:
        r1 = float(grid[i])
    best, u, g = _total(kind, alpha, beta, mu_box, r1, tol)
    return RatePoint(alpha, beta, mu_box, float(r1), float(best), float(u), float(g))


def pt_alpha(model, beta: float, mu_box: float | None = None, tol: float = 1e-8) -> float:
    """Phase-transition ratio ``alpha_w``.

    The exponent as a function of ``alpha`` is nonpositive and touches zero
    at ``alpha_w`` without changing sign, so the point is located as the
    maximiser of the exponent over ``(beta, 1)``.
    """
    from .errors import NoBracket

    kind = _kind(model)
    _check_ratios(kind, beta, mu_box)
    lo = beta + 1e-6
    hi = 1.0 - 1e-6

    def rate(a):
        return ldp_rate(kind.value, a, beta, mu_box).exponent

    alphas = np.linspace(lo, hi, 41)
    vals = []
    for a in alphas:
        try:
            vals.append(rate(a))
        except EmptyRange:
            vals.append(-math.inf)
    i = int(np.argmax(vals))
    left, right = alphas[max(i - 1, 0)], alphas[min(i + 1, len(alphas) - 1)]
    a_w, neg = golden_section(lambda a: -rate(a), left, right, tol)
    if abs(neg) > 1e-6:
        raise NoBracket(f"exponent never reaches zero on ({lo}, {hi}); max {-neg:.3g} at {a_w}")
    return float(a_w)
