"""Special functions, log-domain arithmetic, quadrature and 1-D search.

Everything here is pure; no module-level mutable state.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NoBracket, NoConvergence, OverflowDomain, QuadratureFailure

__all__ = [
    "SignedLog",
    "LogComplex",
    "QuadConfig",
    "erfc_real",
    "erfi_real",
    "log_erfi",
    "half_normal_cf",
    "integrate_adaptive",
    "golden_section",
    "minimize_1d",
    "maximize_1d",
    "find_root_bisect",
]

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_ERFI_OVERFLOW = 26.0


def _wrap_phase(phase: float) -> float:
    """Map an angle to (-pi, pi]."""
    w = math.remainder(phase, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    return w


# ---------------------------------------------------------------------------
# log-domain real numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(log_mag)``.

    ``sign`` is one of -1, 0, +1; ``log_mag`` is ignored when ``sign == 0``.
    Used to carry products of very large binomial coefficients with very
    small angles.
    """

    sign: int
    log_mag: float = -math.inf

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.sign != 0 and math.isnan(self.log_mag):
            raise ValueError("log_mag is NaN")

    @classmethod
    def zero(cls) -> "SignedLog":
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> "SignedLog":
        return cls(1, 0.0)

    @classmethod
    def from_real(cls, x: float) -> "SignedLog":
        x = float(x)
        if x == 0.0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_mag: float, sign: int = 1) -> "SignedLog":
        if log_mag == -math.inf:
            return cls.zero()
        return cls(sign, float(log_mag))

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_mag)

    __float__ = to_real

    def __neg__(self) -> "SignedLog":
        return SignedLog(-self.sign, self.log_mag)

    def __mul__(self, other) -> "SignedLog":
        if not isinstance(other, SignedLog):
            other = SignedLog.from_real(other)
        if self.sign == 0 or other.sign == 0:
            return SignedLog.zero()
        return SignedLog(self.sign * other.sign, self.log_mag + other.log_mag)

    __rmul__ = __mul__

    def __add__(self, other) -> "SignedLog":
        if not isinstance(other, SignedLog):
            other = SignedLog.from_real(other)
        return SignedLog.sum((self, other))

    __radd__ = __add__

    def __sub__(self, other) -> "SignedLog":
        if not isinstance(other, SignedLog):
            other = SignedLog.from_real(other)
        return self + (-other)

    @staticmethod
    def sum(terms: Iterable["SignedLog"]) -> "SignedLog":
        """Sum of many terms with separate log-sum-exp for each sign."""
        pos = []
        neg = []
        for t in terms:
            if t.sign > 0:
                pos.append(t.log_mag)
            elif t.sign < 0:
                neg.append(t.log_mag)
        lp = special.logsumexp(pos) if pos else -math.inf
        ln = special.logsumexp(neg) if neg else -math.inf
        if lp == ln:
            return SignedLog.zero()
        if lp > ln:
            return SignedLog.from_log(lp + math.log1p(-math.exp(ln - lp)), 1)
        return SignedLog.from_log(ln + math.log1p(-math.exp(lp - ln)), -1)


# ---------------------------------------------------------------------------
# log-domain complex numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogComplex:
    """Complex number ``exp(log_mag + i*phase)``; phase kept in (-pi, pi]."""

    log_mag: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phase", _wrap_phase(float(self.phase)))

    @classmethod
    def from_complex(cls, z: complex) -> "LogComplex":
        z = complex(z)
        if z == 0:
            return cls(-math.inf, 0.0)
        return cls(math.log(abs(z)), math.atan2(z.imag, z.real))

    def to_complex(self) -> complex:
        if self.log_mag == -math.inf:
            return 0j
        r = math.exp(self.log_mag)
        return complex(r * math.cos(self.phase), r * math.sin(self.phase))

    def conjugate(self) -> "LogComplex":
        return LogComplex(self.log_mag, -self.phase)

    def __mul__(self, other) -> "LogComplex":
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        return LogComplex(self.log_mag + other.log_mag, self.phase + other.phase)

    __rmul__ = __mul__

    def power(self, a: float) -> "LogComplex":
        """Principal power; the phase is scaled before wrapping."""
        if self.log_mag == -math.inf:
            if a > 0:
                return self
            if a == 0:
                return LogComplex(0.0, 0.0)
            raise DomainError("negative power of zero")
        return LogComplex(a * self.log_mag, a * self.phase)

    __pow__ = power

    @property
    def real(self) -> float:
        return self.to_complex().real

    @property
    def imag(self) -> float:
        return self.to_complex().imag


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------


def erfc_real(x: float) -> float:
    """Complementary error function (saturates to 0 / 2)."""
    return float(special.erfc(x))


def erfi_real(y: float) -> float:
    """Imaginary error function ``erfi(y) = (2/sqrt(pi)) int_0^y exp(z^2) dz``.

    Evaluated as ``(2/sqrt(pi)) exp(y^2) D(y)`` with Dawson's integral ``D``
    for the magnitude and the sign applied afterwards, so the result is odd
    to the last bit.  A short Taylor series is used below 0.5 where it is
    exact to rounding.
    """
    y = float(y)
    ay = abs(y)
    if ay > _ERFI_OVERFLOW:
        raise OverflowDomain(f"|y| = {ay} > {_ERFI_OVERFLOW}; use log_erfi")
    if ay < 0.5:
        # sum_j y^(2j+1) / (j! (2j+1))
        y2 = ay * ay
        term = ay
        acc = ay
        j = 0
        while term > 1e-18 * acc:
            j += 1
            term *= y2 / j
            acc += term / (2 * j + 1)
        val = _TWO_OVER_SQRT_PI * acc
    else:
        val = _TWO_OVER_SQRT_PI * math.exp(ay * ay) * float(special.dawsn(ay))
    return math.copysign(val, y) if y != 0 else 0.0


def log_erfi(y: float) -> float:
    """``ln erfi(y)`` for ``y >= 6``, finite far past the double overflow of erfi."""
    y = float(y)
    if y < 6.0:
        raise DomainError("log_erfi requires y >= 6")
    return math.log(_TWO_OVER_SQRT_PI) + y * y + math.log(float(special.dawsn(y)))


def half_normal_cf(t: float) -> LogComplex:
    """Characteristic function of ``|Z|``, ``exp(-t^2/2) (1 + i erfi(t/sqrt 2))``.

    The Dawson form ``exp(-t^2/2) + i (2/sqrt pi) D(t/sqrt 2)`` never
    overflows, so no large-``t`` switch is needed.
    """
    t = float(t)
    re = math.exp(-0.5 * t * t)
    im = _TWO_OVER_SQRT_PI * float(special.dawsn(t / math.sqrt(2.0)))
    return LogComplex(0.5 * math.log(re * re + im * im), math.atan2(im, re))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 200
    tail_tol: float = 1e-12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be at least 8")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")

    def scaled(self, factor: float) -> "QuadConfig":
        """All tolerances multiplied by ``factor``."""
        return QuadConfig(
            self.abs_tol * factor,
            self.rel_tol * factor,
            self.max_subdivisions,
            self.tail_tol * factor,
        )


_MAX_PANELS = 1000


def _quad_finite(f, a, b, epsabs, epsrel, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
    val, err = out[0], out[1]
    ier = 0 if len(out) == 3 else 1
    if not (math.isfinite(val) and math.isfinite(err)):
        raise QuadratureFailure(f"non-finite integral on [{a}, {b}]")
    if ier and err > 10.0 * max(epsabs, epsrel * abs(val)):
        raise QuadratureFailure(
            f"quadrature on [{a}, {b}] stopped at error {err:.3g} (value {val:.6g})"
        )
    return val, err


def _quad_semi_infinite(f, a, cfg: QuadConfig):
    total = 0.0
    err = 0.0
    lo = a
    width = 1.0
    quiet = 0
    last = []
    for _ in range(_MAX_PANELS):
        hi = a + width
        v, e = _quad_finite(f, lo, hi, 0.1 * cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
        total += v
        err += e
        last = (last + [abs(v)])[-2:]
        quiet = quiet + 1 if abs(v) < cfg.tail_tol else 0
        if quiet >= 2:
            # geometric-or-faster tail beyond the last panel
            return total, err + sum(last)
        lo = hi
        width *= 2.0
        if not math.isfinite(a + width):
            break
    raise QuadratureFailure("semi-infinite integral: tail never fell below tail_tol")


def integrate_adaptive(
    f: Callable[[float], float], a: float, b: float, cfg: QuadConfig | None = None
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]``; either limit may be infinite.

    Finite pieces use adaptive Gauss-Kronrod.  An infinite end is handled
    by panels of doubling width, ``[a, a+1], [a+1, a+2], [a+2, a+4], ...``,
    stopping once two consecutive panels contribute less than
    ``cfg.tail_tol``.

    Returns ``(value, err_est)``.
    """
    cfg = cfg or QuadConfig()
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0, 0.0
    if a > b:
        v, e = integrate_adaptive(f, b, a, cfg)
        return -v, e
    if math.isinf(a) and math.isinf(b):
        v1, e1 = _quad_semi_infinite(f, 0.0, cfg)
        v2, e2 = _quad_semi_infinite(lambda x: f(-x), 0.0, cfg)
        return v1 + v2, e1 + e2
    if math.isinf(b):
        return _quad_semi_infinite(f, a, cfg)
    if math.isinf(a):
        return _quad_semi_infinite(lambda x: f(-x), -b, cfg)
    return _quad_finite(f, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)


# ---------------------------------------------------------------------------
# 1-D search
# ---------------------------------------------------------------------------

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    """Minimise ``f`` on ``[lo, hi]`` by golden-section search.

    Endpoints are evaluated as candidates too, so a boundary minimum of a
    monotone function is found exactly.
    """
    if hi < lo:
        raise ValueError("hi < lo")
    best_x, best_f = lo, f(lo)
    fh = f(hi)
    if fh < best_f:
        best_x, best_f = hi, fh
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def minimize_1d(f, lo: float, hi_hint: float, tol: float = 1e-10) -> tuple[float, float]:
    """Minimise a function that is unimodal on ``[lo, inf)``.

    The bracket grows by doubling its width from ``hi_hint`` until ``f``
    stops decreasing, then golden-section search refines it.
    """
    if not hi_hint > lo:
        raise ValueError("hi_hint must exceed lo")
    f_lo = f(lo)
    width0 = hi_hint - lo
    prev = lo
    x1 = hi_hint
    f1 = f(x1)
    if f1 >= f_lo:
        bracket = (lo, x1)
    else:
        width = width0
        while True:
            width *= 2.0
            if width > 2.0**60 * width0:
                raise NoConvergence("minimize_1d: bracket expansion diverged")
            x2 = lo + width
            f2 = f(x2)
            if f2 >= f1:
                bracket = (prev, x2)
                break
            prev, x1, f1 = x1, x2, f2
    x, fx = golden_section(f, bracket[0], bracket[1], tol)
    if f_lo <= fx:
        return lo, f_lo
    return x, fx


def maximize_1d(f, lo: float, hi_hint: float, tol: float = 1e-10) -> tuple[float, float]:
    x, fx = minimize_1d(lambda v: -f(v), lo, hi_hint, tol)
    return x, -fx


def find_root_bisect(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoBracket(f"f({lo}) and f({hi}) have the same sign")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
        if mid in (lo, hi) and hi - lo <= 2 * np.spacing(mid):
            break
    return 0.5 * (lo + hi)
