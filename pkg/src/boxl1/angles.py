"""Internal and external angles of the failure cone, both recovery models.

Notation used throughout.  The coordinates of a null-space direction split
into three blocks determined by the planted vector:

* the *negative* block, of size ``K``: the ones of a binary vector, or the
  ones of a box vector (``k_mu`` of them);
* the *zero* block, of size ``Z``: the zeros (``n - k`` or ``n - k - k_mu``);
* the *free* block, of size ``f``: empty for binary vectors, the ``k``
  interior coordinates for box vectors.

A face is labelled by its dimension ``l`` and by how many negative-block
coordinates (``sub``) are pinned.  Its internal angle is a Gaussian measure
of a sum of half-normals, which is computed by inverting the characteristic
function of the half-normal distribution.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import special

from .errors import InvalidDims, InvalidFace
from .numerics import LogComplex, QuadConfig, half_normal_cf, integrate_adaptive

__all__ = [
    "Kind",
    "Family",
    "ModelKind",
    "ProblemDims",
    "FaceIndex",
    "BINARY",
    "box_model",
    "char_fn",
    "phi_int_f1",
    "phi_int_f2",
    "phi_ext_f1",
    "phi_ext_f2",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SMALL_T = 1e-6


class Kind(enum.Enum):
    BINARY = "binary"
    BOX = "box"


class Family(enum.Enum):
    F1 = "F1"  # balance inequality tight
    F2 = "F2"  # balance inequality slack


@dataclass(frozen=True)
class ModelKind:
    kind: Kind
    k_mu: int = 0

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Kind(self.kind.lower()))
        if self.kind is Kind.BINARY:
            object.__setattr__(self, "k_mu", 0)
        elif int(self.k_mu) != self.k_mu or self.k_mu < 0:
            raise InvalidDims(f"k_mu must be a nonnegative integer, got {self.k_mu!r}")

    @property
    def is_box(self) -> bool:
        return self.kind is Kind.BOX

    @property
    def name(self) -> str:
        return self.kind.value


BINARY = ModelKind(Kind.BINARY)


def box_model(k_mu: int) -> ModelKind:
    return ModelKind(Kind.BOX, int(k_mu))


@dataclass(frozen=True)
class ProblemDims:
    n: int
    m: int
    k: int

    def __post_init__(self):
        for name in ("n", "m", "k"):
            v = getattr(self, name)
            if int(v) != v:
                raise InvalidDims(f"{name} must be an integer, got {v!r}")
        if self.n < 1:
            raise InvalidDims("n must be positive")
        if self.m < 0 or self.k < 0:
            raise InvalidDims("m and k must be nonnegative")
        if self.k > self.n or self.m > self.n:
            raise InvalidDims(f"need k <= n and m <= n, got k={self.k}, m={self.m}, n={self.n}")

    def check(self, model: ModelKind) -> "ProblemDims":
        if model.is_box and self.k + model.k_mu > self.n:
            raise InvalidDims(f"box model needs k + k_mu <= n, got {self.k} + {model.k_mu} > {self.n}")
        return self


@dataclass(frozen=True)
class FaceIndex:
    family: Family
    l: int
    sub: int


def blocks(model: ModelKind, dims: ProblemDims) -> tuple[int, int, int]:
    """Sizes ``(K, Z, f)`` of the negative, zero and free blocks."""
    dims.check(model)
    if model.is_box:
        return model.k_mu, dims.n - dims.k - model.k_mu, dims.k
    return dims.k, dims.n - dims.k, 0


def sub_bounds(model: ModelKind, dims: ProblemDims, family: Family, l: int, printed_caps: bool = False):
    """Admissible ``sub`` values for faces of dimension ``l``; ``None`` when empty.

    The upper cap is ``K - 1`` for binary vectors.  For box vectors the cap is
    ``K``: with free coordinates present, pinning the whole negative block
    still leaves a nondegenerate face.  ``printed_caps=True`` applies the
    ``K - 1`` cap to both models.
    """
    K, Z, f = blocks(model, dims)
    n = dims.n
    if not 0 <= l <= n:
        return None
    cap = K - 1 if (f == 0 or printed_caps) else K
    span = n - l - 1 if family is Family.F1 else n - l
    if span < 0:
        return None
    lo = max(0, span - Z)
    hi = min(cap, span)
    return (lo, hi) if lo <= hi else None


def _face_exponents(model, dims, family: Family, l: int, sub: int) -> tuple[int, int, int]:
    """Half-normal counts ``(a, b)`` of the face plus the free count ``f``.

    For F1 faces ``b`` may be -1; the internal-angle integrand then carries
    ``b + 1 = 0`` conjugate factors.
    """
    if not isinstance(family, Family):
        family = Family(family)
    rng = sub_bounds(model, dims, family, l)
    if rng is None or not rng[0] <= sub <= rng[1]:
        raise InvalidFace(f"no {family.value} face with l={l}, sub={sub} for {model.name} {dims}")
    K, _, f = blocks(model, dims)
    a = K - sub
    b = l - f - K + sub
    if b < (-1 if family is Family.F1 else 0):
        raise InvalidFace(f"{family.value} face l={l}, sub={sub} has too few coordinates")
    return a, b, f


def _cf_log(a: int, b: int, f: int, t: float) -> LogComplex:
    # psi^a * conj(psi)^b * exp(-f t^2/2); phase accumulated before wrapping
    h = half_normal_cf(t)
    return LogComplex((a + b) * h.log_mag - 0.5 * f * t * t, (a - b) * h.phase)


def char_fn(model: ModelKind, dims: ProblemDims, l: int, sub: int, t: float) -> complex:
    """Characteristic function of ``a`` positive and ``b`` negative half-normals
    plus ``f`` standard normals, at frequency ``t``."""
    K, _, f = blocks(model, dims)
    a = K - sub
    b = l - f - K + sub
    if a < 0 or b < 0:
        raise InvalidFace(f"exponents a={a}, b={b} must be nonnegative")
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    return _cf_log(a, b, f, t).to_complex()


def _phi_int_f1(model, dims, l, l1, cfg: QuadConfig | None = None) -> tuple[float, float]:
    a, b, f = _face_exponents(model, dims, Family.F1, l, l1)
    if l == 0:
        # the face is the apex itself
        return 1.0, 0.0
    if f == 0 and b == -1:
        return 0.0, 0.0
    s = l - f
    b1 = b + 1

    def integrand(t):
        h = half_normal_cf(t)
        return math.exp((a + b1) * h.log_mag - 0.5 * f * t * t) * math.cos((a - b1) * h.phase)

    val, err = integrate_adaptive(integrand, 0.0, math.inf, cfg or QuadConfig())
    scale = 2.0 * math.sqrt(l + 1) / (2.0 ** (s + 1) * _SQRT_2PI)
    return scale * val, scale * err


def _phi_int_f2(model, dims, l, l2, cfg: QuadConfig | None = None) -> tuple[float, float]:
    a, b, f = _face_exponents(model, dims, Family.F2, l, l2)
    s = l - f
    weight = 2.0 ** (-s)
    if b == 0 and f == 0:
        return weight, 0.0
    if a == 0 and f == 0:
        return 0.0, 0.0
    if a == b:
        return 0.5 * weight, 0.0
    mean = (a - b) * _SQRT_2_OVER_PI

    def integrand(t):
        if t < _SMALL_T:
            return mean
        h = half_normal_cf(t)
        return math.exp((a + b) * h.log_mag - 0.5 * f * t * t) * math.sin((a - b) * h.phase) / t

    val, err = integrate_adaptive(integrand, 0.0, math.inf, cfg or QuadConfig())
    return weight * (0.5 + val / math.pi), weight * err / math.pi


def _phi_ext_f1(model, dims, l, l1, cfg: QuadConfig | None = None) -> tuple[float, float]:
    _face_exponents(model, dims, Family.F1, l, l1)
    rest = dims.n - l - 1 - l1
    c = 1.0 / math.sqrt(l + 1)

    def integrand(g):
        v = -0.5 * g * g
        if l1:
            v += l1 * special.log_ndtr(-g * c)
        if rest:
            v += rest * special.log_ndtr(g * c)
        return math.exp(v)

    val, err = integrate_adaptive(integrand, 0.0, math.inf, cfg or QuadConfig())
    return val / _SQRT_2PI, err / _SQRT_2PI


def phi_int_f1(model: ModelKind, dims: ProblemDims, l: int, l1: int, cfg: QuadConfig | None = None) -> float:
    """Internal angle of an F1 face.

    ``l = 0`` is accepted and gives 1.
    """
    return _phi_int_f1(model, dims, l, l1, cfg)[0]


def phi_int_f2(model: ModelKind, dims: ProblemDims, l: int, l2: int, cfg: QuadConfig | None = None) -> float:
    """Internal angle of an F2 face: ``2**-s * P(X >= 0)`` with ``X`` the
    signed half-normal sum, by Gil-Pelaez inversion."""
    return _phi_int_f2(model, dims, l, l2, cfg)[0]


def phi_ext_f1(model: ModelKind, dims: ProblemDims, l: int, l1: int, cfg: QuadConfig | None = None) -> float:
    """External angle of an F1 face (same expression for both models)."""
    return _phi_ext_f1(model, dims, l, l1, cfg)[0]


def phi_ext_f2(dims: ProblemDims, l: int) -> float:
    """External angle of an F2 face, ``2**-(n-l)``."""
    if not 0 <= l <= dims.n:
        raise InvalidFace(f"l={l} outside [0, {dims.n}]")
    return math.ldexp(1.0, -(dims.n - l))
