"""Finite-n failure and success probabilities as sums over cone faces."""
from __future__ import annotations

from dataclasses import dataclass, field

from scipy.special import gammaln

from .angles import (
    Family,
    FaceIndex,
    ModelKind,
    ProblemDims,
    _phi_ext_f1,
    _phi_int_f1,
    _phi_int_f2,
    blocks,
    phi_ext_f2,
    sub_bounds,
)
from .errors import InvalidFace, NoConvergence
from .numerics import QuadConfig, SignedLog

__all__ = [
    "FaceTermBreakdown",
    "ExactResult",
    "l_sub_range",
    "face_count",
    "p_err_exact",
    "p_cor_exact",
]


@dataclass(frozen=True)
class FaceTermBreakdown:
    face: FaceIndex
    count: SignedLog
    phi_int: float
    phi_ext: float
    term: SignedLog


@dataclass
class ExactResult:
    p: float
    terms: list = field(default_factory=list)
    quadrature_err_bound: float = 0.0


def l_sub_range(model: ModelKind, dims: ProblemDims, family, l: int, printed_caps: bool = False):
    """Range ``(lo, hi)`` of pinned negative-block coordinates, or ``None`` if empty."""
    if not isinstance(family, Family):
        family = Family(family)
    return sub_bounds(model, dims, family, l, printed_caps)


def _log_binom(n: int, r: int) -> float:
    return float(gammaln(n + 1) - gammaln(r + 1) - gammaln(n - r + 1))


def face_count(model: ModelKind, dims: ProblemDims, face: FaceIndex) -> SignedLog:
    """Number of faces in the orbit of ``face``."""
    rng = sub_bounds(model, dims, face.family, face.l)
    if rng is None or not rng[0] <= face.sub <= rng[1]:
        raise InvalidFace(f"{face} is not a face of the {model.name} cone for {dims}")
    K, Z, _ = blocks(model, dims)
    span = dims.n - face.l - (1 if face.family is Family.F1 else 0)
    return SignedLog.from_log(_log_binom(K, face.sub) + _log_binom(Z, span - face.sub))


def _face_terms(model, dims, ls, cfg, printed_caps):
    terms = []
    err = 0.0
    for l in sorted(ls, reverse=True):
        for family in (Family.F1, Family.F2):
            rng = sub_bounds(model, dims, family, l, printed_caps)
            if rng is None:
                continue
            for sub in range(rng[0], rng[1] + 1):
                face = FaceIndex(family, l, sub)
                count = face_count(model, dims, face)
                if family is Family.F1:
                    pi, ei = _phi_int_f1(model, dims, l, sub, cfg)
                    pe, ee = _phi_ext_f1(model, dims, l, sub, cfg)
                else:
                    pi, ei = _phi_int_f2(model, dims, l, sub, cfg)
                    pe, ee = phi_ext_f2(dims, l), 0.0
                # quadrature noise may leave a vanishing angle slightly negative
                term = count * SignedLog.from_real(max(pi, 0.0) * pe)
                terms.append(FaceTermBreakdown(face, count, pi, pe, term))
                err += count.to_real() * (abs(ei) * pe + abs(pi) * ee + abs(min(pi, 0.0)) * pe)
    return terms, err


def _assemble(terms, err, label) -> ExactResult:
    p = 2.0 * SignedLog.sum(t.term for t in terms).to_real()
    bound = 2.0 * err
    slack = bound + 1e-12
    if p < -slack or p > 1.0 + slack:
        raise NoConvergence(f"{label} = {p!r} is outside [0, 1] beyond the error bound {bound:.3g}")
    return ExactResult(min(max(p, 0.0), 1.0), terms, bound)


def _trivial(model, dims) -> bool:
    K, _, f = blocks(model, dims)
    return K == 0 and f == 0


def p_err_exact(
    model: ModelKind, dims: ProblemDims, cfg: QuadConfig | None = None, printed_caps: bool = False
) -> ExactResult:
    """Probability that the l1 program fails to return the planted vector.

    Sums face terms over dimensions ``l = m+1, m+3, ...``.  Terms are
    gathered from the largest faces down and added in the log domain.
    """
    cfg = cfg or QuadConfig()
    dims.check(model)
    if _trivial(model, dims):
        return ExactResult(0.0, [], 0.0)
    terms, err = _face_terms(model, dims, range(dims.m + 1, dims.n + 1, 2), cfg, printed_caps)
    return _assemble(terms, err, "p_err")


def p_cor_exact(
    model: ModelKind, dims: ProblemDims, cfg: QuadConfig | None = None, printed_caps: bool = False
) -> ExactResult:
    """Probability of recovery, summed over ``l = m-1, m-3, ..., >= 0``."""
    cfg = cfg or QuadConfig()
    dims.check(model)
    if _trivial(model, dims):
        return ExactResult(1.0, [], 0.0)
    terms, err = _face_terms(model, dims, range(dims.m - 1, -1, -2), cfg, printed_caps)
    return _assemble(terms, err, "p_cor")
