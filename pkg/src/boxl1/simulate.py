"""Monte Carlo estimate of the l1 failure probability."""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .angles import ModelKind, ProblemDims
from .errors import Boxl1Error
from .linprog import failure_certificate, l1_box_recover

__all__ = ["Method", "SimConfig", "SimSummary", "gen_instance", "run_trials", "wilson_ci", "thread_count"]


class Method(enum.Enum):
    CERTIFICATE = "certificate"
    DIRECT = "direct"
    BOTH = "both"


@dataclass(frozen=True)
class SimConfig:
    model: ModelKind
    dims: ProblemDims
    trials: int
    seed: int = 0
    method: Method = Method.CERTIFICATE
    recover_tol: float = 1e-6
    confidence: float = 0.95
    shuffle_support: bool = False

    def __post_init__(self):
        if isinstance(self.method, str):
            object.__setattr__(self, "method", Method(self.method.lower()))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.recover_tol > 0:
            raise ValueError("recover_tol must be positive")
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must lie in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.dims.check(self.model)


@dataclass(frozen=True)
class SimSummary:
    failures: int
    trials: int
    p_hat: float
    ci_lo: float
    ci_hi: float
    disagreements: int = 0
    lp_errors: int = 0


def _rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial_index,)))


def _draw(model, dims, trial_index, seed, shuffle):
    rng = _rng(seed, trial_index)
    n, m, k = dims.n, dims.m, dims.k
    A = rng.standard_normal((m, n))
    x = np.zeros(n)
    if model.is_box:
        x[: model.k_mu] = 1.0
        x[model.k_mu : model.k_mu + k] = rng.uniform(0.0, 1.0, k)
    else:
        x[:k] = 1.0
    perm = rng.permutation(n) if shuffle else None
    if perm is not None:
        # canonical coordinate i lands at position perm[i]
        shuffled = np.empty(n)
        shuffled[perm] = x
        x = shuffled
    return A, x, perm


def gen_instance(model: ModelKind, dims: ProblemDims, trial_index: int, seed: int, shuffle: bool = False):
    """Gaussian ``A``, planted ``x`` and ``y = A x`` for one trial.

    Deterministic in ``(seed, trial_index)``.  The planted vector has its
    ones first, then (box only) uniform interior values, then zeros.
    """
    dims.check(model)
    A, x, _ = _draw(model, dims, trial_index, seed, shuffle)
    return A, x, A @ x


def _trial(cfg: SimConfig, i: int):
    """(certificate verdict or None, direct verdict or None)"""
    A, x, perm = _draw(cfg.model, cfg.dims, i, cfg.seed, cfg.shuffle_support)
    cert = direct = None
    if cfg.method in (Method.CERTIFICATE, Method.BOTH):
        Ac = A if perm is None else A[:, perm]
        cert = failure_certificate(Ac, cfg.model, cfg.dims)
    if cfg.method in (Method.DIRECT, Method.BOTH):
        xh = l1_box_recover(A, A @ x)
        direct = bool(np.max(np.abs(xh - x), initial=0.0) > cfg.recover_tol)
    return cert, direct


def _run_chunk(cfg: SimConfig, indices):
    failures = disagreements = errors = 0
    for i in indices:
        try:
            cert, direct = _trial(cfg, i)
        except (Boxl1Error, np.linalg.LinAlgError):
            errors += 1
            continue
        verdict = cert if cert is not None else direct
        failures += int(verdict)
        if cert is not None and direct is not None and cert != direct:
            disagreements += 1
    return failures, disagreements, errors


def thread_count() -> int:
    """Worker threads: ``THREADS`` if set, else the CPU count."""
    env = os.environ.get("THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def wilson_ci(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= failures <= trials:
        raise ValueError("need 0 <= failures <= trials and trials >= 1")
    z = float(stats.norm.ppf(0.5 + 0.5 * confidence))
    p = failures / trials
    z2n = z * z / trials
    centre = (p + 0.5 * z2n) / (1.0 + z2n)
    half = z * np.sqrt(p * (1.0 - p) / trials + 0.25 * z2n / trials) / (1.0 + z2n)
    lo = 0.0 if failures == 0 else max(0.0, centre - half)
    hi = 1.0 if failures == trials else min(1.0, centre + half)
    return float(lo), float(hi)


def run_trials(cfg: SimConfig, threads: int | None = None) -> SimSummary:
    """Run ``cfg.trials`` independent trials and summarise the failure rate.

    Trials that raise LP errors are excluded from the counts and tallied in
    ``lp_errors``.  Output does not depend on ``threads``.
    """
    threads = threads or thread_count()
    idx = np.arange(cfg.trials)
    if threads == 1 or cfg.trials < 64:
        parts = [_run_chunk(cfg, idx)]
    else:
        chunks = np.array_split(idx, 4 * threads)
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda c: _run_chunk(cfg, c), chunks))
    failures = sum(p[0] for p in parts)
    disagreements = sum(p[1] for p in parts)
    errors = sum(p[2] for p in parts)
    done = cfg.trials - errors
    if done == 0:
        return SimSummary(0, 0, float("nan"), 0.0, 1.0, 0, errors)
    lo, hi = wilson_ci(failures, done, cfg.confidence)
    return SimSummary(failures, done, failures / done, lo, hi, disagreements, errors)
