"""Monte Carlo estimators of the angles straight from their Gaussian-measure
definitions.  Each returns ``(estimate, standard_error)``."""
import math

import numpy as np


def _mean_se(samples):
    samples = np.asarray(samples, dtype=float)
    return float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(samples.size))


def int_f1_mc(a, b, f, l, n_samples, rng):
    """J * E[exp(-S^2/2) 1{w_neg <= 0, w_pos >= 0, S <= 0}], S = sum of the
    ``l = a + b + f`` standard normal coordinates."""
    w = rng.standard_normal((n_samples, a + b + f))
    ok = np.all(w[:, :a] <= 0, axis=1) & np.all(w[:, a : a + b] >= 0, axis=1)
    S = w.sum(axis=1)
    ok &= S <= 0
    vals = math.sqrt(l + 1) * np.exp(-0.5 * S * S) * ok
    return _mean_se(vals)


def int_f1_density_mc(a, f, l, n_samples, rng):
    """Angle ``sqrt(l+1) sqrt(2 pi) 2^-(s+1) p_Y(0)`` for faces with no
    positive half-normals, where ``Y`` is ``a`` half-normals plus ``f``
    normals; ``p_Y(0) = E[phi(H / sqrt f) / sqrt f]`` given the half-normal
    sum ``H``."""
    s = l - f
    H = np.abs(rng.standard_normal((n_samples, a))).sum(axis=1)
    dens = np.exp(-0.5 * H * H / f) / math.sqrt(2 * math.pi * f)
    scale = math.sqrt(l + 1) * math.sqrt(2 * math.pi) / 2.0 ** (s + 1)
    return _mean_se(scale * dens)


def int_f2_mc(a, b, f, n_samples, rng):
    """P(w_neg <= 0, w_pos >= 0, sum(w) <= 0) for standard normal ``w``."""
    w = rng.standard_normal((n_samples, a + b + f))
    ok = np.all(w[:, :a] <= 0, axis=1) & np.all(w[:, a : a + b] >= 0, axis=1) & (w.sum(axis=1) <= 0)
    return _mean_se(ok)


def ext_f1_mc(n, l, l1, n_samples, rng):
    """Fraction of standard normal ``g`` in ``R^(n-l)`` with ``g_last >= 0``,
    ``l1`` coordinates above ``g_last/sqrt(l+1)`` and the rest above
    ``-g_last/sqrt(l+1)``."""
    g = rng.standard_normal((n_samples, n - l))
    last = g[:, -1:]
    c = 1.0 / math.sqrt(l + 1)
    ok = (last[:, 0] >= 0) & np.all(g[:, :l1] >= c * last, axis=1) & np.all(g[:, l1:-1] >= -c * last, axis=1)
    return _mean_se(ok)


def face_list(model, dims, max_l):
    """All (family, l, sub, a, b, f) with ``1 <= l <= max_l``."""
    from boxl1.angles import Family, blocks, sub_bounds

    K, _, f = blocks(model, dims)
    out = []
    for l in range(1, max_l + 1):
        for fam in (Family.F1, Family.F2):
            rng = sub_bounds(model, dims, fam, l)
            if rng is None:
                continue
            for sub in range(rng[0], rng[1] + 1):
                out.append((fam, l, sub, K - sub, l - f - K + sub, f))
    return out


def angle_oracle_rows(model, dims, max_l, n_samples, seed):
    """(label, quadrature value, MC estimate, MC standard error) per angle."""
    from boxl1.angles import Family, phi_ext_f1, phi_int_f1, phi_int_f2

    rng = np.random.default_rng(seed)
    rows = []
    for fam, l, sub, a, b, f in face_list(model, dims, max_l):
        tag = f"{model.name} {fam.value} l={l} sub={sub}"
        if fam is Family.F1:
            q = phi_int_f1(model, dims, l, sub)
            if b >= 0:
                est = int_f1_mc(a, b, f, l, n_samples, rng)
            elif f > 0:
                est = int_f1_density_mc(a, f, l, n_samples, rng)
            else:
                # a >= 2 positive half-normals alone have zero density at 0
                est = (0.0, 0.0)
            rows.append((tag + " int", q, *est))
            q = phi_ext_f1(model, dims, l, sub)
            rows.append((tag + " ext", q, *ext_f1_mc(dims.n, l, sub, n_samples, rng)))
        else:
            # the orthant constraints already supply the 2^-s factor
            q = phi_int_f2(model, dims, l, sub)
            rows.append((tag + " int", q, *int_f2_mc(a, b, f, n_samples, rng)))
    return rows
