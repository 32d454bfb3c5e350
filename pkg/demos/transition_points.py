"""Locate the asymptotic weak transition and print the rate around it.

For undersampling ratio alpha = m/n and sparsity beta = k/n the rate is
the exponent of the failure probability.  It touches zero at alpha_w and
is negative on either side of it.
"""
import numpy as np

from boxl1.asympt import ldp_rate, pt_alpha

BETA = 1 / 6


def show(model, mu=None):
    a_w = pt_alpha(model, BETA, mu)
    label = model if mu is None else f"{model} (mu = {mu})"
    print(f"{label}: alpha_w = {a_w:.4f}")
    for a in np.linspace(max(BETA + 0.02, a_w - 0.1), min(a_w + 0.2, 0.98), 7):
        r = ldp_rate(model, a, BETA, mu)
        print(f"   alpha {a:.3f}  rate {r.exponent: .3e}  rho1* {r.rho1:.4f}")


def main():
    show("binary")
    show("box", 0.8)
    print("\nbinary alpha_w against sparsity")
    for beta in (0.05, 0.1, 0.2, 0.3):
        print(f"   beta {beta:.2f}  alpha_w {pt_alpha('binary', beta):.4f}")


if __name__ == "__main__":
    main()
