"""Compare Monte Carlo failure rates with the exact formula on a small grid.

Each trial draws a Gaussian matrix, solves the l1 program and also checks
the dual failure certificate.  Pass a trial count as the first argument
(default 2000).
"""
import sys
import time

from boxl1.angles import BINARY, ProblemDims, box_model
from boxl1.exact import p_err_exact
from boxl1.simulate import Method, SimConfig, run_trials


def main(trials):
    cases = [(BINARY, ProblemDims(20, m, 3)) for m in (5, 7, 9)]
    cases += [(box_model(3), ProblemDims(20, m, 3)) for m in (8, 10, 12)]
    print(f"{'model':>10} {'m':>3} {'theory':>8} {'sim':>8} {'99% interval':>18} {'disagree':>8}")
    for i, (model, d) in enumerate(cases):
        t0 = time.time()
        s = run_trials(SimConfig(model, d, trials, 7 + i, Method.BOTH, confidence=0.99))
        p = p_err_exact(model, d).p
        mark = "" if s.ci_lo <= p <= s.ci_hi else "  outside"
        print(
            f"{model.name:>10} {d.m:>3} {p:8.4f} {s.p_hat:8.4f}   [{s.ci_lo:.4f}, {s.ci_hi:.4f}]"
            f" {s.disagreements:>8}  {time.time() - t0:.1f}s{mark}"
        )


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2000)
