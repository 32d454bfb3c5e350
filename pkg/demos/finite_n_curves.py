"""Print finite-n failure probabilities for both signal models at n = 30, k = 5.

The box column is shown twice: with every one-coordinate allowed on a
pinned face, and with the tighter cap that drops the last one.  Only the
first keeps p_err + p_cor equal to one.
"""
from boxl1.angles import BINARY, ProblemDims, box_model
from boxl1.exact import p_cor_exact, p_err_exact

N, K = 30, 5


def main():
    print("binary, k = 5")
    print(f"{'m':>3} {'p_err':>8} {'p_err+p_cor':>12}")
    for m in range(5, 16):
        d = ProblemDims(N, m, K)
        pe = p_err_exact(BINARY, d).p
        pc = p_cor_exact(BINARY, d).p
        print(f"{m:>3} {pe:8.4f} {pe + pc:12.6f}")

    box = box_model(5)
    print("\nbox, k = 5 interior, 5 ones")
    print(f"{'m':>3} {'p_err':>8} {'sum':>9} {'capped':>8} {'sum':>9}")
    for m in range(10, 21):
        d = ProblemDims(N, m, K)
        pe, pc = p_err_exact(box, d).p, p_cor_exact(box, d).p
        qe = p_err_exact(box, d, printed_caps=True).p
        qc = p_cor_exact(box, d, printed_caps=True).p
        print(f"{m:>3} {pe:8.4f} {pe + pc:9.6f} {qe:8.4f} {qe + qc:9.6f}")


if __name__ == "__main__":
    main()
