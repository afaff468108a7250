"""Print B-degrees of the apparent and spectral polynomials next to the closed-form predictions."""
import argparse

from lame3.recurrence import apparent_polynomial, expected_degree, problem_params, spectral_polynomial


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--max-l", type=int, default=3)
    args = ap.parse_args()

    print(f"{'n':>3} {'l':>3} {'poly':>5} {'degree':>7} {'predicted':>10}")
    for n in range(args.max_n + 1):
        for l in range(args.max_l + 1):
            if n == l == 0:
                continue
            pp = problem_params(n, l)
            if n % 2:
                d, want, name = apparent_polynomial(pp).degree_b(), (n + 1) // 2, "P"
            else:
                d, want, name = spectral_polynomial(pp).degree, expected_degree(n, l), "Q"
            flag = "" if d == want else "  <-- mismatch"
            print(f"{n:>3} {l:>3} {name:>5} {d:>7} {want:>10}{flag}")


if __name__ == "__main__":
    main()
