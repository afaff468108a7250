"""Compare multipliers from the third-order system and the reduced second-order route on random B."""
import argparse

import numpy as np

from lame3.elliptic import lattice_data
from lame3.monodromy import match_pairs, monodromy_pair, reduced_eigenvalue_check
from lame3.recurrence import problem_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--l", type=int, default=1)
    ap.add_argument("--tau", type=complex, default=0.2 + 1.1j)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--radius", type=float, default=5.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    pp, lat = problem_params(args.n, args.l), lattice_data(args.tau)
    worst = 0.0
    for _ in range(args.count):
        B = complex(*rng.uniform(-args.radius, args.radius, 2))
        rep = monodromy_pair(pp, B, lat)
        lam = rep.classification.lambdas
        if not lam:
            print(f"B = {B:.4f}: {rep.classification.tag.value}, skipped")
            continue
        d = match_pairs(lam, reduced_eigenvalue_check(pp, B, lat))
        worst = max(worst, d)
        print(f"B = {B:.4f}: |lambda| = {abs(lam[0]):.6f}, {abs(lam[1]):.6f}  route gap {d:.1e}")
    print(f"worst route gap {worst:.2e}")


if __name__ == "__main__":
    main()
