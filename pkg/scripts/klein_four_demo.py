"""Monodromy at each root of P_{n,0} on a chosen lattice: traces, N^2 - I, and the classification."""
import argparse

import numpy as np

from lame3.elliptic import lattice_data
from lame3.monodromy import monodromy_pair
from lame3.recurrence import apparent_polynomial, problem_params
from lame3.roots import find_roots
from lame3.sympoly import specialize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--l", type=int, default=0)
    ap.add_argument("--tau", type=complex, default=1j)
    args = ap.parse_args()

    pp, lat = problem_params(args.n, args.l), lattice_data(args.tau)
    roots = find_roots(specialize(apparent_polynomial(pp), lat.g2, lat.g3)).roots
    for B in roots:
        rep = monodromy_pair(pp, B, lat)
        sq = max(np.linalg.norm(N @ N - np.eye(3)) for N in (rep.N1, rep.N2))
        tr = [np.trace(N) for N in (rep.N1, rep.N2, rep.N1 @ rep.N2)]
        print(f"B = {B:.10g}")
        print(f"  traces      {', '.join(f'{t.real:+.8f}{t.imag:+.1e}j' for t in tr)}")
        print(f"  max|N^2-I|  {sq:.2e}")
        print(f"  defect      {rep.commutator_defect:.2e}")
        print(f"  class       {rep.classification.tag.value}")


if __name__ == "__main__":
    main()
