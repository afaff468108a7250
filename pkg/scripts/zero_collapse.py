"""Track how the zeros of the even elliptic solution approach the lattice as |B| grows."""
import argparse
import math

from lame3.elliptic import lattice_data, reduce_to_cell
from lame3.recurrence import even_elliptic_solution, problem_params
from lame3.recurrence.zeros import elliptic_solution_zeros


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--l", type=int, default=3)
    ap.add_argument("--tau", type=complex, default=1j)
    ap.add_argument("--B", type=float, nargs="+", default=[10, 30, 100, 300, 1000, 3000, 10000])
    args = ap.parse_args()

    sol = even_elliptic_solution(problem_params(args.n, args.l))
    lat = lattice_data(args.tau)
    print(f"{'B':>8} {'max|p|':>10} {'2 sqrt(24/B)':>13} {'sqrt(B) max|p|':>15}")
    for B in args.B:
        zs = elliptic_solution_zeros(sol, B, lat)
        size = max(abs(reduce_to_cell(z, lat)) for z in zs)
        print(f"{B:>8g} {size:>10.5f} {2 * math.sqrt(24 / B):>13.5f} {math.sqrt(B) * size:>15.5f}")


if __name__ == "__main__":
    main()
