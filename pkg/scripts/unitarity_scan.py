"""Search for an accessory parameter with unitary monodromy for an even-n problem."""
import argparse
import json

from lame3.elliptic import lattice_data
from lame3.monodromy import GridSpec, unitarity_search
from lame3.recurrence import problem_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--l", type=int, default=1)
    ap.add_argument("--tau", type=complex, default=0.5 + 0.866j)
    ap.add_argument("--box", type=float, nargs=4, default=[-20, 20, -20, 20],
                    metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    ap.add_argument("--res", type=int, default=7)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    grid = GridSpec(*args.box, n_re=args.res, n_im=args.res)
    res = unitarity_search(problem_params(args.n, args.l), lattice_data(args.tau), grid, seeds=args.seeds)
    print(json.dumps(res.to_dict(), indent=2))


if __name__ == "__main__":
    main()
