"""Reproduce the split at [e_{2q+1} e_2] on the branch whose first constituent has length q + 1.

    python3 scripts/lambda_branch.py --p 5 --q 5 --max-weight 200
"""

import argparse

from maxclass.classifier import verify_lambda_branch


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--max-weight", type=int, default=200)
    ap.add_argument("--death-bound", type=int, default=60)
    args = ap.parse_args()
    rep = verify_lambda_branch(args.p, args.q, args.max_weight, args.death_bound)
    print(rep.describe())
    raise SystemExit(0 if rep.ok else 1)


if __name__ == "__main__":
    main()
