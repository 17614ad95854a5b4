"""Scan the mu_3 = 1 branch: which values of a = mu_5 survive, and where the others die.

    python3 scripts/a_parameter_scan.py --primes 5 7 11 13 --max-weight 14
"""

import argparse

from maxclass.classifier import classify, subtree_death


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11, 13])
    ap.add_argument("--max-weight", type=int, default=14)
    ap.add_argument("--horizon", type=int, default=60, help="how far to chase surviving values")
    args = ap.parse_args()

    for p in args.primes:
        rep = classify(p, args.max_weight, "e3-nonzero")
        alive = rep.values_at(5)
        print(f"p={p}: a-values consistent to weight {args.max_weight}: {alive}")
        for a in alive:
            prefix = next(leaf[:3] for leaf in rep.leaves if leaf[2] == a)
            w = subtree_death(p, prefix, args.horizon)
            fate = f"continues to {args.horizon}" if w is None else f"every continuation dies by weight {w}"
            print(f"  a={a}: {fate}")


if __name__ == "__main__":
    main()
