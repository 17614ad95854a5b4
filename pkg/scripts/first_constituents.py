"""Enumerate mu_3 = 0 algebras and tabulate their first-constituent lengths.

    python3 scripts/first_constituents.py --p 5 --max-weight 40
"""

import argparse
from collections import Counter

from maxclass.classifier import classify, first_length


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--max-weight", type=int, default=40)
    ap.add_argument("--certify", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    rep = classify(args.p, args.max_weight, "e3-zero", certify=args.certify, jobs=args.jobs)
    print(f"p={args.p} N={args.max_weight}: {len(rep.leaves)} sequences, {rep.nodes} nodes searched")
    counts = Counter(first_length(leaf) for leaf in rep.certified())
    for length, n in sorted(counts.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)):
        print(f"  first length {'infinite' if length is None else length}: {n} sequence(s)")
    for leaf, w in sorted(rep.edge.items()):
        print(f"  edge survivor with first length {first_length(leaf)} dies at weight {w}")
    for length, name, n in rep.groups(certified=True):
        print(f"  first length {length}: recognised as {name}, {n} sequence(s)")


if __name__ == "__main__":
    main()
