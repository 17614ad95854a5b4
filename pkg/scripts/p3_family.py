"""Characteristic 3: check that each mu_5 = lambda branch is the algebra L(lambda).

    python3 scripts/p3_family.py --max-weight 100
"""

import argparse

from maxclass.classifier import verify_p3_family, verify_presentation_m2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-weight", type=int, default=100)
    ap.add_argument("--certify", type=int, default=10)
    args = ap.parse_args()
    fam = verify_p3_family(args.max_weight, args.certify)
    pres = verify_presentation_m2(3, min(args.max_weight, 60), args.certify)
    print(fam.describe())
    print(pres.describe())
    raise SystemExit(0 if fam.ok and pres.ok else 1)


if __name__ == "__main__":
    main()
