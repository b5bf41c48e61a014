"""Four-way PBW agreement on a batch of random instances, with a per-instance table."""
import argparse
import collections

from pbwdeform.acceptance import F5
from pbwdeform.core import QQ
from pbwdeform.deformation import pbw_check
from pbwdeform.samples import random_instances


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--cap", type=int, default=4)
    ap.add_argument("--f5", action="store_true", help="work over F_5 instead of Q")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    field = F5 if args.f5 else QQ
    tally = collections.Counter()
    for inst in random_instances(args.seed, args.count, field):
        rep = pbw_check(inst.A, inst.act, inst.deform, cap=args.cap, raise_on_disagreement=False)
        key = "disagree" if not rep.agree else ("pbw" if rep.passed else "not pbw")
        tally[key] += 1
        if args.verbose or key == "disagree":
            print(f"{inst.name:40s} {rep.summary()}")
    print(", ".join(f"{k}: {v}" for k, v in sorted(tally.items())))


if __name__ == "__main__":
    main()
