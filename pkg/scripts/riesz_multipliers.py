"""Riesz-type symbols sigma = mu^(-gamma/2) over a (p, q) grid: Hormander
functional, norm lower bound and their ratio.  CSV to stdout."""

import argparse
import csv
import sys

from hyperf.conj_su2 import ConjSU2
from hyperf.multipliers import MultiplierSymbol, check_hormander_bound, opnorm_lower_bound


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", type=int, default=20)
    ap.add_argument("--gammas", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--trials", type=int, default=1)
    args = ap.parse_args(argv)
    inst = ConjSU2()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["gamma", "p", "q", "functional", "lower_bound", "ratio"])
    for g in args.gammas:
        sigma = MultiplierSymbol.riesz(inst, args.level, g)
        for p in (4 / 3, 1.5, 2.0):
            for q in (2.0, 3.0, 4.0):
                est = opnorm_lower_bound(sigma, p, q, trials=args.trials)
                out = check_hormander_bound(sigma, p, q, est)
                w.writerow([g, repr(p), repr(q), repr(out["functional"]),
                            repr(est.lower_bound), repr(out["ratio"])])


if __name__ == "__main__":
    main()
