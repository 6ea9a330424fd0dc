"""Family-sup ratios of the unknown-constant inequalities at two truncation
levels, with the relative change.  Writes CSV to stdout."""

import argparse
import csv
import sys

from hyperf.conj_su2 import ConjSU2
from hyperf.dunkl_ramirez import DunklRamirez
from hyperf.inequalities import (TestFamily, verify_duality_bound, verify_hardy_littlewood,
                                 verify_hyp, verify_paley, conjugate_exponent)


def cases(p_grid, q_grid):
    for p in p_grid:
        yield "paley", p, lambda i, f, p=p: verify_paley(i, f, p)
        yield "hl", p, lambda i, f, p=p: verify_hardy_littlewood(i, f, p)
        yield "hyp", p, lambda i, f, p=p: verify_hyp(i, f, p, (p + conjugate_exponent(p)) / 2)
    for q in q_grid:
        yield "duality", q, lambda i, f, q=q: verify_duality_bound(i, f, q)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, nargs=2, default=[40, 80])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    lo, hi = args.levels
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["instance", "inequality", "p", f"sup_{lo}", f"sup_{hi}", "rel_change"])
    for inst in (ConjSU2(), DunklRamirez("1/3"), DunklRamirez("1/4")):
        tag = inst.name + ("" if not hasattr(inst, "a") else f"(a={inst.describe()['a']})")
        for name, p, verify in cases([1.25, 4 / 3, 1.5, 1.75, 2.0], [2.0, 3.0, 4.0]):
            s_lo = verify(inst, TestFamily("random", args.seed, args.count, lo)).sup
            s_hi = verify(inst, TestFamily("random", args.seed, args.count, hi)).sup
            w.writerow([tag, name, repr(p), repr(s_lo), repr(s_hi), repr(abs(s_hi - s_lo) / s_lo)])


if __name__ == "__main__":
    main()
