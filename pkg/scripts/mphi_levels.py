"""M_phi of the power weights phi = k^-s as the truncation level grows.
CSV to stdout; each column should be nondecreasing."""

import argparse
import csv
import sys

import numpy as np

from hyperf.conj_su2 import ConjSU2
from hyperf.dunkl_ramirez import DunklRamirez
from hyperf.spectra import WeightFunction, mphi


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, nargs="+", default=[5, 10, 20, 40, 80])
    ap.add_argument("--powers", type=float, nargs="+", default=[1.5, 2.0, 3.0])
    args = ap.parse_args(argv)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["instance", "s", *[f"level_{lv}" for lv in args.levels]])
    for inst in (ConjSU2(), DunklRamirez("1/3")):
        for s in args.powers:
            row = [repr(mphi(WeightFunction(np.exp(-s * inst.log_hyperdims(lv)),
                                            inst.hyperdims(lv)))) for lv in args.levels]
            w.writerow([inst.name, s, *row])


if __name__ == "__main__":
    main()
