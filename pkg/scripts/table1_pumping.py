"""Final ground populations of J=1 -> J'=0 pumped by x light, next to the three candidate answers."""

import argparse

import numpy as np

from zeeman_qo import TransitionScheme, named_polarization, run_pumping
from zeeman_qo.pumping import naive_answers


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega", type=float, nargs="+", default=[0.1, 1.0, 10.0], help="Rabi frequencies in units of gamma")
    args = ap.parse_args()

    print("candidate rows:")
    for label, row in naive_answers():
        print(f"  {', '.join(str(x) for x in row):<14} {label}")
    print()
    print(f"{'omega/gamma':>11}  {'m=-1':>10} {'m=0':>10} {'m=+1':>10}  {'gamma t':>9}  residual")
    for omega in args.omega:
        rep = run_pumping(TransitionScheme(1, 0, omega=omega), named_polarization("x"), np.eye(3) / 3)
        pops = rep.final_ground_populations
        print(f"{omega:>11g}  {pops[0]:>10.7f} {pops[1]:>10.7f} {pops[2]:>10.7f}  "
              f"{rep.time_to_completion:>9.1f}  {rep.consistency_residual:.1e}")


if __name__ == "__main__":
    main()
