"""Population of state B over five Rabi cycles for the four decay cases.

Writes a CSV of all four curves; with ``--plot`` also saves a 2x2 figure
(requires matplotlib).
"""

import argparse
import csv

import numpy as np

from zeeman_qo.burshtein import four_cases, restored_envelope


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="fig2_burshtein.csv")
    ap.add_argument("--plot", default=None, help="optional image path")
    ap.add_argument("--cycles", type=float, default=5.0)
    ap.add_argument("--samples", type=int, default=1000)
    args = ap.parse_args()

    cases = four_cases(T=args.cycles, samples=args.samples)
    restored = restored_envelope(2 * np.pi * cases[3].times / cases[3].params.omega, cases[3].params)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rabi_cycles", "case1", "case2", "case3", "case4", "case4_restored"])
        for row in zip(cases[0].times, *(c.p_b for c in cases), restored):
            w.writerow([format(x, ".9g") for x in row])
    print(f"wrote {args.out}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(2, 2, figsize=(8, 6), sharex=True)
        for i, (ax, c) in enumerate(zip(axes.flat, cases), start=1):
            ax.plot(c.times, c.p_b)
            if i == 4:
                ax.plot(c.times, restored, "--", label="x exp(gamma t)")
                ax.legend()
            ax.set_title(f"case {i}: {c.label}", fontsize=9)
        for ax in axes[1]:
            ax.set_xlabel("Rabi cycles")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=120)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
