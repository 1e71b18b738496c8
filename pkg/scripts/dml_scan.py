"""Linear-response probe gain of z-pumped J=1 -> J'=2 over pump strength, density and length."""

import argparse

import numpy as np

from zeeman_qo.dml import pump_steady_state_j1j2, threshold_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--wavelength", type=float, default=780.24e-9)
    ap.add_argument("--R", type=float, default=1e-3)
    ap.add_argument("--threshold", type=float, default=30.0)
    args = ap.parse_args()

    omegas = np.logspace(-2, 1, 7)
    print("steady-state ground populations (m=-1, 0, +1) and excited fraction:")
    for omega in omegas:
        pops = np.real(np.diag(pump_steady_state_j1j2(omega)))
        print(f"  omega={omega:7.3g}  {pops[0]:.5f} {pops[1]:.5f} {pops[2]:.5f}  excited {pops[3:].sum():.5f}")
    print()
    rows = threshold_scan({"omega": omegas, "n": [1e16, 1e17, 1e18], "L": [0.01, 0.1]}, args.threshold,
                          wavelength=args.wavelength, R=args.R)
    print(f"{'omega':>8} {'n':>8} {'L':>6} {'g [1/m]':>12} {'gL':>10}  lases")
    for r in rows:
        print(f"{r.scenario.scheme.omega:>8.3g} {r.scenario.n:>8.1e} {r.scenario.L:>6.2f} "
              f"{r.g:>12.4g} {r.gL:>10.4g}  {r.lases}")
    print(f"\nlasing rows: {sum(r.lases for r in rows)} of {len(rows)}")


if __name__ == "__main__":
    main()
