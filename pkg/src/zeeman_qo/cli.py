"""Command-line front end.

    zeeman-qo run CONFIG [--out PATH] [--format csv|table]
    zeeman-qo validate CONFIG
    zeeman-qo cases

Exit status is 0 on success, 1 for invalid configs or computation errors and
2 for I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace

import numpy as np

from . import burshtein, dml, pumping
from .angmom import named_polarization, projections
from .config import RunConfig, parse_config
from .errors import DomainError, ZeemanQOError
from .lindblad import TransitionScheme


def fmt(x) -> str:
    """Fixed 9-significant-digit rendering used for every CSV number."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    v = float(x)
    if v == 0:
        v = 0.0  # drop the sign of negative zero
    return format(v, ".9g")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _table(header, rows) -> str:
    cells = [list(header)] + [[fmt(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _render(header, rows, output_format, preamble=""):
    if output_format == "csv":
        return _csv(header, rows)
    return preamble + _table(header, rows)


def _m_label(m) -> str:
    return f"m={m}"


def run_pump(p: dict, output_format: str) -> str:
    scheme = TransitionScheme(p["jg"], p["je"], gamma=p["gamma"], omega=p["omega"], delta=p["delta"])
    pol = named_polarization(p["polarization"])
    n = scheme.n_ground
    pops = p["initial_populations"]
    if pops is None:
        pops = [1.0 / n] * n
    if len(pops) != n:
        raise DomainError(f"initial_populations needs {n} entries for jg={scheme.jg}, got {len(pops)}")
    report = pumping.run_pumping(scheme, pol, np.diag(pops).astype(complex), tol=p["tol"])
    header = ["quantity"] + [_m_label(m) for m in projections(scheme.jg)]
    pad = [""] * (n - 1)
    rows = [
        ["initial_populations", *pops],
        ["final_populations", *report.final_ground_populations],
        ["time_to_completion_gamma_t", report.time_to_completion, *pad],
        ["consistency_residual", report.consistency_residual, *pad],
        ["excited_population", report.excited_population, *pad],
        ["dark_state_count", len(report.dark_basis), *pad],
    ]
    preamble = ""
    if output_format == "table":
        lines = [f"Optical pumping {scheme.jg} -> {scheme.je}, polarization {p['polarization']}", ""]
        lines.append("dark states (ground basis m = " + ", ".join(str(m) for m in projections(scheme.jg)) + "):")
        for v in report.dark_basis:
            lines.append("  [" + ", ".join(f"{c.real:+.4f}{c.imag:+.4f}j" for c in v) + "]")
        if scheme.jg.value == 1 and scheme.je.value == 0 and p["polarization"] == "x":
            lines.append("")
            lines.append("candidate answers for isotropic start:")
            final = report.final_ground_populations
            for label, row in pumping.naive_answers():
                dist = np.max(np.abs(final - np.array(row, dtype=float)))
                lines.append(f"  {'/'.join(str(x) for x in row):<14} max deviation {dist:.3g}  ({label})")
        preamble = "\n".join(lines) + "\n\n"
    return _render(header, rows, output_format, preamble)


def run_burshtein(p: dict, output_format: str) -> str:
    case = int(p["case"])
    params = burshtein.case_params(case, p["omega"], p["gamma_factor"], p["small_factor"])
    series = burshtein.time_series(params, p["cycles"], p["samples"], burshtein.CASE_LABELS[case])
    header = ["rabi_cycles", "p_a", "p_b"]
    cols = [series.times, series.p_a, series.p_b]
    if params.gamma_a == params.gamma_b:
        header.append("p_b_restored")
        cols.append(burshtein.restored_envelope(2 * np.pi * series.times / params.omega, params))
    rows = list(zip(*cols))
    preamble = (
        f"Case {case}: {series.label}; omega={params.omega:g}, gamma_a={params.gamma_a:g}, "
        f"gamma_b={params.gamma_b:g} ({burshtein.classify_regime(params).value})\n\n"
    )
    return _render(header, rows, output_format, preamble)


GAIN_HEADER = ["direction", "omega", "delta", "gamma", "n", "L", "R", "wavelength",
               "g", "gL", "threshold", "lases", "saturation"]


def _gain_row(r: dml.GainReport):
    s, sc = r.scenario, r.scenario.scheme
    return [r.direction, sc.omega, sc.delta, sc.gamma, s.n, s.L, s.R, s.wavelength,
            r.g, r.gL, r.threshold, r.lases, r.saturation]


def run_dml(p: dict, output_format: str) -> str:
    rho = dml.pump_steady_state_j1j2(p["omega"], p["delta"], p["gamma"])
    direction = "backward" if p["direction"] == "both" else p["direction"]
    scenario = dml.DmlScenario(dml.pump_scheme(p["omega"], p["delta"], p["gamma"]), n=p["n"], L=p["L"],
                               R=p["R"], wavelength=p["wavelength"], direction=direction)
    if p["direction"] == "both":
        reports = dml.both_directions(scenario, rho, p["threshold"])
    else:
        reports = [dml.probe_gain(scenario, rho, p["threshold"])]
    rows = [_gain_row(r) for r in reports]
    preamble = ""
    if output_format == "table":
        lines = ["probe transitions (x-polarized probe):",
                 "  m_g   m_e   q   rho_ee - rho_gg   weight"]
        for t in reports[0].per_transition_inversions:
            lines.append(f"  {t.m_g:+.0f}    {t.m_e:+.0f}   {t.q:+d}   {t.inversion:+.6e}   {t.weight:.6f}")
        if reports[0].saturation > 0.1:
            lines.append(f"note: pump saturation {reports[0].saturation:.3g}; linear response is a rough baseline here")
        preamble = "\n".join(lines) + "\n\n"
    return _render(GAIN_HEADER, rows, output_format, preamble)


def run_scan(p: dict, output_format: str) -> str:
    grid = {"omega": p["omega"], "delta": p["delta"], "n": p["n"], "L": p["L"]}
    reports = dml.threshold_scan(grid, p["threshold"], wavelength=p["wavelength"], R=p["R"],
                                 gamma=p["gamma"], direction=p["direction"])
    return _render(GAIN_HEADER, [_gain_row(r) for r in reports], output_format)


RUNNERS = {"pump": run_pump, "burshtein": run_burshtein, "dml": run_dml, "scan": run_scan}


def render(config: RunConfig) -> str:
    return RUNNERS[config.scenario](config.parameters, config.output_format)


def cases_text() -> str:
    lines = ["Two-state decay cases (defaults: gamma_factor=10, small_factor=0.1):"]
    for c, label in burshtein.CASE_LABELS.items():
        p = burshtein.case_params(c)
        lines.append(
            f"  case {c}: {label:<36} omega=1 gamma_a={p.gamma_a:g} gamma_b={p.gamma_b:g} "
            f"[{burshtein.classify_regime(p).value}]"
        )
    lines.append("")
    lines.append("Candidate final populations, J=1 -> J'=0 pumped by x light from 1/3, 1/3, 1/3:")
    for i, (label, row) in enumerate(pumping.naive_answers(), start=1):
        lines.append(f"  {i}. {', '.join(str(x) for x in row):<14} {label}")
    lines.append("  (only the last row is the actual endpoint)")
    return "\n".join(lines) + "\n"


def _load(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeeman-qo", description="Zeeman-sublevel quantum optics scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario from a config file")
    run.add_argument("config")
    run.add_argument("--out", default=None, help="output file (default: stdout)")
    run.add_argument("--format", choices=("csv", "table"), default="csv")
    val = sub.add_parser("validate", help="check a config file without running it")
    val.add_argument("config")
    sub.add_parser("cases", help="print the decay-case presets and the candidate pumping answers")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cases":
        sys.stdout.write(cases_text())
        return 0
    try:
        config = _load(args.config)
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 2
    except ZeemanQOError as exc:
        print(f"error: {args.config}: {exc}", file=sys.stderr)
        return 1
    if args.command == "validate":
        print(f"{args.config}: valid {config.scenario} config")
        return 0

    config = replace(config, output_path=args.out, output_format=args.format)
    try:
        text = render(config)
    except ZeemanQOError as exc:
        print(f"error: {config.scenario} scenario failed: {exc}", file=sys.stderr)
        return 1
    if config.output_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {config.output_path}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
