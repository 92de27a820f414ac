"""``dirac-trap`` command line: eigen data, time evolution, sweeps and figure data.

Exit codes: 0 success, 2 parameter error, 3 degenerate regime.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .dirac import PlanarConfig
from .dynamics import DEFAULT_STEPS, DEFAULT_T_MAX, probability_matrix, time_grid
from .entanglement import chirality, concurrence, correlation_series
from .errors import DegenerateInvariant, DiracTrapError, ZeroEigenvalue
from .spectrum import LABELS, MODES, coefficients_from_density, eigensystem

EXIT_PARAM = 2
EXIT_DEGENERATE = 3

SWEEP_AXES = ("m", "p", "eps", "theta", "kappa", "mu", "m_over_p")
FIGURE_PAIRS = ((0.0, 1.0), (1.0, 0.0), (1.0, 1.0))
FIGURE_MASSES = (0.0, 1.0)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    lo: float
    hi: float
    n: int
    log: bool = False

    def values(self) -> np.ndarray:
        if self.log:
            return np.logspace(np.log10(self.lo), np.log10(self.hi), self.n)
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class RunConfig:
    command: str
    planar: PlanarConfig
    mode: tuple = (0, 0)
    init: str = "a"
    t_max: float = DEFAULT_T_MAX
    steps: int = DEFAULT_STEPS
    sweep: SweepSpec | None = None
    figure: int | None = None
    fmt: str = "csv"
    out: str | None = None
    oracle: bool = False

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("--steps must be at least 2")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ValueError("--tmax must be positive")


def parse_sweep(text: str) -> SweepSpec:
    """``axis=lo:hi:n`` with an optional ``:log`` suffix."""
    try:
        axis, rng = text.split("=", 1)
        parts = rng.split(":")
        log = len(parts) == 4 and parts[3] == "log"
        if len(parts) not in (3, 4) or (len(parts) == 4 and not log):
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"bad sweep spec {text!r}; expected axis=lo:hi:n[:log]") from None
    if axis not in SWEEP_AXES:
        raise ValueError(f"sweep axis must be one of {SWEEP_AXES}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or n < 2:
        raise ValueError("sweep range must be finite with at least 2 points")
    if log and (lo <= 0 or hi <= 0):
        raise ValueError("log sweeps need positive bounds")
    return SweepSpec(axis, lo, hi, n, log)


def _with_axis(cfg: PlanarConfig, axis: str, value: float) -> PlanarConfig:
    if axis == "m_over_p":
        return replace(cfg, m=value * cfg.p)
    return replace(cfg, **{axis: value})


def _planar_echo(cfg: PlanarConfig) -> dict:
    return {"m": cfg.m, "p": cfg.p, "eps": cfg.eps, "theta": cfg.theta, "kappa": cfg.kappa, "mu": cfg.mu}


def eigen_rows(planar: PlanarConfig, oracle: bool = False) -> list:
    sys_ = eigensystem(planar, oracle=oracle)
    rows = []
    for k, (n, s) in enumerate(MODES):
        rho = sys_.rhos[k]
        co = coefficients_from_density(rho)
        row = {"n": n, "s": s, "lambda": float(sys_.lambdas[k])}
        for i, lab in enumerate(LABELS):
            row[f"mod_{lab}"] = float(co.moduli[i])
        for i, lab in enumerate(LABELS):
            ok = bool(co.defined[i])
            row[f"phase_{lab}"] = complex(co.phases[i]) if ok else None
        row["anchor"] = LABELS[co.anchor]
        row["concurrence"] = concurrence(rho)
        row["chirality"] = chirality(rho)
        row["degenerate"] = int(sys_.degenerate)
        rows.append(row)
    return rows


def run_eigen(cfg: RunConfig) -> list:
    return [dict(_planar_echo(cfg.planar), **row) for row in eigen_rows(cfg.planar, cfg.oracle)]


def evolve_rows(planar: PlanarConfig, init: str, grid, oracle: bool = False) -> list:
    sys_ = eigensystem(planar, oracle=oracle)
    probs = probability_matrix(sys_, init, grid)
    reports = correlation_series(sys_, init, grid).values
    rows = []
    for pt, pr, rep in zip(grid, probs, reports):
        row = {"pt": float(pt)}
        row.update({f"P_{lab}": float(x) for lab, x in zip(LABELS, pr)})
        row.update(rep._asdict())
        rows.append(row)
    return rows


def run_evolve(cfg: RunConfig) -> list:
    return evolve_rows(cfg.planar, cfg.init, time_grid(cfg.t_max, cfg.steps), cfg.oracle)


def run_sweep(cfg: RunConfig) -> list:
    if cfg.sweep is None:
        raise ValueError("sweep needs --sweep axis=lo:hi:n")
    rows = []
    for value in cfg.sweep.values():
        planar = _with_axis(cfg.planar, cfg.sweep.axis, float(value))
        for row in eigen_rows(planar, cfg.oracle):
            rows.append({
                cfg.sweep.axis: float(value),
                "n": row["n"],
                "s": row["s"],
                "lambda": row["lambda"],
                "concurrence": row["concurrence"],
                "chirality": row["chirality"],
            })
    return rows


def _tag(kappa, mu, m=None) -> str:
    tag = f"k{kappa:g}_mu{mu:g}"
    return tag if m is None else f"m{m:g}_{tag}"


def figure_panels(fig: int, base: PlanarConfig, t_max=DEFAULT_T_MAX, steps=DEFAULT_STEPS) -> dict:
    """Panel name -> list of row dicts for one of the four figures."""
    eps = base.eps
    panels = {}
    if fig == 1:
        ratios = np.logspace(-3, 3, 200)
        thetas = np.deg2rad(np.arange(1, 180))
        for s in (0, 1):
            mode = (0, s)
            by_ratio = [{"m_over_p": float(r)} for r in ratios]
            by_theta = [{"theta": float(t)} for t in thetas]
            for kappa, mu in FIGURE_PAIRS:
                tag = _tag(kappa, mu)
                for row, r in zip(by_ratio, ratios):
                    cfg = PlanarConfig(m=float(r), p=1.0, eps=eps, theta=np.pi / 4, kappa=kappa, mu=mu)
                    _fill_eigen(row, cfg, mode, tag)
                for row, t in zip(by_theta, thetas):
                    cfg = PlanarConfig(m=1.0, p=1.0, eps=eps, theta=float(t), kappa=kappa, mu=mu)
                    _fill_eigen(row, cfg, mode, tag)
            panels[f"fig1_m_over_p_s{s}"] = by_ratio
            panels[f"fig1_theta_s{s}"] = by_theta
        return panels

    grid = time_grid(t_max, steps)
    if fig == 2:
        cols = {lab: [{"pt": float(t)} for t in grid] for lab in LABELS}
        for m in FIGURE_MASSES:
            for kappa, mu in FIGURE_PAIRS:
                cfg = PlanarConfig(m=m, p=1.0, eps=eps, theta=np.pi / 4, kappa=kappa, mu=mu)
                probs = probability_matrix(eigensystem(cfg), "a", grid)
                for i, lab in enumerate(LABELS):
                    for row, val in zip(cols[lab], probs[:, i]):
                        row[_tag(kappa, mu, m)] = float(val)
        return {f"fig2_P_a_to_{lab}": rows for lab, rows in cols.items()}
    if fig == 3:
        for m in FIGURE_MASSES:
            cfg = PlanarConfig(m=m, p=1.0, eps=eps, theta=np.pi / 4, kappa=1.0, mu=1.0)
            sys_ = eigensystem(cfg)
            paa = probability_matrix(sys_, "a", grid)[:, 0]
            pdd = probability_matrix(sys_, "d", grid)[:, 3]
            panels[f"fig3_m{m:g}"] = [
                {"pt": float(t), "P_aa": float(x), "P_dd": float(y)} for t, x, y in zip(grid, paa, pdd)
            ]
        return panels
    if fig == 4:
        conc = [{"pt": float(t)} for t in grid]
        chir = [{"pt": float(t)} for t in grid]
        for m in FIGURE_MASSES:
            for kappa, mu in FIGURE_PAIRS:
                cfg = PlanarConfig(m=m, p=1.0, eps=eps, theta=np.pi / 4, kappa=kappa, mu=mu)
                reports = correlation_series(eigensystem(cfg), "a", grid).values
                tag = _tag(kappa, mu, m)
                for rc, rx, rep in zip(conc, chir, reports):
                    rc[tag] = rep.concurrence
                    rx[tag] = rep.chirality
        return {"fig4_concurrence": conc, "fig4_chirality": chir}
    raise ValueError(f"figure id must be 1..4, got {fig}")


def _fill_eigen(row: dict, cfg: PlanarConfig, mode, tag: str):
    sys_ = eigensystem(cfg)
    rho = sys_.rhos[MODES.index(mode)]
    row[f"C_{tag}"] = concurrence(rho)
    row[f"abs_chirality_{tag}"] = abs(chirality(rho))


# -- serialization -----------------------------------------------------------

def fmt_number(x) -> str:
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _csv_columns(rows: list) -> list:
    cols = []
    for key, val in rows[0].items():
        if isinstance(val, complex) or (val is None and key.startswith("phase_")):
            cols += [f"{key}_re", f"{key}_im", f"{key}_defined"]
        else:
            cols.append(key)
    return cols


def _csv_cells(row: dict) -> list:
    cells = []
    for key, val in row.items():
        if key.startswith("phase_"):
            if val is None:
                cells += ["0.0", "0.0", "0"]
            else:
                cells += [fmt_number(val.real), fmt_number(val.imag), "1"]
        elif isinstance(val, str):
            cells.append(val)
        else:
            cells.append(fmt_number(val))
    return cells


def to_csv(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(_csv_columns(rows))
        for row in rows:
            writer.writerow(_csv_cells(row))
    return buf.getvalue()


def _json_value(val):
    if isinstance(val, complex):
        return [float(val.real), float(val.imag)]
    if isinstance(val, (np.integer,)):
        return int(val)
    if isinstance(val, (np.floating,)):
        return float(val)
    return val


def to_json(rows: list) -> str:
    return json.dumps([{k: _json_value(v) for k, v in row.items()} for row in rows], indent=1) + "\n"


def render(rows: list, fmt: str) -> str:
    return to_json(rows) if fmt == "json" else to_csv(rows)


# -- argument handling -------------------------------------------------------

def _mode(text: str) -> tuple:
    try:
        n, s = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("mode must look like n,s") from None
    if n not in (0, 1) or s not in (0, 1):
        raise argparse.ArgumentTypeError("mode indices must be 0 or 1")
    return (n, s)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-trap",
        description="Transition probabilities, concurrence and chirality of a "
        "four-level trapped ion driven by a Dirac-like Hamiltonian.",
    )
    parser.add_argument("command", choices=("eigen", "evolve", "sweep", "figure"))
    parser.add_argument("figure_id", nargs="?", type=int, help="figure number 1..4 (figure command)")
    parser.add_argument("--m", type=float, default=1.0)
    parser.add_argument("--p", type=float, default=1.0)
    parser.add_argument("--eps", type=float, default=1.0)
    parser.add_argument("--theta", type=float, default=math.pi / 4)
    parser.add_argument("--kappa", type=float, default=1.0)
    parser.add_argument("--mu", type=float, default=1.0)
    parser.add_argument("--mode", type=_mode, default=(0, 0))
    parser.add_argument("--init", choices=LABELS, default="a")
    parser.add_argument("--tmax", type=float, default=DEFAULT_T_MAX, help="grid extent in p·t units")
    parser.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    parser.add_argument("--sweep", type=str, default=None, help="axis=lo:hi:n[:log]")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=str, default=None,
                        help="output file (directory for the figure command)")
    parser.add_argument("--oracle", action="store_true",
                        help="fall back to brute-force eigenvectors at degenerate points")
    return parser


def config_from_args(args) -> RunConfig:
    planar = PlanarConfig(m=args.m, p=args.p, eps=args.eps, theta=args.theta, kappa=args.kappa, mu=args.mu)
    return RunConfig(
        command=args.command,
        planar=planar,
        mode=args.mode,
        init=args.init,
        t_max=args.tmax,
        steps=args.steps,
        sweep=parse_sweep(args.sweep) if args.sweep else None,
        figure=args.figure_id,
        fmt=args.fmt,
        out=args.out,
        oracle=args.oracle,
    )


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def run(cfg: RunConfig) -> None:
    if cfg.command == "figure":
        if cfg.figure is None:
            raise ValueError("figure needs an id 1..4")
        panels = figure_panels(cfg.figure, cfg.planar, cfg.t_max, cfg.steps)
        outdir = Path(cfg.out or ".")
        outdir.mkdir(parents=True, exist_ok=True)
        ext = "json" if cfg.fmt == "json" else "csv"
        for name, rows in panels.items():
            (outdir / f"{name}.{ext}").write_text(render(rows, cfg.fmt), encoding="utf-8")
        return
    runner = {"eigen": run_eigen, "evolve": run_evolve, "sweep": run_sweep}[cfg.command]
    _emit(render(runner(cfg), cfg.fmt), cfg.out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        run(cfg)
    except (DegenerateInvariant, ZeroEigenvalue) as exc:
        print(f"dirac-trap: {exc}\nhint: re-run with --oracle for brute-force eigenvectors", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DiracTrapError, ValueError) as exc:
        print(f"dirac-trap: {exc}", file=sys.stderr)
        return EXIT_PARAM
    return 0


if __name__ == "__main__":
    sys.exit(main())
