"""Benchmark harness: parameter sweeps, summaries, CSV output.

A sweep varies exactly one of the three benchmark parameters (sensor range
``sr``, target speed ``rv``, update rate ``ur``) over its standard value set
while holding the other two at their medians, repeating each cell over a
block of consecutive seeds. Seeds are shared across controllers so that
per-seed comparisons between controllers are paired.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .controllers import ControllerKind
from .engine import RunResult, SimConfig, run_simulation

SR_VALUES = (5.0, 10.0, 15.0, 20.0, 25.0)
RV_VALUES = (0.1, 0.25, 0.5, 0.75, 0.9)
UR_VALUES = (1.0, 0.5, 0.25, 0.1, 0.05)

_VALUE_SETS = {"sr": SR_VALUES, "rv": RV_VALUES, "ur": UR_VALUES}

ALL_CONTROLLERS = (
    ControllerKind.KMEANS,
    ControllerKind.HC,
    ControllerKind.HC_H,
    ControllerKind.HC_HP,
)


class HarnessError(RuntimeError):
    """A sweep could not be completed."""


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep description.

    ``varied`` names the swept parameter; ``values`` defaults to that
    parameter's standard set. ``base`` supplies every non-swept setting
    (its defaults are the benchmark medians). Each cell runs
    ``runs_per_cell`` times with seeds base_seed, base_seed + 1, ...
    """

    varied: str
    values: tuple[float, ...] = ()
    controllers: tuple[ControllerKind, ...] = ALL_CONTROLLERS
    runs_per_cell: int = 20
    base_seed: int = 0
    base: SimConfig = field(default_factory=SimConfig)

    def __post_init__(self):
        if self.varied not in _VALUE_SETS:
            raise ValueError(f"varied must be one of sr, rv, ur; got {self.varied!r}")
        allowed = _VALUE_SETS[self.varied]
        if not self.values:
            object.__setattr__(self, "values", allowed)
        for v in self.values:
            if v not in allowed:
                raise ValueError(
                    f"{self.varied}={v} is not a standard sweep value {allowed}"
                )
        if not self.controllers:
            raise ValueError("at least one controller is required")
        if self.runs_per_cell < 1:
            raise ValueError(f"runs_per_cell must be >= 1, got {self.runs_per_cell}")


@dataclass(frozen=True)
class RunRecord:
    """One completed run inside a sweep."""

    controller: ControllerKind
    varied: str
    value: float
    result: RunResult


@dataclass(frozen=True)
class CellSummary:
    """Aggregate of one (controller, value) cell: sample mean and sample
    standard deviation of the coverage index over runs."""

    controller: ControllerKind
    varied: str
    value: float
    m: float
    sd: float
    runs: int


@dataclass(frozen=True)
class SweepResult:
    varied: str
    records: tuple[RunRecord, ...]
    summaries: tuple[CellSummary, ...]


def _cell_configs(spec: SweepSpec, controller: ControllerKind, value: float) -> list[SimConfig]:
    overrides = {spec.varied: value, "controller": controller}
    return [
        replace(spec.base, seed=spec.base_seed + i, **overrides)
        for i in range(spec.runs_per_cell)
    ]


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Execute every cell of a sweep and summarize it.

    With jobs > 1 runs are distributed over worker processes; results are
    merged back in seed order, so the output is identical either way.
    """
    cells = [(ctrl, value) for ctrl in spec.controllers for value in spec.values]
    configs = [cfg for ctrl, value in cells for cfg in _cell_configs(spec, ctrl, value)]

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_simulation, cfg) for cfg in configs]
            results = []
            for cfg, fut in zip(configs, futures):
                try:
                    results.append(fut.result())
                except Exception as exc:
                    raise HarnessError(
                        f"run failed: controller={cfg.controller.value} "
                        f"{spec.varied}={getattr(cfg, spec.varied)} seed={cfg.seed}: {exc}"
                    ) from exc
    else:
        results = []
        for cfg in configs:
            try:
                results.append(run_simulation(cfg))
            except Exception as exc:
                raise HarnessError(
                    f"run failed: controller={cfg.controller.value} "
                    f"{spec.varied}={getattr(cfg, spec.varied)} seed={cfg.seed}: {exc}"
                ) from exc

    records = []
    summaries = []
    idx = 0
    for ctrl, value in cells:
        cell_results = results[idx : idx + spec.runs_per_cell]
        idx += spec.runs_per_cell
        records.extend(
            RunRecord(controller=ctrl, varied=spec.varied, value=value, result=r)
            for r in cell_results
        )
        rhos = [r.rho for r in cell_results]
        sd = statistics.stdev(rhos) if len(rhos) > 1 else 0.0
        summaries.append(
            CellSummary(
                controller=ctrl,
                varied=spec.varied,
                value=value,
                m=statistics.mean(rhos),
                sd=sd,
                runs=len(rhos),
            )
        )
    return SweepResult(varied=spec.varied, records=tuple(records), summaries=tuple(summaries))


def _fmt_value(v: float) -> str:
    return f"{v:g}"


def emit_csv(result: SweepResult, out_dir: Path | str) -> tuple[Path, Path]:
    """Write per-run and summary CSVs for a sweep; returns their paths.

    Files are UTF-8 with LF line endings; floating-point statistics carry
    six digits after the decimal point.
    """
    if not result.records:
        raise ValueError("sweep produced no records; nothing to write")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    runs_path = out / f"{result.varied}_runs.csv"
    summary_path = out / f"{result.varied}_summary.csv"

    with open(runs_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["controller", "varied_param", "value", "sr", "rv", "ur", "seed", "rho", "wall_time_s"]
        )
        for rec in result.records:
            cfg = rec.result.config
            writer.writerow(
                [
                    rec.controller.value,
                    rec.varied,
                    _fmt_value(rec.value),
                    _fmt_value(cfg.sr),
                    _fmt_value(cfg.rv),
                    _fmt_value(cfg.ur),
                    rec.result.seed,
                    f"{rec.result.rho:.6f}",
                    f"{rec.result.wall_time:.6f}",
                ]
            )

    with open(summary_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["controller", "varied_param", "value", "m", "sd", "runs"])
        for cell in result.summaries:
            writer.writerow(
                [
                    cell.controller.value,
                    cell.varied,
                    _fmt_value(cell.value),
                    f"{cell.m:.6f}",
                    f"{cell.sd:.6f}",
                    cell.runs,
                ]
            )

    return runs_path, summary_path


_PLOT_TEMPLATE = '''"""Chart generator for a sweep summary CSV (auto-generated)."""

import csv
import sys
from collections import defaultdict
from pathlib import Path

SUMMARY_CSV = Path({csv_path!r})


def main() -> int:
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is required to draw the charts", file=sys.stderr)
        return 1

    by_param = defaultdict(lambda: defaultdict(list))
    with open(SUMMARY_CSV, encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            by_param[row["varied_param"]][row["controller"]].append(
                (float(row["value"]), float(row["m"]), float(row["sd"]))
            )

    for param, series in by_param.items():
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for controller, rows in series.items():
            rows.sort()
            xs = [r[0] for r in rows]
            ms = [r[1] for r in rows]
            sds = [r[2] for r in rows]
            ax.errorbar(xs, ms, yerr=sds, marker="o", capsize=3, label=controller)
        ax.set_xlabel(param)
        ax.set_ylabel("mean coverage index")
        ax.set_ylim(0.0, 1.0)
        ax.grid(True, alpha=0.3)
        ax.legend()
        out = SUMMARY_CSV.parent / f"rho_vs_{{param}}.png"
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
'''


def emit_plot_script(summary_csv: Path | str, out_path: Path | str | None = None) -> Path:
    """Write a standalone script that charts a summary CSV; returns its path.

    The script depends only on matplotlib and the CSV it was generated for;
    regenerating from the same CSV yields identical bytes.
    """
    summary = Path(summary_csv)
    if not summary.is_file():
        raise FileNotFoundError(f"summary CSV not found: {summary}")
    out = Path(out_path) if out_path is not None else summary.with_name(summary.stem + "_plot.py")
    out.write_text(_PLOT_TEMPLATE.format(csv_path=str(summary)), encoding="utf-8")
    return out
