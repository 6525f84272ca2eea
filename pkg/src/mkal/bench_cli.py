"""Benchmark harness and command-line entry point.

Runs criterion x budget x trial cells of the active-learning experiment,
measures test MSE on the never-labeled remainder, and renders csv/json/
markdown comparison reports.  Within a trial every criterion sees the same
feature-map draw (the map seed depends only on master seed and trial), so
criteria are compared on paired randomness; the selection rng additionally
keys on the criterion so the random baseline has its own stream.
"""

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import batch_solver
from .active_loop import run
from .criteria import CRITERIA
from .data import (
    Dataset,
    ExperimentConfig,
    budget_from_fraction,
    evaluation_indices,
    load_csv,
    standardize,
    subsample,
    synthetic,
)
from .seeding import derive_seed

CRITERION_LABELS = {"random": "Random", "qbc": "QBC", "emc": "EMC",
                    "ekl": "EKL", "ekd": "EKD"}
REPORT_FORMATS = ("csv", "json", "markdown")


def trial_map_seed(master_seed, trial):
    """Feature-map seed for one trial; shared by all criteria and budgets."""
    return derive_seed(master_seed, "trial", trial)


def trial_rng_seed(master_seed, trial, criterion):
    """Selection-rng seed; per-criterion so the random baseline is independent."""
    return derive_seed(master_seed, "trial", trial, "criterion", criterion)


@dataclass
class TrialResult:
    criterion: str
    budget_fraction: float
    trial: int
    mse: float
    wall_time_s: float
    selection_digest: str
    predictions: np.ndarray = None  # in-memory only, never serialized

    def to_dict(self):
        return {
            "criterion": self.criterion,
            "budget_fraction": self.budget_fraction,
            "trial": self.trial,
            "mse": self.mse,
            "wall_time_s": self.wall_time_s,
            "selection_digest": self.selection_digest,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            criterion=d["criterion"],
            budget_fraction=float(d["budget_fraction"]),
            trial=int(d["trial"]),
            mse=float(d["mse"]),
            wall_time_s=float(d["wall_time_s"]),
            selection_digest=d["selection_digest"],
        )


@dataclass
class RunReport:
    """Per-trial results for every configured (criterion, budget) cell."""

    dataset: str
    config: dict
    results: list
    transform: dict = None

    def cell(self, criterion, fraction):
        return [r for r in self.results
                if r.criterion == criterion and r.budget_fraction == fraction]

    def cell_stats(self, criterion, fraction):
        """(mean, sd) of the cell's MSE values; sd is 0 for a single trial."""
        values = [r.mse for r in self.cell(criterion, fraction)]
        if not values:
            raise KeyError(f"no results for cell ({criterion}, {fraction})")
        mean = float(np.mean(values))
        sd = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
        return mean, sd

    def criteria(self):
        """Configured criteria in report row order."""
        present = {r.criterion for r in self.results}
        return [c for c in CRITERIA if c in present]

    def budget_fractions(self):
        return sorted({r.budget_fraction for r in self.results})

    def sorted_results(self):
        return sorted(
            self.results,
            key=lambda r: (CRITERIA.index(r.criterion), r.budget_fraction, r.trial),
        )

    def to_dict(self):
        return {
            "dataset": self.dataset,
            "config": self.config,
            "results": [r.to_dict() for r in self.sorted_results()],
            "transform": self.transform,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            dataset=d["dataset"],
            config=d["config"],
            results=[TrialResult.from_dict(r) for r in d["results"]],
            transform=d.get("transform"),
        )


def _selection_digest(labeled):
    data = np.asarray(labeled, dtype="<i8").tobytes()
    return hashlib.sha256(data).hexdigest()


def run_cell_trial(ds, config, criterion, fraction, trial, store_predictions=False):
    """One (criterion, budget, trial) cell: AL run, inference, test MSE."""
    budget = budget_from_fraction(fraction, ds.num_samples)
    start = time.perf_counter()
    ensemble, pool, _ = run(
        ds, config,
        criterion=criterion,
        budget=budget,
        map_seed=trial_map_seed(config.seed, trial),
        rng_seed=trial_rng_seed(config.seed, trial, criterion),
    )
    eval_idx = evaluation_indices(ds.num_samples, pool.labeled)
    X_eval = ds.features[eval_idx]
    y_eval = ds.labels[eval_idx]
    if config.inference == "supervised":
        maps = [m.map for m in ensemble.models]
        bfit = batch_solver.fit(
            maps, ds.features[pool.labeled], ds.labels[pool.labeled],
            config.eta_g, ridge=config.ridge,
        )
        preds = batch_solver.batch_predict_matrix(bfit, maps, X_eval)
    else:
        preds = batch_solver.online_predict_matrix(ensemble, X_eval)
    mse = float(np.mean((preds - y_eval) ** 2))
    return TrialResult(
        criterion=criterion,
        budget_fraction=fraction,
        trial=trial,
        mse=mse,
        wall_time_s=time.perf_counter() - start,
        selection_digest=_selection_digest(pool.labeled),
        predictions=preds if store_predictions else None,
    )


def _cell_trial_task(args):
    return run_cell_trial(*args)


def run_experiment(config, dataset, store_predictions=False):
    """Run every configured cell for ``trials`` repetitions; returns a report.

    The master seed fixes everything: per-trial map seeds, per-criterion
    selection rngs, and therefore the full report.
    """
    transform_dict = None
    if config.standardize:
        dataset, record = standardize(dataset)
        transform_dict = record.to_dict()
    for fraction in config.budget_fractions:
        budget_from_fraction(fraction, dataset.num_samples)

    tasks = [
        (dataset, config, criterion, fraction, trial, store_predictions)
        for criterion in config.criteria
        for fraction in config.budget_fractions
        for trial in range(config.trials)
    ]
    if config.parallel > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.parallel) as pool:
            results = list(pool.map(_cell_trial_task, tasks))
    else:
        results = [_cell_trial_task(t) for t in tasks]

    return RunReport(
        dataset=dataset.name,
        config=config.to_dict(),
        results=results,
        transform=transform_dict,
    )


def emit_report(report, fmt):
    """Render a report as csv, json or markdown text (deterministic)."""
    if not report.results:
        raise ValueError("report has no trial results")
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        lines = ["criterion,budget_fraction,trial,mse,mse_mean,mse_sd,selection_digest"]
        for r in report.sorted_results():
            mean, sd = report.cell_stats(r.criterion, r.budget_fraction)
            lines.append(
                f"{r.criterion},{r.budget_fraction!r},{r.trial},{r.mse!r},"
                f"{mean!r},{sd!r},{r.selection_digest}"
            )
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        fractions = report.budget_fractions()
        header = "| Criterion | " + " | ".join(f"{f:.10g}" for f in fractions) + " |"
        rule = "|---" * (len(fractions) + 1) + "|"
        lines = [f"Test MSE on {report.dataset} (mean ± sd over trials)", "", header, rule]
        for criterion in report.criteria():
            cells = []
            for f in fractions:
                mean, sd = report.cell_stats(criterion, f)
                cells.append(f"{mean:.6g} ± {sd:.3g}")
            lines.append(
                f"| {CRITERION_LABELS[criterion]} | " + " | ".join(cells) + " |"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r} (choose from {REPORT_FORMATS})")


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

_CONFIG_DEFAULTS = {
    "criterion": list(CRITERIA),
    "budget_fraction": [0.2, 0.25],
    "trials": 10,
    "num_kernels": 10,
    "rf_dim": 50,
    "eta_l": 0.05,
    "eta_g": 1.0,
    "ridge": 1e-8,
    "inference": "online",
    "seed": 0,
    "format": "markdown",
    "parallel": 1,
    "no_standardize": False,
    "label_column": None,
    "subsample": None,
    "out": None,
    "dataset": None,
    "synthetic_m": 500,
    "synthetic_d": 1,
    "synthetic_noise_sd": 0.0,
}


def _build_parser():
    p = argparse.ArgumentParser(
        prog="mkal-bench",
        description="Benchmark active-learning selection criteria on a dataset.",
    )
    p.add_argument("--dataset", help="CSV path or synthetic:{single-kernel,sinc,step}")
    p.add_argument("--label-column", help="label column name or 0-based index")
    p.add_argument("--criterion", action="append", choices=CRITERIA,
                   help="repeatable; default: all five")
    p.add_argument("--budget-fraction", action="append", type=float,
                   help="repeatable; default: 0.2 and 0.25")
    p.add_argument("--trials", type=int)
    p.add_argument("--num-kernels", type=int)
    p.add_argument("--rf-dim", type=int)
    p.add_argument("--eta-l", type=float)
    p.add_argument("--eta-g", type=float)
    p.add_argument("--ridge", type=float)
    p.add_argument("--inference", choices=("online", "supervised"))
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=REPORT_FORMATS)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--subsample", type=int, help="seeded uniform subsample to this size")
    p.add_argument("--no-standardize", action="store_true", default=None)
    p.add_argument("--parallel", type=int, help="worker processes for trials")
    p.add_argument("--config", help="JSON file with any of the above options")
    p.add_argument("--synthetic-m", type=int, help="synthetic dataset size")
    p.add_argument("--synthetic-d", type=int, help="synthetic input dimension")
    p.add_argument("--synthetic-noise-sd", type=float, help="synthetic label noise")
    return p


def _merge_options(args):
    """Defaults < config file < explicit flags."""
    merged = dict(_CONFIG_DEFAULTS)
    if args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            file_opts = json.load(fh)
        unknown = set(file_opts) - set(_CONFIG_DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_opts)
    for key in _CONFIG_DEFAULTS:
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    return merged


def _resolve_dataset(opts):
    spec = opts["dataset"]
    if spec is None:
        raise ValueError("no dataset given (use --dataset or a config file)")
    if spec.startswith("synthetic:"):
        kind = spec.split(":", 1)[1]
        ds = synthetic(
            kind,
            opts["synthetic_m"],
            opts["synthetic_d"],
            opts["synthetic_noise_sd"],
            seed=derive_seed(opts["seed"], "data"),
        )
    else:
        if opts["label_column"] is None:
            raise ValueError("--label-column is required for CSV datasets")
        ds = load_csv(spec, opts["label_column"])
    if opts["subsample"] is not None and opts["subsample"] < ds.num_samples:
        ds = subsample(ds, opts["subsample"], seed=derive_seed(opts["seed"], "subsample"))
    return ds


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        opts = _merge_options(args)
        config = ExperimentConfig(
            criteria=tuple(opts["criterion"]),
            budget_fractions=tuple(opts["budget_fraction"]),
            num_kernels=opts["num_kernels"],
            rf_dim=opts["rf_dim"],
            eta_l=opts["eta_l"],
            eta_g=opts["eta_g"],
            ridge=opts["ridge"],
            trials=opts["trials"],
            seed=opts["seed"],
            inference=opts["inference"],
            standardize=not opts["no_standardize"],
            parallel=opts["parallel"],
        )
        dataset = _resolve_dataset(opts)
        report = run_experiment(config, dataset)
        text = emit_report(report, opts["format"])
        if opts["out"]:
            with open(opts["out"], "w", encoding="utf-8") as fh:
                fh.write(text)
            if report.transform is not None and opts["format"] != "json":
                with open(opts["out"] + ".transform.json", "w", encoding="utf-8") as fh:
                    json.dump(report.transform, fh, sort_keys=True, indent=2)
                    fh.write("\n")
        else:
            sys.stdout.write(text)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        json.dump(
            {"error": {"type": type(exc).__name__, "message": str(exc)}},
            sys.stderr,
        )
        sys.stderr.write("\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
