# adaptive_cholesky_gp/cli/app.py
"""
CLIのエントリポイント。
サブコマンドを解析し、設定（YAMLとフラグ）を組み立てて各実験ランナーを呼び出します。
"""
import argparse
import csv
import itertools
import logging
import sys
from typing import List, Optional, Sequence

from adaptive_cholesky_gp.common.errors import AcgpError
from adaptive_cholesky_gp.common.types import AlphaMode, CorrelationMode, EstimatorMode, UpperQuadMode
from adaptive_cholesky_gp.config.builder import ExperimentBuilder
from adaptive_cholesky_gp.config.loader import ConfigLoader
from adaptive_cholesky_gp.config.models import ExperimentConfig
from adaptive_cholesky_gp.kernels.families import parse_family
from adaptive_cholesky_gp.loader.dataset import Dataset
from adaptive_cholesky_gp.loader.loader import SYNTHETIC_PREFIX, LoaderFactory
from adaptive_cholesky_gp.loader.synthetic import SYNTHETIC_KINDS, gen_synthetic
from .experiments import (CurveSetting, run_benchmark, run_bound_sweep, run_fit, run_lml_curve, run_tune,
                          summarize_benchmark)
from .records import merge_record_files, write_records

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML experiment file")
    parser.add_argument("--out", help="output CSV path")
    parser.add_argument("--seed", type=int, help="random seed for shuffling and synthetic data")
    parser.add_argument("--memory-cap", type=int, help="largest factor buffer side, in points")
    parser.add_argument("--no-timing", action="store_true", help="leave timing columns empty")


def _add_data(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--csv", help="numeric CSV or TSV dataset")
    parser.add_argument("--synthetic", choices=SYNTHETIC_KINDS, help="synthetic dataset kind")
    parser.add_argument("--n", type=int, help="number of synthetic points")
    parser.add_argument("--target-col", help="target column (index or header name)")
    parser.add_argument("--split", type=float, help="training fraction")


def _add_kernel(parser: argparse.ArgumentParser, multi: bool = False) -> None:
    nargs = "+" if multi else None
    parser.add_argument("--kernel", nargs=nargs, help="kernel family: se, ou, matern32, matern52")
    parser.add_argument("--log-lengthscale", type=float, nargs=nargs)
    parser.add_argument("--log-amplitude", type=float)
    parser.add_argument("--sigma2", type=float, help="noise variance")


def _add_stop(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--block-size", type=int)
    parser.add_argument("--rtol", type=float, help="relative error target (0 disables stopping)")
    parser.add_argument("--max-n", type=int)
    parser.add_argument("--estimator", choices=[m.value for m in EstimatorMode])
    parser.add_argument("--alpha-mode", choices=[m.value for m in AlphaMode])
    parser.add_argument("--uq-mode", choices=[m.value for m in UpperQuadMode])
    parser.add_argument("--correlation-mode", choices=[m.value for m in CorrelationMode])
    parser.add_argument("--jitter", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acgp", description="Adaptive Cholesky Gaussian process experiments")
    parser.add_argument("--log-level", default="WARNING", help="logging level (default: WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("bound-sweep", help="record per-block bounds against exact values")
    _add_common(sweep)
    _add_data(sweep)
    _add_kernel(sweep, multi=True)
    _add_stop(sweep)
    sweep.add_argument("--seeds", type=int, nargs="+", help="shuffle seeds")

    curve = sub.add_parser("lml-curve", help="partial log-marginal likelihood against training size")
    _add_common(curve)
    _add_data(curve)
    _add_kernel(curve, multi=True)

    fit = sub.add_parser("fit", help="run with early stopping and report test RMSE")
    _add_common(fit)
    _add_data(fit)
    _add_kernel(fit)
    _add_stop(fit)
    fit.add_argument("--exact", action="store_true", help="also compute the exact LML and RMSE")

    tune_cmd = sub.add_parser("tune", help="tune hyperparameters against the estimated LML")
    _add_common(tune_cmd)
    _add_data(tune_cmd)
    _add_kernel(tune_cmd)
    _add_stop(tune_cmd)
    tune_cmd.add_argument("--max-restarts", type=int)
    tune_cmd.add_argument("--max-steps", type=int)
    tune_cmd.add_argument("--time-budget", type=float, help="seconds")
    tune_cmd.add_argument("--exact-cap", type=int, help="points used for exact LML along the trajectory")
    tune_cmd.add_argument("--freeze", nargs="+", choices=["log_lengthscale", "log_amplitude", "log_noise"])

    gen = sub.add_parser("gen-data", help="write a synthetic dataset as CSV")
    _add_common(gen)
    gen.add_argument("--kind", choices=SYNTHETIC_KINDS, required=True)
    gen.add_argument("--n", type=int, required=True)

    bench = sub.add_parser("bench", help="time bound evaluation against block factorization")
    _add_common(bench)
    bench.add_argument("--n", type=int, default=8192)
    bench.add_argument("--block-sizes", type=int, nargs="+", default=[128, 256, 512, 1024])
    bench.add_argument("--kernel", default="matern52")

    merge = sub.add_parser("merge", help="merge result files in sorted key order")
    merge.add_argument("inputs", nargs="+")
    merge.add_argument("--out", required=True)
    return parser


def _first(value):
    return value[0] if isinstance(value, list) else value


# @intent:responsibility YAML（または既定値）の設定にフラグの値を上書きします。フラグが優先です。
def merge_args(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    def take(name: str):
        return getattr(args, name, None)

    kernel, stop, tune, data = config.kernel, config.stop, config.tune, config.data
    if take("kernel") is not None:
        kernel.family = _first(take("kernel"))
    if take("log_lengthscale") is not None:
        kernel.log_lengthscale = _first(take("log_lengthscale"))
    for attr in ("log_amplitude", "sigma2"):
        if take(attr) is not None:
            setattr(kernel, attr, take(attr))
    for attr in ("rtol", "block_size", "max_n", "estimator", "alpha_mode", "uq_mode", "correlation_mode", "jitter"):
        if take(attr) is not None:
            setattr(stop, attr, take(attr))
    if take("estimator") is not None:
        tune.estimator = take("estimator")
    for flag, attr in (("max_restarts", "max_restarts"), ("max_steps", "max_steps_per_restart"),
                       ("time_budget", "time_budget"), ("exact_cap", "exact_eval_cap"), ("freeze", "frozen")):
        if take(flag) is not None:
            setattr(tune, attr, take(flag))
    if take("csv") is not None:
        data.source = take("csv")
    if take("synthetic") is not None:
        data.source = SYNTHETIC_PREFIX + take("synthetic")
    if take("target_col") is not None:
        target = take("target_col")
        data.target_column = int(target) if target.lstrip("-").isdigit() else target
    for flag, attr in (("split", "split"), ("seed", "seed"), ("n", "n")):
        if take(flag) is not None:
            setattr(data, attr, take(flag))
    if take("seeds") is not None:
        config.seeds = list(take("seeds"))
    elif take("seed") is not None:
        config.seeds = [take("seed")]
    if take("memory_cap") is not None:
        config.memory_cap = take("memory_cap")
    return config


def _load_data(config: ExperimentConfig):
    source = config.data.source
    if source is None:
        raise AcgpError("No dataset given; use --csv, --synthetic or a config data.source entry.")
    loader = LoaderFactory.create_loader(source)
    return loader.load(source, split_fraction=config.data.split, seed=config.data.seed,
                       target_column=config.data.target_column, n=config.data.n)


def _require_out(args: argparse.Namespace) -> str:
    if not args.out:
        raise AcgpError(f"The {args.command} command needs --out.")
    return args.out


def _write_dataset(path: str, dataset: Dataset) -> None:
    with open(path, 'w', encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([f"x{j}" for j in range(dataset.dim)] + ["y"])
        for x, y in zip(dataset.X, dataset.y):
            writer.writerow([repr(float(v)) for v in x] + [repr(float(y))])


def run(args: argparse.Namespace) -> int:
    if args.command == "merge":
        count = merge_record_files(args.inputs, args.out)
        print(f"Merged {count} records into {args.out}")
        return 0

    config = ConfigLoader().load_from_file(args.config) if args.config else ExperimentConfig()
    config = merge_args(config, args)
    builder = ExperimentBuilder()
    timing = not args.no_timing

    if args.command == "gen-data":
        dataset = gen_synthetic(args.kind, args.n, config.data.seed)
        _write_dataset(_require_out(args), dataset)
        print(f"Wrote {dataset.size} rows to {args.out}")
        return 0

    if args.command == "bench":
        records = run_benchmark(args.n, args.block_sizes, config.data.seed, parse_family(args.kernel),
                                memory_cap=config.memory_cap)
        write_records(_require_out(args), records)
        for m, (bound, factor) in sorted(summarize_benchmark(records).items()):
            print(f"block_size={m} bound_seconds={bound:.6f} factor_seconds={factor:.6f} "
                  f"overhead={bound / factor if factor > 0 else float('nan'):.4%}")
        return 0

    train, test = _load_data(config)

    if args.command == "bound-sweep":
        families = [parse_family(k) for k in args.kernel] if args.kernel else None
        kwargs = {}
        if families:
            kwargs["families"] = families
        if args.log_lengthscale:
            kwargs["log_lengthscales"] = args.log_lengthscale
        stop = builder.build_stop(config.stop)
        records = run_bound_sweep(train, sigma2=config.kernel.sigma2, log_amplitude=config.kernel.log_amplitude,
                                  block_size=stop.block_size, seeds=config.seeds, max_n=stop.max_n, stop=stop,
                                  memory_cap=config.memory_cap, timing=timing, **kwargs)
    elif args.command == "lml-curve":
        families = args.kernel or [config.kernel.family]
        lengthscales = args.log_lengthscale or [config.kernel.log_lengthscale]
        settings = [CurveSetting(parse_family(k), ell, config.kernel.log_amplitude, config.kernel.sigma2)
                    for k, ell in itertools.product(families, lengthscales)]
        records = run_lml_curve(train, settings, memory_cap=config.memory_cap)
    elif args.command == "fit":
        bundle = builder.build(config)
        record = run_fit(train, test, bundle.kernel, bundle.noise, bundle.stop, bundle.mean, exact=args.exact,
                         seed=config.data.seed, memory_cap=config.memory_cap, timing=timing)
        print(f"M={record.processed} N={train.size} estimate={record.estimate!r} rmse={record.rmse!r}")
        records = [record]
    elif args.command == "tune":
        bundle = builder.build(config)
        tune_cfg = builder.build_tune(config.tune, config.stop)
        records = run_tune(train, builder.initial_params(config.kernel), bundle.kernel.family, tune_cfg,
                           bundle.mean, memory_cap=config.memory_cap, timing=timing)
    else:
        raise AcgpError(f"Unknown command: {args.command}")

    count = write_records(_require_out(args), records)
    logger.info("Wrote %d records to %s", count, args.out)
    return 0


# @intent:responsibility CLIを起動します。ライブラリ由来のエラーは終了コード 2 で報告します。
def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT)
    try:
        return run(args)
    except (AcgpError, ValueError, OSError) as exc:
        logger.error("%s", exc)
        print(f"Error: {exc}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
