"""Command-line front end for the classification experiments.

Subcommands: generate, train, evaluate, sweep-noise, sweep-interval,
featsel-curve.  Flag precedence is command line > config file (key=value
lines, '#' comments) > preset defaults.  All outputs are CSV with a
comment header recording the resolved configuration, written atomically
(temp file + rename) so failed runs leave no partial outputs.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__, experiments, network
from .data import inject_noise, load_dataset, save_dataset
from .generate import generate_preset


def _config_defaults(path):
    defaults = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SystemExit(f"config line without '=': {line!r}")
        defaults[key.strip().replace("-", "_")] = value.strip()
    return defaults


def _write_csv(path, header_lines, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")
    tmp.rename(path)


def _header(args, keys):
    lines = [f"ohmicity {__version__}"]
    for key in keys:
        lines.append(f"{key}={getattr(args, key)}")
    return lines


def _scaled(iterations, budget):
    return max(1, round(iterations * budget))


def _progress(label, total):
    state = {"done": 0, "t0": time.time()}

    def tick():
        state["done"] += 1
        if state["done"] % 200 == 0 or state["done"] == total:
            rate = state["done"] / (time.time() - state["t0"])
            print(f"{label}: {state['done']}/{total} ({rate:.1f}/s)",
                  file=sys.stderr)

    return tick


def cmd_generate(args):
    from .data import scenario_presets

    spec = scenario_presets().get(args.preset)
    total = sum(spec.split_sizes()) if spec else None
    dataset = generate_preset(args.preset, args.seed, jobs=args.jobs,
                              progress=_progress(args.preset, total))
    if args.sigma:
        dataset = inject_noise(dataset, args.sigma, args.seed)
    save_dataset(dataset, args.out)
    sizes = {s: len(t) for s, t in dataset.splits.items()}
    print(f"wrote {args.out}: {sizes}")


def _log_line(it, report):
    print(f"iter {it}: loss={report.train_loss[-1]:.6f} "
          f"train={report.train_accuracy[-1]:.2f}%"
          + (f" valid={report.valid_accuracy[-1]:.2f}%"
             if report.valid_accuracy else ""),
          file=sys.stderr)


def cmd_train(args):
    if args.data:
        dataset = load_dataset(args.data)
        if args.sigma:
            dataset = inject_noise(dataset, args.sigma, args.seed)
        features = experiments.featureize(dataset)
        iters = _scaled(args.iters or 1000, args.budget)
        result = experiments.train_classifier(features, iters, args.seed,
                                              lr=args.lr, log=_log_line)
    else:
        iters = _scaled(
            args.iters or experiments.DEFAULT_ITERATIONS.get(args.preset, 1000),
            args.budget)
        result = experiments.run_classification(
            args.preset, args.seed, iters, sigma=args.sigma, jobs=args.jobs,
            lr=args.lr, log=_log_line)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    network.save_model(result.model, out / "model.txt")
    report = result.report
    rows = []
    valid = dict(zip(report.valid_iterations, report.valid_accuracy))
    for i, it in enumerate(report.iterations):
        rows.append((it, f"{report.train_loss[i]:.10g}",
                     f"{report.train_accuracy[i]:.6g}",
                     f"{valid.get(it, '')}"))
    _write_csv(out / "training_log.csv",
               _header(args, ["preset", "seed", "lr", "sigma"])
               + ["columns=iteration,loss,train_acc,valid_acc"], rows)
    print(f"final: train={result.train_accuracy:.2f}% "
          f"valid={result.valid_accuracy:.2f}% "
          f"test={result.test_accuracy:.2f}%")


def cmd_evaluate(args):
    model = network.load_model(args.model)
    dataset = load_dataset(args.data)
    if args.sigma:
        dataset = inject_noise(dataset, args.sigma, args.seed)
    features = experiments.featureize(dataset)
    for split, (x, y) in features.items():
        if x.shape[1] != model.dims[0]:
            raise SystemExit(
                f"dataset features have length {x.shape[1]} but the model "
                f"input layer expects {model.dims[0]}")
        print(f"{split}: {network.accuracy(model, x, y):.2f}%")


def cmd_sweep_noise(args):
    iters = _scaled(
        args.iters or experiments.DEFAULT_ITERATIONS[
            "noise-ad" if args.preset == "ad-default" else "noise-pd"],
        args.budget)
    rows = experiments.sweep_noise(args.preset, args.seed, args.sigmas,
                                   iters, jobs=args.jobs, lr=args.lr,
                                   log=_log_line if args.verbose else None)
    formatted = [(f"{s:.10g}", f"{tr:.6g}", f"{te:.6g}") for s, tr, te in rows]
    _write_csv(args.out, _header(args, ["preset", "seed", "lr"])
               + [f"iterations={iters}",
                  "columns=sigma,train_acc,test_acc"], formatted)
    for s, tr, te in rows:
        print(f"sigma={s:g}: train={tr:.2f}% test={te:.2f}%")


def cmd_sweep_interval(args):
    iters = _scaled(args.iters or experiments.DEFAULT_ITERATIONS["pd-varying"],
                    args.budget)
    rows = experiments.sweep_interval(args.seed, iters, ks=args.ks,
                                      jobs=args.jobs, lr=args.lr,
                                      log=_log_line if args.verbose else None)
    formatted = [(f"{l:.10g}", f"{tr:.6g}", f"{te:.6g}") for l, tr, te in rows]
    _write_csv(args.out, _header(args, ["seed", "lr"])
               + [f"iterations={iters}",
                  "columns=interval_length,train_acc,test_acc"], formatted)
    for l, tr, te in rows:
        print(f"interval={l:g}: train={tr:.2f}% test={te:.2f}%")


def cmd_featsel_curve(args):
    iters = _scaled(args.iters or experiments.DEFAULT_ITERATIONS["featsel"],
                    args.budget)
    rows = experiments.featsel_curve(
        args.preset, args.seed, args.points, iters, methods=args.methods,
        jobs=args.jobs, lr=args.lr, sigma=args.sigma,
        log=_log_line if args.verbose else None)
    formatted = [(k, m, f"{te:.6g}") for k, m, te in rows]
    _write_csv(args.out, _header(args, ["preset", "seed", "lr", "sigma"])
               + [f"iterations={iters}",
                  "columns=k_points,method,test_acc"], formatted)
    if "correlation" in args.methods:
        dataset = experiments.load_or_generate(args.preset, args.seed,
                                               jobs=args.jobs)
        dataset = inject_noise(dataset, args.sigma, args.seed)
        ranking_rows = [
            (rank, idx, f"{t:.10g}", f"{score:.10g}")
            for rank, idx, t, score in experiments.ranking_table(dataset)]
        out = Path(args.out)
        _write_csv(out.with_name(out.stem + "-ranking" + out.suffix),
                   _header(args, ["preset", "seed", "sigma"])
                   + ["columns=rank,time_index,time_value,relevance"],
                   ranking_rows)
    for k, m, te in rows:
        print(f"k={k} {m}: test={te:.2f}%")


def _float_list(text):
    return [float(v) for v in text.split(",") if v]


def _int_list(text):
    return [int(v) for v in text.split(",") if v]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ohmicity",
        description="Spin-boson Ohmicity classification experiments")
    parser.add_argument("--config", help="key=value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, preset=True):
        if preset:
            p.add_argument("--preset", default="pd-separated")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--lr", type=float, default=1e-4)
        p.add_argument("--iters", type=int, default=None)
        p.add_argument("--budget", type=float, default=1.0,
                       help="scale factor on iteration counts")
        p.add_argument("--sigma", type=float, default=0.0)
        p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("generate", help="write dataset CSVs for a preset")
    common(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="train a classifier on a preset or "
                                     "saved dataset")
    common(p)
    p.add_argument("--data", help="directory of a saved dataset")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a saved model on a dataset")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep-noise", help="accuracy vs noise level")
    common(p)
    p.add_argument("--sigmas", type=_float_list, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep_noise)

    p = sub.add_parser("sweep-interval",
                       help="accuracy vs parameter interval length")
    common(p, preset=False)
    p.add_argument("--ks", type=_int_list, default=list(range(10)))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep_interval)

    p = sub.add_parser("featsel-curve",
                       help="accuracy vs number of selected time points")
    common(p)
    p.add_argument("--points", type=_int_list,
                   default=[400, 250, 100, 40, 20, 10, 5])
    p.add_argument("--methods", type=lambda t: t.split(","),
                   default=["correlation", "uniform"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_featsel_curve)
    return parser


_LIST_KEYS = {"sigmas": _float_list, "ks": _int_list, "points": _int_list,
              "methods": lambda t: t.split(",")}


def _coerce(key, value):
    if key in _LIST_KEYS:
        return _LIST_KEYS[key](value)
    for convert in (int, float):
        try:
            return convert(value)
        except ValueError:
            continue
    return value


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        # command line beats config file beats built-in defaults
        for key, value in _config_defaults(args.config).items():
            flag = "--" + key.replace("_", "-")
            if flag in argv or not hasattr(args, key):
                continue
            setattr(args, key, _coerce(key, value))
    try:
        args.func(args)
    except (KeyError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
