"""Command-line front end: ``generate``, ``fit``, ``predict``, ``envelope``, ``report``."""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import io, pipeline, simdb
from .errors import GustSurfError, InvalidRange
from .inference import validate

log = logging.getLogger("gustsurf")


def _load_envelope(path):
    if path is None:
        return simdb.DEFAULT_ENVELOPE
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    env = dict(simdb.DEFAULT_ENVELOPE)
    for name, pair in raw.items():
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InvalidRange(f"range for {name!r} must be [lo, hi]")
        env[name] = (float(pair[0]), float(pair[1]))
    return env


def cmd_generate(args):
    model = simdb.reference_model(n_stations=args.stations)
    env = _load_envelope(args.envelope)
    if args.mass_scale != 1.0:
        env = simdb.scale_envelope(env, "mass", args.mass_scale)
    db = simdb.generate_database(model, env, args.n, args.seed, args.nuisance, args.dt)
    io.write_database(db, args.out)
    log.info("wrote %d points x %d stations to %s", db.n, db.stations.size, args.out)


def cmd_fit(args):
    db = io.read_database(args.db)
    if db.responses is None:
        raise InvalidRange(f"{args.db} has no station columns to fit")
    models = pipeline.fit_database(db, args.l, args.criterion, args.folds, args.seed)
    settings = {"l": args.l, "criterion": args.criterion, "folds": args.folds, "seed": args.seed}
    bounds = (db.points.min(axis=0), db.points.max(axis=0))
    raw = pipeline.raw_coefficients(models) if args.raw else None
    io.write_model(args.out, models, settings, bounds, raw)
    log.info("fitted %d stations, support sizes %s", len(models), [m.p for m in models])


def _variants(paths):
    return [(Path(p).stem, io.read_database(p)) for p in paths]


def _stations(models):
    return [io._num(m.station) for m in models]


def cmd_predict(args):
    models, meta = io.read_model(args.model)
    lo, hi = np.array(meta["train_min"]), np.array(meta["train_max"])
    labels = _stations(models)
    header = ["variant", "point", "out_of_box"] + [f"pred:{s}" for s in labels]
    if args.alpha is not None:
        header += [f"lower:{s}" for s in labels] + [f"upper:{s}" for s in labels]
    rows = []
    flagged = 0
    for name, db in _variants(args.db):
        pred, lower, upper = pipeline.predict_database(models, db, args.alpha)
        outside = pipeline.outside_box(db.points, lo, hi)
        flagged += int(outside.sum())
        for i in range(db.n):
            row = [name, i, int(outside[i])] + list(pred[i])
            if lower is not None:
                row += list(lower[i]) + list(upper[i])
            rows.append(row)
    io.write_table(args.out, header, rows)
    if flagged:
        log.warning("%d points lie outside the training bounding box", flagged)


def cmd_envelope(args):
    models, _ = io.read_model(args.model)
    header = ["variant", "station", "predicted_max", "lower", "upper", "argmax_point_index", "alpha"]
    rows = []
    for name, db in _variants(args.db):
        for band in pipeline.envelope_bands(models, db, args.alpha):
            rows.append([name, band.station, band.predicted_max, band.lower, band.upper,
                         band.argmax_point_index, band.alpha])
    io.write_table(args.out, header, rows)


def cmd_report(args):
    models, _ = io.read_model(args.model)
    metrics = {}
    rows = []
    for name, db in _variants(args.db):
        pipeline.check_parameters(models, db)
        met = validate(models, db, args.alpha)
        metrics[name] = met.to_dict()
        for k, s in enumerate(met.stations):
            rows.append([name, float(s), float(met.reference_max[k]), float(met.predicted_max[k]),
                         float(met.lower[k]), float(met.upper[k])])
    ks = {io._num(m.station): m.ks_statistic for m in models}
    doc = {"variants": metrics, "residual_ks": ks}
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    plot_path = args.plot_data or str(Path(args.out).with_suffix("")) + "_plot.csv"
    io.write_table(plot_path, ["variant", "station", "true_max", "predicted_max", "lower", "upper"], rows)


def build_parser():
    parser = argparse.ArgumentParser(prog="gustsurf", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="simulate a synthetic load database")
    g.add_argument("--out", required=True)
    g.add_argument("--n", type=int, default=1560)
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--nuisance", type=int, default=14)
    g.add_argument("--dt", type=float, default=simdb.DEFAULT_DT)
    g.add_argument("--stations", type=int, default=45)
    g.add_argument("--mass-scale", type=float, default=1.0,
                   help="multiply the mass range, e.g. 0.9 or 1.1 for weight variants")
    g.add_argument("--envelope", help="JSON file of {name: [lo, hi]} overrides")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("fit", help="fit one sparse quadratic surrogate per station")
    f.add_argument("--db", required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--l", type=int, default=80)
    f.add_argument("--folds", type=int, default=6)
    f.add_argument("--criterion", choices=("cv", "aic", "bic"), default="cv")
    f.add_argument("--seed", type=int, default=42)
    f.add_argument("--raw", action="store_true", help="also store raw-unit coefficients")
    f.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="predict every point of one or more databases")
    p.add_argument("--model", required=True)
    p.add_argument("--db", required=True, nargs="+")
    p.add_argument("--out", required=True)
    p.add_argument("--alpha", type=float, default=None, help="add prediction-interval columns")
    p.set_defaults(func=cmd_predict)

    e = sub.add_parser("envelope", help="predicted envelope maxima with intervals")
    e.add_argument("--model", required=True)
    e.add_argument("--db", required=True, nargs="+")
    e.add_argument("--out", required=True)
    e.add_argument("--alpha", type=float, default=0.01)
    e.set_defaults(func=cmd_envelope)

    r = sub.add_parser("report", help="compare predicted envelopes with reference databases")
    r.add_argument("--model", required=True)
    r.add_argument("--db", required=True, nargs="+")
    r.add_argument("--out", required=True)
    r.add_argument("--plot-data", default=None)
    r.add_argument("--alpha", type=float, default=0.01)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except GustSurfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return 2
    return 0
