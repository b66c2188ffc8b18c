"""File formats: database CSV, model JSON, and the derived result tables.

Numbers are written with ``repr``, the shortest decimal that round-trips, so
reading a file back reproduces the in-memory values exactly.
"""

import json
import math

import numpy as np

from .errors import ParseError
from .features import FeatureMap
from .inference import SparseSurrogate
from .oga import GreedyPath
from .selection import SelectionReport
from .simdb import LoadDatabase

MODEL_FORMAT = "gustsurf.model"
MODEL_VERSION = 1


def _num(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def _write_rows(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_database(db, path):
    header = [f"param:{n}" for n in db.parameter_names]
    if db.responses is not None:
        header += [f"station:{_num(s)}" for s in db.stations]
    rows = []
    for i in range(db.n):
        row = [_num(v) for v in db.points[i]]
        if db.responses is not None:
            row += [_num(v) for v in db.responses[i]]
        rows.append(row)
    _write_rows(path, header, rows)


def _parse_float(text, row, col):
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", row=row, column=col) from None


def read_database(path):
    """Read a database CSV; station columns are optional."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty database file", row=1)
    header = lines[0].split(",")
    names, stations = [], []
    for c, h in enumerate(header, start=1):
        if h.startswith("param:") and not stations:
            names.append(h[len("param:"):])
        elif h.startswith("station:"):
            stations.append(_parse_float(h[len("station:"):], 1, c))
        else:
            raise ParseError(f"unexpected header {h!r}", row=1, column=c)
    if not names:
        raise ParseError("no param: columns", row=1)
    width = len(header)
    data = np.empty((len(lines) - 1, width))
    for r, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != width:
            raise ParseError(f"expected {width} fields, found {len(cells)}", row=r)
        for c, cell in enumerate(cells):
            data[r - 2, c] = _parse_float(cell, r, c + 1)
    d = len(names)
    responses = data[:, d:] if stations else None
    return LoadDatabase(tuple(names), data[:, :d], np.array(stations), responses)


def model_to_dict(models, settings=None, bounds=None, raw=None):
    fmap = models[0].feature_map
    labels = fmap.descriptors()
    out = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "parameter_names": list(fmap.names),
        "means": [float(v) for v in fmap.means],
        "scales": [float(v) for v in fmap.scales],
        "terms": labels,
        "settings": dict(settings or {}),
    }
    if bounds is not None:
        out["train_min"] = [float(v) for v in bounds[0]]
        out["train_max"] = [float(v) for v in bounds[1]]
    stations = []
    for k, m in enumerate(models):
        entry = {
            "station": m.station,
            "support": list(m.support),
            "support_terms": [labels[i] for i in m.support],
            "coefficients": [float(c) for c in m.coefficients],
            "sigma2": m.sigma2,
            "n_train": m.n_train,
            "r": [[float(v) for v in row] for row in m.r],
            "ks_statistic": m.ks_statistic,
        }
        if m.selection is not None:
            sel = m.selection.to_dict()
            if m.selection.path is not None:
                sel["path_selected"] = list(m.selection.path.selected)
                sel["path_rss"] = [float(v) for v in m.selection.path.rss_per_step]
            entry["selection"] = sel
        if raw is not None:
            entry["raw_coefficients"] = raw[k]
        stations.append(entry)
    out["stations"] = stations
    return out


def write_model(path, models, settings=None, bounds=None, raw=None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model_to_dict(models, settings, bounds, raw), fh, indent=1)
        fh.write("\n")


def read_model(path):
    """Load station surrogates.

    Returns
    -------
    models : list of SparseSurrogate
    meta : dict
        The remaining top-level fields (settings, training bounds).
    """
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid model file: {exc.msg}", row=exc.lineno, column=exc.colno) from None
    if doc.get("format") != MODEL_FORMAT:
        raise ParseError(f"not a {MODEL_FORMAT} file")
    try:
        fmap = FeatureMap(tuple(doc["parameter_names"]), np.array(doc["means"]),
                          np.array(doc["scales"]))
        models = []
        for entry in doc["stations"]:
            sel = entry.get("selection")
            report = None
            if sel is not None:
                path = None
                if "path_selected" in sel:
                    path = GreedyPath(tuple(sel["path_selected"]), [], np.array(sel["path_rss"]))
                report = SelectionReport(sel["criterion"], sel["folds"], np.array(sel["scores"]),
                                         sel["chosen_size"], tuple(sel["chosen_support"]), path)
            models.append(SparseSurrogate(
                station=float(entry["station"]),
                feature_map=fmap,
                support=tuple(entry["support"]),
                coefficients=np.array(entry["coefficients"], dtype=float),
                sigma2=float(entry["sigma2"]),
                n_train=int(entry["n_train"]),
                r=np.array(entry["r"], dtype=float).reshape(len(entry["support"]), -1),
                ks_statistic=float(entry["ks_statistic"]),
                selection=report,
            ))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed model file: {exc}") from None
    meta = {k: v for k, v in doc.items() if k not in ("stations",)}
    return models, meta


def write_table(path, header, rows):
    """CSV with string headers; floats go out via ``repr``, other values via ``str``."""
    _write_rows(path, header, [[_num(v) if isinstance(v, float) else str(v) for v in row]
                               for row in rows])
