"""The command-line workflow, driven in-process.

Equivalent shell session::

    gustsurf generate --out base.csv --n 600
    gustsurf generate --out heavy.csv --n 600 --seed 43 --mass-scale 1.1
    gustsurf fit --db base.csv --out model.json
    gustsurf predict --model model.json --db heavy.csv --out pred.csv --alpha 0.01
    gustsurf report --model model.json --db heavy.csv --out metrics.json
"""

import json
import sys
import tempfile
from pathlib import Path

from gustsurf.cli import main

work = Path(sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="gustsurf-"))
work.mkdir(parents=True, exist_ok=True)
steps = [
    ["generate", "--out", str(work / "base.csv"), "--n", "600"],
    ["generate", "--out", str(work / "heavy.csv"), "--n", "600", "--seed", "43", "--mass-scale", "1.1"],
    ["fit", "--db", str(work / "base.csv"), "--out", str(work / "model.json")],
    ["predict", "--model", str(work / "model.json"), "--db", str(work / "heavy.csv"),
     "--out", str(work / "pred.csv"), "--alpha", "0.01"],
    ["report", "--model", str(work / "model.json"), "--db", str(work / "heavy.csv"),
     "--out", str(work / "metrics.json")],
]
for argv in steps:
    print("gustsurf", " ".join(argv))
    code = main(argv)
    if code:
        sys.exit(code)

metrics = json.loads((work / "metrics.json").read_text())
for name, met in metrics["variants"].items():
    print(f"\n{name}: max error {met['max_relative_error']:.2%}, "
          f"widest interval {met['max_relative_width']:.2%}")
print(f"files in {work}:", sorted(p.name for p in work.iterdir()))
