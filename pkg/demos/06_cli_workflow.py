"""End-to-end batch workflow through the command-line interface.

Writes a small two-track CSV, then drives the installed `shotr` commands
in-process: dense kinematics, per-track summaries, and coefficients as
JSON. Every command is deterministic: same input bytes and flags, same
output bytes.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from shotr.cli import main

workdir = Path(tempfile.mkdtemp(prefix="shotr_demo_"))
csv_path = workdir / "tracks.csv"

rng = np.random.default_rng(5)
lines = ["track,t,x,y"]
for tid in ("alpha", "beta"):
    times = np.round(np.arange(0.0, 1.44, 0.144), 6)
    coords = rng.normal(0, 0.2, (len(times), 2)).cumsum(axis=0)
    for t, (x, y) in zip(times, coords):
        lines.append(f"{tid},{t},{x:.6f},{y:.6f}")
csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
print(f"wrote {csv_path} ({len(lines) - 1} rows)\n")

print("== shotr summary ==")
main(["summary", "--input", str(csv_path), "--degree", "3"])

print("\n== shotr kinematics (first lines) ==")
dense = workdir / "dense.csv"
main(["kinematics", "--input", str(csv_path), "--output", str(dense)])
print("\n".join(dense.read_text().splitlines()[:4]))

print("\n== shotr reconstruct (coefficients of track 'alpha', first cell) ==")
coeffs = workdir / "polys.json"
main(["reconstruct", "--input", str(csv_path), "--output", str(coeffs)])
doc = json.loads(coeffs.read_text())
print(json.dumps(doc["tracks"]["alpha"]["axes"][0][0], indent=2))

print("\n== shotr backtrace (velocity-accuracy scoring per track) ==")
main(["backtrace", "--input", str(csv_path), "--dtau", "0.3"])
