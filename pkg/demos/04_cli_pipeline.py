#!/usr/bin/env python3
"""Drive the installed command-line pipeline end to end.

Generates a small circle-construction dataset, scores its own training file
(the fully-memorized baseline), and prints oracle and stats reports --- the
same file contracts an external model would use.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

def run(*args):
    cmd = [sys.executable, "-m", "creativity_bench", *map(str, args)]
    print(f"$ creativity-bench {' '.join(map(str, args))}")
    proc = subprocess.run(cmd, capture_output=True, text=True, check=True)
    if proc.stdout:
        print(proc.stdout.rstrip())
    if proc.stderr:
        print(proc.stderr.rstrip())
    print()
    return proc.stdout

with tempfile.TemporaryDirectory() as tmp:
    data = Path(tmp) / "circle-n6"
    run("gen", "--task", "circle", "--N", 6, "--M", 10, "--train-size", 500,
        "--seed", 42, "--prefix", "hash", "--out", data)

    print("first training lines:")
    for line in (data / "train.txt").read_text().splitlines()[:3]:
        print(f"  {line}")
    print()

    # score the training file against itself: everything is memorized
    run("score", "--manifest", data, "--generations", data / "train.txt",
        "--t-size", 500)

    report = json.loads((data / "train.txt.report.json").read_text())
    print(f"report says memorization={report['memorization']:.2f}, "
          f"creativity={report['creativity']:.2f}\n")

    run("oracle", "--manifest", data, "--t-size", 500, "--trials", 200)
    run("stats", "--manifest", data)
