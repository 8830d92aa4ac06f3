#!/usr/bin/env python3
"""Release verification: the full test suite including slow tests, plus CLI smoke runs.

Usage: python scripts/verify_release.py [--checkpoint DIR]
"""

import argparse
import subprocess
import sys
import tempfile
from pathlib import Path


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "mocklie.cli", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--checkpoint", help="directory for the M44 checkpoint file")
    opts = ap.parse_args()
    root = Path(__file__).resolve().parent.parent
    failures = 0

    code = subprocess.call([sys.executable, "-m", "pytest", "-v", "-m", "slow or not slow"], cwd=root)
    print(f"full test suite (slow included): {'PASS' if code == 0 else 'FAIL'}")
    failures += code != 0

    ckdir = Path(opts.checkpoint) if opts.checkpoint else Path(tempfile.mkdtemp())
    ckdir.mkdir(parents=True, exist_ok=True)
    checks = [
        (["envelope", "M44", "--checkpoint", str(ckdir / "m44.pkl"),
          "--expect", "dim_u=157", "--expect", "special=false"], "dim U(M44) = 157, not special"),
        (["identity", "M44", "--id", "glennie8", "--at", "generators", "--expect", "central=true",
          "--expect", "zero=false"], "G8 central and nonzero on M44"),
        (["check", "M44", "--expect", "nil_index=9", "--expect", "center_dim=1"], "M44 invariants"),
    ]
    for args, label in checks:
        code, out, err = cli(*args)
        print(f"{label}: {'PASS' if code == 0 else 'FAIL'}")
        if code:
            print(err, file=sys.stderr)
        failures += code != 0
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
