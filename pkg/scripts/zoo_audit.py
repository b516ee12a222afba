"""Run every suite on every zoo entry and print a one-line verdict per entry.

    python scripts/zoo_audit.py [--out-dir reports/]

With ``--out-dir`` each JSON report is written as ``<entry>.json``.
"""

import argparse
import sys
import time
from pathlib import Path

from braidhopf.cli import run_report
from braidhopf.zoo import zoo_list


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path)
    args = ap.parse_args()
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for e in zoo_list():
        t0 = time.perf_counter()
        R = run_report("zoo:" + e.name)
        c = R.counts()
        failures += not R.ok
        print(f"{e.name:<22}{'PASS' if R.ok else 'FAIL'}  {c['pass']:>3} pass {c['fail']:>2} fail "
              f"{c['skip']:>2} skip  {time.perf_counter() - t0:6.2f}s")
        if args.out_dir:
            (args.out_dir / f"{e.name}.json").write_text(R.to_json())
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
