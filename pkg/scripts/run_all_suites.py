"""Run every verification suite and write one JSON report per suite.

    python3 scripts/run_all_suites.py [--out reports] [--workers 4] [--timings]
"""
import argparse
import sys
from pathlib import Path

from voa.suites import SUITES, run_suite, validate_report


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="reports", help="directory for the JSON reports")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timings", action="store_true")
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for name in SUITES:
        report = run_suite(name, workers=args.workers)
        validate_report(report.to_dict(args.timings))
        (out / f"{name}.json").write_text(report.to_json(args.timings))
        s = report.summary
        print(f"{name:18} {s['pass']:3}/{s['total']:<3} pass  {s['fail']} fail  {s['error']} error")
        all_ok &= report.passed
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
