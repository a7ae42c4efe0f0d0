"""Run the exhaustive Nash-ideal verification for every feasible (m, k) and
write the JSON reports.

Usage: python scripts/nash_survey.py [--out DIR]
"""

import argparse
import json
import pathlib

from detmld import verify_nash

CASES = ((2, 1), (2, 2), (3, 1), (3, 2), (3, 3))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=str, default=None, help="directory for JSON reports")
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    for m, k in CASES:
        report = verify_nash(m, k)
        status = "pass" if report.passed else "FAIL"
        print(
            f"(m={m}, k={k}): {status}  "
            f"subsets={len(report.subsets)} charts={len(report.charts)} "
            f"elapsed={report.elapsed:.2f}s"
        )
        if out_dir:
            path = out_dir / f"nash_m{m}_k{k}.json"
            path.write_text(json.dumps(report.to_json(), indent=2))
            print(f"  wrote {path}")


if __name__ == "__main__":
    main()
