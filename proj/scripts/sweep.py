#!/usr/bin/env python3
"""Run the synthesizer over every benchmark specification for a range of gate
budgets, collect the JSON run reports, and print a summary table (average
runtime and solved counts per budget).

Usage:
    scripts/sweep.py [--binary build/tools/mctsynth] [--benchmarks benchmarks]
                     [--gates 1 2 3] [--time-limit 60] [--out sweep_results.json]
"""

import argparse
import json
import pathlib
import subprocess
import sys

EXIT_NAMES = {0: "optimal", 2: "unrealizable", 3: "infeasible", 4: "timed_out"}


def run_instance(binary, spec, gates, time_limit):
    cmd = [
        binary, "synth", str(spec),
        "--gates", str(gates),
        "--time-limit", str(time_limit),
        "--json",
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode in EXIT_NAMES and proc.stdout.strip():
        report = json.loads(proc.stdout)
    else:
        report = {
            "spec_path": str(spec),
            "m": gates,
            "status": EXIT_NAMES.get(proc.returncode, f"error({proc.returncode})"),
            "cost": None,
            "runtime_seconds": None,
        }
    report["exit_code"] = proc.returncode
    return report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--binary", default="build/tools/mctsynth")
    parser.add_argument("--benchmarks", default="benchmarks")
    parser.add_argument("--gates", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--time-limit", type=float, default=60.0)
    parser.add_argument("--out", default="sweep_results.json")
    args = parser.parse_args()

    specs = sorted(pathlib.Path(args.benchmarks).glob("*.spec"))
    if not specs:
        print(f"no .spec files under {args.benchmarks}", file=sys.stderr)
        return 1

    reports = []
    for spec in specs:
        for gates in args.gates:
            report = run_instance(args.binary, spec, gates, args.time_limit)
            reports.append(report)
            cost = report.get("cost")
            print(f"{spec.name:24s} m={gates}  {report['status']:12s}"
                  f"  cost={cost if cost is not None else '-'}")

    pathlib.Path(args.out).write_text(json.dumps(reports, indent=2) + "\n")
    print(f"\nwrote {len(reports)} reports to {args.out}\n")

    print(f"{'m':>4s} {'solved':>8s} {'avg runtime (s)':>16s}")
    for gates in args.gates:
        rows = [r for r in reports if r["m"] == gates]
        solved = [r for r in rows if r["status"] in ("optimal", "infeasible")]
        runtimes = [r["runtime_seconds"] for r in rows if r["runtime_seconds"] is not None]
        avg = sum(runtimes) / len(runtimes) if runtimes else float("nan")
        print(f"{gates:4d} {len(solved):>4d}/{len(rows):<3d} {avg:16.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
