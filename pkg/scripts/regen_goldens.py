"""Regenerate corpus/golden/*.out from corpus/golden/cases.txt.

Run after an intended output change, then review the diff before
committing: the goldens are only as good as that review.
"""

from __future__ import annotations

import argparse
import io
import os
from pathlib import Path

from prioes.cli.main import run

ROOT = Path(__file__).resolve().parent.parent
FIGURES = ROOT / "corpus" / "figures"
GOLDEN = ROOT / "corpus" / "golden"


def load_cases(path: Path = GOLDEN / "cases.txt") -> list[tuple[str, int, list[str]]]:
    cases = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        case_id, status, *argv = line.split()
        cases.append((case_id, int(status), argv))
    return cases


def run_case(argv: list[str]) -> tuple[int, str]:
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIGURES)
    try:
        status = run(argv, stdout=out, stderr=err)
    finally:
        os.chdir(cwd)
    return status, out.getvalue() + (("[stderr]\n" + err.getvalue()) if err.getvalue() else "")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args()
    bad = 0
    for case_id, want_status, argv in load_cases():
        status, text = run_case(argv)
        target = GOLDEN / f"{case_id}.out"
        if status != want_status:
            print(f"{case_id}: exit {status}, manifest says {want_status}")
            bad += 1
        if args.check:
            if not target.exists() or target.read_text() != text:
                print(f"{case_id}: output differs")
                bad += 1
        else:
            target.write_text(text)
    print(f"{len(load_cases())} cases, {bad} problems")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
