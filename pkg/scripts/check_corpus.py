"""Run the oracle and theorem checks on every document in corpus/figures.

Prints one line per file with the number of passing checks and the names
of failing ones. Exit status is 1 if any file has a failing check.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from prioes.checks import Status, run_checks
from prioes.cli.parser import parse
from prioes.core import validate
from prioes.semantics import trace_tuples

FIGURES = Path(__file__).resolve().parent.parent / "corpus" / "figures"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("directory", nargs="?", type=Path, default=FIGURES)
    args = ap.parse_args()
    any_failed = False
    for path in sorted(args.directory.glob("*.es")):
        es = validate(parse(path.read_text()).raw)
        results = run_checks(es)
        failed = [r.name for r in results if r.status is Status.FAIL]
        any_failed |= bool(failed)
        n_traces = len(trace_tuples(es, True))
        status = "FAIL " + ",".join(failed) if failed else "ok"
        print(f"{path.name:40} {es.variant.value:8} {len(es.events):2} events "
              f"{n_traces:5} prioritized traces  {len(results) - len(failed)}/{len(results)} checks  {status}")
    raise SystemExit(1 if any_failed else 0)


if __name__ == "__main__":
    main()
