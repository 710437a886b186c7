"""``prioes`` command-line interface.

Exit status: 0 on success, 1 when the run produced a semantic finding
(an invalid structure, a failed check, a non-minimal relation, ...), and 2
for usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from ..checks import Status, run_checks
from ..core import EventStructure, Variant, validate
from ..errors import EsError, UnknownEvent, ValidationError
from ..posets import Interpretation, des_causes, lposet_family
from ..reduction import check_minimality, ignore_at_configuration, reduce_priority
from ..semantics import enumerate_configurations, format_sequence, parse_sequence, trace_tuples
from . import dot
from .parser import EsDocument, ParseError, parse, render

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad flag values discovered after argparse has run."""


def _pair(p: tuple[str, str]) -> str:
    return f"{p[0]} ⋖ {p[1]}"


def _set(events) -> str:
    return "{" + ", ".join(sorted(events)) + "}"


def _event_list(es: EventStructure, text: str) -> frozenset[str]:
    events = frozenset(x.strip() for x in text.split(",") if x.strip())
    for e in sorted(events):
        if e not in es.labeling:
            raise UnknownEvent(f"unknown event {e!r}", e)
    return events


def _witness_events(witness) -> list[str]:
    out: list[str] = []

    def walk(w):
        if isinstance(w, str):
            out.append(w)
        elif isinstance(w, (tuple, list)):
            for x in w:
                walk(x)
        elif isinstance(w, (set, frozenset)):
            for x in sorted(w):
                walk(x)

    walk(witness)
    return out


def _locate(doc: EsDocument, witness) -> str:
    ids = _witness_events(witness)
    for k in (len(ids), 2, 1):
        if ids and k <= len(ids):
            span = doc.span_for(ids[:k])
            if span is not None:
                return f"{span}: "
    return ""


# ---------------------------------------------------------------------------
# subcommands; each returns (exit status, stdout lines)
# ---------------------------------------------------------------------------


def cmd_validate(args, doc, es):
    return EXIT_OK, ["OK"]


def cmd_traces(args, doc, es):
    if args.over_config is not None:
        over = _event_list(es, args.over_config)
        seqs = trace_tuples(es, args.priority, args.max_len, over=over)
    else:
        seqs = trace_tuples(es, args.priority, args.max_len)
    return EXIT_OK, [format_sequence(s) for s in seqs]


def cmd_configs(args, doc, es):
    return EXIT_OK, [_set(c) for c in enumerate_configurations(es, args.priority)]


def cmd_lposets(args, doc, es):
    family = lposet_family(es)
    if args.dot:
        return EXIT_OK, dot.family_dot(family).splitlines()
    lines = [f"L{i} {p}" for i, p in enumerate(family.members)]
    lines += [f"L{i} -> L{j}" for i, j in family.prefix_edges]
    return EXIT_OK, lines


def cmd_reduce(args, doc, es):
    report = reduce_priority(es)
    lines = [f"keep {_pair(p)}" for p in sorted(report.kept)]
    if args.explain:
        lines += [f"drop {_pair(p)} {reason}" for p, reason in report.dropped]
        lines.append("")
        lines += render(es.with_priority(report.kept).to_raw()).splitlines()
    else:
        lines += [f"drop {_pair(p)}" for p, _ in report.dropped]
    return EXIT_OK, lines


def cmd_ignore(args, doc, es):
    c = _event_list(es, args.config)
    report = ignore_at_configuration(es, c)
    lines = [f"configuration {_set(c)}"]
    lines += [f"ignore {_pair(p)}" for p in sorted(report.ignorable)]
    lines += [f"retain {_pair(p)}" for p in sorted(report.retained)]
    lines += [f"also-removable {_pair(p)}" for p in sorted(report.beyond_theorem)]
    return EXIT_OK, lines


def cmd_minimality(args, doc, es):
    relation = reduce_priority(es).kept
    shown = relation
    if args.config is not None:
        c = _event_list(es, args.config)
        if es.variant in (Variant.BUNDLE, Variant.EXTENDED_BUNDLE):
            relation = ignore_at_configuration(es, c).retained
        # pairs leaving C never constrain traces over C
        shown = {p for p in relation if p[0] in c and p[1] in c}
        verdict = check_minimality(es, relation, c)
        scope = f" over {_set(c)}"
    else:
        verdict = check_minimality(es, relation)
        scope = ""
    lines = [f"relation {_pair(p)}" for p in sorted(shown)]
    if verdict:
        lines.append(f"minimal{scope} ({verdict.checked} pairs checked)")
        return EXIT_OK, lines
    removed = ", ".join(_pair(p) for p in sorted(verdict.removable))
    lines.append(f"not minimal{scope}: removing {removed} leaves the traces unchanged")
    return EXIT_FINDING, lines


def cmd_causes(args, doc, es):
    trace = parse_sequence(es, args.trace)
    if args.target not in trace:
        raise UsageError(f"target {args.target!r} does not occur in {format_sequence(trace)}")
    prefix = trace[: trace.index(args.target)]
    return EXIT_OK, [str(c) for c in des_causes(es, prefix, args.target, args.interp)]


def cmd_check(args, doc, es):
    results = run_checks(es)
    failed = any(r.status is Status.FAIL for r in results)
    return (EXIT_FINDING if failed else EXIT_OK), [str(r) for r in results]


def cmd_export_dot(args, doc, es):
    if args.what == "priority":
        text = dot.priority_dot(es)
    elif args.what == "lposets":
        text = dot.family_dot(lposet_family(es))
    else:
        text = dot.structure_dot(es)
    return EXIT_OK, text.splitlines()


COMMANDS = {
    "validate": cmd_validate,
    "traces": cmd_traces,
    "configs": cmd_configs,
    "lposets": cmd_lposets,
    "reduce": cmd_reduce,
    "ignore": cmd_ignore,
    "minimality": cmd_minimality,
    "causes": cmd_causes,
    "check": cmd_check,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prioes", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", type=Path, help="event structure document")
        return p

    add("validate", "check well-formedness and print OK or the violations")
    p = add("traces", "list traces, lexicographically")
    p.add_argument("--priority", action="store_true", help="apply the priority relation")
    p.add_argument("--max-len", type=int, default=None, metavar="N")
    p.add_argument("--over-config", default=None, metavar="a,b,c", help="only traces over this set")
    p = add("configs", "list configurations")
    p.add_argument("--priority", action="store_true")
    p = add("lposets", "lposet family with prefix edges")
    p.add_argument("--dot", action="store_true", help="emit Graphviz instead of text")
    p = add("reduce", "drop structurally redundant priority pairs")
    p.add_argument("--explain", action="store_true", help="give reasons and the reduced document")
    p = add("ignore", "priority pairs ignorable for one configuration")
    p.add_argument("--config", required=True, metavar="a,b,c")
    p = add("minimality", "test whether the reduced priority is minimal")
    p.add_argument("--config", default=None, metavar="a,b,c")
    p = add("causes", "cause sets of an event in a dual structure")
    p.add_argument("--trace", required=True, help="trace containing the target, e.g. abcd")
    p.add_argument("--target", required=True)
    p.add_argument(
        "--interp", default="liberal", choices=[i.value for i in Interpretation]
    )
    add("check", "run the oracle and theorem checks")
    p = add("export-dot", "Graphviz rendering")
    p.add_argument("--what", default="es", choices=["es", "priority", "lposets"])

    p = sub.add_parser("fmt", help="print a document in canonical layout")
    p.add_argument("file", type=Path, nargs="?")
    p.add_argument("--stdin", action="store_true", help="read the document from standard input")
    return ap


def _read(args) -> tuple[str, str]:
    if getattr(args, "stdin", False):
        return "<stdin>", sys.stdin.read()
    if args.file is None:
        raise UsageError("a file argument or --stdin is required")
    try:
        return str(args.file), args.file.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def err(msg: str) -> None:
        print(msg, file=stderr)

    name = "<input>"
    try:
        name, text = _read(args)
        doc = parse(text)
        if args.command == "fmt":
            stdout.write(render(doc.raw))
            return EXIT_OK
        try:
            es = validate(doc.raw)
        except ValidationError as exc:
            # for validate the report is the requested output
            out = stdout if args.command == "validate" else stderr
            for v in exc.report.violations:
                print(f"{name}: {_locate(doc, v.witness)}{v}", file=out)
            return EXIT_FINDING
        status, lines = COMMANDS[args.command](args, doc, es)
    except UsageError as exc:
        err(f"prioes: {exc}")
        return EXIT_USAGE
    except ParseError as exc:
        err(f"{name}: {exc}")
        return EXIT_USAGE
    except UnknownEvent as exc:
        err(f"{name}: UNKNOWN_EVENT: {exc}")
        return EXIT_USAGE
    except EsError as exc:
        err(f"{name}: {exc.code}: {exc}")
        return EXIT_FINDING
    for line in lines:
        print(line, file=stdout)
    return status


def main() -> None:
    sys.exit(run())
