"""Line-oriented text format for event structures.

::

    es bundle              # prime | bundle | ebundle | dual
    event a                # label defaults to the id
    event b : send
    conflict b c           # unordered
    enable a -> b          # prime: generating pair of <=
    bundle {b, c} -> d
    disable a ~> b         # ebundle: b disables a, so b never precedes a
    priority a < b         # b has higher priority than a

``#`` starts a comment. Errors carry 1-based line/column spans.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..core import Variant, RawStructure
from ..errors import EsError

_ID = r"[A-Za-z0-9_][A-Za-z0-9_.']*"
_LABEL = r"[^\s#]+"

_RULES = {
    "event": re.compile(rf"event\s+(?P<a>{_ID})(?:\s*:\s*(?P<label>{_LABEL}))?\s*\Z"),
    "conflict": re.compile(rf"conflict\s+(?P<a>{_ID})\s+(?P<b>{_ID})\s*\Z"),
    "enable": re.compile(rf"enable\s+(?P<a>{_ID})\s*->\s*(?P<b>{_ID})\s*\Z"),
    "bundle": re.compile(
        rf"bundle\s*\{{\s*(?P<set>{_ID}(?:\s*,\s*{_ID})*)?\s*\}}\s*->\s*(?P<b>{_ID})\s*\Z"
    ),
    "disable": re.compile(rf"disable\s+(?P<a>{_ID})\s*~>\s*(?P<b>{_ID})\s*\Z"),
    "priority": re.compile(rf"priority\s+(?P<a>{_ID})\s*<\s*(?P<b>{_ID})\s*\Z"),
}

_ALLOWED = {
    "event": set(Variant),
    "conflict": {Variant.PRIME, Variant.BUNDLE, Variant.DUAL},
    "enable": {Variant.PRIME},
    "bundle": {Variant.BUNDLE, Variant.EXTENDED_BUNDLE, Variant.DUAL},
    "disable": {Variant.EXTENDED_BUNDLE},
    "priority": set(Variant),
}


@dataclass(frozen=True)
class SourceSpan:
    line: int  # 1-based
    col: int  # 1-based
    end_col: int | None = None

    def __str__(self) -> str:
        return f"line {self.line}, col {self.col}"


class ParseError(EsError):
    """Raised for malformed documents; ``code`` is set per instance."""

    def __init__(self, code: str, message: str, span: SourceSpan | None = None) -> None:
        self.code = code
        self.span = span
        prefix = f"{span}: " if span else ""
        super().__init__(f"{prefix}{code}: {message}", span)


@dataclass(frozen=True)
class Declaration:
    kind: str
    events: tuple[str, ...]
    span: SourceSpan


@dataclass
class EsDocument:
    source: str
    raw: RawStructure
    declarations: list[Declaration] = field(default_factory=list)

    def span_for(self, events) -> SourceSpan | None:
        """Span of the first declaration mentioning all of ``events``."""
        wanted = set(events)
        for d in self.declarations:
            if wanted <= set(d.events):
                return d.span
        return None


def parse(text: str) -> EsDocument:
    raw: RawStructure | None = None
    decls: list[Declaration] = []
    seen_events: dict[str, SourceSpan] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        col = len(body) - len(stripped) + 1
        span = SourceSpan(lineno, col, len(body) + 1)
        keyword = stripped.split(None, 1)[0]
        if keyword.startswith("bundle"):
            keyword = "bundle"

        if raw is None:
            m = re.fullmatch(r"es\s+(\S+)", stripped)
            if not m:
                raise ParseError("SYNTAX_ERROR", "expected header 'es <prime|bundle|ebundle|dual>'", span)
            try:
                variant = Variant(m.group(1))
            except ValueError:
                raise ParseError(
                    "SYNTAX_ERROR",
                    f"unknown variant {m.group(1)!r}",
                    SourceSpan(lineno, col + m.start(1), col + m.end(1)),
                ) from None
            raw = RawStructure(variant=variant)
            continue

        if keyword == "es":
            raise ParseError("SYNTAX_ERROR", "duplicate 'es' header", span)
        rule = _RULES.get(keyword)
        if rule is None:
            raise ParseError("SYNTAX_ERROR", f"unknown directive {keyword!r}", span)
        m = rule.match(stripped)
        if m is None:
            raise ParseError("SYNTAX_ERROR", f"malformed {keyword} declaration", span)
        if Variant(raw.variant) not in _ALLOWED[keyword]:
            raise ParseError(
                "VARIANT_MISMATCH", f"'{keyword}' is not allowed in a {raw.variant} structure", span
            )

        if keyword == "event":
            eid = m.group("a")
            if eid in seen_events:
                raise ParseError(
                    "DUPLICATE_EVENT",
                    f"event {eid!r} already declared at {seen_events[eid]}",
                    SourceSpan(lineno, col + m.start("a"), col + m.end("a")),
                )
            seen_events[eid] = span
            raw.events.append((eid, m.group("label") or eid))
            decls.append(Declaration("event", (eid,), span))
        elif keyword == "bundle":
            members = tuple(s.strip() for s in (m.group("set") or "").split(",") if s.strip())
            raw.bundles.append((members, m.group("b")))
            decls.append(Declaration("bundle", members + (m.group("b"),), span))
        else:
            a, b = m.group("a"), m.group("b")
            if keyword == "conflict":
                raw.conflicts.append(tuple(sorted((a, b))))
            else:
                {
                    "enable": raw.enablings,
                    "disable": raw.disablings,
                    "priority": raw.priority,
                }[keyword].append((a, b))
            decls.append(Declaration(keyword, (a, b), span))

    if raw is None:
        raise ParseError("SYNTAX_ERROR", "empty document: missing 'es' header", SourceSpan(1, 1))
    return EsDocument(text, raw, decls)


def render(raw: RawStructure) -> str:
    """Serialise ``raw`` so that ``parse(render(raw)).raw == raw``."""
    out = [f"es {Variant(raw.variant).value}"]
    for eid, label in raw.events:
        out.append(f"event {eid}" if label == eid else f"event {eid} : {label}")
    out.extend(f"conflict {a} {b}" for a, b in raw.conflicts)
    out.extend(f"enable {a} -> {b}" for a, b in raw.enablings)
    out.extend("bundle {" + ", ".join(m) + f"}} -> {t}" for m, t in raw.bundles)
    out.extend(f"disable {a} ~> {b}" for a, b in raw.disablings)
    out.extend(f"priority {a} < {b}" for a, b in raw.priority)
    return "\n".join(out) + "\n"
