"""Deterministic Graphviz output.

Visual conventions:

* enabling: solid edges (Hasse pairs of ``<=`` for prime structures, one
  edge per bundle member otherwise, labelled with the bundle);
* conflict: dashed, undirected;
* disabling ``a ~> b``: dashed edge from ``b`` to ``a``, since ``b``
  disables ``a``;
* priority ``lo ⋖ hi``: double-lined bold edge from ``hi`` to ``lo``.

Lposet families become one cluster per lposet, with the Hasse edges of the
prefix order drawn between invisible anchor nodes.
"""

from __future__ import annotations

from ..core import EventStructure, Variant, transitive_reduction_view
from ..posets import LposetFamily

PRIORITY_STYLE = 'style=bold, color="black:invis:black", arrowhead=normal'


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _header(name: str) -> list[str]:
    return [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]


def _nodes(es: EventStructure, prefix: str = "") -> list[str]:
    out = []
    for e, label in es.labels:
        text = e if label == e else f"{e}:{label}"
        out.append(f"  {_q(prefix + e)} [label={_q(text)}];")
    return out


def _priority_edges(es: EventStructure) -> list[str]:
    return [f"  {_q(hi)} -> {_q(lo)} [{PRIORITY_STYLE}];" for lo, hi in sorted(es.priority)]


def structure_dot(es: EventStructure) -> str:
    """Every relation of ``es``."""
    out = _header("es")
    out += _nodes(es)
    if es.variant is Variant.PRIME:
        for a, b in sorted(transitive_reduction_view(es, "order")):
            out.append(f"  {_q(a)} -> {_q(b)} [style=solid];")
    for k, b in enumerate(sorted(es.bundles, key=lambda b: b.sort_key()), start=1):
        for m in sorted(b.members):
            out.append(f"  {_q(m)} -> {_q(b.target)} [style=solid, label={_q(f'B{k}')}];")
    for pair in sorted(tuple(sorted(p)) for p in es.conflict):
        a, b = pair
        out.append(f"  {_q(a)} -> {_q(b)} [style=dashed, dir=none];")
    for a, b in sorted(es.disabling):
        out.append(f"  {_q(b)} -> {_q(a)} [style=dashed];")
    out += _priority_edges(es)
    out.append("}")
    return "\n".join(out) + "\n"


def priority_dot(es: EventStructure) -> str:
    """Only the priority relation."""
    out = _header("priority") + _nodes(es) + _priority_edges(es)
    out.append("}")
    return "\n".join(out) + "\n"


def family_dot(family: LposetFamily) -> str:
    """One cluster per lposet, prefix edges between their anchors."""
    out = ["digraph family {", "  compound=true;", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, p in enumerate(family.members):
        out.append(f"  subgraph cluster_{i} {{")
        out.append(f"    label={_q(f'L{i}')};")
        out.append(f"    {_q(f'{i}')} [shape=point, style=invis];")
        labels = p.labeling
        for e in sorted(p.carrier):
            text = e if labels.get(e, e) == e else f"{e}:{labels[e]}"
            out.append(f"    {_q(f'{i}.{e}')} [label={_q(text)}];")
        for a, b in sorted(p.covering()):
            out.append(f"    {_q(f'{i}.{a}')} -> {_q(f'{i}.{b}')} [style=solid];")
        out.append("  }")
    for i, j in family.prefix_edges:
        out.append(
            f"  {_q(f'{i}')} -> {_q(f'{j}')} "
            f"[ltail={_q(f'cluster_{i}')}, lhead={_q(f'cluster_{j}')}, style=dotted];"
        )
    out.append("}")
    return "\n".join(out) + "\n"
