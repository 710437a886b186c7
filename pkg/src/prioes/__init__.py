"""Prioritized event structures: traces, lposets and redundant priority.

Four variants are supported (prime, bundle, extended bundle and dual), each
with an optional acyclic priority relation. The library enumerates traces
and configurations exhaustively, builds lposet families, and finds priority
pairs that can be dropped globally or ignored per configuration. Every such
claim can be re-checked against a brute-force trace oracle.
"""

from __future__ import annotations

from .core import Bundle, EventStructure, RawStructure, ValidationReport, Variant, build, check, validate
from .errors import EsError
from .posets import Interpretation, Lposet, LposetFamily, des_causes, lposet_family, precedence
from .reduction import ignore_at_configuration, oracle_trace_equal, reduce_priority, reduced
from .semantics import Trace, enabled, enumerate_configurations, enumerate_traces, is_trace

__all__ = [
    "Bundle",
    "EsError",
    "EventStructure",
    "Interpretation",
    "Lposet",
    "LposetFamily",
    "RawStructure",
    "Trace",
    "ValidationReport",
    "Variant",
    "build",
    "check",
    "des_causes",
    "enabled",
    "enumerate_configurations",
    "enumerate_traces",
    "ignore_at_configuration",
    "is_trace",
    "lposet_family",
    "oracle_trace_equal",
    "precedence",
    "reduce_priority",
    "reduced",
    "validate",
]
