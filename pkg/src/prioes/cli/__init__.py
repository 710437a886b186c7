"""Command-line front end: text format, DOT export and subcommands."""

from __future__ import annotations

from .parser import EsDocument, ParseError, SourceSpan, parse, render

__all__ = ["EsDocument", "ParseError", "SourceSpan", "parse", "render"]
