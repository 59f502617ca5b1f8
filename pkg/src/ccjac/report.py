"""Report rendering for the command line.

A report is a command name plus an ordered mapping of fields. Values are
strings, booleans, integers, ``None``, lists and nested mappings; exact
numbers are always strings (``"1/3"``), never floats.

``structured`` output is a JSON document::

    {"format": "ccjac-report/1", "command": "...", "result": {...}}

with a fixed key order and no timestamps, so equal inputs give byte-identical
output. ``text`` output flattens the same fields into ``key: value`` lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import Param, ParamFrac, render_scalar

__all__ = ["FORMAT", "Report", "scalar", "scalars"]

FORMAT = "ccjac-report/1"


def scalar(c):
    """Exact string for a coefficient."""
    return render_scalar(c)


def scalars(cs):
    return [render_scalar(c) for c in cs]


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (Fraction, Param, ParamFrac)):
        return render_scalar(v)
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)


def _text_value(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    return str(v)


def _flatten(prefix, v, out):
    if isinstance(v, dict):
        for k, x in v.items():
            _flatten(f"{prefix}.{k}" if prefix else k, x, out)
    elif isinstance(v, list) and any(isinstance(x, dict) for x in v):
        if not v:
            out.append(f"{prefix}: []")
        for i, x in enumerate(v):
            _flatten(f"{prefix}[{i}]", x, out)
    else:
        out.append(f"{prefix}: {_text_value(v)}")


@dataclass
class Report:
    command: str
    fields: dict = field(default_factory=dict)

    def __setitem__(self, key, value):
        self.fields[key] = value

    def __getitem__(self, key):
        return self.fields[key]

    def to_dict(self):
        return {"format": FORMAT, "command": self.command, "result": _plain(self.fields)}

    def render(self, fmt="text"):
        if fmt == "structured":
            return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"
        lines = []
        _flatten("", _plain(self.fields), lines)
        return "\n".join(lines) + "\n"
