"""
Report objects emitted by the command line, in canonical JSON or text.
"""

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact


def jsonable(obj):
    """Convert results into plain JSON values; rationals become "a/b" strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return exact.format_rational(obj)
    if isinstance(obj, enum.Enum):
        return jsonable(obj.value)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=json.dumps)
    if hasattr(obj, "as_json"):
        return jsonable(obj.as_json())
    if isinstance(obj, float):
        raise TypeError("floating point value %r in a report" % obj)
    raise TypeError("cannot serialize %r" % type(obj).__name__)


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    result: object = None
    witnesses: object = None
    elapsed_ms: int = 0
    anchor: str = ""

    def as_json(self):
        return {"command": self.command, "inputs": jsonable(self.inputs),
                "result": jsonable(self.result), "witnesses": jsonable(self.witnesses),
                "elapsed_ms": int(self.elapsed_ms), "anchor": self.anchor}


def render_json(report):
    return json.dumps(report.as_json(), sort_keys=True, indent=2, ensure_ascii=False)


def _text_lines(value, indent=2):
    pad = " " * indent
    if isinstance(value, dict):
        out = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                          (v.values() if isinstance(v, dict) else v)):
                out.append("%s%s:" % (pad, k))
                out += _text_lines(v, indent + 2)
            else:
                out.append("%s%s: %s" % (pad, k, json.dumps(v, sort_keys=True, ensure_ascii=False)))
        return out
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, dict):
                out.append("%s-" % pad)
                out += _text_lines(item, indent + 2)
            else:
                out.append("%s- %s" % (pad, json.dumps(item, sort_keys=True, ensure_ascii=False)))
        return out
    return ["%s%s" % (pad, json.dumps(value, ensure_ascii=False))]


def render_text(report):
    data = report.as_json()
    lines = ["command: %s" % data["command"]]
    if data["anchor"]:
        lines.append('anchor: "%s"' % data["anchor"])
    if data["inputs"]:
        lines.append("inputs:")
        lines += _text_lines(data["inputs"])
    lines.append("result:")
    lines += _text_lines(data["result"])
    if data["witnesses"] not in (None, [], {}):
        lines.append("witnesses:")
        lines += _text_lines(data["witnesses"])
    lines.append("elapsed_ms: %d" % data["elapsed_ms"])
    return "\n".join(lines)


def render(report, fmt="json"):
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError("unknown format %r" % fmt)
