"""JSON-lines curve files: one ``{"label": ..., "a": "<int>", "b": "<int>"}`` per line.

Coefficients are decimal strings so models with large coefficients load
losslessly. Blank lines and lines starting with ``#`` are skipped.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .curve import RationalCurve


class CurveFileError(ValueError):
    pass


class DuplicateLabel(CurveFileError):
    pass


def bundled_path() -> Path:
    return Path(str(resources.files("isoradix") / "data" / "curves.jsonl"))


def _parse_int(value, what, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise CurveFileError(f"{where}: {what} must be a decimal string")
    try:
        return int(value)
    except ValueError:
        raise CurveFileError(f"{where}: {what}={value!r} is not an integer") from None


def parse_curves(lines, source="<curves>") -> list[RationalCurve]:
    curves = {}
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CurveFileError(f"{where}: malformed JSON ({exc.msg})") from None
        if not isinstance(obj, dict) or not {"label", "a", "b"} <= obj.keys():
            raise CurveFileError(f"{where}: expected an object with label, a, b")
        label = str(obj["label"])
        a = _parse_int(obj["a"], "a", where)
        b = _parse_int(obj["b"], "b", where)
        if label in curves:
            raise DuplicateLabel(f"{where}: duplicate label {label!r}")
        try:
            curves[label] = RationalCurve(label, a, b)
        except ValueError as exc:
            raise CurveFileError(f"{where}: {exc}") from None
    return list(curves.values())


def ingest_curves(path=None) -> list[RationalCurve]:
    path = Path(path) if path is not None else bundled_path()
    with open(path, encoding="utf-8") as fh:
        return parse_curves(fh, str(path))


def dump_curves(curves) -> str:
    return "".join(json.dumps({"label": E.label, "a": str(E.a), "b": str(E.b)}) + "\n" for E in curves)
