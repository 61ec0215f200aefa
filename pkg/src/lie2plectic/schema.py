"""Input errors and small helpers for reading definition documents."""

from __future__ import annotations

import json
from pathlib import Path


class InputError(ValueError):
    """A definition document is malformed; ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def load_json(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(p)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(p)) from exc
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object", str(p))
    return doc


def field(doc: dict, key: str, path: str, kind=None, default=...):
    if key not in doc:
        if default is ...:
            raise InputError("missing required field", f"{path}.{key}" if path else key)
        return default
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise InputError(f"expected {name}, got {type(value).__name__}", f"{path}.{key}" if path else key)
    return value
