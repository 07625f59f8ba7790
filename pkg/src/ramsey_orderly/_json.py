"""Mapping universe values to and from JSON."""

from .terms import App, Var


def to_jsonable(value):
    if isinstance(value, (Var, App)):
        return value.text
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, frozenset):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, (tuple, list)):
        return [to_jsonable(v) for v in value]
    return value


def from_jsonable(value):
    if isinstance(value, list):
        return tuple(from_jsonable(v) for v in value)
    return value


def value_key(value) -> str:
    """Key used for a value inside table JSON (``"x,y"`` style rows)."""
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(value_key(v) for v in value) + ")"
    return str(value)
