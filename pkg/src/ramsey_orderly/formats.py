"""JSON descriptors for views (the algebra and coloring formats live with
their modules)."""

from __future__ import annotations

from ._json import from_jsonable
from .algebras import algebra_from_json
from .orderly import Free, Induced, IndexSet, OrderlyView, Patched, TrivialConstant, reduce_view
from .sharp import SharpView
from .terms import AdmissiblePrefix, Signature, parse_term


def _signature(data: dict) -> Signature:
    sig = data.get("signature")
    return Signature.binary() if sig is None else Signature.from_json(sig)


def view_from_json(data: dict) -> OrderlyView:
    kind = data.get("kind")
    if kind == "induced":
        return Induced(algebra_from_json(data["algebra"]), from_jsonable(list(data["assignment"])))
    if kind == "reduced":
        base = view_from_json(data["base"])
        return reduce_view(base, AdmissiblePrefix.from_json(data["witness"], base.signature))
    if kind == "trivial":
        return TrivialConstant(from_jsonable(data["value"]), _signature(data))
    if kind == "index-set":
        return IndexSet(_signature(data))
    if kind == "free":
        return Free(_signature(data))
    if kind == "sharp":
        return SharpView(view_from_json(data["base"]))
    if kind == "patched":
        base = view_from_json(data["base"])
        overrides = {parse_term(k, base.signature): from_jsonable(v) for k, v in data["overrides"].items()}
        return Patched(base, overrides)
    raise ValueError(f"unknown view kind {kind!r}")

