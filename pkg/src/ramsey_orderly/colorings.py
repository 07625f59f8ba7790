"""Decidable subsets of a universe, used as the set X in homogeneity checks."""

from __future__ import annotations

from ._json import from_jsonable, to_jsonable
from .errors import ColoringTypeError
from .terms import App, Var, leading_count


class Coloring:
    def contains(self, value) -> bool:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


class MemberSet(Coloring):
    def __init__(self, values):
        self.values = frozenset(values)

    def contains(self, value):
        try:
            return value in self.values
        except TypeError:
            return False

    def describe(self):
        return {"kind": "member", "set": sorted((to_jsonable(v) for v in self.values), key=repr)}


class Residue(Coloring):
    """Integers whose residue modulo ``modulus`` is in ``accept``."""

    def __init__(self, modulus: int, accept):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        accept = frozenset(accept)
        if not all(0 <= r < modulus for r in accept):
            raise ValueError(f"accepted residues must lie in 0..{modulus - 1}")
        self.modulus = modulus
        self.accept = accept

    def contains(self, value):
        if type(value) is not int:
            raise ColoringTypeError(f"residue coloring applied to non-integer value {value!r}")
        return value % self.modulus in self.accept

    def describe(self):
        return {"kind": "residue", "modulus": self.modulus, "accept": sorted(self.accept)}


class Component(Coloring):
    """Tuples whose ``index``-th component lies in ``inner``."""

    def __init__(self, inner: Coloring, index: int):
        self.inner = inner
        self.index = index

    def contains(self, value):
        if not isinstance(value, tuple) or len(value) <= self.index:
            raise ColoringTypeError(f"component {self.index} requested from {value!r}")
        return self.inner.contains(value[self.index])

    def describe(self):
        return {"kind": "component", "index": self.index, "inner": self.inner.describe()}


class LeadingSymbolParity(Coloring):
    """Terms with an even (or odd) number of ``symbol`` before the first variable."""

    def __init__(self, symbol: str, parity: str = "even"):
        if parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        self.symbol = symbol
        self.parity = parity

    def contains(self, value):
        if not isinstance(value, (Var, App)):
            raise ColoringTypeError(f"leading-parity coloring applied to non-term value {value!r}")
        return (leading_count(value, self.symbol) % 2 == 0) == (self.parity == "even")

    def describe(self):
        return {"kind": "leading-parity", "symbol": self.symbol, "parity": self.parity}


def coloring_from_json(data: dict) -> Coloring:
    kind = data.get("kind")
    if kind == "residue":
        return Residue(int(data["modulus"]), data["accept"])
    if kind == "member":
        return MemberSet(from_jsonable(v) for v in data["set"])
    if kind == "component":
        return Component(coloring_from_json(data["inner"]), int(data["index"]))
    if kind == "leading-parity":
        return LeadingSymbolParity(data["symbol"], data.get("parity", "even"))
    raise ValueError(f"unknown coloring kind {kind!r}")
