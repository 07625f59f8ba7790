"""Concrete algebras, term evaluation and reductions of sequences.

An assignment is represented by a finite prefix (a tuple of universe
values); evaluating a term that mentions a variable past the prefix raises
:class:`IndexBeyondPrefix` instead of extending it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Hashable, Mapping, Sequence

from ._json import from_jsonable, to_jsonable, value_key
from .errors import (
    AlphabetContainsVariable,
    IndexBeyondPrefix,
    UniverseViolation,
    WrongSignature,
)
from .terms import AdmissiblePrefix, Signature, TermCatalog, Term, Var, enumerate_orderly_terms

Value = Hashable


class Algebra:
    """An L-algebra: a signature plus an interpretation of each symbol."""

    signature: Signature

    def apply(self, symbol: str, args: tuple) -> Value:
        raise NotImplementedError

    def contains(self, value) -> bool:
        raise NotImplementedError

    def describe(self):
        """JSON descriptor (a built-in name or a table object)."""
        raise NotImplementedError


class TableAlgebra(Algebra):
    """A finite algebra given by full operation tables.

    ``ops`` maps each symbol to ``(arity, table)`` where ``table`` maps
    argument tuples to values.
    """

    def __init__(self, universe: Sequence[Value], ops: Mapping[str, tuple[int, Mapping[tuple, Value]]]):
        self.universe = tuple(universe)
        if not self.universe:
            raise UniverseViolation("universe must be nonempty")
        if len(set(self.universe)) != len(self.universe):
            raise UniverseViolation("universe has repeated values")
        self._members = frozenset(self.universe)
        self.ops = {name: (arity, dict(table)) for name, (arity, table) in ops.items()}
        self.signature = Signature(tuple((name, arity) for name, (arity, _) in self.ops.items()))
        for name, (arity, table) in self.ops.items():
            for args in itertools.product(self.universe, repeat=arity):
                if args not in table:
                    raise UniverseViolation(f"operation {name!r} undefined at {args!r}")
                if table[args] not in self._members:
                    raise UniverseViolation(f"operation {name!r} leaves the universe at {args!r}")

    def apply(self, symbol, args):
        try:
            return self.ops[symbol][1][args]
        except KeyError:
            raise UniverseViolation(f"no table entry for {symbol} at {args!r}") from None

    def contains(self, value):
        try:
            return value in self._members
        except TypeError:
            return False

    def describe(self):
        return {
            "universe": [to_jsonable(u) for u in self.universe],
            "ops": {
                name: {
                    "arity": arity,
                    "table": {
                        ",".join(value_key(x) for x in args): to_jsonable(val)
                        for args, val in table.items()
                    },
                }
                for name, (arity, table) in self.ops.items()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "TableAlgebra":
        universe = tuple(from_jsonable(u) for u in data["universe"])
        by_key = {value_key(u): u for u in universe}
        ops = {}
        for name, spec in data["ops"].items():
            arity = int(spec["arity"])
            rows = {}
            for args in itertools.product(universe, repeat=arity):
                key = ",".join(value_key(x) for x in args)
                if key not in spec["table"]:
                    raise UniverseViolation(f"operation {name!r} has no row {key!r}")
                out = value_key(from_jsonable(spec["table"][key]))
                if out not in by_key:
                    raise UniverseViolation(f"operation {name!r} maps {key!r} outside the universe")
                rows[args] = by_key[out]
            ops[name] = (arity, rows)
        return cls(universe, ops)

    def __repr__(self):
        return f"TableAlgebra(universe={self.universe!r}, symbols={self.signature.names!r})"


class NatAdd(Algebra):
    """Positive integers under addition (Python ints, so no overflow)."""

    def __init__(self, symbol: str = "f"):
        self.symbol = symbol
        self.signature = Signature(((symbol, 2),))

    def apply(self, symbol, args):
        x, y = args
        return x + y

    def contains(self, value):
        return type(value) is int and value >= 1

    def describe(self):
        return "nat-add"

    def __repr__(self):
        return "NatAdd()"


VARIABLE_LETTER = "v"


class VariableWords(Algebra):
    """Variable words over an alphabet.

    Symbols: ``cat`` is concatenation; for each letter ``a``, ``rsub_a`` maps
    ``(w, w')`` to ``w * w'(a)`` and ``lsub_a`` maps it to ``w(a) * w'``, where
    ``w(a)`` replaces every ``v`` in ``w`` by ``a``.
    """

    def __init__(self, alphabet: Sequence[str]):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if VARIABLE_LETTER in alphabet:
            raise AlphabetContainsVariable(f"alphabet may not contain the variable letter {VARIABLE_LETTER!r}")
        for a in alphabet:
            if len(a) != 1:
                raise ValueError(f"letters must be single characters, got {a!r}")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet has repeated letters")
        self.alphabet = alphabet
        symbols = [("cat", 2)]
        symbols += [(f"rsub_{a}", 2) for a in alphabet]
        symbols += [(f"lsub_{a}", 2) for a in alphabet]
        self.signature = Signature(tuple(symbols))

    def apply(self, symbol, args):
        w, w2 = args
        if symbol == "cat":
            return w + w2
        kind, a = symbol.split("_", 1)
        if kind == "rsub":
            return w + w2.replace(VARIABLE_LETTER, a)
        return w.replace(VARIABLE_LETTER, a) + w2

    def contains(self, value):
        return (
            isinstance(value, str)
            and VARIABLE_LETTER in value
            and all(c == VARIABLE_LETTER or c in self.alphabet for c in value)
        )

    def describe(self):
        return "variable-words:" + "".join(self.alphabet)

    def __repr__(self):
        return f"VariableWords({''.join(self.alphabet)!r})"


class PairAlgebra(Algebra):
    """``h((x1, y1), (x2, y2)) = (g(x1, y1), g(x2, y2))`` for the single
    binary operation ``g`` of ``inner``."""

    def __init__(self, inner: Algebra):
        syms = inner.signature.symbols
        if len(syms) != 1 or syms[0][1] != 2:
            raise WrongSignature("pair algebra needs an inner algebra with exactly one binary symbol")
        self.inner = inner
        self.symbol = syms[0][0]
        self.signature = inner.signature

    def apply(self, symbol, args):
        (x1, y1), (x2, y2) = args
        return (self.inner.apply(self.symbol, (x1, y1)), self.inner.apply(self.symbol, (x2, y2)))

    def contains(self, value):
        return (
            isinstance(value, tuple)
            and len(value) == 2
            and self.inner.contains(value[0])
            and self.inner.contains(value[1])
        )

    def describe(self):
        inner = self.inner.describe()
        return "pair:" + inner if isinstance(inner, str) else {"pair": inner}

    def __repr__(self):
        return f"PairAlgebra({self.inner!r})"


def variable_word_ops(alphabet: Sequence[str]) -> VariableWords:
    return VariableWords(alphabet)


def pair_algebra(inner: Algebra) -> PairAlgebra:
    return PairAlgebra(inner)


def algebra_from_json(data) -> Algebra:
    """Build an algebra from a built-in name or a table object."""
    if isinstance(data, str):
        if data == "nat-add":
            return NatAdd()
        if data.startswith("variable-words:"):
            return VariableWords(tuple(data.split(":", 1)[1]))
        if data.startswith("pair:"):
            return PairAlgebra(algebra_from_json(data.split(":", 1)[1]))
        raise ValueError(f"unknown built-in algebra {data!r}")
    if isinstance(data, dict) and "pair" in data:
        return PairAlgebra(algebra_from_json(data["pair"]))
    return TableAlgebra.from_json(data)


def check_assignment(alg: Algebra, a: Sequence) -> tuple:
    a = tuple(a)
    for i, x in enumerate(a):
        if not alg.contains(x):
            raise UniverseViolation(f"assignment entry {i} ({x!r}) is not in the universe")
    return a


def evaluate(t: Term, alg: Algebra, a: Sequence) -> Value:
    """The interpretation of ``t`` in ``alg`` under the assignment prefix ``a``."""
    top = max(t.occurrences)
    if top >= len(a):
        raise IndexBeyondPrefix(top, len(a))
    return _eval(t, alg, a)


def _eval(t, alg, a):
    if type(t) is Var:
        return a[t.index]
    return alg.apply(t.symbol, tuple(_eval(x, alg, a) for x in t.args))


def reduce_sequence(alg: Algebra, a: Sequence, tvec: AdmissiblePrefix) -> tuple:
    """``b(i) = tvec(i)`` evaluated under ``a``."""
    return tuple(evaluate(t, alg, a) for t in tvec)


@dataclass(frozen=True)
class FiniteReductionSet:
    """Values of enumerated terms, keeping the term behind each entry."""

    entries: tuple[tuple[Any, Any], ...]
    max_size: int

    @property
    def values(self) -> tuple:
        return tuple(dict.fromkeys(v for _, v in self.entries))

    def to_json(self) -> dict:
        def term_json(t):
            return [x.text for x in t] if isinstance(t, tuple) else t.text

        return {
            "max_size": self.max_size,
            "entries": [{"term": term_json(t), "value": to_jsonable(v)} for t, v in self.entries],
            "values": [to_jsonable(v) for v in self.values],
        }


def finite_reductions(alg: Algebra, a: Sequence, max_size: int) -> FiniteReductionSet:
    terms = enumerate_orderly_terms(alg.signature, max_size, len(a) - 1)
    return FiniteReductionSet(tuple((t, _eval(t, alg, a)) for t in terms), max_size)


def tuple_reductions(alg: Algebra, a: Sequence, n: int, max_size: int) -> list[tuple]:
    """Distinct ``(t1(a), ..., tn(a))`` over enumerated ``t1 < ... < tn``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(a) < n:
        return []
    catalog = TermCatalog(alg.signature, max_size, len(a) - 1)
    seen = dict.fromkeys(tuple(_eval(t, alg, a) for t in p) for p in catalog.prefixes(n))
    return list(seen)
