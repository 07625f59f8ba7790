"""Orderly terms over a purely functional signature.

Terms are written in whitespace-separated Polish prefix notation, with
variables spelled ``v<index>``::

    f f v0 v1 v2      # f(f(v0, v1), v2)

A term is *orderly* when its variable indices, read left to right, strictly
increase.  For orderly terms ``s < t`` means the last index of ``s`` is below
the first index of ``t``; a list of orderly terms increasing under ``<`` is an
admissible prefix (a finite stand-in for an infinite admissible sequence).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    ArityMismatch,
    IndexBeyondPrefix,
    MalformedVariable,
    NotAdmissible,
    NotOrderly,
    ParseError,
    SignatureError,
    UnknownSymbol,
)

_VARIABLE = re.compile(r"v(0|[1-9][0-9]*)")
_IDENTIFIER = re.compile(r"[A-Za-z_*+][A-Za-z0-9_*+]*")
_VARIABLE_LIKE = re.compile(r"v[0-9]*")


@dataclass(frozen=True)
class Signature:
    """Function symbols with their arities, in declaration order."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        seen = set()
        for name, arity in symbols:
            if not _IDENTIFIER.fullmatch(name) or _VARIABLE_LIKE.fullmatch(name):
                raise SignatureError(f"bad symbol name {name!r}")
            if name in seen:
                raise SignatureError(f"duplicate symbol {name!r}")
            if arity < 1:
                raise SignatureError(f"symbol {name!r} has arity {arity}; nullary symbols are not allowed")
            seen.add(name)

    @classmethod
    def of(cls, **arities: int) -> "Signature":
        return cls(tuple(arities.items()))

    @classmethod
    def binary(cls, name: str = "f") -> "Signature":
        return cls(((name, 2),))

    def arity(self, name: str) -> int:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        raise UnknownSymbol(f"unknown symbol {name!r}")

    def __contains__(self, name) -> bool:
        return any(sym == name for sym, _ in self.symbols)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def to_json(self) -> dict:
        return {"symbols": [{"name": n, "arity": a} for n, a in self.symbols]}

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        try:
            return cls(tuple((s["name"], s["arity"]) for s in data["symbols"]))
        except (KeyError, TypeError) as exc:
            raise SignatureError(f"malformed signature JSON: {exc}") from None


class Var:
    """The variable ``v<index>``."""

    __slots__ = ("index", "_hash")
    size = 1
    orderly = True

    def __init__(self, index: int):
        if index < 0:
            raise ValueError("variable index must be non-negative")
        self.index = index
        self._hash = hash(("v", index))

    @property
    def occurrences(self) -> tuple[int, ...]:
        return (self.index,)

    @property
    def first(self) -> int:
        return self.index

    @property
    def last(self) -> int:
        return self.index

    def tokens(self) -> Iterator[Union[str, int]]:
        yield self.index

    @property
    def text(self) -> str:
        return f"v{self.index}"

    def __eq__(self, other):
        return type(other) is Var and other.index == self.index

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"Var({self.index})"


class App:
    """Application of a function symbol to argument terms."""

    __slots__ = ("symbol", "args", "size", "occurrences", "orderly", "_hash", "_text")

    def __init__(self, symbol: str, args: Sequence["Term"]):
        args = tuple(args)
        if not args:
            raise ArityMismatch(f"symbol {symbol!r} applied to no arguments")
        self.symbol = symbol
        self.args = args
        self.size = 1 + sum(a.size for a in args)
        occ: tuple[int, ...] = ()
        orderly = True
        for a in args:
            if orderly and (not a.orderly or (occ and occ[-1] >= a.occurrences[0])):
                orderly = False
            occ += a.occurrences
        self.occurrences = occ
        self.orderly = orderly
        self._hash = hash((symbol, args))
        self._text = None

    @property
    def first(self) -> int:
        return self.occurrences[0]

    @property
    def last(self) -> int:
        return self.occurrences[-1]

    def tokens(self) -> Iterator[Union[str, int]]:
        stack: list[Term] = [self]
        while stack:
            t = stack.pop()
            if type(t) is Var:
                yield t.index
            else:
                yield t.symbol
                stack.extend(reversed(t.args))

    @property
    def text(self) -> str:
        if self._text is None:
            self._text = " ".join(f"v{tok}" if type(tok) is int else tok for tok in self.tokens())
        return self._text

    def __eq__(self, other):
        return (
            type(other) is App
            and other._hash == self._hash
            and other.symbol == self.symbol
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"Term({self.text!r})"


Term = Union[Var, App]


def parse_term(text: str, sig: Signature) -> Term:
    tokens = text.split()
    if not tokens:
        raise ParseError("empty term")
    # frames are [symbol, arity, collected args]
    stack: list[list] = []
    result = None
    for pos, tok in enumerate(tokens):
        if result is not None:
            raise ArityMismatch(f"extra tokens after complete term: {' '.join(tokens[pos:])!r}")
        if tok in sig:
            stack.append([tok, sig.arity(tok), []])
            continue
        if _VARIABLE.fullmatch(tok):
            node: Term = Var(int(tok[1:]))
        elif tok.startswith("v"):
            raise MalformedVariable(f"malformed variable {tok!r}")
        else:
            raise UnknownSymbol(f"unknown symbol {tok!r}")
        while stack:
            frame = stack[-1]
            frame[2].append(node)
            if len(frame[2]) < frame[1]:
                break
            stack.pop()
            node = App(frame[0], frame[2])
        else:
            result = node
    if result is None:
        sym, arity, got = stack[-1]
        raise ArityMismatch(f"symbol {sym!r} expects {arity} arguments, got {len(got)}")
    return result


def check_term(t: Term, sig: Signature) -> None:
    """Raise unless every application in ``t`` matches ``sig``."""
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) is App:
            if sig.arity(u.symbol) != len(u.args):
                raise ArityMismatch(f"symbol {u.symbol!r} expects {sig.arity(u.symbol)} arguments, got {len(u.args)}")
            stack.extend(u.args)


def is_orderly(t: Term) -> bool:
    return t.orderly


def term_lt(s: Term, t: Term) -> bool:
    return s.last < t.first


def variables_of(t: Term) -> tuple[int, ...]:
    return tuple(sorted(set(t.occurrences)))


def leading_count(t: Term, symbol: str) -> int:
    """Occurrences of ``symbol`` before the first variable of ``t``."""
    count = 0
    while type(t) is App:
        if t.symbol == symbol:
            count += 1
        t = t.args[0]
    return count


def sort_key(t: Term):
    """Canonical order: size, then lexicographic over tokens.

    Variables compare by numeric index so that ``v2`` precedes ``v10``.
    """
    return (t.size, tuple(("v", tok) if type(tok) is int else (tok, -1) for tok in t.tokens()))


class AdmissiblePrefix:
    """A nonempty finite list of orderly terms increasing under ``<``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Term]):
        terms = tuple(terms)
        if not terms:
            raise NotAdmissible("admissible prefix must be nonempty")
        for i, t in enumerate(terms):
            if not t.orderly:
                raise NotOrderly(f"entry {i} ({t}) is not orderly")
            if i and not terms[i - 1].last < t.first:
                raise NotAdmissible(f"entries {i - 1} and {i} are not increasing: {terms[i - 1]} vs {t}")
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def _trusted(cls, terms: tuple) -> "AdmissiblePrefix":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = hash(terms)
        return obj

    @classmethod
    def identity(cls, length: int) -> "AdmissiblePrefix":
        return cls._trusted(tuple(Var(i) for i in range(length)))

    @classmethod
    def parse(cls, texts: Iterable[str], sig: Signature) -> "AdmissiblePrefix":
        return cls(parse_term(x, sig) for x in texts)

    @classmethod
    def from_json(cls, data, sig: Signature) -> "AdmissiblePrefix":
        if isinstance(data, dict):
            data = data["terms"]
        return cls.parse(data, sig)

    def to_json(self) -> dict:
        return {"terms": [t.text for t in self.terms]}

    @property
    def last(self) -> int:
        return self.terms[-1].last

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return isinstance(other, AdmissiblePrefix) and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "<" + ", ".join(t.text for t in self.terms) + ">"


def substitute(s: Term, tvec: Sequence[Term]) -> Term:
    """Replace each ``v_i`` in ``s`` by ``tvec[i]``."""
    n = len(tvec)
    top = max(s.occurrences)
    if top >= n:
        raise IndexBeyondPrefix(top, n)
    terms = tvec.terms if isinstance(tvec, AdmissiblePrefix) else tuple(tvec)
    return _subst(s, terms)


def _subst(s: Term, terms: tuple) -> Term:
    if type(s) is Var:
        return terms[s.index]
    return App(s.symbol, tuple(_subst(a, terms) for a in s.args))


def compose(tvec: AdmissiblePrefix, uvec: AdmissiblePrefix) -> AdmissiblePrefix:
    """The prefix ``<t_0[u], t_1[u], ...>``, truncated where ``u`` runs out.

    Substituting by the result equals substituting by ``tvec`` then ``uvec``.
    Raises IndexBeyondPrefix when not even ``t_0`` is covered.
    """
    out = []
    for t in tvec:
        if t.last >= len(uvec):
            break
        out.append(_subst(t, uvec.terms))
    if not out:
        raise IndexBeyondPrefix(tvec[0].last, len(uvec))
    return AdmissiblePrefix._trusted(tuple(out))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


@lru_cache(maxsize=256)
def _orderly_terms(sig: Signature, max_size: int, max_var_index: int) -> tuple:
    memo: dict[tuple[int, int], list] = {}

    def exact(lo: int, size: int) -> list:
        key = (lo, size)
        if key in memo:
            return memo[key]
        if size == 1:
            out = [Var(i) for i in range(lo, max_var_index + 1)]
        else:
            out = []
            for name, arity in sig.symbols:
                if arity > size - 1:
                    continue
                for parts in _compositions(size - 1, arity):
                    out.extend(App(name, args) for args in chains(lo, parts))
        memo[key] = out
        return out

    def chains(lo: int, parts: tuple) -> Iterator[tuple]:
        if not parts:
            yield ()
            return
        for t in exact(lo, parts[0]):
            for rest in chains(t.last + 1, parts[1:]):
                yield (t,) + rest

    found = [t for size in range(1, max_size + 1) for t in exact(0, size)]
    found.sort(key=sort_key)
    return tuple(found)


def enumerate_orderly_terms(sig: Signature, max_size: int, max_var_index: int) -> list[Term]:
    """Every orderly term with at most ``max_size`` symbol and variable
    occurrences and indices at most ``max_var_index``, in canonical order."""
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    if max_var_index < 0:
        return []
    return list(_orderly_terms(sig, max_size, max_var_index))


class TermCatalog:
    """Enumerated orderly terms, indexed by the smallest allowed first index.

    Drives the depth-first walk over admissible prefixes.
    """

    def __init__(self, sig: Signature, max_size: int, max_var_index: int):
        self.signature = sig
        self.max_size = max_size
        self.max_var_index = max_var_index
        self.terms = _orderly_terms(sig, max_size, max_var_index) if max_var_index >= 0 else ()
        self._from: dict[int, tuple] = {}

    def starting_at(self, lo: int) -> tuple:
        """Terms whose first index is at least ``lo``, canonical order kept."""
        got = self._from.get(lo)
        if got is None:
            got = tuple(t for t in self.terms if t.first >= lo)
            self._from[lo] = got
        return got

    def prefixes(self, length: int, head: tuple = ()) -> Iterator[AdmissiblePrefix]:
        if length < 1:
            raise ValueError("length must be at least 1")
        stack = [head]
        while stack:
            cur = stack.pop()
            if len(cur) == length:
                yield AdmissiblePrefix._trusted(cur)
                continue
            lo = cur[-1].last + 1 if cur else 0
            stack.extend(cur + (t,) for t in reversed(self.starting_at(lo)))


def enumerate_admissible_prefixes(
    sig: Signature, length: int, max_size: int, max_var_index: int
) -> Iterator[AdmissiblePrefix]:
    """Stream every admissible prefix of the given length, lexicographic over
    the canonical term order."""
    return TermCatalog(sig, max_size, max_var_index).prefixes(length)
