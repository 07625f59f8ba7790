"""Orderly algebras as memoized valuations of orderly terms.

A view maps every orderly term (within its coverage) to a universe value.
Coverage is the number of variables a view can interpret; ``None`` means
every variable.  Queries past the coverage raise :class:`IndexBeyondPrefix`
at query time, so partially covered views stay usable.
"""

from __future__ import annotations

import itertools
from typing import Any, Sequence

from .algebras import Algebra, TableAlgebra, check_assignment
from .errors import CongruenceViolation, IndexBeyondPrefix, UniverseOverflow, WrongSignature
from .reports import Bounds, CheckReport
from .terms import (
    AdmissiblePrefix,
    App,
    Signature,
    Term,
    TermCatalog,
    Var,
    _subst,
    compose,
    enumerate_orderly_terms,
    variables_of,
)


class OrderlyView:
    """Base class. Subclasses implement ``_value``; ``value`` memoizes it.

    The memo is a plain dict: inserts are idempotent, so concurrent readers
    at worst compute a value twice.
    """

    signature: Signature
    coverage: int | None = None

    def __init__(self):
        self._memo: dict[Term, Any] = {}

    def value(self, t: Term):
        try:
            return self._memo[t]
        except KeyError:
            pass
        v = self._value(t)
        self._memo[t] = v
        return v

    def _value(self, t: Term):
        raise NotImplementedError

    def _check_coverage(self, t: Term) -> None:
        if self.coverage is not None:
            top = max(t.occurrences)
            if top >= self.coverage:
                raise IndexBeyondPrefix(top, self.coverage)

    def describe(self) -> dict:
        raise NotImplementedError


class Induced(OrderlyView):
    """``t`` evaluated in a concrete algebra under an assignment prefix."""

    def __init__(self, algebra: Algebra, assignment: Sequence):
        super().__init__()
        self.algebra = algebra
        self.assignment = check_assignment(algebra, assignment)
        self.signature = algebra.signature
        self.coverage = len(self.assignment)

    def _value(self, t):
        if type(t) is Var:
            self._check_coverage(t)
            return self.assignment[t.index]
        return self.algebra.apply(t.symbol, tuple(self.value(x) for x in t.args))

    def describe(self):
        return {"kind": "induced", "algebra": self.algebra.describe(), "assignment": list(self.assignment)}


class TrivialConstant(OrderlyView):
    def __init__(self, constant, signature: Signature):
        super().__init__()
        self.constant = constant
        self.signature = signature

    def _value(self, t):
        return self.constant

    def describe(self):
        return {"kind": "trivial", "value": self.constant, "signature": self.signature.to_json()}


class IndexSet(OrderlyView):
    """``t`` maps to the set of indices of variables appearing in it."""

    def __init__(self, signature: Signature):
        super().__init__()
        self.signature = signature

    def _value(self, t):
        return frozenset(t.occurrences)

    def describe(self):
        return {"kind": "index-set", "signature": self.signature.to_json()}


class Free(OrderlyView):
    """The identity valuation; one-to-one by construction."""

    def __init__(self, signature: Signature):
        super().__init__()
        self.signature = signature

    def value(self, t):
        return t

    def _value(self, t):
        return t

    def describe(self):
        return {"kind": "free", "signature": self.signature.to_json()}


class Reduced(OrderlyView):
    """``value(s) = base.value(s[witness])``."""

    def __init__(self, base: OrderlyView, witness: AdmissiblePrefix):
        super().__init__()
        self.base = base
        self.witness = witness
        self.signature = base.signature
        self.coverage = len(witness)

    def _value(self, t):
        self._check_coverage(t)
        return self.base.value(_subst(t, self.witness.terms))

    def describe(self):
        return {"kind": "reduced", "base": self.base.describe(), "witness": self.witness.to_json()["terms"]}


class Patched(OrderlyView):
    """A base view with some term values overridden; used for fault injection."""

    def __init__(self, base: OrderlyView, overrides: dict):
        super().__init__()
        self.base = base
        self.overrides = dict(overrides)
        self.signature = base.signature
        self.coverage = base.coverage

    def _value(self, t):
        if t in self.overrides:
            return self.overrides[t]
        return self.base.value(t)

    def describe(self):
        return {
            "kind": "patched",
            "base": self.base.describe(),
            "overrides": {t.text: v for t, v in self.overrides.items()},
        }


def value(view: OrderlyView, t: Term):
    return view.value(t)


def reduce_view(view: OrderlyView, witness: AdmissiblePrefix) -> OrderlyView:
    """The reduction of ``view`` witnessed by ``witness``.

    A reduction of a reduction is flattened into one witness by composing
    substitutions; the composed witness stops where the inner one runs out.
    """
    if isinstance(view, Reduced):
        try:
            return Reduced(view.base, compose(witness, view.witness))
        except IndexBeyondPrefix:
            pass
    return Reduced(view, witness)


def induced_sequence(view: OrderlyView, length: int) -> tuple:
    if view.coverage is not None and length > view.coverage:
        raise IndexBeyondPrefix(length - 1, view.coverage)
    return tuple(view.value(Var(i)) for i in range(length))


def covered_terms(view: OrderlyView, bounds: Bounds) -> list[Term]:
    capped = bounds.capped(view.coverage)
    if capped is None:
        return []
    return enumerate_orderly_terms(view.signature, capped.max_size, capped.max_index)


def applications(sig: Signature, bounds: Bounds):
    """Yield ``(symbol, args)`` for every orderly application term within bounds."""
    if bounds.max_size < 2:
        return
    catalog = TermCatalog(sig, bounds.max_size - 1, bounds.max_index)
    for name, arity in sig.symbols:
        if arity + 1 > bounds.max_size:
            continue
        for chain in catalog.prefixes(arity):
            if 1 + sum(t.size for t in chain) <= bounds.max_size:
                yield name, chain.terms


def check_congruence(view: OrderlyView, bounds: Bounds) -> CheckReport:
    """Look for two applications of one symbol whose ordered arguments agree
    in value while the applications do not."""
    capped = bounds.capped(view.coverage)
    report = CheckReport("congruence", capped)
    if capped is None:
        return report
    seen: dict = {}
    for name, args in applications(view.signature, capped):
        term = App(name, args)
        key = (name, tuple(view.value(a) for a in args))
        val = view.value(term)
        report.checked += 1
        if key not in seen:
            seen[key] = (term, val)
            continue
        other, other_val = seen[key]
        if other_val != val:
            report.add({
                "symbol": name,
                "argument_values": list(key[1]),
                "first": other.text,
                "first_value": other_val,
                "second": term.text,
                "second_value": val,
            })
    return report


def reconstruct_algebra(
    view: OrderlyView, bounds: Bounds, default=None, max_universe: int = 64
) -> TableAlgebra:
    """Tabulate each symbol's partial operation on the values the view takes
    within bounds, filling unrealized argument tuples with ``default``.

    The universe is listed in order of first appearance along the canonical
    term enumeration; ``default`` falls back to its first element.
    """
    capped = bounds.capped(view.coverage)
    if capped is None:
        raise IndexBeyondPrefix(0, 0)
    universe = list(dict.fromkeys(view.value(t) for t in covered_terms(view, capped)))
    if len(universe) > max_universe:
        raise UniverseOverflow(
            f"{len(universe)} distinct values within bounds exceeds max_universe={max_universe}"
        )
    if default is None:
        default = universe[0]
    elif default not in universe:
        universe.append(default)
    tables: dict[str, dict] = {name: {} for name in view.signature.names}
    witnesses: dict = {}
    for name, args in applications(view.signature, capped):
        term = App(name, args)
        key = tuple(view.value(a) for a in args)
        val = view.value(term)
        table = tables[name]
        if key in table and table[key] != val:
            raise CongruenceViolation(
                f"{name} at {key!r}: {witnesses[name, key].text} gives {table[key]!r}, {term.text} gives {val!r}"
            )
        table[key] = val
        witnesses[name, key] = term
    ops = {}
    for name, arity in view.signature.symbols:
        table = tables[name]
        for args in itertools.product(universe, repeat=arity):
            table.setdefault(args, default)
        ops[name] = (arity, table)
    return TableAlgebra(universe, ops)


def _single_binary(sig: Signature) -> str:
    if len(sig.symbols) != 1 or sig.symbols[0][1] != 2:
        raise WrongSignature("expected a signature with exactly one binary symbol")
    return sig.symbols[0][0]


def is_orderly_semigroup(view: OrderlyView, bounds: Bounds) -> CheckReport:
    """Check ``value(f f t1 t2 t3) == value(f t1 f t2 t3)`` for ``t1 < t2 < t3``,
    and that terms with the same variables take the same value."""
    f = _single_binary(view.signature)
    capped = bounds.capped(view.coverage)
    report = CheckReport("semigroup", capped)
    if capped is None:
        return report
    bracket_checked = bracket_bad = 0
    if capped.max_size >= 5:
        catalog = TermCatalog(view.signature, capped.max_size - 4, capped.max_index)
        for t1, t2, t3 in catalog.prefixes(3):
            if t1.size + t2.size + t3.size + 2 > capped.max_size:
                continue
            left = App(f, (App(f, (t1, t2)), t3))
            right = App(f, (t1, App(f, (t2, t3))))
            bracket_checked += 1
            lv, rv = view.value(left), view.value(right)
            if lv != rv:
                bracket_bad += 1
                report.add({"check": "bracketing", "triple": [t1.text, t2.text, t3.text],
                            "left": left.text, "left_value": lv, "right": right.text, "right_value": rv})
    same_checked = same_bad = 0
    groups: dict = {}
    for t in covered_terms(view, capped):
        key = variables_of(t)
        val = view.value(t)
        if key not in groups:
            groups[key] = (t, val)
            continue
        same_checked += 1
        first, first_val = groups[key]
        if first_val != val:
            same_bad += 1
            report.add({"check": "same-variables", "first": first.text, "first_value": first_val,
                        "second": t.text, "second_value": val})
    report.checked = bracket_checked + same_checked
    report.details = {
        "bracketing_checked": bracket_checked,
        "bracketing_violations": bracket_bad,
        "same_variables_checked": same_checked,
        "same_variables_violations": same_bad,
    }
    return report


def check_prehomogeneous(view: OrderlyView, coloring, bounds: Bounds) -> CheckReport:
    """Terms with the same variables must fall on the same side of ``coloring``."""
    capped = bounds.capped(view.coverage)
    report = CheckReport("prehomogeneous", capped)
    if capped is None:
        return report
    groups: dict = {}
    for t in covered_terms(view, capped):
        key = variables_of(t)
        inside = coloring.contains(view.value(t))
        if key not in groups:
            groups[key] = (t, inside)
            continue
        report.checked += 1
        first, first_inside = groups[key]
        if first_inside != inside:
            report.add({"first": first.text, "first_inside": first_inside, "second": t.text, "second_inside": inside})
    report.details = {"coloring": coloring.describe()}
    return report
