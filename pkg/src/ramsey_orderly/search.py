"""Bounded searches for homogeneous reductions.

Witnesses are admissible prefixes of length ``k`` walked in canonical order
(lexicographic over the canonical term order).  A witness is judged on the
values its reduction takes at every orderly term of size at most ``fr_size``
over the ``k`` available variables, so a Found result is only homogeneous
relative to that bound.

Pruning keeps the first witness intact: the terms over the first ``j``
variables take the same values under every extension of a length-``j``
prefix, so a mixed partial prefix rules out its whole subtree.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from ._json import to_jsonable
from .algebras import FiniteReductionSet, evaluate
from .colorings import Coloring, LeadingSymbolParity
from .errors import NotInjective
from .orderly import Free, Induced, OrderlyView, covered_terms
from .reports import Bounds, CheckReport
from .terms import AdmissiblePrefix, App, Term, TermCatalog, _subst, enumerate_orderly_terms, substitute

FOUND = "found"
EXHAUSTED = "exhausted"
TIMED_OUT = "timed-out"


@dataclass(frozen=True)
class SearchConfig:
    """``k`` is the witness length; witness terms have size at most
    ``max_size`` and indices at most ``max_index``; homogeneity is judged on
    terms of size at most ``fr_size``."""

    k: int = 3
    max_size: int = 3
    max_index: int = 11
    fr_size: int = 5
    time_budget_ms: Optional[int] = None
    threads: int = 1

    def __post_init__(self):
        for name in ("k", "max_size", "fr_size", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_index < 0:
            raise ValueError("max_index must be non-negative")
        if self.time_budget_ms is not None and self.time_budget_ms <= 0:
            raise ValueError("time_budget_ms must be positive")

    def to_json(self) -> dict:
        # threads is left out: results must not depend on it
        return {
            "k": self.k,
            "max_size": self.max_size,
            "max_index": self.max_index,
            "fr_size": self.fr_size,
            "time_budget_ms": self.time_budget_ms,
        }


@dataclass
class SearchResult:
    outcome: str
    query: dict
    witness: Optional[AdmissiblePrefix] = None
    side: Optional[str] = None
    certificate: Optional[FiniteReductionSet] = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            **self.query,
            "witness": self.witness.to_json()["terms"] if self.witness else None,
            "side": self.side,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "stats": self.stats,
        }


class _Timeout(Exception):
    pass


class _Search:
    """Depth-first walk over admissible prefixes with prefix pruning.

    ``levels[j]`` lists the items (terms, or n-chains of terms) whose largest
    index is ``j``; they become decidable once the prefix has length ``j + 1``.
    """

    def __init__(self, view: OrderlyView, cfg: SearchConfig, n: int, judge: Callable):
        self.view = view
        self.cfg = cfg
        self.n = n
        self.judge = judge
        top = cfg.max_index if view.coverage is None else min(cfg.max_index, view.coverage - 1)
        self.catalog = TermCatalog(view.signature, cfg.max_size, top)
        fr_terms = enumerate_orderly_terms(view.signature, cfg.fr_size, cfg.k - 1)
        self.levels: list[list] = [[] for _ in range(cfg.k)]
        if n == 1:
            for s in fr_terms:
                self.levels[s.last].append(s)
        elif n <= cfg.k:
            fr_catalog = TermCatalog(view.signature, cfg.fr_size, cfg.k - 1)
            for chain in fr_catalog.prefixes(n):
                self.levels[chain.last].append(chain.terms)
        self.item_count = sum(len(lv) for lv in self.levels)
        self.deadline = None if cfg.time_budget_ms is None else time.monotonic() + cfg.time_budget_ms / 1000

    def _item_value(self, item, prefix: tuple):
        if self.n == 1:
            return self.view.value(_subst(item, prefix))
        return tuple(self.view.value(_subst(s, prefix)) for s in item)

    def run_chunk(self, head: Term, stop: Callable[[], bool]):
        """Search every prefix starting with ``head``; returns (prefix or None, stats)."""
        stats = {"nodes": 0, "pruned": 0, "complete_prefixes": 0}
        stack: list[tuple[tuple, object]] = [((head,), None)]
        while stack:
            prefix, key = stack.pop()
            stats["nodes"] += 1
            if stats["nodes"] % 256 == 0:
                if stop():
                    return None, stats
                if self.deadline is not None and time.monotonic() > self.deadline:
                    raise _Timeout(stats)
            ok = True
            for item in self.levels[len(prefix) - 1]:
                k2 = self.judge(self._item_value(item, prefix))
                if key is None:
                    key = k2
                elif k2 != key:
                    ok = False
                    break
            if not ok:
                stats["pruned"] += 1
                continue
            if len(prefix) == self.cfg.k:
                stats["complete_prefixes"] += 1
                return (prefix, key), stats
            nxt = self.catalog.starting_at(prefix[-1].last + 1)
            stack.extend((prefix + (t,), key) for t in reversed(nxt))
        return None, stats

    def certificate(self, prefix: tuple) -> FiniteReductionSet:
        entries = []
        for level in self.levels:
            for item in level:
                entries.append((item, self._item_value(item, prefix)))
        return FiniteReductionSet(tuple(entries), self.cfg.fr_size)


def _merge(stats_list) -> dict:
    out = {"nodes": 0, "pruned": 0, "complete_prefixes": 0}
    for s in stats_list:
        for k, v in s.items():
            out[k] += v
    return out


def _run(view: OrderlyView, cfg: SearchConfig, n: int, judge: Callable, query: dict, side_of: Callable) -> SearchResult:
    search = _Search(view, cfg, n, judge)
    query = {
        **query,
        "config": cfg.to_json(),
        # a finite search certifies nothing beyond its bounds
        "scope": (
            f"bounded: witnesses of length {cfg.k} from terms of size <= {cfg.max_size} and index <= "
            f"{cfg.max_index}, judged on terms of size <= {cfg.fr_size}; only the given coloring is tested"
        ),
    }
    heads = search.catalog.starting_at(0)
    base_stats = {"items_per_witness": search.item_count, "first_terms": len(heads)}
    if search.item_count == 0 or not heads:
        return SearchResult(EXHAUSTED, query, stats={**base_stats, **_merge([])})

    best = [len(heads)]
    lock = threading.Lock()

    def chunk(i):
        result, stats = search.run_chunk(heads[i], lambda: best[0] < i)
        if result is not None:
            with lock:
                best[0] = min(best[0], i)
        return result, stats

    results: list = [None] * len(heads)
    try:
        if cfg.threads == 1:
            for i in range(len(heads)):
                results[i] = chunk(i)
                if results[i][0] is not None:
                    break
        else:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                for i, r in enumerate(pool.map(chunk, range(len(heads)))):
                    results[i] = r
    except _Timeout as exc:
        done = [r[1] for r in results if r is not None]
        return SearchResult(TIMED_OUT, query, stats={**base_stats, **_merge(done + [exc.args[0]])})

    # only chunks up to the canonically first hit count, whatever the schedule
    used = []
    for r in results:
        if r is None:
            break
        used.append(r[1])
        if r[0] is not None:
            prefix, key = r[0]
            return SearchResult(
                FOUND,
                query,
                witness=AdmissiblePrefix._trusted(prefix),
                side=side_of(key),
                certificate=search.certificate(prefix),
                stats={**base_stats, **_merge(used)},
            )
    return SearchResult(EXHAUSTED, query, stats={**base_stats, **_merge(used)})


def _coloring_side(inside: bool) -> str:
    return "contained" if inside else "disjoint"


def find_homogeneous_reduction(view: OrderlyView, coloring: Coloring, cfg: SearchConfig) -> SearchResult:
    return find_tuple_homogeneous(view, coloring, 1, cfg)


def find_tuple_homogeneous(view: OrderlyView, coloring: Coloring, n: int, cfg: SearchConfig) -> SearchResult:
    """Search for a reduction whose ordered n-tuples of values (n=1: values)
    all lie inside, or all outside, ``coloring``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    query = {"search": "homogeneous", "n": n, "coloring": coloring.describe()}
    return _run(view, cfg, n, coloring.contains, query, _coloring_side)


def find_constant_reduction(view: OrderlyView, cfg: SearchConfig) -> SearchResult:
    """Search for a reduction taking a single value on every judged term."""
    query = {"search": "constant", "n": 1}
    return _run(view, cfg, 1, lambda v: v, query, lambda key: None)


def verify_certificate(result: SearchResult, view: OrderlyView, coloring: Coloring | None = None) -> CheckReport:
    """Re-evaluate every certificate entry without going through the reduced
    view, and check it sits on the claimed side (or equals the one value)."""
    report = CheckReport("certificate", None)
    if not result.found:
        return report
    w = result.witness
    reference = None

    def direct(term):
        t = substitute(term, w)
        if isinstance(view, Induced):
            return evaluate(t, view.algebra, view.assignment)
        return view._value(t)

    for item, claimed in result.certificate.entries:
        actual = tuple(direct(s) for s in item) if isinstance(item, tuple) else direct(item)
        report.checked += 1
        if actual != claimed:
            report.add({"item": _item_text(item), "claimed": claimed, "actual": actual})
            continue
        if coloring is not None:
            inside = coloring.contains(actual)
            if _coloring_side(inside) != result.side:
                report.add({"item": _item_text(item), "value": actual, "side": _coloring_side(inside)})
        else:
            if reference is None:
                reference = actual
            elif actual != reference:
                report.add({"item": _item_text(item), "value": actual, "expected": reference})
    return report


def _item_text(item):
    return [s.text for s in item] if isinstance(item, tuple) else item.text


def check_injectivity(view: OrderlyView, bounds: Bounds) -> CheckReport:
    capped = bounds.capped(view.coverage)
    report = CheckReport("injectivity", capped)
    if capped is None:
        return report
    first: dict = {}
    for t in covered_terms(view, capped):
        report.checked += 1
        v = view.value(t)
        if v in first:
            report.add({"first": first[v].text, "second": t.text, "value": v})
        else:
            first[v] = t
    return report


def verify_one_to_one_obstruction(view: OrderlyView, cfg: SearchConfig, symbol: str | None = None) -> CheckReport:
    """For an injective view, check that no admissible prefix within ``cfg``
    gives a reduction homogeneous for "even number of ``symbol`` before the
    first variable".

    For a prefix ``<t0, t1, ...>`` and n-ary ``symbol`` the reduction takes
    the values of ``t0`` and ``symbol t0 ... t(n-1)``, which always fall on
    opposite sides.  Prefix lengths ``n..k`` are checked.
    """
    sig = view.signature
    if symbol is None:
        symbol = sig.symbols[0][0]
    n = sig.arity(symbol)
    top = cfg.max_index if view.coverage is None else min(cfg.max_index, view.coverage - 1)
    injective = check_injectivity(view, Bounds(n * cfg.max_size + 1, top))
    if not injective.ok:
        v = injective.violations[0]
        raise NotInjective(f"{v['first']} and {v['second']} share the value {to_jsonable(v['value'])!r}")
    coloring = LeadingSymbolParity(symbol, "even")
    # by injectivity, value(t) lies in X exactly when t itself does
    if isinstance(view, Free):
        def inside(t):
            return coloring.contains(view.value(t))
    else:
        inside = coloring.contains

    report = CheckReport("obstruction", Bounds(cfg.max_size, top))
    catalog = TermCatalog(sig, cfg.max_size, top)
    per_length = {}
    for length in range(n, cfg.k + 1):
        count = 0
        for p in catalog.prefixes(length):
            count += 1
            t0 = p[0]
            app = App(symbol, p.terms[:n])
            if inside(t0) == inside(app):
                report.add({"prefix": p.to_json()["terms"], "t0": t0.text, "application": app.text})
        per_length[str(length)] = count
    report.checked = sum(per_length.values())
    report.details = {
        "coloring": coloring.describe(),
        "k": cfg.k,
        "prefixes_per_length": per_length,
        "obstructed": report.checked - report.violation_count,
        "homogeneous_witnesses": report.violation_count,
        "injectivity_checked": injective.checked,
    }
    return report
