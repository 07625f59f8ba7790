"""The sharp construction for a single binary symbol ``f``.

Every orderly term ``t`` splits into a pair ``(t^x, t^y)``::

    (v_i^x, v_i^y)         = (v_{2i}, v_{2i+1})
    ((f s t)^x, (f s t)^y) = (f s^x s^y, f t^x t^y)

and the sharp view of ``A`` is ``t -> (A(t^x), A(t^y))``.  The n-ary
generalization is deliberately not supported.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

from .algebras import Algebra, PairAlgebra
from .errors import OddLength, WrongSignature
from .orderly import Induced, OrderlyView, reduce_view
from .reports import Bounds, CheckReport
from .terms import AdmissiblePrefix, App, Signature, Term, Var, enumerate_orderly_terms, substitute


class SharpPair(NamedTuple):
    x: Term
    y: Term


def binary_symbol(sig: Signature) -> str:
    if len(sig.symbols) != 1 or sig.symbols[0][1] != 2:
        raise WrongSignature("the sharp construction needs exactly one binary symbol")
    return sig.symbols[0][0]


def sharp_split(t: Term, sig: Signature | None = None) -> SharpPair:
    if sig is not None:
        f = binary_symbol(sig)
        if type(t) is App and any(sym != f for sym in t.tokens() if type(sym) is str):
            raise WrongSignature(f"term {t} uses symbols outside {sig.names}")
    return _split(t)


@lru_cache(maxsize=1 << 16)
def _split(t: Term) -> SharpPair:
    if type(t) is Var:
        return SharpPair(Var(2 * t.index), Var(2 * t.index + 1))
    if len(t.args) != 2:
        raise WrongSignature(f"symbol {t.symbol!r} is not binary")
    s, u = t.args
    ps, pu = _split(s), _split(u)
    return SharpPair(App(t.symbol, ps), App(t.symbol, pu))


class SharpView(OrderlyView):
    """``value(t) = (base.value(t^x), base.value(t^y))``."""

    def __init__(self, base: OrderlyView):
        super().__init__()
        self.symbol = binary_symbol(base.signature)
        self.base = base
        self.signature = base.signature
        self.coverage = None if base.coverage is None else base.coverage // 2

    def _value(self, t):
        self._check_coverage(t)
        x, y = _split(t)
        return (self.base.value(x), self.base.value(y))

    def describe(self):
        return {"kind": "sharp", "base": self.base.describe()}


def sharp_view(base: OrderlyView) -> SharpView:
    return SharpView(base)


def sharp_witness_transform(tvec: AdmissiblePrefix, sig: Signature = Signature.binary()) -> AdmissiblePrefix:
    """``<f t_0^x t_0^y, f t_1^x t_1^y, ...>``."""
    f = binary_symbol(sig)
    return AdmissiblePrefix(App(f, sharp_split(t, sig)) for t in tvec)


def sharp_pair_witness(uvec: AdmissiblePrefix, sig: Signature = Signature.binary()) -> AdmissiblePrefix:
    """``<f u_0 u_1, f u_2 u_3, ...>``."""
    f = binary_symbol(sig)
    if len(uvec) % 2:
        raise OddLength(f"pairing needs an even-length prefix, got {len(uvec)}")
    u = uvec.terms
    return AdmissiblePrefix(App(f, (u[2 * i], u[2 * i + 1])) for i in range(len(u) // 2))


def check_claim_1010a(
    base: OrderlyView,
    tvec: AdmissiblePrefix,
    uvec: AdmissiblePrefix,
    bounds: Bounds,
    d_base: OrderlyView | None = None,
) -> CheckReport:
    """Check the two substitution identities behind reductions of sharp views
    as exact term equalities, then check ``#D(s) == B(s[u'])`` where

    * ``B`` is ``#base`` reduced by ``tvec``,
    * ``C`` is ``base`` reduced by ``tvec'`` (see :func:`sharp_witness_transform`),
    * ``D`` is ``C`` reduced by ``uvec``, and ``u'`` pairs up ``uvec``.

    Passing ``d_base`` reduces that view by ``uvec`` instead of ``C``; with
    ``d_base=base`` this exhibits why ``D`` must come from ``C``.
    """
    sig = base.signature
    f = binary_symbol(sig)
    t_prime = sharp_witness_transform(tvec, sig)
    u_prime = sharp_pair_witness(uvec, sig)
    view_b = reduce_view(SharpView(base), tvec)
    view_c = reduce_view(base, t_prime)
    view_d = reduce_view(view_c if d_base is None else d_base, uvec)
    sharp_d = SharpView(view_d)

    report = CheckReport("claim-1010a", bounds)
    counts = {"identity_t_checked": 0, "identity_u_checked": 0, "values_checked": 0, "values_uncovered": 0}
    for s in enumerate_orderly_terms(sig, bounds.max_size, bounds.max_index):
        top = s.last
        if top < len(tvec):
            counts["identity_t_checked"] += 1
            lhs = substitute(s, t_prime)
            rhs = App(f, _split(substitute(s, tvec)))
            if lhs != rhs:
                report.add({"check": "identity-t", "s": s.text, "lhs": lhs.text, "rhs": rhs.text})
        if top < len(u_prime):
            counts["identity_u_checked"] += 1
            s_u = substitute(s, u_prime)
            rhs = substitute(App(f, _split(s)), uvec)
            if s_u != rhs:
                report.add({"check": "identity-u", "s": s.text, "lhs": s_u.text, "rhs": rhs.text})
            try:
                left = sharp_d.value(s)
                right = view_b.value(s_u)
            except IndexError:
                counts["values_uncovered"] += 1
                continue
            counts["values_checked"] += 1
            if left != right:
                report.add({"check": "reduction", "s": s.text, "sharp_d": left, "b_at_s_u": right})
    report.checked = counts["identity_t_checked"] + counts["identity_u_checked"] + counts["values_checked"]
    report.details = {
        **counts,
        "t": tvec.to_json()["terms"],
        "u": uvec.to_json()["terms"],
        "t_prime": t_prime.to_json()["terms"],
        "u_prime": u_prime.to_json()["terms"],
    }
    return report


def interleave(pairs: Sequence[tuple]) -> tuple:
    """``<(x0, y0), (x1, y1), ...>`` to ``<x0, y0, x1, y1, ...>``."""
    return tuple(c for p in pairs for c in p)


def check_theorem_0107b(inner: Algebra, b: Sequence[tuple], bounds: Bounds) -> CheckReport:
    """Compare the pair algebra induced by ``b`` with the sharp view of
    ``inner`` induced by the interleaving of ``b``, term by term."""
    b = tuple(tuple(p) for p in b)
    left = Induced(PairAlgebra(inner), b)
    right = SharpView(Induced(inner, interleave(b)))
    capped = bounds.capped(len(b))
    report = CheckReport("thm-0107b", capped)
    if capped is None:
        return report
    for s in enumerate_orderly_terms(inner.signature, capped.max_size, capped.max_index):
        report.checked += 1
        lv, rv = left.value(s), right.value(s)
        if lv != rv:
            report.add({"term": s.text, "pair_algebra": lv, "sharp": rv})
    return report
