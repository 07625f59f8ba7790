import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_orderly.algebras import NatAdd, PairAlgebra, TableAlgebra, VariableWords, evaluate, reduce_sequence
from ramsey_orderly.colorings import LeadingSymbolParity, MemberSet, Residue
from ramsey_orderly.errors import CongruenceViolation, IndexBeyondPrefix, UniverseOverflow, WrongSignature
from ramsey_orderly.orderly import (
    Free,
    IndexSet,
    Induced,
    Patched,
    Reduced,
    TrivialConstant,
    check_congruence,
    check_prehomogeneous,
    covered_terms,
    induced_sequence,
    is_orderly_semigroup,
    reconstruct_algebra,
    reduce_view,
)
from ramsey_orderly.reports import Bounds
from ramsey_orderly.terms import AdmissiblePrefix, Signature, TermCatalog, enumerate_orderly_terms, parse_term

SIG = Signature.binary()
B5 = Bounds(5, 3)


def P(*texts):
    return AdmissiblePrefix.parse(texts, SIG)


def T(text):
    return parse_term(text, SIG)


def binary_table(n, rows):
    """Table algebra on range(n) from a flat row-major list."""
    cells = list(itertools.product(range(n), repeat=2))
    return TableAlgebra(range(n), {"f": (2, dict(zip(cells, rows)))})


tables = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n).map(lambda rows: binary_table(n, rows))
)


@st.composite
def induced_views(draw, min_len=3, max_len=6):
    alg = draw(tables)
    a = draw(st.lists(st.sampled_from(alg.universe), min_size=min_len, max_size=max_len))
    return Induced(alg, a)


class TestValue:
    def test_induced(self):
        assert Induced(NatAdd(), (1, 2)).value(T("f v0 v1")) == 3

    def test_index_set(self):
        assert IndexSet(SIG).value(T("f v0 v3")) == frozenset({0, 3})

    def test_free(self):
        assert Free(SIG).value(T("f v0 v1")) == T("f v0 v1")

    def test_trivial(self):
        assert TrivialConstant("c", SIG).value(T("f f v0 v4 v9")) == "c"

    def test_coverage(self):
        with pytest.raises(IndexBeyondPrefix):
            Induced(NatAdd(), (1, 2)).value(T("f v0 v2"))

    @given(induced_views())
    def test_induced_matches_evaluate(self, view):
        for t in covered_terms(view, Bounds(7, 5)):
            assert view.value(t) == evaluate(t, view.algebra, view.assignment)

    @given(induced_views())
    def test_memo_invisible(self, view):
        red = reduce_view(view, P("v0", "f v1 v2"))
        for v in (view, red):
            for t in covered_terms(v, Bounds(5, 5)):
                first = v.value(t)
                assert v._value(t) == first == v.value(t)


class TestCongruence:
    @given(induced_views())
    @settings(max_examples=30)
    def test_induced_has_none(self, view):
        assert check_congruence(view, Bounds(5, 5)).ok

    def test_index_set_has_none(self):
        report = check_congruence(IndexSet(SIG), Bounds(7, 4))
        assert report.ok and report.checked == 10 + 20 + 25

    def test_variable_words_has_none(self):
        vw = VariableWords("ab")
        assert check_congruence(Induced(vw, ("v", "av", "vb", "v")), Bounds(3, 3)).ok

    def test_fault_injection(self):
        base = Induced(binary_table(2, [0, 1, 1, 0]), (0, 1, 1))
        # f v0 v1 and f v0 v2 have equal argument values
        corrupted = Patched(base, {T("f v0 v2"): 0})
        report = check_congruence(corrupted, Bounds(3, 2))
        assert not report.ok
        assert {report.violations[0]["first"], report.violations[0]["second"]} == {"f v0 v1", "f v0 v2"}


class TestReduceView:
    def test_identity_witness(self):
        view = Induced(NatAdd(), (3, 1, 4, 1, 5))
        red = reduce_view(view, AdmissiblePrefix.identity(5))
        for t in covered_terms(view, Bounds(7, 4)):
            assert red.value(t) == view.value(t)

    def test_hand_values(self):
        red = reduce_view(Induced(NatAdd(), (1, 2, 3, 4)), P("f v0 v1", "f v2 v3"))
        assert red.value(T("v0")) == 3
        assert red.value(T("v1")) == 7
        assert red.value(T("f v0 v1")) == 10

    def test_free_shift(self):
        assert reduce_view(Free(SIG), P("v1", "v2")).value(T("v0")) == T("v1")

    def test_lazy_coverage(self):
        red = reduce_view(Induced(NatAdd(), (1, 2, 3)), P("v0", "f v1 v2"))
        assert red.value(T("f v0 v1")) == 6
        with pytest.raises(IndexBeyondPrefix):
            red.value(T("v2"))
        with pytest.raises(IndexBeyondPrefix):
            reduce_view(Induced(NatAdd(), (1, 2)), P("v5")).value(T("v0"))

    def test_flattening(self):
        base = Induced(NatAdd(), tuple(range(1, 9)))
        t = P("v0", "f v1 v2", "v3", "f v4 v5")
        u = P("f v0 v1", "v2", "v3")
        flat = reduce_view(reduce_view(base, t), u)
        nested = Reduced(Reduced(base, t), u)
        assert isinstance(flat, Reduced) and flat.base is base
        for s in enumerate_orderly_terms(SIG, 5, 2):
            assert flat.value(s) == nested.value(s)

    @given(induced_views(4, 8), st.data())
    @settings(max_examples=40)
    def test_universe_shrinks(self, view, data):
        prefixes = list(TermCatalog(SIG, 3, len(view.assignment) - 1).prefixes(2))
        red = reduce_view(view, data.draw(st.sampled_from(prefixes)))
        base_values = {view.value(t) for t in covered_terms(view, Bounds(9, 7))}
        assert {red.value(t) for t in covered_terms(red, Bounds(3, 1))} <= base_values

    @given(induced_views(4, 7), st.data())
    @settings(max_examples=40)
    def test_reduction_of_sequence_correspondence(self, view, data):
        prefixes = [p for n in (1, 2, 3) for p in TermCatalog(SIG, 3, len(view.assignment) - 1).prefixes(n)]
        t = data.draw(st.sampled_from(prefixes))
        b = reduce_sequence(view.algebra, view.assignment, t)
        red = reduce_view(view, t)
        again = Induced(view.algebra, b)
        for s in covered_terms(red, Bounds(5, 5)):
            assert red.value(s) == again.value(s)
        assert induced_sequence(red, len(t)) == b

    @given(induced_views(5, 8), st.data())
    @settings(max_examples=40)
    def test_determined_by_variables(self, view, data):
        prefixes = list(TermCatalog(SIG, 3, len(view.assignment) - 1).prefixes(2))
        r1 = reduce_view(view, data.draw(st.sampled_from(prefixes)))
        r2 = reduce_view(view, data.draw(st.sampled_from(prefixes)))
        if induced_sequence(r1, 2) != induced_sequence(r2, 2):
            return
        for s in enumerate_orderly_terms(SIG, 5, 1):
            assert r1.value(s) == r2.value(s)


class TestInducedSequence:
    def test_induced(self):
        assert induced_sequence(Induced(NatAdd(), (4, 5, 6)), 3) == (4, 5, 6)

    def test_reduced(self):
        red = reduce_view(Induced(NatAdd(), (1, 2, 3, 4)), P("f v0 v1", "f v2 v3"))
        assert induced_sequence(red, 2) == (3, 7)

    def test_trivial(self):
        assert induced_sequence(TrivialConstant("c", SIG), 4) == ("c",) * 4

    def test_beyond(self):
        with pytest.raises(IndexBeyondPrefix):
            induced_sequence(Induced(NatAdd(), (1, 2)), 3)


class TestReconstruct:
    @pytest.mark.parametrize("a", [(0, 1, 2, 3), (4, 4, 1, 0), (2, 3, 1, 4)])
    def test_cyclic_round_trip(self, a):
        z5 = binary_table(5, [(x + y) % 5 for x, y in itertools.product(range(5), repeat=2)])
        view = Induced(z5, a)
        bounds = Bounds(5, 3)
        alg = reconstruct_algebra(view, bounds)
        again = Induced(alg, induced_sequence(view, 4))
        for t in covered_terms(view, bounds):
            assert again.value(t) == view.value(t)

    def test_trivial(self):
        alg = reconstruct_algebra(TrivialConstant("c", SIG), Bounds(3, 2))
        assert alg.universe == ("c",)
        assert alg.ops["f"][1] == {("c", "c"): "c"}

    def test_index_set(self):
        alg = reconstruct_algebra(IndexSet(SIG), Bounds(3, 3))
        table = alg.ops["f"][1]
        for i, j in itertools.combinations(range(4), 2):
            assert table[frozenset({i}), frozenset({j})] == frozenset({i, j})
        # unrealized tuples take the first value in canonical order
        assert table[frozenset({2}), frozenset({0})] == frozenset({0})
        assert table[frozenset({0, 1}), frozenset({0, 1})] == frozenset({0})

    def test_explicit_default(self):
        alg = reconstruct_algebra(IndexSet(SIG), Bounds(3, 3), default=frozenset())
        assert alg.ops["f"][1][frozenset({2}), frozenset({0})] == frozenset()

    def test_overflow(self):
        with pytest.raises(UniverseOverflow):
            reconstruct_algebra(Induced(NatAdd(), tuple(range(1, 9))), Bounds(7, 7), max_universe=16)

    def test_conflict(self):
        base = Induced(binary_table(2, [0, 1, 1, 0]), (0, 1, 1))
        with pytest.raises(CongruenceViolation):
            reconstruct_algebra(Patched(base, {T("f v0 v2"): 0}), Bounds(3, 2))

    @given(induced_views(3, 4))
    @settings(max_examples=40)
    def test_round_trip_random(self, view):
        bounds = Bounds(5, len(view.assignment) - 1)
        alg = reconstruct_algebra(view, bounds)
        again = Induced(alg, induced_sequence(view, len(view.assignment)))
        for t in covered_terms(view, bounds):
            assert again.value(t) == view.value(t)


class TestSemigroup:
    def test_nat_add(self):
        report = is_orderly_semigroup(Induced(NatAdd(), (5, 3, 8, 1, 2)), Bounds(7, 4))
        assert report.ok
        assert report.details["bracketing_checked"] > 0 and report.details["same_variables_checked"] > 0

    def test_free_fails(self):
        report = is_orderly_semigroup(Free(SIG), Bounds(5, 2))
        assert report.details["bracketing_violations"] == 1
        assert report.violations[0]["triple"] == ["v0", "v1", "v2"]

    def test_pair_algebra_fails(self):
        view = Induced(PairAlgebra(NatAdd()), ((1, 2), (3, 4), (5, 6)))
        assert is_orderly_semigroup(view, Bounds(5, 2)).details["bracketing_violations"] > 0

    def test_wrong_signature(self):
        with pytest.raises(WrongSignature):
            is_orderly_semigroup(Induced(VariableWords("a"), ("v",)), B5)


class TestPrehomogeneous:
    @pytest.mark.parametrize("coloring", [Residue(2, {0}), Residue(3, {1, 2}), MemberSet({6, 10})])
    def test_nat_add(self, coloring):
        assert check_prehomogeneous(Induced(NatAdd(), (1, 2, 3, 4, 5)), coloring, Bounds(7, 4)).ok

    def test_trivial(self):
        assert check_prehomogeneous(TrivialConstant(3, SIG), Residue(2, {0}), Bounds(5, 3)).ok

    def test_free_leading_parity(self):
        report = check_prehomogeneous(Free(SIG), LeadingSymbolParity("f", "even"), Bounds(5, 2))
        assert not report.ok
        assert {report.violations[0]["first"], report.violations[0]["second"]} == {"f f v0 v1 v2", "f v0 f v1 v2"}
