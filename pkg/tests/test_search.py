import json
import operator

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ramsey_orderly.algebras import NatAdd, PairAlgebra, TableAlgebra
from ramsey_orderly.colorings import Component, LeadingSymbolParity, MemberSet, Residue
from ramsey_orderly.errors import ColoringTypeError, NotInjective
from ramsey_orderly.orderly import Free, IndexSet, Induced, TrivialConstant
from ramsey_orderly.reports import Bounds
from ramsey_orderly.search import (
    SearchConfig,
    check_injectivity,
    find_constant_reduction,
    find_homogeneous_reduction,
    find_tuple_homogeneous,
    verify_certificate,
    verify_one_to_one_obstruction,
)
from ramsey_orderly.terms import AdmissiblePrefix, Signature, enumerate_orderly_terms

SIG = Signature.binary()
ADD = {"f": operator.add}


def texts(prefix):
    return [t.text for t in prefix]


class TestHindman:
    @pytest.mark.parametrize(
        "modulus,accept,k,expected,side",
        [
            (2, {0}, 3, ["v1", "v3", "v5"], "contained"),
            (3, {0}, 3, ["v2", "v5", "v8"], "contained"),
            (3, {0}, 2, ["v0", "v3"], "disjoint"),
        ],
    )
    def test_examples(self, modulus, accept, k, expected, side):
        view = Induced(NatAdd(), tuple(range(1, 11)))
        result = find_homogeneous_reduction(view, Residue(modulus, accept), SearchConfig(k=k, max_index=9))
        assert result.found
        assert texts(result.witness) == expected
        assert result.side == side

    @pytest.mark.parametrize("modulus", [2, 3])
    def test_matches_naive_oracle(self, modulus):
        a = tuple(range(1, 11))
        col = Residue(modulus, {0})
        result = find_homogeneous_reduction(Induced(NatAdd(), a), col, SearchConfig(k=3, max_index=9))
        combo, key = oracles.naive_first_homogeneous(ADD, a, col.contains, 3, 3, 5, SIG)
        assert list(result.witness) == list(combo)
        assert result.side == ("contained" if key else "disjoint")

    @given(st.lists(st.integers(1, 12), min_size=5, max_size=7), st.integers(2, 3))
    @settings(max_examples=25, deadline=None)
    def test_random_assignments_match_oracle(self, a, modulus):
        col = Residue(modulus, {0})
        cfg = SearchConfig(k=2, max_size=3, max_index=9, fr_size=3)
        result = find_homogeneous_reduction(Induced(NatAdd(), tuple(a)), col, cfg)
        combo, _ = oracles.naive_first_homogeneous(ADD, tuple(a), col.contains, 2, 3, 3, SIG)
        if combo is None:
            assert result.outcome == "exhausted"
        else:
            assert list(result.witness) == list(combo)

    @pytest.mark.parametrize("modulus", [2, 3])
    def test_certificate_sound(self, modulus):
        view = Induced(NatAdd(), tuple(range(1, 13)))
        col = Residue(modulus, {0})
        result = find_homogeneous_reduction(view, col, SearchConfig())
        report = verify_certificate(result, view, col)
        assert report.ok and report.checked == result.stats["items_per_witness"]

    def test_trivial_gives_identity(self):
        result = find_homogeneous_reduction(TrivialConstant(4, SIG), Residue(2, {0}), SearchConfig(k=3, max_index=11))
        assert result.witness == AdmissiblePrefix.identity(3)
        assert result.side == "contained"

    def test_exhausted(self):
        # f v0 v1 is even and v0 odd under every witness
        view = Induced(NatAdd(), (1, 1, 1))
        result = find_homogeneous_reduction(view, Residue(2, {0}), SearchConfig(k=2, max_size=1, max_index=2))
        assert result.outcome == "exhausted"
        assert result.witness is None

    def test_fr_bound_monotone(self):
        view = Induced(NatAdd(), tuple(range(1, 13)))
        col = Residue(3, {0})
        prev = None
        for fr in (1, 3, 5):
            result = find_homogeneous_reduction(view, col, SearchConfig(k=3, fr_size=fr))
            assert result.found
            if prev is not None:
                # larger bounds judge more terms so the first witness only moves later
                assert prev <= result.stats["nodes"]
            prev = result.stats["nodes"]

    def test_residue_on_non_int(self):
        view = Induced(PairAlgebra(NatAdd()), ((1, 2), (3, 4), (5, 6)))
        with pytest.raises(ColoringTypeError):
            find_homogeneous_reduction(view, Residue(2, {0}), SearchConfig(k=2))


class TestTupleSearch:
    def test_n_one_is_hindman(self):
        view = Induced(NatAdd(), tuple(range(1, 11)))
        cfg = SearchConfig(k=3, max_index=9)
        a = find_tuple_homogeneous(view, Residue(3, {0}), 1, cfg).to_json()
        b = find_homogeneous_reduction(view, Residue(3, {0}), cfg).to_json()
        assert a == b

    def test_pairs(self):
        view = Induced(NatAdd(), tuple(range(1, 11)))
        col = Component(Residue(2, {0}), 0)
        result = find_tuple_homogeneous(view, col, 2, SearchConfig(k=2, max_index=9))
        assert result.found
        assert verify_certificate(result, view, col).ok
        assert all(len(item) == 2 for item, _ in result.certificate.entries)

    def test_pairs_match_brute_force(self):
        a = tuple(range(1, 9))
        col = Component(Residue(2, {0}), 1)
        cfg = SearchConfig(k=3, max_size=3, max_index=7, fr_size=3)
        result = find_tuple_homogeneous(Induced(NatAdd(), a), col, 2, cfg)
        witness_terms = oracles.orderly_terms(SIG, 3, 7)
        fr_terms = oracles.orderly_terms(SIG, 3, 2)
        expected = None
        for combo in oracles.admissible(witness_terms, 3):
            keys = {
                col.contains(tuple(oracles.evaluate(oracles.subst(s, combo), ADD, a) for s in pair))
                for pair in oracles.admissible(fr_terms, 2)
            }
            if len(keys) == 1:
                expected = list(combo)
                break
        assert expected is not None and list(result.witness) == expected

    def test_n_above_k(self):
        view = Induced(NatAdd(), tuple(range(1, 11)))
        result = find_tuple_homogeneous(view, Component(Residue(2, {0}), 0), 3, SearchConfig(k=2))
        assert result.outcome == "exhausted"
        assert result.stats["items_per_witness"] == 0


class TestConstantSearch:
    def test_trivial(self):
        result = find_constant_reduction(TrivialConstant("c", SIG), SearchConfig(k=3))
        assert result.witness == AdmissiblePrefix.identity(3)
        assert verify_certificate(result, TrivialConstant("c", SIG)).ok

    def test_one_element_table(self):
        alg = TableAlgebra(["z"], {"f": (2, {("z", "z"): "z"})})
        assert find_constant_reduction(Induced(alg, ("z",) * 4), SearchConfig(k=2)).found

    def test_idempotent_table(self):
        # x * y = x on {0, 1}: a witness whose terms all start at value 0 is constant
        alg = TableAlgebra(range(2), {"f": (2, {(x, y): x for x in range(2) for y in range(2)})})
        view = Induced(alg, (1, 0, 0, 0, 0))
        result = find_constant_reduction(view, SearchConfig(k=2, max_index=4))
        assert texts(result.witness) == ["v1", "v2"]
        assert verify_certificate(result, view).ok

    def test_nat_add_exhausted(self):
        result = find_constant_reduction(Induced(NatAdd(), tuple(range(1, 13))), SearchConfig(k=3))
        assert result.outcome == "exhausted"


class TestObstruction:
    def test_free(self):
        report = verify_one_to_one_obstruction(Free(SIG), SearchConfig(k=3, max_size=5, max_index=8))
        assert report.ok
        assert report.details["homogeneous_witnesses"] == 0
        assert report.details["obstructed"] == report.checked > 1000

    def test_index_set_is_not_injective(self):
        with pytest.raises(NotInjective):
            verify_one_to_one_obstruction(IndexSet(SIG), SearchConfig(k=2, max_size=3, max_index=4))

    def test_nat_add_is_not_injective(self):
        with pytest.raises(NotInjective):
            verify_one_to_one_obstruction(Induced(NatAdd(), (1, 2, 3)), SearchConfig(k=2, max_size=3))

    def test_free_has_no_homogeneous_reduction(self):
        col = LeadingSymbolParity("f", "even")
        result = find_homogeneous_reduction(Free(SIG), col, SearchConfig(k=2, max_size=3, max_index=6, fr_size=3))
        assert result.outcome == "exhausted"


class TestInjectivity:
    def test_free(self):
        report = check_injectivity(Free(SIG), Bounds(7, 4))
        assert report.ok and report.checked == len(enumerate_orderly_terms(SIG, 7, 4))

    def test_trivial(self):
        report = check_injectivity(TrivialConstant(0, SIG), Bounds(3, 2))
        assert report.violations[0]["first"] == "v0" and report.violations[0]["second"] == "v1"

    def test_nat_add_collision(self):
        report = check_injectivity(Induced(NatAdd(), (1, 2, 3)), Bounds(3, 2))
        assert {"first": "v2", "second": "f v0 v1", "value": 3} in report.violations

    def test_powers_of_two(self):
        assert check_injectivity(Induced(NatAdd(), (1, 2, 4, 8)), Bounds(3, 3)).ok
        # bracketings collide, so deeper terms are not injective
        assert not check_injectivity(Induced(NatAdd(), (1, 2, 4, 8)), Bounds(5, 3)).ok

    def test_member_set_on_values(self):
        assert MemberSet({1}).contains(1) and not MemberSet({1}).contains([1])


class TestDeterminism:
    @pytest.mark.parametrize("threads", [2, 4, 8])
    def test_threads_identical(self, threads):
        view = Induced(NatAdd(), tuple(range(1, 13)))
        col = Residue(3, {0})
        one = find_homogeneous_reduction(view, col, SearchConfig(threads=1)).to_json()
        many = find_homogeneous_reduction(view, col, SearchConfig(threads=threads)).to_json()
        assert json.dumps(one, default=str) == json.dumps(many, default=str)

    def test_threads_identical_when_exhausted(self):
        view = Induced(NatAdd(), tuple(range(1, 9)))
        one = find_constant_reduction(view, SearchConfig(threads=1)).to_json()
        many = find_constant_reduction(view, SearchConfig(threads=8)).to_json()
        assert one == many

    def test_timeout(self):
        result = find_constant_reduction(Free(SIG), SearchConfig(k=4, max_size=5, max_index=30, time_budget_ms=50))
        assert result.outcome == "timed-out"
        assert result.witness is None and result.stats["nodes"] > 0

    def test_bad_config(self):
        with pytest.raises(ValueError):
            SearchConfig(k=0)
        with pytest.raises(ValueError):
            SearchConfig(time_budget_ms=0)
