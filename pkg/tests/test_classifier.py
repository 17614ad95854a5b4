import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from maxclass.classifier import (
    BranchNode,
    ResourceBoundError,
    _diagonals,
    admissible,
    classify,
    extend_one_step,
    recognize,
    subtree_death,
    table_of,
    verify_presentation_m2,
)
from maxclass.constructions import ConstructionSpec, build
from maxclass.liecore import jacobi_check
from maxclass.scalars import PrimeField


def test_extend_examples():
    # mu_3 = 1 in characteristic 5 forces mu_4 = 1
    assert extend_one_step(BranchNode((1,)), 5) == [1]
    assert extend_one_step(BranchNode((1, 1)), 3) == [0, 1, 2]
    # while the prefix is zero every value is still open
    assert extend_one_step(BranchNode((0, 0)), 5) == list(range(5))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(0, 6), max_size=14))
def test_fast_admissible_matches_oracle(p, raw):
    prefix = tuple(v % p for v in raw)
    if not jacobi_check(table_of(p, prefix)).ok:
        return
    f = PrimeField(p)
    got, witness = admissible(f, _diagonals(f, prefix), len(prefix) + 2, range(p))
    assert got == extend_one_step(BranchNode(prefix), p)
    assert (witness is None) == bool(got)


@pytest.mark.parametrize("p,N", [(3, 30), (5, 30), (7, 24)])
def test_leaves_are_sound_and_dead_nodes_are_dead(p, N):
    rep = classify(p, N)
    assert rep.complete
    for leaf in rep.leaves:
        assert len(leaf) == N - 4
        assert jacobi_check(table_of(p, leaf)).ok
    for prefix, w, triple in rep.dead[:200]:
        assert extend_one_step(BranchNode(prefix), p) == []
        assert sum(triple) == w


@pytest.mark.parametrize("p", [3, 5, 7])
def test_first_nonzero_index_is_odd(p):
    rep = classify(p, 36, "e3-zero", certify=8)
    for leaf in rep.certified():
        nz = [i + 3 for i, v in enumerate(leaf) if v]
        if nz:
            assert nz[0] % 2 == 1


# Surviving values of a = mu_5 on the mu_3 = 1 branch, found by exhaustive search at N = 14.
FROZEN_A_SETS = {5: [1], 7: [1], 11: [1], 13: [1, 10]}


@pytest.mark.parametrize("p", sorted(FROZEN_A_SETS))
def test_a_sets_frozen(p):
    rep = classify(p, 14, "e3-nonzero")
    assert rep.values_at(5) == FROZEN_A_SETS[p]


def test_a_equal_one_is_m2():
    rep = classify(5, 40, "e3-nonzero", certify=6)
    m2 = tuple(build(ConstructionSpec("m2", PrimeField(5), 40)).mu_sequence())
    assert rep.certified() == [m2]
    assert recognize(5, m2) == "m2"


def test_jobs_do_not_change_output():
    a = classify(5, 30, jobs=1, certify=4)
    b = classify(5, 30, jobs=2, certify=4)
    assert a.to_text() == b.to_text()
    assert a.to_json() == b.to_json()


def test_resource_bound_reports_frontier():
    rep = classify(5, 40, "e3-zero", max_nodes=20)
    assert not rep.complete and rep.frontier
    with pytest.raises(ResourceBoundError) as err:
        classify(5, 40, "e3-zero", max_nodes=20, raise_on_bound=True)
    assert err.value.report.frontier == rep.frontier


def test_subtree_death():
    # mu_3 = mu_4 = 1 with a = mu_5 = 3 in characteristic 7 dies at weight 9
    assert subtree_death(7, (1, 1, 3), 20) == 9
    assert subtree_death(13, (1, 1, 10), 60) == 15
    assert subtree_death(5, (1, 1, 1), 20) is None


def test_recognize_named_algebras():
    f = PrimeField(5)
    for spec, label in [
        (ConstructionSpec("m", f, 40), "m"),
        (ConstructionSpec("q_algebra", f, 40, q=5), "q_algebra(q=5)"),
    ]:
        assert recognize(5, tuple(build(spec).mu_sequence())) == label


@pytest.mark.parametrize("p", [3, 5])
def test_presentation_of_m2(p):
    assert verify_presentation_m2(p, 40).ok
