import pytest

from maxclass.analysis import (
    DepthError,
    NoConstituentTheoryError,
    NotLiftableError,
    SpanningError,
    constituents,
    deflate,
    derivation_values,
    derive_type2,
    lift_to_type1,
    two_step_centralizers,
)
from maxclass.classifier import classify, first_length, table_of
from maxclass.constructions import ConstructionSpec, build
from maxclass.liecore import Type1Table, jacobi_check, maximal_class_check
from maxclass.scalars import PrimeField

F3, F5 = PrimeField(3), PrimeField(5)


def named(name, f, N, **kw):
    return build(ConstructionSpec(name, f, N, **kw))


def two_q_leaves(p, N):
    """Classifier leaves whose first constituent has length 2q (q = p)."""
    rep = classify(p, N, "e3-zero", certify=6)
    return [table_of(p, leaf) for leaf in rep.certified() if first_length(leaf) == 2 * p]


def test_constituents_of_m():
    seq = constituents(named("m", F5, 40))
    assert seq.first_length is None and seq.body == []


def test_constituents_of_q_algebra():
    seq = constituents(named("q_algebra", F5, 40, q=5))
    assert seq.first_length == 6 and seq.first_index == 5
    assert seq.lengths() and set(seq.lengths()) == {5}
    half = F5.inv(2)
    assert all(c.type_pair == (half, F5.reduce(-half)) for c in seq.body)
    assert seq.first_end_pair == (1, F5.reduce(-half))


def test_constituents_need_zero_e3():
    with pytest.raises(NoConstituentTheoryError):
        constituents(named("m2", F5, 20))


def test_trailing_pattern_dropped():
    # mu_{N-2} = mu_8 non-zero but mu_9 is out of range
    T = table_of(5, [0, 0, 1, 4, 0, 1])
    seq = constituents(T)
    assert seq.first_length == 6 and seq.body == []


def test_centralizers_of_a():
    rep = two_step_centralizers(named("a", F5, 30))
    assert all(d == 0 for d in rep.delta)
    assert rep.uncovered and rep.witness == (1, 0)


def test_centralizers_covering_projective_line():
    T = Type1Table(F3, 6, {2: None, 3: 0, 4: 1, 5: 2})
    assert not two_step_centralizers(T).uncovered


def test_witness_when_x_is_covered():
    T = Type1Table(F5, 20, {i: None for i in range(2, 20)})
    rep = two_step_centralizers(T)
    assert rep.uncovered and rep.witness == (1, 1)


def test_derive_a_gives_m():
    assert derive_type2(named("a", F5, 60), (1, 0)) == named("m", F5, 60)


def test_lift_m_gives_a():
    assert lift_to_type1(named("m", F5, 100)) == named("a", F5, 100)
    assert lift_to_type1(derive_type2(named("a", F3, 100), (1, 0))) == named("a", F3, 100)


def test_spanning_failure_reported():
    T = Type1Table(F5, 20, {i: (3 if i == 7 else 0) for i in range(2, 20)})
    # z = x + 3y is killed by C_7 = span(y - 3x): 1 + 3*3 = 10 = 0
    with pytest.raises(SpanningError) as err:
        derive_type2(T, (1, 3))
    assert err.value.weight == 7


def test_q_algebra_is_not_liftable():
    with pytest.raises(NotLiftableError):
        lift_to_type1(named("q_algebra", F5, 40, q=5))
    # the derivation identity mu_i d_{i+2} = d_i mu_{i+1} breaks at i = q
    T = named("q_algebra", F5, 40, q=5)
    d = derivation_values(T)
    assert T.mu[5] * d[7] % 5 != d[5] * T.mu[6] % 5


@pytest.mark.parametrize("p,N", [(3, 40), (5, 60)])
def test_round_trips_on_two_q_algebras(p, N):
    leaves = two_q_leaves(p, N)
    assert leaves
    for T in leaves:
        M = lift_to_type1(T)
        assert jacobi_check(M).ok
        assert derive_type2(M, (1, 0)) == T
        rep = two_step_centralizers(M)
        assert rep.uncovered
        seq = constituents(T)
        # every non-first constituent length lies between q and 2q
        assert all(p <= length <= 2 * p for length in seq.lengths())


@pytest.mark.parametrize("p,N", [(3, 40), (5, 60)])
def test_type1_round_trip_rebases(p, N):
    f = PrimeField(p)
    for T in two_q_leaves(p, N):
        M = lift_to_type1(T)
        # shift delta by a constant: still the same algebra with y moved off C_2
        shifted = Type1Table(f, M.N, {i: f.reduce(d + 2) for i, d in M.delta.items()})
        back = lift_to_type1(derive_type2(shifted, (1, 0)))
        assert back.delta == {i: f.reduce(d - shifted.delta[2]) for i, d in shifted.delta.items()}


def test_liftable_iff_minus_lambda_pairs():
    rep = classify(5, 40, "e3-zero", certify=4)
    f = F5
    for leaf in rep.certified():
        T = table_of(5, leaf)
        seq = constituents(T)
        pairs = ([seq.first_end_pair] if seq.first_end_pair else []) + [c.type_pair for c in seq.body]
        good = all(f.reduce(a + b) == 0 for a, b in pairs)
        try:
            lift_to_type1(T)
            lifted = True
        except NotLiftableError:
            lifted = False
        assert lifted == good


def test_deflate_examples():
    for name in ("m", "m2"):
        D = deflate(named(name, F5, 60), 5)
        assert all(d == 0 for d in D.delta.values())
        assert jacobi_check(D).ok and maximal_class_check(D).ok
    T = named("q_algebra", F5, 150, q=25)
    D = deflate(T, 5)
    assert jacobi_check(D).ok and maximal_class_check(D).ok
    # the derived brackets of the deflation agree with the original table
    for i in range(2, D.N):
        for j in range(2, min(i, D.N - i + 1)):
            assert D.beta(i, j) == T.gamma(5 * i, 5 * j)


def test_deflate_depth():
    with pytest.raises(DepthError):
        deflate(named("m", F5, 14), 5)
