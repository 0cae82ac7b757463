"""Weights, supports, and support spaces of vectors."""

import itertools

import pytest
from hypothesis import given, strategies as st

from sumrank import kernels
from sumrank.errors import BudgetExceeded, TowerMismatch
from sumrank.lattice import SupportList, enumerate_supports
from sumrank.metric import (
    BlockVector,
    NotASupportSpace,
    in_support_space,
    subspace_support,
    sum_rank_distance,
    sum_rank_weight,
    support_space_generators,
    support_space_of,
    vector_support,
    weight_via_hamming_minimum,
)


def vec(tower, *codes):
    return BlockVector.make(tower, codes)


def all_vectors(tower):
    for codes in itertools.product(range(tower.field.q), repeat=tower.n):
        yield BlockVector(tower, codes)


# ---------------------------------------------------------------------------
# weight and distance
# ---------------------------------------------------------------------------


def test_weight_frozen_values(t4, t4_hamming):
    assert sum_rank_weight(vec(t4, 2, 1)) == 2  # alpha, 1 spans GF(4) over GF(2)
    assert sum_rank_weight(vec(t4, 1, 1)) == 1
    assert sum_rank_weight(vec(t4, 0, 3)) == 1
    assert sum_rank_weight(vec(t4, 0, 0)) == 0
    assert sum_rank_weight(vec(t4_hamming, 1, 1)) == 2
    assert sum_rank_weight(vec(t4_hamming, 0, 2)) == 1


def test_distance_frozen_value(t4):
    assert sum_rank_distance(vec(t4, 1, 2), vec(t4, 1, 1)) == 1


def test_weight_is_the_support_rank(t4, t4_mixed, t4_hamming):
    for tower in (t4, t4_mixed, t4_hamming):
        for v in all_vectors(tower):
            assert sum_rank_weight(v) == vector_support(v).rank()


def test_metric_axioms_exhaustive(t4):
    vs = list(all_vectors(t4))
    for a in vs:
        assert sum_rank_distance(a, a) == 0
        for b in vs:
            d = sum_rank_distance(a, b)
            assert d == sum_rank_distance(b, a)
            assert (d == 0) == (a.codes == b.codes)
    for a, b, c in itertools.product(vs, repeat=3):
        assert sum_rank_distance(a, c) <= sum_rank_distance(a, b) + sum_rank_distance(
            b, c
        )


@given(st.integers(1, 3), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_scaling_preserves_weight_and_support(t4_mixed, a, codes):
    v = BlockVector.make(t4_mixed, codes)
    w = v.scale(a)
    assert sum_rank_weight(w) == sum_rank_weight(v)
    assert vector_support(w) == vector_support(v)


def test_vector_arithmetic(t4):
    a, b = vec(t4, 1, 2), vec(t4, 3, 3)
    assert (a + b).codes == (2, 1)
    assert (a - b).codes == (2, 1)  # characteristic 2
    assert a.scale(2).codes == (2, 3)
    assert not a.is_zero() and vec(t4, 0, 0).is_zero()
    with pytest.raises(TowerMismatch):
        BlockVector.make(t4, (1, 2, 3))


# ---------------------------------------------------------------------------
# supports
# ---------------------------------------------------------------------------


def test_vector_support_frozen(t4):
    assert vector_support(vec(t4, 1, 1)).parts[0].rows == ((1, 1),)
    assert vector_support(vec(t4, 2, 1)).parts[0].rows == ((1, 0), (0, 1))
    assert vector_support(vec(t4, 0, 0)).parts[0].rows == ()


def test_subspace_support_frozen(t4):
    assert subspace_support([vec(t4, 1, 1)]).rank() == 1
    assert subspace_support([vec(t4, 0, 0)]).rank() == 0
    assert subspace_support([vec(t4, 1, 2)]).rank() == 2
    assert subspace_support([vec(t4, 1, 0), vec(t4, 0, 1)]).rank() == 2
    with pytest.raises(ValueError):
        subspace_support([])


def test_support_is_spanning_set_invariant(t4, t4_mixed):
    for tower in (t4, t4_mixed):
        vs = [v for v in all_vectors(tower)]
        for a, b in itertools.islice(itertools.product(vs, repeat=2), 0, None, 7):
            base = subspace_support([a, b])
            # throwing in sums and scalings never grows the support
            assert subspace_support([a, b, a + b, a.scale(2), b.scale(3)]) == base


# ---------------------------------------------------------------------------
# support spaces
# ---------------------------------------------------------------------------


def test_support_space_generators_frozen(t4):
    full = SupportList.full(t4)
    assert support_space_generators(full) == ((1, 0), (0, 1))
    assert support_space_generators(SupportList.zero(t4)) == ()
    line = SupportList.from_rows(t4, [((1, 1),)])
    assert support_space_generators(line) == ((1, 1),)


def test_generators_have_weight_one_and_right_count(t4, t4_mixed):
    for tower in (t4, t4_mixed):
        for L in enumerate_supports(tower):
            gens = support_space_generators(L)
            assert len(gens) == L.rank()
            for g in gens:
                v = BlockVector(tower, g)
                assert sum_rank_weight(v) == 1
                assert in_support_space(v, L)


def test_in_support_space_frozen(t4):
    line = SupportList.from_rows(t4, [((1, 1),)])
    assert in_support_space(vec(t4, 2, 2), line)
    assert in_support_space(vec(t4, 0, 0), line)
    assert not in_support_space(vec(t4, 1, 2), line)
    assert not in_support_space(vec(t4, 1, 0), line)


def test_support_space_membership_matches_span(t4, t4_mixed):
    # V_L is exactly the F-span of its weight-one generators
    for tower in (t4, t4_mixed):
        field = tower.field
        for L in enumerate_supports(tower):
            gens = support_space_generators(L)
            for v in all_vectors(tower):
                in_span = kernels.in_rowspace_rows(field, gens, v.codes)
                assert in_support_space(v, L) == in_span


def test_support_space_of_round_trips_the_lattice(t4, t4_mixed):
    for tower in (t4, t4_mixed):
        for L in enumerate_supports(tower):
            gens = support_space_generators(L)
            if not gens:
                continue
            got = support_space_of([BlockVector(tower, g) for g in gens])
            assert got == L


def test_support_space_of_rejects_thin_spans(t4):
    got = support_space_of([vec(t4, 1, 2)])
    assert isinstance(got, NotASupportSpace)
    assert got.dimension == 1
    assert got.support_rank == 2
    assert got.closure == SupportList.full(t4)
    # and accepts spans that are support spaces
    assert support_space_of([vec(t4, 1, 0), vec(t4, 0, 1)]) == SupportList.full(t4)
    assert support_space_of([vec(t4, 1, 1), vec(t4, 2, 2)]).rank() == 1


def test_support_space_duality(t4, t4_mixed):
    # the F-orthogonal of V_L is the support space of the dual support
    for tower in (t4, t4_mixed):
        field = tower.field
        for L in enumerate_supports(tower):
            gens = support_space_generators(L)
            perp = kernels.nullspace_rows(field, gens, tower.n)
            dual_gens = kernels.rref_rows(
                field, support_space_generators(L.dual()), tower.n
            )[0]
            assert perp == dual_gens


def test_support_spaces_respect_lattice_ops(t4):
    # V_(L+M) = V_L + V_M and V_(L^M) = V_L ^ V_M as F-subspaces
    field = t4.field
    n = t4.n

    def space(L):
        return kernels.rref_rows(field, support_space_generators(L), n)[0]

    def f_sum(a, b):
        return kernels.rref_rows(field, a + b, n)[0]

    def f_intersect(a, b):
        na = kernels.nullspace_rows(field, a, n)
        nb = kernels.nullspace_rows(field, b, n)
        return kernels.nullspace_rows(field, na + nb, n)

    supports = list(enumerate_supports(t4))
    for L, M in itertools.product(supports, repeat=2):
        assert space(L.sum(M)) == f_sum(space(L), space(M))
        assert space(L.intersect(M)) == f_intersect(space(L), space(M))


# ---------------------------------------------------------------------------
# the Hamming-minimum form of the weight
# ---------------------------------------------------------------------------


def test_hamming_minimum_frozen(t4):
    assert weight_via_hamming_minimum([vec(t4, 0, 3)]) == 1
    assert weight_via_hamming_minimum([vec(t4, 2, 1)]) == 2
    assert weight_via_hamming_minimum([vec(t4, 0, 0)]) == 0


def test_hamming_minimum_matches_support_rank(t4, t4_hamming):
    for tower in (t4, t4_hamming):
        vs = list(all_vectors(tower))
        for v in vs:
            assert weight_via_hamming_minimum([v]) == sum_rank_weight(v)
        for a, b in itertools.islice(itertools.product(vs, repeat=2), 0, None, 5):
            expect = subspace_support([a, b]).rank()
            assert weight_via_hamming_minimum([a, b]) == expect


def test_hamming_minimum_budget(t4):
    with pytest.raises(BudgetExceeded):
        weight_via_hamming_minimum([vec(t4, 1, 0)], budget=3)
