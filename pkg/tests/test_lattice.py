"""Support lattice: enumeration order, lattice laws, serialization."""

import itertools

import pytest

from sumrank.errors import BudgetExceeded, NotASubspace, SchemaError
from sumrank.lattice import (
    SupportList,
    block_subspaces,
    count_block_subspaces,
    count_supports,
    enumerate_rref,
    enumerate_supports,
    gaussian_binomial,
    make_subspace,
)

# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------


def test_gaussian_binomial_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(3, 0, 2) == 1
    assert gaussian_binomial(2, 3, 2) == 0
    assert gaussian_binomial(3, 3, 4) == 1


def test_gaussian_binomial_symmetry():
    for n in range(6):
        for k in range(n + 1):
            for s in (2, 3, 4):
                assert gaussian_binomial(n, k, s) == gaussian_binomial(n, n - k, s)


def test_count_block_subspaces():
    assert count_block_subspaces(1, 2) == 2
    assert count_block_subspaces(2, 2) == 5
    assert count_block_subspaces(2, 3) == 6
    assert count_block_subspaces(3, 2) == 16


def test_count_supports(t4, t4_mixed, t4_hamming):
    assert count_supports(t4) == 5
    assert count_supports(t4_mixed) == 10
    assert count_supports(t4_hamming) == 4


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_block_subspaces_of_f2_squared(t4):
    got = [s.rows for s in block_subspaces(t4, 0)]
    assert got == [
        (),
        ((0, 1),),
        ((1, 0),),
        ((1, 1),),
        ((1, 0), (0, 1)),
    ]


def test_enumerate_rref_yields_each_subspace_once():
    bases = list(enumerate_rref(3, 1, (0, 1)))
    assert len(bases) == gaussian_binomial(3, 1, 2)
    assert len(set(bases)) == len(bases)
    bases = list(enumerate_rref(4, 2, (0, 1, 2)))
    assert len(bases) == gaussian_binomial(4, 2, 3)
    assert len(set(bases)) == len(bases)


def test_enumerate_supports_order_and_count(t4):
    all_supports = list(enumerate_supports(t4))
    assert len(all_supports) == 5
    assert len(set(all_supports)) == 5
    assert [s.rank() for s in all_supports] == [0, 1, 1, 1, 2]
    rank_one = list(enumerate_supports(t4, target_rank=1))
    assert rank_one == all_supports[1:4]


def test_enumerate_supports_mixed_blocks(t4_mixed):
    supports = list(enumerate_supports(t4_mixed))
    assert len(supports) == 10
    assert sorted(s.rank() for s in supports) == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]


def test_enumeration_budget_refusal(t4):
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_supports(t4, budget=3))
    assert exc.value.count == 5
    assert exc.value.budget == 3


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------


def test_make_subspace_canonicalizes(t4):
    s = make_subspace(t4, 0, ((1, 1), (0, 1)))
    assert s.rows == ((1, 0), (0, 1))
    assert s.dim == 2


def test_rows_outside_block_subfield_rejected(t4, t4_mixed):
    with pytest.raises(NotASubspace):
        make_subspace(t4, 0, ((1, 2),))  # alpha is not in GF(2)
    with pytest.raises(NotASubspace):
        make_subspace(t4_mixed, 0, ((0, 3),))
    # block 1 of the mixed tower is over the full field, alpha is fine there
    assert make_subspace(t4_mixed, 1, ((2,),)).rows == ((1,),)
    with pytest.raises(NotASubspace):
        make_subspace(t4, 0, ((1, 1, 1),))  # wrong row length
    with pytest.raises(NotASubspace):
        SupportList.from_rows(t4, [[], []])  # one row list per block


def test_zero_and_full(t4_mixed):
    zero = SupportList.zero(t4_mixed)
    full = SupportList.full(t4_mixed)
    assert zero.rank() == 0
    assert full.rank() == 3
    assert full.block_dims() == (2, 1)
    assert full.includes(zero)
    assert not zero.includes(full)


# ---------------------------------------------------------------------------
# lattice laws, exhaustive over the 5-support tower
# ---------------------------------------------------------------------------


def test_lattice_laws_exhaustive(t4):
    supports = list(enumerate_supports(t4))
    zero = SupportList.zero(t4)
    full = SupportList.full(t4)
    for a, b in itertools.product(supports, repeat=2):
        s, i = a.sum(b), a.intersect(b)
        assert s == b.sum(a)
        assert i == b.intersect(a)
        assert s.includes(a) and s.includes(b)
        assert a.includes(i) and b.includes(i)
        # absorption
        assert a.sum(a.intersect(b)) == a
        assert a.intersect(a.sum(b)) == a
        # the block lattice is modular, so ranks add up
        assert a.rank() + b.rank() == s.rank() + i.rank()
        # inclusion matches the operations
        assert a.includes(b) == (a.sum(b) == a)
        assert a.includes(b) == (a.intersect(b) == b)
    for a, b, c in itertools.product(supports, repeat=3):
        assert a.sum(b).sum(c) == a.sum(b.sum(c))
        assert a.intersect(b).intersect(c) == a.intersect(b.intersect(c))
    for a in supports:
        assert a.sum(zero) == a and a.intersect(full) == a
        assert a.sum(full) == full and a.intersect(zero) == zero


def test_dual_is_an_order_reversing_involution(t4, t4_mixed):
    for tower in (t4, t4_mixed):
        supports = list(enumerate_supports(tower))
        n = SupportList.full(tower).rank()
        for a in supports:
            assert a.dual().dual() == a
            assert a.rank() + a.dual().rank() == n
        for a, b in itertools.product(supports, repeat=2):
            assert a.sum(b).dual() == a.dual().intersect(b.dual())
            assert a.intersect(b).dual() == a.dual().sum(b.dual())
            if a.includes(b):
                assert b.dual().includes(a.dual())


def test_complementary_in_is_a_direct_complement(t4, t4_mixed):
    for tower in (t4, t4_mixed):
        supports = list(enumerate_supports(tower))
        zero = SupportList.zero(tower)
        for a, inside in itertools.product(supports, repeat=2):
            if not inside.includes(a):
                with pytest.raises(NotASubspace):
                    a.complementary_in(inside)
                continue
            m = a.complementary_in(inside)
            assert a.sum(m) == inside
            assert a.intersect(m) == zero
            assert a.rank() + m.rank() == inside.rank()


def test_hamming_case_dual_is_set_complement(t4_hamming):
    # all block lengths 1: a support is a subset of blocks and the dual
    # is its complement
    for a in enumerate_supports(t4_hamming):
        picked = a.block_dims()
        assert set(picked) <= {0, 1}
        assert a.dual().block_dims() == tuple(1 - v for v in picked)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_json_round_trip(t4, t4_mixed):
    for tower in (t4, t4_mixed):
        for a in enumerate_supports(tower):
            assert SupportList.from_json(tower, a.to_json()) == a


def test_from_json_accepts_sparse_block_lists(t4_mixed):
    # omitted blocks default to the zero subspace
    a = SupportList.from_json(t4_mixed, [{"block": 1, "rows": [[1]]}])
    assert a.block_dims() == (0, 1)


def test_from_json_schema_errors(t4, t4_mixed):
    with pytest.raises(SchemaError):
        SupportList.from_json(t4, {"block": 0})
    with pytest.raises(SchemaError):
        SupportList.from_json(t4, [{"rows": [[1, 0]]}])
    with pytest.raises(SchemaError):
        SupportList.from_json(t4, [{"block": 7, "rows": []}])
    with pytest.raises(SchemaError):
        SupportList.from_json(
            t4, [{"block": 0, "rows": []}, {"block": 0, "rows": []}]
        )
    with pytest.raises(SchemaError):
        SupportList.from_json(t4, [{"block": 0, "rows": [["1", "0"]]}])
    with pytest.raises(SchemaError):
        # alpha outside the block subfield surfaces as a schema problem
        SupportList.from_json(t4_mixed, [{"block": 0, "rows": [[2, 0]]}])
