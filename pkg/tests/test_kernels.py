"""Kernel twins must agree bit for bit, and both must do linear algebra."""

from array import array

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumrank import FiniteField, kernels
from sumrank import _core_py

try:
    from sumrank import _core
except ImportError:
    _core = None

F4 = FiniteField(2, 2, (1, 1, 1))
F9 = FiniteField(3, 2, (1, 0, 1))


def matrices(q, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.integers(0, q - 1), min_size=r * c, max_size=r * c
            ).map(lambda flat: (r, c, flat))
        )
    )


# ---------------------------------------------------------------------------
# compiled twin equals the pure one, output for output
# ---------------------------------------------------------------------------


@pytest.mark.skipif(_core is None, reason="compiled kernels not built")
@pytest.mark.parametrize("field", [F4, F9])
@given(data=st.data())
def test_twins_rref_identical(field, data):
    r, c, flat = data.draw(matrices(field.q))
    a = array("i", flat)
    got_c = _core.rref(a, r, c, field.tables)
    got_p = _core_py.rref(a, r, c, field.tables)
    assert got_c[0] == got_p[0]
    assert got_c[1] == got_p[1]
    assert list(got_c[2]) == list(got_p[2])


@pytest.mark.skipif(_core is None, reason="compiled kernels not built")
@pytest.mark.parametrize("field", [F4, F9])
@given(data=st.data())
def test_twins_nullspace_matmul_identical(field, data):
    r, c, flat = data.draw(matrices(field.q))
    a = array("i", flat)
    nc, nsc = _core.nullspace(a, r, c, field.tables)
    np_, nsp = _core_py.nullspace(a, r, c, field.tables)
    assert nc == np_ and list(nsc) == list(nsp)
    r2, c2, flat2 = data.draw(matrices(field.q, max_rows=c, max_cols=3))
    b = array("i", flat2[: c * c2])
    if len(b) < c * c2:
        b.extend([0] * (c * c2 - len(b)))
    assert list(_core.matmul(a, r, c, b, c2, field.tables)) == list(
        _core_py.matmul(a, r, c, b, c2, field.tables)
    )


# ---------------------------------------------------------------------------
# algebraic facts, checked through the row-level API on whatever backend
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("field", [F4, F9])
@given(data=st.data())
def test_rref_is_canonical_projection(field, data):
    r, c, flat = data.draw(matrices(field.q))
    rows = [tuple(flat[i * c : (i + 1) * c]) for i in range(r)]
    reduced, pivots = kernels.rref_rows(field, rows, c)
    assert len(reduced) == len(pivots) <= min(r, c)
    # pivots increase, are 1, and their columns are cleared
    assert list(pivots) == sorted(set(pivots))
    for i, p in enumerate(pivots):
        col = [row[p] for row in reduced]
        assert col == [1 if j == i else 0 for j in range(len(reduced))]
    again, _ = kernels.rref_rows(field, reduced, c)
    assert again == reduced
    for row in rows:
        assert kernels.in_rowspace_rows(field, reduced, row)


@pytest.mark.parametrize("field", [F4, F9])
@given(data=st.data())
def test_nullspace_is_the_orthogonal_kernel(field, data):
    r, c, flat = data.draw(matrices(field.q))
    rows = [tuple(flat[i * c : (i + 1) * c]) for i in range(r)]
    rank = kernels.rank_rows(field, rows, c)
    null = kernels.nullspace_rows(field, rows, c)
    assert len(null) == c - rank
    for nrow in null:
        for row in rows:
            acc = 0
            for x, y in zip(row, nrow):
                acc = field.add(acc, field.mul(x, y))
            assert acc == 0
    # kernel of the kernel is the row space
    back = kernels.nullspace_rows(field, null, c)
    reduced, _ = kernels.rref_rows(field, rows, c)
    assert back == reduced


@pytest.mark.parametrize("field", [F4, F9])
@given(data=st.data())
def test_solve_rows_finds_exact_solutions(field, data):
    r, c, flat = data.draw(matrices(field.q))
    rows = [tuple(flat[i * c : (i + 1) * c]) for i in range(r)]
    x = data.draw(st.lists(st.integers(0, field.q - 1), min_size=c, max_size=c))
    rhs = []
    for row in rows:
        acc = 0
        for a, b in zip(row, x):
            acc = field.add(acc, field.mul(a, b))
        rhs.append(acc)
    sol = kernels.solve_rows(field, rows, tuple(rhs))
    assert sol is not None
    for row, want in zip(rows, rhs):
        acc = 0
        for a, b in zip(row, sol):
            acc = field.add(acc, field.mul(a, b))
        assert acc == want


def test_solve_rows_reports_inconsistency():
    rows = [(1, 0), (1, 0)]
    assert kernels.solve_rows(F4, rows, (1, 2)) is None


def test_matmul_rows_against_schoolbook():
    a = [(1, 2), (3, 0)]
    b = [(2, 1), (1, 1)]
    got = kernels.matmul_rows(F4, a, b)
    want = []
    for row in a:
        out = []
        for j in range(2):
            acc = 0
            for t in range(2):
                acc = F4.add(acc, F4.mul(row[t], b[t][j]))
            out.append(acc)
        want.append(tuple(out))
    assert list(got) == want


# ---------------------------------------------------------------------------
# the generic (table-free) path must match the tabled path
# ---------------------------------------------------------------------------


@given(data=st.data())
def test_generic_path_matches_tables(data):
    tabled = F9
    plain = FiniteField(3, 2, (1, 0, 1), build_tables=False)
    assert plain.tables is None
    r, c, flat = data.draw(matrices(9))
    rows = [tuple(flat[i * c : (i + 1) * c]) for i in range(r)]
    assert kernels.rref_rows(tabled, rows, c) == kernels.rref_rows(plain, rows, c)
    assert kernels.nullspace_rows(tabled, rows, c) == kernels.nullspace_rows(
        plain, rows, c
    )


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "python")
