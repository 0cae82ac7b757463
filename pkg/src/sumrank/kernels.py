"""Backend-selected linear algebra over one finite field.

The rest of the package talks to matrices as tuples of tuples of element
codes through the row-level helpers here.  For fields that carry full
arithmetic tables the flat kernels do the work, either compiled
(``sumrank._core``, built from the Cython source) or pure Python
(``sumrank._core_py``); the compiled module is preferred when importable
and ``SUMRANK_BACKEND=python`` in the environment forces the fallback.
Fields too large to table take a generic path that calls field methods
element by element.  All three routes produce identical canonical output.
"""

from __future__ import annotations

import os
from array import array

if os.environ.get("SUMRANK_BACKEND", "").lower() == "python":
    from . import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _core_py as _impl

        BACKEND = "python"


def _flatten(rows):
    flat = array("i")
    for row in rows:
        flat.extend(row)
    return flat


def _unflatten(flat, nrows, ncols):
    return tuple(
        tuple(flat[i * ncols : (i + 1) * ncols]) for i in range(nrows)
    )


def pivots_of(rows) -> tuple[int, ...]:
    """Pivot columns of rows already in reduced row echelon form."""
    pivots = []
    for row in rows:
        for j, v in enumerate(row):
            if v:
                pivots.append(j)
                break
    return tuple(pivots)


# ---------------------------------------------------------------------------
# row-level API
# ---------------------------------------------------------------------------


def rref_rows(field, rows, ncols):
    """Canonical RREF of the given rows; returns (rows, pivot columns)."""
    rows = [tuple(r) for r in rows]
    t = field.tables
    if t is not None:
        rank, pivots, out = _impl.rref(_flatten(rows), len(rows), ncols, t)
        return _unflatten(out, rank, ncols), pivots
    return _rref_generic(field, rows, ncols)


def rank_rows(field, rows, ncols) -> int:
    return len(rref_rows(field, rows, ncols)[0])


def nullspace_rows(field, rows, ncols):
    """Canonical RREF basis of {x : rows . x^T = 0}."""
    rows = [tuple(r) for r in rows]
    t = field.tables
    if t is not None:
        nullity, out = _impl.nullspace(_flatten(rows), len(rows), ncols, t)
        return _unflatten(out, nullity, ncols)
    rref, pivots = _rref_generic(field, rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for j, p in enumerate(pivots):
            v[p] = field.neg(rref[j][f])
        basis.append(tuple(v))
    return _rref_generic(field, basis, ncols)[0]


def in_rowspace_rows(field, rref_rows_, vec) -> bool:
    """Membership of vec in the row space of an RREF matrix."""
    ncols = len(vec)
    rows = [tuple(r) for r in rref_rows_]
    pivots = pivots_of(rows)
    t = field.tables
    if t is not None:
        return _impl.in_rowspace(
            _flatten(rows), len(rows), ncols, pivots, array("i", vec), t
        )
    v = list(vec)
    for i, p in enumerate(pivots):
        f = v[p]
        if f:
            for j in range(p, ncols):
                w = rows[i][j]
                if w:
                    v[j] = field.sub(v[j], field.mul(f, w))
    return not any(v)


def matmul_rows(field, a, b):
    """Matrix product of row tuples a (r x c) and b (c x d)."""
    a = [tuple(r) for r in a]
    b = [tuple(r) for r in b]
    ar = len(a)
    ac = len(a[0]) if a else 0
    bc = len(b[0]) if b else 0
    t = field.tables
    if t is not None:
        out = _impl.matmul(_flatten(a), ar, ac, _flatten(b), bc, t)
        return _unflatten(out, ar, bc)
    out = []
    for i in range(ar):
        row = [0] * bc
        for k in range(ac):
            f = a[i][k]
            if f:
                for j in range(bc):
                    v = b[k][j]
                    if v:
                        row[j] = field.add(row[j], field.mul(f, v))
        out.append(tuple(row))
    return tuple(out)


def solve_rows(field, rows, rhs):
    """One solution x of rows . x^T = rhs with free coordinates zero.

    Returns None when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else len(rhs)
    augmented = [tuple(r) + (v,) for r, v in zip(rows, rhs)]
    reduced, pivots = rref_rows(field, augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i][ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# generic path for fields without tables
# ---------------------------------------------------------------------------


def _rref_generic(field, rows, ncols):
    # Same pivot choices as the flat kernels; arithmetic via field methods.
    a = [list(r) for r in rows]
    nrows = len(a)
    rank = 0
    pivots = []
    for col in range(ncols):
        sel = -1
        for r in range(rank, nrows):
            if a[r][col]:
                sel = r
                break
        if sel < 0:
            continue
        if sel != rank:
            a[rank], a[sel] = a[sel], a[rank]
        piv = a[rank][col]
        if piv != 1:
            inv = field.inv(piv)
            a[rank] = [field.mul(inv, v) if v else 0 for v in a[rank]]
        for r in range(nrows):
            if r == rank:
                continue
            f = a[r][col]
            if f:
                a[r] = [
                    field.sub(a[r][j], field.mul(f, a[rank][j]))
                    if a[rank][j]
                    else a[r][j]
                    for j in range(ncols)
                ]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return tuple(tuple(r) for r in a[:rank]), tuple(pivots)
