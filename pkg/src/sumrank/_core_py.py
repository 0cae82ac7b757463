"""Pure-Python kernels for matrix work over a tabled finite field.

This module mirrors the compiled extension ``sumrank._core`` function for
function: same flat row-major ``array('i')`` matrix layout, same pivot
choices, same canonical output, so either backend can sit behind
``sumrank.kernels``.  Arithmetic comes from the exp/log/add/neg tables
built by :class:`sumrank.field.FiniteField` (only fields small enough to
carry a full addition table reach these kernels).

The reduced row echelon form computed here is the canonical one: pivots
strictly increase, pivot entries are 1, pivot columns are clear above and
below, zero rows are dropped.  Every function is deterministic.
"""

from array import array


def rref(flat, nrows, ncols, tables):
    """Reduced row echelon form.  Returns (rank, pivot columns, rows)."""
    q = tables.q
    exp = tables.exp
    log = tables.log
    addt = tables.add
    neg = tables.neg
    qm1 = q - 1
    a = array("i", flat)
    rank = 0
    pivots = []
    for col in range(ncols):
        sel = -1
        for r in range(rank, nrows):
            if a[r * ncols + col]:
                sel = r
                break
        if sel < 0:
            continue
        base = rank * ncols
        if sel != rank:
            rs = sel * ncols
            for j in range(col, ncols):
                a[base + j], a[rs + j] = a[rs + j], a[base + j]
        piv = a[base + col]
        if piv != 1:
            linv = qm1 - log[piv]
            for j in range(col, ncols):
                v = a[base + j]
                if v:
                    a[base + j] = exp[log[v] + linv]
        for r in range(nrows):
            if r == rank:
                continue
            f = a[r * ncols + col]
            if f:
                lf = log[f]
                rr = r * ncols
                for j in range(col, ncols):
                    v = a[base + j]
                    if v:
                        a[rr + j] = addt[a[rr + j] * q + neg[exp[lf + log[v]]]]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, tuple(pivots), a[: rank * ncols]


def nullspace(flat, nrows, ncols, tables):
    """Canonical basis of the right kernel {x : M x^T = 0}.

    Returns (nullity, rows) with rows in reduced row echelon form.
    """
    rank, pivots, r = rref(flat, nrows, ncols, tables)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    nullity = len(free)
    if nullity == 0:
        return 0, array("i")
    neg = tables.neg
    basis = array("i", [0]) * (nullity * ncols)
    for i, f in enumerate(free):
        basis[i * ncols + f] = 1
        for j, p in enumerate(pivots):
            basis[i * ncols + p] = neg[r[j * ncols + f]]
    nrank, _, out = rref(basis, nullity, ncols, tables)
    return nrank, out


def in_rowspace(rflat, rank, ncols, pivots, vflat, tables):
    """Membership of a vector in the row space of an RREF matrix."""
    q = tables.q
    exp = tables.exp
    log = tables.log
    addt = tables.add
    neg = tables.neg
    v = array("i", vflat)
    for i in range(rank):
        p = pivots[i]
        f = v[p]
        if f:
            lf = log[f]
            base = i * ncols
            for j in range(p, ncols):
                w = rflat[base + j]
                if w:
                    v[j] = addt[v[j] * q + neg[exp[lf + log[w]]]]
    for j in range(ncols):
        if v[j]:
            return False
    return True


def matmul(aflat, ar, ac, bflat, bc, tables):
    """Row-major matrix product of (ar x ac) by (ac x bc)."""
    q = tables.q
    exp = tables.exp
    log = tables.log
    addt = tables.add
    out = array("i", [0]) * (ar * bc)
    for i in range(ar):
        arow = i * ac
        orow = i * bc
        for t in range(ac):
            f = aflat[arow + t]
            if f:
                lf = log[f]
                brow = t * bc
                for j in range(bc):
                    v = bflat[brow + j]
                    if v:
                        out[orow + j] = addt[out[orow + j] * q + exp[lf + log[v]]]
    return out
