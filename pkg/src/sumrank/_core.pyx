# cython: language_level=3
"""Compiled kernels, the hot path behind ``sumrank.kernels``.

Function-for-function twin of ``sumrank._core_py``; see that module for
the layout and canonical-form contract.  Keep the two in lockstep: the
test suite cross-checks their outputs bit for bit.
"""

from array import array


def rref(flat, int nrows, int ncols, tables):
    """Reduced row echelon form.  Returns (rank, pivot columns, rows)."""
    cdef int q = tables.q
    cdef int[::1] exp = tables.exp
    cdef int[::1] log = tables.log
    cdef int[::1] addt = tables.add
    cdef int[::1] neg = tables.neg
    cdef int qm1 = q - 1
    a_obj = array("i", flat)
    cdef int[::1] a = a_obj
    cdef int rank = 0
    cdef int col, r, sel, piv, linv, lf, f, v, j, tmp
    cdef Py_ssize_t base, rs, rr
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
                tmp = a[base + j]
                a[base + j] = a[rs + j]
                a[rs + j] = tmp
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
    return rank, tuple(pivots), a_obj[: rank * ncols]


def nullspace(flat, int nrows, int ncols, tables):
    """Canonical basis of the right kernel {x : M x^T = 0}.

    Returns (nullity, rows) with rows in reduced row echelon form.
    """
    rank, pivots, r = rref(flat, nrows, ncols, tables)
    cdef int[::1] neg = tables.neg
    cdef int[::1] rv = r
    cdef int irank = rank
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    cdef int nullity = len(free)
    if nullity == 0:
        return 0, array("i")
    basis_obj = array("i", [0]) * (nullity * ncols)
    cdef int[::1] basis = basis_obj
    cdef int i, j, f, p
    for i in range(nullity):
        f = free[i]
        basis[i * ncols + f] = 1
        for j in range(irank):
            p = pivots[j]
            basis[i * ncols + p] = neg[rv[j * ncols + f]]
    nrank, _, out = rref(basis_obj, nullity, ncols, tables)
    return nrank, out


def in_rowspace(rflat, int rank, int ncols, pivots, vflat, tables):
    """Membership of a vector in the row space of an RREF matrix."""
    cdef int q = tables.q
    cdef int[::1] exp = tables.exp
    cdef int[::1] log = tables.log
    cdef int[::1] addt = tables.add
    cdef int[::1] neg = tables.neg
    cdef int[::1] rv = rflat
    v_obj = array("i", vflat)
    cdef int[::1] v = v_obj
    cdef int i, j, p, f, lf, w
    cdef Py_ssize_t base
    for i in range(rank):
        p = pivots[i]
        f = v[p]
        if f:
            lf = log[f]
            base = i * ncols
            for j in range(p, ncols):
                w = rv[base + j]
                if w:
                    v[j] = addt[v[j] * q + neg[exp[lf + log[w]]]]
    for j in range(ncols):
        if v[j]:
            return False
    return True


def matmul(aflat, int ar, int ac, bflat, int bc, tables):
    """Row-major matrix product of (ar x ac) by (ac x bc)."""
    cdef int q = tables.q
    cdef int[::1] exp = tables.exp
    cdef int[::1] log = tables.log
    cdef int[::1] addt = tables.add
    cdef int[::1] av = aflat
    cdef int[::1] bv = bflat
    out_obj = array("i", [0]) * (ar * bc)
    cdef int[::1] out = out_obj
    cdef int i, t, j, f, lf, v
    cdef Py_ssize_t arow, orow, brow
    for i in range(ar):
        arow = i * ac
        orow = i * bc
        for t in range(ac):
            f = av[arow + t]
            if f:
                lf = log[f]
                brow = t * bc
                for j in range(bc):
                    v = bv[brow + j]
                    if v:
                        out[orow + j] = addt[out[orow + j] * q + exp[lf + log[v]]]
    return out_obj
