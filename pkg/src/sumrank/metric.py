"""Sum-rank weight, supports, and support spaces.

A vector over the tower is cut into blocks; block i is written as the
m_i x n_i matrix of K_i-coordinates and contributes the rank of that
matrix to the weight.  The support of a vector collects the row spaces of
those matrices, one subspace per block; the support of a set of vectors
is the lattice sum over the set, and a spanning set suffices because the
representation of a sum is a sum of representations and scaling acts by a
K_i-matrix on the left.

A support space V_L is the set of all vectors supported inside L.  It is
an F-linear subspace of dimension Rk(L) with a weight-one generating set:
stack the canonical basis rows of each block of L into F^n at the block
offsets.  An F-subspace is a support space exactly when its F-dimension
equals the rank of its support; `support_space_of` decides that and
reports the witness dimensions otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import BudgetExceeded, TowerMismatch
from .field import FieldTower, require_same_tower
from .lattice import DEFAULT_BUDGET, SupportList, Subspace, make_subspace


@dataclass(frozen=True)
class BlockVector:
    """A length-n vector of element codes over a tower."""

    tower: FieldTower
    codes: tuple[int, ...]

    def __post_init__(self):
        if len(self.codes) != self.tower.n:
            raise TowerMismatch(
                f"vector length {len(self.codes)} != tower length {self.tower.n}"
            )

    @classmethod
    def make(cls, tower: FieldTower, codes: Sequence[int]) -> "BlockVector":
        return cls(tower, tuple(int(c) for c in codes))

    def block(self, i: int) -> tuple[int, ...]:
        return self.tower.block_slice(self.codes, i)

    def __add__(self, other: "BlockVector") -> "BlockVector":
        require_same_tower(self.tower, other.tower, "vectors")
        add = self.tower.field.add
        return BlockVector(
            self.tower, tuple(add(a, b) for a, b in zip(self.codes, other.codes))
        )

    def __sub__(self, other: "BlockVector") -> "BlockVector":
        require_same_tower(self.tower, other.tower, "vectors")
        sub = self.tower.field.sub
        return BlockVector(
            self.tower, tuple(sub(a, b) for a, b in zip(self.codes, other.codes))
        )

    def scale(self, a: int) -> "BlockVector":
        mul = self.tower.field.mul
        return BlockVector(self.tower, tuple(mul(a, c) for c in self.codes))

    def is_zero(self) -> bool:
        return not any(self.codes)


def sum_rank_weight(c: BlockVector) -> int:
    """Sum over blocks of the rank of the matrix representation."""
    tower = c.tower
    total = 0
    for i, b in enumerate(tower.blocks):
        if b.n == 0:
            continue
        rows = tower.matrix_representation(c.block(i), i)
        total += kernels.rank_rows(tower.field, rows, b.n)
    return total


def sum_rank_distance(c: BlockVector, d: BlockVector) -> int:
    return sum_rank_weight(c - d)


def vector_support(c: BlockVector) -> SupportList:
    """Blockwise row spaces of the matrix representation."""
    tower = c.tower
    parts = []
    for i, b in enumerate(tower.blocks):
        rows = tower.matrix_representation(c.block(i), i)
        reduced, _ = kernels.rref_rows(tower.field, rows, b.n)
        parts.append(Subspace(i, b.n, reduced))
    return SupportList(tower, tuple(parts))


def subspace_support(vectors: Sequence[BlockVector]) -> SupportList:
    """Support of the F-span: the lattice sum over a spanning set."""
    if not vectors:
        raise ValueError("need at least one vector; use SupportList.zero for {0}")
    tower = vectors[0].tower
    out = SupportList.zero(tower)
    for v in vectors:
        require_same_tower(tower, v.tower, "vectors")
        out = out.sum(vector_support(v))
    return out


def support_space_generators(L: SupportList) -> tuple[tuple[int, ...], ...]:
    """Weight-one F-generators of V_L: block bases stacked at offsets.

    The result is Rk(L) rows of length n and is already in RREF, block
    order first, canonical basis order within a block.
    """
    tower = L.tower
    n = tower.n
    rows = []
    for i, part in enumerate(L.parts):
        off = tower.offsets[i]
        for brow in part.rows:
            row = [0] * n
            row[off : off + part.ncols] = brow
            rows.append(tuple(row))
    return tuple(rows)


def in_support_space(c: BlockVector, L: SupportList) -> bool:
    """Whether Supp(c) <= L, i.e. c lies in V_L."""
    require_same_tower(c.tower, L.tower, "vector and support")
    return L.includes(vector_support(c))


@dataclass(frozen=True)
class NotASupportSpace:
    """Witness that an F-subspace is not of the form V_L.

    Carries the F-dimension of the span, the rank of its support closure,
    and the closure itself (the smallest support space containing the
    span is V of that closure).
    """

    dimension: int
    support_rank: int
    closure: SupportList


def support_space_of(vectors: Sequence[BlockVector]) -> SupportList | NotASupportSpace:
    """Recognize the F-span of the vectors as V_L, or explain why not.

    Returns the support L when dim_F(span) == Rk(Supp(span)); otherwise a
    NotASupportSpace record.  This is a normal return, not an error.
    """
    tower = vectors[0].tower
    dim = kernels.rank_rows(tower.field, [v.codes for v in vectors], tower.n)
    closure = subspace_support(vectors)
    if dim == closure.rank():
        return closure
    return NotASupportSpace(dim, closure.rank(), closure)


# ---------------------------------------------------------------------------
# Hamming-minimum form of the weight
# ---------------------------------------------------------------------------

_invertible_cache: dict[tuple, tuple] = {}


def _block_invertibles(tower: FieldTower, i: int) -> tuple:
    """All invertible n_i x n_i matrices over K_i, entry-lexicographic."""
    b = tower.blocks[i]
    key = (tower.field.key, b.d, b.n)
    cached = _invertible_cache.get(key)
    if cached is not None:
        return cached
    import itertools

    field = tower.field
    elements = field.subfield_elements(b.d)
    out = []
    for entries in itertools.product(elements, repeat=b.n * b.n):
        rows = tuple(
            tuple(entries[r * b.n : (r + 1) * b.n]) for r in range(b.n)
        )
        if kernels.rank_rows(field, rows, b.n) == b.n:
            out.append(rows)
    cached = tuple(out)
    _invertible_cache[key] = cached
    return cached


def weight_via_hamming_minimum(
    vectors: Sequence[BlockVector], budget: int = DEFAULT_BUDGET
) -> int:
    """min over blockwise invertible A of the Hamming weight of span.A.

    The Hamming weight of a space is the number of coordinates where some
    vector is nonzero, read off any generating matrix.  Agrees with the
    sum-rank weight of the span.
    """
    tower = vectors[0].tower
    for v in vectors:
        require_same_tower(tower, v.tower, "vectors")
    rows, _ = kernels.rref_rows(
        tower.field, [v.codes for v in vectors], tower.n
    )
    if not rows:
        return 0
    cost = 1
    for b in tower.blocks:
        cost *= (tower.field.p**b.d) ** (b.n * b.n)
    if cost > budget:
        raise BudgetExceeded(cost, budget, "invertible-matrix scan")
    import itertools

    field = tower.field
    per_block = [_block_invertibles(tower, i) for i in range(tower.num_blocks)]
    segments = [
        [tower.block_slice(row, i) for i in range(tower.num_blocks)] for row in rows
    ]
    best = None
    for blocks_choice in itertools.product(*per_block):
        nonzero_cols = 0
        for i, a_i in enumerate(blocks_choice):
            n_i = tower.blocks[i].n
            if n_i == 0:
                continue
            transformed = [
                kernels.matmul_rows(field, [segments[r][i]], a_i)[0]
                for r in range(len(rows))
            ]
            for c in range(n_i):
                if any(t[c] for t in transformed):
                    nonzero_cols += 1
        if best is None or nonzero_cols < best:
            best = nonzero_cols
            if best == 0:
                break
    return best
