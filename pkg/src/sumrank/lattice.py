"""The lattice of sum-rank supports.

A support over a tower with blocks (n_1, K_1), ..., (n_l, K_l) is a list
of K_i-subspaces, one inside each K_i^(n_i).  Each subspace is stored by
its canonical reduced-row-echelon basis, so equality of supports is plain
syntactic equality.  Rank adds block dimensions; inclusion, sum,
intersection, orthogonal complement (standard bilinear form) and lattice
complements all work blockwise.  When every n_i = 1 the lattice collapses
to subsets of the block index set and the dual is the set complement,
which is the Hamming special case.

Enumeration of all supports is deterministic: within each block, subspaces
are ordered by dimension and then lexicographically by their canonical
basis, and blocks vary right to left.  Enumerations refuse to start when
the support count exceeds the step budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernels
from .errors import BudgetExceeded, NotASubspace, SchemaError
from .field import FieldTower, require_same_tower

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class Subspace:
    """A K_i-subspace of K_i^(n_i), canonical RREF rows."""

    block: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)


def _check_block_rows(tower: FieldTower, block: int, rows) -> None:
    field = tower.field
    d = tower.blocks[block].d
    n = tower.blocks[block].n
    for row in rows:
        if len(row) != n:
            raise NotASubspace(f"row length {len(row)} != block length {n}")
        for v in row:
            if not 0 <= v < field.q:
                raise NotASubspace(f"{v} is not an element code")
            if not field.is_in_subfield(v, d):
                raise NotASubspace(
                    f"entry {v} lies outside GF({field.p}^{d}) in block {block}"
                )


def make_subspace(tower: FieldTower, block: int, rows) -> Subspace:
    """Canonicalize spanning rows over the block subfield."""
    _check_block_rows(tower, block, rows)
    n = tower.blocks[block].n
    reduced, _ = kernels.rref_rows(tower.field, rows, n)
    return Subspace(block, n, reduced)


@dataclass(frozen=True)
class SupportList:
    """A sum-rank support: one subspace per block."""

    tower: FieldTower
    parts: tuple[Subspace, ...]

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, tower: FieldTower) -> "SupportList":
        return cls(
            tower,
            tuple(Subspace(i, b.n, ()) for i, b in enumerate(tower.blocks)),
        )

    @classmethod
    def full(cls, tower: FieldTower) -> "SupportList":
        parts = []
        for i, b in enumerate(tower.blocks):
            rows = tuple(
                tuple(1 if c == r else 0 for c in range(b.n)) for r in range(b.n)
            )
            parts.append(Subspace(i, b.n, rows))
        return cls(tower, tuple(parts))

    @classmethod
    def from_rows(cls, tower: FieldTower, rows_per_block: Sequence) -> "SupportList":
        if len(rows_per_block) != tower.num_blocks:
            raise NotASubspace("one row list per block required")
        parts = tuple(
            make_subspace(tower, i, rows) for i, rows in enumerate(rows_per_block)
        )
        return cls(tower, parts)

    # -- lattice ops ------------------------------------------------------

    def rank(self) -> int:
        return sum(part.dim for part in self.parts)

    def block_dims(self) -> tuple[int, ...]:
        return tuple(part.dim for part in self.parts)

    def includes(self, other: "SupportList") -> bool:
        """Blockwise containment other <= self."""
        require_same_tower(self.tower, other.tower, "supports")
        field = self.tower.field
        for mine, theirs in zip(self.parts, other.parts):
            for row in theirs.rows:
                if not kernels.in_rowspace_rows(field, mine.rows, row):
                    return False
        return True

    def sum(self, other: "SupportList") -> "SupportList":
        require_same_tower(self.tower, other.tower, "supports")
        field = self.tower.field
        parts = []
        for mine, theirs in zip(self.parts, other.parts):
            reduced, _ = kernels.rref_rows(
                field, mine.rows + theirs.rows, mine.ncols
            )
            parts.append(Subspace(mine.block, mine.ncols, reduced))
        return SupportList(self.tower, tuple(parts))

    def intersect(self, other: "SupportList") -> "SupportList":
        # blockwise (A^perp + B^perp)^perp
        return self.dual().sum(other.dual()).dual()

    def dual(self) -> "SupportList":
        """Blockwise orthogonal complement for the standard bilinear form."""
        field = self.tower.field
        parts = []
        for part in self.parts:
            rows = kernels.nullspace_rows(field, part.rows, part.ncols)
            parts.append(Subspace(part.block, part.ncols, rows))
        return SupportList(self.tower, tuple(parts))

    def complementary_in(self, inside: "SupportList") -> "SupportList":
        """A support M with inside = self (+) M, direct.

        Deterministic: the basis of self is greedily extended by the
        canonical basis rows of inside (the standard vectors when inside
        is the full support), in index order.
        """
        require_same_tower(self.tower, inside.tower, "supports")
        if not inside.includes(self):
            raise NotASubspace("complement requested outside the ambient support")
        field = self.tower.field
        parts = []
        for mine, amb in zip(self.parts, inside.parts):
            current = list(mine.rows)
            extension = []
            for row in amb.rows:
                if not kernels.in_rowspace_rows(
                    field, kernels.rref_rows(field, current, mine.ncols)[0], row
                ):
                    current.append(row)
                    extension.append(row)
            reduced, _ = kernels.rref_rows(field, extension, mine.ncols)
            parts.append(Subspace(mine.block, mine.ncols, reduced))
        return SupportList(self.tower, tuple(parts))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"block": part.block, "rows": [list(r) for r in part.rows]}
            for part in self.parts
        ]

    @classmethod
    def from_json(cls, tower: FieldTower, data, path: str = "$") -> "SupportList":
        if not isinstance(data, list):
            raise SchemaError("support must be a list of {block, rows}", path)
        rows_per_block = [[] for _ in range(tower.num_blocks)]
        seen = set()
        for k, entry in enumerate(data):
            if not isinstance(entry, dict) or "block" not in entry or "rows" not in entry:
                raise SchemaError("entry needs 'block' and 'rows'", f"{path}[{k}]")
            b = entry["block"]
            if not isinstance(b, int) or not 0 <= b < tower.num_blocks:
                raise SchemaError(f"bad block index {b}", f"{path}[{k}].block")
            if b in seen:
                raise SchemaError(f"duplicate block {b}", f"{path}[{k}].block")
            seen.add(b)
            rows = entry["rows"]
            if not isinstance(rows, list) or not all(
                isinstance(r, list) and all(isinstance(v, int) for v in r) for r in rows
            ):
                raise SchemaError("rows must be a list of int lists", f"{path}[{k}].rows")
            rows_per_block[b] = rows
        try:
            return cls.from_rows(tower, rows_per_block)
        except NotASubspace as exc:
            raise SchemaError(str(exc), path) from exc


# ---------------------------------------------------------------------------
# counting and enumeration
# ---------------------------------------------------------------------------


def gaussian_binomial(n: int, k: int, s: int) -> int:
    """Number of k-dimensional subspaces of GF(s)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= s ** (n - i) - 1
        den *= s ** (i + 1) - 1
    return num // den


def count_block_subspaces(n: int, s: int) -> int:
    return sum(gaussian_binomial(n, k, s) for k in range(n + 1))


def count_supports(tower: FieldTower) -> int:
    total = 1
    for b in tower.blocks:
        total *= count_block_subspaces(b.n, tower.field.p**b.d)
    return total


_block_cache: dict[tuple, tuple] = {}


def _rref_fill(pivots, free_values, ncols, pivot_index):
    """Assemble an RREF matrix from pivot columns and free entries."""
    k = len(pivots)
    rows = [[0] * ncols for _ in range(k)]
    it = iter(free_values)
    for r in range(k):
        rows[r][pivots[r]] = 1
        for c in range(pivots[r] + 1, ncols):
            if c not in pivot_index:
                rows[r][c] = next(it)
    return tuple(tuple(r) for r in rows)


def enumerate_rref(ncols: int, k: int, elements: Sequence[int]) -> Iterator[tuple]:
    """All canonical RREF bases of k-dim subspaces of E^ncols, E = elements.

    Ordered by pivot-column combination, then free entries row-major in
    element order.
    """
    for pivots in itertools.combinations(range(ncols), k):
        pivot_index = set(pivots)
        nfree = sum(
            1
            for r in range(k)
            for c in range(pivots[r] + 1, ncols)
            if c not in pivot_index
        )
        for values in itertools.product(elements, repeat=nfree):
            yield _rref_fill(pivots, values, ncols, pivot_index)


def block_subspaces(tower: FieldTower, i: int) -> tuple[Subspace, ...]:
    """Every subspace of block i, ordered by dimension then by basis."""
    b = tower.blocks[i]
    key = (tower.field.key, b.d, b.n)
    cached = _block_cache.get(key)
    if cached is None:
        elements = tower.field.subfield_elements(b.d)
        all_rows = []
        for k in range(b.n + 1):
            batch = sorted(enumerate_rref(b.n, k, elements))
            all_rows.extend(batch)
        cached = tuple(all_rows)
        _block_cache[key] = cached
    return tuple(Subspace(i, b.n, rows) for rows in cached)


def enumerate_supports(
    tower: FieldTower,
    target_rank: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[SupportList]:
    """All supports of the tower, deterministically ordered.

    Refuses with BudgetExceeded when the support count would pass the
    budget.  With target_rank, only supports of that rank are yielded
    (the full product is still walked).
    """
    total = count_supports(tower)
    if total > budget:
        raise BudgetExceeded(total, budget, "support enumeration")
    per_block = [block_subspaces(tower, i) for i in range(tower.num_blocks)]
    for combo in itertools.product(*per_block):
        support = SupportList(tower, tuple(combo))
        if target_rank is None or support.rank() == target_rank:
            yield support
