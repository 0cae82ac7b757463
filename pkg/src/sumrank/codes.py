"""F-linear codes over a tower and their support-space operations.

Codes are stored by canonical RREF generator matrices, so equality of
codes is equality of rows.  Restricting to a support L multiplies
generators by A^T, where A is the weight-one generator matrix of V_L; the
result lives in F^N, N = Rk(L), and carries the derived block structure
(N_1, ..., N_l) with the same subfields and bases.  Shortening first
intersects with V_L and then applies the paired map A' with A'A^T = I_N;
solving for A' row by row with free coordinates zero makes A' the
pivot-column selector of the canonical basis of L, so shortening is
column selection after the intersection.  With this pairing,
dual(restrict(C, L)) equals shorten(dual(C), L) exactly, code for code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernels
from .errors import BudgetExceeded, IdentityViolated, SingularMatrix, TowerMismatch
from .field import FieldTower, require_same_tower
from .lattice import DEFAULT_BUDGET, SupportList
from .metric import BlockVector, support_space_generators


@dataclass(frozen=True)
class LinearCode:
    """An F-linear code with canonical RREF generators."""

    tower: FieldTower
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, tower: FieldTower, rows: Sequence[Sequence[int]]) -> "LinearCode":
        """Canonicalize any spanning set of codewords."""
        for row in rows:
            if len(row) != tower.n:
                raise TowerMismatch(
                    f"generator length {len(row)} != tower length {tower.n}"
                )
            for v in row:
                if not 0 <= v < tower.field.q:
                    raise ValueError(f"{v} is not an element code")
        reduced, _ = kernels.rref_rows(tower.field, rows, tower.n)
        return cls(tower, reduced)

    @classmethod
    def zero(cls, tower: FieldTower) -> "LinearCode":
        return cls(tower, ())

    @classmethod
    def full(cls, tower: FieldTower) -> "LinearCode":
        rows = tuple(
            tuple(1 if c == r else 0 for c in range(tower.n)) for r in range(tower.n)
        )
        return cls(tower, rows)

    # -- basics -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def length(self) -> int:
        return self.tower.n

    def contains(self, vec: Sequence[int]) -> bool:
        return kernels.in_rowspace_rows(self.tower.field, self.rows, tuple(vec))

    def contains_code(self, other: "LinearCode") -> bool:
        require_same_tower(self.tower, other.tower, "codes")
        return all(self.contains(row) for row in other.rows)

    def generators(self) -> tuple[BlockVector, ...]:
        return tuple(BlockVector(self.tower, row) for row in self.rows)

    def codewords(self, budget: int = DEFAULT_BUDGET) -> Iterator[BlockVector]:
        """All q^k codewords, deterministic coefficient order."""
        field = self.tower.field
        count = field.q**self.dim
        if count > budget:
            raise BudgetExceeded(count, budget, "codeword enumeration")
        for coeffs in itertools.product(field.elements(), repeat=self.dim):
            word = [0] * self.tower.n
            for a, row in zip(coeffs, self.rows):
                if a:
                    for j, v in enumerate(row):
                        if v:
                            word[j] = field.add(word[j], field.mul(a, v))
            yield BlockVector(self.tower, tuple(word))

    def to_json(self) -> dict:
        return {
            "k": self.dim,
            "n": self.length,
            "blocks": list(self.tower.block_lengths()),
            "rows": [list(r) for r in self.rows],
        }

    # -- duality and isometries ---------------------------------------------

    def dual(self) -> "LinearCode":
        """All vectors orthogonal to the code, standard bilinear form."""
        rows = kernels.nullspace_rows(self.tower.field, self.rows, self.tower.n)
        return LinearCode(self.tower, rows)

    def change_of_bases(self, mats: Sequence[Sequence[Sequence[int]]]) -> "LinearCode":
        """Right-multiply by diag(B_1, ..., B_l)^T, B_i invertible over K_i.

        This is a sum-rank isometry of F^n onto itself.
        """
        tower = self.tower
        field = tower.field
        if len(mats) != tower.num_blocks:
            raise TowerMismatch("one matrix per block required")
        checked = []
        for i, (mat, b) in enumerate(zip(mats, tower.blocks)):
            mat = tuple(tuple(int(v) for v in row) for row in mat)
            if len(mat) != b.n or any(len(row) != b.n for row in mat):
                raise TowerMismatch(f"matrix {i} is not {b.n} x {b.n}")
            for row in mat:
                for v in row:
                    if not field.is_in_subfield(v, b.d):
                        raise SingularMatrix(
                            f"matrix {i} has entries outside GF({field.p}^{b.d})"
                        )
            if kernels.rank_rows(field, mat, b.n) != b.n:
                raise SingularMatrix(f"matrix {i} is singular")
            checked.append(mat)
        new_rows = []
        for row in self.rows:
            out = []
            for i, mat in enumerate(checked):
                seg = tower.block_slice(row, i)
                # (row . B^T) restricted to block i: entry j is <seg, B_i[j]>
                out.extend(
                    kernels.matmul_rows(field, [seg], _transpose(mat))[0]
                    if mat
                    else ()
                )
            new_rows.append(tuple(out))
        return LinearCode.from_rows(tower, new_rows)

    # -- support-space operations -------------------------------------------

    def pre_shorten(self, L: SupportList) -> "LinearCode":
        """C intersected with the support space V_L, still length n."""
        require_same_tower(self.tower, L.tower, "code and support")
        field = self.tower.field
        n = self.tower.n
        dual_c = kernels.nullspace_rows(field, self.rows, n)
        dual_v = kernels.nullspace_rows(field, support_space_generators(L), n)
        rows = kernels.nullspace_rows(field, dual_c + dual_v, n)
        return LinearCode(self.tower, rows)

    def restrict(self, L: SupportList) -> "LinearCode":
        """The image C_L = C A^T in F^N with the derived block profile."""
        require_same_tower(self.tower, L.tower, "code and support")
        a = support_space_generators(L)
        new_tower = self.tower.with_block_lengths(L.block_dims())
        if not self.rows:
            return LinearCode.zero(new_tower)
        product = kernels.matmul_rows(self.tower.field, self.rows, _transpose(a))
        return LinearCode.from_rows(new_tower, product)

    def shorten(self, L: SupportList) -> "LinearCode":
        """The shortened code C^L = (C n V_L) A'^T in F^N.

        A' is the deterministic pairing with A'A^T = I_N: the selector of
        the pivot columns of the canonical basis of each block of L.
        """
        require_same_tower(self.tower, L.tower, "code and support")
        inner = self.pre_shorten(L)
        selectors = _pivot_selectors(self.tower, L)
        new_tower = self.tower.with_block_lengths(L.block_dims())
        rows = [tuple(row[j] for j in selectors) for row in inner.rows]
        return LinearCode.from_rows(new_tower, rows)


def _pivot_selectors(tower: FieldTower, L: SupportList) -> list[int]:
    out = []
    for i, part in enumerate(L.parts):
        off = tower.offsets[i]
        out.extend(off + p for p in kernels.pivots_of(part.rows))
    return out


def pairing_matrix(tower: FieldTower, L: SupportList) -> tuple[tuple[int, ...], ...]:
    """A' with A'A^T = I_N, A = support_space_generators(L).

    Solving row by row with free coordinates zero lands on the selector of
    the pivot columns of L's canonical bases; shorten() applies exactly
    this matrix.
    """
    n = tower.n
    return tuple(
        tuple(1 if c == j else 0 for c in range(n))
        for j in _pivot_selectors(tower, L)
    )


def _transpose(rows):
    if not rows:
        return ()
    return tuple(tuple(r[c] for r in rows) for c in range(len(rows[0])))


@dataclass(frozen=True)
class DimensionIdentities:
    """The four equal expressions for dim(C_L), plus the bound checks."""

    restricted: int
    via_dual_preshorten: int
    via_dual_shorten: int
    via_own_shorten: int
    dim_bound_restrict: bool
    dim_bound_shorten: bool
    distance_bound_restrict: bool
    distance_bound_shorten: bool


def dimension_identities(
    code: LinearCode, L: SupportList, budget: int = DEFAULT_BUDGET
) -> DimensionIdentities:
    """Evaluate dim(C_L) four ways and the derived parameter bounds.

    Raises IdentityViolated if the expressions disagree; that would be a
    bug, not a property of the inputs.
    """
    from .weights import min_distance  # cycle-free at call time

    n = code.length
    rk = L.rank()
    dual = code.dual()
    restricted = code.restrict(L).dim
    via_dual_preshorten = rk - dual.pre_shorten(L).dim
    via_dual_shorten = rk - dual.shorten(L).dim
    via_own_shorten = code.dim - code.shorten(L.dual()).dim
    values = (restricted, via_dual_preshorten, via_dual_shorten, via_own_shorten)
    if len(set(values)) != 1:
        raise IdentityViolated(f"dimension expressions disagree: {values}")
    k = code.dim
    shortened = code.shorten(L)
    dim_bound_restrict = restricted >= k - (n - rk)
    dim_bound_shorten = shortened.dim >= k - (n - rk)
    d_code = min_distance(code, budget=budget)
    d_restricted = min_distance(code.restrict(L), budget=budget)
    d_shortened = min_distance(shortened, budget=budget)
    distance_bound_restrict = (
        d_restricted is None or d_code is None or d_restricted >= d_code - (n - rk)
    )
    distance_bound_shorten = (
        d_shortened is None or d_code is None or d_shortened >= d_code
    )
    return DimensionIdentities(
        restricted,
        via_dual_preshorten,
        via_dual_shorten,
        via_own_shorten,
        dim_bound_restrict,
        dim_bound_shorten,
        distance_bound_restrict,
        distance_bound_shorten,
    )
