"""Generalized sum-rank weights and what they decide.

The r-th relative weight of a nested pair C2 < C1 is the smallest rank of
a support L whose support space catches an r-dimensional gap:
dim(C1 n V_L) - dim(C2 n V_L) >= r.  The same number is the smallest
sum-rank weight of an r-dimensional subspace D <= C1 meeting C2 trivially;
both algorithms are implemented and cross-checked by the test suite.  The
dual profile K_mu is the largest dimension gap over supports of rank mu.

On top of the hierarchy sit Wei-type duality, the Singleton bound and the
MSRD rank (least r with d_r = n - k + r, equal to k - d(C-dual) + 2), the
effective length (rank of the code support), and the translation of
classical Hamming bounds into the sum-rank setting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .codes import LinearCode
from .errors import (
    BadIndex,
    BudgetExceeded,
    IdentityViolated,
    NotNested,
)
from .field import require_same_tower
from .lattice import (
    DEFAULT_BUDGET,
    SupportList,
    count_supports,
    enumerate_rref,
    enumerate_supports,
    gaussian_binomial,
)
from .metric import (
    BlockVector,
    _block_invertibles,
    subspace_support,
    support_space_generators,
    sum_rank_weight,
)


def _scan_cost(tower, extra: int = 1) -> int:
    return count_supports(tower) * max(1, tower.n) ** 2 * max(1, extra)


def _support_profile(c1: LinearCode, c2: LinearCode, budget: int):
    """Yield (rank, dimension gap) over every support of the tower."""
    field = c1.tower.field
    n = c1.tower.n
    k1, k2 = c1.dim, c2.dim
    cost = _scan_cost(c1.tower, k1 + 1)
    if cost > budget:
        raise BudgetExceeded(cost, budget, "support scan")
    for L in enumerate_supports(c1.tower, budget=budget):
        gens = support_space_generators(L)
        rk = len(gens)
        # dim(C n V_L) = dim C + Rk L - dim(C + V_L)
        d1 = k1 + rk - kernels.rank_rows(field, c1.rows + gens, n)
        d2 = k2 + rk - kernels.rank_rows(field, c2.rows + gens, n)
        yield rk, d1 - d2


def _check_nested(c1: LinearCode, c2: LinearCode | None) -> LinearCode:
    if c2 is None:
        c2 = LinearCode.zero(c1.tower)
    require_same_tower(c1.tower, c2.tower, "codes")
    if not c1.contains_code(c2):
        raise NotNested("the inner code is not contained in the outer code")
    return c2


def generalized_weight(
    c1: LinearCode,
    c2: LinearCode | None = None,
    r: int = 1,
    algorithm: str = "support_scan",
    budget: int = DEFAULT_BUDGET,
) -> int:
    """The r-th relative generalized sum-rank weight of C2 < C1."""
    c2 = _check_nested(c1, c2)
    kk = c1.dim - c2.dim
    if not 1 <= r <= kk:
        raise BadIndex(f"r = {r} outside 1..{kk}")
    if algorithm == "support_scan":
        best = None
        for rk, gap in _support_profile(c1, c2, budget):
            if gap >= r and (best is None or rk < best):
                best = rk
        return best
    if algorithm == "subspace_scan":
        return _subspace_scan(c1, c2, r, budget)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _subspace_scan(c1: LinearCode, c2: LinearCode, r: int, budget: int) -> int:
    """min wt_SR(D) over r-dim D <= C1 with D n C2 = 0."""
    field = c1.tower.field
    n = c1.tower.n
    k1, k2 = c1.dim, c2.dim
    count = gaussian_binomial(k1, r, field.q)
    cost = count * max(1, n) ** 2 * (r + k2 + 1)
    if cost > budget:
        raise BudgetExceeded(cost, budget, "subspace scan")
    best = None
    for coeff in enumerate_rref(k1, r, tuple(field.elements())):
        rows = kernels.matmul_rows(field, coeff, c1.rows)
        # D n C2 = 0 exactly when the stacked rank is r + dim C2
        if kernels.rank_rows(field, rows + c2.rows, n) != r + k2:
            continue
        vectors = [BlockVector(c1.tower, row) for row in rows]
        wt = subspace_support(vectors).rank()
        if best is None or wt < best:
            best = wt
    if best is None:
        raise BadIndex(f"no {r}-dimensional subspace avoids the inner code")
    return best


def K_profile(
    c1: LinearCode,
    c2: LinearCode | None = None,
    mu: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Largest dimension gap caught by a support of rank mu."""
    c2 = _check_nested(c1, c2)
    if not 0 <= mu <= c1.tower.n:
        raise BadIndex(f"mu = {mu} outside 0..{c1.tower.n}")
    best = 0
    for rk, gap in _support_profile(c1, c2, budget):
        if rk == mu and gap > best:
            best = gap
    return best


def weight_hierarchy(
    c1: LinearCode, c2: LinearCode | None = None, budget: int = DEFAULT_BUDGET
) -> tuple[int, ...]:
    """(d_1, ..., d_k) for the pair, one support scan total."""
    c2 = _check_nested(c1, c2)
    kk = c1.dim - c2.dim
    if kk == 0:
        return ()
    best = [None] * (kk + 1)
    for rk, gap in _support_profile(c1, c2, budget):
        for r in range(1, min(gap, kk) + 1):
            if best[r] is None or rk < best[r]:
                best[r] = rk
    return tuple(best[1:])


def full_K_profile(
    c1: LinearCode, c2: LinearCode | None = None, budget: int = DEFAULT_BUDGET
) -> tuple[int, ...]:
    """(K_0, ..., K_n) for the pair, one support scan total."""
    c2 = _check_nested(c1, c2)
    out = [0] * (c1.tower.n + 1)
    for rk, gap in _support_profile(c1, c2, budget):
        if gap > out[rk]:
            out[rk] = gap
    return tuple(out)


def min_distance(code: LinearCode, budget: int = DEFAULT_BUDGET) -> int | None:
    """Minimum sum-rank weight; None for the zero code.

    Exhausts codewords when q^k fits the budget, otherwise falls back to
    the rank-over-supports search.
    """
    if code.dim == 0:
        return None
    if code.tower.field.q**code.dim <= budget:
        best = None
        for word in code.codewords(budget=budget):
            if word.is_zero():
                continue
            wt = sum_rank_weight(word)
            if best is None or wt < best:
                best = wt
                if best == 1:
                    break
        return best
    return generalized_weight(code, None, 1, "support_scan", budget)


# ---------------------------------------------------------------------------
# duality, bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeiDuality:
    """Outcome of the duality partition check on one code."""

    ok: bool
    weights: tuple[int, ...]
    dual_complement: tuple[int, ...]


def wei_duality_check(code: LinearCode, budget: int = DEFAULT_BUDGET) -> WeiDuality:
    """Whether {d_r(C)} and {n+1-d_s(C-dual)} partition 1..n."""
    n = code.length
    primal = weight_hierarchy(code, budget=budget)
    dual = weight_hierarchy(code.dual(), budget=budget)
    complement = tuple(sorted(n + 1 - d for d in dual))
    ok = sorted(primal + complement) == list(range(1, n + 1))
    return WeiDuality(ok, primal, complement)


@dataclass(frozen=True)
class BoundCheck:
    bound: str
    r: int
    s: int
    holds: bool
    slack: int


def check_bounds(report: "WeightReport", q: int) -> list[BoundCheck]:
    """Evaluate the transferred Hamming bounds on every index pair r < s.

    Monotonicity, its q-refined form, the generalized Griesmer bound and
    the floor bound (the latter only for s < k, where its denominator is
    nonzero).  All must hold for genuine hierarchies; q is |F|.
    """
    d = report.d
    k = report.k
    n = report.n
    out = []
    for r in range(1, k + 1):
        for s in range(r + 1, k + 1):
            slack = d[s - 1] - d[r - 1] - (s - r)
            out.append(BoundCheck("monotonicity", r, s, slack >= 0, slack))
            lhs = (q**s - q ** (s - r)) * d[s - 1]
            rhs = (q**s - 1) * d[r - 1]
            out.append(BoundCheck("refined_monotonicity", r, s, lhs >= rhs, lhs - rhs))
            griesmer = d[r - 1] + sum(
                -(-(q - 1) * d[r - 1] // ((q**r - 1) * q**i))
                for i in range(1, s - r + 1)
            )
            out.append(
                BoundCheck("griesmer", r, s, d[s - 1] >= griesmer, d[s - 1] - griesmer)
            )
            if s < k:
                floor_rhs = n - ((q ** (k - r) - 1) * (n - d[s - 1])) // (
                    q ** (k - s) - 1
                )
                out.append(
                    BoundCheck(
                        "floor", r, s, d[r - 1] >= floor_rhs, d[r - 1] - floor_rhs
                    )
                )
    return out


# ---------------------------------------------------------------------------
# MSRD rank and support characterization
# ---------------------------------------------------------------------------


def _dual_min_distance_marker(code: LinearCode, budget: int) -> int:
    # n + 1 stands in for the minimum distance of a zero dual (k = n);
    # it is the unique value keeping the dual rank formula consistent.
    dual = code.dual()
    if dual.dim == 0:
        return code.length + 1
    return min_distance(dual, budget=budget)


def msrd_rank(code: LinearCode, budget: int = DEFAULT_BUDGET) -> int | None:
    """Least r with d_r = n - k + r, cross-checked against the dual form.

    Degenerate codes have no such r and get None, never a sentinel.
    """
    k = code.dim
    if k == 0:
        return None
    n = code.length
    d = weight_hierarchy(code, budget=budget)
    scan = next((r for r in range(1, k + 1) if d[r - 1] == n - k + r), None)
    formula = k - _dual_min_distance_marker(code, budget) + 2
    if not 1 <= formula <= k:
        formula = None
    if scan != formula:
        raise IdentityViolated(f"MSRD rank disagreement: scan {scan}, dual formula {formula}")
    return scan


def is_msrd(code: LinearCode, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether d = n - k + 1, the sum-rank Singleton equality."""
    if code.dim == 0:
        return False
    return min_distance(code, budget=budget) == code.length - code.dim + 1


def msrd_support_characterization(
    code: LinearCode, r: int, budget: int = DEFAULT_BUDGET
) -> bool:
    """Check the four equivalent forms of dual Singleton attainment at r.

    Returns their common truth value and raises IdentityViolated if the
    forms disagree (they cannot, short of a bug).  For r beyond the dual
    dimension the dual-weight form is vacuously attained.
    """
    k = code.dim
    n = code.length
    if not 1 <= r <= k:
        raise BadIndex(f"r = {r} outside 1..{k}")
    dual = code.dual()
    if r <= dual.dim:
        cond_dual_weight = generalized_weight(dual, None, r, budget=budget) == k + r
    else:
        cond_dual_weight = True
    d = min_distance(code, budget=budget)
    cond_distance = d > n - k - r + 1
    cond_small, cond_large = True, True
    threshold_small = n - k - r + 1
    threshold_large = k + r - 1
    for L in enumerate_supports(code.tower, budget=budget):
        rk = L.rank()
        if rk <= threshold_small and code.pre_shorten(L).dim != 0:
            cond_small = False
        if rk >= threshold_large and code.pre_shorten(L.dual()).dim != 0:
            cond_large = False
    values = {cond_dual_weight, cond_distance, cond_small, cond_large}
    if len(values) != 1:
        raise IdentityViolated(
            "support characterization forms disagree: "
            f"{(cond_dual_weight, cond_distance, cond_small, cond_large)}"
        )
    return cond_dual_weight


# ---------------------------------------------------------------------------
# effective length
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EffectiveLength:
    """Effective length with its witnesses and degeneracy data."""

    n_effective: int
    degenerate: bool
    support: SupportList
    dual_min_distance: int | None
    projection_dims: tuple[int, ...]
    sufficient_condition_fires: bool


def effective_length(code: LinearCode, budget: int = DEFAULT_BUDGET) -> EffectiveLength:
    """Rank of the code support, cross-checked three ways.

    Computes Rk(Supp(C)), the top weight d_k, and the dual-hierarchy form
    n - max{r : d_r(C-dual) = r}; asserts they agree.  A code is sum-rank
    degenerate exactly when the effective length falls below n, exactly
    when the dual has minimum distance 1.
    """
    tower = code.tower
    n = code.length
    k = code.dim
    if k == 0:
        support = SupportList.zero(tower)
        n1 = n2 = 0
    else:
        support = subspace_support(code.generators())
        n1 = support.rank()
        n2 = weight_hierarchy(code, budget=budget)[-1]
    dual = code.dual()
    dual_d = weight_hierarchy(dual, budget=budget)
    top = max((r for r in range(1, dual.dim + 1) if dual_d[r - 1] == r), default=0)
    n3 = n - top
    if not n1 == n2 == n3:
        raise IdentityViolated(f"effective length disagreement: {(n1, n2, n3)}")
    degenerate = n1 < n
    dual_min = dual_d[0] if dual_d else None
    if degenerate != (dual_min == 1):
        raise IdentityViolated("degeneracy and dual minimum distance disagree")
    field = tower.field
    projection_dims = []
    for i, b in enumerate(tower.blocks):
        cols = [tower.block_slice(row, i) for row in code.rows]
        projection_dims.append(kernels.rank_rows(field, cols, b.n))
    fires = (
        sum(
            kd * (field.m // b.d)
            for kd, b in zip(projection_dims, tower.blocks)
        )
        < n
    )
    if fires and not degenerate:
        raise IdentityViolated("sufficient degeneracy condition fired on a full-support code")
    return EffectiveLength(
        n1, degenerate, support, dual_min, tuple(projection_dims), fires
    )


# ---------------------------------------------------------------------------
# refined partitions
# ---------------------------------------------------------------------------


def refined_partition_weight(
    c1: LinearCode,
    c2: LinearCode | None,
    partition: Sequence[Sequence[int]],
    r: int,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """min over blockwise base changes of the refined-metric weight.

    Splitting each block into consecutive pieces refines the metric; the
    minimum of the refined r-th weight of C.A over all blockwise
    invertible A recovers the coarse r-th weight.
    """
    c2 = _check_nested(c1, c2)
    tower = c1.tower
    field = tower.field
    refined = tower.refine(partition)
    matrices_cost = 1
    for b in tower.blocks:
        matrices_cost *= (field.p**b.d) ** (b.n * b.n)
    cost = matrices_cost * _scan_cost(refined, c1.dim + 1)
    if cost > budget:
        raise BudgetExceeded(cost, budget, "base-change scan")
    per_block = [_block_invertibles(tower, i) for i in range(tower.num_blocks)]
    best = None
    for blocks_choice in itertools.product(*per_block):
        moved1 = _apply_blockwise(field, tower, c1.rows, blocks_choice)
        moved2 = _apply_blockwise(field, tower, c2.rows, blocks_choice)
        g1 = LinearCode.from_rows(refined, moved1)
        g2 = LinearCode.from_rows(refined, moved2)
        val = generalized_weight(g1, g2, r, "support_scan", budget)
        if best is None or val < best:
            best = val
    return best


def _apply_blockwise(field, tower, rows, blocks_choice):
    out = []
    for row in rows:
        moved = []
        for i, a_i in enumerate(blocks_choice):
            seg = tower.block_slice(row, i)
            if tower.blocks[i].n:
                moved.extend(kernels.matmul_rows(field, [seg], a_i)[0])
        out.append(tuple(moved))
    return out


# ---------------------------------------------------------------------------
# the assembled report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightReport:
    """Hierarchy, profile and extremal data for one code.

    Construction validates the structural laws: strict monotonicity and
    the Singleton bound for d, unit steps and endpoints for the profile,
    and the mutual reconstruction between the two.
    """

    k: int
    n: int
    d: tuple[int, ...]
    k_profile: tuple[int, ...]
    msrd_rank: int | None
    effective_length: int
    degenerate: bool

    def __post_init__(self):
        if len(self.d) != self.k or len(self.k_profile) != self.n + 1:
            raise IdentityViolated("report shape mismatch")
        for r in range(1, self.k):
            if self.d[r] <= self.d[r - 1]:
                raise IdentityViolated("weights must strictly increase")
        for r in range(1, self.k + 1):
            if self.d[r - 1] > self.n - self.k + r:
                raise IdentityViolated("Singleton bound violated")
        if self.k_profile and (self.k_profile[0] != 0 or self.k_profile[-1] != self.k):
            raise IdentityViolated("profile endpoints are pinned to 0 and k")
        for mu in range(1, self.n + 1):
            if self.k_profile[mu] - self.k_profile[mu - 1] not in (0, 1):
                raise IdentityViolated("profile steps must be 0 or 1")
        for mu in range(self.n + 1):
            expect = max(
                (r for r in range(1, self.k + 1) if self.d[r - 1] <= mu), default=0
            )
            if self.k_profile[mu] != expect:
                raise IdentityViolated("profile does not match the hierarchy")
        for r in range(1, self.k + 1):
            expect = min(mu for mu in range(self.n + 1) if self.k_profile[mu] == r)
            if self.d[r - 1] != expect:
                raise IdentityViolated("hierarchy does not match the profile")


def weight_report(code: LinearCode, budget: int = DEFAULT_BUDGET) -> WeightReport:
    """Assemble the full report for one code against the zero code."""
    d = weight_hierarchy(code, budget=budget)
    profile = full_K_profile(code, budget=budget)
    eff = effective_length(code, budget=budget)
    return WeightReport(
        code.dim,
        code.length,
        d,
        profile,
        msrd_rank(code, budget=budget),
        eff.n_effective,
        eff.degenerate,
    )
