"""Skew polynomials with a Frobenius twist and no derivation.

Multiplication follows x a = sigma(a) x with sigma(a) = a^(p^t); remainder
evaluation uses the norm recursion N_0(a) = 1, N_{i+1}(a) = sigma(N_i(a)) a,
F(a) = sum F_i N_i(a), which equals the remainder of right division by
x - a.  Conjugacy a^beta = sigma(beta) beta^{-1} a partitions the field,
and a P-independent set decomposes into conjugacy classes whose betas are
independent over the centralizer subfields.  That decomposition induces a
field tower, and evaluating at the P-basis points gives the isometry
between vectors under the sum-rank weight and function tables under the
skew weight n - Rk(Z_Omega(F)).

Everything here is exhaustive-scan based: conjugacy, centralizers and zero
sets walk the whole field, guarded by the table limit.  Fine at desk
scale, and there is no algorithmic literature to borrow from for the
general case anyway.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .codes import LinearCode
from .errors import (
    BadDimension,
    BudgetExceeded,
    DivisionByZero,
    IdentityViolated,
    NotAPBasis,
    NotPIndependent,
    SingularMatrix,
    StructureMismatch,
    ZeroBeta,
)
from .field import TABLE_LIMIT, FieldTower, FiniteField
from .metric import BlockVector, NotASupportSpace, support_space_of


def _sigma(field: FiniteField, t: int, a: int) -> int:
    return field.frobenius(a, t)


@dataclass(frozen=True)
class SkewPoly:
    """Coefficients lowest degree first, trailing zeros trimmed."""

    field: FiniteField
    sigma_power: int
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, field: FiniteField, sigma_power: int, coeffs: Sequence[int]) -> "SkewPoly":
        cs = list(coeffs)
        for c in cs:
            if not 0 <= c < field.q:
                raise StructureMismatch(f"coefficient {c} outside the field")
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(field, sigma_power % field.m if field.m > 1 else 0, tuple(cs))

    @classmethod
    def zero(cls, field: FiniteField, sigma_power: int) -> "SkewPoly":
        return cls.make(field, sigma_power, ())

    @classmethod
    def one(cls, field: FiniteField, sigma_power: int) -> "SkewPoly":
        return cls.make(field, sigma_power, (1,))

    @classmethod
    def x(cls, field: FiniteField, sigma_power: int) -> "SkewPoly":
        return cls.make(field, sigma_power, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check_compatible(self, other: "SkewPoly") -> None:
        if self.field != other.field or self.sigma_power != other.sigma_power:
            raise StructureMismatch("mixed fields or twists")

    def add(self, other: "SkewPoly") -> "SkewPoly":
        self._check_compatible(other)
        f = self.field
        width = max(len(self.coeffs), len(other.coeffs))
        out = [0] * width
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(other.coeffs):
            out[i] = f.add(out[i], c)
        return SkewPoly.make(f, self.sigma_power, out)

    def sub(self, other: "SkewPoly") -> "SkewPoly":
        self._check_compatible(other)
        f = self.field
        width = max(len(self.coeffs), len(other.coeffs))
        out = [0] * width
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(other.coeffs):
            out[i] = f.sub(out[i], c)
        return SkewPoly.make(f, self.sigma_power, out)

    def scale(self, c: int) -> "SkewPoly":
        f = self.field
        return SkewPoly.make(f, self.sigma_power, [f.mul(c, a) for a in self.coeffs])

    def skew_mul(self, other: "SkewPoly") -> "SkewPoly":
        """Product under x a = sigma(a) x."""
        self._check_compatible(other)
        f, t = self.field, self.sigma_power
        if self.is_zero() or other.is_zero():
            return SkewPoly.zero(f, t)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                # x^i b = sigma^i(b) x^i
                out[i + j] = f.add(out[i + j], f.mul(a, _sigma(f, i * t, b)))
        return SkewPoly.make(f, t, out)

    def evaluate(self, a: int) -> int:
        f, t = self.field, self.sigma_power
        acc = 0
        norm = 1
        for i, c in enumerate(self.coeffs):
            if i:
                norm = f.mul(_sigma(f, t, norm), a)
            if c:
                acc = f.add(acc, f.mul(c, norm))
        return acc

    def right_divide(self, other: "SkewPoly") -> tuple["SkewPoly", "SkewPoly"]:
        """Q, R with self = Q * other + R and deg R < deg other."""
        self._check_compatible(other)
        f, t = self.field, self.sigma_power
        if other.is_zero():
            raise DivisionByZero("right division by the zero polynomial")
        rem = list(self.coeffs)
        dg = other.degree
        glead = other.coeffs[-1]
        quot = [0] * max(len(rem) - dg, 0)
        while len(rem) > dg and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) <= dg:
                break
            shift = len(rem) - 1 - dg
            c = f.div(rem[-1], _sigma(f, shift * t, glead))
            quot[shift] = c
            # subtract (c x^shift) * other
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[shift + j] = f.sub(rem[shift + j], f.mul(c, _sigma(f, shift * t, b)))
            rem.pop()
        return (
            SkewPoly.make(f, t, quot),
            SkewPoly.make(f, t, rem),
        )

    def to_json(self) -> dict:
        return {"sigma_power": self.sigma_power, "coeffs": list(self.coeffs)}


def conjugate(field: FiniteField, sigma_power: int, a: int, beta: int) -> int:
    """a^beta = sigma(beta) beta^{-1} a."""
    if beta == 0:
        raise ZeroBeta("conjugation needs a nonzero beta")
    return field.mul(field.mul(_sigma(field, sigma_power, beta), field.inv(beta)), a)


def centralizer_degree(field: FiniteField, sigma_power: int, a: int) -> int:
    """Degree over the prime field of {beta : a^beta = a} plus zero.

    Exhaustive unit scan, then a check that the fixed set really is one
    of the subfields.
    """
    if field.q > TABLE_LIMIT:
        raise BudgetExceeded(field.q, TABLE_LIMIT, "centralizer scan")
    if a == 0:
        return field.m
    fixed = [0] + [b for b in field.units() if conjugate(field, sigma_power, a, b) == a]
    size = len(fixed)
    d = 0
    while field.p**d < size:
        d += 1
    if field.p**d != size or field.m % d != 0:
        raise IdentityViolated(f"centralizer of {a} has non-subfield size {size}")
    if tuple(sorted(fixed)) != tuple(field.subfield_elements(d)):
        raise IdentityViolated(f"centralizer of {a} is not the degree-{d} subfield")
    return d


@dataclass(frozen=True)
class PClosedSet:
    """A P-closed set held as its minimal skew polynomial plus witnesses.

    The witnesses are P-independent points whose closure is the set; the
    rank equals the polynomial degree equals the witness count.
    """

    minimal_poly: SkewPoly
    points: tuple[int, ...]

    def __post_init__(self):
        if not self.minimal_poly.is_monic():
            raise IdentityViolated("minimal skew polynomial must be monic")
        if self.minimal_poly.degree != len(self.points):
            raise IdentityViolated("rank and witness count disagree")
        for a in self.points:
            if self.minimal_poly.evaluate(a) != 0:
                raise IdentityViolated("witness point is not annihilated")

    @property
    def rank(self) -> int:
        return self.minimal_poly.degree

    def contains(self, a: int) -> bool:
        return self.minimal_poly.evaluate(a) == 0

    def elements(self) -> list[int]:
        field = self.minimal_poly.field
        if field.q > TABLE_LIMIT:
            raise BudgetExceeded(field.q, TABLE_LIMIT, "closure scan")
        return [a for a in field.elements() if self.contains(a)]


def minimal_skew_poly(
    field: FiniteField, sigma_power: int, points: Sequence[int]
) -> PClosedSet:
    """Monic annihilator of the points, built one linear factor at a time.

    A point already annihilated leaves the polynomial alone; the others
    are the P-independent witnesses.  The result is order-independent.
    """
    poly = SkewPoly.one(field, sigma_power)
    witnesses = []
    for a in points:
        v = poly.evaluate(a)
        if v == 0:
            continue
        factor = SkewPoly.make(
            field,
            sigma_power,
            (field.neg(conjugate(field, sigma_power, a, v)), 1),
        )
        poly = factor.skew_mul(poly)
        witnesses.append(a)
    return PClosedSet(poly, tuple(witnesses))


# ---------------------------------------------------------------------------
# conjugacy decomposition and the isometry
# ---------------------------------------------------------------------------


def _subfield_span_contains(field: FiniteField, d: int, basis: Sequence[int], x: int) -> bool:
    span = {0}
    scalars = field.subfield_elements(d)
    for b in basis:
        span = {field.add(s, field.mul(lam, b)) for s in span for lam in scalars}
    return x in span


@dataclass(frozen=True)
class ConjugacyDecomposition:
    """Pairwise non-conjugate representatives with their beta lists.

    Class i contributes the points rep_i^beta for each beta; the betas are
    independent over the centralizer subfield of rep_i.  The blocks of the
    induced tower are (len(betas_i), centralizer degree).
    """

    field: FiniteField
    sigma_power: int
    reps: tuple[int, ...]
    betas: tuple[tuple[int, ...], ...]
    centralizer_degrees: tuple[int, ...]

    def __post_init__(self):
        f, t = self.field, self.sigma_power
        if not len(self.reps) == len(self.betas) == len(self.centralizer_degrees):
            raise StructureMismatch("ragged decomposition")
        for i, rep in enumerate(self.reps):
            if centralizer_degree(f, t, rep) != self.centralizer_degrees[i]:
                raise IdentityViolated("stored centralizer degree is wrong")
            if not self.betas[i]:
                raise StructureMismatch("empty conjugacy class")
            for j, rep2 in enumerate(self.reps):
                if j < i and _are_conjugate(f, t, rep, rep2):
                    raise IdentityViolated("representatives are conjugate")
        points = self.pbasis()
        closure = minimal_skew_poly(f, t, points)
        if closure.rank != len(points):
            raise NotPIndependent("the induced points are P-dependent")

    @property
    def n(self) -> int:
        return sum(len(bs) for bs in self.betas)

    def pbasis(self) -> tuple[int, ...]:
        f, t = self.field, self.sigma_power
        out = []
        for rep, bs in zip(self.reps, self.betas):
            out.extend(conjugate(f, t, rep, b) for b in bs)
        return tuple(out)

    def closure(self) -> PClosedSet:
        return minimal_skew_poly(self.field, self.sigma_power, self.pbasis())

    def make_tower(self) -> FieldTower:
        blocks = [
            (len(bs), d) for bs, d in zip(self.betas, self.centralizer_degrees)
        ]
        return FieldTower(self.field, blocks)


def _are_conjugate(field: FiniteField, t: int, a: int, b: int) -> bool:
    if a == 0 or b == 0:
        return a == b
    return any(conjugate(field, t, a, beta) == b for beta in field.units())


def p_basis_decompose(
    field: FiniteField, sigma_power: int, points: Sequence[int]
) -> ConjugacyDecomposition:
    """Group a P-independent set by conjugacy.

    The class representative is the smallest element code present in the
    class; each beta is the smallest unit moving the representative onto
    its class member.  Betas are checked independent over the centralizer.
    """
    f = field
    t = sigma_power % field.m if field.m > 1 else 0
    if f.q > TABLE_LIMIT:
        raise BudgetExceeded(f.q, TABLE_LIMIT, "conjugacy scan")
    if minimal_skew_poly(f, t, points).rank != len(points):
        raise NotPIndependent("input points are P-dependent")
    classes: list[list[int]] = []
    for a in points:
        for cls in classes:
            if _are_conjugate(f, t, cls[0], a):
                cls.append(a)
                break
        else:
            classes.append([a])
    reps, betas, degrees = [], [], []
    for cls in classes:
        rep = min(cls)
        d = centralizer_degree(f, t, rep)
        bs = []
        for member in cls:
            if rep == 0:
                bs.append(1)
                continue
            beta = next(
                b for b in f.units() if conjugate(f, t, rep, b) == member
            )
            bs.append(beta)
        for j in range(len(bs)):
            if _subfield_span_contains(f, d, bs[:j], bs[j]):
                raise IdentityViolated("betas are dependent over the centralizer")
        reps.append(rep)
        betas.append(tuple(bs))
        degrees.append(d)
    return ConjugacyDecomposition(f, t, tuple(reps), tuple(betas), tuple(degrees))


@dataclass(frozen=True)
class FunctionTable:
    """A function on the P-basis points, stored in block order."""

    decomp: ConjugacyDecomposition
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.decomp.n:
            raise StructureMismatch("value count does not match the P-basis")

    def points(self) -> tuple[int, ...]:
        return self.decomp.pbasis()

    def items(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.points(), self.values))

    def is_zero(self) -> bool:
        return not any(self.values)


def _check_structure(c: BlockVector, decomp: ConjugacyDecomposition) -> None:
    shape = tuple((b.n, b.d) for b in c.tower.blocks)
    want = tuple(
        (len(bs), d) for bs, d in zip(decomp.betas, decomp.centralizer_degrees)
    )
    if c.tower.field != decomp.field or shape != want:
        raise StructureMismatch("vector blocks do not match the decomposition")


def phi_B(c: BlockVector, decomp: ConjugacyDecomposition) -> FunctionTable:
    """The isometry: f(rep^beta_j) = c_j beta_j^{-1}, blockwise."""
    _check_structure(c, decomp)
    f = decomp.field
    values = []
    pos = 0
    for bs in decomp.betas:
        for beta in bs:
            values.append(f.mul(c.codes[pos], f.inv(beta)))
            pos += 1
    return FunctionTable(decomp, tuple(values))


def phi_B_inverse(table: FunctionTable, tower: FieldTower | None = None) -> BlockVector:
    """Pull a function table back to a vector: c_j = f(point_j) beta_j."""
    decomp = table.decomp
    f = decomp.field
    if tower is None:
        tower = decomp.make_tower()
    codes = []
    pos = 0
    for bs in decomp.betas:
        for beta in bs:
            codes.append(f.mul(table.values[pos], beta))
            pos += 1
    return BlockVector(tower, tuple(codes))


# ---------------------------------------------------------------------------
# skew weights, supports, support spaces
# ---------------------------------------------------------------------------


def _check_pbasis_of(table: FunctionTable, omega: PClosedSet) -> None:
    points = table.points()
    if minimal_skew_poly(
        omega.minimal_poly.field, omega.minimal_poly.sigma_power, points
    ).rank != len(points):
        raise NotAPBasis("table points are P-dependent")
    if len(points) != omega.rank or not all(omega.contains(a) for a in points):
        raise NotAPBasis("table points are not a P-basis of the closed set")


def interpolate(
    field: FiniteField, sigma_power: int, points: Sequence[int], values: Sequence[int]
) -> SkewPoly:
    """The unique skew polynomial of degree < len(points) through the data."""
    n = len(points)
    if len(values) != n:
        raise StructureMismatch("point and value counts differ")
    rows = []
    for a in points:
        norms = [1]
        for _ in range(n - 1):
            norms.append(field.mul(_sigma(field, sigma_power, norms[-1]), a))
        rows.append(tuple(norms))
    sol = kernels.solve_rows(field, rows, tuple(values))
    if sol is None:
        raise SingularMatrix("points do not determine an interpolant")
    return SkewPoly.make(field, sigma_power, sol)


def skew_weight(table: FunctionTable, omega: PClosedSet) -> int:
    """n minus the rank of the zero set of the interpolant inside omega."""
    _check_pbasis_of(table, omega)
    field = omega.minimal_poly.field
    t = omega.minimal_poly.sigma_power
    poly = interpolate(field, t, table.points(), table.values)
    zeros = [a for a in omega.elements() if poly.evaluate(a) == 0]
    return omega.rank - minimal_skew_poly(field, t, zeros).rank


def skew_support(table: FunctionTable, omega: PClosedSet | None = None) -> PClosedSet:
    """Closure of {rep^gamma} over a centralizer basis of the gamma span.

    gamma_h collects row h of the representation matrix of the pulled-back
    vector against the betas of its class.
    """
    decomp = table.decomp
    f, t = decomp.field, decomp.sigma_power
    if omega is not None:
        _check_pbasis_of(table, omega)
    tower = decomp.make_tower()
    c = phi_B_inverse(table, tower)
    points = []
    for i, (rep, bs) in enumerate(zip(decomp.reps, decomp.betas)):
        seg = tower.block_slice(c.codes, i)
        rows = tower.matrix_representation(seg, i)
        gammas = []
        for row in rows:
            g = 0
            for cj, beta in zip(row, bs):
                g = f.add(g, f.mul(cj, beta))
            gammas.append(g)
        basis = []
        for g in gammas:
            if g and not _subfield_span_contains(
                f, decomp.centralizer_degrees[i], basis, g
            ):
                basis.append(g)
        points.extend(conjugate(f, t, rep, g) for g in basis)
    return minimal_skew_poly(f, t, points)


def skew_support_space_check(
    tables: Sequence[FunctionTable],
    omega: PClosedSet,
    trials: int = 8,
    seed: int = 0,
):
    """Decide whether the span of the tables is a skew support space.

    Pulls the span back through the isometry and asks the sum-rank side;
    a positive answer is spot-checked for left-ideal closure, multiplying
    interpolants by a few seeded polynomials and reducing right by the
    minimal polynomial of the ambient closed set.
    """
    if not tables:
        raise StructureMismatch("empty spanning set")
    decomp = tables[0].decomp
    for tb in tables:
        if tb.decomp != decomp:
            raise StructureMismatch("tables over different decompositions")
        _check_pbasis_of(tb, omega)
    f, t = decomp.field, decomp.sigma_power
    tower = decomp.make_tower()
    vectors = [phi_B_inverse(tb, tower) for tb in tables]
    verdict = support_space_of(vectors)
    if isinstance(verdict, NotASupportSpace):
        return verdict
    span_rows, _ = kernels.rref_rows(f, [tb.values for tb in tables], decomp.n)
    basis_tables = [FunctionTable(decomp, row) for row in span_rows]
    support_points = []
    for tb in basis_tables:
        support_points.extend(skew_support(tb).points)
    closure = minimal_skew_poly(f, t, support_points)
    rng = random.Random(seed)
    points = decomp.pbasis()
    for _ in range(trials):
        if not basis_tables:
            break
        tb = rng.choice(basis_tables)
        poly = interpolate(f, t, points, tb.values)
        g = SkewPoly.make(
            f, t, [rng.randrange(f.q) for _ in range(rng.randrange(1, decomp.n + 2))]
        )
        product = g.skew_mul(poly)
        _, rem = product.right_divide(omega.minimal_poly)
        vals = tuple(rem.evaluate(a) for a in points)
        if any(vals) and not kernels.in_rowspace_rows(f, span_rows, vals):
            raise IdentityViolated("support space span is not left-ideal closed")
    return closure


def skew_evaluation_code(decomp: ConjugacyDecomposition, k: int) -> LinearCode:
    """Pull back the span of the monomial tables of degree below k.

    One class gives a Gabidulin-type code, several give the linearized
    Reed-Solomon shape; small instances are verified MSRD by the tests.
    """
    n = decomp.n
    if not 1 <= k <= n:
        raise BadDimension(f"k = {k} outside 1..{n}")
    f, t = decomp.field, decomp.sigma_power
    tower = decomp.make_tower()
    points = decomp.pbasis()
    rows = []
    for i in range(k):
        mono = SkewPoly.make(f, t, [0] * i + [1])
        table = FunctionTable(decomp, tuple(mono.evaluate(a) for a in points))
        rows.append(phi_B_inverse(table, tower).codes)
    code = LinearCode.from_rows(tower, rows)
    if code.dim != k:
        raise IdentityViolated("monomial tables pulled back to a dependent set")
    return code
