"""Finite fields GF(p^m) and subfield-blocked coordinate towers.

Field elements are plain integers in [0, p^m).  The base-p digits of the
code are the coefficients of the element in the polynomial basis
{1, x, ..., x^(m-1)} modulo a user-supplied irreducible polynomial, lowest
degree first, so for GF(4) with modulus x^2 + x + 1 the codes 0, 1, 2, 3
are 0, 1, x, x + 1.  The modulus is normalized to be monic and checked
irreducible by trial division up to degree m/2 at construction.

A tower fixes the extension F = GF(p^m) together with a block profile:
block i has length n_i >= 0 and subfield K_i = GF(p^(d_i)) with d_i | m,
plus an ordered basis A_i of F over K_i (m_i = m/d_i elements).  The tower
writes length-n_i vectors over F as m_i x n_i matrices over K_i, column j
holding the K_i-coordinates of entry j; that matrix representation is what
the sum-rank machinery ranks block by block.  When no basis is supplied
the default is the first m_i powers of the field generator that stay
K_i-independent, collected greedily in power order.

Fields small enough get exp/log tables (and, smaller still, a full
addition table enabling the flat kernels in :mod:`sumrank.kernels`); all
operations also work without tables through exact polynomial arithmetic.
"""

from __future__ import annotations

from array import array
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DivisionByZero, SingularMatrix, TowerMismatch

TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 1 << 10
FIELD_LIMIT = 1 << 31


class _Tables:
    """Arithmetic tables consumed by the flat kernels."""

    __slots__ = ("q", "exp", "log", "add", "neg")

    def __init__(self, q, exp, log, add, neg):
        self.q = q
        self.exp = exp
        self.log = log
        self.add = add
        self.neg = neg


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on digit lists, lowest degree first
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    # den must be monic
    a = list(a)
    dd = len(den) - 1
    for i in range(len(a) - 1, dd - 1, -1):
        f = a[i]
        if f:
            a[i] = 0
            for j in range(dd):
                a[i - dd + j] = (a[i - dd + j] - f * den[j]) % p
    return _poly_trim(a)


class FiniteField:
    """Arithmetic in GF(p^m) on integer element codes.

    Parameters
    ----------
    p : int
        Prime characteristic.
    m : int
        Extension degree over GF(p).
    modulus : sequence of int
        Coefficients of the degree-m modulus over GF(p), lowest first.
        Normalized monic; must be irreducible.
    build_tables : bool
        Allow table construction for small fields (default).  Turning
        this off forces the generic arithmetic path everywhere.
    """

    def __init__(self, p: int, m: int, modulus: Iterable[int], build_tables: bool = True):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError("m must be at least 1")
        if p**m > FIELD_LIMIT:
            raise ValueError(f"p^m = {p**m} exceeds the supported limit {FIELD_LIMIT}")
        mod = [c % p for c in modulus]
        if len(mod) != m + 1 or mod[-1] == 0:
            raise ValueError("modulus must have degree exactly m")
        if mod[-1] != 1:
            lead_inv = pow(mod[-1], p - 2, p)
            mod = [(c * lead_inv) % p for c in mod]
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(mod)
        self._check_irreducible()
        self._generator: int | None = None
        self._exp = None
        self._log = None
        self.tables: _Tables | None = None
        if build_tables and self.q <= TABLE_LIMIT:
            self._build_tables()
        self._subfield_cache: dict[int, tuple] = {}

    # -- plumbing ---------------------------------------------------------

    def _check_irreducible(self) -> None:
        # trial division by every monic polynomial of degree <= m/2
        p, m = self.p, self.m
        from itertools import product

        for deg in range(1, m // 2 + 1):
            for lower in product(range(p), repeat=deg):
                den = list(lower) + [1]
                if not _poly_mod(self.modulus, den, p):
                    raise ValueError("modulus is reducible")

    def digits(self, a: int) -> list[int]:
        """Base-p digits of a code, lowest degree first, length m."""
        p = self.p
        out = [0] * self.m
        for i in range(self.m):
            a, out[i] = divmod(a, p)
        return out

    def code(self, digits: Sequence[int]) -> int:
        p = self.p
        a = 0
        for d in reversed(digits):
            a = a * p + d % p
        return a

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _poly_mul(self.digits(a), self.digits(b), self.p)
        return self.code(_poly_mod(prod, self.modulus, self.p) + [0])

    def _build_tables(self) -> None:
        q = self.q
        exp = array("i", [0]) * (2 * q)
        for cand in range(1, q):
            if q > 2 and cand == 1:
                continue
            val = 1
            ok = True
            for i in range(q - 1):
                exp[i] = val
                val = self._mul_poly(val, cand)
                if val == 1 and i < q - 2:
                    ok = False
                    break
            if ok and val == 1:
                self._generator = cand
                break
        if self._generator is None:
            raise ValueError("no multiplicative generator found")  # unreachable
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        log = array("i", [-1]) * q
        for i in range(q - 1):
            log[exp[i]] = i
        self._exp = exp
        self._log = log
        if q <= ADD_TABLE_LIMIT:
            p = self.p
            neg = array("i", (self.code([(p - d) % p for d in self.digits(a)]) for a in range(q)))
            add = array("i", [0]) * (q * q)
            for a in range(q):
                da = self.digits(a)
                for b in range(a, q):
                    s = self.code([(x + y) % p for x, y in zip(da, self.digits(b))])
                    add[a * q + b] = s
                    add[b * q + a] = s
            self.tables = _Tables(q, exp, log, add, neg)

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.code([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.code([(self.p - d) % self.p for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        if self._exp is not None:
            return self._exp[self.q - 1 - self._log[a]]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int, t: int = 1) -> int:
        """The p^t power map, a GF(p)-automorphism of the field."""
        if a == 0 or self.q == 2:
            return a
        if self._exp is not None:
            return self._exp[(self._log[a] * pow(self.p, t % self.m, self.q - 1)) % (self.q - 1)]
        out = a
        for _ in range(t % self.m):
            out = self.pow(out, self.p)
        return out

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    @property
    def generator(self) -> int:
        """Smallest-code generator of the multiplicative group."""
        if self._generator is None:
            self._generator = self._find_generator_large()
        return self._generator

    def _find_generator_large(self) -> int:
        n = self.q - 1
        factors = []
        f, left = 2, n
        while f * f <= left:
            if left % f == 0:
                factors.append(f)
                while left % f == 0:
                    left //= f
            f += 1
        if left > 1:
            factors.append(left)
        for cand in range(2, self.q):
            if all(self.pow(cand, n // r) != 1 for r in factors):
                return cand
        raise ValueError("no multiplicative generator found")  # unreachable

    # -- subfields --------------------------------------------------------

    def is_in_subfield(self, a: int, d: int) -> bool:
        """Membership in GF(p^d), tested as a^(p^d) == a."""
        return self.frobenius(a, d) == a

    def subfield_generator(self, d: int) -> int:
        if self.m % d:
            raise ValueError(f"GF({self.p}^{d}) is not a subfield")
        sub_q = self.p**d
        if sub_q == 2:
            return 1
        return self.pow(self.generator, (self.q - 1) // (sub_q - 1))

    def subfield_prime_basis(self, d: int) -> tuple[int, ...]:
        """A GF(p)-basis of GF(p^d) inside this field: powers of its generator."""
        h = self.subfield_generator(d)
        out = []
        v = 1
        for _ in range(d):
            out.append(v)
            v = self.mul(v, h)
        return tuple(out)

    def subfield_elements(self, d: int) -> tuple[int, ...]:
        """All p^d elements of GF(p^d), ascending code order."""
        if d in self._subfield_cache:
            return self._subfield_cache[d]
        sub_q = self.p**d
        if sub_q > TABLE_LIMIT:
            raise BudgetExceeded(sub_q, TABLE_LIMIT, "subfield enumeration")
        h = self.subfield_generator(d)
        seen = {0}
        v = 1
        for _ in range(sub_q - 1):
            seen.add(v)
            v = self.mul(v, h)
        out = tuple(sorted(seen))
        self._subfield_cache[d] = out
        return out

    # -- identity ---------------------------------------------------------

    @property
    def key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FiniteField(p={self.p}, m={self.m})"


# ---------------------------------------------------------------------------
# GF(p) dense linear algebra for coordinate maps
# ---------------------------------------------------------------------------


def _gfp_invert(mat: list[list[int]], p: int) -> list[list[int]] | None:
    n = len(mat)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    rank = 0
    for col in range(n):
        sel = next((r for r in range(rank, n) if a[r][col]), -1)
        if sel < 0:
            return None
        a[rank], a[sel] = a[sel], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(v * inv) % p for v in a[rank]]
        for r in range(n):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return [row[n:] for row in a]


class _GFpSpan:
    """Incremental GF(p)-rank tracker over digit vectors."""

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self.rows: list[list[int]] = []

    def _reduce(self, v: list[int]) -> list[int]:
        p = self.p
        for row in self.rows:
            lead = next(i for i, x in enumerate(row) if x)
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        """Insert v; True if it enlarged the span."""
        v = self._reduce(list(v))
        if not any(v):
            return False
        lead = next(i for i, x in enumerate(v) if x)
        inv = pow(v[lead], self.p - 2, self.p)
        self.rows.append([(x * inv) % self.p for x in v])
        return True


class Block:
    """One tower block: length, subfield degree, ordered basis of F over K."""

    __slots__ = ("n", "d", "basis")

    def __init__(self, n: int, d: int, basis: tuple[int, ...]):
        self.n = n
        self.d = d
        self.basis = basis

    @property
    def key(self):
        return (self.n, self.d, self.basis)

    def __eq__(self, other):
        return isinstance(other, Block) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Block(n={self.n}, d={self.d})"


class FieldTower:
    """A finite-field extension with a subfield block profile.

    Parameters
    ----------
    field : FiniteField
        The extension field F = GF(p^m).
    blocks : sequence
        Per-block specs, each (n_i, d_i) or (n_i, d_i, basis); d_i must
        divide m and basis, when given, must be m/d_i elements of F that
        are linearly independent over K_i = GF(p^(d_i)).
    """

    def __init__(self, field: FiniteField, blocks: Iterable):
        self.field = field
        resolved = []
        for spec in blocks:
            spec = tuple(spec)
            if len(spec) == 2:
                n, d = spec
                basis = None
            else:
                n, d, basis = spec
            if n < 0:
                raise ValueError("block length must be nonnegative")
            if d < 1 or field.m % d:
                raise ValueError(f"d = {d} does not divide m = {field.m}")
            if basis is None:
                basis = _default_basis(field, d)
            else:
                basis = tuple(basis)
                if len(basis) != field.m // d:
                    raise ValueError("basis must have m/d elements")
            resolved.append(Block(int(n), int(d), basis))
        self.blocks: tuple[Block, ...] = tuple(resolved)
        self.n = sum(b.n for b in self.blocks)
        offsets = [0]
        for b in self.blocks:
            offsets.append(offsets[-1] + b.n)
        self.offsets = tuple(offsets)
        # per-block coordinate solvers over GF(p); doubles as the
        # K_i-independence check for the basis
        self._solvers = []
        self._coord_cache: list[dict[int, tuple[int, ...]]] = []
        for b in self.blocks:
            kappa = field.subfield_prime_basis(b.d)
            cols = []
            for alpha in b.basis:
                for k in kappa:
                    cols.append(field.digits(field.mul(alpha, k)))
            mat = [[cols[c][r] for c in range(field.m)] for r in range(field.m)]
            inverse = _gfp_invert(mat, field.p)
            if inverse is None:
                raise SingularMatrix(
                    f"basis {b.basis} is not independent over GF({field.p}^{b.d})"
                )
            self._solvers.append((kappa, inverse))
            self._coord_cache.append({})

    # -- structure --------------------------------------------------------

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_lengths(self) -> tuple[int, ...]:
        return tuple(b.n for b in self.blocks)

    def block_slice(self, vec: Sequence[int], i: int) -> tuple[int, ...]:
        return tuple(vec[self.offsets[i] : self.offsets[i + 1]])

    def with_block_lengths(self, lengths: Sequence[int]) -> "FieldTower":
        """Same field, subfields and bases; new block lengths."""
        if len(lengths) != len(self.blocks):
            raise TowerMismatch("length profile has the wrong number of blocks")
        return FieldTower(
            self.field,
            [(n, b.d, b.basis) for n, b in zip(lengths, self.blocks)],
        )

    def refine(self, partition: Sequence[Sequence[int]]) -> "FieldTower":
        """Split each block into consecutive pieces with the same subfield."""
        if len(partition) != len(self.blocks):
            raise TowerMismatch("partition has the wrong number of blocks")
        specs = []
        for b, pieces in zip(self.blocks, partition):
            if sum(pieces) != b.n or any(piece < 0 for piece in pieces):
                raise ValueError(f"partition {pieces} does not split a block of length {b.n}")
            specs.extend((piece, b.d, b.basis) for piece in pieces)
        return FieldTower(self.field, specs)

    # -- coordinates ------------------------------------------------------

    def subfield_coordinates(self, a: int, i: int) -> tuple[int, ...]:
        """K_i-coordinates of a field element in the block-i basis."""
        cache = self._coord_cache[i]
        hit = cache.get(a)
        if hit is not None:
            return hit
        field = self.field
        kappa, inverse = self._solvers[i]
        d = self.blocks[i].d
        digs = field.digits(a)
        p = field.p
        t = [sum(r * x for r, x in zip(row, digs)) % p for row in inverse]
        coords = []
        for j in range(field.m // d):
            c = 0
            for b in range(d):
                s = t[j * d + b]
                if s:
                    c = field.add(c, field.mul(kappa[b], s))
            coords.append(c)
        out = tuple(coords)
        if field.q <= TABLE_LIMIT:
            cache[a] = out
        return out

    def matrix_representation(self, vec: Sequence[int], i: int):
        """The m_i x len(vec) matrix over K_i whose column j holds the
        coordinates of vec[j]."""
        cols = [self.subfield_coordinates(a, i) for a in vec]
        m_i = self.field.m // self.blocks[i].d
        return tuple(tuple(col[h] for col in cols) for h in range(m_i))

    def reconstruct(self, coords: Sequence[int], i: int) -> int:
        """Inverse of subfield_coordinates."""
        field = self.field
        out = 0
        for alpha, c in zip(self.blocks[i].basis, coords):
            if c:
                out = field.add(out, field.mul(alpha, c))
        return out

    # -- identity ---------------------------------------------------------

    @property
    def key(self):
        return (self.field.key, tuple(b.key for b in self.blocks))

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        profile = ", ".join(f"{b.n}/GF({self.field.p}^{b.d})" for b in self.blocks)
        return f"FieldTower({self.field!r}, [{profile}])"


def _default_basis(field: FiniteField, d: int) -> tuple[int, ...]:
    """First m/d powers of the generator that stay K-independent."""
    m_i = field.m // d
    kappa = field.subfield_prime_basis(d)
    span = _GFpSpan(field.p, field.m)
    basis = []
    g = field.generator
    v = 1
    while len(basis) < m_i:
        staged = [field.digits(field.mul(v, k)) for k in kappa]
        checkpoint = [row[:] for row in span.rows]
        if all(span.add(s) for s in staged):
            basis.append(v)
        else:
            span.rows = checkpoint
        v = field.mul(v, g)
    return tuple(basis)


def require_same_tower(a: FieldTower, b: FieldTower, what: str = "operands") -> None:
    if a != b:
        raise TowerMismatch(f"{what} live over different towers")
