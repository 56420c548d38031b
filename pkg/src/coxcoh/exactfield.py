"""Exact arithmetic in Q and in the real cyclotomic fields Q(2cos(pi/M)).

Field elements are residue polynomials in y = 2cos(pi/M) with rational
coefficients, reduced modulo the minimal polynomial of y.  Matrices over
such a field support exact rank / kernel / image computation, with an
optional Monte-Carlo modular fast path for large rational matrices.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

__all__ = [
    "BudgetExceededError",
    "FieldSpec",
    "FieldElement",
    "ExactMatrix",
    "minimal_polynomial",
    "embed_cos",
    "rank_kernel_image",
    "rank_of",
    "solve_columns",
    "modular_rank",
    "field_for_m",
    "QQ",
]

# Auto mode switches to modular elimination above these sizes; pure-Python
# exact elimination is fine below them and impractically slow far above.
_EXACT_COLS_LIMIT = 320
_EXACT_CELLS_LIMIT = 160_000

_DEFAULT_BUDGET_MB = 4096


class BudgetExceededError(Exception):
    """Raised when an allocation would exceed the configured memory budget."""


def _budget_mb() -> int:
    return int(os.environ.get("COXCOH_BUDGET_MB", _DEFAULT_BUDGET_MB))


def _check_budget(cells: int) -> None:
    # Rough model: one pointer-sized slot per entry plus constant overhead.
    if cells * 8 > _budget_mb() * 1024 * 1024:
        raise BudgetExceededError(
            f"matrix with {cells} entries exceeds COXCOH_BUDGET_MB={_budget_mb()}"
        )


# ---------------------------------------------------------------------------
# polynomials over Q, coefficient tuples in increasing degree


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1) / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _poly_trim(q), _poly_trim(a)


def _poly_ext_gcd(a, b):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _poly_trim(a), _poly_trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
        t0, t1 = t1, _poly_trim([x - y for x, y in _zip_pad(t0, _poly_mul(q, t1))])
    lead = r0[-1]
    inv = Fraction(1) / lead
    return (
        tuple(c * inv for c in r0),
        tuple(c * inv for c in s0),
        tuple(c * inv for c in t0),
    )


def _zip_pad(a, b):
    n = max(len(a), len(b))
    za = tuple(a) + (Fraction(0),) * (n - len(a))
    zb = tuple(b) + (Fraction(0),) * (n - len(b))
    return zip(za, zb)


@lru_cache(maxsize=None)
def minimal_polynomial(M: int) -> tuple:
    """Monic minimal polynomial of 2cos(pi/M) over Q, as integer coefficients
    in increasing degree.

    Computed as the factor of the characteristic polynomial of the
    multiplication-by-(z + 1/z) map on Q[z]/Phi_2M(z) that vanishes at
    2cos(pi/M).
    """
    if M < 1:
        raise ValueError("M must be a positive integer")
    z = sympy.Symbol("z")
    phi = sympy.Poly(sympy.cyclotomic_poly(2 * M, z), z)
    d = phi.degree()
    coeffs = [Fraction(int(c)) for c in reversed(phi.all_coeffs())]  # low->high

    def reduce_mod_phi(vec):
        vec = list(vec)
        for i in range(len(vec) - 1, d - 1, -1):
            c = vec[i]
            if c:
                vec[i] = Fraction(0)
                for j in range(d):
                    vec[i - d + j] -= c * coeffs[j]
        return vec[:d] + [Fraction(0)] * (d - len(vec[:d]))

    # z^{-1} = z^{2M-1} mod Phi_2M (z^{2M} = 1 in the quotient field).
    zinv = [Fraction(0)] * (2 * M)
    zinv[2 * M - 1] = Fraction(1)
    zinv = reduce_mod_phi(zinv)
    mult = []  # columns of the multiplication matrix
    for k in range(d):
        col = [Fraction(0)] * (d + 1)
        col[k + 1] = Fraction(1)  # z * z^k
        col = reduce_mod_phi(col)
        for j in range(d):  # + z^{-1} * z^k
            if zinv[j]:
                extra = [Fraction(0)] * (j + k + 1)
                extra[j + k] = zinv[j]
                extra = reduce_mod_phi(extra)
                col = [a + b for a, b in zip(col, extra)]
        mult.append(col)
    mat = sympy.Matrix(d, d, lambda i, j: sympy.Rational(mult[j][i]))
    x = sympy.Symbol("x")
    charpoly = mat.charpoly(x).as_expr()
    target = (2 * sympy.cos(sympy.pi / M)).evalf(40)
    best = None
    for factor, _mult in sympy.factor_list(charpoly, x)[1]:
        p = sympy.Poly(factor, x)
        if abs(p.eval(target)) < 1e-9:
            if best is None or p.degree() < best.degree():
                best = p
    if best is None:
        raise RuntimeError(f"no factor of the characteristic polynomial vanishes at 2cos(pi/{M})")
    monic = best.monic()
    return tuple(int(c) for c in reversed(monic.all_coeffs()))


class FieldSpec:
    """The field Q(2cos(pi/M)), carried as M plus the minimal polynomial of
    the generator y = 2cos(pi/M)."""

    _cache: dict = {}

    def __init__(self, M: int, minpoly: tuple):
        self.M = M
        self.minpoly = tuple(Fraction(c) for c in minpoly)
        self.degree = len(self.minpoly) - 1
        if self.minpoly[-1] != 1:
            raise ValueError("minpoly must be monic")
        self._zero_coeffs = (Fraction(0),) * self.degree
        self.zero = FieldElement(self, self._zero_coeffs)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = FieldElement(self, tuple(one))
        # reduction table: y^k for degree <= k <= 2*degree-2
        self._red = []
        cur = list(self.minpoly[:-1])
        cur = [-c for c in cur]  # y^degree = -(lower coefficients)
        self._red.append(tuple(cur))
        for _ in range(self.degree - 2):
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for j in range(self.degree):
                    nxt[j] += top * self._red[0][j]
            cur = nxt
            self._red.append(tuple(cur))

    def __repr__(self):
        return f"FieldSpec(M={self.M}, degree={self.degree})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.M == other.M and self.minpoly == other.minpoly

    def __hash__(self):
        return hash((self.M, self.minpoly))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def element(self, value) -> "FieldElement":
        """Coerce an int / Fraction / FieldElement into this field."""
        if isinstance(value, FieldElement):
            if value.spec == self:
                return value
            return embed_element(value, self)
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(value)
        return FieldElement(self, tuple(c))

    def generator(self) -> "FieldElement":
        if self.degree == 1:
            # y = 2cos(pi/M) is rational here: M in {1,2,3}.
            return self.element(self.minpoly_root_value())
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return FieldElement(self, tuple(c))

    def minpoly_root_value(self) -> Fraction:
        if self.degree != 1:
            raise ValueError("generator is irrational")
        return -self.minpoly[0]

    def numeric_root(self) -> float:
        import math

        return 2.0 * math.cos(math.pi / self.M)


@lru_cache(maxsize=None)
def field_for_m(M: int) -> FieldSpec:
    """The shared FieldSpec for Q(2cos(pi/M))."""
    return FieldSpec(M, minimal_polynomial(M))


class FieldElement:
    """An element of Q(2cos(pi/M)): residue-polynomial coefficients in y."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple):
        self.spec = spec
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        if self.spec.degree == 1:
            return FieldElement(self.spec, (self.coeffs[0] + other.coeffs[0],))
        return FieldElement(
            self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        if self.spec.degree == 1:
            return FieldElement(self.spec, (self.coeffs[0] - other.coeffs[0],))
        return FieldElement(
            self.spec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return FieldElement(self.spec, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        spec = self.spec
        if spec.degree == 1:
            return FieldElement(spec, (self.coeffs[0] * other.coeffs[0],))
        d = spec.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                red = spec._red[k - d]
                for j in range(d):
                    if red[j]:
                        out[j] += c * red[j]
        return FieldElement(spec, tuple(out))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        spec = self.spec
        if spec.degree == 1:
            return FieldElement(spec, (Fraction(1) / self.coeffs[0],))
        g, s, _t = _poly_ext_gcd(_poly_trim(self.coeffs), spec.minpoly)
        if len(g) != 1:
            raise ArithmeticError("minpoly is not coprime to element; not a field?")
        inv = tuple(c / g[0] for c in s)
        inv = inv + (Fraction(0),) * (spec.degree - len(inv))
        return FieldElement(spec, inv[: spec.degree])

    def __truediv__(self, other):
        return self * other.inverse()

    def scale(self, q) -> "FieldElement":
        q = Fraction(q)
        return FieldElement(self.spec, tuple(a * q for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def as_fraction(self) -> Fraction:
        """The rational value, provided all higher coefficients vanish."""
        if any(self.coeffs[1:]):
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def numeric(self) -> float:
        y = self.spec.numeric_root()
        val = 0.0
        for c in reversed(self.coeffs):
            val = val * y + float(c)
        return val

    def __repr__(self):
        if self.spec.degree == 1 or not any(self.coeffs[1:]):
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*y^{k}")
        return " + ".join(terms) if terms else "0"


def embed_element(elt: FieldElement, spec: FieldSpec) -> FieldElement:
    """Embed an element of Q(2cos(pi/M1)) into Q(2cos(pi/M2)) for M1 | M2."""
    src = elt.spec
    if src == spec:
        return elt
    if src.degree == 1:
        return spec.element(elt.coeffs[0])
    if spec.M % src.M != 0:
        raise ValueError(f"no embedding: {src.M} does not divide {spec.M}")
    gen = embed_cos(src.M, spec)
    acc = spec.zero
    power = spec.one
    for c in elt.coeffs:
        if c:
            acc = acc + power.scale(c)
        power = power * gen
    return acc


QQ = field_for_m(1)


def embed_cos(m: int, spec: FieldSpec) -> FieldElement:
    """2cos(pi/m) as an element of Q(2cos(pi/M)), for m dividing M.

    Uses the 2cos(k*theta) recurrence P_0 = 2, P_1 = y, P_{k+1} = y P_k - P_{k-1}
    evaluated at k = M/m.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if spec.M % m != 0:
        raise ValueError(f"{m} does not divide M={spec.M}")
    k = spec.M // m
    y = spec.generator()
    p_prev = spec.element(2)
    if k == 0:
        return p_prev
    p_cur = y
    for _ in range(k - 1):
        p_prev, p_cur = p_cur, y * p_cur - p_prev
    return p_cur


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Dense matrix of FieldElements over a common FieldSpec.

    Immutable by convention: operations return new matrices.  Zero entries
    share the field's zero singleton, so large sparse-looking matrices stay
    cheap to store.
    """

    __slots__ = ("field", "rows", "cols", "_rows", "_mod_cache")

    def __init__(self, field: FieldSpec, data):
        self.field = field
        self._rows = [list(r) for r in data]
        self.rows = len(self._rows)
        self.cols = len(self._rows[0]) if self._rows else 0
        for r in self._rows:
            if len(r) != self.cols:
                raise ValueError("ragged rows")
        _check_budget(self.rows * self.cols)
        self._mod_cache = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        _check_budget(rows * cols)
        z = field.zero
        m = cls.__new__(cls)
        m.field = field
        m._rows = [[z] * cols for _ in range(rows)]
        m.rows = rows
        m.cols = cols
        m._mod_cache = None
        return m

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        m = cls.zeros(field, n, n)
        one = field.one
        for i in range(n):
            m._rows[i][i] = one
        return m

    @classmethod
    def from_rational_rows(cls, field: FieldSpec, data) -> "ExactMatrix":
        return cls(field, [[field.element(x) for x in row] for row in data])

    @classmethod
    def hstack(cls, mats) -> "ExactMatrix":
        mats = list(mats)
        field = mats[0].field
        rows = mats[0].rows
        out = []
        for i in range(rows):
            row = []
            for m in mats:
                row.extend(m._rows[i])
            out.append(row)
        return cls(field, out)

    @classmethod
    def vstack(cls, mats) -> "ExactMatrix":
        mats = list(mats)
        field = mats[0].field
        out = []
        for m in mats:
            out.extend(list(r) for r in m._rows)
        return cls(field, out)

    @classmethod
    def block_diag(cls, field: FieldSpec, mats) -> "ExactMatrix":
        mats = list(mats)
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = cls.zeros(field, rows, cols)
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                out._rows[r0 + i][c0 : c0 + m.cols] = m._rows[i]
            r0 += m.rows
            c0 += m.cols
        return out

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def set_entry(self, i: int, j: int, value: FieldElement) -> None:
        """Mutation hook for builders; never call on a published matrix."""
        self._rows[i][j] = value
        self._mod_cache = None

    def row(self, i):
        return list(self._rows[i])

    def column(self, j):
        return [r[j] for r in self._rows]

    def column_nonzeros(self, j):
        return [(i, r[j]) for i, r in enumerate(self._rows) if not r[j].is_zero()]

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self._rows for e in r)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and all(
                a == b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb)
            )
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        out = [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        ]
        return ExactMatrix(self.field, out)

    def __sub__(self, other):
        out = [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        ]
        return ExactMatrix(self.field, out)

    def __neg__(self):
        return ExactMatrix(self.field, [[-a for a in r] for r in self._rows])

    def scale(self, q) -> "ExactMatrix":
        q = Fraction(q)
        return ExactMatrix(self.field, [[a.scale(q) for a in r] for r in self._rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = ExactMatrix.zeros(self.field, self.rows, other.cols)
        orows = out._rows
        # Sparse-aware: skip zero entries of the left factor.
        for i, row in enumerate(self._rows):
            orow = orows[i]
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                brow = other._rows[k]
                for j, b in enumerate(brow):
                    if not b.is_zero():
                        orow[j] = orow[j] + a * b
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field,
            [[self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        out = ExactMatrix.zeros(self.field, self.rows * other.rows, self.cols * other.cols)
        for i, row in enumerate(self._rows):
            for j, a in enumerate(row):
                if a.is_zero():
                    continue
                for k, orow in enumerate(other._rows):
                    target = out._rows[i * other.rows + k]
                    base = j * other.cols
                    for l, b in enumerate(orow):
                        if not b.is_zero():
                            target[base + l] = a * b
        return out

    def apply_to_vector(self, vec):
        """Matrix times a sparse vector given as {index: FieldElement}."""
        out: dict = {}
        for k, a in vec.items():
            if a.is_zero():
                continue
            for i, r in enumerate(self._rows):
                b = r[k]
                if not b.is_zero():
                    cur = out.get(i)
                    out[i] = a * b if cur is None else cur + a * b
        return {i: v for i, v in out.items() if not v.is_zero()}

    # -- modular image -------------------------------------------------------

    def _int_arrays(self):
        if self._mod_cache is None:
            if not self.field.is_rational:
                raise ValueError("modular reduction requires the rational field")
            nums = np.zeros((self.rows, self.cols), dtype=np.int64)
            dens = np.ones((self.rows, self.cols), dtype=np.int64)
            for i, row in enumerate(self._rows):
                for j, e in enumerate(row):
                    c = e.coeffs[0]
                    if c:
                        nums[i, j] = c.numerator
                        dens[i, j] = c.denominator
            self._mod_cache = (nums, dens)
        return self._mod_cache

    def denominators(self):
        if not self.field.is_rational:
            return set()
        _nums, dens = self._int_arrays()
        return set(int(d) for d in np.unique(dens))

    def to_mod(self, p: int) -> np.ndarray:
        nums, dens = self._int_arrays()
        out = np.mod(nums, p)
        for d in np.unique(dens):
            if d != 1:
                if d % p == 0:
                    raise ZeroDivisionError(f"denominator {d} vanishes mod {p}")
                inv = pow(int(d) % p, p - 2, p)
                mask = dens == d
                out[mask] = (out[mask] * inv) % p
        return out


# ---------------------------------------------------------------------------
# exact elimination


def _rref(rows, field):
    """Reduced row echelon form in place; returns (rank, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not f.is_zero():
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots


def _bareiss_rank(int_rows) -> int:
    """Fraction-free rank of an integer matrix (Bareiss elimination)."""
    rows = [list(r) for r in int_rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, nrows):
            # Every row below is updated, even at vi = 0: the division by the
            # previous pivot is what keeps the arithmetic fraction-free.
            vi = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, ncols):
                ri[j] = (pv * ri[j] - vi * rr[j]) // prev
            ri[c] = 0
        prev = pv
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def _integerize(matrix: ExactMatrix):
    """Clear denominators row by row; rank is unchanged."""
    out = []
    for row in matrix._rows:
        fracs = [e.coeffs[0] for e in row]
        lcm = 1
        for f in fracs:
            if f:
                lcm = lcm * f.denominator // _gcd(lcm, f.denominator)
        out.append([int(f * lcm) for f in fracs])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def exact_rank(matrix: ExactMatrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    if matrix.field.is_rational:
        return _bareiss_rank(_integerize(matrix))
    rows = [list(r) for r in matrix._rows]
    rank, _ = _rref(rows, matrix.field)
    return rank


def rank_kernel_image(matrix: ExactMatrix, mode: str = "exact", seed: int = 0):
    """Rank plus kernel / image bases of a matrix.

    exact mode returns (rank, kernel_basis, image_basis) with bases as
    column matrices.  modular mode (rational field only) returns
    (rank, None, None): a Monte-Carlo rank agreed across three primes.
    """
    if mode == "modular":
        return modular_rank(matrix, seed=seed), None, None
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    field = matrix.field
    if matrix.rows == 0 or matrix.cols == 0:
        kernel = ExactMatrix.identity(field, matrix.cols)
        image = ExactMatrix.zeros(field, matrix.rows, 0)
        return 0, kernel, image
    rows = [list(r) for r in matrix._rows]
    rank, pivots = _rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(matrix.cols) if c not in pivot_set]
    kernel = ExactMatrix.zeros(field, matrix.cols, len(free))
    one = field.one
    for k, fc in enumerate(free):
        kernel._rows[fc][k] = one
        for r, pc in enumerate(pivots):
            v = rows[r][fc]
            if not v.is_zero():
                kernel._rows[pc][k] = -v
    image = ExactMatrix.zeros(field, matrix.rows, rank)
    for k, pc in enumerate(pivots):
        for i in range(matrix.rows):
            image._rows[i][k] = matrix._rows[i][pc]
    return rank, kernel, image


def solve_columns(basis: ExactMatrix, targets: ExactMatrix) -> ExactMatrix:
    """Solve basis @ X = targets exactly; raises if any column is unsolvable."""
    if basis.field != targets.field or basis.rows != targets.rows:
        raise ValueError("incompatible solve")
    field = basis.field
    if basis.rows == 0:
        return ExactMatrix.zeros(field, basis.cols, targets.cols)
    aug = [
        list(brow) + list(trow) for brow, trow in zip(basis._rows, targets._rows)
    ]
    rank, pivots = _rref(aug, field)
    if any(p >= basis.cols for p in pivots):
        raise ArithmeticError("inconsistent system: target outside column span")
    out = ExactMatrix.zeros(field, basis.cols, targets.cols)
    for r, pc in enumerate(pivots):
        for j in range(targets.cols):
            v = aug[r][basis.cols + j]
            if not v.is_zero():
                out._rows[pc][j] = v
    return out


# ---------------------------------------------------------------------------
# modular Monte-Carlo rank


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    a = a % p
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        factors = a[r + 1 :, c]
        live = np.nonzero(factors)[0]
        if live.size:
            block = a[r + 1 :, c:]
            block[live] = (block[live] - factors[live, None] * a[r, c:]) % p
        r += 1
    return r


def choose_primes(seed: int, count: int, avoid: set) -> list:
    """Deterministic primes > 2^30, avoiding divisors of any value in avoid."""
    rng = random.Random(seed)
    primes = []
    while len(primes) < count:
        candidate = rng.randrange(2**30 + 1, 2**31 - 1)
        p = int(sympy.nextprime(candidate))
        if p in primes:
            continue
        if any(d % p == 0 for d in avoid if d):
            continue
        primes.append(p)
    return primes


def modular_rank(matrix: ExactMatrix, seed: int = 0, agreements: int = 3) -> int:
    """Monte-Carlo rank over `agreements` independent primes > 2^30.

    The returned value is a certified lower bound for the true rank and
    equals it unless every chosen prime is unlucky.
    """
    if not matrix.field.is_rational:
        raise ValueError("modular mode is only available over Q")
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    avoid = matrix.denominators()
    ranks: list = []
    for attempt in range(10):
        primes = choose_primes(seed + attempt * 7919, agreements, avoid)
        ranks = [_rank_mod_p(matrix.to_mod(p), p) for p in primes]
        if len(set(ranks)) == 1:
            return ranks[0]
    return max(ranks)


def resolve_mode(matrix: ExactMatrix, mode: str) -> str:
    """Pick exact or modular for a single rank computation."""
    if mode in ("exact", "modular"):
        return mode
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    if not matrix.field.is_rational:
        return "exact"
    if matrix.cols <= _EXACT_COLS_LIMIT and matrix.rows * matrix.cols <= _EXACT_CELLS_LIMIT:
        return "exact"
    return "modular"


def rank_of(matrix: ExactMatrix, mode: str = "exact", seed: int = 0) -> int:
    """Rank under the requested mode ('exact', 'modular', or 'auto')."""
    actual = resolve_mode(matrix, mode)
    if actual == "modular":
        return modular_rank(matrix, seed=seed)
    return exact_rank(matrix)
