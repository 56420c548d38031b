"""Finite-dimensional representations of Coxeter groups as generator matrices.

Covers the constructors the computations need: the geometric reflection
representation, trivial / sign modules, the regular representation of a
symmetric group, the natural permutation module, tensor powers of Q^m,
Specht modules, and the combination functors (external tensor, restriction,
sign twist, direct sum, invariant subspaces).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coxeter import CoxeterGraph, INFINITY, independent_sets, induced_subgraph
from .exactfield import (
    ExactMatrix,
    FieldSpec,
    QQ,
    embed_cos,
    embed_element,
    exact_rank,
    field_for_m,
    rank_kernel_image,
    solve_columns,
)

__all__ = [
    "Representation",
    "InvariantBasis",
    "reflection_rep",
    "trivial_rep",
    "sign_rep",
    "regular_rep",
    "natural_perm_rep",
    "tensor_power_rep",
    "specht_rep",
    "build_rep",
    "invariants",
    "external_tensor",
    "restrict",
    "sign_twist",
    "direct_sum",
    "subspace_rep",
    "promote",
    "symmetric_group_elements",
    "compose_perms",
    "perm_sign",
]

RELATION_CHECK_BOUND = 8


@dataclass(frozen=True)
class Representation:
    """Generator matrices of a Coxeter group acting on a vector space."""

    graph: CoxeterGraph
    field: FieldSpec
    dim: int
    generators: tuple  # one dim x dim ExactMatrix per generator
    label: str = ""
    warnings: tuple = ()

    def __post_init__(self):
        if len(self.generators) != self.graph.n:
            raise ValueError("one generator matrix per graph vertex required")
        for m in self.generators:
            if m.shape != (self.dim, self.dim):
                raise ValueError("generator matrix has wrong shape")

    def permutation_forms(self):
        """Per-generator permutation arrays when the matrix is a 0/1
        permutation matrix, else None."""
        return tuple(_as_permutation(m) for m in self.generators)

    def verify_relations(self, bound: int = RELATION_CHECK_BOUND) -> None:
        perms = self.permutation_forms()
        n = self.graph.n
        for s in range(n):
            if not _is_involution(self.generators[s], perms[s]):
                raise ArithmeticError(f"generator {s} is not an involution in {self.label!r}")
        for s in range(n):
            for t in range(s + 1, n):
                m = self.graph.label(s, t)
                if m == INFINITY or m > bound:
                    continue
                if not _braid_holds(self.generators[s], self.generators[t], m, perms[s], perms[t]):
                    raise ArithmeticError(
                        f"braid relation (s{s + 1} s{t + 1})^{m} fails in {self.label!r}"
                    )

    def __repr__(self):
        return f"Representation({self.label or '?'}, dim={self.dim}, graph={self.graph})"


def _as_permutation(m: ExactMatrix):
    if m.rows != m.cols:
        return None
    perm = [None] * m.cols
    one = m.field.one
    for j in range(m.cols):
        hit = None
        for i in range(m.rows):
            e = m._rows[i][j]
            if not e.is_zero():
                if hit is not None or e != one:
                    return None
                hit = i
        if hit is None:
            return None
        perm[j] = hit
    if len(set(perm)) != m.cols:
        return None
    return tuple(perm)


def _is_involution(m: ExactMatrix, perm) -> bool:
    if perm is not None:
        return all(perm[perm[j]] == j for j in range(len(perm)))
    return (m @ m) == ExactMatrix.identity(m.field, m.rows)


def _braid_holds(ms, mt, order, ps, pt) -> bool:
    if ps is not None and pt is not None:
        n = len(ps)
        cur = tuple(range(n))
        st = tuple(ps[pt[j]] for j in range(n))
        for _ in range(order):
            cur = tuple(st[c] for c in cur)
        return cur == tuple(range(n))
    prod = ms @ mt
    acc = ExactMatrix.identity(ms.field, ms.rows)
    for _ in range(order):
        acc = acc @ prod
    return acc == ExactMatrix.identity(ms.field, ms.rows)


# ---------------------------------------------------------------------------
# constructors


def reflection_rep(g: CoxeterGraph) -> Representation:
    """The geometric reflection representation on the root basis:
    sigma_s(alpha_t) = alpha_t + 2cos(pi/m_st) alpha_s, sigma_s(alpha_s) = -alpha_s."""
    spec = field_for_m(g.field_order())
    warnings = ()
    if g.has_infinite_label():
        warnings = ("infinite edge label: using 2cos(pi/oo) = 2",)
    n = g.n
    mats = []
    for s in range(n):
        m = ExactMatrix.identity(spec, n)
        m.set_entry(s, s, -spec.one)
        for t in range(n):
            if t == s:
                continue
            label = g.label(s, t)
            if label == 2:
                continue
            c = spec.element(2) if label == INFINITY else embed_cos(label, spec)
            m.set_entry(s, t, c)
        mats.append(m)
    rep = Representation(g, spec, n, tuple(mats), label="reflection", warnings=warnings)
    rep.verify_relations()
    return rep


def trivial_rep(g: CoxeterGraph, d: int = 1, field: FieldSpec = QQ) -> Representation:
    mats = tuple(ExactMatrix.identity(field, d) for _ in range(g.n))
    return Representation(g, field, d, mats, label=f"trivial({d})")


def sign_rep(g: CoxeterGraph, field: FieldSpec = QQ) -> Representation:
    mats = tuple(ExactMatrix(field, [[-field.one]]) for _ in range(g.n))
    return Representation(g, field, 1, mats, label="sign")


def _require_type_a(g: CoxeterGraph, what: str) -> int:
    """Checks g is the path A_n with consecutive indices; returns n+1."""
    expected = tuple(((i, i + 1), 3) for i in range(g.n - 1))
    if g.labels != expected:
        raise ValueError(f"{what} requires a type-A graph, got {g}")
    return g.n + 1


def symmetric_group_elements(n: int):
    """S_n in lexicographic one-line order; w[i] = w(i+1)."""
    return list(itertools.permutations(range(1, n + 1)))


def compose_perms(u, v):
    """(u o v)(i) = u(v(i)), one-line tuples."""
    return tuple(u[v[i] - 1] for i in range(len(u)))


def perm_sign(w) -> int:
    sign = 1
    seen = [False] * len(w)
    for i in range(len(w)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = w[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _transposition(n: int, k: int):
    """(k+1, k+2) as a one-line tuple, 0-based k."""
    w = list(range(1, n + 1))
    w[k], w[k + 1] = w[k + 1], w[k]
    return tuple(w)


def _perm_matrix(field: FieldSpec, perm) -> ExactMatrix:
    m = ExactMatrix.zeros(field, len(perm), len(perm))
    one = field.one
    for j, i in enumerate(perm):
        m.set_entry(i, j, one)
    return m


def regular_rep(g: CoxeterGraph) -> Representation:
    """Q[S_n] under left multiplication, basis in lex one-line order."""
    n = _require_type_a(g, "regular_symmetric")
    elements = symmetric_group_elements(n)
    index = {w: i for i, w in enumerate(elements)}
    mats = []
    for k in range(g.n):
        s = _transposition(n, k)
        perm = tuple(index[compose_perms(s, w)] for w in elements)
        mats.append(_perm_matrix(QQ, perm))
    rep = Representation(g, QQ, len(elements), tuple(mats), label="regular")
    rep.verify_relations()
    return rep


def natural_perm_rep(g: CoxeterGraph) -> Representation:
    n = _require_type_a(g, "natural_perm")
    mats = []
    for k in range(g.n):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        mats.append(_perm_matrix(QQ, tuple(perm)))
    rep = Representation(g, QQ, n, tuple(mats), label="natural")
    rep.verify_relations()
    return rep


def tensor_power_rep(g: CoxeterGraph, m: int) -> Representation:
    """(Q^m)^{tensor n+1} with s_k swapping tensor factors k, k+1."""
    n = _require_type_a(g, "tensor_power")
    if m < 1:
        raise ValueError("tensor_power requires m >= 1")
    words = list(itertools.product(range(m), repeat=n))
    index = {w: i for i, w in enumerate(words)}
    mats = []
    for k in range(g.n):
        perm = []
        for w in words:
            sw = list(w)
            sw[k], sw[k + 1] = sw[k + 1], sw[k]
            perm.append(index[tuple(sw)])
        mats.append(_perm_matrix(QQ, tuple(perm)))
    rep = Representation(g, QQ, len(words), tuple(mats), label=f"tensor({m})")
    rep.verify_relations()
    return rep


def _canonical_tableau(lam):
    rows = []
    nxt = 1
    for part in lam:
        rows.append(list(range(nxt, nxt + part)))
        nxt += part
    return rows


def _subgroup_perms(n: int, blocks):
    """All permutations of {1..n} preserving each block pointwise outside."""
    perms = [tuple(range(1, n + 1))]
    for block in blocks:
        new = []
        for arrangement in itertools.permutations(block):
            mapping = dict(zip(block, arrangement))
            base = [mapping.get(i, i) for i in range(1, n + 1)]
            for w in perms:
                new.append(compose_perms(tuple(base), w))
        perms = new
    return perms


def specht_rep(g: CoxeterGraph, lam) -> Representation:
    """The Specht module of the partition lam: the left ideal Q[S_n]c
    for the Young symmetrizer c of the canonical (row-filling) tableau."""
    n = _require_type_a(g, "specht")
    lam = tuple(lam)
    if sorted(lam, reverse=True) != list(lam) or any(p < 1 for p in lam):
        raise ValueError(f"{lam} is not a partition")
    if sum(lam) != n:
        raise ValueError(f"partition {lam} does not sum to {n}")
    if n > 6:
        raise ValueError("specht modules are supported for n <= 6")
    tableau = _canonical_tableau(lam)
    cols = []
    ncols = max(lam)
    for c in range(ncols):
        cols.append([row[c] for row in tableau if len(row) > c])
    row_group = _subgroup_perms(n, tableau)
    col_group = _subgroup_perms(n, cols)
    elements = symmetric_group_elements(n)
    index = {w: i for i, w in enumerate(elements)}
    # c = (sum of row perms) * (signed sum of column perms), as a sparse vector
    symmetrizer: dict = {}
    for p in row_group:
        for q in col_group:
            w = compose_perms(p, q)
            symmetrizer[w] = symmetrizer.get(w, 0) + perm_sign(q)
    symmetrizer = {w: c for w, c in symmetrizer.items() if c}
    size = len(elements)
    # incremental echelon of the columns e_g * c (right multiplication)
    basis_rows = []  # RREF rows over the group-algebra coordinates
    pivots = []
    basis_cols = []  # the accepted raw columns, as sparse dicts
    for gelt in elements:
        col = {}
        for w, c in symmetrizer.items():
            key = index[compose_perms(gelt, w)]
            col[key] = col.get(key, 0) + c
        vec = [Fraction(0)] * size
        for k, c in col.items():
            vec[k] = Fraction(c)
        raw = dict(col)
        for prow, ppos in zip(basis_rows, pivots):
            f = vec[ppos]
            if f:
                for j in range(size):
                    if prow[j]:
                        vec[j] -= f * prow[j]
        lead = next((j for j in range(size) if vec[j]), None)
        if lead is None:
            continue
        inv = Fraction(1) / vec[lead]
        vec = [v * inv for v in vec]
        basis_rows.append(vec)
        pivots.append(lead)
        basis_cols.append(raw)
    dim = len(basis_cols)
    basis = ExactMatrix.zeros(QQ, size, dim)
    for j, col in enumerate(basis_cols):
        for k, c in col.items():
            basis.set_entry(k, j, QQ.element(c))
    mats = []
    for k in range(g.n):
        s = _transposition(n, k)
        moved = ExactMatrix.zeros(QQ, size, dim)
        for j, col in enumerate(basis_cols):
            for idx, c in col.items():
                target = index[compose_perms(s, elements[idx])]
                cur = moved._rows[target][j]
                moved.set_entry(target, j, cur + QQ.element(c))
        mats.append(solve_columns(basis, moved))
    label = "specht(" + ",".join(str(p) for p in lam) + ")"
    rep = Representation(g, QQ, dim, tuple(mats), label=label)
    rep.verify_relations()
    return rep


def build_rep(kind: str, g: CoxeterGraph) -> Representation:
    """Construct a representation from a CLI-style kind string.

    Kinds: reflection | trivial | trivial:D | sign | regular | natural |
    tensor:M | specht:P1,P2,...
    """
    base, _, arg = kind.partition(":")
    if base == "reflection":
        return reflection_rep(g)
    if base == "trivial":
        return trivial_rep(g, int(arg) if arg else 1)
    if base == "sign":
        return sign_rep(g)
    if base == "regular":
        return regular_rep(g)
    if base == "natural":
        return natural_perm_rep(g)
    if base == "tensor":
        if not arg:
            raise ValueError("tensor kind requires tensor:M")
        return tensor_power_rep(g, int(arg))
    if base == "specht":
        if not arg:
            raise ValueError("specht kind requires specht:P1,P2,...")
        return specht_rep(g, tuple(int(p) for p in arg.split(",")))
    raise ValueError(f"unknown representation kind {kind!r}")


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class InvariantBasis:
    """A chosen basis (as columns) of the subspace fixed by every generator
    in t; orbits carries the permutation-orbit structure when available."""

    t: tuple
    columns: ExactMatrix
    orbits: tuple = None

    @property
    def dim(self) -> int:
        return self.columns.cols

    def orbit_column(self):
        """Map from any member index of an orbit to its column number."""
        lookup = {}
        for col, orbit in enumerate(self.orbits):
            for member in orbit:
                lookup[member] = col
        return lookup


def _orbits_under(perms, dim: int):
    seen = [False] * dim
    orbits = []
    for start in range(dim):
        if seen[start]:
            continue
        orbit = []
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            orbit.append(x)
            for p in perms:
                y = p[x]
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        orbits.append(tuple(sorted(orbit)))
    return orbits


def _apply_half_sum(perm, vec: dict) -> dict:
    out = {}
    for i, c in vec.items():
        out[i] = out.get(i, Fraction(0)) + c / 2
        j = perm[i]
        out[j] = out.get(j, Fraction(0)) + c / 2
    return {i: c for i, c in out.items() if c}


def invariants(rep: Representation, t) -> InvariantBasis:
    """Basis of the subspace fixed by every generator in t.

    Permutation generators get orbit-sum bases; otherwise the basis is the
    kernel of the stacked (M_s - I).  Both paths are cross-checked against
    the averaging projector prod (I + M_s)/2^{|t|}.
    """
    t = tuple(sorted(t))
    for a, b in itertools.combinations(t, 2):
        if not rep.graph.commutes(a, b):
            raise ValueError(f"{t} is not independent: s{a + 1}, s{b + 1} do not commute")
    field = rep.field
    if not t:
        cols = ExactMatrix.identity(field, rep.dim)
        orbits = tuple((i,) for i in range(rep.dim))
        return InvariantBasis(t, cols, orbits)
    perms = rep.permutation_forms()
    if all(perms[s] is not None for s in t):
        return _orbit_invariants(rep, t, [perms[s] for s in t])
    return _kernel_invariants(rep, t)


def _orbit_invariants(rep, t, perms) -> InvariantBasis:
    field = rep.field
    orbits = _orbits_under(perms, rep.dim)
    cols = ExactMatrix.zeros(field, rep.dim, len(orbits))
    one = field.one
    for j, orbit in enumerate(orbits):
        for i in orbit:
            cols.set_entry(i, j, one)
    # cross-checks: stability of each orbit, and the projector applied to
    # every basis vector lands on the expected scaled orbit sum.
    for p in perms:
        for orbit in orbits:
            if sorted(p[i] for i in orbit) != list(orbit):
                raise ArithmeticError("orbit not stable under its own generator")
    member_orbit = {}
    for orbit in orbits:
        for i in orbit:
            member_orbit[i] = orbit
    for b in range(rep.dim):
        vec = {b: Fraction(1)}
        for p in perms:
            vec = _apply_half_sum(p, vec)
        orbit = member_orbit[b]
        expected = Fraction(1, len(orbit))
        if sorted(vec) != list(orbit) or any(vec[i] != expected for i in orbit):
            raise ArithmeticError("projector disagrees with orbit-sum invariants")
    return InvariantBasis(tuple(t), cols, tuple(orbits))


def _kernel_invariants(rep, t) -> InvariantBasis:
    field = rep.field
    ident = ExactMatrix.identity(field, rep.dim)
    stacked = ExactMatrix.vstack([rep.generators[s] - ident for s in t])
    _rank, kernel, _image = rank_kernel_image(stacked)
    projector = ident
    for s in t:
        projector = projector @ (rep.generators[s] + ident)
    projector = projector.scale(Fraction(1, 2 ** len(t)))
    prank = exact_rank(projector)
    if prank != kernel.cols:
        raise ArithmeticError(
            f"projector rank {prank} != kernel dimension {kernel.cols} for T={t}"
        )
    if not (projector @ kernel - kernel).is_zero():
        raise ArithmeticError(f"projector does not fix the kernel basis for T={t}")
    return InvariantBasis(tuple(t), kernel, None)


# ---------------------------------------------------------------------------
# combination functors


def _common_field(r1: Representation, r2: Representation):
    if r1.field == r2.field:
        return r1.field, r1, r2
    from math import lcm

    spec = field_for_m(lcm(r1.field.M, r2.field.M))
    return spec, promote(r1, spec), promote(r2, spec)


def promote(rep: Representation, spec: FieldSpec) -> Representation:
    """Re-express the generator matrices over a larger cyclotomic field."""
    if rep.field == spec:
        return rep
    mats = []
    for m in rep.generators:
        out = ExactMatrix.zeros(spec, m.rows, m.cols)
        for i in range(m.rows):
            for j in range(m.cols):
                e = m._rows[i][j]
                if not e.is_zero():
                    out.set_entry(i, j, embed_element(e, spec))
        mats.append(out)
    return Representation(rep.graph, spec, rep.dim, tuple(mats), rep.label, rep.warnings)


def external_tensor(r1: Representation, r2: Representation) -> Representation:
    """r1 boxtimes r2 on the disjoint-union graph."""
    field, r1, r2 = _common_field(r1, r2)
    graph = r1.graph.disjoint_union(r2.graph)
    i1 = ExactMatrix.identity(field, r1.dim)
    i2 = ExactMatrix.identity(field, r2.dim)
    mats = [m.kron(i2) for m in r1.generators] + [i1.kron(m) for m in r2.generators]
    label = f"{r1.label}[x]{r2.label}"
    return Representation(graph, field, r1.dim * r2.dim, tuple(mats), label)


def restrict(rep: Representation, vertices) -> Representation:
    """Restriction to the standard parabolic on an induced subgraph."""
    sub, vmap = induced_subgraph(rep.graph, vertices)
    mats = tuple(rep.generators[v] for v in vmap)
    return Representation(sub, rep.field, rep.dim, mats, f"{rep.label}|{list(vmap)}")


def sign_twist(rep: Representation) -> Representation:
    mats = tuple(-m for m in rep.generators)
    return Representation(rep.graph, rep.field, rep.dim, mats, f"{rep.label}(x)sgn")


def direct_sum(r1: Representation, r2: Representation) -> Representation:
    if r1.graph != r2.graph:
        raise ValueError("direct sum requires representations of the same graph")
    field, r1, r2 = _common_field(r1, r2)
    mats = tuple(
        ExactMatrix.block_diag(field, [a, b])
        for a, b in zip(r1.generators, r2.generators)
    )
    return Representation(
        r1.graph, field, r1.dim + r2.dim, mats, f"{r1.label}(+){r2.label}"
    )


def subspace_rep(rep: Representation, columns: ExactMatrix, vertices) -> Representation:
    """The action of the generators at `vertices` on the span of `columns`,
    expressed in that basis.  The span must be invariant under them."""
    sub, vmap = induced_subgraph(rep.graph, vertices)
    mats = []
    for v in vmap:
        moved = rep.generators[v] @ columns
        mats.append(solve_columns(columns, moved))
    return Representation(
        sub, rep.field, columns.cols, tuple(mats), f"{rep.label}^sub"
    )
