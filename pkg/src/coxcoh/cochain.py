"""Graded complexes: the Coxeter cochain complex, the reduced simplicial
cochain complex of the independence complex, and cohomology computation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coxeter import CoxeterGraph, independent_sets, max_independent_size
from .exactfield import (
    ExactMatrix,
    FieldSpec,
    rank_of,
    resolve_mode,
    solve_columns,
)
from .representations import Representation, InvariantBasis, invariants

__all__ = [
    "Block",
    "GradedComplex",
    "CohomologyReport",
    "CheckResult",
    "build_coxeter_complex",
    "cohomology",
    "reordering_isomorphism",
    "simplicial_reduced_complex",
    "rescaling_chain_iso",
    "cohomology_basis",
    "sparse_columns",
    "compose_is_zero",
    "sparse_product",
    "products_equal",
]


@dataclass(frozen=True)
class Block:
    """One direct summand of a graded piece: a label, its dimension, and an
    optional payload (the chosen invariant basis, for Coxeter complexes)."""

    label: object
    dim: int
    payload: object = None


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class GradedComplex:
    """Graded spaces with chosen bases and differential matrices.

    orientation "cochain": maps[k] goes degree k -> k+1.
    orientation "chain":   maps[k] goes degree k -> k-1.
    d . d = 0 is verified on construction.
    """

    def __init__(self, field: FieldSpec, blocks: dict, maps: dict, orientation: str,
                 check: bool = True):
        if orientation not in ("cochain", "chain"):
            raise ValueError(f"bad orientation {orientation!r}")
        self.field = field
        self.blocks = {k: list(v) for k, v in blocks.items()}
        self.maps = dict(maps)
        self.orientation = orientation
        self._check_shapes()
        if check:
            self.verify_d_squared()

    def _check_shapes(self):
        step = 1 if self.orientation == "cochain" else -1
        for k, m in self.maps.items():
            if m.cols != self.dim(k):
                raise ValueError(f"map at degree {k} has {m.cols} cols, space has {self.dim(k)}")
            if m.rows != self.dim(k + step):
                raise ValueError(f"map at degree {k} has {m.rows} rows, target has {self.dim(k + step)}")

    @property
    def degrees(self) -> range:
        if not self.blocks:
            return range(0, 0)
        ks = sorted(self.blocks)
        return range(ks[0], ks[-1] + 1)

    def dim(self, k: int) -> int:
        return sum(b.dim for b in self.blocks.get(k, ()))

    def space_dims(self) -> list:
        return [self.dim(k) for k in self.degrees]

    def block_offsets(self, k: int):
        offs = []
        pos = 0
        for b in self.blocks.get(k, ()):
            offs.append(pos)
            pos += b.dim
        return offs

    def block_index(self, k: int):
        """label -> (block position, offset) for degree k."""
        out = {}
        for pos, (b, off) in enumerate(zip(self.blocks.get(k, ()), self.block_offsets(k))):
            out[b.label] = (pos, off)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in self.degrees)

    def verify_d_squared(self) -> None:
        step = 1 if self.orientation == "cochain" else -1
        for k in self.maps:
            nxt = self.maps.get(k + step)
            if nxt is not None and not compose_is_zero(nxt, self.maps[k]):
                raise ArithmeticError(f"d.d != 0 between degrees {k} and {k + 2 * step}")


def cohomology_basis(cx: GradedComplex, k: int):
    """(image basis of the incoming map, representative cocycles) at degree k.

    The representatives are kernel columns independent modulo the image, so
    their count is the (co)homology dimension.
    """
    from .exactfield import _rref, rank_kernel_image

    field = cx.field
    dim = cx.dim(k)
    step = 1 if cx.orientation == "cochain" else -1
    din = cx.maps.get(k - step)
    dout = cx.maps.get(k)
    if din is None:
        image = ExactMatrix.zeros(field, dim, 0)
    else:
        _r, _k, image = rank_kernel_image(din)
    if dout is None:
        kernel = ExactMatrix.identity(field, dim)
    else:
        _r, kernel, _i = rank_kernel_image(dout)
    if dim == 0:
        return image, ExactMatrix.zeros(field, 0, 0)
    stacked = ExactMatrix.hstack([image, kernel])
    rows = [list(r) for r in stacked._rows]
    _rank, pivots = _rref(rows, field)
    rep_cols = [p - image.cols for p in pivots if p >= image.cols]
    reps = ExactMatrix.zeros(field, dim, len(rep_cols))
    for j, c in enumerate(rep_cols):
        for i in range(dim):
            reps._rows[i][j] = kernel._rows[i][c]
    return image, reps


def sparse_columns(m: ExactMatrix):
    """Column-major nonzero lists [(row, value), ...] per column."""
    cols = [[] for _ in range(m.cols)]
    for i, row in enumerate(m._rows):
        for j, e in enumerate(row):
            if not e.is_zero():
                cols[j].append((i, e))
    return cols


def compose_is_zero(f: ExactMatrix, g: ExactMatrix) -> bool:
    """Whether f @ g == 0, exploiting sparsity."""
    fcols = sparse_columns(f)
    gcols = sparse_columns(g)
    for col in gcols:
        acc: dict = {}
        for k, gv in col:
            for i, fv in fcols[k]:
                cur = acc.get(i)
                acc[i] = fv * gv if cur is None else cur + fv * gv
        if any(v for v in acc.values()):
            return False
    return True


def sparse_product(f: ExactMatrix, g: ExactMatrix) -> dict:
    """The nonzero entries of f @ g as {(row, col): value}."""
    fcols = sparse_columns(f)
    out: dict = {}
    for j, col in enumerate(sparse_columns(g)):
        acc: dict = {}
        for k, gv in col:
            for i, fv in fcols[k]:
                cur = acc.get(i)
                acc[i] = fv * gv if cur is None else cur + fv * gv
        for i, v in acc.items():
            if not v.is_zero():
                out[(i, j)] = v
    return out


def products_equal(f1: ExactMatrix, g1: ExactMatrix, f2: ExactMatrix, g2: ExactMatrix) -> bool:
    """Whether f1 @ g1 == f2 @ g2 without forming dense products."""
    return sparse_product(f1, g1) == sparse_product(f2, g2)


@dataclass(frozen=True)
class CohomologyReport:
    """Per-degree (co)homology dimensions for one computed complex."""

    dims: dict  # degree -> dimension
    euler: int
    mode: str  # "exact" or "modular"
    block_structure: dict  # degree -> list of (label string, dim)
    space_dims: dict  # degree -> dimension of the graded piece

    def dims_list(self) -> list:
        if not self.space_dims:
            return []
        top = max(self.space_dims)
        return [self.dims.get(k, 0) for k in range(0, top + 1)]

    def space_dims_list(self) -> list:
        if not self.space_dims:
            return []
        top = max(self.space_dims)
        return [self.space_dims.get(k, 0) for k in range(0, top + 1)]

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def total(self) -> int:
        return sum(self.dims.values())


def cohomology(complex_: GradedComplex, mode: str = "auto", seed: int = 0) -> CohomologyReport:
    """Dimensions of H at every degree: dim ker(out) - rank(in)."""
    step = 1 if complex_.orientation == "cochain" else -1
    ranks = {}
    used_modular = False
    for k, m in complex_.maps.items():
        actual = resolve_mode(m, mode)
        used_modular = used_modular or actual == "modular"
        ranks[k] = rank_of(m, actual, seed=seed)
    dims = {}
    for k in complex_.degrees:
        out_rank = ranks.get(k, 0)
        in_rank = ranks.get(k - step, 0)
        h = complex_.dim(k) - out_rank - in_rank
        if h < 0:
            raise ArithmeticError(f"negative cohomology dimension at degree {k}")
        dims[k] = h
    euler = complex_.euler_characteristic()
    h_euler = sum((-1) ** k * v for k, v in dims.items())
    if euler != h_euler:
        raise ArithmeticError(f"Euler characteristic mismatch: spaces {euler}, cohomology {h_euler}")
    structure = {
        k: [(_label_str(b.label), b.dim) for b in complex_.blocks.get(k, ())]
        for k in complex_.degrees
    }
    space_dims = {k: complex_.dim(k) for k in complex_.degrees}
    return CohomologyReport(
        dims=dims,
        euler=euler,
        mode="modular" if used_modular else "exact",
        block_structure=structure,
        space_dims=space_dims,
    )


def _label_str(label) -> str:
    if isinstance(label, tuple) and all(isinstance(x, int) for x in label):
        return "{" + ",".join(f"s{i + 1}" for i in label) + "}"
    return str(label)


# ---------------------------------------------------------------------------
# the Coxeter cochain complex


def build_coxeter_complex(
    g: CoxeterGraph, rep: Representation, order=None
) -> GradedComplex:
    """X^k = direct sum over independent k-sets T of the invariants A^<T>,
    with d_{T,s}(v) = (-1)^{#{t in T : t < s}} (v + s v).

    `order` optionally re-orders the generators (a sequence listing them in
    increasing order); block layout and bases are unaffected, only signs.
    """
    if rep.graph != g:
        raise ValueError("representation is over a different graph")
    position = {s: i for i, s in enumerate(order)} if order is not None else None
    kmax = max_independent_size(g)
    bases = {}
    blocks = {}
    for k in range(kmax + 1):
        blocks[k] = []
        for t in independent_sets(g, k):
            basis = invariants(rep, t)
            bases[t] = basis
            blocks[k].append(Block(t, basis.dim, basis))
    perms = rep.permutation_forms()
    maps = {}
    for k in range(kmax):
        maps[k] = _coxeter_differential(g, rep, blocks, bases, k, perms, position)
    return GradedComplex(rep.field, blocks, maps, "cochain")


def _sign_count(t, s, position) -> int:
    if position is None:
        return sum(1 for x in t if x < s)
    return sum(1 for x in t if position[x] < position[s])


def _coxeter_differential(g, rep, blocks, bases, k, perms, position):
    field = rep.field
    src_blocks = blocks[k]
    tgt_blocks = blocks[k + 1]
    src_offsets = _offsets(src_blocks)
    tgt_lookup = {b.label: off for b, off in zip(tgt_blocks, _offsets(tgt_blocks))}
    rows = sum(b.dim for b in tgt_blocks)
    cols = sum(b.dim for b in src_blocks)
    d = ExactMatrix.zeros(field, rows, cols)
    for b, src_off in zip(src_blocks, src_offsets):
        t = b.label
        src_basis = bases[t]
        for s in range(g.n):
            if s in t or any(not g.commutes(s, x) for x in t):
                continue
            t_new = tuple(sorted(t + (s,)))
            tgt_off = tgt_lookup[t_new]
            tgt_basis = bases[t_new]
            sign = (-1) ** _sign_count(t, s, position)
            if (
                src_basis.orbits is not None
                and tgt_basis.orbits is not None
                and perms[s] is not None
            ):
                _orbit_block(d, src_basis, tgt_basis, perms[s], sign, src_off, tgt_off, field)
            else:
                _solve_block(d, rep, s, src_basis, tgt_basis, sign, src_off, tgt_off)
    return d


def _offsets(blocks):
    offs = []
    pos = 0
    for b in blocks:
        offs.append(pos)
        pos += b.dim
    return offs


def _orbit_block(d, src_basis, tgt_basis, perm, sign, src_off, tgt_off, field):
    lookup = tgt_basis.orbit_column()
    tgt_orbits = tgt_basis.orbits
    for j, orbit in enumerate(src_basis.orbits):
        moved = sorted(set(orbit) | {perm[i] for i in orbit})
        col = lookup[orbit[0]]
        if list(tgt_orbits[col]) != moved:
            raise ArithmeticError("orbit image does not match a target basis orbit")
        coeff = 2 if moved == list(orbit) else 1
        value = field.element(sign * coeff)
        d.set_entry(tgt_off + col, src_off + j, value)


def _solve_block(d, rep, s, src_basis, tgt_basis, sign, src_off, tgt_off):
    ident = ExactMatrix.identity(rep.field, rep.dim)
    moved = (ident + rep.generators[s]) @ src_basis.columns
    coords = solve_columns(tgt_basis.columns, moved)
    for i in range(coords.rows):
        for j in range(coords.cols):
            e = coords._rows[i][j]
            if not e.is_zero():
                d.set_entry(tgt_off + i, src_off + j, e if sign == 1 else -e)


def reordering_isomorphism(g: CoxeterGraph, rep: Representation, order):
    """The complex built under an alternative generator order, plus the
    verified block-diagonal sign isomorphism onto it.

    Returns (reordered complex, CheckResult).
    """
    order = tuple(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must list every generator exactly once")
    base = build_coxeter_complex(g, rep)
    other = build_coxeter_complex(g, rep, order=order)
    position = {s: i for i, s in enumerate(order)}
    iso = {}
    for k in base.degrees:
        m = ExactMatrix.zeros(rep.field, other.dim(k), base.dim(k))
        off = 0
        for b in base.blocks[k]:
            eps = _reorder_sign(b.label, position)
            val = rep.field.element(eps)
            for i in range(b.dim):
                m.set_entry(off + i, off + i, val)
            off += b.dim
        iso[k] = m
    ok = True
    detail = ""
    for k in base.maps:
        lhs = iso[k + 1] @ base.maps[k]
        rhs = other.maps[k] @ iso[k]
        if lhs != rhs:
            ok = False
            detail = f"sign isomorphism fails to intertwine differentials at degree {k}"
            break
    return other, CheckResult("reordering-isomorphism", ok, detail)


def _reorder_sign(t, position) -> int:
    """Sign of the permutation taking index order on t to the new order."""
    reordered = sorted(t, key=lambda s: position[s])
    perm = [t.index(x) for x in reordered]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# the reduced simplicial cochain complex of the independence complex


def simplicial_reduced_complex(g: CoxeterGraph, d: int = 1,
                               field: FieldSpec = None) -> GradedComplex:
    """Reduced simplicial cochains on |I(S)| with coefficients Q^d, indexed
    so that degree k holds the (k-1)-simplices; the augmentation sits in
    degree 0."""
    from .exactfield import QQ

    field = field or QQ
    kmax = max_independent_size(g)
    blocks = {}
    for k in range(kmax + 1):
        blocks[k] = [Block(t, d) for t in independent_sets(g, k)]
    maps = {}
    for k in range(kmax):
        src_blocks = blocks[k]
        tgt_blocks = blocks[k + 1]
        tgt_lookup = {b.label: off for b, off in zip(tgt_blocks, _offsets(tgt_blocks))}
        m = ExactMatrix.zeros(field, sum(b.dim for b in tgt_blocks), sum(b.dim for b in src_blocks))
        for b, src_off in zip(src_blocks, _offsets(src_blocks)):
            t = b.label
            for s in range(g.n):
                if s in t or any(not g.commutes(s, x) for x in t):
                    continue
                t_new = tuple(sorted(t + (s,)))
                tgt_off = tgt_lookup[t_new]
                val = field.element((-1) ** _sign_count(t, s, None))
                for i in range(d):
                    m.set_entry(tgt_off + i, src_off + i, val)
        maps[k] = m
    return GradedComplex(field, blocks, maps, "cochain")


def rescaling_chain_iso(coxeter: GradedComplex, simplicial: GradedComplex) -> CheckResult:
    """Verify that dividing degree k by 2^k maps the trivial-coefficient
    Coxeter complex isomorphically onto the reduced simplicial complex."""
    for k in coxeter.degrees:
        if coxeter.dim(k) != simplicial.dim(k):
            return CheckResult(
                "rescaling-chain-iso", False,
                f"dimension mismatch at degree {k}: {coxeter.dim(k)} vs {simplicial.dim(k)}",
            )
    for k in coxeter.maps:
        # f_{k+1} d_C = d_simp f_k with f_k = id / 2^k.
        lhs = coxeter.maps[k].scale(Fraction(1, 2 ** (k + 1)))
        rhs = simplicial.maps[k].scale(Fraction(1, 2 ** k))
        if lhs != rhs:
            return CheckResult(
                "rescaling-chain-iso", False, f"differentials disagree at degree {k}"
            )
    return CheckResult("rescaling-chain-iso", True)
