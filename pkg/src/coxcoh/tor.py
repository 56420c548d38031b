"""Tor homology of the order-3 fatpoint algebra Q[x_1..x_m]/m^3, computed
from the complex with spaces m^{tensor i} and alternating multiplication
differentials, and its comparison with Coxeter cohomology of tensor powers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cochain import (
    Block,
    CheckResult,
    GradedComplex,
    build_coxeter_complex,
    cohomology,
    sparse_product,
)
from .coxeter import CoxeterGraph, parse_graph
from .exactfield import QQ, BudgetExceededError, ExactMatrix
from .representations import tensor_power_rep, trivial_rep

__all__ = [
    "MBasis",
    "SigmaBlock",
    "m_basis",
    "msum_blocks",
    "tor_complex",
    "phi_tor",
    "compare_tor",
    "tor_suite",
]

_DEFAULT_MAX_DIM = 100_000


@dataclass(frozen=True)
class MBasis:
    """Monomial basis of the maximal ideal: x_1..x_m, then x_a x_b (a <= b)."""

    m: int
    monomials: tuple  # (a,) for degree 1, (a, b) with a <= b for degree 2

    @property
    def dim(self) -> int:
        return len(self.monomials)


def m_basis(m: int) -> MBasis:
    if m < 1:
        raise ValueError("m must be >= 1")
    degree1 = [(a,) for a in range(1, m + 1)]
    degree2 = [(a, b) for a in range(1, m + 1) for b in range(a, m + 1)]
    return MBasis(m, tuple(degree1 + degree2))


def _multiply(mon_a, mon_b):
    """Product of two monomials in Q[x]/m^3; None when the degree reaches 3."""
    if len(mon_a) + len(mon_b) >= 3:
        return None
    return tuple(sorted(mon_a + mon_b))


def tor_complex(m: int, i_max: int, max_dim: int = _DEFAULT_MAX_DIM) -> GradedComplex:
    """Degree i carries m^{tensor i}; the differential is the alternating
    sum of the multiplications of adjacent tensor factors, and the map down
    to degree 0 (the ground field) is zero."""
    if not 1 <= m <= 3:
        raise ValueError("m must be between 1 and 3")
    if not 1 <= i_max <= 6:
        raise ValueError("i_max must be between 1 and 6")
    base = m_basis(m)
    if base.dim**i_max > max_dim:
        raise BudgetExceededError(
            f"m^(tensor {i_max}) has dimension {base.dim ** i_max} > budget {max_dim}"
        )
    blocks = {0: [Block("K", 1)]}
    bases = {0: None}
    index = {}
    for i in range(1, i_max + 1):
        basis = list(itertools.product(range(base.dim), repeat=i))
        blocks[i] = [Block(tuple(base.monomials[k] for k in word), 1) for word in basis]
        index[i] = {word: pos for pos, word in enumerate(basis)}
    maps = {1: ExactMatrix.zeros(QQ, 1, base.dim)}
    for i in range(2, i_max + 1):
        mat = ExactMatrix.zeros(QQ, len(blocks[i - 1]), len(blocks[i]))
        for col, word in enumerate(itertools.product(range(base.dim), repeat=i)):
            mons = [base.monomials[k] for k in word]
            for a in range(1, i):  # multiply tensor factors a, a+1
                prod = _multiply(mons[a - 1], mons[a])
                if prod is None:
                    continue
                target = word[: a - 1] + (base.monomials.index(prod),) + word[a + 1 :]
                row = index[i - 1][target]
                cur = mat._rows[row][col]
                mat.set_entry(row, col, cur + QQ.element((-1) ** a))
        maps[i] = mat
    return GradedComplex(QQ, blocks, maps, "chain")


@dataclass(frozen=True)
class SigmaBlock:
    """One summand of the tensor-power decomposition of m^{tensor i}: the
    subset of slots holding degree-2 factors and its set of transpositions."""

    i: int
    j: int
    sigma: tuple  # 1-based slot positions with a degree-2 factor
    t_sigma: tuple  # 0-based generator indices in A_{i+j-1}


def msum_blocks(i: int) -> list:
    """All 2^i blocks of the decomposition, with the transposition rule
    k = h + #({1..h-1} in Sigma) applied to each slot h in Sigma."""
    if not 1 <= i <= 6:
        raise ValueError("i must be between 1 and 6")
    out = []
    for j in range(i + 1):
        for sigma in itertools.combinations(range(1, i + 1), j):
            t = []
            for h in sigma:
                k = h + sum(1 for x in sigma if x < h)
                t.append(k - 1)  # 0-based generator index
            for a, b in itertools.combinations(t, 2):
                if abs(a - b) < 2:
                    raise ArithmeticError(f"rule produced adjacent transpositions {t}")
            out.append(SigmaBlock(i, j, sigma, tuple(t)))
    for m in (1, 2, 3):
        lhs = sum(m ** (b.i - b.j) * (m * (m + 1) // 2) ** b.j for b in out)
        if lhs != (m + m * (m + 1) // 2) ** i:
            raise ArithmeticError("block dimensions do not add up")
    return out


# ---------------------------------------------------------------------------
# the isomorphism onto the direct sum of Coxeter complexes


def _coxeter_tensor_complex(N: int, m: int) -> GradedComplex:
    """X(A_{N-1}, (Q^m)^{tensor N}); N = 1 gives the empty graph on Q^m... """
    if N == 1:
        g = CoxeterGraph(0, (), name="A0")
        return build_coxeter_complex(g, trivial_rep(g, d=m))
    g = parse_graph(f"A{N - 1}")
    return build_coxeter_complex(g, tensor_power_rep(g, m))


def _phi_sign(t) -> int:
    return -1 if sum(idx + 1 for idx in t) % 2 else 1


@dataclass(frozen=True)
class PhiTorResult:
    m: int
    i_max: int
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def phi_tor(m: int, i_max: int, coxeter_complexes: dict = None,
            tor: GradedComplex = None, max_dim: int = _DEFAULT_MAX_DIM) -> PhiTorResult:
    """Assemble, degree by degree, the map from the direct sum over j of
    X^j(A_{i+j-1}, (Q^m)^{tensor(i+j)}) onto m^{tensor i}, and verify that
    it is a bijective chain map."""
    if tor is None:
        tor = tor_complex(m, i_max, max_dim=max_dim)
    base = m_basis(m)
    cox = coxeter_complexes if coxeter_complexes is not None else {}

    def complex_for(N):
        if N not in cox:
            cox[N] = _coxeter_tensor_complex(N, m)
        return cox[N]

    words = {N: list(itertools.product(range(m), repeat=N)) for N in range(1, 2 * i_max + 1)}
    tor_index = {
        i: {tuple(b.label): pos for pos, b in enumerate(tor.blocks[i])}
        for i in range(1, i_max + 1)
    }

    checks = []
    phis = {}
    layouts = {}
    for i in range(1, i_max + 1):
        layout = []  # (N, j, offset in the direct sum, block size)
        offset = 0
        for j in range(i + 1):
            N = i + j
            cx = complex_for(N)
            layout.append((N, j, offset, cx.dim(j)))
            offset += cx.dim(j)
        layouts[i] = layout
        total = offset
        tgt_dim = tor.dim(i)
        mat = ExactMatrix.zeros(QQ, tgt_dim, total)
        used = set()
        ok = total == tgt_dim
        detail = "" if ok else f"dimension mismatch at degree {i}: {total} vs {tgt_dim}"
        for N, j, off, _size in layout:
            cx = complex_for(N)
            for b, boff in zip(cx.blocks.get(j, ()), cx.block_offsets(j)):
                t = b.label
                sign = _phi_sign(t)
                starts = set(t)  # 0-based tensor positions of the pairs
                for col_local, orbit in enumerate(b.payload.orbits):
                    word = words[N][orbit[0]]
                    unequal = sum(1 for p in starts if word[p] != word[p + 1])
                    mons = []
                    p = 0
                    while p < N:
                        if p in starts:
                            mons.append(tuple(sorted((word[p] + 1, word[p + 1] + 1))))
                            p += 2
                        else:
                            mons.append((word[p] + 1,))
                            p += 1
                    row = tor_index[i][tuple(mons)]
                    if row in used:
                        ok = False
                        detail = f"two invariants map to one monomial at degree {i}"
                    used.add(row)
                    coeff = Fraction(sign) * Fraction(2) ** (unequal - j)
                    mat.set_entry(row, off + boff + col_local, QQ.element(coeff))
        if ok and len(used) != tgt_dim:
            ok = False
            detail = f"map does not cover every monomial at degree {i}"
        checks.append(CheckResult(f"phi-tor-bijective[{i}]", ok, detail))
        phis[i] = mat

    # degree-0 piece: the ground field on both sides, identity map
    phis[0] = ExactMatrix.identity(QQ, 1)

    for i in range(1, i_max + 1):
        dsum = _direct_sum_differential(i, layouts, phis, complex_for)
        lhs = sparse_product(phis[i - 1], dsum)
        rhs = sparse_product(tor.maps[i], phis[i])
        ok = lhs == rhs
        checks.append(
            CheckResult(
                f"phi-tor-chain-map[{i}]",
                ok,
                "" if ok else f"differentials disagree at degree {i}",
            )
        )
    return PhiTorResult(m, i_max, tuple(checks))


def _direct_sum_differential(i, layouts, phis, complex_for):
    """The degree i -> i-1 map of the direct-sum complex: each Coxeter
    complex keeps N = i + j fixed while j increases by one."""
    src_layout = layouts[i]
    if i == 1:
        # target is the ground field; the Coxeter d^0 of N=1 has no target
        return ExactMatrix.zeros(QQ, 1, sum(size for _N, _j, _off, size in src_layout))
    tgt_layout = layouts[i - 1]
    tgt_total = sum(size for _N, _j, _off, size in tgt_layout)
    src_total = sum(size for _N, _j, _off, size in src_layout)
    out = ExactMatrix.zeros(QQ, tgt_total, src_total)
    tgt_lookup = {(N, j): off for N, j, off, _size in tgt_layout}
    for N, j, src_off, size in src_layout:
        cx = complex_for(N)
        d = cx.maps.get(j)
        if d is None or (N, j + 1) not in tgt_lookup:
            if d is not None and not d.is_zero():
                raise ArithmeticError(f"missing target block for nonzero d^{j} of N={N}")
            continue
        tgt_off = tgt_lookup[(N, j + 1)]
        for jj in range(d.cols):
            for ii, e in enumerate(d.column(jj)):
                if not e.is_zero():
                    out.set_entry(tgt_off + ii, src_off + jj, e)
    return out


# ---------------------------------------------------------------------------
# comparison of the two sides


def compare_tor(m: int, i_max: int, mode: str = "auto", seed: int = 0,
                coxeter_complexes: dict = None, max_dim: int = _DEFAULT_MAX_DIM):
    """Homology of the tor complex against the sum over j of the Coxeter
    cohomology of tensor powers, for 1 <= i <= i_max."""
    if i_max > 5:
        raise ValueError("compare_tor needs the complex one degree higher; i_max <= 5")
    tor = tor_complex(m, i_max + 1, max_dim=max_dim)
    left = cohomology(tor, mode, seed)
    cox = coxeter_complexes if coxeter_complexes is not None else {}

    def complex_for(N):
        if N not in cox:
            cox[N] = _coxeter_tensor_complex(N, m)
        return cox[N]

    cox_dims = {}
    checks = []
    right = {}
    for i in range(1, i_max + 1):
        total = 0
        pieces = {}
        for j in range(i + 1):
            N = i + j
            if N not in cox_dims:
                cox_dims[N] = cohomology(complex_for(N), mode, seed).dims
            piece = cox_dims[N].get(j, 0)
            if piece:
                pieces[j] = piece
            total += piece
        right[i] = total
        a = left.dims.get(i, 0)
        checks.append(
            CheckResult(
                f"tor-match[{i}]",
                a == total,
                f"tor {a}, coxeter sum {total} {pieces}",
            )
        )
    return checks, left, right


def tor_suite(m: int, i_max: int, mode: str = "auto", seed: int = 0,
              max_dim: int = _DEFAULT_MAX_DIM):
    """phi_tor plus compare_tor with the Coxeter complexes built once."""
    cox: dict = {}
    phi = phi_tor(m, i_max, coxeter_complexes=cox, max_dim=max_dim)
    cmp_checks, left, right = compare_tor(
        m, i_max, mode, seed, coxeter_complexes=cox, max_dim=max_dim
    )
    return list(phi.checks) + cmp_checks, left, right
