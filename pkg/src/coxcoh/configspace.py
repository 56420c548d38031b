"""The relative chain complex of the cube modulo its boundary and the
triple-collision locus, and its comparison with the Coxeter cochain complex
of the symmetric group acting on its own group algebra.

Cells are ordered partitions of {1..n} into parts of size 1 or 2; parts of
size >= 3 lie in the collision locus and end merges lie in the cube
boundary, so both are dropped by the boundary map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .cochain import (
    Block,
    CheckResult,
    GradedComplex,
    build_coxeter_complex,
    cohomology,
    sparse_product,
)
from .coxeter import parse_graph
from .exactfield import QQ, ExactMatrix
from .representations import (
    compose_perms,
    regular_rep,
    symmetric_group_elements,
)

__all__ = [
    "OrderedPartition",
    "SizeVectorBijection",
    "enumerate_cells",
    "sizes_to_indep",
    "indep_to_sizes",
    "relative_complex",
    "phi_config",
    "compare_homology",
    "configspace_suite",
    "stabilizer_check",
]


@dataclass(frozen=True)
class OrderedPartition:
    """An ordered partition (G_1,...,G_k) of {1..n}, parts of size 1 or 2."""

    parts: tuple  # tuple of sorted tuples, elements 1-based

    def __post_init__(self):
        seen = set()
        for p in self.parts:
            if len(p) not in (1, 2):
                raise ValueError(f"part {p} must have size 1 or 2")
            if tuple(sorted(p)) != p:
                raise ValueError("parts must be stored sorted")
            seen.update(p)
        n = self.n
        if seen != set(range(1, n + 1)):
            raise ValueError("parts must partition {1..n}")

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def size_vector(self) -> tuple:
        return tuple(len(p) for p in self.parts)

    def is_order_preserving(self) -> bool:
        for a, b in zip(self.parts, self.parts[1:]):
            if max(a) > min(b):
                return False
        return True

    def right_translate(self, sigma) -> "OrderedPartition":
        """(G_1,...,G_k) . sigma = (sigma^{-1}(G_1), ...).  sigma is one-line."""
        inv = [0] * len(sigma)
        for i, v in enumerate(sigma):
            inv[v - 1] = i + 1
        return OrderedPartition(
            tuple(tuple(sorted(inv[x - 1] for x in p)) for p in self.parts)
        )

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, p)) + "}" for p in self.parts) + ")"


@dataclass(frozen=True)
class SizeVectorBijection:
    """The pairing between a part-size vector and an independent set of
    transpositions: a size-2 part starting at position p contributes s_p."""

    sizes: tuple
    t: tuple  # 0-based generator indices in A_{n-1}


def sizes_to_indep(sizes) -> tuple:
    """0-based transposition indices for the pairs of a size vector."""
    out = []
    pos = 1
    for s in sizes:
        if s == 2:
            out.append(pos - 1)  # s_pos swaps (pos, pos+1); 0-based index pos-1
        pos += s
    return tuple(out)


def indep_to_sizes(t, n: int) -> tuple:
    """Inverse of sizes_to_indep for an independent set in A_{n-1}."""
    starts = {idx + 1 for idx in t}
    sizes = []
    pos = 1
    while pos <= n:
        if pos in starts:
            sizes.append(2)
            pos += 2
        else:
            sizes.append(1)
            pos += 1
    out = tuple(sizes)
    if sizes_to_indep(out) != tuple(sorted(t)):
        raise ValueError(f"{t} is not realizable by a size vector for n={n}")
    return out


def _size_vectors(n: int, k: int):
    twos = n - k
    ones = 2 * k - n
    if twos < 0 or ones < 0:
        return []
    return sorted(set(itertools.permutations([1] * ones + [2] * twos)))


def enumerate_cells(n: int, k: int) -> list:
    """All ordered partitions of {1..n} with k parts of size 1 or 2, ordered
    lexicographically by size vector and then by part contents."""
    if not 2 <= n <= 7:
        raise ValueError("n must be between 2 and 7")
    cells = []
    for sizes in _size_vectors(n, k):
        partial = []

        def fill(remaining, idx):
            if idx == len(sizes):
                cells.append(OrderedPartition(tuple(partial)))
                return
            for combo in itertools.combinations(sorted(remaining), sizes[idx]):
                partial.append(combo)
                fill(remaining - set(combo), idx + 1)
                partial.pop()

        fill(set(range(1, n + 1)), 0)
    return cells


def relative_complex(n: int) -> GradedComplex:
    """Chain complex of the cube relative to its boundary and the
    triple-collision locus: only interior merges of two singleton parts
    survive, with sign (-1)^i at interior position i."""
    if not 2 <= n <= 7:
        raise ValueError("n must be between 2 and 7")
    kmin = ceil(n / 2)
    blocks = {}
    index = {}
    for k in range(kmin, n + 1):
        cells = enumerate_cells(n, k)
        blocks[k] = [Block(c, 1) for c in cells]
        index[k] = {c: i for i, c in enumerate(cells)}
    maps = {}
    for k in range(kmin + 1, n + 1):
        rows = len(blocks.get(k - 1, ()))
        cols = len(blocks[k])
        m = ExactMatrix.zeros(QQ, rows, cols)
        for j, b in enumerate(blocks[k]):
            cell = b.label
            for i in range(1, cell.k):  # interior positions between parts i, i+1
                left, right = cell.parts[i - 1], cell.parts[i]
                if len(left) == 1 and len(right) == 1:
                    merged = OrderedPartition(
                        cell.parts[: i - 1]
                        + (tuple(sorted(left + right)),)
                        + cell.parts[i + 1 :]
                    )
                    row = index[k - 1][merged]
                    cur = m._rows[row][j]
                    m.set_entry(row, j, cur + QQ.element((-1) ** i))
        maps[k] = m
    return GradedComplex(QQ, blocks, maps, "chain")


# ---------------------------------------------------------------------------
# the chain isomorphism onto the Coxeter complex


def _canonical_sigma(cell: OrderedPartition):
    """The order-preserving representative P and sigma with cell = P.sigma."""
    n = cell.n
    w = [0] * n  # w = sigma^{-1} in one-line notation
    pos = 1
    for part in cell.parts:
        for offset, value in enumerate(part):
            w[pos - 1 + offset] = value
        pos += len(part)
    sigma = [0] * n
    for i, v in enumerate(w):
        sigma[v - 1] = i + 1
    return tuple(sigma)


def _phi_sign(t) -> int:
    """(-1)^(sum of the 1-based transposition indices of T)."""
    return -1 if sum(idx + 1 for idx in t) % 2 else 1


@dataclass(frozen=True)
class PhiConfigResult:
    n: int
    checks: tuple
    matrices: dict  # degree k -> matrix of phi_k : C_k -> X^{n-k}

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def phi_config(n: int, chain: GradedComplex = None, coxeter: GradedComplex = None) -> PhiConfigResult:
    """Build the degreewise map from cube cells to the Coxeter complex of
    the group algebra and verify it is a bijective chain map."""
    if not 2 <= n <= 7:
        raise ValueError("n must be between 2 and 7")
    g = parse_graph(f"A{n - 1}") if n >= 2 else None
    if chain is None:
        chain = relative_complex(n)
    if coxeter is None:
        coxeter = build_coxeter_complex(g, regular_rep(g))
    elements = symmetric_group_elements(n)
    elt_index = {w: i for i, w in enumerate(elements)}
    checks = []
    matrices = {}
    for k in chain.degrees:
        j = n - k
        tgt_dim = coxeter.dim(j)
        src_dim = chain.dim(k)
        m = ExactMatrix.zeros(QQ, tgt_dim, src_dim)
        block_info = {
            b.label: (off, b.payload)
            for b, off in zip(coxeter.blocks.get(j, ()), coxeter.block_offsets(j))
        }
        used_rows = set()
        ok = True
        detail = ""
        for col, b in enumerate(chain.blocks[k]):
            cell = b.label
            t = sizes_to_indep(cell.size_vector())
            sigma = _canonical_sigma(cell)
            off, basis = block_info[t]
            orbit_col = basis.orbit_column()[elt_index[sigma]]
            row = off + orbit_col
            if row in used_rows:
                ok = False
                detail = f"two cells map to the same coset at degree {k}"
            used_rows.add(row)
            m.set_entry(row, col, QQ.element(_phi_sign(t)))
        if ok and len(used_rows) != tgt_dim or src_dim != tgt_dim:
            ok = False
            detail = detail or f"dimension mismatch at degree {k}: {src_dim} vs {tgt_dim}"
        checks.append(CheckResult(f"phi-bijective[{k}]", ok, detail))
        matrices[k] = m
    for k in sorted(chain.maps):
        # phi_{k-1} . boundary_k == d^{n-k} . phi_k
        lhs = sparse_product(matrices[k - 1], chain.maps[k])
        d = coxeter.maps.get(n - k)
        rhs = sparse_product(d, matrices[k]) if d is not None else {}
        ok = lhs == rhs
        checks.append(
            CheckResult(
                f"phi-chain-map[{k}]",
                ok,
                "" if ok else f"differentials disagree under phi at degree {k}",
            )
        )
    return PhiConfigResult(n, tuple(checks), matrices)


def compare_homology(n: int, mode: str = "auto", seed: int = 0,
                     chain: GradedComplex = None, coxeter: GradedComplex = None):
    """Homology of the relative cube complex against Coxeter cohomology of
    the group algebra, aligned by k <-> n-k."""
    if chain is None:
        chain = relative_complex(n)
    if coxeter is None:
        g = parse_graph(f"A{n - 1}")
        coxeter = build_coxeter_complex(g, regular_rep(g))
    h_chain = cohomology(chain, mode, seed)
    h_cox = cohomology(coxeter, mode, seed)
    checks = []
    degrees = sorted(set(h_chain.dims) | {n - j for j in h_cox.dims})
    for k in degrees:
        a = h_chain.dims.get(k, 0)
        b = h_cox.dims.get(n - k, 0)
        checks.append(
            CheckResult(
                f"homology-match[H_{k}~H^{n - k}]",
                a == b,
                f"relative {a}, coxeter {b}",
            )
        )
    return checks, h_chain, h_cox


def configspace_suite(n: int, mode: str = "auto", seed: int = 0):
    """The full comparison for one n: bijective chain map, homology match,
    and (n <= 5) the brute-force stabilizer property.

    Returns (checks, relative homology report, Coxeter cohomology report).
    """
    g = parse_graph(f"A{n - 1}")
    chain = relative_complex(n)
    coxeter = build_coxeter_complex(g, regular_rep(g))
    phi = phi_config(n, chain=chain, coxeter=coxeter)
    checks = list(phi.checks)
    cmp_checks, h_chain, h_cox = compare_homology(n, mode, seed, chain, coxeter)
    checks.extend(cmp_checks)
    if n <= 5:
        checks.extend(stabilizer_check(n))
    return checks, h_chain, h_cox


def _group_generated_by(t, n: int):
    """All products of the commuting transpositions in t (0-based indices)."""
    perms = [tuple(range(1, n + 1))]
    for idx in t:
        s = list(range(1, n + 1))
        s[idx], s[idx + 1] = s[idx + 1], s[idx]
        s = tuple(s)
        perms = perms + [compose_perms(s, w) for w in perms]
    return set(perms)


def stabilizer_check(n: int) -> list:
    """Brute force: the stabilizer of each order-preserving cell under the
    right action is exactly the subgroup generated by its transpositions."""
    if n > 5:
        raise ValueError("brute-force stabilizer check is limited to n <= 5")
    elements = symmetric_group_elements(n)
    out = []
    for k in range(ceil(n / 2), n + 1):
        for cell in enumerate_cells(n, k):
            if not cell.is_order_preserving():
                continue
            t = sizes_to_indep(cell.size_vector())
            expected = _group_generated_by(t, n)
            stab = {w for w in elements if cell.right_translate(w) == cell}
            out.append(
                CheckResult(
                    f"stabilizer[{cell}]",
                    stab == expected,
                    f"|stab|={len(stab)}, |<T>|={len(expected)}",
                )
            )
    return out
