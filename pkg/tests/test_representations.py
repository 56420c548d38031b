import itertools
import math
from fractions import Fraction

import pytest

from coxcoh.coxeter import parse_graph
from coxcoh.exactfield import ExactMatrix, QQ, exact_rank, field_for_m
from coxcoh.representations import (
    build_rep,
    direct_sum,
    external_tensor,
    invariants,
    natural_perm_rep,
    perm_sign,
    promote,
    reflection_rep,
    regular_rep,
    restrict,
    sign_rep,
    sign_twist,
    specht_rep,
    subspace_rep,
    symmetric_group_elements,
    tensor_power_rep,
    trivial_rep,
)


def hook_length_dim(lam):
    """Number of standard Young tableaux, the Specht dimension oracle."""
    n = sum(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in lam[i + 1 :] if r > j)
            prod *= arm + leg + 1
    return math.factorial(n) // prod


class TestConstructors:
    def test_a1_reflection_is_minus_one(self):
        rep = reflection_rep(parse_graph("A1"))
        assert rep.dim == 1
        assert rep.generators[0][0, 0].as_fraction() == -1

    def test_a2_reflection_matrices(self):
        rep = reflection_rep(parse_graph("A2"))
        m1 = rep.generators[0]
        # alpha1 -> -alpha1, alpha2 -> alpha2 + alpha1 (2cos(pi/3) = 1)
        assert m1[0, 0].as_fraction() == -1
        assert m1[0, 1].as_fraction() == 1
        assert m1[1, 1].as_fraction() == 1

    def test_i2_5_braid_relation_exact(self):
        rep = reflection_rep(parse_graph("I2(5)"))
        assert rep.field.degree == 2
        prod = rep.generators[0] @ rep.generators[1]
        acc = ExactMatrix.identity(rep.field, 2)
        for _ in range(5):
            acc = acc @ prod
        assert acc == ExactMatrix.identity(rep.field, 2)

    def test_relation_checks_run_for_all_reflection_groups(self):
        for name in ("B3", "F4", "H3", "H4", "I2(8)", "D5", "E6"):
            reflection_rep(parse_graph(name))  # raises on any failed relation

    def test_infinite_label_warns(self):
        rep = reflection_rep(parse_graph("custom;n=2;edges=1-2:inf"))
        assert rep.warnings

    def test_regular_dimension(self):
        assert regular_rep(parse_graph("A2")).dim == 6

    def test_tensor_power(self):
        rep = tensor_power_rep(parse_graph("A2"), 2)
        assert rep.dim == 8
        # s_1 swaps the first two tensor factors: word (0,1,0) <-> (1,0,0)
        words = list(itertools.product(range(2), repeat=3))
        src = words.index((0, 1, 0))
        tgt = words.index((1, 0, 0))
        assert not rep.generators[0]._rows[tgt][src].is_zero()

    def test_trivial_and_sign(self):
        g = parse_graph("A3")
        assert all(m == ExactMatrix.identity(QQ, 2) for m in trivial_rep(g, 2).generators)
        assert all(m[0, 0].as_fraction() == -1 for m in sign_rep(g).generators)

    def test_natural_perm(self):
        rep = natural_perm_rep(parse_graph("A3"))
        assert rep.dim == 4

    def test_kind_dispatch(self):
        g = parse_graph("A2")
        assert build_rep("trivial:3", g).dim == 3
        assert build_rep("tensor:2", g).dim == 8
        assert build_rep("specht:2,1", g).dim == 2
        with pytest.raises(ValueError):
            build_rep("mystery", g)

    def test_type_a_required(self):
        with pytest.raises(ValueError):
            regular_rep(parse_graph("B3"))


class TestSpecht:
    @pytest.mark.parametrize(
        "lam", [(2, 1), (3,), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1), (3, 2), (2, 2, 1)]
    )
    def test_dimension_matches_hook_length(self, lam):
        n = sum(lam)
        g = parse_graph(f"A{n - 1}")
        assert specht_rep(g, lam).dim == hook_length_dim(lam)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_sum_of_squares_is_factorial(self, n):
        g = parse_graph(f"A{n - 1}")
        total = 0
        for lam in partitions_of(n):
            total += specht_rep(g, lam).dim ** 2
        assert total == math.factorial(n)

    def test_bad_partition_rejected(self):
        g = parse_graph("A2")
        with pytest.raises(ValueError):
            specht_rep(g, (2, 2))
        with pytest.raises(ValueError):
            specht_rep(g, (1, 2))


def partitions_of(n, largest=None):
    if n == 0:
        yield ()
        return
    largest = largest or n
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


class TestInvariants:
    def test_empty_set_gives_identity(self):
        rep = reflection_rep(parse_graph("A3"))
        basis = invariants(rep, ())
        assert basis.columns == ExactMatrix.identity(rep.field, 3)

    def test_reflection_hyperplane(self):
        rep = reflection_rep(parse_graph("A2"))
        assert invariants(rep, (0,)).dim == 1

    def test_regular_rep_orbit_count(self):
        rep = regular_rep(parse_graph("A3"))
        for t in [(0,), (2,), (0, 2)]:
            assert invariants(rep, t).dim == 24 // 2 ** len(t)

    def test_regular_s3_single_generator(self):
        rep = regular_rep(parse_graph("A2"))
        assert invariants(rep, (0,)).dim == 3

    def test_non_independent_rejected(self):
        rep = reflection_rep(parse_graph("A2"))
        with pytest.raises(ValueError):
            invariants(rep, (0, 1))

    def test_kernel_and_orbit_methods_agree(self):
        # tensor power generators are permutations: both code paths apply
        g = parse_graph("A2")
        rep = tensor_power_rep(g, 2)
        t = (0,)
        orbit_basis = invariants(rep, t)
        stacked = ExactMatrix.vstack(
            [rep.generators[0] - ExactMatrix.identity(QQ, rep.dim)]
        )
        from coxcoh.exactfield import rank_kernel_image

        _r, kernel, _i = rank_kernel_image(stacked)
        assert kernel.cols == orbit_basis.dim
        joint = ExactMatrix.hstack([kernel, orbit_basis.columns])
        assert exact_rank(joint) == kernel.cols

    def test_fixed_vectors_are_fixed(self):
        rep = reflection_rep(parse_graph("D4"))
        for t in [(0,), (0, 2), (0, 2, 3)]:
            basis = invariants(rep, t)
            for s in t:
                assert (rep.generators[s] @ basis.columns) == basis.columns


class TestCombinators:
    def test_external_tensor_spec_example(self):
        a1 = parse_graph("A1")
        rep = external_tensor(reflection_rep(a1), trivial_rep(a1))
        assert rep.dim == 1
        assert rep.generators[0][0, 0].as_fraction() == -1
        assert rep.generators[1][0, 0].as_fraction() == 1

    def test_restrict_of_tensor_recovers_factor(self):
        a2, a1 = parse_graph("A2"), parse_graph("A1")
        r1, r2 = reflection_rep(a2), reflection_rep(a1)
        prod = external_tensor(r1, r2)
        back = restrict(prod, [0, 1])
        ident = ExactMatrix.identity(r1.field, r2.dim)
        for k in range(2):
            assert back.generators[k] == r1.generators[k].kron(ident)

    def test_sign_twist_of_trivial_is_sign(self):
        g = parse_graph("A4")
        twisted = sign_twist(trivial_rep(g))
        expected = sign_rep(g)
        assert all(a == b for a, b in zip(twisted.generators, expected.generators))

    def test_d4_restriction_decomposes(self):
        # restricting the D4 reflection representation to the three outer
        # vertices: each generator fixes a 3-space and negates a line, and
        # the common fixed space is one-dimensional
        rep = reflection_rep(parse_graph("D4"))
        sub = restrict(rep, [0, 2, 3])
        for m in sub.generators:
            assert invariants_dim_of_matrix(m) == 3
        assert invariants(sub, (0, 1, 2)).dim == 1

    def test_direct_sum_dims_and_relations(self):
        g = parse_graph("B2")
        rep = direct_sum(reflection_rep(g), trivial_rep(g))
        rep.verify_relations()
        assert rep.dim == 3

    def test_field_promotion(self):
        g = parse_graph("I2(5)")
        rep = promote(reflection_rep(g), field_for_m(15))
        rep.verify_relations()
        assert rep.field.M == 15

    def test_subspace_rep(self):
        rep = reflection_rep(parse_graph("A4"))
        fixed = invariants(rep, (1,))
        sub = subspace_rep(rep, fixed.columns, [3])
        assert sub.dim == 3
        sub.verify_relations()


def invariants_dim_of_matrix(m):
    from coxcoh.exactfield import rank_kernel_image

    ident = ExactMatrix.identity(m.field, m.rows)
    _r, kernel, _i = rank_kernel_image(m - ident)
    return kernel.cols


class TestSymmetricGroupHelpers:
    def test_lex_order(self):
        elements = symmetric_group_elements(3)
        assert elements[0] == (1, 2, 3)
        assert elements == sorted(elements)

    def test_perm_sign(self):
        assert perm_sign((1, 2, 3)) == 1
        assert perm_sign((2, 1, 3)) == -1
        assert perm_sign((2, 3, 1)) == 1
