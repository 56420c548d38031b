import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxcoh.coxeter import (
    INFINITY,
    CoxeterGraph,
    independent_sets,
    induced_subgraph,
    max_independent_size,
    parabolic_deletions,
    parse_graph,
)


def brute_force_independent(g, k):
    out = []
    for combo in itertools.combinations(range(g.n), k):
        if all(g.label(a, b) == 2 for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return out


class TestParseGraph:
    def test_a3_path(self):
        g = parse_graph("A3")
        assert g.n == 3
        assert g.labels == (((0, 1), 3), ((1, 2), 3))

    def test_i2_7(self):
        g = parse_graph("I2(7)")
        assert g.n == 2 and g.label(0, 1) == 7

    def test_product(self):
        g = parse_graph("A2xA1")
        assert g.n == 3
        assert g.label(0, 1) == 3
        assert g.label(1, 2) == 2 and g.label(0, 2) == 2

    def test_c_aliases_b(self):
        assert parse_graph("C3").labels == parse_graph("B3").labels

    def test_custom_with_infinite_label(self):
        g = parse_graph("custom;n=3;edges=1-2:3,2-3:inf")
        assert g.label(1, 2) == INFINITY
        assert g.has_infinite_label()

    def test_d4_fork(self):
        g = parse_graph("D4")
        assert sorted(g.neighbors(1)) == [0, 2, 3]

    def test_e7_trivalent_vertex(self):
        g = parse_graph("E7")
        assert sorted(g.neighbors(3)) == [1, 2, 4]

    @pytest.mark.parametrize(
        "bad", ["A0", "Q3", "E5", "E9", "F5", "H5", "D3", "I2(1)", "custom;n=2;edges=1-2:1", ""]
    )
    def test_rejects_bad_specs(self, bad):
        with pytest.raises(ValueError):
            parse_graph(bad)

    def test_b_label_placement(self):
        g = parse_graph("B4")
        assert g.label(2, 3) == 4 and g.label(0, 1) == 3


class TestIndependentSets:
    def test_a3_two_sets(self):
        g = parse_graph("A3")
        assert independent_sets(g, 2) == [(0, 2)]

    def test_d4_three_sets(self):
        g = parse_graph("D4")
        assert independent_sets(g, 3) == [(0, 2, 3)]

    def test_k_zero_is_empty_set(self):
        g = parse_graph("B3")
        assert independent_sets(g, 0) == [()]

    @pytest.mark.parametrize("name", ["A4", "D5", "E6", "B4", "I2(5)", "A2xA2"])
    def test_against_brute_force(self, name):
        g = parse_graph(name)
        for k in range(g.n + 1):
            assert independent_sets(g, k) == brute_force_independent(g, k)

    @given(st.integers(1, 9), st.integers(0, 5))
    @settings(max_examples=40, deadline=None)
    def test_path_count_is_binomial(self, n, k):
        g = parse_graph(f"A{n}")
        count = len(independent_sets(g, k)) if k <= n else 0
        expected = math.comb(n - k + 1, k) if n - k + 1 >= 0 else 0
        assert count == expected

    def test_all_sets_pairwise_commute(self):
        g = parse_graph("E8")
        for k in range(g.n + 1):
            for t in independent_sets(g, k):
                for a, b in itertools.combinations(t, 2):
                    assert g.commutes(a, b)

    def test_max_size(self):
        assert max_independent_size(parse_graph("A5")) == 3
        assert max_independent_size(parse_graph("D4")) == 3


def component_signature(g):
    """Sorted connected-component shapes: (size, sorted edge labels)."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), _m in g.labels:
        parent[find(a)] = find(b)
    comps = {}
    for v in range(g.n):
        comps.setdefault(find(v), []).append(v)
    out = []
    for vs in comps.values():
        labels = sorted(m for (a, b), m in g.labels if a in vs)
        out.append((len(vs), tuple(labels)))
    return sorted(out)


class TestParabolicDeletions:
    def test_a_family_shape(self):
        # deleting s_{n-2} from A_n leaves A_{n-3} x A_2 and, at distance > 1,
        # A_{n-4} x A_1
        g = parse_graph("A6")
        pd = parabolic_deletions(g, 3)
        assert component_signature(pd.g_minus_s) == component_signature(parse_graph("A3xA2"))
        assert component_signature(pd.g_far) == component_signature(parse_graph("A2xA1"))

    def test_d_family_shape(self):
        g = parse_graph("D6")
        pd = parabolic_deletions(g, 3)
        assert component_signature(pd.g_minus_s) == component_signature(parse_graph("A3xA1xA1"))
        assert component_signature(pd.g_far) == component_signature(parse_graph("A2"))

    def test_e_family_shape(self):
        g = parse_graph("E7")
        pd = parabolic_deletions(g, 3)
        assert pd.g_minus_s.n == 6
        assert component_signature(pd.g_minus_s) == component_signature(parse_graph("A2xA1xA3"))
        assert component_signature(pd.g_far) == component_signature(parse_graph("A1xA2"))

    def test_partitions(self):
        g = parse_graph("E6")
        for s in range(g.n):
            pd = parabolic_deletions(g, s)
            assert set(pd.minus_map) | {s} == set(range(g.n))
            assert set(pd.far_map) | pd.b1 == set(range(g.n))
            assert s in pd.b1

    def test_induced_labels_agree(self):
        g = parse_graph("B5")
        sub, vmap = induced_subgraph(g, [1, 3, 4])
        for i in range(sub.n):
            for j in range(sub.n):
                assert sub.label(i, j) == g.label(vmap[i], vmap[j])


class TestGraphBasics:
    def test_field_order_is_lcm(self):
        assert parse_graph("B3").field_order() == 12
        assert parse_graph("H3").field_order() == 15
        assert parse_graph("A5").field_order() == 3
        assert CoxeterGraph(1).field_order() == 1

    def test_symmetric_labels(self):
        g = parse_graph("F4")
        for i in range(4):
            for j in range(4):
                assert g.label(i, j) == g.label(j, i)

    def test_empty_graph(self):
        g = CoxeterGraph(0)
        assert independent_sets(g, 0) == [()]
        assert max_independent_size(g) == 0
