import pytest

from coxcoh.coxeter import parse_graph
from coxcoh.representations import (
    build_rep,
    reflection_rep,
    sign_rep,
    trivial_rep,
)
from coxcoh.theorems import (
    KUNNETH_CASES,
    LES_CASES,
    SPLIT_CASES,
    kunneth_check,
    les_check,
    reflection_expected_dims,
    remark_geometric_check,
    split_additivity_check,
    trivial_expected_dims,
    verify_reflection_table,
    verify_trivial_table,
)


class TestTrivialTable:
    def test_formula_values(self):
        assert trivial_expected_dims(1) == {}
        assert trivial_expected_dims(2) == {1: 1}
        assert trivial_expected_dims(3) == {1: 1}
        assert trivial_expected_dims(6) == {2: 1}
        assert trivial_expected_dims(9) == {3: 1}

    def test_table_up_to_nine(self):
        rows = verify_trivial_table(9)
        assert len(rows) == 9
        assert all(r.verdict == "exact-match" for r in rows)

    def test_range_guard(self):
        with pytest.raises(ValueError):
            verify_trivial_table(0)
        with pytest.raises(ValueError):
            verify_trivial_table(13)


class TestReflectionTable:
    def test_printed_formulas(self):
        assert reflection_expected_dims("A4") == {1: 2}
        assert reflection_expected_dims("E6") == {2: 1}
        assert reflection_expected_dims("E8") == {1: 1}
        assert reflection_expected_dims("D4") == {0: 3}
        assert reflection_expected_dims("D7") == {1: 5}
        assert reflection_expected_dims("I2(6)") == {}

    def test_a_family_matches_exactly(self):
        rows = verify_reflection_table([f"A{n}" for n in range(1, 7)])
        assert all(r.verdict == "exact-match" for r in rows)

    def test_d_family_shifts_by_one(self):
        rows = verify_reflection_table(["D4", "D5", "D6"])
        for r in rows:
            assert r.verdict == "match-with-degree-shift"
            assert r.shift == 1
            assert r.euler_ok

    def test_e8_shifts_e6_e7_do_not(self):
        e6, e7, e8 = verify_reflection_table(["E6", "E7", "E8"])
        assert e6.verdict == "exact-match"
        assert e7.verdict == "exact-match"
        assert e8.verdict == "match-with-degree-shift" and e8.shift == 1

    def test_multisets_always_match(self):
        for r in verify_reflection_table(["A5", "B4", "D5", "F4", "H3", "I2(7)"]):
            assert sorted(r.expected.values()) == sorted(r.computed.values())


class TestKunneth:
    def test_v2_factor_kills_everything(self):
        g1, g2 = parse_graph("A2"), parse_graph("A4")
        res = kunneth_check(g1, reflection_rep(g1), g2, reflection_rep(g2))
        assert res.passed
        # H(A2, V2) = 0 makes the whole convolution vanish
        assert "dims 0" in res.detail

    def test_trivial_times_trivial(self):
        g = parse_graph("A2")
        res = kunneth_check(g, trivial_rep(g), g, trivial_rep(g))
        assert res.passed and "{2: 1}" in res.detail

    def test_all_builtin_cases(self):
        for g1n, k1, g2n, k2 in KUNNETH_CASES:
            g1, g2 = parse_graph(g1n), parse_graph(g2n)
            res = kunneth_check(g1, build_rep(k1, g1), g2, build_rep(k2, g2))
            assert res.passed, res.name


class TestLes:
    def test_a4(self):
        g = parse_graph("A4")
        res = les_check(g, reflection_rep(g), 1)
        assert res.passed
        assert res.h_whole == {1: 2}

    def test_d4_forces_odd_degree(self):
        g = parse_graph("D4")
        res = les_check(g, reflection_rep(g), 1)
        assert res.passed
        assert res.h_deleted == {}
        assert res.h_far == {0: 3}
        assert res.h_whole == {1: 3}

    def test_zero_representation(self):
        g = parse_graph("A3")
        res = les_check(g, trivial_rep(g, 0), 1)
        assert res.passed
        assert res.h_whole == {}

    def test_euler_identity_every_generator(self):
        for name in ("A4", "B3", "D4", "H3"):
            g = parse_graph(name)
            rep = reflection_rep(g)
            for s in range(g.n):
                res = les_check(g, rep, s)
                euler = [c for c in res.checks if c.name == "euler-identity"]
                assert euler and euler[0].passed

    def test_all_builtin_cases(self):
        for name, s in LES_CASES:
            g = parse_graph(name)
            res = les_check(g, reflection_rep(g), s)
            assert res.passed, (name, [c for c in res.checks if not c.passed])


class TestSplitAdditivity:
    def test_zero_summand(self):
        g = parse_graph("A2")
        res = split_additivity_check(g, trivial_rep(g), trivial_rep(g, 0))
        assert res.passed and "{1: 1}" in res.detail

    def test_reflection_plus_trivial_a3(self):
        g = parse_graph("A3")
        res = split_additivity_check(g, reflection_rep(g), trivial_rep(g))
        assert res.passed and "{1: 3}" in res.detail

    def test_double_v2_vanishes(self):
        g = parse_graph("A2")
        res = split_additivity_check(g, reflection_rep(g), reflection_rep(g))
        assert res.passed and "dims 0" in res.detail

    def test_all_builtin_cases(self):
        for name, k1, k2 in SPLIT_CASES:
            g = parse_graph(name)
            res = split_additivity_check(g, build_rep(k1, g), build_rep(k2, g))
            assert res.passed, res.name


class TestRemarkGeometric:
    @pytest.mark.parametrize("name", ["A1", "A2", "A5", "B3", "D4", "I2(5)"])
    def test_small_groups(self, name):
        g = parse_graph(name)
        checks, h_cox, h_simp = remark_geometric_check(g)
        assert all(c.passed for c in checks)
        assert h_cox.dims == h_simp.dims

    def test_higher_coefficient_dimension(self):
        g = parse_graph("A2")
        checks, h_cox, h_simp = remark_geometric_check(g, d=3)
        assert all(c.passed for c in checks)
        assert h_cox.nonzero() == {1: 3}
