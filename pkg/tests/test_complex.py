from math import comb

import pytest

from conftest import load, suite, wide_diagram

from bnsplit.complex import (
    BNComplex,
    NotInC1Error,
    add,
    chain_str,
    edge_map_d,
    edge_map_h,
    grading,
    shift,
)
from bnsplit.cube import Cube, EdgeSurgery

MERGE = EdgeSurgery(0, 1, 0, "merge", (0, 1), (0,), ())
SPLIT = EdgeSurgery(0, 1, 0, "split", (0,), (0, 1), ())
ONE, X = 0, 1


def lab(*bits):
    return sum(b << c for c, b in enumerate(bits))


def cx(name):
    return BNComplex(Cube(load(name)))


class TestEdgeMaps:
    def test_merge_one_x(self):
        assert edge_map_d(MERGE, lab(ONE, X)) == [lab(X)]
        assert edge_map_d(MERGE, lab(ONE, ONE)) == [lab(ONE)]

    def test_merge_x_x_vanishes(self):
        assert edge_map_d(MERGE, lab(X, X)) == []

    def test_split_one(self):
        assert sorted(edge_map_d(SPLIT, lab(ONE))) == sorted([lab(ONE, X), lab(X, ONE)])

    def test_split_x(self):
        assert edge_map_d(SPLIT, lab(X)) == [lab(X, X)]

    def test_perturbation(self):
        assert edge_map_h(SPLIT, lab(ONE)) == [lab(ONE, ONE)]
        assert edge_map_h(MERGE, lab(X, X)) == [lab(X)]
        assert edge_map_h(SPLIT, lab(X)) == []
        assert edge_map_h(MERGE, lab(ONE, X)) == []

    def test_untouched_circles_are_carried(self):
        e = EdgeSurgery(0, 1, 0, "merge", (1, 2), (0,), ((0, 1),))
        assert edge_map_d(e, lab(X, ONE, ONE)) == [lab(ONE, X)]


class TestGrading:
    def test_unknot(self):
        cube = Cube(load("unknot"))
        assert grading(cube, 0, lab(ONE)) == (0, 1)
        assert grading(cube, 0, lab(X)) == (0, -1)

    def test_trefoil_all_x(self):
        cube = Cube(load("trefoil"))
        k = cube[0].k
        assert grading(cube, 0, (1 << k) - 1) == (-3, -(k + 6))

    @pytest.mark.parametrize("name", ["trefoil", "figure8", "hopf"])
    def test_d_preserves_and_h_raises_q(self, name):
        bn = cx(name)
        for g in bn.basis():
            i, q = bn.grading(*g)
            for t in bn.d_terms(*g):
                assert bn.grading(*t) == (i + 1, q)
            for t in bn.h_terms(*g):
                assert bn.grading(*t) == (i + 1, q + 2)


class TestSplit:
    def test_unknot(self):
        bn = cx("unknot")
        xg, og = (0, lab(X)), (0, lab(ONE))
        assert bn.reduced_split({xg: 1}) == ({xg: 1}, {})
        assert bn.reduced_split({og: 1}) == ({}, {og: 1})
        assert bn.reduced_split({xg: 1, og: 3}) == ({xg: 1}, {og: 3})


class TestConnectingMap:
    def test_unknot_is_zero(self):
        assert cx("unknot").f({(0, lab(ONE)): 1}) == {}

    def test_rejects_c_x_input(self):
        with pytest.raises(NotInC1Error):
            cx("unknot").f({(0, lab(X)): 1})

    def test_merge_basepoint_one_with_x(self):
        bn = cx("kink")  # vertex 0: two circles merging along crossing 0
        v = bn.cube[0]
        other = 1 - v.basepoint_circle
        out = bn.f({(0, 1 << other): 1})
        assert out == {(1, 1 << bn.cube[1].basepoint_circle): 1}

    def test_perturbation_never_reaches_c_x(self):
        # pi_x (d + Hh) equals pi_x d on C_1 for every diagram of the suite
        for d in suite():
            bn = BNComplex(Cube(d))
            for g in bn.basis():
                if bn.bp_is_x(*g):
                    continue
                assert bn.f({g: 1}) == bn.f_khovanov({g: 1})

    def test_f_keeps_q(self):
        # f is a component of the differential: q is kept, i goes up by one
        bn = cx("figure8")
        for g in bn.basis():
            if not bn.bp_is_x(*g):
                i, q = bn.grading(*g)
                for t in bn.f({g: 1}):
                    assert bn.grading(*t) == (i + 1, q)


def _vertex_with(bn, k_min):
    for v in bn.cube.vertices:
        if v.k >= k_min:
            return v
    raise AssertionError("no such vertex")


class TestK:
    def test_k0_swaps_labels(self):
        bn = cx("kink")
        v = bn.cube[0]
        other = 1 - v.basepoint_circle
        assert bn.K(0, {(0, 1 << other): 1}) == {(0, 1 << v.basepoint_circle): 1}

    def test_k0_all_ones_is_zero(self):
        assert cx("trefoil").K(0, {(0, 0): 1}) == {}
        assert cx("unknot").K(0, {(0, 0): 1}) == {}

    def test_k2_three_x_circles(self):
        bn = BNComplex(Cube(wide_diagram()))
        v = _vertex_with(bn, 4)
        xs = [c for c in range(v.k) if c != v.basepoint_circle][:3]
        labels = sum(1 << c for c in xs)
        out = bn.K(2, {(v.alpha, labels): 1})
        assert out == {(v.alpha, 1 << v.basepoint_circle): 1}

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_term_counts_match_subset_enumeration(self, m):
        bn = BNComplex(Cube(wide_diagram()))
        v = _vertex_with(bn, m + 1)
        xs = [c for c in range(v.k) if c != v.basepoint_circle][:m]
        labels = sum(1 << c for c in xs)
        for i in range(m + 1):
            assert len(bn.k_terms(i, v.alpha, labels)) == comb(m, i + 1)

    def test_k_total_two_x_circles(self):
        bn = BNComplex(Cube(wide_diagram()))
        v = _vertex_with(bn, 3)
        xs = [c for c in range(v.k) if c != v.basepoint_circle][:2]
        g = (v.alpha, sum(1 << c for c in xs))
        out = bn.K_total({g: 1})
        assert sorted(out.values()) == [1, 1, 2]  # two H^0 terms, one H^1 term

    def test_k_is_degree_zero(self):
        bn = BNComplex(Cube(wide_diagram()))
        for g in bn.basis():
            if bn.bp_is_x(*g):
                continue
            i, q = bn.grading(*g)
            for t, p in bn.K_total({g: 1}).items():
                assert bn.grading(*t)[0] == i
                assert bn.grading(*t)[1] - 2 * (p.bit_length() - 1) == q


class TestIota:
    def test_unknot(self):
        bn = cx("unknot")
        assert bn.iota({(0, lab(ONE)): 1}) == {(0, lab(X)): 1}

    def test_one_x_circle(self):
        bn = cx("kink")
        v = bn.cube[0]
        other = 1 - v.basepoint_circle
        out = bn.iota({(0, 1 << other): 1})
        assert out == {(0, lab(X, X)): 1, (0, 1 << v.basepoint_circle): 2}

    def test_shifts_q_by_minus_two(self):
        bn = cx("figure8")
        for g in bn.basis():
            if bn.bp_is_x(*g):
                continue
            i, q = bn.grading(*g)
            for t, p in bn.iota({g: 1}).items():
                assert bn.grading(*t) == (i, q - 2 + 2 * (p.bit_length() - 1))


def test_chain_arithmetic():
    a = {(0, 1): 0b101}
    assert add(a, a) == {}
    assert shift(a, 2) == {(0, 1): 0b10100}
    assert add(a, {(0, 1): 1}) == {(0, 1): 0b100}


def test_chain_str():
    bn = cx("trefoil")
    assert chain_str(bn.cube, {(0, 0b101): 0b11}) == "000:x1x:0,1"
