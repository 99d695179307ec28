from functools import lru_cache

import pytest

from algd import cohomology as C
from algd.algebroid import check_bialgebroid, make_hopf
from algd.constructions import bicrossproduct_transversal, coquasi_cm, hopf_as_algebroid
from algd.duality import (
    F_inverse,
    F_key,
    F_report,
    InCocycleF,
    as_quasi,
    biduality_check,
    check_C1_in,
    check_quasi_bialgebroid,
    check_Z1_in,
    coboundary_bridge,
    dual_hopf_check,
    dual_two_cocycle_bridge,
    enumerate_in,
    enumerate_in_cocycles,
    in_coboundary,
    in_h2_classes,
    inplace_inverse,
    pairing_report,
    quasi_dual,
    quasi_twist,
    reconstruction_report,
    right_dual,
    trivial_F,
    twist_coproduct,
)
from algd.field import GF, QQ
from algd.groups import cyclic_group, symmetric_group_s3
from algd.hopf import LinMap, group_algebra

from helpers import cm, fz, kz, pair, weyl


@lru_cache(maxsize=None)
def weyl_dual():
    l, hd, _ = weyl()
    d = right_dual(l)
    return l, hd, d, d.algebroid


@lru_cache(maxsize=None)
def weyl_Fs():
    _, _, _, lam = weyl_dual()
    Fs = enumerate_in_cocycles(lam)
    triv = F_key(lam, trivial_F(lam))
    return Fs, [F for F in Fs if F_key(lam, F) != triv]


def s3_nontrivial_F():
    """F = 1 (x) 1 + 2 (a - 1) (x) (b - 1) on kS3 over F5 with a, b not commuting."""
    l = hopf_as_algebroid(group_algebra(symmetric_group_s3(), GF(5)))
    F = {(0, 0): 1}
    for i, ci in ((1, 1), (0, -1)):
        for j, cj in ((3, 1), (0, -1)):
            F[(i, j)] = (F.get((i, j), 0) + 2 * ci * cj) % 5
    F = {k: v for k, v in F.items() if v}
    return l, InCocycleF(F, F_inverse(l, F))


class TestRightDual:
    def test_group_algebra_dual_is_function_algebra(self):
        l = hopf_as_algebroid(kz(2))
        basis = [LinMap(QQ, 2, 1, [({0: 1} if X == i else {}) for X in range(2)]) for i in range(2)]
        lam = right_dual(l, basis=basis).algebroid
        f = fz(2)
        assert lam.total.table == f.alg.table
        assert lam.delta == f.coalg.cop

    def test_weyl(self):
        l, _, d, lam = weyl_dual()
        assert (lam.n, lam.m) == (4, 2)
        assert check_bialgebroid(lam).passed
        assert pairing_report(d).passed
        assert reconstruction_report(l, d.dual_basis).passed

    def test_dual_basis_pairing_is_identity(self):
        l, _, d, lam = weyl_dual()
        for a in range(lam.n):
            assert d.coords(d.functional({a: 1})) == {a: 1}


class TestBiduality:
    @pytest.mark.parametrize("build", [lambda: hopf_as_algebroid(kz(2)), lambda: weyl()[0], lambda: cm()[0]])
    def test_bidual_equals_original(self, build):
        assert biduality_check(build()).passed


class TestDualHopf:
    def test_ground_field(self):
        l = hopf_as_algebroid(kz(2))
        assert dual_hopf_check(l, make_hopf(l)).passed

    def test_weyl(self):
        l, hd, d, _ = weyl_dual()
        assert dual_hopf_check(l, hd, d).passed

    @pytest.mark.parametrize("build", [lambda: pair(2, 5), lambda: pair(2), lambda: cm()])
    def test_non_symmetric_cases(self, build):
        l, hd = build()
        rep = dual_hopf_check(l, hd)
        assert rep.passed
        assert [r.law for r in rep.results] == [
            "phi o mu = lambda* o psi",
            "Lambda anti-left Hopf",
            "lambda* o psi o mu^-1 = phi",
        ]


class TestInElements:
    def test_unit(self):
        l, hd, _ = weyl()
        U = check_Z1_in(l, l.total.one(), hd)
        assert U.Uinv == l.total.one()

    def test_group_like_of_order_two(self):
        l = hopf_as_algebroid(kz(2))
        hd = make_hopf(l)
        U = check_Z1_in(l, {1: 1}, hd)
        assert U.grouplike and U.Uinv == {1: 1}
        assert inplace_inverse(l, hd, {1: 1}) == {1: 1}

    def test_non_counital_rejected(self):
        l = hopf_as_algebroid(kz(2))
        with pytest.raises(Exception):
            check_C1_in(l, {1: 2})

    def test_z1_bridge(self):
        # Z1 of the dual equals the vertical bisections of L
        l, hd, _, lam = weyl_dual()
        vert = [b for b in C.enumerate_objects(l, hd, "bisection-left") if C.is_vertical(b)]
        assert len(enumerate_in(lam, "Z1")) == len(vert) == 2
        assert len(enumerate_in(lam, "C1")) == len(C.enumerate_objects(l, hd, "ext-cochain")) == 4

    def test_coboundary_of_group_like_collapses(self):
        l = hopf_as_algebroid(kz(2))
        U = check_Z1_in(l, {1: 1}, make_hopf(l))
        assert F_key(l, in_coboundary(l, U)) == F_key(l, trivial_F(l))


class TestInCocycles:
    def test_trivial(self):
        _, _, _, lam = weyl_dual()
        F = trivial_F(lam)
        assert F_report(lam, F.F, F.Finv).passed
        tw = twist_coproduct(lam, None, F)
        assert tw.algebroid.delta == lam.delta

    def test_weyl_counts(self):
        Fs, nontriv = weyl_Fs()
        assert (len(Fs), len(nontriv)) == (2, 1)

    def test_nontrivial_twist_with_explicit_inverses(self):
        _, _, _, lam = weyl_dual()
        F = weyl_Fs()[1][0]
        tw = twist_coproduct(lam, make_hopf(lam), F)
        assert tw.report.passed
        assert tw.report.law("explicit (mu_F)^-1 = inverted mu_F").passed
        assert tw.report.law("explicit (lambda_F)^-1 = inverted lambda_F").passed

    def test_h2_of_dual(self):
        _, _, _, lam = weyl_dual()
        Fs, _ = weyl_Fs()
        assert in_h2_classes(lam, Fs, enumerate_in(lam, "C1")) == [[0, 1]]

    def test_coboundaries_are_cocycles(self):
        _, _, _, lam = weyl_dual()
        for U in enumerate_in(lam, "C1"):
            F = in_coboundary(lam, U)
            assert F_report(lam, F.F, F.Finv).passed


class TestBridges:
    def test_trivial_f_gives_trivial_gamma(self):
        l, _, d, lam = weyl_dual()
        b = dual_two_cocycle_bridge(l, trivial_F(lam), d)
        assert b.report.passed
        assert b.cocycle.key(l.red) == C.trivial_cocycle(l).key(l.red)

    def test_nontrivial_f(self):
        l, _, d, _ = weyl_dual()
        b = dual_two_cocycle_bridge(l, weyl_Fs()[1][0], d)
        assert b.report.passed

    def test_coboundary_square(self):
        l, _, d, lam = weyl_dual()
        for U in enumerate_in(lam, "C1"):
            for F in weyl_Fs()[0]:
                assert coboundary_bridge(d, U, F).passed


class TestQuasi:
    def test_ordinary_bialgebroid(self):
        assert check_quasi_bialgebroid(as_quasi(weyl()[0])).passed

    def test_trivial_f_keeps_phi(self):
        q = as_quasi(weyl()[0])
        qt = quasi_twist(q, trivial_F(q))
        assert q.quotient("BBB").equal(qt.Phi, q.Phi)

    def test_non_cocycle_twist_of_s3(self):
        l, F = s3_nontrivial_F()
        assert not F_report(l, F.F, F.Finv).passed
        qt = quasi_twist(as_quasi(l), F)
        assert not check_bialgebroid(qt).law("coassociativity").passed
        assert check_quasi_bialgebroid(qt).passed

    def test_zeroed_phi_fails(self):
        q = as_quasi(weyl()[0])
        rep = check_quasi_bialgebroid(q.replace(Phi={}))
        assert not rep.passed and all(r.witness is not None for r in rep.failures)

    @pytest.mark.slow
    def test_dual_of_coquasi_cm(self):
        td, hq, kG, act, gamma = bicrossproduct_transversal(cyclic_group(4), [0, 2], [0, 1])
        q = quasi_dual(coquasi_cm(hq, kG.alg, act, gamma))
        assert check_quasi_bialgebroid(q).passed
