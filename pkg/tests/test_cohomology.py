from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algd import cohomology as C
from algd.algebroid import AlgebroidMorphism, check_automorphism, trivial_phi
from algd.constructions import cocycle_smash, transmutation
from algd.errors import Invalid, SearchSpaceTooLarge, UnsupportedField
from algd.field import GF, QQ
from algd.groups import cyclic_group
from algd.hopf import CQTStructure, LinMap

import oracles as O
from helpers import cm, es, fz, galois, kz, pair, smash, translation_action, weyl, weyl_yd


def weyl_sets():
    l, hd, _ = weyl()
    return (
        l,
        hd,
        C.enumerate_objects(l, hd, "bisection-left"),
        C.enumerate_objects(l, hd, "bisection-right"),
        C.enumerate_objects(l, hd, "ext-cochain"),
    )


def pair_sign_bisection():
    """sigma(a (x) c) = phi(a) c on kZ2 (x) kZ2^op with phi the sign automorphism."""
    l, hd = pair()
    sign = (1, -1)
    cols = [{(a + c) % 2: sign[a]} for a, c in (divmod(X, 2) for X in range(4))]
    return l, hd, C.make_bisection(l, LinMap(QQ, 4, 2, cols))


def pair_autos(l):
    ident = AlgebroidMorphism.identity(l)
    cols = [{X: (-1) ** (X // 2 + X % 2)} for X in range(4)]
    return [ident, AlgebroidMorphism(LinMap(QQ, 4, 4, cols), LinMap(QQ, 2, 2, [{0: 1}, {1: -1}]))]


class TestBisections:
    @pytest.mark.parametrize("build", [lambda: weyl()[0], lambda: cm()[0], lambda: es()[0], lambda: pair()[0]])
    @pytest.mark.parametrize("side", ["left", "right"])
    def test_counit_is_bisection(self, build, side):
        l = build()
        assert C.check_bisection(l, LinMap(l.field, l.n, l.m, l.eps), side).passed

    def test_es_sign_character(self):
        l, hd = es()
        F = LinMap(QQ, 2, 2, [{0: 1}, {1: -1}])
        b = C.dict_es(l, F, "F->left")
        assert C.check_bisection(l, b.sigma, "left").passed

    def test_violation_has_witness(self):
        l, _, _ = weyl()
        bad = LinMap(l.field, l.n, l.m, [{0: 1}, {0: 1}, {0: 1}, {1: 1}])
        rep = C.check_bisection(l, bad)
        assert not rep.passed and all(r.witness is not None for r in rep.failures)

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_weyl_enumeration_matches_oracle(self, side):
        l, hd, _ = weyl()
        lib = {O.as_columns(b.sigma, l.m, 3) for b in C.enumerate_objects(l, hd, f"bisection-{side}")}
        assert lib == O.bisections(l, side)
        assert len(lib) == 2

    def test_weyl_groups_are_z2(self):
        l, hd, L, R, _ = weyl_sets()
        for elems in (L, R):
            assert C.check_group(l, hd, elems).passed
            eps = C.counit_bisection(l, elems[0].side)
            other = next(b for b in elems if b.key != eps.key)
            assert C.bisection_mul(l, hd, other, other) == eps
            assert C.bisection_inv(l, hd, other) == other

    def test_unit_law(self):
        l, hd, L, _, _ = weyl_sets()
        eps = C.counit_bisection(l)
        for b in L:
            assert C.bisection_mul(l, hd, b, eps) == b == C.bisection_mul(l, hd, eps, b)
        assert C.bisection_inv(l, hd, eps) == eps

    def test_vertical_is_left_right_intersection(self):
        l, hd, L, R, _ = weyl_sets()
        vert = {b.key for b in L if C.is_vertical(b)} | {b.key for b in R if C.is_vertical(b)}
        assert vert == {b.key for b in L} & {b.key for b in R}

    def test_alpha_bisections_multiply_as_units(self):
        # both bisections come from alpha in {1, 2} and compose as F3^x
        h = kz(2, 3)
        l, hd, _ = weyl()
        yd = weyl_yd()
        alphas = C.enumerate_objects(h, None, "weyl-alpha")
        bis = {tuple(a.items()): C.dict_action(yd, l, C.dict_weyl(h, a, "alpha->rho", yd=yd), "rho->right") for a in map(dict, alphas)}
        for a, b in product(alphas, repeat=2):
            ab = {0: 1, 1: a.get(1, 0) * b.get(1, 0) % 3}
            lhs = C.bisection_mul(l, hd, bis[tuple(a.items())], bis[tuple(b.items())])
            assert lhs.key == bis[tuple(ab.items())].key

    def test_pair_sign_bisection_is_involution(self):
        l, hd, b = pair_sign_bisection()
        assert C.bisection_inv(l, hd, b) == b


class TestAdAndTwoGroup:
    def test_ad_of_counit_is_identity(self):
        l, hd, _ = weyl()
        assert C._mor_eq(C.ad_automorphism(l, hd, C.counit_bisection(l)), AlgebroidMorphism.identity(l))

    def test_pair_ad_is_phi_tensor_phi(self):
        l, hd, b = pair_sign_bisection()
        ad = C.ad_automorphism(l, hd, b)
        assert ad.Phi.cols == [{0: 1}, {1: -1}, {2: -1}, {3: 1}]
        assert check_automorphism(l, ad).passed

    def test_vertical_ad_left_right_agree(self):
        l, hd, L, R, U = weyl_sets()
        for b in L:
            assert C.is_vertical(b)
            rb = next(r for r in R if r.key == b.key)
            adl = C.ad_automorphism(l, hd, b)
            adr = C.ad_automorphism(l, hd, C.bisection_inv(l, hd, rb), "right")
            cochain = C.bisection_as_cochain(l, b)
            assert C._mor_eq(adl, adr)
            assert adl.Phi == C.ad_cochain(l, cochain)

    def test_singletons(self):
        l, hd, _ = weyl()
        assert C.two_group_check(l, hd, [C.counit_bisection(l)], [AlgebroidMorphism.identity(l)]).passed

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_weyl_full_sets(self, side):
        l, hd, _ = weyl()
        bis = C.enumerate_objects(l, hd, f"bisection-{side}")
        autos = C.enumerate_objects(l, hd, "algebroid-automorphism")
        assert len(autos) == 2
        assert C.two_group_check(l, hd, bis, autos, side).passed

    def test_pair_over_rationals(self):
        l, hd, b = pair_sign_bisection()
        bis = [C.counit_bisection(l), b]
        autos = pair_autos(l)
        assert C.two_group_check(l, hd, bis, autos).passed
        # mu is the identity: Ad of sigma_phi is the automorphism phi (x) phi
        assert C._mor_eq(C.ad_automorphism(l, hd, b), autos[1])


class TestExtCochains:
    def test_counit(self):
        l, _, _ = weyl()
        u = C.counit_cochain(l)
        assert u.U == u.Uinv
        assert C.check_ext_cochain(l, u.U).key == u.key

    def test_weyl_matches_oracle(self):
        l, hd, _, _, U = weyl_sets()
        assert len(U) == 4
        assert {O.as_columns(u.U, l.m, 3) for u in U} == O.extended_cochains(l)

    def test_vertical_flag(self):
        l, hd, L, _, U = weyl_sets()
        flagged = {u.key for u in U if u.vertical_bisection}
        assert flagged == {b.key for b in L if C.is_vertical(b)}

    def test_source_linearity_violation(self):
        l, _, _ = weyl()
        bad = LinMap(l.field, l.n, l.m, [{0: 1, 1: 1}] * 4)
        with pytest.raises(Invalid):
            C.check_ext_cochain(l, bad)

    def test_group_closure(self):
        l, _, _, _, U = weyl_sets()
        keys = {u.key for u in U}
        for a, b in product(U, repeat=2):
            assert C.ext_mul(l, a, b).key in keys


class TestCoboundaryAndGauge:
    def test_coboundary_of_counit_is_trivial(self):
        l, _, _ = weyl()
        red = l.red
        assert C.coboundary(l, C.counit_cochain(l)).key(red) == C.trivial_cocycle(l).key(red)

    def test_every_cochain(self):
        l, hd, _, _, U = weyl_sets()
        red = l.red
        triv = C.trivial_cocycle(l)
        for u in U:
            d = C.coboundary(l, u)
            assert C.check_two_cocycle(l, d).passed
            assert C._fcanon(C.cocycle_inverse(l, d.G), red) == C._fcanon(d.Ginv, red)
            assert C.gauge(l, triv, u).key(red) == d.key(red)
            tw = C.twist(l, hd, triv, u)
            assert tw.report.passed and tw.hopf is not None

    def test_gauge_by_counit(self):
        l, hd, _ = weyl()
        red = l.red
        for g in C.enumerate_objects(l, hd, "two-cocycle"):
            assert C.gauge(l, g, C.counit_cochain(l)).key(red) == g.key(red)

    def test_gauge_composition(self):
        l, hd, _, _, U = weyl_sets()
        red = l.red
        for g in C.enumerate_objects(l, hd, "two-cocycle"):
            for a, b in product(U, repeat=2):
                lhs = C.gauge(l, C.gauge(l, g, a), b)
                assert lhs.key(red) == C.gauge(l, g, C.ext_mul(l, a, b)).key(red)

    def test_trivial_twist_is_identity(self):
        l, hd, _ = weyl()
        tw = C.twist(l, hd, C.trivial_cocycle(l))
        assert tw.algebroid.total.table == l.total.table

    def test_weyl_h2_single_class(self):
        l, hd, _, _, U = weyl_sets()
        Z = C.enumerate_objects(l, hd, "two-cocycle")
        assert len(Z) == 2
        assert C.h2_classes(l, Z, U) == [[0, 1]]

    def test_smash_bicharacter_cocycle(self):
        h, b = kz(2, 3), fz(2, 3).alg
        act = translation_action(cyclic_group(2))
        l, hd = smash(3)
        gam = {(x, y): {k: (2 if x * y else 1) for k in range(2)} for x, y in product(range(2), repeat=2)}
        G = C.dict_smash(h, b, act, l, gam, "gamma->Gamma")
        cyc = C.make_cocycle(l, G)
        assert C.check_two_cocycle(l, cyc).passed
        tw = C.twist(l, hd, cyc)
        assert tw.algebroid.total.table == cocycle_smash(h, b, act, gam)[0].total.table


class TestSigmaTwist:
    def test_trivial_sigma(self):
        l, _, _ = weyl()
        triv = C.trivial_cocycle(l)
        cl = C.coquasi_twist(l, triv.G, triv.Ginv)
        assert cl.total.table == l.total.table
        assert C._fcanon(cl.Phi, l.red) == C._fcanon(trivial_phi(l), l.red)

    def test_sigma_boundary(self):
        l, _, _ = weyl()
        red = l.red
        triv = C._fcanon(trivial_phi(l), red)
        noncocycle = None
        for s, si in C.sigma_cochains(l):
            phi, _ = C.sigma_boundary(l, s, si)
            if C.check_two_cocycle(l, C.TwoCocycle(s, si)).passed:
                assert C._fcanon(phi, red) == triv
            elif noncocycle is None:
                noncocycle = (s, si)
        assert noncocycle is not None
        cl = C.coquasi_twist(l, *noncocycle)
        assert cl.validation.passed
        assert C._fcanon(cl.Phi, red) == C._fcanon(C.sigma_boundary(l, *noncocycle)[0], red) != triv


class TestEnumerate:
    def test_weyl_alpha(self):
        alphas = C.enumerate_objects(kz(2, 3), None, "weyl-alpha")
        assert {O.dense(a, 2, 3) for a in alphas} == O.counital_invertible_functions(2, 3)
        assert len(alphas) == 2

    def test_rational_field_refused(self):
        l, hd = cm()
        with pytest.raises(UnsupportedField):
            C.enumerate_objects(l, hd, "bisection-left")

    def test_limit_reports_requirement(self):
        l, hd, _ = weyl()
        with pytest.raises(SearchSpaceTooLarge) as ei:
            C.enumerate_objects(l, hd, "two-cocycle", limit=2)
        assert ei.value.required == 9

    def test_env_limit(self, monkeypatch):
        l, hd, _ = weyl()
        monkeypatch.setenv("ALGD_LIMIT", "2")
        with pytest.raises(SearchSpaceTooLarge):
            C.enumerate_objects(l, hd, "two-cocycle")

    def test_counital_autos_of_functions(self):
        f = fz(2, 3)
        autos = C.enumerate_objects(f.alg, None, "algebra-automorphism", counit=f.coalg.counit)
        assert {O.as_columns(a, 2, 3) for a in autos} == O.counital_algebra_autos_of_functions(2, 3)
        assert len(autos) == 1


class TestActionCocycles:
    def test_unit(self):
        yd = weyl_yd()
        u = C.unit_action_cocycle(yd)
        assert u.psi == LinMap.identity(yd.b.field, yd.b.dim)

    def test_enumeration_matches_oracle(self):
        yd = weyl_yd()
        lib = C.enumerate_objects(yd, None, "action-cocycle")
        assert {O.as_columns(r.rho, 2, 3) for r in lib} == O.action_cocycles(yd, 3)
        assert len(lib) == 2

    def test_alpha_two(self):
        h, yd = kz(2, 3), weyl_yd()
        r = C.dict_weyl(h, {0: 1, 1: 2}, "alpha->rho", yd=yd)
        assert C.action_cocycle_report(yd, r.rho).passed
        assert C.dict_weyl(h, r, "rho->alpha") == {0: 1, 1: 2}

    def test_product_is_multiplication_in_dual(self):
        h, yd = kz(3, 7), weyl_yd(3, 7)
        alphas = C.enumerate_objects(h, None, "weyl-alpha")
        hd = C._dual(h)
        for a, b in list(product(alphas, repeat=2))[:12]:
            ra = C.dict_weyl(h, a, "alpha->rho", yd=yd)
            rb = C.dict_weyl(h, b, "alpha->rho", yd=yd)
            ab = C.dict_weyl(h, hd.mul(a, b), "alpha->rho", yd=yd)
            assert C.action_mul(yd, ra, rb).key == ab.key
            assert C.action_mul(yd, ra, C.action_inv(yd, ra)).key == C.unit_action_cocycle(yd).key

    def test_dictionary_round_trips(self):
        l, hd, _ = weyl()
        yd = weyl_yd()
        for r in C.enumerate_objects(yd, None, "action-cocycle"):
            for side in ("right", "left"):
                b = C.dict_action(yd, l, r, f"rho->{side}")
                assert C.check_bisection(l, b.sigma, side).passed
                assert C.dict_action(yd, l, b, f"{side}->rho") == r

    def test_unit_maps_to_counit(self):
        l, _, _ = weyl()
        yd = weyl_yd()
        b = C.dict_action(yd, l, C.unit_action_cocycle(yd), "rho->right")
        assert b.key == C.counit_bisection(l, "right").key

    def test_bisections_alphas_cocycles_agree(self):
        h, yd = kz(2, 3), weyl_yd()
        l, hd, _ = weyl()
        alphas = C.enumerate_objects(h, None, "weyl-alpha")
        rhos = {C.dict_weyl(h, a, "alpha->rho", yd=yd).key for a in alphas}
        assert rhos == {r.key for r in C.enumerate_objects(yd, None, "action-cocycle")}
        right = {C.dict_action(yd, l, C.dict_weyl(h, a, "alpha->rho", yd=yd), "rho->right").key for a in alphas}
        assert right == {b.key for b in C.enumerate_objects(l, hd, "bisection-right")}

    def test_cochain_round_trip(self):
        l, _, _, _, U = weyl_sets()
        yd = weyl_yd()
        for u in U:
            rho = C.dict_action(yd, l, u, "U->cochain")
            assert C.dict_action(yd, l, rho, "cochain->U").key == u.key


class TestGaugeAndEs:
    def test_rational_gauge_group(self):
        l, hd = es()
        G = C.gauge_group(galois())
        assert len(G) == 2
        for F in G:
            for side in ("left", "right"):
                b = C.dict_es(l, F, f"F->{side}")
                assert C.check_bisection(l, b.sigma, side).passed
                assert C.dict_es(l, b, f"{side}->F") == F

    def test_identity_is_counit(self):
        l, _ = es()
        b = C.dict_es(l, LinMap.identity(QQ, 2), "F->left")
        assert b.key == C.counit_bisection(l).key

    def test_gauge_matches_oracle(self):
        hg = galois(3)
        assert {O.as_columns(F, 2, 3) for F in C.gauge_group(hg)} == O.gauge_automorphisms(hg)

    def test_composition_matches_bisection_product(self):
        l, hd = es()
        G = C.gauge_group(galois())
        for F1, F2 in product(G, repeat=2):
            lhs = C.dict_es(l, F1.compose(F2), "F->left")
            prods = {C.bisection_mul(l, hd, C.dict_es(l, a, "F->left"), C.dict_es(l, b, "F->left")).key for a, b in ((F1, F2), (F2, F1))}
            assert lhs.key in prods


class TestSmashDictionary:
    def setup_method(self):
        self.h, self.b = kz(2, 3), fz(2, 3).alg
        self.act = translation_action(cyclic_group(2))
        self.l, self.hd = smash(3)

    def test_trivial_u_is_counit(self):
        u = LinMap(GF(3), 2, 2, [self.b.one()] * 2)
        U = C.dict_smash(self.h, self.b, self.act, self.l, u, "u->U")
        assert U.key == C.counit_cochain(self.l).key

    def test_sizes_agree(self):
        us = C.enum_smash_u(self.h, self.b, self.act)
        Us = C.enumerate_objects(self.l, self.hd, "ext-cochain")
        assert len(us) == sum(u.vertical_bisection for u in Us) == 2

    def test_coboundary_square_commutes(self):
        red = self.l.red
        for u in C.enum_smash_u(self.h, self.b, self.act, cocycle=False):
            U = C.dict_smash(self.h, self.b, self.act, self.l, u, "u->U")
            assert C.dict_smash(self.h, self.b, self.act, self.l, U, "U->u") == u
            du = C.smash_coboundary(self.h, self.b, self.act, u)
            G = C.dict_smash(self.h, self.b, self.act, self.l, du, "gamma->Gamma")
            assert C._fcanon(G, red) == C._fcanon(C.coboundary(self.l, U).G, red)


class TestWeylDictionary:
    def test_unit_alpha(self):
        h, yd = kz(2, 3), weyl_yd()
        assert C.dict_weyl(h, {0: 1, 1: 1}, "alpha->rho", yd=yd).key == C.unit_action_cocycle(yd).key

    def test_automorphisms(self):
        h, yd = kz(2, 3), weyl_yd()
        l, _, _ = weyl()
        f = fz(2, 3)
        autos = C.enumerate_objects(f.alg, None, "algebra-automorphism", counit=f.coalg.counit)
        for phi in autos:
            mor = C.dict_weyl(h, phi, "auto->algebroid", yd=yd, l=l)
            assert check_automorphism(l, mor).passed
            assert C.dict_weyl(h, mor, "algebroid->auto") == phi
            for a in C.enumerate_objects(h, None, "weyl-alpha"):
                assert C.dict_weyl(h, (phi, a), "act") == phi(a)

    @given(st.sampled_from([1, 2]))
    @settings(max_examples=4, deadline=None)
    def test_delta_gamma_round_trip(self, q):
        # delta(g^a, g^b) = q^(ab), a bicharacter hence a unital invertible cocycle
        h = kz(2, 3)
        delta = {(a, b): pow(q, a * b, 3) for a, b in product(range(2), repeat=2)}
        gamma = C.dict_weyl(h, delta, "delta->gamma")
        assert C.dict_weyl(h, gamma, "gamma->delta") == delta


class TestTransmutationDictionary:
    def setup_method(self):
        self.h = kz(3, 7)
        self.r = CQTStructure.bicharacter(self.h, 2)
        self.yd, self.l, self.hd = transmutation(self.h, self.r)

    def test_unit_beta(self):
        r = C.dict_transmutation(self.h, self.r, self.yd, self.yd.b.one())
        assert r.key == C.unit_action_cocycle(self.yd).key

    def test_group_like_beta(self):
        beta = {1: 1}
        r = C.dict_transmutation(self.h, self.r, self.yd, beta)
        assert C.action_cocycle_report(self.yd, r.rho).passed

    def test_image_is_all_of_z1(self):
        betas = C.transmutation_betas(self.h, self.yd)
        image = {C.dict_transmutation(self.h, self.r, self.yd, b).key for b in betas}
        assert image == {r.key for r in C.enumerate_objects(self.yd, None, "action-cocycle")}

    def test_homomorphism(self):
        betas = C.transmutation_betas(self.h, self.yd)[:6]
        under = self.yd.b
        for a, b in product(betas, repeat=2):
            lhs = C.dict_transmutation(self.h, self.r, self.yd, under.mul(a, b))
            rhs = C.action_mul(self.yd, C.dict_transmutation(self.h, self.r, self.yd, a), C.dict_transmutation(self.h, self.r, self.yd, b))
            rhs2 = C.action_mul(self.yd, C.dict_transmutation(self.h, self.r, self.yd, b), C.dict_transmutation(self.h, self.r, self.yd, a))
            assert lhs.key in (rhs.key, rhs2.key)
