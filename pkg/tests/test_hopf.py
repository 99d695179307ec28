from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algd.constructions import bicrossproduct_transversal, transversal_hopf
from algd.errors import NotAGroup
from algd.field import GF, QQ
from algd.groups import FiniteGroup, cyclic_group, symmetric_group_s3
from algd.hopf import (
    CoquasiBialgebra,
    CQTStructure,
    HopfAlgebra,
    LinMap,
    check_coquasi_bialgebra,
    check_coquasitriangular,
    check_pairing,
    convolution_inverse,
    convolve,
    dual_hopf,
    function_algebra,
    group_algebra,
    unit_functional,
)

from helpers import kz


class TestGroupAlgebra:
    def test_z2_antipode_identity(self):
        h = kz(2)
        assert h.dim == 2 and h.antipode_matrix.is_identity()

    def test_s3_antipode_inverse_permutation(self):
        g = symmetric_group_s3()
        h = group_algebra(g, QQ)
        assert h.dim == 6
        assert all(h.antipode({x: 1}) == {g.inv(x): 1} for x in range(6))

    def test_non_associative_table(self):
        with pytest.raises(NotAGroup):
            FiniteGroup(((0, 1, 2), (1, 0, 0), (2, 2, 1)))

    @pytest.mark.parametrize("n,p", [(2, None), (3, 7), (4, None)])
    def test_axioms(self, n, p):
        assert kz(n, p).check().passed

    def test_s3_axioms(self):
        assert group_algebra(symmetric_group_s3(), QQ).check().passed


class TestFunctionAlgebra:
    def test_idempotents(self):
        f = function_algebra(cyclic_group(2), QQ)
        assert f.mul({0: 1}, {0: 1}) == {0: 1}
        assert f.mul({0: 1}, {1: 1}) == {}
        assert f.one() == {0: 1, 1: 1}

    def test_coproduct(self):
        f = function_algebra(cyclic_group(2), QQ)
        assert f.delta({1: 1}) == {(0, 1): 1, (1, 0): 1}

    @pytest.mark.parametrize("n", [2, 3])
    def test_axioms(self, n):
        assert function_algebra(cyclic_group(n), GF(5)).check().passed


class TestDual:
    def test_dual_of_group_algebra_is_function_algebra(self):
        hd, P = dual_hopf(kz(2))
        f = function_algebra(cyclic_group(2), QQ)
        assert hd.alg.table == f.alg.table
        assert hd.coalg.cop == f.coalg.cop
        assert P.is_identity()

    def test_pairing_identities(self):
        h = group_algebra(symmetric_group_s3(), QQ)
        hd, P = dual_hopf(h)
        assert check_pairing(h, hd, P).passed

    @pytest.mark.parametrize("n", [2, 3])
    def test_double_dual(self, n):
        h = kz(n, 5)
        hdd, _ = dual_hopf(dual_hopf(h)[0])
        assert hdd.alg.table == h.alg.table and hdd.coalg.cop == h.coalg.cop


class TestConvolutionInverse:
    def test_counit_is_its_own_inverse(self):
        h = kz(3, 7)
        eps = {(i,): c for i, c in enumerate(h.coalg.counit) if c}
        assert convolution_inverse(eps, [h.coalg]) == eps

    def test_identity_map_inverts_to_antipode(self):
        h = kz(2)
        ident = {(i,): {i: 1} for i in range(2)}
        inv = convolution_inverse(ident, [h.coalg], h.alg)
        assert inv == {(i,): h.antipode({i: 1}) for i in range(2)}

    def test_bicharacter_inverse(self):
        # R^-1(g^a, g^b) = 2^(-ab) = 4^(ab) mod 7
        h = kz(3, 7)
        r = CQTStructure.bicharacter(h, 2)
        inv = convolution_inverse(r.R, [h.coalg, h.coalg])
        assert all(inv[(a, b)] == pow(4, a * b, 7) for a, b in product(range(3), repeat=2))

    @given(st.integers(1, 6))
    def test_functional_on_grouplikes_inverts_pointwise(self, x):
        h = kz(2, 7)
        f = {(0,): 1, (1,): x}
        g = convolution_inverse(f, [h.coalg])
        assert g[(1,)] == pow(x, -1, 7)
        assert convolve(f, g, [h.coalg]) == unit_functional([h.coalg])


class TestCoquasitriangular:
    def test_trivial_r_on_cocommutative(self):
        h = kz(3, 7)
        R = {(a, b): h.coalg.counit[a] * h.coalg.counit[b] for a in range(3) for b in range(3)}
        assert check_coquasitriangular(h, CQTStructure(R)).passed

    def test_bicharacter_q2(self):
        h = kz(3, 7)
        assert check_coquasitriangular(h, CQTStructure.bicharacter(h, 2)).passed

    def test_bicharacter_q3_fails_multiplicativity(self):
        h = kz(3, 7)
        rep = check_coquasitriangular(h, CQTStructure.bicharacter(h, 3))
        assert not rep.passed
        bad = {r.law for r in rep.failures}
        assert bad & {"R(h, gf) = R(h1, f) R(h2, g)", "R(hg, f) = R(h, f1) R(g, f2)"}
        assert all(r.witness for r in rep.failures if r.law.startswith("R(h"))


class TestCoquasiBialgebra:
    def test_trivial_phi(self):
        assert check_coquasi_bialgebra(CoquasiBialgebra.from_hopf(group_algebra(symmetric_group_s3(), QQ))).passed

    def test_z4_transversal(self):
        td, hq, kG, act, gamma = bicrossproduct_transversal(cyclic_group(4), [0, 2], [0, 1])
        assert hq.dim == 4
        assert check_coquasi_bialgebra(hq).passed
        eps = hq.coalg.counit
        assert any(
            hq.phi.get(t, 0) != eps[t[0]] * eps[t[1]] * eps[t[2]] for t in product(range(4), repeat=3)
        )

    def test_tau_forced_trivial_gives_trivial_phi(self):
        # both actions are trivial and the product only uses s.t = s + t mod 2,
        # so tau = 0 leaves an ordinary (associative, trivial phi) bialgebra
        td = bicrossproduct_transversal(cyclic_group(4), [0, 2], [0, 1])[0]
        assert td.tau[(1, 1)] == 2 and td.dot[(1, 1)] == 0
        hq = transversal_hopf(td, tau_override={k: 0 for k in td.tau})[0]
        eps = hq.coalg.counit
        assert all(hq.phi.get(t, 0) == eps[t[0]] * eps[t[1]] * eps[t[2]] for t in product(range(4), repeat=3))
        assert check_coquasi_bialgebra(hq).passed

    def test_zeroed_phi_fails_with_witness(self):
        hq = bicrossproduct_transversal(cyclic_group(4), [0, 2], [0, 1])[1]
        rep = check_coquasi_bialgebra(CoquasiBialgebra(hq.alg, hq.coalg, {}))
        assert not rep.passed
        assert rep.law("(1) phi(h, 1, g) = eps(hg)").witness["basis"] == [0, 0]
