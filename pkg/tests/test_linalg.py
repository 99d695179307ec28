from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algd.field import GF, QQ, FieldError
from algd.linalg import (
    Matrix,
    NoSolution,
    NotWellDefined,
    invert_between_quotients,
    kernel,
    quotient,
    rref,
    solve,
)

from helpers import weyl


def matrices(p, max_dim=4):
    vals = st.integers(0, p - 1) if p else st.integers(-3, 3)
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(vals, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


FIELDS = [(QQ, None), (GF(5), 5), (GF(3), 3)]


class TestField:
    def test_coercion(self):
        assert QQ("-3/4") == Fraction(-3, 4)
        assert GF(7)(Fraction(1, 2)) == 4
        assert GF(7)(-1) == 6

    def test_rejects_composite_modulus(self):
        with pytest.raises(FieldError):
            GF(6)

    @given(st.integers(1, 6))
    def test_inverse_mod_7(self, x):
        F = GF(7)
        assert F.reduce(x * F.inv(x)) == 1


class TestRref:
    def test_identity(self):
        m, piv = rref(Matrix.identity(QQ, 2))
        assert m == Matrix.identity(QQ, 2) and piv == [0, 1]

    def test_zero(self):
        m, piv = rref(Matrix.zeros(QQ, 2, 2))
        assert m == Matrix.zeros(QQ, 2, 2) and piv == []

    def test_dependent_rows_mod_3(self):
        m, piv = rref(Matrix.from_rows(GF(3), [[1, 2], [2, 1]]))
        assert m.data == [[1, 2], [0, 0]] and piv == [0]

    @pytest.mark.parametrize("F,p", FIELDS)
    @given(data=st.data())
    @settings(max_examples=40)
    def test_idempotent(self, F, p, data):
        a = Matrix.from_rows(F, data.draw(matrices(p)))
        r1, p1 = rref(a)
        r2, p2 = rref(r1)
        assert r1 == r2 and p1 == p2


class TestSolve:
    def test_identity(self):
        assert solve(Matrix.identity(QQ, 2), [3, 4]) == [3, 4]

    def test_zero_matrix_nonzero_rhs(self):
        with pytest.raises(NoSolution):
            solve(Matrix.zeros(QQ, 2, 2), [1, 0])

    def test_half(self):
        assert solve(Matrix.from_rows(QQ, [[2]]), [1]) == [Fraction(1, 2)]

    @pytest.mark.parametrize("F,p", FIELDS)
    @given(data=st.data())
    @settings(max_examples=40)
    def test_solution_of_consistent_system(self, F, p, data):
        a = Matrix.from_rows(F, data.draw(matrices(p)))
        x = data.draw(st.lists(st.integers(-2, 2), min_size=a.cols, max_size=a.cols))
        b = (a @ Matrix.from_rows(F, [[v] for v in x])).data
        sol = solve(a, [r[0] for r in b])
        assert (a @ Matrix.from_rows(F, [[v] for v in sol])).data == b


class TestKernel:
    def test_identity(self):
        assert kernel(Matrix.identity(QQ, 3)).rows == 0

    def test_zero(self):
        assert kernel(Matrix.zeros(QQ, 2, 2)).rows == 2

    def test_row_sum(self):
        k = kernel(Matrix.from_rows(QQ, [[1, 1]]))
        assert k.rows == 1
        x, y = k.data[0]
        assert x == -y != 0

    @pytest.mark.parametrize("F,p", FIELDS)
    @given(data=st.data())
    @settings(max_examples=40)
    def test_rank_nullity(self, F, p, data):
        a = Matrix.from_rows(F, data.draw(matrices(p)))
        k = kernel(a)
        _, piv = rref(a)
        assert k.rows + len(piv) == a.cols
        if k.rows:
            assert all(v == 0 for row in (a @ k.transpose()).data for v in row)


class TestQuotient:
    def test_no_relations(self):
        q = quotient(3, [], QQ)
        assert q.q == 3 and q.P.is_identity() and q.S.is_identity()

    def test_full_relations(self):
        assert quotient(2, [[1, 0], [0, 1]], QQ).q == 0

    def test_single_relation(self):
        q = quotient(2, [[1, -1]], QQ)
        assert q.q == 1
        assert q.project({0: 1}) == q.project({1: 1})

    @pytest.mark.parametrize("F,p", FIELDS)
    @given(data=st.data())
    @settings(max_examples=40)
    def test_section_is_right_inverse(self, F, p, data):
        rows = data.draw(matrices(p))
        q = quotient(Matrix.from_rows(F, rows).cols, rows, F)
        if q.q:
            assert (q.P @ q.S).is_identity()
        # relations project to zero
        for r in rows:
            assert q.is_zero({j: F(x) for j, x in enumerate(r) if x})


class TestInvertBetweenQuotients:
    def test_identity(self):
        q = quotient(2, [[1, -1]], QQ)
        inv = invert_between_quotients(Matrix.identity(QQ, 2), q, q)
        assert inv.is_identity()

    def test_not_well_defined(self):
        dom = quotient(2, [[1, -1]], QQ)
        cod = quotient(2, [], QQ)
        with pytest.raises(NotWellDefined):
            invert_between_quotients(Matrix.identity(QQ, 2), dom, cod)

    def test_weyl_lambda(self):
        from algd.algebroid import TensorQuotients, lambda_map

        l, hd, _ = weyl()
        q = TensorQuotients(l)
        assert q.Q_Bop.n == 16 and q.Q_Bop.q == 8 and q.Q_B.q == 8
        inv = invert_between_quotients(lambda_map(l), q.Q_Bop, q.Q_B)
        lam, lam_inv = hd.lam_matrices()
        assert (lam @ inv).is_identity() and inv == lam_inv
