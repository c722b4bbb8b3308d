"""Structure-constant algebras, constructors, homs, and JSON I/O."""

from fractions import Fraction

import pytest

from kchern.algebra import (AlgebraError, AlgebraHom, algebra_from_json,
                            algebra_to_json, apply_hom, make_group_algebra,
                            make_matrix_algebra, make_product,
                            make_truncated_poly, mul)
from kchern.exactmath import Q0, Q1
from kchern.fixtures import FIXTURE_NAMES, make_fixture


class TestConstructors:
    def test_truncated_poly(self):
        dual = make_truncated_poly(2)
        eps = dual.basis(1)
        assert mul(eps, eps) == dual.zero()
        assert mul(dual.unit(), eps) == eps

    def test_matrix_algebra_relations(self):
        m2 = make_matrix_algebra(2)
        # basis: 1, E11, E12, E21; E22 = 1 - E11
        one, e11, e12, e21 = (m2.basis(i) for i in range(4))
        e22 = one - e11
        assert mul(e11, e11) == e11
        assert mul(e12, e21) == e11
        assert mul(e21, e12) == e22
        assert mul(e12, e12) == m2.zero()
        assert mul(e11, e12) == e12
        assert mul(e12, e11) == m2.zero()

    def test_product_algebra(self):
        qq = make_fixture("QxQ")
        e = qq.basis(1)          # (1, 0)
        assert mul(e, e) == e
        f = qq.unit() - e        # (0, 1)
        assert mul(e, f) == qq.zero()

    def test_group_algebra_c2(self):
        c2 = make_fixture("C2")
        g = c2.basis(1)
        assert mul(g, g) == c2.unit()

    def test_group_algebra_rejects_broken_table(self):
        with pytest.raises(AlgebraError):
            make_group_algebra([[0, 1], [1, 1]])
        with pytest.raises(AlgebraError):
            make_group_algebra([[1, 0], [0, 1]])

    def test_all_fixtures_validate(self):
        for name in FIXTURE_NAMES:
            alg = make_fixture(name)
            assert alg.dim >= 1

    def test_rejects_nonassociative(self):
        from kchern.algebra import Algebra
        z, o = Q0, Q1
        # x*x = y, x*y = 1, y*x = 0: (xx)x != x(xx)
        mul_table = [
            [[o, z, z], [z, o, z], [z, z, o]],
            [[z, o, z], [z, z, o], [o, z, z]],
            [[z, z, o], [z, z, z], [z, z, z]],
        ]
        with pytest.raises(AlgebraError, match="associativity"):
            Algebra(mul_table)

    def test_rejects_misplaced_unit(self):
        from kchern.algebra import Algebra
        z, o = Q0, Q1
        # basis (x, 1) with x^2 = 0: the unit is element 1, not 0
        mul_table = [
            [[z, z], [o, z]],
            [[o, z], [z, o]],
        ]
        with pytest.raises(AlgebraError, match="unit"):
            Algebra(mul_table)


class TestHoms:
    def test_truncation_hom(self):
        x3 = make_fixture("x3")
        dual = make_fixture("dual")
        psi = AlgebraHom(x3, dual, [[Q1, Q0, Q0], [Q0, Q1, Q0]])
        x = x3.basis(1)
        assert psi(x) == dual.basis(1)
        assert psi(mul(x, x)) == dual.zero()

    def test_diagonal_hom(self):
        q = make_fixture("Q")
        qq = make_fixture("QxQ")
        psi = AlgebraHom(q, qq, [[Q1], [Q0]])
        assert apply_hom(psi, q.unit()) == qq.unit()

    def test_rejects_non_multiplicative(self):
        dual = make_fixture("dual")
        with pytest.raises(AlgebraError):
            # eps -> 1 does not preserve eps^2 = 0
            AlgebraHom(dual, dual, [[Q1, Q1], [Q0, Q0]])

    def test_rejects_unit_breaking(self):
        q = make_fixture("Q")
        with pytest.raises(AlgebraError):
            AlgebraHom(q, q, [[Fraction(2)]])


class TestJson:
    def test_round_trip_all_fixtures(self):
        for name in FIXTURE_NAMES:
            alg = make_fixture(name)
            again = algebra_from_json(algebra_to_json(alg))
            assert again == alg
            assert again.names == alg.names

    def test_rejects_malformed(self):
        with pytest.raises(AlgebraError):
            algebra_from_json({"dim": 2})
