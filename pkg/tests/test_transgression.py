"""Transgression: cylinder forms, homotopy operator, KCS, bigons."""

import random
from fractions import Fraction

import pytest

from kchern.connections import (Connection, ConnectionError_, Idempotent, Mat,
                                chern, direct_sum, grassmann,
                                random_connection, random_idempotent,
                                random_iso)
from kchern.exactmath import Poly1, Q0, Q1
from kchern.fixtures import FIXTURE_NAMES, make_fixture
from kchern.suites import _random_biform, _random_tform
from kchern.transgression import (BiForm, EPSILON_K, TForm, bigon_straight,
                                  chern_tform, constant_path,
                                  direct_sum_paths, ev, homotopy_K,
                                  induced_path, kcs, kcs_between,
                                  kcs_closed_form, pullback_path,
                                  reverse_path, secondary_transgression,
                                  straight_line, three_point_path,
                                  tilde_curvature, tform_operator, to_poly1)
from kchern.uforms import UForm, ab_d, project_ab


def unit_line_path(alg, theta1_form):
    """Straight line from theta = 0 to theta1 on the rank-1 free module."""
    p = Idempotent.identity(alg, 1)
    c0 = grassmann(p)
    c1 = Connection(p, Mat([[theta1_form]]))
    return c0, c1, straight_line(c0, c1)


class TestHomotopyOperator:
    def test_formula_random(self):
        for name in ("dual", "QxQ", "M2"):
            alg = make_fixture(name)
            rng = random.Random(20)
            for _ in range(20):
                w = _random_tform(alg, rng)
                lhs = homotopy_K(w.d()) + homotopy_K(w).d()
                assert lhs == ev(w, 1) - ev(w, 0)

    def test_ev_is_a_ring_map(self):
        alg = make_fixture("C2")
        rng = random.Random(21)
        for _ in range(10):
            a = _random_tform(alg, rng, 2)
            b = _random_tform(alg, rng, 2)
            for t in (Q0, Fraction(1, 2), Q1):
                assert ev(a * b, t) == ev(a, t) * ev(b, t)
                assert ev(a.d(), t) == ev(a, t).d()

    def test_tform_associativity(self):
        alg = make_fixture("x3")
        rng = random.Random(22)
        for _ in range(10):
            a, b, c = (_random_tform(alg, rng, 2) for _ in range(3))
            assert (a * b) * c == a * (b * c)


class TestPaths:
    def test_straight_line_endpoints(self):
        alg = make_fixture("QxQ")
        rng = random.Random(23)
        p = random_idempotent(alg, 2, rng)
        c0 = random_connection(p, rng)
        c1 = random_connection(p, rng)
        path = straight_line(c0, c1)
        assert path.ev(0).theta.entries == c0.theta.entries
        assert path.ev(1).theta.entries == c1.theta.entries

    def test_three_point_interpolation(self):
        alg = make_fixture("dual")
        rng = random.Random(24)
        p = random_idempotent(alg, 2, rng)
        c0, cm, c1 = (random_connection(p, rng) for _ in range(3))
        path = three_point_path(c0, cm, c1)
        assert path.ev(0).theta.entries == c0.theta.entries
        assert path.ev(Fraction(1, 2)).theta.entries == cm.theta.entries
        assert path.ev(1).theta.entries == c1.theta.entries

    def test_endpoint_mismatch_rejected(self):
        alg = make_fixture("QxQ")
        rng = random.Random(25)
        p = random_idempotent(alg, 2, rng)
        c0, c1, c2 = (random_connection(p, rng) for _ in range(3))
        with pytest.raises(ConnectionError_):
            bigon_straight(straight_line(c0, c1), straight_line(c0, c2))

    def test_cylinder_curvature_oracle(self):
        for name in FIXTURE_NAMES:
            alg = make_fixture(name)
            rng = random.Random(26)
            p = random_idempotent(alg, 2, rng)
            path = straight_line(random_connection(p, rng),
                                 random_connection(p, rng))
            r, s = tilde_curvature(path)
            n = p.size
            rt = Mat([[TForm(r.entries[i][j], s.entries[i][j])
                       for j in range(n)] for i in range(n)])
            pf = p.to_form().map(lambda u: TForm(to_poly1(u)))
            assert (rt * pf).entries == tform_operator(
                path, tform_operator(path, pf)).entries


class TestKCS:
    def test_dual_numbers_golden(self):
        # line from 0 to d(eps) on the free module: KCS_1 = [d eps]
        dual = make_fixture("dual")
        eps = UForm.from_element(dual.basis(1))
        _, _, path = unit_line_path(dual, eps.d())
        classes = kcs(path, 1)
        assert classes[0] == project_ab(eps.d())
        assert not classes[0].is_zero()

    def test_sign_calibration(self):
        # pins the closed-form sign epsilon_k = +1 against the golden value
        assert EPSILON_K == 1
        dual = make_fixture("dual")
        eps = UForm.from_element(dual.basis(1))
        _, _, path = unit_line_path(dual, eps.d())
        assert kcs_closed_form(path, 1) == kcs(path, 1)

    def test_transgression_identity(self):
        for name in FIXTURE_NAMES:
            alg = make_fixture(name)
            rng = random.Random(27)
            p = random_idempotent(alg, 2, rng)
            c0 = random_connection(p, rng)
            c1 = random_connection(p, rng)
            classes = kcs_between(c0, c1, 2)
            ch0 = chern(c0, 2)
            ch1 = chern(c1, 2)
            for k in (1, 2):
                assert ab_d(classes[k - 1]) == ch1[k] - ch0[k]

    def test_reversal_and_constant(self):
        alg = make_fixture("C2")
        rng = random.Random(28)
        p = random_idempotent(alg, 2, rng)
        c0 = random_connection(p, rng)
        c1 = random_connection(p, rng)
        path = straight_line(c0, c1)
        assert kcs(reverse_path(path), 2) == [-x for x in kcs(path, 2)]
        assert all(x.is_zero() for x in kcs(constant_path(c0), 2))

    def test_direct_sum_additivity(self):
        alg = make_fixture("QxQ")
        rng = random.Random(29)
        p = random_idempotent(alg, 2, rng)
        q = random_idempotent(alg, 1, rng)
        path1 = straight_line(random_connection(p, rng),
                              random_connection(p, rng))
        path2 = straight_line(random_connection(q, rng),
                              random_connection(q, rng))
        total = kcs(direct_sum_paths(path1, path2), 2)
        k1, k2 = kcs(path1, 2), kcs(path2, 2)
        assert total == [k1[i] + k2[i] for i in range(2)]

    def test_pullback_invariance(self):
        alg = make_fixture("dual")
        rng = random.Random(30)
        p0 = random_idempotent(alg, 2, rng)
        p1, iso = random_iso(p0, rng)
        path = straight_line(random_connection(p1, rng),
                             random_connection(p1, rng))
        assert kcs(pullback_path(path, iso), 2) == kcs(path, 2)

    def test_hom_naturality(self):
        from kchern.algebra import AlgebraHom
        from kchern.uforms import extend_hom
        x3 = make_fixture("x3")
        dual = make_fixture("dual")
        psi = AlgebraHom(x3, dual, [[Q1, Q0, Q0], [Q0, Q1, Q0]])
        f = extend_hom(psi)
        rng = random.Random(31)
        p = random_idempotent(x3, 2, rng)
        path = straight_line(random_connection(p, rng),
                             random_connection(p, rng))
        lhs = kcs(induced_path(path, psi), 2)
        rhs = [project_ab(f(cls.lift())) for cls in kcs(path, 2)]
        assert lhs == rhs

    def test_ev_compatibility_of_chern(self):
        alg = make_fixture("QxQ")
        rng = random.Random(32)
        p = random_idempotent(alg, 2, rng)
        path = straight_line(random_connection(p, rng),
                             random_connection(p, rng))
        chs_t = chern_tform(path, 2)
        for t in (Q0, Fraction(1, 2), Q1):
            cht = chern(path.ev(t), 2)
            for k in range(3):
                assert project_ab(ev(chs_t[k], t)) == cht[k]

    def test_closed_form_agreement_random(self):
        for name in ("dual", "QxQ", "C2"):
            alg = make_fixture(name)
            rng = random.Random(33)
            for i in range(5):
                p = random_idempotent(alg, 2, rng)
                c0 = random_connection(p, rng)
                c1 = random_connection(p, rng)
                if i % 2:
                    cm = random_connection(p, rng)
                    path = three_point_path(c0, cm, c1)
                else:
                    path = straight_line(c0, c1)
                assert kcs_closed_form(path, 2) == kcs(path, 2)


class TestBigons:
    def test_kk1_equals_kk2(self):
        for name in ("dual", "M2"):
            alg = make_fixture(name)
            rng = random.Random(34)
            for _ in range(20):
                b = _random_biform(alg, rng)
                assert homotopy_K(b.K1()) == homotopy_K(b.K2())

    def test_biform_associativity(self):
        alg = make_fixture("dual")
        rng = random.Random(35)
        for _ in range(10):
            a, b, c = (_random_biform(alg, rng, 1) for _ in range(3))
            assert (a * b) * c == a * (b * c)

    def test_biform_dd_zero(self):
        alg = make_fixture("QxQ")
        rng = random.Random(36)
        for _ in range(20):
            b = _random_biform(alg, rng)
            assert b.d().d() == BiForm.zero(alg)

    def test_secondary_transgression(self):
        for name in FIXTURE_NAMES:
            alg = make_fixture(name)
            rng = random.Random(37)
            p = random_idempotent(alg, 2, rng)
            c0 = random_connection(p, rng)
            c1 = random_connection(p, rng)
            cm = random_connection(p, rng)
            path1 = straight_line(c0, c1)
            path2 = three_point_path(c0, cm, c1)
            pots = secondary_transgression(bigon_straight(path1, path2), 2)
            k1 = kcs(path1, 2)
            k2 = kcs(path2, 2)
            for k in (1, 2):
                assert ab_d(pots[k - 1]) == k1[k - 1] - k2[k - 1]

    def test_bigon_edges_evaluate_to_paths(self):
        alg = make_fixture("dual")
        rng = random.Random(38)
        p = random_idempotent(alg, 2, rng)
        c0 = random_connection(p, rng)
        c1 = random_connection(p, rng)
        cm = random_connection(p, rng)
        path1 = straight_line(c0, c1)
        path2 = three_point_path(c0, cm, c1)
        bigon = bigon_straight(path1, path2)
        for t in (Q0, Q1):
            e0 = bigon.ev_s(0).ev(t).theta.entries
            assert e0 == path1.ev(t).theta.entries
            e1 = bigon.ev_s(1).ev(t).theta.entries
            assert e1 == path2.ev(t).theta.entries
