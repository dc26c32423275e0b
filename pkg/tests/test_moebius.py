import cmath
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pleatbend.errors import (DegenerateConfiguration, DegenerateLength,
                              IdentityMap, SingularMatrix)
from pleatbend.moebius import (EPS_CLASS, IsometryClass, MoebiusMap,
                               ProjectivePoint, chordal, classify,
                               complex_length, cross_ratio, fixed_points,
                               normalizing_map, reduce_angle, trace_squared)

finite = st.complex_numbers(min_magnitude=0, max_magnitude=10,
                            allow_nan=False, allow_infinity=False)
small = st.complex_numbers(min_magnitude=0, max_magnitude=3,
                           allow_nan=False, allow_infinity=False)


def maps(draw_entries=small):
    return st.tuples(draw_entries, draw_entries, draw_entries, draw_entries) \
        .filter(lambda e: abs(e[0] * e[3] - e[1] * e[2]) > 1e-3) \
        .map(lambda e: MoebiusMap(*e))


points = st.one_of(
    finite.map(ProjectivePoint.from_complex),
    st.just(ProjectivePoint.infinity()))


class TestProjectivePoint:
    def test_scaling_equality(self):
        p = ProjectivePoint(1 + 2j, 3 - 1j)
        q = ProjectivePoint((1 + 2j) * (0.5 - 4j), (3 - 1j) * (0.5 - 4j))
        assert p.approx_eq(q)
        assert chordal(p, q) < 1e-12

    @given(points)
    def test_self_distance_zero(self, p):
        assert chordal(p, p) == pytest.approx(0, abs=1e-12)

    @given(points, points)
    def test_chordal_bounded_by_two(self, p, q):
        assert chordal(p, q) <= 2 + 1e-12

    def test_infinity_round_trip(self):
        inf = ProjectivePoint.infinity()
        assert inf.is_infinity()
        assert ProjectivePoint.from_complex(4 - 1j).to_complex() == 4 - 1j

    @given(points, points, points)
    def test_equality_is_an_equivalence(self, p, q, r):
        if p.approx_eq(q) and q.approx_eq(r):
            assert chordal(p, r) < 1e-6


class TestMoebiusMap:
    def test_determinant_normalized(self):
        m = MoebiusMap(2, 0, 0, 2)
        (a, b), (c, d) = m.rows()
        assert a * d - b * c == pytest.approx(1)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            MoebiusMap(1, 2, 2, 4)

    def test_sign_quotient(self):
        m = MoebiusMap(2, 1, 1, 1)
        n = MoebiusMap(-2, -1, -1, -1)
        assert m.distance_to(n) < 1e-12

    @given(maps(), maps())
    def test_composition_acts_correctly(self, m, n):
        p = ProjectivePoint.from_complex(0.5 + 0.25j)
        lhs = (m @ n).apply(p)
        rhs = m.apply(n.apply(p))
        assert chordal(lhs, rhs) < 1e-6

    @given(maps())
    def test_inverse(self, m):
        assert (m @ m.inverse()).is_identity()

    def test_normalization_idempotent(self):
        m = MoebiusMap(3, 1, 2, 1)
        again = MoebiusMap(*(m.rows()[0] + m.rows()[1]))
        assert m.distance_to(again) < 1e-14

    def test_apply_interior_preserves_height_model(self):
        # vertical translation along the 0-inf axis scales heights
        m = MoebiusMap.diagonal(2)      # z -> 4z
        z, t = m.apply_interior(0j, 1.0)
        assert z == pytest.approx(0)
        assert t == pytest.approx(4)


class TestClassify:
    def test_frozen_loxodromic_example(self):
        m = MoebiusMap(2, 0, 0, 0.5)
        assert classify(m) == IsometryClass.LOXODROMIC
        assert trace_squared(m) == pytest.approx(6.25)
        assert complex_length(m) == pytest.approx(2 * math.log(2))
        att, rep = fixed_points(m)
        assert att.is_infinity()
        assert rep.to_complex() == pytest.approx(0)

    def test_frozen_parabolic_example(self):
        m = MoebiusMap(1, 1, 0, 1)
        assert classify(m) == IsometryClass.PARABOLIC
        p, other = fixed_points(m)
        assert p.is_infinity()
        assert other is None

    def test_frozen_elliptic_example(self):
        m = MoebiusMap(cmath.exp(1j * math.pi / 8), 0, 0,
                       cmath.exp(-1j * math.pi / 8))
        assert classify(m) == IsometryClass.ELLIPTIC
        lam = complex_length(m)
        assert lam.real == pytest.approx(0, abs=1e-12)
        assert abs(lam.imag) == pytest.approx(math.pi / 4)

    def test_identity(self):
        assert classify(MoebiusMap.identity()) == IsometryClass.IDENTITY
        with pytest.raises(DegenerateLength):
            complex_length(MoebiusMap.identity())
        with pytest.raises(IdentityMap):
            fixed_points(MoebiusMap.identity())

    def test_near_parabolic_tolerance_window(self):
        # trace 2 + tiny: inside the parabolic window at loose tolerance,
        # loxodromic at tight tolerance
        m = MoebiusMap(1 + 1e-5, 1, 0, 1 / (1 + 1e-5))
        assert classify(m, eps_class=1e-6) == IsometryClass.PARABOLIC
        assert classify(m, eps_class=1e-12) != IsometryClass.PARABOLIC

    @given(maps(), maps())
    @settings(max_examples=60)
    def test_conjugation_invariant(self, m, g):
        assume(abs(trace_squared(m) - 4) > 1e-3)
        cond = g.condition_number() if hasattr(g, "condition_number") else 1
        assume(cond < 1e6)
        assert classify(m) == classify(m.conjugate_by(g))

    @given(maps())
    @settings(max_examples=80)
    def test_fixed_points_are_fixed(self, m):
        assume(classify(m) in (IsometryClass.LOXODROMIC, IsometryClass.ELLIPTIC))
        pts = fixed_points(m)
        gap = chordal(pts[0], pts[1])
        assume(gap > 1e-3)
        for p in pts:
            assert chordal(m.apply(p), p) < 1e-6

    @given(maps())
    @settings(max_examples=60)
    def test_inverse_swaps_fixed_points(self, m):
        assume(classify(m) == IsometryClass.LOXODROMIC)
        att, rep = fixed_points(m)
        assume(chordal(att, rep) > 1e-3)
        att_inv, rep_inv = fixed_points(m.inverse())
        assert chordal(att, rep_inv) < 1e-6
        assert chordal(rep, att_inv) < 1e-6

    def test_attracting_first(self):
        m = MoebiusMap(2, 0, 0, 0.5)     # attracts to infinity
        att, _ = fixed_points(m)
        p = ProjectivePoint.from_complex(1 + 1j)
        for _ in range(30):
            p = m.apply(p)
        assert chordal(p, att) < 1e-6


class TestComplexLength:
    @given(maps())
    @settings(max_examples=60)
    def test_normal_form(self, m):
        assume(classify(m) in (IsometryClass.LOXODROMIC, IsometryClass.ELLIPTIC))
        lam = complex_length(m)
        assert lam.real >= -1e-14
        assert -math.pi < lam.imag <= math.pi + 1e-12

    @given(maps())
    @settings(max_examples=40)
    def test_power_scaling(self, m):
        assume(classify(m) == IsometryClass.LOXODROMIC)
        lam = complex_length(m)
        assume(lam.real > 0.05)
        power = m
        for n in range(2, 6):
            power = power @ m
            expected = n * lam
            got = complex_length(power)
            diff = got - expected
            # agreement modulo 2 pi i
            assert diff.real == pytest.approx(0, abs=1e-8)
            assert math.remainder(diff.imag, 2 * math.pi) == pytest.approx(0, abs=1e-6)

    def test_trace_length_relation(self):
        lam = 1.4 + 0.7j
        m = MoebiusMap.diagonal(cmath.exp(lam / 2))
        assert complex_length(m) == pytest.approx(lam)


class TestCrossRatio:
    def test_normalization_triple(self):
        z = 2.5 - 1.25j
        got = cross_ratio(ProjectivePoint.from_complex(0),
                          ProjectivePoint.infinity(),
                          ProjectivePoint.from_complex(1),
                          ProjectivePoint.from_complex(z))
        assert got == pytest.approx(z)

    @given(finite, finite, finite, finite)
    @settings(max_examples=60)
    def test_moebius_invariance(self, p1, p2, p3, p4):
        pts = [p1, p2, p3, p4]
        assume(min(abs(a - b) for i, a in enumerate(pts)
                   for b in pts[i + 1:]) > 1e-2)
        m = MoebiusMap(1 + 1j, 0.5, -0.25, 1 - 0.5j)
        pp = [ProjectivePoint.from_complex(z) for z in pts]
        before = cross_ratio(*pp)
        after = cross_ratio(*(m.apply(p) for p in pp))
        assert after == pytest.approx(before, rel=1e-6)

    @given(finite, finite, finite, finite)
    @settings(max_examples=60)
    def test_first_pair_swap_inverts(self, p1, p2, p3, p4):
        pts = [p1, p2, p3, p4]
        assume(min(abs(a - b) for i, a in enumerate(pts)
                   for b in pts[i + 1:]) > 1e-2)
        pp = [ProjectivePoint.from_complex(z) for z in pts]
        plain = cross_ratio(pp[0], pp[1], pp[2], pp[3])
        swapped = cross_ratio(pp[1], pp[0], pp[2], pp[3])
        assume(abs(plain) > 1e-6)
        assert swapped == pytest.approx(1 / plain, rel=1e-6)

    def test_degenerate_rejected(self):
        p = ProjectivePoint.from_complex(1)
        q = ProjectivePoint.from_complex(2)
        r = ProjectivePoint.from_complex(3)
        with pytest.raises(DegenerateConfiguration):
            cross_ratio(p, p, q, r)


class TestReduceAngle:
    @given(st.floats(-50, 50))
    def test_range(self, x):
        r = reduce_angle(x)
        assert -math.pi < r <= math.pi

    @given(st.floats(-50, 50))
    def test_congruent(self, x):
        r = reduce_angle(x)
        assert math.remainder(x - r, 2 * math.pi) == pytest.approx(0, abs=1e-9)

    def test_boundary(self):
        assert reduce_angle(math.pi) == pytest.approx(math.pi)
        assert reduce_angle(-math.pi) == pytest.approx(math.pi)


class TestNormalizingMap:
    @given(points, points)
    @settings(max_examples=60)
    def test_sends_endpoints(self, p, q):
        assume(chordal(p, q) > 1e-3)
        m = normalizing_map(p, q)
        assert chordal(m.apply(p), ProjectivePoint.from_complex(0)) < 1e-8
        assert chordal(m.apply(q), ProjectivePoint.infinity()) < 1e-8
