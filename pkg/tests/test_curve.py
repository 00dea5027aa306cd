import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from ecx.curve import (
    Curve,
    Point,
    enumerate_points,
    find_subgroups,
    group_order,
    in_hasse_interval,
    point_add,
    point_from_json,
    point_order,
    scalar_mul,
    subgroup_from_generator,
)
from ecx.errors import CurveMismatch, EnumerationTooLarge, NotOnCurve, SingularCurve
from ecx.finite_field import PrimeField


def _roots_with_multiplicity(coeffs, p):
    """Roots of a monic cubic over F_p (little-endian coeffs) by trial and synthetic division."""
    roots = []
    poly = list(coeffs)
    x = 0
    while len(poly) > 1 and x < p:
        # Horner / synthetic division by (X - x)
        quot, acc = [], 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
            quot.append(acc)
        if quot[-1] == 0:
            roots.append(x)
            poly = list(reversed(quot[:-1]))
        else:
            x += 1
    return roots


def oracle_add(p, a, b, P, Q):
    """Chord/tangent by brute force over lines through P; points are (x, y) tuples or None."""
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None  # vertical line
    for lam in range(p):
        c = (y1 - lam * x1) % p
        if (lam * x2 + c - y2) % p:
            continue
        # x^3 + a x + b - (lam x + c)^2
        cubic = [(b - c * c) % p, (a - 2 * lam * c) % p, (-lam * lam) % p, 1]
        roots = _roots_with_multiplicity(cubic, p)
        if len(roots) != 3:
            continue
        rest = list(roots)
        rest.remove(x1)
        if x2 not in rest:
            continue
        rest.remove(x2)
        x3 = rest[0]
        return (x3, (-(lam * x3 + c)) % p)
    raise AssertionError("no line through P and Q")


def as_tuple(P: Point):
    return None if P.is_infinity else (P.x.value, P.y.value)


def test_group_law_examples(e11):
    P = e11.point(2, 7)
    assert point_add(P, e11.infinity) == P
    assert point_add(P, e11.point(2, 4)).is_infinity
    assert as_tuple(point_add(P, P)) == (5, 2)


def test_group_law_matches_line_oracle(e11, e31):
    for curve in (e11, e31):
        p, a, b = curve.field.p, curve.a.value, curve.b.value
        pts = enumerate_points(curve)
        for P, Q in itertools.product(pts, repeat=2):
            assert as_tuple(P + Q) == oracle_add(p, a, b, as_tuple(P), as_tuple(Q))


def test_scalar_mul_examples(e11):
    P = e11.point(2, 7)
    assert scalar_mul(0, P).is_infinity
    assert scalar_mul(13, P).is_infinity
    assert scalar_mul(2, P) == point_add(P, P)


def test_scalar_mul_matches_repeated_addition(e31):
    for P in enumerate_points(e31):
        acc = e31.infinity
        for k in range(40):
            assert scalar_mul(k, P) == acc
            acc = acc + P


def test_scalar_mul_negative_rejected(e11):
    with pytest.raises(ValueError):
        scalar_mul(-1, e11.point(2, 7))


def test_singular_and_off_curve():
    with pytest.raises(SingularCurve):
        Curve(PrimeField(11), 0, 0)
    with pytest.raises(SingularCurve):
        Curve(PrimeField(11), -3, 2)  # x^3 - 3x + 2 = (x - 1)^2 (x + 2)
    with pytest.raises(NotOnCurve):
        Curve(PrimeField(11), 1, 6).point(2, 5)


def test_curve_mismatch(e11, e31):
    with pytest.raises(CurveMismatch):
        point_add(e11.point(2, 7), next(P for P in enumerate_points(e31) if not P.is_infinity))


def test_enumeration_count_and_cap(e11):
    assert len(enumerate_points(e11)) == 13
    with pytest.raises(EnumerationTooLarge):
        enumerate_points(e11, cap=10)


def test_per_x_residue_count_oracle(pinned_curves):
    for curve, expected in pinned_curves:
        assert group_order(curve) == expected


def test_ext_curve_count_in_hasse_interval(e49):
    n = group_order(e49)
    assert 36 <= n <= 64
    assert n == 55  # from #E(F_7) = 11 and #E(F_49) = q + 1 - (a1^2 - 2p)


def test_pinned_curves_hasse(pinned_curves):
    for curve, n in pinned_curves:
        assert in_hasse_interval(curve, n)
        lo, hi = curve.hasse_interval()
        assert lo <= n <= hi


def test_group_axioms_exhaustive_e11(e11):
    pts = enumerate_points(e11)
    O = e11.infinity
    for P in pts:
        assert P + O == P and O + P == P
        assert (P + (-P)).is_infinity
    for P, Q in itertools.product(pts, repeat=2):
        assert P + Q == Q + P
    for P, Q, R in itertools.product(pts, repeat=3):
        assert (P + Q) + R == P + (Q + R)


def test_group_axioms_ext_field(e49):
    pts = enumerate_points(e49)
    sample = pts[::4]
    for P, Q in itertools.product(sample, repeat=2):
        assert P + Q == Q + P
        assert e49.contains((P + Q).x, (P + Q).y) if not (P + Q).is_infinity else True
    for P, Q, R in itertools.product(pts[::9], repeat=3):
        assert (P + Q) + R == P + (Q + R)


def test_subgroup_examples(e11):
    trivial = subgroup_from_generator(e11.infinity)
    assert trivial.order == 1 and trivial.elements == (e11.infinity,)
    g = subgroup_from_generator(e11.point(2, 7))
    assert g.order == 13
    g.validate()
    assert [s.order for s in find_subgroups(e11, 13)] == [13]
    assert len(find_subgroups(e11, 1)) == 1
    assert find_subgroups(e11, 5) == []


def test_find_subgroups_coprime_orders(e31, e49):
    for curve, r, t in ((e31, 5, 7), (e49, 5, 11)):
        n = group_order(curve)
        assert n == r * t and math.gcd(r, t) == 1
        for d in (r, t, n):
            subs = find_subgroups(curve, d)
            assert len(subs) == 1
            subs[0].validate()


def test_find_subgroups_noncyclic_group():
    # y^2 = x^3 - x over F_11 has full 2-torsion: three subgroups of order 2
    curve = Curve(PrimeField(11), -1, 0)
    subs = find_subgroups(curve, 2)
    assert len(subs) == 3
    keys = [s.sort_key() for s in subs]
    assert keys == sorted(keys)
    assert len({s.element_set for s in subs}) == 3


def test_lagrange_every_point(pinned_curves):
    for curve, n in pinned_curves[:8]:
        for P in enumerate_points(curve):
            assert n % point_order(P) == 0


def test_point_json_roundtrip(e11, e49):
    for curve in (e11, e49):
        for P in enumerate_points(curve)[:6]:
            assert point_from_json(curve, P.to_json()) == P
    assert Curve.from_json(e49.to_json()) == e49


def test_audit_mode_catches_bad_points():
    curve = Curve(PrimeField(11), 1, 6)
    bogus = Point(curve, curve.field(2), curve.field(5))  # bypasses validation
    with pytest.raises(NotOnCurve):
        bogus + curve.point(3, 5)
    quiet = Curve(PrimeField(11), 1, 6, audit=False)
    Point(quiet, quiet.field(2), quiet.field(5)) + quiet.point(3, 5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([11, 13, 17, 19, 23, 29]), st.integers(0, 30), st.integers(0, 30))
def test_hasse_and_lagrange_property(p, a, b):
    F = PrimeField(p)
    try:
        curve = Curve(F, a, b)
    except SingularCurve:
        return
    n = group_order(curve)
    assert in_hasse_interval(curve, n)
    for P in enumerate_points(curve):
        assert n % subgroup_from_generator(P).order == 0
