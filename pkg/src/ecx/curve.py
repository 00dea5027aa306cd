"""
Short Weierstrass curves y^2 = x^3 + a x + b over F_p or F_{p^n}.

Affine chord-and-tangent group law, exhaustive point enumeration and cyclic
subgroups, all sized for exact audits on small curves.  With ``audit=True``
(the default) every group operation re-checks that its result lies on the
curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import List, Optional, Tuple

from .config import enumeration_cap
from .errors import CurveMismatch, EnumerationTooLarge, NotOnCurve, SingularCurve
from .finite_field import Element, Field, field_from_json


@dataclass(frozen=True)
class Curve:
    field: Field
    a: Element
    b: Element
    audit: bool = dc_field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", self.field(self.a))
        object.__setattr__(self, "b", self.field(self.b))
        if (4 * self.a ** 3 + 27 * self.b ** 2).is_zero():
            raise SingularCurve(f"4a^3 + 27b^2 = 0 for a={self.a}, b={self.b} over {self.field}")

    @cached_property
    def infinity(self) -> "Point":
        return Point(self)

    def rhs(self, x: Element) -> Element:
        return x * x * x + self.a * x + self.b

    def contains(self, x, y) -> bool:
        x, y = self.field(x), self.field(y)
        return y * y == self.rhs(x)

    def point(self, x, y) -> "Point":
        """Affine point (x, y), validated against the curve equation."""
        x, y = self.field(x), self.field(y)
        if y * y != self.rhs(x):
            raise NotOnCurve(f"({x}, {y}) is not on {self}")
        return Point(self, x, y)

    def lift_x(self, x) -> Tuple["Point", ...]:
        """All affine points with abscissa ``x`` (zero, one or two of them)."""
        x = self.field(x)
        roots = self.field.sqrt(self.rhs(x))
        if roots is None:
            return ()
        return tuple(Point(self, x, y) for y in roots)

    @cached_property
    def _points(self) -> Tuple["Point", ...]:
        pts = [self.infinity]
        for x in self.field.elements():
            pts.extend(self.lift_x(x))
        return tuple(pts)

    @cached_property
    def _orders(self) -> dict:
        n = len(self._points)
        return {P: point_order(P, n) for P in self._points}

    def hasse_interval(self) -> Tuple[float, float]:
        q = self.field.order
        return q + 1 - 2 * q ** 0.5, q + 1 + 2 * q ** 0.5

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, obj: dict, audit: bool = True) -> "Curve":
        f = field_from_json(obj["field"])
        return cls(f, f.element_from_json(obj["a"]), f.element_from_json(obj["b"]), audit=audit)

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b} over {self.field}"


class Point:
    """Affine point on a curve, or the point at infinity when ``x is None``."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: Curve, x: Optional[Element] = None, y: Optional[Element] = None):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __add__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return point_add(self, other)

    def __neg__(self):
        if self.is_infinity:
            return self
        return Point(self.curve, self.x, -self.y)

    def __sub__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return point_add(self, -other)

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return scalar_mul(k, self)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.curve is not other.curve and self.curve != other.curve:
            return False
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def key(self) -> tuple:
        """Sort key: infinity first, then lexicographic on (x, y)."""
        if self.is_infinity:
            return ()
        return (self.x.key(), self.y.key())

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    def __repr__(self):
        if self.is_infinity:
            return "Point(infinity)"
        return f"Point({self.x}, {self.y})"


def point_from_json(curve: Curve, obj) -> Point:
    if obj == "infinity":
        return curve.infinity
    if not isinstance(obj, dict) or set(obj) != {"x", "y"}:
        raise ValueError(f"point must be 'infinity' or {{'x': .., 'y': ..}}, got {obj!r}")
    f = curve.field
    return curve.point(f.element_from_json(obj["x"]), f.element_from_json(obj["y"]))


def point_add(P: Point, Q: Point) -> Point:
    curve = P.curve
    if Q.curve is not curve and Q.curve != curve:
        raise CurveMismatch(f"{P!r} and {Q!r} lie on different curves")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if (y1 + y2).is_zero():
            return curve.infinity
        lam = (3 * x1 * x1 + curve.a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    if curve.audit and y3 * y3 != curve.rhs(x3):
        raise NotOnCurve(f"group law left the curve: {P!r} + {Q!r}")
    return Point(curve, x3, y3)


def scalar_mul(k: int, P: Point) -> Point:
    """[k]P by left-to-right double-and-add."""
    if k < 0:
        raise ValueError(f"scalar must be non-negative, got {k}")
    R = P.curve.infinity
    for bit in bin(k)[2:]:
        R = point_add(R, R)
        if bit == "1":
            R = point_add(R, P)
    return R


def enumerate_points(curve: Curve, cap: Optional[int] = None) -> List[Point]:
    """Every point of E(F_q): infinity first, then affine points in x order."""
    cap = enumeration_cap() if cap is None else cap
    if curve.field.order > cap:
        raise EnumerationTooLarge(f"field size {curve.field.order} exceeds cap {cap}")
    return list(curve._points)


def group_order(curve: Curve, cap: Optional[int] = None) -> int:
    return len(enumerate_points(curve, cap))


def in_hasse_interval(curve: Curve, count: int) -> bool:
    q = curve.field.order
    return (count - q - 1) ** 2 <= 4 * q


def _prime_factors(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def point_order(P: Point, multiple: Optional[int] = None, cap: Optional[int] = None) -> int:
    """Order of P, found by stripping prime factors from a known multiple of it."""
    n = group_order(P.curve, cap) if multiple is None else multiple
    if not scalar_mul(n, P).is_infinity:
        raise ValueError(f"{n} is not a multiple of the order of {P!r}")
    for ell in _prime_factors(n):
        while n % ell == 0 and scalar_mul(n // ell, P).is_infinity:
            n //= ell
    return n


@dataclass(frozen=True)
class Subgroup:
    """Cyclic subgroup <generator>; ``elements[i]`` is ``[i]generator`` when enumerated."""

    curve: Curve
    generator: Point
    order: int
    elements: Optional[Tuple[Point, ...]] = dc_field(default=None, compare=False, repr=False)

    @cached_property
    def element_set(self) -> frozenset:
        if self.elements is None:
            raise EnumerationTooLarge("subgroup was not enumerated")
        return frozenset(self.elements)

    def __contains__(self, P: Point) -> bool:
        return P in self.element_set

    def __len__(self) -> int:
        return self.order

    def sort_key(self) -> tuple:
        nonid = [P.key() for P in self.elements if not P.is_infinity]
        return min(nonid) if nonid else ()

    def validate(self) -> None:
        """Check [order]G = O, minimality of the order and the element list."""
        G = self.generator
        if not scalar_mul(self.order, G).is_infinity:
            raise AssertionError("[order]G != O")
        for ell in _prime_factors(self.order):
            if scalar_mul(self.order // ell, G).is_infinity:
                raise AssertionError(f"order of G divides {self.order // ell}")
        if self.elements is not None:
            if len(self.elements) != self.order or len(set(self.elements)) != self.order:
                raise AssertionError("element list has wrong length or duplicates")


def subgroup_from_generator(G: Point, cap: Optional[int] = None) -> Subgroup:
    """Enumerate <G> by repeated addition until the identity recurs."""
    cap = enumeration_cap() if cap is None else cap
    elems = [G.curve.infinity]
    cur = G
    while not cur.is_infinity:
        elems.append(cur)
        if len(elems) > cap:
            raise EnumerationTooLarge(f"order of {G!r} exceeds cap {cap}")
        cur = point_add(cur, G)
    return Subgroup(G.curve, G, len(elems), tuple(elems))


def find_subgroups(curve: Curve, order: int, cap: Optional[int] = None) -> List[Subgroup]:
    """All distinct cyclic subgroups of exactly ``order`` elements, in a fixed order.

    Each subgroup is generated by its smallest generator (by point key) and
    the list is sorted by each subgroup's smallest non-identity element.
    """
    orders = point_orders(curve, cap)
    n = len(orders)
    if order < 1 or n % order:
        return []
    seen = set()
    found = []
    for P in sorted(orders, key=Point.key):
        if P in seen:
            continue
        if orders[P] == order:
            sub = subgroup_from_generator(P, cap)
            seen.update(sub.elements)
            found.append(sub)
    found.sort(key=Subgroup.sort_key)
    return found


def point_orders(curve: Curve, cap: Optional[int] = None) -> dict:
    """Map every point of E(F_q) to its order (cached on the curve)."""
    enumerate_points(curve, cap)
    return dict(curve._orders)


def subgroup_orders(curve: Curve, cap: Optional[int] = None) -> List[int]:
    """Orders of all cyclic subgroups that actually occur in E(F_q)."""
    return sorted(set(point_orders(curve, cap).values()))
