"""
Deterministic extractors on elliptic-curve points.

Single source:  ``L_k`` keeps the k low bits of x(P) over F_p, ``D_k`` keeps the
first k polynomial-basis coordinates of x(P) over F_{p^n}.
Two sources:    ``ext1`` / ``ext2`` apply the same maps to x(P + Q).

The point at infinity has no abscissa; every extractor raises
:class:`~ecx.errors.AbscissaUndefined` rather than inventing output bits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Tuple, Union

from .curve import Point, point_add
from .errors import AbscissaUndefined, InvalidK
from .finite_field import ExtField, ExtFieldElement, FieldElement, PrimeField


@dataclass(frozen=True)
class BitString:
    value: int
    k: int

    def __post_init__(self):
        if self.k < 0 or not 0 <= self.value < (1 << self.k):
            raise ValueError(f"value {self.value} does not fit in {self.k} bits")

    @property
    def bits(self) -> str:
        """Binary rendering, most significant bit first, zero-padded to k."""
        return format(self.value, f"0{self.k}b") if self.k else ""

    def to_json(self) -> dict:
        return {"value": self.value, "bits": self.bits, "k": self.k}


@dataclass(frozen=True)
class CoeffVector:
    coeffs: Tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError(f"coefficients {self.coeffs} not reduced mod {self.p}")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> list:
        return list(self.coeffs)

    def __str__(self):
        return json.dumps(list(self.coeffs))


Output = Union[BitString, CoeffVector]

EXTRACTORS = ("ext1", "ext2", "L_k", "D_k")


def lsb_k(x: FieldElement, k: int) -> BitString:
    """The k least significant bits of the canonical representative of x."""
    if not isinstance(x, FieldElement):
        raise TypeError("lsb_k needs an F_p element")
    if not 1 <= k <= x.field.p.bit_length():
        raise InvalidK(f"k={k} outside [1, {x.field.p.bit_length()}] for p={x.field.p}")
    return BitString(x.value & ((1 << k) - 1), k)


def _abscissa(P: Point):
    if P.is_infinity:
        raise AbscissaUndefined("x(O) is undefined")
    return P.x


def check_k(field, k: int) -> None:
    """Validate k for the extractor family that matches ``field``."""
    if isinstance(field, PrimeField):
        if not 1 <= k <= field.p.bit_length():
            raise InvalidK(f"k={k} outside [1, {field.p.bit_length()}] for p={field.p}")
    elif not 1 <= k < field.n:
        raise InvalidK(f"k={k} outside [1, {field.n}) for extension degree {field.n}")


def L_k(P: Point, k: int) -> BitString:
    if not isinstance(P.curve.field, PrimeField):
        raise TypeError("L_k is defined for curves over a prime field; use D_k")
    return lsb_k(_abscissa(P), k)


def first_coeffs(x: ExtFieldElement, k: int) -> CoeffVector:
    f = x.field
    if not 1 <= k < f.n:
        raise InvalidK(f"k={k} outside [1, {f.n}) for extension degree {f.n}")
    return CoeffVector(x.coeffs[:k], f.p)


def D_k(P: Point, k: int) -> CoeffVector:
    if not isinstance(P.curve.field, ExtField):
        raise TypeError("D_k is defined for curves over an extension field; use L_k")
    return first_coeffs(_abscissa(P), k)


def ext1(P: Point, Q: Point, k: int) -> BitString:
    """lsb_k(x(P + Q)) for points on one curve over F_p."""
    if not isinstance(P.curve.field, PrimeField):
        raise TypeError("ext1 is defined for curves over a prime field; use ext2")
    check_k(P.curve.field, k)
    return lsb_k(_abscissa(point_add(P, Q)), k)


def ext2(P: Point, Q: Point, k: int) -> CoeffVector:
    """First k basis coefficients of x(P + Q) for points over F_{p^n}."""
    if not isinstance(P.curve.field, ExtField):
        raise TypeError("ext2 is defined for curves over an extension field; use ext1")
    check_k(P.curve.field, k)
    return first_coeffs(_abscissa(point_add(P, Q)), k)


def extract(name: str, P: Point, Q: Point, k: int) -> Output:
    """Dispatch by extractor name; single-source extractors ignore ``Q``."""
    if name == "ext1":
        return ext1(P, Q, k)
    if name == "ext2":
        return ext2(P, Q, k)
    if name == "L_k":
        return L_k(P, k)
    if name == "D_k":
        return D_k(P, k)
    raise ValueError(f"unknown extractor {name!r}; expected one of {EXTRACTORS}")


def output_space_size(field, name: str, k: int) -> int:
    """|{0,1}^k| = 2^k for ext1/L_k, |F_p^k| = p^k for ext2/D_k."""
    if name in ("ext1", "L_k"):
        return 1 << k
    if name in ("ext2", "D_k"):
        return field.p ** k
    raise ValueError(f"unknown extractor {name!r}")


def extractor_for(field, two_source: bool = True) -> str:
    """Name of the extractor that applies to curves over ``field``."""
    if isinstance(field, PrimeField):
        return "ext1" if two_source else "L_k"
    return "ext2" if two_source else "D_k"
