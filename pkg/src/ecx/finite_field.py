"""
Exact arithmetic in prime fields F_p and extension fields F_{p^n}.

Elements of F_{p^n} are stored as little-endian coefficient tuples in the
polynomial basis 1, x, ..., x^(n-1) of F_p[x]/(m(x)) for a monic irreducible
modulus m.  Both element types support the usual operators and interoperate
with plain ``int`` operands, which are read as elements of the prime field.

Python integers are unbounded, so products never overflow; the p < 2**62
limit is kept so that fields stay interchangeable with fixed-width code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator, Optional, Sequence, Tuple, Union

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
    UnsupportedField,
)

MAX_MODULUS_BITS = 62

# Deterministic for every n < 3.3e24, which covers the 62-bit limit.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_characteristic(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"p must be an int, got {type(p).__name__}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p <= 5:
        raise UnsupportedField(f"characteristic must exceed 5, got {p}")
    if p.bit_length() > MAX_MODULUS_BITS:
        raise UnsupportedField(f"p must be below 2**{MAX_MODULUS_BITS}")


# ---------------------------------------------------------------------------
# Prime fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime 5 < p < 2**62."""

    p: int

    def __post_init__(self):
        _check_characteristic(self.p)

    @property
    def degree(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return self.p

    @property
    def base(self) -> "PrimeField":
        return self

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @cached_property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self}")
            return value
        return FieldElement(int(value), self)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.p):
            yield FieldElement(v, self)

    def sqrt(self, a: "FieldElement"):
        return fp_sqrt(a)

    def to_json(self) -> dict:
        return {"p": self.p}

    def element_from_json(self, obj) -> "FieldElement":
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise ValueError(f"F_{self.p} element must be an integer, got {obj!r}")
        return self(obj)

    def __str__(self):
        return f"F_{self.p}"


class FieldElement:
    """An element of F_p stored as its canonical representative in [0, p)."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return FieldElement(other, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.value + o.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.value - o.value, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(o.value - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.value * o.value, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in {self.field}")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def key(self) -> int:
        return self.value

    def to_json(self) -> int:
        return self.value

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.field.p})"

    def __str__(self):
        return str(self.value)


def _same_field(a: FieldElement, b: FieldElement) -> None:
    if not isinstance(a, FieldElement) or not isinstance(b, FieldElement):
        raise TypeError("operands must be FieldElement instances")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def fp_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a + b


def fp_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a - b


def fp_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return a * b


def fp_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def _tonelli_shanks(a: int, p: int) -> Optional[int]:
    """Return one square root of ``a`` mod the odd prime ``p``, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def fp_sqrt(a: FieldElement) -> Optional[Tuple[FieldElement, ...]]:
    """Both square roots of ``a`` in ascending order, ``(0,)`` for zero, None for non-residues."""
    p = a.field.p
    r = _tonelli_shanks(a.value, p)
    if r is None:
        return None
    if r == 0:
        return (a.field.zero,)
    lo, hi = sorted((r, p - r))
    return (FieldElement(lo, a.field), FieldElement(hi, a.field))


# ---------------------------------------------------------------------------
# Polynomials over F_p (little-endian int tuples)
# ---------------------------------------------------------------------------


def _trim(c: Sequence[int]) -> Tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(v % p for v in out)


def _poly_divmod(a, b, p):
    b = _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(_trim(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    if len(r) <= db:
        return (), tuple(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv_lead % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * y) % p
    return _trim(q), _trim(r[:db])


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Trial-divide ``modulus`` by every monic polynomial of degree <= n/2."""
    m = _trim(c % p for c in modulus)
    n = len(m) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, r = _poly_divmod(m, low + (1,), p)
            if not r:
                return False
    return True


def find_irreducible(p: int, n: int) -> Tuple[int, ...]:
    """The first monic irreducible of degree n, scanning sparse moduli first."""
    for low in itertools.product(range(p), repeat=n):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and is_irreducible(p, cand):
            return cand
    raise NotIrreducible(f"no irreducible polynomial of degree {n} over F_{p}")


# ---------------------------------------------------------------------------
# Extension fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtField:
    """F_{p^n} = F_p[x]/(modulus); ``modulus`` is monic, little-endian, length n+1."""

    p: int
    modulus: Tuple[int, ...] = dc_field()

    def __post_init__(self):
        _check_characteristic(self.p)
        m = tuple(int(c) % self.p for c in self.modulus)
        if len(m) < 2 or m[-1] != 1:
            raise ValueError(f"modulus must be monic of degree >= 1, got {self.modulus!r}")
        object.__setattr__(self, "modulus", m)
        if not is_irreducible(self.p, m):
            raise NotIrreducible(f"{list(m)} is reducible over F_{self.p}")

    @classmethod
    def default(cls, p: int, n: int) -> "ExtField":
        return cls(p, find_irreducible(p, n))

    @property
    def n(self) -> int:
        return len(self.modulus) - 1

    @property
    def degree(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.p ** self.n

    @cached_property
    def base(self) -> PrimeField:
        return PrimeField(self.p)

    @cached_property
    def zero(self) -> "ExtFieldElement":
        return ExtFieldElement((0,) * self.n, self)

    @cached_property
    def one(self) -> "ExtFieldElement":
        return ExtFieldElement((1,) + (0,) * (self.n - 1), self)

    @cached_property
    def _nonresidue(self) -> "ExtFieldElement":
        e = (self.order - 1) // 2
        minus_one = -self.one
        for z in self.elements():
            if not z.is_zero() and z ** e == minus_one:
                return z
        raise AssertionError("multiplicative group has no non-square")

    def __call__(self, value) -> "ExtFieldElement":
        if isinstance(value, ExtFieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self}")
            return value
        if isinstance(value, FieldElement):
            if value.field.p != self.p:
                raise FieldMismatch(f"{value!r} is not in the prime subfield of {self}")
            value = value.value
        if isinstance(value, int):
            return ExtFieldElement((value,) + (0,) * (self.n - 1), self)
        return ExtFieldElement(tuple(value), self)

    def elements(self) -> Iterator["ExtFieldElement"]:
        for c in itertools.product(range(self.p), repeat=self.n):
            yield ExtFieldElement(c, self)

    def sqrt(self, a: "ExtFieldElement"):
        return ext_sqrt(a)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def element_from_json(self, obj) -> "ExtFieldElement":
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self(obj)
        if not isinstance(obj, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in obj
        ):
            raise ValueError(f"F_{self.p}^{self.n} element must be a coefficient list, got {obj!r}")
        return self(obj)

    def __str__(self):
        return f"F_{self.p}^{self.n}"


class ExtFieldElement:
    """Element of F_{p^n}: coefficients (c0, ..., c_{n-1}) of c0 + c1 x + ..."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence[int], field: ExtField):
        if len(coeffs) != field.n:
            raise ValueError(f"expected {field.n} coefficients, got {len(coeffs)}")
        p = field.p
        self.coeffs = tuple(int(c) % p for c in coeffs)
        self.field = field

    def _coerce(self, other) -> Optional["ExtFieldElement"]:
        if isinstance(other, ExtFieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.field(other)
        return None

    def _new(self, coeffs) -> "ExtFieldElement":
        return ExtFieldElement(coeffs, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new([a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, n, m = self.field.p, self.field.n, self.field.modulus
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        # reduce with x^n = -(m_0 + ... + m_{n-1} x^{n-1})
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(n):
                    prod[i - n + j] -= c * m[j]
        return self._new(prod[:n])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "ExtFieldElement":
        """Inverse by the extended Euclidean algorithm in F_p[x]."""
        p = self.field.p
        a = _trim(self.coeffs)
        if not a:
            raise DivisionByZero(f"0 has no inverse in {self.field}")
        r0, r1 = self.field.modulus, a
        s0, s1 = (), (1,)
        while r1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        # r0 is a nonzero constant because the modulus is irreducible
        c = pow(r0[0], -1, p)
        s = [v * c for v in s0] + [0] * self.field.n
        return self._new(s[: self.field.n])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def key(self) -> Tuple[int, ...]:
        return self.coeffs

    def to_json(self) -> list:
        return list(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExtFieldElement):
            return self.coeffs == other.coeffs and self.field == other.field
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"ExtFieldElement({self.coeffs}, p={self.field.p}, modulus={self.field.modulus})"

    def __str__(self):
        return str(self.coeffs)


def _same_ext(a: ExtFieldElement, b: ExtFieldElement) -> None:
    if not isinstance(a, ExtFieldElement) or not isinstance(b, ExtFieldElement):
        raise TypeError("operands must be ExtFieldElement instances")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def ext_add(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    _same_ext(a, b)
    return a + b


def ext_sub(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    _same_ext(a, b)
    return a - b


def ext_mul(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    _same_ext(a, b)
    return a * b


def ext_inv(a: ExtFieldElement) -> ExtFieldElement:
    return a.inverse()


def ext_sqrt(a: ExtFieldElement) -> Optional[Tuple[ExtFieldElement, ...]]:
    """Tonelli-Shanks over F_{p^n}; same return convention as :func:`fp_sqrt`."""
    f = a.field
    if a.is_zero():
        return (f.zero,)
    q = f.order
    one = f.one
    if a ** ((q - 1) // 2) != one:
        return None
    odd, s = q - 1, 0
    while odd % 2 == 0:
        odd //= 2
        s += 1
    m, c, t, r = s, f._nonresidue ** odd, a ** odd, a ** ((odd + 1) // 2)
    while t != one:
        i, t2 = 0, t
        while t2 != one:
            t2 = t2 * t2
            i += 1
        b = c ** (1 << (m - i - 1))
        m, c, t, r = i, b * b, t * b * b, r * b
    return tuple(sorted((r, -r), key=ExtFieldElement.key))


Field = Union[PrimeField, ExtField]
Element = Union[FieldElement, ExtFieldElement]


def sqrt(a: Element):
    """Square roots of ``a`` in its own field (see :func:`fp_sqrt`)."""
    return a.field.sqrt(a)


def trace(a: Element) -> FieldElement:
    """Absolute trace a + a^p + ... + a^(p^(n-1)), returned as an element of F_p."""
    if isinstance(a, FieldElement):
        return a
    f = a.field
    total, conj = a, a
    for _ in range(f.n - 1):
        conj = conj ** f.p
        total = total + conj
    assert not any(total.coeffs[1:]), "trace left the prime subfield"
    return f.base(total.coeffs[0])


def field_from_json(obj: dict) -> Field:
    """Inverse of ``to_json``: ``{"p": p}`` or ``{"p": p, "n": n, "modulus": [...]}``."""
    if not isinstance(obj, dict) or "p" not in obj:
        raise ValueError(f"field description needs a 'p' entry: {obj!r}")
    if "modulus" not in obj and "n" not in obj:
        return PrimeField(obj["p"])
    if "modulus" not in obj:
        raise ValueError("extension field description needs 'modulus'")
    f = ExtField(obj["p"], tuple(obj["modulus"]))
    if "n" in obj and obj["n"] != f.n:
        raise ValueError(f"n={obj['n']} disagrees with modulus degree {f.n}")
    return f
