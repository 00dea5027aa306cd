import itertools

import pytest
from hypothesis import given, strategies as st

from ecx.errors import DivisionByZero, FieldMismatch, NotIrreducible, NotPrime, UnsupportedField
from ecx.finite_field import (
    ExtField,
    PrimeField,
    ext_add,
    ext_inv,
    ext_mul,
    ext_sqrt,
    field_from_json,
    find_irreducible,
    fp_add,
    fp_inv,
    fp_mul,
    fp_sqrt,
    fp_sub,
    is_irreducible,
    is_prime,
    trace,
)

F11 = PrimeField(11)
F7 = PrimeField(7)


def test_prime_field_examples():
    assert fp_add(F11(6), F11(8)).value == 3
    assert fp_inv(F11(3)).value == 4
    assert fp_mul(F11(10), F11(10)).value == 1
    assert fp_sub(F11(2), F11(5)).value == 8


def test_sqrt_examples():
    assert [r.value for r in fp_sqrt(F11(4))] == [2, 9]
    assert [r.value for r in fp_sqrt(F11(0))] == [0]
    assert fp_sqrt(F7(6)) is None


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        fp_inv(F11(0))
    with pytest.raises(DivisionByZero):
        ExtField(7, (1, 0, 1)).zero.inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        fp_add(F11(1), PrimeField(13)(1))
    with pytest.raises(FieldMismatch):
        F11(1) * PrimeField(13)(1)


@pytest.mark.parametrize("p, err", [(4, NotPrime), (91, NotPrime), (5, UnsupportedField),
                                    (3, UnsupportedField), (2**64 - 59, UnsupportedField)])
def test_field_construction_rejects(p, err):
    with pytest.raises(err):
        PrimeField(p)


def test_is_prime_against_sieve():
    limit = 5000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [n for n in range(limit) if is_prime(n)] == [n for n in range(limit) if sieve[n]]
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321):
        assert not is_prime(n)
    assert is_prime(2**61 - 1)


def test_inverse_exhaustive_f11():
    for a in range(1, 11):
        assert (F11(a) * fp_inv(F11(a))).value == 1


@given(st.integers(min_value=0, max_value=10**6))
def test_sqrt_of_square_contains_root(a):
    for p in (11, 13, 17, 10007, 65537):  # covers p = 3 mod 4 and the full Tonelli-Shanks loop
        F = PrimeField(p)
        x = F(a)
        roots = fp_sqrt(x * x)
        assert x in roots
        assert all(r * r == x * x for r in roots)


# --- extension fields -------------------------------------------------------

E49 = ExtField(7, (1, 0, 1))


def test_ext_examples():
    x = E49((0, 1))
    assert ext_mul(x, x).coeffs == (6, 0)
    assert ext_add(E49((3, 4)), E49((5, 6))).coeffs == (1, 3)
    assert ext_inv(x).coeffs == (0, 6)


def test_ext_inverse_exhaustive():
    for a in E49.elements():
        if not a.is_zero():
            assert a * ext_inv(a) == E49.one


def test_ext_mul_matches_naive_reduction():
    # oracle: multiply as integer polynomials, then reduce by repeated x^2 -> -1
    def naive(a, b):
        c = [0, 0, 0]
        for i in range(2):
            for j in range(2):
                c[i + j] += a[i] * b[j]
        return ((c[0] - c[2]) % 7, c[1] % 7)

    for a, b in itertools.product(itertools.product(range(7), repeat=2), repeat=2):
        assert (E49(a) * E49(b)).coeffs == naive(a, b)


def test_ext_degree3_field_axioms():
    F = ExtField.default(7, 3)
    elems = list(F.elements())
    assert len(elems) == 343
    g = F((1, 1, 0))
    # g^(q-1) = 1 for every nonzero element
    for a in elems[1::17]:
        assert a ** (F.order - 1) == F.one
        assert a * a.inverse() == F.one
    assert (g * g) * g == g * (g * g)


def test_trace_examples():
    for c in range(7):
        assert trace(E49(c)).value == 2 * c % 7
    assert trace(E49((0, 1))).value == 0
    assert trace(E49((3, 5))).value == 6


def test_trace_linear_and_balanced():
    elems = list(E49.elements())
    for a in elems:
        for b in elems:
            assert trace(a + b) == trace(a) + trace(b)
    fibres = {}
    for a in elems:
        fibres[trace(a).value] = fibres.get(trace(a).value, 0) + 1
    assert fibres == {v: 7 for v in range(7)}


def test_trace_degree3_balanced():
    F = ExtField.default(11, 3)
    fibres = {}
    for a in F.elements():
        v = trace(a).value
        fibres[v] = fibres.get(v, 0) + 1
    assert fibres == {v: 121 for v in range(11)}


def test_ext_sqrt_exhaustive():
    squares = {a * a for a in E49.elements()}
    for a in E49.elements():
        roots = ext_sqrt(a)
        if a in squares:
            assert all(r * r == a for r in roots)
            assert len(roots) == (1 if a.is_zero() else 2)
        else:
            assert roots is None


def test_irreducibility():
    assert is_irreducible(7, (1, 0, 1))
    assert not is_irreducible(13, (1, 0, 1))  # -1 is a square mod 13
    assert not is_irreducible(7, (1, 0, 2, 0, 1))  # (x^2 + 1)^2
    with pytest.raises(NotIrreducible):
        ExtField(13, (1, 0, 1))
    m = find_irreducible(11, 4)
    assert len(m) == 5 and is_irreducible(11, m)


def test_ext_element_length_enforced():
    with pytest.raises(ValueError):
        E49((1, 2, 3))


def test_field_json_roundtrip():
    for f in (F11, E49, ExtField.default(11, 3)):
        assert field_from_json(f.to_json()) == f
    assert E49.to_json() == {"p": 7, "n": 2, "modulus": [1, 0, 1]}
    with pytest.raises(ValueError):
        field_from_json({"p": 7, "n": 3, "modulus": [1, 0, 1]})
