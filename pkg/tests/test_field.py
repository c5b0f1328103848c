import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigeom.field import Field, field_make, gf, is_irreducible, prime_power

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def naive_mul(a, b, mod, p):
    """Schoolbook product of constant-first coefficient lists, reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(mod) - 1
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * mod[t]) % p
    out = prod[:k] + [0] * (k - len(prod[:k]))
    return tuple(out)


@pytest.mark.parametrize("q", ORDERS)
def test_tables_match_naive_polynomial_arithmetic(q):
    F = gf(q)
    for a, b in itertools.product(range(q), repeat=2):
        ca, cb = F.coeffs_of(a), F.coeffs_of(b)
        want_add = tuple((x + y) % F.p for x, y in zip(ca, cb))
        assert F.coeffs_of(F.add_table[a][b]) == want_add
        assert F.coeffs_of(F.mul_table[a][b]) == naive_mul(list(ca), list(cb), list(F.modulus), F.p)


@pytest.mark.parametrize("q", ORDERS)
def test_primitive_generates_multiplicative_group(q):
    F = gf(q)
    g = F.primitive_code
    seen = {F.pow_code(g, e) for e in range(q - 1)}
    assert len(seen) == q - 1 and 0 not in seen


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_additive_and_multiplicative(q):
    F = gf(q)
    for a, b in itertools.product(range(q), repeat=2):
        fa, fb = F.frobenius_code(a), F.frobenius_code(b)
        assert F.frobenius_code(F.add_table[a][b]) == F.add_table[fa][fb]
        assert F.frobenius_code(F.mul_table[a][b]) == F.mul_table[fa][fb]
    # the fixed field is the prime field
    assert sum(1 for a in range(q) if F.frobenius_code(a) == a) == F.p


def test_prime_power_and_rejections():
    assert prime_power(27) == (3, 3)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12, 0):
        with pytest.raises(ValueError):
            gf(bad)
    with pytest.raises(ValueError):
        Field(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over GF(2)
    assert not is_irreducible([1, 0, 1], 2)
    assert field_make(3, 2) is field_make(3, 2)


def test_element_api():
    F = gf(4)
    a = F.gen
    assert a * a == a + 1  # x^2 = x + 1 for the modulus x^2 + x + 1
    assert a ** 3 == F(1)
    assert (a / a) == F(1)
    assert a - a == F(0)
    with pytest.raises(ZeroDivisionError):
        F(0).inv()
    with pytest.raises(ValueError):
        _ = a + gf(2)(1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORDERS), st.data())
def test_field_axioms(q, data):
    F = gf(q)
    el = st.integers(0, q - 1).map(F.element)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F(0)
    if a:
        assert a * a.inv() == F(1)
    assert a ** q == a
