from fractions import Fraction

import pytest

from wlpa import GF, QQ, ZZ, FreeRingElement, RingError, edge, format_element, monomial, vertex, zero


def test_integer_ring():
    assert ZZ.coerce(Fraction(4, 2)) == 2
    assert ZZ.from_fraction(6, 3) == 2
    with pytest.raises(RingError):
        ZZ.from_fraction(1, 2)
    with pytest.raises(RingError):
        ZZ.coerce(Fraction(1, 2))
    assert ZZ.split_sign(-3) == (True, 3)


def test_rational_ring():
    assert QQ.from_fraction(2, 4) == Fraction(1, 2)
    with pytest.raises(RingError):
        QQ.from_fraction(1, 0)
    assert QQ.format(Fraction(3, 2)) == "3/2"
    assert QQ.format(Fraction(4, 2)) == "2"


def test_prime_field():
    F7 = GF(7)
    assert F7.coerce(-1) == 6
    assert F7.add(5, 4) == 2
    assert F7.from_fraction(1, 3) == 5  # 3 * 5 = 15 = 1 mod 7
    assert F7.split_sign(6) == (False, 6)
    with pytest.raises(RingError):
        GF(6)
    with pytest.raises(RingError):
        F7.from_fraction(1, 7)


def test_gf_identity_cached():
    assert GF(5) is GF(5)
    assert GF(5) == GF(5)
    assert GF(5) != GF(7)


def test_element_drops_zero_terms():
    w = (vertex("u"),)
    e = FreeRingElement(ZZ, [(w, 2), (w, -2)])
    assert e.is_zero()
    assert FreeRingElement(ZZ, [(w, 0)]).is_zero()


def test_element_arithmetic():
    u = monomial(ZZ, (vertex("u"),))
    v = monomial(ZZ, (vertex("v"),))
    assert u + v - u == v
    assert (-u) + u == zero(ZZ)
    assert u.scale(3).coefficient((vertex("u"),)) == 3
    assert u.scale(0).is_zero()


def test_concat_is_free_product():
    a = monomial(ZZ, (edge("alpha", 1),), 2)
    b = monomial(ZZ, (edge("beta", 1),), 3)
    product = a.concat(b)
    assert product.coefficient((edge("alpha", 1), edge("beta", 1))) == 6
    assert len(product) == 1


def test_mixed_rings_rejected():
    with pytest.raises(RingError):
        monomial(ZZ, (vertex("u"),)) + monomial(QQ, (vertex("u"),))


def test_sorted_terms_order():
    long_word = (edge("alpha", 1), edge("beta", 1))
    e = monomial(ZZ, long_word) + monomial(ZZ, (vertex("v"),))
    words = [w for w, _ in e.sorted_terms()]
    assert words == [(vertex("v"),), long_word]  # shorter words first


def test_format_element():
    assert format_element(zero(ZZ)) == "0"
    e = monomial(ZZ, (vertex("v"),)) - monomial(ZZ, (edge("alpha", 2),), 2)
    assert format_element(e) == "v - 2*alpha[2]"
    assert format_element(-monomial(ZZ, (vertex("v"),))) == "-v"
    f = monomial(QQ, (vertex("v"),), Fraction(3, 2))
    assert format_element(f) == "3/2*v"
    g = monomial(GF(5), (vertex("v"),), -1)
    assert format_element(g) == "4*v"
