import pytest
from hypothesis import given, strategies as st

from dkl.polynomial import NEG_INF, HalfLaurent, IntPolynomial

coeffs = st.lists(st.integers(-50, 50), max_size=8)
laurents = st.dictionaries(st.integers(-8, 8), st.integers(-20, 20), max_size=6)


def test_text_form():
    assert str(IntPolynomial([1, 1, 3])) == "1 + q + 3q^2"
    assert str(IntPolynomial([0, -1, 0, 2])) == "-q + 2q^3"
    assert str(IntPolynomial()) == "0"
    assert IntPolynomial.parse("1 + q + 3q^2").coeffs == (1, 1, 3)
    assert IntPolynomial.parse("q^2-2").coeffs == (-2, 0, 1)


def test_zero_degree():
    assert IntPolynomial([0, 0]).degree == NEG_INF
    assert IntPolynomial([0, 0]).coeffs == ()
    assert IntPolynomial([3]).degree == 0


@pytest.mark.parametrize("bad", ["", "1 +", "1 + x", "q^-1", "2 3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        IntPolynomial.parse(bad)


def test_json_rejects():
    with pytest.raises(ValueError):
        IntPolynomial.from_json([1, "2"])


@given(coeffs)
def test_text_and_json_roundtrip(c):
    p = IntPolynomial(c)
    assert IntPolynomial.parse(str(p)) == p
    assert IntPolynomial.from_json(p.to_json()) == p


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    p, q, r = IntPolynomial(a), IntPolynomial(b), IntPolynomial(c)
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == IntPolynomial()
    assert (p * q)(3) == p(3) * q(3)


@given(coeffs, st.integers(0, 4))
def test_shift(c, k):
    p = IntPolynomial(c)
    assert p.shift(k) == p * IntPolynomial([0] * k + [1])


@given(laurents, laurents)
def test_laurent_bar_is_ring_involution(a, b):
    x, y = HalfLaurent(a), HalfLaurent(b)
    assert (x * y).bar() == x.bar() * y.bar()
    assert x.bar().bar() == x
    assert HalfLaurent.parse(str(x)) == x


def test_substitution():
    p = IntPolynomial([1, 2])
    assert p.to_laurent() == HalfLaurent({0: 1, 2: 2})
    assert p.to_laurent(invert=True) == HalfLaurent({0: 1, -2: 2})
    assert str(HalfLaurent({1: 1, -1: -1})) == "v - v^-1"
