from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from invbundles.cyclotomic import Cyclotomic, euler_phi, factorize, field, gauss_sum
from invbundles.group import legendre

M = 84  # 4 * 3 * 7 exercises both reduction rules


def elements(m=M):
    pair = st.tuples(st.integers(0, m - 1), st.integers(-3, 3))
    return st.lists(pair, max_size=6).map(lambda ps: Cyclotomic.from_roots(m, ps))


def test_number_theory():
    assert factorize(84) == [(2, 2), (3, 1), (7, 1)]
    assert euler_phi(84) == 24
    assert len(field(84).basis_exponents()) == 24


def test_roots_of_unity_sum_to_zero():
    assert sum((Cyclotomic.root(M, k) for k in range(M)), Cyclotomic.zero(M)).is_zero()
    assert sum((Cyclotomic.root(M, 12 * k) for k in range(7)), Cyclotomic.zero(M)).is_zero()


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == Cyclotomic.zero(M)


@given(elements())
def test_conjugation_and_numerics(a):
    assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-9
    assert (a * a.conj()).to_complex().imag < 1e-9
    assert a.galois(1) == a
    assert a.conj() == a.galois(-1)


@given(elements(), elements())
def test_galois_is_a_ring_map(a, b):
    assert (a * b).galois(5) == a.galois(5) * b.galois(5)


def test_rationals_and_division():
    x = Cyclotomic.rational(M, Fraction(3, 4))
    assert x.is_rational() and x.rational_value() == Fraction(3, 4)
    assert (Cyclotomic.root(M, 1) / 2) * 2 == Cyclotomic.root(M, 1)


def test_gauss_sums():
    for p in (3, 5, 7, 11, 13):
        g = gauss_sum(4 * p, p)
        assert g * g == Cyclotomic.rational(4 * p, legendre(-1, p) * p)
