from fractions import Fraction

import pytest

from invbundles.errors import AngleOutOfRange, NoSolution, NotPerfect, PrimeTooSmall
from invbundles.flatmoduli import (
    central_extension,
    closed_form_k,
    exponent_of,
    exponent_table,
    isotropy_eigenvalues,
    su2_admissible,
    su2_census,
    su3_census_p7,
    su3_count,
)
from invbundles.picard import DyckSignature


def test_central_extension():
    ce = central_extension(DyckSignature((2, 3, 7)))
    assert (ce.s, ce.b_i, ce.b) == (1, (1, 1, 1), 1)
    ce = central_extension(DyckSignature((2, 3, 11)))
    assert (ce.s, ce.b_i, ce.b) == (5, (1, 2, 9), 2)
    with pytest.raises(NotPerfect):
        central_extension(DyckSignature((2, 4, 6)))


def test_admissibility():
    F = Fraction
    assert su2_admissible((F(1, 2), F(1, 3), F(5, 7)))
    assert not su2_admissible((F(1, 2), F(1, 3), F(1, 7)))
    with pytest.raises(AngleOutOfRange):
        su2_admissible((F(0), F(1, 3), F(1, 2)))


@pytest.mark.parametrize("p,ks", [(7, [3, 5]), (11, [2, 4, 6, 8]), (13, [3, 5, 7, 9])])
def test_census_small_primes(p, ks):
    c = su2_census(p)
    assert [t.k for t in c.items] == ks == closed_form_k(p)
    assert c.count == 2 * c.n


def test_census_json_lists_exponents():
    data = su2_census(7).to_json()
    assert [(it["k"], it["exponent_a"]) for it in data["items"]] == [(3, -11), (5, -5)]


def test_lift_twist_is_recorded():
    assert su2_census(7).lift_twist == 0
    assert su2_census(11).lift_twist == 1


def test_small_primes_rejected():
    with pytest.raises(PrimeTooSmall):
        su2_census(5)


def test_exponents():
    assert exponent_of(7, 5).a == -5
    assert exponent_of(7, 3).a == -11
    assert exponent_of(11, 2).a == -23
    with pytest.raises(NoSolution):
        exponent_of(13, 3)  # k and n of different parity
    rows = exponent_table(13)
    assert all(r["lift_twisted"] for r in rows)
    assert sorted(r["a"] for r in rows) == [-23, -17, -11, -5]


def test_su3_counts():
    assert [su3_count(p) for p in (7, 11, 13)] == [4, 10, 14]
    assert su3_count(7) == su3_census_p7().count == len(su3_census_p7().items)


def test_isotropy_eigenvalues_are_turns():
    ev = isotropy_eigenvalues(7, (-2, -4, 6))
    assert len(ev) == 3 and all(len(r) == 3 for r in ev)
    assert all(0 <= x < 1 for r in ev for x in r)
