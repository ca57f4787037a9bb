import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invbundles.chartable import character_table
from invbundles.errors import NotExpandable, TableMismatch
from invbundles.group import PSL2, SL2, build_group
from invbundles.repring import (
    RationalGF,
    character,
    decompose,
    dual_swap_map,
    eigenvalue_multiset,
    expand_rational_gf,
    ext_power,
    format_multiset,
    molien,
    molien_by_sympowers,
    parse_multiset,
    sym_power,
    tensor,
)

T7 = character_table(build_group(7, SL2))
T11 = character_table(build_group(11, SL2))
labels7 = st.sampled_from(T7.names)


def test_small_decompositions():
    assert decompose(T7, tensor(T7, "V3", "V3")).as_dict() == {"V3*": 1, "V6": 1}
    assert decompose(T7, sym_power(T7, "V3", 2)).as_dict() == {"V6": 1}
    assert decompose(T7, ext_power(T7, "V3", 2)).as_dict() == {"V3*": 1}
    assert decompose(T7, ext_power(T7, "V3", 3)).as_dict() == {"V1": 1}


@settings(max_examples=40, deadline=None)
@given(labels7)
def test_square_splits_into_sym_and_ext(a):
    assert tensor(T7, a, a) == sym_power(T7, a, 2) + ext_power(T7, a, 2)


@settings(max_examples=40, deadline=None)
@given(labels7, labels7)
def test_duality_is_a_ring_automorphism(a, b):
    swap = dual_swap_map(T7)
    d = decompose(T7, tensor(T7, a, b)).relabel(swap)
    e = decompose(T7, tensor(T7, swap.get(a, a), swap.get(b, b))).as_dict()
    assert d == e


@settings(max_examples=30, deadline=None)
@given(labels7, labels7)
def test_tensor_dimension_and_symmetry(a, b):
    d = decompose(T7, tensor(T7, a, b))
    assert d.dimension == T7.dims[T7.index(a)] * T7.dims[T7.index(b)]
    assert d.as_dict() == decompose(T7, tensor(T7, b, a)).as_dict()


def test_eigenvalues_of_order_seven_element():
    # the 3-dimensional irrep sees three distinct nontrivial 7th roots
    c = T7.classes.index("u")
    ms = eigenvalue_multiset(T7, "V3", c)
    assert sum(ms.values()) == 3 and 0 not in ms


@pytest.mark.parametrize("target", ["V1", "V3", "V6", "V7"])
def test_molien_paths_agree(target):
    assert molien(T7, target, "V3*", 25, cross_check=False) == molien_by_sympowers(T7, target, "V3*", 25)


def test_invariants_of_klein_group_action():
    # invariants of the 3-dimensional action live in degrees 4, 6, 14, 21
    s = molien(T7, "V1", "V3", 21)
    assert [n for n in range(22) if s[n]] == [0, 4, 6, 8, 10, 12, 14, 16, 18, 20, 21]


def test_rational_gf_expansion():
    f = RationalGF.from_factors({0: 1}, [1, 1])
    assert expand_rational_gf(f, 5).to_list() == [1, 2, 3, 4, 5, 6]
    with pytest.raises(NotExpandable):
        expand_rational_gf(RationalGF((1,), (2, 1)), 3)


@given(st.dictionaries(labels7, st.integers(1, 4), min_size=1))
def test_multiset_round_trip(d):
    assert parse_multiset(format_multiset(d)) == d


def test_mixing_tables_is_rejected():
    with pytest.raises(TableMismatch):
        character(T7, "V3") + character(T11, "V5")


def test_psl_table_decomposes():
    P = character_table(build_group(11, PSL2))
    d = decompose(P, tensor(P, "V5", "V5*"))
    assert d["V1"] == 1 and d.dimension == 25
