import numpy as np
import pytest

from invbundles.errors import NonPrime, PrimeTooSmall
from invbundles.group import (
    PSL2,
    SL2,
    GroupElement,
    brute_force_classes,
    build_group,
    check_prime,
    class_data,
    classify_element,
    enumerate_elements,
    is_prime,
    legendre,
    power_class,
    primitive_root,
)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert primitive_root(7) == 3
    assert [legendre(x, 7) for x in range(7)] == [0, 1, 1, -1, 1, -1, -1]


@pytest.mark.parametrize("bad,err", [(9, NonPrime), (1, NonPrime), (3, PrimeTooSmall)])
def test_check_prime_rejects(bad, err):
    with pytest.raises(err):
        check_prime(bad)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_class_counts_and_sizes(p):
    sl = class_data(build_group(p, SL2))
    psl = class_data(build_group(p, PSL2))
    assert len(sl) == p + 4
    assert len(psl) == (p + 5) // 2
    assert sum(c.size for c in sl.classes) == p * (p * p - 1)
    assert sum(c.size for c in psl.classes) == p * (p * p - 1) // 2


@pytest.mark.parametrize("p", [5, 7, 11])
@pytest.mark.parametrize("variant", [SL2, PSL2])
def test_closed_form_matches_brute_force(p, variant):
    G = build_group(p, variant)
    bf = brute_force_classes(G)
    cd = class_data(G)
    assert bf.count == len(cd)
    # each brute-force class maps to exactly one closed-form class of the same size
    seen = {}
    for row, label in zip(bf.elements, bf.labels):
        x = GroupElement.from_entries(*map(int, row), p, projective=G.is_projective)
        c = classify_element(G, x)
        assert seen.setdefault(int(label), c) == c
    assert sorted(seen.values()) == list(range(len(cd)))
    for label, c in seen.items():
        assert bf.sizes[label] == cd.classes[c].size


def test_power_map_matches_matrix_powers():
    G = build_group(7, SL2)
    cd = class_data(G)
    for i, c in enumerate(cd.classes):
        x = c.representative
        y = x
        for j in range(1, c.element_order + 1):
            assert classify_element(G, y) == power_class(G, i, j)
            y = y * x


def test_element_arithmetic():
    x = GroupElement.from_entries(1, 1, 0, 1, 7)
    assert x.order() == 7
    assert (x * x.inverse()).is_identity()
    assert x.trace == 2
    minus = GroupElement.from_entries(6, 0, 0, 6, 7)
    assert minus.order() == 2
    assert minus.to_projective().is_identity()


def test_enumeration_size():
    assert len(enumerate_elements(build_group(7, SL2))) == 336
    assert len(enumerate_elements(build_group(7, PSL2))) == 168
    assert np.unique(enumerate_elements(build_group(5, SL2)), axis=0).shape[0] == 120
