import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invbundles.errors import BelowCanonicalRange, NonIntegralCanonicalExponent, NotHyperbolic
from invbundles.picard import (
    DyckSignature,
    chevalley_weil,
    embedding_degrees,
    gcd_ladder,
    genus,
    lambda_isotropy,
    modular_data,
    picard_structure,
    random_hyperbolic_signatures,
    rr_dimension,
    snf_torsion,
)


def test_ladder_and_torsion():
    assert gcd_ladder((2, 3, 7)) == (1, 1)
    ps = picard_structure(DyckSignature((2, 2, 2, 3)))
    assert ps.torsion == (2, 2) and ps.N == 6
    assert snf_torsion(DyckSignature((2, 2, 2, 3))) == (ps.free_rank, ps.torsion)


signatures = st.lists(st.integers(2, 12), min_size=3, max_size=5).map(lambda e: DyckSignature(tuple(e)))


@settings(max_examples=200, deadline=None)
@given(signatures)
def test_ladder_agrees_with_smith_normal_form(sig):
    if not sig.hyperbolic:
        with pytest.raises(NotHyperbolic):
            picard_structure(sig)
        return
    try:
        ps = picard_structure(sig)
    except NonIntegralCanonicalExponent:
        return
    assert snf_torsion(sig) == (ps.free_rank, ps.torsion)


def test_seeded_signatures_are_reproducible():
    a = random_hyperbolic_signatures(20, seed=3)
    assert a == random_hyperbolic_signatures(20, seed=3)
    assert all(s.hyperbolic for s in a)


def test_boundary_of_hyperbolicity():
    with pytest.raises(NotHyperbolic):
        picard_structure(DyckSignature.parse("2,3,6"))


@pytest.mark.parametrize("p,g,deg", [(7, 3, 2), (11, 26, 5), (13, 50, 7)])
def test_modular_data(p, g, deg):
    md = modular_data(p)
    assert (md.genus, md.deg_lambda) == (g, deg)
    assert md.deg_canonical == 2 * g - 2
    assert genus(DyckSignature((2, 3, p)), md.group_order) == g


def test_embedding_degrees():
    assert embedding_degrees(7) == (4, 6)
    assert embedding_degrees(11) == (20, 25)
    assert embedding_degrees(13) == (35, 42)


def test_lambda_isotropy():
    assert lambda_isotropy(7) == (1, 1, 1)
    assert lambda_isotropy(11) == (1, 2, 9)


def test_riemann_roch():
    assert rr_dimension(7, 2) == 3  # lambda^2 is canonical at p = 7, so h^0 = g
    assert rr_dimension(7, 4) == 6
    with pytest.raises(BelowCanonicalRange):
        rr_dimension(11, 1)


def test_chevalley_weil_small():
    assert chevalley_weil(7, 3).decomposition.as_dict() == {"V4*": 1}
    d = chevalley_weil(7, 12).decomposition.as_dict()
    assert d == {"V1": 1, "V6": 1, "V7": 1, "V8": 1}


def test_modular_json_is_serialisable():
    import json

    json.dumps(modular_data(13).to_json(), sort_keys=True)
