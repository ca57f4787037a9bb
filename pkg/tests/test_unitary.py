from fractions import Fraction

import numpy as np
import pytest

from invbundles.errors import DimensionMismatch
from invbundles.flatmoduli import census_lift
from invbundles.picard import DyckSignature
from invbundles.unitary import (
    ClassSpec,
    SolverConfig,
    UnitaryTuple,
    census_spec,
    irreducibility,
    out_of_range_k,
    solve_triple,
    sym2,
    verify_relations,
)

FAST = SolverConfig(starts=8)


@pytest.fixture(scope="module")
def p7_k5():
    spec, sign = census_spec(7, 5)
    return solve_triple(spec, FAST), sign


def test_converged_tuple_satisfies_relations(p7_k5):
    rep, sign = p7_k5
    assert rep.status == "converged"
    ext, _ = census_lift(7)
    assert max(verify_relations(rep.tuple, DyckSignature((2, 3, 7)), ext, sign)) < 1e-10
    assert max(rep.tuple.unitarity_defects()) < 1e-10
    assert irreducibility(rep.tuple)


def test_solve_is_deterministic(p7_k5):
    spec, _ = census_spec(7, 5)
    again = solve_triple(spec, FAST)
    assert again.tuple.dump() == p7_k5[0].tuple.dump()


def test_sym2_is_a_homomorphism():
    rng = np.random.default_rng(0)
    A, B = rng.normal(size=(2, 2, 2)) + 1j * rng.normal(size=(2, 2, 2))
    assert np.allclose(sym2(A @ B), sym2(A) @ sym2(B))


def test_sym2_of_solution_is_irreducible(p7_k5):
    S = UnitaryTuple(tuple(sym2(A) for A in p7_k5[0].tuple.matrices))
    ext, _ = census_lift(7)
    assert max(verify_relations(S, DyckSignature((2, 3, 7)), ext, 1)) < 1e-10
    assert irreducibility(S)


def test_reducible_tuple_detected():
    D = UnitaryTuple((np.diag([1, -1]).astype(complex), np.diag([1j, -1j])))
    assert not irreducibility(D)


def test_out_of_range_is_infeasible():
    assert out_of_range_k(7) == [1]
    rep = solve_triple(census_spec(7, 1)[0], SolverConfig(starts=4))
    assert not rep.converged and rep.status == "infeasible" and rep.starts_used == 4


def test_determinant_inconsistent_spec_short_circuits():
    spec = ClassSpec(2, ((Fraction(1, 4), Fraction(1, 4)), (Fraction(0), Fraction(0))), 1)
    rep = solve_triple(spec, FAST)
    assert rep.status == "infeasible-determinant" and rep.starts_used == 0


def test_spec_validation():
    with pytest.raises(DimensionMismatch):
        ClassSpec(3, ((Fraction(0),),))
