import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invbundles.errors import NotAntisymmetric, NotSquare, OddDimension, UnknownVariable
from invbundles.polyverify import (
    SparsePoly,
    det_expand,
    hessian,
    matrix_from_strings,
    pfaffian_expand,
    run_identity_checks,
)

XS = ("x0", "x1", "x2", "x3")


def P(text, vs=XS):
    return SparsePoly.parse_linear(text, vs)


def test_trivial_determinants():
    assert det_expand([[P("x0")]]) == P("x0")
    diag = matrix_from_strings(["x0 0 0 0", "0 x1 0 0", "0 0 x2 0", "0 0 0 x3"], XS)
    assert str(det_expand(diag)) == "x0*x1*x2*x3"
    with pytest.raises(NotSquare):
        det_expand([[P("x0"), P("x1")]])


def test_pfaffian_anchor_and_errors():
    J = matrix_from_strings(["0 1", "-1 0"], XS)
    assert pfaffian_expand(J) == SparsePoly.const(1, XS)
    JJ = matrix_from_strings(["0 1 0 0", "-1 0 0 0", "0 0 0 1", "0 0 -1 0"], XS)
    assert pfaffian_expand(JJ) == SparsePoly.const(1, XS)
    with pytest.raises(NotAntisymmetric):
        pfaffian_expand(matrix_from_strings(["0 1", "1 0"], XS))
    with pytest.raises(OddDimension):
        pfaffian_expand(matrix_from_strings(["0 1 0", "-1 0 0", "0 0 0"], XS))


def test_hessian_examples():
    x = SparsePoly.var("x0", XS)
    assert hessian(x * x, ["x0"]) == [[SparsePoly.const(2, XS)]]
    xy = SparsePoly.var("x0", XS) * SparsePoly.var("x1", XS)
    H = hessian(xy, ["x0", "x1"])
    assert [[str(e) for e in r] for r in H] == [["0", "1"], ["1", "0"]]
    with pytest.raises(UnknownVariable):
        hessian(x, ["q"])


def antisymmetric(n):
    coeffs = st.lists(st.integers(-4, 4), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)

    def build(cs):
        M = [[SparsePoly.const(0, ()) for _ in range(n)] for _ in range(n)]
        it = iter(cs)
        for i in range(n):
            for j in range(i + 1, n):
                c = next(it)
                M[i][j], M[j][i] = SparsePoly.const(c, ()), SparsePoly.const(-c, ())
        return M

    return coeffs.map(build)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 4, 6, 8]).flatmap(antisymmetric))
def test_pfaffian_squares_to_determinant(M):
    pf = pfaffian_expand(M, check_square=False)
    assert pf * pf == det_expand(M)



@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.lists(st.integers(0, 3), min_size=4, max_size=4)),
                max_size=6))
def test_hessian_is_symmetric(terms):
    F = SparsePoly(XS, {tuple(e): c for c, e in terms})
    H = hessian(F, XS)
    assert all(H[i][j] == H[j][i] for i in range(4) for j in range(4))


def test_identity_reports():
    reps = {r.name: r for r in run_identity_checks()}
    det, pf, hs = reps["determinant"], reps["pfaffian"], reps["hessian"]
    assert det.support_match and det.unit_coefficients and det.numeric_ok and det.passed
    assert det.sign_pattern == {"x0^3*x1": 1, "x0*x2^3": 1, "x1^3*x2": -1}
    # the pfaffian of the fixed matrix is minus the cubic under Pf(J) = 1
    assert pf.match_up_to_sign and not pf.exact_match
    assert (pf.computed + pf.claimed).is_zero()
    assert hs.passed and hs.scalar == 2
