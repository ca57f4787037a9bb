"""Sparse integer polynomials and the determinant, Pfaffian and Hessian identities.

Polynomials are dicts from exponent tuples to nonzero ints over a fixed ordered
variable list.  Determinants expand along the first row with memoisation on the
remaining column set; Pfaffians expand along the first row with
Pf([[0, 1], [-1, 0]]) = 1.  Both are cross-checked against sympy's integer
determinant at random integer points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAntisymmetric, NotSquare, OddDimension, UnknownVariable


class SparsePoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent vector has the wrong length")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
        self.terms = {e: c for e, c in sorted(clean.items(), reverse=True) if c}

    @classmethod
    def var(cls, name: str, variables) -> SparsePoly:
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(name)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def const(cls, c: int, variables) -> SparsePoly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def parse_linear(cls, text: str, variables) -> SparsePoly:
        """Entries such as '0', 'x1', '-x2', '3v' (one term)."""
        t = text.strip()
        if t in ("0", ""):
            return cls(variables)
        sign = 1
        if t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        i = 0
        while i < len(t) and t[i].isdigit():
            i += 1
        coeff = int(t[:i]) if i else 1
        if i == len(t):
            return cls.const(sign * coeff, variables)
        return cls.var(t[i:], variables) * (sign * coeff)

    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        return SparsePoly.const(int(other), self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return SparsePoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return SparsePoly(self.variables, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePoly.const(1, self.variables)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(other, self.variables)
        return isinstance(other, SparsePoly) and self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, name: str) -> SparsePoly:
        if name not in self.variables:
            raise UnknownVariable(name)
        i = self.variables.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return SparsePoly(self.variables, t)

    def evaluate(self, point) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= x ** k
            total += v
        return total

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def monomial(self, e) -> str:
        parts = []
        for name, k in zip(self.variables, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms.items():
            m = self.monomial(e)
            if m == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = m
            else:
                body = f"{abs(c)}*{m}"
            out.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__

    def to_json(self) -> dict:
        return {self.monomial(e): c for e, c in self.terms.items()}


PolyMatrix = list  # list of rows of SparsePoly


def matrix_from_strings(rows, variables) -> PolyMatrix:
    return [[SparsePoly.parse_linear(x, variables) for x in row.split()] for row in rows]


def _check_square(M) -> int:
    n = len(M)
    if n == 0 or any(len(r) != n for r in M):
        raise NotSquare(f"{n} rows of lengths {[len(r) for r in M]}")
    return n


def det_expand(M: PolyMatrix) -> SparsePoly:
    n = _check_square(M)
    variables = M[0][0].variables

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> SparsePoly:
        if row == n:
            return SparsePoly.const(1, variables)
        total = SparsePoly(variables)
        for pos, j in enumerate(sorted(cols)):
            if M[row][j].is_zero():
                continue
            term = M[row][j] * minor(row + 1, cols - {j})
            total = total + term if pos % 2 == 0 else total - term
        return total

    return minor(0, frozenset(range(n)))


def _check_antisymmetric(M) -> int:
    n = _check_square(M)
    for i in range(n):
        for j in range(n):
            if not (M[i][j] + M[j][i]).is_zero():
                raise NotAntisymmetric(f"entry ({i}, {j})")
    if n % 2:
        raise OddDimension(f"{n} x {n}")
    return n


def pfaffian_expand(M: PolyMatrix, check_square: bool = True) -> SparsePoly:
    """Pfaffian by first-row expansion; also asserts Pf^2 = det."""
    n = _check_antisymmetric(M)
    variables = M[0][0].variables

    @lru_cache(maxsize=None)
    def pf(idx: tuple) -> SparsePoly:
        if not idx:
            return SparsePoly.const(1, variables)
        i = idx[0]
        total = SparsePoly(variables)
        for pos in range(1, len(idx)):
            j = idx[pos]
            if M[i][j].is_zero():
                continue
            term = M[i][j] * pf(idx[1:pos] + idx[pos + 1:])
            total = total + term if pos % 2 == 1 else total - term
        return total

    out = pf(tuple(range(n)))
    if check_square and out * out != det_expand(M):
        raise AssertionError("Pf^2 != det")
    return out


def hessian(F: SparsePoly, variables) -> PolyMatrix:
    for v in variables:
        if v not in F.variables:
            raise UnknownVariable(v)
    return [[F.diff(a).diff(b) for b in variables] for a in variables]


def numeric_check(M: PolyMatrix, poly: SparsePoly, points: int = 20, seed: int = 0,
                  pfaffian: bool = False) -> bool:
    """Compare poly with an independent integer determinant at random points."""
    from sympy import Matrix

    rng = random.Random(seed)
    nv = len(poly.variables)
    for _ in range(points):
        pt = [rng.randint(-9, 9) for _ in range(nv)]
        num = Matrix([[e.evaluate(pt) for e in row] for row in M]).det()
        val = poly.evaluate(pt)
        if pfaffian:
            if val * val != num:
                return False
        elif val != num:
            return False
    return True


@dataclass
class IdentityReport:
    name: str
    claimed: SparsePoly
    computed: SparsePoly
    scalar: int = 1
    numeric_ok: bool = True

    @property
    def difference(self) -> SparsePoly:
        return self.computed - self.claimed * self.scalar

    @property
    def exact_match(self) -> bool:
        return self.difference.is_zero()

    @property
    def match_up_to_sign(self) -> bool:
        return self.exact_match or (self.computed + self.claimed * self.scalar).is_zero()

    @property
    def support_match(self) -> bool:
        return self.computed.support() == self.claimed.support()

    @property
    def unit_coefficients(self) -> bool:
        return all(abs(c) == abs(self.scalar) for c in self.computed.terms.values())

    @property
    def sign_pattern(self) -> dict[str, int]:
        return {self.computed.monomial(e): (1 if c > 0 else -1) for e, c in self.computed.terms.items()}

    @property
    def passed(self) -> bool:
        if self.name.startswith("determinant"):
            return self.support_match and self.unit_coefficients and self.numeric_ok
        return self.exact_match and self.numeric_ok

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "claimed": str(self.claimed),
            "computed": str(self.computed),
            "scalar": self.scalar,
            "exact_match": self.exact_match,
            "match_up_to_sign": self.match_up_to_sign,
            "support_match": self.support_match,
            "unit_coefficients": self.unit_coefficients,
            "sign_pattern": self.sign_pattern,
            "difference": str(self.difference),
            "numeric_ok": self.numeric_ok,
            "passed": self.passed,
        }


KLEIN_VARS = ("x0", "x1", "x2")
KLEIN_MATRIX = (
    "-x0 0 0 -x1",
    "0 x1 0 -x2",
    "0 0 x2 -x0",
    "-x1 -x2 -x0 0",
)
CUBIC_VARS = ("v", "w", "x", "y", "z")
PFAFFIAN_MATRIX = (
    "0 v w x y z",
    "-v 0 0 z -x 0",
    "-w 0 0 0 v -y",
    "-x -z 0 0 0 w",
    "-y x -v 0 0 0",
    "-z 0 y -w 0 0",
)
HESSIAN_MATRIX = (
    "w v 0 0 z",
    "v x w 0 0",
    "0 w y x 0",
    "0 0 x z y",
    "z 0 0 y v",
)


def klein_quartic() -> SparsePoly:
    x0, x1, x2 = (SparsePoly.var(n, KLEIN_VARS) for n in KLEIN_VARS)
    return x0 ** 3 * x1 + x1 ** 3 * x2 + x2 ** 3 * x0


def klein_cubic() -> SparsePoly:
    v, w, x, y, z = (SparsePoly.var(n, CUBIC_VARS) for n in CUBIC_VARS)
    return v * v * w + w * w * x + x * x * y + y * y * z + z * z * v


def _lift(P: SparsePoly, variables) -> SparsePoly:
    """The same polynomial over a longer variable list."""
    idx = [variables.index(v) for v in P.variables]
    terms = {}
    for e, c in P.terms.items():
        f = [0] * len(variables)
        for i, k in zip(idx, e):
            f[i] = k
        terms[tuple(f)] = c
    return SparsePoly(variables, terms)


def run_identity_checks(points: int = 20, seed: int = 0) -> list[IdentityReport]:
    out = []
    M = matrix_from_strings(KLEIN_MATRIX, KLEIN_VARS)
    d = det_expand(M)
    out.append(IdentityReport("determinant", klein_quartic(), d, 1,
                              numeric_check(M, d, points, seed)))

    P = matrix_from_strings(PFAFFIAN_MATRIX, CUBIC_VARS)
    pf = pfaffian_expand(P)
    out.append(IdentityReport("pfaffian", klein_cubic(), pf, 1,
                              numeric_check(P, pf, points, seed, pfaffian=True)))

    # a symmetric matrix is determined by its quadratic form sum H_ij u_i u_j
    big = CUBIC_VARS + tuple(f"u{i}" for i in range(5))
    F = _lift(klein_cubic(), big)
    H = hessian(F, CUBIC_VARS)
    shown = matrix_from_strings(HESSIAN_MATRIX, big)
    u = [SparsePoly.var(f"u{i}", big) for i in range(5)]
    q_comp = sum((H[i][j] * u[i] * u[j] for i in range(5) for j in range(5)), SparsePoly(big))
    q_shown = sum((shown[i][j] * u[i] * u[j] for i in range(5) for j in range(5)), SparsePoly(big))
    symmetric = all(H[i][j] == H[j][i] for i in range(5) for j in range(5))
    out.append(IdentityReport("hessian", q_shown, q_comp, 2, symmetric))
    return out
