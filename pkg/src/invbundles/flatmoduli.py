"""Flat unitary data on the (2,3,p) triangle group and its central extension.

The SU(2) census enumerates rotation data directly.  A representation sends the
generators to A_i conjugate to diag(exp(i pi l_i/e_i), exp(-i pi l_i/e_i)) with
0 < l_i < e_i and t to a sign sigma, subject to

* (-1)^{l_i} = sigma^{b_i}   (from g_i^{e_i} = t^{b_i}),
* A_1 A_2 A_3 = sigma^b I    (the product relation),

and the product relation is solvable by an irreducible triple exactly when the
three angles pass ``su2_admissible`` (after replacing A_3 by -A_3 if sigma^b = -1).

Generators of the central extension are only defined up to multiplication by
powers of t.  Replacing g_3 by g_3 t^j changes (b_3, b) to (b_3 + j p, b + j); the
census uses the j in {0, 1} with b_3 + j p = b_2 (mod 2), which is the lift whose
third trace takes the parity of k stated in the closed form.  The untwisted lift
is what the isotropy of lambda sees, so exponent congruences are checked against
both k and p - k when the parities of k and n disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

from .errors import (
    AngleOutOfRange,
    CensusMismatch,
    NonIntegralB,
    NoSolution,
    NotPerfect,
    PrimeTooSmall,
)
from .picard import DyckSignature, lambda_isotropy, six_n_epsilon


@dataclass(frozen=True)
class CentralExtensionData:
    signature: DyckSignature
    s: int
    b: int
    b_i: tuple[int, ...]

    def twisted(self, i: int, j: int) -> CentralExtensionData:
        """Constants after replacing generator i by g_i t^j."""
        e = self.signature.e[i]
        bi = list(self.b_i)
        bi[i] += j * e
        return CentralExtensionData(self.signature, self.s, self.b + j, tuple(bi))

    def to_json(self) -> dict:
        return {"signature": list(self.signature.e), "s": self.s, "b": self.b, "b_i": list(self.b_i)}


def central_extension(sig: DyckSignature) -> CentralExtensionData:
    e = sig.e
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            if gcd(e[i], e[j]) != 1:
                raise NotPerfect(f"{sig}: e_{i + 1} and e_{j + 1} share a factor")
    E = prod(e)
    s = E * sig.orbifold_excess
    if s.denominator != 1:  # pragma: no cover - pairwise coprime forces integrality
        raise NonIntegralB(f"s = {s}")
    s = int(s)
    b_i = tuple(pow(s, -1, x) if x > 1 else 0 for x in e)
    b = Fraction(1, E) + sum(Fraction(bi, x) for bi, x in zip(b_i, e))
    if b.denominator != 1:
        raise NonIntegralB(f"{sig}: b = {b}")
    return CentralExtensionData(sig, s, int(b), b_i)


def su2_admissible(angles) -> bool:
    """Irreducible A, B, C in SU(2) with ABC = I exist in the classes of the given angles.

    Angles are rational multiples of pi, given as Fractions (theta / pi).
    """
    t1, t2, t3 = (Fraction(x) for x in angles)
    for t in (t1, t2, t3):
        if not 0 < t < 1:
            raise AngleOutOfRange(f"theta/pi = {t} is not in (0, 1)")
    return abs(t1 - t2) < t3 < min(t1 + t2, 2 - t1 - t2)


@dataclass(frozen=True)
class TraceTriple:
    p: int
    epsilon: int
    n: int
    k: int
    central_sign: int
    angles: tuple[Fraction, Fraction, Fraction]

    @property
    def traces(self) -> tuple[int, int, tuple[int, int]]:
        """(0, epsilon, (k, p)) where the last entry stands for 2 cos(pi k / p)."""
        return (0, self.epsilon, (self.k, self.p))

    def numeric_traces(self) -> tuple[float, float, float]:
        import math

        return tuple(2 * math.cos(math.pi * float(a)) for a in self.angles)


@dataclass(frozen=True)
class ExponentSolution:
    p: int
    k: int
    a: int
    branch: str  # "k" or "2p-k": which side of the trace identification was met
    lift_twisted: bool = False

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "a": self.a, "branch": self.branch,
                "lift_twisted": self.lift_twisted}


@dataclass(frozen=True)
class ModuliCensus:
    p: int
    n: int
    epsilon: int
    rank: int
    count: int
    items: tuple
    lift_twist: int = 0
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        out = {"p": self.p, "n": self.n, "epsilon": self.epsilon, "rank": self.rank,
               "count": self.count}
        if self.rank == 2:
            out["lift_twist"] = self.lift_twist
            items = []
            for it in self.items:
                sol = exponent_report(self.p, it.k)
                items.append({
                    "k": it.k,
                    "trace_third": f"2cos(pi*{it.k}/{self.p})",
                    "exponent_a": sol["a"],
                    "exponent_lift_twisted": sol["lift_twisted"],
                    "central_sign": it.central_sign,
                    "angles": [f"{a.numerator}/{a.denominator}" for a in it.angles],
                })
            out["items"] = items
        else:
            out["items"] = list(self.items)
        out["notes"] = list(self.notes)
        return out


def _check_p(p: int) -> tuple[int, int]:
    n, eps = six_n_epsilon(p)
    if p < 7:
        raise PrimeTooSmall(f"p = {p} < 7")
    return n, eps


def closed_form_k(p: int) -> list[int]:
    n, eps = _check_p(p)
    if eps == 1:
        return [k for k in range(n + 1, 5 * n + 1) if k % 2 == 1]
    return [k for k in range(n, 5 * n) if k % 2 == 0]


def census_lift(p: int) -> tuple[CentralExtensionData, int]:
    ce = central_extension(DyckSignature((2, 3, p)))
    j = (ce.b_i[1] - ce.b_i[2]) % 2  # p is odd, so b_3 + j p = b_3 + j mod 2
    return ce.twisted(2, j), j


def enumerate_su2(p: int) -> tuple[list[TraceTriple], int]:
    """Rotation-number enumeration of irreducible SU(2) data, independent of the closed form."""
    n, eps = _check_p(p)
    ce, j = census_lift(p)
    e = (2, 3, p)
    out = []
    for sigma in (1, -1):
        tsign = sigma ** ce.b
        for l1 in range(1, 2):
            for l2 in range(1, 3):
                for l3 in range(1, p):
                    ls = (l1, l2, l3)
                    if any((-1) ** li != sigma ** bi for li, bi in zip(ls, ce.b_i)):
                        continue
                    angles = tuple(Fraction(li, ei) for li, ei in zip(ls, e))
                    # A1 A2 (tsign A3) = I; -A3 has angle pi - theta_3
                    test = angles[:2] + ((angles[2] if tsign == 1 else 1 - angles[2]),)
                    if su2_admissible(test):
                        out.append(TraceTriple(p, eps, n, l3, sigma, angles))
    return out, j


def su2_census(p: int) -> ModuliCensus:
    n, eps = _check_p(p)
    items, j = enumerate_su2(p)
    got = sorted(t.k for t in items)
    want = closed_form_k(p)
    if got != want:
        raise CensusMismatch(f"p = {p}: enumeration gives k = {got}, closed form k = {want}")
    for t in items:
        tr = t.numeric_traces()
        if abs(tr[0]) > 1e-12 or abs(tr[1] - eps) > 1e-12:
            raise CensusMismatch(f"p = {p}, k = {t.k}: traces {tr}")
    if len(items) != 2 * n:
        raise CensusMismatch(f"p = {p}: {len(items)} representations, expected 2n = {2 * n}")
    notes = []
    if j:
        notes.append("third generator lifted as g_3 t so that k has the closed-form parity")
    return ModuliCensus(p, n, eps, 2, len(items), tuple(sorted(items, key=lambda t: t.k)), j,
                        tuple(notes))


def _solve_exponent(p: int, target: int, n: int, eps: int) -> tuple[int, str] | None:
    branches = (("k", (eps * target) % (2 * p)), ("2p-k", (eps * (2 * p - target)) % (2 * p)))
    # solutions lie in a few residue classes mod 6p, so |a| <= 6p suffices
    for a in range(-1, -6 * p - 1, -2):
        if a % 3 != 1:
            continue
        for name, rhs in branches:
            if (a * n - rhs) % (2 * p) == 0:
                return a, name
    return None


def exponent_of(p: int, k: int) -> ExponentSolution:
    """Smallest |a|, a < 0 odd, a = 1 mod 3, a n = +-eps k mod 2p."""
    n, eps = _check_p(p)
    if k not in closed_form_k(p):
        raise NoSolution(f"k = {k} is not in the census of p = {p}")
    hit = _solve_exponent(p, k, n, eps)
    if hit is None:
        raise NoSolution(
            f"p = {p}, k = {k}: a n = +-eps k mod 2p has no odd solution (k and n differ in parity)"
        )
    return ExponentSolution(p, k, hit[0], hit[1])


def exponent_of_untwisted(p: int, k: int) -> ExponentSolution:
    """The exponent for the census entry read through the untwisted lift (k -> p - k)."""
    n, eps = _check_p(p)
    if k not in closed_form_k(p):
        raise NoSolution(f"k = {k} is not in the census of p = {p}")
    hit = _solve_exponent(p, p - k, n, eps)
    if hit is None:  # pragma: no cover
        raise NoSolution(f"p = {p}, k = {k}: no solution for p - k either")
    return ExponentSolution(p, k, hit[0], hit[1], lift_twisted=True)


def exponent_report(p: int, k: int) -> dict:
    try:
        return exponent_of(p, k).to_json()
    except NoSolution:
        return exponent_of_untwisted(p, k).to_json()


def exponent_table(p: int) -> list[dict]:
    rows = [exponent_report(p, k) for k in closed_form_k(p)]
    values = [r["a"] for r in rows]
    if len(set(values)) != len(values):
        raise CensusMismatch(f"p = {p}: k -> a is not injective: {values}")
    return rows


def su3_count(p: int) -> int:
    n, eps = _check_p(p)
    return 3 * n * n + eps * n


SU3_P7 = {
    "S2E(-5,5)": (-10, 0, 10),
    "S2E(-11,11)": (-22, 0, 22),
    "V-(x)O": (-2, -4, 6),
    "V-*(x)O": (-6, 4, 2),
}


def su3_exponents_p7() -> dict[str, tuple[int, int, int]]:
    rank2 = {"S2E(-5,5)": -5, "S2E(-11,11)": -11}
    for name, row in SU3_P7.items():
        if sum(row) != 0:
            raise AssertionError(f"{name}: exponents do not sum to 0")
        if name in rank2:
            a = rank2[name]
            if row != (2 * a, 0, -2 * a):
                raise AssertionError(f"{name}: not the symmetric square of ({a}, {-a})")
    return dict(SU3_P7)


def isotropy_eigenvalues(p: int, exponents) -> list[list[Fraction]]:
    """Isotropy eigenvalues of a sum of powers of lambda, as fractions of a full turn.

    At the i-th special orbit lambda^a contributes exp(pi i a s_i / e_i).
    """
    s = lambda_isotropy(p)
    out = []
    for si, e in zip(s, (2, 3, p)):
        out.append(sorted(Fraction(a * si, 2 * e) % 1 for a in exponents))
    return out


def _cusp_eigenvalue_sets(p: int) -> dict[str, list[Fraction]]:
    """Eigenvalues of the cusp stabiliser [[-1,1],[0,-1]] on each 3-dimensional PSL irrep."""
    from .chartable import character_table
    from .group import PSL2, SL2, GroupElement, build_group, classify_element
    from .repring import eigenvalue_multiset

    T = character_table(build_group(p, PSL2))
    sl = classify_element(build_group(p, SL2), GroupElement.from_entries(-1, 1, 0, -1, p))
    c = next(i for i, cl in enumerate(T.classes.classes) if sl in cl.sl_classes)
    out = {}
    for irr in T.irreps:
        if irr.dimension == 3:
            ms = eigenvalue_multiset(T, irr.name, c)
            out[irr.name] = sorted(Fraction(r, p) for r, m in ms.items() for _ in range(m))
    return out


def su3_census_p7() -> ModuliCensus:
    """The four rank-3 bundles at p = 7 with isotropy read off their exponents.

    For the two bundles built from a constant 3-dimensional representation the
    cusp isotropy must equal that representation's eigenvalues on the cusp
    stabiliser; the matching irrep is recorded (it fixes the dual convention).
    """
    reps = _cusp_eigenvalue_sets(7)
    items = []
    notes = []
    for name, row in su3_exponents_p7().items():
        eig = isotropy_eigenvalues(7, row)
        item = {
            "bundle": name,
            "exponents": list(row),
            "isotropy": [[f"{x.numerator}/{x.denominator}" for x in col] for col in eig],
            "determinant_trivial": all(sum(col) % 1 == 0 for col in eig),
        }
        if name.startswith("V"):
            match = [r for r, ev in reps.items() if ev == eig[2]]
            item["cusp_isotropy_matches"] = match
            expected = "V3*" if "*" in name.split("(")[0] else "V3"
            if match != [expected]:
                notes.append(f"{name}: exponents match the eigenvalues of {match}, not {expected}")
        items.append(item)
    return ModuliCensus(7, 1, 1, 3, su3_count(7), tuple(items), notes=tuple(notes))
