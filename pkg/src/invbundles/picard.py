"""Equivariant Picard groups of orbifold curves over P^1 and the curves X(p).

``picard_structure`` reads the torsion off the gcd ladder d_k of k-fold products
of the ramification indices; ``snf_torsion`` recomputes it from the Smith normal
form of the relation lattice e_1 s_1 = ... = e_n s_n and serves as the oracle.

``chevalley_weil`` decomposes H^0(X(p), lambda^a) with the holomorphic Lefschetz
formula.  An element g != +-1 of SL(2,p) fixes only points of the three special
orbits (isotropy orders 2, 3, p), and

    tr(g | H^0) = sum_i |D_i| / |C| * sum_{z in C cap <y_i>} chi_i(z)^a / (1 - kappa_i(z))

where C is the SL class of g, D_i the i-th orbit, y_i in SL(2,Z) generates the
stabiliser of a point of D_i, kappa_i is its action on the cotangent line and
chi_i its action on the fibre of lambda.  With groups acting on functions by
f -> f o g^{-1}:

* y_1 = [[0,-1],[1,0]] at z = i, kappa = -1;
* y_2 = [[0,-1],[1,1]] at z = exp(2 pi i/3), kappa = exp(2 pi i/3);
* y_3 = [[-1,1],[0,-1]] at the cusp, kappa = exp(2 pi i/p) on q = exp(2 pi i z/p).

chi_i(y_i) = exp(pi i r_i / e_i) with r_i odd (-I acts on lambda by -1) and
r_i (p-6) = 1 mod e_i (lambda^(2p-12) is the canonical bundle).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, prod

from .chartable import character_table
from .cyclotomic import Cyclotomic, lcm
from .errors import (
    BelowCanonicalRange,
    NonIntegralCanonicalExponent,
    NonIntegralGenus,
    NotHyperbolic,
    PrimeNotSixNPlusMinusOne,
)
from .group import PSL2, SL2, GroupElement, build_group, classify_element, is_prime
from .repring import ClassFunction, Decomposition, decompose


@dataclass(frozen=True)
class DyckSignature:
    e: tuple[int, ...]

    def __post_init__(self):
        if len(self.e) < 1 or any(int(x) < 2 for x in self.e):
            raise ValueError("ramification indices must be integers >= 2")
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))

    @classmethod
    def parse(cls, text: str) -> DyckSignature:
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def n(self) -> int:
        return len(self.e)

    @property
    def orbifold_excess(self) -> Fraction:
        """n - 2 - sum 1/e_i, positive exactly for hyperbolic signatures."""
        return self.n - 2 - sum(Fraction(1, x) for x in self.e)

    @property
    def hyperbolic(self) -> bool:
        return self.orbifold_excess > 0

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.e)) + ")"


@dataclass(frozen=True)
class PicardStructure:
    signature: DyckSignature
    free_rank: int
    torsion: tuple[int, ...]
    N: int
    canonical_exponent: int
    d_k: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature.e),
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "N": self.N,
            "canonical_exponent": self.canonical_exponent,
            "d_k": list(self.d_k),
        }


def _require_hyperbolic(sig: DyckSignature) -> None:
    if not sig.hyperbolic:
        raise NotHyperbolic(f"{sig}: sum 1/e_i = {sig.n - 2 - sig.orbifold_excess} >= n - 2")


def gcd_ladder(e) -> tuple[int, ...]:
    """d_k = gcd of all products of k distinct e_i, for k = 1..n-1."""
    return tuple(reduce(gcd, (prod(c) for c in combinations(e, k))) for k in range(1, len(e)))


def _primary_parts(orders) -> list[int]:
    """Prime-power cyclic factors of a product of cyclic groups, sorted."""
    out = []
    for x in orders:
        f = 2
        while x > 1:
            if x % f == 0:
                q = 1
                while x % f == 0:
                    x //= f
                    q *= f
                out.append(q)
            f += 1
    return sorted(out)


def picard_structure(sig: DyckSignature) -> PicardStructure:
    _require_hyperbolic(sig)
    d = gcd_ladder(sig.e)
    factors = [d[0]] + [d[k] // d[k - 1] for k in range(1, len(d))] if d else []
    torsion = tuple(x for x in factors if x > 1)
    N = lcm(*sig.e)
    if N != prod(sig.e) // (d[-1] if d else 1):
        raise AssertionError("lcm does not match e_1...e_n / d_{n-1}")
    if _primary_parts([N, *torsion]) != _primary_parts(sig.e):
        raise AssertionError("Z/N + torsion is not the sum of the Z/e_i")
    K = N * sig.orbifold_excess
    if K.denominator != 1:
        raise NonIntegralCanonicalExponent(f"{sig}: {K}")
    return PicardStructure(sig, 1, torsion, N, int(K), d)


def snf_torsion(sig: DyckSignature) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion invariant factors) of Z^n / <e_1 s_1 - e_i s_i>."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    n = sig.n
    if n == 1:
        return 1, ()
    rows = []
    for i in range(1, n):
        r = [0] * n
        r[0], r[i] = sig.e[0], -sig.e[i]
        rows.append(r)
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(S[i, i])) for i in range(min(S.shape))]
    rank = sum(1 for x in diag if x)
    return n - rank, tuple(x for x in diag if x > 1)


def random_hyperbolic_signatures(count: int, seed: int = 0, max_n: int = 5, max_e: int = 12):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, max_n)
        sig = DyckSignature(tuple(rng.randint(2, max_e) for _ in range(n)))
        if sig.hyperbolic:
            out.append(sig)
    return out


def genus(sig: DyckSignature, group_order: int) -> int:
    _require_hyperbolic(sig)
    two_g_minus_2 = group_order * sig.orbifold_excess
    if two_g_minus_2.denominator != 1 or two_g_minus_2.numerator % 2:
        raise NonIntegralGenus(f"|G|(n-2-sum 1/e_i) = {two_g_minus_2}")
    return int(two_g_minus_2) // 2 + 1


# -- the curves X(p) ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModularData:
    p: int
    n: int
    epsilon: int
    genus: int
    deg_lambda: int
    group_order: int
    deg_canonical: int
    canonical_exponent_2p_minus_12: int
    deg_gamma: int
    linearizable_index: int
    schur_d: int
    degenerate: bool
    embedding_degrees: tuple[int, int]
    orbit_degree_D: int
    claimed_degree_D: int
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "epsilon": self.epsilon,
            "genus": self.genus,
            "deg_lambda": self.deg_lambda,
            "group_order": self.group_order,
            "deg_canonical": self.deg_canonical,
            "canonical_exponent_2p_minus_12": self.canonical_exponent_2p_minus_12,
            "deg_gamma": self.deg_gamma,
            "linearizable_index": self.linearizable_index,
            "schur_d": self.schur_d,
            "degenerate": self.degenerate,
            "embedding_degrees": list(self.embedding_degrees),
            "divisor_class_check": {
                "orbit_degree": self.orbit_degree_D,
                "claimed_degree": self.claimed_degree_D,
                "agrees": self.orbit_degree_D == self.claimed_degree_D,
            },
            "notes": list(self.notes),
        }


def six_n_epsilon(p: int) -> tuple[int, int]:
    if not is_prime(p) or p in (2, 3):
        raise PrimeNotSixNPlusMinusOne(f"{p} is not a prime of the form 6n+-1")
    eps = 1 if p % 6 == 1 else -1
    return (p - eps) // 6, eps


def embedding_degrees(p: int) -> tuple[int, int]:
    """Degrees of the images of X(p) in P(V_-) and P(V_+)."""
    six_n_epsilon(p)
    return (p - 3) * (p * p - 1) // 48, (p - 1) * (p * p - 1) // 48


def modular_data(p: int) -> ModularData:
    n, eps = six_n_epsilon(p)
    order = p * (p * p - 1) // 2
    deg_lambda = (p * p - 1) // 24
    two_g_minus_2 = (p - 6) * (p * p - 1) // 12
    g = two_g_minus_2 // 2 + 1
    if (2 * p - 12) * deg_lambda != two_g_minus_2:  # pragma: no cover
        raise AssertionError("lambda^(2p-12) is not canonical in degree")
    degenerate = p < 7
    notes = []
    if degenerate:
        notes.append("p = 5: genus 0, the triangle group (2,3,5) is spherical")
    else:
        if genus(DyckSignature((2, 3, p)), order) != g:  # pragma: no cover
            raise AssertionError("Hurwitz genus disagrees with the closed form")
        if picard_structure(DyckSignature((2, 3, p))).canonical_exponent != p - 6:  # pragma: no cover
            raise AssertionError("canonical exponent is not p - 6")
    # orbit sizes |G|/2, |G|/3, |G|/p of the special orbits
    orbit_deg = eps * (order // 2 - order // 3 - p * (order // p))
    claimed = (p * p - 1) // 12
    if orbit_deg != claimed:
        notes.append(
            f"eps(D_2 - D_3 - p D_p) has degree {orbit_deg}, not the generator degree {claimed}"
        )
    return ModularData(
        p, n, eps, g, deg_lambda, order, two_g_minus_2, 2 * p - 12, 2 * deg_lambda, 2, 2,
        degenerate, embedding_degrees(p), orbit_deg, claimed, tuple(notes),
    )


def lambda_isotropy(p: int) -> tuple[int, int, int]:
    """(s_1, s_2, s_3) with (p-6) s_i = 1 mod e_i, from the closed-form case table."""
    n, eps = six_n_epsilon(p)
    s = (1, (3 - eps) // 2, n if eps == 1 else p - n)
    for si, e in zip(s, (2, 3, p)):
        if ((p - 6) * si - 1) % e:
            raise AssertionError(f"s = {si} fails (p-6)s = 1 mod {e}")
    return s


def rr_dimension(p: int, a: int) -> int:
    md = modular_data(p)
    d = a * md.deg_lambda
    if d < md.deg_canonical:
        raise BelowCanonicalRange(f"deg lambda^{a} = {d} < 2g-2 = {md.deg_canonical}")
    if d == md.deg_canonical:
        return md.genus
    return d - md.genus + 1


@dataclass(frozen=True)
class EquivariantSection:
    p: int
    a: int
    dimension: int
    decomposition: Decomposition
    group: str

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "dimension": self.dimension,
            "group": self.group,
            "decomposition": self.decomposition.as_dict(),
        }


_STABILISERS = (
    ((0, -1, 1, 0), 2),
    ((0, -1, 1, 1), 3),
    ((-1, 1, 0, -1), None),  # order 2p, cusp
)


def _root(m: int, num: int, den: int) -> Cyclotomic:
    """exp(2 pi i num/den) inside Q(zeta_m)."""
    if (num * m) % den:
        raise ValueError(f"zeta_{den}^{num} is not in Q(zeta_{m})")
    return Cyclotomic.root(m, num * m // den)


def _inv_one_minus(m: int, j: int, e: int) -> Cyclotomic:
    """1 / (1 - zeta_e^j) for zeta_e^j != 1, as -(1/o) sum_k k w^k with w of order o."""
    g = gcd(j, e)
    o = e // g
    w = j // g
    acc = Cyclotomic.from_roots(m, [((k * w % o) * (m // o), -k) for k in range(1, o)])
    return acc * Fraction(1, o)


def lefschetz_character(p: int, a: int, variant: str | None = None) -> ClassFunction:
    """Character of H^0(X(p), lambda^a) (assumes H^1 vanishes or a = 2p - 12)."""
    if variant is None:
        variant = SL2 if a % 2 else PSL2
    G = build_group(p, variant)
    T = character_table(G)
    m = T.conductor
    dim = rr_dimension(p, a)
    s = lambda_isotropy(p)
    Gsl = build_group(p, SL2)
    psl_order = p * (p * p - 1) // 2
    vals = []
    for ci, cl in enumerate(T.classes.classes):
        sl_idx = cl.sl_classes[0] if variant == PSL2 else ci
        if sl_idx == 0:
            vals.append(Cyclotomic.rational(m, dim))
            continue
        if sl_idx == 1:
            vals.append(Cyclotomic.rational(m, dim * (-1) ** a))
            continue
        sl_size = character_table(Gsl).classes.classes[sl_idx].size
        total = Cyclotomic.zero(m)
        for (mat, e), si in zip(_STABILISERS, s):
            e = p if e is None else e
            y = GroupElement.from_entries(*mat, p)
            # r odd with r = s mod e
            r = si if si % 2 else si + e
            contrib = Cyclotomic.zero(m)
            z = y
            for j in range(1, 2 * e):
                if j % e and classify_element(Gsl, z) == sl_idx:
                    # chi(y^j)^a = exp(pi i r j a / e), kappa(y^j) = exp(2 pi i j / e)
                    num = _root(m, (r * j * a) % (2 * e), 2 * e)
                    contrib = contrib + num * _inv_one_minus(m, j % e, e)
                z = z * y
            total = total + contrib * Fraction(psl_order // e, sl_size)
        if a == 2 * p - 12:
            # H^1(K) is the trivial line
            total = total + 1
        vals.append(total)
    return ClassFunction(T, tuple(vals))


def chevalley_weil(p: int, a: int) -> EquivariantSection:
    md = modular_data(p)
    if a < 0 or (a * md.deg_lambda <= md.deg_canonical and a != 2 * p - 12):
        raise BelowCanonicalRange(f"a = {a}: degree {a * md.deg_lambda} <= 2g-2 = {md.deg_canonical}")
    chi = lefschetz_character(p, a)
    T = chi.table
    dec = decompose(T, chi)
    dim = rr_dimension(p, a)
    if dec.dimension != dim:
        raise AssertionError(f"Chevalley-Weil dimension {dec.dimension} != Riemann-Roch {dim}")
    return EquivariantSection(p, a, dim, dec, str(T.group))
