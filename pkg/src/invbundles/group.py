"""SL(2,F_p) and PSL(2,F_p): elements, conjugacy classes, power maps.

The class list is built in closed form (centre, four unipotent classes split by
quadratic-residue type, split and non-split semisimple classes indexed by
trace).  ``brute_force_classes`` enumerates the whole group and partitions it
under conjugation; it is kept as the oracle for the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from . import _kernels
from .errors import IndexOutOfRange, NonPrime, PrimeTooSmall

SL2 = "SL2"
PSL2 = "PSL2"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int, minimum: int = 5) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NonPrime(f"{p} is not prime")
    if p < minimum:
        raise PrimeTooSmall(f"p={p} < {minimum}")


def legendre(x: int, p: int) -> int:
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise NonPrime(p)  # pragma: no cover


def least_nonsquare(p: int) -> int:
    for x in range(2, p):
        if legendre(x, p) == -1:
            return x
    raise NonPrime(p)  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class GroupDescriptor:
    p: int
    variant: str
    order: int

    @property
    def is_projective(self) -> bool:
        return self.variant == PSL2

    def __str__(self) -> str:
        return f"{'PSL' if self.is_projective else 'SL'}(2,{self.p})"


def build_group(p: int, variant: str = SL2) -> GroupDescriptor:
    check_prime(p)
    variant = _normalize_variant(variant)
    order = p * (p * p - 1)
    if variant == PSL2:
        order //= 2
    return GroupDescriptor(int(p), variant, order)


def _normalize_variant(variant: str) -> str:
    v = str(variant).upper().replace("(", "").replace(")", "").replace(",", "")
    if v in ("SL2", "SL", "SL2P"):
        return SL2
    if v in ("PSL2", "PSL", "PSL2P"):
        return PSL2
    raise ValueError(f"unknown variant {variant!r}")


# -- elements -----------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """2x2 matrix over F_p of determinant 1, entries reduced to 0..p-1.

    Projective elements are stored with their first nonzero entry in
    1..(p-1)/2, which picks one of the two matrices +-M.
    """

    a: int
    b: int
    c: int
    d: int
    p: int
    projective: bool = False

    def __post_init__(self):
        if (self.a * self.d - self.b * self.c - 1) % self.p:
            raise ValueError("determinant is not 1 mod p")

    @classmethod
    def from_entries(cls, a, b, c, d, p, projective=False) -> GroupElement:
        a, b, c, d = a % p, b % p, c % p, d % p
        if projective:
            first = next(x for x in (a, b, c, d) if x)
            if first > (p - 1) // 2:
                a, b, c, d = (-a) % p, (-b) % p, (-c) % p, (-d) % p
        return cls(a, b, c, d, p, projective)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.p

    def __mul__(self, other: GroupElement) -> GroupElement:
        a, b, c, d = _matmul(self.entries, other.entries, self.p)
        return GroupElement.from_entries(a, b, c, d, self.p, self.projective)

    def inverse(self) -> GroupElement:
        return GroupElement.from_entries(self.d, -self.b, -self.c, self.a, self.p, self.projective)

    def __pow__(self, n: int) -> GroupElement:
        m = _matpow(self.entries, n, self.p)
        return GroupElement.from_entries(*m, self.p, self.projective)

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def order(self) -> int:
        x, k = self, 1
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def to_projective(self) -> GroupElement:
        return GroupElement.from_entries(*self.entries, self.p, True)


def _matmul(x, y, p):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _matpow(x, n, p):
    if n < 0:
        a, b, c, d = x
        x, n = (d, -b % p, -c % p, a), -n
    result = (1, 0, 0, 1)
    while n:
        if n & 1:
            result = _matmul(result, x, p)
        x = _matmul(x, x, p)
        n >>= 1
    return result


# -- F_{p^2} helpers for the non-split torus ---------------------------------------


def _fp2_mul(x, y, d, p):
    return ((x[0] * y[0] + d * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)


def _fp2_pow(x, n, d, p):
    result = (1, 0)
    while n:
        if n & 1:
            result = _fp2_mul(result, x, d, p)
        x = _fp2_mul(x, x, d, p)
        n >>= 1
    return result


def nonsplit_generator(p: int) -> tuple[tuple[int, int], int]:
    """Generator of the norm-one subgroup (order p+1) of F_p[sqrt(d)]^*, and d."""
    d = least_nonsquare(p)
    q = p * p - 1
    factors = _prime_factors(q)
    for a in range(p):
        for b in range(1, p):
            x = (a, b)
            if all(_fp2_pow(x, q // f, d, p) != (1, 0) for f in factors):
                return _fp2_pow(x, p - 1, d, p), d
    raise AssertionError("F_{p^2} has no generator")  # pragma: no cover


# -- conjugacy classes ----------------------------------------------------------

CENTRAL, UNIPOTENT, SPLIT, NONSPLIT, FUSED = "central", "unipotent", "split", "nonsplit", "fused"


@dataclass(frozen=True)
class ConjugacyClass:
    name: str
    representative: GroupElement
    size: int
    element_order: int
    power_map: tuple[int, ...]
    kind: str
    # central: sign; unipotent: (sign, residue type); split/nonsplit: torus exponent k
    param: object = None
    sl_classes: tuple[int, ...] = field(default=())

    def power(self, j: int) -> int:
        return self.power_map[j % self.element_order]


@dataclass(frozen=True)
class ClassData:
    """Everything the character-table code needs besides the class list."""

    group: GroupDescriptor
    classes: tuple[ConjugacyClass, ...]
    split_generator: int
    nonsplit_generator: tuple[int, int]
    nonsquare: int

    def __len__(self) -> int:
        return len(self.classes)

    def index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(name)

    def identity_index(self) -> int:
        return 0

    def inverse_class(self, i: int) -> int:
        c = self.classes[i]
        return c.power(-1)


def _sl_class_skeleton(p: int):
    """Closed-form SL(2,p) class representatives with their kind and parameter."""
    g = primitive_root(p)
    eta, dsq = nonsplit_generator(p)
    nu = least_nonsquare(p)
    reps = [
        ("1", (1, 0, 0, 1), CENTRAL, 1, 1, 1),
        ("z", (p - 1, 0, 0, p - 1), CENTRAL, -1, 1, 2),
        ("u", (1, 1, 0, 1), UNIPOTENT, (1, 1), (p * p - 1) // 2, p),
        ("u'", (1, nu, 0, 1), UNIPOTENT, (1, -1), (p * p - 1) // 2, p),
        ("zu", (p - 1, p - 1, 0, p - 1), UNIPOTENT, (-1, 1), (p * p - 1) // 2, 2 * p),
        ("zu'", (p - 1, (-nu) % p, 0, p - 1), UNIPOTENT, (-1, -1), (p * p - 1) // 2, 2 * p),
    ]
    for k in range(1, (p - 3) // 2 + 1):
        x = pow(g, k, p)
        xi = pow(x, p - 2, p)
        order = (p - 1) // gcd(k, p - 1)
        reps.append((f"a{k}", (x, 0, 0, xi), SPLIT, k, p * (p + 1), order))
    for k in range(1, (p - 1) // 2 + 1):
        t = (2 * _fp2_pow(eta, k, dsq, p)[0]) % p
        order = (p + 1) // gcd(k, p + 1)
        reps.append((f"b{k}", (0, p - 1, 1, t), NONSPLIT, k, p * (p - 1), order))
    return reps, g, eta, dsq, nu


class _SLClassifier:
    """Map an SL(2,p) matrix to its closed-form class index."""

    def __init__(self, p: int, skeleton):
        self.p = p
        self.by_trace = {}
        for i, (_, m, kind, _, _, _) in enumerate(skeleton):
            if kind in (SPLIT, NONSPLIT):
                self.by_trace[(m[0] + m[3]) % p] = i

    def __call__(self, m) -> int:
        p = self.p
        a, b, c, d = m
        t = (a + d) % p
        if t == 2 or t == p - 2:
            sign = 1 if t == 2 else -1
            if (a, b, c, d) == ((1, 0, 0, 1) if sign == 1 else (p - 1, 0, 0, p - 1)):
                return 0 if sign == 1 else 1
            # m = sign*(I + N); conjugates of I + beta*E12 have N12 = beta*x^2, N21 = -beta*z^2
            n12 = (sign * b) % p
            n21 = (sign * c) % p
            beta = n12 if n12 else (-n21) % p
            sq = legendre(beta, p) == 1
            if sign == 1:
                return 2 if sq else 3
            return 4 if sq else 5
        return self.by_trace[t]


@lru_cache(maxsize=None)
def _sl_class_data(p: int) -> ClassData:
    skeleton, g, eta, dsq, nu = _sl_class_skeleton(p)
    classify = _SLClassifier(p, skeleton)
    group = build_group(p, SL2)
    classes = []
    for name, m, kind, param, size, order in skeleton:
        pmap = tuple(classify(_matpow(m, j, p)) for j in range(order))
        rep = GroupElement.from_entries(*m, p)
        classes.append(ConjugacyClass(name, rep, size, order, pmap, kind, param, ()))
    return ClassData(group, tuple(classes), g, eta, nu)


@lru_cache(maxsize=None)
def _psl_class_data(p: int) -> ClassData:
    sl = _sl_class_data(p)
    group = build_group(p, PSL2)
    # fuse C with zC; zC is the class of -rep
    classify = _SLClassifier(p, _sl_class_skeleton(p)[0])
    neg_of = []
    for c in sl.classes:
        a, b, cc, d = c.representative.entries
        neg_of.append(classify(((-a) % p, (-b) % p, (-cc) % p, (-d) % p)))
    orbit_of, orbits = {}, []
    for i in range(len(sl.classes)):
        if i in orbit_of:
            continue
        orb = tuple(sorted({i, neg_of[i]}))
        for j in orb:
            orbit_of[j] = len(orbits)
        orbits.append(orb)
    classes = []
    for idx, orb in enumerate(orbits):
        head = sl.classes[orb[0]]
        size = head.size if len(orb) == 2 else head.size // 2
        rep = head.representative.to_projective()
        # projective order: smallest j with rep^j = +-I
        order = 1
        while orbit_of[head.power(order)] != 0:
            order += 1
        pmap = tuple(orbit_of[head.power(j)] for j in range(order))
        name = head.name if len(orb) == 1 else "/".join(sl.classes[j].name for j in orb)
        if head.name == "1":
            name = "1"
        classes.append(ConjugacyClass(name, rep, size, order, pmap, FUSED, head.param, orb))
    return ClassData(group, tuple(classes), sl.split_generator, sl.nonsplit_generator, sl.nonsquare)


def class_data(G: GroupDescriptor) -> ClassData:
    if G.variant == SL2:
        return _sl_class_data(G.p)
    return _psl_class_data(G.p)


def conjugacy_classes(G: GroupDescriptor) -> list[ConjugacyClass]:
    return list(class_data(G).classes)


def power_class(G: GroupDescriptor, c: int, j: int) -> int:
    classes = class_data(G).classes
    if not 0 <= c < len(classes):
        raise IndexOutOfRange(f"class index {c} outside 0..{len(classes) - 1}")
    return classes[c].power(j)


def classify_element(G: GroupDescriptor, x: GroupElement) -> int:
    """Closed-form class index of an element (projective elements for PSL)."""
    p = G.p
    sl_idx = _SLClassifier(p, _sl_class_skeleton(p)[0])(x.entries)
    if G.variant == SL2:
        return sl_idx
    for i, c in enumerate(class_data(G).classes):
        if sl_idx in c.sl_classes:
            return i
    raise AssertionError("unfused SL class")  # pragma: no cover


# -- brute-force oracle -----------------------------------------------------------


@dataclass(frozen=True)
class BruteForceClasses:
    group: GroupDescriptor
    elements: np.ndarray  # (|G|, 4) int64, canonical entries
    labels: np.ndarray  # class label per element, 0..k-1
    sizes: np.ndarray

    @property
    def count(self) -> int:
        return len(self.sizes)

    def label_of(self, x: GroupElement) -> int:
        p = self.group.p
        key = _encode(np.array([x.entries]), p)[0]
        pos = np.searchsorted(self._keys, key)
        return int(self.labels[pos])

    @property
    def _keys(self) -> np.ndarray:
        return _encode(self.elements, self.group.p)


def _encode(m: np.ndarray, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    return ((m[:, 0] * p + m[:, 1]) * p + m[:, 2]) * p + m[:, 3]


def enumerate_elements(G: GroupDescriptor) -> np.ndarray:
    """All elements as rows (a, b, c, d), sorted by their integer code."""
    p = G.p
    out = _kernels.enumerate_sl2(p)
    if G.is_projective:
        out = _kernels.projective_normalize(out, p)
        out = np.unique(out, axis=0)
    keys = _encode(out, p)
    return out[np.argsort(keys, kind="stable")]


@lru_cache(maxsize=None)
def _brute_force(p: int, variant: str) -> BruteForceClasses:
    G = build_group(p, variant)
    elems = enumerate_elements(G)
    labels = _kernels.conjugation_labels(elems, p, G.is_projective)
    _, labels, sizes = np.unique(labels, return_inverse=True, return_counts=True)
    return BruteForceClasses(G, elems, labels.astype(np.int64), sizes.astype(np.int64))


def brute_force_classes(G: GroupDescriptor) -> BruteForceClasses:
    """Partition every element of G into conjugacy classes by enumeration."""
    return _brute_force(G.p, G.variant)
