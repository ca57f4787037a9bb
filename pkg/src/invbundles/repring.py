"""Class functions, decompositions, symmetric and exterior powers, Molien series."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chartable import CharacterTable, normalize_label
from .cyclotomic import Cyclotomic
from .errors import (
    NonIntegralCoefficient,
    NonIntegralMultiplicity,
    NotACharacter,
    NotExpandable,
    TableMismatch,
)

DEFAULT_N = 40


@dataclass(frozen=True)
class ClassFunction:
    table: CharacterTable
    values: tuple[Cyclotomic, ...]

    def _check(self, other: ClassFunction) -> None:
        if other.table is not self.table and other.table.group != self.table.group:
            raise TableMismatch(f"{self.table.group} vs {other.table.group}")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.table, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.table, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.table, tuple(a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.table, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def conj(self) -> ClassFunction:
        return ClassFunction(self.table, tuple(v.conj() for v in self.values))

    def power_map(self, k: int) -> ClassFunction:
        """The class function g -> f(g^k)."""
        cls = self.table.classes.classes
        return ClassFunction(self.table, tuple(self.values[c.power(k)] for c in cls))

    @property
    def degree(self) -> Fraction:
        return self.values[0].rational_value()


def character(T: CharacterTable, label) -> ClassFunction:
    return ClassFunction(T, T.row(label))


def trivial(T: CharacterTable) -> ClassFunction:
    return ClassFunction(T, tuple(Cyclotomic.rational(T.conductor, 1) for _ in T.sizes))


def zero(T: CharacterTable) -> ClassFunction:
    return ClassFunction(T, tuple(Cyclotomic.zero(T.conductor) for _ in T.sizes))


def inner_product(T: CharacterTable, f: ClassFunction, g: ClassFunction) -> Fraction:
    if f.table.group != T.group or g.table.group != T.group:
        raise TableMismatch("class functions live on a different table")
    total = Cyclotomic.zero(T.conductor)
    for size, a, b in zip(T.sizes, f.values, g.values):
        if a.is_zero() or b.is_zero():
            continue
        total = total + (a * b.conj()) * size
    total = total / T.order
    if not total.is_rational():
        raise NotACharacter(f"inner product is irrational: {total!r}")
    return total.rational_value()


# -- decompositions -----------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    names: tuple[str, ...]  # irrep names of the table, in table order
    multiplicities: tuple[int, ...]
    dims: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return sum(m * d for m, d in zip(self.multiplicities, self.dims))

    def as_dict(self) -> dict[str, int]:
        return {n: m for n, m in zip(self.names, self.multiplicities) if m}

    def __getitem__(self, name: str) -> int:
        key = normalize_label(name)
        for n, m in zip(self.names, self.multiplicities):
            if normalize_label(n) == key:
                return m
        raise KeyError(name)

    def __str__(self) -> str:
        return format_multiset(self.as_dict())

    def relabel(self, mapping: dict[str, str]) -> dict[str, int]:
        out: dict[str, int] = {}
        for n, m in self.as_dict().items():
            k = mapping.get(n, n)
            out[k] = out.get(k, 0) + m
        return out


def format_multiset(d: dict[str, int], short: bool = True) -> str:
    """Render {"V3*": 1, "V6": 2} as "3*+2x6" (or "V3*+2xV6" with short=False)."""
    if not d:
        return "0"
    parts = []
    for name, m in d.items():
        lab = name[1:] if short and name.startswith("V") else name
        parts.append(lab if m == 1 else f"{m}x{lab}")
    return "+".join(parts)


_TERM = re.compile(r"^(?:(\d+)\s*[x·]\s*)?(.+)$")


def parse_multiset(s: str) -> dict[str, int]:
    """Inverse of ``format_multiset``; labels are normalised ("3*" -> "V3*")."""
    s = s.strip()
    if s in ("", "0"):
        return {}
    out: dict[str, int] = {}
    for part in s.split("+"):
        m = _TERM.match(part.strip())
        if not m:
            raise ValueError(f"bad term {part!r}")
        k = int(m.group(1) or 1)
        lab = normalize_label(m.group(2))
        out[lab] = out.get(lab, 0) + k
    return out


def decompose(T: CharacterTable, f: ClassFunction) -> Decomposition:
    mults = []
    for i in range(len(T)):
        ip = inner_product(T, f, ClassFunction(T, T.values[i]))
        if ip.denominator != 1 or ip < 0:
            raise NotACharacter(f"multiplicity of {T.irreps[i].name} is {ip}")
        mults.append(int(ip))
    d = Decomposition(tuple(T.names), tuple(mults), tuple(T.dims))
    deg = f.values[0]
    if not deg.is_rational() or d.dimension != deg.rational_value():
        raise NotACharacter("multiplicities do not add up to the degree")
    return d


def tensor(T: CharacterTable, a, b) -> ClassFunction:
    return character(T, a) * character(T, b)


# -- symmetric and exterior powers --------------------------------------------------------


def _power_sums(f: ClassFunction, n: int) -> list[ClassFunction]:
    return [None] + [f.power_map(k) for k in range(1, n + 1)]


def sym_powers(T: CharacterTable, f: ClassFunction, n: int) -> list[ClassFunction]:
    """[S^0 f, ..., S^n f] via h_n = (1/n) sum_{k=1}^n psi_k h_{n-k}."""
    psi = _power_sums(f, n)
    h = [trivial(T)]
    for j in range(1, n + 1):
        acc = zero(T)
        for k in range(1, j + 1):
            acc = acc + psi[k] * h[j - k]
        h.append(acc * Fraction(1, j))
    return h


def ext_powers(T: CharacterTable, f: ClassFunction, n: int) -> list[ClassFunction]:
    """[L^0 f, ..., L^n f] via e_n = (1/n) sum_{k=1}^n (-1)^(k-1) psi_k e_{n-k}."""
    psi = _power_sums(f, n)
    e = [trivial(T)]
    for j in range(1, n + 1):
        acc = zero(T)
        for k in range(1, j + 1):
            term = psi[k] * e[j - k]
            acc = acc + term if k % 2 else acc - term
        e.append(acc * Fraction(1, j))
    return e


def sym_power(T: CharacterTable, label, n: int) -> ClassFunction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sym_powers(T, character(T, label), n)[n]


def ext_power(T: CharacterTable, label, n: int) -> ClassFunction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return ext_powers(T, character(T, label), n)[n]


# -- eigenvalues ------------------------------------------------------------------------


def eigenvalue_multiset(T: CharacterTable, label, c: int) -> dict[int, int]:
    """Multiplicity of zeta_o^r for each r, o the order of class c (zero entries dropped).

    Returned as {r: multiplicity} with 0 <= r < o.
    """
    f = T.row(label) if not isinstance(label, ClassFunction) else label.values
    return _eigen(T, tuple(f), c)


def _eigen(T: CharacterTable, f: tuple, c: int) -> dict[int, int]:
    cl = T.classes.classes[c]
    o = cl.element_order
    m = T.conductor
    step = m // o
    vals = [f[cl.power(j)] for j in range(o)]
    out = {}
    for r in range(o):
        tot = Cyclotomic.zero(m)
        for j, v in enumerate(vals):
            if not v.is_zero():
                tot = tot + v * Cyclotomic.root(m, -r * j * step)
        tot = tot / o
        if not tot.is_rational():
            raise NonIntegralMultiplicity(f"class {cl.name}: irrational multiplicity")
        q = tot.rational_value()
        if q.denominator != 1 or q < 0:
            raise NonIntegralMultiplicity(f"class {cl.name}: multiplicity {q}")
        if q:
            out[r] = int(q)
    return out


# -- power series --------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSeries:
    coefficients: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def to_list(self) -> list[int]:
        return list(self.coefficients)


@dataclass(frozen=True)
class RationalGF:
    """numerator / denominator with integer coefficient lists (index = power of t)."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    @classmethod
    def from_factors(cls, numerator: dict[int, int], factor_degrees) -> RationalGF:
        """numerator {power: coeff} over prod_d (1 - t^d) for d in ``factor_degrees``."""
        top = max(numerator) if numerator else 0
        num = [0] * (top + 1)
        for k, c in numerator.items():
            num[k] += c
        den = np.zeros(1, dtype=object)
        den[0] = 1
        for d in factor_degrees:
            f = np.zeros(d + 1, dtype=object)
            f[0], f[d] = 1, -1
            den = np.convolve(den, f)
        return cls(tuple(int(x) for x in num), tuple(int(x) for x in den))


def expand_rational_gf(f: RationalGF, N: int) -> PowerSeries:
    """Exact power-series expansion to t^N by long division."""
    den = list(f.denominator)
    if not den or den[0] not in (1, -1):
        raise NotExpandable("denominator constant term must be +-1")
    c0 = den[0]
    num = list(f.numerator) + [0] * max(0, N + 1 - len(f.numerator))
    out = []
    for n in range(N + 1):
        s = num[n]
        for k in range(1, min(n, len(den) - 1) + 1):
            s -= den[k] * out[n - k]
        out.append(s * c0)  # c0 = +-1 is its own inverse
    return PowerSeries(tuple(out))


def molien_by_sympowers(T: CharacterTable, target, source, N: int = DEFAULT_N) -> PowerSeries:
    """c_n = <S^n(source), target>; the second, independent path."""
    src = character(T, source)
    tgt = character(T, target)
    hs = sym_powers(T, src, N)
    out = []
    for h in hs:
        ip = inner_product(T, h, tgt)
        if ip.denominator != 1:
            raise NonIntegralCoefficient(f"coefficient {ip}")
        out.append(int(ip))
    return PowerSeries(tuple(out))


def molien(T: CharacterTable, target, source, N: int = DEFAULT_N, cross_check: bool = True) -> PowerSeries:
    """sum_n mult(target, S^n source) t^n from the eigenvalue data of ``source``.

    For each class the series 1/det(1 - t rho(g)) is expanded in the group ring
    Z[x]/(x^o - 1) of the cyclic group generated by g; x then becomes zeta_o.
    """
    series = _molien_eigen(T, T.index(target), T.index(source), N)
    if cross_check:
        other = molien_by_sympowers(T, target, source, N)
        if other != series:
            raise NonIntegralCoefficient("Molien paths disagree")  # pragma: no cover
    return series


def _molien_eigen(T: CharacterTable, ti: int, si: int, N: int) -> PowerSeries:
    m = T.conductor
    tgt = T.values[ti]
    acc = [Cyclotomic.zero(m) for _ in range(N + 1)]
    for c, cl in enumerate(T.classes.classes):
        if tgt[c].is_zero():
            continue
        o = cl.element_order
        eig = eigenvalue_multiset(T, si, c)
        a = np.zeros((N + 1, o), dtype=object)
        a[0, 0] = 1
        for r, mult in eig.items():
            for _ in range(mult):
                # multiply by 1/(1 - x^r t): a_n += x^r a_{n-1}
                for n in range(1, N + 1):
                    a[n] = a[n] + np.roll(a[n - 1], r)
        w = tgt[c].conj() * cl.size
        step = m // o
        for n in range(N + 1):
            val = Cyclotomic.from_roots(m, [(r * step, int(a[n, r])) for r in range(o) if a[n, r]])
            acc[n] = acc[n] + val * w
    out = []
    for x in acc:
        x = x / T.order
        if not x.is_rational() or x.rational_value().denominator != 1:
            raise NonIntegralCoefficient(f"Molien coefficient {x!r}")
        out.append(int(x.rational_value()))
    return PowerSeries(tuple(out))


def dual_swap_map(T: CharacterTable) -> dict[str, str]:
    """Name -> name of the dual, for irreps that are not self-dual."""
    return {r.name: T.irreps[r.dual_index].name for r in T.irreps if T.irreps[r.dual_index].name != r.name}
