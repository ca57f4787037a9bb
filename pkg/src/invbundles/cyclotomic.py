"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored sparsely in a canonical basis of roots of unity.  Write
m as a product of prime powers Q = q^e.  The basis is the set of zeta_m^k with
k = sum_Q r_Q * (m/Q) mod m and 0 <= r_Q < phi(Q); it is the tensor product of
the power bases of the factors Q(zeta_Q).  A root outside the basis is rewritten
one prime-power factor at a time with

    zeta_Q^(phi(Q) + j) = -sum_{i=0}^{q-2} zeta_Q^(j + i*Q/q),   0 <= j < Q/q.

The same rule, applied along array axes, gives ``reduce_dense`` which
canonicalises many dense exponent vectors at once.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np


def factorize(m: int) -> list[tuple[int, int]]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            out.append((f, e))
        f += 1
    if m > 1:
        out.append((m, 1))
    return out


def euler_phi(m: int) -> int:
    r = m
    for q, _ in factorize(m):
        r = r // q * (q - 1)
    return r


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


class CyclotomicField:
    """Basis bookkeeping for Q(zeta_m); obtain instances through ``field(m)``."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("conductor must be positive")
        self.m = m
        self.factors = []  # (q, Q, phi(Q), (m/Q) mod m, inverse of m/Q mod Q)
        for q, e in factorize(m):
            Q = q ** e
            cof = m // Q
            self.factors.append((q, Q, Q // q * (q - 1), cof, pow(cof, -1, Q)))
        self.degree = euler_phi(m)
        self._cache: dict[int, tuple[tuple[int, int], ...]] = {}

    def digits(self, k: int) -> tuple[int, ...]:
        return tuple((k * inv) % Q for (_, Q, _, _, inv) in self.factors)

    def from_digits(self, digits) -> int:
        return sum(r * cof for r, (_, _, _, cof, _) in zip(digits, self.factors)) % self.m

    def reduce_root(self, k: int) -> tuple[tuple[int, int], ...]:
        """zeta_m^k as a signed sum of basis roots: ((exponent, +-1), ...)."""
        k %= self.m
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        partial = [(0, 1)]
        for (q, Q, ph, cof, inv) in self.factors:
            r = (k * inv) % Q
            if r < ph:
                opts = [(r * cof, 1)]
            else:
                j, h = r - ph, Q // q
                opts = [((j + i * h) * cof, -1) for i in range(q - 1)]
            partial = [(e1 + e2, s1 * s2) for (e1, s1) in partial for (e2, s2) in opts]
        out = tuple(sorted(((e % self.m), s) for e, s in partial))
        self._cache[k] = out
        return out

    def is_basis(self, k: int) -> bool:
        return all((k * inv) % Q < ph for (_, Q, ph, _, inv) in self.factors)

    # -- dense, vectorised canonicalisation ---------------------------------------------

    @property
    def digit_shape(self) -> tuple[int, ...]:
        return tuple(Q for (_, Q, _, _, _) in self.factors)

    @property
    def basis_shape(self) -> tuple[int, ...]:
        return tuple(ph for (_, _, ph, _, _) in self.factors)

    @lru_cache(maxsize=None)
    def _perm(self) -> np.ndarray:
        grids = np.indices(self.digit_shape).reshape(len(self.factors), -1) if self.factors else np.zeros((0, 1), dtype=np.int64)
        k = np.zeros(grids.shape[1], dtype=np.int64)
        for row, (_, _, _, cof, _) in zip(grids, self.factors):
            k = (k + row * cof) % self.m
        return k

    @lru_cache(maxsize=None)
    def basis_exponents(self) -> np.ndarray:
        """Exponent of each entry of a ``reduce_dense`` output, in C order."""
        if not self.factors:
            return np.zeros(1, dtype=np.int64)
        grids = np.indices(self.basis_shape).reshape(len(self.factors), -1)
        k = np.zeros(grids.shape[1], dtype=np.int64)
        for row, (_, _, _, cof, _) in zip(grids, self.factors):
            k = (k + row * cof) % self.m
        return k

    def reduce_dense(self, v: np.ndarray) -> np.ndarray:
        """Canonicalise dense vectors along the last axis (length m).

        Returns an array of shape ``v.shape[:-1] + (phi(m),)`` whose entries are
        coefficients of the basis roots listed by ``basis_exponents``.
        """
        lead = v.shape[:-1]
        t = v[..., self._perm()].reshape(lead + self.digit_shape)
        nlead = len(lead)
        for ax, (q, Q, ph, _, _) in enumerate(self.factors):
            axis = nlead + ax
            t = np.moveaxis(t, axis, -1)
            h = Q // q
            hi = t[..., ph:]
            lo = t[..., :ph].copy()
            for i in range(q - 1):
                lo[..., i * h:(i + 1) * h] -= hi
            t = np.moveaxis(lo, -1, axis)
        return t.reshape(lead + (self.degree,))


@lru_cache(maxsize=None)
def field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


def _frac(x):
    """Exact rational; plain ints are kept as ints because they are much faster."""
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact cyclotomic arithmetic")
    x = x if isinstance(x, Fraction) else Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Cyclotomic:
    """An element of Q(zeta_m) in canonical sparse form.

    ``terms`` maps basis exponents to nonzero rationals.  Instances are immutable
    and hashable; equality is exact.
    """

    __slots__ = ("m", "terms", "_hash", "_cx")

    def __init__(self, m: int, terms=None, *, _canonical: bool = False):
        self.m = int(m)
        if _canonical:
            self.terms = terms
        else:
            self.terms = _canonicalise(self.m, terms or {})
        self._hash = None
        self._cx = None

    # constructors
    @classmethod
    def rational(cls, m: int, x) -> Cyclotomic:
        x = _frac(x)
        return cls(m, {0: x} if x else {}, _canonical=True)

    @classmethod
    def root(cls, m: int, k: int, coeff=1) -> Cyclotomic:
        return cls(m, {k % m: _frac(coeff)})

    @classmethod
    def zero(cls, m: int) -> Cyclotomic:
        return cls(m, {}, _canonical=True)

    @classmethod
    def from_roots(cls, m: int, pairs) -> Cyclotomic:
        """Sum of coeff * zeta_m^k over ``(k, coeff)`` pairs."""
        acc: dict = {}
        for k, c in pairs:
            k %= m
            acc[k] = acc.get(k, 0) + _frac(c)
        return cls(m, acc)

    # arithmetic
    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError(f"conductor mismatch {self.m} vs {other.m}")
            return other
        return Cyclotomic.rational(self.m, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _frac(v)
            else:
                out.pop(k, None)
        return Cyclotomic(self.m, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, {k: -c for k, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            x = _frac(other)
            if not x:
                return Cyclotomic.zero(self.m)
            return Cyclotomic(self.m, {k: _frac(c * x) for k, c in self.terms.items()}, _canonical=True)
        other = self._coerce(other)
        acc: dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = (k1 + k2) % self.m
                acc[k] = acc.get(k, 0) + c1 * c2
        return Cyclotomic(self.m, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise NotImplementedError("division by an irrational cyclotomic")
            other = other.rational_value()
        return self * (Fraction(1) / _frac(other))

    def conj(self) -> Cyclotomic:
        return Cyclotomic(self.m, {(-k) % self.m: c for k, c in self.terms.items()})

    def galois(self, j: int) -> Cyclotomic:
        """Image under zeta -> zeta^j, gcd(j, m) = 1."""
        if gcd(j, self.m) != 1:
            raise ValueError("not a Galois automorphism")
        return Cyclotomic(self.m, {(j * k) % self.m: c for k, c in self.terms.items()})

    def embed(self, m2: int) -> Cyclotomic:
        if m2 % self.m:
            raise ValueError(f"{self.m} does not divide {m2}")
        s = m2 // self.m
        # canonical bases embed into canonical bases, see module docstring
        return Cyclotomic(m2, {k * s: c for k, c in self.terms.items()}, _canonical=True)

    # predicates and views
    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return Fraction(self.terms.get(0, 0))

    def to_complex(self) -> complex:
        if self._cx is None:
            if len(self.terms) > 8:
                k = np.fromiter(self.terms.keys(), dtype=np.float64)
                c = np.array([float(x) for x in self.terms.values()])
                self._cx = complex(np.sum(c * np.exp(2j * np.pi * k / self.m)))
            else:
                self._cx = sum(
                    (float(c) * cmath.exp(2j * cmath.pi * k / self.m) for k, c in self.terms.items()),
                    0j,
                )
        return self._cx

    def items(self):
        return sorted(self.terms.items())

    def common_denominator(self) -> int:
        d = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        return d

    def to_json(self) -> dict:
        return {
            "conductor": self.m,
            "terms": {str(k): str(c) for k, c in self.items()},
            "approx": _approx(self.to_complex()),
        }

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.m == other.m and self.terms == other.terms
        try:
            return self.is_rational() and self.rational_value() == _frac(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, tuple(self.items())))
        return self._hash

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.m}, {self.rational_value()})"
        body = " + ".join(f"{c}*z^{k}" for k, c in self.items())
        return f"Cyclotomic({self.m}, {body})"


def _approx(z: complex) -> list[float]:
    return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]


def _canonicalise(m: int, terms: dict) -> dict:
    F = field(m)
    acc: dict = {}
    for k, c in terms.items():
        c = _frac(c)
        if not c:
            continue
        for e, s in F.reduce_root(k):
            acc[e] = acc.get(e, 0) + (c if s == 1 else -c)
    return {k: _frac(c) for k, c in acc.items() if c}


def gauss_sum(m: int, p: int) -> Cyclotomic:
    """sum_a (a/p) zeta_p^a embedded in Q(zeta_m); it squares to (-1)^((p-1)/2) p."""
    if m % p:
        raise ValueError("p must divide the conductor")
    s = m // p
    pairs = []
    for a in range(1, p):
        leg = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
        pairs.append((a * s, leg))
    return Cyclotomic.from_roots(m, pairs)
