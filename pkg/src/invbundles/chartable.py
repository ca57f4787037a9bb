"""Exact character tables of SL(2,F_p) and PSL(2,F_p).

Values come from the classical closed forms for SL(2,q), q = p odd:

* trivial and Steinberg (dimension q);
* principal series W_j (dimension q+1), j = 1..(q-3)/2, from the character
  g -> zeta_{q-1}^j of the split torus;
* discrete series X_j (dimension q-1), j = 1..(q-1)/2, from eta -> zeta_{q+1}^j on
  the non-split torus;
* the two halves of the reducible principal series (dimension (q+1)/2) and of
  the reducible discrete series (dimension (q-1)/2), whose unipotent values
  involve the quadratic Gauss sum.

Every value is a ``Cyclotomic`` in Q(zeta_m) with m the exponent of the group.
The PSL table keeps the irreps on which -I acts trivially and fuses classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .cyclotomic import Cyclotomic, field as cyc_field, gauss_sum, lcm
from .errors import IndexOutOfRange, PrimeTooSmall
from .group import (
    NONSPLIT,
    PSL2,
    SL2,
    SPLIT,
    ClassData,
    GroupDescriptor,
    build_group,
    check_prime,
    class_data,
)

TRIVIAL, STEINBERG, PRINCIPAL, DISCRETE = "trivial", "steinberg", "principal", "discrete"
HALF_PRINCIPAL, HALF_DISCRETE = "half_principal", "half_discrete"


@dataclass(frozen=True)
class IrrepLabel:
    name: str
    dimension: int
    series: str
    param: int
    factors_through_psl: bool
    dual_index: int = -1
    aliases: tuple[str, ...] = ()

    @property
    def short(self) -> str:
        """Name without the leading V, as printed in tensor tables ("3*", "6'")."""
        return self.name[1:]


@dataclass(frozen=True)
class CharacterTable:
    group: GroupDescriptor
    classes: ClassData
    irreps: tuple[IrrepLabel, ...]
    values: tuple[tuple[Cyclotomic, ...], ...]
    conductor: int
    naming_rule: str = ""

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes.classes]

    @property
    def dims(self) -> list[int]:
        return [r.dimension for r in self.irreps]

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.irreps]

    def __len__(self) -> int:
        return len(self.irreps)

    def index(self, label) -> int:
        """Resolve an irrep label: index, "V3*", "3*", "V_6'^*", "V-", "V+*", ..."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < len(self.irreps):
                raise IndexOutOfRange(f"irrep index {label} outside 0..{len(self.irreps) - 1}")
            return int(label)
        if isinstance(label, IrrepLabel):
            label = label.name
        key = normalize_label(label)
        for i, r in enumerate(self.irreps):
            if normalize_label(r.name) == key or key in (normalize_label(a) for a in r.aliases):
                return i
        # a trailing * on an alias or plain name means the dual
        if key.endswith("*"):
            return self.irreps[self.index(key[:-1])].dual_index
        raise KeyError(f"no irrep named {label!r} in {self.group}")

    def row(self, label) -> tuple[Cyclotomic, ...]:
        return self.values[self.index(label)]

    def with_values(self, values) -> CharacterTable:
        return replace(self, values=tuple(tuple(r) for r in values))

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "p": self.group.p,
            "variant": self.group.variant,
            "order": self.order,
            "conductor": self.conductor,
            "naming_rule": self.naming_rule,
            "classes": [
                {
                    "name": c.name,
                    "representative": list(c.representative.entries),
                    "size": c.size,
                    "element_order": c.element_order,
                    "power_map": list(c.power_map),
                }
                for c in self.classes.classes
            ],
            "irreps": [
                {
                    "name": r.name,
                    "dimension": r.dimension,
                    "series": r.series,
                    "param": r.param,
                    "factors_through_psl": r.factors_through_psl,
                    "dual": self.irreps[r.dual_index].name,
                    "aliases": list(r.aliases),
                }
                for r in self.irreps
            ],
            "values": [[v.to_json() for v in row] for row in self.values],
        }

    def to_tsv(self) -> str:
        head = "irrep\t" + "\t".join(c.name for c in self.classes.classes)
        lines = [head]
        for r, row in zip(self.irreps, self.values):
            cells = []
            for v in row:
                z = v.to_complex()
                re, im = round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0
                cells.append(f"{re:g}" if im == 0 else f"{re:g}{im:+g}i")
            lines.append(r.name + "\t" + "\t".join(cells))
        return "\n".join(lines) + "\n"


def normalize_label(label: str) -> str:
    s = str(label).strip()
    for ch in ("_", "{", "}", "^", " ", "\\"):
        s = s.replace(ch, "")
    s = s.replace("′", "'").replace("₋", "-").replace("₊", "+")
    if s.startswith(("V", "v")):
        s = s[1:]
    s = s.replace("*'", "'*")
    return "V" + s


# -- construction -----------------------------------------------------------------------


def schur_constant(p: int) -> int:
    """Order of the Schur multiplier of PSL(2,p), a fixed constant for p >= 5."""
    check_prime(p)
    if p < 5:  # pragma: no cover - check_prime already rejects
        raise PrimeTooSmall(p)
    return 2


def exponent(p: int, variant: str) -> int:
    m = p * (p * p - 1) // 2
    return m if variant == SL2 else m // 2


@dataclass
class _RawIrrep:
    dimension: int
    series: str
    param: int
    psl: bool
    values: list = field(default_factory=list)


def _sl_raw(p: int) -> tuple[list[_RawIrrep], int]:
    cd = class_data(build_group(p, SL2))
    m = exponent(p, SL2)
    es, en = m // (p - 1), m // (p + 1)
    eps0 = 1 if p % 4 == 1 else -1
    G = gauss_sum(m, p)
    R = lambda x: Cyclotomic.rational(m, x)  # noqa: E731
    half = Fraction(1, 2)
    classes = cd.classes

    def unip_kind(c):
        sign, res = c.param
        return sign, res

    raws: list[_RawIrrep] = []
    raws.append(_RawIrrep(1, TRIVIAL, 0, True, [R(1)] * len(classes)))

    st = []
    for c in classes:
        if c.kind == "central":
            st.append(R(p))
        elif c.kind == "unipotent":
            st.append(R(0))
        elif c.kind == SPLIT:
            st.append(R(1))
        else:
            st.append(R(-1))
    raws.append(_RawIrrep(p, STEINBERG, 0, True, st))

    for j in range(1, (p - 3) // 2 + 1):
        sgn = -1 if j % 2 else 1
        vals = []
        for c in classes:
            if c.kind == "central":
                vals.append(R((p + 1) * (sgn if c.param == -1 else 1)))
            elif c.kind == "unipotent":
                vals.append(R(sgn if c.param[0] == -1 else 1))
            elif c.kind == SPLIT:
                k = c.param
                vals.append(Cyclotomic.from_roots(m, [(j * k * es, 1), (-j * k * es, 1)]))
            else:
                vals.append(R(0))
        raws.append(_RawIrrep(p + 1, PRINCIPAL, j, sgn == 1, vals))

    for j in range(1, (p - 1) // 2 + 1):
        sgn = -1 if j % 2 else 1
        vals = []
        for c in classes:
            if c.kind == "central":
                vals.append(R((p - 1) * (sgn if c.param == -1 else 1)))
            elif c.kind == "unipotent":
                vals.append(R(-(sgn if c.param[0] == -1 else 1)))
            elif c.kind == NONSPLIT:
                k = c.param
                vals.append(Cyclotomic.from_roots(m, [(j * k * en, -1), (-j * k * en, -1)]))
            else:
                vals.append(R(0))
        raws.append(_RawIrrep(p - 1, DISCRETE, j, sgn == 1, vals))

    # halves: param +1 / -1 is the sign in front of the Gauss sum on the class u
    for pm in (1, -1):
        vals = []
        for c in classes:
            if c.kind == "central":
                vals.append(R(Fraction(p + 1, 2) * (eps0 if c.param == -1 else 1)))
            elif c.kind == "unipotent":
                sign, res = unip_kind(c)
                v = (G * (pm * res) + 1) * half
                vals.append(v * eps0 if sign == -1 else v)
            elif c.kind == SPLIT:
                vals.append(R(-1 if c.param % 2 else 1))
            else:
                vals.append(R(0))
        raws.append(_RawIrrep((p + 1) // 2, HALF_PRINCIPAL, pm, eps0 == 1, vals))
    for pm in (1, -1):
        vals = []
        for c in classes:
            if c.kind == "central":
                vals.append(R(Fraction(p - 1, 2) * (-eps0 if c.param == -1 else 1)))
            elif c.kind == "unipotent":
                sign, res = unip_kind(c)
                v = (G * (pm * res) - 1) * half
                vals.append(v * (-eps0) if sign == -1 else v)
            elif c.kind == NONSPLIT:
                vals.append(R(1 if c.param % 2 else -1))
            else:
                vals.append(R(0))
        raws.append(_RawIrrep((p - 1) // 2, HALF_DISCRETE, pm, eps0 == -1, vals))
    return raws, m


_SERIES_ORDER = {TRIVIAL: 0, STEINBERG: 1, PRINCIPAL: 2, DISCRETE: 3, HALF_PRINCIPAL: 4, HALF_DISCRETE: 5}

NAMING_RULE = (
    "V<dim>; a prime marks an irrep not factoring through PSL when a PSL irrep of the "
    "same dimension exists; within a group of equal name the irrep whose values, rounded "
    "to 9 decimals and read in class order as (real, imag) pairs, are lexicographically "
    "smallest is unstarred and the other is starred; groups of three or more get #1, #2, ..."
)


def _numeric(vals) -> np.ndarray:
    return np.array([v.to_complex() for v in vals])


def _lex_key(vals) -> tuple:
    z = _numeric(vals)
    re = np.round(z.real, 9) + 0.0
    im = np.round(z.imag, 9) + 0.0
    return tuple(zip(re.tolist(), im.tolist()))


def _name_irreps(raws: list[_RawIrrep], p: int) -> list[tuple[str, _RawIrrep]]:
    psl_dims = {r.dimension for r in raws if r.psl}
    groups: dict[str, list[_RawIrrep]] = {}
    for r in raws:
        base = f"V{r.dimension}" + ("'" if (not r.psl and r.dimension in psl_dims) else "")
        groups.setdefault(base, []).append(r)
    named = []
    for base, members in groups.items():
        members.sort(key=lambda r: _lex_key(r.values))
        if len(members) == 1:
            named.append((base, members[0]))
        elif len(members) == 2:
            named.append((base, members[0]))
            named.append((base + "*", members[1]))
        else:
            for i, r in enumerate(members, 1):
                named.append((f"{base}#{i}", r))
    named.sort(key=lambda t: (t[1].dimension, not t[1].psl, _SERIES_ORDER[t[1].series], t[0]))
    return named


def _assemble(G: GroupDescriptor, cd: ClassData, named, values, m, p) -> CharacterTable:
    rows = [tuple(v) for v in values]
    # duals are matched numerically here; check_table_invariants confirms them exactly
    num = np.array([_numeric(r) for r in rows])
    irreps = []
    for i, (name, raw) in enumerate(named):
        dist = np.abs(num - np.conj(num[i])[None, :]).max(axis=1)
        dual = int(np.argmin(dist))
        irreps.append(IrrepLabel(name, raw.dimension, raw.series, raw.param, raw.psl, dual, ()))
    # V- and V+ are the unstarred members of the half-dimension pairs
    for i, r in enumerate(irreps):
        aliases = []
        if r.series == HALF_DISCRETE and not r.name.endswith("*"):
            aliases.append("V-")
        if r.series == HALF_PRINCIPAL and not r.name.endswith("*"):
            aliases.append("V+")
        if aliases:
            irreps[i] = replace(r, aliases=tuple(aliases))
    return CharacterTable(G, cd, tuple(irreps), tuple(rows), m, NAMING_RULE)


@lru_cache(maxsize=None)
def _sl_named(p: int):
    raws, m = _sl_raw(p)
    return _name_irreps(raws, p), m


@lru_cache(maxsize=None)
def _table(p: int, variant: str) -> CharacterTable:
    named, m = _sl_named(p)
    if variant == SL2:
        G = build_group(p, SL2)
        return _assemble(G, class_data(G), named, [r.values for _, r in named], m, p)
    G = build_group(p, PSL2)
    cd = class_data(G)
    mp = exponent(p, PSL2)
    keep = [(n, r) for n, r in named if r.psl]
    # names are recomputed on the PSL irreps alone (no primes are needed there)
    renamed = _name_irreps([r for _, r in keep], p)
    values = []
    for _, r in renamed:
        row = []
        for c in cd.classes:
            v = r.values[c.sl_classes[0]]
            terms = {}
            for k, coef in v.terms.items():
                if k % 2:
                    raise AssertionError("PSL character value outside Q(zeta_m/2)")
                terms[k // 2] = coef
            row.append(Cyclotomic(mp, terms, _canonical=True))
        values.append(row)
    return _assemble(G, cd, renamed, values, mp, p)


def character_table(G: GroupDescriptor) -> CharacterTable:
    return _table(G.p, G.variant)


# -- verification -----------------------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalityReport:
    group: str
    row_ok: bool
    column_ok: bool
    row_violations: tuple[tuple[int, int], ...]
    column_violations: tuple[tuple[int, int], ...]
    max_row_deviation: float
    max_column_deviation: float
    sum_dim_squares: int
    sum_dim_squares_ok: bool

    @property
    def ok(self) -> bool:
        return self.row_ok and self.column_ok and self.sum_dim_squares_ok

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "ok": self.ok,
            "row_ok": self.row_ok,
            "column_ok": self.column_ok,
            "row_violations": [list(x) for x in self.row_violations],
            "column_violations": [list(x) for x in self.column_violations],
            "max_row_deviation": self.max_row_deviation,
            "max_column_deviation": self.max_column_deviation,
            "sum_dim_squares": self.sum_dim_squares,
        }


def _entry_conductor(v: Cyclotomic, m: int) -> int:
    g = m
    for k in v.terms:
        g = np.gcd(g, k)
    return m // int(g)


class _SparseMatrix:
    """Integer CSR view of a matrix of Cyclotomic values, scaled by ``den``."""

    def __init__(self, values, m: int, den: int):
        self.n_rows = len(values)
        self.n_cols = len(values[0]) if values else 0
        ptr, exps, coefs = [0], [], []
        for row in values:
            for v in row:
                for k, c in sorted(v.terms.items()):
                    exps.append(k)
                    coefs.append(int(c * den))
                ptr.append(len(exps))
        self.ptr = np.array(ptr, dtype=np.int64)
        self.exps = np.array(exps, dtype=np.int64)
        self.coefs = np.array(coefs, dtype=np.int64)

    def select(self, rows, cols, scale_div: int):
        """Sub-matrix on ``rows`` x ``cols`` with exponents divided by ``scale_div``."""
        rows = np.asarray(list(rows), dtype=np.int64)
        cols = np.asarray(list(cols), dtype=np.int64)
        cells = (rows[:, None] * self.n_cols + cols[None, :]).ravel()
        starts, ends = self.ptr[cells], self.ptr[cells + 1]
        counts = ends - starts
        ptr = np.zeros(len(cells) + 1, dtype=np.int64)
        np.cumsum(counts, out=ptr[1:])
        idx = np.repeat(starts - ptr[:-1], counts) + np.arange(ptr[-1])
        return ptr, self.exps[idx] // scale_div, self.coefs[idx]


def _gram_blocks(values, weights, m, den, expected, chunk_cells=4_000_000):
    """Exact sum_t w_t f_a(t) conj(f_b(t)) for all row pairs (a, b) of ``values``.

    Positions t are grouped by the conductor of their column, so each block is
    accumulated in a small cyclotomic field, canonicalised there, and mapped into
    Q(zeta_m) (canonical bases embed into canonical bases).  Returns the pairs
    whose result differs from ``expected[a][b] * den^2`` together with the
    numeric size of each deviation.
    """
    n, npos = len(values), len(values[0])
    S = _SparseMatrix(values, m, den)
    cond = [lcm(*(_entry_conductor(values[a][t], m) for a in range(n))) for t in range(npos)]
    blocks: dict[int, list[int]] = {}
    for t, c in enumerate(cond):
        blocks.setdefault(c, []).append(t)
    # sparse accumulation of every block's canonical contribution
    keys, vals = [], []
    for M, cols in sorted(blocks.items()):
        F = cyc_field(M)
        basis = F.basis_exponents() * (m // M)
        ptr, ex, co = S.select(range(n), cols, m // M)
        w = np.array([weights[t] for t in cols], dtype=np.int64)
        step = max(1, chunk_cells // max(1, n * M))
        for a0 in range(0, n, step):
            a1 = min(n, a0 + step)
            pa, ea, ca = S.select(range(a0, a1), cols, m // M)
            acc = _kernels.gram_accumulate(pa, ea, ca, ptr, ex, co, w, a1 - a0, n, len(cols), M)
            red = F.reduce_dense(acc)
            ia, ib, ik = np.nonzero(red)
            keys.append(((ia + a0) * n + ib) * m + basis[ik])
            vals.append(red[ia, ib, ik])
    keys = np.concatenate(keys) if keys else np.zeros(0, dtype=np.int64)
    vals = np.concatenate(vals) if vals else np.zeros(0, dtype=np.int64)
    exp_keys = np.array([(a * n + a) * m for a in range(n) if expected[a]], dtype=np.int64)
    exp_vals = np.array([-expected[a] * den * den for a in range(n) if expected[a]], dtype=np.int64)
    keys = np.concatenate([keys, exp_keys])
    vals = np.concatenate([vals, exp_vals])
    uk, inv = np.unique(keys, return_inverse=True)
    tot = np.zeros(len(uk), dtype=np.int64)
    np.add.at(tot, inv, vals)
    nz = tot != 0
    uk, tot = uk[nz], tot[nz]
    pair = uk // m
    k = uk % m
    dev: dict[tuple[int, int], complex] = {}
    phase = np.exp(2j * np.pi * k / m) * tot / (den * den)
    for pr, z in zip(pair, phase):
        key = (int(pr // n), int(pr % n))
        dev[key] = dev.get(key, 0j) + complex(z)
    return dev


def verify_orthogonality(T: CharacterTable) -> OrthogonalityReport:
    """Check both orthogonality relations exactly."""
    values = T.values
    n = len(values)
    den = 1
    for row in values:
        for v in row:
            den = lcm(den, v.common_denominator())
    sizes = T.sizes
    order = T.order
    row_dev = _gram_blocks(values, sizes, T.conductor, den, [order] * n)
    cols = [tuple(values[i][c] for i in range(n)) for c in range(len(sizes))]
    col_expected = [Fraction(order, s) for s in sizes]
    if any(x.denominator != 1 for x in col_expected):  # pragma: no cover
        raise AssertionError("class size does not divide the group order")
    col_dev = _gram_blocks(cols, [1] * n, T.conductor, den, [int(x) for x in col_expected])
    sdim = sum(int(values[i][0].rational_value()) ** 2 if values[i][0].is_rational() else 0 for i in range(n))
    return OrthogonalityReport(
        str(T.group),
        not row_dev,
        not col_dev,
        tuple(sorted(row_dev)),
        tuple(sorted(col_dev)),
        max((abs(z) for z in row_dev.values()), default=0.0),
        max((abs(z) for z in col_dev.values()), default=0.0),
        sdim,
        sdim == order,
    )


def check_table_invariants(T: CharacterTable) -> list[str]:
    """Non-orthogonality sanity checks; returns a list of failures (empty if fine)."""
    problems = []
    cd = T.classes
    for i, (r, row) in enumerate(zip(T.irreps, T.values)):
        for c in range(len(cd)):
            if row[cd.inverse_class(c)] != row[c].conj():
                problems.append(f"{r.name}: value at inverse of class {c} is not the conjugate")
        if row[0] != r.dimension:
            problems.append(f"{r.name}: value at identity != dimension")
        if T.group.variant == SL2:
            z = row[1]
            if z != r.dimension and z != -r.dimension:
                problems.append(f"{r.name}: -I does not act by a scalar")
            if (z == r.dimension) != r.factors_through_psl:
                problems.append(f"{r.name}: factors_through_psl flag disagrees with chi(-I)")
        if T.values[r.dual_index] != tuple(v.conj() for v in row):
            problems.append(f"{r.name}: dual index wrong")
    return problems
