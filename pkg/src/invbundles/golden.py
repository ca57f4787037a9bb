"""Golden comparison of computed SL(2,7) tables against the transcribed fixtures.

Each fixture is compared twice: with labels as printed, and with every dual pair
swapped at once (the only relabelling that is an automorphism of the
representation ring).  The convention with fewer differing cells is reported;
ties go to the printed labels.  A fixture passes only if that convention leaves
no differences.

Diagnostics that do not affect the verdict are attached to each diff: the
difference count under every partial swap of dual pairs, and internal
consistency checks of the fixture itself (symmetry of the tensor grid, dimension
of each cell, dimension of each symmetric power).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from math import comb
from pathlib import Path

from .chartable import CharacterTable, character_table, normalize_label
from .errors import FixtureMissing
from .group import SL2, build_group
from .repring import (
    RationalGF,
    decompose,
    expand_rational_gf,
    format_multiset,
    molien,
    parse_multiset,
    sym_power,
    tensor,
)

FIXTURES = {
    "tensor_grid": "tensor_grid_sl2_7.tsv",
    "sym_powers": "sym_powers_sl2_7.tsv",
    "generating_functions": "generating_functions_sl2_7.tsv",
}


@dataclass
class CellDiff:
    key: str
    expected: str
    computed: str

    def to_json(self) -> dict:
        return {"cell": self.key, "expected": self.expected, "computed": self.computed}


@dataclass
class GoldenDiff:
    fixture: str
    block: str
    cells: int
    convention: str
    differences: list[CellDiff]
    alternative: dict[str, int]
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.differences

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture,
            "block": self.block,
            "cells": self.cells,
            "convention": self.convention,
            "dual_swap_applied": self.convention == "dual-swapped",
            "passed": self.passed,
            "mismatch_counts": self.alternative,
            "differences": [d.to_json() for d in self.differences],
            "diagnostics": self.diagnostics,
        }

    def summary(self) -> str:
        head = f"{self.block}: {'PASS' if self.passed else 'FAIL'} ({self.convention}, " \
               f"{len(self.differences)}/{self.cells} cells differ)"
        lines = [head]
        for d in self.differences:
            lines.append(f"  {d.key}: expected {d.expected}, computed {d.computed}")
        return "\n".join(lines)


# -- fixture loading ---------------------------------------------------------------------


def _fixture_path(name: str, directory: Path | None) -> Path:
    if directory is not None:
        path = Path(directory) / FIXTURES[name]
    else:
        path = Path(str(resources.files("invbundles") / "fixtures" / FIXTURES[name]))
    if not path.is_file():
        raise FixtureMissing(str(path))
    return path


def load_fixture(name: str, directory: Path | None = None) -> list[dict[str, str]]:
    path = _fixture_path(name, directory)
    with open(path, newline="", encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#") and ln.strip()]
    return list(csv.DictReader(lines, delimiter="\t"))


# -- label gauges --------------------------------------------------------------------------


def _dual_pairs(T: CharacterTable) -> list[tuple[str, str]]:
    pairs = []
    for i, r in enumerate(T.irreps):
        j = r.dual_index
        if j > i:
            pairs.append((r.name, T.irreps[j].name))
    return pairs


def _swap(pairs) -> dict[str, str]:
    m = {}
    for a, b in pairs:
        m[a], m[b] = b, a
    return m


def _relabel(d: dict[str, int], m: dict[str, str]) -> dict[str, int]:
    out: dict[str, int] = {}
    for k, v in d.items():
        key = m.get(k, k)
        out[key] = out.get(key, 0) + v
    return out


def _canon(T: CharacterTable, d: dict[str, int]) -> dict[str, int]:
    order = {n: i for i, n in enumerate(T.names)}
    return {k: d[k] for k in sorted(d, key=lambda k: order[k]) if d[k]}


# -- cached computed values (labels are table names) -----------------------------------------


@lru_cache(maxsize=None)
def _tensor_dec(a: str, b: str) -> tuple:
    T = sl27_table()
    return tuple(decompose(T, tensor(T, a, b)).as_dict().items())


@lru_cache(maxsize=None)
def _sym_dec(src: str, n: int) -> tuple:
    T = sl27_table()
    return tuple(decompose(T, sym_power(T, src, n)).as_dict().items())


@lru_cache(maxsize=None)
def _series(tgt: str, src: str, N: int) -> tuple:
    return tuple(molien(sl27_table(), tgt, src, N).to_list())


# -- the three comparisons -----------------------------------------------------------------


def _grid_cells(T, rows, m):
    """Yield (key, expected multiset, computed multiset) under relabelling m."""
    cols = [c for c in rows[0] if c not in ("table", "row", "printed_row")]
    for row in rows:
        a = normalize_label(row["row"])
        for c in cols:
            b = normalize_label(c)
            exp = _relabel(parse_multiset(row[c]), m)
            got = dict(_tensor_dec(m.get(a, a), m.get(b, b)))
            yield f"table {row['table']} {row['printed_row']} x {c}", exp, got


def _symp_cells(T, rows, m):
    for row in rows:
        src = normalize_label(row["source"])
        n = int(row["n"])
        exp = _relabel(parse_multiset(row["decomposition"]), m)
        got = dict(_sym_dec(m.get(src, src), n))
        yield f"table {row['table']} S^{n}({row['source']})", exp, got


def _series_cells(T, rows, m, N):
    for row in rows:
        tgt, src = normalize_label(row["target"]), normalize_label(row["source"])
        num = {}
        for part in row["numerator"].split(","):
            k, c = part.split(":")
            num[int(k)] = num.get(int(k), 0) + int(c)
        den = [int(x) for x in row["denominator_factors"].split(",")]
        exp = expand_rational_gf(RationalGF.from_factors(num, den), N).to_list()
        got = list(_series(m.get(tgt, tgt), m.get(src, src), N))
        yield f"{row['family']}_{row['target']} (source {row['source']})", exp, got


def _compare(cells, fmt) -> list[CellDiff]:
    out = []
    for key, exp, got in cells:
        if exp != got:
            out.append(CellDiff(key, fmt(exp), fmt(got)))
    return out


def _series_fmt(s: list[int]) -> str:
    return ",".join(map(str, s))


def _evaluate(T, block, rows, gen, fmt, fixture) -> GoldenDiff:
    pairs = _dual_pairs(T)
    results = {}
    for r in range(len(pairs) + 1):
        for sub in combinations(pairs, r):
            results[sub] = _compare(gen(T, rows, _swap(sub)), fmt)
    printed, swapped = results[()], results[tuple(pairs)]
    if len(swapped) < len(printed):
        convention, diffs = "dual-swapped", swapped
    else:
        convention, diffs = "printed", printed
    partial = {
        ("none" if not sub else "+".join(a for a, _ in sub)): len(d) for sub, d in results.items()
    }
    best = min(partial.items(), key=lambda kv: kv[1])
    cells = sum(1 for _ in gen(T, rows, {}))
    diag = {"partial_swaps": partial, "best_partial_swap": {"pairs": best[0], "mismatches": best[1]}}
    return GoldenDiff(fixture, block, cells, convention, diffs,
                      {"printed": len(printed), "dual-swapped": len(swapped)}, diag)


def _grid_self_check(T: CharacterTable, rows) -> dict:
    dims = dict(zip(T.names, T.dims))
    cols = [c for c in rows[0] if c not in ("table", "row", "printed_row")]
    cell = {}
    bad_dims = []
    for row in rows:
        a = normalize_label(row["row"])
        for c in cols:
            b = normalize_label(c)
            d = parse_multiset(row[c])
            cell[(a, b)] = d
            total = sum(dims[k] * v for k, v in d.items())
            if total != dims[a] * dims[b]:
                bad_dims.append(f"{row['printed_row']} x {c}: dimension {total}, expected {dims[a] * dims[b]}")
    asym = []
    for (a, b), d in cell.items():
        if (b, a) in cell and a < b and cell[(b, a)] != d:
            asym.append(f"{a} x {b} = {format_multiset(d)} but {b} x {a} = {format_multiset(cell[(b, a)])}")
    return {"dimension_errors": bad_dims, "asymmetric_cells": sorted(asym)}


def _symp_self_check(T: CharacterTable, rows) -> dict:
    dims = dict(zip(T.names, T.dims))
    bad = []
    for row in rows:
        src = normalize_label(row["source"])
        n = int(row["n"])
        want = comb(dims[src] + n - 1, n)
        got = sum(dims[k] * v for k, v in parse_multiset(row["decomposition"]).items())
        if got != want:
            bad.append(f"S^{n}({row['source']}): dimension {got}, expected {want}")
    return {"dimension_errors": bad}


@lru_cache(maxsize=None)
def sl27_table() -> CharacterTable:
    return character_table(build_group(7, SL2))


def compare_tensor_grid(directory: Path | None = None) -> GoldenDiff:
    T = sl27_table()
    rows = load_fixture("tensor_grid", directory)
    diff = _evaluate(T, "tensor grid", rows, _grid_cells,
                     lambda d: format_multiset(_canon(T, d)), FIXTURES["tensor_grid"])
    diff.diagnostics["fixture_consistency"] = _grid_self_check(T, rows)
    return diff


def compare_sym_powers(directory: Path | None = None) -> list[GoldenDiff]:
    T = sl27_table()
    rows = load_fixture("sym_powers", directory)
    out = []
    for table in sorted({r["table"] for r in rows}):
        sub = [r for r in rows if r["table"] == table]
        d = _evaluate(T, f"symmetric powers table {table}", sub, _symp_cells,
                      lambda d: format_multiset(_canon(T, d)), FIXTURES["sym_powers"])
        d.diagnostics["fixture_consistency"] = _symp_self_check(T, sub)
        out.append(d)
    return out


def compare_series(N: int = 40, directory: Path | None = None) -> list[GoldenDiff]:
    T = sl27_table()
    rows = load_fixture("generating_functions", directory)
    out = []
    for fam in ("Q", "P"):
        sub = [r for r in rows if r["family"] == fam]
        gen = lambda T_, rows_, m: _series_cells(T_, rows_, m, N)  # noqa: E731
        out.append(_evaluate(T, f"{fam}-series to t^{N}", sub, gen, _series_fmt,
                             FIXTURES["generating_functions"]))
    return out


def reproduce_appendices(N: int = 40, directory: Path | None = None) -> list[GoldenDiff]:
    for name in FIXTURES:
        _fixture_path(name, directory)
    return [compare_tensor_grid(directory), *compare_sym_powers(directory), *compare_series(N, directory)]
