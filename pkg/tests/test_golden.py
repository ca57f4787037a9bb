import shutil

import pytest

from invbundles.errors import FixtureMissing
from invbundles.golden import (
    FIXTURES,
    _fixture_path,
    compare_series,
    compare_sym_powers,
    compare_tensor_grid,
    load_fixture,
    reproduce_appendices,
)


@pytest.fixture
def fixture_dir(tmp_path):
    for name in FIXTURES:
        shutil.copy(_fixture_path(name, None), tmp_path / FIXTURES[name])
    return tmp_path


def _rewrite(path, old_line_start, old, new):
    lines = path.read_text(encoding="utf-8").splitlines(keepends=True)
    for i, ln in enumerate(lines):
        if ln.startswith(old_line_start):
            assert old in ln
            lines[i] = ln.replace(old, new, 1)
            break
    else:
        raise AssertionError(f"no line starting with {old_line_start!r}")
    path.write_text("".join(lines), encoding="utf-8")


def test_fixtures_load_with_headers():
    assert len(load_fixture("sym_powers")) == 15
    assert len(load_fixture("generating_functions")) == 17
    assert len(load_fixture("tensor_grid")) == 10


def test_table_one_matches():
    table1 = compare_sym_powers()[0]
    assert table1.passed and table1.cells == 10


def test_known_differences_are_reported_verbatim():
    table2 = compare_sym_powers()[1]
    assert [d.key for d in table2.differences] == ["table 2 S^2(4*)"]
    q, pser = compare_series(40)
    assert [d.key for d in q.differences] == ["Q_3 (source 3)"]
    assert sorted(d.key for d in pser.differences) == ["P_4 (source 4)", "P_4* (source 4)"]


def test_grid_diagnostics():
    grid = compare_tensor_grid()
    cons = grid.diagnostics["fixture_consistency"]
    assert grid.alternative == {"printed": 39, "dual-swapped": 39}
    assert any("63" in e for e in cons["dimension_errors"])
    assert cons["asymmetric_cells"]


def test_corrupted_cell_is_the_only_new_difference(fixture_dir):
    _rewrite(fixture_dir / FIXTURES["sym_powers"], "1\t3*\t3\t", "3+7", "3+8")
    table1 = compare_sym_powers(fixture_dir)[0]
    assert [(d.key, d.expected, d.computed) for d in table1.differences] == [
        ("table 1 S^3(3*)", "3+8", "3+7")]


def test_corrupted_grid_cell_is_added(fixture_dir):
    before = {d.key for d in compare_tensor_grid().differences}
    _rewrite(fixture_dir / FIXTURES["tensor_grid"], "1\t3\t3\t", "3*+6", "3+6")
    after = {d.key for d in compare_tensor_grid(fixture_dir).differences}
    assert after - before == {"table 1 3 x 3"} and before <= after


def test_corrupted_series(fixture_dir):
    _rewrite(fixture_dir / FIXTURES["generating_functions"], "Q\t1\t3\t", "0:1,21:1", "0:1,21:2")
    q = compare_series(40, fixture_dir)[0]
    keys = [d.key for d in q.differences]
    assert "Q_1 (source 3)" in keys and len(keys) == 2


def test_missing_fixture(tmp_path):
    with pytest.raises(FixtureMissing):
        reproduce_appendices(directory=tmp_path)
