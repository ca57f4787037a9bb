import pytest


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(test_acceptance.RESULTS, key=lambda k: int(k[2:])):
        ok, title, detail = test_acceptance.RESULTS[key]
        line = f"{key} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("INVBUNDLES_OUTPUT_DIR", str(tmp_path))
    return tmp_path
