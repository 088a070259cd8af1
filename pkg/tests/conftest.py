import os

import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # CLI runs in tests must never touch a shared cache directory
    monkeypatch.setenv("EKRLAB_CACHE", str(tmp_path / "cache"))
    yield


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: int(x.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def pytest_report_header(config):
    from ekrlab import BACKEND

    return f"ekrlab kernel backend: {BACKEND} (EKRLAB_PURE_PYTHON={os.environ.get('EKRLAB_PURE_PYTHON', '')})"
