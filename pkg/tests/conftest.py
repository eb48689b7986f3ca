import functools

import pytest

from ncg import fixtures as fx


@functools.lru_cache(maxsize=None)
def algebra(name):
    return fx.load(name)


@pytest.fixture(scope="session")
def m2():
    return algebra("m2")


@pytest.fixture(scope="session")
def m2c2():
    return algebra("m2c2")


@pytest.fixture(scope="session")
def t2():
    return algebra("t2")


@pytest.fixture(scope="session")
def k2():
    return algebra("k2")


@pytest.fixture(scope="session")
def dual():
    return algebra("dual")


@pytest.fixture(scope="session")
def n3():
    return algebra("n3")


@pytest.fixture(params=fx.ALGEBRAS)
def any_algebra(request):
    return algebra(request.param)


ACCEPTANCE: dict = {}


def record(number: int, title: str, passed: bool, detail: str = ""):
    ACCEPTANCE[number] = (title, bool(passed), detail)
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
