import pytest

from paulibks.verify import system_and_census

ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_addoption(parser):
    parser.addoption("--long-running", action="store_true", default=False,
                     help="run m=5 counts and the m=4 automorphism stretch target")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-running"):
        return
    skip = pytest.mark.skip(reason="needs --long-running")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{status:4}  criterion {crit}: {detail}")


@pytest.fixture
def record():
    def _record(crit: str, ok: bool, detail: str, status: str | None = None):
        ACCEPTANCE.append((crit, status or ("PASS" if ok else "FAIL"), detail))
        return ok
    return _record


@pytest.fixture(scope="session")
def square():
    return system_and_census("mermin-square")


@pytest.fixture(scope="session")
def pentagram():
    return system_and_census("mermin-pentagram")
