import pytest

from lgoldbach.arith import SignFunction, build_parity_table


@pytest.fixture(scope="session")
def table():
    return build_parity_table(200_000)


@pytest.fixture(scope="session")
def lam(table):
    return SignFunction.liouville(table)


def omega_trial(n: int) -> int:
    """Omega(n) by naive trial division; shared oracle for the sieve tests."""
    count, d = 0, 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    return count + (n > 1)


# --- acceptance reporting ---------------------------------------------------
# Tests marked @pytest.mark.criterion(k, "text") get one PASS/FAIL line each
# in the terminal summary.

_CRITERIA: dict[str, tuple[int, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, text): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    k, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA[item.nodeid] = (k, text, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k, text, status in sorted(_CRITERIA.values()):
        terminalreporter.write_line(f"[{status}] criterion {k:>2}: {text}")
