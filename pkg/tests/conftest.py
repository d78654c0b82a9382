import pytest

from chatelet_manin.surface import validate

RESULTS = {}


def record(criterion, ok, detail=""):
    line = "criterion %s: %s  %s" % (criterion, "PASS" if ok else "FAIL", detail)
    RESULTS[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS, key=lambda k: (len(str(k)), str(k))):
            terminalreporter.write_line(RESULTS[key])


@pytest.fixture(scope="session")
def showcase():
    return validate(1, 1, 1, -1)
