import time

import pytest

from twistcat.verify import VerificationPolicy

SESSION_START = time.perf_counter()
CRITERIA: dict = {}          # number -> [title, outcomes]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_collection_modifyitems(session, config, items):
    # acceptance runs last so criterion 10 can time the whole session
    items.sort(key=lambda it: it.module.__name__ == "test_acceptance")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = CRITERIA.setdefault(n, [title, []])
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            state = "XFAIL (recorded)" if rep.skipped else "XPASS"
        else:
            state = rep.outcome.upper()
        entry[1].append((item.name, state, call.duration))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, parts = CRITERIA[n]
        states = {s for _, s, _ in parts}
        if states == {"PASSED"}:
            verdict = "PASS"
        elif states <= {"PASSED", "XFAIL (recorded)"}:
            verdict = "FAIL (recorded in ledger)"
        else:
            verdict = "FAIL"
        tr.write_line(f"criterion {n:>2} {verdict}: {title}")
        for name, state, dur in parts:
            tr.write_line(f"    {name}: {state} ({dur:.2f} s)")


@pytest.fixture(scope="session")
def policy():
    return VerificationPolicy()


@pytest.fixture(scope="session")
def exhaustive():
    return VerificationPolicy(mode="exhaustive")


@pytest.fixture(scope="session")
def multitwist():
    from twistcat.fixtures import build_fixture
    return build_fixture("multitwist")
