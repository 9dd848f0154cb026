import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    The test calls ``criterion(label)`` once; the outcome is taken from the
    test result and reported in the terminal summary.
    """
    state = {}

    def _set(label):
        state["label"] = label

    yield _set
    rep = getattr(request.node, "rep_call", None)
    if "label" in state and rep is not None:
        status = "PASS" if rep.passed else "FAIL"
        line = f"{status}  {state['label']}"
        if not rep.passed and rep.longrepr is not None:
            msg = getattr(rep.longrepr, "reprcrash", None)
            if msg is not None:
                line += f"  [{msg.message.splitlines()[0]}]"
        ACCEPTANCE_LINES.append(line)
        print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
