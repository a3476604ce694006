import pytest

_labels = {}
_status = {}


@pytest.fixture
def criterion(request):
    """Tag the running test with an acceptance-criterion label for the summary."""
    def record(label):
        _labels[request.node.nodeid] = label
    return record


def pytest_runtest_logreport(report):
    if report.nodeid in _labels and (report.when == "call" or report.failed):
        if _status.get(report.nodeid) != "FAIL":
            _status[report.nodeid] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _labels:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, label in _labels.items():
        terminalreporter.write_line(f"[{_status.get(nodeid, 'FAIL')}] {label}")
