import pytest

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")
    config.addinivalue_line("markers", "slow: long-running Monte-Carlo test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    entry = ACCEPTANCE.setdefault(
        props["criterion"], {"title": props["title"], "ok": True, "failed": []}
    )
    if report.outcome != "passed":
        entry["ok"] = False
        entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker is not None:
        number, title = marker.args
        request.node.user_properties.append(("criterion", number))
        request.node.user_properties.append(("title", title))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        entry = ACCEPTANCE[number]
        status = "PASS" if entry["ok"] else "FAIL"
        line = f"[{status}] {number}. {entry['title']}"
        if entry["failed"]:
            line += f"  (failed: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
