from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "acceptance":
            n, label = value
            _acceptance[n] = (label, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        label, outcome = _acceptance[n]
        terminalreporter.write_line(f"[{'PASS' if outcome == 'passed' else 'FAIL'}] {n:2d} {label}")
