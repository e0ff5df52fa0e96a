from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        ACCEPTANCE[report.nodeid.split("::")[-1]] = (report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, secs) in sorted(ACCEPTANCE.items(), key=lambda kv: int(kv[0].split("_")[2])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({secs:.1f} s)")
