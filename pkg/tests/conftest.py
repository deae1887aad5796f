"""Prints one ACCEPT line per acceptance criterion at the end of the run."""

_verdicts: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    passed = _verdicts.get(number, (title, True))[1]
    if report.failed or (report.when == "call" and report.skipped):
        passed = False
    _verdicts[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_verdicts):
        title, passed = _verdicts[number]
        terminalreporter.write_line(f"ACCEPT {number} {title}: {'PASS' if passed else 'FAIL'}")
