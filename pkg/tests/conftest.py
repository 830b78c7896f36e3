"""Per-criterion pass/fail lines for the acceptance suite.

Tests marked ``@pytest.mark.criterion(n, "title")`` are grouped by ``n``;
a criterion passes only if all of its tests pass.  Measured values
recorded with ``record_property("measured", ...)`` are echoed next to it.
"""

_results = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", (mark.args[0], mark.args[1])))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    entry = _results.setdefault(number, {"title": title, "ok": True, "ran": False, "measured": []})
    if report.failed:
        entry["ok"] = False
    if report.when == "call":
        entry["ran"] = entry["ran"] or not report.skipped
        entry["ok"] = entry["ok"] and not report.skipped
        entry["measured"] += [v for k, v in report.user_properties if k == "measured"]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        r = _results[number]
        status = "PASS" if r["ok"] and r["ran"] else "FAIL"
        detail = f" ({'; '.join(r['measured'])})" if r["measured"] else ""
        terminalreporter.write_line(f"criterion {number} {status}: {r['title']}{detail}")
