"""Collects acceptance outcomes and prints one verdict line per criterion."""

from collections import defaultdict

import pytest

CRITERIA = {
    1: "first worked example: eigenvalues, supplement matrix, first dual correction",
    2: "balanced triangle: real eigenvalues and reference eigenvectors",
    3: "triangle Laplacians: spectra {0, 3, 3}, Err_A = 1.6330, Err_B <= 1e-8",
    4: "balanced cycles: Laplacian residue vs closed form <= 1e-10, n up to 200",
    5: "balanced cycles: balance verified with Err <= 1e-8",
    6: "property suite: residuals, perturbation slopes, charpoly roots, ground solver",
    7: "reasonable iff balanced on 50 random schemes, perturbation flips, coset recovery",
}

_outcomes: dict[int, list[tuple[str, bool]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(k): test belongs to acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _outcomes[marker.args[0]].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        results = _outcomes.get(k)
        if not results:
            continue
        failed = [name for name, ok in results if not ok]
        verdict = "PASS" if not failed else "FAIL"
        line = f"criterion {k}: {verdict} ({len(results) - len(failed)}/{len(results)}) {CRITERIA[k]}"
        if failed:
            line += " | failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
