import pytest

CRITERIA = {
    1: "kernel optimum >= (1-eps) * OPT",
    2: "kernel size bounds",
    3: "laminar robustness witness",
    4: "fig3 family tightness",
    5: "fig4 family tightness and swap-gain formula",
    6: "fig6 family oblivious local optimum",
    7: "approximation ratios vs brute force",
    8: "swap-count bound per phase",
    9: "streaming equivalence and space",
    10: "hypergraph kernel guarantee",
    11: "matroid axioms and oracle agreement",
}

_criterion_of: dict[str, int] = {}
_outcome: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test belongs to acceptance criterion n")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criterion_of[item.nodeid] = mark.args[0]


def pytest_runtest_logreport(report):
    crit = _criterion_of.get(report.nodeid)
    if crit is None:
        return
    if report.when == "call" or report.failed:
        _outcome.setdefault(crit, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcome:
        return
    terminalreporter.section("acceptance criteria")
    for crit, name in CRITERIA.items():
        runs = _outcome.get(crit)
        if runs is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {crit:2d} [{name}]: {status}")


@pytest.fixture
def run_cli(capsys):
    from mcvc.cli import main

    def run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return run
