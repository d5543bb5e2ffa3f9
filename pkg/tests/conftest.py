import json
from importlib import resources

import pytest

import moesearch as me

_criterion_lines = []


@pytest.fixture(scope="session")
def criterion_report():
    """Collect acceptance verdict lines; echoed in the terminal summary."""

    def _report(number, ok, detail):
        line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        _criterion_lines.append(line)
        return line

    return _report


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criterion_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def basis10():
    return me.build_basis(2, (1.0, 1.0), 10)


@pytest.fixture(scope="session")
def builtin_specs():
    root = resources.files("moesearch") / "maps"
    return {p.name[:-5]: json.loads(p.read_text())
            for p in root.iterdir() if p.name.endswith(".json")}


@pytest.fixture(scope="session")
def builtin_maps(basis10, builtin_specs):
    return {name: me.infomap_from_mixture(spec, basis10)
            for name, spec in builtin_specs.items()}


@pytest.fixture(scope="session")
def model300():
    return me.differential_drive(n_steps=300)
