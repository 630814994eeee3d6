import warnings

import pytest

from morse_squeezed import ModelParams, build_xd_pd
from morse_squeezed.errors import RegimeWarning


def pytest_configure(config):
    config.acceptance_results = []


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Append ``(criterion, passed, detail)``; printed in the terminal summary."""
    return request.config.acceptance_results


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "acceptance_results", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture(scope="session")
def params():
    return ModelParams(10)


@pytest.fixture(scope="session")
def xp(params):
    return build_xd_pd(params)


@pytest.fixture(autouse=True)
def _quiet_regime_warnings():
    # Large gamma/alpha grids deliberately push weight into the top level.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        yield
