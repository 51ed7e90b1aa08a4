import numpy as np
import pytest

from chmetf import block_lift, catalog, fourier


@pytest.fixture(scope="session")
def tao6():
    return catalog("tao6").matrix


@pytest.fixture(scope="session")
def q9():
    return catalog("q9").matrix


@pytest.fixture(scope="session")
def q4():
    return catalog("q4").matrix


@pytest.fixture(scope="session")
def k36(tao6):
    return block_lift(tao6)


@pytest.fixture(scope="session")
def k4():
    return block_lift(fourier(2))


@pytest.fixture
def rng():
    return np.random.default_rng(20110401)


# acceptance criteria log, echoed in the terminal summary

_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Context manager factory recording one PASS/FAIL line per acceptance criterion."""
    import contextlib

    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException:
            line = f"criterion {number:>2} {title}: FAIL"
            _CRITERIA.append(line)
            print(line)
            raise
        line = f"criterion {number:>2} {title}: PASS"
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
