import pytest

from diracosc.oscillator import OscillatorModel, build_registry

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        num, text = marker.args
        _CRITERIA[num] = (text, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        text, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {text}")


def _registry(dim, n_max):
    return build_registry(OscillatorModel(dim, 1.0, 1.0, n_max))


@pytest.fixture(scope="session")
def reg1():
    return _registry(1, 40)


@pytest.fixture(scope="session")
def reg2():
    return _registry(2, 16)


@pytest.fixture(scope="session")
def reg3():
    return _registry(3, 8)


@pytest.fixture(scope="session")
def small_regs():
    return {1: _registry(1, 12), 2: _registry(2, 6), 3: _registry(3, 5)}


@pytest.fixture(scope="session")
def basis3(reg3):
    from diracosc.fockspace3d import build_basis
    return build_basis(reg3)
