import pytest

from plman import corpus
from plman.complex import suspension
from plman.manifold.certify import is_homology_manifold


@pytest.fixture(scope="session")
def poincare():
    return corpus.poincare()


@pytest.fixture(scope="session")
def sigma_p(poincare):
    return suspension(poincare)


@pytest.fixture(scope="session")
def sigma2p():
    return corpus.sigma2p()


@pytest.fixture(scope="session")
def sigma3rp2():
    return corpus.sigma3rp2()


@pytest.fixture(scope="session")
def sigma_p_report(sigma_p):
    return is_homology_manifold(sigma_p)


@pytest.fixture(scope="session")
def sigma2p_report(sigma2p):
    return is_homology_manifold(sigma2p)


@pytest.fixture(scope="session")
def sigma_p_css(sigma_p, sigma_p_report):
    from plman.css.report import css_report
    return css_report(sigma_p, report=sigma_p_report)


@pytest.fixture(scope="session")
def sigma2p_css(sigma2p, sigma2p_report):
    from plman.css.report import css_report
    return css_report(sigma2p, report=sigma2p_report)


# -- acceptance reporting: one PASS/FAIL line per criterion --------------------------------

_CRITERIA: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    record = getattr(item, "_criterion", None)
    if record is not None and rep.when == "call":
        record["passed"] = rep.passed


@pytest.fixture
def criterion(request):
    """Yields a dict; the test sets ``number`` and may add ``detail``."""
    import time
    record = {"number": None, "detail": "", "passed": False}
    request.node._criterion = record
    start = time.perf_counter()
    yield record
    record["seconds"] = time.perf_counter() - start
    if record["number"] is not None:
        _CRITERIA[record["number"]] = record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        r = _CRITERIA[n]
        status = "PASS" if r["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} ({r['seconds']:.1f}s) {r['detail']}".rstrip())
