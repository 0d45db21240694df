import pytest
from hypothesis import HealthCheck, settings

from genwait.corpus import load_corpus

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture(scope="session")
def corpus():
    return load_corpus("builtin")


@pytest.fixture(scope="session")
def soluble_corpus(corpus):
    from genwait.chief import alpha_beta_stats
    return [e for e in corpus if alpha_beta_stats(e.group).beta == 0]


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(ACCEPTANCE_LINES[criterion])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
