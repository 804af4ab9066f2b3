import pytest
from hypothesis import HealthCheck, settings

from tfocalc.corpus import ENTRIES, load

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CHECKING = [(e, f) for e in ENTRIES if not e.must_fail for f in e.files]


@pytest.fixture(params=CHECKING, ids=[f for _, f in CHECKING])
def corpus_proof(request):
    entry, name = request.param
    script, tree = load(name)
    return entry, script, tree


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LOG:
        terminalreporter.section("acceptance criteria")
        for line in mod.LOG:
            terminalreporter.write_line(line)
