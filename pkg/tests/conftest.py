import pytest

from instanton_monads.forms import DualBinaryForm
from instanton_monads.monad import SubspaceU
from instanton_monads.sampling import make_rng

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE]


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture
def member_u():
    """The (n, k) = (1, 1) pencil span((1,0,0,1), (0,1,0,0))."""
    return SubspaceU(1, 1, (DualBinaryForm.of(1, 0, 0, 1), DualBinaryForm.of(0, 1, 0, 0)))


@pytest.fixture
def rank_one_u():
    return SubspaceU(1, 1, (DualBinaryForm.of(1, 0, 0, 0), DualBinaryForm.of(0, 0, 0, 1)))
