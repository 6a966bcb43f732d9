import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from minimaxlab.profile import Ballot, Profile  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@st.composite
def tiers(draw, alts, ties=True):
    order = draw(st.permutations(list(alts)))
    out = [[order[0]]]
    for x in order[1:]:
        if ties and draw(st.booleans()):
            out[-1].append(x)
        else:
            out.append([x])
    return [sorted(t) for t in out]


@st.composite
def rankings(draw, min_alts=2, max_alts=4, max_voters=7, ties=True):
    n = draw(st.integers(min_alts, max_alts))
    alts = list(range(n))
    voters = draw(st.integers(1, max_voters))
    return alts, [draw(tiers(alts, ties)) for _ in range(voters)]


def to_profile(alts, ranks) -> Profile:
    return Profile.from_ballots(alts, [Ballot.from_tiers(t) for t in ranks])


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    if module is None or not getattr(module, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
