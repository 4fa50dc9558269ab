import itertools
import random
from pathlib import Path

import pytest

from hyperbar.filtration import INF, Filtration, Grade

DATA = Path(__file__).parent / "data"
L = Grade.log_ratio

SAMPLE_T = {"AB": 4, "DF": 3, "CD": 2, "CF": 2, "AC": 1, "BC": 1, "ABC": 3, "DEF": 2}


def sample_filtration() -> Filtration:
    return Filtration.from_labels("ABCDEF", {e: L(4, t) for e, t in SAMPLE_T.items()})


@pytest.fixture
def sample():
    return sample_filtration()


@pytest.fixture
def sample_contacts():
    return DATA / "sample_contacts.txt"


def random_filtration(rng: random.Random, max_vertices: int = 6, top_dim: int = 2,
                      grade_singletons: bool = True) -> Filtration:
    """Random hyperedges of dimension 1..top_dim with small integer grades, some infinite."""
    n = rng.randint(1, max_vertices)
    density = rng.choice([0.3, 0.5, 0.7])
    grades = {}
    for size in range(2, top_dim + 2):
        for e in itertools.combinations(range(n), size):
            if rng.random() < density:
                grades[e] = INF if rng.random() < 0.15 else Grade.real(rng.randint(0, 4))
    if grade_singletons and rng.random() < 0.25:
        for i in range(n):
            if rng.random() < 0.5:
                grades[(i,)] = Grade.real(rng.randint(0, 3))
    return Filtration(tuple("abcdefghij"[:n]), grades, max_dim=top_dim)


# acceptance bookkeeping: one line per criterion in the terminal summary
_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        prev = _ACCEPTANCE.get(number)
        if prev is None or prev[0] == "PASS":
            _ACCEPTANCE[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
