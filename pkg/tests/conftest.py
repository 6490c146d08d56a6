import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one summary line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool | None, detail: str) -> None:
        verdict = "SKIPPED" if ok is None else ("PASS" if ok else "FAIL")
        ACCEPTANCE[number] = f"criterion {number}: {verdict}  {detail}"

    return record


@st.composite
def antichains(draw, min_n=1, max_n=6):
    """``(n, masks)`` with masks a random generating family (minimized by the constructor)."""
    n = draw(st.integers(min_n, max_n))
    full = (1 << n) - 1
    masks = draw(st.lists(st.integers(1, full), min_size=1, max_size=6))
    return n, masks


@st.composite
def partitions(draw, n):
    labels = []
    for _ in range(n):
        labels.append(draw(st.integers(0, (max(labels) + 1) if labels else 0)))
    blocks = {}
    for i, b in enumerate(labels):
        blocks.setdefault(b, []).append(i)
    return [blocks[b] for b in sorted(blocks)]


@st.composite
def games_with_unions(draw, min_n=1, max_n=6):
    n, masks = draw(antichains(min_n, max_n))
    return n, masks, draw(partitions(n))


@st.composite
def weighted_games(draw, min_n=1, max_n=10, max_weight=20, allow_zero=True):
    n = draw(st.integers(min_n, max_n))
    lo = 0 if allow_zero else 1
    weights = draw(st.lists(st.integers(lo, max_weight), min_size=n, max_size=n))
    if sum(weights) == 0:
        weights[0] = 1
    q = draw(st.integers(1, sum(weights)))
    return q, weights
