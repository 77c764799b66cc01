from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cherednik.combinatorics import Multipartition, Partition

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def partitions(draw, max_size: int = 6):
    n = draw(st.integers(0, max_size))
    parts = []
    left = n
    top = n
    while left:
        x = draw(st.integers(1, min(left, top)))
        parts.append(x)
        left -= x
        top = x
    return Partition(parts)


@st.composite
def multipartitions(draw, level=None, max_size: int = 5):
    ell = level if level is not None else draw(st.integers(1, 3))
    budget = max_size
    comps = []
    for _ in range(ell):
        p = draw(partitions(budget))
        budget -= p.size
        comps.append(p)
    return Multipartition(comps)


def charges(ell: int, lo: int = -4, hi: int = 4, distinct: bool = False):
    base = st.lists(st.integers(lo, hi), min_size=ell, max_size=ell, unique=distinct)
    return base.map(tuple)


# acceptance reporting: one PASS/FAIL line per criterion, printed at the end of the run

ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, title, secs = ACCEPTANCE[num]
        terminalreporter.write_line(f"{status} criterion {num:>2}: {title} ({secs:.2f} s)")
