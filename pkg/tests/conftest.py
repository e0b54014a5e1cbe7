from __future__ import annotations

from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=120, deadline=None)
settings.load_profile("default")


def rationals(max_num=60, max_den=60, nonzero=False):
    nums = st.integers(-max_num, max_num)
    if nonzero:
        nums = nums.filter(bool)
    return st.builds(Fraction, nums, st.integers(1, max_den))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
