from __future__ import annotations

from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-50, max_value=50)


def rational_lists(min_size=1, max_size=12):
    fr = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))
    return st.lists(fr, min_size=min_size, max_size=max_size)


def int_lists(min_size=1, max_size=12):
    return st.lists(small_ints, min_size=min_size, max_size=max_size)


def product_delta(prec: int) -> list[int]:
    """q * prod (1 - q^n)^24 by repeated polynomial multiplication."""
    poly = [0] * prec
    if prec > 1:
        poly[1] = 1
    for n in range(1, prec):
        for _ in range(24):
            for i in range(prec - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return poly


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
