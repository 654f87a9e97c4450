"""Each acceptance criterion at its stated tolerance and time budget.

One PASS/FAIL line per criterion is printed in the terminal summary.
"""

from __future__ import annotations

import pytest

from qmf.acceptance import CRITERIA

# collected for the terminal summary (see conftest.py)
LINES: list[str] = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}")
def test_criterion(criterion):
    result = criterion.run()
    print(result.line())
    LINES.append(result.line())
    assert result.passed, result.line()
