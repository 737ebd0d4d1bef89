import pytest

from afkit import ArgumentationFramework


@pytest.fixture
def af_seven():
    """Seven arguments: a chain into a 2-cycle, then a chain into a 3-cycle.

    Grounded semantics settles only the first two arguments, which makes
    this the standard probe for cases the shortcut cannot decide.
    """
    return ArgumentationFramework(
        7, [(1, 2), (2, 3), (3, 4), (4, 3), (4, 5), (5, 6), (6, 7), (7, 5)])


@pytest.fixture
def af_six():
    """Six arguments with two self-attackers and one unattacked argument."""
    return ArgumentationFramework(
        6, [(1, 1), (1, 2), (2, 5), (2, 4), (3, 3), (3, 4), (5, 2), (5, 4),
            (6, 5)])
