import pytest

from delpezzo import solve_up_to


@pytest.fixture(scope="session")
def tables():
    """Solved count tables up to degree 4 for every supported rank."""
    return {r: solve_up_to(r, 4) for r in (4, 5, 6, 7)}
