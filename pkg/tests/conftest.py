import pytest

from bmhadamard.scheme import build_petersen_line_scheme
from bmhadamard.typeii import family_coefficients


@pytest.fixture(scope="session")
def petersen():
    return build_petersen_line_scheme()


@pytest.fixture(scope="session")
def families_q4():
    """All 14 exact families at q = 4, keyed by (case, r_sign, branch)."""
    out = {}
    for case in ("i", "ii", "iii", "iv", "v"):
        for branch in (1, -1):
            out[(case, 1, branch)] = family_coefficients(case, 4, 1, branch)
    for r_sign in (1, -1):
        for branch in (1, -1):
            out[("vi", r_sign, branch)] = family_coefficients(
                "vi", 4, r_sign, branch)
    return out
