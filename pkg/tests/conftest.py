"""Shared reference data and cached solves for the test suite."""

from fractions import Fraction

import pytest

from dispersion import dft_solve, solve_channel

# Published reference sequences: (energy constant, normalization constant)
# per truncation order, as printed decimal strings.
REFERENCE = {
    "A": {
        1: ("6", "6"),
        2: ("6.22222222", "6.61728395"),
        3: ("6.46153846", "6.88757396"),
        4: ("6.48214285", "7.40242346"),
        5: ("6.49844398", "7.40024688"),
        6: ("6.49900257", "7.39872679"),
        7: ("6.49902535", "7.39863094"),
        8: ("6.49902659", "7.39862559"),
        9: ("6.49902669", "7.39862525"),
        10: ("6.49902670", "7.39862522"),
    },
    "B": {
        1: ("115.71428571", "24.79591836"),
        2: ("118.96875", "26.74423828"),
        3: ("124.26672692", "30.14754412"),
        4: ("124.39502505", "30.12987113"),
        5: ("124.39891831", "30.12699933"),
        6: ("124.39907397", "30.12683881"),
        7: ("124.39908277", "30.12682990"),
        8: ("124.39908349", "30.12682930"),
        9: ("124.39908357", "30.12682924"),
        10: ("124.39908358", "30.12682924"),
    },
    "C": {
        1: ("1063.125", "199.3359375"),
        2: ("1132.610294117", "238.583207179"),
        3: ("1135.107421875", "238.686733245"),
        4: ("1135.208820466", "238.645331783"),
        5: ("1135.213725627", "238.641796376"),
        6: ("1135.214015982", "238.641543683"),
        7: ("1135.214037581", "238.641524775"),
        8: ("1135.214039617", "238.641523160"),
        9: ("1135.214039858", "238.641522996"),
        10: ("1135.214039892", "238.641522976"),
    },
}

# Converged constants quoted to seven-plus digits.
REFERENCE_CONVERGED = {"A": "6.4990267", "B": "124.3990835", "C": "1135.2140398"}

# Stationary density-functional energies; order 2 is a prediction of this
# package (the published sequence skips it).
REFERENCE_DFT_A = {
    1: "6",
    3: "6.46153846",
    4: "6.48214285",
    5: "6.49844398",
    6: "6.49900257",
}

# Optimized power-ansatz values with their acceptance tolerances.
REFERENCE_ANSATZ = {"A": (6.48965, 1e-3), "B": (116.795, 0.5), "C": (1134.71, 0.1)}

REFERENCE_R0 = (6.23, 5e-3)


def printed_fraction(s: str) -> Fraction:
    return Fraction(s)


def agrees_with_printed(value, printed: str) -> bool:
    """True when `value` matches the printed decimal to one unit in its
    last place (covers both rounding and truncation of the exact value)."""
    places = len(printed.split(".")[1]) if "." in printed else 0
    return abs(Fraction(value) - Fraction(printed)) <= Fraction(1, 10**places)


class SolveCache:
    def __init__(self):
        self._exact = {}
        self._dft = {}

    def exact(self, tag, order):
        key = (tag, order)
        if key not in self._exact:
            self._exact[key] = solve_channel(tag, order)
        return self._exact[key]

    def dft(self, tag, order):
        key = (tag, order)
        if key not in self._dft:
            self._dft[key] = dft_solve(tag, order)
        return self._dft[key]


@pytest.fixture(scope="session")
def records():
    return SolveCache()
