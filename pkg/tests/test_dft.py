"""Density-functional path, zeroth-order baseline, and the power ansatz."""

from fractions import Fraction

import pytest

from dispersion import (
    AnsatzParams,
    ansatz_density,
    ansatz_energy,
    ansatz_optimize,
    density_coeffs,
    exact_functional,
    functional_value,
    record_callables,
    sk_zeroth_energy,
)
from dispersion.solver import assemble_pairs, channel

from conftest import REFERENCE_ANSATZ, REFERENCE_DFT_A, REFERENCE_R0, agrees_with_printed


@pytest.mark.parametrize("order", [1, 3, 4, 5, 6])
def test_stationary_energies_match_reference(order, records):
    rec = records.dft("A", order)
    assert agrees_with_printed(rec.energy_constant, REFERENCE_DFT_A[order])


@pytest.mark.parametrize("order", range(1, 7))
def test_path_equivalence_channel_a(order, records):
    # the published stationary sequence skips order 2; it is computed here
    # and agrees with the direct solve like every other order
    assert records.dft("A", order).energy_constant == records.exact("A", order).energy_constant


def test_dft_order_two_prediction(records):
    assert records.dft("A", 2).energy_constant == Fraction(56, 9)


@pytest.mark.parametrize("tag", "BC")
@pytest.mark.parametrize("order", [1, 2, 3])
def test_path_equivalence_other_channels(tag, order, records):
    assert records.dft(tag, order).energy_constant == records.exact(tag, order).energy_constant


@pytest.mark.parametrize("tag,order", [("A", 2), ("A", 5), ("B", 3), ("C", 3)])
def test_dft_normalization_agrees(tag, order, records):
    # same function expanded in two bases: identical squared-norm integral
    assert (
        records.dft(tag, order).normalization_constant
        == records.exact(tag, order).normalization_constant
    )


def test_orbital_orthogonality():
    from dispersion import CHI_BASIS, PHI_BASIS, weighted_inner
    from math import factorial

    for basis, offset in ((PHI_BASIS, 4), (CHI_BASIS, 6)):
        for n in range(offset, offset + 6):
            for m in range(offset, offset + 6):
                val = weighted_inner(
                    basis.function(n), basis.function(m), basis.weight_exponent
                )
                if n != m:
                    assert val == 0
                else:
                    # weight n!/(n-4)! for the quartic family, n!/(n-6)! for
                    # the sextic one
                    assert val == Fraction(factorial(n), factorial(n - offset))


@pytest.mark.parametrize("tag", "ABC")
@pytest.mark.parametrize("order", range(1, 7))
def test_calibration_identity(tag, order, records):
    """The energy form evaluated on the solved expansion reproduces the
    dispersion constant exactly, on both the direct and orbital bases."""
    rec = records.exact(tag, order)
    assert exact_functional(tag, rec) == rec.energy_constant
    dft = records.dft(tag, order)
    assert exact_functional(tag, dft) == dft.energy_constant


def test_calibration_identity_order_ten(records):
    rec = records.exact("A", 10)
    assert exact_functional("A", rec) == rec.energy_constant


def test_stationarity_residual(records):
    """Gradient of the quadratic form at the stationary point is exactly zero:
    the orbital-basis system's residual vanishes in rational arithmetic."""
    ch = channel("A")
    rec = records.dft("A", 4)
    system = assemble_pairs(ch, ch.orbitals, tuple(rec.coeffs))
    solution = [rec.coeffs[p] for p in system.pairs]
    assert all(r == 0 for r in system.residual(solution))


def test_zeroth_order_baseline():
    val = sk_zeroth_energy("A")
    target, tol = REFERENCE_R0
    assert abs(val - target) <= tol
    assert abs(val - 6.14) > 0.05  # the historical value is not reproduced


def test_functional_quadrature_on_exact_solution(records):
    rec = records.exact("A", 10)
    R, DR = record_callables(rec)
    val = functional_value("A", R, DR)
    assert val == pytest.approx(6.4990267, abs=1e-5)


@pytest.mark.parametrize("tag", "AC")
def test_ansatz_reference_values(tag):
    params, energy = ansatz_optimize(tag)
    target, tol = REFERENCE_ANSATZ[tag]
    assert abs(energy - target) <= tol
    assert params.nu > 0


@pytest.mark.xfail(
    strict=True,
    reason="the published channel-B ansatz value 116.795 is not reproducible: "
    "the symmetric single-exponent optimum is 123.98188 (0.34% below the "
    "exact constant), and no natural variant of the ansatz family lands "
    "near 116.795; see the decisions ledger",
)
def test_ansatz_channel_b_published_value():
    _, energy = ansatz_optimize("B")
    target, tol = REFERENCE_ANSATZ["B"]
    assert abs(energy - target) <= tol


def test_ansatz_channel_b_honest_value(records):
    params, energy = ansatz_optimize("B")
    exact = float(records.exact("B", 10).energy_constant)
    assert energy == pytest.approx(123.981883, abs=1e-3)
    assert energy < exact  # variational bound


def test_variational_ordering(records):
    order1 = float(records.exact("A", 1).energy_constant)
    r0 = sk_zeroth_energy("A")
    _, ansatz = ansatz_optimize("A")
    exact = float(records.exact("A", 10).energy_constant)
    assert order1 <= r0 + 1e-9
    assert r0 <= ansatz + 1e-9
    assert ansatz <= exact + 1e-9


@pytest.mark.parametrize("tag", "ABC")
def test_all_baselines_below_exact(tag, records):
    exact = float(records.exact(tag, 10).energy_constant)
    assert sk_zeroth_energy(tag) <= exact + 1e-9
    _, ansatz = ansatz_optimize(tag)
    assert ansatz <= exact + 1e-9


def test_ansatz_energy_rejects_bad_nu():
    with pytest.raises(ValueError):
        ansatz_energy("A", -0.25, 0.0)


def test_ansatz_density_zero_amplitude():
    rows = ansatz_density(AnsatzParams(lam=0.0, nu=0.5), [0.0, 1.0, 2.0])
    assert [v for _, v in rows] == [0.0, 0.0, 0.0]


def test_ansatz_density_magnitude_matches_exact(records):
    """Figure-level agreement: at the optimum the approximate channel-A
    density tracks the exact one in overall magnitude on [0, 10]."""
    params, _ = ansatz_optimize("A")
    fn = density_coeffs(records.exact("A", 10), "A")
    grid = [x / 2 for x in range(1, 21)]
    rows = ansatz_density(params, grid, which="A", exact=fn)
    for _, approx, exact in rows:
        assert 0.3 <= approx / exact <= 3.0


def test_quadrupole_density_better_than_mixed(records):
    """The quadrupole channel's ansatz is the more accurate of B and C, in
    energy terms."""
    _, b_energy = ansatz_optimize("B")
    _, c_energy = ansatz_optimize("C")
    b_exact = float(records.exact("B", 10).energy_constant)
    c_exact = float(records.exact("C", 10).energy_constant)
    assert abs(c_energy - c_exact) / c_exact < abs(b_energy - b_exact) / b_exact
