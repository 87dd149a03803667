"""Operational matrices and Walsh-domain integration."""

import numpy as np
import pytest

from walshode import (
    HybridConfig,
    SampledFunction,
    character_table,
    differentiation_matrix,
    discretize,
    fwht,
    integrate_sampled,
    integration_matrix,
    time_integration_operator,
)

I4_EXPECTED = np.array(
    [
        [1 / 2, 1 / 8, 1 / 4, 0],
        [-1 / 8, 0, 0, 0],
        [-1 / 4, 0, 0, 1 / 8],
        [0, 0, -1 / 8, 0],
    ]
)

I8_EXPECTED = np.array(
    [
        [1 / 2, 1 / 16, 1 / 8, 0, 1 / 4, 0, 0, 0],
        [-1 / 16, 0, 0, 0, 0, 0, 0, 0],
        [-1 / 8, 0, 0, 1 / 16, 0, 0, 0, 0],
        [0, 0, -1 / 16, 0, 0, 0, 0, 0],
        [-1 / 4, 0, 0, 0, 0, 1 / 16, 1 / 8, 0],
        [0, 0, 0, 0, -1 / 16, 0, 0, 0],
        [0, 0, 0, 0, -1 / 8, 0, 0, 1 / 16],
        [0, 0, 0, 0, 0, 0, -1 / 16, 0],
    ]
)

D4_EXPECTED = np.array(
    [
        [0, -8, 0, 0],
        [8, 32, 0, 16],
        [0, 0, 0, -8],
        [0, -16, 8, 0],
    ],
    dtype=float,
)


# ---------------------------------------------------------------------------
# time-domain operator


def test_time_operator_constant_integrand():
    J = time_integration_operator(4)
    out = J @ (0.75 * np.ones(4))
    assert np.array_equal(out, 0.75 * np.array([1 / 8, 3 / 8, 5 / 8, 7 / 8]))


def test_time_operator_first_cell():
    J = time_integration_operator(2)
    assert np.array_equal(J @ np.array([1.0, 0.0]), [0.25, 0.5])


def test_time_operator_square_wave():
    # The fastest square wave [1,-1,1,-1] integrates to a flat 1/8 at every
    # midpoint: each full cell cancels, each half cell contributes 1/8.
    J = time_integration_operator(4)
    row = character_table(2)[1].astype(float)
    assert np.array_equal(J @ row, np.full(4, 1 / 8))


def test_integration_matrix_pinned_exactly():
    assert np.array_equal(integration_matrix(4).entries, I4_EXPECTED)
    assert np.array_equal(integration_matrix(8).entries, I8_EXPECTED)
    assert np.array_equal(
        integration_matrix(2).entries, np.array([[1 / 2, 1 / 4], [-1 / 4, 0]])
    )


def test_differentiation_matrix_pinned_exactly():
    assert np.array_equal(differentiation_matrix(4).entries, D4_EXPECTED)
    # 2x2 inverse computed by hand from [[1/2, 1/4], [-1/4, 0]].
    assert np.array_equal(
        differentiation_matrix(2).entries, np.array([[0.0, -4.0], [4.0, 8.0]])
    )


def test_differentiation_inverts_integration():
    for N in (2, 4, 8, 32, 256):
        D = differentiation_matrix(N).entries
        I = integration_matrix(N).entries
        assert np.max(np.abs(D @ I - np.eye(N))) < 1e-10


def test_matrix_metadata_and_immutability():
    m = integration_matrix(8)
    assert m.kind == "integration"
    assert m.n == 3
    with pytest.raises(ValueError):
        m.entries[0, 0] = 99.0
    assert differentiation_matrix(8).kind == "differentiation"


def test_caching_returns_same_object():
    assert integration_matrix(16) is integration_matrix(16)


def test_conjugation_roundtrip_recovers_time_operator():
    for N in (2, 4, 8, 64):
        n = N.bit_length() - 1
        H = character_table(n).astype(float) / np.sqrt(N)
        got = H @ integration_matrix(N).entries @ H
        assert np.max(np.abs(got - time_integration_operator(N))) < 1e-12


def test_sparsity_structure():
    # Measured structure: row 0 carries n+1 nonzeros, row 2^j carries j+1,
    # and the total is 2N-1, i.e. O(N), comfortably inside O(N log N).
    for N in (4, 8, 16, 64, 256):
        n = N.bit_length() - 1
        entries = integration_matrix(N).entries
        nnz_rows = [int(np.count_nonzero(row)) for row in entries]
        assert nnz_rows[0] == n + 1
        for j in range(1, n):
            assert nnz_rows[1 << j] == j + 1
        assert max(nnz_rows) == n + 1
        assert sum(nnz_rows) == 2 * N - 1
        assert sum(nnz_rows) <= 3 * N * max(n, 1)
    # The published 4x4 display has at most 3 nonzeros per row; the 8x8 one
    # tops out at 4 (its first row).
    assert max(np.count_nonzero(r) for r in integration_matrix(4).entries) == 3
    assert max(np.count_nonzero(r) for r in integration_matrix(8).entries) == 4


def test_differentiation_sparsity_measured():
    # No asymptotic claim: record that the inverse stays as sparse as the
    # forward operator at these sizes.
    for N in (4, 8, 64, 256):
        assert np.count_nonzero(differentiation_matrix(N).entries) == 2 * N - 1


# ---------------------------------------------------------------------------
# integrate_sampled


def test_integrate_cos_time_domain_pinned():
    f = discretize(np.cos, 2)
    out = integrate_sampled(f)
    assert np.max(np.abs(out.values - [0.125, 0.366, 0.585, 0.767])) < 5e-3
    # The true antiderivative is sin; midpoint quadrature error ~ 2e-3.
    assert np.max(np.abs(out.values - np.sin(f.midpoints))) < 5e-3


def test_integrate_cos_spectral_coefficients_pinned():
    # Reference display [0.459, -0.105, -0.214, -0.015] was produced by
    # multiplying the matrix into a coordinate vector already rounded to
    # 3 decimals, so it sits up to ~1e-3 from the unrounded pipeline
    # (component 0 differs by 5.06e-4).
    f = discretize(np.cos, 2)
    out = integrate_sampled(f)
    coords = fwht(out.values) / 2.0  # unit-synthesis coordinates at N=4
    display = np.array([0.459, -0.105, -0.214, -0.015])
    assert np.max(np.abs(coords - display)) < 1e-3


def test_integration_matrix_reproduces_worked_multiplication():
    # Feeding the same 3-dp-rounded coordinate vector through our matrix
    # must land within half a display unit of the reference output
    # (exact-arithmetic tie at component 1, hence the float guard).
    rounded_coords = np.array([0.844, 0.058, 0.118, -0.027])
    got = integration_matrix(4).entries @ rounded_coords
    display = np.array([0.459, -0.105, -0.214, -0.015])
    assert np.max(np.abs(got - display)) <= 5e-4 + 1e-12


def test_integrate_zero():
    f = SampledFunction(np.zeros(8))
    assert np.array_equal(integrate_sampled(f).values, np.zeros(8))


def test_integrals_of_the_four_basis_functions():
    # Running integrals of the N=4 natural-ordered square waves, as sampled
    # midpoint vectors and as spectra; together these pin every column of
    # the 4x4 integration matrix.
    table = character_table(2).astype(float)
    expected_time = {
        0: [1 / 8, 3 / 8, 5 / 8, 7 / 8],
        1: [1 / 8, 1 / 8, 1 / 8, 1 / 8],
        2: [1 / 8, 3 / 8, 3 / 8, 1 / 8],
        3: [1 / 8, 1 / 8, -1 / 8, -1 / 8],
    }
    expected_spectrum = {
        0: 0.5 * np.array([2, -1 / 2, -1, 0]),
        1: 0.5 * np.array([1 / 2, 0, 0, 0]),
        2: 0.5 * np.array([1, 0, 0, -1 / 2]),
        3: 0.5 * np.array([0, 0, 1 / 2, 0]),
    }
    for k in range(4):
        out = integrate_sampled(SampledFunction(table[k]))
        assert np.array_equal(out.values, expected_time[k])
        assert np.array_equal(fwht(out.values), expected_spectrum[k])


def test_integrate_matches_time_operator_oracle():
    rng = np.random.default_rng(1234)
    for N in (4, 8, 32):
        vals = rng.standard_normal(N)
        via_transforms = integrate_sampled(SampledFunction(vals)).values
        via_oracle = time_integration_operator(N) @ vals
        assert np.max(np.abs(via_transforms - via_oracle)) < 1e-12


def test_exact_on_dyadic_constants():
    # Even qubit counts keep every step dyadic, so the antiderivative of a
    # dyadic constant equals kappa * t_m bit-for-bit.
    for N in (4, 16, 64):
        mids = (2 * np.arange(N) + 1) / (2 * N)
        for kappa in (1.0, 0.75, -2.5, 3.0):
            out = integrate_sampled(SampledFunction(np.full(N, kappa)))
            assert np.array_equal(out.values, kappa * mids)


def test_near_exact_on_constants_odd_n():
    # Odd qubit counts scale by irrational 1/sqrt(N); only roundoff-level
    # error is acceptable.
    N = 8
    mids = (2 * np.arange(N) + 1) / (2 * N)
    out = integrate_sampled(SampledFunction(np.full(N, 1 / 3)))
    assert np.max(np.abs(out.values - mids / 3)) < 1e-15


def test_domain_rescaling():
    # integral of a constant over [2, 6]: slope kappa from t_lo.
    f = discretize(lambda t: 0.5, 2, domain=(2.0, 6.0))
    out = integrate_sampled(f)
    expected = 0.5 * (f.midpoints - 2.0)
    assert np.max(np.abs(out.values - expected)) < 1e-14
    assert out.domain == (2.0, 6.0)


def test_backend_equivalence_classical_vs_hybrid_exact():
    rng = np.random.default_rng(55)
    for N in (4, 16, 128):
        vals = rng.standard_normal(N)
        f = SampledFunction(vals)
        classical = integrate_sampled(f, backend="classical")
        hybrid = integrate_sampled(f, backend="hybrid", cfg=HybridConfig())
        assert np.max(np.abs(classical.values - hybrid.values)) < 1e-10


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        integrate_sampled(SampledFunction(np.ones(4)), backend="quantum")
