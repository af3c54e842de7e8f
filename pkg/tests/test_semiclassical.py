"""Emission amplitudes, mode functions, energy and probability accounting."""

import numpy as np
import pytest

from rrshift import (CutoffWindow, PotentialProfile, amplitude_classical,
                     amplitude_quantum, build_trajectory_family, default_window,
                     emission_probability_reduced, free_twin, integrate_trajectory,
                     radiated_energy, radiative_amplitude, shift_from_amplitudes,
                     solve_mode_function, taper_amplitude, window_time_range)

CHARGE = 0.3
NVEC = np.array([0.3, 0.4, np.sqrt(1 - 0.25)])


def riemann_amplitude(traj, k, n, window, charge, num=1_000_000):
    """Brute-force uniform-xi Riemann sum over the window support."""
    n = np.asarray(n, dtype=float)
    lo, hi = window_time_range(traj, n, window)
    t = np.linspace(lo, hi, num)
    x = traj.position(t)
    v = traj.velocity(t)
    xi = t - x @ n
    xi_u = np.linspace(xi[0], xi[-1], num)
    t_u = np.interp(xi_u, xi, t)
    v_u = np.stack([np.interp(t_u, t, v[:, i]) for i in range(3)], axis=1)
    xidot = 1.0 - v_u @ n
    four = np.concatenate([np.ones((num, 1)), v_u], axis=1) / xidot[:, None]
    integrand = four * (window.chi(xi_u) * np.exp(1j * k * xi_u))[:, None]
    return -charge * np.trapezoid(integrand, xi_u, axis=0)


# ---------------------------------------------------------------- window


def test_window_plateau_and_support():
    w = CutoffWindow(xi_on=-2.0, xi_off=1.0, width=0.5)
    assert w.chi(-2.0) == 1.0 and w.chi(1.0) == 1.0 and w.chi(-0.3) == 1.0
    assert w.chi(w.support[0] - 0.1) == 0.0
    assert w.chi(w.support[1] + 0.1) == 0.0
    np.testing.assert_allclose(w.support, (-2.5, 1.5))


def test_window_taper_derivative():
    """chi_prime matches central differences through the taper."""
    w = CutoffWindow(xi_on=-2.0, xi_off=1.0, width=0.5)
    h = 1e-6
    for xi in np.linspace(-2.49, 1.49, 41):
        fd = (w.chi(xi + h) - w.chi(xi - h)) / (2 * h)
        assert abs(w.chi_prime(xi) - fd) < 1e-7


def test_window_coverage_check():
    w = CutoffWindow(xi_on=-2.0, xi_off=1.0, width=0.5)
    w.require_covers(-1.5, 0.5)  # fine
    with pytest.raises(ValueError, match="does not cover"):
        w.require_covers(-2.5, 0.0)


def test_uncovering_window_rejected(time_traj):
    small = CutoffWindow(xi_on=-0.5, xi_off=-0.2, width=0.1)
    with pytest.raises(ValueError, match="does not cover"):
        amplitude_classical(time_traj, 1.0, [0.0, 0.0, 1.0], small, CHARGE)


# ----------------------------------------------------- classical amplitude


def test_amplitude_matches_riemann_oracle(time_traj):
    """Oscillatory quadrature agrees with a 1e6-node uniform-xi Riemann sum."""
    w = default_window(time_traj)
    low = amplitude_classical(time_traj, 1.0, NVEC, w, CHARGE).a
    floor = 2e-9 * np.max(np.abs(low))  # absolute quadrature floor
    for k in (3.0, 12.0, 40.0):
        got = amplitude_classical(time_traj, k, NVEC, w, CHARGE).a
        ref = riemann_amplitude(time_traj, k, NVEC, w, CHARGE)
        tol = max(1e-8 * np.max(np.abs(got)), floor)
        assert np.max(np.abs(got - ref)) < tol


def test_amplitude_low_frequency_limit(time_traj):
    """k -> 0: the amplitude becomes the real window-weighted displacement."""
    w = default_window(time_traj)
    got = amplitude_classical(time_traj, 1e-9, NVEC, w, CHARGE).a
    ref = riemann_amplitude(time_traj, 1e-9, NVEC, w, CHARGE)
    assert np.max(np.abs(got.imag)) < 1e-8 * np.max(np.abs(got))
    assert np.max(np.abs(got - ref)) < 1e-8 * np.max(np.abs(got))


def test_amplitude_conjugate_symmetry(time_traj):
    """Real xi-space integrand: A(-k) is the conjugate of A(k)."""
    w = default_window(time_traj)
    plus = amplitude_classical(time_traj, 1.3, NVEC, w, CHARGE).a
    minus = amplitude_classical(time_traj, -1.3, NVEC, w, CHARGE).a
    assert np.max(np.abs(minus - np.conj(plus))) < 1e-12 * np.max(np.abs(plus))


def test_amplitude_linear_in_charge(time_traj):
    w = default_window(time_traj)
    one = amplitude_classical(time_traj, 2.0, NVEC, w, CHARGE).a
    two = amplitude_classical(time_traj, 2.0, NVEC, w, 2 * CHARGE).a
    assert np.array_equal(two, 2 * one)


def test_free_amplitude_is_pure_window_artifact(free_traj):
    """Zero acceleration: no radiative part, and only the window phase moves."""
    w = default_window(free_traj)
    k = 1.7
    assert np.array_equal(radiative_amplitude(free_traj, k, NVEC, CHARGE).a,
                          np.zeros(4, dtype=complex))
    full = amplitude_classical(free_traj, k, NVEC, w, CHARGE).a
    taper = taper_amplitude(free_traj, k, NVEC, w, CHARGE).a
    assert np.max(np.abs(full - taper)) < 1e-9 * np.max(np.abs(full))
    # translating the window multiplies by a pure phase
    delta = 0.37
    shifted = amplitude_classical(free_traj, k, NVEC, w.shifted(delta), CHARGE).a
    np.testing.assert_allclose(np.abs(shifted), np.abs(full), rtol=0,
                               atol=1e-12 * np.max(np.abs(full)))
    np.testing.assert_allclose(shifted * np.exp(-1j * k * delta), full, rtol=0,
                               atol=1e-10 * np.max(np.abs(full)))


def test_windowed_amplitude_splits(time_traj):
    """Windowed = radiative + taper once the plateau covers the acceleration."""
    w = default_window(time_traj)
    scale = None
    for k in (0.8, 3.0, 9.0):
        full = amplitude_classical(time_traj, k, NVEC, w, CHARGE).a
        rad = radiative_amplitude(time_traj, k, NVEC, CHARGE).a
        taper = taper_amplitude(time_traj, k, NVEC, w, CHARGE).a
        if scale is None:  # identical absolute floor at every k
            scale = max(np.max(np.abs(rad)), np.max(np.abs(taper)))
        assert np.max(np.abs(full - rad - taper)) < 1e-9 * scale


def test_radiative_amplitude_transverse(time_traj):
    """k_mu A^mu = 0 for the acceleration-supported piece."""
    for k in (0.9, 4.0):
        a = radiative_amplitude(time_traj, k, NVEC, CHARGE).a
        inner = a[0] - NVEC @ a[1:]
        assert abs(inner) < 1e-12 * np.max(np.abs(a))


# ------------------------------------------------------------- mode functions


def test_free_mode_is_plane_wave():
    """V == 0: phi(t) = exp(-i p0 t / hbar) to solver precision."""
    prof = PotentialProfile(axis="time", v_past=[0.0, 0.0, 0.0, 0.0], x1=2.0, x2=1.0)
    hbar = 0.1
    mode = solve_mode_function(prof, [0.0, 0.1, 0.8], hbar, (-3.5, 0.2))
    ts = np.linspace(-3.3, 0.1, 57)
    vals = np.array([mode(t)[0] for t in ts])
    exact = np.exp(-1j * mode.p0 * ts / hbar)
    assert np.max(np.abs(vals - exact)) < 1e-9


def test_mode_wronskian_constancy(time_profile):
    """The Wronskian stays at 2 p0 across the grid, 1e-8 relative."""
    mode = solve_mode_function(time_profile, [0.0, 0.1, 0.8], 0.05, (-3.5, 0.2))
    assert mode.wronskian_residual() < 1e-8
    np.testing.assert_allclose(mode.wronskian(), 2 * mode.p0, rtol=1e-8)


def test_mode_sigma_identity(time_profile):
    """sigma_p(t)^2 = (p - V(t))^2 + m^2 pointwise."""
    from rrshift.potentials import eval_potential
    p = np.array([0.0, 0.1, 0.8])
    mode = solve_mode_function(time_profile, p, 0.1, (-3.5, 0.2))
    for t in np.linspace(-3.4, 0.1, 31):
        mech = p - eval_potential(time_profile, t)[1:]
        expected = mech @ mech + 1.0
        assert abs(mode.sigma(t) ** 2 - expected) < 1e-14 * expected


def test_mode_envelope_error_is_second_order(time_profile):
    """|phi|^2 deviation from p0/sigma shrinks ~4x when hbar halves."""
    p = np.array([0.0, 0.1, 0.8])
    devs = []
    for hbar in (0.1, 0.05, 0.025):
        mode = solve_mode_function(time_profile, p, hbar, (-3.5, 0.2))
        ts = np.linspace(-3.4, -0.1, 400)
        vals = np.array([mode(t)[0] for t in ts])
        devs.append(np.max(np.abs(np.abs(vals) ** 2 * mode.sigma(ts) / mode.p0 - 1.0)))
    for coarse, fine in zip(devs, devs[1:]):
        assert 3.0 < coarse / fine < 5.0


def test_mode_grid_resolution_guard(time_profile):
    with pytest.raises(ValueError, match="under-resolved"):
        solve_mode_function(time_profile, [0.0, 0.1, 0.8], 0.1, (-3.0, 0.2), num=10)


def test_mode_pair_grid_mismatch(time_traj):
    w = default_window(time_traj)
    m1 = solve_mode_function(time_traj.profile, [0.0, 0.1, 0.8], 0.1, (-9.0, 1.5))
    m2 = solve_mode_function(time_traj.profile, [0.0, 0.1, 0.7], 0.1, (-9.1, 1.5))
    with pytest.raises(ValueError, match="mismatch"):
        amplitude_quantum(time_traj, w, m1, m2, 1.0, [0.0, 0.0, 1.0], CHARGE)


def test_phase_product_drift_is_first_order(time_traj):
    """arg(phi_P* phi_p) + k n.x(t) drifts O(hbar) over the acceleration."""
    prof = time_traj.profile
    p = np.asarray(time_traj.p_final, dtype=float)
    k, n = 1.2, np.array([0.0, 0.6, 0.8])
    drifts = []
    for hbar in (0.1, 0.05, 0.025):
        big_p = p - hbar * k * n
        mode_p = solve_mode_function(prof, p, hbar, (-3.5, 0.2))
        mode_P = solve_mode_function(prof, big_p, hbar, (-3.5, 0.2))
        ts = np.linspace(-3.0, -0.5, 400)
        vals_p = np.array([mode_p(t)[0] for t in ts])
        vals_P = np.array([mode_P(t)[0] for t in ts])
        xs = time_traj.position(ts)
        phase = np.unwrap(np.angle(np.conj(vals_P) * vals_p)) + k * (xs @ n)
        drifts.append(np.max(phase) - np.min(phase))
    for coarse, fine in zip(drifts, drifts[1:]):
        assert 1.6 < coarse / fine < 2.6


def test_free_quantum_amplitude_matches_shifted_window_transform():
    """V == 0: the quantum amplitude is the classical one at a shifted frequency."""
    prof = PotentialProfile(axis="time", v_past=[0.0, 0.0, 0.0, 0.0], x1=2.0, x2=1.0)
    p = np.array([0.0, 0.1, 0.8])
    traj = integrate_trajectory(prof, p, 1.0)
    w = default_window(traj)
    hbar, k = 0.1, 1.7
    n = np.array([0.6, 0.0, 0.8])
    p0 = np.sqrt(p @ p + 1.0)
    big_p = p - hbar * k * n
    big_p0 = np.sqrt(big_p @ big_p + 1.0)
    xidot = 1.0 - n @ (p / p0)
    k_eff = (k + (big_p0 - p0) / hbar) / xidot
    lo, hi = window_time_range(traj, n, w)
    span = (lo - 0.1, hi + 0.1)
    mode_p = solve_mode_function(prof, p, hbar, span)
    mode_P = solve_mode_function(prof, big_p, hbar, span)
    quantum = amplitude_quantum(traj, w, mode_p, mode_P, k, n, CHARGE).a
    shifted = amplitude_classical(traj, k_eff, n, w, CHARGE).a
    scale = np.max(np.abs(shifted))
    assert np.max(np.abs(quantum[1:] - shifted[1:])) < 1e-9 * scale
    assert abs(quantum[0] - shifted[0] * (p0 + big_p0) / (2 * p0)) < 1e-9 * scale
    # at fixed k the difference from the classical amplitude is O(hbar)
    classical = amplitude_classical(traj, k, n, w, CHARGE).a
    errs = []
    for hb in (0.1, 0.05):
        pb = p - hb * k * n
        mp = solve_mode_function(prof, p, hb, span)
        mP = solve_mode_function(prof, pb, hb, span)
        errs.append(np.max(np.abs(
            amplitude_quantum(traj, w, mp, mP, k, n, CHARGE).a - classical)))
    assert 1.6 < errs[0] / errs[1] < 2.4


# ------------------------------------------------- energy and probability


def test_radiated_energy_scales_as_charge_squared():
    prof = PotentialProfile(axis="time", v_past=[0.0, 0.0, 0.0, 0.25], x1=2.0, x2=1.0)
    traj = integrate_trajectory(prof, [0.0, 0.0, 0.35], 1.0)
    w = default_window(traj, pad_fraction=1.5, width_fraction=1.0)
    one = radiated_energy(traj, w, CHARGE, n_polar=4, n_azimuth=8)
    two = radiated_energy(traj, w, 2 * CHARGE, n_polar=4, n_azimuth=8)
    assert one.physical > 0
    assert one.k_max > 0 and one.octaves > 0
    assert abs(two.physical - 4 * one.physical) < 1e-13 * one.physical


def test_emission_probability_two_pulse_additivity():
    """Well-separated identical pulses double the probability, within 2%."""
    single_prof = PotentialProfile(axis="time", v_past=[0.0, 0.0, 0.0, 0.0],
                                   x1=5.0, x2=1.0, shape="bump",
                                   amplitude=[0.0, 0.25, 0.0, 0.0])
    double_prof = PotentialProfile(axis="time", v_past=[0.0, 0.0, 0.0, 0.0],
                                   x1=17.0, x2=1.0, shape="double_bump",
                                   amplitude=[0.0, 0.25, 0.0, 0.0])
    p = [0.0, 0.0, 0.3]
    single = integrate_trajectory(single_prof, p, 1.0)
    double = integrate_trajectory(double_prof, p, 1.0)
    rep_s = emission_probability_reduced(single, default_window(single),
                                         n_polar=4, n_azimuth=8, k_max=8.0)
    rep_d = emission_probability_reduced(double, default_window(double),
                                         n_polar=4, n_azimuth=8, k_max=8.0)
    # the two evaluation forms agree and the physical part is positive
    assert abs(rep_s.difference) < 1e-8 * abs(rep_s.assembled)
    assert rep_s.physical > 0
    assert abs(rep_d.physical / rep_s.physical - 2.0) < 0.04


def test_amplitude_shift_vanishes_without_acceleration():
    """Zero acceleration: the amplitude-derivative route returns ~0."""
    prof = PotentialProfile(axis="time", v_past=[0.0, 0.0, 0.0, 0.0], x1=2.0, x2=1.0)
    family = build_trajectory_family(prof, [0.0, 0.0, 0.35], 1.0)
    w = default_window(family.center, pad_fraction=1.5, width_fraction=1.0)
    shift = shift_from_amplitudes(family, w, CHARGE, n_polar=4, n_azimuth=8)
    assert np.max(np.abs(shift)) < 1e-8
