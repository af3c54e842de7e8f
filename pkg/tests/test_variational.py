"""Linearized flow: Hessian blocks, Jacobi fields, symplectic identities."""

import numpy as np
import pytest

from rrshift import (classical_shift_green, hamiltonian_hessian, integrate_trajectory,
                     jacobi_basis, jacobi_field, kinematics, retarded_perturbation,
                     symplectic_product)
from rrshift.potentials import axis_index, eval_potential

ALPHA = 0.0071619724391352765  # e = 0.3


def hamiltonian_value(traj, x, P, t):
    """Independent H(x, P, t) for the finite-difference oracle."""
    prof = traj.profile
    s = t if prof.axis == "time" else x[axis_index(prof)]
    pot = eval_potential(prof, s)
    mech = P - pot[1:]
    return np.sqrt(mech @ mech + traj.mass**2) + pot[0]


def test_hessian_matches_second_differences(time_traj, spatial_traj):
    """All three blocks agree with second central differences of H."""
    h = 1e-4
    eye = np.eye(3)
    for traj in (time_traj, spatial_traj):
        for t in (-1.8, -1.3):
            kin = kinematics(traj, t)
            x0, p0 = np.asarray(kin.x), np.asarray(kin.P)

            def val(dx, dp):
                return hamiltonian_value(traj, x0 + dx, p0 + dp, t)

            blocks = hamiltonian_hessian(traj, t)
            scale = np.max(np.abs(blocks.h_pp))
            for i in range(3):
                for j in range(3):
                    fd_pp = (val(0, h * (eye[i] + eye[j])) - val(0, h * (eye[i] - eye[j]))
                             - val(0, h * (eye[j] - eye[i])) + val(0, -h * (eye[i] + eye[j]))) / (4 * h * h)
                    fd_xp = (val(h * eye[i], h * eye[j]) - val(h * eye[i], -h * eye[j])
                             - val(-h * eye[i], h * eye[j]) + val(-h * eye[i], -h * eye[j])) / (4 * h * h)
                    fd_xx = (val(h * (eye[i] + eye[j]), 0) - val(h * (eye[i] - eye[j]), 0)
                             - val(h * (eye[j] - eye[i]), 0) + val(-h * (eye[i] + eye[j]), 0)) / (4 * h * h)
                    assert abs(blocks.h_pp[i, j] - fd_pp) < 1e-6 * scale
                    assert abs(blocks.h_xp[i, j] - fd_xp) < 1e-6 * scale
                    assert abs(blocks.h_xx[i, j] - fd_xx) < 1e-6 * scale


def test_hessian_free_particle_closed_form(free_traj):
    """H_PP = (I - v v^T)/(gamma m), position blocks vanish."""
    kin = kinematics(free_traj, -1.0)
    v = np.asarray(kin.v)
    expected = (np.eye(3) - np.outer(v, v)) / (kin.gamma * free_traj.mass)
    blocks = hamiltonian_hessian(free_traj, -1.0)
    np.testing.assert_allclose(blocks.h_pp, expected, rtol=0, atol=1e-12)
    assert np.array_equal(blocks.h_xx, np.zeros((3, 3)))
    assert np.array_equal(blocks.h_xp, np.zeros((3, 3)))
    assert np.max(np.abs(blocks.h_pp - blocks.h_pp.T)) < 1e-12


def test_jacobi_initial_conditions(time_traj):
    """Unit momentum kick at s: dx(s) = 0 and dp(s) = e_j exactly."""
    s = -1.2
    for j in range(3):
        field = jacobi_field(time_traj, j, s)
        np.testing.assert_allclose(field.dx(s), np.zeros(3), rtol=0, atol=1e-14)
        np.testing.assert_allclose(field.dp(s), np.eye(3)[j], rtol=0, atol=1e-14)


def test_jacobi_free_particle_closed_form(free_traj):
    """Free response: dx(t; s) = (t - s)(I - v v^T) e_j / (gamma m), dp constant."""
    s = -1.5
    kin = kinematics(free_traj, -0.5)
    v = np.asarray(kin.v)
    proj = (np.eye(3) - np.outer(v, v)) / (kin.gamma * free_traj.mass)
    for j in range(3):
        field = jacobi_field(free_traj, j, s)
        for t in (-1.0, -0.25, 0.0):
            np.testing.assert_allclose(field.dx(t), (t - s) * proj[:, j],
                                       rtol=0, atol=1e-10)
            np.testing.assert_allclose(field.dp(t), np.eye(3)[j], rtol=0, atol=1e-12)


def test_jacobi_matches_trajectory_differences(time_traj):
    """Kick response equals central differences of re-anchored trajectories."""
    eps = 1e-5
    basis = jacobi_basis(time_traj, 0.0)
    rng = np.random.default_rng(9)
    ts = rng.uniform(time_traj.t_min, -0.05, 8)
    scale = max(np.max(np.abs(basis[j].dx(ts))) for j in range(3))
    for j in range(3):
        kick = np.eye(3)[j] * eps
        plus = integrate_trajectory(time_traj.profile, time_traj.p_final + kick,
                                    time_traj.mass, tol=1e-12)
        minus = integrate_trajectory(time_traj.profile, time_traj.p_final - kick,
                                     time_traj.mass, tol=1e-12)
        for t in ts:
            fd = (plus.position(t) - minus.position(t)) / (2 * eps)
            assert np.max(np.abs(basis[j].dx(t) - fd)) < 1e-5 * scale


def test_symplectic_product_antisymmetry(time_traj):
    field = jacobi_field(time_traj, 0, -1.0)
    assert symplectic_product(field, field, -0.4) == 0.0


def test_symplectic_product_conserved(time_traj):
    """Products between kick responses are constant along the flow."""
    ts = np.linspace(time_traj.t_min, 0.0, 30)
    basis_0 = jacobi_basis(time_traj, 0.0, tol=3e-13)
    basis_u = jacobi_basis(time_traj, 0.5 * time_traj.t_min, tol=3e-13)
    drift, scale = 0.0, 0.0
    for a in basis_0:
        for b in basis_u:
            vals = symplectic_product(a, b, ts)
            drift = max(drift, np.max(vals) - np.min(vals))
            scale = max(scale, np.max(np.abs(vals)))
    assert drift < 1e-9 * scale


def test_swap_identity(time_traj):
    """-dx_(j)^i(s; u) = dx_(i)^j(u; s) on sampled time pairs."""
    pairs = [(-1.9, -0.3), (-1.4, -0.8), (-0.6, -1.8)]
    for s, u in pairs:
        for i in range(3):
            for j in range(3):
                left = -jacobi_field(time_traj, j, u).dx(s)[i]
                right = jacobi_field(time_traj, i, s).dx(u)[j]
                assert abs(left - right) < 1e-7


def test_time_axis_momentum_response_constant(time_traj):
    """No x-dependence: dp stays equal to the kick everywhere."""
    ts = np.linspace(time_traj.t_min, 0.0, 25)
    for j, field in enumerate(jacobi_basis(time_traj, 0.0)):
        for t in ts:
            np.testing.assert_allclose(field.dp(t), np.eye(3)[j], rtol=0, atol=1e-11)


def test_perturbation_zero_coupling(time_traj):
    """alpha_c = 0 gives the zero perturbation identically."""
    pert = retarded_perturbation(time_traj, 0.0)
    assert np.array_equal(pert.final_shift, np.zeros(3))
    for t in (-1.5, -0.5, 0.0):
        assert np.array_equal(pert.delta_x(t), np.zeros(3))
        assert np.array_equal(pert.delta_p(t), np.zeros(3))


def test_perturbation_linear_in_coupling(time_traj):
    one = retarded_perturbation(time_traj, ALPHA)
    two = retarded_perturbation(time_traj, 2 * ALPHA)
    np.testing.assert_allclose(two.final_shift, 2 * one.final_shift, rtol=1e-10)


def test_perturbation_matches_green_quadrature(time_traj):
    """Direct integration and the kick-response quadrature agree to 1e-6."""
    direct = retarded_perturbation(time_traj, ALPHA).final_shift
    green = classical_shift_green(time_traj, ALPHA)
    assert np.max(np.abs(direct - green)) < 1e-6 * np.linalg.norm(green)
