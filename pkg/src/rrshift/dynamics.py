"""Unperturbed relativistic motion through a one-coordinate potential.

Hamiltonian flow of H = sqrt((P - V(s))^2 + m^2) + V^0(s) with s either
coordinate time or one spatial coordinate.  The trajectory is anchored at
the origin with prescribed final canonical momentum,

    x(0) = 0,   P(0) = p_final,

and integrated backward to a time t_min at which the particle sits strictly
in the constant-potential past region (margin of at least 10% of the
acceleration duration).  Velocity, acceleration, and jerk come from closed
chain-rule expressions through the potential derivatives — no numerical
differencing anywhere on this path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .potentials import PotentialProfile, axis_index, eval_derivative, validate_profile

__all__ = [
    "Trajectory",
    "Kinematics",
    "ReflectedTrajectoryError",
    "integrate_trajectory",
    "kinematics",
    "external_coordinate_force",
]


class ReflectedTrajectoryError(ValueError):
    """The particle fails to traverse the region with dx^a/dt > 0."""


@dataclass(frozen=True)
class Kinematics:
    """Pointwise state of the unperturbed flow (arrays broadcast over t)."""

    t: np.ndarray
    x: np.ndarray
    P: np.ndarray
    w: np.ndarray       # mechanical momentum P - V
    sigma: np.ndarray   # local energy sqrt(w^2 + m^2) = m dt/dtau
    v: np.ndarray
    a: np.ndarray
    adot: np.ndarray
    gamma: np.ndarray


class Trajectory:
    """Dense backward-anchored solution plus exact coasting asymptotes."""

    def __init__(self, profile, p_final, mass, tol, sol, t_min, acc_start, acc_end, breakpoints):
        self.profile = profile
        self.p_final = np.asarray(p_final, dtype=float)
        self.mass = float(mass)
        self.tol = float(tol)
        self.sol = sol
        self.t_min = float(t_min)
        self.acc_start = float(acc_start)   # earliest accelerated time
        self.acc_end = float(acc_end)       # latest accelerated time
        self.breakpoints = tuple(breakpoints)  # interior C^3 joins, in t
        x_in, _ = self.state(t_min)
        self._x_in = x_in
        self._v_in = kinematics(self, t_min).v
        self._v_out = kinematics(self, 0.0).v

    # -- state access ---------------------------------------------------

    def state(self, t):
        """(x, P) on the integrated domain [t_min, 0]."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < self.t_min - 1e-12) or np.any(t_arr > 1e-12):
            raise ValueError(f"t outside trajectory domain [{self.t_min}, 0]")
        y = self.sol(np.clip(t_arr, self.t_min, 0.0))
        if t_arr.ndim == 0:
            return y[:3], y[3:]
        return y[:3].T, y[3:].T

    def position(self, t):
        """x(t) for any t; outside [t_min, 0] the exact coasting line is used
        (valid because the potential is constant there)."""
        t_arr = np.asarray(t, dtype=float)
        scalar = t_arr.ndim == 0
        t_arr = np.atleast_1d(t_arr)
        out = np.empty(t_arr.shape + (3,))
        inside = (t_arr >= self.t_min) & (t_arr <= 0.0)
        if np.any(inside):
            out[inside] = self.sol(t_arr[inside])[:3].T
        before = t_arr < self.t_min
        if np.any(before):
            out[before] = self._x_in + np.outer(t_arr[before] - self.t_min, self._v_in)
        after = t_arr > 0.0
        if np.any(after):
            out[after] = np.outer(t_arr[after], self._v_out)
        return out[0] if scalar else out

    def velocity(self, t):
        """dx/dt for any t (constant outside the integrated domain)."""
        t_arr = np.asarray(t, dtype=float)
        scalar = t_arr.ndim == 0
        t_arr = np.atleast_1d(t_arr)
        out = np.empty(t_arr.shape + (3,))
        inside = (t_arr >= self.t_min) & (t_arr <= 0.0)
        if np.any(inside):
            out[inside] = kinematics(self, t_arr[inside]).v
        out[t_arr < self.t_min] = self._v_in
        out[t_arr > 0.0] = self._v_out
        return out[0] if scalar else out

    def xi(self, n, t):
        """Retarded phase coordinate xi = t - n.x(t) for unit direction n."""
        t_arr = np.asarray(t, dtype=float)
        return t_arr - self.position(t_arr) @ np.asarray(n, dtype=float)

    @property
    def acc_duration(self) -> float:
        return self.acc_end - self.acc_start

    def coordinate_time(self, s: float) -> float:
        """Time at which the profile coordinate reaches the value s."""
        ai = axis_index(self.profile)
        if ai is None:
            return float(s)
        f = lambda t: self.sol(t)[ai] - s
        return brentq(f, self.t_min, 0.0, xtol=1e-13)


def _coordinate_value(profile, ai, t, x):
    return t if ai is None else x[ai]


def _rhs_factory(profile, mass, ai):
    e_a = None if ai is None else np.eye(3)[ai]

    def rhs(t, y):
        x, P = y[:3], y[3:]
        s = t if ai is None else x[ai]
        V = eval_derivative(profile, s, 0)
        w = P - V[1:]
        sigma = np.sqrt(w @ w + mass * mass)
        v = w / sigma
        if ai is None:
            dP = np.zeros(3)
        else:
            dV = eval_derivative(profile, s, 1)
            dP = e_a * (v @ dV[1:] - dV[0])
        return np.concatenate([v, dP])

    return rhs


def integrate_trajectory(
    profile: PotentialProfile,
    p_final,
    mass: float,
    tol: float = 1e-10,
    t_min: float | None = None,
) -> Trajectory:
    """Build the unperturbed trajectory anchored at x(0)=0, P(0)=p_final.

    tol is applied as both rtol and atol of the adaptive integrator.
    An explicit t_min (used to share a common domain across a family of
    re-anchored trajectories) must lie at or before the automatic choice.
    """
    report = validate_profile(profile)
    if not report.ok:
        raise ValueError("invalid profile: " + "; ".join(report.failures))
    if mass <= 0.0:
        raise ValueError("mass must be positive")
    p_final = np.asarray(p_final, dtype=float)
    ai = axis_index(profile)

    if ai is not None and p_final[ai] <= 0.0:
        raise ReflectedTrajectoryError(
            "p_final component along the profile axis must be positive for traversal"
        )

    y0 = np.concatenate([np.zeros(3), p_final])
    rhs = _rhs_factory(profile, mass, ai)
    max_step = 0.5 * profile.width

    if ai is None:
        t_start, t_end = -profile.x1, -profile.x2
    else:
        t_start, t_end = _locate_crossings(profile, mass, rhs, y0, ai, tol, max_step)

    duration = t_end - t_start
    auto_t_min = t_start - 0.1 * duration
    if t_min is None:
        t_min = auto_t_min
    elif t_min > auto_t_min:
        raise ValueError(f"explicit t_min={t_min} leaves less than the 10% past margin")

    events = []
    if ai is not None:
        def reflect(t, y):
            s = y[ai]
            V = eval_derivative(profile, s, 0)
            return (y[3:] - V[1:])[ai]
        reflect.terminal = True
        events.append(reflect)

    res = solve_ivp(
        rhs, (0.0, t_min), y0, method="DOP853", dense_output=True,
        rtol=tol, atol=tol, max_step=max_step, events=events or None,
    )
    if not res.success:
        raise RuntimeError(f"trajectory integration failed: {res.message}")
    if events and res.t_events[0].size:
        raise ReflectedTrajectoryError(
            f"traversal fails: dx^{profile.axis}/dt reaches zero at t={res.t_events[0][0]:.6g}"
        )

    breakpoints = _interior_breakpoints(profile, res.sol, ai, t_min)
    return Trajectory(profile, p_final, mass, tol, res.sol, t_min, t_start, t_end, breakpoints)


def _locate_crossings(profile, mass, rhs, y0, ai, tol, max_step):
    """Backward event search for the times at which x^a crosses -x2, -x1."""

    def cross_hi(t, y):
        return y[ai] + profile.x2

    def cross_lo(t, y):
        return y[ai] + profile.x1

    def reflect(t, y):
        s = y[ai]
        V = eval_derivative(profile, s, 0)
        return (y[3:] - V[1:])[ai]

    cross_lo.terminal = True
    reflect.terminal = True

    p_final = y0[3:]
    v0 = p_final[ai] / np.sqrt(p_final @ p_final + mass * mass)
    span = 4.0 * (profile.x1 + 1.0) / v0
    for _ in range(8):
        res = solve_ivp(
            rhs, (0.0, -span), y0, method="DOP853",
            rtol=tol, atol=tol, max_step=max_step,
            events=[cross_hi, cross_lo, reflect],
        )
        if not res.success:
            raise RuntimeError(f"trajectory probe failed: {res.message}")
        if res.t_events[2].size:
            raise ReflectedTrajectoryError(
                f"traversal fails: dx^{profile.axis}/dt reaches zero at t={res.t_events[2][0]:.6g}"
            )
        if res.t_events[0].size and res.t_events[1].size:
            return float(res.t_events[1][0]), float(res.t_events[0][0])
        span *= 2.0
    raise ReflectedTrajectoryError("particle never leaves the transition region")


_SHAPE_INTERIOR_JOINS = {
    "smoothstep7": (),
    "raised_cosine": (),
    "bump": (0.5,),
    "double_bump": (0.125, 0.25, 0.75, 0.875),
}


def _interior_breakpoints(profile, sol, ai, t_min):
    joins_u = _SHAPE_INTERIOR_JOINS.get(profile.shape, ())
    s_vals = [-profile.x1 + u * profile.width for u in joins_u]
    out = []
    for s in s_vals:
        if ai is None:
            out.append(s)
        else:
            f = lambda t: sol(t)[ai] - s
            lo, hi = t_min, 0.0
            if f(lo) * f(hi) < 0:
                out.append(brentq(f, lo, hi, xtol=1e-13))
    return sorted(out)


def kinematics(traj: Trajectory, t) -> Kinematics:
    """Velocity, acceleration, jerk, and energy factors along the flow.

    Closed forms: with w = P - V and sigma = sqrt(w^2 + m^2),

        a    = (dw/dt - v dsigma/dt) / sigma,
        dadt = (d2w/dt2 - 2 a dsigma/dt - v d2sigma/dt2) / sigma,

    where dw/dt follows from Hamilton's equations and the potential
    derivatives along the relevant coordinate.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    x, P = traj.state(t_arr)

    profile, m = traj.profile, traj.mass
    ai = axis_index(profile)
    s = t_arr if ai is None else x[:, ai]

    V = eval_derivative(profile, s, 0)
    V1 = eval_derivative(profile, s, 1)
    V2 = eval_derivative(profile, s, 2)
    Vs, V1s, V2s = V[:, 1:], V1[:, 1:], V2[:, 1:]
    V1_0, V2_0 = V1[:, 0], V2[:, 0]

    w = P - Vs
    sigma = np.sqrt(np.einsum("ij,ij->i", w, w) + m * m)
    v = w / sigma[:, None]

    if ai is None:
        wdot = -V1s
        wddot = -V2s
    else:
        e_a = np.zeros(3)
        e_a[ai] = 1.0
        v_a = v[:, ai]
        vdV1 = np.einsum("ij,ij->i", v, V1s)
        Pdot = (vdV1 - V1_0)[:, None] * e_a
        wdot = Pdot - V1s * v_a[:, None]

    sigdot = np.einsum("ij,ij->i", v, wdot)
    acc = (wdot - v * sigdot[:, None]) / sigma[:, None]

    if ai is not None:
        a_a = acc[:, ai]
        vdV2 = np.einsum("ij,ij->i", v, V2s)
        adV1 = np.einsum("ij,ij->i", acc, V1s)
        v_a = v[:, ai]
        wddot = (
            (adV1 + vdV2 * v_a - V2_0 * v_a)[:, None] * e_a
            - V2s * (v_a * v_a)[:, None]
            - V1s * a_a[:, None]
        )

    sigddot = (
        np.einsum("ij,ij->i", wdot, wdot)
        + np.einsum("ij,ij->i", w, wddot)
        - sigdot * sigdot
    ) / sigma
    adot = (wddot - 2.0 * acc * sigdot[:, None] - v * sigddot[:, None]) / sigma[:, None]

    gamma = sigma / m  # the mass shell makes m*gamma and sigma one quantity

    if scalar:
        return Kinematics(
            t=t_arr[0], x=x[0], P=P[0], w=w[0], sigma=sigma[0], v=v[0],
            a=acc[0], adot=adot[0], gamma=gamma[0],
        )
    return Kinematics(t=t_arr, x=x, P=P, w=w, sigma=sigma, v=v, a=acc, adot=adot, gamma=gamma)


def external_coordinate_force(traj: Trajectory, t) -> np.ndarray:
    """d/dt (m dx^i/dtau) = dw^i/dt along the unperturbed flow.

    Equals the Lorentz force of the background potential in coordinate-time
    form; for a purely time-dependent potential this is -dV^i/dt.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    kin = kinematics(traj, t_arr)
    profile = traj.profile
    ai = axis_index(profile)
    s = t_arr if ai is None else kin.x[:, ai]
    V1 = eval_derivative(profile, s, 1)
    if ai is None:
        wdot = -V1[:, 1:]
    else:
        e_a = np.zeros(3)
        e_a[ai] = 1.0
        v_a = kin.v[:, ai]
        vdV1 = np.einsum("ij,ij->i", kin.v, V1[:, 1:])
        wdot = (vdV1 - V1[:, 0])[:, None] * e_a - V1[:, 1:] * v_a[:, None]
    return wdot[0] if scalar else wdot
