"""Classical sinusoidal dynamics: closed form, flow oracle, closure checks.

The coordinate eta(x) obeys a driven-oscillator closure under the double
Poisson bracket, so along any energy surface it moves on a single circular
frequency sqrt(R0(H0)) around the offset -R-1(H0)/R0(H0).  The closed form
built from that is checked here against a fixed-step RK4 integration of
Hamilton's equations that knows nothing about the closure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainEscape,
    EnergyDrift,
    NonOscillatory,
    SingularDerivative,
    UnsupportedSystem,
)
from .report import CheckReport, make_report
from .systems import (
    AskeyWilson,
    DeformedOscillator,
    PoschlTeller,
    SystemSpec,
    classical_r_polynomials,
    r_polynomials,
    validate,
)


@dataclass(frozen=True)
class ClassicalState:
    """Phase-space point; x must lie strictly inside the system's domain."""

    x: float
    p: float


@dataclass(frozen=True)
class Trajectory:
    """Sampled eta(x(t)) along a numerically integrated flow."""

    times: np.ndarray
    eta_values: np.ndarray
    energy_drift: float = 0.0


def domain(spec: SystemSpec) -> tuple[float, float]:
    match spec:
        case PoschlTeller():
            return (0.0, 0.5 * math.pi)
        case DeformedOscillator():
            return (-math.inf, math.inf)
        case AskeyWilson():
            return (0.0, math.pi)
    raise UnsupportedSystem(type(spec).__name__)


def eta_of_x(spec: SystemSpec, x):
    match spec:
        case PoschlTeller():
            return np.cos(2.0 * np.asarray(x, dtype=float))
        case DeformedOscillator():
            return np.asarray(x, dtype=float) + 0.0
        case AskeyWilson():
            return np.cos(np.asarray(x, dtype=float))
    raise UnsupportedSystem(type(spec).__name__)


def _eta_derivs(spec: SystemSpec, x: float) -> tuple[float, float]:
    """(d eta/dx, d^2 eta/dx^2) at a scalar point."""
    match spec:
        case PoschlTeller():
            return (-2.0 * math.sin(2.0 * x), -4.0 * math.cos(2.0 * x))
        case DeformedOscillator():
            return (1.0, 0.0)
        case AskeyWilson():
            return (-math.sin(x), -math.cos(x))
    raise UnsupportedSystem(type(spec).__name__)


def _aw_potential(spec: AskeyWilson, x: float):
    """V(z), dV/dx, for z = exp(ix), as complex values."""
    z = cmath.exp(1j * x)
    z2 = z * z
    value = 1.0 + 0j
    log_deriv = 4.0 * z / (1.0 - z2)
    for aj in spec.params:
        value *= 1.0 - aj * z
        if aj != 0.0:
            log_deriv -= aj / (1.0 - aj * z)
    value /= (1.0 - z2) ** 2
    return value, 1j * z * value * log_deriv


def hamiltonian(spec: SystemSpec, x: float, p: float) -> float:
    match spec:
        case PoschlTeller(g=g, h=h):
            u = g / math.tan(x) - h * math.tan(x)
            return 0.5 * p * p + 0.5 * u * u
        case DeformedOscillator(a=a):
            return math.hypot(a, x) * math.cosh(p) - a
        case AskeyWilson():
            vc, _ = _aw_potential(spec, x)
            return abs(vc) * math.cosh(spec.log_q * p) - vc.real
    raise UnsupportedSystem(type(spec).__name__)


def _partials(spec: SystemSpec, x: float, p: float) -> tuple[float, float]:
    """(dH/dx, dH/dp)."""
    match spec:
        case PoschlTeller(g=g, h=h):
            sx, cx = math.sin(x), math.cos(x)
            u = g * cx / sx - h * sx / cx
            du = -g / (sx * sx) - h / (cx * cx)
            return (u * du, p)
        case DeformedOscillator(a=a):
            r = math.hypot(a, x)
            return (x * math.cosh(p) / r, r * math.sinh(p))
        case AskeyWilson():
            gam = spec.log_q
            vc, dvc = _aw_potential(spec, x)
            w = abs(vc)
            wx = (vc.conjugate() * dvc).real / w
            return (
                wx * math.cosh(gam * p) - dvc.real,
                gam * w * math.sinh(gam * p),
            )
    raise UnsupportedSystem(type(spec).__name__)


def _second_partials(spec: SystemSpec, x: float, p: float) -> tuple[float, float]:
    """(d2H/dp2, d2H/dpdx)."""
    match spec:
        case PoschlTeller():
            return (1.0, 0.0)
        case DeformedOscillator(a=a):
            r = math.hypot(a, x)
            return (r * math.cosh(p), x * math.sinh(p) / r)
        case AskeyWilson():
            gam = spec.log_q
            vc, dvc = _aw_potential(spec, x)
            w = abs(vc)
            wx = (vc.conjugate() * dvc).real / w
            return (
                gam * gam * w * math.cosh(gam * p),
                gam * wx * math.sinh(gam * p),
            )
    raise UnsupportedSystem(type(spec).__name__)


def poisson_h_eta(spec: SystemSpec, x: float, p: float) -> float:
    """{H, eta} = -dH/dp * eta'(x)."""
    _, dhdp = _partials(spec, x, p)
    deta, _ = _eta_derivs(spec, x)
    return -dhdp * deta


def poisson_h_h_eta(spec: SystemSpec, x: float, p: float) -> float:
    """{H, {H, eta}} from analytic first and second partials."""
    dhdx, dhdp = _partials(spec, x, p)
    d2p2, d2pdx = _second_partials(spec, x, p)
    deta, d2eta = _eta_derivs(spec, x)
    return -dhdx * d2p2 * deta + dhdp * d2pdx * deta + dhdp * dhdp * d2eta


def poisson_h_eta_fd(spec: SystemSpec, x: float, p: float, step: float = 1e-6) -> float:
    """{H, eta} with all derivatives replaced by central differences."""
    dhdp = (hamiltonian(spec, x, p + step) - hamiltonian(spec, x, p - step)) / (2 * step)
    deta = float(eta_of_x(spec, x + step) - eta_of_x(spec, x - step)) / (2 * step)
    return -dhdp * deta


def poisson_h_h_eta_fd(spec: SystemSpec, x: float, p: float, step: float = 1e-6) -> float:
    """{H, {H, eta}} with the outer bracket done by central differences."""
    inner = lambda xx, pp: poisson_h_eta(spec, xx, pp)
    dfdx = (inner(x + step, p) - inner(x - step, p)) / (2 * step)
    dfdp = (inner(x, p + step) - inner(x, p - step)) / (2 * step)
    dhdx = (hamiltonian(spec, x + step, p) - hamiltonian(spec, x - step, p)) / (2 * step)
    dhdp = (hamiltonian(spec, x, p + step) - hamiltonian(spec, x, p - step)) / (2 * step)
    return dhdx * dfdp - dhdp * dfdx


def _require_inside(spec: SystemSpec, x: float) -> None:
    lo, hi = domain(spec)
    if not lo < x < hi:
        raise DomainEscape(f"x={x} left the open domain ({lo}, {hi})")


def closed_form_eta(spec: SystemSpec, state: ClassicalState, t):
    """eta(x(t)) from the single-frequency closed form.

    Uses the classical closure coefficients at the conserved energy H0 and
    the initial bracket {H, eta}; raises NonOscillatory if R0(H0) <= 0.
    """
    validate(spec)
    _require_inside(spec, state.x)
    closure = classical_r_polynomials(spec)
    h0 = hamiltonian(spec, state.x, state.p)
    r0v = closure.r0(h0)
    if r0v <= 0.0:
        raise NonOscillatory(f"R0(H0)={r0v} <= 0 at energy {h0}")
    omega = math.sqrt(r0v)
    ratio = closure.rm1(h0) / r0v
    bracket0 = poisson_h_eta(spec, state.x, state.p)
    eta0 = float(eta_of_x(spec, state.x))
    ts = np.asarray(t, dtype=float)
    values = (
        -bracket0 * np.sin(omega * ts) / omega
        - ratio
        + (eta0 + ratio) * np.cos(omega * ts)
    )
    if ts.ndim == 0:
        return float(values)
    return values


def period(spec: SystemSpec, state: ClassicalState) -> float:
    """2 pi / sqrt(R0(H0)): the oscillation period at this state's energy."""
    closure = classical_r_polynomials(spec)
    r0v = closure.r0(hamiltonian(spec, state.x, state.p))
    if r0v <= 0.0:
        raise NonOscillatory(f"R0(H0)={r0v} <= 0")
    return 2.0 * math.pi / math.sqrt(r0v)


def flow_oracle(
    spec: SystemSpec, state: ClassicalState, t_end: float, dt: float
) -> Trajectory:
    """Fixed-step RK4 integration of dx/dt = dH/dp, dp/dt = -dH/dx.

    Raises DomainEscape if the position leaves the open domain and
    EnergyDrift if the conserved energy moves by more than 1e-6 relative.
    """
    validate(spec)
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end <= 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    _require_inside(spec, state.x)
    steps = max(1, int(round(t_end / dt)))
    times = np.arange(steps + 1) * dt
    etas = np.empty(steps + 1, dtype=float)
    x, p = state.x, state.p
    e0 = hamiltonian(spec, x, p)
    guard = 1e-6 * max(1.0, abs(e0))
    etas[0] = eta_of_x(spec, x)
    max_drift = 0.0

    def rhs(xx: float, pp: float) -> tuple[float, float]:
        dhdx, dhdp = _partials(spec, xx, pp)
        return dhdp, -dhdx

    for k in range(steps):
        k1x, k1p = rhs(x, p)
        k2x, k2p = rhs(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)
        k3x, k3p = rhs(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)
        k4x, k4p = rhs(x + dt * k3x, p + dt * k3p)
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        _require_inside(spec, x)
        drift = abs(hamiltonian(spec, x, p) - e0)
        if drift > guard:
            raise EnergyDrift(
                f"energy moved by {drift} (guard {guard}) at t={times[k + 1]}"
            )
        max_drift = max(max_drift, drift)
        etas[k + 1] = eta_of_x(spec, x)
    return Trajectory(times=times, eta_values=etas, energy_drift=max_drift)


def sample_states(spec: SystemSpec, count: int, seed: int = 42) -> list[ClassicalState]:
    """Seeded phase-space samples comfortably inside the domain."""
    rng = np.random.default_rng(seed)
    match spec:
        case PoschlTeller():
            xs = rng.uniform(0.35, 1.2, count)
            ps = rng.uniform(-1.2, 1.2, count)
        case DeformedOscillator():
            xs = rng.uniform(-1.5, 1.5, count)
            ps = rng.uniform(-1.0, 1.0, count)
        case AskeyWilson():
            xs = rng.uniform(0.7, 2.4, count)
            ps = rng.uniform(-0.9, 0.9, count)
        case _:
            raise UnsupportedSystem(type(spec).__name__)
    return [ClassicalState(float(x), float(p)) for x, p in zip(xs, ps)]


def check_closed_vs_flow(
    spec: SystemSpec,
    states: list[ClassicalState],
    dt: float = 1e-3,
    periods: float = 3.0,
    tol: float = 1e-6,
    drift_tol: float = 1e-8,
) -> list[CheckReport]:
    """Closed form against the RK4 oracle over a fixed number of periods.

    Returns two reports: the trajectory deviation and the energy drift of
    the oracle itself.
    """
    worst_dev = 0.0
    worst_drift = 0.0
    for state in states:
        t_end = periods * period(spec, state)
        traj = flow_oracle(spec, state, t_end, dt)
        closed = closed_form_eta(spec, state, traj.times)
        worst_dev = max(worst_dev, float(np.max(np.abs(closed - traj.eta_values))))
        h0 = abs(hamiltonian(spec, state.x, state.p))
        worst_drift = max(worst_drift, traj.energy_drift / max(1.0, h0))
    return [
        make_report(
            "classical_closed_vs_flow",
            worst_dev,
            tol,
            states=len(states),
            dt=dt,
            periods=periods,
        ),
        make_report(
            "classical_energy_drift", worst_drift, drift_tol, states=len(states)
        ),
    ]


def check_poisson_closure(
    spec: SystemSpec, states: list[ClassicalState], tol: float = 1e-6
) -> CheckReport:
    """{H, {H, eta}} = -eta R0(H) - R-1(H) at the given phase-space points."""
    validate(spec)
    closure = classical_r_polynomials(spec)
    worst = 0.0
    for state in states:
        _require_inside(spec, state.x)
        lhs = poisson_h_h_eta(spec, state.x, state.p)
        h0 = hamiltonian(spec, state.x, state.p)
        rhs = -float(eta_of_x(spec, state.x)) * closure.r0(h0) - closure.rm1(h0)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return make_report("poisson_closure", worst, tol, states=len(states))


def reconstruct_potential(coord, r00: float, rm10: float, c: float, r1: float):
    """Potential from the coordinate map and closure constants:
    V(x) = (r00 eta^2 / 2 + rm10 eta + c) / (d eta/dx)^2 - r1 / 8.

    `coord` supplies eta(x) and deta_dx(x); evaluation raises
    SingularDerivative where the derivative vanishes.
    """

    def potential(x: float) -> float:
        d = float(coord.deta_dx(x))
        if d == 0.0:
            raise SingularDerivative(f"d eta/dx = 0 at x={x}")
        e = float(coord.eta(x))
        return (0.5 * r00 * e * e + rm10 * e + c) / (d * d) - r1 / 8.0

    return potential


def pt_reference_potential(g: float, h: float, x):
    """The trigonometric well with ground-state energy shifted to zero."""
    xs = np.asarray(x, dtype=float)
    return (
        0.5 * g * (g - 1.0) / np.sin(xs) ** 2
        + 0.5 * h * (h - 1.0) / np.cos(xs) ** 2
        - 0.5 * (g + h) ** 2
    )


def check_potential_reconstruction(
    spec: SystemSpec, n_points: int = 50, tol: float = 1e-10
) -> CheckReport:
    """Rebuild the trigonometric-well potential from the closure constants.

    r00, rm10, r1 come from the spectral model; the integration constant is
    fixed at a single interior point, then the reconstruction is compared
    pointwise against the reference potential.
    """
    if not isinstance(spec, PoschlTeller):
        raise UnsupportedSystem(
            "potential reconstruction is exercised on the trigonometric well"
        )
    from .polynomials import weight  # local import to avoid cycle at import time

    wf = weight(spec)
    model = r_polynomials(spec)
    r00 = model.r0(0.0)
    rm10 = model.rm1(0.0)
    r1 = model.r1(0.0)
    x_fit = 0.7
    eta_fit = float(wf.eta(x_fit))
    deta_fit = float(wf.deta_dx(x_fit))
    v_fit = float(pt_reference_potential(spec.g, spec.h, x_fit))
    const = (v_fit + r1 / 8.0) * deta_fit**2 - 0.5 * r00 * eta_fit**2 - rm10 * eta_fit
    potential = reconstruct_potential(wf, r00, rm10, const, r1)
    xs = np.linspace(0.15, 0.5 * math.pi - 0.15, n_points)
    target = pt_reference_potential(spec.g, spec.h, xs)
    worst = max(abs(potential(float(x)) - float(v)) for x, v in zip(xs, target))
    return make_report(
        "potential_reconstruction", worst, tol, points=n_points, c=const
    )


def write_trajectory_csv(
    path: str, times: np.ndarray, eta_closed: np.ndarray, eta_numeric: np.ndarray
) -> None:
    """Four-column trajectory export: t, eta_closed, eta_numeric, abs_err."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("t,eta_closed,eta_numeric,abs_err\n")
        for t, c, n in zip(times, eta_closed, eta_numeric):
            handle.write(
                f"{t:.17g},{c:.17g},{n:.17g},{abs(c - n):.17g}\n"
            )
