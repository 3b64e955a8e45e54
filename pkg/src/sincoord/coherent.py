"""Lowering-operator eigenstates and their series coefficients.

An eigenstate of the lowering operator with eigenvalue lambda expands over
the eigenbasis with coefficients c_n = lambda^n / (C_1 C_2 ... C_n), where
C_k are the lowering coefficients.  For the deformed oscillator the summed
series collapses to a confluent hypergeometric closed form, checked here
term against an independent 1F1 evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SeriesNotConverged, ZeroRecurrenceCoefficient
from .operators import Normalization, build_ladder
from .polynomials import eval_all, recurrence
from .report import CheckReport, make_report
from .special import hyp1f1
from .systems import DeformedOscillator, SystemSpec, validate


@dataclass(frozen=True)
class CoherentCoefficients:
    """Expansion coefficients c_n, n = 0 .. truncation, with c_0 = 1."""

    lam: complex
    coeffs: np.ndarray
    truncation: int
    tail: float  # magnitude of the last retained coefficient


def coherent_coeffs(spec: SystemSpec, lam: complex, truncation: int) -> CoherentCoefficients:
    """c_n = lam^n / prod_{k=1..n} C_k via the stable one-step recursion."""
    validate(spec)
    lam = complex(lam)
    rec = recurrence(spec)
    coeffs = np.zeros(truncation + 1, dtype=complex)
    coeffs[0] = 1.0
    for n in range(1, truncation + 1):
        c_n = rec.C(n)
        if c_n == 0.0:
            raise ZeroRecurrenceCoefficient(f"C_{n} = 0")
        coeffs[n] = lam * coeffs[n - 1] / c_n
    return CoherentCoefficients(
        lam=lam,
        coeffs=coeffs,
        truncation=truncation,
        tail=float(abs(coeffs[truncation])),
    )


def check_eigenvalue(
    spec: SystemSpec,
    lam: complex,
    truncation: int,
    guard: int,
    tol: float = 1e-10,
) -> CheckReport:
    """a_minus c = lam c on the coefficient vector, away from the guard band."""
    state = coherent_coeffs(spec, lam, truncation)
    n_dim = truncation + guard
    pair = build_ladder(spec, n_dim, guard, Normalization.UNIT)
    padded = np.zeros(n_dim, dtype=complex)
    padded[: truncation + 1] = state.coeffs
    residual = pair.a_minus.entries @ padded - state.lam * padded
    worst = 0.0
    for n in range(truncation - guard):
        worst = max(
            worst,
            abs(residual[n]) / max(1.0, abs(state.lam * padded[n])),
        )
    return make_report(
        "coherent_eigenvalue",
        worst,
        tol,
        truncation=truncation,
        G=guard,
        lam_real=float(state.lam.real),
        lam_imag=float(state.lam.imag),
    )


def check_mp_hypergeometric(
    a: float,
    lam: complex,
    x_samples,
    truncation: int = 60,
    tol: float = 1e-10,
) -> CheckReport:
    """Deformed-oscillator eigenstate series vs its 1F1 closed form.

    Compares sum_n c_n P_n(x) against e^{2 i lam} 1F1(a + ix; 2a; -4 i lam)
    pointwise.  Raises SeriesNotConverged if the last retained term is not
    negligible at some sample.
    """
    spec = DeformedOscillator(a)
    lam = complex(lam)
    xs = np.atleast_1d(np.asarray(x_samples, dtype=float))
    state = coherent_coeffs(spec, lam, truncation)
    polys = eval_all(spec, truncation, xs)
    series = (state.coeffs[:, None] * polys).sum(axis=0)
    last_terms = np.abs(state.coeffs[truncation] * polys[truncation])
    scale = np.maximum(1.0, np.abs(series))
    if np.any(last_terms > 1e-14 * scale):
        raise SeriesNotConverged(
            f"series tail {last_terms.max():.3e} above 1e-14 at truncation "
            f"{truncation}"
        )
    worst = 0.0
    for x, lhs in zip(xs, series):
        rhs = np.exp(2j * lam) * hyp1f1(complex(a, x), 2.0 * a, -4j * lam)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return make_report(
        "coherent_1f1",
        worst,
        tol,
        a=a,
        samples=len(xs),
        truncation=truncation,
        lam_real=float(lam.real),
        lam_imag=float(lam.imag),
    )
