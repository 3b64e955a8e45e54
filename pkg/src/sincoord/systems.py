"""The three solvable families: parameters, spectra, and frequency data.

Each system carries a "sinusoidal" coordinate eta(x) whose nested commutator
with the Hamiltonian closes on eta and [H, eta] with coefficients that are
low-degree polynomials in H.  This module owns those coefficient polynomials
(R0, R1, R-1), the exact spectra, and the two frequency functions
alpha_pm(E) built from them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Union

import numpy as np

from .errors import ComplexFrequencies, ParameterOutOfRange, UnsupportedSystem
from .report import CheckReport, make_report


@dataclass(frozen=True)
class PoschlTeller:
    """Trigonometric Poschl-Teller well on (0, pi/2) with couplings g, h > 0."""

    g: float
    h: float

    @property
    def alpha(self) -> float:
        return self.g - 0.5

    @property
    def beta(self) -> float:
        return self.h - 0.5


@dataclass(frozen=True)
class DeformedOscillator:
    """Shift-operator deformation of the harmonic oscillator, parameter a > 0.

    Its spectrum is exactly equi-spaced and its eigenpolynomials are the
    Meixner-Pollaczek family at phase pi/2.
    """

    a: float


@dataclass(frozen=True)
class AskeyWilson:
    """Askey-Wilson system: four parameters a1..a4 on top of the base q."""

    a1: float
    a2: float
    a3: float
    a4: float
    q: float

    @property
    def params(self) -> tuple[float, float, float, float]:
        return (self.a1, self.a2, self.a3, self.a4)

    @property
    def b1(self) -> float:
        return self.a1 + self.a2 + self.a3 + self.a4

    @property
    def b3(self) -> float:
        a1, a2, a3, a4 = self.params
        return a1 * a2 * a3 + a1 * a2 * a4 + a1 * a3 * a4 + a2 * a3 * a4

    @property
    def b4(self) -> float:
        return self.a1 * self.a2 * self.a3 * self.a4

    @property
    def log_q(self) -> float:
        return math.log(self.q)

    # Coefficients of the classical closure polynomials.
    @property
    def c1(self) -> float:
        return 1.0 + self.b4

    @property
    def c2(self) -> float:
        return (1.0 - self.b4) ** 2 / 4.0

    @property
    def c3(self) -> float:
        return (self.b1 + self.b3) / 4.0

    @property
    def c4(self) -> float:
        return (1.0 - self.b4) * (self.b1 - self.b3) / 8.0


SystemSpec = Union[PoschlTeller, DeformedOscillator, AskeyWilson]


@dataclass(frozen=True)
class HPoly:
    """Polynomial in the Hamiltonian; coefficients in increasing degree."""

    coeffs: tuple[float, ...]

    def __call__(self, energy):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * energy + c
        return acc


@dataclass(frozen=True)
class SpectralModel:
    """Spectrum plus closure data for one system.

    r0, r1, rm1 are the coefficient polynomials of the double-commutator
    closure; hprime_shift is the constant s in the shifted Hamiltonian
    H' = H + s used by the printed closed forms.
    """

    energy: Callable[[int], float]
    r0: HPoly
    r1: HPoly
    rm1: HPoly
    hprime_shift: float


def validate(spec: SystemSpec) -> None:
    """Raise ParameterOutOfRange unless the parameters satisfy their ranges."""
    match spec:
        case PoschlTeller(g=g, h=h):
            if not g > 0:
                raise ParameterOutOfRange(f"g must be positive, got g={g}")
            if not h > 0:
                raise ParameterOutOfRange(f"h must be positive, got h={h}")
        case DeformedOscillator(a=a):
            if not a > 0:
                raise ParameterOutOfRange(f"a must be positive, got a={a}")
        case AskeyWilson(q=q):
            if not 0.0 < q < 1.0:
                raise ParameterOutOfRange(f"q must lie in (0, 1), got q={q}")
            for name, value in zip(("a1", "a2", "a3", "a4"), spec.params):
                if not -1.0 < value < 1.0:
                    raise ParameterOutOfRange(
                        f"{name} must lie in (-1, 1), got {name}={value}"
                    )
            if not spec.b4 < q:
                raise ParameterOutOfRange(
                    f"a1*a2*a3*a4 = {spec.b4} must stay below q = {q}"
                )
        case _:
            raise UnsupportedSystem(type(spec).__name__)


def energy(spec: SystemSpec, n: int) -> float:
    """n-th energy level; the factorised convention fixes energy(0) = 0."""
    if n < 0:
        raise ParameterOutOfRange(f"level index must be >= 0, got n={n}")
    match spec:
        case PoschlTeller(g=g, h=h):
            return 2.0 * n * (n + g + h)
        case DeformedOscillator():
            return float(n)
        case AskeyWilson(q=q):
            return (q ** -n - 1.0) * (1.0 - spec.b4 * q ** (n - 1)) / 2.0
    raise UnsupportedSystem(type(spec).__name__)


def energies(spec: SystemSpec, count: int) -> np.ndarray:
    """Levels 0 .. count-1 as a float array."""
    return np.array([energy(spec, n) for n in range(count)], dtype=float)


@lru_cache(maxsize=None)
def r_polynomials(spec: SystemSpec) -> SpectralModel:
    """Closure coefficient polynomials R0, R1, R-1 and the H' shift."""
    validate(spec)
    match spec:
        case PoschlTeller(g=g, h=h):
            shift = 0.5 * (g + h) ** 2
            r0 = HPoly((8.0 * shift - 4.0, 8.0))
            r1 = HPoly((4.0,))
            rm1 = HPoly((4.0 * (spec.alpha**2 - spec.beta**2),))
        case DeformedOscillator():
            shift = 0.0
            r0 = HPoly((1.0,))
            r1 = HPoly((0.0,))
            rm1 = HPoly((0.0,))
        case AskeyWilson(q=q):
            b1, b3, b4 = spec.b1, spec.b3, spec.b4
            kappa = q * (1.0 / q - 1.0) ** 2
            shift = 0.5 * (1.0 + b4 / q)
            r0 = HPoly(
                (
                    kappa * (shift**2 - (1.0 + 1.0 / q) ** 2 * b4 / 4.0),
                    2.0 * kappa * shift,
                    kappa,
                )
            )
            r1 = HPoly((kappa * shift, kappa))
            rm1 = HPoly(
                (
                    -kappa * (1.0 - b4 / q**2) * (b1 - b3) / 8.0,
                    -kappa * (b1 + b3 / q) / 4.0,
                )
            )
        case _:
            raise UnsupportedSystem(type(spec).__name__)
    return SpectralModel(
        energy=partial(energy, spec),
        r0=r0,
        r1=r1,
        rm1=rm1,
        hprime_shift=shift,
    )


@dataclass(frozen=True)
class ClassicalClosure:
    """Classical closure coefficients (no quantum R1 term)."""

    r0: HPoly
    rm1: HPoly


@lru_cache(maxsize=None)
def classical_r_polynomials(spec: SystemSpec) -> ClassicalClosure:
    """Closure coefficients of the classical double Poisson bracket."""
    validate(spec)
    match spec:
        case PoschlTeller(g=g, h=h):
            return ClassicalClosure(
                r0=HPoly((4.0 * (g + h) ** 2, 8.0)),
                rm1=HPoly((4.0 * (g**2 - h**2),)),
            )
        case DeformedOscillator():
            return ClassicalClosure(r0=HPoly((1.0,)), rm1=HPoly((0.0,)))
        case AskeyWilson():
            gsq = spec.log_q**2
            return ClassicalClosure(
                r0=HPoly((gsq * spec.c2, gsq * spec.c1, gsq)),
                rm1=HPoly((-gsq * spec.c4, -gsq * spec.c3)),
            )
    raise UnsupportedSystem(type(spec).__name__)


def alpha_pm(spec: SystemSpec, e: float) -> tuple[float, float]:
    """The two frequencies at energy e: roots of x^2 - R1(e) x - R0(e).

    Returns (alpha_plus, alpha_minus) with alpha_plus > alpha_minus; by
    construction their sum is R1(e) and their product is -R0(e).
    """
    model = r_polynomials(spec)
    r1v = model.r1(e)
    disc = r1v * r1v + 4.0 * model.r0(e)
    if disc < 0.0:
        raise ComplexFrequencies(
            f"discriminant {disc} < 0 at energy {e}: no real frequency pair"
        )
    root = math.sqrt(disc)
    return (0.5 * (r1v + root), 0.5 * (r1v - root))


def _aw_closure_cap(q: float) -> int:
    """Largest level index checked for the Askey-Wilson spectrum.

    q**-n grows exponentially; 25 levels at q = 0.3 mark the headroom we
    allow in double precision, and smaller q gets proportionally fewer.
    """
    if q >= 0.3:
        return 25
    return max(1, int(25.0 * math.log(1.0 / 0.3) / math.log(1.0 / q)))


def check_spectrum_closure(
    spec: SystemSpec, n_max: int, tol: float = 1e-9
) -> CheckReport:
    """Verify E_{n+1} - E_n = alpha_plus(E_n) and E_{n-1} - E_n = alpha_minus(E_n).

    Residuals are relative to max(1, |target level|).  For Askey-Wilson,
    n_max must stay within the double-precision cap (see _aw_closure_cap).
    """
    validate(spec)
    if n_max < 1:
        raise ParameterOutOfRange(f"n_max must be >= 1, got {n_max}")
    if isinstance(spec, AskeyWilson):
        cap = _aw_closure_cap(spec.q)
        if n_max > cap:
            raise ParameterOutOfRange(
                f"n_max={n_max} exceeds the double-precision cap {cap} "
                f"for q={spec.q}"
            )
    levels = energies(spec, n_max + 2)
    worst_plus = 0.0
    worst_minus = 0.0
    for n in range(n_max + 1):
        ap, am = alpha_pm(spec, levels[n])
        res_p = abs(levels[n + 1] - levels[n] - ap) / max(1.0, abs(levels[n + 1]))
        worst_plus = max(worst_plus, res_p)
        if n >= 1:
            res_m = abs(levels[n - 1] - levels[n] - am) / max(
                1.0, abs(levels[n - 1])
            )
            worst_minus = max(worst_minus, res_m)
    return make_report(
        "spectrum_closure",
        max(worst_plus, worst_minus),
        tol,
        n_max=n_max,
        max_plus=float(worst_plus),
        max_minus=float(worst_minus),
    )
