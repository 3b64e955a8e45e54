"""Exact-identity verification for three solvable one-dimensional systems.

The library builds truncated energy-eigenbasis operators, ladder pairs,
closed-form operator evolutions, classical sinusoidal solutions, and
lowering-operator eigenstates for the trigonometric Poschl-Teller well, a
shift-operator deformed harmonic oscillator, and the Askey-Wilson system,
and checks every closed-form identity against independent numerical oracles.
"""

from .classical import (
    ClassicalState,
    Trajectory,
    check_closed_vs_flow,
    check_poisson_closure,
    check_potential_reconstruction,
    closed_form_eta,
    flow_oracle,
    hamiltonian,
    period,
    poisson_h_eta,
    poisson_h_eta_fd,
    poisson_h_h_eta,
    poisson_h_h_eta_fd,
    pt_reference_potential,
    reconstruct_potential,
    sample_states,
    write_trajectory_csv,
)
from .coherent import (
    CoherentCoefficients,
    check_eigenvalue,
    check_mp_hypergeometric,
    coherent_coeffs,
)
from .errors import (
    ComplexFrequencies,
    ConfigError,
    DegenerateFrequencies,
    DomainEscape,
    EnergyDrift,
    EvaluationDomain,
    NonOscillatory,
    ParameterOutOfRange,
    QuadratureNotConverged,
    SeriesNotConverged,
    SincoordError,
    SingularDerivative,
    UnsupportedSystem,
    ZeroRecurrenceCoefficient,
)
from .heisenberg import (
    HeisenbergSolution,
    build_solution,
    check_heisenberg,
    exact_evolution,
    oracle_evolution,
)
from .operators import (
    LadderPair,
    Normalization,
    TruncatedOperator,
    build_basic,
    build_ladder,
    check_ground_state_condition,
    check_hermitian_conjugacy,
    check_ladder_action,
    check_su11,
    check_two_commutator,
)
from .polynomials import (
    RecurrenceData,
    WeightFunction,
    eval_all,
    eval_poly,
    gram_matrix,
    norms,
    recurrence,
    weight,
)
from .report import CheckReport, make_report
from .systems import (
    AskeyWilson,
    ClassicalClosure,
    DeformedOscillator,
    HPoly,
    PoschlTeller,
    SpectralModel,
    SystemSpec,
    alpha_pm,
    check_spectrum_closure,
    classical_r_polynomials,
    energies,
    energy,
    r_polynomials,
    validate,
)

__version__ = "0.1.0"
