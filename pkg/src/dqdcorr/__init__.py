"""Quantum discord and entanglement of two double-quantum-dot charge qubits
coupled to an ohmic oscillator bath, evolved with a time-dependent Redfield
equation."""

from .bath import (
    BathParams,
    bose_occupation,
    complex_trigamma,
    kernel_closed_form,
    kernel_quadrature,
    spectral_density,
)
from .measures import (
    CorrelationReport,
    MeasurementAngles,
    OptimizerError,
    OptimizerSettings,
    classical_correlation,
    concurrence,
    entanglement_of_formation,
    minimize_conditional_entropy,
    mutual_information,
    post_measurement_conditional_entropy,
    quantum_discord,
)
from .model import (
    ModelParams,
    closed_form_propagator,
    interaction_coupling,
    max_entanglement_time,
    propagator,
    system_hamiltonian,
)
from .qcore import (
    NonHermitianError,
    PositivityError,
    hermitian_eigendecomposition,
    partial_trace,
    project_to_physical,
    von_neumann_entropy,
)
from .redfield import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    evolve,
    redfield_generator,
    to_schrodinger,
)
from .scenario import (
    ConfigError,
    ScenarioConfig,
    figure_preset,
    kelvin_to_beta,
    load_config,
    run_scenario,
    write_csv,
)

__version__ = "0.1.0"
