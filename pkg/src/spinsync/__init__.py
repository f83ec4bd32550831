"""Two-mode pseudo-bosonic spin-chain synchronization simulator."""

__version__ = "0.1.0"

from .errors import (ConfigError, DegenerateCovariance, DegenerateOrbit,
                     EmptyWindow, HPBreakdownWarning, NonFinite, PSDViolation,
                     SingularCoupling, SpinSyncError)
from .model import (DerivedConstants, ModelParams, derive_constants,
                    scalar_kit_eval, validate_params)
from .meanfield import (FTermMode, MeanFieldState, MeanFieldTrajectory,
                        OrbitSummary, integrate_mean_field,
                        limit_cycle_extract, mean_field_drift,
                        mean_field_drift_lambda0)
from .fluctuations import (CovarianceTrajectory, DriftAssembly,
                           assemble_drift_matrix, diffusion_matrix,
                           drift_assembly, fluct_coeffs, lyapunov_rk4,
                           mean_field_view, propagate_covariance,
                           thermal_covariance, vacuum_covariance)
from .metrics import (ClassicalSync, classical_sync,
                      instantaneous_phase_difference, phase_difference,
                      quantum_sync, quantum_sync_phi, time_average)
from .scenario import (PRESETS, RunConfig, RunResult, preset_config,
                       run_scenario, run_thermal_sweep, selftest)
