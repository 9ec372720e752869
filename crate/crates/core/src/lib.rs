//! Period function, periodic orbits and solution counting for the planar
//! isotropic horospherical `p`-Minkowski problem
//!
//! ```text
//! phi^(-p) (phi'' - phi'^2/(2 phi) + (phi - 1/phi)/2) * W^(q-1) = gamma,
//! W = phi'^2/(2 phi) + (phi + 1/phi)/2,
//! ```
//!
//! on the circle. Substituting `u(tau) = sqrt(phi(2 tau))` turns the equation
//! into a conservative oscillator; its half-period decides whether
//! non-constant `2pi/m`-periodic solutions exist.
//!
//! Layers, bottom to top:
//! * [`scalar`]: energies, turning points, chart conversions, constant solutions;
//! * [`period`]: the half-period by singular-endpoint quadrature, plus limits;
//! * [`orbit`]: ODE integration, event-located periods, solution profiles;
//! * [`classify`]: thresholds, branch counting and region scans.

pub mod classify;
pub mod error;
pub mod exec;
pub mod orbit;
pub mod period;
pub mod roots;
pub mod scalar;

pub use classify::{
    count_solutions, region_scan, threshold_gamma, threshold_gamma_weighted, Branch, ClassificationReport,
    RecordStatus, ScanConfig, ScanRecord, ScanStatus,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use orbit::{
    build_solution, hk_integral, integrate_orbit, measure_half_period, orbit_rhs, pde_residual, OrbitConfig,
    OrbitProfile, SolutionProfile,
};
pub use period::{
    boundary_period, integrand_f, period_energy, period_shape, PeriodValue, QuadratureConfig,
};
pub use scalar::{
    constant_solutions, critical_point, gamma_energy_from_shape, potential_energy, shape_from_turning,
    turning_points, ConstantSolutions, CriticalData, ProblemParams, ShapeCoords, TurningPoints,
};
