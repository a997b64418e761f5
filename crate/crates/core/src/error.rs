use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument is not finite")]
    NonFinite,
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error(
        "grid half-width {halfwidth} is below the {required} needed for Hermite index {max_index}"
    )]
    GridTooSmall {
        halfwidth: f64,
        required: f64,
        max_index: usize,
    },
    #[error("density has negative entries beyond roundoff")]
    NegativeDensity,
    #[error("signals live on different grids")]
    GridMismatch,
    #[error("grid is not symmetric about the origin")]
    AsymmetricGrid,
    #[error("sample count {got} does not match grid length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("displacement ({q}, {p}) cannot be represented on the grid")]
    DisplacementOutOfRange { q: f64, p: f64 },
    #[error("matrix is not symplectic (det = {det})")]
    NotSymplectic { det: f64 },
    #[error("angles must satisfy 0 <= t1 < t2 < t3 < pi")]
    AngleOrder,
    #[error("angles coincide modulo pi")]
    DegenerateAngles,
    #[error("target lines are infeasible (a^2 = {a_squared})")]
    InfeasibleTargets { a_squared: f64 },
    #[error("angle list is empty")]
    EmptyAngles,
    #[error("angle differences are not rational multiples of pi")]
    NonRationalDifference,
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("Hermite index k must be at least 1")]
    InvalidIndex,
    #[error("Hermite index does not fit in the supported integer range")]
    IndexOverflow,
    #[error("maximum denominator must be at least 2")]
    InvalidDenominator,
    #[error("Wigner values have an imaginary residue of {residue}")]
    ComplexWigner { residue: f64 },
    #[error("output grid reaches outside the phase-space disc covered by the Wigner grid")]
    OutsideWignerDisc,
}
