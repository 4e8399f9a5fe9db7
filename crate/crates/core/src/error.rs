use core::fmt;

/// Why no coupler stiffness can satisfy the two-port condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Infeasibility {
    /// Coupler damping outside (0, 4·Bf].
    DampingRange,
    /// The low-frequency term 4·b22·Im·Kf²·κ1 is not positive (e.g. Im = 0 with If > 0).
    ConstantTerm,
    /// Every k22 in the bracket fails the cubic test.
    NoCrossing,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::DampingRange => write!(f, "coupler damping outside (0, 4*Bf]"),
            Infeasibility::ConstantTerm => {
                write!(f, "low-frequency term Im*(Pf*Im - B*If) is not positive")
            }
            Infeasibility::NoCrossing => write!(f, "no coupler stiffness in the bracket passes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    ZeroPolynomial,
    ZeroDivisor,
    NonFinite,
    InvalidInterval { lo: f64, hi: f64 },
    NonPositiveCoefficient { index: usize, value: f64 },
    NoImaginaryPole,
    InvalidParams { field: &'static str, reason: &'static str },
    PoleAtFrequency { omega: f64 },
    NoFeasibleK22(Infeasibility),
    DegenerateTermination,
    DesiredExceedsCoupler { desired: f64, coupler: f64 },
    BaselineNotPassive { condition: &'static str },
    InvalidGrid { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "polynomial is identically zero"),
            Error::ZeroDivisor => write!(f, "division by the zero polynomial"),
            Error::NonFinite => write!(f, "non-finite coefficient or argument"),
            Error::InvalidInterval { lo, hi } => write!(f, "invalid interval ({lo}, {hi})"),
            Error::NonPositiveCoefficient { index, value } => {
                write!(f, "coefficient a{index} = {value} is not positive")
            }
            Error::NoImaginaryPole => write!(f, "denominator has no imaginary-axis pole pair"),
            Error::InvalidParams { field, reason } => write!(f, "invalid parameter {field}: {reason}"),
            Error::PoleAtFrequency { omega } => write!(f, "pole at omega = {omega} rad/s"),
            Error::NoFeasibleK22(why) => write!(f, "no feasible coupler stiffness: {why}"),
            Error::DegenerateTermination => {
                write!(f, "termination makes 1 + h22*Ze vanish identically")
            }
            Error::DesiredExceedsCoupler { desired, coupler } => {
                write!(f, "desired value {desired} must be below the coupler value {coupler}")
            }
            Error::BaselineNotPassive { condition } => {
                write!(f, "plant fails condition {condition}; objective undefined")
            }
            Error::InvalidGrid { reason } => write!(f, "invalid frequency grid: {reason}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
