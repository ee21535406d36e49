use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Malformed input: bad dimensions, negative weights, out-of-range ids.
    Invalid(&'static str),
    SelfLoop(usize),
    NegativeWeight { u: usize, v: usize, weight: f64 },
    /// No vertex set satisfies the constraints.
    Infeasible(&'static str),
    /// Constrained thresholding found no feasible set with positive denominator.
    NoFeasibleThreshold,
    /// Every threshold set had a zero denominator.
    AllDenominatorsZero,
    /// The ratio is undefined at the starting vector.
    ZeroDenominator,
    /// RatioDCA produced a non-decreasing step.
    NonDescent { previous: f64, next: f64 },
    /// A ratio needs at least one edge.
    NoEdges,
    /// The exhaustive oracle refuses graphs above its size cap.
    TooLarge { n: usize, cap: usize },
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Error::NegativeWeight { u, v, weight } => {
                write!(f, "negative weight {weight} on edge ({u}, {v})")
            }
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::NoFeasibleThreshold => write!(f, "no threshold set satisfies the constraints"),
            Error::AllDenominatorsZero => write!(f, "all threshold sets have zero denominator"),
            Error::ZeroDenominator => write!(f, "ratio denominator is zero at the start vector"),
            Error::NonDescent { previous, next } => write!(
                f,
                "ratio did not decrease ({previous} -> {next}); inner tolerance too loose"
            ),
            Error::NoEdges => write!(f, "graph has no edges"),
            Error::TooLarge { n, cap } => write!(f, "{n} vertices exceeds the cap of {cap}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
