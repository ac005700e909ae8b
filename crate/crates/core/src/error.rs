use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported curve order {0} (expected 3, 4 or 6)")]
    UnsupportedOrder(i64),

    #[error("{what} = {value} is out of range 0..{bound}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: i64,
    },

    #[error("inadmissible twist ({0},{1},{2}): entries must sum to 0 mod {3}")]
    InadmissibleTwist(u8, u8, u8, u8),

    #[error("torsion trivial: T_6 = {{0}}, shifts must vanish")]
    TorsionTrivial,

    #[error("mismatched curve orders {0} and {1}")]
    MismatchedOrder(u8, u8),

    #[error("point coordinate {0} is not on the 1/12 grid")]
    OffGrid(String),

    #[error("does not surject onto multiplicative part")]
    NotAdmissible,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("golden data: {0}")]
    Golden(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
