use thiserror::Error;

/// Library-wide error type.
///
/// Admissibility failures (`NonPositiveDensity`, `NonPositivePressure`,
/// `InvalidEntropyState`) signal loss of physical admissibility during time
/// stepping; the solver wraps them in `AtCell` so the offending cell and time
/// are reported instead of silently clipping the state.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-positive density {0:e}")]
    NonPositiveDensity(f64),

    #[error("non-positive pressure {0:e}")]
    NonPositivePressure(f64),

    #[error("invalid entropy state: r4 = {0:e}, expected r4 < 0")]
    InvalidEntropyState(f64),

    #[error("logarithmic mean requires positive inputs, got ({0:e}, {1:e})")]
    NonPositiveInput(f64, f64),

    #[error("degenerate eigensystem: sound speed {0:e} at the average state")]
    DegenerateEigensystem(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite state in cell ({i}, {j}) at t = {time}")]
    NonFiniteState { i: usize, j: usize, time: f64 },

    #[error("cell ({i}, {j}) at t = {time}: {source}")]
    AtCell {
        i: usize,
        j: usize,
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("degenerate scaling fit: {0}")]
    DegenerateFit(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attaches a cell index and time to an error raised inside the solver.
    pub fn at_cell(self, i: usize, j: usize, time: f64) -> Error {
        Error::AtCell {
            i,
            j,
            time,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
