use thiserror::Error;

/// Errors reported by sequence parsing, transforms and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input held no sequence data at all.
    #[error("empty input")]
    EmptyInput,

    /// A FASTA record had a header but no residues.
    #[error("record `{id}` has no residues")]
    EmptyRecord { id: String },

    /// A residue outside the accepted alphabet, rejected under strict parsing.
    #[error("invalid residue `{residue}` at position {position}")]
    InvalidResidue { position: usize, residue: char },

    /// A sample that is NaN or infinite.
    #[error("non-finite sample at position {position}")]
    NonFiniteSample { position: usize },

    /// A periodicity outside `1..=max` for the data at hand.
    #[error("invalid periodicity range: p = {p}, valid range is 1..={max}")]
    PeriodOutOfRange { p: usize, max: usize },

    /// Closed-form evaluation is only available for p = 2, 3, 4.
    #[error("no closed form for periodicity {p} (available for p = 2, 3, 4)")]
    UnsupportedClosedForm { p: usize },

    /// A sliding window wider than the sequence.
    #[error("window size {window} exceeds sequence length {len}")]
    WindowTooLarge { window: usize, len: usize },

    /// A zero window or walk step.
    #[error("step must be at least 1")]
    InvalidStep,

    /// An edit that refers to a position outside the edited sequence.
    #[error("edit position {position} out of range for sequence of length {len}")]
    InvalidEdit { position: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
