//! Periodic power spectra computed directly in periodicity space.
//!
//! A length-N signal is folded at each candidate periodicity p into a
//! congruence derivative vector (one sum per residue class mod p); a
//! quadratic form against the p x p spectrum matrix then yields the
//! periodic power PPS(p). For DNA the four binary indicator tracks are
//! folded independently and their powers summed. When p divides N the
//! value coincides with the DFT power at bin N/p, which makes the direct
//! O(N^2) DFT here the natural cross-check; when p does not divide N,
//! zero padding to the next multiple of p removes the leakage that makes
//! frequency-domain readings of non-divisor periodicities ambiguous.
//!
//! The crate is data-parallel over periodicities, windows and DFT bins via
//! rayon when the default `parallel` feature is on. Every parallel entry
//! point has a `*_serial` sibling with identical output, and disabling the
//! feature makes the plain names sequential too.
//!
//! ```
//! use pps_core::{AmbiguityPolicy, DnaSequence};
//! use pps_core::sequence::voss_map;
//! use pps_core::analysis::scan;
//!
//! let seq = DnaSequence::new("toy", "ATCGAATCGAATCGAATCGA", AmbiguityPolicy::Strict)?;
//! let tracks = voss_map(&seq, AmbiguityPolicy::Strict)?;
//! let spectrum = scan(&tracks, 2, 10)?;
//! let best = spectrum
//!     .entries()
//!     .iter()
//!     .max_by(|a, b| a.power.total_cmp(&b.power))
//!     .unwrap();
//! assert_eq!(best.p, 5);
//! assert!(best.snr > 1.0);
//! # Ok::<(), pps_core::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod sequence;
pub mod transform;

pub use error::{Error, Result};
pub use sequence::{AmbiguityPolicy, DnaSequence, IndicatorSet, Nucleotide, RealSignal};

/// Maps a task list to results, in input order, on the rayon pool when the
/// `parallel` feature is enabled and inline otherwise.
pub(crate) mod exec {
    #[cfg(feature = "parallel")]
    pub(crate) fn map_collect<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Send + Sync,
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }

    #[cfg(not(feature = "parallel"))]
    pub(crate) fn map_collect<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Send + Sync,
    {
        items.into_iter().map(f).collect()
    }
}
