//! Spectrum scans, peak detection, localization profiles and synthetic
//! test signals.

use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::sequence::{DnaSequence, IndicatorSet, RealSignal};
use crate::transform::{check_period, SpectrumMatrix};

/// One row of a periodicity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub p: usize,
    pub power: f64,
    pub snr: f64,
}

/// Periodic power over a contiguous periodicity range.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicitySpectrum {
    id: String,
    len: usize,
    entries: Vec<SpectrumEntry>,
}

impl PeriodicitySpectrum {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Length N of the scanned sequence or signal.
    pub fn sequence_len(&self) -> usize {
        self.len
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn p_min(&self) -> usize {
        self.entries.first().expect("scan range is non-empty").p
    }

    pub fn p_max(&self) -> usize {
        self.entries.last().expect("scan range is non-empty").p
    }

    /// The entry at periodicity p, if p lies in the scanned range.
    pub fn get(&self, p: usize) -> Option<&SpectrumEntry> {
        let first = self.p_min();
        p.checked_sub(first).and_then(|i| self.entries.get(i))
    }
}

fn validate_scan_range(n: usize, p_min: usize, p_max: usize) -> Result<()> {
    if p_min < 1 || p_min > p_max {
        return Err(Error::PeriodOutOfRange {
            p: p_min,
            max: p_max.min(n),
        });
    }
    check_period(p_max, n)
}

fn dna_entry(ind: &IndicatorSet, p: usize) -> SpectrumEntry {
    let m = SpectrumMatrix::new(p).expect("p >= 1 by range validation");
    let power = m.dna_power(ind);
    SpectrumEntry {
        p,
        power,
        snr: power / ind.len() as f64,
    }
}

fn signal_entry(x: &RealSignal, p: usize) -> SpectrumEntry {
    let m = SpectrumMatrix::new(p).expect("p >= 1 by range validation");
    let power = m.signal_power(x.samples());
    SpectrumEntry {
        p,
        power,
        snr: power / x.len() as f64,
    }
}

/// Scans a DNA sequence over p in `p_min..=p_max`.
pub fn scan(ind: &IndicatorSet, p_min: usize, p_max: usize) -> Result<PeriodicitySpectrum> {
    validate_scan_range(ind.len(), p_min, p_max)?;
    let entries = map_collect((p_min..=p_max).collect(), |p| dna_entry(ind, p));
    Ok(PeriodicitySpectrum {
        id: ind.id().to_string(),
        len: ind.len(),
        entries,
    })
}

/// Single-threaded variant of [`scan`].
pub fn scan_serial(ind: &IndicatorSet, p_min: usize, p_max: usize) -> Result<PeriodicitySpectrum> {
    validate_scan_range(ind.len(), p_min, p_max)?;
    let entries = (p_min..=p_max).map(|p| dna_entry(ind, p)).collect();
    Ok(PeriodicitySpectrum {
        id: ind.id().to_string(),
        len: ind.len(),
        entries,
    })
}

/// Scans a real signal over p in `p_min..=p_max`. The snr column is the
/// same power / N ratio used for sequences.
pub fn scan_signal(x: &RealSignal, p_min: usize, p_max: usize) -> Result<PeriodicitySpectrum> {
    validate_scan_range(x.len(), p_min, p_max)?;
    let entries = map_collect((p_min..=p_max).collect(), |p| signal_entry(x, p));
    Ok(PeriodicitySpectrum {
        id: "signal".to_string(),
        len: x.len(),
        entries,
    })
}

/// Single-threaded variant of [`scan_signal`].
pub fn scan_signal_serial(
    x: &RealSignal,
    p_min: usize,
    p_max: usize,
) -> Result<PeriodicitySpectrum> {
    validate_scan_range(x.len(), p_min, p_max)?;
    let entries = (p_min..=p_max).map(|p| signal_entry(x, p)).collect();
    Ok(PeriodicitySpectrum {
        id: "signal".to_string(),
        len: x.len(),
        entries,
    })
}

/// The informative upper end of a scan, ceil(sqrt(2N)): beyond it fewer
/// than sqrt(N/2) full periods fit in the sequence and the spectrum tail
/// smooths out. Callers still need to cap the result at N for very short
/// inputs.
pub fn default_p_max(n: usize) -> usize {
    let target = 2 * n;
    let mut r = (target as f64).sqrt().ceil() as usize;
    while r * r < target {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) >= target {
        r -= 1;
    }
    r
}

/// A local spectrum maximum at or above the detection threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub p: usize,
    pub snr: f64,
}

/// Peaks of one scan, in ascending p order.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    threshold: f64,
    peaks: Vec<Peak>,
}

impl PeakReport {
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn peaks(&self) -> &[Peak] {
        &self.peaks
    }
}

/// Flags entries with snr >= threshold that are strictly greater than
/// their neighbors; range endpoints only compete with their one neighbor.
/// Plateaus of equal values are not peaks.
pub fn detect_peaks(spectrum: &PeriodicitySpectrum, threshold: f64) -> PeakReport {
    let entries = spectrum.entries();
    let mut peaks = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        if e.snr < threshold {
            continue;
        }
        let above_left = i == 0 || entries[i - 1].snr < e.snr;
        let above_right = i + 1 == entries.len() || entries[i + 1].snr < e.snr;
        if above_left && above_right {
            peaks.push(Peak { p: e.p, snr: e.snr });
        }
    }
    PeakReport { threshold, peaks }
}

/// One window of a localization profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowPoint {
    pub start: usize,
    pub snr: f64,
}

/// Windowed snr profile of one periodicity along a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowProfile {
    id: String,
    p: usize,
    window: usize,
    step: usize,
    points: Vec<WindowPoint>,
}

impl WindowProfile {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn periodicity(&self) -> usize {
        self.p
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn points(&self) -> &[WindowPoint] {
        &self.points
    }
}

/// Slides a length-w window by `step` and reports PPS(p) / w per window,
/// with congruence classes taken relative to each window start. Windows
/// never extend past the end; a trailing partial window is not emitted.
pub fn sliding_window(
    ind: &IndicatorSet,
    p: usize,
    window: usize,
    step: usize,
) -> Result<WindowProfile> {
    let starts = window_starts(ind, p, window, step)?;
    let m = SpectrumMatrix::new(p).expect("p >= 1 checked");
    let points = map_collect(starts, |start| WindowPoint {
        start,
        snr: m.dna_power_window(ind, start, window) / window as f64,
    });
    Ok(WindowProfile {
        id: ind.id().to_string(),
        p,
        window,
        step,
        points,
    })
}

/// Single-threaded variant of [`sliding_window`].
pub fn sliding_window_serial(
    ind: &IndicatorSet,
    p: usize,
    window: usize,
    step: usize,
) -> Result<WindowProfile> {
    let starts = window_starts(ind, p, window, step)?;
    let m = SpectrumMatrix::new(p).expect("p >= 1 checked");
    let points = starts
        .into_iter()
        .map(|start| WindowPoint {
            start,
            snr: m.dna_power_window(ind, start, window) / window as f64,
        })
        .collect();
    Ok(WindowProfile {
        id: ind.id().to_string(),
        p,
        window,
        step,
        points,
    })
}

fn window_starts(ind: &IndicatorSet, p: usize, window: usize, step: usize) -> Result<Vec<usize>> {
    if step < 1 {
        return Err(Error::InvalidStep);
    }
    if window > ind.len() {
        return Err(Error::WindowTooLarge {
            window,
            len: ind.len(),
        });
    }
    check_period(p, window)?;
    Ok((0..=ind.len() - window).step_by(step).collect())
}

/// One prefix of a cumulative walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkPoint {
    pub prefix_len: usize,
    pub power: f64,
}

/// Cumulative PPS(p) over growing prefixes of a sequence. Under a perfect
/// repeat the power grows quadratically in the number of copies; breaks in
/// the repeat flatten the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkProfile {
    id: String,
    p: usize,
    step: usize,
    points: Vec<WalkPoint>,
}

impl WalkProfile {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn periodicity(&self) -> usize {
        self.p
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn points(&self) -> &[WalkPoint] {
        &self.points
    }
}

/// Evaluates PPS(p) on prefixes of length p, p(1 + step), p(1 + 2 step)
/// and so on, always ending with the full length N.
pub fn dna_walk(ind: &IndicatorSet, p: usize, step: usize) -> Result<WalkProfile> {
    let lens = walk_lengths(ind, p, step)?;
    let m = SpectrumMatrix::new(p).expect("p >= 1 checked");
    let points = map_collect(lens, |len| WalkPoint {
        prefix_len: len,
        power: m.dna_power_window(ind, 0, len),
    });
    Ok(WalkProfile {
        id: ind.id().to_string(),
        p,
        step,
        points,
    })
}

/// Single-threaded variant of [`dna_walk`].
pub fn dna_walk_serial(ind: &IndicatorSet, p: usize, step: usize) -> Result<WalkProfile> {
    let lens = walk_lengths(ind, p, step)?;
    let m = SpectrumMatrix::new(p).expect("p >= 1 checked");
    let points = lens
        .into_iter()
        .map(|len| WalkPoint {
            prefix_len: len,
            power: m.dna_power_window(ind, 0, len),
        })
        .collect();
    Ok(WalkProfile {
        id: ind.id().to_string(),
        p,
        step,
        points,
    })
}

fn walk_lengths(ind: &IndicatorSet, p: usize, step: usize) -> Result<Vec<usize>> {
    if step < 1 {
        return Err(Error::InvalidStep);
    }
    let n = ind.len();
    check_period(p, n)?;
    let stride = step.saturating_mul(p);
    let mut lens = Vec::new();
    let mut l = p;
    while l < n {
        lens.push(l);
        l = l.saturating_add(stride);
    }
    lens.push(n);
    Ok(lens)
}

/// The two-tone benchmark signal sin(2 pi n / 20 + pi / 4) +
/// cos(2 pi n / 50 + pi / 4) for n = 1..=N, plus white Gaussian noise of
/// standard deviation `sigma`.
///
/// Noise is reproducible: a ChaCha8 stream keyed by `seed` drives the
/// Box-Muller cosine branch, two 53-bit uniform draws per deviate, one
/// deviate per sample in index order. With sigma = 0 the generator is
/// never touched, so the clean signal is seed-independent.
pub fn synth_fig1(n: usize, sigma: f64, seed: u64) -> Result<RealSignal> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (1..=n)
        .map(|i| {
            let t = i as f64;
            let mut v =
                (2.0 * PI * t / 20.0 + PI / 4.0).sin() + (2.0 * PI * t / 50.0 + PI / 4.0).cos();
            if sigma > 0.0 {
                v += sigma * gaussian(&mut rng);
            }
            v
        })
        .collect();
    RealSignal::new(samples)
}

/// An edit applied while building a synthetic repeat; positions refer to
/// the sequence as it stands when the edit is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edit {
    /// Replace the residue at `position` with `base`.
    Substitute { position: usize, base: char },
    /// Remove the residue at `position`.
    Delete { position: usize },
    /// Shuffle the residues in `start..end` (half-open) in place.
    ShuffleRange { start: usize, end: usize },
}

/// Concatenates `copies` copies of the motif and applies `edits` in order.
/// Shuffles draw from a ChaCha8 stream keyed by `seed` (Fisher-Yates,
/// one draw per swap); the other edit kinds ignore the seed.
pub fn synth_repeat(
    motif: &DnaSequence,
    copies: usize,
    edits: &[Edit],
    seed: u64,
) -> Result<DnaSequence> {
    if copies == 0 {
        return Err(Error::EmptyRecord {
            id: motif.id().to_string(),
        });
    }
    let mut residues = motif.residues().repeat(copies);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for edit in edits {
        match *edit {
            Edit::Substitute { position, base } => {
                if position >= residues.len() {
                    return Err(Error::InvalidEdit {
                        position,
                        len: residues.len(),
                    });
                }
                let up = base.to_ascii_uppercase();
                residues[position] = match up {
                    'U' => b'T',
                    _ if up.is_ascii_alphabetic() => up as u8,
                    _ => {
                        return Err(Error::InvalidResidue {
                            position,
                            residue: base,
                        })
                    }
                };
            }
            Edit::Delete { position } => {
                if position >= residues.len() {
                    return Err(Error::InvalidEdit {
                        position,
                        len: residues.len(),
                    });
                }
                residues.remove(position);
            }
            Edit::ShuffleRange { start, end } => {
                if start > end || end > residues.len() {
                    return Err(Error::InvalidEdit {
                        position: end,
                        len: residues.len(),
                    });
                }
                shuffle(&mut rng, &mut residues[start..end]);
            }
        }
    }
    if residues.is_empty() {
        return Err(Error::EmptyRecord {
            id: motif.id().to_string(),
        });
    }
    Ok(DnaSequence::from_validated(
        motif.id().to_string(),
        residues,
    ))
}

/// Standard normal deviate: Box-Muller cosine branch over two 53-bit
/// uniforms, u1 in (0, 1] so the log is always finite.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let a = rng.next_u64();
    let b = rng.next_u64();
    let u1 = ((a >> 11) as f64 + 1.0) * 2f64.powi(-53);
    let u2 = (b >> 11) as f64 * 2f64.powi(-53);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Fisher-Yates with one draw per swap. The modulo bias is immaterial at
/// sequence lengths.
fn shuffle(rng: &mut ChaCha8Rng, data: &mut [u8]) {
    for i in (1..data.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        data.swap(i, j);
    }
}
