//! The periodicity-domain transforms: congruence derivative vectors, the
//! spectrum matrix quadratic form, the periodic transform projection, and
//! the reference DFT power spectrum used for cross-validation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::sequence::{IndicatorSet, RealSignal};

/// Relative slack (against `||f||^2`) within which a quadratic form is
/// treated as round-off and clamped to zero. Cancellation error lands on
/// either side of zero, so the clamp is symmetric.
const CLAMP_REL: f64 = 1e-9;

pub(crate) fn check_period(p: usize, n: usize) -> Result<()> {
    if p < 1 || p > n {
        return Err(Error::PeriodOutOfRange { p, max: n });
    }
    Ok(())
}

/// The congruence derivative of a signal at periodicity p: entry q holds
/// the sum of all samples whose index is congruent to q mod p.
#[derive(Debug, Clone, PartialEq)]
pub struct CongruenceVector {
    p: usize,
    values: Vec<f64>,
}

impl CongruenceVector {
    pub fn from_samples(x: &[f64], p: usize) -> Result<Self> {
        check_period(p, x.len())?;
        let mut values = vec![0.0; p];
        let mut q = 0;
        for &v in x {
            values[q] += v;
            q += 1;
            if q == p {
                q = 0;
            }
        }
        Ok(CongruenceVector { p, values })
    }

    pub fn from_indicator(u: &[u8], p: usize) -> Result<Self> {
        check_period(p, u.len())?;
        let mut values = vec![0.0; p];
        let mut q = 0;
        for &v in u {
            values[q] += f64::from(v);
            q += 1;
            if q == p {
                q = 0;
            }
        }
        Ok(CongruenceVector { p, values })
    }

    pub fn periodicity(&self) -> usize {
        self.p
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sum of the entries; equals the sum of the folded samples.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Congruence derivative of a real signal at periodicity p.
pub fn congruence_vector(x: &RealSignal, p: usize) -> Result<CongruenceVector> {
    CongruenceVector::from_samples(x.samples(), p)
}

/// The lower-triangular p x p spectrum matrix S_p.
///
/// Built from the cosine and sine projection vectors C and V: the symmetric
/// product C'C + V'V is folded onto the lower triangle, giving unit
/// diagonal and entries 2(C_k C_j + V_k V_j) for k > j, zero above. The
/// quadratic form f S f' over a congruence vector is the periodic power at
/// p without evaluating the transform itself.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMatrix {
    p: usize,
    entries: Vec<f64>, // row-major, zeros above the diagonal
}

impl SpectrumMatrix {
    pub fn new(p: usize) -> Result<Self> {
        if p < 1 {
            return Err(Error::PeriodOutOfRange { p, max: usize::MAX });
        }
        let mut c = vec![0.0; p];
        let mut v = vec![0.0; p];
        for (q, (cq, vq)) in c.iter_mut().zip(v.iter_mut()).enumerate() {
            let ang = 2.0 * PI * q as f64 / p as f64;
            *cq = ang.cos();
            *vq = ang.sin();
        }
        let mut entries = vec![0.0; p * p];
        for k in 0..p {
            entries[k * p + k] = 1.0;
            for j in 0..k {
                entries[k * p + j] = 2.0 * (c[k] * c[j] + v[k] * v[j]);
            }
        }
        Ok(SpectrumMatrix { p, entries })
    }

    pub fn periodicity(&self) -> usize {
        self.p
    }

    pub fn entry(&self, k: usize, j: usize) -> f64 {
        assert!(k < self.p && j < self.p, "index out of range");
        self.entries[k * self.p + j]
    }

    /// Evaluates f S f', clamping round-off negatives to zero. The result
    /// is the periodic power of whatever signal f was folded from.
    pub fn quadratic_form(&self, f: &CongruenceVector) -> f64 {
        assert_eq!(
            f.periodicity(),
            self.p,
            "congruence vector and matrix periodicity differ"
        );
        let fv = f.values();
        let mut acc = 0.0;
        for k in 0..self.p {
            let row = &self.entries[k * self.p..k * self.p + k];
            let mut cross = 0.0;
            for (j, s) in row.iter().enumerate() {
                cross += s * fv[j];
            }
            acc += fv[k] * (fv[k] + cross);
        }
        clamp_roundoff(acc, f.norm_sq())
    }

    /// Summed quadratic form over the four indicator channels.
    pub fn dna_power(&self, ind: &IndicatorSet) -> f64 {
        self.dna_power_window(ind, 0, ind.len())
    }

    /// Same, over the window `start..start + len`, with congruence classes
    /// taken relative to the window start.
    pub fn dna_power_window(&self, ind: &IndicatorSet, start: usize, len: usize) -> f64 {
        ind.channels()
            .iter()
            .map(|u| {
                let f = CongruenceVector::from_indicator(&u[start..start + len], self.p)
                    .expect("window length checked by caller");
                self.quadratic_form(&f)
            })
            .sum()
    }

    /// Quadratic form over a slice of real samples.
    pub fn signal_power(&self, x: &[f64]) -> f64 {
        let f = CongruenceVector::from_samples(x, self.p).expect("length checked by caller");
        self.quadratic_form(&f)
    }
}

fn clamp_roundoff(q: f64, scale: f64) -> f64 {
    // also normalizes -0.0
    if q.abs() <= CLAMP_REL * scale {
        return 0.0;
    }
    q
}

/// The complex periodic transform value XP(p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicTransform {
    pub re: f64,
    pub im: f64,
}

impl PeriodicTransform {
    pub fn power(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// Projects the congruence derivative onto one turn of the unit circle:
/// XP(p) = sum_q f_p(q) (cos(2 pi q / p) - i sin(2 pi q / p)).
pub fn periodic_transform(x: &RealSignal, p: usize) -> Result<PeriodicTransform> {
    let f = congruence_vector(x, p)?;
    Ok(project(&f))
}

fn project(f: &CongruenceVector) -> PeriodicTransform {
    let p = f.periodicity();
    let mut re = 0.0;
    let mut im = 0.0;
    for (q, &fq) in f.values().iter().enumerate() {
        let ang = 2.0 * PI * q as f64 / p as f64;
        re += fq * ang.cos();
        im -= fq * ang.sin();
    }
    PeriodicTransform { re, im }
}

/// Periodic power of a real signal at p, via the spectrum matrix.
pub fn pps_real(x: &RealSignal, p: usize) -> Result<f64> {
    let f = congruence_vector(x, p)?;
    let m = SpectrumMatrix::new(p)?;
    Ok(m.quadratic_form(&f))
}

/// Periodic power of a DNA sequence at p: the sum of the quadratic form
/// over the four indicator channels.
pub fn pps_dna(ind: &IndicatorSet, p: usize) -> Result<f64> {
    check_period(p, ind.len())?;
    let m = SpectrumMatrix::new(p)?;
    Ok(m.dna_power(ind))
}

/// Closed-form periodic power for p = 2, 3, 4, expanded from the quadratic
/// form so no matrix is built. Other periodicities are an error.
pub fn pps_closed_form(ind: &IndicatorSet, p: usize) -> Result<f64> {
    if !(2..=4).contains(&p) {
        return Err(Error::UnsupportedClosedForm { p });
    }
    check_period(p, ind.len())?;
    let mut total = 0.0;
    for u in ind.channels() {
        let f = CongruenceVector::from_indicator(u, p).expect("period checked");
        let fv = f.values();
        let q = match p {
            2 => {
                let d = fv[0] - fv[1];
                d * d
            }
            3 => {
                fv[0] * fv[0] + fv[1] * fv[1] + fv[2] * fv[2]
                    - fv[0] * fv[1]
                    - fv[0] * fv[2]
                    - fv[1] * fv[2]
            }
            4 => {
                fv[0] * fv[0] + fv[1] * fv[1] + fv[2] * fv[2] + fv[3] * fv[3]
                    - 2.0 * fv[0] * fv[2]
                    - 2.0 * fv[1] * fv[3]
            }
            _ => unreachable!(),
        };
        total += clamp_roundoff(q, f.norm_sq());
    }
    Ok(total)
}

/// A full-length DFT power spectrum, bins 0..N-1.
#[derive(Debug, Clone, PartialEq)]
pub struct DftPowerSpectrum {
    values: Vec<f64>,
}

impl DftPowerSpectrum {
    /// Power at bin k. Panics if k is out of range.
    pub fn ps(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Direct O(N^2) DFT power spectrum of a real signal. Serves as the
/// reference the periodicity-domain results are validated against, so it
/// stays a plain summation with a precomputed twiddle table.
pub fn dft_power_spectrum(x: &RealSignal) -> DftPowerSpectrum {
    DftPowerSpectrum {
        values: dft_power(x.samples()),
    }
}

/// Single-threaded variant of [`dft_power_spectrum`].
pub fn dft_power_spectrum_serial(x: &RealSignal) -> DftPowerSpectrum {
    DftPowerSpectrum {
        values: dft_power_serial(x.samples()),
    }
}

/// DFT power spectrum of a DNA sequence: the four indicator channels are
/// transformed independently and their power spectra summed.
pub fn dft_power_dna(ind: &IndicatorSet) -> DftPowerSpectrum {
    DftPowerSpectrum {
        values: dna_spectrum_with(ind, dft_power),
    }
}

/// Single-threaded variant of [`dft_power_dna`].
pub fn dft_power_dna_serial(ind: &IndicatorSet) -> DftPowerSpectrum {
    DftPowerSpectrum {
        values: dna_spectrum_with(ind, dft_power_serial),
    }
}

fn dna_spectrum_with(ind: &IndicatorSet, dft: impl Fn(&[f64]) -> Vec<f64>) -> Vec<f64> {
    let n = ind.len();
    let mut total = vec![0.0; n];
    let mut buf = vec![0.0; n];
    for u in ind.channels() {
        for (b, &v) in buf.iter_mut().zip(u.iter()) {
            *b = f64::from(v);
        }
        for (t, v) in total.iter_mut().zip(dft(&buf)) {
            *t += v;
        }
    }
    total
}

fn twiddles(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut cos_t = vec![0.0; n];
    let mut sin_t = vec![0.0; n];
    for j in 0..n {
        let ang = 2.0 * PI * j as f64 / n as f64;
        cos_t[j] = ang.cos();
        sin_t[j] = ang.sin();
    }
    (cos_t, sin_t)
}

fn bin_power(x: &[f64], cos_t: &[f64], sin_t: &[f64], k: usize) -> f64 {
    let n = x.len();
    let mut re = 0.0;
    let mut im = 0.0;
    // twiddle index walks (k * n) mod N without multiplying
    let mut idx = 0;
    for &xn in x {
        re += xn * cos_t[idx];
        im -= xn * sin_t[idx];
        idx += k;
        if idx >= n {
            idx -= n;
        }
    }
    re * re + im * im
}

fn dft_power(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let (cos_t, sin_t) = twiddles(n);
    map_collect((0..n).collect(), |k| bin_power(x, &cos_t, &sin_t, k))
}

fn dft_power_serial(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let (cos_t, sin_t) = twiddles(n);
    (0..n).map(|k| bin_power(x, &cos_t, &sin_t, k)).collect()
}

/// Extends every indicator channel with zeros up to the next multiple of
/// p. The pad columns are all-zero in every channel and are not counted as
/// ambiguous. Sequences already a multiple of p come back unchanged.
pub fn zero_pad_to_multiple(ind: &IndicatorSet, p: usize) -> Result<IndicatorSet> {
    if p < 1 {
        return Err(Error::PeriodOutOfRange { p, max: ind.len() });
    }
    let n = ind.len();
    let target = n.div_ceil(p) * p;
    if target == n {
        return Ok(ind.clone());
    }
    let [a, t, c, g] = ind.channels();
    let pad = |u: &[u8]| {
        let mut v = u.to_vec();
        v.resize(target, 0);
        v
    };
    Ok(IndicatorSet::from_parts(
        ind.id().to_string(),
        target,
        [pad(a), pad(t), pad(c), pad(g)],
        ind.ambiguous(),
    ))
}

/// Signal-to-noise ratio of a periodic power value: PPS(p) / N. Values
/// above 1 indicate power above the white-noise background.
pub fn snr(power: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(power / n as f64)
}
