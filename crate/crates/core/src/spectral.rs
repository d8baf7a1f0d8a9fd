//! Power-spectral-density estimation and band-limited feature extraction.
//!
//! Two estimators feed the classifiers: the raw rectangular-window
//! [`periodogram`] and the smoothed [`welch_psd`] (averaged Hann-tapered
//! segment periodograms). Both produce one-sided densities in units of
//! amplitude^2 per Hz; [`band_filter`] then restricts the bins to the
//! acoustic band where bubble resonances live (150-500 Hz by default) to
//! form the classifier feature vector.
//!
//! Scaling conventions: interior bins are doubled (bins 0 and Nyquist are
//! not), and the Hann taper is normalized by its summed square, so a
//! white-noise input produces the same flat level from both estimators and
//! the periodogram satisfies the discrete Parseval identity
//! `sum(psd) * bin_width = mean(samples^2)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::invalid_argument;
use crate::fft::{Complex, Fft};
use crate::{Error, Result};

/// Default analysis band, Hz.
pub const DEFAULT_BAND_LO: f64 = 150.0;
/// Default analysis band, Hz.
pub const DEFAULT_BAND_HI: f64 = 500.0;
/// Default Welch segment length in samples (~5.9 Hz bins at 48 kHz).
pub const DEFAULT_SEGMENT_LEN: usize = 8192;
/// Default Welch segment overlap in samples (50%).
pub const DEFAULT_SEGMENT_OVERLAP: usize = 4096;

/// Which estimator produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    Periodogram,
    Welch,
}

impl FeatureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FeatureKind::Periodogram => "periodogram",
            FeatureKind::Welch => "welch",
        }
    }
}

/// One-sided power spectral density.
#[derive(Debug, Clone, PartialEq)]
pub struct Psd {
    /// Power per bin, amplitude^2/Hz; length floor(N/2)+1 for an N-point
    /// transform.
    pub values: Vec<f64>,
    /// Frequency step between bins, Hz.
    pub bin_width: f64,
    /// Rate of the samples the estimate came from, Hz.
    pub sample_rate: f64,
    /// Which estimator produced this spectrum.
    pub kind: FeatureKind,
}

impl Psd {
    /// Center frequency of bin `k`.
    pub fn frequency(&self, k: usize) -> f64 {
        k as f64 * self.bin_width
    }
}

/// PSD bins restricted to an inclusive frequency band; the classifier input.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    /// Band-limited PSD values, ordered by frequency.
    pub values: Vec<f64>,
    pub band_lo: f64,
    pub band_hi: f64,
    pub feature_kind: FeatureKind,
    /// Index of the first retained bin in the source spectrum.
    pub first_bin: usize,
    /// Bin width of the source spectrum, Hz.
    pub bin_width: f64,
}

impl FeatureVector {
    /// Center frequency of feature `i`.
    pub fn frequency(&self, i: usize) -> f64 {
        (self.first_bin + i) as f64 * self.bin_width
    }

    /// Power carried by the band: the retained density integrated over
    /// frequency.
    pub fn band_power(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.bin_width
    }
}

/// One-sided PSD of the raw (rectangular-window) samples.
///
/// Satisfies Parseval's identity: the PSD integrated over frequency equals
/// the mean square of the samples.
pub fn periodogram(samples: &[f64], sample_rate: f64) -> Result<Psd> {
    validate_rate(sample_rate)?;
    if samples.is_empty() {
        return Err(Error::EmptyInput("window samples"));
    }
    let n = samples.len();
    let mut buf: Vec<Complex> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    Fft::new(n).forward(&mut buf);
    Ok(Psd {
        values: one_sided(&buf, 1.0 / (sample_rate * n as f64)),
        bin_width: sample_rate / n as f64,
        sample_rate,
        kind: FeatureKind::Periodogram,
    })
}

/// Welch PSD: the average of Hann-tapered periodograms over overlapped
/// segments of the window.
///
/// Segments advance by `segment_len - segment_overlap` samples; trailing
/// samples that do not fill a segment are discarded. The taper is
/// power-corrected (scaled by its summed square), so white-noise levels
/// match [`periodogram`].
pub fn welch_psd(
    samples: &[f64],
    sample_rate: f64,
    segment_len: usize,
    segment_overlap: usize,
) -> Result<Psd> {
    validate_rate(sample_rate)?;
    if samples.is_empty() {
        return Err(Error::EmptyInput("window samples"));
    }
    if segment_len == 0 {
        return Err(invalid_argument!("segment_len", "must be positive"));
    }
    if segment_len > samples.len() {
        return Err(invalid_argument!(
            "segment_len",
            "segment longer than window ({segment_len} > {})",
            samples.len()
        ));
    }
    if segment_overlap >= segment_len {
        return Err(invalid_argument!(
            "segment_overlap",
            "must be smaller than segment_len ({segment_overlap} >= {segment_len})"
        ));
    }

    let hop = segment_len - segment_overlap;
    let num_segments = (samples.len() - segment_len) / hop + 1;
    let taper = hann(segment_len);
    let taper_power: f64 = taper.iter().map(|w| w * w).sum();

    let plan = Fft::new(segment_len);
    let mut accum = vec![0.0f64; segment_len / 2 + 1];
    let mut buf = vec![Complex::ZERO; segment_len];
    for s in 0..num_segments {
        let start = s * hop;
        for (slot, (&x, &w)) in buf
            .iter_mut()
            .zip(samples[start..start + segment_len].iter().zip(taper.iter()))
        {
            *slot = Complex::new(x * w, 0.0);
        }
        plan.forward(&mut buf);
        for (acc, p) in accum.iter_mut().zip(one_sided_iter(&buf)) {
            *acc += p;
        }
    }

    let scale = 1.0 / (sample_rate * taper_power * num_segments as f64);
    for v in accum.iter_mut() {
        *v *= scale;
    }
    Ok(Psd {
        values: accum,
        bin_width: sample_rate / segment_len as f64,
        sample_rate,
        kind: FeatureKind::Welch,
    })
}

/// Restricts a PSD to the bins whose center frequency lies in
/// `[band_lo, band_hi]`, endpoints inclusive.
pub fn band_filter(psd: &Psd, band_lo: f64, band_hi: f64) -> Result<FeatureVector> {
    if !band_lo.is_finite() || band_lo < 0.0 {
        return Err(invalid_argument!("band_lo", "must be finite and >= 0"));
    }
    if !band_hi.is_finite() || band_hi <= band_lo {
        return Err(invalid_argument!(
            "band_hi",
            "must exceed band_lo ({band_hi} <= {band_lo})"
        ));
    }
    let nyquist = psd.sample_rate / 2.0;
    if band_hi > nyquist {
        return Err(Error::NyquistViolation {
            frequency_hz: band_hi,
            nyquist_hz: nyquist,
        });
    }

    let mut first_bin = None;
    let mut values = Vec::new();
    for (k, &v) in psd.values.iter().enumerate() {
        let f = psd.frequency(k);
        if f >= band_lo && f <= band_hi {
            if first_bin.is_none() {
                first_bin = Some(k);
            }
            values.push(v);
        }
    }
    match first_bin {
        None => Err(Error::EmptyBand),
        Some(first_bin) => Ok(FeatureVector {
            values,
            band_lo,
            band_hi,
            feature_kind: psd.kind,
            first_bin,
            bin_width: psd.bin_width,
        }),
    }
}

/// Periodic Hann taper of length `n`.
fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 * (1.0 - libm::cos(2.0 * core::f64::consts::PI * i as f64 / n as f64)))
        .collect()
}

fn validate_rate(sample_rate: f64) -> Result<()> {
    if !sample_rate.is_finite() || sample_rate <= 0.0 {
        return Err(invalid_argument!("sample_rate", "must be positive and finite"));
    }
    Ok(())
}

/// Folds a two-sided spectrum to one side, doubling interior bins (bin 0
/// and, for even lengths, the Nyquist bin carry no mirror and stay single).
fn one_sided(spectrum: &[Complex], scale: f64) -> Vec<f64> {
    one_sided_iter(spectrum).map(|p| p * scale).collect()
}

fn one_sided_iter(spectrum: &[Complex]) -> impl Iterator<Item = f64> + '_ {
    let n = spectrum.len();
    let half = n / 2;
    (0..=half).map(move |k| {
        let p = spectrum[k].norm_sq();
        let interior = k != 0 && !(n.is_multiple_of(2) && k == half);
        if interior {
            2.0 * p
        } else {
            p
        }
    })
}
