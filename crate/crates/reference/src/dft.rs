//! Naive discrete Fourier transform, straight from the definition:
//!
//! ```text
//! X[k] = sum_{n=0}^{N-1} x[n] * exp(-2*pi*i*k*n/N)
//! ```
//!
//! O(N^2), usable for inputs up to a few thousand samples. Returns the full
//! two-sided spectrum as (re, im) pairs.

use std::f64::consts::PI;

/// Two-sided DFT of a real input, evaluated term by term.
pub fn dft(input: &[f64]) -> Vec<(f64, f64)> {
    let n = input.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut re = 0.0;
        let mut im = 0.0;
        for (idx, &x) in input.iter().enumerate() {
            // Reduce k*idx mod N before converting to an angle so large
            // products do not lose precision.
            let angle = -2.0 * PI * ((k * idx) % n) as f64 / n as f64;
            re += x * angle.cos();
            im += x * angle.sin();
        }
        out.push((re, im));
    }
    out
}

/// Two-sided DFT of a complex input, evaluated term by term.
pub fn dft_complex(input: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let n = input.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut re = 0.0;
        let mut im = 0.0;
        for (idx, &(xr, xi)) in input.iter().enumerate() {
            let angle = -2.0 * PI * ((k * idx) % n) as f64 / n as f64;
            let (c, s) = (angle.cos(), angle.sin());
            re += xr * c - xi * s;
            im += xr * s + xi * c;
        }
        out.push((re, im));
    }
    out
}

/// Squared magnitude of each DFT bin.
pub fn power(input: &[f64]) -> Vec<f64> {
    dft(input)
        .into_iter()
        .map(|(re, im)| re * re + im * im)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_input_concentrates_in_dc() {
        let x = vec![1.0; 8];
        let spec = dft(&x);
        assert!((spec[0].0 - 8.0).abs() < 1e-12);
        assert!(spec[0].1.abs() < 1e-12);
        for bin in &spec[1..] {
            assert!(bin.0.abs() < 1e-12 && bin.1.abs() < 1e-12);
        }
    }

    #[test]
    fn four_point_dft_matches_hand_computation() {
        // x = [1, 2, 3, 4]:
        //   X[0] = 10
        //   X[1] = (1 - 3) + i(4 - 2) = -2 + 2i
        //   X[2] = 1 - 2 + 3 - 4 = -2
        //   X[3] = -2 - 2i
        let spec = dft(&[1.0, 2.0, 3.0, 4.0]);
        let expected = [(10.0, 0.0), (-2.0, 2.0), (-2.0, 0.0), (-2.0, -2.0)];
        for (got, want) in spec.iter().zip(expected.iter()) {
            assert!((got.0 - want.0).abs() < 1e-12);
            assert!((got.1 - want.1).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_bin_sinusoid_lands_in_its_bin() {
        let n = 16;
        let k = 3;
        let x: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * k as f64 * i as f64 / n as f64).sin())
            .collect();
        let p = power(&x);
        // sin at exact bin k: all power splits between bins k and N-k.
        let total: f64 = p.iter().sum();
        assert!((p[k] + p[n - k]) / total > 1.0 - 1e-12);
    }

    #[test]
    fn parseval_holds() {
        let x = [0.3, -1.2, 0.7, 2.5, -0.4, 0.0, 1.1, -2.2, 0.9];
        let time_energy: f64 = x.iter().map(|v| v * v).sum();
        let freq_energy: f64 = power(&x).iter().sum::<f64>() / x.len() as f64;
        assert!((time_energy - freq_energy).abs() < 1e-9);
    }

    #[test]
    fn complex_dft_agrees_with_real_dft_on_real_input() {
        let x = [0.5, -0.25, 1.5, 0.75, -1.0];
        let xc: Vec<(f64, f64)> = x.iter().map(|&v| (v, 0.0)).collect();
        let a = dft(&x);
        let b = dft_complex(&xc);
        for (u, v) in a.iter().zip(b.iter()) {
            assert!((u.0 - v.0).abs() < 1e-12 && (u.1 - v.1).abs() < 1e-12);
        }
    }
}
