//! In-place complex FFT used by the spectral estimators.
//!
//! Power-of-two lengths run the iterative radix-2 Cooley-Tukey algorithm
//! with a precomputed root table. Every other length is handled by
//! Bluestein's chirp-z reformulation, which expresses an arbitrary-length
//! DFT as a linear convolution and evaluates that convolution with a
//! power-of-two FFT of size >= 2N-1. One [`Fft`] plan caches the tables for
//! its length and can be reused across calls.

use alloc::vec;
use alloc::vec::Vec;

/// One complex sample, interleaved nowhere: plain re/im pair.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn mul(self, other: Complex) -> Complex {
        Complex {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }

    pub fn conj(self) -> Complex {
        Complex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

fn add(a: Complex, b: Complex) -> Complex {
    Complex::new(a.re + b.re, a.im + b.im)
}

fn sub(a: Complex, b: Complex) -> Complex {
    Complex::new(a.re - b.re, a.im - b.im)
}

/// Reusable transform plan for one length.
pub(crate) struct Fft {
    len: usize,
    kind: Kind,
}

enum Kind {
    /// Radix-2 plan: roots[k] = exp(-2*pi*i*k/len) for k < len/2.
    Radix2 { roots: Vec<Complex> },
    /// Bluestein plan for arbitrary length.
    Bluestein {
        /// Inner power-of-two transform of size m >= 2*len - 1.
        inner: alloc::boxed::Box<Fft>,
        /// chirp[n] = exp(-i*pi*n^2/len) for n < len.
        chirp: Vec<Complex>,
        /// Forward inner FFT of the conjugate-chirp sequence, wrapped for
        /// circular convolution.
        b_freq: Vec<Complex>,
    },
}

impl Fft {
    /// Builds a plan for transforms of length `len` (>= 1).
    pub fn new(len: usize) -> Self {
        assert!(len >= 1, "transform length must be at least 1");
        if len.is_power_of_two() {
            let half = len / 2;
            let mut roots = Vec::with_capacity(half);
            for k in 0..half {
                let angle = -2.0 * core::f64::consts::PI * k as f64 / len as f64;
                roots.push(Complex::new(libm::cos(angle), libm::sin(angle)));
            }
            Fft {
                len,
                kind: Kind::Radix2 { roots },
            }
        } else {
            let m = (2 * len - 1).next_power_of_two();
            let inner = alloc::boxed::Box::new(Fft::new(m));
            // Angles are pi * n^2 / len; reduce n^2 modulo 2*len in integer
            // arithmetic so large n keeps full precision.
            let chirp: Vec<Complex> = (0..len)
                .map(|n| {
                    let sq = ((n as u128 * n as u128) % (2 * len as u128)) as f64;
                    let angle = -core::f64::consts::PI * sq / len as f64;
                    Complex::new(libm::cos(angle), libm::sin(angle))
                })
                .collect();
            let mut b = vec![Complex::ZERO; m];
            b[0] = chirp[0].conj();
            for n in 1..len {
                let v = chirp[n].conj();
                b[n] = v;
                b[m - n] = v;
            }
            inner.forward(&mut b);
            Fft {
                len,
                kind: Kind::Bluestein {
                    inner,
                    chirp,
                    b_freq: b,
                },
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Unnormalized forward transform, in place.
    pub fn forward(&self, buf: &mut [Complex]) {
        assert_eq!(buf.len(), self.len, "buffer length must match the plan");
        match &self.kind {
            Kind::Radix2 { roots } => radix2(buf, roots),
            Kind::Bluestein {
                inner,
                chirp,
                b_freq,
            } => {
                let m = inner.len();
                let mut a = vec![Complex::ZERO; m];
                for (n, slot) in buf.iter().enumerate() {
                    a[n] = slot.mul(chirp[n]);
                }
                inner.forward(&mut a);
                for (x, w) in a.iter_mut().zip(b_freq.iter()) {
                    *x = x.mul(*w);
                }
                inner.inverse(&mut a);
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = a[k].mul(chirp[k]);
                }
            }
        }
    }

    /// Inverse transform with 1/N scaling, in place.
    pub fn inverse(&self, buf: &mut [Complex]) {
        for x in buf.iter_mut() {
            *x = x.conj();
        }
        self.forward(buf);
        let scale = 1.0 / self.len as f64;
        for x in buf.iter_mut() {
            *x = Complex::new(x.re * scale, -x.im * scale);
        }
    }
}

/// Iterative radix-2 with bit-reversal reordering. `roots[k]` holds
/// exp(-2*pi*i*k/n) for k < n/2; stage twiddles are strided reads of it.
fn radix2(buf: &mut [Complex], roots: &[Complex]) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    let shift = n.leading_zeros() + 1;
    for i in 0..n {
        let j = i.reverse_bits() >> shift;
        if j > i {
            buf.swap(i, j);
        }
    }
    let mut width = 2;
    while width <= n {
        let stride = n / width;
        let half = width / 2;
        let mut start = 0;
        while start < n {
            for j in 0..half {
                let w = roots[j * stride];
                let lo = buf[start + j];
                let hi = buf[start + j + half].mul(w);
                buf[start + j] = add(lo, hi);
                buf[start + j + half] = sub(lo, hi);
            }
            start += width;
        }
        width <<= 1;
    }
}
