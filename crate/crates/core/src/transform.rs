//! Discrete Fourier transforms used by the spectral engines.
//!
//! Two routes are provided:
//! - [`fft2_in_place`]: a row/column 2-D FFT over power-of-two (or any
//!   rustfft-supported) sizes, used for zero-padded correlation.
//! - [`chirp_dft`]: an arbitrary-length DFT via Bluestein's chirp
//!   substitution `jk = (j² + k² − (k − j)²)/2`, evaluated with a power-of-two
//!   convolution. Chirp phases are reduced modulo `2L` in integer arithmetic
//!   so long transforms do not lose accuracy in the exponent.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Sign of the exponent: `Forward` is `e^{−2πi jk/L}`, `Inverse` is `e^{+2πi jk/L}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl From<Direction> for FftDirection {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Forward => FftDirection::Forward,
            Direction::Inverse => FftDirection::Inverse,
        }
    }
}

fn sign(d: Direction) -> f64 {
    match d {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    }
}

fn transform_rows(buf: &mut [Complex64], row_len: usize, fft: &Arc<dyn Fft<f64>>) {
    let scratch_len = fft.get_inplace_scratch_len();
    buf.par_chunks_mut(row_len).for_each_init(
        || vec![Complex64::default(); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
}

fn transpose(src: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut dst = vec![Complex64::default(); src.len()];
    dst.par_chunks_mut(rows).enumerate().for_each(|(j, col)| {
        for (i, d) in col.iter_mut().enumerate() {
            *d = src[i * cols + j];
        }
    });
    dst
}

/// Unnormalised 2-D DFT of a row-major `rows × cols` buffer.
///
/// Each row and column transform is independent, so the result does not
/// depend on how rayon schedules them.
pub fn fft2_in_place(buf: &mut Vec<Complex64>, rows: usize, cols: usize, dir: Direction) {
    assert_eq!(buf.len(), rows * cols);
    let mut planner = FftPlanner::new();
    let row_fft = planner.plan_fft(cols, dir.into());
    let col_fft = planner.plan_fft(rows, dir.into());
    transform_rows(buf, cols, &row_fft);
    let mut t = transpose(buf, rows, cols);
    transform_rows(&mut t, rows, &col_fft);
    *buf = transpose(&t, cols, rows);
}

/// Precomputed Bluestein plan for DFTs of one fixed length `L`.
pub struct ChirpPlan {
    len: usize,
    dir: Direction,
    conv_len: usize,
    chirp: Vec<Complex64>,
    kernel_hat: Vec<Complex64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl ChirpPlan {
    pub fn new(len: usize, dir: Direction) -> Self {
        assert!(len > 0, "transform length must be positive");
        let conv_len = (2 * len - 1).next_power_of_two();
        let two_len = 2 * len as u128;
        let sg = sign(dir);
        // chirp[k] = e^{sign·iπ k²/L}
        let chirp: Vec<Complex64> = (0..len)
            .map(|k| {
                let r = (k as u128 * k as u128 % two_len) as f64;
                Complex64::from_polar(1.0, sg * PI * r / len as f64)
            })
            .collect();
        let mut kernel = vec![Complex64::default(); conv_len];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            kernel[k] = chirp[k].conj();
            kernel[conv_len - k] = chirp[k].conj();
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(conv_len);
        let inv = planner.plan_fft_inverse(conv_len);
        fwd.process(&mut kernel);
        ChirpPlan { len, dir, conv_len, chirp, kernel_hat: kernel, fwd, inv }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// `X_k = Σ_j x_j e^{±2πi jk/L}` for `k ∈ [0, L)`; `x` may be shorter than
    /// `L` (implicit zero padding) but not longer.
    pub fn process(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert!(x.len() <= self.len, "input longer than transform length");
        let mut work = vec![Complex64::default(); self.conv_len];
        for (j, (&xj, &c)) in x.iter().zip(&self.chirp).enumerate() {
            work[j] = xj * c;
        }
        self.fwd.process(&mut work);
        for (w, &k) in work.iter_mut().zip(&self.kernel_hat) {
            *w *= k;
        }
        self.inv.process(&mut work);
        let scale = 1.0 / self.conv_len as f64;
        (0..self.len).map(|k| work[k] * self.chirp[k] * scale).collect()
    }
}

/// One-shot arbitrary-length DFT; see [`ChirpPlan::process`].
pub fn chirp_dft(x: &[Complex64], len: usize, dir: Direction) -> Vec<Complex64> {
    ChirpPlan::new(len, dir).process(x)
}
