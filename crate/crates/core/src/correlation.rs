//! Aperiodic autocorrelation, sidelobe energy and merit factor.
//!
//! Two engines produce the same integer table `C(u, v)`:
//!
//! - [`autocorrelation_direct`] sums `a_ij · a_{i+u, j+v}` over the overlap,
//!   O(n²m²) and exact.
//! - [`autocorrelation_spectral`] zero-pads to power-of-two sizes covering
//!   `(2n − 1) × (2m − 1)`, forms `|Â|²` and inverts. Values are rounded to the
//!   nearest integer; a rounding residual above [`ROUNDING_LIMIT`] is reported
//!   as a numerical failure rather than silently absorbed.
//!
//! [`fourth_power_sum`] evaluates the generating function on the
//! `2n × 2m` grid of roots `ζ_n^i = e^{iπ i/n}` and returns
//! `(1/4nm) Σ |A(ζ_n^i, ζ_m^j)|⁴`, which equals `Σ_{u,v} C(u, v)²`.

use std::time::Instant;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arrays::TernaryArray;
use crate::error::{Error, Result};
use crate::transform::{fft2_in_place, ChirpPlan, Direction};

/// Largest tolerated distance between a spectral value and its rounded integer.
pub const ROUNDING_LIMIT: f64 = 0.25;

/// Relative tolerance between [`fourth_power_sum`] and `Σ C²`.
pub const GRID_SUM_RTOL: f64 = 1e-9;

/// Arrays with at most this many cells use the direct engine under `Auto`.
pub const DIRECT_ENGINE_MAX_CELLS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Direct,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    #[default]
    Auto,
    Direct,
    Spectral,
}

impl EngineChoice {
    pub fn resolve(self, a: &TernaryArray) -> Engine {
        match self {
            EngineChoice::Direct => Engine::Direct,
            EngineChoice::Spectral => Engine::Spectral,
            EngineChoice::Auto if a.rows() * a.cols() <= DIRECT_ENGINE_MAX_CELLS => Engine::Direct,
            EngineChoice::Auto => Engine::Spectral,
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Direct => "direct",
            Engine::Spectral => "spectral",
        })
    }
}

/// `C(u, v)` for `|u| < n`, `|v| < m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationSpectrum {
    n: usize,
    m: usize,
    values: Vec<i64>,
}

impl CorrelationSpectrum {
    fn zeros(n: usize, m: usize) -> Self {
        CorrelationSpectrum { n, m, values: vec![0; (2 * n - 1) * (2 * m - 1)] }
    }

    #[inline]
    fn idx(&self, u: i64, v: i64) -> usize {
        (u + self.n as i64 - 1) as usize * (2 * self.m - 1) + (v + self.m as i64 - 1) as usize
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    /// `C(u, v)`, zero outside the stored window.
    pub fn get(&self, u: i64, v: i64) -> i64 {
        if u.unsigned_abs() as usize >= self.n || v.unsigned_abs() as usize >= self.m {
            0
        } else {
            self.values[self.idx(u, v)]
        }
    }

    pub fn peak(&self) -> i64 {
        self.get(0, 0)
    }

    /// Row-major values, `u` from `−(n−1)` to `n−1`, `v` likewise.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `Σ_{u,v} C(u, v)²`, peak included.
    pub fn power_sum(&self) -> i128 {
        self.values.iter().map(|&c| (c as i128) * (c as i128)).sum()
    }

    /// `Σ_{(u,v) ≠ (0,0)} C(u, v)²`.
    pub fn sidelobe_energy(&self) -> i128 {
        let peak = self.peak() as i128;
        self.power_sum() - peak * peak
    }

    pub fn is_symmetric(&self) -> bool {
        let (n, m) = (self.n as i64, self.m as i64);
        (-(n - 1)..n).all(|u| (-(m - 1)..m).all(|v| self.get(u, v) == self.get(-u, -v)))
    }

    /// Export as a `2n−1 × 2m−1` table centred on `(0, 0)`.
    pub fn to_text(&self) -> String {
        let width = 2 * self.m - 1;
        let mut out = format!("{} {}\n", 2 * self.n - 1, width);
        for row in self.values.chunks(width) {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn sidelobe_energy(spectrum: &CorrelationSpectrum) -> i128 {
    spectrum.sidelobe_energy()
}

pub fn autocorrelation_direct(a: &TernaryArray) -> CorrelationSpectrum {
    let (n, m) = (a.rows(), a.cols());
    let mut spec = CorrelationSpectrum::zeros(n, m);
    let cells = a.cells();
    for u in -(n as i64 - 1)..n as i64 {
        let (i0, i1) = (0.max(-u) as usize, (n as i64).min(n as i64 - u) as usize);
        for v in -(m as i64 - 1)..m as i64 {
            let (j0, j1) = (0.max(-v) as usize, (m as i64).min(m as i64 - v) as usize);
            let mut acc = 0i64;
            for i in i0..i1 {
                let row = &cells[i * m..(i + 1) * m];
                let shifted = &cells[(i as i64 + u) as usize * m..];
                for j in j0..j1 {
                    acc += (row[j] * shifted[(j as i64 + v) as usize]) as i64;
                }
            }
            let k = spec.idx(u, v);
            spec.values[k] = acc;
        }
    }
    spec
}

pub fn autocorrelation_spectral(a: &TernaryArray) -> Result<CorrelationSpectrum> {
    let (n, m) = (a.rows(), a.cols());
    let rows = (2 * n).next_power_of_two();
    let cols = (2 * m).next_power_of_two();
    let mut buf = vec![Complex64::default(); rows * cols];
    for i in 0..n {
        for j in 0..m {
            buf[i * cols + j] = Complex64::new(a.at(i, j) as f64, 0.0);
        }
    }
    fft2_in_place(&mut buf, rows, cols, Direction::Forward);
    for z in buf.iter_mut() {
        *z = Complex64::new(z.norm_sqr(), 0.0);
    }
    fft2_in_place(&mut buf, rows, cols, Direction::Inverse);
    let scale = 1.0 / (rows * cols) as f64;

    let mut spec = CorrelationSpectrum::zeros(n, m);
    let mut worst = 0.0f64;
    for u in -(n as i64 - 1)..n as i64 {
        let ri = u.rem_euclid(rows as i64) as usize;
        for v in -(m as i64 - 1)..m as i64 {
            let ci = v.rem_euclid(cols as i64) as usize;
            let x = buf[ri * cols + ci].re * scale;
            let rounded = x.round();
            worst = worst.max((x - rounded).abs());
            let k = spec.idx(u, v);
            spec.values[k] = rounded as i64;
        }
    }
    if worst > ROUNDING_LIMIT {
        return Err(Error::Numerical(format!(
            "spectral correlation rounding residual {worst:.3e} exceeds {ROUNDING_LIMIT}"
        )));
    }
    Ok(spec)
}

pub fn autocorrelation(a: &TernaryArray, engine: Engine) -> Result<CorrelationSpectrum> {
    match engine {
        Engine::Direct => Ok(autocorrelation_direct(a)),
        Engine::Spectral => autocorrelation_spectral(a),
    }
}

/// Generating function `A(ζ_n^i, ζ_m^j)` on the full `2n × 2m` grid, row-major.
pub fn generating_function_grid(a: &TernaryArray) -> Vec<Complex64> {
    let (n, m) = (a.rows(), a.cols());
    let col_plan = ChirpPlan::new(2 * m, Direction::Inverse);
    let row_plan = ChirpPlan::new(2 * n, Direction::Inverse);
    // transform each row over j, giving an n × 2m table
    let partial: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let row: Vec<Complex64> =
                (0..m).map(|j| Complex64::new(a.at(i, j) as f64, 0.0)).collect();
            col_plan.process(&row)
        })
        .collect();
    let mut grid = vec![Complex64::default(); 4 * n * m];
    for l in 0..2 * m {
        let column: Vec<Complex64> = partial.iter().map(|r| r[l]).collect();
        for (k, z) in row_plan.process(&column).into_iter().enumerate() {
            grid[k * 2 * m + l] = z;
        }
    }
    grid
}

/// `(1/4nm) Σ_{i<2n, j<2m} |A(ζ_n^i, ζ_m^j)|⁴`.
pub fn fourth_power_sum(a: &TernaryArray) -> f64 {
    let cells = 4 * a.rows() * a.cols();
    generating_function_grid(a)
        .iter()
        .map(|z| z.norm_sqr() * z.norm_sqr())
        .sum::<f64>()
        / cells as f64
}

/// [`fourth_power_sum`] cross-checked against an integer spectrum.
pub fn checked_fourth_power_sum(a: &TernaryArray, spectrum: &CorrelationSpectrum) -> Result<f64> {
    let grid = fourth_power_sum(a);
    let exact = spectrum.power_sum() as f64;
    let rel = (grid - exact).abs() / exact.max(1.0);
    if rel > GRID_SUM_RTOL {
        return Err(Error::Numerical(format!(
            "grid fourth-power sum {grid} differs from Σ C² = {exact} (relative {rel:.3e})"
        )));
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeritReport {
    pub n: usize,
    pub m: usize,
    pub merit_exact: Ratio<i128>,
    pub merit_float: f64,
    pub sidelobe_energy: i128,
    pub peak: i64,
    pub engine: Engine,
    pub elapsed: f64,
}

/// Wire form of a [`MeritReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeritReportJson {
    pub n: usize,
    pub m: usize,
    pub merit_num: i128,
    pub merit_den: i128,
    pub merit_float: f64,
    pub energy: i128,
    pub engine: Engine,
    pub seconds: f64,
}

impl MeritReport {
    pub fn inverse_merit(&self) -> Ratio<i128> {
        self.merit_exact.recip()
    }

    pub fn to_json_value(&self) -> MeritReportJson {
        MeritReportJson {
            n: self.n,
            m: self.m,
            merit_num: *self.merit_exact.numer(),
            merit_den: *self.merit_exact.denom(),
            merit_float: self.merit_float,
            energy: self.sidelobe_energy,
            engine: self.engine,
            seconds: self.elapsed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("report is always serialisable")
    }
}

pub fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Merit from an already computed spectrum: `C(0,0)² / sidelobe energy`.
pub fn merit_from_spectrum(spectrum: &CorrelationSpectrum) -> Result<Ratio<i128>> {
    let energy = spectrum.sidelobe_energy();
    if energy == 0 {
        return Err(Error::UndefinedMerit);
    }
    let peak = spectrum.peak() as i128;
    Ok(Ratio::new(peak * peak, energy))
}

/// Merit factor `C(0,0)² / Σ_{(u,v)≠(0,0)} C(u,v)²`. For binary arrays the
/// peak is `nm`; for ternary arrays it is the number of nonzero cells.
pub fn merit_factor(a: &TernaryArray, engine: EngineChoice) -> Result<MeritReport> {
    let start = Instant::now();
    let engine = engine.resolve(a);
    let spectrum = autocorrelation(a, engine)?;
    let merit = merit_from_spectrum(&spectrum)?;
    Ok(MeritReport {
        n: a.rows(),
        m: a.cols(),
        merit_exact: merit,
        merit_float: ratio_to_f64(merit),
        sidelobe_energy: spectrum.sidelobe_energy(),
        peak: spectrum.peak(),
        engine,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Barker sequences of the given length (2, 3, 4, 5, 7, 11, 13).
pub fn barker_sequence(len: usize) -> Option<TernaryArray> {
    let cells: &[i8] = match len {
        2 => &[1, -1],
        3 => &[1, 1, -1],
        4 => &[1, 1, -1, 1],
        5 => &[1, 1, 1, -1, 1],
        7 => &[1, 1, 1, -1, -1, 1, -1],
        11 => &[1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1],
        13 => &[1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1],
        _ => return None,
    };
    TernaryArray::sequence(cells.to_vec()).ok()
}
