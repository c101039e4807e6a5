//! Exhaustive search over small binary arrays, rotation sweeps and
//! prime-indexed convergence studies.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrays::{legendre_array, legendre_sequence, qr_array, Rotation, SignPattern, TernaryArray};
use crate::asymptotics::{AsymptoteSpec, Family, Rational};
use crate::correlation::{autocorrelation, autocorrelation_direct, merit_from_spectrum, ratio_to_f64, Engine};
use crate::error::{Error, Result};
use crate::finite_field::{ExtFieldSpec, PrimeModulus};

/// Hard cap on `nm` for exhaustive enumeration.
pub const EXHAUSTIVE_MAX_CELLS: usize = 24;

/// Prefix bits split off for parallel sub-ranges.
const SPLIT_BITS: usize = 6;

/// Counter-based per-trial seed (splitmix64 over the inputs).
pub fn trial_seed(seed: u64, p: u64, q: u64, trial: u64) -> u64 {
    let mut x = seed;
    for v in [p, q, trial] {
        x = splitmix64(x ^ splitmix64(v));
    }
    x
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Float with 12 significant digits, `%.12g` style.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').expect("scientific format");
        return format!("{}e{}", trim_zeros(mant), e);
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn ratio_str(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

/// Best array found by [`exhaustive_best_merit`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub merit: Rational,
    pub witness: TernaryArray,
    pub sidelobe_energy: i128,
    /// Arrays actually visited (one per symmetry class).
    pub visited: u64,
}

/// Aggregate over symmetry-class representatives.
#[derive(Debug, Clone, Copy)]
struct Tally {
    best_energy: i64,
    best_code: u64,
    energy_sum: u128,
    visited: u64,
}

impl Tally {
    fn empty() -> Self {
        Tally { best_energy: i64::MAX, best_code: u64::MAX, energy_sum: 0, visited: 0 }
    }

    fn merge(self, o: Tally) -> Tally {
        let (best_energy, best_code) = if (o.best_energy, o.best_code) < (self.best_energy, self.best_code) {
            (o.best_energy, o.best_code)
        } else {
            (self.best_energy, self.best_code)
        };
        Tally {
            best_energy,
            best_code,
            energy_sum: self.energy_sum + o.energy_sum,
            visited: self.visited + o.visited,
        }
    }
}

/// Enumeration layout for an `n × m` binary array.
///
/// Energy is invariant under negation and under multiplying by `(−1)^i` or
/// `(−1)^j` (each lag's correlation only changes sign). That group acts
/// freely, and each orbit has exactly one member with `+1` at `(0,0)`,
/// `(0,1)` and `(1,0)`; that member is also the orbit's lexicographic
/// minimum, so fixing those cells keeps the smallest maximiser reachable.
struct Layout {
    n: usize,
    m: usize,
    free: Vec<usize>,
    /// For each cell, `(other cell, half-plane lag index)` over all other cells.
    partners: Vec<Vec<(usize, usize)>>,
    lags: usize,
}

impl Layout {
    fn new(n: usize, m: usize) -> Self {
        let cells = n * m;
        let mut fixed = vec![0usize];
        if m >= 2 {
            fixed.push(1);
        }
        if n >= 2 {
            fixed.push(m);
        }
        let free = (0..cells).filter(|c| !fixed.contains(c)).collect();
        // half-plane lags (u, v) with u > 0, or u = 0 and v > 0
        let lag_index = |u: i64, v: i64| -> usize {
            let (u, v) = if u > 0 || (u == 0 && v > 0) { (u, v) } else { (-u, -v) };
            if u == 0 {
                v as usize - 1
            } else {
                (m - 1) + (u as usize - 1) * (2 * m - 1) + (v + m as i64 - 1) as usize
            }
        };
        let lags = (m - 1) + (n - 1) * (2 * m - 1);
        let partners = (0..cells)
            .map(|c| {
                let (ci, cj) = ((c / m) as i64, (c % m) as i64);
                (0..cells)
                    .filter(|&d| d != c)
                    .map(|d| {
                        let (di, dj) = ((d / m) as i64, (d % m) as i64);
                        (d, lag_index(di - ci, dj - cj))
                    })
                    .collect()
            })
            .collect();
        Layout { n, m, free, partners, lags }
    }

    fn group_order(&self) -> u64 {
        1 << (self.n * self.m - self.free.len())
    }

    fn code_bit(&self, cell: usize) -> u64 {
        1 << (self.n * self.m - 1 - cell)
    }

    /// Gray-code walk over the low free cells with the high free cells set
    /// from `prefix`.
    fn walk(&self, prefix: u64, low_bits: usize) -> Tally {
        let cells = self.n * self.m;
        let mut a = vec![1i8; cells];
        let mut code = 0u64;
        for (k, &c) in self.free[low_bits..].iter().enumerate() {
            if (prefix >> k) & 1 == 1 {
                a[c] = -1;
                code |= self.code_bit(c);
            }
        }
        let mut corr = vec![0i64; self.lags];
        for c in 0..cells {
            for &(d, w) in &self.partners[c] {
                if d > c {
                    corr[w] += (a[c] * a[d]) as i64;
                }
            }
        }
        let mut half: i64 = corr.iter().map(|c| c * c).sum();
        let mut tally = Tally::empty();
        let record = |half: i64, code: u64, tally: &mut Tally| {
            let energy = 2 * half;
            tally.visited += 1;
            tally.energy_sum += energy as u128;
            if (energy, code) < (tally.best_energy, tally.best_code) {
                tally.best_energy = energy;
                tally.best_code = code;
            }
        };
        record(half, code, &mut tally);
        for step in 1u64..(1u64 << low_bits) {
            let c = self.free[step.trailing_zeros() as usize];
            let ac = a[c] as i64;
            for &(d, w) in &self.partners[c] {
                let delta = -2 * ac * a[d] as i64;
                let old = corr[w];
                corr[w] = old + delta;
                half += delta * (2 * old + delta);
            }
            a[c] = -a[c];
            code ^= self.code_bit(c);
            record(half, code, &mut tally);
        }
        tally
    }

    fn run(&self) -> Tally {
        let high = self.free.len().min(SPLIT_BITS);
        let low = self.free.len() - high;
        (0..1u64 << high)
            .into_par_iter()
            .map(|prefix| self.walk(prefix, low))
            .reduce(Tally::empty, Tally::merge)
    }

    fn decode(&self, code: u64) -> TernaryArray {
        let cells = (0..self.n * self.m)
            .map(|c| if code & self.code_bit(c) != 0 { -1 } else { 1 })
            .collect();
        TernaryArray::new(self.n, self.m, cells).expect("dimensions are valid")
    }
}

fn check_exhaustive(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Shape(format!("empty array {n}×{m}")));
    }
    if n * m > EXHAUSTIVE_MAX_CELLS {
        return Err(Error::SizeCap { what: "cells", value: (n * m) as u64, cap: EXHAUSTIVE_MAX_CELLS as u64 });
    }
    if n * m == 1 {
        return Err(Error::UndefinedMerit);
    }
    Ok(())
}

/// Largest merit over all `2^{nm}` binary `n × m` arrays, with the
/// lexicographically smallest maximiser (rows concatenated, `+1 < −1`).
pub fn exhaustive_best_merit(n: usize, m: usize) -> Result<SearchResult> {
    check_exhaustive(n, m)?;
    let layout = Layout::new(n, m);
    let tally = layout.run();
    let peak = (n * m) as i128;
    Ok(SearchResult {
        merit: Rational::new(peak * peak, tally.best_energy as i128),
        witness: layout.decode(tally.best_code),
        sidelobe_energy: tally.best_energy as i128,
        visited: tally.visited,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanMode {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanInverseMerit {
    pub mean: f64,
    /// Exact value in exhaustive mode.
    pub exact: Option<Rational>,
    /// Standard error of the mean in sampled mode.
    pub std_error: Option<f64>,
    pub samples: u64,
}

/// Mean of `1/F` over binary `n × m` arrays.
pub fn mean_inverse_merit(n: usize, m: usize, mode: MeanMode) -> Result<MeanInverseMerit> {
    match mode {
        MeanMode::Exhaustive => {
            check_exhaustive(n, m)?;
            let layout = Layout::new(n, m);
            let tally = layout.run();
            let cells = (n * m) as i128;
            let total = tally.energy_sum as i128 * layout.group_order() as i128;
            let exact = Rational::new(total, (1i128 << (n * m)) * cells * cells);
            Ok(MeanInverseMerit {
                mean: ratio_to_f64(exact),
                exact: Some(exact),
                std_error: None,
                samples: 1 << (n * m),
            })
        }
        MeanMode::Sampled { seed, count } => {
            if n == 0 || m == 0 {
                return Err(Error::Shape(format!("empty array {n}×{m}")));
            }
            if n * m == 1 {
                return Err(Error::UndefinedMerit);
            }
            if count < 2 {
                return Err(Error::Domain("sampled mean needs at least two draws".into()));
            }
            let peak2 = ((n * m) * (n * m)) as f64;
            let values: Vec<f64> = (0..count as u64)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, n as u64, m as u64, k));
                    let a = TernaryArray::random_binary(n, m, &mut rng).expect("non-empty");
                    autocorrelation_direct(&a).sidelobe_energy() as f64 / peak2
                })
                .collect();
            let c = count as f64;
            let mean = values.iter().sum::<f64>() / c;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (c - 1.0);
            Ok(MeanInverseMerit { mean, exact: None, std_error: Some((var / c).sqrt()), samples: count as u64 })
        }
    }
}

// ---------------------------------------------------------------------------
// rotation sweeps

/// Family member parameters: a sign pattern for Legendre arrays, or a field
/// basis and corner value for quadratic-residue arrays.
#[derive(Debug, Clone, PartialEq)]
pub enum Member {
    Pattern(SignPattern),
    Basis { spec: ExtFieldSpec, y00: i8 },
}

/// Build the unrotated family member of size `p × q`.
pub fn build_member(family: Family, p: u64, q: u64, member: &Member) -> Result<TernaryArray> {
    match (family, member) {
        (Family::LegendreArray, Member::Pattern(v)) => {
            let (pp, qq) = (PrimeModulus::new(p)?, PrimeModulus::new(q)?);
            legendre_array(pp, qq, v)
        }
        (Family::QrArray, Member::Basis { spec, y00 }) => {
            if p != q {
                return Err(Error::Shape(format!("quadratic-residue arrays are square, got {p}×{q}")));
            }
            let pp = PrimeModulus::new(p)?;
            qr_array(pp, spec, *y00)
        }
        (Family::LegendreArray | Family::QrArray, _) => {
            Err(Error::Family(format!("member parameters do not match family {family}")))
        }
        _ => Err(Error::Family(format!("{family} has no two-parameter rotation sweep"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub s: Ratio<i64>,
    pub t: Ratio<i64>,
    pub merit_measured: Rational,
    pub f_measured: f64,
    pub f_predicted: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub family: Family,
    pub p: u64,
    pub q: u64,
    pub resolution: i64,
    pub rows: Vec<SweepRow>,
}

/// Grid points `k/res` with `−res/2 < k ≤ res/2`.
pub fn grid_points(resolution: i64) -> Vec<Ratio<i64>> {
    let lo = (-resolution).div_euclid(2) + 1;
    (lo..=resolution / 2).map(|k| Ratio::new(k, resolution)).collect()
}

fn circular_gap(a: Ratio<i64>, b: Ratio<i64>) -> Ratio<i64> {
    let d = crate::arrays::canonical_unit(a - b);
    d.abs()
}

impl SweepResult {
    /// First row, in grid order, with the largest measured merit.
    pub fn argmax(&self) -> &SweepRow {
        let mut best = &self.rows[0];
        for r in &self.rows[1..] {
            if r.merit_measured > best.merit_measured {
                best = r;
            }
        }
        best
    }

    /// Whether `row` lies within one grid step of some `(±1/4, ±1/4)`, with
    /// distances measured around the unit circle.
    pub fn near_optimum(&self, row: &SweepRow) -> bool {
        let step = Ratio::new(1, self.resolution);
        let q = Ratio::new(1, 4);
        let near = |x: Ratio<i64>| circular_gap(x, q) <= step || circular_gap(x, -q) <= step;
        near(row.s) && near(row.t)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s_num,s_den,t_num,t_den,F_measured,F_predicted\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.s.numer(),
                r.s.denom(),
                r.t.numer(),
                r.t.denom(),
                fmt_sig12(r.f_measured),
                fmt_sig12(ratio_to_f64(r.f_predicted))
            );
        }
        out
    }

    /// Long format for contour plotting: `s,t,series,F`.
    pub fn to_plot_csv(&self) -> String {
        let mut out = String::from("s,t,series,F\n");
        let f = |x: Ratio<i64>| fmt_sig12(*x.numer() as f64 / *x.denom() as f64);
        for (series, pick) in [("measured", 0), ("predicted", 1)] {
            for r in &self.rows {
                let v = if pick == 0 { r.f_measured } else { ratio_to_f64(r.f_predicted) };
                let _ = writeln!(out, "{},{},{series},{}", f(r.s), f(r.t), fmt_sig12(v));
            }
        }
        out
    }
}

/// Measure the merit of every rotation on a `resolution × resolution` grid
/// over `(−1/2, 1/2]²` and pair it with the asymptotic prediction.
pub fn rotation_sweep(family: Family, p: u64, q: u64, resolution: i64, member: &Member) -> Result<SweepResult> {
    if resolution < 1 {
        return Err(Error::Domain(format!("grid resolution must be positive, got {resolution}")));
    }
    let base = build_member(family, p, q, member)?;
    let grid = grid_points(resolution);
    let points: Vec<(Ratio<i64>, Ratio<i64>)> =
        grid.iter().flat_map(|&s| grid.iter().map(move |&t| (s, t))).collect();
    let rows = points
        .into_par_iter()
        .map(|(s, t)| -> Result<SweepRow> {
            let rot = Rotation::new(s, t);
            let spectrum = autocorrelation(&base.rotate(rot), Engine::Spectral)?;
            let merit = merit_from_spectrum(&spectrum)?;
            let inv = AsymptoteSpec::new(family, rot).predicted();
            Ok(SweepRow { s, t, merit_measured: merit, f_measured: ratio_to_f64(merit), f_predicted: inv.recip() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { family, p, q, resolution, rows })
}

// ---------------------------------------------------------------------------
// convergence studies

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub p: u64,
    pub q: u64,
    pub rotation: Rotation,
    pub trial: u64,
    pub trial_seed: u64,
    pub measured: Rational,
    pub predicted: Rational,
    pub residual: f64,
}

impl ConvergenceRow {
    pub fn measured_f64(&self) -> f64 {
        ratio_to_f64(self.measured)
    }

    pub fn predicted_f64(&self) -> f64 {
        ratio_to_f64(self.predicted)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceConfig {
    pub family: Family,
    /// `(p, q)` pairs; `q` is ignored for sequences and must equal `p` for
    /// quadratic-residue arrays.
    pub primes: Vec<(u64, u64)>,
    pub rotation: Rotation,
    /// Family members per prime. Sequences have a single member, so they
    /// always get one row per prime.
    pub trials: usize,
    pub seed: u64,
    /// Corner value of quadratic-residue arrays.
    pub y00: i8,
}

/// Inverse merit (or normalised power sum, for the ternary sequence family)
/// of one rotated member.
fn measure(family: Family, a: &TernaryArray, p: u64) -> Result<Rational> {
    let spectrum = autocorrelation(a, Engine::Spectral)?;
    if family == Family::TernaryLegendreSeq {
        return Ok(Rational::new(spectrum.power_sum(), (p * p) as i128));
    }
    Ok(merit_from_spectrum(&spectrum)?.recip())
}

/// Measure each family member against its asymptotic prediction; rows come
/// back sorted by `(p, q, trial)`.
pub fn convergence_study(cfg: &ConvergenceConfig) -> Result<Vec<ConvergenceRow>> {
    if cfg.trials == 0 {
        return Err(Error::Domain("at least one trial per prime is required".into()));
    }
    let mut jobs = Vec::new();
    let mut pairs = Vec::with_capacity(cfg.primes.len());
    for &(p, q) in &cfg.primes {
        let pm = PrimeModulus::new(p)?;
        let (q, qm) = if cfg.family.is_sequence() { (1, pm) } else { (q, PrimeModulus::new(q)?) };
        if cfg.family == Family::QrArray && p != q {
            return Err(Error::Shape(format!("quadratic-residue arrays are square, got {p}×{q}")));
        }
        pairs.push((p, q, pm, qm));
    }
    pairs.sort_by_key(|&(p, q, _, _)| (p, q));
    let rotation = if cfg.family.is_sequence() { Rotation::seq(cfg.rotation.s()) } else { cfg.rotation };
    let trials = if cfg.family.is_sequence() { 1 } else { cfg.trials as u64 };
    for &(p, q, pm, qm) in &pairs {
        for trial in 0..trials {
            jobs.push((p, q, pm, qm, trial));
        }
    }
    let predicted = AsymptoteSpec::new(cfg.family, rotation).predicted();
    jobs.into_par_iter()
        .map(|(p, q, pm, qm, trial)| {
            let seed = trial_seed(cfg.seed, p, q, trial);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = match cfg.family {
                Family::LegendreSeq => legendre_sequence(pm, false),
                Family::TernaryLegendreSeq => legendre_sequence(pm, true),
                Family::LegendreArray => {
                    legendre_array(pm, qm, &SignPattern::random(p as usize, q as usize, &mut rng))?
                }
                Family::QrArray => qr_array(pm, &ExtFieldSpec::random_basis(pm, &mut rng), cfg.y00)?,
            };
            let measured = measure(cfg.family, &base.rotate(rotation), p)?;
            let residual = ratio_to_f64((measured - predicted).abs());
            Ok(ConvergenceRow { p, q, rotation, trial, trial_seed: seed, measured, predicted, residual })
        })
        .collect()
}

/// Mean residual per `(p, q)`, in the order the rows list them.
pub fn mean_residuals(rows: &[ConvergenceRow]) -> Vec<(u64, u64, f64)> {
    let mut out: Vec<(u64, u64, f64, usize)> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(last) if last.0 == r.p && last.1 == r.q => {
                last.2 += r.residual;
                last.3 += 1;
            }
            _ => out.push((r.p, r.q, r.residual, 1)),
        }
    }
    out.into_iter().map(|(p, q, s, k)| (p, q, s / k as f64)).collect()
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("p,q,s,t,inv_merit_measured,inv_merit_predicted,residual,trial_seed\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.p,
            r.q,
            ratio_str(r.rotation.s()),
            ratio_str(r.rotation.t()),
            fmt_sig12(r.measured_f64()),
            fmt_sig12(r.predicted_f64()),
            fmt_sig12(r.residual),
            r.trial_seed
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::{barker_sequence, merit_factor, EngineChoice};
    use crate::finite_field::make_ext_field;
    use num_traits::Zero;

    /// Every binary array, plainly.
    fn brute_force(n: usize, m: usize) -> (Rational, TernaryArray, Rational) {
        let cells = n * m;
        let mut best: Option<(i128, u64)> = None;
        let mut sum = Rational::zero();
        for code in 0u64..1 << cells {
            let v: Vec<i8> = (0..cells).map(|c| if code >> (cells - 1 - c) & 1 == 1 { -1 } else { 1 }).collect();
            let a = TernaryArray::new(n, m, v).unwrap();
            let e = autocorrelation_direct(&a).sidelobe_energy();
            sum += Rational::new(e, (cells * cells) as i128);
            if best.is_none_or(|b| e < b.0) {
                best = Some((e, code));
            }
        }
        let (e, code) = best.unwrap();
        let v = (0..cells).map(|c| if code >> (cells - 1 - c) & 1 == 1 { -1 } else { 1 }).collect();
        let peak = cells as i128;
        (
            Rational::new(peak * peak, e),
            TernaryArray::new(n, m, v).unwrap(),
            sum / Rational::from_integer(1 << cells),
        )
    }

    #[test]
    fn matches_brute_force() {
        for (n, m) in [(2, 1), (1, 2), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1), (3, 3), (4, 2), (2, 5), (7, 1)] {
            let got = exhaustive_best_merit(n, m).unwrap();
            let (merit, witness, mean) = brute_force(n, m);
            assert_eq!(got.merit, merit, "{n}x{m}");
            assert_eq!(got.witness, witness, "{n}x{m}");
            let exact = mean_inverse_merit(n, m, MeanMode::Exhaustive).unwrap().exact.unwrap();
            assert_eq!(exact, mean, "{n}x{m}");
        }
    }

    #[test]
    fn known_optima() {
        assert_eq!(exhaustive_best_merit(2, 1).unwrap().merit, Rational::from_integer(2));
        assert_eq!(exhaustive_best_merit(4, 4).unwrap().merit, Rational::new(16, 3));
        let r = exhaustive_best_merit(13, 1).unwrap();
        assert_eq!(r.merit, Rational::new(169, 12));
        assert_eq!(merit_factor(&r.witness, EngineChoice::Direct).unwrap().merit_exact, r.merit);
        let b13 = barker_sequence(13).unwrap();
        assert_eq!(merit_factor(&b13, EngineChoice::Direct).unwrap().merit_exact, r.merit);
    }

    #[test]
    fn visits_one_eighth() {
        assert_eq!(exhaustive_best_merit(3, 3).unwrap().visited, 1 << 6);
        assert_eq!(exhaustive_best_merit(6, 1).unwrap().visited, 1 << 4);
    }

    #[test]
    fn caps_and_degenerate_sizes() {
        assert!(matches!(exhaustive_best_merit(5, 5), Err(Error::SizeCap { .. })));
        assert!(matches!(exhaustive_best_merit(1, 1), Err(Error::UndefinedMerit)));
        assert!(matches!(mean_inverse_merit(5, 5, MeanMode::Exhaustive), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn mean_identity_small() {
        for (n, m) in [(2, 1), (2, 2), (3, 2), (4, 2)] {
            let nm = (n * m) as i128;
            let r = mean_inverse_merit(n, m, MeanMode::Exhaustive).unwrap();
            assert_eq!(r.exact.unwrap(), Rational::new(nm - 1, nm));
        }
    }

    #[test]
    fn sampled_mean_within_three_errors() {
        let r = mean_inverse_merit(8, 8, MeanMode::Sampled { seed: 5, count: 20_000 }).unwrap();
        let se = r.std_error.unwrap();
        assert!((r.mean - (1.0 - 1.0 / 64.0)).abs() < 3.0 * se, "{} ± {se}", r.mean);
        let again = mean_inverse_merit(8, 8, MeanMode::Sampled { seed: 5, count: 20_000 }).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(fmt_sig12(2.0), "2");
        assert_eq!(fmt_sig12(36.0 / 13.0), "2.76923076923");
        assert_eq!(fmt_sig12(-0.125), "-0.125");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(1.5e-9), "1.5e-9");
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn grid_includes_quarters() {
        let g = grid_points(8);
        assert_eq!(g.len(), 8);
        assert_eq!(g[0], Ratio::new(-3, 8));
        assert_eq!(*g.last().unwrap(), Ratio::new(1, 2));
        assert!(g.contains(&Ratio::new(1, 4)) && g.contains(&Ratio::new(-1, 4)));
        assert_eq!(grid_points(5).len(), 5);
        assert_eq!(grid_points(1), vec![Ratio::from_integer(0)]);
    }

    #[test]
    fn small_qr_sweep() {
        let spec = make_ext_field(PrimeModulus::new(13).unwrap());
        let r = rotation_sweep(Family::QrArray, 13, 13, 4, &Member::Basis { spec, y00: 1 }).unwrap();
        assert_eq!(r.rows.len(), 16);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 17);
        for row in &r.rows {
            let mirrored = r.rows.iter().find(|o| o.s == crate::arrays::canonical_unit(-row.s) && o.t == row.t);
            if let Some(o) = mirrored {
                assert_eq!(o.f_predicted, row.f_predicted);
            }
        }
        assert_eq!(r.to_plot_csv().lines().count(), 33);
    }

    #[test]
    fn legendre_sweep_near_optimum_at_101() {
        let v = Member::Pattern(SignPattern::calabro_wolf(101, 101));
        let r = rotation_sweep(Family::LegendreArray, 101, 101, 4, &v).unwrap();
        let row = r.rows.iter().find(|row| row.s == Ratio::new(1, 4) && row.t == Ratio::new(1, 4)).unwrap();
        let target = 36.0 / 13.0;
        assert!((row.f_measured - target).abs() <= 0.15 * target, "{}", row.f_measured);
        assert_eq!(row.f_predicted, Rational::new(36, 13));
    }

    #[test]
    fn sweep_rejects_mismatched_members() {
        let spec = make_ext_field(PrimeModulus::new(5).unwrap());
        let basis = Member::Basis { spec, y00: 1 };
        assert!(rotation_sweep(Family::LegendreArray, 5, 5, 4, &basis).is_err());
        assert!(rotation_sweep(Family::QrArray, 5, 7, 4, &basis).is_err());
        assert!(rotation_sweep(Family::LegendreSeq, 5, 5, 4, &basis).is_err());
        let v = Member::Pattern(SignPattern::all_plus(5, 7));
        assert!(rotation_sweep(Family::LegendreArray, 5, 7, 0, &v).is_err());
        assert!(rotation_sweep(Family::LegendreArray, 5, 7, 2, &v).is_ok());
    }

    #[test]
    fn convergence_rows_sorted_and_reproducible() {
        let cfg = ConvergenceConfig {
            family: Family::LegendreArray,
            primes: vec![(11, 13), (7, 7)],
            rotation: Rotation::new(Ratio::new(1, 4), Ratio::new(1, 4)),
            trials: 2,
            seed: 3,
            y00: 1,
        };
        let rows = convergence_study(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].p, rows[0].q), (7, 7));
        assert!(rows.iter().all(|r| r.residual >= 0.0));
        assert_eq!(rows, convergence_study(&cfg).unwrap());
        let means = mean_residuals(&rows);
        assert_eq!(means.len(), 2);
        let csv = convergence_csv(&rows);
        assert!(csv.lines().nth(1).unwrap().starts_with("7,7,1/4,1/4,"));
    }

    #[test]
    fn ternary_sequence_measures_power_sum() {
        let cfg = ConvergenceConfig {
            family: Family::TernaryLegendreSeq,
            primes: vec![(11, 0)],
            rotation: Rotation::seq(Ratio::from_integer(0)),
            trials: 4,
            seed: 0,
            y00: 1,
        };
        let rows = convergence_study(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let a = legendre_sequence(PrimeModulus::new(11).unwrap(), true);
        let ps = autocorrelation_direct(&a).power_sum();
        assert_eq!(rows[0].measured, Rational::new(ps, 121));
    }

    #[test]
    fn trial_seeds_differ() {
        let a = trial_seed(1, 101, 101, 0);
        assert_ne!(a, trial_seed(1, 101, 101, 1));
        assert_ne!(a, trial_seed(2, 101, 101, 0));
        assert_ne!(a, trial_seed(1, 103, 101, 0));
    }
}
