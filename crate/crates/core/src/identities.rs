//! Finite-p numerical checks of the character-sum and root-of-unity
//! identities behind the quadratic-residue array asymptotics.
//!
//! Every check returns a [`CheckReport`] carrying the largest observed
//! error; a report fails when any evaluated cell breaches its tolerance.
//! Tolerances:
//!
//! | check                    | tolerance                          |
//! |--------------------------|------------------------------------|
//! | Gauss sum                | absolute `1e-6 · p`                |
//! | Γ special values         | relative `1e-9`                    |
//! | exponential sum          | relative `1e-9`, imaginary `1e-10` |
//! | Lagrange negated point   | relative `1e-9`                    |
//! | interpolation bound      | `1e-9` slack on the inequality     |
//!
//! Ω values are integers and compared exactly.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrays::{legendre_sequence, ternary_qr_array, TernaryArray};
use crate::error::{Error, Result};
use crate::finite_field::{is_prime, make_ext_field, ExtFieldElement, ExtFieldSpec, PrimeModulus};
use crate::transform::{ChirpPlan, Direction};

pub const GAUSS_TOL_PER_P: f64 = 1e-6;
pub const GAMMA_RTOL: f64 = 1e-9;
pub const EXP_SUM_RTOL: f64 = 1e-9;
pub const EXP_SUM_IMAG_TOL: f64 = 1e-10;
pub const LAGRANGE_RTOL: f64 = 1e-9;
pub const INTERP_SLACK: f64 = 1e-9;

/// Largest prime for which Ω is enumerated (p⁴ character products).
pub const OMEGA_MAX_PRIME: u32 = 31;

/// `ε_k = e^{2πik/p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity {
    pub p: PrimeModulus,
    pub k: u32,
    pub value: Complex64,
}

/// All p-th roots of unity, indexed by exponent mod p.
#[derive(Debug, Clone)]
pub struct Roots {
    p: PrimeModulus,
    table: Vec<Complex64>,
}

impl Roots {
    pub fn new(p: PrimeModulus) -> Self {
        let n = p.get() as f64;
        let table = (0..p.get())
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n))
            .collect();
        Roots { p, table }
    }

    #[inline]
    pub fn eps(&self, k: i64) -> Complex64 {
        self.table[self.p.reduce(k) as usize]
    }

    pub fn root(&self, k: i64) -> RootOfUnity {
        let k = self.p.reduce(k);
        RootOfUnity { p: self.p, k, value: self.table[k as usize] }
    }

    pub fn prime(&self) -> PrimeModulus {
        self.p
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub p: u32,
    pub max_err: f64,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(check: impl Into<String>, p: u32) -> Self {
        CheckReport { check: check.into(), p, max_err: 0.0, failures: Vec::new() }
    }

    /// Record an error value against its tolerance.
    fn observe(&mut self, err: f64, tol: f64, what: impl FnOnce() -> String) {
        if err.is_nan() || err > tol {
            self.failures.push(what());
        }
        if err.is_nan() {
            self.max_err = f64::NAN;
        } else if !self.max_err.is_nan() {
            self.max_err = self.max_err.max(err);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} p={} max_err={:.3e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.check,
            self.p,
            self.max_err
        )
    }
}

/// `Z(ε_k, ε_l) = Σ_{i,j} z_ij ε_{ik + jl}` for the ternary QR array of `spec`.
pub fn qr_generating_values(spec: &ExtFieldSpec) -> Vec<Complex64> {
    let p = spec.prime();
    let pp = p.as_usize();
    let z = ternary_qr_array(p, spec).expect("spec prime matches");
    let roots = Roots::new(p);
    let mut out = vec![Complex64::default(); pp * pp];
    for k in 0..pp {
        for l in 0..pp {
            let mut acc = Complex64::default();
            for i in 0..pp {
                for j in 0..pp {
                    let c = z.at(i, j);
                    if c != 0 {
                        acc += roots.eps((i * k + j * l) as i64) * c as f64;
                    }
                }
            }
            out[k * pp + l] = acc;
        }
    }
    out
}

/// `Z(ε_k, ε_l) = (−1)^((p+1)/2) · p · chi(kβ + lβ′)` with `{β, β′}` dual to
/// the array's basis, plus `|Z| ∈ {0, p}`.
pub fn verify_gauss_sum(spec: &ExtFieldSpec) -> CheckReport {
    let p = spec.prime();
    let pp = p.as_usize();
    let pf = p.get() as f64;
    let tol = GAUSS_TOL_PER_P * pf;
    let (beta, beta_prime) = spec.dual_basis();
    // (−1)^((p+1)/2)
    let sign = if p.get() % 4 == 3 { 1.0 } else { -1.0 };
    let values = qr_generating_values(spec);
    let mut report = CheckReport::new("gauss_sum", p.get());
    for k in 0..pp {
        for l in 0..pp {
            let z = values[k * pp + l];
            let b = spec.add(spec.scale(k as u32, beta), spec.scale(l as u32, beta_prime));
            let expect = sign * pf * spec.chi(b) as f64;
            report.observe((z - expect).norm(), tol, || format!("Z(eps_{k}, eps_{l})"));
            let magnitude = if k == 0 && l == 0 { 0.0 } else { pf };
            report.observe((z.norm() - magnitude).abs(), tol, || format!("|Z(eps_{k}, eps_{l})|"));
        }
    }
    report
}

/// Quadratic character of GF(p²) tabulated once for repeated Ω sums.
pub struct CharacterTable {
    spec: ExtFieldSpec,
    chi: Vec<i8>,
}

impl CharacterTable {
    pub fn new(spec: &ExtFieldSpec) -> Result<Self> {
        let p = spec.prime().get();
        if p > OMEGA_MAX_PRIME {
            return Err(Error::SizeCap { what: "omega prime", value: p as u64, cap: OMEGA_MAX_PRIME as u64 });
        }
        Ok(CharacterTable { spec: spec.clone(), chi: spec.chi_table() })
    }

    pub fn spec(&self) -> &ExtFieldSpec {
        &self.spec
    }

    #[inline]
    pub fn chi(&self, a: ExtFieldElement) -> i8 {
        self.chi[self.spec.index_of(a)]
    }

    /// `Ω(κ, λ, μ) = Σ_x chi(x) chi(x+κ) chi(x+λ) chi(x+μ)`.
    pub fn omega(&self, kappa: ExtFieldElement, lambda: ExtFieldElement, mu: ExtFieldElement) -> i64 {
        let f = &self.spec;
        f.elements()
            .map(|x| {
                (self.chi(x) * self.chi(f.add(x, kappa)) * self.chi(f.add(x, lambda)) * self.chi(f.add(x, mu)))
                    as i64
            })
            .sum()
    }
}

/// Ω by full enumeration; limited to `p ≤ OMEGA_MAX_PRIME`.
pub fn omega(
    kappa: ExtFieldElement,
    lambda: ExtFieldElement,
    mu: ExtFieldElement,
    spec: &ExtFieldSpec,
) -> Result<i64> {
    for e in [kappa, lambda, mu] {
        spec.element(e.c0, e.c1)?;
    }
    Ok(CharacterTable::new(spec)?.omega(kappa, lambda, mu))
}

/// Membership in `{(κ,κ,0)} ∪ {(κ,0,κ)} ∪ {(0,κ,κ)}`.
pub fn in_exceptional_set(k: ExtFieldElement, l: ExtFieldElement, m: ExtFieldElement) -> bool {
    (k == l && m.is_zero()) || (k == m && l.is_zero()) || (l == m && k.is_zero())
}

/// Ω(0,0,0) = p² − 1 and Ω(κ,κ,0) = p² − 2 for every κ ≠ 0.
pub fn check_omega_special(spec: &ExtFieldSpec) -> Result<CheckReport> {
    let table = CharacterTable::new(spec)?;
    let q = spec.order() as i64;
    let mut report = CheckReport::new("omega_special", spec.prime().get());
    let zero = ExtFieldElement::ZERO;
    let v = table.omega(zero, zero, zero);
    report.observe((v - (q - 1)).abs() as f64, 0.0, || format!("Omega(0,0,0) = {v}"));
    for k in spec.elements().skip(1) {
        let v = table.omega(k, k, zero);
        report.observe((v - (q - 2)).abs() as f64, 0.0, || format!("Omega({k:?},{k:?},0) = {v}"));
    }
    Ok(report)
}

/// `|Ω(κ,λ,μ)| ≤ 3p` off the exceptional set. `max_err` records the largest
/// excess `|Ω| − 3p` (zero when every triple is within the bound).
pub fn check_omega_bound(spec: &ExtFieldSpec, sample: Option<(usize, u64)>) -> Result<CheckReport> {
    let table = CharacterTable::new(spec)?;
    let bound = 3 * spec.prime().get() as i64;
    let name = if sample.is_some() { "omega_bound_sampled" } else { "omega_bound" };
    let mut report = CheckReport::new(name, spec.prime().get());
    let mut visit = |k, l, m| {
        if in_exceptional_set(k, l, m) {
            return;
        }
        let v = table.omega(k, l, m);
        let excess = (v.abs() - bound).max(0) as f64;
        report.observe(excess, 0.0, || format!("|Omega({k:?},{l:?},{m:?})| = {}", v.abs()));
    };
    match sample {
        None => {
            for k in spec.elements() {
                for l in spec.elements() {
                    for m in spec.elements() {
                        visit(k, l, m);
                    }
                }
            }
        }
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = spec.order();
            for _ in 0..count {
                let mut pick = || spec.from_index(rng.random_range(0..n));
                let (k, l, m) = (pick(), pick(), pick());
                visit(k, l, m);
            }
        }
    }
    Ok(report)
}

/// `Γ(k, l, m) = Σ_i ε_i² / ((1 + ε_i)(ε_k + ε_i)(ε_l + ε_i)(ε_m + ε_i))`.
pub fn gamma(k: i64, l: i64, m: i64, roots: &Roots) -> Complex64 {
    let (ek, el, em) = (roots.eps(k), roots.eps(l), roots.eps(m));
    (0..roots.prime().get() as i64)
        .map(|i| {
            let e = roots.eps(i);
            e * e / ((1.0 + e) * (ek + e) * (el + e) * (em + e))
        })
        .sum()
}

/// Closed forms for Γ(0,0,0) and Γ(k,k,0).
pub fn check_gamma_special(p: PrimeModulus) -> CheckReport {
    let roots = Roots::new(p);
    let pf = p.get() as f64;
    let mut report = CheckReport::new("gamma_special", p.get());
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1.0);
    let g0 = gamma(0, 0, 0, &roots);
    let e0 = Complex64::new(pf * pf * (pf * pf + 2.0) / 48.0, 0.0);
    report.observe(rel(g0, e0), GAMMA_RTOL, || format!("Gamma(0,0,0) = {g0}"));
    for k in 1..p.get() as i64 {
        let ek = roots.eps(k);
        let g = gamma(k, k, 0, &roots);
        let expect = (pf * pf / 2.0) / (ek * (1.0 - ek).norm_sqr());
        report.observe(rel(g, expect), GAMMA_RTOL, || format!("Gamma({k},{k},0) = {g}"));
    }
    report
}

/// `Σ_{k,l,m} |Γ(k,l,m)| ≤ (p log p)⁴`; `max_err` is the ratio of the sum to the bound.
pub fn check_gamma_bound(p: PrimeModulus) -> CheckReport {
    let roots = Roots::new(p);
    let pp = p.get() as i64;
    let mut total = 0.0;
    for k in 0..pp {
        for l in 0..pp {
            for m in 0..pp {
                total += gamma(k, l, m, &roots).norm();
            }
        }
    }
    let bound = (p.get() as f64 * (p.get() as f64).ln()).powi(4);
    let mut report = CheckReport::new("gamma_bound", p.get());
    let ratio = total / bound;
    report.observe(ratio, 1.0, || format!("sum |Gamma| = {total} > {bound}"));
    report
}

/// Γ is symmetric in its three arguments; `max_err` is the largest deviation.
pub fn check_gamma_symmetry(p: PrimeModulus) -> CheckReport {
    let roots = Roots::new(p);
    let pp = p.get() as i64;
    let mut report = CheckReport::new("gamma_symmetry", p.get());
    for k in 0..pp {
        for l in 0..pp {
            for m in 0..pp {
                let base = gamma(k, l, m, &roots);
                for (a, b, c) in [(k, m, l), (l, k, m), (l, m, k), (m, k, l), (m, l, k)] {
                    let g = gamma(a, b, c, &roots);
                    let err = (g - base).norm() / base.norm().max(1.0);
                    report.observe(err, GAMMA_RTOL, || format!("Gamma({k},{l},{m}) vs ({a},{b},{c})"));
                }
            }
        }
    }
    report
}

/// Left side `Σ_{k=1}^{p−1} ε_k^j / |1 − ε_k|²`.
pub fn exp_sum_lhs(p: PrimeModulus, j: i64, roots: &Roots) -> Complex64 {
    (1..p.get() as i64)
        .map(|k| {
            let e = roots.eps(k);
            roots.eps(k * j) / (1.0 - e).norm_sqr()
        })
        .sum()
}

/// Right side `(p²/2)(|j|/p − 1/2)² − (p² + 2)/24`.
pub fn exp_sum_rhs(p: PrimeModulus, j: i64) -> f64 {
    let pf = p.get() as f64;
    let x = j.unsigned_abs() as f64 / pf - 0.5;
    pf * pf / 2.0 * x * x - (pf * pf + 2.0) / 24.0
}

/// The exponential-sum identity for a single `j` with `|j| ≤ p`.
pub fn exp_sum_check(p: PrimeModulus, j: i64) -> Result<CheckReport> {
    if j.unsigned_abs() > p.get() as u64 {
        return Err(Error::Domain(format!("|j| = {} exceeds p = {p}", j.abs())));
    }
    let roots = Roots::new(p);
    Ok(exp_sum_report(p, std::iter::once(j), &roots))
}

fn exp_sum_report(p: PrimeModulus, js: impl Iterator<Item = i64>, roots: &Roots) -> CheckReport {
    let mut report = CheckReport::new("exp_sum", p.get());
    for j in js {
        let lhs = exp_sum_lhs(p, j, roots);
        let rhs = exp_sum_rhs(p, j);
        let scale = rhs.abs().max(1.0);
        report.observe((lhs.re - rhs).abs() / scale, EXP_SUM_RTOL, || format!("j={j}: {lhs} vs {rhs}"));
        report.observe(lhs.im.abs() / scale, EXP_SUM_IMAG_TOL, || format!("j={j}: imaginary part {}", lhs.im));
    }
    report
}

/// All `|j| ≤ p`.
pub fn exp_sum_check_all(p: PrimeModulus) -> CheckReport {
    let roots = Roots::new(p);
    let pp = p.get() as i64;
    exp_sum_report(p, -pp..=pp, &roots)
}

/// `P(−ε_i) = (2/p) Σ_k P(ε_k) ε_k / (ε_k + ε_i)` from the values `P(ε_k)`.
pub fn lagrange_negated_point(values: &[Complex64], i: i64, roots: &Roots) -> Complex64 {
    let p = roots.prime().get();
    assert_eq!(values.len(), p as usize, "need one value per p-th root");
    let ei = roots.eps(i);
    let sum: Complex64 = values
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let ek = roots.eps(k as i64);
            v * ek / (ek + ei)
        })
        .sum();
    sum * (2.0 / p as f64)
}

fn eval_poly(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::default(), |acc, &c| acc * x + c)
}

/// Interpolate a seeded random integer polynomial of degree `p − 1` to every
/// `−ε_i` and compare with direct evaluation.
pub fn check_lagrange(p: PrimeModulus, seed: u64) -> CheckReport {
    let roots = Roots::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..p.get()).map(|_| rng.random_range(-9i32..=9) as f64).collect();
    let values: Vec<Complex64> = (0..p.get() as i64).map(|k| eval_poly(&coeffs, roots.eps(k))).collect();
    let mut report = CheckReport::new("lagrange", p.get());
    for i in 0..p.get() as i64 {
        let got = lagrange_negated_point(&values, i, &roots);
        let want = eval_poly(&coeffs, -roots.eps(i));
        let err = (got - want).norm() / want.norm().max(1.0);
        report.observe(err, LAGRANGE_RTOL, || format!("P(-eps_{i})"));
    }
    report
}

/// `|A(ζ_d^j)| ≤ (2 log d) · max_k |A(ζ_d^{2k})|` for all `j ∈ [0, 2d)`.
/// `max_err` is the worst ratio of the left side to the bound.
pub fn interpolation_bound_check(a: &TernaryArray) -> Result<CheckReport> {
    if !a.is_sequence() {
        return Err(Error::Shape("interpolation bound applies to sequences".into()));
    }
    let d = a.rows();
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Domain(format!("length must be odd and > 1, got {d}")));
    }
    let x: Vec<Complex64> = a.cells().iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
    let values = ChirpPlan::new(2 * d, Direction::Inverse).process(&x);
    let max_even = values.iter().step_by(2).map(|z| z.norm()).fold(0.0, f64::max);
    let bound = 2.0 * (d as f64).ln() * max_even;
    let mut report = CheckReport::new("interpolation_bound", d as u32);
    for (j, z) in values.iter().enumerate() {
        let ratio = if bound > 0.0 { z.norm() / bound } else { z.norm() };
        report.observe(ratio, 1.0 + INTERP_SLACK, || format!("|A(zeta^{j})| = {}", z.norm()));
    }
    Ok(report)
}

/// Which identity checks a suite run includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Gauss,
    Omega,
    Gamma,
    ExpSum,
    Lagrange,
    Interpolation,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "gauss" => Suite::Gauss,
            "omega" => Suite::Omega,
            "gamma" => Suite::Gamma,
            "expsum" | "exp-sum" => Suite::ExpSum,
            "lagrange" => Suite::Lagrange,
            "interp" | "interpolation" => Suite::Interpolation,
            other => return Err(Error::Domain(format!("unknown suite `{other}`"))),
        })
    }
}

pub const GAUSS_MAX_PRIME: u32 = 31;
pub const GAMMA_MAX_PRIME: u32 = 13;
pub const EXP_SUM_MAX_PRIME: u32 = 101;
pub const OMEGA_SPECIAL_MAX_PRIME: u32 = 7;
pub const OMEGA_EXHAUSTIVE_MAX_PRIME: u32 = 5;
pub const RANDOM_BASES_PER_PRIME: usize = 5;

fn odd_primes_upto(limit: u32) -> Vec<PrimeModulus> {
    (3..=limit as u64)
        .filter(|&n| is_prime(n))
        .map(|n| PrimeModulus::new(n).expect("odd prime"))
        .collect()
}

fn mix_seed(seed: u64, p: u32, k: u64) -> u64 {
    crate::search::trial_seed(seed, p as u64, 0, k)
}

/// Run every check of `suite` for odd primes up to `pmax`, each check also
/// clipped to its own prime cap. Reports come back in a fixed order
/// regardless of thread scheduling.
pub fn run_suite(suite: Suite, pmax: u32, seed: u64) -> Vec<CheckReport> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut jobs: Vec<Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>> = Vec::new();

    if wants(Suite::Gauss) {
        for p in odd_primes_upto(pmax.min(GAUSS_MAX_PRIME)) {
            jobs.push(Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, p.get(), 1));
                let mut out = vec![verify_gauss_sum(&make_ext_field(p))];
                for _ in 0..RANDOM_BASES_PER_PRIME {
                    let mut r = verify_gauss_sum(&ExtFieldSpec::random_basis(p, &mut rng));
                    r.check = "gauss_sum_random_basis".into();
                    out.push(r);
                }
                out
            }));
        }
    }
    if wants(Suite::Omega) {
        for p in odd_primes_upto(pmax.min(OMEGA_SPECIAL_MAX_PRIME)) {
            jobs.push(Box::new(move || {
                let spec = make_ext_field(p);
                let mut out = vec![check_omega_special(&spec).expect("p within cap")];
                let sample = if p.get() <= OMEGA_EXHAUSTIVE_MAX_PRIME {
                    None
                } else {
                    Some((2000, mix_seed(seed, p.get(), 2)))
                };
                out.push(check_omega_bound(&spec, sample).expect("p within cap"));
                out
            }));
        }
    }
    if wants(Suite::Gamma) {
        for p in odd_primes_upto(pmax.min(GAMMA_MAX_PRIME)) {
            jobs.push(Box::new(move || {
                let mut out = vec![check_gamma_special(p)];
                if p.get() <= 7 {
                    out.push(check_gamma_bound(p));
                    out.push(check_gamma_symmetry(p));
                }
                out
            }));
        }
    }
    if wants(Suite::ExpSum) {
        for p in odd_primes_upto(pmax.min(EXP_SUM_MAX_PRIME)) {
            jobs.push(Box::new(move || vec![exp_sum_check_all(p)]));
        }
    }
    if wants(Suite::Lagrange) {
        for p in odd_primes_upto(pmax.min(GAUSS_MAX_PRIME)) {
            jobs.push(Box::new(move || vec![check_lagrange(p, mix_seed(seed, p.get(), 3))]));
        }
    }
    if wants(Suite::Interpolation) {
        for p in odd_primes_upto(pmax) {
            jobs.push(Box::new(move || {
                let mut out = vec![interpolation_bound_check(&legendre_sequence(p, true)).expect("odd length")];
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, p.get(), 4));
                let random = TernaryArray::random_binary(p.as_usize(), 1, &mut rng).expect("non-empty");
                out.push(interpolation_bound_check(&random).expect("odd length"));
                out
            }));
        }
    }
    jobs.par_iter().map(|job| job()).collect::<Vec<_>>().into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn roots_of_unity_properties() {
        let roots = Roots::new(pm(13));
        for k in 0..13 {
            let r = roots.root(k);
            assert!((r.value.norm() - 1.0).abs() < 1e-12);
            for l in 0..13 {
                assert!((roots.eps(k) * roots.eps(l) - roots.eps(k + l)).norm() < 1e-12);
            }
        }
        assert_eq!(roots.root(-1).k, 12);
    }

    #[test]
    fn gauss_sum_small_primes() {
        for p in [3, 5, 7] {
            let spec = make_ext_field(pm(p));
            let r = verify_gauss_sum(&spec);
            assert!(r.passed(), "{r}: {:?}", r.failures);
        }
        let values = qr_generating_values(&make_ext_field(pm(3)));
        assert!(values[0].norm() < 1e-12);
        let values = qr_generating_values(&make_ext_field(pm(7)));
        assert!((values[7 + 2].norm() - 7.0).abs() < 1e-9);
    }

    #[test]
    fn gauss_sum_detects_wrong_basis() {
        // pair the array of one basis with the dual of another
        let p = pm(5);
        let spec = make_ext_field(p);
        let values = qr_generating_values(&spec);
        let other = ExtFieldSpec::with_basis(p, ExtFieldElement::new(1, 1), ExtFieldElement::new(0, 1)).unwrap();
        let (b, b2) = other.dual_basis();
        let mismatches = (0..25)
            .filter(|&idx| {
                let (k, l) = (idx / 5, idx % 5);
                let e = spec.add(spec.scale(k as u32, b), spec.scale(l as u32, b2));
                (values[idx] - Complex64::new(-5.0 * spec.chi(e) as f64, 0.0)).norm() > 1e-6
            })
            .count();
        assert!(mismatches > 0);
    }

    #[test]
    fn omega_special_values() {
        for p in [3, 5, 7] {
            let spec = make_ext_field(pm(p));
            let z = ExtFieldElement::ZERO;
            assert_eq!(omega(z, z, z, &spec).unwrap(), (p * p - 1) as i64);
            let k = ExtFieldElement::new(1, 1);
            assert_eq!(omega(k, k, z, &spec).unwrap(), (p * p - 2) as i64);
            assert!(check_omega_special(&spec).unwrap().passed());
        }
    }

    #[test]
    fn omega_bound_exhaustive_small() {
        for p in [3, 5] {
            let r = check_omega_bound(&make_ext_field(pm(p)), None).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn omega_symmetric_in_arguments() {
        let spec = make_ext_field(pm(5));
        let table = CharacterTable::new(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let mut pick = || spec.from_index(rng.random_range(0..25));
            let (k, l, m) = (pick(), pick(), pick());
            let base = table.omega(k, l, m);
            for (a, b, c) in [(k, m, l), (l, k, m), (l, m, k), (m, k, l), (m, l, k)] {
                assert_eq!(table.omega(a, b, c), base);
            }
        }
    }

    #[test]
    fn omega_rejects_large_primes() {
        let spec = make_ext_field(pm(37));
        let z = ExtFieldElement::ZERO;
        assert!(matches!(omega(z, z, z, &spec), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn gamma_special_values() {
        for p in [3, 5, 7, 11, 13] {
            let r = check_gamma_special(pm(p));
            assert!(r.passed(), "{r}");
        }
        let roots = Roots::new(pm(5));
        let g = gamma(0, 0, 0, &roots);
        assert!((g.re - 25.0 * 27.0 / 48.0).abs() < 1e-9);
    }

    #[test]
    fn gamma_bound_and_symmetry() {
        for p in [5, 7] {
            assert!(check_gamma_bound(pm(p)).passed());
            assert!(check_gamma_symmetry(pm(p)).passed());
        }
    }

    #[test]
    fn exp_sum_examples() {
        let p5 = pm(5);
        let roots = Roots::new(p5);
        assert!((exp_sum_lhs(p5, 0, &roots).re - 2.0).abs() < 1e-12);
        assert!((exp_sum_rhs(p5, 0) - 2.0).abs() < 1e-12);
        assert!((exp_sum_rhs(p5, 5) - (25.0 / 8.0 - 27.0 / 24.0)).abs() < 1e-12);
        for j in -5..=5 {
            let a = exp_sum_lhs(p5, j, &roots);
            let b = exp_sum_lhs(p5, -j, &roots);
            assert!((a - b).norm() < 1e-12);
            assert!(exp_sum_check(p5, j).unwrap().passed());
        }
        assert!(exp_sum_check(p5, 6).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let p = pm(7);
        let roots = Roots::new(p);
        let constant = vec![Complex64::new(3.5, 0.0); 7];
        let linear: Vec<Complex64> = (0..7).map(|k| roots.eps(k)).collect();
        for i in 0..7 {
            assert!((lagrange_negated_point(&constant, i, &roots) - 3.5).norm() < 1e-12);
            assert!((lagrange_negated_point(&linear, i, &roots) + roots.eps(i)).norm() < 1e-12);
        }
        assert!(check_lagrange(p, 42).passed());
    }

    #[test]
    fn interpolation_bound_examples() {
        let l7 = legendre_sequence(pm(7), true);
        let r = interpolation_bound_check(&l7).unwrap();
        assert!(r.passed());
        // |A(ζ^{2k})| ≤ √7 for the ternary Legendre sequence
        let x: Vec<Complex64> = l7.cells().iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
        let vals = ChirpPlan::new(14, Direction::Inverse).process(&x);
        for z in vals.iter().step_by(2) {
            assert!(z.norm() <= 7f64.sqrt() + 1e-9);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = TernaryArray::random_binary(9, 1, &mut rng).unwrap();
        assert!(interpolation_bound_check(&a).unwrap().passed());
        assert!(interpolation_bound_check(&TernaryArray::filled(4, 1, 1).unwrap()).is_err());
    }

    #[test]
    fn suite_small_pmax_passes() {
        let reports = run_suite(Suite::All, 7, 1);
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.passed(), "{r}: {:?}", r.failures);
        }
        assert_eq!(run_suite(Suite::All, 7, 1), reports);
    }

    #[test]
    fn report_line_format() {
        let r = exp_sum_check(pm(5), 1).unwrap();
        let line = r.to_string();
        assert!(line.starts_with("PASS exp_sum p=5 max_err="), "{line}");
    }
}
