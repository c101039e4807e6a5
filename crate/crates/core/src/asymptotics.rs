//! Closed-form asymptotic inverse merit factors under rotation.
//!
//! Every formula depends on `s` and `t` only through `8(|s| − 1/4)²`, so
//! each is even in both arguments and minimised at `|s| = |t| = 1/4`.
//! Rational inputs are evaluated exactly; the `_f64` variants exist for
//! arbitrary real rotations.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrays::{canonical_unit, Rotation};
use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    LegendreSeq,
    TernaryLegendreSeq,
    LegendreArray,
    QrArray,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::LegendreSeq => "legendre-seq",
            Family::TernaryLegendreSeq => "ternary-legendre-seq",
            Family::LegendreArray => "legendre-array",
            Family::QrArray => "qr",
        }
    }

    pub fn is_sequence(self) -> bool {
        matches!(self, Family::LegendreSeq | Family::TernaryLegendreSeq)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "legendre-seq" => Ok(Family::LegendreSeq),
            "ternary-legendre-seq" => Ok(Family::TernaryLegendreSeq),
            "legendre-array" => Ok(Family::LegendreArray),
            "qr" | "qr-array" => Ok(Family::QrArray),
            other => Err(Error::Family(other.to_string())),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn widen(x: Ratio<i64>) -> Rational {
    Ratio::new(*x.numer() as i128, *x.denom() as i128)
}

fn frac(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

/// `8(|x| − 1/4)²` after canonicalising `x` into `(−1/2, 1/2]`.
fn offset_term(x: Ratio<i64>) -> Rational {
    let d = widen(canonical_unit(x)).abs() - frac(1, 4);
    frac(8, 1) * d * d
}

fn offset_term_f64(x: f64) -> f64 {
    let c = x - (x - 0.5).ceil();
    let d = c.abs() - 0.25;
    8.0 * d * d
}

/// Rotated binary Legendre sequence: `1/6 + 8(|s| − 1/4)²`.
pub fn legendre_seq_inv_merit(s: Ratio<i64>) -> Rational {
    frac(1, 6) + offset_term(s)
}

/// Rotated ternary Legendre sequence, normalised full power sum
/// `(1/p²) Σ_u C(u)²`: `7/6 + 8(|s| − 1/4)²`.
pub fn ternary_legendre_sidelobe(s: Ratio<i64>) -> Rational {
    frac(7, 6) + offset_term(s)
}

/// Rotated Legendre array: `[7/6 + 8(|s|−1/4)²][7/6 + 8(|t|−1/4)²] − 1`.
pub fn legendre_array_inv_merit(s: Ratio<i64>, t: Ratio<i64>) -> Rational {
    ternary_legendre_sidelobe(s) * ternary_legendre_sidelobe(t) - Rational::one()
}

/// Rotated quadratic-residue array: `1/9 + [1/2 + 8(|s|−1/4)²][1/2 + 8(|t|−1/4)²]`.
pub fn qr_array_inv_merit(s: Ratio<i64>, t: Ratio<i64>) -> Rational {
    frac(1, 9) + (frac(1, 2) + offset_term(s)) * (frac(1, 2) + offset_term(t))
}

pub fn legendre_seq_inv_merit_f64(s: f64) -> f64 {
    1.0 / 6.0 + offset_term_f64(s)
}

pub fn ternary_legendre_sidelobe_f64(s: f64) -> f64 {
    7.0 / 6.0 + offset_term_f64(s)
}

pub fn legendre_array_inv_merit_f64(s: f64, t: f64) -> f64 {
    ternary_legendre_sidelobe_f64(s) * ternary_legendre_sidelobe_f64(t) - 1.0
}

pub fn qr_array_inv_merit_f64(s: f64, t: f64) -> f64 {
    1.0 / 9.0 + (0.5 + offset_term_f64(s)) * (0.5 + offset_term_f64(t))
}

/// Family plus rotation whose limiting behaviour is being predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AsymptoteSpec {
    pub family: Family,
    pub rotation: Rotation,
}

impl AsymptoteSpec {
    pub fn new(family: Family, rotation: Rotation) -> Self {
        AsymptoteSpec { family, rotation }
    }

    /// Predicted limit of `1/F`, or of the normalised power sum for the
    /// ternary sequence family.
    pub fn predicted(&self) -> Rational {
        let (s, t) = (self.rotation.s(), self.rotation.t());
        match self.family {
            Family::LegendreSeq => legendre_seq_inv_merit(s),
            Family::TernaryLegendreSeq => ternary_legendre_sidelobe(s),
            Family::LegendreArray => legendre_array_inv_merit(s, t),
            Family::QrArray => qr_array_inv_merit(s, t),
        }
    }
}

/// Merit of a product array from the merits of its factors:
/// `1/F = (1 + 1/F_A)(1 + 1/F_B) − 1`.
pub fn compose_product_merit(fa: Rational, fb: Rational) -> Result<Rational> {
    if fa <= Rational::zero() || fb <= Rational::zero() {
        return Err(Error::Domain("merit factors must be positive".into()));
    }
    let one = Rational::one();
    let inv = (one + fa.recip()) * (one + fb.recip()) - one;
    Ok(inv.recip())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalRotation {
    pub rotations: Vec<Rotation>,
    pub merit: Rational,
}

/// Rotations maximising the asymptotic merit factor, with that maximum.
///
/// Each formula is increasing in every `8(|x| − 1/4)²` term, so the optimum
/// sits where all such terms vanish.
pub fn optimal_rotation(family: Family) -> OptimalRotation {
    let q = Ratio::new(1i64, 4);
    let rotations = if family.is_sequence() {
        vec![Rotation::seq(q), Rotation::seq(-q)]
    } else {
        vec![
            Rotation::new(q, q),
            Rotation::new(q, -q),
            Rotation::new(-q, q),
            Rotation::new(-q, -q),
        ]
    };
    let value = AsymptoteSpec::new(family, rotations[0]).predicted();
    let merit = match family {
        // the ternary family predicts a power sum; its merit is 1/(sum − 1)
        Family::TernaryLegendreSeq => (value - Rational::one()).recip(),
        _ => value.recip(),
    };
    OptimalRotation { rotations, merit }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn legendre_seq_values() {
        assert_eq!(legendre_seq_inv_merit(r(1, 4)), frac(1, 6));
        assert_eq!(legendre_seq_inv_merit(r(0, 1)), frac(2, 3));
        assert_eq!(legendre_seq_inv_merit(r(-1, 4)), legendre_seq_inv_merit(r(1, 4)));
        assert_eq!(legendre_seq_inv_merit(r(3, 4)), frac(1, 6));
    }

    #[test]
    fn ternary_values() {
        assert_eq!(ternary_legendre_sidelobe(r(1, 4)), frac(7, 6));
        assert_eq!(ternary_legendre_sidelobe(r(1, 2)), frac(5, 3));
        for k in -10..=10 {
            let s = r(k, 20);
            assert_eq!(ternary_legendre_sidelobe(s), legendre_seq_inv_merit(s) + Rational::one());
        }
    }

    #[test]
    fn array_values() {
        assert_eq!(legendre_array_inv_merit(r(1, 4), r(1, 4)), frac(13, 36));
        assert_eq!(legendre_array_inv_merit(r(0, 1), r(0, 1)), frac(16, 9));
        assert_eq!(qr_array_inv_merit(r(1, 4), r(1, 4)), frac(13, 36));
        assert_eq!(qr_array_inv_merit(r(0, 1), r(0, 1)), frac(10, 9));
        assert_eq!(
            legendre_array_inv_merit(r(1, 7), r(-2, 5)),
            legendre_array_inv_merit(r(-2, 5), r(1, 7))
        );
    }

    #[test]
    fn float_variants_agree() {
        for (sn, tn) in [(0, 0), (1, 3), (-5, 2), (7, -1), (10, 10), (-9, 4)] {
            let (s, t) = (r(sn, 20), r(tn, 20));
            let (sf, tf) = (sn as f64 / 20.0, tn as f64 / 20.0);
            let close = |a: Rational, b: f64| {
                (*a.numer() as f64 / *a.denom() as f64 - b).abs() < 1e-12
            };
            assert!(close(legendre_array_inv_merit(s, t), legendre_array_inv_merit_f64(sf, tf)));
            assert!(close(qr_array_inv_merit(s, t), qr_array_inv_merit_f64(sf, tf)));
            assert!(close(legendre_seq_inv_merit(s), legendre_seq_inv_merit_f64(sf)));
        }
    }

    #[test]
    fn product_composition() {
        let b13 = frac(169, 12);
        let b11 = frac(121, 10);
        let f = compose_product_merit(b13, b13).unwrap();
        assert!((*f.numer() as f64 / *f.denom() as f64 - 6.80).abs() < 0.005);
        let f = compose_product_merit(b13, b11).unwrap();
        assert!((*f.numer() as f64 / *f.denom() as f64 - 6.27).abs() < 0.005);
        let f = compose_product_merit(b11, b11).unwrap();
        assert!((*f.numer() as f64 / *f.denom() as f64 - 5.81).abs() < 0.005);
        let f = compose_product_merit(frac(3, 1), frac(1_000_000_000, 1)).unwrap();
        assert!((*f.numer() as f64 / *f.denom() as f64 - 3.0).abs() < 1e-6);
        assert!(compose_product_merit(frac(0, 1), b11).is_err());
    }

    #[test]
    fn optima() {
        for fam in [Family::LegendreArray, Family::QrArray] {
            let opt = optimal_rotation(fam);
            assert_eq!(opt.merit, frac(36, 13));
            assert_eq!(opt.rotations.len(), 4);
            for rot in &opt.rotations {
                let flipped = Rotation::new(-rot.s(), rot.t());
                assert!(opt.rotations.contains(&flipped));
                assert_eq!(AsymptoteSpec::new(fam, *rot).predicted(), frac(13, 36));
            }
        }
        let opt = optimal_rotation(Family::LegendreSeq);
        assert_eq!(opt.merit, frac(6, 1));
        assert_eq!(opt.rotations.iter().map(|r| r.s()).collect::<Vec<_>>(), vec![r(1, 4), r(-1, 4)]);
        assert_eq!(optimal_rotation(Family::TernaryLegendreSeq).merit, frac(6, 1));
    }

    #[test]
    fn family_names_roundtrip() {
        for fam in [Family::LegendreSeq, Family::TernaryLegendreSeq, Family::LegendreArray, Family::QrArray] {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("barker".parse::<Family>().is_err());
    }
}
