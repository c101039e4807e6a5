//! Exact arithmetic in GF(p) and GF(p²).
//!
//! GF(p²) is realised as GF(p)[x]/(x² − n) where n is the smallest positive
//! quadratic non-residue mod p. Elements are stored as coordinate pairs
//! `(c0, c1)` meaning `c0 + c1·x`, always reduced into `[0, p)`.
//!
//! The quadratic character of GF(p²) is evaluated with Euler's criterion,
//! `chi(a) = a^((p²−1)/2)`, which costs O(log p) multiplications.

use rand::Rng;

use crate::error::{Error, Result};

/// Largest accepted modulus. Keeps every product of two residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// An odd prime `p`, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

/// Deterministic trial division. Fine for the desk-scale moduli used here
/// (at most ~46341 divisions for `n ≤ MAX_PRIME`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut result = 1u32;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Legendre symbol `(a / p)`: 0 if `p | a`, +1 for nonzero squares, −1 otherwise.
pub fn legendre_symbol(a: i64, p: PrimeModulus) -> i8 {
    let r = p.reduce(a);
    if r == 0 {
        return 0;
    }
    match p.pow(r, (p.get() as u64 - 1) / 2) {
        1 => 1,
        _ => -1,
    }
}

/// Element `c0 + c1·x` of GF(p²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtFieldElement {
    pub c0: u32,
    pub c1: u32,
}

impl ExtFieldElement {
    pub const ZERO: ExtFieldElement = ExtFieldElement { c0: 0, c1: 0 };
    pub const ONE: ExtFieldElement = ExtFieldElement { c0: 1, c1: 0 };
    pub const X: ExtFieldElement = ExtFieldElement { c0: 0, c1: 1 };

    pub const fn new(c0: u32, c1: u32) -> Self {
        ExtFieldElement { c0, c1 }
    }

    pub fn is_zero(self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

/// GF(p²) together with a chosen basis `{α, α′}` over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtFieldSpec {
    p: PrimeModulus,
    nonresidue: u32,
    alpha: ExtFieldElement,
    alpha_prime: ExtFieldElement,
}

/// Smallest positive quadratic non-residue mod `p`.
pub fn smallest_nonresidue(p: PrimeModulus) -> u32 {
    (2..p.get())
        .find(|&n| legendre_symbol(n as i64, p) == -1)
        .expect("every odd prime has a non-residue")
}

/// GF(p²) with the default basis `{1, x}`.
pub fn make_ext_field(p: PrimeModulus) -> ExtFieldSpec {
    ExtFieldSpec {
        p,
        nonresidue: smallest_nonresidue(p),
        alpha: ExtFieldElement::ONE,
        alpha_prime: ExtFieldElement::X,
    }
}

impl ExtFieldSpec {
    /// Same field as [`make_ext_field`] but with an explicit basis.
    pub fn with_basis(
        p: PrimeModulus,
        alpha: ExtFieldElement,
        alpha_prime: ExtFieldElement,
    ) -> Result<Self> {
        let mut spec = make_ext_field(p);
        if !spec.contains(alpha) || !spec.contains(alpha_prime) {
            return Err(Error::Domain(format!(
                "basis coordinates must lie in [0, {p})"
            )));
        }
        if !linearly_independent(p, alpha, alpha_prime) {
            return Err(Error::Domain(
                "basis elements are linearly dependent over GF(p)".into(),
            ));
        }
        spec.alpha = alpha;
        spec.alpha_prime = alpha_prime;
        Ok(spec)
    }

    /// Uniformly random basis drawn from `rng` (rejection on singular pairs).
    pub fn random_basis<R: Rng + ?Sized>(p: PrimeModulus, rng: &mut R) -> Self {
        let pv = p.get();
        loop {
            let a = ExtFieldElement::new(rng.random_range(0..pv), rng.random_range(0..pv));
            let b = ExtFieldElement::new(rng.random_range(0..pv), rng.random_range(0..pv));
            if let Ok(spec) = Self::with_basis(p, a, b) {
                return spec;
            }
        }
    }

    pub fn prime(&self) -> PrimeModulus {
        self.p
    }

    pub fn nonresidue(&self) -> u32 {
        self.nonresidue
    }

    pub fn basis(&self) -> (ExtFieldElement, ExtFieldElement) {
        (self.alpha, self.alpha_prime)
    }

    /// Number of elements, p².
    pub fn order(&self) -> usize {
        self.p.as_usize() * self.p.as_usize()
    }

    pub fn contains(&self, a: ExtFieldElement) -> bool {
        a.c0 < self.p.get() && a.c1 < self.p.get()
    }

    pub fn element(&self, c0: u32, c1: u32) -> Result<ExtFieldElement> {
        let a = ExtFieldElement::new(c0, c1);
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Domain(format!(
                "({c0}, {c1}) is not a valid element of GF({}²)",
                self.p
            )))
        }
    }

    /// Element from an integer pair, reducing both coordinates.
    pub fn element_reduced(&self, c0: i64, c1: i64) -> ExtFieldElement {
        ExtFieldElement::new(self.p.reduce(c0), self.p.reduce(c1))
    }

    /// Dense index in `[0, p²)` used by lookup tables.
    #[inline]
    pub fn index_of(&self, a: ExtFieldElement) -> usize {
        a.c0 as usize + self.p.as_usize() * a.c1 as usize
    }

    #[inline]
    pub fn from_index(&self, idx: usize) -> ExtFieldElement {
        let p = self.p.as_usize();
        ExtFieldElement::new((idx % p) as u32, (idx / p) as u32)
    }

    /// All p² elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    #[inline]
    pub fn add(&self, a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement {
        ExtFieldElement::new(self.p.add(a.c0, b.c0), self.p.add(a.c1, b.c1))
    }

    #[inline]
    pub fn sub(&self, a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement {
        ExtFieldElement::new(self.p.sub(a.c0, b.c0), self.p.sub(a.c1, b.c1))
    }

    #[inline]
    pub fn neg(&self, a: ExtFieldElement) -> ExtFieldElement {
        self.sub(ExtFieldElement::ZERO, a)
    }

    /// Multiplication by a subfield scalar `k ∈ GF(p)`.
    #[inline]
    pub fn scale(&self, k: u32, a: ExtFieldElement) -> ExtFieldElement {
        ExtFieldElement::new(self.p.mul(k, a.c0), self.p.mul(k, a.c1))
    }

    /// `i·α + j·α′` for integers `i, j` reduced mod p.
    pub fn combine(&self, i: i64, j: i64) -> ExtFieldElement {
        let (i, j) = (self.p.reduce(i), self.p.reduce(j));
        self.add(self.scale(i, self.alpha), self.scale(j, self.alpha_prime))
    }

    /// Product in GF(p)[x]/(x² − n). Operands are assumed valid.
    #[inline]
    pub fn mul(&self, a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let p = self.p.get() as u64;
        let (a0, a1, b0, b1) = (a.c0 as u64, a.c1 as u64, b.c0 as u64, b.c1 as u64);
        // (a0 + a1 x)(b0 + b1 x) = a0 b0 + n a1 b1 + (a0 b1 + a1 b0) x
        let c0 = (a0 * b0 % p + (self.nonresidue as u64) * (a1 * b1 % p)) % p;
        let c1 = (a0 * b1 % p + a1 * b0 % p) % p;
        ExtFieldElement::new(c0 as u32, c1 as u32)
    }

    /// [`Self::mul`] with operand validation.
    pub fn checked_mul(&self, a: ExtFieldElement, b: ExtFieldElement) -> Result<ExtFieldElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::Domain(format!(
                "operand outside GF({}²) representation",
                self.p
            )));
        }
        Ok(self.mul(a, b))
    }

    fn pow_unchecked(&self, a: ExtFieldElement, mut e: u64) -> ExtFieldElement {
        let mut result = ExtFieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Square-and-multiply exponentiation. `0^0` is rejected.
    pub fn pow(&self, a: ExtFieldElement, e: u64) -> Result<ExtFieldElement> {
        if !self.contains(a) {
            return Err(Error::Domain("operand outside representation".into()));
        }
        if a.is_zero() && e == 0 {
            return Err(Error::Domain("0^0 is undefined".into()));
        }
        Ok(self.pow_unchecked(a, e))
    }

    /// Multiplicative inverse of a nonzero element, via the norm.
    pub fn inv(&self, a: ExtFieldElement) -> Option<ExtFieldElement> {
        let norm = self.norm(a);
        let ninv = self.p.inv(norm)?;
        // conjugate of c0 + c1 x is c0 − c1 x
        let conj = ExtFieldElement::new(a.c0, self.p.sub(0, a.c1));
        Some(self.scale(ninv, conj))
    }

    /// Norm `a^(p+1) = c0² − n·c1²`, an element of GF(p).
    pub fn norm(&self, a: ExtFieldElement) -> u32 {
        let p = self.p;
        p.sub(p.mul(a.c0, a.c0), p.mul(self.nonresidue, p.mul(a.c1, a.c1)))
    }

    /// Absolute trace `Tr(a) = a + a^p`, which lies in GF(p).
    pub fn trace(&self, a: ExtFieldElement) -> u32 {
        let t = self.add(a, self.pow_unchecked(a, self.p.get() as u64));
        debug_assert_eq!(t.c1, 0, "trace must land in the prime subfield");
        t.c0
    }

    /// Quadratic character of GF(p²) by Euler's criterion.
    pub fn chi(&self, a: ExtFieldElement) -> i8 {
        if a.is_zero() {
            return 0;
        }
        let p = self.p.get() as u64;
        let r = self.pow_unchecked(a, (p * p - 1) / 2);
        if r == ExtFieldElement::ONE {
            1
        } else {
            debug_assert_eq!(r, ExtFieldElement::new(self.p.get() - 1, 0));
            -1
        }
    }

    /// `chi` for every element, indexed by [`Self::index_of`].
    pub fn chi_table(&self) -> Vec<i8> {
        self.elements().map(|a| self.chi(a)).collect()
    }

    /// The basis `{β, β′}` trace-dual to `{α, α′}`:
    /// `Tr(αβ) = Tr(α′β′) = 1`, `Tr(αβ′) = Tr(α′β) = 0`.
    pub fn dual_basis(&self) -> (ExtFieldElement, ExtFieldElement) {
        let p = self.p;
        // m[r][c] = Tr(basis_r · e_c) with e_0 = 1, e_1 = x
        let row = |b: ExtFieldElement| {
            [
                self.trace(self.mul(b, ExtFieldElement::ONE)),
                self.trace(self.mul(b, ExtFieldElement::X)),
            ]
        };
        let m = [row(self.alpha), row(self.alpha_prime)];
        let det = p.sub(p.mul(m[0][0], m[1][1]), p.mul(m[0][1], m[1][0]));
        let det_inv = p
            .inv(det)
            .expect("trace form is nondegenerate on a valid basis");
        let solve = |t0: u32, t1: u32| {
            let x0 = p.mul(det_inv, p.sub(p.mul(t0, m[1][1]), p.mul(m[0][1], t1)));
            let x1 = p.mul(det_inv, p.sub(p.mul(m[0][0], t1), p.mul(t0, m[1][0])));
            ExtFieldElement::new(x0, x1)
        };
        (solve(1, 0), solve(0, 1))
    }
}

fn linearly_independent(p: PrimeModulus, a: ExtFieldElement, b: ExtFieldElement) -> bool {
    p.sub(p.mul(a.c0, b.c1), p.mul(a.c1, b.c0)) != 0
}
