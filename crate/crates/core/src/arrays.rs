//! Ternary arrays and the quadratic-character constructions built on them.
//!
//! An array of size `n × m` is a dense row-major matrix of cells in
//! `{−1, 0, +1}`; every cell outside `[0, n) × [0, m)` is implicitly zero.
//! Sequences are the `m = 1` case.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::finite_field::{legendre_symbol, ExtFieldSpec, PrimeModulus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryArray {
    rows: usize,
    cols: usize,
    cells: Vec<i8>,
}

impl TernaryArray {
    pub fn new(rows: usize, cols: usize, cells: Vec<i8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("array must be non-empty, got {rows}x{cols}")));
        }
        if cells.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} cells for {rows}x{cols}, got {}",
                rows * cols,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|c| !(-1..=1).contains(*c)) {
            return Err(Error::Domain(format!("cell value {bad} not in {{-1, 0, 1}}")));
        }
        Ok(TernaryArray { rows, cols, cells })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(n, m, rows.concat())
    }

    /// `n × 1` array from a sequence.
    pub fn sequence(values: Vec<i8>) -> Result<Self> {
        let n = values.len();
        Self::new(n, 1, values)
    }

    pub fn filled(rows: usize, cols: usize, value: i8) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn random_binary<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Result<Self> {
        let cells = (0..rows * cols)
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        Self::new(rows, cols, cells)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major cell storage.
    #[inline]
    pub fn cells(&self) -> &[i8] {
        &self.cells
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i8 {
        self.cells[i * self.cols + j]
    }

    /// Cell value with the implicit zero extension outside the support.
    pub fn get(&self, i: i64, j: i64) -> i8 {
        if i < 0 || j < 0 || i >= self.rows as i64 || j >= self.cols as i64 {
            0
        } else {
            self.at(i as usize, j as usize)
        }
    }

    pub fn is_sequence(&self) -> bool {
        self.cols == 1
    }

    /// True when no cell inside the support is zero.
    pub fn is_binary(&self) -> bool {
        self.cells.iter().all(|&c| c != 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c != 0).count()
    }

    pub fn transpose(&self) -> TernaryArray {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(self.at(i, j));
            }
        }
        TernaryArray { rows: self.cols, cols: self.rows, cells }
    }

    /// `b_ij = a_{(i + di) mod n, (j + dj) mod m}`.
    pub fn cyclic_shift(&self, di: i64, dj: i64) -> TernaryArray {
        let (n, m) = (self.rows as i64, self.cols as i64);
        let (di, dj) = (di.rem_euclid(n) as usize, dj.rem_euclid(m) as usize);
        let mut cells = Vec::with_capacity(self.cells.len());
        for i in 0..self.rows {
            let src = (i + di) % self.rows;
            let row = &self.cells[src * self.cols..(src + 1) * self.cols];
            cells.extend_from_slice(&row[dj..]);
            cells.extend_from_slice(&row[..dj]);
        }
        TernaryArray { rows: self.rows, cols: self.cols, cells }
    }

    /// The rotation `A_{s,t}`: rows shifted by `⌊ns⌋`, columns by `⌊mt⌋`.
    pub fn rotate(&self, r: Rotation) -> TernaryArray {
        let (di, dj) = r.shifts(self.rows, self.cols);
        self.cyclic_shift(di, dj)
    }

    /// Serialise in the array text format: a `n m` header line followed by
    /// `n` lines of `m` space-separated cells, newline terminated.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row = &self.cells[i * self.cols..(i + 1) * self.cols];
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Strict parser for [`Self::to_text`] output.
    pub fn parse_text(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| err(0, "missing trailing newline"))?;
        let mut lines = body.split('\n');
        let header = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let dims: Vec<&str> = header.split(' ').collect();
        if dims.len() != 2 {
            return Err(err(1, "header must be `n m`"));
        }
        let parse_dim = |tok: &str| -> Result<usize> {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(1, &format!("invalid dimension `{tok}`")));
            }
            match tok.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(err(1, &format!("invalid dimension `{tok}`"))),
            }
        };
        let (n, m) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut cells = Vec::with_capacity(n.saturating_mul(m).min(1 << 24));
        let mut count = 0;
        for (k, line) in lines.enumerate() {
            let lineno = k + 2;
            if count == n {
                return Err(err(lineno, "more rows than declared"));
            }
            let toks: Vec<&str> = line.split(' ').collect();
            if toks.len() != m {
                return Err(err(lineno, &format!("expected {m} cells, got {}", toks.len())));
            }
            for tok in toks {
                cells.push(match tok {
                    "-1" => -1,
                    "0" => 0,
                    "1" => 1,
                    other => return Err(err(lineno, &format!("invalid token `{other}`"))),
                });
            }
            count += 1;
        }
        if count != n {
            return Err(err(count + 2, &format!("expected {n} rows, got {count}")));
        }
        Self::new(n, m, cells)
    }
}

impl fmt::Display for TernaryArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Exact rotation parameters `(s, t)`, canonicalised into `(−1/2, 1/2]`.
///
/// Rotating by `s` and by `s + 1` gives the same array, so the translation
/// never changes what [`TernaryArray::rotate`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rotation {
    s: Ratio<i64>,
    t: Ratio<i64>,
}

/// Translate a rational by an integer into `(−1/2, 1/2]`.
pub fn canonical_unit(x: Ratio<i64>) -> Ratio<i64> {
    let half = Ratio::new(1, 2);
    // x − k with k = ⌈x − 1/2⌉
    let k = (x - half).ceil();
    x - k
}

impl Rotation {
    pub fn new(s: Ratio<i64>, t: Ratio<i64>) -> Self {
        Rotation { s: canonical_unit(s), t: canonical_unit(t) }
    }

    pub fn from_fractions(s_num: i64, s_den: i64, t_num: i64, t_den: i64) -> Result<Self> {
        if s_den == 0 || t_den == 0 {
            return Err(Error::Domain("rotation denominator is zero".into()));
        }
        Ok(Self::new(Ratio::new(s_num, s_den), Ratio::new(t_num, t_den)))
    }

    pub const IDENTITY: Rotation = Rotation {
        s: Ratio::new_raw(0, 1),
        t: Ratio::new_raw(0, 1),
    };

    /// Rotation of a sequence (`t = 0`).
    pub fn seq(s: Ratio<i64>) -> Self {
        Self::new(s, Ratio::from_integer(0))
    }

    pub fn s(&self) -> Ratio<i64> {
        self.s
    }

    pub fn t(&self) -> Ratio<i64> {
        self.t
    }

    pub fn swapped(&self) -> Rotation {
        Rotation { s: self.t, t: self.s }
    }

    /// Exact `(⌊n·s⌋, ⌊m·t⌋)`.
    pub fn shifts(&self, n: usize, m: usize) -> (i64, i64) {
        (floor_mul(n, self.s), floor_mul(m, self.t))
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

fn floor_mul(n: usize, x: Ratio<i64>) -> i64 {
    Integer::div_floor(&(n as i64 * x.numer()), x.denom())
}

/// Signs filling the zero cross (row 0 and column 0) of `L × K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    row_signs: Vec<i8>,
    col_signs: Vec<i8>,
}

impl SignPattern {
    /// `row_signs` has length q (cells `(0, j)`), `col_signs` length p
    /// (cells `(i, 0)`); both must agree on cell `(0, 0)`.
    pub fn new(row_signs: Vec<i8>, col_signs: Vec<i8>) -> Result<Self> {
        if row_signs.is_empty() || col_signs.is_empty() {
            return Err(Error::Shape("sign vectors must be non-empty".into()));
        }
        if row_signs.iter().chain(&col_signs).any(|&v| v != 1 && v != -1) {
            return Err(Error::Domain("sign pattern entries must be ±1".into()));
        }
        if row_signs[0] != col_signs[0] {
            return Err(Error::Domain("row and column signs disagree at (0, 0)".into()));
        }
        Ok(SignPattern { row_signs, col_signs })
    }

    /// Column 0 all −1, row 0 all +1 apart from the shared corner.
    pub fn calabro_wolf(p: usize, q: usize) -> Self {
        let mut row_signs = vec![1i8; q];
        row_signs[0] = -1;
        SignPattern { row_signs, col_signs: vec![-1; p] }
    }

    pub fn all_plus(p: usize, q: usize) -> Self {
        SignPattern { row_signs: vec![1; q], col_signs: vec![1; p] }
    }

    pub fn random<R: Rng + ?Sized>(p: usize, q: usize, rng: &mut R) -> Self {
        let mut sign = || if rng.random::<bool>() { 1i8 } else { -1 };
        let corner = sign();
        let row_signs: Vec<i8> = std::iter::once(corner).chain((1..q).map(|_| sign())).collect();
        let col_signs: Vec<i8> = std::iter::once(corner).chain((1..p).map(|_| sign())).collect();
        SignPattern { row_signs, col_signs }
    }

    /// The pattern whose `p + q − 1` free signs are the low bits of `code`
    /// (bit set means −1): corner first, then row 0, then column 0.
    pub fn from_code(p: usize, q: usize, code: u64) -> Self {
        let bit = |k: usize| if (code >> k) & 1 == 1 { -1i8 } else { 1 };
        let mut row_signs = vec![bit(0); q];
        for (j, r) in row_signs.iter_mut().enumerate().skip(1) {
            *r = bit(j);
        }
        let mut col_signs = vec![bit(0); p];
        for (i, c) in col_signs.iter_mut().enumerate().skip(1) {
            *c = bit(q - 1 + i);
        }
        SignPattern { row_signs, col_signs }
    }

    pub fn row_signs(&self) -> &[i8] {
        &self.row_signs
    }

    pub fn col_signs(&self) -> &[i8] {
        &self.col_signs
    }

    /// `(p, q)` this pattern fits.
    pub fn dims(&self) -> (usize, usize) {
        (self.col_signs.len(), self.row_signs.len())
    }
}

/// Legendre sequence of length p; `ternary` puts 0 instead of 1 at index 0.
pub fn legendre_sequence(p: PrimeModulus, ternary: bool) -> TernaryArray {
    let cells = (0..p.get() as i64)
        .map(|i| match i {
            0 if !ternary => 1,
            _ => legendre_symbol(i, p),
        })
        .collect();
    TernaryArray::sequence(cells).expect("p ≥ 3")
}

/// Product array `A × B` with cells `a_i·b_j`.
pub fn product_array(a: &TernaryArray, b: &TernaryArray) -> Result<TernaryArray> {
    if !a.is_sequence() || !b.is_sequence() {
        return Err(Error::Shape("product array needs two sequences".into()));
    }
    let cells = a
        .cells()
        .iter()
        .flat_map(|&x| b.cells().iter().map(move |&y| x * y))
        .collect();
    TernaryArray::new(a.rows(), b.rows(), cells)
}

/// Legendre array `L × K + V` from ternary Legendre sequences of lengths p, q.
pub fn legendre_array(p: PrimeModulus, q: PrimeModulus, v: &SignPattern) -> Result<TernaryArray> {
    let (pp, qq) = (p.as_usize(), q.as_usize());
    if v.dims() != (pp, qq) {
        return Err(Error::Shape(format!(
            "sign pattern is {}x{}, array is {pp}x{qq}",
            v.dims().0,
            v.dims().1
        )));
    }
    let l = legendre_sequence(p, true);
    let k = legendre_sequence(q, true);
    let t = product_array(&l, &k)?;
    let mut cells = t.cells;
    cells[..qq].copy_from_slice(v.row_signs());
    for (i, &c) in v.col_signs().iter().enumerate() {
        cells[i * qq] = c;
    }
    TernaryArray::new(pp, qq, cells)
}

/// Legendre array with the Calabro–Wolf sign pattern.
pub fn calabro_wolf_array(p: PrimeModulus, q: PrimeModulus) -> TernaryArray {
    legendre_array(p, q, &SignPattern::calabro_wolf(p.as_usize(), q.as_usize()))
        .expect("pattern shape matches by construction")
}

fn qr_cells(spec: &ExtFieldSpec) -> Vec<i8> {
    let p = spec.prime().as_usize();
    let (alpha, alpha_prime) = spec.basis();
    let mut cells = Vec::with_capacity(p * p);
    let mut row_start = crate::finite_field::ExtFieldElement::ZERO;
    for _ in 0..p {
        let mut x = row_start;
        for _ in 0..p {
            cells.push(spec.chi(x));
            x = spec.add(x, alpha_prime);
        }
        row_start = spec.add(row_start, alpha);
    }
    cells
}

fn check_spec(p: PrimeModulus, spec: &ExtFieldSpec) -> Result<()> {
    if spec.prime() != p {
        return Err(Error::Domain(format!(
            "field spec is over GF({}), array requested for p = {p}",
            spec.prime()
        )));
    }
    Ok(())
}

/// Ternary quadratic-residue array `z_ij = chi(iα + jα′)`.
pub fn ternary_qr_array(p: PrimeModulus, spec: &ExtFieldSpec) -> Result<TernaryArray> {
    check_spec(p, spec)?;
    TernaryArray::new(p.as_usize(), p.as_usize(), qr_cells(spec))
}

/// Binary quadratic-residue array: the ternary one with `y_00` set.
pub fn qr_array(p: PrimeModulus, spec: &ExtFieldSpec, y00: i8) -> Result<TernaryArray> {
    if y00 != 1 && y00 != -1 {
        return Err(Error::Domain(format!("y00 must be ±1, got {y00}")));
    }
    check_spec(p, spec)?;
    let mut cells = qr_cells(spec);
    cells[0] = y00;
    TernaryArray::new(p.as_usize(), p.as_usize(), cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_ext_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn legendre_sequence_examples() {
        assert_eq!(legendre_sequence(pm(3), false).cells(), &[1, 1, -1]);
        assert_eq!(legendre_sequence(pm(3), true).cells(), &[0, 1, -1]);
        let l7 = legendre_sequence(pm(7), false);
        assert_eq!(l7.cells().iter().filter(|&&c| c == -1).count(), 3);
        assert!(l7.is_binary());
        assert_eq!(legendre_sequence(pm(11), true).nonzero_count(), 10);
    }

    #[test]
    fn product_array_examples() {
        let a = TernaryArray::sequence(vec![1, -1]).unwrap();
        let b = TernaryArray::sequence(vec![1, 1]).unwrap();
        let ab = product_array(&a, &b).unwrap();
        assert_eq!(ab, TernaryArray::from_rows(&[vec![1, 1], vec![-1, -1]]).unwrap());
        let one = TernaryArray::sequence(vec![1]).unwrap();
        assert_eq!(product_array(&a, &one).unwrap(), a);
        assert!(product_array(&ab, &a).is_err());
    }

    #[test]
    fn legendre_array_examples() {
        let x = legendre_array(pm(3), pm(3), &SignPattern::all_plus(3, 3)).unwrap();
        let expect = TernaryArray::from_rows(&[vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1]]).unwrap();
        assert_eq!(x, expect);

        let cw = calabro_wolf_array(pm(3), pm(3));
        let expect = TernaryArray::from_rows(&[vec![-1, 1, 1], vec![-1, 1, -1], vec![-1, -1, 1]]).unwrap();
        assert_eq!(cw, expect);
        assert_eq!(cw.at(0, 0), -1);

        assert!(legendre_array(pm(3), pm(5), &SignPattern::all_plus(3, 3)).is_err());
    }

    #[test]
    fn legendre_array_interior_and_cross() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (p, q) = (pm(7), pm(11));
        let t = product_array(&legendre_sequence(p, true), &legendre_sequence(q, true)).unwrap();
        for i in 0..7 {
            for j in 0..11 {
                assert_eq!(t.at(i, j) == 0, i == 0 || j == 0);
            }
        }
        for _ in 0..10 {
            let v = SignPattern::random(7, 11, &mut rng);
            let x = legendre_array(p, q, &v).unwrap();
            assert!(x.is_binary());
            for i in 1..7 {
                for j in 1..11 {
                    assert_eq!(x.at(i, j), legendre_symbol(i as i64, p) * legendre_symbol(j as i64, q));
                }
            }
            for j in 0..11 {
                assert_eq!(x.at(0, j), v.row_signs()[j]);
            }
            for i in 0..7 {
                assert_eq!(x.at(i, 0), v.col_signs()[i]);
            }
        }
    }

    #[test]
    fn all_sign_patterns_give_distinct_arrays() {
        let distinct: HashSet<_> = (0..32u64)
            .map(|code| legendre_array(pm(3), pm(3), &SignPattern::from_code(3, 3, code)).unwrap())
            .collect();
        assert_eq!(distinct.len(), 32);
    }

    #[test]
    fn sign_pattern_validation() {
        assert!(SignPattern::new(vec![1, 1], vec![-1, 1]).is_err());
        assert!(SignPattern::new(vec![1, 0], vec![1, 1]).is_err());
        let cw = SignPattern::calabro_wolf(3, 5);
        assert_eq!(SignPattern::new(cw.row_signs().to_vec(), cw.col_signs().to_vec()).unwrap(), cw);
    }

    #[test]
    fn qr_array_counts() {
        for p in [3, 5, 7, 11, 13].map(pm) {
            let spec = make_ext_field(p);
            let y = qr_array(p, &spec, 1).unwrap();
            let minus = y.cells().iter().filter(|&&c| c == -1).count();
            assert_eq!(minus, (p.as_usize().pow(2) - 1) / 2);
            assert!(y.is_binary());
            let z = ternary_qr_array(p, &spec).unwrap();
            assert_eq!(z.at(0, 0), 0);
            assert_eq!(z.nonzero_count(), p.as_usize().pow(2) - 1);
            let differing = y.cells().iter().zip(z.cells()).filter(|(a, b)| a != b).count();
            assert_eq!(differing, 1);
        }
    }

    #[test]
    fn qr_array_p3_from_square_table() {
        let p = pm(3);
        let spec = make_ext_field(p);
        let mut squares = HashSet::new();
        for b in spec.elements().skip(1) {
            squares.insert(spec.mul(b, b));
        }
        let y = qr_array(p, &spec, 1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == 0 && j == 0 {
                    continue;
                }
                // iα + jα′ with α = 1, α′ = x is (i, j)
                let a = crate::finite_field::ExtFieldElement::new(i as u32, j as u32);
                let expect = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(y.at(i, j), expect, "({i}, {j})");
            }
        }
    }

    #[test]
    fn qr_row_zero_is_constant() {
        // every element of GF(p) is a square in GF(p²)
        let p = pm(5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let spec = ExtFieldSpec::random_basis(p, &mut rng);
            let z = ternary_qr_array(p, &spec).unwrap();
            let c = spec.chi(spec.basis().1);
            assert_eq!(z.at(0, 0), 0);
            for j in 1..5 {
                assert_eq!(z.at(0, j), c);
            }
        }
    }

    #[test]
    fn qr_array_square_scalar_symmetry() {
        for p in [3, 5, 7].map(pm) {
            let spec = make_ext_field(p);
            let y = ternary_qr_array(p, &spec).unwrap();
            let pp = p.as_usize();
            for c in 1..pp {
                if legendre_symbol(c as i64, p) != 1 {
                    continue;
                }
                for i in 0..pp {
                    for j in 0..pp {
                        assert_eq!(y.at(i, j), y.at(c * i % pp, c * j % pp));
                    }
                }
            }
        }
    }

    #[test]
    fn qr_rejects_mismatched_spec() {
        let spec = make_ext_field(pm(5));
        assert!(qr_array(pm(7), &spec, 1).is_err());
        assert!(ternary_qr_array(pm(7), &spec).is_err());
        assert!(qr_array(pm(5), &spec, 0).is_err());
    }

    #[test]
    fn rotation_canonicalisation() {
        let rot = Rotation::new(r(3, 4), r(1, 2));
        assert_eq!(rot.s(), r(-1, 4));
        assert_eq!(rot.t(), r(1, 2));
        assert_eq!(Rotation::new(r(-1, 2), r(1, 1)).s(), r(1, 2));
        assert_eq!(Rotation::new(r(-1, 2), r(1, 1)).t(), r(0, 1));
        assert_eq!(Rotation::new(r(7, 3), r(-5, 4)).s(), r(1, 3));
        assert_eq!(Rotation::new(r(7, 3), r(-5, 4)).t(), r(-1, 4));
    }

    #[test]
    fn rotation_floor_shifts() {
        assert_eq!(Rotation::seq(r(1, 4)).shifts(3, 1).0, 0);
        assert_eq!(Rotation::seq(r(1, 4)).shifts(5, 1).0, 1);
        assert_eq!(Rotation::seq(r(1, 4)).shifts(10007, 1).0, 2501);
        assert_eq!(Rotation::seq(r(-1, 4)).shifts(5, 1).0, -2);
    }

    #[test]
    fn rotate_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = TernaryArray::random_binary(5, 7, &mut rng).unwrap();
        assert_eq!(a.rotate(Rotation::IDENTITY), a);
        assert_eq!(a.rotate(Rotation::new(r(1, 1), r(0, 1))), a);
        let rot = Rotation::new(r(1, 4), r(-2, 5));
        let b = a.rotate(rot);
        let (di, dj) = rot.shifts(5, 7);
        for i in 0..5 {
            for j in 0..7 {
                let si = (i as i64 + di).rem_euclid(5) as usize;
                let sj = (j as i64 + dj).rem_euclid(7) as usize;
                assert_eq!(b.at(i, j), a.at(si, sj));
            }
        }
    }

    #[test]
    fn shift_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = TernaryArray::random_binary(6, 4, &mut rng).unwrap();
        for (a1, b1, a2, b2) in [(1, 2, 3, 4), (-7, 5, 11, -13), (0, 0, 6, 4)] {
            assert_eq!(a.cyclic_shift(a1, b1).cyclic_shift(a2, b2), a.cyclic_shift(a1 + a2, b1 + b2));
        }
    }

    #[test]
    fn transpose_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = TernaryArray::random_binary(5, 3, &mut rng).unwrap();
        assert_eq!(a.transpose().transpose(), a);
        let rot = Rotation::new(r(1, 3), r(2, 5));
        assert_eq!(a.rotate(rot).transpose(), a.transpose().rotate(rot.swapped()));
    }

    #[test]
    fn text_format() {
        let a = TernaryArray::from_rows(&[vec![1, 0, -1], vec![-1, 1, 1]]).unwrap();
        let text = a.to_text();
        assert_eq!(text, "2 3\n1 0 -1\n-1 1 1\n");
        assert_eq!(TernaryArray::parse_text(&text).unwrap(), a);

        for bad in [
            "2 3\n1 0 -1\n-1 1 1",
            "2 3\n1 0 -1\n-1 1 2\n",
            "2 3\n1 0 -1\n-1 1 +1\n",
            "2 3\n1 0 -1\n-1 1\n",
            "2 3\n1 0 -1\n",
            "2 3\n1 0 -1\n-1 1 1\n1 1 1\n",
            "2 3 1\n1 0 -1\n-1 1 1\n",
            "0 3\n",
            "2  3\n1 0 -1\n-1 1 1\n",
            "2 3\n1 0 -1 \n-1 1 1\n",
            "a 3\n1 0 -1\n-1 1 1\n",
        ] {
            assert!(TernaryArray::parse_text(bad).is_err(), "accepted {bad:?}");
        }
    }
}
