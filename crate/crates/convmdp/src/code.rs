//! (n, k, δ) convolutional codes represented by the coefficient matrices
//! H_0..H_ν of a parity-check matrix H(z), plus every structured matrix the
//! property checks and decoders need: the lower-block-Toeplitz sliding
//! matrix, the partial parity-check matrix, its reverse counterpart, and the
//! Sylvester resultant for rate-1/2 codes.

use crate::error::{Error, Result};
use crate::gf::{Element, Field};
use crate::matrix::GfMatrix;
use crate::poly::Poly;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;

/// Dimensions of an (n, k, δ) code whose degree is divisible by n-k.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct CodeParams {
    n: usize,
    k: usize,
    delta: usize,
    nu: usize,
    l: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, delta: usize) -> Result<CodeParams> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!("need 0 < k < n, got n={n}, k={k}")));
        }
        let nk = n - k;
        if delta % nk != 0 {
            return Err(Error::DegreeDivisibility { delta, nk });
        }
        Ok(CodeParams {
            n,
            k,
            delta,
            nu: delta / nk,
            l: delta / k + delta / nk,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// ν = δ/(n-k), the memory of the parity-check matrix.
    pub fn nu(&self) -> usize {
        self.nu
    }

    /// L = ⌊δ/k⌋ + ⌊δ/(n-k)⌋, the last window index that matters.
    pub fn l(&self) -> usize {
        self.l
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ConvCode {
    field: Arc<Field>,
    params: CodeParams,
    /// h[i] is the coefficient of z^i, so h has length ν+1.
    h: Vec<GfMatrix>,
}

impl ConvCode {
    /// Builds a code from coefficient matrices listed highest index first,
    /// i.e. `[H_ν, …, H_0]`, matching the usual display order.
    pub fn new(field: Arc<Field>, n: usize, k: usize, delta: usize, coeffs: Vec<GfMatrix>) -> Result<ConvCode> {
        let params = CodeParams::new(n, k, delta)?;
        if coeffs.len() != params.nu + 1 {
            return Err(Error::CoefficientCount { expected: params.nu + 1, got: coeffs.len() });
        }
        for m in &coeffs {
            field.check_compatible(m.field())?;
            if m.rows() != n - k || m.cols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "coefficient matrix is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    n - k,
                    n
                )));
            }
        }
        let mut h = coeffs;
        h.reverse();
        Ok(ConvCode { field, params, h })
    }

    /// Same as [`ConvCode::new`], taking rows of integer encodings per
    /// coefficient matrix (highest index first).
    pub fn from_values(
        field: Arc<Field>,
        n: usize,
        k: usize,
        delta: usize,
        coeffs: &[Vec<u64>],
    ) -> Result<ConvCode> {
        let mats = coeffs
            .iter()
            .map(|vals| GfMatrix::from_values(field.clone(), n - k, n, vals))
            .collect::<Result<Vec<_>>>()?;
        ConvCode::new(field, n, k, delta, mats)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    /// The coefficient matrix H_i (i is the power of z).
    pub fn coeff(&self, i: usize) -> &GfMatrix {
        &self.h[i]
    }

    /// Coefficient matrices in display order `[H_ν, …, H_0]`.
    pub fn coeffs_high_first(&self) -> Vec<&GfMatrix> {
        self.h.iter().rev().collect()
    }

    /// For normalized rate-1/2 searches: the free entries `(a, b, c, d, …)`
    /// of `H_{ν-1}..H_0` in display order.
    pub fn free_entries(&self) -> Vec<u16> {
        let mut out = Vec::new();
        for m in self.h.iter().rev().skip(1) {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    out.push(m.get(r, c).value());
                }
            }
        }
        out
    }

    /// The sliding matrix of window index j: a lower-block-Toeplitz matrix of
    /// shape (j+1)(n-k) x (j+1)n whose block (r, c) is H_{r-c}, with H_i = 0
    /// for i outside 0..=ν.
    pub fn sliding_matrix(&self, j: usize) -> GfMatrix {
        let (n, nk, nu) = (self.params.n, self.params.n - self.params.k, self.params.nu);
        let mut m = GfMatrix::zeros(self.field.clone(), (j + 1) * nk, (j + 1) * n);
        for rb in 0..=j {
            for cb in 0..=rb {
                let i = rb - cb;
                if i > nu {
                    continue;
                }
                self.place_block(&mut m, rb, cb, i);
            }
        }
        m
    }

    /// The partial parity-check matrix of window index j: shape
    /// (j+1)(n-k) x (ν+j+1)n, block row r holding H_ν..H_0 starting at block
    /// column r.
    pub fn partial_matrix(&self, j: usize) -> GfMatrix {
        let (n, nk, nu) = (self.params.n, self.params.n - self.params.k, self.params.nu);
        let mut m = GfMatrix::zeros(self.field.clone(), (j + 1) * nk, (nu + j + 1) * n);
        for rb in 0..=j {
            for s in 0..=nu {
                self.place_block(&mut m, rb, rb + s, nu - s);
            }
        }
        m
    }

    /// The upper-block-Toeplitz matrix used by the reverse-MDP criterion:
    /// shape (L+1)(n-k) x (L+1)n with H_ν on the diagonal and H_{ν-s} on the
    /// s-th superdiagonal.
    pub fn reverse_sliding_matrix(&self) -> GfMatrix {
        let (n, nk, nu, l) = (
            self.params.n,
            self.params.n - self.params.k,
            self.params.nu,
            self.params.l,
        );
        let mut m = GfMatrix::zeros(self.field.clone(), (l + 1) * nk, (l + 1) * n);
        for rb in 0..=l {
            for s in 0..=nu.min(l - rb) {
                self.place_block(&mut m, rb, rb + s, nu - s);
            }
        }
        m
    }

    fn place_block(&self, m: &mut GfMatrix, rb: usize, cb: usize, i: usize) {
        let (n, nk) = (self.params.n, self.params.n - self.params.k);
        let h = &self.h[i];
        for r in 0..nk {
            for c in 0..n {
                m.set(rb * nk + r, cb * n + c, h.get(r, c));
            }
        }
    }

    /// The code with reversed coefficient list; applying it twice gives back
    /// the original code.
    pub fn reverse_code(&self) -> ConvCode {
        let mut h = self.h.clone();
        h.reverse();
        ConvCode { field: self.field.clone(), params: self.params, h }
    }

    /// Entry (r, c) of H(z) as a polynomial.
    pub fn entry_poly(&self, r: usize, c: usize) -> Poly {
        Poly::new(self.field.clone(), self.h.iter().map(|m| m.get(r, c)).collect())
    }

    /// Determinant of the 2ν x 2ν Sylvester matrix of the two entries of a
    /// rate-1/2 parity-check matrix, both treated as formal degree-ν
    /// polynomials.
    pub fn resultant(&self) -> Result<Element> {
        if self.params.n != 2 || self.params.k != 1 {
            return Err(Error::UnsupportedRate);
        }
        let nu = self.params.nu;
        let mut m = GfMatrix::zeros(self.field.clone(), 2 * nu, 2 * nu);
        for row in 0..nu {
            for t in 0..=nu {
                if row + t < 2 * nu {
                    // h_{1,ν-t} shifted right by the row index
                    m.set(row, row + t, self.h[nu - t].get(0, 0));
                    m.set(nu + row, row + t, self.h[nu - t].get(0, 1));
                }
            }
        }
        m.det()
    }

    /// True iff the gcd of all (n-k) x (n-k) polynomial minors of H(z) is a
    /// nonzero constant.
    pub fn is_left_prime(&self) -> bool {
        let nk = self.params.n - self.params.k;
        let cols: Vec<usize> = (0..self.params.n).collect();
        let mut gcd = Poly::zero(self.field.clone());
        for combo in combinations(&cols, nk) {
            let minor = self.poly_minor(&combo);
            gcd = if gcd.is_zero() { minor } else { gcd.gcd(&minor) };
            if gcd.is_nonzero_constant() {
                return true;
            }
        }
        gcd.is_nonzero_constant()
    }

    /// Determinant of the polynomial submatrix of H(z) on the given columns,
    /// by Laplace expansion.
    fn poly_minor(&self, cols: &[usize]) -> Poly {
        fn det(code: &ConvCode, rows: &[usize], cols: &[usize]) -> Poly {
            let field = code.field.clone();
            if cols.is_empty() {
                return Poly::constant(field.clone(), field.one());
            }
            let mut acc = Poly::zero(field);
            for (idx, &c) in cols.iter().enumerate() {
                let e = code.entry_poly(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let sub = det(code, &rows[1..], &rest_cols);
                let term = e.mul(&sub);
                acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        let rows: Vec<usize> = (0..self.params.n - self.params.k).collect();
        det(self, &rows, cols)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CodeFile::from(self)).expect("code serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<ConvCode> {
        let file: CodeFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad code JSON: {e}")))?;
        file.into_code()
    }
}

/// All size-k subsets of `items`, in lexicographic order.
pub(crate) fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance the odometer
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// On-disk form of a code: coefficient matrices highest index first, each as
/// row-major integer encodings.
#[derive(Serialize, Deserialize)]
pub struct CodeFile {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    #[serde(rename = "H")]
    pub h: Vec<Vec<u64>>,
}

impl From<&ConvCode> for CodeFile {
    fn from(code: &ConvCode) -> CodeFile {
        CodeFile {
            field: code.field.to_string(),
            n: code.params.n,
            k: code.params.k,
            delta: code.params.delta,
            h: code
                .coeffs_high_first()
                .iter()
                .map(|m| m.values().iter().map(|&v| v as u64).collect())
                .collect(),
        }
    }
}

impl CodeFile {
    pub fn into_code(self) -> Result<ConvCode> {
        let field = Arc::new(Field::from_str(&self.field)?);
        ConvCode::from_values(field, self.n, self.k, self.delta, &self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn f13_code() -> ConvCode {
        let f = Field::shared(13, 1, None).unwrap();
        ConvCode::from_values(f, 2, 1, 2, &[vec![1, 1], vec![1, 12], vec![2, 2]]).unwrap()
    }

    fn f5_code() -> ConvCode {
        let f = Field::shared(5, 1, None).unwrap();
        ConvCode::from_values(f, 2, 1, 2, &[vec![1, 1], vec![1, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn params_and_validation() {
        let code = f13_code();
        assert_eq!(code.params().nu(), 2);
        assert_eq!(code.params().l(), 4);
        assert!(f5_code().is_left_prime());

        let f = Field::shared(5, 1, None).unwrap();
        // (3,1,3): n-k = 2 does not divide delta = 3
        assert!(matches!(
            ConvCode::from_values(f.clone(), 3, 1, 3, &[vec![1; 6], vec![1; 6]]),
            Err(Error::DegreeDivisibility { .. })
        ));
        // wrong number of coefficient matrices
        assert!(matches!(
            ConvCode::from_values(f, 2, 1, 2, &[vec![1, 1], vec![1, 2]]),
            Err(Error::CoefficientCount { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn sliding_matrix_blocks() {
        let code = f13_code();
        let h0 = code.sliding_matrix(0);
        assert_eq!((h0.rows(), h0.cols()), (1, 2));
        assert_eq!(h0.values(), vec![2, 2]);

        let h1 = code.sliding_matrix(1);
        assert_eq!(h1.values(), vec![2, 2, 0, 0, 1, 12, 2, 2]);

        let h4 = code.sliding_matrix(4);
        assert_eq!((h4.rows(), h4.cols()), (5, 10));
        // H_i = 0 for i > ν: top-right of rows 3..5 must be zero
        for r in 3..5 {
            for c in 0..2 * (r - 2) {
                assert_eq!(h4.get(r, c).value(), 0, "row {r} col {c}");
            }
        }
    }

    #[test]
    fn partial_matrix_shapes() {
        let code = f13_code();
        let m = code.partial_matrix(4);
        assert_eq!((m.rows(), m.cols()), (5, 14));
        let m0 = code.partial_matrix(0);
        assert_eq!((m0.rows(), m0.cols()), (1, 6));
        assert_eq!(m0.values(), vec![1, 1, 1, 12, 2, 2]);

        let f = Field::shared(2, 7, None).unwrap();
        let code213 = ConvCode::from_values(
            f,
            2,
            1,
            3,
            &[vec![1, 1], vec![72, 117], vec![48, 1], vec![19, 29]],
        )
        .unwrap();
        assert_eq!(code213.params().l(), 6);
        let m = code213.partial_matrix(4);
        assert_eq!((m.rows(), m.cols()), (5, 16));
    }

    #[test]
    fn partial_restricted_to_tail_equals_sliding() {
        let f = Field::shared(7, 1, None).unwrap();
        let mut seed = 1u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            (seed >> 33) % 6 + 1
        };
        for _ in 0..10 {
            let code = ConvCode::from_values(
                f.clone(),
                2,
                1,
                2,
                &[vec![next(), next()], vec![next(), next()], vec![next(), next()]],
            )
            .unwrap();
            for j in 0..=code.params().l() {
                let partial = code.partial_matrix(j);
                let nu_cols = code.params().nu() * code.params().n();
                let tail = partial.submatrix(0..partial.rows(), nu_cols..partial.cols());
                assert_eq!(tail, code.sliding_matrix(j));
            }
        }
    }

    #[test]
    fn reverse_code_roundtrip() {
        let code = f13_code();
        let rev = code.reverse_code();
        let display: Vec<Vec<u16>> = rev.coeffs_high_first().iter().map(|m| m.values()).collect();
        assert_eq!(display, vec![vec![2, 2], vec![1, 12], vec![1, 1]]);
        assert_eq!(rev.reverse_code(), code);
        assert_eq!(rev.params(), code.params());
    }

    #[test]
    fn reverse_sliding_mirrors_reversed_code() {
        let code = f13_code();
        let rev = code.reverse_code();
        let tilted = code.reverse_sliding_matrix();
        let lower = rev.sliding_matrix(code.params().l());
        let (nk, n, l) = (1, 2, code.params().l());
        for rb in 0..=l {
            for s in 0..=code.params().nu() {
                if rb + s > l || rb < s {
                    continue;
                }
                for r in 0..nk {
                    for c in 0..n {
                        assert_eq!(
                            tilted.get(rb * nk + r, (rb + s) * n + c),
                            lower.get(rb * nk + r, (rb - s) * n + c)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn resultant_of_f128_example() {
        let f = Field::shared(2, 7, None).unwrap();
        // H_3=[1 1], H_2=[α⁶+α³, α⁶+α⁵+α⁴+α²+1], H_1=[α⁵+α⁴, 1], H_0=[α⁴+α+1, α⁴+α³+α²+1]
        let code = ConvCode::from_values(
            f.clone(),
            2,
            1,
            3,
            &[vec![1, 1], vec![72, 117], vec![48, 1], vec![19, 29]],
        )
        .unwrap();
        // α²+α+1
        assert_eq!(code.resultant().unwrap().value(), 7);
    }

    #[test]
    fn resultant_edge_cases() {
        let f = Field::shared(13, 1, None).unwrap();
        let equal = ConvCode::from_values(f, 2, 1, 2, &[vec![1, 1], vec![3, 3], vec![5, 5]]).unwrap();
        assert!(equal.resultant().unwrap().is_zero());
        assert!(!f13_code().resultant().unwrap().is_zero());

        let f3 = Field::shared(5, 1, None).unwrap();
        let wide = ConvCode::from_values(f3, 3, 1, 2, &[vec![1; 6], vec![1; 6]]).unwrap();
        assert!(matches!(wide.resultant(), Err(Error::UnsupportedRate)));
    }

    #[test]
    fn left_primeness() {
        let f2 = Field::shared(2, 1, None).unwrap();
        // H(z) = [z²+z+1, z²+z+1] is not left prime
        let bad = ConvCode::from_values(f2, 2, 1, 2, &[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!bad.is_left_prime());

        // a constant 1 entry forces a unit minor
        let f5 = Field::shared(5, 1, None).unwrap();
        let unit = ConvCode::from_values(f5, 2, 1, 2, &[vec![0, 1], vec![0, 3], vec![1, 2]]).unwrap();
        assert!(unit.is_left_prime());

        assert!(f13_code().is_left_prime());
    }

    #[test]
    fn left_prime_iff_resultant_nonzero() {
        let f = Field::shared(7, 1, None).unwrap();
        let mut seed = 42u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            (seed >> 33) % 6 + 1
        };
        for _ in 0..200 {
            let code = ConvCode::from_values(
                f.clone(),
                2,
                1,
                2,
                &[vec![1, 1], vec![next(), next()], vec![next(), next()]],
            )
            .unwrap();
            assert_eq!(code.is_left_prime(), !code.resultant().unwrap().is_zero());
        }
    }

    #[test]
    fn json_roundtrip() {
        let code = f13_code();
        let json = code.to_json();
        let back = ConvCode::from_json(&json).unwrap();
        assert_eq!(back, code);
        assert!(json.contains("\"H\":[[1,1],[1,12],[2,2]]"));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c = combinations(&[1usize, 2, 3, 4], 2);
        assert_eq!(c, vec![
            vec![1, 2], vec![1, 3], vec![1, 4],
            vec![2, 3], vec![2, 4], vec![3, 4],
        ]);
        assert_eq!(combinations(&[1usize], 2).len(), 0);
    }
}
