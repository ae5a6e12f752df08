//! Sign vectors, digit vectors and the Hadamard matrices they index.
//!
//! Sign vectors in `{+1, -1}^r` follow a recursive order: element `i` of the
//! rank `r - 1` list becomes `(1, e)` at position `i` and `(-1, -e)` at
//! position `2^(r-1) + i`. Digit vectors in `{0, 1}^r` are ordered so that the
//! columns `2^(-r/2) k_a` line up with the columns of `J^(r)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::cone_model::ConeStructure;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Largest rank for which sign/digit tables are built.
pub const MAX_TABLE_RANK: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    entries: Vec<i8>,
    order_index: usize,
}

impl SignVector {
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn order_index(&self) -> usize {
        self.order_index
    }

    pub fn get(&self, j: usize) -> f64 {
        self.entries[j] as f64
    }

    /// `prod_j eps_j^{a_j}` for a 0/1 exponent vector.
    pub fn power(&self, a: &[u8]) -> i8 {
        self.entries
            .iter()
            .zip(a)
            .fold(1, |acc, (&e, &d)| if d & 1 == 1 { acc * e } else { acc })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitVector {
    entries: Vec<u8>,
    order_index: usize,
}

impl DigitVector {
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn order_index(&self) -> usize {
        self.order_index
    }

    /// `|a|`, the number of ones.
    pub fn weight(&self) -> usize {
        self.entries.iter().map(|&d| d as usize).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

fn check_rank(r: usize) -> Result<()> {
    if r < 1 {
        return Err(Error::RankTooSmall { got: r, min: 1 });
    }
    if r > MAX_TABLE_RANK {
        return Err(Error::IndexOutOfRange(format!("rank {r} exceeds {MAX_TABLE_RANK}")));
    }
    Ok(())
}

fn raw_sign_order(r: usize) -> Vec<Vec<i8>> {
    let mut list = vec![vec![1i8], vec![-1i8]];
    for _ in 1..r {
        let mut next = Vec::with_capacity(list.len() * 2);
        next.extend(list.iter().map(|e| {
            let mut v = vec![1i8];
            v.extend_from_slice(e);
            v
        }));
        next.extend(list.iter().map(|e| {
            let mut v = vec![-1i8];
            v.extend(e.iter().map(|x| -x));
            v
        }));
        list = next;
    }
    list
}

/// The ordered list `I_r`.
pub fn sign_order(r: usize) -> Result<Vec<SignVector>> {
    check_rank(r)?;
    Ok(raw_sign_order(r)
        .into_iter()
        .enumerate()
        .map(|(order_index, entries)| SignVector { entries, order_index })
        .collect())
}

/// Position of a sign vector in `I_r`.
pub fn sign_index(eps: &[i8]) -> usize {
    let r = eps.len();
    let mut idx = 0;
    let mut flip = 1i8;
    for (j, &e) in eps.iter().enumerate() {
        if e * flip < 0 {
            idx += 1 << (r - 1 - j);
            flip = -flip;
        }
    }
    idx
}

fn hadamard_signs(r: usize) -> Vec<i8> {
    // entries of 2^{r/2} J^(r), row-major
    let mut m = vec![1i8];
    let mut n = 1;
    for _ in 0..r {
        let mut next = vec![0i8; 4 * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = m[i * n + j];
                next[i * 2 * n + j] = v;
                next[i * 2 * n + n + j] = v;
                next[(n + i) * 2 * n + j] = v;
                next[(n + i) * 2 * n + n + j] = -v;
            }
        }
        m = next;
        n *= 2;
    }
    m
}

/// `J^(1) = (1/sqrt 2) [[1, 1], [1, -1]]` and `J^(r) = J^(r-1) (x) J^(1)`.
pub fn hadamard(r: usize) -> Result<ComplexMatrix> {
    check_rank(r)?;
    let j1 = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, -1.0]])
        .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    let mut j = j1.clone();
    for _ in 1..r {
        j = kron(&j, &j1);
    }
    Ok(j)
}

fn build_digit_order(r: usize) -> Vec<DigitVector> {
    let n = 1usize << r;
    let signs = hadamard_signs(r);
    let mut columns: HashMap<Vec<i8>, usize> = HashMap::with_capacity(n);
    for c in 0..n {
        let col: Vec<i8> = (0..n).map(|i| signs[i * n + c]).collect();
        columns.insert(col, c);
    }
    let order = raw_sign_order(r);
    let mut slots: Vec<Option<Vec<u8>>> = vec![None; n];
    for bits in 0..n {
        let a: Vec<u8> = (0..r).map(|j| (bits >> j & 1) as u8).collect();
        let k: Vec<i8> = order
            .iter()
            .map(|e| e.iter().zip(&a).fold(1i8, |acc, (&x, &d)| if d == 1 { acc * x } else { acc }))
            .collect();
        let c = *columns
            .get(&k)
            .expect("every k_a is a column of the Hadamard matrix");
        assert!(slots[c].is_none(), "two digit vectors share a column");
        slots[c] = Some(a);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(order_index, a)| DigitVector {
            entries: a.expect("digit order is a bijection"),
            order_index,
        })
        .collect()
}

static DIGIT_ORDERS: [OnceLock<Vec<DigitVector>>; MAX_TABLE_RANK + 1] =
    [const { OnceLock::new() }; MAX_TABLE_RANK + 1];

/// The ordered list `D_r`, found by matching each `k_a` against the columns
/// of `J^(r)`. Cached per rank.
pub fn digit_order(r: usize) -> Result<&'static [DigitVector]> {
    check_rank(r)?;
    Ok(DIGIT_ORDERS[r].get_or_init(|| build_digit_order(r)))
}

/// Position of a digit vector in `D_r`.
pub fn digit_index(a: &[u8]) -> Result<usize> {
    digit_order(a.len())?
        .iter()
        .position(|d| d.entries == a)
        .ok_or_else(|| Error::IndexOutOfRange(format!("{a:?} is not a 0/1 vector")))
}

/// `k_a = (prod_j eps_j^{a_j})_{eps in I_r}` as a column.
pub fn k_vector(a: &[u8]) -> Result<Vec<Complex64>> {
    Ok(sign_order(a.len())?
        .iter()
        .map(|e| Complex64::new(e.power(a) as f64, 0.0))
        .collect())
}

/// Kronecker product with the right operand supplying the outer blocks:
/// block `(i, j)` of the result is `b_ij * A`. This is the textbook `B (x) A`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let na = a.size();
    ComplexMatrix::from_fn(na * b.size(), |row, col| {
        b[(row / na, col / na)] * a[(row % na, col % na)]
    })
}

/// Kronecker word `f_1 (x) f_2 (x) ... (x) f_k` folded left to right.
pub fn kron_word(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("empty Kronecker word");
    rest.iter().fold((*first).clone(), |acc, f| kron(&acc, f))
}

/// `b = a M mod 2` for a digit row vector.
pub fn digit_times(a: &[u8], m: &[Vec<i64>]) -> Vec<u8> {
    let r = a.len();
    (0..r)
        .map(|k| ((0..r).map(|j| a[j] as i64 * m[j][k]).sum::<i64>().rem_euclid(2)) as u8)
        .collect()
}

/// Permutation matrix `W` with `J^(r) W = 2^(-r/2) (k_{a sigma mod 2})_a`,
/// i.e. `W[b, a] = 1` exactly when `b = a sigma mod 2`.
pub fn permutation_w(cone: &ConeStructure, side: Side) -> Result<ComplexMatrix> {
    let sigma = match side {
        Side::Primal => cone.sigma(),
        Side::Dual => cone.sigma_star(),
    };
    permutation_for(sigma)
}

pub fn permutation_for(sigma: &[Vec<i64>]) -> Result<ComplexMatrix> {
    let r = sigma.len();
    let digits = digit_order(r)?;
    let n = digits.len();
    let index: HashMap<&[u8], usize> = digits.iter().map(|d| (d.entries(), d.order_index)).collect();
    let mut w = ComplexMatrix::zeros(n);
    let mut hit = vec![false; n];
    for d in digits {
        let image = digit_times(d.entries(), sigma);
        let b = index[image.as_slice()];
        if hit[b] {
            return Err(Error::Internal(format!("a -> a sigma mod 2 is not injective at {image:?}")));
        }
        hit[b] = true;
        w[(b, d.order_index)] = Complex64::new(1.0, 0.0);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone_model::catalog;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sign_order_small() {
        let s1: Vec<Vec<i8>> = sign_order(1).unwrap().iter().map(|s| s.entries().to_vec()).collect();
        assert_eq!(s1, vec![vec![1], vec![-1]]);
        let s2: Vec<Vec<i8>> = sign_order(2).unwrap().iter().map(|s| s.entries().to_vec()).collect();
        assert_eq!(s2, vec![vec![1, 1], vec![1, -1], vec![-1, -1], vec![-1, 1]]);
        assert!(sign_order(0).is_err());
    }

    #[test]
    fn first_half_has_leading_plus() {
        for r in 1..=6 {
            let s = sign_order(r).unwrap();
            assert!(s[..1 << (r - 1)].iter().all(|e| e.entries()[0] == 1));
            assert!(s[1 << (r - 1)..].iter().all(|e| e.entries()[0] == -1));
            for e in &s {
                assert_eq!(sign_index(e.entries()), e.order_index());
            }
        }
    }

    #[test]
    fn hadamard_small() {
        let j1 = hadamard(1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(j1.max_abs_diff(&ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]])) < 1e-16);
        let j2 = hadamard(2).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[
            &[1.0, 1.0, 1.0, 1.0],
            &[1.0, -1.0, 1.0, -1.0],
            &[1.0, 1.0, -1.0, -1.0],
            &[1.0, -1.0, -1.0, 1.0],
        ])
        .scale(c(0.5));
        assert!(j2.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn hadamard_is_symmetric_involution() {
        for r in 1..=10 {
            let j = hadamard(r).unwrap();
            assert!(j.max_abs_diff(&j.transpose()) == 0.0);
            let sq = j.matmul(&j);
            assert!(sq.max_abs_diff(&ComplexMatrix::identity(1 << r)) <= 1e-13, "r = {r}");
        }
    }

    #[test]
    fn hadamard_entries_follow_bit_parity() {
        let r = 5;
        let j = hadamard(r).unwrap();
        let scale = (2f64).powf(-(r as f64) / 2.0);
        for i in 0..32usize {
            for k in 0..32usize {
                let sign = if (i & k).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                assert!((j[(i, k)] - c(sign * scale)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn digit_order_rank_two() {
        let d: Vec<Vec<u8>> = digit_order(2).unwrap().iter().map(|d| d.entries().to_vec()).collect();
        assert_eq!(d, vec![vec![0, 0], vec![1, 1], vec![1, 0], vec![0, 1]]);
        assert_eq!(digit_index(&[1, 0]).unwrap(), 2);
    }

    // Independent description of the same order: column b of J^(r) in the
    // first half is (col_b', col_b') and in the second half (col_b', -col_b').
    fn digit_order_by_recursion(r: usize) -> Vec<Vec<u8>> {
        let mut order = vec![vec![0u8], vec![1u8]];
        for _ in 1..r {
            let parity = |a: &Vec<u8>| a.iter().map(|&x| x as usize).sum::<usize>() % 2;
            let mut next = Vec::new();
            for a in &order {
                let mut v = vec![parity(a) as u8];
                v.extend_from_slice(a);
                next.push(v);
            }
            for a in &order {
                let mut v = vec![(1 - parity(a)) as u8];
                v.extend_from_slice(a);
                next.push(v);
            }
            order = next;
        }
        order
    }

    #[test]
    fn digit_order_matches_recursive_description() {
        for r in 1..=8 {
            let d: Vec<Vec<u8>> = digit_order(r).unwrap().iter().map(|d| d.entries().to_vec()).collect();
            assert_eq!(d, digit_order_by_recursion(r), "r = {r}");
        }
    }

    #[test]
    fn k_columns_assemble_hadamard() {
        for r in 1..=6 {
            let n = 1usize << r;
            let scale = (2f64).powf(-(r as f64) / 2.0);
            let digits = digit_order(r).unwrap();
            let cols: Vec<Vec<Complex64>> = digits.iter().map(|d| k_vector(d.entries()).unwrap()).collect();
            let assembled = ComplexMatrix::from_fn(n, |i, j| cols[j][i] * scale);
            assert!(assembled.max_abs_diff(&hadamard(r).unwrap()) < 1e-15);
        }
    }

    #[test]
    fn k_vectors_are_distinct() {
        for r in 1..=8 {
            let mut seen = std::collections::HashSet::new();
            for d in digit_order(r).unwrap() {
                let k: Vec<i64> = k_vector(d.entries()).unwrap().iter().map(|z| z.re as i64).collect();
                assert!(seen.insert(k));
            }
            assert_eq!(seen.len(), 1 << r);
        }
    }

    #[test]
    fn k_vector_examples() {
        assert!(k_vector(&[0, 0, 0]).unwrap().iter().all(|z| *z == c(1.0)));
        let k = k_vector(&[1, 1]).unwrap();
        assert_eq!(k, vec![c(1.0), c(-1.0), c(1.0), c(-1.0)]);
    }

    #[test]
    fn kron_block_convention() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&a, &i2), ComplexMatrix::block_diag(&a, &a));
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let j2 = hadamard(2).unwrap();
        let j1 = hadamard(1).unwrap();
        let h = c(std::f64::consts::FRAC_1_SQRT_2);
        let expect = ComplexMatrix::from_fn(4, |i, k| {
            let s = if i >= 2 && k >= 2 { -1.0 } else { 1.0 };
            j1[(i % 2, k % 2)] * h * s
        });
        assert!(kron(&j1, &j1).max_abs_diff(&expect) < 1e-16);
        assert!(j2.max_abs_diff(&expect) < 1e-16);
    }

    #[test]
    fn identity_multiplier_gives_identity_permutation() {
        let o = catalog("orthant3").unwrap().cone;
        assert_eq!(permutation_w(&o, Side::Primal).unwrap(), ComplexMatrix::identity(8));
    }

    #[test]
    fn vinberg_permutations_differ() {
        let v = catalog("vinberg3").unwrap().cone;
        let wp = permutation_w(&v, Side::Primal).unwrap();
        let wd = permutation_w(&v, Side::Dual).unwrap();
        assert_ne!(wp, wd);
        // brute force: a -> a sigma mod 2 over all 8 digit vectors
        let digits = digit_order(3).unwrap();
        for a in digits {
            let x = a.entries();
            let image = [(x[0] + x[1] + x[2]) % 2, x[1], x[2]];
            let b = digit_index(&image).unwrap();
            assert_eq!(wp[(b, a.order_index())], c(1.0));
        }
    }

    #[test]
    fn permutation_relation_with_hadamard() {
        let v = catalog("vinberg3").unwrap().cone;
        let scale = (2f64).powf(-1.5);
        for side in [Side::Primal, Side::Dual] {
            let sigma = match side {
                Side::Primal => v.sigma().clone(),
                Side::Dual => v.sigma_star().clone(),
            };
            let w = permutation_w(&v, side).unwrap();
            let lhs = hadamard(3).unwrap().matmul(&w);
            for d in digit_order(3).unwrap() {
                let k = k_vector(&digit_times(d.entries(), &sigma)).unwrap();
                for (i, z) in k.iter().enumerate() {
                    assert!((lhs[(i, d.order_index())] - z * scale).norm() < 1e-15);
                }
            }
        }
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let mut it = v.into_iter();
            ComplexMatrix::from_fn(n, |_, _| {
                let (a, b) = it.next().unwrap();
                Complex64::new(a, b)
            })
        })
    }

    proptest! {
        #[test]
        fn permutation_has_one_entry_per_row_and_column(idx in 0usize..5) {
            let cone = catalog(crate::cone_model::CATALOG_NAMES[idx]).unwrap().cone;
            for side in [Side::Primal, Side::Dual] {
                let w = permutation_w(&cone, side).unwrap();
                let n = w.size();
                for i in 0..n {
                    let row: f64 = (0..n).map(|j| w[(i, j)].re).sum();
                    let col: f64 = (0..n).map(|j| w[(j, i)].re).sum();
                    prop_assert_eq!(row, 1.0);
                    prop_assert_eq!(col, 1.0);
                }
            }
        }

        #[test]
        fn kron_is_associative(a in arb_matrix(2), b in arb_matrix(3), m in arb_matrix(2)) {
            let left = kron(&kron(&a, &b), &m);
            let right = kron(&a, &kron(&b, &m));
            prop_assert!(left.max_abs_diff(&right) <= 1e-12);
        }

        #[test]
        fn kron_mixed_product(a in arb_matrix(2), b in arb_matrix(3), x in arb_matrix(2), y in arb_matrix(3)) {
            let lhs = kron(&a, &b).matmul(&kron(&x, &y));
            let rhs = kron(&a.matmul(&x), &b.matmul(&y));
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }
    }
}
