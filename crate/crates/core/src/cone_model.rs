//! Combinatorial data of a homogeneous cone and the quantities derived from it.
//!
//! A cone is described by its rank `r`, the weight-space dimensions `n_kj`
//! (`1 <= j < k <= r`) and the multiplier matrices `sigma` and `sigma_star`
//! of the cone and of its dual. Pair indices `(k, j)` are 1-based everywhere
//! in the public API.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

/// Largest rank for which the completion condition is decided by
/// enumerating all sign pairs.
pub const EXHAUSTIVE_RANK_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeStructure {
    rank: usize,
    // lower triangle, row k holds n_{k,1..k-1}
    n: Vec<Vec<u32>>,
    sigma: IntMatrix,
    sigma_star: IntMatrix,
    name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalVector(pub Vec<Rational64>);

impl RationalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn sum(&self) -> Rational64 {
        self.0.iter().copied().sum()
    }
}

/// JSON cone descriptor: `{"rank", "n": [[k, j, n_kj], ...], "sigma", "sigma_star", "name"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDescriptor {
    pub rank: usize,
    pub n: Vec<[i64; 3]>,
    pub sigma: IntMatrix,
    pub sigma_star: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ConeStructure {
    /// Validates and builds a cone. `n` lists `(k, j, n_kj)` triples; missing
    /// pairs default to zero.
    pub fn new(
        rank: usize,
        n: &[(usize, usize, i64)],
        sigma: IntMatrix,
        sigma_star: IntMatrix,
    ) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall { got: rank, min: 2 });
        }
        let mut table: Vec<Vec<u32>> = (0..rank).map(|k| vec![0; k]).collect();
        let mut seen = vec![vec![false; rank]; rank];
        for &(k, j, v) in n {
            if !(1 <= j && j < k && k <= rank) {
                return Err(Error::StructureConstant {
                    k,
                    j,
                    reason: format!("need 1 <= j < k <= {rank}"),
                });
            }
            if seen[k - 1][j - 1] {
                return Err(Error::StructureConstant {
                    k,
                    j,
                    reason: "listed twice".into(),
                });
            }
            seen[k - 1][j - 1] = true;
            let v = u32::try_from(v).map_err(|_| Error::StructureConstant {
                k,
                j,
                reason: format!("{v} is not a non-negative dimension"),
            })?;
            table[k - 1][j - 1] = v;
        }
        check_multiplier("sigma", &sigma, rank)?;
        check_multiplier("sigma_star", &sigma_star, rank)?;
        Ok(Self {
            rank,
            n: table,
            sigma,
            sigma_star,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn from_descriptor(d: &ConeDescriptor) -> Result<Self> {
        let triples: Vec<(usize, usize, i64)> = d
            .n
            .iter()
            .map(|&[k, j, v]| {
                let k = usize::try_from(k).map_err(|_| Error::Parse(format!("bad index k = {k}")))?;
                let j = usize::try_from(j).map_err(|_| Error::Parse(format!("bad index j = {j}")))?;
                Ok((k, j, v))
            })
            .collect::<Result<_>>()?;
        let mut cone = Self::new(d.rank, &triples, d.sigma.clone(), d.sigma_star.clone())?;
        cone.name = d.name.clone();
        Ok(cone)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: ConeDescriptor = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_descriptor(&d)
    }

    pub fn descriptor(&self) -> ConeDescriptor {
        let mut n = Vec::new();
        for k in 2..=self.rank {
            for j in 1..k {
                n.push([k as i64, j as i64, self.structure_constant(k, j) as i64]);
            }
        }
        ConeDescriptor {
            rank: self.rank,
            n,
            sigma: self.sigma.clone(),
            sigma_star: self.sigma_star.clone(),
            name: self.name.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn sigma(&self) -> &IntMatrix {
        &self.sigma
    }

    pub fn sigma_star(&self) -> &IntMatrix {
        &self.sigma_star
    }

    /// `n_kj` for `1 <= j < k <= r`.
    pub fn structure_constant(&self, k: usize, j: usize) -> u32 {
        assert!(1 <= j && j < k && k <= self.rank, "pair ({k}, {j}) out of range");
        self.n[k - 1][j - 1]
    }

    /// Total dimension `r + sum n_kj` of the ambient space.
    pub fn dimension(&self) -> usize {
        self.rank + self.n.iter().flatten().map(|&v| v as usize).sum::<usize>()
    }

    /// `(p, q, d)` with `p_k = sum_{j<k} n_kj`, `q_j = sum_{k>j} n_kj` and
    /// `d = 1 + (p + q) / 2`.
    pub fn derived_vectors(&self) -> (RationalVector, RationalVector, RationalVector) {
        let r = self.rank;
        let mut p = vec![Rational64::zero(); r];
        let mut q = vec![Rational64::zero(); r];
        for k in 2..=r {
            for j in 1..k {
                let v = Rational64::from_integer(self.structure_constant(k, j) as i64);
                p[k - 1] += v;
                q[j - 1] += v;
            }
        }
        let half = Rational64::new(1, 2);
        let d = p
            .iter()
            .zip(&q)
            .map(|(a, b)| Rational64::one() + (a + b) * half)
            .collect();
        (RationalVector(p), RationalVector(q), RationalVector(d))
    }

    /// `tau(s) = (d - s sigma) sigma_star^{-1}`.
    pub fn tau(&self, s: &[Complex64]) -> Vec<Complex64> {
        self.affine(s, &self.sigma, &self.sigma_star)
    }

    /// The same map with the roles of `sigma` and `sigma_star` exchanged;
    /// inverse of [`Self::tau`].
    pub fn tau_dual(&self, s: &[Complex64]) -> Vec<Complex64> {
        self.affine(s, &self.sigma_star, &self.sigma)
    }

    fn affine(&self, s: &[Complex64], left: &IntMatrix, right: &IntMatrix) -> Vec<Complex64> {
        assert_eq!(s.len(), self.rank, "s has wrong length");
        let (_, _, d) = self.derived_vectors();
        let d = d.to_f64();
        let ssig = row_times_int(s, left);
        let diff: Vec<Complex64> = d.iter().zip(&ssig).map(|(&a, b)| Complex64::new(a, 0.0) - b).collect();
        let inv = rational_inverse(right).expect("multiplier matrices are unimodular");
        row_times_rational(&diff, &inv)
    }

    /// `(m, m_star) = (d sigma^{-1}, d sigma_star^{-1})`: the exponents of the
    /// invariant measures `prod_j |Delta_j|^{-m_j} dx`.
    pub fn measure_exponents(&self) -> (RationalVector, RationalVector) {
        let (_, _, d) = self.derived_vectors();
        let apply = |m: &IntMatrix| {
            let inv = rational_inverse(m).expect("multiplier matrices are unimodular");
            let r = self.rank;
            RationalVector((0..r).map(|k| (0..r).map(|j| d.0[j] * inv[j][k]).sum()).collect())
        };
        (apply(&self.sigma), apply(&self.sigma_star))
    }

    /// `s sigma` for a complex row vector.
    pub fn s_sigma(&self, s: &[Complex64]) -> Vec<Complex64> {
        row_times_int(s, &self.sigma)
    }

    /// `s sigma_star` for a complex row vector.
    pub fn s_sigma_star(&self, s: &[Complex64]) -> Vec<Complex64> {
        row_times_int(s, &self.sigma_star)
    }

    /// Solves `alpha = s sigma - p/2` for `s`.
    pub fn s_from_alpha(&self, alpha: &[Complex64]) -> Vec<Complex64> {
        let (p, _, _) = self.derived_vectors();
        let shifted: Vec<Complex64> = alpha
            .iter()
            .zip(p.to_f64())
            .map(|(a, pk)| a + 0.5 * pk)
            .collect();
        let inv = rational_inverse(&self.sigma).expect("multiplier matrices are unimodular");
        row_times_rational(&shifted, &inv)
    }

    /// `alpha = s sigma - p/2`.
    pub fn alpha_from_s(&self, s: &[Complex64]) -> Vec<Complex64> {
        let (p, _, _) = self.derived_vectors();
        self.s_sigma(s)
            .into_iter()
            .zip(p.to_f64())
            .map(|(a, pk)| a - 0.5 * pk)
            .collect()
    }

    /// Decides the completion condition: returns `Some(m)` when
    /// `(pi/4) sum_{j<k} eps_j delta_k n_kj = m pi (mod 2 pi)` for every pair of
    /// sign vectors. Up to [`EXHAUSTIVE_RANK_LIMIT`] the pairs are enumerated
    /// and the result is checked against [`Self::completion_condition_criterion`].
    pub fn completion_condition(&self) -> Option<u8> {
        let criterion = self.completion_condition_criterion();
        if self.rank > EXHAUSTIVE_RANK_LIMIT {
            return criterion;
        }
        let exhaustive = self.completion_condition_exhaustive();
        debug_assert_eq!(exhaustive, criterion, "enumeration and criterion disagree");
        exhaustive
    }

    /// Enumerates all `(eps, delta)` pairs. Cost `O(4^r r)`.
    pub fn completion_condition_exhaustive(&self) -> Option<u8> {
        let r = self.rank;
        let mut residue: Option<i64> = None;
        for e_bits in 0u32..(1 << r) {
            // u_k = sum_{j<k} eps_j n_kj, so the phase sum is sum_k delta_k u_k
            let eps = |j: usize| if e_bits >> j & 1 == 0 { 1i64 } else { -1 };
            let u: Vec<i64> = (0..r)
                .map(|k| (0..k).map(|j| eps(j) * self.n[k][j] as i64).sum())
                .collect();
            for d_bits in 0u32..(1 << r) {
                let total: i64 = (0..r)
                    .map(|k| if d_bits >> k & 1 == 0 { u[k] } else { -u[k] })
                    .sum();
                // (pi/4) total = m pi (mod 2 pi)  <=>  total = 4m (mod 8)
                let t = total.rem_euclid(8);
                if t % 4 != 0 {
                    return None;
                }
                match residue {
                    None => residue = Some(t),
                    Some(prev) if prev != t => return None,
                    _ => {}
                }
            }
        }
        residue.map(|t| (t / 4) as u8)
    }

    /// Closed criterion: every `n_kj` even and every entry of `p` and `q`
    /// divisible by 4. Then `m = (sum n_kj / 4) mod 2`.
    pub fn completion_condition_criterion(&self) -> Option<u8> {
        let (p, q, _) = self.derived_vectors();
        let all_even = self.n.iter().flatten().all(|&v| v % 2 == 0);
        let div4 = |v: &RationalVector| v.0.iter().all(|x| x.to_integer() % 4 == 0);
        if !(all_even && div4(&p) && div4(&q)) {
            return None;
        }
        let total: i64 = self.n.iter().flatten().map(|&v| v as i64).sum();
        Some(((total / 4) % 2) as u8)
    }
}

fn check_multiplier(which: &'static str, m: &IntMatrix, rank: usize) -> Result<()> {
    if m.len() != rank {
        return Err(Error::Shape {
            what: "multiplier matrix rows",
            expected: rank,
            got: m.len(),
        });
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != rank {
            return Err(Error::Shape {
                what: "multiplier matrix columns",
                expected: rank,
                got: row.len(),
            });
        }
        if let Some(j) = row.iter().position(|&v| v < 0) {
            return Err(Error::NegativeEntry { which, row: i, col: j });
        }
    }
    let det = int_det(m);
    if det != 1 {
        return Err(Error::NotUnimodular { which, det });
    }
    Ok(())
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn int_det(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Exact inverse over the rationals; `None` for singular input.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&v| Rational64::from_integer(v)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in 0..2 * n {
                    let t = a[col][j];
                    a[i][j] -= f * t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn row_times_int(s: &[Complex64], m: &IntMatrix) -> Vec<Complex64> {
    let r = s.len();
    (0..r)
        .map(|k| (0..r).map(|j| s[j] * m[j][k] as f64).sum())
        .collect()
}

fn row_times_rational(s: &[Complex64], m: &[Vec<Rational64>]) -> Vec<Complex64> {
    let r = s.len();
    (0..r)
        .map(|k| {
            (0..r)
                .map(|j| s[j] * m[j][k].to_f64().unwrap_or(f64::NAN))
                .sum()
        })
        .collect()
}

/// How the open orbits of a catalog cone are parametrized for integration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitChart {
    /// `V = R^r`, `Delta_j = x_j`.
    Orthant,
    /// 2x2 real symmetric matrices `[[a, b], [b, c]]`.
    SymmetricTwo,
    /// Pairs of 2x2 symmetric blocks sharing the top-left entry.
    Vinberg,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub cone: ConeStructure,
    pub chart: Option<OrbitChart>,
    pub measure_exponents: RationalVector,
    pub dual_measure_exponents: RationalVector,
}

const CATALOG_JSON: &str = include_str!("catalog.json");

pub const CATALOG_NAMES: [&str; 5] = ["orthant2", "orthant3", "sym2", "vinberg3", "quat4"];

pub fn catalog_descriptors() -> Vec<ConeDescriptor> {
    serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid JSON")
}

/// Looks up a catalog cone by name.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let d = catalog_descriptors()
        .into_iter()
        .find(|d| d.name.as_deref() == Some(name))
        .ok_or_else(|| Error::UnknownCone(name.to_string()))?;
    let cone = ConeStructure::from_descriptor(&d)?;
    let chart = match name {
        "orthant2" | "orthant3" => Some(OrbitChart::Orthant),
        "sym2" => Some(OrbitChart::SymmetricTwo),
        "vinberg3" => Some(OrbitChart::Vinberg),
        _ => None,
    };
    let (m, m_star) = cone.measure_exponents();
    Ok(CatalogEntry {
        cone,
        chart,
        measure_exponents: m,
        dual_measure_exponents: m_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rv(v: &[(i64, i64)]) -> RationalVector {
        RationalVector(v.iter().map(|&(a, b)| Rational64::new(a, b)).collect())
    }

    fn eye(r: usize) -> IntMatrix {
        (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect()
    }

    #[test]
    fn orthant_is_accepted() {
        let c = ConeStructure::new(2, &[(2, 1, 0)], eye(2), eye(2)).unwrap();
        assert_eq!(c.dimension(), 2);
    }

    #[test]
    fn vinberg_is_accepted() {
        let c = ConeStructure::new(
            3,
            &[(2, 1, 1), (3, 1, 1), (3, 2, 0)],
            vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]],
            vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(c.dimension(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        let err = ConeStructure::new(2, &[], vec![vec![2, 0], vec![0, 1]], eye(2)).unwrap_err();
        assert!(err.to_string().contains("not unimodular"), "{err}");
        assert!(matches!(
            ConeStructure::new(1, &[], eye(1), eye(1)),
            Err(Error::RankTooSmall { .. })
        ));
        assert!(matches!(
            ConeStructure::new(2, &[(2, 1, -1)], eye(2), eye(2)),
            Err(Error::StructureConstant { .. })
        ));
        assert!(matches!(
            ConeStructure::new(2, &[], vec![vec![1, -1], vec![0, 1]], eye(2)),
            Err(Error::NegativeEntry { .. })
        ));
        assert!(matches!(
            ConeStructure::new(2, &[(1, 2, 1)], eye(2), eye(2)),
            Err(Error::StructureConstant { .. })
        ));
    }

    #[test]
    fn derived_vectors_of_catalog_cones() {
        let v = catalog("vinberg3").unwrap().cone;
        let (p, q, d) = v.derived_vectors();
        assert_eq!(p, rv(&[(0, 1), (1, 1), (1, 1)]));
        assert_eq!(q, rv(&[(2, 1), (0, 1), (0, 1)]));
        assert_eq!(d, rv(&[(2, 1), (3, 2), (3, 2)]));

        let (p, q, d) = catalog("orthant2").unwrap().cone.derived_vectors();
        assert_eq!(p, rv(&[(0, 1), (0, 1)]));
        assert_eq!(q, p);
        assert_eq!(d, rv(&[(1, 1), (1, 1)]));

        let (p, q, d) = catalog("sym2").unwrap().cone.derived_vectors();
        assert_eq!(p, rv(&[(0, 1), (1, 1)]));
        assert_eq!(q, rv(&[(1, 1), (0, 1)]));
        assert_eq!(d, rv(&[(3, 2), (3, 2)]));
    }

    #[test]
    fn tau_examples() {
        let s = [Complex64::new(0.3, 0.2), Complex64::new(-1.1, 0.5)];
        let t = catalog("orthant2").unwrap().cone.tau(&s);
        assert!((t[0] - (1.0 - s[0])).norm() < 1e-15);
        assert!((t[1] - (1.0 - s[1])).norm() < 1e-15);

        let t = catalog("sym2").unwrap().cone.tau(&s);
        assert!((t[0] - (1.5 - s[0] - s[1])).norm() < 1e-15);
        assert!((t[1] - s[0]).norm() < 1e-15);
    }

    #[test]
    fn measure_exponents_examples() {
        assert_eq!(catalog("orthant2").unwrap().measure_exponents, rv(&[(1, 1), (1, 1)]));
        assert_eq!(catalog("sym2").unwrap().measure_exponents, rv(&[(0, 1), (3, 2)]));
        assert_eq!(
            catalog("vinberg3").unwrap().measure_exponents,
            rv(&[(-1, 1), (3, 2), (3, 2)])
        );
    }

    #[test]
    fn completion_condition_examples() {
        assert_eq!(catalog("orthant2").unwrap().cone.completion_condition(), Some(0));
        assert_eq!(catalog("sym2").unwrap().cone.completion_condition(), None);
        assert_eq!(catalog("quat4").unwrap().cone.completion_condition(), Some(1));
        assert_eq!(catalog("vinberg3").unwrap().cone.completion_condition(), None);
    }

    #[test]
    fn catalog_lookup() {
        let o = catalog("orthant3").unwrap().cone;
        assert_eq!(o.sigma(), &eye(3));
        assert_eq!(o.sigma_star(), &eye(3));
        let s = catalog("sym2").unwrap().cone;
        assert_eq!(s.structure_constant(2, 1), 1);
        assert_eq!(s.sigma(), &vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(s.sigma_star(), &vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(catalog("cube"), Err(Error::UnknownCone(_))));
        for name in CATALOG_NAMES {
            let c = catalog(name).unwrap().cone;
            assert_eq!(int_det(c.sigma()), 1);
            assert_eq!(int_det(c.sigma_star()), 1);
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let c = catalog("vinberg3").unwrap().cone;
        let text = serde_json::to_string(&c.descriptor()).unwrap();
        assert_eq!(ConeStructure::from_json(&text).unwrap(), c);
    }

    #[test]
    fn bareiss_matches_hand_values() {
        assert_eq!(int_det(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(int_det(&vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]), 18);
    }

    fn arb_cone() -> impl Strategy<Value = ConeStructure> {
        (2usize..=5).prop_flat_map(|r| {
            let pairs = r * (r - 1) / 2;
            proptest::collection::vec(0i64..=8, pairs).prop_map(move |vals| {
                let mut n = Vec::new();
                let mut it = vals.into_iter();
                for k in 2..=r {
                    for j in 1..k {
                        n.push((k, j, it.next().unwrap()));
                    }
                }
                ConeStructure::new(r, &n, eye(r), eye(r)).unwrap()
            })
        })
    }

    fn arb_s(r: usize) -> impl Strategy<Value = Vec<Complex64>> {
        proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), r)
            .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn condition_enumeration_agrees_with_criterion(c in arb_cone()) {
            prop_assert_eq!(c.completion_condition_exhaustive(), c.completion_condition_criterion());
        }

        #[test]
        fn p_and_q_have_equal_mass(c in arb_cone()) {
            let (p, q, _) = c.derived_vectors();
            let total = (c.dimension() - c.rank()) as i64;
            prop_assert_eq!(p.sum(), Rational64::from_integer(total));
            prop_assert_eq!(q.sum(), Rational64::from_integer(total));
        }

        #[test]
        fn tau_dual_inverts_tau(idx in 0usize..5, s in arb_s(3)) {
            let c = catalog(CATALOG_NAMES[idx]).unwrap().cone;
            let s = &s[..c.rank().min(3)];
            let s: Vec<Complex64> = s.iter().copied().chain(std::iter::repeat(Complex64::new(0.5, 0.0))).take(c.rank()).collect();
            let back = c.tau_dual(&c.tau(&s));
            for (a, b) in back.iter().zip(&s) {
                prop_assert!((a - b).norm() <= 1e-13);
            }
        }
    }
}
