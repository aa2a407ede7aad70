//! Domain types for complete-intersection queries, plus the dimension and
//! positivity formulas that decide which queries are well posed.
//!
//! Curve classes in `P^n` are identified with their degree `d`, and every
//! insertion is a power of the hyperplane class pulled back along an
//! evaluation map.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds a rational from a machine-sized numerator and denominator.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, ModelError> {
    let text = text.trim();
    let bad = || ModelError::BadRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders as `num/den`, or just `num` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("ambient dimension must be at least 1")]
    AmbientDimension,
    #[error("bundle degree {0} must be at least 1")]
    BundleDegree(i64),
    #[error("{count} bundle factors leave no complete intersection in P^{ambient_dim}")]
    TooManyFactors { count: usize, ambient_dim: u32 },
    #[error("curve degree must be at least 1")]
    CurveDegree,
    #[error("insertion power {power} outside 1..={ambient_dim}")]
    InsertionPower { power: u32, ambient_dim: u32 },
    #[error("weight vector needs at least two entries")]
    WeightCount,
    #[error("weight {0} is not strictly positive")]
    NonPositiveWeight(String),
    #[error("weights at positions {0} and {1} coincide")]
    RepeatedWeight(usize, usize),
    #[error("genus {0} is not supported (only 0 and 1)")]
    Genus(i64),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// Torus weights `λ_0, …, λ_n`, one per coordinate fixed point of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self, ModelError> {
        if weights.len() < 2 {
            return Err(ModelError::WeightCount);
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(ModelError::NonPositiveWeight(format_rational(w)));
        }
        for i in 0..weights.len() {
            for j in i + 1..weights.len() {
                if weights[i] == weights[j] {
                    return Err(ModelError::RepeatedWeight(i, j));
                }
            }
        }
        Ok(WeightVector(weights))
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self, ModelError> {
        Self::new(weights.iter().map(|&w| int(w)).collect())
    }

    /// `n` for a weight vector on `P^n`.
    pub fn ambient_dim(&self) -> u32 {
        (self.0.len() - 1) as u32
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// Applies `permutation`: entry `i` of the result is entry
    /// `permutation[i]` of `self`.
    pub fn permuted(&self, permutation: &[usize]) -> Result<Self, ModelError> {
        Self::new(permutation.iter().map(|&p| self.0[p].clone()).collect())
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self, ModelError> {
        Self::new(self.0.iter().map(|w| w * factor).collect())
    }
}

/// A hyperplane power `H^power` pulled back along one evaluation map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Insertion {
    pub power: u32,
}

/// Genus-zero query on a complete intersection of `degrees` in `P^n`.
///
/// An empty `degrees` list means the ambient projective space itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CITarget {
    ambient_dim: u32,
    degrees: Vec<u32>,
    curve_degree: u32,
    insertions: Vec<Insertion>,
}

impl CITarget {
    pub fn new(
        ambient_dim: u32,
        degrees: Vec<u32>,
        curve_degree: u32,
        insertions: Vec<Insertion>,
    ) -> Result<Self, ModelError> {
        if ambient_dim < 1 {
            return Err(ModelError::AmbientDimension);
        }
        if let Some(&a) = degrees.iter().find(|&&a| a < 1) {
            return Err(ModelError::BundleDegree(a as i64));
        }
        if degrees.len() >= ambient_dim as usize {
            return Err(ModelError::TooManyFactors {
                count: degrees.len(),
                ambient_dim,
            });
        }
        if curve_degree < 1 {
            return Err(ModelError::CurveDegree);
        }
        if let Some(ins) = insertions
            .iter()
            .find(|ins| ins.power < 1 || ins.power > ambient_dim)
        {
            return Err(ModelError::InsertionPower {
                power: ins.power,
                ambient_dim,
            });
        }
        Ok(CITarget {
            ambient_dim,
            degrees,
            curve_degree,
            insertions,
        })
    }

    /// Unmarked query on the quintic threefold in `P^4`.
    pub fn quintic(curve_degree: u32) -> Result<Self, ModelError> {
        Self::new(4, vec![5], curve_degree, Vec::new())
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn curve_degree(&self) -> u32 {
        self.curve_degree
    }

    pub fn insertions(&self) -> &[Insertion] {
        &self.insertions
    }

    pub fn marks(&self) -> usize {
        self.insertions.len()
    }

    /// Complex dimension `n - m` of the complete intersection.
    pub fn ci_dim(&self) -> u32 {
        self.ambient_dim - self.degrees.len() as u32
    }

    /// `<c_1(TY), d·line>` for the complete intersection `Y`.
    pub fn c1_dot_curve(&self) -> i64 {
        let sum: i64 = self.degrees.iter().map(|&a| a as i64).sum();
        self.curve_degree as i64 * (self.ambient_dim as i64 + 1 - sum)
    }

    /// Complex dimension of `M_{0,k}(P^n, d)`.
    pub fn moduli_dim(&self) -> i64 {
        let n = self.ambient_dim as i64;
        let d = self.curve_degree as i64;
        n + (n + 1) * d + self.marks() as i64 - 3
    }

    /// Rank of `π_* ev^* L` over `M_{0,k}(P^n, d)`, i.e. `Σ (a_s d + 1)`.
    pub fn bundle_rank(&self) -> i64 {
        let d = self.curve_degree as i64;
        self.degrees.iter().map(|&a| a as i64 * d + 1).sum()
    }

    /// Total insertion codimension, in complex units.
    pub fn insertion_codim(&self) -> i64 {
        self.insertions.iter().map(|i| i.power as i64).sum()
    }

    /// Canonical one-line encoding used for cache keys and reports.
    pub fn canonical_string(&self) -> String {
        let join = |xs: &mut dyn Iterator<Item = u32>| {
            xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        format!(
            "n={};a=[{}];d={};ins=[{}]",
            self.ambient_dim,
            join(&mut self.degrees.iter().copied()),
            self.curve_degree,
            join(&mut self.insertions.iter().map(|i| i.power)),
        )
    }
}

impl fmt::Display for CITarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// True iff `a_1 + … + a_m = n + 1`.
pub fn is_calabi_yau(target: &CITarget) -> bool {
    let sum: u64 = target.degrees.iter().map(|&a| a as u64).sum();
    sum == target.ambient_dim as u64 + 1
}

/// Positivity of every split factor `O(a_s)` against every effective class
/// of degree `1..=d`.
pub fn positivity_check(target: &CITarget) -> bool {
    let degrees: Vec<i64> = target.degrees.iter().map(|&a| a as i64).collect();
    degrees_positive(&degrees, target.curve_degree)
}

/// Same as [`positivity_check`] on raw degrees, so that zero or negative
/// factors (which [`CITarget`] refuses) can still be classified.
pub fn degrees_positive(degrees: &[i64], curve_degree: u32) -> bool {
    degrees
        .iter()
        .all(|&a| (1..=curve_degree as i64).all(|b| a * b > 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionQuery {
    pub genus: i64,
    pub marks: i64,
    pub c1_dot_a: i64,
    /// `n` with `dim_R X = 2n`.
    pub half_dim: i64,
    pub bundle_c1_dot_a: Option<i64>,
}

/// Real expected dimension `2(<c_1, A> + (1 - g)(n - 3) + k)`, reduced by
/// `2<c_1(L), A>` when a bundle is given.
pub fn expected_dimension(q: &DimensionQuery) -> Result<i64, ModelError> {
    if !(0..=1).contains(&q.genus) {
        return Err(ModelError::Genus(q.genus));
    }
    let base = 2 * (q.c1_dot_a + (1 - q.genus) * (q.half_dim - 3) + q.marks);
    Ok(base - 2 * q.bundle_c1_dot_a.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn target(n: u32, degrees: &[u32], d: u32) -> CITarget {
        CITarget::new(n, degrees.to_vec(), d, vec![]).unwrap()
    }

    #[test]
    fn calabi_yau_examples() {
        assert!(is_calabi_yau(&target(4, &[5], 1)));
        assert!(is_calabi_yau(&target(5, &[3, 3], 1)));
        assert!(!is_calabi_yau(&target(4, &[4], 1)));
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity_check(&target(4, &[5], 3)));
        assert!(!degrees_positive(&[0], 1));
        assert!(positivity_check(&target(5, &[2, 4], 2)));
        assert!(!degrees_positive(&[3, -1], 2));
    }

    #[test]
    fn dimension_examples() {
        let q = |genus, marks, c1_dot_a, half_dim, bundle| DimensionQuery {
            genus,
            marks,
            c1_dot_a,
            half_dim,
            bundle_c1_dot_a: bundle,
        };
        assert_eq!(expected_dimension(&q(1, 0, 0, 3, None)), Ok(0));
        assert_eq!(expected_dimension(&q(0, 0, 0, 3, None)), Ok(0));
        assert_eq!(expected_dimension(&q(1, 3, 4, 9, None)), Ok(14));
        assert_eq!(expected_dimension(&q(1, 0, 10, 4, Some(10))), Ok(0));
        assert_eq!(expected_dimension(&q(2, 0, 0, 3, None)), Err(ModelError::Genus(2)));
    }

    #[test]
    fn target_validation() {
        assert_eq!(
            CITarget::new(0, vec![], 1, vec![]),
            Err(ModelError::AmbientDimension)
        );
        assert_eq!(
            CITarget::new(4, vec![5], 0, vec![]),
            Err(ModelError::CurveDegree)
        );
        assert!(matches!(
            CITarget::new(2, vec![1, 1], 1, vec![]),
            Err(ModelError::TooManyFactors { .. })
        ));
        assert!(matches!(
            CITarget::new(2, vec![], 1, vec![Insertion { power: 3 }]),
            Err(ModelError::InsertionPower { power: 3, .. })
        ));
        assert_eq!(
            CITarget::new(4, vec![0], 1, vec![]),
            Err(ModelError::BundleDegree(0))
        );
    }

    #[test]
    fn weight_validation() {
        assert_eq!(
            WeightVector::from_integers(&[1, 2, 1]),
            Err(ModelError::RepeatedWeight(0, 2))
        );
        assert!(matches!(
            WeightVector::from_integers(&[1, 0]),
            Err(ModelError::NonPositiveWeight(_))
        ));
        assert_eq!(WeightVector::from_integers(&[3]), Err(ModelError::WeightCount));
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("4876875/8").unwrap(), rat(4876875, 8));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(format_rational(&rat(10, 5)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| rat(n, d))
    }

    fn lowest_terms(r: &Rational) -> bool {
        use num_integer::Integer;
        r.denom().is_positive() && r.numer().gcd(r.denom()) == BigInt::from(1)
    }

    proptest! {
        #[test]
        fn rational_round_trips(a in small_rational(), b in small_rational()) {
            let sum = &a + &b;
            prop_assert_eq!(&(&sum - &b), &a);
            prop_assert!(lowest_terms(&sum));
            if !b.is_zero() {
                let q = &(&a * &b) / &b;
                prop_assert_eq!(&q, &a);
                prop_assert!(lowest_terms(&q));
            }
        }

        #[test]
        fn dimension_linear_in_marks(g in 0i64..=1, k in 0i64..20, c in -30i64..30, n in 1i64..10) {
            let at = |k| expected_dimension(&DimensionQuery {
                genus: g, marks: k, c1_dot_a: c, half_dim: n, bundle_c1_dot_a: None,
            }).unwrap();
            prop_assert_eq!(at(k + 1) - at(k), 2);
        }

        #[test]
        fn positivity_is_monotone(
            degrees in proptest::collection::vec(-3i64..6, 1..4),
            idx in 0usize..4,
            bump in 1i64..4,
            d in 1u32..5,
        ) {
            let mut raised = degrees.clone();
            let i = idx % raised.len();
            raised[i] += bump;
            if degrees_positive(&degrees, d) {
                prop_assert!(degrees_positive(&raised, d));
            }
        }

        #[test]
        fn calabi_yau_threefolds_have_zero_dimension(
            n in 4u32..9,
            split in proptest::collection::vec(1u32..4, 1..6),
            d in 1u32..6,
            g in 0i64..=1,
        ) {
            // Rebuild the degrees so they sum to n + 1 with exactly n - 3 factors.
            let m = (n - 3) as usize;
            let mut degrees = vec![1u32; m];
            let mut rest = n + 1 - m as u32;
            for (i, s) in split.iter().cycle().enumerate() {
                if rest == 0 { break; }
                let add = (*s).min(rest);
                degrees[i % m] += add;
                rest -= add;
            }
            let t = CITarget::new(n, degrees, d, vec![]).unwrap();
            prop_assert!(is_calabi_yau(&t));
            prop_assert_eq!(t.c1_dot_curve(), 0);
            let dim = expected_dimension(&DimensionQuery {
                genus: g, marks: 0, c1_dot_a: t.c1_dot_curve(),
                half_dim: t.ci_dim() as i64, bundle_c1_dot_a: None,
            }).unwrap();
            prop_assert_eq!(dim, 0);
        }
    }
}
