//! Torus-localization evaluation of genus-zero invariants of complete
//! intersections in `P^n`.
//!
//! The integral of `ψ · e(π_* ev^* L)` over `M_{0,k}(P^n, d)` is a sum over
//! fixed-locus graphs. Weights are specialized to concrete positive
//! rationals; because a well-posed total has degree zero in the weights, the
//! sum is recomputed at several seeds and must come out identical.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::fixed_graphs::{enumerate_graphs, enumerate_skeletons, FixedGraph, Skeleton};
use crate::model::{int, positivity_check, CITarget, Rational, WeightVector};

/// Sampled weight numerators lie in `1..=WEIGHT_NUMERATOR_BOUND`.
pub const WEIGHT_NUMERATOR_BOUND: i64 = 4096;
/// Sampled weight denominators lie in `1..=WEIGHT_DENOMINATOR_BOUND`.
pub const WEIGHT_DENOMINATOR_BOUND: i64 = 8;
/// Resampling attempts per seed before giving up.
pub const MAX_ATTEMPTS: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("weights are degenerate for this graph: {0}")]
    DegenerateWeights(&'static str),
    #[error("totals differ across weight seeds: {}", format_totals(.0))]
    WeightIndependenceFailure(Vec<(u64, Rational)>),
    #[error("insertions have codimension {insertions}, but the cut-down moduli space has dimension {expected}")]
    DimensionMismatch { expected: i64, insertions: i64 },
    #[error("bundle is not positive on curves of degree <= {0}")]
    NotPositive(u32),
    #[error("need at least two weight seeds, got {0}")]
    TooFewSeeds(usize),
    #[error("seed {0}: no admissible weights after {MAX_ATTEMPTS} attempts")]
    AttemptsExhausted(u64),
    #[error("graph has {graph} marks but the target has {target} insertions")]
    MarkMismatch { graph: usize, target: usize },
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

fn format_totals(totals: &[(u64, Rational)]) -> String {
    totals
        .iter()
        .map(|(s, v)| format!("seed {} -> {}", s, crate::model::format_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Deterministic weights for `P^n` from `seed`; attempt 0 of the seed's
/// lineage.
pub fn sample_weights(seed: u64, n: u32) -> WeightVector {
    sample_weights_attempt(seed, 0, n)
}

/// Weights for the `attempt`-th retry within the lineage of `seed`.
pub fn sample_weights_attempt(seed: u64, attempt: u64, n: u32) -> WeightVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    let mut weights: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    while weights.len() <= n as usize {
        let w = Rational::new(
            BigInt::from(rng.gen_range(1..=WEIGHT_NUMERATOR_BOUND)),
            BigInt::from(rng.gen_range(1..=WEIGHT_DENOMINATOR_BOUND)),
        );
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    WeightVector::new(weights).expect("sampled weights are positive and distinct")
}

/// Fraction-free running product; reduced once at the end.
struct Product {
    num: BigInt,
    den: BigInt,
}

impl Product {
    fn new() -> Self {
        Product {
            num: BigInt::one(),
            den: BigInt::one(),
        }
    }

    fn mul(&mut self, r: &Rational) {
        self.num *= r.numer();
        self.den *= r.denom();
    }

    fn div(&mut self, r: &Rational, what: &'static str) -> Result<(), LocalizationError> {
        if r.is_zero() {
            return Err(LocalizationError::DegenerateWeights(what));
        }
        self.num *= r.denom();
        self.den *= r.numer();
        Ok(())
    }

    fn mul_pow(&mut self, r: &Rational, exp: i64, what: &'static str) -> Result<(), LocalizationError> {
        if exp >= 0 {
            for _ in 0..exp {
                self.mul(r);
            }
        } else {
            for _ in 0..-exp {
                self.div(r, what)?;
            }
        }
        Ok(())
    }

    fn finish(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

/// Per-weight-vector table of the factors that only depend on an edge's
/// endpoint labels and degree, plus the tangent weights at each fixed point.
pub struct FactorTable {
    weights: WeightVector,
    degrees: Vec<u32>,
    /// `Π_{k≠i} (λ_i − λ_k)`
    tangent: Vec<Rational>,
    /// `(i, j, d_e)` with `i < j` → edge normal factor times section factor.
    edges: HashMap<(u32, u32, u32), Rational>,
}

impl FactorTable {
    /// Precomputes all edge factors up to degree `max_degree`.
    pub fn new(weights: &WeightVector, degrees: &[u32], max_degree: u32) -> Result<Self, LocalizationError> {
        let lam = weights.as_slice();
        let np1 = lam.len();
        let tangent = (0..np1)
            .map(|i| {
                (0..np1)
                    .filter(|&k| k != i)
                    .map(|k| &lam[i] - &lam[k])
                    .product()
            })
            .collect();
        let mut edges = HashMap::new();
        for i in 0..np1 {
            for j in i + 1..np1 {
                for de in 1..=max_degree {
                    let value = edge_factor(lam, i, j, de, degrees)?;
                    edges.insert((i as u32, j as u32, de), value);
                }
            }
        }
        Ok(FactorTable {
            weights: weights.clone(),
            degrees: degrees.to_vec(),
            tangent,
            edges,
        })
    }

    fn edge(&self, i: u32, j: u32, de: u32) -> Result<&Rational, LocalizationError> {
        let key = if i < j { (i, j, de) } else { (j, i, de) };
        self.edges
            .get(&key)
            .ok_or(LocalizationError::DegenerateWeights("edge outside factor table"))
    }
}

// E_e times the bundle sections over the edge:
//   (−1)^d d^{2d} / ((d!)² (λi−λj)^{2d}) · Π_{k≠i,j} Π_c d / (cλi + (d−c)λj − dλk)
//   · Π_s Π_{c=0}^{a_s d} (cλi + (a_s d − c)λj) / d
// Symmetric in (i, j).
fn edge_factor(
    lam: &[Rational],
    i: usize,
    j: usize,
    de: u32,
    degrees: &[u32],
) -> Result<Rational, LocalizationError> {
    let d = int(de as i64);
    let mut p = Product::new();
    let diff = &lam[i] - &lam[j];
    let factorial: BigInt = (1..=de).map(BigInt::from).product();
    let mut scale = d.clone();
    for _ in 1..2 * de {
        scale *= &d;
    }
    p.mul(&scale);
    p.div(&Rational::from_integer(&factorial * &factorial), "factorial")?;
    p.mul_pow(&diff, -2 * de as i64, "coincident weights")?;
    if de % 2 == 1 {
        p.mul(&int(-1));
    }
    for k in (0..lam.len()).filter(|&k| k != i && k != j) {
        for c in 0..=de {
            let c = int(c as i64);
            let denom = &c * &lam[i] + (&d - &c) * &lam[j] - &d * &lam[k];
            p.mul(&d);
            p.div(&denom, "edge normal weight vanishes")?;
        }
    }
    for &a in degrees {
        let top = int((a * de) as i64);
        for c in 0..=a * de {
            let c = int(c as i64);
            let section = (&c * &lam[i] + (&top - &c) * &lam[j]) / &d;
            p.mul(&section);
        }
    }
    Ok(p.finish())
}

/// Exact contribution of one fixed graph.
pub fn graph_contribution(
    g: &FixedGraph,
    w: &WeightVector,
    target: &CITarget,
) -> Result<Rational, LocalizationError> {
    let table = FactorTable::new(w, target.degrees(), target.curve_degree().max(g.total_degree()))?;
    contribution_with_table(g, &table, target)
}

// Everything in a graph's contribution that does not depend on where the
// marks sit or on the automorphism order. Also returns, per vertex, the
// edge valence and the flag sum `Σ_F ω_F^{-1}`.
fn unmarked_part(
    g: &FixedGraph,
    table: &FactorTable,
) -> Result<(Product, Vec<(i64, Rational)>), LocalizationError> {
    let lam = table.weights.as_slice();
    let mut p = Product::new();

    let mut edge_degree_product = BigInt::one();
    for e in &g.edges {
        let (li, lj) = (g.vertices[e.a].label, g.vertices[e.b].label);
        p.mul(table.edge(li, lj, e.degree)?);
        edge_degree_product *= e.degree;
    }
    p.div(
        &Rational::from_integer(edge_degree_product),
        "edge degree",
    )?;

    let mut incident: Vec<Vec<Rational>> = vec![Vec::new(); g.vertices.len()];
    for e in &g.edges {
        let (li, lj) = (g.vertices[e.a].label as usize, g.vertices[e.b].label as usize);
        let d = int(e.degree as i64);
        // flag weights ω_F = (λ_self − λ_other) / d_e
        incident[e.a].push((&lam[li] - &lam[lj]) / &d);
        incident[e.b].push((&lam[lj] - &lam[li]) / &d);
    }

    let mut vertex_data = Vec::with_capacity(g.vertices.len());
    for (vertex, flags) in g.vertices.iter().zip(&incident) {
        let label = vertex.label as usize;
        let edge_valence = flags.len() as i64;
        for &a in table.degrees.iter() {
            let fiber = int(a as i64) * &lam[label];
            p.mul_pow(&fiber, 1 - edge_valence, "bundle fiber weight vanishes")?;
        }
        p.mul_pow(&table.tangent[label], edge_valence - 1, "tangent weight vanishes")?;
        for w in flags {
            p.div(w, "flag weight vanishes")?;
        }
        let inverse_sum: Rational = flags.iter().map(|w| w.recip()).sum();
        vertex_data.push((edge_valence, inverse_sum));
    }
    Ok((p, vertex_data))
}

/// [`graph_contribution`] against a precomputed factor table.
pub fn contribution_with_table(
    g: &FixedGraph,
    table: &FactorTable,
    target: &CITarget,
) -> Result<Rational, LocalizationError> {
    if g.mark_count() != target.marks() {
        return Err(LocalizationError::MarkMismatch {
            graph: g.mark_count(),
            target: target.marks(),
        });
    }
    let lam = table.weights.as_slice();
    let (mut p, vertex_data) = unmarked_part(g, table)?;
    p.div(&int(g.aut_order as i64), "automorphism order")?;
    for (vertex, (edge_valence, inverse_sum)) in g.vertices.iter().zip(&vertex_data) {
        let valence = edge_valence + vertex.marks.len() as i64;
        p.mul_pow(inverse_sum, valence - 3, "flag weights cancel at a vertex")?;
        for &mark in &vertex.marks {
            let power = target.insertions()[mark as usize - 1].power;
            p.mul_pow(&lam[vertex.label as usize], power as i64, "insertion weight")?;
        }
    }
    Ok(p.finish())
}

/// Sum of [`contribution_with_table`] over every marking of `skeleton`.
///
/// Summing `C(f)/|Stab(f)|` over orbit representatives `f` equals
/// `Σ_f C(f)/|Aut|` over all mark assignments, and a mark at vertex `v`
/// only contributes the factor `S_v λ_{i(v)}^p` with `S_v = Σ_F ω_F^{-1}`,
/// so the sum factors into one vertex sum per mark.
pub fn skeleton_contribution(
    skeleton: &Skeleton,
    table: &FactorTable,
    target: &CITarget,
) -> Result<Rational, LocalizationError> {
    let g = &skeleton.graph;
    let lam = table.weights.as_slice();
    let (mut p, vertex_data) = unmarked_part(g, table)?;
    p.div(&int(skeleton.automorphisms.len() as i64), "automorphism order")?;
    for (edge_valence, inverse_sum) in &vertex_data {
        // with S_v = 0 only exponents >= 0 are meaningful; 0^0 = 1
        p.mul_pow(inverse_sum, edge_valence - 3, "flag weights cancel at a vertex")?;
    }
    for ins in target.insertions() {
        let per_mark: Rational = g
            .vertices
            .iter()
            .zip(&vertex_data)
            .map(|(vertex, (_, inverse_sum))| {
                inverse_sum * num_traits::pow(lam[vertex.label as usize].clone(), ins.power as usize)
            })
            .sum();
        p.mul(&per_mark);
    }
    Ok(p.finish())
}

/// The `d = 1` specialization in closed form:
/// `Σ_{i<j} Π_s Π_{c=0}^{a_s} (cλ_i + (a_s − c)λ_j) / Π_{k≠i,j} (λ_i − λ_k)(λ_j − λ_k)`.
pub fn lines_closed_form(
    n: u32,
    degrees: &[u32],
    w: &WeightVector,
) -> Result<Rational, LocalizationError> {
    let lam = w.as_slice();
    assert_eq!(lam.len(), n as usize + 1, "weight vector does not match P^{n}");
    let mut total = Rational::zero();
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            let mut p = Product::new();
            for &a in degrees {
                for c in 0..=a {
                    let (c, rest) = (int(c as i64), int((a - c) as i64));
                    p.mul(&(c * &lam[i] + rest * &lam[j]));
                }
            }
            for k in (0..lam.len()).filter(|&k| k != i && k != j) {
                p.div(&(&lam[i] - &lam[k]), "coincident weights")?;
                p.div(&(&lam[j] - &lam[k]), "coincident weights")?;
            }
            total += p.finish();
        }
    }
    Ok(total)
}

/// Exact invariant with the data needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineResult {
    pub value: Rational,
    pub graph_count: u64,
    pub weight_seeds: Vec<u64>,
    pub target: CITarget,
}

/// Checks that the insertions cut the moduli space down to a point count.
pub fn check_dimension(target: &CITarget) -> Result<(), LocalizationError> {
    let expected = target.moduli_dim() - target.bundle_rank();
    let insertions = target.insertion_codim();
    if expected != insertions {
        return Err(LocalizationError::DimensionMismatch {
            expected,
            insertions,
        });
    }
    Ok(())
}

/// Runs the graph sum with a worker pool of `jobs` threads (`0` means one
/// per core).
#[derive(Debug, Clone, Copy, Default)]
pub struct Engine {
    pub jobs: usize,
}

impl Engine {
    pub fn new(jobs: usize) -> Self {
        Engine { jobs }
    }

    pub fn sum_invariant(
        &self,
        target: &CITarget,
        seeds: &[u64],
    ) -> Result<EngineResult, LocalizationError> {
        if seeds.len() < 2 {
            return Err(LocalizationError::TooFewSeeds(seeds.len()));
        }
        if !positivity_check(target) {
            return Err(LocalizationError::NotPositive(target.curve_degree()));
        }
        check_dimension(target)?;

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| LocalizationError::Pool(e.to_string()))?;
        let n = target.ambient_dim();
        let d = target.curve_degree();
        let k = target.marks();
        let skeletons = enumerate_skeletons(n, d);
        let graph_count = skeletons.iter().map(|s| marking_count(s, k)).sum();

        let mut totals: Vec<(u64, Rational)> = Vec::with_capacity(seeds.len());
        let mut used: Vec<WeightVector> = Vec::new();
        for &seed in seeds {
            let mut attempt = 0;
            let (weights, total) = loop {
                if attempt == MAX_ATTEMPTS {
                    return Err(LocalizationError::AttemptsExhausted(seed));
                }
                let weights = sample_weights_attempt(seed, attempt, n);
                attempt += 1;
                if used.contains(&weights) {
                    continue;
                }
                match pool.install(|| sum_at(&skeletons, &weights, target)) {
                    Ok(total) => break (weights, total),
                    Err(LocalizationError::DegenerateWeights(_)) => continue,
                    Err(e) => return Err(e),
                }
            };
            used.push(weights);
            totals.push((seed, total));
        }
        if totals.iter().any(|(_, t)| *t != totals[0].1) {
            return Err(LocalizationError::WeightIndependenceFailure(totals));
        }
        Ok(EngineResult {
            value: totals.swap_remove(0).1,
            graph_count,
            weight_seeds: seeds.to_vec(),
            target: target.clone(),
        })
    }
}

/// Convenience wrapper around [`Engine::sum_invariant`].
pub fn sum_invariant(
    target: &CITarget,
    seeds: &[u64],
    jobs: usize,
) -> Result<EngineResult, LocalizationError> {
    Engine::new(jobs).sum_invariant(target, seeds)
}

/// Number of marked graphs over `skeleton`, by Burnside's lemma on the
/// automorphism action on mark assignments.
pub fn marking_count(skeleton: &Skeleton, k: usize) -> u64 {
    let total: u64 = skeleton
        .automorphisms
        .iter()
        .map(|perm| {
            let fixed = perm.iter().enumerate().filter(|&(v, &u)| v == u).count() as u64;
            fixed.pow(k as u32)
        })
        .sum();
    total / skeleton.automorphisms.len() as u64
}

// Parallel map-reduce over skeletons at one weight vector.
fn sum_at(
    skeletons: &[Skeleton],
    weights: &WeightVector,
    target: &CITarget,
) -> Result<Rational, LocalizationError> {
    let table = FactorTable::new(weights, target.degrees(), target.curve_degree())?;
    skeletons
        .par_iter()
        .map(|s| skeleton_contribution(s, &table, target))
        .try_reduce(Rational::zero, |a, b| Ok(a + b))
}

/// The graph sum at one fixed weight vector, without dimension check or
/// multi-seed certification.
pub fn sum_at_weights(target: &CITarget, weights: &WeightVector) -> Result<Rational, LocalizationError> {
    let skeletons = enumerate_skeletons(target.ambient_dim(), target.curve_degree());
    sum_at(&skeletons, weights, target)
}

/// Sums [`contribution_with_table`] over every marked graph one at a time,
/// without the orbit factorization used by [`Engine`]. No dimension check:
/// the total is only weight-independent when the query is well posed.
pub fn explicit_sum(
    target: &CITarget,
    weights: &WeightVector,
) -> Result<(Rational, u64), LocalizationError> {
    let table = FactorTable::new(weights, target.degrees(), target.curve_degree())?;
    let mut total = Rational::zero();
    let mut count = 0;
    for g in enumerate_graphs(target.ambient_dim(), target.curve_degree(), target.marks()) {
        total += contribution_with_table(&g, &table, target)?;
        count += 1;
    }
    Ok((total, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_graphs::{Edge, Vertex};
    use crate::model::Insertion;
    use num_traits::Signed;

    fn single_edge(i: u32, j: u32) -> FixedGraph {
        FixedGraph {
            vertices: vec![
                Vertex { label: i, marks: vec![] },
                Vertex { label: j, marks: vec![] },
            ],
            edges: vec![Edge { a: 0, b: 1, degree: 1 }],
            aut_order: 1,
        }
    }

    #[test]
    fn weights_are_deterministic() {
        assert_eq!(sample_weights(7, 4), sample_weights(7, 4));
        assert_ne!(sample_weights(7, 4), sample_weights(8, 4));
        assert_ne!(sample_weights_attempt(7, 0, 4), sample_weights_attempt(7, 1, 4));
        let w = sample_weights(11, 6);
        assert_eq!(w.as_slice().len(), 7);
        for x in w.as_slice() {
            assert!(x.is_positive());
            assert!(*x.numer() <= BigInt::from(WEIGHT_NUMERATOR_BOUND));
            assert!(*x.denom() <= BigInt::from(WEIGHT_DENOMINATOR_BOUND));
        }
    }

    #[test]
    fn quintic_lines_closed_form() {
        for seed in [1, 2] {
            let w = sample_weights(seed, 4);
            assert_eq!(lines_closed_form(4, &[5], &w).unwrap(), int(2875));
        }
    }

    #[test]
    fn single_edge_is_symmetric() {
        let t = CITarget::quintic(1).unwrap();
        let w = sample_weights(3, 4);
        assert_eq!(
            graph_contribution(&single_edge(1, 3), &w, &t).unwrap(),
            graph_contribution(&single_edge(3, 1), &w, &t).unwrap()
        );
    }

    #[test]
    fn line_contributions_match_closed_form_summands() {
        let t = CITarget::quintic(1).unwrap();
        let w = WeightVector::from_integers(&[1, 2, 3, 5, 8]).unwrap();
        let total: Rational = enumerate_graphs(4, 1, 0)
            .iter()
            .map(|g| graph_contribution(g, &w, &t).unwrap())
            .sum();
        assert_eq!(total, lines_closed_form(4, &[5], &w).unwrap());
    }

    #[test]
    fn p1_two_points() {
        let t = CITarget::new(1, vec![], 1, vec![Insertion { power: 1 }; 2]).unwrap();
        assert_eq!(sum_invariant(&t, &[1, 2, 3], 1).unwrap().value, int(1));
    }

    #[test]
    fn dimension_mismatch_is_refused() {
        let t = CITarget::new(4, vec![5], 1, vec![Insertion { power: 2 }]).unwrap();
        assert_eq!(
            sum_invariant(&t, &[1, 2], 1),
            Err(LocalizationError::DimensionMismatch {
                expected: 1,
                insertions: 2
            })
        );
    }

    #[test]
    fn divisor_insertion_multiplies_by_degree() {
        let t = CITarget::new(4, vec![5], 1, vec![Insertion { power: 1 }]).unwrap();
        assert_eq!(sum_invariant(&t, &[1, 2], 1).unwrap().value, int(2875));
    }

    #[test]
    fn needs_two_seeds() {
        let t = CITarget::quintic(1).unwrap();
        assert_eq!(sum_invariant(&t, &[1], 1), Err(LocalizationError::TooFewSeeds(1)));
    }

    #[test]
    fn degenerate_weights_are_reported() {
        // d = 2 edge 0-1 with k = 2: λ_0 + λ_1 − 2λ_2 = 0
        let t = CITarget::quintic(2).unwrap();
        let w = WeightVector::from_integers(&[1, 3, 2, 7, 11]).unwrap();
        let g = FixedGraph {
            vertices: vec![
                Vertex { label: 0, marks: vec![] },
                Vertex { label: 1, marks: vec![] },
            ],
            edges: vec![Edge { a: 0, b: 1, degree: 2 }],
            aut_order: 1,
        };
        assert!(matches!(
            graph_contribution(&g, &w, &t),
            Err(LocalizationError::DegenerateWeights(_))
        ));
        // two-edge vertex whose flag weights cancel: 2λ_0 = λ_1 + λ_2
        let w = WeightVector::from_integers(&[2, 1, 3, 7, 11]).unwrap();
        let t = CITarget::new(4, vec![5], 2, vec![]).unwrap();
        let path = FixedGraph {
            vertices: vec![
                Vertex { label: 1, marks: vec![] },
                Vertex { label: 0, marks: vec![] },
                Vertex { label: 2, marks: vec![] },
            ],
            edges: vec![Edge { a: 0, b: 1, degree: 1 }, Edge { a: 1, b: 2, degree: 1 }],
            aut_order: 1,
        };
        // the full table already trips on the (1, 2) conic edge through λ_0
        assert!(graph_contribution(&path, &w, &t).is_err());
        let lines_only = FactorTable::new(&w, t.degrees(), 1).unwrap();
        assert_eq!(
            contribution_with_table(&path, &lines_only, &t),
            Err(LocalizationError::DegenerateWeights("flag weights cancel at a vertex"))
        );
    }

    #[test]
    fn factorized_sum_matches_explicit_sum() {
        let targets = [
            CITarget::new(2, vec![], 2, vec![Insertion { power: 2 }; 5]).unwrap(),
            CITarget::new(3, vec![], 1, vec![Insertion { power: 2 }, Insertion { power: 3 }]).unwrap(),
            CITarget::new(3, vec![2], 2, vec![Insertion { power: 2 }; 3]).unwrap(),
            CITarget::new(1, vec![], 3, vec![Insertion { power: 1 }; 4]).unwrap(),
            CITarget::quintic(3).unwrap(),
        ];
        for t in &targets {
            let w = sample_weights(5, t.ambient_dim());
            let (explicit, count) = explicit_sum(t, &w).unwrap();
            let skeletons = enumerate_skeletons(t.ambient_dim(), t.curve_degree());
            let table = FactorTable::new(&w, t.degrees(), t.curve_degree()).unwrap();
            let factorized: Rational = skeletons
                .iter()
                .map(|s| skeleton_contribution(s, &table, t).unwrap())
                .sum();
            assert_eq!(explicit, factorized, "{t}");
            let burnside: u64 = skeletons.iter().map(|s| marking_count(s, t.marks())).sum();
            assert_eq!(count, burnside, "{t}");
        }
    }

    #[test]
    fn p1_degree_three_through_four_points() {
        // Hurwitz-type count: degree-3 covers of P^1 with 4 point insertions
        // do not cut down to zero dimension
        let t = CITarget::new(1, vec![], 3, vec![Insertion { power: 1 }; 4]).unwrap();
        assert!(matches!(
            sum_invariant(&t, &[1, 2], 1),
            Err(LocalizationError::DimensionMismatch { .. })
        ));
    }
}
