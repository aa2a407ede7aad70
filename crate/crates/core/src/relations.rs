//! Identities connecting genus-zero invariants, reduced and standard
//! genus-one invariants, and instanton numbers, plus the quintic table audit
//! built from them.
//!
//! Multiple-cover expansions for a Calabi-Yau threefold:
//!
//! ```text
//! N_0(d) = Σ_{k|d} n_0(d/k) / k³
//! N_1(d) = (1/12) Σ_{k|d} n_0(d/k) / k  +  Σ_{k|d} n_1(d/k) / k
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use thiserror::Error;

use crate::model::{format_rational, int, parse_rational, Rational};

/// Shipped copy of the quintic table: reduced terms, `N_1`, `n_1` for
/// `d = 1..=4`.
pub const TABLE1_DATA: &str = include_str!("../data/table1.tsv");
pub const TABLE1_HEADER: &str = "# source: paper Table 1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("the genus-one correction is only known for real dimension 4 or 6, not {0}")]
    UnsupportedDimension(i64),
    #[error("table degrees must be exactly 1..={expected_max}; missing degree {missing}")]
    NonContiguous { expected_max: u32, missing: u32 },
    #[error("degree {0} is missing from an input table")]
    MissingDegree(u32),
    #[error("degree {degree}: the two correction routes disagree ({via_reduced} vs {via_expansion})")]
    Unreconcilable {
        degree: u32,
        via_reduced: String,
        via_expansion: String,
    },
    #[error("table data line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A genus-`g` instanton table `d → n_g(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPSTable {
    pub genus: u8,
    pub entries: BTreeMap<u32, Rational>,
}

pub type DegreeTable = BTreeMap<u32, Rational>;

fn check_contiguous(table: &DegreeTable) -> Result<u32, RelationError> {
    let max = table.keys().next_back().copied().unwrap_or(0);
    for d in 1..=max {
        if !table.contains_key(&d) {
            return Err(RelationError::NonContiguous {
                expected_max: max,
                missing: d,
            });
        }
    }
    if table.contains_key(&0) {
        return Err(RelationError::NonContiguous {
            expected_max: max,
            missing: 0,
        });
    }
    Ok(max)
}

fn divisors(d: u32) -> impl Iterator<Item = u32> {
    (1..=d).filter(move |k| d % k == 0)
}

fn lookup(table: &DegreeTable, d: u32) -> Result<&Rational, RelationError> {
    table.get(&d).ok_or(RelationError::MissingDegree(d))
}

fn pow_u32(k: u32, e: u32) -> Rational {
    int((k as i64).pow(e))
}

/// `N_1(d) = N_0(d)/12 + <reduced term>` for the quintic.
pub fn genus1_from_reduced(n0: &Rational, reduced_term: &Rational) -> Rational {
    n0 / int(12) + reduced_term
}

/// Standard minus reduced genus-one invariant for a primitive geometric
/// class: zero in real dimension 4, `(2 − <c_1, A>)/24 · GW_0` in real
/// dimension 6.
pub fn gw_difference(dim_r: i64, c1_dot_a: i64, gw0: &Rational) -> Result<Rational, RelationError> {
    match dim_r {
        4 => Ok(Rational::zero()),
        6 => Ok(Rational::new(BigInt::from(2 - c1_dot_a), BigInt::from(24)) * gw0),
        other => Err(RelationError::UnsupportedDimension(other)),
    }
}

/// Forward genus-zero expansion `N_0(d) = Σ_{k|d} n_0(d/k)/k³`.
pub fn gw0_from_bps0(bps0: &BPSTable) -> Result<DegreeTable, RelationError> {
    let max = check_contiguous(&bps0.entries)?;
    let mut out = DegreeTable::new();
    for d in 1..=max {
        let mut total = Rational::zero();
        for k in divisors(d) {
            total += lookup(&bps0.entries, d / k)? / pow_u32(k, 3);
        }
        out.insert(d, total);
    }
    Ok(out)
}

/// Inverts the genus-zero expansion degree by degree.
pub fn bps0_from_gw0(n0_table: &DegreeTable) -> Result<BPSTable, RelationError> {
    let max = check_contiguous(n0_table)?;
    let mut entries = BTreeMap::new();
    for d in 1..=max {
        let mut value = lookup(n0_table, d)?.clone();
        for k in divisors(d).skip(1) {
            value -= lookup(&entries, d / k)? / pow_u32(k, 3);
        }
        entries.insert(d, value);
    }
    Ok(BPSTable { genus: 0, entries })
}

/// Forward genus-one expansion given genus-zero and genus-one instanton
/// numbers.
pub fn gw1_from_bps(bps0: &BPSTable, bps1: &BPSTable) -> Result<DegreeTable, RelationError> {
    let max = check_contiguous(&bps1.entries)?;
    let mut out = DegreeTable::new();
    for d in 1..=max {
        out.insert(d, genus1_expansion(d, &bps0.entries, &bps1.entries)?);
    }
    Ok(out)
}

/// `(1/12) Σ_{k|d} n_0(d/k)/k + Σ_{k|d} n_1(d/k)/k` at a single degree.
pub fn genus1_expansion(d: u32, n0: &DegreeTable, n1: &DegreeTable) -> Result<Rational, RelationError> {
    let mut total = Rational::zero();
    for k in divisors(d) {
        let k_rat = int(k as i64);
        total += lookup(n0, d / k)? / (int(12) * &k_rat);
        total += lookup(n1, d / k)? / k_rat;
    }
    Ok(total)
}

/// Inverts the genus-one expansion with `n_0` held fixed.
pub fn bps1_from_gw1(n1_table: &DegreeTable, bps0: &BPSTable) -> Result<BPSTable, RelationError> {
    let max = check_contiguous(n1_table)?;
    let mut entries = BTreeMap::new();
    for d in 1..=max {
        let mut value = lookup(n1_table, d)?.clone();
        for k in divisors(d) {
            value -= lookup(&bps0.entries, d / k)? / int(12 * k as i64);
        }
        for k in divisors(d).skip(1) {
            value -= lookup(&entries, d / k)? / int(k as i64);
        }
        entries.insert(d, value);
    }
    Ok(BPSTable { genus: 1, entries })
}

/// The three rows of the shipped quintic table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PublishedTable {
    pub reduced: DegreeTable,
    pub genus1_gw: DegreeTable,
    pub genus1_bps: DegreeTable,
}

impl PublishedTable {
    /// Parses the tab-separated table format: header line, then
    /// `d <tab> reduced <tab> N1 <tab> n1` rows.
    pub fn parse(text: &str) -> Result<Self, RelationError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim_end() == TABLE1_HEADER => {}
            _ => {
                return Err(RelationError::Parse {
                    line: 1,
                    reason: format!("expected header {TABLE1_HEADER:?}"),
                })
            }
        }
        let mut table = PublishedTable::default();
        for (idx, line) in lines {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| RelationError::Parse {
                line: idx + 1,
                reason,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(err(format!("expected 4 tab-separated fields, found {}", fields.len())));
            }
            let d: u32 = fields[0]
                .trim()
                .parse()
                .map_err(|_| err(format!("bad degree {:?}", fields[0])))?;
            let parse = |s: &str| parse_rational(s).map_err(|e| err(e.to_string()));
            table.reduced.insert(d, parse(fields[1])?);
            table.genus1_gw.insert(d, parse(fields[2])?);
            table.genus1_bps.insert(d, parse(fields[3])?);
        }
        check_contiguous(&table.reduced)?;
        Ok(table)
    }

    pub fn shipped() -> Self {
        Self::parse(TABLE1_DATA).expect("shipped table parses")
    }

    pub fn max_degree(&self) -> u32 {
        self.reduced.keys().next_back().copied().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TABLE1_HEADER}\n");
        for (d, reduced) in &self.reduced {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                d,
                fraction(reduced),
                fraction(&self.genus1_gw[d]),
                fraction(&self.genus1_bps[d]),
            ));
        }
        out
    }
}

// The table format always writes `num/den`.
fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticTableRow {
    pub degree: u32,
    pub reduced_term: Rational,
    /// `N_1(d)` as published.
    pub genus1_gw: Rational,
    /// `n_1(d)` as published.
    pub genus1_bps: Rational,
    /// `N_0(d)` from the localization engine.
    pub genus0_gw: Rational,
    /// `N_0/12 + reduced term`.
    pub genus1_via_reduced: Rational,
    /// Genus-one expansion with published `n_1` and engine `n_0`.
    pub genus1_via_expansion: Rational,
    pub consistent: bool,
    pub corrected_genus1_gw: Option<Rational>,
}

impl fmt::Display for QuinticTableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} N0={} reduced={} N1={} n1={} {}",
            self.degree,
            format_rational(&self.genus0_gw),
            format_rational(&self.reduced_term),
            format_rational(&self.genus1_gw),
            format_rational(&self.genus1_bps),
            if self.consistent { "consistent" } else { "INCONSISTENT" },
        )?;
        if let Some(c) = &self.corrected_genus1_gw {
            write!(f, " corrected N1={}", format_rational(c))?;
        }
        Ok(())
    }
}

/// Audits the quintic table degree by degree against engine-computed
/// `N_0(d)`.
///
/// A row is consistent when the published `N_1(d)` equals both
/// `N_0(d)/12 + reduced(d)` and the genus-one expansion with the published
/// `n_1`. Otherwise the two routes must agree with each other, and their
/// common value is reported as the corrected `N_1(d)`.
pub fn reproduce_table1<E, F>(
    max_degree: u32,
    published: &PublishedTable,
    mut genus0: F,
) -> Result<Vec<QuinticTableRow>, E>
where
    F: FnMut(u32) -> Result<Rational, E>,
    E: From<RelationError>,
{
    let mut rows = Vec::new();
    let mut n0_gw = DegreeTable::new();
    for d in 1..=max_degree {
        let get = |t: &DegreeTable| t.get(&d).cloned().ok_or(RelationError::MissingDegree(d));
        let reduced = get(&published.reduced)?;
        let genus1_gw = get(&published.genus1_gw)?;
        let genus1_bps = get(&published.genus1_bps)?;
        let genus0_gw = genus0(d)?;
        n0_gw.insert(d, genus0_gw.clone());

        let bps0 = bps0_from_gw0(&n0_gw)?;
        let via_reduced = genus1_from_reduced(&genus0_gw, &reduced);
        let via_expansion = genus1_expansion(d, &bps0.entries, &published.genus1_bps)?;

        let consistent = via_reduced == genus1_gw && via_expansion == genus1_gw;
        let corrected = if consistent {
            None
        } else if via_reduced == via_expansion {
            Some(via_reduced.clone())
        } else {
            return Err(RelationError::Unreconcilable {
                degree: d,
                via_reduced: format_rational(&via_reduced),
                via_expansion: format_rational(&via_expansion),
            }
            .into());
        };
        rows.push(QuinticTableRow {
            degree: d,
            reduced_term: reduced,
            genus1_gw,
            genus1_bps,
            genus0_gw,
            genus1_via_reduced: via_reduced,
            genus1_via_expansion: via_expansion,
            consistent,
            corrected_genus1_gw: corrected,
        });
    }
    Ok(rows)
}

/// Kontsevich's recursion for rational plane curves through `3d − 1`
/// general points.
pub fn wdvv_p2(max_degree: u32) -> DegreeTable {
    let mut counts: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    for d in 2..=max_degree as i64 {
        let mut total = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let c = |k: i64| -> BigInt {
                if k < 0 || k > 3 * d - 4 {
                    BigInt::zero()
                } else {
                    binomial(BigInt::from(3 * d - 4), BigInt::from(k))
                }
            };
            let bracket = BigInt::from(d2) * c(3 * d1 - 2) - BigInt::from(d1) * c(3 * d1 - 1);
            total += &counts[d1 as usize] * &counts[d2 as usize] * BigInt::from(d1 * d1 * d2) * bracket;
        }
        counts.push(total);
    }
    (1..=max_degree)
        .map(|d| (d, Rational::from_integer(counts[d as usize].clone())))
        .collect()
}
