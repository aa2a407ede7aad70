//! The `gwloc` command line.
//!
//! Exit codes: 0 success, 1 bad flags or missing inputs, 2 dimension
//! mismatch, 3 engine failure (including weight-independence failure).

pub mod cache;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::fixed_graphs::{enumerate_graphs, write_dump};
use crate::localization::{Engine, EngineResult, LocalizationError};
use crate::model::{
    expected_dimension, format_rational, parse_rational, CITarget, DimensionQuery, Insertion,
    ModelError, Rational,
};
use crate::relations::{
    bps0_from_gw0, bps1_from_gw1, reproduce_table1, wdvv_p2, BPSTable, DegreeTable,
    PublishedTable, QuinticTableRow, RelationError,
};
use cache::{cache_key, resolve_dir, Cache, CacheRecord, Fraction};

pub const ENGINE_VERSION: &str = concat!("gwloc-", env!("CARGO_PKG_VERSION"));
pub const DEFAULT_SEEDS: [u64; 3] = [1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "gwloc", version, about = "Exact Gromov-Witten invariants by torus localization")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Localization worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// First weight seed; seeds `s, s+1, s+2` are used (default 1, 2, 3).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus-zero invariant of a complete intersection.
    Genus0 {
        #[arg(long)]
        ambient_dim: u32,
        /// Comma-separated bundle degrees; omit for projective space.
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
        #[arg(long)]
        curve_degree: u32,
        /// Comma-separated hyperplane powers, one per marked point.
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<u32>,
    },
    /// Audit the quintic genus-one table against computed genus-zero values.
    Table1 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        max_degree: u32,
        /// Alternative table file in the shipped format.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Instanton numbers from a table of invariants.
    Bps {
        #[arg(long)]
        genus: u8,
        #[arg(long)]
        max_degree: u32,
        /// Invariants of the requested genus (`d num/den` per line).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Genus-zero invariants, needed for genus 1.
        #[arg(long)]
        genus0_input: Option<PathBuf>,
    },
    /// Expected real dimension of a moduli space of stable maps.
    Dims {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value_t = 0)]
        marks: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1a: i64,
        #[arg(long)]
        half_dim: i64,
        #[arg(long, allow_hyphen_values = true)]
        bundle_c1a: Option<i64>,
    },
    /// Rational plane-curve counts from Kontsevich's recursion.
    Wdvv {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
    },
    /// Dump the fixed-locus graphs, one per line.
    Graphs {
        #[arg(long)]
        ambient_dim: u32,
        #[arg(long)]
        curve_degree: u32,
        #[arg(long, default_value_t = 0)]
        marks: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Model(_) | CliError::MissingInput(_) | CliError::Io(_) => 1,
            CliError::Localization(LocalizationError::DimensionMismatch { .. }) => 2,
            CliError::Localization(_) => 3,
            CliError::Relation(RelationError::Parse { .. } | RelationError::NonContiguous { .. } | RelationError::MissingDegree(_)) => 1,
            CliError::Relation(_) => 3,
        }
    }
}

pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = OsString>,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Context {
        format: cli.format,
        quiet: cli.quiet,
        engine: Engine::new(cli.jobs),
        seeds: cli
            .seed
            .map(|s| vec![s, s + 1, s + 2])
            .unwrap_or_else(|| DEFAULT_SEEDS.to_vec()),
        cache: Cache::new(resolve_dir(cli.cache_dir.as_deref())),
        notes: Vec::new(),
    };
    let result = ctx.dispatch(&cli.command);
    if !ctx.quiet {
        for note in &ctx.notes {
            let _ = writeln!(err, "{note}");
        }
    }
    match result {
        Ok(report) => {
            let _ = out.write_all(report.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Context {
    format: Format,
    quiet: bool,
    engine: Engine,
    seeds: Vec<u64>,
    cache: Cache,
    notes: Vec<String>,
}

/// A genus-zero result, freshly computed or read back from the cache.
#[derive(Debug, Clone)]
pub struct Genus0Report {
    pub target: CITarget,
    pub value: Rational,
    pub graph_count: u64,
    pub seeds: Vec<u64>,
    pub cached: bool,
}

pub fn query_json(target: &CITarget) -> serde_json::Value {
    json!({
        "ambient_dim": target.ambient_dim(),
        "degrees": target.degrees(),
        "curve_degree": target.curve_degree(),
        "insertions": target.insertions().iter().map(|i| i.power).collect::<Vec<_>>(),
    })
}

fn genus0_key(target: &CITarget) -> String {
    cache_key(&format!("genus0:{}", target.canonical_string()), ENGINE_VERSION)
}

fn fraction_json(r: &Rational) -> serde_json::Value {
    serde_json::to_value(Fraction::from(r)).expect("fraction serializes")
}

/// Reads `d value` lines, ignoring blanks and `#` comments.
pub fn parse_degree_table(text: &str) -> Result<DegreeTable, CliError> {
    let mut table = DegreeTable::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || CliError::Usage(format!("line {}: expected `degree value`, got {line:?}", idx + 1));
        let mut parts = line.split_whitespace();
        let d: u32 = parts.next().and_then(|d| d.parse().ok()).ok_or_else(bad)?;
        let value = parse_rational(parts.next().ok_or_else(bad)?)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        table.insert(d, value);
    }
    Ok(table)
}

fn truncate(table: &DegreeTable, max_degree: u32, what: &str) -> Result<DegreeTable, CliError> {
    (1..=max_degree)
        .map(|d| {
            table
                .get(&d)
                .map(|v| (d, v.clone()))
                .ok_or_else(|| CliError::MissingInput(format!("{what} has no entry for degree {d}")))
        })
        .collect()
}

fn read_table_file(path: &Path) -> Result<DegreeTable, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::MissingInput(format!("{}: {e}", path.display())))?;
    parse_degree_table(&text)
}

impl Context {
    fn dispatch(&mut self, command: &Command) -> Result<String, CliError> {
        match command {
            Command::Genus0 {
                ambient_dim,
                degrees,
                curve_degree,
                insertions,
            } => {
                let target = CITarget::new(
                    *ambient_dim,
                    degrees.clone(),
                    *curve_degree,
                    insertions.iter().map(|&power| Insertion { power }).collect(),
                )?;
                let report = self.genus0(&target)?;
                Ok(self.render_genus0(&report))
            }
            Command::Table1 { max_degree, table } => {
                let published = match table {
                    Some(path) => PublishedTable::parse(&std::fs::read_to_string(path)?)?,
                    None => PublishedTable::shipped(),
                };
                let rows = reproduce_table1::<CliError, _>(*max_degree, &published, |d| {
                    Ok(self.genus0(&CITarget::quintic(d)?)?.value)
                })?;
                Ok(self.render_table1(&rows))
            }
            Command::Bps {
                genus,
                max_degree,
                input,
                genus0_input,
            } => {
                let table = self.bps(*genus, *max_degree, input.as_deref(), genus0_input.as_deref())?;
                Ok(self.render_bps(&table))
            }
            Command::Dims {
                genus,
                marks,
                c1a,
                half_dim,
                bundle_c1a,
            } => {
                let dim = expected_dimension(&DimensionQuery {
                    genus: *genus,
                    marks: *marks,
                    c1_dot_a: *c1a,
                    half_dim: *half_dim,
                    bundle_c1_dot_a: *bundle_c1a,
                })?;
                Ok(match self.format {
                    Format::Text => format!("{dim}\n"),
                    Format::Json => format!("{}\n", json!({ "dimension": dim })),
                    Format::Csv => format!("dimension\n{dim}\n"),
                })
            }
            Command::Wdvv { max_degree } => {
                let counts = wdvv_p2(*max_degree);
                Ok(self.render_degree_table("counts", &counts))
            }
            Command::Graphs {
                ambient_dim,
                curve_degree,
                marks,
            } => {
                if *ambient_dim < 1 || *curve_degree < 1 {
                    return Err(CliError::Usage("ambient dimension and curve degree must be at least 1".into()));
                }
                let graphs = enumerate_graphs(*ambient_dim, *curve_degree, *marks);
                let mut buf = Vec::new();
                write_dump(&graphs, &mut buf)?;
                Ok(String::from_utf8(buf).expect("dump is utf-8"))
            }
        }
    }

    /// Cached genus-zero evaluation.
    pub fn genus0(&mut self, target: &CITarget) -> Result<Genus0Report, CliError> {
        let key = genus0_key(target);
        if let Some(record) = self.cache.get(&key) {
            if let Some(value) = record.value.to_rational() {
                self.notes.push(format!("cache hit for {target}"));
                return Ok(Genus0Report {
                    target: target.clone(),
                    value,
                    graph_count: record.graph_count,
                    seeds: record.seeds,
                    cached: true,
                });
            }
        }
        let EngineResult {
            value,
            graph_count,
            weight_seeds,
            ..
        } = self.engine.sum_invariant(target, &self.seeds)?;
        let record = CacheRecord {
            key,
            query: query_json(target),
            value: Fraction::from(&value),
            seeds: weight_seeds.clone(),
            graph_count,
            engine_version: ENGINE_VERSION.to_string(),
            created_at: chrono::Utc::now().to_rfc3339(),
        };
        if let Err(e) = self.cache.put(&record) {
            self.notes.push(format!("warning: could not write cache in {}: {e}", self.cache.dir().display()));
        }
        Ok(Genus0Report {
            target: target.clone(),
            value,
            graph_count,
            seeds: weight_seeds,
            cached: false,
        })
    }

    fn cached_quintic_genus0(&self, max_degree: u32) -> Result<DegreeTable, CliError> {
        (1..=max_degree)
            .map(|d| {
                self.cache
                    .get(&genus0_key(&CITarget::quintic(d)?))
                    .and_then(|r| r.value.to_rational())
                    .map(|v| (d, v))
                    .ok_or_else(|| {
                        CliError::MissingInput(format!(
                            "no cached quintic genus-zero invariant for degree {d}; run `genus0` or `table1` first, or pass a table file"
                        ))
                    })
            })
            .collect()
    }

    fn bps(
        &mut self,
        genus: u8,
        max_degree: u32,
        input: Option<&Path>,
        genus0_input: Option<&Path>,
    ) -> Result<BPSTable, CliError> {
        if max_degree < 1 {
            return Err(CliError::Usage("--max-degree must be at least 1".into()));
        }
        let genus0_table = |ctx: &Self, path: Option<&Path>| -> Result<DegreeTable, CliError> {
            match path {
                Some(p) => truncate(&read_table_file(p)?, max_degree, "genus-zero input"),
                None => ctx.cached_quintic_genus0(max_degree),
            }
        };
        match genus {
            0 => Ok(bps0_from_gw0(&genus0_table(self, input.or(genus0_input))?)?),
            1 => {
                let n1 = match input {
                    Some(p) => truncate(&read_table_file(p)?, max_degree, "genus-one input")?,
                    None => truncate(&PublishedTable::shipped().genus1_gw, max_degree, "shipped table")?,
                };
                let bps0 = bps0_from_gw0(&genus0_table(self, genus0_input)?)?;
                Ok(bps1_from_gw1(&n1, &bps0)?)
            }
            other => Err(CliError::Usage(format!("genus {other} is not supported (only 0 and 1)"))),
        }
    }

    fn render_genus0(&self, r: &Genus0Report) -> String {
        let seeds = r.seeds.iter().map(u64::to_string).collect::<Vec<_>>();
        match self.format {
            Format::Text if self.quiet => format!("{}\n", format_rational(&r.value)),
            Format::Text => format!(
                "query: {}\nvalue: {}\ngraph_count: {}\nseeds: {}\nengine_version: {}\ncached: {}\n",
                r.target,
                format_rational(&r.value),
                r.graph_count,
                seeds.join(","),
                ENGINE_VERSION,
                r.cached
            ),
            Format::Json => format!(
                "{}\n",
                json!({
                    "query": query_json(&r.target),
                    "value": fraction_json(&r.value),
                    "graph_count": r.graph_count,
                    "seeds": r.seeds,
                    "engine_version": ENGINE_VERSION,
                })
            ),
            Format::Csv => {
                let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(";");
                let insertions: Vec<u32> = r.target.insertions().iter().map(|i| i.power).collect();
                format!(
                    "ambient_dim,degrees,curve_degree,insertions,num,den,graph_count,seeds,engine_version\n{},{},{},{},{},{},{},{},{}\n",
                    r.target.ambient_dim(),
                    join(r.target.degrees()),
                    r.target.curve_degree(),
                    join(&insertions),
                    r.value.numer(),
                    r.value.denom(),
                    r.graph_count,
                    seeds.join(";"),
                    ENGINE_VERSION
                )
            }
        }
    }

    fn render_table1(&self, rows: &[QuinticTableRow]) -> String {
        match self.format {
            Format::Text => {
                let mut s = String::new();
                for row in rows {
                    writeln!(s, "{row}").unwrap();
                    if !row.consistent {
                        writeln!(
                            s,
                            "  via N0/12 + reduced: {}\n  via n1 expansion:    {}",
                            format_rational(&row.genus1_via_reduced),
                            format_rational(&row.genus1_via_expansion)
                        )
                        .unwrap();
                    }
                }
                s
            }
            Format::Json => {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "degree": r.degree,
                            "genus0_gw": fraction_json(&r.genus0_gw),
                            "reduced_term": fraction_json(&r.reduced_term),
                            "genus1_gw": fraction_json(&r.genus1_gw),
                            "genus1_bps": fraction_json(&r.genus1_bps),
                            "genus1_via_reduced": fraction_json(&r.genus1_via_reduced),
                            "genus1_via_expansion": fraction_json(&r.genus1_via_expansion),
                            "consistent": r.consistent,
                            "corrected_genus1_gw": r.corrected_genus1_gw.as_ref().map(fraction_json),
                        })
                    })
                    .collect();
                format!(
                    "{}\n",
                    json!({ "rows": rows, "seeds": self.seeds, "engine_version": ENGINE_VERSION })
                )
            }
            Format::Csv => {
                let mut s = String::from(
                    "degree,genus0_gw,reduced_term,genus1_gw,genus1_bps,consistent,corrected_genus1_gw\n",
                );
                for r in rows {
                    writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        r.degree,
                        format_rational(&r.genus0_gw),
                        format_rational(&r.reduced_term),
                        format_rational(&r.genus1_gw),
                        format_rational(&r.genus1_bps),
                        r.consistent,
                        r.corrected_genus1_gw.as_ref().map(format_rational).unwrap_or_default()
                    )
                    .unwrap();
                }
                s
            }
        }
    }

    fn render_bps(&self, table: &BPSTable) -> String {
        match self.format {
            Format::Json => {
                let entries: Vec<_> = table
                    .entries
                    .iter()
                    .map(|(d, v)| json!({ "degree": d, "value": fraction_json(v) }))
                    .collect();
                format!("{}\n", json!({ "genus": table.genus, "entries": entries }))
            }
            _ => self.render_degree_table("bps", &table.entries),
        }
    }

    fn render_degree_table(&self, name: &str, table: &BTreeMap<u32, Rational>) -> String {
        match self.format {
            Format::Text => table
                .iter()
                .map(|(d, v)| format!("{d}\t{}\n", format_rational(v)))
                .collect(),
            Format::Json => {
                let entries: Vec<_> = table
                    .iter()
                    .map(|(d, v)| json!({ "degree": d, "value": fraction_json(v) }))
                    .collect();
                format!("{}\n", json!({ name: entries }))
            }
            Format::Csv => {
                let mut s = String::from("degree,num,den\n");
                for (d, v) in table {
                    writeln!(s, "{d},{},{}", v.numer(), v.denom()).unwrap();
                }
                s
            }
        }
    }
}
