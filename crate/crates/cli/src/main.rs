use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use semsim_core::cohesion::{
    self, BenchmarkSet, ExperimentConfig, Judgements, DEFAULT_HISTOGRAM_BINS, DEFAULT_SAMPLES,
};
use semsim_core::taxonomy::{DEFAULT_SEPARATOR, ROOT_MARKER};
use semsim_core::{
    similarity_matrix, treeify_dag, weigh, Corpus, DagScheme, Error, ErrorKind, Measure, Result,
    Scorer, Taxonomy, WeightingMethod,
};

#[derive(Parser, Debug)]
#[command(
    name = "semsim",
    version,
    about = "Taxonomy-based semantic similarity of annotated resources"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Taxonomy edge list (`child<TAB>parent`, root parent `-`).
    #[arg(long, global = true)]
    taxonomy: Option<PathBuf>,
    /// Annotated corpus (JSON lines).
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Corpus used for CF/AF weights and IDF; defaults to --corpus.
    #[arg(long, global = true)]
    weight_corpus: Option<PathBuf>,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a multi-parent classification scheme into a tree.
    Treeify {
        /// Scheme edge list; a node may have several parents.
        #[arg(long)]
        dag: PathBuf,
        #[arg(long, default_value = DEFAULT_SEPARATOR)]
        separator: String,
        #[arg(long, default_value = "owl:Thing")]
        root_label: String,
    },
    /// Concept weights and information content.
    Weigh {
        #[arg(long)]
        weighting: WeightingMethod,
        /// Logarithm base for IC (natural log by default).
        #[arg(long)]
        log_base: Option<f64>,
    },
    /// Similarity of two resources.
    Sim {
        #[arg(long)]
        method: Measure,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// All-pairs similarity matrix of the corpus.
    Matrix {
        #[arg(long)]
        method: Measure,
    },
    /// Cohesion test of benchmark sets against random sets.
    Cohesion {
        /// Repeatable; all 22 measures when absent.
        #[arg(long)]
        method: Vec<Measure>,
        /// Benchmark sets, `<set_id><TAB><id>,<id>,...` per line.
        #[arg(long)]
        sets: PathBuf,
        /// Expert judgements CSV `resource_a,resource_b,score`.
        #[arg(long)]
        judgements: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Student-t degrees of freedom; the set size when absent.
        #[arg(long)]
        df: Option<u32>,
        /// Directory receiving one histogram CSV per method and set.
        #[arg(long)]
        histogram: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_HISTOGRAM_BINS)]
        bins: usize,
    },
    /// Pearson correlation of measures against expert judgements.
    Correlate {
        /// Repeatable; all 22 measures when absent.
        #[arg(long)]
        method: Vec<Measure>,
        #[arg(long)]
        judgements: PathBuf,
    },
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Parse => 2,
        ErrorKind::Structure => 3,
        ErrorKind::UnknownEntity => 4,
        ErrorKind::Statistics => 5,
        ErrorKind::Io | ErrorKind::Usage => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string() }));
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let record = json!({
                "error": e.code(),
                "entity": e.entity(),
                "message": e.to_string(),
            });
            eprintln!("{record}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for this command")))
}

struct Inputs {
    taxonomy: Arc<Taxonomy>,
    corpus: Option<Corpus>,
    weight_corpus: Option<Corpus>,
}

impl Inputs {
    fn load(g: &Global, need_corpus: bool) -> Result<Self> {
        let taxonomy = Arc::new(Taxonomy::load(required(&g.taxonomy, "taxonomy")?)?);
        let corpus = match &g.corpus {
            Some(p) => Some(Corpus::load(p, taxonomy.clone())?),
            None if need_corpus => {
                return Err(Error::InvalidArgument(
                    "--corpus is required for this command".into(),
                ))
            }
            None => None,
        };
        let weight_corpus = match &g.weight_corpus {
            Some(p) => Some(Corpus::load(p, taxonomy.clone())?),
            None => None,
        };
        Ok(Inputs {
            taxonomy,
            corpus,
            weight_corpus,
        })
    }

    fn corpus(&self) -> &Corpus {
        self.corpus.as_ref().expect("corpus loaded")
    }

    fn weight_corpus(&self) -> Option<&Corpus> {
        self.weight_corpus.as_ref().or(self.corpus.as_ref())
    }

    fn scorer(&self, measure: Measure) -> Result<Scorer> {
        Scorer::new(measure, &self.taxonomy, self.weight_corpus())
    }
}

/// Writes to a temporary file next to `path` and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(g: &Global, contents: &str) -> Result<()> {
    match &g.out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

fn methods_or_all(methods: &[Measure]) -> Vec<Measure> {
    if methods.is_empty() {
        Measure::all()
    } else {
        methods.to_vec()
    }
}

fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Treeify {
            dag,
            separator,
            root_label,
        } => {
            if root_label == ROOT_MARKER {
                return Err(Error::InvalidArgument(format!(
                    "root label cannot be `{ROOT_MARKER}`"
                )));
            }
            let scheme = DagScheme::load(dag)?;
            let tree = treeify_dag(&scheme, separator, root_label)?;
            let out = match g.format {
                Format::Csv => tree.to_edge_list(),
                Format::Json => {
                    let edges: Vec<_> = tree
                        .breadth_first()
                        .into_iter()
                        .map(|c| json!({ "id": tree.name(c), "parent": tree.parent(c).map(|p| tree.name(p)) }))
                        .collect();
                    to_json(
                        &json!({ "concepts": tree.len(), "isa": tree.isa_count(), "edges": edges }),
                    )
                }
            };
            emit(g, &out)?;
            eprintln!("concepts={} isa={}", tree.len(), tree.isa_count());
        }
        Command::Weigh {
            weighting,
            log_base,
        } => {
            let inputs = Inputs::load(g, false)?;
            let corpus = if weighting.is_extensional() {
                inputs.weight_corpus()
            } else {
                None
            };
            let mut wt = weigh(&inputs.taxonomy, *weighting, corpus)?;
            if let Some(base) = log_base {
                wt = wt.with_log_base(*base)?;
            }
            let out = match g.format {
                Format::Csv => wt.to_csv(),
                Format::Json => {
                    let t = wt.taxonomy();
                    let mut concepts: Vec<_> = t.concepts().collect();
                    concepts.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
                    let rows: Vec<_> = concepts
                        .into_iter()
                        .map(|c| {
                            let ic = wt.ic(c);
                            json!({
                                "concept_id": t.name(c),
                                "weight": wt.weight(c),
                                "ic": if ic.is_finite() { json!(ic) } else { json!("inf") },
                            })
                        })
                        .collect();
                    to_json(&json!({ "method": weighting.as_str(), "concepts": rows }))
                }
            };
            emit(g, &out)?;
        }
        Command::Sim { method, a, b } => {
            let inputs = Inputs::load(g, true)?;
            let score = inputs.scorer(*method)?.score_ids(inputs.corpus(), a, b)?;
            let out = match g.format {
                Format::Csv => format!("{score:.6}\n"),
                Format::Json => to_json(
                    &json!({ "method": method.to_string(), "a": a, "b": b, "score": score }),
                ),
            };
            emit(g, &out)?;
        }
        Command::Matrix { method } => {
            let inputs = Inputs::load(g, true)?;
            let matrix = similarity_matrix(&inputs.scorer(*method)?, inputs.corpus())?;
            let out = match g.format {
                Format::Csv => matrix.to_csv(),
                Format::Json => {
                    let n = matrix.len();
                    let rows: Vec<Vec<f64>> = (0..n)
                        .map(|i| (0..n).map(|j| matrix.get(i, j)).collect())
                        .collect();
                    to_json(
                        &json!({ "method": method.to_string(), "ids": matrix.ids(), "values": rows }),
                    )
                }
            };
            emit(g, &out)?;
        }
        Command::Cohesion {
            method,
            sets,
            judgements,
            samples,
            df,
            histogram,
            bins,
        } => {
            let inputs = Inputs::load(g, true)?;
            let sets: Vec<BenchmarkSet> = cohesion::load_benchmark_sets(sets)?;
            let judgements = judgements.as_ref().map(Judgements::load).transpose()?;
            let mut matrices = Vec::new();
            for m in methods_or_all(method) {
                let matrix = similarity_matrix(&inputs.scorer(m)?, inputs.corpus())?;
                matrices.push((m.to_string(), matrix));
            }
            let config = ExperimentConfig {
                samples: *samples,
                seed: g.seed,
                df: *df,
                histogram_bins: *bins,
            };
            let report = cohesion::run_experiment(&matrices, &sets, judgements.as_ref(), &config)?;
            if let Some(dir) = histogram {
                std::fs::create_dir_all(dir).map_err(|source| Error::Io {
                    path: dir.clone(),
                    source,
                })?;
                for entry in &report.histograms {
                    let name = format!(
                        "{}__{}.csv",
                        file_safe(&entry.method),
                        file_safe(&entry.set_id)
                    );
                    write_atomic(&dir.join(name), &entry.histogram.to_csv())?;
                }
            }
            let out = match g.format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json() + "\n",
            };
            emit(g, &out)?;
        }
        Command::Correlate { method, judgements } => {
            let inputs = Inputs::load(g, true)?;
            let judgements = Judgements::load(judgements)?;
            let mut rows = Vec::new();
            for m in methods_or_all(method) {
                let scorer = inputs.scorer(m)?;
                let mut scores = Vec::with_capacity(judgements.len());
                let mut expert = Vec::with_capacity(judgements.len());
                for (a, b, s) in judgements.pairs() {
                    scores.push(scorer.score_ids(inputs.corpus(), a, b)?);
                    expert.push(s);
                }
                rows.push((
                    m.to_string(),
                    semsim_core::stats::pearson(&scores, &expert)?,
                ));
            }
            let out = match g.format {
                Format::Csv => {
                    let mut s = String::from("method,pairs,pearson\n");
                    for (m, p) in &rows {
                        s.push_str(&format!("{m},{},{p:.6}\n", judgements.len()));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(m, p)| json!({ "method": m, "pairs": judgements.len(), "pearson": p }))
                        .collect();
                    to_json(&json!(rows))
                }
            };
            emit(g, &out)?;
        }
    }
    Ok(())
}

fn file_safe(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}
