//! `bdl`: generate, check, encode, decode and verify distance labels of
//! K4-free bridged graphs.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use bridged_labeling::boundary::total_boundary;
use bridged_labeling::codec::{
    decode_traced, encode_graph, encode_graph_traced, instance_hash, serialize, LabelSet,
};
use bridged_labeling::generators::{
    burned_lozenge, flat_triangle, glued_triangles, lozenge, random_instance, random_tree,
};
use bridged_labeling::invariants::{check_invariants, SuiteOptions};
use bridged_labeling::star::{build_star, fiber_partition, median_vertex, Role};
use bridged_labeling::verify::{verify, Pairs};
use bridged_labeling::{all_pairs, check_class, Graph};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{emit, BUILD_ID};

/// All-pairs verification above this size needs `--sample`.
const ALL_PAIRS_CAP: usize = 2000;

#[derive(Parser)]
#[command(name = "bdl", version = BUILD_ID, about = "Distance labels for K4-free bridged graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// Flat triangle of side k. Params: k.
    Triangle,
    /// Lozenge with sides a, b. Params: a,b.
    Lozenge,
    /// Burned lozenge. Params: a,b[,budget].
    Burned,
    /// Triangles of a given side glued along sides. Params: side,count.
    Glued,
    /// Mixed random instance. Params: n.
    Random,
    /// Uniform random tree. Params: n.
    Tree,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated family parameters.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check membership in the K4-free bridged class. Exits 1 on rejection.
    Check { graph: PathBuf },
    /// Encode a graph into a label file and print stats as JSON.
    Encode {
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Write the stats JSON here instead of stdout.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Estimate d(u, v) from two labels.
    Decode {
        #[arg(long)]
        labels: PathBuf,
        /// Take v's label from this file; it must belong to the same instance.
        #[arg(long)]
        other: Option<PathBuf>,
        u: u32,
        v: u32,
    },
    /// Compare decoded distances with BFS distances and run the structural
    /// invariant suite. Exits 1 on any violation.
    Verify {
        graph: PathBuf,
        labels: PathBuf,
        /// Check this many random ordered pairs instead of all pairs.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode and verify generated instances; prints CSV. Each size is the
    /// vertex count for `random` and `tree`, the side for `triangle`, both
    /// sides for `lozenge` and `burned`, and the copy count of side-4
    /// triangles for `glued`.
    Bench {
        #[arg(long, value_enum, default_value = "random")]
        family: Family,
        #[arg(long, value_delimiter = ',', default_value = "128,256,512,1024,2048")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
        /// Random pairs per instance for the ratio columns.
        #[arg(long, default_value_t = 20_000)]
        sample: usize,
    },
    /// Dump recursion internals as JSON.
    Inspect {
        graph: PathBuf,
        /// Top-level star, partition, fiber sizes and boundary trees.
        #[arg(long)]
        star: bool,
        /// Decoder branch and ground-truth class of a pair.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        pair: Option<Vec<usize>>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_labels(path: &Path) -> Result<LabelSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    LabelSet::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn param(params: &[usize], i: usize, name: &str, default: Option<usize>) -> Result<usize> {
    match (params.get(i), default) {
        (Some(&p), _) => Ok(p),
        (None, Some(d)) => Ok(d),
        (None, None) => bail!("missing parameter `{name}`"),
    }
}

fn generate(family: Family, params: &[usize], seed: u64) -> Result<Graph> {
    let p = |i, name, default| param(params, i, name, default);
    let g = match family {
        Family::Triangle => flat_triangle(p(0, "k", None)?),
        Family::Lozenge => lozenge(p(0, "a", None)?, p(1, "b", None)?)?,
        Family::Burned => {
            let (a, b) = (p(0, "a", None)?, p(1, "b", None)?);
            burned_lozenge(a, b, seed, p(2, "budget", Some(a * b / 2))?)?
        }
        Family::Glued => glued_triangles(p(0, "side", None)?, p(1, "count", None)?, seed)?,
        Family::Random => random_instance(p(0, "n", Some(256))?, seed)?,
        Family::Tree => random_tree(p(0, "n", Some(256))?, seed)?,
    };
    Ok(g)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            params,
            seed,
            out,
        } => {
            let text = generate(family, &params, seed)?.to_text();
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { graph } => {
            let g = read_graph(&graph)?;
            let report = check_class(&g);
            let accepted = report.accepted();
            emit(
                None,
                &json!({
                    "build": BUILD_ID,
                    "instance": instance_hash(&g),
                    "accepted": accepted,
                    "verdict": report,
                }),
            )?;
            Ok(if accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Encode { graph, out, stats } => {
            let g = read_graph(&graph)?;
            let start = Instant::now();
            let labels = encode_graph(&g)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let bits: Vec<usize> = labels.iter().map(|l| 8 * serialize(l).len()).collect();
            let levels: Vec<usize> = labels.iter().map(|l| l.levels.len()).collect();
            let set = LabelSet::new(&g, labels);
            fs::write(&out, set.to_text()).with_context(|| format!("writing {}", out.display()))?;
            emit(
                stats.as_deref(),
                &json!({
                    "build": BUILD_ID,
                    "instance": set.instance,
                    "n": g.n(),
                    "m": g.m(),
                    "wall_ms": wall_ms,
                    "max_bits": bits.iter().max(),
                    "mean_bits": bits.iter().sum::<usize>() as f64 / bits.len() as f64,
                    "max_levels": levels.iter().max(),
                    "bits": bits,
                    "levels": levels,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode {
            labels,
            other,
            u,
            v,
        } => {
            let set = read_labels(&labels)?;
            let estimate = match other {
                Some(path) => set.decode_across(u, &read_labels(&path)?, v)?,
                None => set.decode(u, v)?,
            };
            println!("{estimate}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            labels,
            sample,
            seed,
            out,
        } => {
            let g = read_graph(&graph)?;
            let set = read_labels(&labels)?;
            set.ensure_instance(&instance_hash(&g))
                .context("label file does not belong to this graph")?;
            let pairs = match sample {
                Some(count) => Pairs::Sample { count, seed },
                None if g.n() > ALL_PAIRS_CAP => {
                    bail!("n = {} exceeds {ALL_PAIRS_CAP}; pass --sample K", g.n())
                }
                None => Pairs::All,
            };
            let (fresh, trace) = encode_graph_traced(&g)?;
            let stretch = verify(&g, &set.labels, &trace, pairs);
            let invariants = check_invariants(
                &g,
                SuiteOptions {
                    seed,
                    ..SuiteOptions::default()
                },
            );
            let passed = stretch.passed() && invariants.passed();
            emit(
                out.as_deref(),
                &json!({
                    "build": BUILD_ID,
                    "instance": set.instance,
                    "passed": passed,
                    "labels_match_encoder": fresh == set.labels,
                    "stretch": stretch,
                    "invariants": invariants,
                }),
            )?;
            if !passed {
                if let Some(p) = stretch.violations.first() {
                    eprintln!(
                        "stretch violation: d({}, {}) = {}, decoded {}",
                        p.u, p.v, p.distance, p.estimate
                    );
                }
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            family,
            sizes,
            seeds,
            sample,
        } => {
            println!("family,seed,n,encode_ms,max_label_bits,mean_ratio,max_ratio");
            for &seed in &seeds {
                for &n in &sizes {
                    let params = match family {
                        Family::Random | Family::Tree | Family::Triangle => vec![n],
                        Family::Lozenge | Family::Burned => vec![n, n],
                        Family::Glued => vec![4, n],
                    };
                    let g = generate(family, &params, seed)?;
                    let start = Instant::now();
                    let (labels, trace) = encode_graph_traced(&g)?;
                    let encode_ms = start.elapsed().as_secs_f64() * 1e3;
                    let bits = labels
                        .iter()
                        .map(|l| 8 * serialize(l).len())
                        .max()
                        .unwrap_or(0);
                    let r = verify(
                        &g,
                        &labels,
                        &trace,
                        Pairs::Sample {
                            count: sample,
                            seed,
                        },
                    );
                    println!(
                        "{family:?},{seed},{},{encode_ms:.3},{bits},{:.4},{:.4}",
                        g.n(),
                        r.mean_ratio,
                        r.max_ratio
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Inspect { graph, star, pair } => {
            let g = read_graph(&graph)?;
            let mut doc = json!({ "build": BUILD_ID, "instance": instance_hash(&g), "n": g.n() });
            if star {
                doc["star"] = inspect_star(&g)?;
            }
            if let Some(p) = pair {
                let (u, v) = (p[0], p[1]);
                if u >= g.n() || v >= g.n() {
                    bail!("vertex out of range for n = {}", g.n());
                }
                let (labels, trace) = encode_graph_traced(&g)?;
                let decoded = decode_traced(&labels[u], &labels[v]);
                doc["pair"] = json!({
                    "u": u,
                    "v": v,
                    "decoded": decoded,
                    "class": trace.classify(u, v),
                    "split_level": trace.split_level(u, v),
                });
            }
            emit(None, &doc)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn inspect_star(g: &Graph) -> Result<serde_json::Value> {
    let report = check_class(g);
    if let Some(w) = report.first_witness() {
        bail!("not K4-free bridged: {w}");
    }
    let d = all_pairs(g)?;
    let star = build_star(g, &d, median_vertex(&d))?;
    let p = fiber_partition(g, &d, &star)?;
    let mut trees = Vec::new();
    for f in (0..p.len()).filter(|&f| p.roles[f] == Role::Panel) {
        trees.push(total_boundary(g, &d, &p, f)?);
    }
    let fibers: Vec<_> = (0..p.len())
        .map(|f| {
            json!({
                "root": p.roots[f],
                "role": p.roles[f],
                "label": p.labels[f],
                "size": p.members[f].len(),
            })
        })
        .collect();
    Ok(json!({
        "median": star.center,
        "neighbors": star.neighbors,
        "apexes": star.apexes,
        "fibers": fibers,
        "fiber_of": p.fiber_of,
        "boundary_trees": trees,
    }))
}
