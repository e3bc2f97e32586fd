//! Stretch verification of a label set against BFS distances.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{decode_traced, Branch, EncodeTrace, PairClass, VertexLabel};
use crate::graph::Graph;
use crate::metric::bfs_distances;

/// Ratio buckets, in order: below 1, exactly 1, then half-open steps of 0.5
/// up to 4, then above 4.
pub const HISTOGRAM_BINS: [&str; 9] = [
    "<1", "1", "(1,1.5]", "(1.5,2]", "(2,2.5]", "(2.5,3]", "(3,3.5]", "(3.5,4]", ">4",
];

/// Keeps reports small on badly broken inputs.
const MAX_LISTED: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub u: u32,
    pub v: u32,
    pub distance: u32,
    pub estimate: u32,
    pub branch: Branch,
    pub class: PairClass,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GroupStats {
    pub pairs: u64,
    pub exact: u64,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StretchReport {
    pub n: usize,
    pub pairs: u64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub histogram: BTreeMap<&'static str, u64>,
    pub by_class: BTreeMap<PairClass, GroupStats>,
    pub by_branch: BTreeMap<Branch, GroupStats>,
    /// Pairs that stayed in one fiber past the top level.
    pub recursed: GroupStats,
    /// Ratio outside `[1, 4]`.
    pub violation_count: u64,
    pub violations: Vec<PairOutcome>,
    /// Separated pairs not decoded exactly, or default-branch pairs that are
    /// separated or almost separated and exceed twice the distance.
    pub refined_count: u64,
    pub refined_violations: Vec<PairOutcome>,
    /// Panel-cone or cone-cone branch taken for a pair whose ground truth is
    /// not 1-neighboring panel/cone (resp. 2-neighboring cones).
    pub mismatch_count: u64,
    pub mismatches: Vec<PairOutcome>,
    pub max_levels: usize,
    pub level_bound: usize,
}

impl StretchReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
            && self.refined_count == 0
            && self.mismatch_count == 0
            && self.max_levels <= self.level_bound
    }
}

/// `⌈log₂ n⌉ + 1`.
pub fn level_bound(n: usize) -> usize {
    n.max(1).next_power_of_two().trailing_zeros() as usize + 1
}

fn bin(distance: u32, estimate: u32) -> usize {
    let (d, r) = (u64::from(distance), u64::from(estimate));
    if r < d {
        0
    } else if r > 4 * d {
        8
    } else {
        // r = d lands in bin 1; (d, 4d] splits into six half-unit steps.
        1 + (2 * (r - d)).div_ceil(d) as usize
    }
}

#[derive(Clone, Default)]
struct Group {
    pairs: u64,
    exact: u64,
    max: f64,
    sum: f64,
}

impl Group {
    fn add(&mut self, ratio: f64) {
        self.pairs += 1;
        self.exact += u64::from(ratio == 1.0);
        self.max = self.max.max(ratio);
        self.sum += ratio;
    }

    fn merge(&mut self, o: &Group) {
        self.pairs += o.pairs;
        self.exact += o.exact;
        self.max = self.max.max(o.max);
        self.sum += o.sum;
    }

    fn stats(&self) -> GroupStats {
        GroupStats {
            pairs: self.pairs,
            exact: self.exact,
            max_ratio: self.max,
            mean_ratio: if self.pairs == 0 {
                0.0
            } else {
                self.sum / self.pairs as f64
            },
        }
    }
}

#[derive(Clone, Default)]
struct Tally {
    all: Group,
    min: Option<f64>,
    histogram: [u64; 9],
    by_class: BTreeMap<PairClass, Group>,
    by_branch: BTreeMap<Branch, Group>,
    recursed: Group,
    violations: (u64, Vec<PairOutcome>),
    refined: (u64, Vec<PairOutcome>),
    mismatches: (u64, Vec<PairOutcome>),
}

fn note(list: &mut (u64, Vec<PairOutcome>), o: PairOutcome) {
    list.0 += 1;
    if list.1.len() < MAX_LISTED {
        list.1.push(o);
    }
}

fn merge_list(a: &mut (u64, Vec<PairOutcome>), b: (u64, Vec<PairOutcome>)) {
    a.0 += b.0;
    a.1.extend(b.1);
    a.1.sort_by_key(|o| (o.u, o.v));
    a.1.truncate(MAX_LISTED);
}

impl Tally {
    fn add(&mut self, o: PairOutcome, split_level: usize) {
        let ratio = f64::from(o.estimate) / f64::from(o.distance);
        self.all.add(ratio);
        self.min = Some(self.min.map_or(ratio, |m| m.min(ratio)));
        self.histogram[bin(o.distance, o.estimate)] += 1;
        self.by_class.entry(o.class).or_default().add(ratio);
        self.by_branch.entry(o.branch).or_default().add(ratio);
        if split_level > 0 {
            self.recursed.add(ratio);
        }
        if o.estimate < o.distance || u64::from(o.estimate) > 4 * u64::from(o.distance) {
            note(&mut self.violations, o);
        }
        let refined_ok = match (o.class, o.branch) {
            (PairClass::Separated, _) => o.estimate == o.distance,
            (PairClass::AlmostSeparated, Branch::Median) => o.estimate <= 2 * o.distance,
            _ => true,
        };
        if !refined_ok {
            note(&mut self.refined, o);
        }
        let consistent = match o.branch {
            Branch::PanelCone => o.class == PairClass::OnePc,
            Branch::ConeCone => o.class == PairClass::TwoCc,
            _ => true,
        };
        if !consistent {
            note(&mut self.mismatches, o);
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.all.merge(&o.all);
        self.min = match (self.min, o.min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (h, x) in self.histogram.iter_mut().zip(o.histogram) {
            *h += x;
        }
        for (k, g) in &o.by_class {
            self.by_class.entry(*k).or_default().merge(g);
        }
        for (k, g) in &o.by_branch {
            self.by_branch.entry(*k).or_default().merge(g);
        }
        self.recursed.merge(&o.recursed);
        merge_list(&mut self.violations, o.violations);
        merge_list(&mut self.refined, o.refined);
        merge_list(&mut self.mismatches, o.mismatches);
        self
    }
}

/// Which ordered pairs to check.
#[derive(Clone, Copy, Debug)]
pub enum Pairs {
    All,
    /// `count` uniformly random ordered pairs of distinct vertices.
    Sample {
        count: usize,
        seed: u64,
    },
}

/// Decodes the selected pairs and compares them against BFS distances.
/// `trace` must come from encoding `g`; it provides the ground-truth class of
/// every pair.
pub fn verify(
    g: &Graph,
    labels: &[VertexLabel],
    trace: &EncodeTrace,
    pairs: Pairs,
) -> StretchReport {
    assert_eq!(labels.len(), g.n(), "one label per vertex");
    let n = g.n();
    let sources: Vec<(usize, Vec<usize>)> = match pairs {
        Pairs::All => (0..n)
            .map(|u| (u, (0..n).filter(|&v| v != u).collect()))
            .collect(),
        Pairs::Sample { count, seed } => {
            let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            if n >= 2 {
                let mut rng = crate::generators::seeded_rng(seed);
                for _ in 0..count {
                    let u = rng.gen_range(0..n);
                    let v = (u + rng.gen_range(1..n)) % n;
                    by_source.entry(u).or_default().push(v);
                }
            }
            by_source.into_iter().collect()
        }
    };
    let tally = sources
        .par_iter()
        .map(|(u, targets)| {
            let dist = bfs_distances(g, *u).expect("source is a vertex");
            let mut t = Tally::default();
            for &v in targets {
                let decoded = decode_traced(&labels[*u], &labels[v]);
                let outcome = PairOutcome {
                    u: *u as u32,
                    v: v as u32,
                    distance: dist[v],
                    estimate: decoded.estimate,
                    branch: decoded.branch,
                    class: trace.classify(*u, v),
                };
                t.add(outcome, trace.split_level(*u, v).unwrap_or(0));
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    StretchReport {
        n,
        pairs: tally.all.pairs,
        min_ratio: tally.min.unwrap_or(1.0),
        max_ratio: if tally.all.pairs == 0 {
            1.0
        } else {
            tally.all.max
        },
        mean_ratio: tally.all.stats().mean_ratio,
        histogram: HISTOGRAM_BINS
            .iter()
            .copied()
            .zip(tally.histogram)
            .collect(),
        by_class: tally
            .by_class
            .iter()
            .map(|(k, g)| (*k, g.stats()))
            .collect(),
        by_branch: tally
            .by_branch
            .iter()
            .map(|(k, g)| (*k, g.stats()))
            .collect(),
        recursed: tally.recursed.stats(),
        violation_count: tally.violations.0,
        violations: tally.violations.1,
        refined_count: tally.refined.0,
        refined_violations: tally.refined.1,
        mismatch_count: tally.mismatches.0,
        mismatches: tally.mismatches.1,
        max_levels: labels.iter().map(|l| l.levels.len()).max().unwrap_or(0),
        level_bound: level_bound(n),
    }
}
