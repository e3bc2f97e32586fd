//! Structural property suite for stars, fibers and boundary trees, checked
//! against brute-force computations on the distance matrix.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{entrance, exits, total_boundary, TotalBoundaryTree};
use crate::class_check::spheres_triangle_free;
use crate::error::StructureError;
use crate::generators::seeded_rng;
use crate::graph::Graph;
use crate::metric::{
    all_pairs, ball, bfs_distances, interval, is_convex, isometry_violation, quasi_median,
    DistanceMatrix,
};
use crate::star::{build_star, fiber_partition, median_vertex, FiberPartition, Role, Star};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub nodes: usize,
    pub checks: Vec<CheckResult>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    fn record(&mut self, name: &'static str, checked: u64, failures: Vec<String>) {
        let entry = match self.checks.iter_mut().find(|c| c.name == name) {
            Some(e) => e,
            None => {
                self.checks.push(CheckResult {
                    name,
                    checked: 0,
                    failures: 0,
                    first_failure: None,
                });
                self.checks.last_mut().expect("just pushed")
            }
        };
        entry.checked += checked;
        entry.failures += failures.len() as u64;
        if entry.first_failure.is_none() {
            entry.first_failure = failures.into_iter().next();
        }
    }
}

/// Options for [`check_invariants`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Run the star and fiber checks at every recursion node, not only the top.
    pub recursive: bool,
    /// Number of random triples for the quasi-median check.
    pub triples: usize,
    /// Number of random pairs for interval and ball checks.
    pub pairs: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            recursive: true,
            triples: 200,
            pairs: 100,
            seed: 0,
        }
    }
}

/// Runs the whole suite on a K4-free bridged graph. Vertex ids in failure
/// messages refer to the graph of the recursion node where they occurred.
pub fn check_invariants(g: &Graph, opts: SuiteOptions) -> InvariantReport {
    let mut report = InvariantReport::default();
    let d = match all_pairs(g) {
        Ok(d) => d,
        Err(e) => {
            report.record("connected", 1, vec![e.to_string()]);
            return report;
        }
    };
    metric_checks(g, &d, opts, &mut report);
    let mut pending = vec![(0..g.n()).collect::<Vec<usize>>()];
    while let Some(verts) = pending.pop() {
        if verts.len() < 2 {
            continue;
        }
        let top = verts.len() == g.n();
        let sub = if top { g.clone() } else { g.induced(&verts) };
        let sd = if top {
            d.clone()
        } else {
            all_pairs(&sub).expect("fibers are connected")
        };
        report.nodes += 1;
        match node_checks(&sub, &sd, &mut report) {
            Ok(p) if opts.recursive => {
                for members in &p.members {
                    pending.push(members.iter().map(|&v| verts[v]).collect());
                }
            }
            Ok(_) => {}
            Err(e) => report.record(
                "structure",
                1,
                vec![e.map_vertices(|v| verts[v]).to_string()],
            ),
        }
    }
    report
}

fn collect<T: Send>(items: impl IntoParallelIterator<Item = Option<T>>) -> Vec<T> {
    items.into_par_iter().flatten().collect()
}

fn metric_checks(g: &Graph, d: &DistanceMatrix, opts: SuiteOptions, report: &mut InvariantReport) {
    let n = g.n();
    let spheres = collect((0..n).into_par_iter().map(|u| {
        let v = spheres_triangle_free(g, d, u);
        v.witness.map(|w| w.to_string())
    }));
    report.record("sphere_triangle_free", n as u64, spheres);

    let mut rng = seeded_rng(opts.seed);
    let triples: Vec<[usize; 3]> = (0..opts.triples)
        .map(|_| {
            [
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            ]
        })
        .collect();
    let qm = collect(triples.par_iter().map(|&[a, b, c]| {
        let (x, y, z) = quasi_median(d, a, b, c);
        let sides = (d.get(x, y), d.get(y, z), d.get(x, z));
        let routed = d.get(a, b) == d.get(a, x) + d.get(x, y) + d.get(y, b)
            && d.get(b, c) == d.get(b, y) + d.get(y, z) + d.get(z, c)
            && d.get(a, c) == d.get(a, x) + d.get(x, z) + d.get(z, c);
        (sides.0 != sides.1 || sides.1 != sides.2 || !routed)
            .then(|| format!("quasi-median ({x},{y},{z}) of ({a},{b},{c}) has sides {sides:?}"))
    }));
    report.record("quasi_median_equilateral", triples.len() as u64, qm);

    let pairs: Vec<(usize, usize)> = (0..opts.pairs)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    let intervals = collect(pairs.par_iter().map(|&(u, v)| {
        let span = interval(d, u, v);
        isometry_violation(g, d, span.as_slice())
            .map(|(a, b)| format!("I({u},{v}) is not isometric at ({a},{b})"))
    }));
    report.record("interval_isometric", pairs.len() as u64, intervals);
    let balls = collect(pairs.par_iter().map(|&(v, w)| {
        let k = d.get(v, w);
        (!is_convex(g, d, &ball(d, v, k))).then(|| format!("B_{k}({v}) is not convex"))
    }));
    report.record("ball_convex", pairs.len() as u64, balls);
}

fn fail(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!cond).then(msg)
}

/// Star, fiber and boundary checks at one recursion node.
fn node_checks(
    g: &Graph,
    d: &DistanceMatrix,
    report: &mut InvariantReport,
) -> Result<FiberPartition, StructureError> {
    let n = g.n();
    let m = median_vertex(d);
    let star = build_star(g, d, m)?;
    let p = fiber_partition(g, d, &star)?;

    report.record(
        "star_apexes",
        star.apexes.len() as u64,
        apex_failures(g, d, &star),
    );
    report.record("partition", n as u64, partition_failures(d, &p, m));

    let balance: Vec<String> = (0..p.len())
        .filter(|&f| 2 * p.members[f].len() > n)
        .map(|f| {
            format!(
                "|F({})| = {} > n/2 = {}",
                p.roots[f],
                p.members[f].len(),
                n / 2
            )
        })
        .collect();
    report.record("balance", p.len() as u64, balance);

    let iso = collect((0..p.len()).into_par_iter().map(|f| {
        isometry_violation(g, d, &p.members[f])
            .map(|(a, b)| format!("F({}) not isometric at ({a},{b})", p.roots[f]))
    }));
    report.record("fiber_isometric", p.len() as u64, iso);

    let star_fail = collect((0..n).into_par_iter().map(|u| {
        let f = p.fiber_of[u];
        let x = p.roots[f];
        interval(d, u, x)
            .iter()
            .find(|&w| p.fiber_of[w] != f)
            .map(|w| format!("I({u},{x}) leaves F({x}) at {w}"))
    }));
    report.record("fiber_starshaped", n as u64, star_fail);

    let mut edge_fail = Vec::new();
    let mut edges = 0;
    for (u, v) in g.edges() {
        let (fu, fv) = (p.fiber_of[u], p.fiber_of[v]);
        if fu == fv || p.roles[fu] == Role::Center || p.roles[fv] == Role::Center {
            continue;
        }
        edges += 1;
        let (ru, rv) = (p.roles[fu], p.roles[fv]);
        // Adjacent neighbors of the median are panel roots joined by an edge.
        if ru == rv && !(u == p.roots[fu] && v == p.roots[fv] && ru == Role::Panel) {
            edge_fail.push(format!("edge {u}-{v} joins two {ru:?} fibers"));
        }
        if ru == rv {
            continue;
        }
        let ((pu, pf), (cv, cf)) = if ru == Role::Panel {
            ((u, fu), (v, fv))
        } else {
            ((v, fv), (u, fu))
        };
        let (x, y) = (p.roots[pf], p.roots[cf]);
        let k = d.get(cv, y);
        // At the panel root itself (u = x, v = y) the two distances are 0 and 1.
        let ok = g.has_edge(x, y)
            && d.get(cv, x) == k + 1
            && (k..=k + 1).contains(&d.get(pu, y))
            && (pu == x || d.get(pu, y) == d.get(pu, x));
        edge_fail.extend(fail(ok, || {
            format!(
                "panel-cone edge {pu}-{cv}: x={x}, y={y}, d(u,x)={}, d(u,y)={}, k={k}",
                d.get(pu, x),
                d.get(pu, y)
            )
        }));
    }
    report.record("cross_edges", edges, edge_fail);

    let mut trees: Vec<Option<TotalBoundaryTree>> = vec![None; p.len()];
    for f in (0..p.len()).filter(|&f| p.roles[f] != Role::Center) {
        trees[f] = Some(total_boundary(g, d, &p, f)?);
    }
    for tree in trees.iter().flatten() {
        boundary_checks(g, d, &p, tree, report);
    }

    // Entrances of cone vertices on both bordering panels.
    let mut entrance_fail = Vec::new();
    let mut entrances = 0;
    for c in (0..p.len()).filter(|&f| p.roles[f] == Role::Cone) {
        let (pa, pb) = p.cone_panels(&star, c).ok_or(StructureError::ConePanels {
            cone: p.roots[c],
            panels: 0,
        })?;
        for panel in [pa, pb] {
            let tree = trees[panel].as_ref().expect("panel tree");
            let results: Vec<Result<Option<String>, StructureError>> = p.members[c]
                .par_iter()
                .map(|&v| entrance_check(g, d, &p, tree, v, panel))
                .collect();
            for r in results {
                entrances += 1;
                entrance_fail.extend(r?);
            }
        }
    }
    report.record("entrance", entrances, entrance_fail);

    let mut exit_fail = Vec::new();
    let mut exit_count = 0;
    for f in (0..p.len()).filter(|&f| p.roles[f] == Role::Panel) {
        let tree = trees[f].as_ref().expect("panel tree");
        let results: Vec<Result<Option<String>, StructureError>> = p.members[f]
            .par_iter()
            .map(|&u| exit_check(g, d, tree, u))
            .collect();
        for r in results {
            exit_count += 1;
            exit_fail.extend(r?);
        }
    }
    report.record("exit_inequality", exit_count, exit_fail);
    Ok(p)
}

fn apex_failures(g: &Graph, d: &DistanceMatrix, star: &Star) -> Vec<String> {
    let mut out = Vec::new();
    for a in &star.apexes {
        let common = g.common_neighbors(a.vertex, star.center);
        let ok = d.get(a.vertex, star.center) == 2
            && common == [a.pair.0, a.pair.1]
            && g.has_edge(a.pair.0, a.pair.1);
        out.extend(fail(ok, || {
            format!("apex {} with pair {:?}", a.vertex, a.pair)
        }));
    }
    out
}

fn partition_failures(d: &DistanceMatrix, p: &FiberPartition, m: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut count = vec![0usize; d.n()];
    for (f, members) in p.members.iter().enumerate() {
        for &v in members {
            count[v] += 1;
            if p.fiber_of[v] != f {
                out.push(format!(
                    "vertex {v} listed in F({}) but mapped elsewhere",
                    p.roots[f]
                ));
            }
        }
        let expected = match d.get(p.roots[f], m) {
            0 => Role::Center,
            1 => Role::Panel,
            _ => Role::Cone,
        };
        if p.roles[f] != expected {
            out.push(format!("F({}) has role {:?}", p.roots[f], p.roles[f]));
        }
    }
    if p.members[0] != [m] {
        out.push(format!("F(m) = {:?}", p.members[0]));
    }
    out.extend(
        count
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 1)
            .map(|(v, c)| format!("vertex {v} lies in {c} fibers")),
    );
    out
}

fn boundary_checks(
    g: &Graph,
    d: &DistanceMatrix,
    p: &FiberPartition,
    tree: &TotalBoundaryTree,
    report: &mut InvariantReport,
) {
    let x = tree.root;
    let f = p.fiber_of[x];
    let mut fails = Vec::new();
    for (i, &v) in tree.members.iter().enumerate() {
        let expected = v == x || g.neighbors(v).iter().any(|&w| p.fiber_of[w] != f);
        fails.extend(fail(expected, || {
            format!("{v} in ∂*F({x}) without outside neighbor")
        }));
        if let Some(par) = tree.parent[i] {
            let pv = tree.members[par];
            let ok = g.has_edge(v, pv) && d.get(pv, x) + 1 == d.get(v, x);
            fails.extend(fail(ok, || {
                format!("parent {pv} of {v} in ∂*F({x}) is not a step toward the root")
            }));
        }
        // Starshaped: the whole interval to the root is the parent chain.
        let span = interval(d, v, x);
        fails.extend(fail(span.len() as u32 == tree.depth[i] + 1, || {
            format!(
                "I({v},{x}) has {} vertices, branch depth {}",
                span.len(),
                tree.depth[i]
            )
        }));
    }
    report.record("boundary_tree", tree.len() as u64, fails);

    let approx = collect((0..tree.len()).into_par_iter().map(|a| {
        (a + 1..tree.len()).find_map(|b| {
            let (u, v) = (tree.members[a], tree.members[b]);
            let (t, dg) = (tree.tree_distance(a, b), d.get(u, v));
            (t > 2 * dg).then(|| format!("∂*F({x}): tree distance {t} > 2·{dg} for ({u},{v})"))
        })
    }));
    report.record("boundary_two_approx", tree.len() as u64, approx);
}

fn entrance_check(
    g: &Graph,
    d: &DistanceMatrix,
    p: &FiberPartition,
    tree: &TotalBoundaryTree,
    v: usize,
    panel: usize,
) -> Result<Option<String>, StructureError> {
    let e = entrance(d, p, tree, v, panel)?;
    let row = d.row(v);
    let best = row[e];
    let proj: Vec<usize> = p.members[panel]
        .iter()
        .copied()
        .filter(|&a| row[a] == best)
        .collect();
    let h = g.induced(&proj);
    let local = bfs_distances(&h, proj.binary_search(&e).expect("entrance in projection"))
        .expect("valid vertex");
    if h.m() + 1 != proj.len() || local.contains(&u32::MAX) {
        return Ok(Some(format!(
            "projection of {v} on F({}) is not an induced tree",
            p.roots[panel]
        )));
    }
    let deep = local.iter().zip(&proj).find(|(&l, _)| l > u32::from(best));
    Ok(deep.map(|(l, q)| {
        format!("entrance {e} of {v}: depth {l} to {q} exceeds d(v, entrance) = {best}")
    }))
}

fn exit_check(
    g: &Graph,
    d: &DistanceMatrix,
    tree: &TotalBoundaryTree,
    u: usize,
) -> Result<Option<String>, StructureError> {
    let (a, b) = exits(g, d, tree, u)?;
    let (ia, ib) = (
        tree.position(a).expect("exit in tree"),
        tree.position(b).expect("exit in tree"),
    );
    Ok((0..tree.len()).find_map(|j| {
        let v = tree.members[j];
        let via =
            (d.get(u, a) + tree.tree_distance(ia, j)).min(d.get(u, b) + tree.tree_distance(ib, j));
        (via > 2 * d.get(u, v)).then(|| {
            format!(
                "exits ({a},{b}) of {u} give {via} > 2·{} to {v}",
                d.get(u, v)
            )
        })
    }))
}
