//! Exact decision procedures: a Gray-code brute-force oracle and a
//! branch-and-bound solver with relaxation pruning and forced-edge
//! propagation, plus demand-instance solving via reduction.
//!
//! The solver pipeline is: cap parallel edge bundles at `2k`; fail fast on an
//! undirected cut below `k`; recognize the sufficient pairwise-`2k`
//! edge-connectivity condition (then a witness surely exists and the search
//! runs unbudgeted); otherwise depth-first search over partial orientations,
//! pruning with the mixed relaxation bound, propagating forced edges to a
//! fixpoint, and branching on an undecided edge crossing a tightest
//! relaxation cut. The search is sequential and fully deterministic.

use crate::connectivity::{
    lambda, lambda_at_least, mixed_bound_raw, mixed_flow_at_least, mixed_min_cut_side,
    nash_williams_sufficient, necessary_cut_check, verify, SteinerInstance, Verdict,
};
use crate::graph::{
    orient, Dir, EdgeId, MultiGraph, Orientation, PartialDir, PartialOrientation, Sense, VertexId,
};
use crate::reductions::{lift_orientation, reduce_r};
use std::collections::BTreeMap;
use thiserror::Error;

/// Outcome of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// Feasible; the orientation passes `verify`.
    Yes(Orientation),
    /// Infeasible, established by exhaustive refutation or a violated cut.
    No,
    /// The node budget ran out after exploring this many search nodes.
    Unknown(u64),
}

impl SolveResult {
    /// True for `Yes`.
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveResult::Yes(_))
    }

    /// The verdict without the witness, for equality checks across runs.
    pub fn verdict_str(&self) -> &'static str {
        match self {
            SolveResult::Yes(_) => "yes",
            SolveResult::No => "no",
            SolveResult::Unknown(_) => "unknown",
        }
    }
}

/// Errors raised by the solver entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// The brute-force oracle enumerates `2^m` orientations and refuses
    /// oversized inputs.
    #[error("brute force supports at most {limit} edges, got {edge_count}")]
    TooManyEdges { edge_count: usize, limit: usize },
}

/// Errors raised when assembling an [`RInstance`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RInstanceError {
    #[error("demand pair ({vertex}, {vertex}) joins a vertex to itself")]
    SamePair { vertex: VertexId },
    #[error("demand endpoint {vertex} is out of range for a graph with {vertex_count} vertices")]
    PairOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
}

/// A demand instance: a multigraph plus a nonnegative integer demand per
/// ordered vertex pair. An orientation satisfies it when every pair `(u, v)`
/// has at least `R(u, v)` arc-disjoint directed `u`-to-`v` paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RInstance {
    graph: MultiGraph,
    demands: BTreeMap<(VertexId, VertexId), usize>,
}

impl RInstance {
    /// Validates and assembles a demand instance. Zero demands are kept but
    /// never constrain anything.
    pub fn new(
        graph: MultiGraph,
        demands: BTreeMap<(VertexId, VertexId), usize>,
    ) -> Result<RInstance, RInstanceError> {
        let n = graph.vertex_count();
        for (&(u, v), _) in &demands {
            for &x in &[u, v] {
                if x >= n {
                    return Err(RInstanceError::PairOutOfRange {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(RInstanceError::SamePair { vertex: u });
            }
        }
        Ok(RInstance { graph, demands })
    }

    /// The underlying multigraph.
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    /// The demand map.
    pub fn demands(&self) -> &BTreeMap<(VertexId, VertexId), usize> {
        &self.demands
    }

    /// Total demand.
    pub fn alpha(&self) -> usize {
        self.demands.values().sum()
    }
}

/// Back-map of [`cap_parallel`]: for each original edge, the surviving capped
/// edge that carries its direction and the sense relating their listings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapMap {
    /// Per original edge: `(capped edge, sense)`. Surviving edges point at
    /// their own image; removed duplicates at a surviving sibling.
    pub to_capped: Vec<(EdgeId, Sense)>,
}

impl CapMap {
    /// Expands an orientation of the capped graph to the original graph:
    /// removed duplicates copy the direction of their surviving sibling.
    pub fn lift(&self, capped: &Orientation) -> Orientation {
        Orientation::new(
            self.to_capped
                .iter()
                .map(|&(e, sense)| sense.apply(capped.dir(e)))
                .collect(),
        )
    }
}

/// Caps every parallel bundle at `2k` edges (more can never be needed: a
/// terminal consumes at most `k` through a pair in each direction).
/// Feasibility is preserved in both directions; the back-map orients each
/// removed duplicate like its first surviving sibling.
pub fn cap_parallel(inst: &SteinerInstance) -> (SteinerInstance, CapMap) {
    let g = inst.graph();
    let cap = 2 * inst.k();
    let mut kept_count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut first_kept: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    let mut keep = vec![false; g.edge_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let pair = (u.min(v), u.max(v));
        let c = kept_count.entry(pair).or_insert(0);
        if *c < cap {
            *c += 1;
            keep[e] = true;
            first_kept.entry(pair).or_insert(e);
        }
    }
    let mut new_id = vec![usize::MAX; g.edge_count()];
    let mut edges = Vec::new();
    for (e, &pair) in g.edges().iter().enumerate() {
        if keep[e] {
            new_id[e] = edges.len();
            edges.push(pair);
        }
    }
    let mut to_capped = Vec::with_capacity(g.edge_count());
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        if keep[e] {
            to_capped.push((new_id[e], Sense::Forward));
        } else {
            let (mn, mx) = (u.min(g.edges()[e].1), u.max(g.edges()[e].1));
            let sibling = first_kept[&(mn, mx)];
            let sense = if g.edges()[sibling].0 == u {
                Sense::Forward
            } else {
                Sense::Backward
            };
            to_capped.push((new_id[sibling], sense));
        }
    }
    let graph = build_capped(g.vertex_count(), &edges);
    let capped = SteinerInstance::new(graph, inst.root(), inst.terminals().to_vec(), inst.k())
        .expect("capping keeps the instance valid");
    (capped, CapMap { to_capped })
}

fn build_capped(n: usize, edges: &[(VertexId, VertexId)]) -> MultiGraph {
    crate::graph::build_multigraph(n, edges).expect("capping keeps edges valid")
}

/// Edge-count guard of [`brute_force_solve`].
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 24;

fn orientation_feasible(inst: &SteinerInstance, dirs: &[Dir]) -> bool {
    let d = orient(inst.graph(), &Orientation::new(dirs.to_vec()));
    inst.terminals()
        .iter()
        .all(|&s| lambda_at_least(&d, inst.root(), s, inst.k()).expect("valid instance pair"))
}

/// Enumerates all `2^m` orientations in Gray-code order (flipping edge
/// `trailing_zeros(i)` at step `i`) and returns the first feasible one, or
/// `No` after exhausting them. Deterministic; refuses more than
/// [`BRUTE_FORCE_EDGE_LIMIT`] edges.
pub fn brute_force_solve(inst: &SteinerInstance) -> Result<SolveResult, SolverError> {
    let m = inst.graph().edge_count();
    if m > BRUTE_FORCE_EDGE_LIMIT {
        return Err(SolverError::TooManyEdges {
            edge_count: m,
            limit: BRUTE_FORCE_EDGE_LIMIT,
        });
    }
    let mut dirs = vec![Dir::AsListed; m];
    if orientation_feasible(inst, &dirs) {
        return Ok(SolveResult::Yes(Orientation::new(dirs)));
    }
    for i in 1u64..(1u64 << m) {
        let e = i.trailing_zeros() as usize;
        dirs[e] = dirs[e].flip();
        if orientation_feasible(inst, &dirs) {
            return Ok(SolveResult::Yes(Orientation::new(dirs)));
        }
    }
    Ok(SolveResult::No)
}

enum Branch {
    Found(Orientation),
    Exhausted,
    Out,
}

/// Sequential branch-and-bound search over partial orientations.
struct Dfs<'a> {
    graph: &'a MultiGraph,
    root: VertexId,
    terminals: Vec<VertexId>,
    k: usize,
    budget: u64,
    nodes: u64,
}

impl<'a> Dfs<'a> {
    fn new(inst: &'a SteinerInstance, budget: u64) -> Dfs<'a> {
        Dfs {
            graph: inst.graph(),
            root: inst.root(),
            terminals: inst.terminals_ascending(),
            k: inst.k(),
            budget,
            nodes: 0,
        }
    }

    fn bounds_ok(&self, p: &PartialOrientation) -> bool {
        self.terminals
            .iter()
            .all(|&s| mixed_flow_at_least(self.graph, p, self.root, s, self.k))
    }

    /// Forces edges whose opposite direction would break some terminal's
    /// relaxation bound, repeating until nothing changes. `None` means the
    /// partial orientation cannot be completed feasibly.
    fn propagate(&self, mut p: PartialOrientation) -> Option<PartialOrientation> {
        if !self.bounds_ok(&p) {
            return None;
        }
        loop {
            let mut changed = false;
            for e in 0..p.len() {
                if p.get(e) != PartialDir::Undecided {
                    continue;
                }
                for d in [Dir::AsListed, Dir::Reversed] {
                    p.set(e, d.into());
                    let bad = !self.bounds_ok(&p);
                    p.set(e, PartialDir::Undecided);
                    if bad {
                        p.set(e, d.flip().into());
                        if !self.bounds_ok(&p) {
                            return None;
                        }
                        changed = true;
                        break;
                    }
                }
            }
            if !changed {
                return Some(p);
            }
        }
    }

    /// Branch edge: an undecided edge crossing a minimum relaxation cut of
    /// the terminal with the smallest bound (ties: smallest terminal id,
    /// then smallest edge id), tried cut-leaving first. Falls back to the
    /// smallest undecided edge.
    fn pick_edge(&self, p: &PartialOrientation) -> (EdgeId, Dir) {
        let mut tightest: Option<(usize, VertexId)> = None;
        for &s in &self.terminals {
            let b = mixed_bound_raw(self.graph, p, self.root, s);
            if tightest.map_or(true, |(best, _)| b < best) {
                tightest = Some((b, s));
            }
        }
        if let Some((_, s)) = tightest {
            let side = mixed_min_cut_side(self.graph, p, self.root, s);
            for e in 0..p.len() {
                if p.get(e) == PartialDir::Undecided {
                    let (u, v) = self.graph.endpoints(e);
                    if side[u] != side[v] {
                        let dir = if side[u] {
                            Dir::AsListed
                        } else {
                            Dir::Reversed
                        };
                        return (e, dir);
                    }
                }
            }
        }
        let e = (0..p.len())
            .find(|&e| p.get(e) == PartialDir::Undecided)
            .expect("caller checked for undecided edges");
        (e, Dir::AsListed)
    }

    fn search(&mut self, p: PartialOrientation) -> Branch {
        if self.nodes >= self.budget {
            return Branch::Out;
        }
        self.nodes += 1;
        let Some(p) = self.propagate(p) else {
            return Branch::Exhausted;
        };
        if p.undecided_count() == 0 {
            // All bounds passed with everything decided: exact feasibility.
            return Branch::Found(p.complete().expect("no undecided edges"));
        }
        let (e, first) = self.pick_edge(&p);
        for d in [first, first.flip()] {
            let mut q = p.clone();
            q.set(e, d.into());
            match self.search(q) {
                Branch::Found(o) => return Branch::Found(o),
                Branch::Out => return Branch::Out,
                Branch::Exhausted => {}
            }
        }
        Branch::Exhausted
    }
}

fn assert_sound(inst: &SteinerInstance, o: &Orientation) {
    assert_eq!(
        verify(inst, o),
        Verdict::Ok,
        "solver produced an orientation that fails verification"
    );
}

/// Decides feasibility of an instance within a search-node budget.
///
/// Agrees with [`brute_force_solve`] whenever both complete. `Yes` carries a
/// verified witness orientation; `No` is exhaustive; `Unknown` reports the
/// nodes explored when the budget ran out.
pub fn solve(inst: &SteinerInstance, budget: u64) -> SolveResult {
    let (capped, capmap) = cap_parallel(inst);
    if necessary_cut_check(&capped).is_some() {
        return SolveResult::No;
    }
    if capped.terminals().is_empty() {
        let o = capmap.lift(&Orientation::all_as_listed(capped.graph().edge_count()));
        assert_sound(inst, &o);
        return SolveResult::Yes(o);
    }
    // When the sufficient condition holds a witness exists, so the search
    // may run unbudgeted; it only has to find one.
    let effective_budget = if nash_williams_sufficient(&capped) {
        u64::MAX
    } else {
        budget
    };
    let mut dfs = Dfs::new(&capped, effective_budget);
    match dfs.search(PartialOrientation::undecided(capped.graph().edge_count())) {
        Branch::Found(o) => {
            let lifted = capmap.lift(&o);
            assert_sound(inst, &lifted);
            SolveResult::Yes(lifted)
        }
        Branch::Exhausted => SolveResult::No,
        Branch::Out => SolveResult::Unknown(dfs.nodes),
    }
}

/// Like [`solve`], but only completions of `fixed` are searched. No bundle
/// capping or sufficiency shortcut applies; the fast refutation is the
/// relaxation bound of `fixed` itself.
pub fn solve_with_preoriented(
    inst: &SteinerInstance,
    fixed: &PartialOrientation,
    budget: u64,
) -> SolveResult {
    assert_eq!(
        fixed.len(),
        inst.graph().edge_count(),
        "partial orientation covers {} edges but the graph has {}",
        fixed.len(),
        inst.graph().edge_count()
    );
    let mut dfs = Dfs::new(inst, budget);
    match dfs.search(fixed.clone()) {
        Branch::Found(o) => {
            assert_sound(inst, &o);
            SolveResult::Yes(o)
        }
        Branch::Exhausted => SolveResult::No,
        Branch::Out => SolveResult::Unknown(dfs.nodes),
    }
}

/// Decides whether the demand instance admits an orientation meeting every
/// demand, by reduction to a Steiner instance with requirement `alpha`.
pub fn solve_r(rinst: &RInstance, budget: u64) -> SolveResult {
    if rinst.demands().values().all(|&w| w == 0) {
        return SolveResult::Yes(Orientation::all_as_listed(rinst.graph().edge_count()));
    }
    let red = reduce_r(rinst).expect("positive demand present");
    match solve(&red.instance, budget) {
        SolveResult::Yes(o) => {
            let lifted = lift_orientation(&red, &o).expect("solver witness verifies");
            let d = orient(rinst.graph(), &lifted);
            for (&(u, v), &w) in rinst.demands() {
                if w > 0 {
                    let found = lambda(&d, u, v).expect("demand pair is valid");
                    assert!(
                        found >= w,
                        "lifted orientation meets only {found} of demand {w} for ({u}, {v})"
                    );
                }
            }
            SolveResult::Yes(lifted)
        }
        SolveResult::No => SolveResult::No,
        SolveResult::Unknown(nodes) => SolveResult::Unknown(nodes),
    }
}
