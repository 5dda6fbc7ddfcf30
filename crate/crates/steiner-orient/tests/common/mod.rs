//! Shared oracles and seeded generators for the integration suites.
//!
//! The oracles here take the slowest possible route on purpose: vertex
//! subsets are enumerated as bitmasks and cut values counted directly, so
//! they share no code path with the library's flow-based machinery.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steiner_orient::connectivity::SteinerInstance;
use steiner_orient::graph::{build_multigraph, DiGraph, Dir, MultiGraph, Orientation, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum number of arcs leaving any vertex set containing `r` but not
/// `s`, by exhaustive subset enumeration (Menger ground truth).
pub fn subset_lambda_directed(
    n: usize,
    arcs: &[(VertexId, VertexId)],
    r: VertexId,
    s: VertexId,
) -> usize {
    assert!(n <= 20, "subset oracle is exponential in n");
    assert_ne!(r, s);
    let mut best = usize::MAX;
    for mask in 0u32..(1 << n) {
        if mask & (1 << r) == 0 || mask & (1 << s) != 0 {
            continue;
        }
        let cross = arcs
            .iter()
            .filter(|&&(u, v)| mask & (1 << u) != 0 && mask & (1 << v) == 0)
            .count();
        best = best.min(cross);
    }
    best
}

/// Undirected analogue: edges with exactly one endpoint inside count.
pub fn subset_lambda_undirected(g: &MultiGraph, r: VertexId, s: VertexId) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "subset oracle is exponential in n");
    assert_ne!(r, s);
    let mut best = usize::MAX;
    for mask in 0u32..(1 << n) {
        if mask & (1 << r) == 0 || mask & (1 << s) != 0 {
            continue;
        }
        let cross = g
            .edges()
            .iter()
            .filter(|&&(u, v)| (mask & (1 << u) != 0) != (mask & (1 << v) != 0))
            .count();
        best = best.min(cross);
    }
    best
}

/// The arcs an orientation induces, in edge order.
pub fn oriented_arcs(g: &MultiGraph, o: &Orientation) -> Vec<(VertexId, VertexId)> {
    g.edges()
        .iter()
        .zip(o.dirs())
        .map(|(&(u, v), &d)| if d == Dir::AsListed { (u, v) } else { (v, u) })
        .collect()
}

/// Feasibility of an orientation by the subset oracle: every terminal's
/// min cut from the root is at least k.
pub fn feasible_by_cuts(inst: &SteinerInstance, o: &Orientation) -> bool {
    let arcs = oriented_arcs(inst.graph(), o);
    let n = inst.graph().vertex_count();
    inst.terminals()
        .iter()
        .all(|&s| subset_lambda_directed(n, &arcs, inst.root(), s) >= inst.k())
}

/// Decides feasibility by enumerating all `2^m` orientations against the
/// subset oracle; completely independent of the library solver.
pub fn feasible_by_full_enumeration(inst: &SteinerInstance) -> bool {
    let m = inst.graph().edge_count();
    assert!(
        m <= 16,
        "orientation enumeration oracle is exponential in m"
    );
    for mask in 0u32..(1 << m) {
        let dirs: Vec<Dir> = (0..m)
            .map(|e| {
                if mask & (1 << e) != 0 {
                    Dir::Reversed
                } else {
                    Dir::AsListed
                }
            })
            .collect();
        if feasible_by_cuts(inst, &Orientation::new(dirs)) {
            return true;
        }
    }
    false
}

/// All tight `s`-cut sides as bitmasks: `r` inside, `s` outside, exactly
/// `k` arcs leaving.
pub fn tight_cut_masks(d: &DiGraph, r: VertexId, s: VertexId, k: usize) -> Vec<u32> {
    let n = d.vertex_count();
    assert!(n <= 20, "subset oracle is exponential in n");
    let mut tight = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << r) == 0 || mask & (1 << s) != 0 {
            continue;
        }
        let cross = d
            .arcs()
            .iter()
            .filter(|&&(u, v)| mask & (1 << u) != 0 && mask & (1 << v) == 0)
            .count();
        if cross == k {
            tight.push(mask);
        }
    }
    tight
}

/// A random multigraph on `n` vertices with `m` edges; connected whenever
/// `m >= n - 1` (spanning-skeleton first, then random pairs).
pub fn random_connected_multigraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MultiGraph {
    assert!(n >= 2);
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        if edges.len() >= m {
            break;
        }
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    build_multigraph(n, &edges).expect("generator avoids loops")
}

/// Distinct member vertices: a root plus `t` terminals.
pub fn random_members(rng: &mut ChaCha8Rng, n: usize, t: usize) -> (VertexId, Vec<VertexId>) {
    assert!(t < n);
    let mut order: Vec<VertexId> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    (order[0], order[1..=t].to_vec())
}

/// A seeded random instance within the given bounds; the graph is
/// connected when the edge count allows, but feasibility is not forced.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    n_max: usize,
    m_max: usize,
    k_max: usize,
    t_max: usize,
) -> SteinerInstance {
    let n = rng.random_range(2..=n_max);
    let m = rng.random_range(1..=m_max);
    let k = rng.random_range(1..=k_max);
    let t = rng.random_range(1..=t_max.min(n - 1));
    let g = random_connected_multigraph(rng, n, m);
    let (root, terminals) = random_members(rng, n, t);
    SteinerInstance::new(g, root, terminals, k).expect("members are distinct")
}

/// A random digraph on `n` vertices with `m` arcs (no loops).
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DiGraph {
    assert!(n >= 2);
    let mut arcs = Vec::with_capacity(m);
    while arcs.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            arcs.push((u, v));
        }
    }
    DiGraph::new(n, arcs).expect("generator avoids loops")
}

pub fn random_orientation(rng: &mut ChaCha8Rng, m: usize) -> Orientation {
    Orientation::new(
        (0..m)
            .map(|_| {
                if rng.random_range(0..2) == 0 {
                    Dir::AsListed
                } else {
                    Dir::Reversed
                }
            })
            .collect(),
    )
}

/// A random instance whose members have degree exactly `k` and whose
/// internal vertices have degree exactly 3, built by pairing degree stubs;
/// `None` when the draw produced a loop (caller retries).
pub fn random_three_regular_instance(
    rng: &mut ChaCha8Rng,
    k: usize,
    t: usize,
    n: usize,
) -> Option<SteinerInstance> {
    assert!(n >= t + 1);
    let mut stubs = Vec::new();
    for v in 0..=t {
        for _ in 0..k {
            stubs.push(v);
        }
    }
    for v in (t + 1)..n {
        for _ in 0..3 {
            stubs.push(v);
        }
    }
    if stubs.len() % 2 != 0 {
        return None;
    }
    for i in (1..stubs.len()).rev() {
        let j = rng.random_range(0..=i);
        stubs.swap(i, j);
    }
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    for pair in stubs.chunks(2) {
        if pair[0] == pair[1] {
            return None;
        }
        edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
    }
    let g = build_multigraph(n, &edges).expect("loops were rejected");
    Some(SteinerInstance::new(g, 0, (1..=t).collect(), k).expect("members are distinct"))
}

/// Every multigraph on `n` labeled vertices with per-pair multiplicity at
/// most `max_mult` and at most `m_max` edges, as edge lists.
pub fn all_multigraph_edge_lists(
    n: usize,
    max_mult: usize,
    m_max: usize,
) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let mut result = Vec::new();
    let mut mults = vec![0usize; pairs.len()];
    loop {
        let total: usize = mults.iter().sum();
        if total <= m_max {
            let mut edges = Vec::with_capacity(total);
            for (&(u, v), &c) in pairs.iter().zip(&mults) {
                for _ in 0..c {
                    edges.push((u, v));
                }
            }
            result.push(edges);
        }
        // Odometer increment over multiplicity vectors.
        let mut i = 0;
        loop {
            if i == mults.len() {
                return result;
            }
            if mults[i] < max_mult {
                mults[i] += 1;
                break;
            }
            mults[i] = 0;
            i += 1;
        }
    }
}
