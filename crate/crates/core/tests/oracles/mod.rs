//! Independent reference implementations used to cross-check the library.
//! Nothing here calls the closed forms it is compared against.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use cobweb_core::premetric::{FinitePremetricSpace, PointSet};
use cobweb_core::tower::{Layered, TowerPoint};
use cobweb_core::{GammaPoint, NonNegRational};
use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};

/// Position of a graph point: a vertex, or `t` along the oriented arc `x → y`.
fn position<P: Clone + Ord>(a: &GammaPoint<P>) -> (Vec<P>, Option<(P, P, NonNegRational)>) {
    match a {
        GammaPoint::Vertex(v) => (vec![v.clone()], None),
        GammaPoint::Edge(x, y, t) => (vec![x.clone(), y.clone()], Some((x.clone(), y.clone(), *t))),
    }
}

/// Shortest path between `a` and `b` in the complete oriented graph over the
/// vertices they touch, with both points inserted as subdivision nodes.
pub fn graph_distance<P: Clone + Ord + Debug>(a: &GammaPoint<P>, b: &GammaPoint<P>) -> NonNegRational {
    let (mut verts, pa) = position(a);
    let (vb, pb) = position(b);
    verts.extend(vb);
    let verts: BTreeSet<P> = verts.into_iter().collect();

    let mut g: UnGraph<(), NonNegRational> = UnGraph::new_undirected();
    let vix: BTreeMap<P, NodeIndex> = verts.iter().map(|v| (v.clone(), g.add_node(()))).collect();
    let ia = g.add_node(());
    let ib = g.add_node(());
    let mut on_arc: BTreeMap<(P, P), Vec<(NonNegRational, NodeIndex)>> = BTreeMap::new();
    for (p, node, point) in [(&pa, ia, a), (&pb, ib, b)] {
        match p {
            Some((x, y, t)) => on_arc.entry((x.clone(), y.clone())).or_default().push((*t, node)),
            None => {
                let v = match point {
                    GammaPoint::Vertex(v) => v,
                    _ => unreachable!(),
                };
                g.add_edge(node, vix[v], NonNegRational::ZERO);
            }
        }
    }
    for x in &verts {
        for y in &verts {
            if x == y {
                continue;
            }
            let mut chain = vec![(NonNegRational::ZERO, vix[x])];
            let mut inner = on_arc.get(&(x.clone(), y.clone())).cloned().unwrap_or_default();
            inner.sort();
            chain.extend(inner);
            chain.push((NonNegRational::ONE, vix[y]));
            for w in chain.windows(2) {
                g.add_edge(w[0].1, w[1].1, w[1].0.abs_diff(w[0].0));
            }
        }
    }
    dijkstra(&g, ia, Some(ib), |e| *e.weight())[&ib]
}

pub type Node = (usize, usize, u64);

/// All-pairs distances on the discretization of the complete oriented graph
/// over `n` vertices with every arc cut into `den` unit steps. Node ids are
/// `(x, y, k)` for the point `k/den` along `x → y` (`0 < k < den`) and
/// `(x, x, 0)` for vertices; weights count steps.
pub fn discretized_all_pairs(n: usize, den: u64) -> BTreeMap<(Node, Node), u64> {
    let mut g: UnGraph<Node, u64> = UnGraph::new_undirected();
    let verts: Vec<NodeIndex> = (0..n).map(|x| g.add_node((x, x, 0))).collect();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let mut prev = verts[x];
            for k in 1..den {
                let node = g.add_node((x, y, k));
                g.add_edge(prev, node, 1);
                prev = node;
            }
            g.add_edge(prev, verts[y], 1);
        }
    }
    let mut out = BTreeMap::new();
    for s in g.node_indices() {
        for (t, d) in dijkstra(&g, s, None, |e| *e.weight()) {
            out.insert((g[s], g[t]), d);
        }
    }
    out
}

/// Graph distance between two level-`n` tower points, `n ≥ 1`.
pub fn layered_distance<P: Clone + Ord + Debug>(a: &Layered<P>, b: &Layered<P>) -> NonNegRational {
    let (Some(ga), Some(gb)) = (a.as_gamma(), b.as_gamma()) else {
        panic!("level-0 points have no graph distance");
    };
    graph_distance(ga, gb)
}

/// Coordinate `n` of a stem, extended by wrapping the last coordinate in
/// vertices.
pub fn coordinate<P: Clone + Eq + Debug>(a: &TowerPoint<P>, n: usize) -> Layered<P> {
    let stem = a.stem();
    let mut x = stem[stem.len().min(n) - 1].clone();
    for _ in stem.len()..n {
        x = Layered::Gamma(Box::new(GammaPoint::Vertex(x)));
    }
    x
}

/// `max_{n ≤ levels} d_n(a_n, b_n)/n` by explicit lifting and path search.
pub fn tower_max<P: Clone + Ord + Debug>(a: &TowerPoint<P>, b: &TowerPoint<P>, levels: usize) -> NonNegRational {
    (1..=levels)
        .map(|n| layered_distance(&coordinate(a, n), &coordinate(b, n)) / NonNegRational::integer(n as u64))
        .max()
        .unwrap_or(NonNegRational::ZERO)
}

/// The sets `{y : d(x, y) ≤ v}` for every value `v` in row `x`; every open
/// ball `B(x, r)` of a finite space is one of them.
fn balls(space: &FinitePremetricSpace, x: usize) -> Vec<PointSet> {
    let row: BTreeSet<NonNegRational> = space.points().map(|y| space.d(x, y)).collect();
    row.into_iter().map(|v| PointSet::from_indices(space.points().filter(|&y| space.d(x, y) <= v))).collect()
}

/// Open sets of the premetric topology by enumeration of all subsets.
pub fn open_sets(space: &FinitePremetricSpace) -> Vec<PointSet> {
    let n = space.len();
    (0..1u64 << n).map(PointSet).filter(|u| u.iter().all(|x| balls(space, x).iter().any(|b| b.is_subset(*u)))).collect()
}

fn interior(open: &[PointSet], a: PointSet) -> PointSet {
    open.iter().filter(|u| u.is_subset(a)).fold(PointSet::EMPTY, |acc, u| acc.union(*u))
}

/// Every ball is a neighbourhood of its centre.
pub fn is_basic(space: &FinitePremetricSpace) -> bool {
    let open = open_sets(space);
    space.points().all(|x| balls(space, x).iter().all(|b| interior(&open, *b).contains(x)))
}

/// For every subset, the restricted premetric generates the subspace topology.
pub fn is_hereditary(space: &FinitePremetricSpace) -> bool {
    let open = open_sets(space);
    (1..1u64 << space.len()).map(PointSet).all(|a| {
        let (sub, embed) = space.restrict(a);
        let own: BTreeSet<PointSet> =
            open_sets(&sub).into_iter().map(|u| PointSet::from_indices(u.iter().map(|i| embed[i]))).collect();
        let induced: BTreeSet<PointSet> = open.iter().map(|u| u.intersection(a)).collect();
        own == induced
    })
}

/// Distinct points have disjoint balls of some radius.
pub fn is_2_separating(space: &FinitePremetricSpace) -> bool {
    space
        .points()
        .all(|x| space.points().all(|y| x == y || balls(space, x)[0].intersection(balls(space, y)[0]).is_empty()))
}

/// In a finite space a sequence converges to `x` iff it is eventually in the
/// minimal open neighbourhood of `x`, so limits are unique iff these are
/// pairwise disjoint.
pub fn is_seq_hausdorff(space: &FinitePremetricSpace) -> bool {
    let open = open_sets(space);
    let minimal = |x: usize| {
        open.iter().filter(|u| u.contains(x)).fold(PointSet::full(space.len()), |acc, u| acc.intersection(*u))
    };
    space.points().all(|x| space.points().all(|y| x == y || minimal(x).intersection(minimal(y)).is_empty()))
}

/// Symmetry and triangle inequality of `min(1, d)`.
pub fn truncation_is_pseudometric(space: &FinitePremetricSpace) -> bool {
    let d = |i, j| space.d(i, j).min(NonNegRational::ONE);
    space
        .points()
        .all(|x| space.points().all(|y| d(x, y) == d(y, x) && space.points().all(|z| d(x, z) <= d(x, y) + d(y, z))))
}

/// Every triangle has its two largest sides equal.
pub fn isoceles(space: &FinitePremetricSpace) -> bool {
    space.points().all(|x| {
        space.points().all(|y| {
            space.points().all(|z| {
                let mut s = [space.d(x, y), space.d(y, z), space.d(x, z)];
                s.sort();
                s[1] == s[2]
            })
        })
    })
}
