//! The multiplication-gadget graph of a group and graph WL on it.
//!
//! Every ordered pair `(g, h)` gets a gadget of four fresh vertices
//! `a, b, c, d` with edges `{g,a} {a,b} {h,b} {b,c} {c,d} {gh,d}`, so the
//! gadget is a tree in which `h`, `g` and `gh` hang at distances 1, 2 and 3
//! from `b`. The five-edge shape without `{a,b}` is available as
//! [`GadgetShape::Listed`]; there `a` is a pendant vertex, and the graph is
//! the same for every group of a given order.
//!
//! Vertex ids are the group elements `[0, n)` followed by the `a`, `b`, `c`
//! and `d` blocks, each ordered by pair index `g*n + h`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::wl::{check_budget, drive, ColoredGroup, RunResult, TupleColoring, WlConfig};

/// Colour token carried by every gadget vertex.
pub const GADGET_TOKEN: u64 = u64::MAX;

/// An undirected simple graph with sorted adjacency lists and vertex tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<u32>>,
    colors: Vec<u64>,
}

impl ColoredGraph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)], colors: Vec<u64>) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::InvalidParameter("colour vector length differs from vertex count".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n || u == v {
                return Err(Error::InvalidParameter(format!("bad edge {{{u}, {v}}}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ColoredGraph { adj, colors })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u as u32).map(move |&v| (u as u32, v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Group(Elem),
    Gadget { kind: Kind, g: Elem, h: Elem },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetShape {
    /// Six edges per gadget, including `{a,b}`.
    #[default]
    Connected,
    /// Five edges per gadget: `{g,a} {h,b} {b,c} {c,d} {gh,d}`.
    Listed,
}

impl GadgetShape {
    pub fn edges_per_gadget(self) -> usize {
        match self {
            GadgetShape::Connected => 6,
            GadgetShape::Listed => 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GadgetGraph {
    n: usize,
    shape: GadgetShape,
    graph: ColoredGraph,
}

impl GadgetGraph {
    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> GadgetShape {
        self.shape
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn vertex(&self, kind: Kind, g: Elem, h: Elem) -> u32 {
        let block = match kind {
            Kind::A => 0,
            Kind::B => 1,
            Kind::C => 2,
            Kind::D => 3,
        };
        (self.n + block * self.n * self.n + g as usize * self.n + h as usize) as u32
    }

    pub fn origin(&self, v: u32) -> Origin {
        let n = self.n;
        let v = v as usize;
        if v < n {
            return Origin::Group(v as Elem);
        }
        let r = v - n;
        let kind = [Kind::A, Kind::B, Kind::C, Kind::D][r / (n * n)];
        let p = r % (n * n);
        Origin::Gadget { kind, g: (p / n) as Elem, h: (p % n) as Elem }
    }

    /// Plain edge-list text: a `vertices edges` header, a comment block
    /// naming the vertex ranges, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let n = self.n;
        let nn = n * n;
        let mut s = format!("{} {}\n", self.graph.vertex_count(), self.graph.edge_count());
        let _ = writeln!(s, "# group {} {}", 0, n);
        for (i, name) in ["a", "b", "c", "d"].iter().enumerate() {
            let _ = writeln!(s, "# {name} {} {}", n + i * nn, n + (i + 1) * nn);
        }
        for (u, v) in self.graph.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Builds the connected gadget graph. Group vertices keep the element
/// colours, gadget vertices all get [`GADGET_TOKEN`].
pub fn build_gadget_graph(a: &ColoredGroup, budget: u64) -> Result<GadgetGraph> {
    build_gadget_graph_with(a, GadgetShape::Connected, budget)
}

pub fn build_gadget_graph_with(a: &ColoredGroup, shape: GadgetShape, budget: u64) -> Result<GadgetGraph> {
    let g = a.group();
    let n = g.order();
    let vertices = n as u128 + 4 * (n as u128) * (n as u128);
    if vertices > budget as u128 {
        return Err(Error::MemoryBudget { records: vertices, budget });
    }
    if a.colors().contains(&GADGET_TOKEN) {
        return Err(Error::TokenCollision(GADGET_TOKEN));
    }
    let nn = n * n;
    let total = n + 4 * nn;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); total];
    for x in 0..n as Elem {
        for y in 0..n as Elem {
            let p = x as usize * n + y as usize;
            let [va, vb, vc, vd] = [0, 1, 2, 3].map(|b| (n + b * nn + p) as u32);
            let xy = g.mul(x, y);
            adj[x as usize].push(va);
            adj[va as usize].push(x);
            if shape == GadgetShape::Connected {
                adj[va as usize].push(vb);
                adj[vb as usize].push(va);
            }
            adj[y as usize].push(vb);
            adj[vb as usize].push(y);
            adj[vb as usize].push(vc);
            adj[vc as usize].push(vb);
            adj[vc as usize].push(vd);
            adj[vd as usize].push(vc);
            adj[xy as usize].push(vd);
            adj[vd as usize].push(xy);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut colors = a.colors().to_vec();
    colors.resize(total, GADGET_TOKEN);
    Ok(GadgetGraph { n, shape, graph: ColoredGraph { adj, colors } })
}

/// Initial colouring of `k`-tuples of vertices: equality pattern,
/// adjacency pattern and vertex colours, shared across all graphs.
pub fn graph_initial_coloring(graphs: &[&ColoredGraph], k: usize) -> Result<TupleColoring> {
    if k == 0 {
        return Err(Error::DimensionZero);
    }
    if k * (k - 1) > 128 {
        return Err(Error::DimensionTooLarge(k));
    }
    let sizes: Vec<usize> = graphs.iter().map(|g| g.vertex_count()).collect();
    let base = TupleColoring::from_chunk_keys(
        k,
        &sizes,
        || vec![0u32; k],
        |buf, s, t| {
            let n = sizes[s];
            let mut t = t;
            for slot in buf.iter_mut().rev() {
                *slot = (t % n) as u32;
                t /= n;
            }
            let mut key = 0u128;
            for i in 0..k {
                for j in i + 1..k {
                    key = (key << 2) | ((buf[i] == buf[j]) as u128) << 1 | graphs[s].adjacent(buf[i], buf[j]) as u128;
                }
            }
            key
        },
    );
    let tokens: Vec<&[u64]> = graphs.iter().map(|g| g.colors()).collect();
    Ok(base.with_point_tokens(&tokens))
}

/// Runs graph k-WL on two coloured graphs with a shared dictionary. The
/// `version` field of the configuration is ignored.
pub fn run_wl_graph(g1: &ColoredGraph, g2: &ColoredGraph, cfg: &WlConfig) -> Result<RunResult> {
    check_budget(&[g1.vertex_count(), g2.vertex_count()], cfg.k, cfg.budget)?;
    let init = graph_initial_coloring(&[g1, g2], cfg.k)?;
    drive(init, cfg.max_rounds, cfg.counting, cfg.mode)
}

/// Builds both gadget graphs, runs graph WL and restricts the element
/// colours to group vertices.
pub fn version3_group_test(a: &ColoredGroup, b: &ColoredGroup, cfg: &WlConfig) -> Result<RunResult> {
    let ga = build_gadget_graph(a, cfg.budget)?;
    let gb = build_gadget_graph(b, cfg.budget)?;
    let mut r = run_wl_graph(ga.graph(), gb.graph(), cfg)?;
    r.element_colors[0].truncate(ga.group_order());
    r.element_colors[1].truncate(gb.group_order());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_abelian, make_cyclic};
    use crate::wl::DEFAULT_BUDGET;

    #[test]
    fn tiny_counts() {
        let t = make_cyclic(1);
        let gg = build_gadget_graph(&ColoredGroup::uncolored(&t), DEFAULT_BUDGET).unwrap();
        assert_eq!((gg.graph().vertex_count(), gg.graph().edge_count()), (5, 6));
        let z2 = make_cyclic(2);
        let gg = build_gadget_graph(&ColoredGroup::uncolored(&z2), DEFAULT_BUDGET).unwrap();
        assert_eq!((gg.graph().vertex_count(), gg.graph().edge_count()), (18, 24));
        let listed = build_gadget_graph_with(&ColoredGroup::uncolored(&z2), GadgetShape::Listed, DEFAULT_BUDGET).unwrap();
        assert_eq!((listed.graph().vertex_count(), listed.graph().edge_count()), (18, 20));
    }

    #[test]
    fn origins_round_trip() {
        let g = make_cyclic(3);
        let gg = build_gadget_graph(&ColoredGroup::uncolored(&g), DEFAULT_BUDGET).unwrap();
        for v in 0..gg.graph().vertex_count() as u32 {
            match gg.origin(v) {
                Origin::Group(x) => assert_eq!(x, v),
                Origin::Gadget { kind, g: x, h } => assert_eq!(gg.vertex(kind, x, h), v),
            }
        }
        let d = gg.vertex(Kind::D, 2, 2);
        assert!(gg.graph().adjacent(d, g.mul(2, 2)));
    }

    #[test]
    fn edge_list_header() {
        let g = make_cyclic(2);
        let gg = build_gadget_graph(&ColoredGroup::uncolored(&g), DEFAULT_BUDGET).unwrap();
        let text = gg.to_edge_list();
        assert!(text.starts_with("18 24\n# group 0 2\n# a 2 6\n"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 25);
    }

    #[test]
    fn z4_vs_klein_distinguished() {
        let z4 = make_cyclic(4);
        let v4 = make_abelian(&[2, 2]).unwrap();
        let r = version3_group_test(
            &ColoredGroup::uncolored(&z4),
            &ColoredGroup::uncolored(&v4),
            &WlConfig::new(2, crate::wl::Version::I),
        )
        .unwrap();
        assert!(r.distinguished);
        assert_eq!(r.element_colors[0].len(), 4);
    }

    #[test]
    fn listed_shape_forgets_the_group() {
        let z4 = make_cyclic(4);
        let v4 = make_abelian(&[2, 2]).unwrap();
        let build = |g| build_gadget_graph_with(&ColoredGroup::uncolored(g), GadgetShape::Listed, DEFAULT_BUDGET).unwrap();
        let (a, b) = (build(&z4), build(&v4));
        let r = run_wl_graph(a.graph(), b.graph(), &WlConfig::new(2, crate::wl::Version::I)).unwrap();
        assert!(!r.distinguished);
    }
}
