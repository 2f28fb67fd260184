use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{subgroup_closure, CayleyTable, Elem, ElementSet};
use crate::par;

/// Graph on the group elements with an edge between every non-commuting
/// pair.
#[derive(Clone, Debug)]
pub struct NonCommutingGraph {
    adj: Vec<ElementSet>,
}

impl NonCommutingGraph {
    pub fn new(g: &CayleyTable) -> Self {
        let n = g.order();
        let adj = par::map_range(n, |a| {
            let a = a as Elem;
            ElementSet::from_elements(n, g.elements().filter(|&b| g.mul(a, b) != g.mul(b, a)))
        });
        NonCommutingGraph { adj }
    }

    pub fn adjacent(&self, a: Elem, b: Elem) -> bool {
        self.adj[a as usize].contains(b)
    }

    pub fn degree(&self, a: Elem) -> usize {
        self.adj[a as usize].len()
    }

    pub fn neighbours(&self, a: Elem) -> &ElementSet {
        &self.adj[a as usize]
    }

    /// Connected components of the subgraph induced on `within`, each
    /// listed once, ordered by smallest member.
    pub fn components(&self, within: &ElementSet) -> Vec<ElementSet> {
        let n = self.adj.len();
        let mut seen = ElementSet::empty(n);
        let mut out = Vec::new();
        for start in within.iter() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = ElementSet::empty(n);
            comp.insert(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.adj[v as usize].intersection(within).iter() {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentDecomposition {
    /// The stable set `M`.
    pub m: ElementSet,
    /// `M_1 ⊆ M_2 ⊆ ...` as computed.
    pub stages: Vec<ElementSet>,
    /// Components of the non-commuting graph on `M`.
    pub components: Vec<ElementSet>,
    /// The subgroup generated by each component.
    pub generated: Vec<ElementSet>,
}

/// Grows `M` by maximal-centralizer layers: `M_1` holds the non-central
/// elements with the largest centralizer, and each later stage adds every
/// element outside `<M_i>` whose centralizer is largest among those. The
/// components of the non-commuting graph on the stable set generate the
/// non-Abelian components.
pub fn non_abelian_components(g: &CayleyTable) -> Result<ComponentDecomposition> {
    let n = g.order();
    let graph = NonCommutingGraph::new(g);
    let centralizer: Vec<usize> = (0..n as Elem).map(|x| n - graph.degree(x)).collect();
    let layer = |candidates: &mut dyn Iterator<Item = Elem>| -> Vec<Elem> {
        let cands: Vec<Elem> = candidates.collect();
        let best = cands.iter().map(|&x| centralizer[x as usize]).max();
        cands.into_iter().filter(|&x| Some(centralizer[x as usize]) == best).collect()
    };
    let first = layer(&mut (0..n as Elem).filter(|&x| centralizer[x as usize] < n));
    if first.is_empty() {
        return Err(Error::AbelianInput);
    }
    let mut m = ElementSet::from_elements(n, first);
    let mut stages = vec![m.clone()];
    loop {
        let span = subgroup_closure(g, &m);
        if span.len() == n {
            break;
        }
        for x in layer(&mut (0..n as Elem).filter(|&x| !span.contains(x))) {
            m.insert(x);
        }
        stages.push(m.clone());
    }
    let components = graph.components(&m);
    let generated = components.iter().map(|c| subgroup_closure(g, c)).collect();
    Ok(ComponentDecomposition { m, stages, components, generated })
}
