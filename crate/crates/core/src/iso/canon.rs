use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::{build_gadget_graph, graph_initial_coloring};
use crate::group::{CayleyTable, Elem, SubgroupBuilder};
use crate::wl::{check_budget, drive, structure_coloring, ColoredGroup, SignatureMode, TupleColoring, Version};

/// Which WL variant drives canonization. `III` runs graph WL on the gadget
/// graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    I,
    II,
    III,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "I" | "i" => Ok(Variant::I),
            "2" | "II" | "ii" => Ok(Variant::II),
            "3" | "III" | "iii" => Ok(Variant::III),
            _ => Err(Error::InvalidParameter(format!("unknown WL version {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CanonConfig {
    /// Dimension under which WL is assumed to identify the class; the runs
    /// use `k + 1`.
    pub k: usize,
    pub variant: Variant,
    pub counting: bool,
    /// Rounds per WL run, the initial colouring being round 1.
    pub max_rounds: u32,
    pub mode: SignatureMode,
    pub budget: u64,
}

impl Default for CanonConfig {
    fn default() -> Self {
        CanonConfig {
            k: 2,
            variant: Variant::I,
            counting: true,
            max_rounds: u32::MAX,
            mode: SignatureMode::Fingerprint,
            budget: crate::wl::DEFAULT_BUDGET,
        }
    }
}

/// `κ(G)`: the table relabelled by canonical position together with the
/// colour `ψ` of every position. Identity stays at 0; the other elements
/// are ordered by colour.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalForm {
    #[serde(skip)]
    pub table: CayleyTable,
    /// Colour of each canonical position.
    pub psi: Vec<u32>,
    /// Canonical position of each input element.
    pub labeling: Vec<Elem>,
    /// Individualized elements, as input indices, in selection order.
    pub generators: Vec<Elem>,
    pub iterations: usize,
    pub rounds: u32,
    pub elapsed_ms: f64,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.psi == other.psi
    }
}

impl Eq for CanonicalForm {}

impl CanonicalForm {
    /// The canonical table as `.cay` text followed by a `# psi` line.
    pub fn to_cay_string(&self) -> String {
        let mut out = self.table.to_cay_string();
        out.push_str("# psi");
        for c in &self.psi {
            out.push(' ');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        out
    }
}

/// One WL run per call; keeps whatever state lets the next run start from
/// the previous stable colouring.
struct Runner<'a> {
    g: &'a CayleyTable,
    cfg: &'a CanonConfig,
    base: Option<TupleColoring>,
    last: Option<TupleColoring>,
    rounds: u32,
}

impl<'a> Runner<'a> {
    fn new(g: &'a CayleyTable, cfg: &'a CanonConfig) -> Result<Self> {
        let dim = cfg.k + 1;
        let base = match cfg.variant {
            Variant::I | Variant::II => {
                check_budget(&[g.order()], dim, cfg.budget)?;
                let v = if cfg.variant == Variant::I { Version::I } else { Version::II };
                Some(structure_coloring(&[g], dim, v)?)
            }
            Variant::III => {
                let vertices = g.order() + 4 * g.order() * g.order();
                check_budget(&[vertices], dim, cfg.budget)?;
                None
            }
        };
        Ok(Runner { g, cfg, base, last: None, rounds: 0 })
    }

    /// Element colours after individualizing `tokens` (0 = none). Runs to
    /// stabilization restart from the previous stable colouring; its
    /// partition is the same as a fresh run's.
    fn colors(&mut self, tokens: &[u64], newest: Option<Elem>) -> Result<Vec<u32>> {
        let n = self.g.order();
        let (cfg, dim) = (self.cfg, self.cfg.k + 1);
        let init = match (&self.base, &self.last, newest) {
            (Some(_), Some(last), Some(x)) if cfg.max_rounds == u32::MAX => {
                let mut one = vec![0u64; n];
                one[x as usize] = 1;
                last.with_point_tokens(&[&one])
            }
            (Some(base), _, _) => base.with_point_tokens(&[tokens]),
            (None, _, _) => {
                let cg = ColoredGroup::with_colors(self.g, tokens.to_vec())?;
                let gg = build_gadget_graph(&cg, cfg.budget)?;
                graph_initial_coloring(&[gg.graph()], dim)?
            }
        };
        let start = init.round();
        let r = drive(init, start.saturating_add(cfg.max_rounds - 1), cfg.counting, cfg.mode)?;
        self.rounds += r.rounds_used - start + 1;
        let mut colors = r.element_colors.into_iter().next().expect("one side");
        colors.truncate(n);
        self.last = Some(r.coloring);
        Ok(colors)
    }
}

fn class_sizes(colors: &[u32]) -> Vec<u32> {
    let mut sizes = vec![0u32; colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
}

/// Individualize-and-refine canonization with `(k+1)`-WL. Fails with
/// [`Error::NonCanonicalWarning`] when the final colouring still has a
/// class of size above one.
pub fn canonical_form(g: &CayleyTable, cfg: &CanonConfig) -> Result<CanonicalForm> {
    let started = Instant::now();
    let n = g.order();
    let mut runner = Runner::new(g, cfg)?;
    let mut tokens = vec![0u64; n];
    let mut span = SubgroupBuilder::new(g);
    let mut gens: Vec<Elem> = Vec::new();
    let bound = (usize::BITS - n.leading_zeros()) as usize;
    let mut colors = runner.colors(&tokens, None)?;
    loop {
        let sizes = class_sizes(&colors);
        if sizes.iter().all(|&s| s <= 1) {
            break;
        }
        if span.is_everything() {
            return Err(Error::NonCanonicalWarning { iterations: gens.len() });
        }
        let pick = g
            .elements()
            .filter(|&x| !span.contains(x) && sizes[colors[x as usize] as usize] > 1)
            .min_by_key(|&x| (colors[x as usize], x))
            .ok_or(Error::NonCanonicalWarning { iterations: gens.len() })?;
        gens.push(pick);
        assert!(gens.len() <= bound, "generator count exceeds log2(n) + 1");
        span.add(pick);
        tokens[pick as usize] = gens.len() as u64;
        colors = runner.colors(&tokens, Some(pick))?;
    }
    let mut order: Vec<Elem> = (1..n as Elem).collect();
    order.sort_by_key(|&x| colors[x as usize]);
    let mut labeling = vec![0 as Elem; n];
    for (pos, &x) in order.iter().enumerate() {
        labeling[x as usize] = pos as Elem + 1;
    }
    let mut psi = vec![0u32; n];
    for x in 0..n {
        psi[labeling[x] as usize] = colors[x];
    }
    let table = g.relabel(&labeling)?.with_label("canonical");
    Ok(CanonicalForm {
        table,
        psi,
        labeling,
        iterations: gens.len(),
        generators: gens,
        rounds: runner.rounds,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_abelian, make_cyclic, make_dihedral};
    use crate::iso::verify_isomorphism;

    #[test]
    fn trivial_group() {
        let f = canonical_form(&make_cyclic(1), &CanonConfig::default()).unwrap();
        assert_eq!(f.table.order(), 1);
        assert_eq!(f.iterations, 0);
    }

    #[test]
    fn z6_matches_z2_z3() {
        let cfg = CanonConfig::default();
        let a = canonical_form(&make_cyclic(6), &cfg).unwrap();
        let b = canonical_form(&make_abelian(&[2, 3]).unwrap(), &cfg).unwrap();
        assert_eq!(a.to_cay_string(), b.to_cay_string());
        let c = canonical_form(&make_cyclic(4), &cfg).unwrap();
        let d = canonical_form(&make_abelian(&[2, 2]).unwrap(), &cfg).unwrap();
        assert_ne!(c, d);
    }

    #[test]
    fn labeling_is_an_isomorphism() {
        let g = make_dihedral(5);
        for variant in [Variant::I, Variant::II] {
            let f = canonical_form(&g, &CanonConfig { variant, ..CanonConfig::default() }).unwrap();
            assert!(verify_isomorphism(&g, &f.table, &f.labeling));
        }
    }

    #[test]
    fn bounded_runs_are_invariant_too() {
        let g = make_abelian(&[2, 4]).unwrap();
        let cfg = CanonConfig { max_rounds: 1000, ..CanonConfig::default() };
        let perm: Vec<Elem> = vec![0, 5, 3, 7, 1, 2, 6, 4];
        let a = canonical_form(&g, &cfg).unwrap();
        let b = canonical_form(&g.relabel(&perm).unwrap(), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(verify_isomorphism(&g, &a.table, &a.labeling));
    }

    #[test]
    fn gadget_variant_on_tiny_groups() {
        let cfg = CanonConfig { k: 1, variant: Variant::III, ..CanonConfig::default() };
        let a = canonical_form(&make_cyclic(3), &cfg).unwrap();
        let p: Vec<Elem> = vec![0, 2, 1];
        let b = canonical_form(&make_cyclic(3).relabel(&p).unwrap(), &cfg).unwrap();
        assert_eq!(a, b);
    }
}
