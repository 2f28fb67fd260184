//! The action catalog behind `sdp:` specs.
//!
//! One entry per line: `H-spec N-spec id p_0 p_1 ... p_{|N|-1}`, where the
//! permutation is the image of the generator `1` of the cyclic group `H`.
//! Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use wlgroup::group::{Action, Elem};
use wlgroup::{CayleyTable, Error, Result};

pub const SHIPPED: &str = include_str!("../catalog/actions.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub h: String,
    pub n: String,
    pub id: String,
    pub image: Vec<Elem>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<Entry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        for (lno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| Error::Parse { position: lno + 1, message: format!("catalog: {m}") };
            let mut words = line.split_whitespace();
            let mut field = |name: &str| words.next().map(str::to_string).ok_or_else(|| bad(&format!("missing {name}")));
            let (h, n, id) = (field("H spec")?, field("N spec")?, field("id")?);
            let image: std::result::Result<Vec<Elem>, _> = words.map(str::parse).collect();
            let image = image.map_err(|_| bad("non-integer image entry"))?;
            if image.is_empty() {
                return Err(bad("empty image"));
            }
            entries.push(Entry { h, n, id, image });
        }
        Ok(Catalog { entries })
    }

    pub fn shipped() -> Catalog {
        Catalog::parse(SHIPPED).expect("shipped catalog parses")
    }

    pub fn load(path: &Path) -> std::io::Result<Result<Catalog>> {
        Ok(Catalog::parse(&std::fs::read_to_string(path)?))
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// The action of `h` on `n` named `id`.
    pub fn action(&self, h_spec: &str, h: &CayleyTable, n_spec: &str, n: &CayleyTable, id: &str) -> Result<Action> {
        let e = self
            .entries
            .iter()
            .find(|e| e.h == h_spec && e.n == n_spec && e.id == id)
            .ok_or_else(|| Error::InvalidAction(format!("no catalog action {id:?} of {h_spec} on {n_spec}")))?;
        Action::from_generators(h, n, &[(1, e.image.clone())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlgroup::iso::catalog_actions;

    #[test]
    fn shipped_file_matches_library_catalog() {
        let ours = Catalog::shipped();
        let lib = catalog_actions();
        assert_eq!(ours.entries().len(), lib.len());
        for (e, (h, n, id, perm)) in ours.entries().iter().zip(lib) {
            assert_eq!((e.h.as_str(), e.n.as_str(), e.id.as_str(), &e.image), (h, n, id, &perm));
        }
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = Catalog::parse("# c\ncyclic:2 cyclic:3 inv 0 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 2, .. }));
    }
}
