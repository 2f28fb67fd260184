use crate::error::{Error, Result};
use crate::group::{CayleyTable, Elem};

/// A group together with a colour token per element. Token 0 is the
/// default colour shared by all uncoloured elements.
#[derive(Clone, Debug)]
pub struct ColoredGroup<'g> {
    group: &'g CayleyTable,
    colors: Vec<u64>,
}

impl<'g> ColoredGroup<'g> {
    pub fn uncolored(group: &'g CayleyTable) -> Self {
        ColoredGroup { group, colors: vec![0; group.order()] }
    }

    pub fn with_colors(group: &'g CayleyTable, colors: Vec<u64>) -> Result<Self> {
        if colors.len() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "{} colours for a group of order {}",
                colors.len(),
                group.order()
            )));
        }
        Ok(ColoredGroup { group, colors })
    }

    pub fn group(&self) -> &'g CayleyTable {
        self.group
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn is_uncolored(&self) -> bool {
        self.colors.iter().all(|&c| c == self.colors[0])
    }

    /// Gives each listed element a fresh token. Tokens must not already be
    /// in use, neither in the current colouring nor twice in `assignments`.
    pub fn individualize(&self, assignments: &[(Elem, u64)]) -> Result<ColoredGroup<'g>> {
        let mut out = self.clone();
        let mut used: Vec<u64> = self.colors.clone();
        used.sort_unstable();
        used.dedup();
        let mut seen = Vec::with_capacity(assignments.len());
        for &(g, token) in assignments {
            self.group.check_element(g)?;
            if used.binary_search(&token).is_ok() || seen.contains(&token) {
                return Err(Error::TokenCollision(token));
            }
            seen.push(token);
            out.colors[g as usize] = token;
        }
        Ok(out)
    }
}
