use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use super::Elem;
use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Element 0 is always the identity. Rows are stored contiguously, so
/// `mul(a, b)` is a single indexed load.
pub struct CayleyTable {
    n: usize,
    table: Vec<Elem>,
    inv: Vec<Elem>,
    label: String,
    orders: OnceLock<Vec<u32>>,
    gens: OnceLock<Vec<Elem>>,
}

impl Clone for CayleyTable {
    fn clone(&self) -> Self {
        CayleyTable {
            n: self.n,
            table: self.table.clone(),
            inv: self.inv.clone(),
            label: self.label.clone(),
            orders: self.orders.clone(),
            gens: self.gens.clone(),
        }
    }
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for CayleyTable {}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(n={}, label={:?})", self.n, self.label)
    }
}

impl CayleyTable {
    /// Builds a table from a flat row-major product array that is known to
    /// describe a group with identity 0. Only inverses are computed.
    pub(crate) fn from_trusted(n: usize, table: Vec<Elem>, label: impl Into<String>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inv = vec![0; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            if let Some(b) = row.iter().position(|&x| x == 0) {
                inv[a] = b as Elem;
            }
        }
        CayleyTable {
            n,
            table,
            inv,
            label: label.into(),
            orders: OnceLock::new(),
            gens: OnceLock::new(),
        }
    }

    /// Validates a flat row-major table (see [`validate_group`]).
    pub fn from_flat(n: usize, table: Vec<Elem>, label: impl Into<String>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::Malformed(format!("expected {} entries, got {}", n * n, table.len())));
        }
        let rows: Vec<Vec<i64>> =
            table.chunks(n.max(1)).take(n).map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let mut g = validate_group(&rows)?;
        g.label = label.into();
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `a * b * a^-1`
    #[inline]
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a as usize * self.n..(a as usize + 1) * self.n]
    }

    pub fn flat(&self) -> &[Elem] {
        &self.table
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.n as Elem
    }

    pub fn check_element(&self, g: Elem) -> Result<()> {
        if (g as usize) < self.n {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(g as usize, self.n))
        }
    }

    /// Element orders, computed once and cached.
    pub fn orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            (0..self.n as Elem)
                .map(|g| {
                    let mut x = g;
                    let mut m = 1;
                    while x != 0 {
                        x = self.mul(x, g);
                        m += 1;
                    }
                    m
                })
                .collect()
        })
    }

    /// A small generating set, chosen greedily by maximal subgroup growth
    /// and cached.
    pub fn generators(&self) -> &[Elem] {
        self.gens.get_or_init(|| super::subgroup::greedy_generators(self))
    }

    pub fn power(&self, g: Elem, mut e: u64) -> Elem {
        let mut base = g;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Relabels elements by `perm`: the result satisfies
    /// `t'[perm(i)][perm(j)] = perm(t[i][j])`.
    pub fn relabel(&self, perm: &[Elem]) -> Result<CayleyTable> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::NotAPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::NotAPermutation(n));
            }
        }
        if n > 0 && perm[0] != 0 {
            return Err(Error::IdentityMoved(perm[0] as usize));
        }
        let mut table = vec![0; n * n];
        for i in 0..n {
            let pi = perm[i] as usize;
            for j in 0..n {
                table[pi * n + perm[j] as usize] = perm[self.table[i * n + j] as usize];
            }
        }
        Ok(CayleyTable::from_trusted(n, table, self.label.clone()))
    }

    /// Parses the `.cay` text format. With `auto_relabel`, a table whose
    /// identity sits at some index `e != 0` is relabelled by swapping `0` and
    /// `e`; otherwise that case is reported as [`Error::NoIdentityAtZero`].
    pub fn from_cay_str(text: &str, auto_relabel: bool) -> Result<CayleyTable> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (lno, first) = lines.next().ok_or(Error::Parse {
            position: 1,
            message: "empty input".into(),
        })?;
        if first.trim_start().starts_with('#') {
            return Err(Error::Parse { position: lno + 1, message: "expected order line".into() });
        }
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            position: lno + 1,
            message: format!("invalid order {:?}", first.trim()),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (lno, line) in lines {
            let t = line.trim();
            if t.starts_with('#') {
                continue;
            }
            if rows.len() == n {
                return Err(Error::Parse { position: lno + 1, message: "extra row".into() });
            }
            let row: std::result::Result<Vec<i64>, _> = t.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| Error::Parse {
                position: lno + 1,
                message: "non-integer entry".into(),
            })?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse {
                position: text.lines().count(),
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        match validate_group(&rows) {
            Err(Error::NoIdentityAtZero { found }) if auto_relabel => {
                let mut perm: Vec<Elem> = (0..n as Elem).collect();
                perm.swap(0, found);
                let flat: Vec<Elem> = rows.iter().flatten().map(|&x| x as Elem).collect();
                let mut table = vec![0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        table[perm[i] as usize * n + perm[j] as usize] = perm[flat[i * n + j] as usize];
                    }
                }
                let rows: Vec<Vec<i64>> =
                    table.chunks(n).map(|r| r.iter().map(|&x| x as i64).collect()).collect();
                validate_group(&rows)
            }
            other => other,
        }
    }

    /// Byte-stable `.cay` serialization: order line, then one row per line,
    /// single spaces, LF endings, no comments.
    pub fn to_cay_string(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 4 + 16);
        out.push_str(&self.n.to_string());
        out.push('\n');
        for a in 0..self.n {
            let row = self.row(a as Elem);
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn read_cay(path: impl AsRef<Path>, auto_relabel: bool) -> Result<CayleyTable> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(Self::from_cay_str(&text, auto_relabel)?.with_label(label))
    }
}

/// Checks every group axiom on a raw square matrix and returns the table.
///
/// Checks run in a fixed order (shape, range, identity, Latin property,
/// associativity, inverses) and the first failure is reported.
/// Associativity uses Light's test: it is enough to check `(xy)s = x(ys)`
/// for `s` ranging over a set whose product-closure is the whole table.
pub fn validate_group(raw: &[Vec<i64>]) -> Result<CayleyTable> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::Malformed("empty table".into()));
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v < 0 || v as usize >= n {
                return Err(Error::EntryOutOfRange { row: i, col: j, value: v, n });
            }
        }
    }
    let t: Vec<Elem> = raw.iter().flatten().map(|&v| v as Elem).collect();
    let at = |i: usize, j: usize| t[i * n + j] as usize;

    let is_identity = |e: usize| (0..n).all(|j| at(e, j) == j && at(j, e) == j);
    if !is_identity(0) {
        return match (1..n).find(|&e| is_identity(e)) {
            Some(found) => Err(Error::NoIdentityAtZero { found }),
            None => Err(Error::NoIdentity),
        };
    }

    let mut seen = vec![u32::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = at(i, j);
            if seen[v] == i as u32 {
                return Err(Error::NotLatinSquare(format!("row {i} repeats {v}")));
            }
            seen[v] = i as u32;
        }
    }
    seen.fill(u32::MAX);
    for j in 0..n {
        for i in 0..n {
            let v = at(i, j);
            if seen[v] == j as u32 {
                return Err(Error::NotLatinSquare(format!("column {j} repeats {v}")));
            }
            seen[v] = j as u32;
        }
    }

    for s in product_generators(&t, n) {
        for x in 0..n {
            for y in 0..n {
                if at(at(x, y), s) != at(x, at(y, s)) {
                    return Err(Error::NotAssociative(x, y, s));
                }
            }
        }
    }

    for a in 0..n {
        if !(0..n).any(|b| at(a, b) == 0 && at(b, a) == 0) {
            return Err(Error::NoInverse(a));
        }
    }
    Ok(CayleyTable::from_trusted(n, t, ""))
}

/// Greedy set whose closure under the binary product is everything.
fn product_generators(t: &[Elem], n: usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        let mut work = vec![x];
        inside[x] = true;
        while let Some(a) = work.pop() {
            let existing = members.len();
            members.push(a);
            for idx in 0..=existing {
                let b = members[idx];
                for p in [t[a * n + b] as usize, t[b * n + a] as usize] {
                    if !inside[p] {
                        inside[p] = true;
                        work.push(p);
                    }
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn z2_is_valid() {
        let g = validate_group(&rows(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn repeated_entry_is_not_latin() {
        let e = validate_group(&rows(&[&[0, 1], &[1, 1]])).unwrap_err();
        assert!(matches!(e, Error::NotLatinSquare(_)), "{e:?}");
    }

    #[test]
    fn misplaced_identity_is_reported() {
        // Z/3 with the identity relabelled to index 1: x*y = x+y-1 mod 3.
        let raw: Vec<Vec<i64>> =
            (0..3).map(|x| (0..3).map(|y| (x + y + 2) % 3).collect()).collect();
        assert_eq!(validate_group(&raw).unwrap_err(), Error::NoIdentityAtZero { found: 1 });
        let text = format!(
            "3\n{}\n",
            raw.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n")
        );
        assert!(CayleyTable::from_cay_str(&text, false).is_err());
        let fixed = CayleyTable::from_cay_str(&text, true).unwrap();
        assert_eq!(fixed.order(), 3);
    }

    #[test]
    fn out_of_range_and_shape() {
        assert!(matches!(
            validate_group(&rows(&[&[0, 2], &[1, 0]])),
            Err(Error::EntryOutOfRange { row: 0, col: 1, .. })
        ));
        assert!(matches!(validate_group(&rows(&[&[0, 1]])), Err(Error::Malformed(_))));
    }

    #[test]
    fn latin_loop_that_is_not_associative() {
        // The smallest non-associative loop (order 5).
        let raw = rows(&[
            &[0, 1, 2, 3, 4],
            &[1, 0, 3, 4, 2],
            &[2, 4, 0, 1, 3],
            &[3, 2, 4, 0, 1],
            &[4, 3, 1, 2, 0],
        ]);
        assert!(matches!(validate_group(&raw), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn cay_round_trip_is_byte_stable() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n# cyclic\n";
        let g = CayleyTable::from_cay_str(text, false).unwrap();
        assert_eq!(g.to_cay_string(), "3\n0 1 2\n1 2 0\n2 0 1\n");
        let again = CayleyTable::from_cay_str(&g.to_cay_string(), false).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = CayleyTable::from_cay_str("2\n0 1\n1 x\n", false).unwrap_err();
        assert_eq!(e, Error::Parse { position: 3, message: "non-integer entry".into() });
        assert!(CayleyTable::from_cay_str("", false).is_err());
        assert!(CayleyTable::from_cay_str("3\n0 1 2\n", false).is_err());
    }

    #[test]
    fn relabel_rejects_bad_permutations() {
        let g = validate_group(&rows(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]])).unwrap();
        assert_eq!(g.relabel(&[0, 2, 1]).unwrap().mul(2, 2), 1);
        assert_eq!(g.relabel(&[0, 1, 2]).unwrap(), g);
        assert_eq!(g.relabel(&[0, 1, 1]).unwrap_err(), Error::NotAPermutation(3));
        assert_eq!(g.relabel(&[1, 0, 2]).unwrap_err(), Error::IdentityMoved(1));
    }
}
