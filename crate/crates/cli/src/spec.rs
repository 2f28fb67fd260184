//! Group spec strings such as `dp:sym:3xcyclic:2` or `sdp:cyclic:3:cyclic:7:mul2`.
//!
//! ```text
//! spec := cyclic:m | abelian:a,b,... | dihedral:m | sym:m | alt:m | q8
//!       | dp:<spec>x<spec> | sdp:<spec>:<spec>:<id> | cfpair:n | file:<path>
//! ```
//!
//! `cfpair` is only valid at the top level. `file:` takes the rest of the
//! input as its path. Positions in parse errors are 1-based columns.

use std::fmt;
use std::path::PathBuf;

use wlgroup::group::{Constructors, DEFAULT_ORDER_CAP};
use wlgroup::iso::{countfree_family, named_action, q8};
use wlgroup::{CayleyTable, Error, Result};

use crate::catalog::Catalog;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Sym(usize),
    Alt(usize),
    Q8,
    Dp(Box<GroupSpec>, Box<GroupSpec>),
    Sdp(Box<GroupSpec>, Box<GroupSpec>, String),
    CfPair(usize),
    File(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupSpec::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Dihedral(m) => write!(f, "dihedral:{m}"),
            GroupSpec::Sym(m) => write!(f, "sym:{m}"),
            GroupSpec::Alt(m) => write!(f, "alt:{m}"),
            GroupSpec::Q8 => write!(f, "q8"),
            GroupSpec::Dp(a, b) => write!(f, "dp:{a}x{b}"),
            GroupSpec::Sdp(h, n, id) => write!(f, "sdp:{h}:{n}:{id}"),
            GroupSpec::CfPair(n) => write!(f, "cfpair:{n}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos + 1, message: message.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err("expected a number");
        }
        digits.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn spec(&mut self, top: bool) -> Result<GroupSpec> {
        let start = self.pos;
        let word = self.take_while(|c| c.is_ascii_lowercase());
        if word == "q" {
            self.expect(b'8')?;
            return Ok(GroupSpec::Q8);
        }
        let known = ["cyclic", "abelian", "dihedral", "sym", "alt", "dp", "sdp", "cfpair", "file"];
        if !known.contains(&word) {
            self.pos = start;
            return self.err(if word.is_empty() { "expected a group family".to_string() } else { format!("unknown family {word:?}") });
        }
        self.expect(b':')?;
        Ok(match word {
            "cyclic" => GroupSpec::Cyclic(self.number()?),
            "dihedral" => GroupSpec::Dihedral(self.number()?),
            "sym" => GroupSpec::Sym(self.number()?),
            "alt" => GroupSpec::Alt(self.number()?),
            "abelian" => {
                let mut v = vec![self.number()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    v.push(self.number()?);
                }
                GroupSpec::Abelian(v)
            }
            "dp" => {
                let a = self.spec(false)?;
                self.expect(b'x')?;
                let b = self.spec(false)?;
                GroupSpec::Dp(Box::new(a), Box::new(b))
            }
            "sdp" => {
                let h = self.spec(false)?;
                self.expect(b':')?;
                let n = self.spec(false)?;
                self.expect(b':')?;
                let id = self.take_while(|c| (c.is_ascii_alphanumeric() || c == b'_') && c != b'x');
                if id.is_empty() {
                    return self.err("expected an action id");
                }
                GroupSpec::Sdp(Box::new(h), Box::new(n), id.to_string())
            }
            "cfpair" => {
                if !top {
                    self.pos = start;
                    return self.err("cfpair is only allowed at the top level");
                }
                GroupSpec::CfPair(self.number()?)
            }
            _ => {
                let path = &self.src[self.pos..];
                if path.is_empty() {
                    return self.err("expected a path");
                }
                self.pos = self.src.len();
                GroupSpec::File(PathBuf::from(path))
            }
        })
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.trim(), pos: 0 };
        let spec = p.spec(true)?;
        if p.pos != p.src.len() {
            return p.err("unexpected trailing input");
        }
        Ok(spec)
    }
}

/// Reads a `.cay` file. I/O failures come back as `Err(io)`, format and
/// validation failures as `Ok(Err(_))`.
pub fn load_cay(path: &std::path::Path, relabel_identity: bool) -> std::io::Result<Result<CayleyTable>> {
    let text = std::fs::read_to_string(path)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(CayleyTable::from_cay_str(&text, relabel_identity).map(|t| t.with_label(label)))
}

impl GroupSpec {
    pub fn is_pair(&self) -> bool {
        matches!(self, GroupSpec::CfPair(_))
    }

    /// The one group named by a non-pair spec.
    pub fn build(&self, catalog: &Catalog) -> Result<CayleyTable> {
        let c = Constructors { order_cap: DEFAULT_ORDER_CAP };
        let t = match self {
            GroupSpec::Cyclic(m) => c.cyclic(*m)?,
            GroupSpec::Abelian(v) => c.abelian(v)?,
            GroupSpec::Dihedral(m) => c.dihedral(*m)?,
            GroupSpec::Sym(m) => c.symmetric(*m)?,
            GroupSpec::Alt(m) => c.alternating(*m)?,
            GroupSpec::Q8 => q8(),
            GroupSpec::Dp(a, b) => c.direct_product(&a.build(catalog)?, &b.build(catalog)?)?,
            GroupSpec::Sdp(hs, ns, id) => {
                let (h, n) = (hs.build(catalog)?, ns.build(catalog)?);
                let (hs, ns) = (hs.to_string(), ns.to_string());
                let theta = match id.as_str() {
                    "trivial" | "sign" => named_action(&hs, &h, &ns, &n, id)?,
                    _ => catalog.action(&hs, &h, &ns, &n, id)?,
                };
                c.semidirect_product(&h, &n, &theta)?
            }
            GroupSpec::CfPair(_) => {
                return Err(Error::InvalidParameter("cfpair names two groups".into()));
            }
            GroupSpec::File(path) => match load_cay(path, false) {
                Ok(t) => return t,
                Err(e) => return Err(Error::Malformed(format!("{}: {e}", path.display()))),
            },
        };
        Ok(t.with_label(self.to_string()))
    }

    /// Every group this spec names: two for `cfpair`, one otherwise.
    pub fn build_all(&self, catalog: &Catalog) -> Result<Vec<CayleyTable>> {
        match self {
            GroupSpec::CfPair(n) => {
                let (g, h) = countfree_family(*n)?;
                Ok(vec![g.with_label(format!("cfpair:{n}:G")), h.with_label(format!("cfpair:{n}:H"))])
            }
            _ => Ok(vec![self.build(catalog)?]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<GroupSpec> {
        s.parse()
    }

    #[test]
    fn round_trips_through_display() {
        for s in [
            "cyclic:1",
            "abelian:2,4",
            "dihedral:5",
            "sym:4",
            "alt:5",
            "q8",
            "dp:q8xcyclic:2",
            "dp:dp:cyclic:2xcyclic:3xsym:3",
            "dp:abelian:2,2xcyclic:3",
            "sdp:cyclic:3:abelian:7,7:diag24",
            "sdp:sym:3:cyclic:7:sign",
            "cfpair:2",
            "file:some/dir/x.cay",
        ] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn nested_products_associate_left() {
        let s = parse("dp:dp:cyclic:2xcyclic:3xsym:3").unwrap();
        let GroupSpec::Dp(a, b) = s else { panic!() };
        assert_eq!(*b, GroupSpec::Sym(3));
        assert!(matches!(*a, GroupSpec::Dp(..)));
    }

    #[test]
    fn errors_carry_positions() {
        let at = |s: &str| match parse(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(at("cyclc:4"), 1);
        assert_eq!(at("cyclic:"), 8);
        assert_eq!(at("cyclic:4x"), 9);
        assert_eq!(at("abelian:2,,4"), 11);
        assert_eq!(at("dp:cyclic:2"), 12);
        assert_eq!(at("dp:cfpair:2xcyclic:2"), 4);
        assert_eq!(at("sdp:cyclic:2:cyclic:7:"), 23);
        assert_eq!(at(""), 1);
    }
}
