use std::time::Instant;

use serde::Serialize;

use super::{
    abelian_iso, canonical_form, oracle_isomorphic, semisimple_iso_list_with, verify_isomorphism, CanonConfig,
    IsoVerdict, ListConfig, Method, OracleConfig, Status,
};
use crate::analysis::is_semisimple;
use crate::error::{Error, Result};
use crate::group::{is_abelian, CayleyTable, Elem};
use crate::wl::{run_wl, tuple_records, ColoredGroup, SignatureMode, Version, WlConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutoConfig {
    /// Dimension of the WL stage.
    pub k: usize,
    /// The WL and canonization stages run only when both sides together
    /// need at most this many tuple records.
    pub wl_budget: u64,
    pub mode: SignatureMode,
    pub canon: bool,
    pub oracle: OracleConfig,
    pub list: ListConfig,
}

impl Default for AutoConfig {
    fn default() -> Self {
        AutoConfig {
            k: 3,
            wl_budget: 1 << 23,
            mode: SignatureMode::Fingerprint,
            canon: true,
            oracle: OracleConfig::default(),
            list: ListConfig::default(),
        }
    }
}

fn with_time(mut v: IsoVerdict, started: Instant) -> IsoVerdict {
    v.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    v
}

/// Order check, then the Abelian test, the semisimple lister, counting
/// k-WL Version II, canonical-form comparison and finally the oracle.
pub fn auto_pipeline(g: &CayleyTable, h: &CayleyTable, cfg: &AutoConfig) -> Result<IsoVerdict> {
    let started = Instant::now();
    let n = g.order();
    if n != h.order() {
        let evidence = format!("orders differ ({} vs {})", n, h.order());
        return Ok(IsoVerdict::new(Status::NonIsomorphic { evidence }, Method::Order, started));
    }
    match (is_abelian(g), is_abelian(h)) {
        (true, true) => return abelian_iso(g, h).map(|v| with_time(v, started)),
        (true, false) | (false, true) => {
            let evidence = "exactly one group is Abelian".to_string();
            return Ok(IsoVerdict::new(Status::NonIsomorphic { evidence }, Method::Abelian, started));
        }
        _ => {}
    }
    if is_semisimple(g) {
        let mut found = None;
        let list = semisimple_iso_list_with(g, h, &cfg.list, &mut |m| {
            found = Some(m.to_vec());
            false
        })?;
        let status = match found {
            Some(witness) => Status::Isomorphic { witness },
            None => Status::NonIsomorphic { evidence: list.evidence.unwrap_or_default() },
        };
        return Ok(IsoVerdict::new(status, Method::Semisimple, started));
    }
    let within = tuple_records(&[n, n], cfg.k) <= cfg.wl_budget as u128;
    let mut rounds = 0;
    if within {
        let wl = WlConfig::new(cfg.k, Version::II).mode(cfg.mode).budget(cfg.wl_budget);
        let r = run_wl(&ColoredGroup::uncolored(g), &ColoredGroup::uncolored(h), &wl)?;
        rounds = r.rounds_used;
        if let Some(at) = r.distinguished_at {
            let evidence = format!("counting {}-WL Version II distinguished at round {at}", cfg.k);
            return Ok(IsoVerdict::new(Status::NonIsomorphic { evidence }, Method::Wl, started));
        }
        if cfg.canon {
            let cc = CanonConfig { k: cfg.k - 1, mode: cfg.mode, budget: cfg.wl_budget, ..CanonConfig::default() };
            match (canonical_form(g, &cc), canonical_form(h, &cc)) {
                (Ok(a), Ok(b)) if a == b => {
                    let mut inv = vec![0 as Elem; n];
                    for (x, &p) in b.labeling.iter().enumerate() {
                        inv[p as usize] = x as Elem;
                    }
                    let witness: Vec<Elem> = a.labeling.iter().map(|&p| inv[p as usize]).collect();
                    assert!(verify_isomorphism(g, h, &witness), "equal canonical forms gave an invalid witness");
                    return Ok(IsoVerdict::new(Status::Isomorphic { witness }, Method::Canon, started));
                }
                (Ok(_), Ok(_)) | (Err(Error::NonCanonicalWarning { .. }), _) | (_, Err(Error::NonCanonicalWarning { .. })) => {}
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
    }
    if n <= cfg.oracle.cap {
        return oracle_isomorphic(g, h, &cfg.oracle).map(|v| with_time(v, started));
    }
    let status = Status::WlIndistinguishable { k: cfg.k, rounds, version: "II".into() };
    Ok(IsoVerdict::new(status, Method::Wl, started))
}
