use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;
use wlgroup::gadget::version3_group_test;
use wlgroup::iso::{
    abelian_iso, auto_pipeline, canonical_form, oracle_isomorphic, semisimple_iso_list_with, verify_isomorphism,
    AutoConfig, CanonConfig, CanonicalForm, IsoVerdict, ListConfig, Method, OracleConfig, Status,
};
use wlgroup::wl::{run_wl, ColoredGroup, RunResult, SignatureMode, Version, WlConfig, DEFAULT_BUDGET};
use wlgroup::group::Elem;
use wlgroup::{CayleyTable, Error};

use crate::catalog::Catalog;
use crate::cli::{CanonArgs, GenArgs, Global, IsoArgs, IsoListArgs, MethodArg, VersionArg, WlArgs};
use crate::exit::{CliError, CliResult};
use crate::spec::{load_cay, GroupSpec};

pub const BUDGET_ENV: &str = "WLGROUP_MEMORY_BUDGET";

pub struct Ctx {
    pub json: bool,
    pub budget: u64,
    pub catalog: Catalog,
    pub relabel_identity: bool,
}

impl Ctx {
    pub fn from_global(g: &Global) -> CliResult<Ctx> {
        let budget = match g.budget {
            Some(b) => b,
            None => budget_from_env()?.unwrap_or(DEFAULT_BUDGET),
        };
        let catalog = match &g.catalog {
            None => Catalog::shipped(),
            Some(p) => Catalog::load(p)
                .map_err(|e| CliError::io(p.display(), e))?
                .map_err(|e| CliError::from(e).in_context(p.display()))?,
        };
        Ok(Ctx { json: g.json, budget, catalog, relabel_identity: g.relabel_identity })
    }

    pub fn load(&self, path: &Path) -> CliResult<CayleyTable> {
        load_cay(path, self.relabel_identity)
            .map_err(|e| CliError::io(path.display(), e))?
            .map_err(|e| CliError::from(e).in_context(path.display()))
    }
}

/// The record budget from the environment, if set.
pub fn budget_from_env() -> CliResult<Option<u64>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage(format!("{BUDGET_ENV}={v:?} is not a record count"))),
        Err(_) => Ok(None),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

fn pair_paths(out: &Path) -> [PathBuf; 2] {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let dir = out.parent().unwrap_or(Path::new(""));
    [dir.join(format!("{stem}.G.cay")), dir.join(format!("{stem}.H.cay"))]
}

pub fn gen(ctx: &Ctx, args: &GenArgs) -> CliResult<()> {
    let spec: GroupSpec = args.spec.parse().map_err(|e| CliError::from(e).in_context("spec"))?;
    let tables = spec.build_all(&ctx.catalog)?;
    let paths: Vec<PathBuf> = if spec.is_pair() { pair_paths(&args.out).to_vec() } else { vec![args.out.clone()] };
    let mut files = Vec::new();
    for (t, p) in tables.iter().zip(&paths) {
        write_file(p, &t.to_cay_string())?;
        files.push(json!({ "path": p, "order": t.order(), "name": t.label() }));
        if !ctx.json {
            println!("{} (order {})", p.display(), t.order());
        }
    }
    if ctx.json {
        print_json(&json!({ "schema": "wlgroup.gen/1", "spec": spec.to_string(), "files": files }));
    }
    Ok(())
}

/// Counting or count-free k-WL on two groups, Versions I to III.
pub fn wl_run(g: &CayleyTable, h: &CayleyTable, version: VersionArg, cfg: &WlConfig) -> wlgroup::Result<RunResult> {
    let (a, b) = (ColoredGroup::uncolored(g), ColoredGroup::uncolored(h));
    match version.group_version() {
        Some(v) => run_wl(&a, &b, &WlConfig { version: v, ..*cfg }),
        None => version3_group_test(&a, &b, cfg),
    }
}

fn wl_summary(r: &RunResult) -> String {
    match r.distinguished_at {
        Some(at) => format!("distinguished, round {at}"),
        None if r.stabilized => format!("indistinguishable (stable at round {})", r.rounds_used),
        None => format!("indistinguishable (round limit {} reached)", r.rounds_used),
    }
}

pub fn wl(ctx: &Ctx, args: &WlArgs) -> CliResult<()> {
    let (g, h) = (ctx.load(&args.first)?, ctx.load(&args.second)?);
    let mut cfg = WlConfig::new(args.k, Version::II)
        .counting(!args.count_free)
        .mode(args.mode.resolve(args.k))
        .budget(ctx.budget);
    if let Some(r) = args.rounds {
        cfg = cfg.rounds(r);
    }
    let r = wl_run(&g, &h, args.version, &cfg)?;
    if ctx.json {
        print_json(&json!({
            "schema": "wlgroup.wl/1",
            "k": args.k,
            "version": args.version.name(),
            "counting": !args.count_free,
            "max_rounds": args.rounds,
            "verdict": if r.distinguished { "distinguished" } else { "indistinguishable" },
            "result": r,
        }));
    } else {
        println!("{}", wl_summary(&r));
        let counts: Vec<String> = r.class_counts.iter().map(ToString::to_string).collect();
        println!("class counts: {}", counts.join(" "));
    }
    Ok(())
}

fn canon_config(k: usize, variant: VersionArg, counting: bool, mode: SignatureMode, budget: u64) -> CanonConfig {
    CanonConfig { k, variant: variant.variant(), counting, mode, budget, ..CanonConfig::default() }
}

/// Compares canonical forms; a mismatch is reported as non-isomorphic under
/// the identification premise.
pub fn iso_by_canon(g: &CayleyTable, h: &CayleyTable, cfg: &CanonConfig) -> wlgroup::Result<IsoVerdict> {
    let started = std::time::Instant::now();
    let (a, b) = (canonical_form(g, cfg)?, canonical_form(h, cfg)?);
    let status = if g.order() == h.order() && a == b {
        let mut inv = vec![0 as Elem; h.order()];
        for (x, &p) in b.labeling.iter().enumerate() {
            inv[p as usize] = x as Elem;
        }
        let witness: Vec<Elem> = a.labeling.iter().map(|&p| inv[p as usize]).collect();
        if !verify_isomorphism(g, h, &witness) {
            return Err(Error::NonCanonicalWarning { iterations: a.generators.len() });
        }
        Status::Isomorphic { witness }
    } else {
        Status::NonIsomorphic { evidence: format!("canonical forms differ ({}-WL)", cfg.k + 1) }
    };
    Ok(IsoVerdict { status, method: Method::Canon, elapsed_ms: started.elapsed().as_secs_f64() * 1e3 })
}

/// One isomorphism decision by the requested method.
pub fn decide(g: &CayleyTable, h: &CayleyTable, method: MethodArg, k: usize, budget: u64) -> wlgroup::Result<IsoVerdict> {
    let started = std::time::Instant::now();
    let mode = if k <= 2 { SignatureMode::Exact } else { SignatureMode::Fingerprint };
    match method {
        MethodArg::Auto => {
            let cfg = AutoConfig { k, wl_budget: budget, mode, ..AutoConfig::default() };
            auto_pipeline(g, h, &cfg)
        }
        MethodArg::Abelian => abelian_iso(g, h),
        MethodArg::Oracle => oracle_isomorphic(g, h, &OracleConfig::default()),
        MethodArg::Canon => {
            if k < 2 {
                return Err(Error::InvalidParameter("canon needs k >= 2".into()));
            }
            iso_by_canon(g, h, &canon_config(k - 1, VersionArg::I, true, SignatureMode::Fingerprint, budget))
        }
        MethodArg::Semisimple => {
            let mut found = None;
            let list = semisimple_iso_list_with(g, h, &ListConfig::default(), &mut |m| {
                found = Some(m.to_vec());
                false
            })?;
            let status = match found {
                Some(witness) => Status::Isomorphic { witness },
                None => Status::NonIsomorphic { evidence: list.evidence.unwrap_or_else(|| "no isomorphism".into()) },
            };
            Ok(IsoVerdict { status, method: Method::Semisimple, elapsed_ms: started.elapsed().as_secs_f64() * 1e3 })
        }
        MethodArg::Wl => {
            let status = if g.order() != h.order() {
                Status::NonIsomorphic { evidence: format!("orders differ ({} vs {})", g.order(), h.order()) }
            } else {
                let cfg = WlConfig::new(k, Version::II).mode(mode).budget(budget);
                let r = run_wl(&ColoredGroup::uncolored(g), &ColoredGroup::uncolored(h), &cfg)?;
                match r.distinguished_at {
                    Some(at) => Status::NonIsomorphic {
                        evidence: format!("counting {k}-WL Version II distinguished at round {at}"),
                    },
                    None => Status::WlIndistinguishable { k, rounds: r.rounds_used, version: "II".into() },
                }
            };
            Ok(IsoVerdict { status, method: Method::Wl, elapsed_ms: started.elapsed().as_secs_f64() * 1e3 })
        }
    }
}

fn method_name(m: Method) -> String {
    serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn iso(ctx: &Ctx, args: &IsoArgs) -> CliResult<()> {
    let (g, h) = (ctx.load(&args.first)?, ctx.load(&args.second)?);
    let v = decide(&g, &h, args.method, args.k, ctx.budget)?;
    if ctx.json {
        print_json(&json!({ "schema": "wlgroup.iso/1", "requested": args.method.name(), "verdict": v }));
        return Ok(());
    }
    let method = method_name(v.method);
    match &v.status {
        Status::Isomorphic { witness } => {
            println!("isomorphic (method={method})");
            let w: Vec<String> = witness.iter().map(ToString::to_string).collect();
            println!("witness: {}", w.join(" "));
        }
        Status::NonIsomorphic { evidence } => println!("non-isomorphic (method={method}): {evidence}"),
        Status::WlIndistinguishable { k, rounds, version } => {
            println!("indistinguishable by {k}-WL Version {version} after {rounds} rounds (method={method})")
        }
    }
    Ok(())
}

pub fn iso_list(ctx: &Ctx, args: &IsoListArgs) -> CliResult<()> {
    let (g, h) = (ctx.load(&args.first)?, ctx.load(&args.second)?);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut index = 0u64;
    let mut io_err = None;
    let limit = args.limit.unwrap_or(u64::MAX);
    let list = semisimple_iso_list_with(&g, &h, &ListConfig::default(), &mut |m| {
        if index >= limit {
            return false;
        }
        let line = json!({ "index": index, "map": m });
        if let Err(e) = writeln!(out, "{line}") {
            io_err = Some(e);
            return false;
        }
        index += 1;
        index < limit
    })?;
    if let Some(e) = io_err {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(CliError::io("stdout", e));
        }
    }
    out.flush().ok();
    if ctx.json {
        let summary = json!({
            "schema": "wlgroup.iso-list/1",
            "listed": index,
            "count": list.count,
            "fully_verified": list.fully_verified,
            "candidates": list.candidates,
            "mode": list.mode,
            "evidence": list.evidence,
            "elapsed_ms": list.elapsed_ms,
        });
        eprintln!("{summary}");
    } else {
        eprintln!("listed {index} isomorphisms ({} fully verified)", list.fully_verified);
    }
    Ok(())
}

fn labels_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.labels.json"))
}

pub fn canon(ctx: &Ctx, args: &CanonArgs) -> CliResult<()> {
    let g = ctx.load(&args.input)?;
    let mode = args.mode.resolve(args.k + 1);
    let cfg = canon_config(args.k, args.variant, !args.count_free, mode, ctx.budget);
    let form: CanonicalForm = canonical_form(&g, &cfg)?;
    let text = form.to_cay_string();
    if let Some(out) = &args.out {
        write_file(out, &text)?;
        let labels = labels_path(out);
        write_file(&labels, &format!("{}\n", serde_json::to_string(&form.labeling).expect("serializable")))?;
        if ctx.json {
            print_json(&json!({ "schema": "wlgroup.canon/1", "table": out, "labels": labels, "form": form }));
        } else {
            println!("{}", out.display());
            println!("{}", labels.display());
        }
    } else if ctx.json {
        print_json(&json!({ "schema": "wlgroup.canon/1", "cay": text, "form": form }));
    } else {
        print!("{text}");
    }
    Ok(())
}
