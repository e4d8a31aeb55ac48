//! `gvcalc`: exact Godbillon-Vey computations from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gv_core::chern_weil::top_description;
use gv_core::roots::{delta_h1_root, root_data, root_table};
use gv_core::tables::{self, check_row, documented_ratio, RowStatus, TableKind};
use gv_core::weil::{vey_basis, wo_cohomology};
use gv_core::{
    build_family, compact_dual, compute_cg, compute_rg, delta_gv, even_sl_vanishing, ExactScalar, Family, FamilySpec,
    GvError,
};

mod config;
mod output;

use config::Config;
use output::{scalar_json, Format, Report};

#[derive(Parser, Debug)]
#[command(name = "gvcalc", version, about = "Exact Godbillon-Vey classes of homogeneous foliations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Add decimal approximations with this many digits.
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// key = value file with per-family `n_max` budgets.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Δ(h_1 c_1^q), its coefficient, and c_G, r_G where defined.
    Gv(FamilyArgs),
    /// The constant c_G.
    Cg(FamilyArgs),
    /// The constant r_G.
    Rg(FamilyArgs),
    /// Vey basis of H(WO_q).
    Vey(QArgs),
    /// Betti numbers of WO_q by brute force.
    WoCohomology(QArgs),
    /// Positive roots, the roots spanning v, and Δ(h_1) from the root sum.
    Roots(FamilyArgs),
    /// Basis, decomposition and structure constants.
    DumpAlgebra(FamilyArgs),
    /// Vanishing certificate for even codimension in the projective family.
    Vanish(QArgs),
    /// Recompute every printed table row.
    VerifyTables(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Sl,
    So,
    Su,
    Sp,
    F4,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Sl => Family::Sl,
            FamilyArg::So => Family::So,
            FamilyArg::Su => Family::Su,
            FamilyArg::Sp => Family::Sp,
            FamilyArg::F4 => Family::F4,
        }
    }
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Family parameter (so, su, sp).
    #[arg(long)]
    n: Option<u32>,
    /// Codimension (sl only).
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args, Debug)]
struct QArgs {
    #[arg(long)]
    q: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Gv,
    Base,
    Cg,
    Rg,
}

impl From<KindArg> for TableKind {
    fn from(k: KindArg) -> TableKind {
        match k {
            KindArg::Gv => TableKind::Gv,
            KindArg::Base => TableKind::BaseFactor,
            KindArg::Cg => TableKind::CG,
            KindArg::Rg => TableKind::RG,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Only this table.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Require exact agreement with the printed rows; documented errata count as mismatches.
    #[arg(long)]
    strict: bool,
}

/// Failure with its exit status.
struct Fail {
    code: u8,
    message: String,
}

impl From<GvError> for Fail {
    fn from(e: GvError) -> Fail {
        let code = match e {
            GvError::ParameterOutOfRange(_) | GvError::NoEulerProportionality(_) | GvError::Budget(_) => 2,
            _ => 3,
        };
        Fail { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Fail {
    Fail { code: 2, message: message.into() }
}

fn resolve(args: &FamilyArgs, cfg: &Config) -> Result<FamilySpec, Fail> {
    let family: Family = args.family.into();
    let n = match (family, args.n, args.q) {
        (Family::F4, None, None) => 0,
        (Family::F4, _, _) => return Err(usage("f4 takes no parameter")),
        (Family::Sl, None, Some(q)) => q,
        (Family::Sl, _, _) => return Err(usage("sl takes --q and not --n")),
        (_, Some(n), None) => n,
        (_, _, _) => return Err(usage(format!("{family} takes --n and not --q"))),
    };
    let spec = FamilySpec::new(family, n)?;
    let max = cfg.n_max(family);
    if family != Family::F4 && n > max {
        return Err(usage(format!("{family} parameter {n} exceeds n_max = {max}; raise it with --config")));
    }
    Ok(spec)
}

fn spec_json(spec: FamilySpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("family".into(), json!(spec.family.name()));
    if spec.family == Family::Sl {
        m.insert("q".into(), json!(spec.n));
    } else if spec.family != Family::F4 {
        m.insert("n".into(), json!(spec.n));
        m.insert("q".into(), json!(spec.q()));
    } else {
        m.insert("q".into(), json!(spec.q()));
    }
    m
}

fn scalar_field(r: &mut Report, key: &str, v: Option<&ExactScalar>) {
    r.scalar(key, v);
}

fn cmd_gv(spec: FamilySpec, digits: Option<usize>) -> Result<Report, Fail> {
    let data = build_family(spec)?;
    let res = delta_gv(&data)?;
    let mut r = Report::new(spec_json(spec), digits);
    r.text_line(format!("family: {spec}"));
    r.field("top_monomial", json!(top_description(spec)));
    scalar_field(&mut r, "gv_coefficient", Some(&res.gv_coefficient));
    scalar_field(&mut r, "gv_normalized", Some(&res.gv_normalized));
    scalar_field(&mut r, "c_G", res.c_g.as_ref());
    scalar_field(&mut r, "r_G", res.r_g.as_ref());
    r.field("delta_h1", json!(res.delta_h1));
    r.field("delta_c1", json!(res.delta_c1));
    r.field("delta_gv_terms", json!(res.delta_gv_terms));
    r.field("notes", json!(res.notes));
    Ok(r)
}

fn cmd_cg(spec: FamilySpec, digits: Option<usize>) -> Result<Report, Fail> {
    let c = compute_cg(spec)?;
    let mut r = Report::new(spec_json(spec), digits);
    r.text_line(format!("family: {spec}"));
    scalar_field(&mut r, "c_G", Some(&c));
    Ok(r)
}

fn cmd_rg(spec: FamilySpec, digits: Option<usize>) -> Result<Report, Fail> {
    let dual = compact_dual(spec)?;
    let v = compute_rg(spec)?;
    let mut r = Report::new(spec_json(spec), digits);
    r.text_line(format!("family: {spec}"));
    scalar_field(&mut r, "r_G", Some(&v));
    r.field("compact_dual", json!(dual.dual_name));
    r.field("euler_number", json!(dual.euler_number));
    scalar_field(&mut r, "volume", Some(&dual.volume));
    Ok(r)
}

fn cmd_vey(q: usize) -> Result<Report, Fail> {
    let basis = vey_basis(q)?;
    let mut r = Report::new(Map::from_iter([("q".to_string(), json!(q))]), None);
    let rows: Vec<Value> = basis
        .monomials
        .iter()
        .map(|m| json!({"monomial": m.monomial.to_string(), "degree": m.degree, "tag": format!("{:?}", m.tag).to_lowercase()}))
        .collect();
    r.table(&["monomial", "degree", "tag"], rows, "monomials");
    let counts: Map<String, Value> = basis.counts().into_iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
    r.field("counts", Value::Object(counts));
    Ok(r)
}

fn cmd_wo(q: usize) -> Result<Report, Fail> {
    let betti = wo_cohomology(q)?;
    let mut r = Report::new(Map::from_iter([("q".to_string(), json!(q))]), None);
    let rows: Vec<Value> = betti.iter().map(|(d, b)| json!({"degree": d, "dimension": b})).collect();
    r.table(&["degree", "dimension"], rows, "betti");
    Ok(r)
}

fn cmd_roots(spec: FamilySpec, digits: Option<usize>) -> Result<Report, Fail> {
    let data = build_family(spec)?;
    let rs = root_data(&data)?;
    let mut r = Report::new(spec_json(spec), digits);
    let coords = |v: &[gv_core::linalg::Q]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    let rows: Vec<Value> = root_table(&rs)
        .into_iter()
        .map(|(root, psi)| json!({"root": coords(&root), "in_psi": psi}))
        .collect();
    r.table(&["root", "in_psi"], rows, "positive_roots");
    r.field("cartan", json!(rs.cartan_indices.iter().map(|&i| data.labels[i].clone()).collect::<Vec<_>>()));
    r.field("psi_sum", json!(coords(&rs.psi_sum())));
    let h1 = delta_h1_root(&rs);
    r.field("delta_h1_coords", json!(coords(&h1.coords)));
    scalar_field(&mut r, "delta_h1_prefactor", Some(&h1.prefactor));
    Ok(r)
}

fn cmd_dump(spec: FamilySpec) -> Result<Report, Fail> {
    let data = build_family(spec)?;
    let j = data.to_json();
    let mut r = Report::raw(j.clone());
    r.text_line(format!("family: {spec}"));
    r.text_line(format!("dim: {}  backend: {:?}  complete: {}", data.dim(), data.backend, data.complete));
    for (i, (l, p)) in data.labels.iter().zip(&data.parts).enumerate() {
        r.text_line(format!("{i:>3} {l:<24} {p:?}"));
    }
    for name in data.subspace_names() {
        r.text_line(format!("subspace {name}: dim {}", data.subspace(name).map(|s| s.len()).unwrap_or(0)));
    }
    let sc = j["structure_constants"].as_array().cloned().unwrap_or_default();
    r.set_csv(
        vec!["i".into(), "j".into(), "k".into(), "c".into()],
        sc.iter()
            .map(|e| e.as_array().unwrap().iter().map(|x| x.as_str().map(String::from).unwrap_or_else(|| x.to_string())).collect())
            .collect(),
    );
    Ok(r)
}

fn cmd_vanish(q: usize) -> Result<Report, Fail> {
    let cert = even_sl_vanishing(q)?;
    let mut v = serde_json::to_value(&cert).map_err(|e| Fail { code: 3, message: e.to_string() })?;
    v["ratio"] = scalar_json(&cert.ratio, None);
    v["integral"] = scalar_json(&cert.integral, None);
    let mut r = Report::raw(v);
    r.text_line(format!("q = {q}, g = diag({:?}), det g = {}", cert.antipodal, cert.det));
    r.text_line(format!("base factor {} has g* sign {}", cert.base, cert.base_sign));
    r.text_line(format!("fiber factor {} has g* sign {}", cert.fiber, cert.fiber_sign));
    r.text_line(format!("Δ(h_1 c_1^q) invariant: {}", cert.gv_invariant));
    r.text_line(format!("ratio to base ∧ fiber: {}", cert.ratio));
    r.text_line(format!("fiber integral: {}", cert.integral));
    let row = vec![q.to_string(), cert.base_sign.to_string(), cert.fiber_sign.to_string(), cert.gv_invariant.to_string(), cert.integral.to_string()];
    r.set_csv(vec!["q".into(), "base_sign".into(), "fiber_sign".into(), "gv_invariant".into(), "integral".into()], vec![row]);
    Ok(r)
}

fn cmd_verify(args: &VerifyArgs, cfg: &Config, digits: Option<usize>) -> Result<(Report, bool), Fail> {
    let kinds: Vec<TableKind> = match args.kind {
        Some(k) => vec![k.into()],
        None => vec![TableKind::Gv, TableKind::BaseFactor, TableKind::CG, TableKind::RG],
    };
    let mut rows = Vec::new();
    let mut ok = true;
    let (mut matched, mut errata, mut mismatched) = (0, 0, 0);
    for kind in kinds {
        for spec in tables::table_rows_up_to(kind, |f| cfg.n_max(f)) {
            let row = check_row(kind, spec)?;
            let ratio = row.computed.div(&row.printed).ok();
            match row.status {
                RowStatus::Match => matched += 1,
                RowStatus::Erratum => errata += 1,
                RowStatus::Mismatch => mismatched += 1,
            }
            let bad = match row.status {
                RowStatus::Match => false,
                RowStatus::Erratum => args.strict,
                RowStatus::Mismatch => true,
            };
            ok &= !bad;
            let mut o = Map::new();
            o.insert("table".into(), json!(kind.name()));
            o.extend(spec_json(spec));
            o.insert("status".into(), json!(row.status.name()));
            o.insert("printed".into(), scalar_json(&row.printed, digits));
            o.insert("computed".into(), scalar_json(&row.computed, digits));
            o.insert("ratio".into(), ratio.map(|r| scalar_json(&r, None)).unwrap_or(Value::Null));
            if let Some((_, why)) = documented_ratio(kind, spec).filter(|_| row.status == RowStatus::Erratum) {
                o.insert("reason".into(), json!(why));
            }
            rows.push(Value::Object(o));
        }
    }
    let mut r = Report::new(Map::new(), None);
    r.field("strict", json!(args.strict));
    r.field("summary", json!({"match": matched, "erratum": errata, "mismatch": mismatched}));
    r.verify_table(rows);
    Ok((r, ok))
}

fn run(cli: &Cli) -> Result<(Report, bool), Fail> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(usage)?,
        None => Config::default(),
    };
    let d = cli.digits;
    let r = match &cli.cmd {
        Cmd::Gv(a) => cmd_gv(resolve(a, &cfg)?, d)?,
        Cmd::Cg(a) => cmd_cg(resolve(a, &cfg)?, d)?,
        Cmd::Rg(a) => cmd_rg(resolve(a, &cfg)?, d)?,
        Cmd::Vey(a) => cmd_vey(a.q)?,
        Cmd::WoCohomology(a) => cmd_wo(a.q)?,
        Cmd::Roots(a) => cmd_roots(resolve(a, &cfg)?, d)?,
        Cmd::DumpAlgebra(a) => cmd_dump(resolve(a, &cfg)?)?,
        Cmd::Vanish(a) => cmd_vanish(a.q)?,
        Cmd::VerifyTables(a) => return cmd_verify(a, &cfg, d),
    };
    Ok((r, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    match run(&cli) {
        Ok((report, ok)) => {
            print!("{}", report.render(format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
