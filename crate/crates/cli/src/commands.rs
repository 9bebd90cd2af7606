use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context as _, Result};
use itertools::Itertools;
use serde_json::{json, Value};

use taustrat::exceptional::{delta_sequence, verify_signed_sequence};
use taustrat::homology::{tau, tau_inverse};
use taustrat::serial::{module_from_json, sequence_from_json, sequence_to_json, ModuleJson};
use taustrat::strat::{
    build_delta, is_tf_proper, psi, stratification_profile, verify_pss, SearchCaps,
};
use taustrat::tilting::{
    bongartz_indices, enumerate_support_tau_tilting, tau_tilting_indices, tf_admissible_permutations,
    TauRigidPair, TfAdmissibleOrder,
};
use taustrat::universe::{enumerate_indecomposables, EnumerationCaps, Universe};
use taustrat::{hom_basis, parse_algebra, Algebra, Field, Representation};

use crate::{AlgebraCmd, Cli, Command, ExseqCmd, Format, IndecCmd, SsCmd, TautiltCmd};

pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub struct Context<'a> {
    pub cli: &'a Cli,
    pub algebra: Arc<Algebra>,
    universe: Option<Universe>,
}

impl<'a> Context<'a> {
    pub fn load(cli: &'a Cli, file: &Path) -> Result<Self> {
        if file.as_os_str().is_empty() {
            bail!(taustrat::Error::Precondition("empty algebra path".into()));
        }
        let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
        let mut algebra = parse_algebra(&text)?;
        if let Some(p) = cli.field_char {
            algebra = algebra.with_field(Field::new(p)?)?;
        }
        Ok(Context {
            cli,
            algebra,
            universe: None,
        })
    }

    pub fn caps(&self) -> SearchCaps {
        SearchCaps {
            hom_elements: self.cli.hom_cap,
        }
    }

    pub fn universe(&mut self) -> Result<&Universe> {
        if self.universe.is_none() {
            let caps = EnumerationCaps {
                dim_bound: self.cli.dim_bound,
                iteration_bound: self.cli.iteration_bound,
            };
            self.universe = Some(enumerate_indecomposables(&self.algebra, caps)?);
        }
        Ok(self.universe.as_ref().unwrap())
    }

    /// Summand names joined by `+`/`⊕`/`,`, `0`, inline JSON or `@file.json`.
    /// Named specs also return the universe indices in the order given.
    pub fn module(&mut self, spec: &str) -> Result<(Representation, Option<Vec<usize>>)> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix('@') {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            return Ok((module_from_json(&self.algebra, &text)?, None));
        }
        if spec.starts_with('{') {
            return Ok((module_from_json(&self.algebra, spec)?, None));
        }
        if spec == "0" {
            return Ok((Representation::zero(&self.algebra), Some(Vec::new())));
        }
        let u = self.universe()?;
        let idx: Vec<usize> = spec
            .split(['+', '⊕', ','])
            .map(|name| {
                let name = name.trim();
                u.index_of(name)
                    .ok_or_else(|| anyhow::Error::new(taustrat::Error::UnknownModule(name.into())))
            })
            .collect::<Result<_>>()?;
        Ok((u.sum(&idx), Some(idx)))
    }

    /// Indecomposable summands as universe indices, in the order given.
    pub fn summands(&mut self, spec: &str) -> Result<Vec<usize>> {
        match self.module(spec)? {
            (_, Some(idx)) => Ok(idx),
            (m, None) => Ok(self.universe()?.decompose_indices(&m)?),
        }
    }

    pub fn name_of(&mut self, m: &Representation) -> Result<String> {
        if m.is_zero() {
            return Ok("0".into());
        }
        let u = self.universe()?;
        let idx = u.decompose_indices(m)?;
        Ok(u.sum_name(&idx))
    }
}

/// Parses `2,1,3` (1-based) into a permutation of `0..len`.
pub fn parse_positions(text: &str, len: usize) -> Result<Vec<usize>> {
    let pos: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().context("order entries must be positive integers"))
        .collect::<Result<_>>()?;
    let mut sorted = pos.clone();
    sorted.sort_unstable();
    if sorted != (1..=len).collect::<Vec<_>>() {
        bail!(taustrat::Error::Precondition(format!("order must be a permutation of 1..{len}")));
    }
    Ok(pos.into_iter().map(|p| p - 1).collect())
}

fn render(format: Format, json: Value, text: String, tsv: Option<String>) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).expect("json")),
        Format::Tsv => tsv.unwrap_or(text),
        Format::Text => text,
    }
}

fn done(ctx: &Context, json: Value, text: String, tsv: Option<String>) -> Result<Output> {
    Ok(Output {
        text: render(ctx.cli.format, json, text, tsv),
        ok: true,
    })
}

fn dims(m: &Representation) -> String {
    format!("({})", m.dims().iter().join(","))
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Algebra(AlgebraCmd::Check { file }) => algebra_check(&mut Context::load(cli, file)?),
        Command::Indec(IndecCmd::List { file }) => indec_list(&mut Context::load(cli, file)?),
        Command::Hom { file, m, n } => hom(&mut Context::load(cli, file)?, m, n),
        Command::Tau { file, module, inverse } => tau_cmd(&mut Context::load(cli, file)?, module, *inverse),
        Command::Tautilt(TautiltCmd::List { file, support }) => tautilt(&mut Context::load(cli, file)?, *support),
        Command::Bongartz { file, module } => bongartz(&mut Context::load(cli, file)?, module),
        Command::Ss(SsCmd::Build { file, module, order }) => {
            ss_build(&mut Context::load(cli, file)?, module, order.as_deref())
        }
        Command::Ss(SsCmd::Enumerate { file, module }) => ss_enumerate(&mut Context::load(cli, file)?, module),
        Command::Ss(SsCmd::Table { file, audit, expected }) => {
            let expected = expected.clone().or_else(|| crate::table::default_expected(file));
            crate::table::run(&mut Context::load(cli, file)?, *audit, expected.as_deref())
        }
        Command::Profile { file, order } => profile(&mut Context::load(cli, file)?, order.as_deref()),
        Command::Exseq(ExseqCmd::Build { file, module, order }) => {
            exseq_build(&mut Context::load(cli, file)?, module, order.as_deref())
        }
        Command::Exseq(ExseqCmd::Verify { file, sequence }) => exseq_verify(&mut Context::load(cli, file)?, sequence),
    }
}

fn algebra_check(ctx: &mut Context) -> Result<Output> {
    let a = ctx.algebra.clone();
    let proj_dims: Vec<Vec<usize>> = (0..a.vertex_count())
        .map(|v| Ok(Representation::projective(&a, v)?.dims().to_vec()))
        .collect::<Result<_>>()?;
    let mut text = String::new();
    writeln!(text, "field: F_{}", a.field().characteristic())?;
    writeln!(text, "vertices: {}", a.vertex_count())?;
    for arrow in a.arrows() {
        writeln!(text, "arrow {}: {} -> {}", arrow.name, arrow.source + 1, arrow.target + 1)?;
    }
    writeln!(text, "dimension: {}", a.dimension())?;
    for (v, d) in proj_dims.iter().enumerate() {
        writeln!(text, "P{}: ({})", v + 1, d.iter().join(","))?;
    }
    let json = json!({
        "field": a.field().characteristic(),
        "vertices": a.vertex_count(),
        "arrows": a.arrows().iter().map(|x| json!({"name": x.name, "source": x.source + 1, "target": x.target + 1})).collect::<Vec<_>>(),
        "dimension": a.dimension(),
        "projective_dims": proj_dims,
    });
    done(ctx, json, text, None)
}

fn indec_list(ctx: &mut Context) -> Result<Output> {
    let u = ctx.universe()?;
    let mut text = String::new();
    let mut tsv = String::from("name\tdim_vector\tloewy_layers\tprojective\tinjective\ttau\n");
    let mut rows = Vec::new();
    for i in 0..u.len() {
        let m = u.module(i);
        let tau_name = match u.identify(u.tau(i))? {
            Some(j) => u.name(j).to_string(),
            None => "0".to_string(),
        };
        let layers = m.loewy_layers().iter().map(|l| format!("({})", l.iter().join(","))).join("/");
        let mut flags = Vec::new();
        if u.is_projective(i) {
            flags.push("projective");
        }
        if u.is_injective(i) {
            flags.push("injective");
        }
        writeln!(text, "{:<5} {:<10} layers {:<24} τ = {:<4} {}", u.name(i), dims(m), layers, tau_name, flags.join(" "))?;
        writeln!(tsv, "{}\t{}\t{}\t{}\t{}\t{}", u.name(i), dims(m), layers, u.is_projective(i), u.is_injective(i), tau_name)?;
        rows.push(json!({
            "name": u.name(i),
            "dim_vector": m.dims(),
            "loewy_layers": m.loewy_layers(),
            "projective": u.is_projective(i),
            "injective": u.is_injective(i),
            "tau": tau_name,
            "module": ModuleJson::from_module(m),
        }));
    }
    writeln!(text, "{} indecomposable modules", u.len())?;
    done(ctx, Value::Array(rows), text, Some(tsv))
}

fn hom(ctx: &mut Context, m: &str, n: &str) -> Result<Output> {
    let (m, _) = ctx.module(m)?;
    let (n, _) = ctx.module(n)?;
    let basis = hom_basis(&m, &n)?;
    let mut text = format!("dim Hom = {}\n", basis.len());
    let as_json: Vec<Value> = basis
        .iter()
        .map(|f| {
            Value::Array(
                f.maps()
                    .iter()
                    .map(|mat| json!((0..mat.rows()).map(|r| (0..mat.cols()).map(|c| mat.get(r, c)).collect::<Vec<_>>()).collect::<Vec<_>>()))
                    .collect(),
            )
        })
        .collect();
    for (k, f) in as_json.iter().enumerate() {
        writeln!(text, "basis {}: {}", k + 1, f)?;
    }
    done(ctx, json!({"dim": basis.len(), "basis": as_json}), text, None)
}

fn tau_cmd(ctx: &mut Context, spec: &str, inverse: bool) -> Result<Output> {
    let (m, _) = ctx.module(spec)?;
    let t = if inverse { tau_inverse(&m)? } else { tau(&m)? };
    let name = ctx.name_of(&t)?;
    let json = json!({"name": name, "module": ModuleJson::from_module(&t)});
    done(ctx, json, format!("{name}\n"), None)
}

fn tautilt(ctx: &mut Context, support: bool) -> Result<Output> {
    let u = ctx.universe()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    if support {
        for s in enumerate_support_tau_tilting(u)? {
            let proj = s.projective_vertices.iter().map(|v| format!("P{}", v + 1)).join("⊕");
            let proj = if proj.is_empty() { "0".to_string() } else { proj };
            writeln!(text, "({}, {})", u.sum_name(&s.module), proj)?;
            rows.push(json!({"module": s.module.iter().map(|&i| u.name(i)).collect::<Vec<_>>(), "projective_vertices": s.projective_vertices.iter().map(|v| v + 1).collect::<Vec<_>>()}));
        }
    } else {
        for t in tau_tilting_indices(u)? {
            writeln!(text, "{}", u.sum_name(&t))?;
            rows.push(json!(t.iter().map(|&i| u.name(i)).collect::<Vec<_>>()));
        }
    }
    let tsv = text.clone();
    done(ctx, Value::Array(rows), text, Some(tsv))
}

fn bongartz(ctx: &mut Context, spec: &str) -> Result<Output> {
    let (m, _) = ctx.module(spec)?;
    let u = ctx.universe()?;
    let idx = bongartz_indices(&m, u)?;
    let name = u.sum_name(&idx);
    let json = json!({"module": idx.iter().map(|&i| u.name(i)).collect::<Vec<_>>()});
    done(ctx, json, format!("{name}\n"), None)
}

fn order_from(ctx: &mut Context, spec: &str, order: Option<&str>) -> Result<(Vec<usize>, TfAdmissibleOrder)> {
    let idx = ctx.summands(spec)?;
    let idx = match order {
        Some(o) => parse_positions(o, idx.len())?.into_iter().map(|p| idx[p]).collect(),
        None => idx,
    };
    let u = ctx.universe()?;
    let mods: Vec<Representation> = idx.iter().map(|&i| u.module(i).clone()).collect();
    TauRigidPair::new(mods.clone())?;
    Ok((idx, TfAdmissibleOrder::new(mods)?))
}

fn names(u: &Universe, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| u.name(i).to_string()).collect()
}

fn grid_text(label: &str, grid: &[Vec<usize>]) -> String {
    let mut s = format!("{label}:\n");
    for row in grid {
        let _ = writeln!(s, "  {}", row.iter().join(" "));
    }
    s
}

fn ss_build(ctx: &mut Context, spec: &str, order: Option<&str>) -> Result<Output> {
    let caps = ctx.caps();
    let (idx, ord) = order_from(ctx, spec, order)?;
    let u = ctx.universe()?;
    let sys = build_delta(&ord, Some(u))?;
    let delta: Vec<usize> = sys
        .theta
        .iter()
        .map(|d| u.identify(d)?.ok_or(taustrat::Error::IncompleteUniverse))
        .collect::<Result<_, _>>()?;
    let proper = is_tf_proper(&ord, caps)?;
    let epss = if proper {
        Some(verify_pss(&psi(&ord, caps)?, u, caps)?.passed())
    } else {
        None
    };
    let mut text = String::new();
    writeln!(text, "order: ({})", names(u, &idx).join(", "))?;
    writeln!(text, "Δ: ({})", names(u, &delta).join(", "))?;
    text.push_str(&grid_text("dim Hom(Δ(j), Δ(i)) [row j, column i]", &sys.hom));
    text.push_str(&grid_text("dim Ext¹(Δ(j), Δ(i)) [row j, column i]", &sys.ext));
    writeln!(text, "module filtered by Δ: {proper}")?;
    if let Some(e) = epss {
        writeln!(text, "Ext-projective system (Δ, summands): {}", if e { "verified" } else { "failed" })?;
    }
    let json = json!({
        "order": names(u, &idx),
        "delta": names(u, &delta),
        "hom": sys.hom,
        "ext": sys.ext,
        "tf_proper": proper,
        "epss_verified": epss,
    });
    done(ctx, json, text, None)
}

fn ss_enumerate(ctx: &mut Context, spec: &str) -> Result<Output> {
    let caps = ctx.caps();
    let idx = ctx.summands(spec)?;
    let u = ctx.universe()?;
    let pair = TauRigidPair::from_universe(u, &idx)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for perm in tf_admissible_permutations(&pair)? {
        let ord_idx: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
        let ord = TfAdmissibleOrder::new(ord_idx.iter().map(|&i| u.module(i).clone()).collect())?;
        let sys = build_delta(&ord, Some(u))?;
        let delta: Vec<usize> = sys
            .theta
            .iter()
            .map(|d| u.identify(d)?.ok_or(taustrat::Error::IncompleteUniverse))
            .collect::<Result<_, _>>()?;
        let proper = is_tf_proper(&ord, caps)?;
        writeln!(
            text,
            "({}) -> Δ = ({}){}",
            names(u, &ord_idx).join(", "),
            names(u, &delta).join(", "),
            if proper { "  [filtered]" } else { "" }
        )?;
        rows.push(json!({"order": names(u, &ord_idx), "delta": names(u, &delta), "tf_proper": proper}));
    }
    done(ctx, Value::Array(rows), text, None)
}

fn profile(ctx: &mut Context, order: Option<&str>) -> Result<Output> {
    let n = ctx.algebra.vertex_count();
    let orders: Vec<Vec<usize>> = match order {
        Some(o) => vec![parse_positions(o, n)?],
        None => (0..n).permutations(n).collect(),
    };
    let caps = ctx.caps();
    let mut text = String::new();
    let mut rows = Vec::new();
    for o in orders {
        let p = stratification_profile(&ctx.algebra.clone(), &o, caps)?;
        let std_names: Vec<String> = p.standard_modules.iter().map(|m| ctx.name_of(m)).collect::<Result<_>>()?;
        let label = o.iter().map(|v| v + 1).join("<");
        writeln!(
            text,
            "{label}: Δ = ({})  standardly stratified: {}  quasi-hereditary: {}",
            std_names.join(", "),
            p.standardly_stratified,
            p.quasi_hereditary
        )?;
        rows.push(json!({
            "order": o.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "standard_modules": std_names,
            "standardly_stratified": p.standardly_stratified,
            "quasi_hereditary": p.quasi_hereditary,
        }));
    }
    done(ctx, Value::Array(rows), text, None)
}

fn exseq_build(ctx: &mut Context, spec: &str, order: Option<&str>) -> Result<Output> {
    let (_, ord) = order_from(ctx, spec, order)?;
    let seq = delta_sequence(&ord)?;
    let u = ctx.universe()?;
    let verdict = verify_signed_sequence(&seq, u)?;
    if !verdict.passed() {
        bail!(taustrat::Error::Invariant(format!("induced sequence failed verification: {verdict}")));
    }
    let body = sequence_to_json(&seq)?;
    let text = match ctx.cli.format {
        Format::Json => format!("{body}\n"),
        _ => {
            let entries: Vec<String> = seq.entries.iter().map(|e| ctx.name_of(&e.module)).collect::<Result<_>>()?;
            format!("({})\nverification: pass\n", entries.iter().map(|e| format!("{e} ⊔ 0")).join(", "))
        }
    };
    Ok(Output { text, ok: true })
}

fn exseq_verify(ctx: &mut Context, path: &Path) -> Result<Output> {
    let body = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let seq = sequence_from_json(&ctx.algebra, &body)?;
    let u = ctx.universe()?;
    let verdict = verify_signed_sequence(&seq, u)?;
    let json = json!({"passed": verdict.passed(), "verdict": verdict.to_string()});
    let mut out = done(ctx, json, format!("{verdict}\n"), None)?;
    out.ok = verdict.passed();
    Ok(out)
}
