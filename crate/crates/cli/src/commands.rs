use std::collections::BTreeMap;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use cealg::algfile::{self, LoadedFile};
use cealg::constructions::{central_extension, cyclify, CycNames};
use cealg::random::Sampler;
use cealg::superminkowski::build_superminkowski;
use cealg::tduality::{validate_config, TDualityQuintuple};
use cealg::twisted::{twisted_cocycles, twisted_d};
use cealg::{library, Check, Element, Parity, Presentation};

use crate::report::Report;

/// Read a definition file, or a library entry given as `lib:NAME`.
pub fn load(source: &str) -> Result<LoadedFile> {
    if let Some(name) = source.strip_prefix("lib:") {
        let presentation = library::get(name)?;
        return Ok(LoadedFile { presentation, elements: Vec::new() });
    }
    let text = fs::read_to_string(source).with_context(|| format!("cannot read {source}"))?;
    algfile::load(&text).map_err(|e| anyhow!("{source}: {e}"))
}

fn resolve(file: &LoadedFile, text: &str, what: &str) -> Result<Element> {
    file.resolve(text).map_err(|e| anyhow!("{what} {text:?}: {e}"))
}

/// Adds the `d^2 = 0` check and returns whether it passed.
fn square_check(report: &mut Report, p: &Presentation) -> bool {
    match p.verify_d_squared() {
        Ok(()) => {
            report.check(Check::pass("d^2 = 0", format!("{} generators", p.generators().len())));
            true
        }
        Err(f) => {
            let name = &p.generators()[f.generator].name;
            report.check(Check::fail("d^2 = 0", format!("d^2({name}) = {}", f.residual)));
            false
        }
    }
}

pub fn check(report: &mut Report, source: &str) -> Result<()> {
    let file = load(source)?;
    let p = &file.presentation;
    report.value("field", p.algebra().field().tag());
    report.value("generators", p.generators().len());
    square_check(report, p);
    Ok(())
}

pub fn cohomology(report: &mut Report, source: &str, max_degree: u32) -> Result<()> {
    let file = load(source)?;
    if !square_check(report, &file.presentation) {
        return Ok(());
    }
    let h = file.presentation.cohomology(max_degree);
    report.value("dims", format!("{:?}", h.dims));
    for (n, reps) in h.representatives.iter().enumerate() {
        let list: Vec<String> = reps.iter().map(|e| e.to_string()).collect();
        report.value(format!("H^{n}"), format!("{} [{}]", h.dims[n], list.join(", ")));
    }
    report.note(h.window_note());
    Ok(())
}

pub fn cyclify_cmd(report: &mut Report, source: &str, canonical: &str) -> Result<()> {
    let file = load(source)?;
    let p = &file.presentation;
    if !square_check(report, p) {
        return Ok(());
    }
    let mut names = CycNames::default_for(p);
    names.canonical = canonical.into();
    let c = cyclify(p, &names)?;
    if p.generators().iter().any(|g| g.parity == Parity::Odd) {
        report.note("input has odd-parity generators; cyclification of super presentations is experimental");
    }
    report.check(Check::new(
        "d^2 = 0 on the cyclification",
        c.presentation().verify_d_squared().is_ok(),
        format!("{} generators", c.presentation().generators().len()),
    ));
    report.section("cyclification", algfile::dump(c.presentation(), &[]));
    Ok(())
}

pub fn hofib(report: &mut Report, source: &str, cocycle: &str, name: Option<&str>) -> Result<()> {
    let file = load(source)?;
    let p = &file.presentation;
    if !square_check(report, p) {
        return Ok(());
    }
    let c = resolve(&file, cocycle, "cocycle")?;
    let dc = p.d(&c);
    report.check(Check::residual("cocycle is closed", &dc));
    if !dc.is_zero() {
        return Ok(());
    }
    let degree = c.bidegree().map(|b| b.0).ok_or_else(|| anyhow!("cocycle {c} is zero or not homogeneous"))?;
    let fiber = name.map_or_else(|| format!("y{}", degree.saturating_sub(1)), str::to_string);
    let ext = central_extension(p, &c, &fiber)?;
    report.value("cocycle", &c);
    report.value("fiber", format!("{fiber} (degree {})", degree - 1));
    report.check(Check::new(
        "d^2 = 0 on the extension",
        ext.total().verify_d_squared().is_ok(),
        format!("d {fiber} = {c}"),
    ));
    report.section("extension", algfile::dump(ext.total(), &[]));
    Ok(())
}

pub struct TdArgs<'a> {
    pub source: &'a str,
    pub c1: &'a str,
    pub c2: &'a str,
    pub h3: &'a str,
    pub names: (&'a str, &'a str),
}

/// Runs all three configuration checks (not just the first failing one).
/// Returns the derived quintuple when every check passes.
fn td_config(report: &mut Report, args: &TdArgs) -> Result<Option<TDualityQuintuple>> {
    let file = load(args.source)?;
    let p = &file.presentation;
    if !square_check(report, p) {
        return Ok(None);
    }
    let c1 = resolve(&file, args.c1, "--c1")?;
    let c2 = resolve(&file, args.c2, "--c2")?;
    let h3 = resolve(&file, args.h3, "--h3")?;
    for (label, e, degree) in [("c1", &c1, 2), ("c2", &c2, 2), ("h3", &h3, 3)] {
        if !e.is_zero() && e.bidegree() != Some((degree, Parity::Even)) {
            bail!("{label} = {e} is not of bidegree ({degree}, even)");
        }
    }
    report.check(Check::residual("first cocycle closed", &p.d(&c1)));
    report.check(Check::residual("second cocycle closed", &p.d(&c2)));
    report.check(Check::residual("dh3 = c1 c2", &(p.d(&h3) - &c1 * &c2)));
    if !report.passed() {
        return Ok(None);
    }
    let cfg = validate_config(p, &c1, &c2, &h3)?;
    report.check(Check::new(
        "classifying morphism CE(btfold) -> CE(g)",
        cfg.classifying_morphism().verify().is_ok(),
        "x2c -> c1, x2t -> c2, y3 -> h3",
    ));
    Ok(Some(cfg.derive_quintuple(args.names)?))
}

pub fn tduality_verify(report: &mut Report, args: &TdArgs) -> Result<()> {
    td_config(report, args)?;
    Ok(())
}

pub fn tduality_quintuple(report: &mut Report, args: &TdArgs) -> Result<()> {
    let Some(q) = td_config(report, args)? else { return Ok(()) };
    report.value("a1", q.a1());
    report.value("a2", q.a2());
    report.value("b", q.kernel());
    report.check(Check::new("a1 closed", q.quintuple().twist1().presentation().d(q.a1()).is_zero(), ""));
    report.check(Check::new("a2 closed", q.quintuple().twist2().presentation().d(q.a2()).is_zero(), ""));
    report.check(Check::residual("d b = pi1^* a1 - pi2^* a2", &q.kernel_residual()));
    let fp = q.fiber_product();
    report.section("first extension", algfile::dump(fp.first().total(), &[("a1".into(), q.a1().clone())]));
    report.section("second extension", algfile::dump(fp.second().total(), &[("a2".into(), q.a2().clone())]));
    report.section("fiber product", algfile::dump(fp.total(), &[("b".into(), q.kernel().clone())]));
    Ok(())
}

pub fn tduality_fm_sample(report: &mut Report, args: &TdArgs, seed: u64, samples: usize, window: u32) -> Result<()> {
    let Some(q) = td_config(report, args)? else { return Ok(()) };
    let phi = q.quintuple();
    let mut sampler = Sampler::new(seed);
    let (mut forward, mut backward) = (0, 0);
    let mut signs: BTreeMap<&str, usize> = BTreeMap::new();
    for k in 0..samples {
        let degree = (k % 4) as i64 - 1;
        let w = sampler.cochain(phi.side1().base().algebra(), degree, window, 3);
        forward += usize::from(phi.inverse_transform(&phi.transform(&w)?)? == w);
        let v = sampler.cochain(phi.side2().base().algebra(), degree, window, 3);
        backward += usize::from(phi.transform(&phi.inverse_transform(&v)?)? == v);
        let sign = match phi.intertwining_sign(&w)? {
            Some(1) => "+1",
            Some(-1) => "-1",
            Some(_) => "both sides zero",
            None => "neither",
        };
        *signs.entry(sign).or_default() += 1;
    }
    report.check(Check::new("u Phi_-b Phi_b = id", forward == samples, format!("{forward}/{samples}")));
    report.check(Check::new("Phi_b u Phi_-b = id", backward == samples, format!("{backward}/{samples}")));
    let mut preserved = 0;
    let mut total = 0;
    for class in 0..2 {
        for w in twisted_cocycles(phi.twist1(), class, window) {
            total += 1;
            preserved += usize::from(twisted_d(phi.twist2(), &phi.transform(&w)?)?.is_zero());
        }
    }
    report.check(Check::new(
        "Phi maps twisted cocycles to twisted cocycles",
        preserved == total,
        format!("{preserved}/{total} basis cocycles in window {window}"),
    ));
    let observed: Vec<String> = signs.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    report.value("observed sign s in d_a2 Phi = s Phi d_a1", observed.join(", "));
    report.value("samples", format!("{samples} (seed {seed}, window {window})"));
    Ok(())
}

pub fn superminkowski_verify(report: &mut Report) -> Result<()> {
    let sm = build_superminkowski()?;
    let (charge, lowering) = sm.gamma().convention();
    report.value(
        "gamma words",
        sm.gamma().words().iter().map(cealg::superminkowski::word_string).collect::<Vec<_>>().join(" "),
    );
    report.value("charge conjugation", charge);
    report.value("index lowering", lowering);
    for a in sm.gamma().attempts() {
        report.value(format!("convention {} / {}", a.charge, a.lowering), &a.outcome);
    }
    for c in sm.gamma().verify() {
        report.check(c);
    }
    for c in sm.verify() {
        report.check(c);
    }
    report.value("c2A terms", sm.c2a().len());
    report.value("mu81 terms", sm.mu81().len());
    Ok(())
}

pub fn superminkowski_hori(report: &mut Report, seed: u64, samples: usize, window: u32) -> Result<()> {
    let sm = build_superminkowski()?;
    for c in sm.hori(seed, samples, window)? {
        report.check(c);
    }
    report.value("samples", format!("{samples} (seed {seed}, window {window})"));
    Ok(())
}

pub fn library_list(report: &mut Report) -> Result<()> {
    let mut body = String::new();
    for name in library::names() {
        body.push_str(&name);
        body.push('\n');
    }
    report.section("entries", body);
    report.note("lS<n> and b<n>u1 resolve for any n >= 1");
    Ok(())
}

pub fn library_dump(report: &mut Report, name: &str) -> Result<()> {
    let p = library::get(name)?;
    report.section(name.to_string(), algfile::dump(&p, &[]));
    Ok(())
}
