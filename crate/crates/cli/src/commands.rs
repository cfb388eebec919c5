//! One function per verb; each returns the full output so nothing is printed
//! before the command is known to succeed.

use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use weightlab::checks::{run_suite, Suite};
use weightlab::cubical::{
    additivity_check, hyperres_weight_compare, is_acyclic, parse_diagram, parse_hyperresolution, simple_filtered,
    skeleton_filtration, square_sequence,
};
use weightlab::euler::{
    chain_boundary, euler_integral, incidence_boundary, link, pushforward_cf, pushforward_chain, CellChain,
    CellComplex, CellComplexDoc, ChainDoc, ConstructibleFunction, FunctionDoc, MapDoc,
};
use weightlab::fcomplex::doc::ComplexDoc;
use weightlab::fcomplex::{
    canonical_filtration, pages, purity_collapse_report, reindex, virtual_poincare, weight_profile, FilteredComplex,
    PageSet, Poly,
};
use weightlab::toricfan::{
    fan_virtual_poincare, orbit_sum, parse_fan, standard_fan, toric_cell_complex, toric_filtration, Fan,
};

use crate::render::{self, csv_field, grid, pretty, yes_no, Dims};
use crate::{CubicalArgs, EulerArgs, FanSource, Failure, FiltrationKind, Format, Method, Report, SsArgs};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

/// Prefixes a failure with the file it came from.
fn at(path: &Path) -> impl Fn(Failure) -> Failure + '_ {
    move |f| Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) }
}

fn load_fan(src: &FanSource, param: Option<i64>) -> Result<(String, Fan), Failure> {
    match (&src.fan, &src.standard) {
        (Some(path), _) => {
            let fan = parse_fan(&read(path)?).map_err(Failure::from).map_err(at(path))?;
            Ok((path.display().to_string(), fan))
        }
        (None, Some(name)) => {
            let label = match param {
                Some(p) => format!("{name} {p}"),
                None => name.clone(),
            };
            Ok((label, standard_fan(name, param)?))
        }
        (None, None) => Err(Failure::parse("give --fan or --standard")),
    }
}

fn load_complex(path: &Path) -> Result<FilteredComplex, Failure> {
    let doc: ComplexDoc = read_json(path)?;
    doc.to_filtered().map_err(Failure::from).map_err(at(path))
}

pub fn fan_info(src: &FanSource, param: Option<i64>, format: Format) -> Result<Report, Failure> {
    let (label, fan) = load_fan(src, param)?;
    let cells = toric_cell_complex(&fan)?;
    let n = fan.lattice_rank();
    let cell_counts: Vec<usize> = (0..=n as i32).map(|k| cells.complex.dim(k)).collect();
    let orbits = orbit_sum(&fan);
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "fan: {label}").unwrap();
            writeln!(out, "lattice rank: {n}").unwrap();
            writeln!(out, "simplicial: {}", yes_no(fan.is_simplicial())).unwrap();
            writeln!(out, "rays:").unwrap();
            for (i, r) in fan.rays().iter().enumerate() {
                writeln!(out, "  {i}: {r:?}").unwrap();
            }
            let width = fan.cones().iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
            writeln!(out, "cones:").unwrap();
            writeln!(out, "  {:<width$}  dim  codim  rays", "id").unwrap();
            for c in sorted_cones(&fan) {
                writeln!(out, "  {:<width$}  {:>3}  {:>5}  {:?}", c.id, c.dim, n - c.dim, c.rays).unwrap();
            }
            writeln!(out, "cones by codimension 0..{n}: {:?}", fan.f_vector()).unwrap();
            writeln!(out, "cells by degree 0..{n}: {cell_counts:?}").unwrap();
            writeln!(out, "orbit sum: {orbits}").unwrap();
            for w in fan.warnings() {
                writeln!(out, "warning: {w}").unwrap();
            }
        }
        Format::Doc => {
            let v = json!({
                "fan": label,
                "lattice_rank": n,
                "simplicial": fan.is_simplicial(),
                "rays": fan.rays(),
                "cones": sorted_cones(&fan)
                    .iter()
                    .map(|c| json!({"id": c.id, "dim": c.dim, "codim": n - c.dim, "rays": c.rays}))
                    .collect::<Vec<_>>(),
                "cones_by_codim": fan.f_vector(),
                "cells_by_degree": cell_counts,
                "orbit_sum": render::poly_json(&orbits),
                "warnings": fan.warnings(),
            });
            out = pretty(&v);
        }
        Format::Csv => {
            writeln!(out, "id,dim,codim,rays").unwrap();
            for c in sorted_cones(&fan) {
                let rays = c.rays.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                writeln!(out, "{},{},{},{}", csv_field(&c.id), c.dim, n - c.dim, rays).unwrap();
            }
        }
    }
    Ok(Report::ok(out))
}

fn sorted_cones(fan: &Fan) -> Vec<&weightlab::toricfan::Cone> {
    let mut cones: Vec<_> = fan.cones().iter().collect();
    cones.sort_by(|a, b| a.id.cmp(&b.id));
    cones
}

struct SsInputData {
    label: String,
    source: &'static str,
    fc: FilteredComplex,
    kind: FiltrationKind,
    /// Dimension bound for the support triangle.
    dim: usize,
}

fn load_ss(args: &SsArgs) -> Result<SsInputData, Failure> {
    let input = &args.input;
    let wrong = |kind: FiltrationKind, source: &str| {
        Failure::invalid(format!("filtration {kind:?} is not available for a {source} input").to_lowercase())
    };
    if input.fan.is_some() || input.standard.is_some() {
        let src = FanSource { fan: input.fan.clone(), standard: input.standard.clone() };
        let (label, fan) = load_fan(&src, args.param)?;
        let kind = args.filtration.unwrap_or(FiltrationKind::Toric);
        let fc = match kind {
            FiltrationKind::Toric => toric_filtration(&fan)?,
            FiltrationKind::Canonical => canonical_filtration(toric_filtration(&fan)?.complex())?,
            other => return Err(wrong(other, "fan")),
        };
        return Ok(SsInputData { label, source: "fan", fc, kind, dim: fan.lattice_rank() });
    }
    if let Some(path) = &input.complex {
        let given = load_complex(path)?;
        let kind = args.filtration.unwrap_or(FiltrationKind::File);
        let fc = match kind {
            FiltrationKind::File => given,
            FiltrationKind::Canonical => canonical_filtration(given.complex())?,
            other => return Err(wrong(other, "complex")),
        };
        let dim = top_degree(&fc);
        return Ok(SsInputData { label: path.display().to_string(), source: "complex", fc, kind, dim });
    }
    let path = input.hyperres.as_ref().expect("clap requires one input");
    let h = parse_hyperresolution(&read(path)?).map_err(Failure::from).map_err(at(path))?;
    let kind = args.filtration.unwrap_or(FiltrationKind::Skeleton);
    let skeleton = skeleton_filtration(&h)?;
    let fc = match kind {
        FiltrationKind::Skeleton => skeleton,
        FiltrationKind::Canonical => canonical_filtration(skeleton.complex())?,
        other => return Err(wrong(other, "hyperresolution")),
    };
    let dim = top_degree(&fc);
    Ok(SsInputData { label: path.display().to_string(), source: "hyperresolution", fc, kind, dim })
}

fn top_degree(fc: &FilteredComplex) -> usize {
    let c = fc.complex();
    if c.is_empty() {
        0
    } else {
        c.k_max().max(0) as usize
    }
}

/// Dimensions of pages `from ..= last`, where `last` is at least `from`;
/// pages past the stabilization index repeat the last one.
fn page_list(ps: &PageSet, from: i32) -> Vec<(i32, Dims)> {
    let Some(last) = ps.last_page() else { return Vec::new() };
    (from..=last.max(from))
        .map(|r| (r, ps.page(r.min(last)).map(|p| p.dims()).unwrap_or_default()))
        .collect()
}

pub fn ss(args: &SsArgs) -> Result<Report, Failure> {
    let data = load_ss(args)?;
    data.fc.ensure_valid()?;
    if let Some(path) = &args.emit_complex {
        let doc = serde_json::to_value(ComplexDoc::from_filtered(&data.fc)).expect("documents serialize");
        fs::write(path, pretty(&doc)).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let ps = pages(&data.fc)?;
    let profile = weight_profile(&data.fc)?;
    let weight_pages = page_list(&ps, 1);
    // the skeleton filtration is already first-quadrant; reindexing applies to weight-type filtrations
    let weight_type = data.kind != FiltrationKind::Skeleton;
    let tilde = weight_type.then(|| reindex(&ps));
    let tilde_pages = tilde.as_ref().map(|t| page_list(t, 2)).unwrap_or_default();
    let purity = weight_type.then(|| purity_collapse_report(&ps, data.dim));
    let beta = weight_type.then(|| virtual_poincare(&ps));
    let kind = format!("{:?}", data.kind).to_lowercase();
    let p_range = data.fc.p_range();

    let mut out = String::new();
    match args.format {
        Format::Text => {
            writeln!(out, "input: {} ({})", data.label, data.source).unwrap();
            match p_range {
                Some((lo, hi)) => writeln!(out, "filtration: {kind}, p in [{lo}, {hi}]").unwrap(),
                None => writeln!(out, "filtration: {kind}, empty").unwrap(),
            }
            let e = if weight_type { "E" } else { "Ê" };
            writeln!(out, "\npages {e}^r_{{p,q}}, d^r: (p,q) -> (p-r, q+r-1)").unwrap();
            for (r, dims) in &weight_pages {
                grid(&mut out, &format!("{e}^{r}"), dims, ("p", "q"));
            }
            grid(&mut out, &format!("{e}^inf"), &ps.infinity, ("p", "q"));
            if let (Some(t), Some(purity)) = (&tilde, &purity) {
                writeln!(out, "\nfirst-quadrant pages Ẽ^r' with p' = 2p+q, q' = -p, r' = r+1").unwrap();
                for (r, dims) in &tilde_pages {
                    grid(&mut out, &format!("Ẽ^{r}"), dims, ("p'", "q'"));
                }
                grid(&mut out, "Ẽ^inf", &t.infinity, ("p'", "q'"));
                writeln!(out, "\n{}", render::purity_line(purity)).unwrap();
                if purity.triangle_violations.is_empty() {
                    writeln!(out, "support triangle (d = {}): ok", data.dim).unwrap();
                } else {
                    writeln!(out, "support triangle (d = {}): {} entries outside", data.dim, purity.triangle_violations.len())
                        .unwrap();
                    for v in &purity.triangle_violations {
                        writeln!(out, "  E^{}_{{{},{}}} = {}", v.r, v.p, v.q, v.dim).unwrap();
                    }
                }
            }
            out.push('\n');
            render::profile_text(&mut out, &profile);
            if let Some(beta) = &beta {
                writeln!(out, "\nvirtual Poincaré polynomial: {beta}").unwrap();
            }
        }
        Format::Doc => {
            let mut v = json!({
                "input": data.label,
                "source": data.source,
                "filtration": kind,
                "p_range": p_range.map(|(lo, hi)| [lo, hi]),
                "pages": render::pages_json(&weight_pages),
                "infinity": render::entries_json(&ps.infinity),
                "weight_profile": render::profile_json(&profile),
            });
            if let (Some(t), Some(purity), Some(beta)) = (&tilde, &purity, &beta) {
                v["first_quadrant"] = json!({
                    "pages": render::pages_json(&tilde_pages),
                    "infinity": render::entries_json(&t.infinity),
                });
                v["purity"] = render::purity_json(purity);
                v["virtual_poincare"] = render::poly_json(beta);
            }
            out = pretty(&v);
        }
        Format::Csv => {
            writeln!(out, "table,r,p,q,dim").unwrap();
            render::pages_csv(&mut out, "weight", &weight_pages);
            render::pages_csv(&mut out, "first_quadrant", &tilde_pages);
        }
    }
    Ok(Report::ok(out))
}

pub fn vpoly(src: &FanSource, param: Option<i64>, method: Method, format: Format) -> Result<Report, Failure> {
    let (label, fan) = load_fan(src, param)?;
    let beta = match method {
        Method::FirstPage => fan_virtual_poincare(&fan)?,
        Method::Pages => virtual_poincare(&pages(&toric_filtration(&fan)?)?),
    };
    let orbits = orbit_sum(&fan);
    let agree = beta == orbits;
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "fan: {label}").unwrap();
            writeln!(out, "coefficients: {}", render::coefficient_list(&beta)).unwrap();
            writeln!(out, "beta: {beta}").unwrap();
            writeln!(out, "orbit sum: {orbits}").unwrap();
            writeln!(out, "agree: {}", yes_no(agree)).unwrap();
        }
        Format::Doc => {
            out = pretty(&json!({
                "fan": label,
                "virtual_poincare": render::poly_json(&beta),
                "orbit_sum": render::poly_json(&orbits),
                "agree": agree,
            }));
        }
        Format::Csv => {
            writeln!(out, "q,beta_q").unwrap();
            for (q, c) in dense_terms(&beta) {
                writeln!(out, "{q},{c}").unwrap();
            }
        }
    }
    Ok(Report { text: out, failed: !agree })
}

/// Every exponent from the lowest to the highest, zeros included.
fn dense_terms(p: &Poly) -> Vec<(i32, i64)> {
    match (p.lowest_exponent(), p.degree()) {
        (Some(lo), Some(hi)) => (lo..=hi).map(|e| (e, p.coeff(e))).collect(),
        _ => Vec::new(),
    }
}

pub fn check(suite: Suite, format: Format) -> Report {
    let outcomes = run_suite(suite);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let passed = outcomes.len() - failed;
    let mut out = String::new();
    match format {
        Format::Text => {
            for o in &outcomes {
                writeln!(out, "{o}").unwrap();
            }
            writeln!(out, "{} checks: {passed} passed, {failed} failed", outcomes.len()).unwrap();
        }
        Format::Doc => {
            out = pretty(&json!({
                "passed": passed,
                "failed": failed,
                "checks": outcomes
                    .iter()
                    .map(|o| json!({"suite": o.suite, "name": o.name, "passed": o.passed, "detail": o.detail}))
                    .collect::<Vec<_>>(),
            }));
        }
        Format::Csv => {
            writeln!(out, "suite,name,passed,detail").unwrap();
            for o in &outcomes {
                writeln!(out, "{},{},{},{}", o.suite, csv_field(&o.name), o.passed, csv_field(&o.detail)).unwrap();
            }
        }
    }
    Report { text: out, failed: failed > 0 }
}

pub fn cubical_ss(args: &CubicalArgs) -> Result<Report, Failure> {
    if let Some(path) = &args.input.hyperres {
        return hyperres_report(path, args.format);
    }
    let path = args.input.diagram.as_ref().expect("clap requires one input");
    let mut d = parse_diagram(&read(path)?).map_err(Failure::from).map_err(at(path))?;
    if args.canonical {
        d = d.with_canonical_filtrations()?;
    }
    let s = simple_filtered(&d)?;
    let ps = pages(&s)?;
    let acyclic = is_acyclic(&s)?;
    let rows = if d.n() == 1 { square_sequence(&d)? } else { Vec::new() };
    let additivity = match &args.complement {
        Some(c) => Some(additivity_check(&d, &load_complex(c)?)?),
        None => None,
    };
    let list = page_list(&ps, 1);
    let mut out = String::new();
    match args.format {
        Format::Text => {
            writeln!(out, "diagram: {} (n = {}, {} objects)", path.display(), d.n(), d.masks().count()).unwrap();
            writeln!(out, "filtrations: {}", if args.canonical { "canonical" } else { "as given" }).unwrap();
            writeln!(out, "\nsimple complex pages E^r_{{p,q}}").unwrap();
            for (r, dims) in &list {
                grid(&mut out, &format!("E^{r}"), dims, ("p", "q"));
            }
            writeln!(out, "\nacyclic: {}", yes_no(acyclic)).unwrap();
            if !rows.is_empty() {
                writeln!(out, "\nhomology of the square, 0 -> H(K_11) -> H(K_01) + H(K_10) -> H(K_00) -> 0:").unwrap();
                for row in &rows {
                    let [a, b, c] = row.dims;
                    writeln!(
                        out,
                        "  H_{}: {a} -> {b} -> {c}, ranks {} and {}, exact: {}",
                        row.degree,
                        row.rank_in,
                        row.rank_out,
                        yes_no(row.is_exact())
                    )
                    .unwrap();
                }
            }
            if let Some(rep) = &additivity {
                writeln!(out, "\nadditivity against the complement: {}", if rep.holds() { "holds" } else { "fails" }).unwrap();
                for (p, q, a, b) in &rep.mismatches {
                    writeln!(out, "  E^1_{{{p},{q}}}(s) = {a}, E^1_{{{p},{}}}(complement) = {b}", q + 1).unwrap();
                }
            }
        }
        Format::Doc => {
            let mut v = json!({
                "diagram": path.display().to_string(),
                "n": d.n(),
                "canonical": args.canonical,
                "pages": render::pages_json(&list),
                "acyclic": acyclic,
                "sequence": rows
                    .iter()
                    .map(|r| json!({"degree": r.degree, "dims": r.dims, "rank_in": r.rank_in, "rank_out": r.rank_out, "exact": r.is_exact()}))
                    .collect::<Vec<_>>(),
            });
            if let Some(rep) = &additivity {
                v["additivity"] = json!({
                    "holds": rep.holds(),
                    "mismatches": rep.mismatches.iter().map(|(p, q, a, b)| json!({"p": p, "q": q, "simple": a, "complement": b})).collect::<Vec<_>>(),
                });
            }
            out = pretty(&v);
        }
        Format::Csv => {
            writeln!(out, "table,r,p,q,dim").unwrap();
            render::pages_csv(&mut out, "simple", &list);
        }
    }
    let failed = additivity.as_ref().is_some_and(|r| !r.holds());
    Ok(Report { text: out, failed })
}

fn hyperres_report(path: &Path, format: Format) -> Result<Report, Failure> {
    let h = parse_hyperresolution(&read(path)?).map_err(Failure::from).map_err(at(path))?;
    let rep = hyperres_weight_compare(&h)?;
    let total = skeleton_filtration(&h)?;
    let betti = total.complex().bettis();
    let skeleton = page_list(&rep.skeleton, 1);
    let shifted = page_list(&rep.shifted, 1);
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "hyperresolution: {} ({} levels)", path.display(), h.levels().len()).unwrap();
            let b: Vec<String> = betti.iter().map(|(k, b)| format!("b_{k}={b}")).collect();
            writeln!(out, "total complex homology: {}", b.join(" ")).unwrap();
            writeln!(out, "\nskeleton pages Ê^r_{{p,q}}").unwrap();
            for (r, dims) in &skeleton {
                grid(&mut out, &format!("Ê^{r}"), dims, ("p", "q"));
            }
            writeln!(out, "\nDeligne shift pages E^r_{{p,q}}").unwrap();
            for (r, dims) in &shifted {
                grid(&mut out, &format!("E^{r}"), dims, ("p", "q"));
            }
            let checked: Vec<String> = rep.pages_checked.iter().map(i32::to_string).collect();
            writeln!(
                out,
                "\nE^r_{{p,q}} = Ê^(r+1)_{{2p+q,-p}} for r in [{}]: {}",
                checked.join(", "),
                if rep.holds() { "holds" } else { "fails" }
            )
            .unwrap();
            for (r, p, q, a, b) in &rep.mismatches {
                writeln!(out, "  r={r} (p,q)=({p},{q}): {a} vs {b}").unwrap();
            }
        }
        Format::Doc => {
            out = pretty(&json!({
                "hyperresolution": path.display().to_string(),
                "levels": h.levels().len(),
                "betti": betti.iter().map(|(k, b)| json!({"degree": k, "dim": b})).collect::<Vec<_>>(),
                "skeleton_pages": render::pages_json(&skeleton),
                "shifted_pages": render::pages_json(&shifted),
                "pages_checked": rep.pages_checked,
                "holds": rep.holds(),
                "mismatches": rep.mismatches.iter().map(|(r, p, q, a, b)| json!({"r": r, "p": p, "q": q, "shifted": a, "skeleton": b})).collect::<Vec<_>>(),
            }));
        }
        Format::Csv => {
            writeln!(out, "table,r,p,q,dim").unwrap();
            render::pages_csv(&mut out, "skeleton", &skeleton);
            render::pages_csv(&mut out, "shifted", &shifted);
        }
    }
    Ok(Report { text: out, failed: !rep.holds() })
}

fn load_cells(path: &Path) -> Result<CellComplex, Failure> {
    let doc: CellComplexDoc = read_json(path)?;
    doc.to_complex().map_err(Failure::from).map_err(at(path))
}

/// `(label, value)` over the support.
fn values(x: &CellComplex, f: &ConstructibleFunction) -> Vec<(String, i64)> {
    f.support().map(|c| (x.label(c).to_string(), f.get(c))).collect()
}

fn names(x: &CellComplex, c: &CellChain) -> Vec<String> {
    c.members.iter().map(|&m| x.label(m).to_string()).collect()
}

pub fn euler(args: &EulerArgs) -> Result<Report, Failure> {
    let function: Option<(PathBuf, FunctionDoc)> = match &args.function {
        Some(p) => Some((p.clone(), read_json(p)?)),
        None => None,
    };
    let complex_path = match (&args.complex, &function) {
        (Some(p), _) => p.clone(),
        (None, Some((fpath, FunctionDoc { complex: Some(rel), .. }))) => {
            fpath.parent().unwrap_or_else(|| Path::new(".")).join(rel)
        }
        _ => return Err(Failure::parse("give --complex, or a function document naming its complex")),
    };
    let x = load_cells(&complex_path)?;
    let phi = match &function {
        Some((p, doc)) => Some(doc.to_function(&x).map_err(Failure::from).map_err(at(p))?),
        None => None,
    };
    let chain = match &args.chain {
        Some(p) => {
            let doc: ChainDoc = read_json(p)?;
            Some(doc.to_chain(&x).map_err(Failure::from).map_err(at(p))?)
        }
        None => None,
    };
    let target = match (&args.map, &args.target) {
        (Some(m), Some(t)) => {
            let y = load_cells(t)?;
            let doc: MapDoc = read_json(m)?;
            let f = doc.to_map(&x, &y).map_err(Failure::from).map_err(at(m))?;
            Some((y, f))
        }
        _ => None,
    };

    let chi = euler_integral(&x, &ConstructibleFunction::constant(&x, 1));
    let mut failed = false;
    let mut facts = serde_json::Map::new();
    let mut text = String::new();
    writeln!(text, "complex: {} ({} cells, euler characteristic {chi})", complex_path.display(), x.len()).unwrap();
    facts.insert("cells".into(), json!(x.len()));
    facts.insert("euler_characteristic".into(), json!(chi));
    let mut rows: Vec<(String, String, i64)> = Vec::new();

    if let Some(phi) = &phi {
        let integral = euler_integral(&x, phi);
        let lam = link(&x, phi);
        let twice = link(&x, &lam) == lam.scaled(2);
        failed |= !twice;
        writeln!(text, "integral: {integral}").unwrap();
        writeln!(text, "link: {}", show(&values(&x, &lam))).unwrap();
        writeln!(text, "link of link is twice the link: {}", yes_no(twice)).unwrap();
        facts.insert("integral".into(), json!(integral));
        facts.insert("link".into(), values_json(&values(&x, &lam)));
        facts.insert("link_twice".into(), json!(twice));
        rows.extend(values(&x, phi).into_iter().map(|(c, v)| ("function".to_string(), c, v)));
        rows.extend(values(&x, &lam).into_iter().map(|(c, v)| ("link".to_string(), c, v)));
        if let Some((y, f)) = &target {
            let push = pushforward_cf(f, &x, y, phi)?;
            let pushed_integral = euler_integral(y, &push);
            let kept = pushed_integral == integral;
            failed |= !kept;
            writeln!(text, "pushforward: {}", show(&values(y, &push))).unwrap();
            writeln!(text, "integral after pushforward: {pushed_integral} (preserved: {})", yes_no(kept)).unwrap();
            facts.insert("pushforward".into(), values_json(&values(y, &push)));
            facts.insert("pushforward_integral".into(), json!(pushed_integral));
            rows.extend(values(y, &push).into_iter().map(|(c, v)| ("pushforward".to_string(), c, v)));
        }
    }
    if let Some(c) = &chain {
        let b = chain_boundary(&x, c);
        let oracle = incidence_boundary(&x, c) == b;
        failed |= !oracle;
        writeln!(text, "boundary of the {}-chain: [{}]", c.k, names(&x, &b).join(", ")).unwrap();
        writeln!(text, "boundary matches the incidence matrix: {}", yes_no(oracle)).unwrap();
        facts.insert("boundary".into(), json!({"degree": b.k, "cells": names(&x, &b)}));
        facts.insert("boundary_matches_incidence".into(), json!(oracle));
        rows.extend(names(&x, &b).into_iter().map(|n| ("boundary".to_string(), n, 1)));
        if let Some((y, f)) = &target {
            let push = pushforward_chain(f, &x, y, c)?;
            writeln!(text, "pushforward chain: [{}]", names(y, &push).join(", ")).unwrap();
            facts.insert("pushforward_chain".into(), json!({"degree": push.k, "cells": names(y, &push)}));
            rows.extend(names(y, &push).into_iter().map(|n| ("pushforward_chain".to_string(), n, 1)));
        }
    }

    let out = match args.format {
        Format::Text => text,
        Format::Doc => pretty(&Value::Object(facts)),
        Format::Csv => {
            let mut s = String::from("quantity,cell,value\n");
            for (q, c, v) in rows {
                writeln!(s, "{q},{},{v}", csv_field(&c)).unwrap();
            }
            s
        }
    };
    Ok(Report { text: out, failed })
}

fn show(vals: &[(String, i64)]) -> String {
    if vals.is_empty() {
        return "0".to_string();
    }
    vals.iter().map(|(c, v)| format!("{c}={v}")).collect::<Vec<_>>().join(" ")
}

fn values_json(vals: &[(String, i64)]) -> Value {
    Value::Array(vals.iter().map(|(c, v)| json!({"cell": c, "value": v})).collect())
}
