//! Text grids, CSV rows and JSON values for pages and polynomials.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};
use weightlab::fcomplex::{Poly, PurityReport, WeightProfile};

pub type Dims = BTreeMap<(i32, i32), usize>;

/// A `q` by `p` grid with `q` decreasing downwards; zero entries print as `.`.
pub fn grid(out: &mut String, title: &str, dims: &Dims, axes: (&str, &str)) {
    writeln!(out, "{title}").unwrap();
    let nonzero: Vec<_> = dims.iter().filter(|(_, &d)| d > 0).collect();
    if nonzero.is_empty() {
        writeln!(out, "  (zero)").unwrap();
        return;
    }
    let (p_lo, p_hi) = bounds(nonzero.iter().map(|((p, _), _)| *p));
    let (q_lo, q_hi) = bounds(nonzero.iter().map(|((_, q), _)| *q));
    let corner = format!("{}\\{}", axes.1, axes.0);
    let cell = (p_lo..=p_hi)
        .map(|p| p.to_string().len())
        .chain(nonzero.iter().map(|(_, d)| d.to_string().len()))
        .max()
        .unwrap_or(1)
        .max(2);
    let label = (q_lo..=q_hi).map(|q| q.to_string().len()).max().unwrap_or(1).max(corner.len());
    write!(out, "  {corner:>label$}").unwrap();
    for p in p_lo..=p_hi {
        write!(out, " {p:>cell$}").unwrap();
    }
    out.push('\n');
    for q in (q_lo..=q_hi).rev() {
        write!(out, "  {q:>label$}").unwrap();
        for p in p_lo..=p_hi {
            match dims.get(&(p, q)).copied().unwrap_or(0) {
                0 => write!(out, " {:>cell$}", ".").unwrap(),
                d => write!(out, " {d:>cell$}").unwrap(),
            }
        }
        out.push('\n');
    }
}

fn bounds(values: impl Iterator<Item = i32>) -> (i32, i32) {
    values.fold((i32::MAX, i32::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

pub fn entries_json(dims: &Dims) -> Value {
    Value::Array(
        dims.iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&(p, q), &dim)| json!({"p": p, "q": q, "dim": dim}))
            .collect(),
    )
}

pub fn pages_json(pages: &[(i32, Dims)]) -> Value {
    Value::Array(pages.iter().map(|(r, dims)| json!({"r": r, "entries": entries_json(dims)})).collect())
}

/// Rows `table,r,p,q,dim`, in `(r, p, q)` order within each table.
pub fn pages_csv(out: &mut String, table: &str, pages: &[(i32, Dims)]) {
    for (r, dims) in pages {
        for (&(p, q), &dim) in dims {
            if dim > 0 {
                writeln!(out, "{table},{r},{p},{q},{dim}").unwrap();
            }
        }
    }
}

pub fn poly_json(poly: &Poly) -> Value {
    json!({
        "text": poly.to_string(),
        "terms": poly.terms().iter().map(|&(e, c)| json!({"exponent": e, "coefficient": c})).collect::<Vec<_>>(),
        "coefficients": poly.coefficients(),
    })
}

/// The coefficient list from `t^0` up, or the exponent/coefficient pairs when
/// negative powers occur.
pub fn coefficient_list(poly: &Poly) -> String {
    match poly.coefficients() {
        Some(c) => format!("[{}]", c.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")),
        None => format!(
            "{{{}}}",
            poly.terms().iter().map(|(e, c)| format!("{e}: {c}")).collect::<Vec<_>>().join(", ")
        ),
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn purity_line(report: &PurityReport) -> String {
    let collapse = match report.collapse_page {
        Some(r) => format!("r={r}"),
        None => "none".to_string(),
    };
    format!("pure: {}, collapse: {collapse}", yes_no(report.is_pure))
}

pub fn purity_json(report: &PurityReport) -> Value {
    json!({
        "pure": report.is_pure,
        "collapse_page": report.collapse_page,
        "triangle_violations": report
            .triangle_violations
            .iter()
            .map(|v| json!({"r": v.r, "p": v.p, "q": v.q, "dim": v.dim}))
            .collect::<Vec<_>>(),
    })
}

pub fn profile_text(out: &mut String, profile: &WeightProfile) {
    writeln!(out, "weight filtration on homology (dim W_p H_n):").unwrap();
    for (n, levels) in &profile.levels {
        let b = profile.betti.get(n).copied().unwrap_or(0);
        let row: Vec<String> = levels.iter().map(|(p, d)| format!("W_{p}={d}")).collect();
        writeln!(out, "  H_{n} (dim {b}): {}", row.join(" ")).unwrap();
    }
}

pub fn profile_json(profile: &WeightProfile) -> Value {
    Value::Array(
        profile
            .levels
            .iter()
            .map(|(n, levels)| {
                json!({
                    "degree": n,
                    "betti": profile.betti.get(n).copied().unwrap_or(0),
                    "levels": levels.iter().map(|(p, d)| json!({"p": p, "dim": d})).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Quotes a CSV field when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let dims: Dims = [((0, 0), 1), ((-1, 2), 1)].into_iter().collect();
        let mut s = String::new();
        grid(&mut s, "E^1", &dims, ("p", "q"));
        assert_eq!(s, "E^1\n  q\\p -1  0\n    2  1  .\n    1  .  .\n    0  .  1\n");
    }

    #[test]
    fn empty_grid() {
        let mut s = String::new();
        grid(&mut s, "E^1", &Dims::new(), ("p", "q"));
        assert_eq!(s, "E^1\n  (zero)\n");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
