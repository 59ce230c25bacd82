use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use skelcode::arrangement::SubspaceArrangement;
use skelcode::evalcode::{format_point, skeleton_code, skeleton_code_ordered, PointOrder};
use skelcode::formulas::{conjecture_distance, predictions, IndexConvention};
use skelcode::hamming::is_hamming_equivalent;
use skelcode::linalg::PrimeFieldMatrix;
use skelcode::params::{min_distance, DistanceOptions, MinDistance};
use skelcode::simplicial::{Face, SimplicialComplex};
use skelcode::{Error, Result};

use crate::report::{Row, RunReport, Status};
use crate::{Global, OrderArg};

pub fn int(x: i128) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

pub fn name(l: usize, h: usize, j: usize) -> String {
    format!("K({l},{h},{j})")
}

/// d, or `None` when the selected engine declines the instance.
pub fn distance(g: &PrimeFieldMatrix, opts: &DistanceOptions) -> Result<Option<MinDistance>> {
    match min_distance(g, opts) {
        Ok(md) => Ok(Some(md)),
        Err(Error::CapExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn params(l: usize, h: usize, j: usize, g: &Global) -> Result<RunReport> {
    let mut report = RunReport::new(format!("params {l} {h} {j}"));
    let code = skeleton_code(l, h, j)?;
    let pred = predictions(l, h, j)?;
    let gen = code.generator();
    let n = code.n();
    let k = gen.rank();
    let md = distance(gen, &g.distance_options())?;

    let d_text = md.as_ref().map_or("?".to_string(), |m| m.d.to_string());
    let method = md
        .as_ref()
        .map_or("none".to_string(), |m| m.method.to_string());
    report
        .header
        .push(format!("{} [{n},{k},{d_text}] {method}", name(l, h, j)));

    report.push(
        Row::new("n", Status::from_check(n as i128 == pred.n))
            .with("computed", n)
            .with("formula", int(pred.n)),
    );
    report.push(
        Row::new("k", Status::from_check(k as i128 == pred.k))
            .with("computed", k)
            .with("formula", int(pred.k)),
    );
    match (&md, pred.d) {
        (Some(m), Some(f)) => report.push(
            Row::new("d", Status::from_check(m.d as i128 == f))
                .with("computed", m.d)
                .with("formula", int(f)),
        ),
        (Some(m), None) => report.push(
            Row::new("d", Status::Info)
                .with("computed", m.d)
                .note("no closed form for 1 < j < h"),
        ),
        (None, _) => report.push(
            Row::new("d", Status::Skipped)
                .with("formula", pred.d.map_or(Value::Null, int))
                .note("bound only"),
        ),
    }
    let bound_row = Row::new("d_bound", Status::Info).with("bound", int(pred.d_upper));
    report.push(match &md {
        Some(m) => Row {
            status: Status::from_check(m.d as i128 <= pred.d_upper),
            ..bound_row.with("computed", m.d)
        },
        None => bound_row,
    });
    if j >= 2 && j < h {
        report.push(
            Row::new("conjecture", Status::Info)
                .with(
                    "from_zero",
                    pred.conjecture_from_zero.map_or(Value::Null, int),
                )
                .with(
                    "from_one",
                    pred.conjecture_from_one.map_or(Value::Null, int),
                ),
        );
    }
    if let Some(m) = &md {
        if m.d + k == n + 1 {
            report.notes.push("MDS: d = n - k + 1".into());
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    code: &'a str,
    order: &'a str,
    rows: Vec<String>,
    cols: Vec<String>,
    matrix: &'a PrimeFieldMatrix,
}

pub fn matrix(
    l: usize,
    h: usize,
    j: usize,
    order: OrderArg,
    header: bool,
    g: &Global,
) -> Result<()> {
    let (order, order_name) = match order {
        OrderArg::Graded => (PointOrder::Graded, "graded"),
        OrderArg::Lex => (PointOrder::SupportLex, "lex"),
    };
    let code = skeleton_code_ordered(l, h, j, order)?;
    if g.json {
        let out = MatrixJson {
            code: code.source(),
            order: order_name,
            rows: code.monomials().iter().map(|m| m.to_string()).collect(),
            cols: code.points().iter().map(|p| format_point(p)).collect(),
            matrix: code.generator(),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("matrix serializes")
        );
    } else {
        print!("{}", code.to_text(header));
    }
    Ok(())
}

fn parse_facets(spec: &str) -> Result<Vec<Vec<usize>>> {
    spec.split(',')
        .enumerate()
        .filter(|(_, part)| !part.trim().is_empty())
        .map(|(i, part)| {
            part.split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: format!("facet {}: {e}", i + 1),
                    })
                })
                .collect()
        })
        .collect()
}

pub fn char_poly(
    facets: Option<&str>,
    complex: Option<&Path>,
    ell: Option<usize>,
    q: u32,
) -> Result<RunReport> {
    let complex = match (facets, complex) {
        (Some(spec), _) => {
            let facets = parse_facets(spec)?;
            let ell = ell.unwrap_or_else(|| facets.iter().flatten().copied().max().unwrap_or(0));
            let faces = facets
                .iter()
                .map(|f| Face::new(ell, f))
                .collect::<Result<Vec<_>>>()?;
            SimplicialComplex::from_facets(ell, &faces)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?;
            SimplicialComplex::from_text(&text)?
        }
        (None, None) => return Err(Error::Unsupported("give --facets or --complex".into())),
    };
    let mut report = RunReport::new("char-poly");
    report.range("l", complex.ell());
    report.range("q", q);
    let a = SubspaceArrangement::coordinate(&complex, q)?;
    let lattice = a.intersection_lattice();
    let chi = lattice.characteristic_polynomial();
    let count = lattice.athanasiadis_count(q);
    report.header.push(format!("chi {chi}"));
    report.header.push(format!("count {count}"));
    report.push(Row::new("lattice", Status::Info).with("elements", lattice.len()));
    let points = a.points().len();
    report.push(
        Row::new("points", Status::from_check(points as i128 == count))
            .with("computed", points)
            .with("formula", int(count)),
    );
    Ok(report)
}

pub fn scan_conjecture(lmin: usize, lmax: usize, g: &Global) -> Result<RunReport> {
    let mut report = RunReport::new("scan-conjecture");
    report.range("lmin", lmin);
    report.range("lmax", lmax);
    let mut opts = g.distance_options();
    opts.is_k_cap = Some(g.is_cap.unwrap_or(40));
    report.range("k_cap", opts.k_cap);
    report.range("is_cap", opts.is_k_cap);
    let (mut computed, mut zero_hits, mut one_hits) = (0, 0, 0);
    for l in lmin.max(3)..=lmax {
        for h in 3..=l {
            for j in 2..h {
                let code = skeleton_code(l, h, j)?;
                let gen = code.generator();
                let bound = conjecture_distance(l, h, j, IndexConvention::FromZero)?;
                let from_one = conjecture_distance(l, h, j, IndexConvention::FromOne)?;
                let row = Row::new(name(l, h, j), Status::Info)
                    .with("n", code.n())
                    .with("k", gen.rank());
                match distance(gen, &opts)? {
                    Some(md) => {
                        computed += 1;
                        let d = md.d as i128;
                        zero_hits += (d == bound) as usize;
                        one_hits += (d == from_one) as usize;
                        let agrees = match (d == bound, d == from_one) {
                            (true, _) => "from_zero",
                            (_, true) => "from_one",
                            _ => "neither",
                        };
                        report.push(Row {
                            status: Status::from_check(d <= bound),
                            ..row
                                .with("d", md.d)
                                .with("method", md.method.to_string())
                                .with("bound", int(bound))
                                .with("from_zero", int(bound))
                                .with("from_one", int(from_one))
                                .with("agrees", agrees)
                        });
                    }
                    None => report.push(
                        Row {
                            status: Status::Skipped,
                            ..row.with("bound", int(bound))
                        }
                        .note("bound only"),
                    ),
                }
            }
        }
    }
    report.notes.push(format!(
        "conventions: from_zero {zero_hits}/{computed}, from_one {one_hits}/{computed}"
    ));
    Ok(report)
}

pub fn hamming_check(l: usize, h: usize, j: usize, g: &Global) -> Result<RunReport> {
    let mut report = RunReport::new(format!("hamming-check {l} {h} {j}"));
    let code = skeleton_code(l, h, j)?;
    let v = is_hamming_equivalent(&code, &g.distance_options())?;
    report.header.push(format!(
        "{} {}",
        name(l, h, j),
        if v.equivalent {
            "equivalent"
        } else {
            "not equivalent"
        }
    ));
    report.push(
        Row::new("verdict", Status::from_check(v.equivalent))
            .with("r", v.r)
            .with("n", v.n)
            .with("k", v.k)
            .with("d", v.d)
            .with("method", v.method.map(|m| m.to_string()))
            .note(v.reason.clone()),
    );
    if let Some(cert) = &v.certificate {
        report.push(
            Row::new(
                "certificate",
                Status::from_check(cert.columns_distinct_nonzero()),
            )
            .with("rows", cert.r())
            .with("cols", cert.n())
            .note("columns pairwise distinct and nonzero"),
        );
        report.notes.push("parity check".into());
        report
            .notes
            .extend(cert.matrix.to_text().lines().map(str::to_string));
    }
    Ok(report)
}
