//! The four subcommands. Each returns its exit status and rendered stdout.

use daehee_core::bernoulli::{bernoulli_poly, BernoulliTable};
use daehee_core::combinat::{StirlingCache, StirlingSource};
use daehee_core::daehee::{
    daehee1_numbers_multinomial, daehee1_series, daehee2_series, Daehee, Kind,
};
use daehee_core::padic::{
    convergence_probe_multi, DaeheeIntegrand, PartialSumBudget, Valuation, DEFAULT_BUDGET,
};
use daehee_core::verify::{Failure, Grid, GridPoint, IdentityId, Status, Value as CheckValue, Verifier};
use daehee_core::{Error, Rational, RationalPolynomial};
use serde_json::{json, Value};

use crate::cli::{IntegrandKind, PolyArgs, PolySequence, Route, TableArgs, TableSequence, VerifyArgs, VolkenbornArgs};
use crate::config::{resolve, FileConfig};
use crate::error::{KitError, Result};
use crate::output::{
    parse_rational, polynomial_cell, polynomial_json, rational_string, CsvTable, Document, Format,
    Rendered,
};
use crate::runner::run_verification;

const DEFAULT_N_MAX: usize = 20;
const DEFAULT_K_MAX: usize = 6;

fn usage(msg: impl Into<String>) -> KitError {
    KitError::Usage(msg.into())
}

fn format_of(flag: Option<Format>, file: &FileConfig) -> Format {
    resolve(flag, file.format, Format::Json)
}

fn positive_order(k: usize) -> Result<usize> {
    if k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    Ok(k)
}

/// Values of one named sequence with the route that produced them.
#[derive(Debug)]
pub struct SequenceTable {
    pub name: &'static str,
    pub route: &'static str,
    /// Names of the index columns, e.g. `["n"]` or `["n", "l"]`.
    pub index_names: Vec<&'static str>,
    pub order: Option<usize>,
    pub entries: Vec<(Vec<usize>, Rational)>,
}

impl SequenceTable {
    fn rendered(&self, n_max: usize) -> Rendered {
        let mut document = Document::new("table");
        document
            .param("sequence", self.name)
            .param("route", self.route)
            .param("n_max", n_max);
        if let Some(k) = self.order {
            document.param("k", k);
        }
        let mut header: Vec<String> = self.index_names.iter().map(|s| s.to_string()).collect();
        header.push("value".into());
        let mut table = CsvTable::new(header);
        for (indices, value) in &self.entries {
            let mut entry = serde_json::Map::new();
            let mut row = Vec::new();
            for (name, i) in self.index_names.iter().zip(indices) {
                entry.insert(name.to_string(), json!(i));
                row.push(i.to_string());
            }
            entry.insert("value".into(), json!(rational_string(value)));
            row.push(rational_string(value));
            document.entries.push(Value::Object(entry));
            table.push(row);
        }
        Rendered { document, table }
    }
}

/// Builds the table for `table` without rendering it.
pub fn sequence_table(
    sequence: TableSequence,
    n_max: usize,
    k: usize,
    route: Option<Route>,
) -> Result<SequenceTable> {
    let ns = 0..=n_max;
    let single = |name, route, order, values: Vec<Rational>| SequenceTable {
        name,
        route,
        index_names: vec!["n"],
        order,
        entries: values.into_iter().enumerate().map(|(n, v)| (vec![n], v)).collect(),
    };
    match sequence {
        TableSequence::Daehee1 => {
            let k = positive_order(k)?;
            let route = route.unwrap_or(Route::Closed);
            let values: Vec<Rational> = match route {
                Route::Closed => {
                    let stirling = StirlingCache::new(n_max + k);
                    let bernoulli = BernoulliTable::new(0, 0);
                    let d = Daehee::new(&stirling, &bernoulli);
                    ns.map(|n| d.number1_closed(n, k)).collect::<Result<_, Error>>()?
                }
                Route::Gf => {
                    let series = daehee1_series(k, n_max);
                    ns.map(|n| series.egf_coefficient(n)).collect::<Result<_, Error>>()?
                }
                Route::StirlingBernoulli => {
                    let stirling = StirlingCache::new(n_max);
                    let bernoulli = BernoulliTable::new(n_max, k);
                    let d = Daehee::new(&stirling, &bernoulli);
                    ns.map(|n| d.number1_stirling_bernoulli(n, k))
                        .collect::<Result<_, Error>>()?
                }
                Route::Convolution => daehee1_numbers_multinomial(n_max, k)?,
            };
            Ok(single("daehee1", route_name(route), Some(k), values))
        }
        TableSequence::Daehee2 => {
            let k = positive_order(k)?;
            let route = route.unwrap_or(Route::StirlingBernoulli);
            let values: Vec<Rational> = match route {
                Route::StirlingBernoulli => {
                    let stirling = StirlingCache::new(n_max);
                    let bernoulli = BernoulliTable::new(n_max, k);
                    let d = Daehee::new(&stirling, &bernoulli);
                    ns.map(|n| d.number2(n, k)).collect::<Result<_, Error>>()?
                }
                Route::Gf => {
                    let series = daehee2_series(k, n_max);
                    ns.map(|n| series.egf_coefficient(n)).collect::<Result<_, Error>>()?
                }
                other => {
                    return Err(usage(format!(
                        "route {} is not available for daehee2; use gf or stirling-bernoulli",
                        route_name(other)
                    )))
                }
            };
            Ok(single("daehee2", route_name(route), Some(k), values))
        }
        TableSequence::Bernoulli => {
            reject_route(route)?;
            let table = BernoulliTable::new(n_max, k);
            let values = ns.map(|n| table.number(n, k)).collect();
            Ok(single("bernoulli", "series", Some(k), values))
        }
        TableSequence::Stirling1 | TableSequence::Stirling2 => {
            reject_route(route)?;
            let cache = StirlingCache::new(n_max);
            let first = sequence == TableSequence::Stirling1;
            let mut entries = Vec::new();
            for n in 0..=n_max {
                for l in 0..=n {
                    let v = if first { cache.stirling1(n, l)? } else { cache.stirling2(n, l)? };
                    entries.push((vec![n, l], Rational::from_integer(v)));
                }
            }
            Ok(SequenceTable {
                name: if first { "stirling1" } else { "stirling2" },
                route: "recurrence",
                index_names: if first { vec!["n", "l"] } else { vec!["m", "n"] },
                order: None,
                entries,
            })
        }
    }
}

fn reject_route(route: Option<Route>) -> Result<()> {
    match route {
        Some(_) => Err(usage("--route only applies to daehee1 and daehee2")),
        None => Ok(()),
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Closed => "closed",
        Route::Gf => "gf",
        Route::StirlingBernoulli => "stirling-bernoulli",
        Route::Convolution => "convolution",
    }
}

pub fn table(args: &TableArgs, file: &FileConfig) -> Result<(i32, String)> {
    let format = format_of(args.format.format, file);
    let n_max = resolve(args.n_max, file.n_max, 10);
    let k = resolve(args.k, file.k, 1);
    let table = sequence_table(args.sequence, n_max, k, args.route)?;
    Ok((0, table.rendered(n_max).render(format)?))
}

/// The polynomial requested by `poly`.
pub fn polynomial(sequence: PolySequence, n: usize, k: usize) -> Result<RationalPolynomial> {
    Ok(match sequence {
        PolySequence::Bernoulli => bernoulli_poly(n, k),
        PolySequence::Daehee1 | PolySequence::Daehee2 => {
            let k = positive_order(k)?;
            let stirling = StirlingCache::new(n);
            let bernoulli = BernoulliTable::new(n, k);
            let d = Daehee::new(&stirling, &bernoulli);
            if sequence == PolySequence::Daehee1 {
                d.poly1(n, k)?
            } else {
                d.poly2(n, k)?
            }
        }
    })
}

pub fn poly(args: &PolyArgs, file: &FileConfig) -> Result<(i32, String)> {
    let format = format_of(args.format.format, file);
    let k = resolve(args.k, file.k, 1);
    let p = polynomial(args.sequence, args.n, k)?;
    let name = match args.sequence {
        PolySequence::Daehee1 => "daehee1",
        PolySequence::Daehee2 => "daehee2",
        PolySequence::Bernoulli => "bernoulli",
    };

    let mut document = Document::new("poly");
    document.param("sequence", name).param("n", args.n).param("k", k);
    let mut entry = polynomial_json(&p);
    entry["n"] = json!(args.n);
    entry["k"] = json!(k);
    document.entries.push(entry);

    let coeffs: Vec<String> = if p.is_zero() {
        vec!["0".into()]
    } else {
        p.coeffs().iter().map(rational_string).collect()
    };
    let mut table = CsvTable::new((0..coeffs.len()).map(|i| format!("c{i}")));
    table.push(coeffs);
    Ok((0, Rendered { document, table }.render(format)?))
}

pub fn parse_ids(text: &str) -> Result<Vec<IdentityId>> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(IdentityId::ALL.to_vec());
    }
    let mut ids = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id = part.parse().map_err(|_| {
            let known: Vec<&str> = IdentityId::ALL.iter().map(|id| id.as_str()).collect();
            usage(format!("unknown identity `{part}`; expected `all` or any of {}", known.join(", ")))
        })?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err(usage("--ids is empty"));
    }
    Ok(ids)
}

fn value_json(v: &CheckValue) -> Value {
    match v {
        CheckValue::Number(r) => json!(rational_string(r)),
        CheckValue::Polynomial(p) => polynomial_json(p),
    }
}

fn value_cell(v: &CheckValue) -> String {
    match v {
        CheckValue::Number(r) => rational_string(r),
        CheckValue::Polynomial(p) => polynomial_cell(p),
    }
}

fn point_json(point: &GridPoint) -> Value {
    json!({
        "n": point.n,
        "k": point.k,
        "x": point.x.as_ref().map(rational_string),
    })
}

fn failure_json(f: &Failure) -> Value {
    let mut v = point_json(&f.point);
    v["lhs"] = value_json(&f.lhs);
    v["rhs"] = value_json(&f.rhs);
    v
}

pub fn verify(args: &VerifyArgs, file: &FileConfig) -> Result<(i32, String)> {
    let format = format_of(args.format.format, file);
    let ids = parse_ids(args.ids.as_deref().unwrap_or("all"))?;
    let n_max = resolve(args.n_max, file.n_max, DEFAULT_N_MAX);
    let k_max = resolve(args.k_max, file.k_max, DEFAULT_K_MAX);
    if k_max == 0 {
        return Err(usage("--k-max must be at least 1"));
    }
    let jobs = args.jobs.or(file.jobs);
    if jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let x_samples = match args.x_samples.clone().or_else(|| file.x_samples.clone()) {
        Some(list) => list
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| usage(format!("bad rational `{s}` in x samples"))))
            .collect::<Result<Vec<_>>>()?,
        None => Grid::default_samples(),
    };
    let grid = Grid::new(n_max, k_max, x_samples);
    let verifier = Verifier::new(n_max, k_max);
    let reports = run_verification(&verifier, &ids, &grid, jobs)?;

    let mut document = Document::new("verify");
    document
        .param("ids", ids.iter().map(|id| id.as_str()).collect::<Vec<_>>())
        .param("n_max", n_max)
        .param("k_max", k_max)
        .param("x_samples", grid.x_samples.iter().map(rational_string).collect::<Vec<_>>());
    let mut header = vec![
        "id", "status", "points_checked", "failure_n", "failure_k", "failure_x", "lhs", "rhs",
    ];
    if args.timings {
        header.push("elapsed_ms");
    }
    let mut table = CsvTable::new(header);

    let mut all_pass = true;
    for r in &reports {
        all_pass &= r.passed();
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        let mut entry = json!({
            "id": r.identity.as_str(),
            "description": r.identity.description(),
            "status": status,
            "points_checked": r.points_checked,
            "first_failure": r.first_failure.as_ref().map(failure_json),
        });
        let mut row = vec![r.identity.as_str().to_string(), status.into(), r.points_checked.to_string()];
        match &r.first_failure {
            Some(f) => row.extend([
                f.point.n.to_string(),
                f.point.k.map(|k| k.to_string()).unwrap_or_default(),
                f.point.x.as_ref().map(rational_string).unwrap_or_default(),
                value_cell(&f.lhs),
                value_cell(&f.rhs),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 5)),
        }
        if args.timings {
            let ms = r.elapsed.as_secs_f64() * 1e3;
            entry["elapsed_ms"] = json!(ms);
            row.push(format!("{ms:.3}"));
        }
        document.entries.push(entry);
        table.push(row);
    }
    let text = Rendered { document, table }.render(format)?;
    Ok((if all_pass { 0 } else { 1 }, text))
}

fn literal_terms(p: u64, depth: u32, k: usize) -> Option<u128> {
    u128::from(p).checked_pow(depth.checked_mul(u32::try_from(k).ok()?)?)
}

pub fn volkenborn(args: &VolkenbornArgs, file: &FileConfig) -> Result<(i32, String)> {
    let format = format_of(args.format.format, file);
    let k = positive_order(resolve(args.k, file.k, 1))?;
    let x = match &args.x {
        Some(s) => parse_rational(s).ok_or_else(|| usage(format!("bad rational `{s}` for --x")))?,
        None => Rational::from_integer(0.into()),
    };
    let max_terms = resolve(args.budget, file.budget, DEFAULT_BUDGET as u64);
    let budget = PartialSumBudget {
        max_terms: u128::from(max_terms),
        closed_form: args.closed_form,
    };
    let kind = match args.kind {
        IntegrandKind::First => Kind::First,
        IntegrandKind::Second => Kind::Second,
    };
    let integrand = DaeheeIntegrand { kind, order: k, n: args.n, x: x.clone() };
    let f = integrand.polynomial();
    let probes = convergence_probe_multi(&f, k, args.p, args.depths.clone(), budget).map_err(|e| match e {
        Error::NotPrime(p) => usage(format!("--p {p} is not prime")),
        Error::BudgetExceeded { terms, budget } => usage(format!(
            "a literal partial sum needs {terms} evaluations but the budget is {budget}; \
             pass --closed-form to use exact power sums, raise --budget, or lower the maximum depth"
        )),
        other => other.into(),
    })?;

    let exact = probes
        .first()
        .map(|p| p.exact_value.clone())
        .unwrap_or_else(|| Rational::from_integer(0.into()));
    let mut document = Document::new("volkenborn");
    document
        .param("n", args.n)
        .param("k", k)
        .param("p", args.p)
        .param(
            "kind",
            match kind {
                Kind::First => "first",
                Kind::Second => "second",
            },
        )
        .param("x", rational_string(&x))
        .param("depth_min", *args.depths.start())
        .param("depth_max", *args.depths.end())
        .param("budget", max_terms)
        .param("integrand", polynomial_json(&f))
        .param("exact", rational_string(&exact));
    let mut table = CsvTable::new(["depth", "route", "partial_sum", "exact", "error", "valuation"]);
    for probe in &probes {
        let route = match literal_terms(args.p, probe.depth, k) {
            Some(t) if t <= u128::from(max_terms) => "literal",
            _ => "closed_form",
        };
        let valuation = match probe.valuation {
            Valuation::Finite(v) => json!(v),
            Valuation::Infinite => json!("inf"),
        };
        document.entries.push(json!({
            "depth": probe.depth,
            "route": route,
            "partial_sum": rational_string(&probe.partial_sum),
            "exact": rational_string(&probe.exact_value),
            "error": rational_string(&probe.error()),
            "valuation": valuation,
        }));
        table.push(vec![
            probe.depth.to_string(),
            route.into(),
            rational_string(&probe.partial_sum),
            rational_string(&probe.exact_value),
            rational_string(&probe.error()),
            probe.valuation.to_string(),
        ]);
    }
    Ok((0, Rendered { document, table }.render(format)?))
}
