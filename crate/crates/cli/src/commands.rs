use serde_json::{json, Value};

use crate::report::Report;
use crate::{read_pair, FamilyArgs, IndexArgs};
use xlag::admissibility::{
    build_segments, display_set, is_admissible_direct, is_admissible_segments,
    AdmissibilityInstance, DirectVerdict,
};
use xlag::analysis::{
    contour_gram, default_contour_spec, find_radius, polynomial_roots, real_axis_gram,
    sturm_nonneg_roots, ContourSpec,
};
use xlag::darboux::{build_step, verify_factorization, verify_ladder_step};
use xlag::exactnum::{format_rational, parse_rational, rat, to_f64, BigRational};
use xlag::{Component, Error, ExceptionalFamily, PairF, RationalFunction, RationalPolynomial};

fn parse_named(name: &'static str, s: &str) -> xlag::Result<BigRational> {
    parse_rational(s).map_err(|e| Error::Parameter {
        name,
        reason: e.to_string(),
    })
}

fn family(args: &FamilyArgs) -> xlag::Result<ExceptionalFamily> {
    let alpha = parse_named("alpha", &args.alpha)?;
    let pair = read_pair(args.pair.as_deref())?;
    ExceptionalFamily::new(&pair, &alpha)
}

fn pair_json(p: &PairF) -> Value {
    json!({ "f1": p.f1(), "f2": p.f2() })
}

fn rats(items: &[BigRational]) -> Value {
    json!(items.iter().map(format_rational).collect::<Vec<_>>())
}

fn poly_json(p: &RationalPolynomial) -> Value {
    json!({ "degree": p.degree(), "coefficients": p.to_strings() })
}

fn ratfunc_json(f: &RationalFunction) -> Value {
    json!({ "numerator": f.num().to_strings(), "denominator": f.den().to_strings() })
}

fn header(r: &mut Report, fam: &ExceptionalFamily) {
    r.set("alpha", format_rational(fam.alpha()));
    r.set("pair", pair_json(fam.pair()));
    r.set("u_f", fam.uf());
    r.line(format!(
        "F = {}, alpha = {}, u_F = {}",
        fam.pair(),
        fam.alpha(),
        fam.uf()
    ));
}

/// Explicit indices are checked against `σ_F`; otherwise the first `count`
/// elements of `σ_F`.
fn sigma_indices(
    fam: &ExceptionalFamily,
    idx: &IndexArgs,
    default: usize,
) -> xlag::Result<Vec<usize>> {
    if idx.n.is_empty() {
        return Ok(fam.sigma().prefix(idx.count.unwrap_or(default)));
    }
    for &n in &idx.n {
        if !fam.sigma().contains(n) {
            return Err(Error::Index(format!(
                "n = {n} is not in sigma_F (u_F = {}, excluded offsets {:?})",
                fam.uf(),
                fam.pair().f1()
            )));
        }
    }
    Ok(idx.n.clone())
}

pub fn construct(args: &FamilyArgs, idx: &IndexArgs) -> xlag::Result<Report> {
    let fam = family(args)?;
    let mut r = Report::new("construct");
    header(&mut r, &fam);
    let mut polys = Vec::new();
    for n in sigma_indices(&fam, idx, 1)? {
        let p = fam.poly(n)?;
        r.line(format!("L_{n} = {p}"));
        let mut v = poly_json(&p);
        v["n"] = json!(n);
        polys.push(v);
    }
    r.set("polynomials", polys);
    Ok(r)
}

pub fn omega(args: &FamilyArgs) -> xlag::Result<Report> {
    let fam = family(args)?;
    let om = fam.omega()?;
    let roots = sturm_nonneg_roots(om)?;
    let mut r = Report::new("omega");
    header(&mut r, &fam);
    r.set("omega", poly_json(om));
    r.set("nonneg_real_roots", roots);
    r.line(format!("Omega = {om}"));
    r.line(format!("distinct roots in [0, inf): {roots}"));
    Ok(r)
}

pub fn operator(args: &FamilyArgs) -> xlag::Result<Report> {
    let fam = family(args)?;
    let op = fam.operator()?;
    let mut r = Report::new("operator");
    header(&mut r, &fam);
    let coeffs: Vec<Value> = op
        .coeffs()
        .iter()
        .enumerate()
        .map(|(order, c)| {
            let mut v = ratfunc_json(c);
            v["order"] = json!(order);
            v
        })
        .collect();
    r.set("coefficients", coeffs);
    r.line(format!("D_F = {op}"));
    Ok(r)
}

fn segments_json(inst: &AdmissibilityInstance) -> xlag::Result<(Value, Vec<String>)> {
    let d = build_segments(inst)?;
    let segs: Vec<Value> = d
        .segments
        .iter()
        .map(|s| json!({ "elements": rats(&s.elements), "size": s.size() }))
        .collect();
    let text = vec![
        format!("S = {}", display_set(&d.s_display_prefix(), true)),
        format!("G = {}", display_set(&d.g_set, false)),
        format!(
            "maximal segments: {}",
            d.segments
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ];
    Ok((
        json!({
            "s_prefix": rats(&d.s_display_prefix()),
            "g_set": rats(&d.g_set),
            "segments": segs,
        }),
        text,
    ))
}

fn decide(r: &mut Report, inst: &AdmissibilityInstance) -> xlag::Result<bool> {
    let direct = is_admissible_direct(inst);
    let by_segments = is_admissible_segments(inst);
    r.set("c", format_rational(&inst.c));
    r.set("pair", pair_json(&inst.pair));
    r.set("c_hat", inst.c_hat);
    r.set("scan_horizon", inst.scan_horizon());
    r.set("method_direct", direct.is_admissible());
    r.set("method_segments", by_segments);
    r.line(format!("c = {}, F = {}", inst.c, inst.pair));
    if let DirectVerdict::Witness(n) = direct {
        r.set("witness", n);
        r.line(format!("witness: the quotient is negative at n = {n}"));
    }
    if inst.c < rat(0, 1) {
        let (segs, text) = segments_json(inst)?;
        r.set("segments", segs["segments"].clone());
        r.set("s_prefix", segs["s_prefix"].clone());
        r.set("g_set", segs["g_set"].clone());
        r.text.extend(text);
    } else {
        r.set("hermite_reduction", true);
        r.line("c >= 0: reduces to the Hermite condition on F1");
    }
    let agree = direct.is_admissible() == by_segments;
    r.set("methods_agree", agree);
    r.line(match (agree, by_segments) {
        (false, _) => "the two methods DISAGREE",
        (true, true) => "admissible",
        (true, false) => "not admissible",
    });
    if !agree {
        r.fail();
    }
    Ok(by_segments)
}

pub fn admissible(c: &str, pair: Option<&str>) -> xlag::Result<Report> {
    let c = parse_named("c", c)?;
    let inst = AdmissibilityInstance::new(c, read_pair(pair)?)?;
    let mut r = Report::new("admissible");
    decide(&mut r, &inst)?;
    Ok(r)
}

pub fn verify_eigen(args: &FamilyArgs, idx: &IndexArgs) -> xlag::Result<Report> {
    let fam = family(args)?;
    let mut r = Report::new("verify-eigen");
    header(&mut r, &fam);
    let mut checks = Vec::new();
    for n in sigma_indices(&fam, idx, 6)? {
        let c = fam.verify_eigen(n)?;
        r.line(format!(
            "n = {n}: {}",
            if c.holds {
                "holds".to_string()
            } else {
                format!("FAILS, residual {}", c.residual)
            }
        ));
        if !c.holds {
            r.fail();
        }
        checks.push(json!({ "n": n, "holds": c.holds, "residual": c.residual.to_strings() }));
    }
    r.set("checks", checks);
    Ok(r)
}

pub fn verify_ladder(args: &FamilyArgs, component: u8, idx: &IndexArgs) -> xlag::Result<Report> {
    let fam = family(args)?;
    let component = Component::try_from(component)?;
    let step = build_step(fam.pair(), component, fam.alpha())?;
    let mut r = Report::new("verify-ladder");
    header(&mut r, &fam);
    r.set("component", component.index());
    r.set("reduced", pair_json(&step.reduced));
    r.set("removed", step.removed);
    r.set(
        "a_operator",
        step.a_op
            .coeffs()
            .iter()
            .map(ratfunc_json)
            .collect::<Vec<_>>(),
    );
    r.set(
        "b_operator",
        step.b_op
            .coeffs()
            .iter()
            .map(ratfunc_json)
            .collect::<Vec<_>>(),
    );
    r.line(format!(
        "step {} -> {} (removed {})",
        step.reduced, step.pair, step.removed
    ));

    let fact = verify_factorization(&step, 3)?;
    r.set(
        "factorization",
        serde_json::to_value(&fact).expect("serializable"),
    );
    r.line(format!(
        "D_reduced = BA + ({}): {}; D_F = AB + ({}): {}",
        step.eigen_shift_reduced, fact.reduced_identity, step.eigen_shift_full, fact.full_identity
    ));
    if !fact.holds() {
        r.fail();
    }

    let ns: Vec<usize> = if idx.n.is_empty() {
        (0..)
            .filter(|n| !fam.pair().f1().contains(&(*n as u32)))
            .take(idx.count.unwrap_or(6))
            .collect()
    } else {
        idx.n.clone()
    };
    let mut ladder = Vec::new();
    for n in ns {
        let c = verify_ladder_step(&step, n)?;
        r.line(format!(
            "n = {n}: A raises {}, B lowers {} (factor {})",
            c.raising_holds,
            c.lowering_holds,
            step.lowering_factor(n)
        ));
        if !c.holds() {
            r.fail();
        }
        ladder.push(serde_json::to_value(&c).expect("serializable"));
    }
    r.set("ladder", ladder);
    Ok(r)
}

pub fn verify_orthogonality(
    args: &FamilyArgs,
    idx: &IndexArgs,
    tol: f64,
    quad_tol: f64,
) -> xlag::Result<Report> {
    let fam = family(args)?;
    let ns = sigma_indices(&fam, idx, 6)?;
    let mut r = Report::new("verify-orthogonality");
    header(&mut r, &fam);
    r.set("tol", tol);
    r.set("quad_tol", quad_tol);
    let mut entries = Vec::new();
    for &n in &ns {
        for &m in &ns {
            let (res, quad) = match real_axis_gram(n, m, fam.pair(), fam.alpha(), quad_tol) {
                Ok(v) => v,
                Err(Error::Certificate(msg)) => {
                    r.set("certificate", msg.clone());
                    r.line(format!("precondition failed: {msg}"));
                    r.fail();
                    return Ok(r);
                }
                Err(e) => return Err(e),
            };
            let pass = res.rel_error < tol && quad.converged;
            if !pass {
                r.fail();
            }
            r.line(format!(
                "({n}, {m}): numeric {:.12e}, closed form {:.12e}, error {:.2e} [{}]",
                res.numeric,
                res.closed_form,
                res.rel_error,
                if pass { "ok" } else { "FAIL" }
            ));
            let mut v = serde_json::to_value(&res).expect("serializable");
            v["quadrature"] = serde_json::to_value(&quad).expect("serializable");
            v["pass"] = json!(pass);
            entries.push(v);
        }
    }
    r.set("entries", entries);
    Ok(r)
}

fn complex_json(re: f64, im: f64) -> Value {
    json!({ "re": re, "im": im })
}

pub fn verify_contour(
    args: &FamilyArgs,
    idx: &IndexArgs,
    radius: Option<f64>,
    truncation: Option<f64>,
    tol: f64,
) -> xlag::Result<Report> {
    let fam = family(args)?;
    let ns = sigma_indices(&fam, idx, 4)?;
    let max_n = ns.iter().copied().max().unwrap_or(0);
    let (auto, choice) = default_contour_spec(fam.pair(), fam.alpha(), max_n)?;
    let spec = match (radius, truncation) {
        (None, None) => auto,
        (r, t) => ContourSpec::new(
            r.unwrap_or(auto.r),
            t.unwrap_or(auto.truncation_r),
            r.unwrap_or(choice.clearance),
        )?,
    };
    let mut r = Report::new("verify-contour");
    header(&mut r, &fam);
    r.set(
        "contour",
        serde_json::to_value(&spec).expect("serializable"),
    );
    r.set(
        "radius_search",
        serde_json::to_value(&choice).expect("serializable"),
    );
    r.set("tol", tol);
    r.line(format!(
        "r = {}, R = {}, clearance of automatic radius {:.3e}",
        spec.r, spec.truncation_r, choice.clearance
    ));
    let a = to_f64(fam.alpha());
    if a == a.round() {
        let note = "alpha is an integer: e^{2 pi i alpha} - 1 = 0, so both sides vanish and the check is 0 = 0";
        r.set("note", note);
        r.line(note);
    }
    let mut entries = Vec::new();
    for &n in &ns {
        for &m in &ns {
            let res = match contour_gram(n, m, fam.pair(), fam.alpha(), &spec) {
                Ok(v) => v,
                Err(e @ Error::PathThroughZero { .. }) => {
                    let mut fail = Report::from_error("verify-contour", &e);
                    fail.body.extend(r.body.clone());
                    fail.line("try a smaller --radius");
                    return Ok(fail);
                }
                Err(e) => return Err(e),
            };
            let pass = res.rel_error < tol;
            if !pass {
                r.fail();
            }
            r.line(format!(
                "({n}, {m}): numeric {:.10e}{:+.10e}i, closed form {:.10e}{:+.10e}i, error {:.2e} [{}]",
                res.numeric.re,
                res.numeric.im,
                res.closed_form.re,
                res.closed_form.im,
                res.rel_error,
                if pass { "ok" } else { "FAIL" }
            ));
            entries.push(json!({
                "n": n,
                "m": m,
                "numeric": complex_json(res.numeric.re, res.numeric.im),
                "closed_form": complex_json(res.closed_form.re, res.closed_form.im),
                "floor_scale": res.floor_scale,
                "rel_error": res.rel_error,
                "pass": pass,
            }));
        }
    }
    r.set("entries", entries);
    Ok(r)
}

pub fn roots(args: &FamilyArgs) -> xlag::Result<Report> {
    let fam = family(args)?;
    let om = fam.omega()?;
    let mut zs = polynomial_roots(om);
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let count = sturm_nonneg_roots(om)?;
    let mut r = Report::new("roots");
    header(&mut r, &fam);
    r.set("omega", poly_json(om));
    r.set(
        "roots",
        zs.iter()
            .map(|z| complex_json(z.re, z.im))
            .collect::<Vec<_>>(),
    );
    r.set("nonneg_real_roots", count);
    r.line(format!("Omega = {om}"));
    for z in &zs {
        r.line(format!("  {:.12e} {:+.12e}i", z.re, z.im));
    }
    r.line(format!("distinct roots in [0, inf): {count}"));
    match find_radius(fam.pair(), fam.alpha()) {
        Ok(c) => {
            r.line(format!(
                "contour radius {} with clearance {:.3e}",
                c.r, c.clearance
            ));
            r.set(
                "radius_search",
                serde_json::to_value(&c).expect("serializable"),
            );
        }
        Err(e) => r.set("radius_search", json!({ "error": e.to_string() })),
    }
    Ok(r)
}

pub fn reproduce_appendix() -> Report {
    let mut r = Report::new("reproduce-appendix");
    let c = rat(-17, 4);
    let mut cases = Vec::new();
    let expected = [false, true, true];
    for (f1, want) in [vec![1, 2, 8, 9], vec![1, 2, 5, 8, 9], vec![1, 2, 4, 8, 9]]
        .into_iter()
        .zip(expected)
    {
        let pair = PairF::new(f1, vec![1, 2]).expect("valid pair");
        let inst =
            AdmissibilityInstance::new(c.clone(), pair).expect("c is not a nonpositive integer");
        let mut case = Report::new("reproduce-appendix");
        let got = decide(&mut case, &inst).expect("c < 0");
        if got != want || case.exit != 0 {
            r.fail();
        }
        r.text.extend(case.text);
        r.line("");
        let mut body = Value::Object(case.body);
        body["admissible"] = json!(got);
        body["expected"] = json!(want);
        cases.push(body);
    }
    r.text.pop();
    r.set("cases", cases);
    r
}
