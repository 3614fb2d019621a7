use serde::Serialize;

use crate::error::Result;
use crate::models::{y_fixed_points, ExampleSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub example: String,
    pub grading: Vec<i64>,
    pub window: i64,
    pub conditions: Vec<ConditionResult>,
    pub warnings: Vec<String>,
    pub all_passed: bool,
}

fn result(name: &str, failure: Option<String>, ok: &str) -> ConditionResult {
    ConditionResult {
        name: name.into(),
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| ok.into()),
    }
}

/// Checks conditions (a)-(e) on the restricted coefficient sequences over
/// grades `[-W, W]` (`[-W, 2W]` where (d) reaches further).
pub fn check_conditions(spec: &ExampleSpec, window: i64) -> Result<ConditionReport> {
    let g = &spec.grading;
    let w = window.max(1);
    let a = spec.a.restrict(g).to_poly()?;
    let c = spec.c.restrict(g).to_poly()?;
    let b = spec.b_truncated(g, 2 * w)?.restrict(g).to_poly()?;
    let d = spec.z_truncated(g, 2 * w)?.restrict(g).to_poly()?;
    let mut warnings = Vec::new();
    let mut out = Vec::new();

    let kprime = d.valuation().unwrap_or(0);
    let fa = (-w..=-kprime).find(|&i| a.coeff(i) < 0).map(|i| format!("a_{i} = {} < 0", a.coeff(i)));
    out.push(result("a", fa, &format!("a_i >= 0 for i in [-{w}, {}]", -kprime)));

    let fb_sign = (-w..=w).find(|&i| b.coeff(i) < 0).map(|i| format!("b_{i} = {} < 0", b.coeff(i)));
    let fb = match fb_sign {
        Some(f) => Some(f),
        None => match spec.z_minus_b() {
            Some(diff) => {
                let top = diff.restrict(g).to_poly()?.degree();
                warnings.push(format!(
                    "tail b_i = d_i checked symbolically: Z - B is finite, support up to grade {}",
                    top.map_or("-".into(), |t| t.to_string())
                ));
                None
            }
            None => {
                warnings.push(format!("tail b_i = d_i checked only on grades [{}, {w}]", w / 2));
                (w / 2..=w).find(|&i| b.coeff(i) != d.coeff(i)).map(|i| format!("b_{i} != d_{i}"))
            }
        },
    };
    out.push(result("b", fb, "b_i >= 0 in window and b_i = d_i in the tail"));

    let fc = c.terms().find(|&(i, _)| i <= 0).map(|(i, v)| format!("c_{i} = {v} != 0"));
    out.push(result("c", fc, "c_i = 0 for i <= 0"));

    let mut fd = None;
    'outer: for (i, ci) in c.terms() {
        if ci >= 0 || i.abs() > w {
            continue;
        }
        for (j, dj) in d.terms() {
            if j.abs() > w {
                continue;
            }
            let v = a.coeff(-i - j) + b.coeff(i + j) + ci - dj + 1;
            if v < 0 {
                fd = Some(format!("i = {i}, j = {j}: a + b + c - d + 1 = {v}"));
                break 'outer;
            }
        }
    }
    out.push(result("d", fd, "a_{-i-j} + b_{i+j} + c_i - d_j + 1 >= 0 wherever c_i < 0, d_j != 0"));

    let (fe, count) = match y_fixed_points(spec) {
        Ok(p) if p.is_empty() => (Some("no Y fixed points contribute".to_string()), 0),
        Ok(p) => (None, p.len()),
        Err(e) => (Some(format!("Y fixed points not finite or undefined: {e}")), 0),
    };
    out.push(result("e", fe, &format!("Y fixed points: {count}")));

    let all_passed = out.iter().all(|r| r.passed);
    Ok(ConditionReport {
        example: spec.name.clone(),
        grading: g.0.clone(),
        window: w,
        conditions: out,
        warnings,
        all_passed,
    })
}
