//! Symbolic identity suite: the conic-determinant closed form for T_{u,v},
//! the factor shape of its twenty line determinants, the characteristic
//! quintic of the displayed pencil, and the layer-1 norm certification.

use num_traits::{One as _, Zero as _};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycField;
use crate::error::{Error, Result};
use crate::matrix;
use crate::mpoly::{vars, MPoly, Vars};
use crate::pencil::{char_quintic, pencil_from_coefficients, QuadricPencil};
use crate::points::{config, norm_section};
use crate::rat::Rat;
use crate::scalar::Ring;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

fn uv_ctx() -> Vars {
    vars(&["u", "v"])
}

/// The six points of T_{u,v} scaled to polynomial coordinates:
/// (u^-2 : u^-1 : 1) = (1 : u : u^2). The scalings multiply the conic
/// determinant by u^4 v^4 and each affected line determinant by the point's
/// scale factor.
fn scaled_points() -> Vec<[MPoly<Rat>; 3]> {
    let ctx = uv_ctx();
    let u = MPoly::<Rat>::var(ctx.clone(), 0);
    let v = MPoly::<Rat>::var(ctx.clone(), 1);
    let one = MPoly::constant(ctx.clone(), Rat::one());
    let zero = MPoly::zero_in(ctx.clone());
    vec![
        [u.clone() * u.clone(), u.clone(), one.clone()],
        [one.clone(), u.clone(), u.clone() * u.clone()],
        [v.clone() * v.clone(), v.clone(), one.clone()],
        [one.clone(), v.clone(), v.clone() * v.clone()],
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), one.clone(), zero.clone()],
    ]
}

/// (u+1)(u-1)(v+1)(v-1)(u-v)^2(uv-1)^2, expanded.
fn muv_product() -> MPoly<Rat> {
    let ctx = uv_ctx();
    let u = MPoly::<Rat>::var(ctx.clone(), 0);
    let v = MPoly::<Rat>::var(ctx.clone(), 1);
    let one = MPoly::constant(ctx.clone(), Rat::one());
    let um = u.clone() - one.clone();
    let up = u.clone() + one.clone();
    let vm = v.clone() - one.clone();
    let vp = v.clone() + one.clone();
    let uv1 = u.clone() * v.clone() - one.clone();
    let umv = u - v;
    up * um * vp * vm * umv.clone() * umv * uv1.clone() * uv1
}

/// The conic determinant (graded-lex monomial columns) of the scaled points,
/// divided by uv, so it equals M_{u,v} * u^3 v^3.
fn muv_determinant_times_u3v3() -> Result<MPoly<Rat>> {
    let pts = scaled_points();
    let rows: Vec<Vec<MPoly<Rat>>> = pts
        .iter()
        .map(|[x, y, z]| {
            vec![
                x.clone() * x.clone(),
                x.clone() * y.clone(),
                x.clone() * z.clone(),
                y.clone() * y.clone(),
                y.clone() * z.clone(),
                z.clone() * z.clone(),
            ]
        })
        .collect();
    let det = matrix::det(&rows)?;
    let ctx = uv_ctx();
    let uv = MPoly::<Rat>::var(ctx.clone(), 0) * MPoly::<Rat>::var(ctx, 1);
    det.exact_divide(&uv)
}

pub(crate) fn muv_check_against(expected: &MPoly<Rat>) -> Check {
    match muv_determinant_times_u3v3() {
        Ok(lhs) => {
            let pass = &lhs == expected;
            check(
                "muv_identity",
                pass,
                if pass {
                    "conic determinant times u^3 v^3 equals the expanded product".to_string()
                } else {
                    format!("mismatch: determinant route gave {lhs}")
                },
            )
        }
        Err(e) => check("muv_identity", false, format!("computation failed: {e}")),
    }
}

pub fn muv_identity() -> Check {
    muv_check_against(&muv_product())
}

/// Every line determinant of T_{u,v} must factor, up to a monomial, into
/// powers of u-1, u+1, u^2+1, v-1, v+1, v^2+1, u-v, u+v, uv-1, uv+1.
pub fn line_det_factors() -> Check {
    let ctx = uv_ctx();
    let u = MPoly::<Rat>::var(ctx.clone(), 0);
    let v = MPoly::<Rat>::var(ctx.clone(), 1);
    let one = MPoly::constant(ctx.clone(), Rat::one());
    let candidates = [
        u.clone() - one.clone(),
        u.clone() + one.clone(),
        u.clone() * u.clone() + one.clone(),
        v.clone() - one.clone(),
        v.clone() + one.clone(),
        v.clone() * v.clone() + one.clone(),
        u.clone() - v.clone(),
        u.clone() + v.clone(),
        u.clone() * v.clone() - one.clone(),
        u.clone() * v.clone() + one.clone(),
    ];
    let pts = scaled_points();
    let mut checked = 0usize;
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let rows: Vec<Vec<MPoly<Rat>>> = [i, j, k]
                    .iter()
                    .map(|&ix| pts[ix].to_vec())
                    .collect();
                let mut det = match matrix::det(&rows) {
                    Ok(d) => d,
                    Err(e) => return check("line_det_factors", false, format!("{e}")),
                };
                if det.is_zero() {
                    return check(
                        "line_det_factors",
                        false,
                        format!("triple ({i},{j},{k}) is identically collinear"),
                    );
                }
                loop {
                    let mut divided = false;
                    for c in &candidates {
                        if let Ok(q) = det.exact_divide(c) {
                            det = q;
                            divided = true;
                        }
                    }
                    if !divided {
                        break;
                    }
                }
                if det.num_terms() != 1 {
                    return check(
                        "line_det_factors",
                        false,
                        format!("triple ({i},{j},{k}) leaves non-monomial remainder {det}"),
                    );
                }
                checked += 1;
            }
        }
    }
    check(
        "line_det_factors",
        checked == 20,
        format!("{checked} line determinants factor over the stated set"),
    )
}

/// det(t A_F + w A_G) with symbolic a, b equals
/// (1/16)(t^5 - a t^4 w + b t^3 w^2 - a t^2 w^3 + t w^4).
pub fn pencil_identity() -> Check {
    let ctx = vars(&["a", "b"]);
    let a = MPoly::<Rat>::var(ctx.clone(), 0);
    let b = MPoly::<Rat>::var(ctx.clone(), 1);
    let p: QuadricPencil<MPoly<Rat>> = pencil_from_coefficients(&a, &b);
    let h = char_quintic(&p);
    let sixteenth: Rat = "1/16".parse().unwrap();
    let expectations: [MPoly<Rat>; 6] = [
        MPoly::constant(ctx.clone(), Rat::one()),
        -a.clone(),
        b.clone(),
        -a.clone(),
        MPoly::constant(ctx.clone(), Rat::one()),
        MPoly::zero_in(ctx.clone()),
    ];
    for (k, expect) in expectations.iter().enumerate() {
        if h.coeff(k) != &expect.scale_rat(&sixteenth) {
            return check(
                "pencil_identity",
                false,
                format!("coefficient of t^{}w^{k} is {}", 5 - k, h.coeff(k)),
            );
        }
    }
    check(
        "pencil_identity",
        true,
        "characteristic quintic matches (1/16)(t^5 - a t^4 w + b t^3 w^2 - a t^2 w^3 + t w^4)",
    )
}

/// Layer-1 norm certification: the four mu-norms, all twenty line
/// determinant norms, and the conic norm are signed powers of 5.
pub fn norm20_layer_one() -> Check {
    let run = || -> Result<(usize, bool)> {
        let cf = CycField::new(1)?;
        let cfg = config(&cf, 3)?;
        let section = norm_section(&cf, &cfg)?;
        Ok((section.line_det_norms.len(), section.all_powers_of_five()))
    };
    match run() {
        Ok((n, ok)) => check(
            "norm20_layer_one",
            ok && n == 20,
            format!("{n} line determinant norms, all signed powers of five: {ok}"),
        ),
        Err(e) => check("norm20_layer_one", false, format!("{e}")),
    }
}

/// Run a named suite: "tuv", "pencil", or "all".
pub fn suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "tuv" => Ok(vec![muv_identity(), line_det_factors()]),
        "pencil" => Ok(vec![pencil_identity()]),
        "all" => Ok(vec![
            muv_identity(),
            line_det_factors(),
            pencil_identity(),
            norm20_layer_one(),
        ]),
        other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
