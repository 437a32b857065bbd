//! `lagrangian-eval`: every density form at one field/source point, with
//! the cross-form residuals that tie them together.

use num_complex::Complex64;
use num_traits::FromPrimitive;

use fieldlab_core::lagrangian::{self, exact, BiParameter, FieldPoint, SourcePoint};
use fieldlab_core::vec3::Vec3;
use fieldlab_core::Rational;

use crate::config::RunConfig;
use crate::output::{fnum, OutputDir};
use crate::report::{CheckRow, ReportEnvelope};
use crate::CliError;

fn cnum(v: Complex64) -> String {
    format!(
        "{}{}{}i",
        fnum(v.re),
        if v.im < 0.0 { "-" } else { "+" },
        fnum(v.im.abs())
    )
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

pub fn run(
    config: &RunConfig,
    out: &OutputDir,
    exact_domain: bool,
) -> Result<ReportEnvelope, CliError> {
    let c = &config.lagrangian_eval;
    let e = Vec3::new(c.e[0], c.e[1], c.e[2]);
    let b = Vec3::new(c.b[0], c.b[1], c.b[2]);
    let p = FieldPoint::new(e, b).map_err(|err| CliError::Config(err.to_string()))?;
    let s = SourcePoint::new(
        c.rho,
        Vec3::new(c.j[0], c.j[1], c.j[2]),
        c.phi,
        Vec3::new(c.a_pot[0], c.a_pot[1], c.a_pot[2]),
    )
    .map_err(|err| CliError::Config(err.to_string()))?;
    let k = BiParameter::new(c.k).map_err(|err| CliError::Config(err.to_string()))?;

    let maxwell = lagrangian::l_maxwell(&p, &s);
    let maxwell_tensor = lagrangian::l_maxwell_tensor(&p, &s);
    let lc = lagrangian::l_c(&p, &s);
    let lc_det = lagrangian::l_c_det(&p, &s);
    let contraction = lagrangian::l_c_tensor_contraction(&p);
    let bic_det = lagrangian::l_bic_det(&p, &k);
    let bic_closed = lagrangian::l_bic_closed(&p, &k);
    let bi_invariant = lagrangian::l_bi_invariant(&p, &k);
    let bi_det = lagrangian::l_bi_det(&p, &k);

    let mut table: Vec<Vec<String>> = vec![
        vec!["quadratic (vector form)".into(), cnum(maxwell.value)],
        vec!["quadratic (tensor form)".into(), cnum(maxwell_tensor.value)],
        vec!["complex (canonical)".into(), cnum(lc.value)],
        vec!["complex (determinant form)".into(), cnum(lc_det.value)],
        vec!["complex tensor contraction".into(), cnum(contraction)],
        vec![
            "complexified nonlinear (determinant form)".into(),
            cnum(bic_det.value),
        ],
        vec![
            "complexified nonlinear (closed form)".into(),
            cnum(bic_closed.value),
        ],
    ];

    let mut checks = vec![
        CheckRow::new(
            "tensor form = vector form (quadratic)",
            cnum(maxwell.value),
            cnum(maxwell_tensor.value),
            rel(maxwell.value, maxwell_tensor.value),
            rel(maxwell.value, maxwell_tensor.value) <= 1e-12,
        ),
        CheckRow::new(
            "determinant form = canonical (complex)",
            cnum(lc.value),
            cnum(lc_det.value),
            rel(lc.value, lc_det.value),
            rel(lc.value, lc_det.value) <= 1e-12,
        ),
        CheckRow::new(
            "complexified nonlinear = F^2/2",
            cnum(bic_closed.value),
            cnum(bic_det.value),
            rel(bic_closed.value, bic_det.value),
            rel(bic_closed.value, bic_det.value) <= 1e-12,
        )
        .with_note(if bic_det.branch_ambiguous {
            "branch ambiguous: Re(1 - F^2/k^2) <= 0; reduction-consistent root used"
        } else {
            "principal and reduction branches coincide"
        }),
        CheckRow::new(
            "Re(complex) = quadratic",
            fnum(maxwell.re()),
            fnum(lc.value.re),
            (lc.value.re - maxwell.re()).abs() / (1.0 + maxwell.re().abs()),
            (lc.value.re - maxwell.re()).abs() <= 1e-12 * (1.0 + maxwell.re().abs()),
        ),
        {
            let half_f_sq = bic_closed.value;
            let residual = rel(contraction, half_f_sq * Complex64::new(2.0, 0.0));
            CheckRow::new(
                "contraction / canonical free part = 2 (annotated)",
                cnum(half_f_sq * Complex64::new(2.0, 0.0)),
                cnum(contraction),
                residual,
                residual <= 1e-12,
            )
            .with_note(
                "documented convention gap: the literal contraction carries twice the \
                 canonical free part",
            )
        },
    ];

    match (&bi_invariant, &bi_det) {
        (Ok(inv), Ok(det)) => {
            table.push(vec!["nonlinear (invariant form)".into(), cnum(inv.value)]);
            table.push(vec!["nonlinear (determinant form)".into(), cnum(det.value)]);
            checks.push(CheckRow::new(
                "determinant form = invariant form (nonlinear)",
                cnum(inv.value),
                cnum(det.value),
                rel(inv.value, det.value),
                rel(inv.value, det.value) <= 1e-12,
            ));
            let comparison =
                lagrangian::compare_real_vs_complex_bi(&p, &k).expect("both forms evaluated");
            checks.push(
                CheckRow::new(
                    "real nonlinear density vs Re(complexified)",
                    format!("difference {}", fnum(comparison.difference)),
                    format!(
                        "leading-order estimate {}",
                        fnum(comparison.leading_order_estimate)
                    ),
                    comparison.difference,
                    true,
                )
                .with_note("the two differ generically; reported, not a failure"),
            );
        }
        _ => {
            checks.push(
                CheckRow::new(
                    "nonlinear density real branch",
                    "radicand >= 0",
                    "negative radicand: field beyond the nonlinear bound",
                    f64::NAN,
                    true,
                )
                .with_note("real nonlinear forms skipped at this field point"),
            );
        }
    }

    if exact_domain {
        let to_q = |v: f64| Rational::from_f64(v).expect("finite input");
        let eq = Vec3::new(to_q(c.e[0]), to_q(c.e[1]), to_q(c.e[2]));
        let bq = Vec3::new(to_q(c.b[0]), to_q(c.b[1]), to_q(c.b[2]));
        let kq = to_q(c.k);
        let rho = to_q(c.rho);
        let phi = to_q(c.phi);
        let jq = Vec3::new(to_q(c.j[0]), to_q(c.j[1]), to_q(c.j[2]));
        let aq = Vec3::new(to_q(c.a_pot[0]), to_q(c.a_pot[1]), to_q(c.a_pot[2]));

        let lc_exact = exact::l_c(&eq, &bq, &rho, &jq, &phi, &aq);
        let lm_exact = exact::l_maxwell(&eq, &bq, &rho, &jq, &phi, &aq);
        checks.push(CheckRow::new(
            "[exact] Re(complex) = quadratic",
            "equal",
            if lc_exact.re == lm_exact {
                "equal"
            } else {
                "different"
            },
            if lc_exact.re == lm_exact {
                0.0
            } else {
                f64::NAN
            },
            lc_exact.re == lm_exact,
        ));

        let reduced = exact::l_bic_reduced(&eq, &bq, &kq);
        let closed = exact::l_bic_closed(&eq, &bq);
        let collapsed = reduced.as_ref() == Some(&closed);
        checks.push(CheckRow::new(
            "[exact] complexified nonlinear = F^2/2",
            "equal",
            if collapsed { "equal" } else { "different" },
            if collapsed { 0.0 } else { f64::NAN },
            collapsed,
        ));

        let (det_side, inv_side) = exact::bi_radicand_forms(&eq, &bq, &kq);
        checks.push(CheckRow::new(
            "[exact] determinant radicand = invariant radicand",
            "equal",
            if det_side == inv_side {
                "equal"
            } else {
                "different"
            },
            if det_side == inv_side { 0.0 } else { f64::NAN },
            det_side == inv_side,
        ));
    }

    out.write_csv("lagrangian_values.csv", &["form", "value"], &table)?;
    Ok(ReportEnvelope::new("lagrangian-eval", config, checks))
}
