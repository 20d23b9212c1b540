//! Command dispatch. Every command yields a report plus a pass flag; a failed
//! verification exits 1, usage and operand errors exit 2.

use std::borrow::Cow;

use cartan_core::calculus::{delta_reconstruct, interior_product, pairing};
use cartan_core::{
    Algebroid, Chart, DualPoisson, Error as CoreError, GradedElement, PoissonStructure, Variance,
};
use serde_json::{json, Map, Value};

use crate::model::Model;
use crate::output::{self, Report};

pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match e {
            CoreError::Unverified(_) | CoreError::Rejected { .. } => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn axiom_gate() -> Failure {
    Failure {
        code: EXIT_FAILED,
        message: "the algebroid fails its axioms (run `check`, or pass --force)".into(),
    }
}

pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

fn ok(report: Report) -> Result<Outcome, Failure> {
    Ok(Outcome {
        report,
        passed: true,
    })
}

pub enum Command {
    Check,
    Bracket(String, String),
    D(String),
    Lie(String, String),
    Interior(String, String),
    Pair(String, String),
    Wedge(String, String),
    Schouten(String, String),
    PoissonCheck,
    Sharp(String),
    Cotangent,
    Koszul(String, String),
    Lichnerowicz(String),
    Dual,
    DualVerify,
    Reconstruct,
}

pub struct Context<'a> {
    model: &'a Model,
    force: bool,
}

impl<'a> Context<'a> {
    pub fn new(model: &'a Model, force: bool) -> Context<'a> {
        Context { model, force }
    }

    fn algebroid(&self) -> Result<&'a Algebroid, Failure> {
        self.model
            .algebroid
            .as_ref()
            .ok_or_else(|| usage("the model has no [algebroid] section"))
    }

    fn poisson(&self) -> Result<&'a PoissonStructure, Failure> {
        self.model
            .poisson
            .as_ref()
            .ok_or_else(|| usage("the model has no [poisson] section"))
    }

    /// The algebroid calculus runs in: the model's algebroid, else the
    /// tangent algebroid of the Poisson chart.
    fn calculus(&self) -> Result<Cow<'a, Algebroid>, Failure> {
        match (&self.model.algebroid, &self.model.poisson) {
            (Some(a), _) => Ok(Cow::Borrowed(a)),
            (None, Some(p)) => Ok(Cow::Owned(p.tangent())),
            (None, None) => Err(usage(
                "the model has neither an [algebroid] nor a [poisson] section",
            )),
        }
    }

    /// The calculus algebroid, refused unless it satisfies the axioms.
    fn verified_calculus(&self) -> Result<Cow<'a, Algebroid>, Failure> {
        let a = self.calculus()?;
        if self.force || a.is_verified() || a.verify_axioms().passed {
            Ok(a)
        } else {
            Err(axiom_gate())
        }
    }

    fn verified_poisson(&self) -> Result<PoissonStructure, Failure> {
        let p = self.poisson()?.clone();
        if self.force {
            return Ok(p.assume_verified());
        }
        p.verify().map_err(|_| Failure {
            code: EXIT_FAILED,
            message: "the bivector is not Poisson (run `poisson-check`, or pass --force)".into(),
        })
    }

    /// A named block of the model or an inline expression, as an element of
    /// rank `rank` over `chart`. Inline expressions become degree-0 elements
    /// of the `default` variance.
    fn operand(
        &self,
        name: &str,
        chart: &Chart,
        rank: usize,
        default: Variance,
    ) -> Result<GradedElement, Failure> {
        if let Some(block) = self.model.element(name) {
            return block.bind(chart, rank).map_err(usage);
        }
        let f = chart.parse(name).map_err(|e| {
            usage(format!(
                "operand `{name}` is neither a block of the model nor an expression ({e})"
            ))
        })?;
        Ok(GradedElement::scalar(default, rank, f))
    }

    fn typed_operand(
        &self,
        name: &str,
        chart: &Chart,
        rank: usize,
        variance: Variance,
    ) -> Result<GradedElement, Failure> {
        let x = self.operand(name, chart, rank, variance)?;
        if x.variance() != variance {
            return Err(usage(format!(
                "operand `{name}` is a {}, expected a {}",
                x.variance().name(),
                variance.name()
            )));
        }
        Ok(x)
    }

    fn variance_of(&self, name: &str) -> Option<Variance> {
        self.model.element(name).map(|b| b.variance)
    }

    pub fn run(&self, command: &Command) -> Result<Outcome, Failure> {
        use Command::*;
        use Variance::{Form, Multivector};
        match command {
            Check => {
                let a = self.algebroid()?;
                let report = a.verify_axioms();
                Ok(Outcome {
                    passed: report.passed,
                    report: output::axioms(&report, a),
                })
            }
            Bracket(x, y) => {
                let a = self.verified_calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let x = self.typed_operand(x, c, k, Multivector)?;
                let y = self.typed_operand(y, c, k, Multivector)?;
                ok(output::element(&a.bracket_sections(&x, &y)?, c))
            }
            D(eta) => {
                let a = self.verified_calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let eta = self.typed_operand(eta, c, k, Form)?;
                ok(output::element(&a.exterior_derivative(&eta)?, c))
            }
            Lie(v, x) => {
                let a = self.verified_calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let v = self.typed_operand(v, c, k, Multivector)?;
                let x = self.operand(x, c, k, Form)?;
                let result = match x.variance() {
                    Form if v.homogeneous_degree() == Some(1) => a.lie_derivative_form(&v, &x)?,
                    Form => a.lie_operator(&v)?.apply(&x)?,
                    Multivector => a.lie_derivative_multivector(&v, &x)?,
                };
                ok(output::element(&result, c))
            }
            Interior(p, eta) => {
                let a = self.calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let p = self.typed_operand(p, c, k, Multivector)?;
                let eta = self.typed_operand(eta, c, k, Form)?;
                ok(output::element(&interior_product(&p, &eta)?, c))
            }
            Pair(eta, p) => {
                let a = self.calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let eta = self.typed_operand(eta, c, k, Form)?;
                let p = self.typed_operand(p, c, k, Multivector)?;
                ok(output::expression(&pairing(&eta, &p)?, c))
            }
            Wedge(x, y) => {
                let a = self.calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let variance = self.variance_of(x).or(self.variance_of(y)).unwrap_or(Form);
                let x = self.typed_operand(x, c, k, variance)?;
                let y = self.typed_operand(y, c, k, variance)?;
                ok(output::element(&x.wedge(&y)?, c))
            }
            Schouten(p, q) => {
                let a = self.verified_calculus()?;
                let (c, k) = (a.chart(), a.rank());
                let p = self.typed_operand(p, c, k, Multivector)?;
                let q = self.typed_operand(q, c, k, Multivector)?;
                ok(output::element(&a.schouten_bracket(&p, &q)?, c))
            }
            PoissonCheck => {
                let p = self.poisson()?;
                let report = p.is_poisson();
                Ok(Outcome {
                    passed: report.passed,
                    report: output::poisson_check("poisson", &report, p.chart()),
                })
            }
            Sharp(eta) => {
                let p = self.poisson()?;
                let (c, n) = (p.chart(), p.dim());
                let eta = self.typed_operand(eta, c, n, Form)?;
                ok(output::element(&p.sharp(&eta)?, c))
            }
            Cotangent => {
                let p = self.verified_poisson()?;
                ok(output::algebroid_report(&p.cotangent_algebroid()?))
            }
            Koszul(eta, zeta) => {
                let p = self.verified_poisson()?;
                let (c, n) = (p.chart(), p.dim());
                let eta = self.typed_operand(eta, c, n, Form)?;
                let zeta = self.typed_operand(zeta, c, n, Form)?;
                ok(output::element(&p.koszul_bracket(&eta, &zeta)?, c))
            }
            Lichnerowicz(q) => {
                let p = self.verified_poisson()?;
                let (c, n) = (p.chart(), p.dim());
                let q = self.typed_operand(q, c, n, Multivector)?;
                ok(output::element(&p.lichnerowicz_differential(&q)?, c))
            }
            Dual => {
                let dual = self.dual()?;
                ok(output::poisson_report(dual.structure()))
            }
            DualVerify => self.dual_verify(),
            Reconstruct => self.reconstruct(),
        }
    }

    fn dual(&self) -> Result<DualPoisson, Failure> {
        let a = self.algebroid()?;
        if self.force {
            return Ok(DualPoisson::unchecked(a)?);
        }
        let verified = a.clone().verify().map_err(|_| axiom_gate())?;
        Ok(DualPoisson::new(&verified)?)
    }

    fn dual_verify(&self) -> Result<Outcome, Failure> {
        let a = self.algebroid()?;
        let dual = self.dual()?;
        let chart = dual.chart();
        let poisson = dual.structure().is_poisson();
        let homogeneity = dual.homogeneity_check();
        let transpose = dual.transpose_anchor_check(a)?;

        let mut report = output::poisson_check("poisson", &poisson, chart);
        let homogeneous = homogeneity.is_zero();
        report
            .text
            .push_str(&output::verdict_line("homogeneity", homogeneous));
        if !homogeneous {
            report
                .text
                .push_str(&format!("[Z,L] + L: {}\n", homogeneity.render(chart)));
        }
        let mut residuals = Map::new();
        for (&(h1, h2), r) in &transpose {
            if !r.is_zero() {
                residuals.insert(
                    format!("{},{}", chart.name(h1), chart.name(h2)),
                    Value::String(r.to_string_in(chart)),
                );
            }
        }
        let transposed = residuals.is_empty();
        report
            .text
            .push_str(&output::verdict_line("transpose-anchor", transposed));
        for (pair, r) in &residuals {
            report
                .text
                .push_str(&format!("{{{pair}}}: {}\n", r.as_str().unwrap_or_default()));
        }
        if let Value::Object(m) = &mut report.json {
            m.insert("homogeneity".into(), output::verdict_value(homogeneous));
            m.insert(
                "homogeneity_residual".into(),
                output::components_json(&homogeneity, chart),
            );
            m.insert("transpose_anchor".into(), output::verdict_value(transposed));
            m.insert(
                "transpose_anchor_residuals".into(),
                Value::Object(residuals),
            );
        }
        Ok(Outcome {
            passed: poisson.passed && homogeneous && transposed,
            report,
        })
    }

    fn reconstruct(&self) -> Result<Outcome, Failure> {
        let a = self.algebroid()?;
        match delta_reconstruct(a.chart(), a.rank(), &a.d_operator()) {
            Ok(back) => {
                let passed = back.same_data(a);
                let algebroid = output::algebroid_report(&back);
                Ok(Outcome {
                    passed,
                    report: Report {
                        text: format!(
                            "{}{}",
                            output::verdict_line("roundtrip", passed),
                            algebroid.text
                        ),
                        json: json!({ "roundtrip": output::verdict_value(passed), "algebroid": algebroid.json }),
                    },
                })
            }
            Err(CoreError::Rejected { probe, residual }) => Ok(Outcome {
                passed: false,
                report: Report {
                    text: format!(
                        "{}rejected by probe {probe}: {residual}\n",
                        output::verdict_line("roundtrip", false)
                    ),
                    json: json!({
                        "roundtrip": output::verdict_value(false),
                        "probe": probe,
                        "residual": residual,
                    }),
                },
            }),
            Err(e) => Err(e.into()),
        }
    }
}
