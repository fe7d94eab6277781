pub mod check;
pub mod experiment;
pub mod rvalues;
pub mod verify;

use srp_core::criterion::{Certificate, StepStatus, Verdict};

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::AllOnCircleSimple => "AllOnCircleSimple".into(),
        Verdict::AllOnCircle => "AllOnCircle".into(),
        Verdict::Fails { step, reason } => format!("Fails at step {step} ({reason:?})"),
        Verdict::Inconclusive => "Inconclusive".into(),
    }
}

pub fn status_text(s: StepStatus) -> String {
    format!("{s:?}")
}

pub fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::Sturm {
            numerator_roots,
            denominator_roots,
            positive_at_two,
        } => format!(
            "zeros={numerator_roots} poles={denominator_roots} m(2){}0",
            if *positive_at_two { ">" } else { "<=" }
        ),
        Certificate::Witness { t } => format!("witness t={t}"),
    }
}
