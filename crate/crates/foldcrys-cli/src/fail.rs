//! Errors mapped to exit codes: 1 for invalid input, 2 for exhausted budgets.

use std::fmt::Display;

use serde_json::{json, Value};

use foldcrys::cartan::CartanError;
use foldcrys::crystal::CrystalError;
use foldcrys::gklo::GkloError;
use foldcrys::seqcomb::SeqError;

const INVALID: u8 = 1;
const BUDGET: u8 = 2;

#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub details: Option<Value>,
}

impl Fail {
    fn new(code: u8, kind: &'static str, message: impl Display) -> Self {
        Fail { code, kind, message: message.to_string(), details: None }
    }

    pub fn usage(message: impl Display) -> Self {
        Self::new(INVALID, "Usage", message)
    }

    pub fn invalid(e: impl Display) -> Self {
        Self::new(INVALID, "InvalidInput", e)
    }

    pub fn cartan(e: CartanError) -> Self {
        let mut f = Self::new(INVALID, "InvalidDatum", &e);
        if let CartanError::Invalid(vs) = &e {
            f.details = Some(json!({ "violations": vs }));
        }
        f
    }

    pub fn crystal(e: CrystalError) -> Self {
        match e {
            CrystalError::CapExceeded { .. } => Self::new(BUDGET, "CapExceeded", e),
            _ => Self::invalid(e),
        }
    }

    pub fn gklo(e: GkloError) -> Self {
        match e {
            GkloError::BudgetExceeded(_) => Self::new(BUDGET, "BudgetExceeded", e),
            GkloError::NonSimplePole(_) => Self::new(INVALID, "NonSimplePole", e),
            GkloError::Dims(_) => Self::invalid(e),
        }
    }

    pub fn seq(e: SeqError) -> Self {
        match e {
            SeqError::SizeCap { .. } => Self::new(BUDGET, "SizeCap", e),
            _ => Self::invalid(e),
        }
    }

    /// Diagnostics always go to stderr; JSON mode also puts a document on stdout.
    pub fn report(&self, as_json: bool) {
        eprintln!("error[{}]: {}", self.kind, self.message);
        if as_json {
            let mut err = json!({ "code": self.code, "kind": self.kind, "message": self.message });
            if let Some(d) = &self.details {
                err["details"] = d.clone();
            }
            println!("{}", serde_json::to_string_pretty(&json!({ "error": err })).expect("serialisable"));
        }
    }
}
