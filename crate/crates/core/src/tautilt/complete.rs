use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::approx::ApproxSeq;
use super::context::TauContext;
use super::subcat::Subcat;

/// How a subcategory is completed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletionMethod {
    /// Add the cokernels of the minimal left approximations of the projectives.
    FacCokernel,
    /// Ext-projectives of `⊥(τU)`.
    TauPerp,
    /// Ext-projectives of `U^⊥₁`.
    TiltingPerp,
}

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub method: CompletionMethod,
    pub input: Subcat,
    pub output: Subcat,
    /// Minimal left approximations of the indecomposable projectives.
    pub witnesses: Vec<ApproxSeq>,
}

impl CompletionReport {
    /// Re-checks every witness against the subcategory it approximates into.
    pub fn verify(&self, ctx: &TauContext) -> Result<bool> {
        if !self.input.is_subset(&self.output) {
            return Ok(false);
        }
        let into = match self.method {
            CompletionMethod::FacCokernel => &self.input,
            _ => &self.output,
        };
        for w in &self.witnesses {
            if !w.verify(ctx, into)? || !w.cokernel_in(&self.output) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl TauContext {
    /// Completion of a τ-rigid `V` by the cokernels of `P -> V⁰`.
    pub fn completion_fac(&self, v: &Subcat) -> Result<CompletionReport> {
        if !self.is_tau_rigid_ext(v) {
            return Err(Error::Precondition("input is not τ-rigid".into()));
        }
        let witnesses = self.projective_approximations(v)?;
        let output =
            witnesses.iter().fold(v.clone(), |acc, w| acc.union(&w.cokernel_summands.iter().copied().collect()));
        Ok(CompletionReport { method: CompletionMethod::FacCokernel, input: v.clone(), output, witnesses })
    }

    /// Bongartz completion `P(⊥(τU))` of a τ-rigid `U`.
    pub fn bongartz_tau_perp(&self, u: &Subcat) -> Result<CompletionReport> {
        if !self.is_tau_rigid_def(u) {
            return Err(Error::Precondition("input is not τ-rigid".into()));
        }
        let output = self.ext_projectives(&self.tau_perp(u));
        let report = self.support_report(&output)?;
        if !report.tau_tilting || !u.is_subset(&output) {
            return Err(Error::CheckFailed(format!("completion {output} of {u} is not τ-tilting")));
        }
        Ok(CompletionReport {
            method: CompletionMethod::TauPerp,
            input: u.clone(),
            output,
            witnesses: report.witnesses,
        })
    }

    /// Tilting completion `P(U^⊥₁)` of a partial tilting `U`.
    pub fn tilting_completion(&self, u: &Subcat) -> Result<CompletionReport> {
        if !self.is_partial_tilting(u) {
            return Err(Error::Precondition("input is not partial tilting".into()));
        }
        let output = self.ext_projectives(&self.perp1(u));
        let report = self.tilting_report(&output)?;
        if !report.tilting || !u.is_subset(&output) {
            return Err(Error::CheckFailed(format!("completion {output} of {u} is not tilting")));
        }
        Ok(CompletionReport {
            method: CompletionMethod::TiltingPerp,
            input: u.clone(),
            output,
            witnesses: report.witnesses,
        })
    }

    pub fn complete(&self, u: &Subcat, method: CompletionMethod) -> Result<CompletionReport> {
        match method {
            CompletionMethod::FacCokernel => self.completion_fac(u),
            CompletionMethod::TauPerp => self.bongartz_tau_perp(u),
            CompletionMethod::TiltingPerp => self.tilting_completion(u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::context::tests::{a2, by_names};
    use super::*;

    #[test]
    fn fac_completion_examples() {
        let c = a2();
        let lambda = c.projective_subcat();
        assert_eq!(c.completion_fac(&lambda).unwrap().output, lambda);
        let s1 = by_names(&c, &["S1"]);
        assert_eq!(c.completion_fac(&s1).unwrap().output, s1);
        let r = c.completion_fac(&by_names(&c, &["P1"])).unwrap();
        assert_eq!(r.output, by_names(&c, &["P1", "S1"]));
        assert!(r.verify(&c).unwrap());
        assert_eq!(c.completion_fac(&Subcat::zero()).unwrap().output, Subcat::zero());
        assert!(matches!(c.completion_fac(&c.everything()), Err(Error::Precondition(_))));
    }

    #[test]
    fn bongartz_examples() {
        let c = a2();
        let lambda = c.projective_subcat();
        assert_eq!(c.bongartz_tau_perp(&lambda).unwrap().output, lambda);
        assert_eq!(c.bongartz_tau_perp(&Subcat::zero()).unwrap().output, lambda);
        let r = c.bongartz_tau_perp(&by_names(&c, &["S1"])).unwrap();
        assert_eq!(r.output, by_names(&c, &["P1", "S1"]));
        assert!(r.verify(&c).unwrap());
        assert_eq!(c.bongartz_tau_perp(&by_names(&c, &["P1"])).unwrap().output, lambda);
    }

    #[test]
    fn tilting_completion_examples() {
        let c = a2();
        let lambda = c.projective_subcat();
        assert_eq!(c.tilting_completion(&lambda).unwrap().output, lambda);
        assert_eq!(c.tilting_completion(&by_names(&c, &["S1"])).unwrap().output, by_names(&c, &["P1", "S1"]));
        assert_eq!(c.tilting_completion(&by_names(&c, &["P2"])).unwrap().output, lambda);
        assert!(matches!(c.tilting_completion(&c.everything()), Err(Error::Precondition(_))));
    }
}
