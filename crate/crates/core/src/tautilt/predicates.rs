use serde::Serialize;

use crate::error::Result;

use super::approx::{ApproxSeq, ApproxWitness};
use super::context::TauContext;
use super::subcat::Subcat;

/// Outcome of the support τ-tilting and τ-tilting tests, with the minimal left
/// approximation of every indecomposable projective.
#[derive(Clone, Debug)]
pub struct SupportReport {
    pub tau_rigid: bool,
    pub witnesses: Vec<ApproxSeq>,
    pub support_tau_tilting: bool,
    /// Every indecomposable projective has a nonzero approximation.
    pub tau_tilting: bool,
    /// The regular module `Λ` as a whole has a nonzero approximation.
    pub tau_tilting_regular: bool,
}

/// Outcome of the partial tilting and tilting tests.
#[derive(Clone, Debug)]
pub struct TiltingReport {
    pub hereditary: bool,
    pub self_orthogonal: bool,
    pub witnesses: Vec<ApproxSeq>,
    pub partial_tilting: bool,
    pub tilting: bool,
}

/// Serializable form of every predicate on one subcategory.
#[derive(Clone, Debug, Serialize)]
pub struct PredicateSummary {
    pub members: Vec<String>,
    pub tau_rigid: bool,
    pub tau_rigid_ext: bool,
    pub support_tau_tilting: bool,
    pub tau_tilting: bool,
    pub tau_tilting_regular: bool,
    pub partial_tilting: bool,
    pub tilting: bool,
    pub witnesses: Vec<ApproxWitness>,
}

impl TauContext {
    /// Minimal left approximations of the indecomposable projectives, by vertex.
    pub fn projective_approximations(&self, s: &Subcat) -> Result<Vec<ApproxSeq>> {
        self.projectives().iter().map(|&p| self.left_approximation_of(p, s)).collect()
    }

    pub fn support_report(&self, s: &Subcat) -> Result<SupportReport> {
        let tau_rigid = self.is_tau_rigid_def(s);
        let witnesses = self.projective_approximations(s)?;
        let support_tau_tilting = tau_rigid && witnesses.iter().all(|w| w.cokernel_in(s));
        Ok(SupportReport {
            tau_rigid,
            support_tau_tilting,
            tau_tilting: support_tau_tilting && witnesses.iter().all(|w| !w.is_zero()),
            tau_tilting_regular: support_tau_tilting && witnesses.iter().any(|w| !w.is_zero()),
            witnesses,
        })
    }

    pub fn is_support_tau_tilting(&self, s: &Subcat) -> Result<bool> {
        if !self.is_tau_rigid_def(s) {
            return Ok(false);
        }
        for &p in self.projectives() {
            if !self.left_approximation_of(p, s)?.cokernel_in(s) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_tau_tilting(&self, s: &Subcat) -> Result<bool> {
        Ok(self.support_report(s)?.tau_tilting)
    }

    pub fn tilting_report(&self, s: &Subcat) -> Result<TiltingReport> {
        let hereditary = s.iter().all(|c| (0..self.len()).all(|x| self.ext2(c, x) == 0));
        let self_orthogonal = s.iter().all(|x| s.iter().all(|y| self.ext1(x, y) == 0));
        let partial_tilting = hereditary && self_orthogonal;
        let witnesses = self.projective_approximations(s)?;
        let tilting = partial_tilting && witnesses.iter().all(|w| w.mono && w.cokernel_in(s));
        Ok(TiltingReport { hereditary, self_orthogonal, witnesses, partial_tilting, tilting })
    }

    pub fn is_tilting(&self, s: &Subcat) -> Result<bool> {
        if !self.is_partial_tilting(s) {
            return Ok(false);
        }
        for &p in self.projectives() {
            let w = self.left_approximation_of(p, s)?;
            if !w.mono || !w.cokernel_in(s) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn predicate_summary(&self, s: &Subcat) -> Result<PredicateSummary> {
        let support = self.support_report(s)?;
        let tilting = self.tilting_report(s)?;
        let labels = self.algebra().quiver().vertices();
        Ok(PredicateSummary {
            members: self.names(s),
            tau_rigid: support.tau_rigid,
            tau_rigid_ext: self.is_tau_rigid_ext(s),
            support_tau_tilting: support.support_tau_tilting,
            tau_tilting: support.tau_tilting,
            tau_tilting_regular: support.tau_tilting_regular,
            partial_tilting: tilting.partial_tilting,
            tilting: tilting.tilting,
            witnesses: support
                .witnesses
                .iter()
                .zip(labels)
                .map(|(w, v)| ApproxWitness::new(self, &format!("P{v}"), w))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::context::tests::{a2, by_names, context};
    use super::*;

    #[test]
    fn support_tau_tilting_examples() {
        let c = a2();
        let lambda = c.projective_subcat();
        let r = c.support_report(&lambda).unwrap();
        assert!(r.support_tau_tilting && r.tau_tilting);
        let r = c.support_report(&Subcat::zero()).unwrap();
        assert!(r.support_tau_tilting);
        assert!(!r.tau_tilting && !r.tau_tilting_regular);
        let ps = by_names(&c, &["P1", "S1"]);
        let r = c.support_report(&ps).unwrap();
        assert!(r.support_tau_tilting && r.tau_tilting);
        let s1 = by_names(&c, &["S1"]);
        let r = c.support_report(&s1).unwrap();
        assert!(r.support_tau_tilting && !r.tau_tilting && r.tau_tilting_regular);
        assert!(!c.is_support_tau_tilting(&by_names(&c, &["P1"])).unwrap());
    }

    #[test]
    fn tilting_examples() {
        let c = a2();
        assert!(c.is_tilting(&c.projective_subcat()).unwrap());
        assert!(c.is_tilting(&by_names(&c, &["P1", "S1"])).unwrap());
        assert!(!c.is_tilting(&by_names(&c, &["S1"])).unwrap());
        assert!(!c.is_tilting(&Subcat::zero()).unwrap());
        let l = context("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        let r = l.tilting_report(&by_names(&l, &["S1"])).unwrap();
        assert!(!r.hereditary && !r.partial_tilting && !r.tilting);
        assert!(l.is_tilting(&l.projective_subcat()).unwrap());
    }

    #[test]
    fn summary_lists_everything() {
        let c = a2();
        let s = c.predicate_summary(&by_names(&c, &["P1", "S1"])).unwrap();
        assert!(s.tau_rigid && s.tau_rigid_ext && s.support_tau_tilting && s.tau_tilting);
        assert!(s.partial_tilting && s.tilting);
        assert_eq!(s.witnesses.len(), 2);
    }
}
