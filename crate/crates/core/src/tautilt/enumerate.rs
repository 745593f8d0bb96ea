use crate::error::{Error, Result};

use super::context::TauContext;
use super::subcat::Subcat;

/// Largest inventory for which all subsets are enumerated.
pub const MAX_BRUTE_FORCE_MEMBERS: usize = 20;

fn sort_subcats(list: &mut [Subcat]) {
    list.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
}

impl TauContext {
    /// Whether `{X_i, X_j}` is τ-rigid.
    pub fn rigid_compatible(&self, i: usize, j: usize) -> bool {
        self.presentation_surjects(i, j) && self.presentation_surjects(j, i)
    }

    /// Every τ-rigid subcategory, as the cliques of the pairwise compatibility
    /// relation, ordered by size and then by members.
    pub fn tau_rigid_subcats(&self) -> Vec<Subcat> {
        let n = self.len();
        let vertices: Vec<usize> = (0..n).filter(|&i| self.presentation_surjects(i, i)).collect();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_cliques(&vertices, 0, &mut stack, &mut out);
        sort_subcats(&mut out);
        out
    }

    fn extend_cliques(&self, vertices: &[usize], from: usize, stack: &mut Vec<usize>, out: &mut Vec<Subcat>) {
        out.push(Subcat::new(stack.iter().copied()));
        for k in from..vertices.len() {
            let v = vertices[k];
            if stack.iter().all(|&u| self.rigid_compatible(u, v)) {
                stack.push(v);
                self.extend_cliques(vertices, k + 1, stack, out);
                stack.pop();
            }
        }
    }

    pub fn enumerate_support_tau_tilting(&self) -> Result<Vec<Subcat>> {
        let mut out = Vec::new();
        for s in self.tau_rigid_subcats() {
            if self.is_support_tau_tilting(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    pub fn enumerate_tilting(&self) -> Result<Vec<Subcat>> {
        let mut out = Vec::new();
        for s in self.tau_rigid_subcats() {
            if self.is_tilting(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// All subsets of the inventory, refusing inventories above
    /// `MAX_BRUTE_FORCE_MEMBERS`.
    pub fn all_subcats(&self) -> Result<Vec<Subcat>> {
        let n = self.len();
        if n > MAX_BRUTE_FORCE_MEMBERS {
            return Err(Error::EnumerationTooLarge(n));
        }
        let mut out: Vec<Subcat> = (0..1u64 << n).map(|m| Subcat::from_mask(m, n)).collect();
        sort_subcats(&mut out);
        Ok(out)
    }

    /// Subcategories `S` with `S = Fac P(S)`, found by testing every subset.
    pub fn enumerate_fac_fixed_points(&self) -> Result<Vec<Subcat>> {
        Ok(self.all_subcats()?.into_iter().filter(|s| &self.fac(&self.ext_projectives(s)) == s).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::context::tests::{a2, by_names, context};
    use super::*;

    #[test]
    fn a2_lists() {
        let c = a2();
        let stt = c.enumerate_support_tau_tilting().unwrap();
        let expected: Vec<Subcat> = vec![
            Subcat::zero(),
            by_names(&c, &["P2"]),
            by_names(&c, &["S1"]),
            c.projective_subcat(),
            by_names(&c, &["P1", "S1"]),
        ];
        let mut want = expected.clone();
        sort_subcats(&mut want);
        assert_eq!(stt, want);
        assert_eq!(c.enumerate_fac_fixed_points().unwrap().len(), 5);
        assert_eq!(c.enumerate_tilting().unwrap().len(), 2);
        assert_eq!(c.tau_rigid_subcats().len(), 6);
    }

    #[test]
    fn dual_numbers_lists() {
        let c = context("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        assert_eq!(c.enumerate_support_tau_tilting().unwrap(), vec![Subcat::zero(), c.projective_subcat()]);
        assert_eq!(c.enumerate_fac_fixed_points().unwrap(), vec![Subcat::zero(), c.everything()]);
    }

    #[test]
    fn a3_counts() {
        let c = context("vertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\n");
        assert_eq!(c.enumerate_support_tau_tilting().unwrap().len(), 14);
        assert_eq!(c.enumerate_fac_fixed_points().unwrap().len(), 14);
        assert_eq!(c.enumerate_tilting().unwrap().len(), 5);
    }
}
