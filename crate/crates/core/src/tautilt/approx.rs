use serde::Serialize;

use crate::algebra::{Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{rank_of, Scalar};
use crate::modcat::{cokernel, hom_basis, kernel, HomBasis};

use super::context::TauContext;
use super::subcat::Subcat;

/// A left approximation `m: X -> M⁰` together with its cokernel `M¹`, so that
/// `X -> M⁰ -> M¹ -> 0` is exact.
#[derive(Clone, Debug)]
pub struct ApproxSeq {
    pub source: Module,
    pub target: Module,
    pub map: ModuleMap,
    /// Inventory indices of the summands of the target, with repetition.
    pub target_summands: Vec<usize>,
    pub cokernel: Module,
    pub cokernel_summands: Vec<usize>,
    pub minimal: bool,
    pub mono: bool,
}

impl ApproxSeq {
    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn target_in(&self, s: &Subcat) -> bool {
        self.target_summands.iter().all(|&i| s.contains(i))
    }

    pub fn cokernel_in(&self, s: &Subcat) -> bool {
        self.cokernel_summands.iter().all(|&i| s.contains(i))
    }

    /// Re-checks exactness and that every map from the source into a member of
    /// `s` factors through the approximation.
    pub fn verify(&self, ctx: &TauContext, s: &Subcat) -> Result<bool> {
        let exact = self.cokernel.dim() + self.map.rank() == self.target.dim();
        if !exact {
            return Ok(false);
        }
        let parts: Vec<Module> = self.target_summands.iter().map(|&i| ctx.module(i).clone()).collect();
        for j in s.iter() {
            let x = ctx.module(j);
            let mut images = Vec::new();
            for (k, part) in parts.iter().enumerate() {
                let proj = ModuleMap::projection(&self.target, &parts, k);
                let through = proj.after(&self.map);
                for g in &hom_basis(part, x)?.maps {
                    images.push(g.after(&through).to_vector());
                }
            }
            if rank_of(x.field(), map_len(&self.source, x), &images) != crate::modcat::hom_dim(&self.source, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A right approximation `g: U -> X` together with its kernel.
#[derive(Clone, Debug)]
pub struct RightApprox {
    pub source: Module,
    pub target: Module,
    pub map: ModuleMap,
    pub source_summands: Vec<usize>,
    pub kernel: Module,
    pub kernel_summands: Vec<usize>,
    pub minimal: bool,
    pub epi: bool,
}

/// Serializable summary of an approximation sequence, by member names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxWitness {
    pub source: String,
    pub target: Vec<String>,
    pub cokernel: Vec<String>,
    pub zero: bool,
    pub mono: bool,
}

impl ApproxWitness {
    pub fn new(ctx: &TauContext, source: &str, a: &ApproxSeq) -> Self {
        ApproxWitness {
            source: source.to_string(),
            target: a.target_summands.iter().map(|&i| ctx.name(i).to_string()).collect(),
            cokernel: a.cokernel_summands.iter().map(|&i| ctx.name(i).to_string()).collect(),
            zero: a.is_zero(),
            mono: a.mono,
        }
    }
}

fn map_len(m: &Module, n: &Module) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

/// One candidate summand of a universal approximation: a member and a map.
struct Candidate {
    member: usize,
    map: ModuleMap,
    /// For every member of the subcategory, the composites through this candidate.
    composites: Vec<Vec<Vec<Scalar>>>,
}

/// Drops candidates in index order while the remaining ones still generate,
/// then checks that no single remaining candidate can be dropped.
fn minimize(
    candidates: &[Candidate],
    targets: &[usize],
    lens: &[usize],
    field: crate::linalg::Field,
) -> (Vec<usize>, bool) {
    let generates = |keep: &[usize]| {
        targets.iter().enumerate().all(|(j, &want)| {
            if want == 0 {
                return true;
            }
            let vectors: Vec<Vec<Scalar>> =
                keep.iter().flat_map(|&c| candidates[c].composites[j].iter().cloned()).collect();
            rank_of(field, lens[j], &vectors) == want
        })
    };
    let mut keep: Vec<usize> = (0..candidates.len()).collect();
    let mut k = 0;
    while k < keep.len() {
        let mut trial = keep.clone();
        trial.remove(k);
        if generates(&trial) {
            keep = trial;
        } else {
            k += 1;
        }
    }
    let minimal = (0..keep.len()).all(|k| {
        let mut trial = keep.clone();
        trial.remove(k);
        !generates(&trial)
    });
    (keep, minimal)
}

impl TauContext {
    fn homs_from(&self, x: &Module, source: Option<usize>, j: usize) -> Result<HomBasis> {
        Ok(match source {
            Some(i) => self.hom(i, j).clone(),
            None => hom_basis(x, self.module(j))?,
        })
    }

    fn homs_into(&self, x: &Module, target: Option<usize>, j: usize) -> Result<HomBasis> {
        Ok(match target {
            Some(i) => self.hom(j, i).clone(),
            None => hom_basis(self.module(j), x)?,
        })
    }

    /// Minimal left `add S`-approximation of the inventory member `i`.
    pub fn left_approximation_of(&self, i: usize, s: &Subcat) -> Result<ApproxSeq> {
        self.left_approx_impl(&self.module(i).clone(), Some(i), s)
    }

    /// Minimal left `add S`-approximation of an arbitrary module.
    pub fn left_approximation(&self, x: &Module, s: &Subcat) -> Result<ApproxSeq> {
        self.left_approx_impl(x, None, s)
    }

    fn left_approx_impl(&self, x: &Module, source: Option<usize>, s: &Subcat) -> Result<ApproxSeq> {
        let field = x.field();
        let members: Vec<usize> = s.iter().collect();
        let from_x: Vec<HomBasis> = members.iter().map(|&j| self.homs_from(x, source, j)).collect::<Result<_>>()?;
        let mut candidates = Vec::new();
        for (k, &i) in members.iter().enumerate() {
            for h in &from_x[k].maps {
                let composites = members
                    .iter()
                    .map(|&j| self.hom(i, j).maps.iter().map(|g| g.after(h).to_vector()).collect())
                    .collect();
                candidates.push(Candidate { member: i, map: h.clone(), composites });
            }
        }
        let wants: Vec<usize> = from_x.iter().map(HomBasis::dim).collect();
        let lens: Vec<usize> = members.iter().map(|&j| map_len(x, self.module(j))).collect();
        let (keep, minimal) = minimize(&candidates, &wants, &lens, field);
        let target_summands: Vec<usize> = keep.iter().map(|&c| candidates[c].member).collect();
        let parts: Vec<Module> = target_summands.iter().map(|&i| self.module(i).clone()).collect();
        let target = Module::direct_sum(x.algebra(), &parts)?;
        let maps: Vec<ModuleMap> = keep.iter().map(|&c| candidates[c].map.clone()).collect();
        let map = ModuleMap::into_sum(x, &maps, &target);
        let (coker, _) = cokernel(&map);
        let cokernel_summands = self.summands(&coker)?;
        Ok(ApproxSeq {
            source: x.clone(),
            mono: map.is_injective(),
            target,
            map,
            target_summands,
            cokernel: coker,
            cokernel_summands,
            minimal,
        })
    }

    /// Minimal right `add S`-approximation of the inventory member `i`.
    pub fn right_approximation_of(&self, i: usize, s: &Subcat) -> Result<RightApprox> {
        self.right_approx_impl(&self.module(i).clone(), Some(i), s)
    }

    /// Minimal right `add S`-approximation of an arbitrary module.
    pub fn right_approximation(&self, x: &Module, s: &Subcat) -> Result<RightApprox> {
        self.right_approx_impl(x, None, s)
    }

    fn right_approx_impl(&self, x: &Module, target: Option<usize>, s: &Subcat) -> Result<RightApprox> {
        let field = x.field();
        let members: Vec<usize> = s.iter().collect();
        let into_x: Vec<HomBasis> = members.iter().map(|&j| self.homs_into(x, target, j)).collect::<Result<_>>()?;
        let mut candidates = Vec::new();
        for (k, &i) in members.iter().enumerate() {
            for h in &into_x[k].maps {
                let composites = members
                    .iter()
                    .map(|&j| self.hom(j, i).maps.iter().map(|g| h.after(g).to_vector()).collect())
                    .collect();
                candidates.push(Candidate { member: i, map: h.clone(), composites });
            }
        }
        let wants: Vec<usize> = into_x.iter().map(HomBasis::dim).collect();
        let lens: Vec<usize> = members.iter().map(|&j| map_len(self.module(j), x)).collect();
        let (keep, minimal) = minimize(&candidates, &wants, &lens, field);
        let source_summands: Vec<usize> = keep.iter().map(|&c| candidates[c].member).collect();
        let parts: Vec<Module> = source_summands.iter().map(|&i| self.module(i).clone()).collect();
        let source = Module::direct_sum(x.algebra(), &parts)?;
        let maps: Vec<ModuleMap> = keep.iter().map(|&c| candidates[c].map.clone()).collect();
        let map = ModuleMap::from_sum(&source, &maps, x);
        let (ker, _) = kernel(&map);
        let kernel_summands = self.summands(&ker)?;
        Ok(RightApprox {
            source,
            target: x.clone(),
            epi: map.is_surjective(),
            map,
            source_summands,
            kernel: ker,
            kernel_summands,
            minimal,
        })
    }

    /// Inventory indices of the indecomposable summands of `m`, with repetition.
    pub fn summands(&self, m: &Module) -> Result<Vec<usize>> {
        let mult = self.inventory().multiplicities(m)?;
        Ok(mult.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::context::tests::{a2, by_names, context};
    use super::*;

    #[test]
    fn left_examples() {
        let c = a2();
        let p1 = by_names(&c, &["P1"]);
        let i = p1.members()[0];
        let id = c.left_approximation_of(i, &p1).unwrap();
        assert!(id.map.is_isomorphism());
        assert!(id.cokernel.is_zero());
        let zero = c.left_approximation_of(i, &Subcat::zero()).unwrap();
        assert!(zero.target.is_zero() && zero.cokernel.is_zero());
        let p2 = by_names(&c, &["P2"]).members()[0];
        let s1 = by_names(&c, &["S1"]);
        let a = c.left_approximation_of(p2, &s1).unwrap();
        assert!(a.target.is_zero() && a.cokernel.is_zero());
        let a = c.left_approximation_of(p2, &p1).unwrap();
        assert_eq!(a.target_summands, p1.members());
        assert_eq!(a.cokernel_summands, s1.members());
        assert!(a.mono && a.minimal);
        assert!(a.verify(&c, &p1).unwrap());
    }

    #[test]
    fn right_examples() {
        let c = a2();
        let s1 = by_names(&c, &["S1"]).members()[0];
        let p1 = by_names(&c, &["P1"]);
        let r = c.right_approximation_of(s1, &p1).unwrap();
        assert!(r.epi);
        assert_eq!(r.source_summands, p1.members());
        assert_eq!(r.kernel_summands, by_names(&c, &["P2"]).members());
        let id = c.right_approximation_of(s1, &by_names(&c, &["S1"])).unwrap();
        assert!(id.map.is_isomorphism());
        let zero = c.right_approximation_of(s1, &Subcat::zero()).unwrap();
        assert!(zero.source.is_zero());
    }

    #[test]
    fn approximations_are_minimal_with_repeated_homs() {
        // Λ = k[x]/(x²): Hom(Λ, Λ) is two-dimensional but one copy of Λ suffices
        let c = context("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        let p = c.projectives()[0];
        let a = c.left_approximation_of(p, &c.projective_subcat()).unwrap();
        assert_eq!(a.target_summands, vec![p]);
        assert!(a.map.is_isomorphism());
        let s = by_names(&c, &["S1"]);
        let a = c.left_approximation_of(p, &s).unwrap();
        assert_eq!(a.target_summands, s.members());
        assert!(a.verify(&c, &s).unwrap());
    }
}
