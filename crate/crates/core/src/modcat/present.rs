use crate::algebra::{Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{independent_subset, rank_of, QuotientSpace, Scalar};

use super::exact::{cokernel, kernel, radical_spans, socle_spans};
use super::hom::{hom_basis, hom_dim};

/// A direct sum of indecomposable projectives, remembering the vertex of each summand.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub module: Module,
    pub vertices: Vec<usize>,
}

/// Projective cover `P0 -> M` built from lifts of a basis of `top M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ProjectiveSum,
    pub map: ModuleMap,
}

pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra();
    let field = m.field();
    let rad = radical_spans(m);
    let mut vertices = Vec::new();
    let mut maps = Vec::new();
    let mut parts = Vec::new();
    for (v, (&d, span)) in m.dims().iter().zip(&rad).enumerate() {
        let q = QuotientSpace::new(field, d, span);
        for &c in &q.complement {
            let x = super::exact::unit(field, d, c);
            maps.push(alg.map_from_projective(v, m, &x));
            parts.push(alg.projective(v));
            vertices.push(v);
        }
    }
    let module = Module::direct_sum(alg, &parts).expect("same algebra");
    let map = ModuleMap::from_sum(&module, &maps, m);
    ProjectiveCover { projective: ProjectiveSum { module, vertices }, map }
}

/// Minimal projective presentation `P1 -f-> P0 -cover-> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: ProjectiveSum,
    pub p0: ProjectiveSum,
    pub f: ModuleMap,
    pub cover: ModuleMap,
    /// The first syzygy `ΩM = ker(cover)` and its inclusion into `P0`.
    pub syzygy: Module,
    pub syzygy_inclusion: ModuleMap,
}

pub fn minimal_presentation(m: &Module) -> Presentation {
    let c0 = projective_cover(m);
    let (syzygy, incl) = kernel(&c0.map);
    let c1 = projective_cover(&syzygy);
    let f = incl.after(&c1.map);
    Presentation { p1: c1.projective, p0: c0.projective, f, cover: c0.map, syzygy, syzygy_inclusion: incl }
}

pub fn syzygy(m: &Module) -> Module {
    let c0 = projective_cover(m);
    kernel(&c0.map).0
}

/// Whether `m` is projective: its projective cover is an isomorphism.
pub fn is_projective(m: &Module) -> bool {
    projective_cover(m).projective.module.dim() == m.dim()
}

/// Whether `m` is injective: it has the dimension of the injective envelope of its socle.
pub fn is_injective(m: &Module) -> bool {
    let alg = m.algebra();
    let soc = socle_spans(m);
    let envelope: usize = (0..m.dims().len())
        .map(|v| {
            let s = rank_of(m.field(), m.dims()[v], &soc[v]);
            if s == 0 {
                0
            } else {
                s * alg.injective(v).dim()
            }
        })
        .sum();
    envelope == m.dim()
}

/// `dim Ext¹(M, N)` as the cokernel of `Hom(P0, N) -> Hom(ΩM, N)`.
pub fn ext1_dim(m: &Module, n: &Module) -> Result<usize> {
    m.check_same_algebra(n)?;
    let c0 = projective_cover(m);
    let (omega, incl) = kernel(&c0.map);
    if omega.is_zero() {
        return Ok(0);
    }
    let total = hom_dim(&omega, n)?;
    if total == 0 {
        return Ok(0);
    }
    let restricted: Vec<Vec<Scalar>> =
        hom_basis(&c0.projective.module, n)?.maps.iter().map(|g| g.after(&incl).to_vector()).collect();
    let len = omega.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    Ok(total - rank_of(m.field(), len, &restricted))
}

/// Maps `ΩM -> N` whose classes form a basis of `Ext¹(M, N)`.
#[derive(Clone, Debug)]
pub struct ExtBasis {
    pub cover: ProjectiveCover,
    pub syzygy: Module,
    pub inclusion: ModuleMap,
    pub classes: Vec<ModuleMap>,
}

impl ExtBasis {
    /// Middle term `E` of the extension `0 -> N -> E -> M -> 0` given by the class
    /// `xi: ΩM -> N`, as the pushout of `N <- ΩM -> P0`.
    pub fn middle(&self, xi: &ModuleMap) -> Module {
        let field = self.syzygy.field();
        let n = xi.target();
        let p0 = &self.cover.projective.module;
        let sum = Module::direct_sum(n.algebra(), &[n.clone(), p0.clone()]).expect("same algebra");
        let push = ModuleMap::into_sum(&self.syzygy, &[xi.clone(), self.inclusion.scale(&-field.one())], &sum);
        cokernel(&push).0
    }
}

pub fn ext1_basis(m: &Module, n: &Module) -> Result<ExtBasis> {
    m.check_same_algebra(n)?;
    let cover = projective_cover(m);
    let (syzygy, inclusion) = kernel(&cover.map);
    let h = hom_basis(&syzygy, n)?;
    let len = syzygy.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let mut vectors: Vec<Vec<Scalar>> =
        hom_basis(&cover.projective.module, n)?.maps.iter().map(|g| g.after(&inclusion).to_vector()).collect();
    let trivial = vectors.len();
    vectors.extend(h.maps.iter().map(ModuleMap::to_vector));
    let classes = independent_subset(m.field(), len, &vectors)
        .into_iter()
        .filter(|&i| i >= trivial)
        .map(|i| h.maps[i - trivial].clone())
        .collect();
    Ok(ExtBasis { cover, syzygy, inclusion, classes })
}

/// `dim Ext²(M, N) = dim Ext¹(ΩM, N)`.
pub fn ext2_dim(m: &Module, n: &Module) -> Result<usize> {
    m.check_same_algebra(n)?;
    ext1_dim(&syzygy(m), n)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{parse_algebra, BoundAlgebra};

    fn alg(text: &str) -> Arc<BoundAlgebra> {
        Arc::new(parse_algebra(text).unwrap())
    }

    fn a2() -> Arc<BoundAlgebra> {
        alg("vertices: 1 2\narrows: a: 1 -> 2\n")
    }

    fn loop2() -> Arc<BoundAlgebra> {
        alg("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n")
    }

    #[test]
    fn projectives_present_themselves() {
        let a = a2();
        for v in 0..2 {
            let p = minimal_presentation(&a.projective(v));
            assert!(p.p1.module.is_zero());
            assert_eq!(p.p0.vertices, vec![v]);
            assert!(p.cover.is_isomorphism());
        }
    }

    #[test]
    fn presentation_of_simple_top() {
        let a = a2();
        let p = minimal_presentation(&a.simple(0));
        assert_eq!(p.p0.vertices, vec![0]);
        assert_eq!(p.p1.vertices, vec![1]);
        assert!(p.f.is_injective());
        assert!(p.cover.after(&p.f).is_zero());
    }

    #[test]
    fn presentation_over_dual_numbers() {
        let a = loop2();
        let p = minimal_presentation(&a.simple(0));
        assert_eq!(p.p0.vertices, vec![0]);
        assert_eq!(p.p1.vertices, vec![0]);
        assert_eq!(p.syzygy, a.simple(0));
        // f lands in the radical
        let rad = crate::modcat::exact::radical_spans(&p.p0.module);
        let img = p.f.component(0).columns();
        let both: Vec<_> = rad[0].iter().chain(&img).cloned().collect();
        assert_eq!(rank_of(a.field(), 2, &both), rank_of(a.field(), 2, &rad[0]));
    }

    #[test]
    fn ext1_examples() {
        let a = a2();
        assert_eq!(ext1_dim(&a.simple(0), &a.simple(1)).unwrap(), 1);
        assert_eq!(ext1_dim(&a.simple(1), &a.simple(0)).unwrap(), 0);
        for n in [a.simple(0), a.simple(1), a.projective(0)] {
            assert_eq!(ext1_dim(&a.projective(0), &n).unwrap(), 0);
        }
        let l = loop2();
        assert_eq!(ext1_dim(&l.simple(0), &l.simple(0)).unwrap(), 1);
    }

    #[test]
    fn ext_basis_realises_extensions() {
        let a = a2();
        let b = ext1_basis(&a.simple(0), &a.simple(1)).unwrap();
        assert_eq!(b.classes.len(), 1);
        let e = b.middle(&b.classes[0]);
        assert!(crate::modcat::is_isomorphic(&e, &a.projective(0)).unwrap());
        assert!(ext1_basis(&a.simple(1), &a.simple(0)).unwrap().classes.is_empty());
        let l = loop2();
        let b = ext1_basis(&l.simple(0), &l.simple(0)).unwrap();
        assert_eq!(b.classes.len(), 1);
        assert!(crate::modcat::is_isomorphic(&b.middle(&b.classes[0]), &l.projective(0)).unwrap());
    }

    #[test]
    fn ext2_examples() {
        let l = loop2();
        assert_eq!(ext2_dim(&l.simple(0), &l.simple(0)).unwrap(), 1);
        assert_eq!(ext2_dim(&l.projective(0), &l.simple(0)).unwrap(), 0);
        let a = a2();
        for m in [a.simple(0), a.simple(1), a.projective(0)] {
            for n in [a.simple(0), a.simple(1), a.projective(0)] {
                assert_eq!(ext2_dim(&m, &n).unwrap(), 0);
            }
        }
    }

    #[test]
    fn projective_and_injective_detection() {
        let a = a2();
        assert!(is_projective(&a.projective(0)));
        assert!(!is_projective(&a.simple(0)));
        assert!(is_injective(&a.simple(0)));
        assert!(is_injective(&a.projective(0)));
        assert!(!is_injective(&a.simple(1)));
    }
}
