//! Duality with the opposite algebra and the Auslander-Reiten translate `τ = D Tr`.

use std::sync::Arc;

use crate::algebra::{summand_offsets, BoundAlgebra, Module, ModuleMap};
use crate::linalg::{Matrix, Scalar};
use crate::modcat::{cokernel, minimal_presentation};

/// A module over the opposite algebra. Kept distinct from `Module` so that modules
/// over Λ and Λ^op cannot be mixed up.
#[derive(Clone, Debug, PartialEq)]
pub struct OpModule(pub Module);

impl OpModule {
    pub fn module(&self) -> &Module {
        &self.0
    }

    pub fn dims(&self) -> &[usize] {
        self.0.dims()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// An algebra together with its opposite.
#[derive(Clone, Debug)]
pub struct OppositeBridge {
    algebra: Arc<BoundAlgebra>,
    opposite: Arc<BoundAlgebra>,
}

impl OppositeBridge {
    pub fn new(algebra: &Arc<BoundAlgebra>) -> Self {
        OppositeBridge { algebra: Arc::clone(algebra), opposite: Arc::new(algebra.opposite()) }
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.algebra
    }

    pub fn opposite(&self) -> &Arc<BoundAlgebra> {
        &self.opposite
    }

    /// The same pair viewed from the opposite side.
    pub fn flipped(&self) -> OppositeBridge {
        OppositeBridge { algebra: Arc::clone(&self.opposite), opposite: Arc::clone(&self.algebra) }
    }

    /// Transpose `Tr M = coker Hom(f, Λ)` for the minimal presentation `P1 -f-> P0 -> M`.
    pub fn transpose(&self, m: &Module) -> OpModule {
        OpModule(transpose_raw(&self.algebra, &self.opposite, m))
    }

    /// `Tr` of a module over the opposite algebra, landing back over Λ.
    pub fn transpose_op(&self, m: &OpModule) -> Module {
        transpose_raw(&self.opposite, &self.algebra, m.module())
    }

    /// `D = Hom_k(-, k)` from Λ^op-modules to Λ-modules.
    pub fn dual(&self, m: &OpModule) -> Module {
        dual_raw(&self.algebra, m.module())
    }

    /// `D` from Λ-modules to Λ^op-modules.
    pub fn dual_to_op(&self, m: &Module) -> OpModule {
        OpModule(dual_raw(&self.opposite, m))
    }

    pub fn tau(&self, m: &Module) -> Module {
        self.dual(&self.transpose(m))
    }

    pub fn tau_inverse(&self, m: &Module) -> Module {
        self.transpose_op(&self.dual_to_op(m))
    }
}

pub fn tau(m: &Module) -> Module {
    OppositeBridge::new(m.algebra()).tau(m)
}

pub fn tau_inverse(m: &Module) -> Module {
    OppositeBridge::new(m.algebra()).tau_inverse(m)
}

fn dual_raw(target: &Arc<BoundAlgebra>, m: &Module) -> Module {
    let maps = m.arrow_maps().iter().map(Matrix::transpose).collect();
    Module::new_unchecked(target, m.dims().to_vec(), maps)
}

fn transpose_raw(alg: &Arc<BoundAlgebra>, op: &Arc<BoundAlgebra>, m: &Module) -> Module {
    let field = alg.field();
    let n = alg.vertex_count();
    let pres = minimal_presentation(m);
    let a = &pres.p0.vertices;
    let b = &pres.p1.vertices;
    let p0_parts: Vec<Module> = a.iter().map(|&v| alg.projective(v)).collect();
    let p1_parts: Vec<Module> = b.iter().map(|&v| alg.projective(v)).collect();
    let offs0 = summand_offsets(&p0_parts, n);
    let offs1 = summand_offsets(&p1_parts, n);

    let src_parts: Vec<Module> = a.iter().map(|&v| op.projective(v)).collect();
    let tgt_parts: Vec<Module> = b.iter().map(|&v| op.projective(v)).collect();
    let src = Module::direct_sum(op, &src_parts).expect("same algebra");
    let tgt = Module::direct_sum(op, &tgt_parts).expect("same algebra");
    let src_offs = summand_offsets(&src_parts, n);
    let tgt_offs = summand_offsets(&tgt_parts, n);
    let mut components: Vec<Matrix> = (0..n).map(|w| Matrix::zeros(field, tgt.dims()[w], src.dims()[w])).collect();

    for (j, &bj) in b.iter().enumerate() {
        // f applied to the generator e_{b_j} of the j-th summand of P1
        let mut gen = vec![field.zero(); pres.p1.module.dims()[bj]];
        gen[offs1[j][bj]] = field.one();
        let image = pres.f.component(bj).mul_vec(&gen);
        for (i, &ai) in a.iter().enumerate() {
            let paths = alg.basis_between(ai, bj);
            let op_paths = op.basis_between(bj, ai);
            let mut x = vec![field.zero(); op_paths.len()];
            let mut nonzero = false;
            for (k, &p) in paths.iter().enumerate() {
                let c: &Scalar = &image[offs0[i][bj] + k];
                if c.is_zero() {
                    continue;
                }
                let rev = op.basis_index(&alg.basis()[p].reversed()).expect("opposite basis is reversed");
                let pos = op_paths.iter().position(|&q| q == rev).expect("reversed path is parallel");
                x[pos] = c.clone();
                nonzero = true;
            }
            if !nonzero {
                continue;
            }
            let g = op.map_from_projective(ai, &tgt_parts[j], &x);
            for w in 0..n {
                components[w].set_block(tgt_offs[j][w], src_offs[i][w], g.component(w));
            }
        }
    }
    let hom_f = ModuleMap::new_unchecked(&src, &tgt, components);
    cokernel(&hom_f).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::modcat::is_isomorphic;

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
    fn transpose_examples() {
        let a = a2();
        let br = OppositeBridge::new(&a);
        assert!(br.transpose(&a.projective(0)).is_zero());
        assert!(br.transpose(&a.projective(1)).is_zero());
        assert_eq!(br.transpose(&a.simple(0)).dims(), &[0, 1]);
        let l = loop2();
        let bl = OppositeBridge::new(&l);
        let t = bl.transpose(&l.simple(0));
        assert_eq!(t.module(), &bl.opposite().simple(0));
    }

    #[test]
    fn dual_examples() {
        let a = a2();
        let br = OppositeBridge::new(&a);
        let op = br.opposite();
        assert!(br.dual(&OpModule(Module::zero(op))).is_zero());
        for v in 0..2 {
            assert_eq!(br.dual(&OpModule(op.simple(v))), a.simple(v));
            let d = br.dual(&OpModule(op.projective(v)));
            assert!(is_isomorphic(&d, &a.injective(v)).unwrap());
        }
    }

    #[test]
    fn tau_examples() {
        let a = a2();
        assert!(tau(&a.projective(0)).is_zero());
        assert!(is_isomorphic(&tau(&a.simple(0)), &a.simple(1)).unwrap());
        let l = loop2();
        assert!(is_isomorphic(&tau(&l.simple(0)), &l.simple(0)).unwrap());
    }

    #[test]
    fn tau_inverse_examples() {
        let a = a2();
        assert!(tau_inverse(&a.injective(0)).is_zero());
        assert!(tau_inverse(&a.injective(1)).is_zero());
        assert!(is_isomorphic(&tau_inverse(&a.simple(1)), &a.simple(0)).unwrap());
        assert!(is_isomorphic(&tau_inverse(&tau(&a.simple(0))), &a.simple(0)).unwrap());
    }

    #[test]
    fn injectives_match_dual_projectives_with_relations() {
        let a = alg("vertices: 1 2 3 4\narrows: a: 1 -> 2, b: 2 -> 4, c: 1 -> 3, d: 3 -> 4\nrelations: b*a - d*c\n");
        let br = OppositeBridge::new(&a);
        for v in 0..4 {
            let d = br.dual(&OpModule(br.opposite().projective(v)));
            assert!(is_isomorphic(&d, &a.injective(v)).unwrap());
            // double dual
            let dd = br.dual(&br.dual_to_op(&a.projective(v)));
            assert!(is_isomorphic(&dd, &a.projective(v)).unwrap());
        }
    }
}
