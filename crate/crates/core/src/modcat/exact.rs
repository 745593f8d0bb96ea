use crate::algebra::{Module, ModuleMap};
use crate::linalg::{independent_subset, solve, Matrix, QuotientSpace, Scalar};

/// Per-vertex families of vectors, e.g. spanning sets of a subspace at each vertex.
pub type VertexVectors = Vec<Vec<Vec<Scalar>>>;

/// The submodule spanned at each vertex by `spans`, which must be stable under the
/// arrows, together with its inclusion.
pub fn submodule(m: &Module, spans: &VertexVectors) -> (Module, ModuleMap) {
    let field = m.field();
    let n = m.dims().len();
    let bases: Vec<Matrix> = (0..n)
        .map(|v| {
            let pick = independent_subset(field, m.dims()[v], &spans[v]);
            let cols: Vec<Vec<Scalar>> = pick.iter().map(|&i| spans[v][i].clone()).collect();
            Matrix::from_columns(field, m.dims()[v], &cols)
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = m
        .algebra()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let image = m.arrow_map(a).mul(&bases[arr.source]);
            let cols: Vec<Vec<Scalar>> = image
                .columns()
                .iter()
                .map(|c| solve(&bases[arr.target], c).expect("span is stable under arrows"))
                .collect();
            Matrix::from_columns(field, dims[arr.target], &cols)
        })
        .collect();
    let sub = Module::new_unchecked(m.algebra(), dims, maps);
    let incl = ModuleMap::new_unchecked(&sub, m, bases);
    (sub, incl)
}

/// The quotient of `m` by the submodule spanned by `spans`, with its projection.
pub fn quotient(m: &Module, spans: &VertexVectors) -> (Module, ModuleMap) {
    let field = m.field();
    let n = m.dims().len();
    let spaces: Vec<QuotientSpace> = (0..n).map(|v| QuotientSpace::new(field, m.dims()[v], &spans[v])).collect();
    let dims: Vec<usize> = spaces.iter().map(QuotientSpace::dim).collect();
    let maps = m
        .algebra()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let s = &spaces[arr.source];
            let t = &spaces[arr.target];
            t.projection.mul(m.arrow_map(a)).mul(&s.section(field))
        })
        .collect();
    let q = Module::new_unchecked(m.algebra(), dims, maps);
    let proj = ModuleMap::new_unchecked(m, &q, spaces.into_iter().map(|s| s.projection).collect());
    (q, proj)
}

pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let spans = f.components().iter().map(crate::linalg::kernel_basis).collect();
    submodule(f.source(), &spans)
}

fn image_spans(f: &ModuleMap) -> VertexVectors {
    f.components().iter().map(Matrix::columns).collect()
}

pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    quotient(f.target(), &image_spans(f))
}

/// Epi-mono factorization `f = mono ∘ epi` through the image.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: Module,
    pub epi: ModuleMap,
    pub mono: ModuleMap,
}

pub fn image(f: &ModuleMap) -> Image {
    let (module, mono) = submodule(f.target(), &image_spans(f));
    let field = f.source().field();
    let components = (0..f.components().len())
        .map(|v| {
            let cols: Vec<Vec<Scalar>> = f
                .component(v)
                .columns()
                .iter()
                .map(|c| solve(mono.component(v), c).expect("column lies in the image"))
                .collect();
            Matrix::from_columns(field, module.dims()[v], &cols)
        })
        .collect();
    let epi = ModuleMap::new_unchecked(f.source(), &module, components);
    Image { module, epi, mono }
}

/// Spanning vectors of `rad m`: the images of all arrows.
pub fn radical_spans(m: &Module) -> VertexVectors {
    let mut spans: VertexVectors = vec![Vec::new(); m.dims().len()];
    for (a, arr) in m.algebra().quiver().arrows().iter().enumerate() {
        spans[arr.target].extend(m.arrow_map(a).columns());
    }
    spans
}

pub fn radical(m: &Module) -> (Module, ModuleMap) {
    submodule(m, &radical_spans(m))
}

pub fn top(m: &Module) -> (Module, ModuleMap) {
    quotient(m, &radical_spans(m))
}

/// Spanning vectors of `rad^k m`.
pub fn radical_power_spans(m: &Module, k: usize) -> VertexVectors {
    let field = m.field();
    let mut spans: VertexVectors = m.dims().iter().map(|&d| (0..d).map(|i| unit(field, d, i)).collect()).collect();
    for _ in 0..k {
        let mut next: VertexVectors = vec![Vec::new(); m.dims().len()];
        for (a, arr) in m.algebra().quiver().arrows().iter().enumerate() {
            for x in &spans[arr.source] {
                next[arr.target].push(m.arrow_map(a).mul_vec(x));
            }
        }
        spans = next
            .into_iter()
            .enumerate()
            .map(|(v, vs)| independent_subset(field, m.dims()[v], &vs).into_iter().map(|i| vs[i].clone()).collect())
            .collect();
    }
    spans
}

/// Vectors killed by every arrow.
pub fn socle_spans(m: &Module) -> VertexVectors {
    let field = m.field();
    let q = m.algebra().quiver();
    (0..m.dims().len())
        .map(|v| {
            let d = m.dims()[v];
            let stacked = q.arrows_from(v).fold(Matrix::zeros(field, 0, d), |acc, a| acc.vstack(m.arrow_map(a)));
            if stacked.rows() == 0 {
                (0..d).map(|i| unit(field, d, i)).collect()
            } else {
                crate::linalg::kernel_basis(&stacked)
            }
        })
        .collect()
}

pub fn socle(m: &Module) -> (Module, ModuleMap) {
    submodule(m, &socle_spans(m))
}

pub(crate) fn unit(field: crate::linalg::Field, d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); d];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::parse_algebra;
    use crate::modcat::hom::hom_basis;

    fn a2() -> Arc<crate::algebra::BoundAlgebra> {
        Arc::new(parse_algebra("vertices: 1 2\narrows: a: 1 -> 2\n").unwrap())
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let a = a2();
        let p = a.projective(0);
        let (k, incl) = kernel(&ModuleMap::identity(&p));
        assert!(k.is_zero());
        assert!(incl.is_injective());
    }

    #[test]
    fn cokernel_of_zero_map_is_target() {
        let a = a2();
        let (c, proj) = cokernel(&ModuleMap::zero(&a.simple(0), &a.projective(0)));
        assert_eq!(c, a.projective(0));
        assert!(proj.is_isomorphism());
    }

    #[test]
    fn cokernel_of_radical_inclusion_is_simple() {
        let a = a2();
        let p1 = a.projective(0);
        let p2 = a.projective(1);
        let f = hom_basis(&p2, &p1).unwrap().maps[0].clone();
        assert!(f.is_injective());
        let (c, proj) = cokernel(&f);
        assert_eq!(c.dims(), &[1, 0]);
        assert!(proj.after(&f).is_zero());
        assert!(proj.intertwines());
    }

    #[test]
    fn kernel_is_universal() {
        let a = a2();
        let p1 = a.projective(0);
        let s1 = a.simple(0);
        let pi = hom_basis(&p1, &s1).unwrap().maps[0].clone();
        let (k, incl) = kernel(&pi);
        assert_eq!(k.dims(), &[0, 1]);
        assert!(pi.after(&incl).is_zero());
        // any g with pi∘g = 0 factors through the inclusion
        for g in hom_basis(&a.projective(1), &p1).unwrap().maps {
            assert!(pi.after(&g).is_zero());
            let lifts = hom_basis(&a.projective(1), &k).unwrap();
            let composites: Vec<ModuleMap> = lifts.maps.iter().map(|h| incl.after(h)).collect();
            let span = crate::modcat::HomBasis { source: g.source().clone(), target: p1.clone(), maps: composites };
            assert!(span.coordinates(&g).is_some());
        }
    }

    #[test]
    fn image_factorizes() {
        let a = a2();
        let p1 = a.projective(0);
        let i2 = a.injective(1);
        for f in hom_basis(&p1, &i2).unwrap().maps {
            let im = image(&f);
            assert!(im.mono.is_injective());
            assert!(im.epi.is_surjective());
            assert_eq!(im.mono.after(&im.epi).components(), f.components());
            assert!(im.epi.intertwines() && im.mono.intertwines());
        }
    }

    #[test]
    fn radical_top_socle() {
        let a = a2();
        let p1 = a.projective(0);
        assert_eq!(radical(&p1).0.dims(), &[0, 1]);
        assert_eq!(top(&p1).0, a.simple(0));
        assert_eq!(socle(&p1).0.dims(), &[0, 1]);
        assert_eq!(radical_power_spans(&p1, 2).iter().map(Vec::len).sum::<usize>(), 0);
    }
}
