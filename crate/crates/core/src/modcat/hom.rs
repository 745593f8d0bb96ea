use crate::algebra::{Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{kernel_basis, rank_of, solve, Matrix, Scalar};

/// A basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Module,
    pub target: Module,
    pub maps: Vec<ModuleMap>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn combine(&self, coefficients: &[Scalar]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.source, &self.target);
        for (c, m) in coefficients.iter().zip(&self.maps) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Coordinates of `f` in this basis, if `f` is a homomorphism between the same modules.
    pub fn coordinates(&self, f: &ModuleMap) -> Option<Vec<Scalar>> {
        let field = self.source.field();
        let len = f.to_vector().len();
        let columns: Vec<Vec<Scalar>> = self.maps.iter().map(ModuleMap::to_vector).collect();
        solve(&Matrix::from_columns(field, len, &columns), &f.to_vector())
    }
}

/// Number of scalar unknowns in a map `m -> n`.
fn map_space_dim(m: &Module, n: &Module) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

/// The intertwining equations `f_w M_α - N_α f_v = 0` as a matrix acting on
/// flattened maps (see `ModuleMap::to_vector`).
fn intertwining_system(m: &Module, n: &Module) -> Matrix {
    let field = m.field();
    let md = m.dims();
    let nd = n.dims();
    let mut offsets = Vec::with_capacity(md.len());
    let mut acc = 0;
    for v in 0..md.len() {
        offsets.push(acc);
        acc += md[v] * nd[v];
    }
    let vars = acc;
    let arrows = m.algebra().quiver().arrows();
    let eqs: usize = arrows.iter().map(|a| nd[a.target] * md[a.source]).sum();
    let mut sys = Matrix::zeros(field, eqs, vars);
    let mut row = 0;
    for (a, arr) in arrows.iter().enumerate() {
        let (v, w) = (arr.source, arr.target);
        let ma = m.arrow_map(a);
        let na = n.arrow_map(a);
        for i in 0..nd[w] {
            for j in 0..md[v] {
                // (f_w M_α)[i, j] = sum_k f_w[i, k] M_α[k, j]
                for k in 0..md[w] {
                    let c = &ma[(k, j)];
                    if !c.is_zero() {
                        let var = offsets[w] + i * md[w] + k;
                        sys[(row, var)] = &sys[(row, var)] + c;
                    }
                }
                // (N_α f_v)[i, j] = sum_k N_α[i, k] f_v[k, j]
                for k in 0..nd[v] {
                    let c = &na[(i, k)];
                    if !c.is_zero() {
                        let var = offsets[v] + k * md[v] + j;
                        sys[(row, var)] = &sys[(row, var)] - c;
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

pub fn hom_basis(m: &Module, n: &Module) -> Result<HomBasis> {
    m.check_same_algebra(n)?;
    let vars = map_space_dim(m, n);
    let maps = if vars == 0 {
        Vec::new()
    } else {
        kernel_basis(&intertwining_system(m, n)).into_iter().map(|v| ModuleMap::from_vector(m, n, &v)).collect()
    };
    Ok(HomBasis { source: m.clone(), target: n.clone(), maps })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    m.check_same_algebra(n)?;
    let vars = map_space_dim(m, n);
    if vars == 0 {
        return Ok(0);
    }
    Ok(vars - intertwining_system(m, n).rank())
}

/// Rank of a family of maps between the same two modules.
pub fn rank_of_maps(maps: &[ModuleMap]) -> usize {
    let Some(first) = maps.first() else { return 0 };
    let vectors: Vec<Vec<Scalar>> = maps.iter().map(ModuleMap::to_vector).collect();
    rank_of(first.source().field(), vectors[0].len(), &vectors)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::parse_algebra;

    fn a2() -> Arc<crate::algebra::BoundAlgebra> {
        Arc::new(parse_algebra("vertices: 1 2\narrows: a: 1 -> 2\n").unwrap())
    }

    #[test]
    fn simples_of_a2_have_no_maps() {
        let a = a2();
        assert_eq!(hom_basis(&a.simple(0), &a.simple(1)).unwrap().dim(), 0);
    }

    #[test]
    fn endomorphisms_contain_identity() {
        let a = a2();
        let p = a.projective(0);
        let h = hom_basis(&p, &p).unwrap();
        let id = ModuleMap::identity(&p);
        assert!(h.coordinates(&id).is_some());
        assert!(h.maps.iter().all(ModuleMap::intertwines));
    }

    #[test]
    fn projective_maps_onto_its_top() {
        let a = a2();
        let h = hom_basis(&a.projective(0), &a.simple(0)).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.maps[0].is_surjective());
        assert_eq!(hom_dim(&a.simple(0), &a.projective(0)).unwrap(), 0);
        assert_eq!(hom_dim(&a.projective(1), &a.projective(0)).unwrap(), 1);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = a2();
        let b = Arc::new(parse_algebra("vertices: 1 2 3\n").unwrap());
        assert!(hom_basis(&a.simple(0), &b.simple(0)).is_err());
    }
}
