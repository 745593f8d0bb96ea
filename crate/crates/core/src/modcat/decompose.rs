use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::poly::{field_roots, local_minimal_polynomial};
use crate::linalg::{independent_subset, kernel_basis, Matrix, Scalar};

use super::exact::{submodule, unit};
use super::hom::{hom_basis, HomBasis};

const RANDOM_TRIES: usize = 64;
const SEED: u64 = 0x07a7_5c47;

/// Block-diagonal matrix of an endomorphism acting on the total space.
fn total_matrix(f: &ModuleMap) -> Matrix {
    let field = f.source().field();
    f.components().iter().fold(Matrix::zeros(field, 0, 0), |acc, c| acc.direct_sum(c))
}

fn scalar_endo(m: &Module, s: &Scalar) -> ModuleMap {
    ModuleMap::identity(m).scale(s)
}

/// Eigenvalues in the ground field visible from the given start vectors.
fn eigenvalues(t: &Matrix, starts: &[Vec<Scalar>]) -> Vec<Scalar> {
    let field = t.field();
    let mut out: Vec<Scalar> = Vec::new();
    for v in starts {
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        for r in field_roots(field, &local_minimal_polynomial(t, v)) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn ones(field: crate::linalg::Field, n: usize) -> Vec<Scalar> {
    vec![field.one(); n]
}

/// Fitting decomposition `M = ker y^N ⊕ im y^N` for `y = f - λ`, when both parts are nonzero.
fn fitting_split(m: &Module, f: &ModuleMap, lambda: &Scalar) -> Option<(Module, Module)> {
    let y = f.sub(&scalar_endo(m, lambda));
    let n = m.dim();
    let powers: Vec<Matrix> = y.components().iter().map(|c| c.pow(n)).collect();
    let rank: usize = powers.iter().map(Matrix::rank).sum();
    if rank == 0 || rank == n {
        return None;
    }
    let kernels = powers.iter().map(kernel_basis).collect();
    let images = powers.iter().map(Matrix::columns).collect();
    Some((submodule(m, &kernels).0, submodule(m, &images).0))
}

fn try_split(m: &Module, f: &ModuleMap, thorough: bool) -> Option<(Module, Module)> {
    let t = total_matrix(f);
    let field = m.field();
    let mut starts = vec![ones(field, m.dim())];
    if thorough {
        starts.extend((0..m.dim()).map(|i| unit(field, m.dim(), i)));
    }
    eigenvalues(&t, &starts).iter().find_map(|l| fitting_split(m, f, l))
}

enum Analysis {
    /// End(M) is local; carries a basis of its radical.
    Local(Vec<ModuleMap>),
    Split(Module, Module),
    /// Some endomorphism has no eigenvalue in the ground field and no splitting was found.
    NoRationalSplit,
}

/// Whether the span of `maps` is a nilpotent subspace of End(M).
fn span_is_nilpotent(m: &Module, maps: &[ModuleMap]) -> bool {
    let field = m.field();
    let len: usize = m.dims().iter().map(|d| d * d).sum();
    let reduce = |fs: Vec<ModuleMap>| -> Vec<ModuleMap> {
        let vecs: Vec<Vec<Scalar>> = fs.iter().map(ModuleMap::to_vector).collect();
        independent_subset(field, len, &vecs).into_iter().map(|i| fs[i].clone()).collect()
    };
    let base = reduce(maps.iter().filter(|f| !f.is_zero()).cloned().collect());
    let mut layer = base.clone();
    for _ in 0..=m.dim() {
        if layer.is_empty() {
            return true;
        }
        let products: Vec<ModuleMap> =
            layer.iter().flat_map(|x| base.iter().map(move |y| x.after(y))).filter(|p| !p.is_zero()).collect();
        layer = reduce(products);
    }
    layer.is_empty()
}

fn analyse(m: &Module) -> Result<Analysis> {
    let end = hom_basis(m, m)?;
    let field = m.field();
    if end.dim() <= 1 {
        return Ok(Analysis::Local(Vec::new()));
    }
    let mut radical = Vec::new();
    let mut unresolved = false;
    for b in &end.maps {
        let t = total_matrix(b);
        let roots = eigenvalues(&t, &[ones(field, m.dim())]);
        if roots.is_empty() {
            unresolved = true;
            continue;
        }
        for l in &roots {
            if let Some((a, c)) = fitting_split(m, b, l) {
                return Ok(Analysis::Split(a, c));
            }
        }
        radical.push(b.sub(&scalar_endo(m, &roots[0])));
    }
    if !unresolved && span_is_nilpotent(m, &radical) {
        let vecs: Vec<Vec<Scalar>> = radical.iter().map(ModuleMap::to_vector).collect();
        let len = vecs.first().map_or(0, Vec::len);
        let basis = independent_subset(field, len, &vecs).into_iter().map(|i| radical[i].clone()).collect();
        return Ok(Analysis::Local(basis));
    }
    if let Some((a, c)) = search_split(m, &end) {
        return Ok(Analysis::Split(a, c));
    }
    if unresolved {
        Ok(Analysis::NoRationalSplit)
    } else {
        Err(Error::SplittingFailed)
    }
}

fn search_split(m: &Module, end: &HomBasis) -> Option<(Module, Module)> {
    let field = m.field();
    for b in &end.maps {
        if let Some(s) = try_split(m, b, true) {
            return Some(s);
        }
    }
    let k = end.dim();
    for i in 0..k {
        for j in (i + 1)..k {
            for c in [1, -1, 2] {
                let f = end.maps[i].add(&end.maps[j].scale(&field.from_i64(c)));
                if let Some(s) = try_split(m, &f, false) {
                    return Some(s);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Scalar> = (0..k).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
        if let Some(s) = try_split(m, &end.combine(&coeffs), true) {
            return Some(s);
        }
    }
    None
}

/// Basis of the radical of End(M) when End(M) is local.
pub fn endomorphism_radical(m: &Module) -> Result<Option<Vec<ModuleMap>>> {
    if m.is_zero() {
        return Ok(None);
    }
    match analyse(m)? {
        Analysis::Local(rad) => Ok(Some(rad)),
        _ => Ok(None),
    }
}

/// Nonzero with local endomorphism ring (or, over non-closed fields, no further splitting).
pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(!matches!(analyse(m)?, Analysis::Split(..)))
}

/// Indecomposable summands, with repetition, in discovery order.
pub fn indecomposable_summands(m: &Module) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match analyse(&x)? {
            Analysis::Split(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            _ => out.push(x),
        }
    }
    Ok(out)
}

/// Krull-Schmidt decomposition into pairwise non-isomorphic indecomposables with multiplicities.
pub fn decompose(m: &Module) -> Result<Vec<(Module, usize)>> {
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for x in indecomposable_summands(m)? {
        let mut found = false;
        for (y, k) in groups.iter_mut() {
            if is_isomorphic(&x, y)? {
                *k += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((x, 1));
        }
    }
    Ok(groups)
}

/// An isomorphism `m -> n` found among basis elements, small combinations and
/// seeded random combinations of the hom space.
pub fn search_isomorphism(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let h = hom_basis(m, n)?;
    let field = m.field();
    if let Some(f) = h.maps.iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    let k = h.dim();
    for i in 0..k {
        for j in (i + 1)..k {
            for c in [1, -1] {
                let f = h.maps[i].add(&h.maps[j].scale(&field.from_i64(c)));
                if f.is_isomorphism() {
                    return Ok(Some(f));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIES.min(8 * k + 8) {
        let coeffs: Vec<Scalar> = (0..k).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
        let f = h.combine(&coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let d = super::hom::hom_dim(m, n)?;
    if d == 0 || super::hom::hom_dim(n, m)? != d || super::hom::hom_dim(m, m)? != d || super::hom::hom_dim(n, n)? != d {
        return Ok(false);
    }
    if search_isomorphism(m, n)?.is_some() {
        return Ok(true);
    }
    // complete fallback: match indecomposable summands, where the search is exhaustive
    let mut left = indecomposable_summands(m)?;
    let right = indecomposable_summands(n)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    for y in &right {
        let mut hit = None;
        for (i, x) in left.iter().enumerate() {
            if search_isomorphism(x, y)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                left.remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
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

    #[test]
    fn zero_decomposes_to_nothing() {
        let a = a2();
        assert!(decompose(&Module::zero(&a)).unwrap().is_empty());
        assert!(!is_indecomposable(&Module::zero(&a)).unwrap());
    }

    #[test]
    fn repeated_simple() {
        let a = a2();
        let s = a.simple(0);
        let d = decompose(&s.power(2)).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        assert!(is_isomorphic(&d[0].0, &s).unwrap());
    }

    #[test]
    fn regular_module_of_a2() {
        let a = a2();
        let d = decompose(&a.regular()).unwrap();
        assert_eq!(d.len(), 2);
        let mut dims: Vec<Vec<usize>> = d
            .iter()
            .map(|(m, k)| {
                assert_eq!(*k, 1);
                m.dims().to_vec()
            })
            .collect();
        dims.sort();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn isomorphism_examples() {
        let a = a2();
        let p = a.projective(0);
        assert!(is_isomorphic(&p, &p).unwrap());
        assert!(!is_isomorphic(&a.simple(0), &a.simple(1)).unwrap());
        // P1 in another basis: scale the vertex-2 coordinate
        let q = a.field();
        let twisted = Module::new(&a, vec![1, 1], vec![Matrix::from_i64(q, 1, 1, &[5])]).unwrap();
        assert!(is_isomorphic(&p, &twisted).unwrap());
        let split = Module::new(&a, vec![1, 1], vec![Matrix::zeros(q, 1, 1)]).unwrap();
        assert!(!is_isomorphic(&p, &split).unwrap());
    }

    #[test]
    fn indecomposability() {
        let a = a2();
        assert!(is_indecomposable(&a.projective(0)).unwrap());
        assert!(!is_indecomposable(&a.regular()).unwrap());
        let l = alg("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x*x\n");
        assert!(is_indecomposable(&l.projective(0)).unwrap());
        assert_eq!(endomorphism_radical(&l.projective(0)).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn splits_over_prime_fields() {
        let a = alg("field: F2\nvertices: 1 2\narrows: a: 1 -> 2\n");
        let m = Module::direct_sum(&a, &[a.projective(0), a.projective(0), a.simple(1)]).unwrap();
        let d = decompose(&m).unwrap();
        let total: usize = d.iter().map(|(_, k)| k).sum();
        assert_eq!(total, 3);
    }
}
