use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

use super::bound::BoundAlgebra;
use super::quiver::Path;

/// A finite-dimensional representation of the bound quiver.
///
/// Arrow `α: v -> w` acts by a matrix of shape `dim w × dim v`. Cloning is cheap.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

struct ModuleData {
    algebra: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Module {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(algebra: &Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "expected {} vertex dimensions, got {}",
                q.vertex_count(),
                dims.len()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "expected {} arrow matrices, got {}",
                q.arrows().len(),
                maps.len()
            )));
        }
        for (arrow, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` needs a {}x{} matrix",
                    arrow.label, dims[arrow.target], dims[arrow.source]
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule(format!("arrow `{}` is over the wrong field", arrow.label)));
            }
        }
        let module = Self::new_unchecked(algebra, dims, maps);
        for r in algebra.relations() {
            if !module.relation_vanishes(&r.terms) {
                return Err(Error::InvalidModule("a relation does not act as zero".into()));
            }
        }
        for p in algebra.paths_of_length(algebra.vanishing_length()) {
            if !module.path_map(&p).is_zero() {
                return Err(Error::InvalidModule("module is not nilpotent".into()));
            }
        }
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Module(Arc::new(ModuleData { algebra: Arc::clone(algebra), dims, maps }))
    }

    fn relation_vanishes(&self, terms: &[(Scalar, Path)]) -> bool {
        let (s, t) = (terms[0].1.source, terms[0].1.target);
        let mut acc = Matrix::zeros(self.field(), self.dims()[t], self.dims()[s]);
        for (c, p) in terms {
            acc = acc.add(&self.path_map(p).scale(c));
        }
        acc.is_zero()
    }

    pub fn zero(algebra: &Arc<BoundAlgebra>) -> Self {
        let n = algebra.vertex_count();
        let maps = algebra.quiver().arrows().iter().map(|_| Matrix::zeros(algebra.field(), 0, 0)).collect();
        Self::new_unchecked(algebra, vec![0; n], maps)
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow_map(&self, arrow: usize) -> &Matrix {
        &self.0.maps[arrow]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.0.maps
    }

    /// The action of a path; the identity for a trivial path.
    pub fn path_map(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims()[path.source]);
        for &a in &path.arrows {
            m = self.arrow_map(a).mul(&m);
        }
        m
    }

    /// Starting coordinate of each vertex space in the concatenated vector space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims()
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || self.algebra() == other.algebra()
    }

    pub fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Direct sum of `parts`, with summands stacked in order at each vertex.
    pub fn direct_sum(algebra: &Arc<BoundAlgebra>, parts: &[Module]) -> Result<Module> {
        for p in parts {
            if !(Arc::ptr_eq(p.algebra(), algebra) || p.algebra().as_ref() == algebra.as_ref()) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let n = algebra.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
        let maps = (0..algebra.quiver().arrows().len())
            .map(|a| parts.iter().fold(Matrix::zeros(algebra.field(), 0, 0), |acc, p| acc.direct_sum(p.arrow_map(a))))
            .collect();
        Ok(Self::new_unchecked(algebra, dims, maps))
    }

    pub fn power(&self, k: usize) -> Module {
        Module::direct_sum(self.algebra(), &vec![self.clone(); k]).expect("same algebra")
    }
}

impl PartialEq for Module {
    /// Literal equality of representations, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims() == other.dims() && self.arrow_maps() == other.arrow_maps()
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims())
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
        write!(f, "({})", dims.join(","))
    }
}

/// Offsets of each summand inside a direct sum, per vertex.
pub fn summand_offsets(parts: &[Module], vertices: usize) -> Vec<Vec<usize>> {
    let mut running = vec![0; vertices];
    parts
        .iter()
        .map(|p| {
            let here = running.clone();
            for (r, d) in running.iter_mut().zip(p.dims()) {
                *r += d;
            }
            here
        })
        .collect()
}

/// A homomorphism given by one matrix per vertex.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    components: Vec<Matrix>,
}

impl ModuleMap {
    /// Checks shapes and the intertwining condition.
    pub fn new(source: &Module, target: &Module, components: Vec<Matrix>) -> Result<Self> {
        source.check_same_algebra(target)?;
        let n = source.dims().len();
        if components.len() != n {
            return Err(Error::InvalidMap(format!("expected {n} components")));
        }
        for (v, c) in components.iter().enumerate() {
            if c.rows() != target.dims()[v] || c.cols() != source.dims()[v] {
                return Err(Error::InvalidMap(format!("component at vertex {v} has the wrong shape")));
            }
        }
        let map = Self::new_unchecked(source, target, components);
        if !map.intertwines() {
            return Err(Error::InvalidMap("components do not commute with the arrows".into()));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, components: Vec<Matrix>) -> Self {
        ModuleMap { source: source.clone(), target: target.clone(), components }
    }

    pub fn intertwines(&self) -> bool {
        self.source.algebra().quiver().arrows().iter().enumerate().all(|(a, arr)| {
            let lhs = self.components[arr.target].mul(self.source.arrow_map(a));
            let rhs = self.target.arrow_map(a).mul(&self.components[arr.source]);
            lhs == rhs
        })
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let components =
            (0..source.dims().len()).map(|v| Matrix::zeros(f, target.dims()[v], source.dims()[v])).collect();
        Self::new_unchecked(source, target, components)
    }

    pub fn identity(m: &Module) -> Self {
        let components = m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        Self::new_unchecked(m, m, components)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &Matrix {
        &self.components[v]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(first.target.dims(), self.source.dims());
        let components = self.components.iter().zip(&first.components).map(|(g, f)| g.mul(f)).collect();
        Self::new_unchecked(&first.source, &self.target, components)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        Self::new_unchecked(&self.source, &self.target, components)
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect();
        Self::new_unchecked(&self.source, &self.target, components)
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        let components = self.components.iter().map(|a| a.scale(s)).collect();
        Self::new_unchecked(&self.source, &self.target, components)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let components = self.components.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(&self.target, &self.source, components))
    }

    /// Entries of all components, vertex by vertex in row-major order.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(|c| c.entries().iter().cloned()).collect()
    }

    pub fn from_vector(source: &Module, target: &Module, v: &[Scalar]) -> ModuleMap {
        let mut pos = 0;
        let components = (0..source.dims().len())
            .map(|i| {
                let (r, c) = (target.dims()[i], source.dims()[i]);
                let rows: Vec<Vec<Scalar>> = (0..r).map(|k| v[pos + k * c..pos + (k + 1) * c].to_vec()).collect();
                pos += r * c;
                Matrix::from_rows(source.field(), c, &rows)
            })
            .collect();
        Self::new_unchecked(source, target, components)
    }

    /// Inclusion of summand `k` into the direct sum of `parts`.
    pub fn injection(sum: &Module, parts: &[Module], k: usize) -> ModuleMap {
        let n = sum.dims().len();
        let offs = summand_offsets(parts, n);
        let components = (0..n)
            .map(|v| {
                let mut m = Matrix::zeros(sum.field(), sum.dims()[v], parts[k].dims()[v]);
                m.set_block(offs[k][v], 0, &Matrix::identity(sum.field(), parts[k].dims()[v]));
                m
            })
            .collect();
        Self::new_unchecked(&parts[k], sum, components)
    }

    /// Projection of the direct sum of `parts` onto summand `k`.
    pub fn projection(sum: &Module, parts: &[Module], k: usize) -> ModuleMap {
        let n = sum.dims().len();
        let offs = summand_offsets(parts, n);
        let components = (0..n)
            .map(|v| {
                let mut m = Matrix::zeros(sum.field(), parts[k].dims()[v], sum.dims()[v]);
                m.set_block(0, offs[k][v], &Matrix::identity(sum.field(), parts[k].dims()[v]));
                m
            })
            .collect();
        Self::new_unchecked(sum, &parts[k], components)
    }

    /// The map out of a direct sum whose restriction to summand `k` is `maps[k]`.
    pub fn from_sum(sum: &Module, maps: &[ModuleMap], target: &Module) -> ModuleMap {
        let n = sum.dims().len();
        let components = (0..n)
            .map(|v| {
                maps.iter().fold(Matrix::zeros(sum.field(), target.dims()[v], 0), |acc, m| acc.hstack(m.component(v)))
            })
            .collect();
        Self::new_unchecked(sum, target, components)
    }

    /// The map into a direct sum whose `k`-th coordinate is `maps[k]`.
    pub fn into_sum(source: &Module, maps: &[ModuleMap], sum: &Module) -> ModuleMap {
        let n = source.dims().len();
        let components = (0..n)
            .map(|v| {
                maps.iter()
                    .fold(Matrix::zeros(source.field(), 0, source.dims()[v]), |acc, m| acc.vstack(m.component(v)))
            })
            .collect();
        Self::new_unchecked(source, sum, components)
    }
}

impl BoundAlgebra {
    /// The indecomposable projective `P_v = Λ e_v`; its basis at `w` is the basis paths `v -> w`.
    pub fn projective(self: &Arc<Self>, v: usize) -> Module {
        let n = self.vertex_count();
        let at: Vec<Vec<usize>> = (0..n).map(|w| self.basis_between(v, w)).collect();
        let dims = at.iter().map(Vec::len).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let src = &at[arr.source];
                let tgt = &at[arr.target];
                let mut m = Matrix::zeros(self.field(), tgt.len(), src.len());
                let alpha = Path::arrow(self.quiver(), a);
                for (j, &p) in src.iter().enumerate() {
                    for (k, c) in self.residue(&self.basis()[p].then(&alpha)) {
                        let i = tgt.iter().position(|&t| t == k).expect("residue stays in block");
                        m[(i, j)] = c;
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(self, dims, maps)
    }

    /// The indecomposable injective `I_v = D(e_v Λ)`; its basis at `w` is dual to the basis paths `w -> v`.
    pub fn injective(self: &Arc<Self>, v: usize) -> Module {
        let n = self.vertex_count();
        let at: Vec<Vec<usize>> = (0..n).map(|w| self.basis_between(w, v)).collect();
        let dims = at.iter().map(Vec::len).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let src = &at[arr.source];
                let tgt = &at[arr.target];
                let mut m = Matrix::zeros(self.field(), tgt.len(), src.len());
                let alpha = Path::arrow(self.quiver(), a);
                for (i, &q) in tgt.iter().enumerate() {
                    for (k, c) in self.residue(&alpha.then(&self.basis()[q])) {
                        let j = src.iter().position(|&s| s == k).expect("residue stays in block");
                        m[(i, j)] = c;
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(self, dims, maps)
    }

    pub fn simple(self: &Arc<Self>, v: usize) -> Module {
        let mut dims = vec![0; self.vertex_count()];
        dims[v] = 1;
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .map(|arr| Matrix::zeros(self.field(), dims[arr.target], dims[arr.source]))
            .collect();
        Module::new_unchecked(self, dims, maps)
    }

    pub fn projective_at(self: &Arc<Self>, label: &str) -> Result<Module> {
        Ok(self.projective(self.vertex(label)?))
    }

    pub fn injective_at(self: &Arc<Self>, label: &str) -> Result<Module> {
        Ok(self.injective(self.vertex(label)?))
    }

    pub fn simple_at(self: &Arc<Self>, label: &str) -> Result<Module> {
        Ok(self.simple(self.vertex(label)?))
    }

    /// Λ as a left module over itself.
    pub fn regular(self: &Arc<Self>) -> Module {
        let parts: Vec<Module> = (0..self.vertex_count()).map(|v| self.projective(v)).collect();
        Module::direct_sum(self, &parts).expect("same algebra")
    }

    /// The map `P_v -> m` sending `e_v` to `x ∈ m_v`.
    pub fn map_from_projective(self: &Arc<Self>, v: usize, m: &Module, x: &[Scalar]) -> ModuleMap {
        let p = self.projective(v);
        let components = (0..self.vertex_count())
            .map(|w| {
                let cols: Vec<Vec<Scalar>> =
                    self.basis_between(v, w).iter().map(|&b| m.path_map(&self.basis()[b]).mul_vec(x)).collect();
                Matrix::from_columns(self.field(), m.dims()[w], &cols)
            })
            .collect();
        ModuleMap::new_unchecked(&p, m, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;

    fn alg(text: &str) -> Arc<BoundAlgebra> {
        Arc::new(parse_algebra(text).unwrap())
    }

    fn a2() -> Arc<BoundAlgebra> {
        alg("vertices: 1 2\narrows: a: 1 -> 2\n")
    }

    #[test]
    fn projectives_of_a2() {
        let a = a2();
        assert_eq!(a.projective(0).dims(), &[1, 1]);
        assert_eq!(a.projective(1).dims(), &[0, 1]);
        assert_eq!(a.projective(1), a.simple(1));
        assert!(a.projective_at("7").is_err());
    }

    #[test]
    fn injectives_of_a2() {
        let a = a2();
        assert_eq!(a.injective(0).dims(), &[1, 0]);
        assert_eq!(a.injective(0), a.simple(0));
        assert_eq!(a.injective(1).dims(), &[1, 1]);
        assert!(!a.injective(1).arrow_map(0).is_zero());
    }

    #[test]
    fn semisimple_injectives_are_simple() {
        let a = alg("vertices: 1 2 3\n");
        for v in 0..3 {
            assert_eq!(a.injective(v), a.simple(v));
            assert_eq!(a.projective(v), a.simple(v));
        }
        let total: usize = (0..3).map(|v| a.simple(v).dim()).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn truncated_loop_projective_is_nilpotent() {
        let a = alg("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        let p = a.projective(0);
        assert_eq!(p.dim(), 2);
        let x = p.arrow_map(0);
        assert!(!x.is_zero());
        assert!(x.mul(x).is_zero());
    }

    #[test]
    fn projective_dimensions_sum_to_algebra_dimension() {
        let a = alg("vertices: 1 2 3 4\narrows: a: 1 -> 2, b: 2 -> 4, c: 1 -> 3, d: 3 -> 4\nrelations: b*a - d*c\n");
        let total: usize = (0..4).map(|v| a.projective(v).dim()).sum();
        assert_eq!(total, a.dim());
        for v in 0..4 {
            let p = a.projective(v);
            assert!(Module::new(&a, p.dims().to_vec(), p.arrow_maps().to_vec()).is_ok());
            let i = a.injective(v);
            assert!(Module::new(&a, i.dims().to_vec(), i.arrow_maps().to_vec()).is_ok());
        }
    }

    #[test]
    fn constructor_rejects_relation_violations() {
        let a = alg("vertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\nrelations: b*a\n");
        let q = a.field();
        let one = Matrix::from_i64(q, 1, 1, &[1]);
        assert!(Module::new(&a, vec![1, 1, 1], vec![one.clone(), one.clone()]).is_err());
        assert!(Module::new(&a, vec![1, 1, 1], vec![one.clone(), Matrix::zeros(q, 1, 1)]).is_ok());
        assert!(Module::new(&a, vec![1, 1], vec![one.clone(), one]).is_err());
    }

    #[test]
    fn maps_from_projectives_intertwine() {
        let a = a2();
        let i2 = a.injective(1);
        let x = vec![a.field().one()];
        let f = a.map_from_projective(0, &i2, &x);
        assert!(f.intertwines());
        assert!(f.is_isomorphism());
    }

    #[test]
    fn vector_round_trip() {
        let a = a2();
        let p = a.projective(0);
        let id = ModuleMap::identity(&p);
        let back = ModuleMap::from_vector(&p, &p, &id.to_vector());
        assert_eq!(back.components(), id.components());
        assert!(ModuleMap::new(&p, &a.simple(1), vec![Matrix::zeros(a.field(), 0, 1), Matrix::identity(a.field(), 1)])
            .is_err());
    }
}
