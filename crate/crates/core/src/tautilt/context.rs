use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{BoundAlgebra, Module};
use crate::artrans::OppositeBridge;
use crate::error::{Error, Result};
use crate::linalg::{independent_subset, rank_of, Scalar};
use crate::modcat::{ext1_dim, ext2_dim, hom_basis, minimal_presentation, HomBasis, Inventory};

use super::subcat::Subcat;

/// Spanning vectors per vertex.
type Spans = Vec<Vec<Vec<Scalar>>>;

/// An inventory together with lazily filled tables of homs, extensions,
/// translates and traces between its members. Every predicate on subcategories
/// is a pure function of the context and the subcategory.
#[derive(Debug)]
pub struct TauContext {
    inventory: Inventory,
    bridge: OppositeBridge,
    projectives: Vec<usize>,
    homs: Vec<OnceLock<HomBasis>>,
    ext1: OnceLock<Vec<Vec<usize>>>,
    ext2: OnceLock<Vec<Vec<usize>>>,
    taus: OnceLock<Vec<Module>>,
    tau_homs: OnceLock<Vec<Vec<usize>>>,
    rigid: OnceLock<Vec<Vec<bool>>>,
    traces: OnceLock<Vec<Vec<Spans>>>,
    fac_cache: Mutex<HashMap<Subcat, Subcat>>,
    support_list: OnceLock<Vec<Subcat>>,
    tilting_list: OnceLock<Vec<Subcat>>,
}

impl TauContext {
    pub fn build(algebra: &Arc<BoundAlgebra>, cap: usize) -> Result<Self> {
        Self::new(Inventory::build(algebra, cap)?)
    }

    pub fn new(inventory: Inventory) -> Result<Self> {
        let algebra = Arc::clone(inventory.algebra());
        let mut projectives = Vec::with_capacity(algebra.vertex_count());
        for v in 0..algebra.vertex_count() {
            let i = inventory
                .find(&algebra.projective(v))?
                .ok_or_else(|| Error::CheckFailed(format!("projective at vertex {v} missing from inventory")))?;
            projectives.push(i);
        }
        let n = inventory.len();
        Ok(TauContext {
            bridge: OppositeBridge::new(&algebra),
            inventory,
            projectives,
            homs: (0..n * n).map(|_| OnceLock::new()).collect(),
            ext1: OnceLock::new(),
            ext2: OnceLock::new(),
            taus: OnceLock::new(),
            tau_homs: OnceLock::new(),
            rigid: OnceLock::new(),
            traces: OnceLock::new(),
            fac_cache: Mutex::new(HashMap::new()),
            support_list: OnceLock::new(),
            tilting_list: OnceLock::new(),
        })
    }

    /// Fills every table so that later queries only read.
    pub fn warm_up(&self) {
        self.ext1_table();
        self.ext2_table();
        self.tau_hom_table();
        self.rigid_table();
        self.trace_table();
    }

    pub fn inventory(&self) -> &Inventory {
        &self.inventory
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        self.inventory.algebra()
    }

    pub fn bridge(&self) -> &OppositeBridge {
        &self.bridge
    }

    pub fn len(&self) -> usize {
        self.inventory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inventory.is_empty()
    }

    pub fn module(&self, i: usize) -> &Module {
        self.inventory.get(i)
    }

    pub fn name(&self, i: usize) -> &str {
        self.inventory.name(i)
    }

    pub fn names(&self, s: &Subcat) -> Vec<String> {
        s.iter().map(|i| self.name(i).to_string()).collect()
    }

    /// Inventory index of the indecomposable projective at each vertex.
    pub fn projectives(&self) -> &[usize] {
        &self.projectives
    }

    /// `add Λ`.
    pub fn projective_subcat(&self) -> Subcat {
        Subcat::new(self.projectives.iter().copied())
    }

    /// The whole module category.
    pub fn everything(&self) -> Subcat {
        Subcat::all(self.len())
    }

    pub fn hom(&self, i: usize, j: usize) -> &HomBasis {
        self.homs[i * self.len() + j].get_or_init(|| hom_basis(self.module(i), self.module(j)).expect("same algebra"))
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.inventory.hom_matrix()[i][j]
    }

    /// `dim Ext¹(X_i, X_j)`.
    pub fn ext1(&self, i: usize, j: usize) -> usize {
        self.ext1_table()[i][j]
    }

    /// `dim Ext²(X_i, X_j)`.
    pub fn ext2(&self, i: usize, j: usize) -> usize {
        self.ext2_table()[i][j]
    }

    pub fn tau(&self, i: usize) -> &Module {
        &self.taus()[i]
    }

    /// `dim Hom(X_i, τX_j)`.
    pub fn hom_into_tau(&self, i: usize, j: usize) -> usize {
        self.tau_hom_table()[i][j]
    }

    /// Whether `Hom(f, X_j)` is onto for the minimal presentation `f` of `X_i`.
    pub fn presentation_surjects(&self, i: usize, j: usize) -> bool {
        self.rigid_table()[i][j]
    }

    fn ext1_table(&self) -> &Vec<Vec<usize>> {
        self.ext1.get_or_init(|| self.pair_table(|x, y| ext1_dim(x, y).expect("same algebra")))
    }

    fn ext2_table(&self) -> &Vec<Vec<usize>> {
        self.ext2.get_or_init(|| self.pair_table(|x, y| ext2_dim(x, y).expect("same algebra")))
    }

    fn pair_table<T>(&self, f: impl Fn(&Module, &Module) -> T) -> Vec<Vec<T>> {
        let ms = self.inventory.modules();
        ms.iter().map(|x| ms.iter().map(|y| f(x, y)).collect()).collect()
    }

    fn taus(&self) -> &Vec<Module> {
        self.taus.get_or_init(|| self.inventory.modules().iter().map(|x| self.bridge.tau(x)).collect())
    }

    fn tau_hom_table(&self) -> &Vec<Vec<usize>> {
        self.tau_homs.get_or_init(|| {
            let taus = self.taus();
            self.inventory
                .modules()
                .iter()
                .map(|x| taus.iter().map(|t| crate::modcat::hom_dim(x, t).expect("same algebra")).collect())
                .collect()
        })
    }

    fn rigid_table(&self) -> &Vec<Vec<bool>> {
        self.rigid.get_or_init(|| {
            let ms = self.inventory.modules();
            ms.iter()
                .map(|x| {
                    let pres = minimal_presentation(x);
                    let p1 = &pres.p1.module;
                    ms.iter()
                        .map(|y| {
                            let target: usize = pres.p1.vertices.iter().map(|&v| y.dims()[v]).sum();
                            if target == 0 {
                                return true;
                            }
                            let len = p1.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum();
                            let images: Vec<Vec<Scalar>> = hom_basis(&pres.p0.module, y)
                                .expect("same algebra")
                                .maps
                                .iter()
                                .map(|g| g.after(&pres.f).to_vector())
                                .collect();
                            rank_of(x.field(), len, &images) == target
                        })
                        .collect()
                })
                .collect()
        })
    }

    fn trace_table(&self) -> &Vec<Vec<Spans>> {
        self.traces.get_or_init(|| {
            let n = self.len();
            let field = self.algebra().field();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let y = self.module(j);
                            (0..y.dims().len())
                                .map(|w| {
                                    let cols: Vec<Vec<Scalar>> =
                                        self.hom(i, j).maps.iter().flat_map(|g| g.component(w).columns()).collect();
                                    independent_subset(field, y.dims()[w], &cols)
                                        .into_iter()
                                        .map(|c| cols[c].clone())
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Whether the images of all maps from members of `s` jointly span `X_j`.
    fn generated_by(&self, s: &Subcat, j: usize) -> bool {
        if s.contains(j) {
            return true;
        }
        let traces = self.trace_table();
        let y = self.module(j);
        let field = y.field();
        (0..y.dims().len()).all(|w| {
            let d = y.dims()[w];
            if d == 0 {
                return true;
            }
            let vectors: Vec<Vec<Scalar>> = s.iter().flat_map(|i| traces[i][j][w].iter().cloned()).collect();
            vectors.len() >= d && rank_of(field, d, &vectors) == d
        })
    }

    /// `Fac S`: indecomposables that are quotients of objects of `add S`.
    pub fn fac(&self, s: &Subcat) -> Subcat {
        if let Some(hit) = self.fac_cache.lock().expect("cache lock").get(s) {
            return hit.clone();
        }
        let out: Subcat = (0..self.len()).filter(|&j| self.generated_by(s, j)).collect();
        self.fac_cache.lock().expect("cache lock").insert(s.clone(), out.clone());
        out
    }

    /// `P(S)`: the Ext-projective members of `S`.
    pub fn ext_projectives(&self, s: &Subcat) -> Subcat {
        s.iter().filter(|&x| s.iter().all(|y| self.ext1(x, y) == 0)).collect()
    }

    /// `S^⊥₁`: indecomposables `A` with `Ext¹(S, A) = 0`.
    pub fn perp1(&self, s: &Subcat) -> Subcat {
        (0..self.len()).filter(|&a| s.iter().all(|x| self.ext1(x, a) == 0)).collect()
    }

    /// `⊥(τS)`: indecomposables `X` with `Hom(X, τS) = 0`.
    pub fn tau_perp(&self, s: &Subcat) -> Subcat {
        (0..self.len()).filter(|&x| s.iter().all(|u| self.hom_into_tau(x, u) == 0)).collect()
    }

    /// τ-rigidity via surjectivity of `Hom(f, M')` on minimal presentations.
    pub fn is_tau_rigid_def(&self, s: &Subcat) -> bool {
        s.iter().all(|x| s.iter().all(|y| self.presentation_surjects(x, y)))
    }

    /// τ-rigidity via `Ext¹(S, Fac S) = 0`.
    pub fn is_tau_rigid_ext(&self, s: &Subcat) -> bool {
        let f = self.fac(s);
        s.iter().all(|x| f.iter().all(|y| self.ext1(x, y) == 0))
    }

    /// Cached result of `enumerate_support_tau_tilting`.
    pub fn support_tau_tilting_list(&self) -> Result<&[Subcat]> {
        if self.support_list.get().is_none() {
            let list = self.enumerate_support_tau_tilting()?;
            let _ = self.support_list.set(list);
        }
        Ok(self.support_list.get().expect("just set"))
    }

    /// Cached result of `enumerate_tilting`.
    pub fn tilting_list(&self) -> Result<&[Subcat]> {
        if self.tilting_list.get().is_none() {
            let list = self.enumerate_tilting()?;
            let _ = self.tilting_list.set(list);
        }
        Ok(self.tilting_list.get().expect("just set"))
    }

    /// `Ext²` vanishes on every pair of indecomposables.
    pub fn is_hereditary(&self) -> bool {
        self.ext2_table().iter().all(|row| row.iter().all(|&d| d == 0))
    }

    /// Every member has `Ext²(C, -) = 0` and `Ext¹(S, S) = 0`.
    pub fn is_partial_tilting(&self, s: &Subcat) -> bool {
        s.iter().all(|c| (0..self.len()).all(|x| self.ext2(c, x) == 0))
            && s.iter().all(|x| s.iter().all(|y| self.ext1(x, y) == 0))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::parse_algebra;
    use crate::modcat::DEFAULT_INVENTORY_CAP;

    pub(crate) fn context(text: &str) -> TauContext {
        let a = Arc::new(parse_algebra(text).unwrap());
        TauContext::build(&a, DEFAULT_INVENTORY_CAP).unwrap()
    }

    pub(crate) fn a2() -> TauContext {
        context("vertices: 1 2\narrows: a: 1 -> 2\n")
    }

    pub(crate) fn by_names(ctx: &TauContext, names: &[&str]) -> Subcat {
        names
            .iter()
            .map(|n| (0..ctx.len()).find(|&i| ctx.name(i) == *n).unwrap_or_else(|| panic!("no member {n}")))
            .collect()
    }

    #[test]
    fn fac_examples() {
        let c = a2();
        assert_eq!(c.fac(&c.projective_subcat()), c.everything());
        assert_eq!(c.fac(&Subcat::zero()), Subcat::zero());
        assert_eq!(c.fac(&by_names(&c, &["S1"])), by_names(&c, &["S1"]));
        assert_eq!(c.fac(&by_names(&c, &["P1"])), by_names(&c, &["P1", "S1"]));
    }

    #[test]
    fn ext_projective_examples() {
        let c = a2();
        assert_eq!(c.ext_projectives(&c.everything()), c.projective_subcat());
        assert_eq!(c.ext_projectives(&Subcat::zero()), Subcat::zero());
        assert_eq!(c.ext_projectives(&by_names(&c, &["S1"])), by_names(&c, &["S1"]));
    }

    #[test]
    fn perp_examples() {
        let c = a2();
        assert_eq!(c.perp1(&c.projective_subcat()), c.everything());
        assert_eq!(c.perp1(&Subcat::zero()), c.everything());
        assert_eq!(c.perp1(&by_names(&c, &["S1"])), by_names(&c, &["P1", "S1"]));
        assert_eq!(c.tau_perp(&by_names(&c, &["S1"])), by_names(&c, &["P1", "S1"]));
        assert_eq!(c.tau_perp(&c.projective_subcat()), c.everything());
    }

    #[test]
    fn tau_rigid_examples() {
        let c = a2();
        for s in [c.projective_subcat(), by_names(&c, &["P1", "S1"])] {
            assert!(c.is_tau_rigid_def(&s));
            assert!(c.is_tau_rigid_ext(&s));
        }
        assert!(!c.is_tau_rigid_def(&c.everything()));
        let l = context("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        let s = by_names(&l, &["S1"]);
        assert!(!l.is_tau_rigid_def(&s));
        assert!(!l.is_tau_rigid_ext(&s));
        assert!(l.is_tau_rigid_def(&l.projective_subcat()));
    }

    #[test]
    fn partial_tilting_examples() {
        let c = a2();
        assert!(c.is_hereditary());
        assert!(c.is_partial_tilting(&by_names(&c, &["P1", "S1"])));
        let l = context("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        assert!(!l.is_hereditary());
        assert!(!l.is_partial_tilting(&by_names(&l, &["S1"])));
        assert!(l.is_partial_tilting(&l.projective_subcat()));
    }
}
