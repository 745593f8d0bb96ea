use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{BoundAlgebra, Module, ModuleMap};
use crate::artrans::OppositeBridge;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve, Field, Matrix, QuotientSpace, Scalar};

use super::decompose::{endomorphism_radical, indecomposable_summands, is_isomorphic};
use super::exact::kernel;
use super::exact::{cokernel, quotient, radical, radical_power_spans, socle_spans};
use super::hom::{hom_basis, hom_dim};
use super::present::{is_injective, is_projective, projective_cover};

/// Default bound on the number of indecomposables.
pub const DEFAULT_INVENTORY_CAP: usize = 500;
/// Knitting stops once an indecomposable of total dimension above this value and
/// above `dim Λ` appears; the algebra is then presumed representation-infinite.
pub const KNITTING_DIMENSION_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// Auslander-Reiten knitting from the projectives.
    Knitting,
    /// Uniserial quotients `P_v / rad^k P_v` of a Nakayama algebra.
    Nakayama,
}

/// All indecomposable modules up to isomorphism, in a fixed order.
#[derive(Debug)]
pub struct Inventory {
    algebra: Arc<BoundAlgebra>,
    modules: Vec<Module>,
    backend: Backend,
    names: Vec<String>,
    hom_matrix: OnceLock<Vec<Vec<usize>>>,
}

impl Inventory {
    /// Nakayama algebras use the closed form, everything else is knitted.
    pub fn build(algebra: &Arc<BoundAlgebra>, cap: usize) -> Result<Self> {
        let backend = if algebra.is_nakayama() { Backend::Nakayama } else { Backend::Knitting };
        Self::build_with(algebra, cap, backend)
    }

    pub fn build_with(algebra: &Arc<BoundAlgebra>, cap: usize, backend: Backend) -> Result<Self> {
        let modules = match backend {
            Backend::Knitting => knit(algebra, cap)?,
            Backend::Nakayama => {
                if !algebra.is_nakayama() {
                    return Err(Error::Precondition("closed form needs a Nakayama algebra".into()));
                }
                uniserials(algebra, cap)?
            }
        };
        Self::from_modules(algebra, modules, backend)
    }

    fn from_modules(algebra: &Arc<BoundAlgebra>, mut modules: Vec<Module>, backend: Backend) -> Result<Self> {
        modules.sort_by(|a, b| (a.dim(), a.dims()).cmp(&(b.dim(), b.dims())));
        let mut inv = Inventory {
            algebra: Arc::clone(algebra),
            modules,
            backend,
            names: Vec::new(),
            hom_matrix: OnceLock::new(),
        };
        inv.names = inv.compute_names()?;
        Ok(inv)
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.algebra
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn get(&self, i: usize) -> &Module {
        &self.modules[i]
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Index of the member isomorphic to the indecomposable `m`.
    pub fn find(&self, m: &Module) -> Result<Option<usize>> {
        m.check_same_algebra(&self.modules.first().cloned().unwrap_or_else(|| Module::zero(&self.algebra)))?;
        for (i, x) in self.modules.iter().enumerate() {
            if x.dims() == m.dims() && is_isomorphic(x, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// `dim Hom(X_i, X_j)` for all members.
    pub fn hom_matrix(&self) -> &Vec<Vec<usize>> {
        self.hom_matrix.get_or_init(|| {
            self.modules
                .iter()
                .map(|x| self.modules.iter().map(|y| hom_dim(x, y).expect("same algebra")).collect())
                .collect()
        })
    }

    /// Multiplicity of each member as a summand of `m`, read off from `dim Hom(X_i, m)`.
    pub fn multiplicities(&self, m: &Module) -> Result<Vec<usize>> {
        let n = self.len();
        if m.is_zero() {
            return Ok(vec![0; n]);
        }
        let q = Field::Rational;
        let h = self.hom_matrix();
        let entries: Vec<Vec<Scalar>> =
            h.iter().map(|row| row.iter().map(|&d| q.from_i64(d as i64)).collect()).collect();
        let rhs: Vec<Scalar> =
            self.modules.iter().map(|x| Ok(q.from_i64(hom_dim(x, m)? as i64))).collect::<Result<_>>()?;
        let sol = solve(&Matrix::from_rows(q, n, &entries), &rhs).ok_or(Error::NotInInventory)?;
        let mut mult = Vec::with_capacity(n);
        for s in &sol {
            let r = s.as_rational().expect("rational");
            if !r.is_integer() || r < &num_rational::BigRational::from_integer(0.into()) {
                return Err(Error::NotInInventory);
            }
            mult.push(num_traits::ToPrimitive::to_usize(&r.to_integer()).ok_or(Error::NotInInventory)?);
        }
        let dims: Vec<usize> =
            (0..m.dims().len()).map(|v| mult.iter().zip(&self.modules).map(|(k, x)| k * x.dims()[v]).sum()).collect();
        if dims != m.dims() {
            return Err(Error::NotInInventory);
        }
        Ok(mult)
    }

    /// Display names: `P<v>`, `S<v>`, `I<v>` (in that priority) or `d1,...,dn#k`.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn compute_names(&self) -> Result<Vec<String>> {
        let labels = self.algebra.quiver().vertices();
        let mut names: Vec<Option<String>> = vec![None; self.len()];
        type Make = fn(&Arc<BoundAlgebra>, usize) -> Module;
        let kinds: [(&str, Make); 3] =
            [("P", |a, v| a.projective(v)), ("S", |a, v| a.simple(v)), ("I", |a, v| a.injective(v))];
        for (prefix, make) in kinds {
            for (v, label) in labels.iter().enumerate() {
                if let Some(i) = self.find(&make(&self.algebra, v))? {
                    if names[i].is_none() {
                        names[i] = Some(format!("{prefix}{label}"));
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(self.len());
        for (i, name) in names.into_iter().enumerate() {
            out.push(name.unwrap_or_else(|| dims_name(&self.modules, i)));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> InventoryJson {
        let q = self.algebra.quiver();
        InventoryJson {
            field: self.algebra.field().to_string(),
            vertices: q.vertices().to_vec(),
            arrows: q.arrows().iter().map(|a| a.label.clone()).collect(),
            backend: self.backend,
            modules: self
                .modules
                .iter()
                .zip(&self.names)
                .map(|(m, name)| ModuleJson {
                    name: name.clone(),
                    dims: m.dims().to_vec(),
                    arrows: m
                        .arrow_maps()
                        .iter()
                        .map(|mat| {
                            (0..mat.rows()).map(|r| mat.row(r).iter().map(|s| s.to_string()).collect()).collect()
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds an inventory from its JSON form; every module is validated.
    pub fn from_json(algebra: &Arc<BoundAlgebra>, json: &InventoryJson) -> Result<Self> {
        let q = algebra.quiver();
        let field = algebra.field();
        if json.field != field.to_string() || json.vertices != q.vertices() {
            return Err(Error::Json("inventory belongs to a different algebra".into()));
        }
        let mut modules = Vec::new();
        for mj in &json.modules {
            if mj.arrows.len() != q.arrows().len() {
                return Err(Error::Json("wrong number of arrow matrices".into()));
            }
            let mut maps = Vec::new();
            for (a, rows) in mj.arrows.iter().enumerate() {
                let arr = q.arrow(a);
                let cols = *mj.dims.get(arr.source).ok_or_else(|| Error::Json("short dimension vector".into()))?;
                let parsed: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| field.parse(s).ok_or_else(|| Error::Json(format!("bad scalar `{s}`"))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                if parsed.iter().any(|r| r.len() != cols) {
                    return Err(Error::Json("ragged matrix".into()));
                }
                maps.push(Matrix::from_rows(field, cols, &parsed));
            }
            modules.push(Module::new(algebra, mj.dims.clone(), maps)?);
        }
        Self::from_modules(algebra, modules, json.backend)
    }
}

fn dims_name(modules: &[Module], i: usize) -> String {
    let dims = modules[i].dims();
    let k = modules[..i].iter().filter(|m| m.dims() == dims).count();
    let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    format!("{}#{k}", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InventoryJson {
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<String>,
    pub backend: Backend,
    pub modules: Vec<ModuleJson>,
}

/// Arrow matrices are row lists of exact scalars written as fraction strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub name: String,
    pub dims: Vec<usize>,
    pub arrows: Vec<Vec<Vec<String>>>,
}

fn contains(found: &[Module], x: &Module) -> Result<bool> {
    for y in found {
        if y.dims() == x.dims() && is_isomorphic(x, y)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn knit(algebra: &Arc<BoundAlgebra>, cap: usize) -> Result<Vec<Module>> {
    let bridge = OppositeBridge::new(algebra);
    let mut queue: VecDeque<Module> = (0..algebra.vertex_count()).map(|v| algebra.projective(v)).collect();
    let mut found: Vec<Module> = Vec::new();
    let dimension_limit = KNITTING_DIMENSION_LIMIT.max(algebra.dim());
    while let Some(x) = queue.pop_front() {
        if x.is_zero() || contains(&found, &x)? {
            continue;
        }
        found.push(x.clone());
        if found.len() > cap || x.dim() > dimension_limit {
            return Err(Error::InventoryCapExceeded { cap });
        }
        let proj = is_projective(&x);
        let inj = is_injective(&x);
        if !inj {
            queue.extend(indecomposable_summands(&bridge.tau_inverse(&x))?);
        }
        if proj {
            queue.extend(indecomposable_summands(&radical(&x).0)?);
        } else {
            let t = bridge.tau(&x);
            queue.extend(indecomposable_summands(&almost_split_middle(&x, &t)?)?);
            queue.extend(indecomposable_summands(&t)?);
        }
        if inj {
            queue.extend(indecomposable_summands(&quotient(&x, &socle_spans(&x)).0)?);
        }
    }
    Ok(found)
}

/// Middle term of the almost split sequence `0 -> τY -> E -> Y -> 0`, for `Y`
/// indecomposable non-projective.
pub fn almost_split_middle(y: &Module, tau_y: &Module) -> Result<Module> {
    let field = y.field();
    let cover = projective_cover(y);
    let p0 = &cover.projective.module;
    let (omega, iota) = kernel(&cover.map);
    let h = hom_basis(&omega, tau_y)?;
    let len: usize = omega.dims().iter().zip(tau_y.dims()).map(|(a, b)| a * b).sum();
    // classes of maps ΩY -> τY that extend to P0 represent zero in Ext¹
    let trivial: Vec<Vec<Scalar>> = hom_basis(p0, tau_y)?.maps.iter().map(|g| g.after(&iota).to_vector()).collect();
    let ext = QuotientSpace::new(field, len, &trivial);
    let rad =
        endomorphism_radical(tau_y)?.ok_or_else(|| Error::CheckFailed("translate is not indecomposable".into()))?;
    // the almost split class is killed by rad End(τY)
    let k = h.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in &rad {
        let images: Vec<Vec<Scalar>> = h.maps.iter().map(|g| ext.project(&r.after(g).to_vector())).collect();
        for c in 0..ext.dim() {
            rows.push(images.iter().map(|img| img[c].clone()).collect());
        }
    }
    let candidates: Vec<Vec<Scalar>> = if rows.is_empty() {
        (0..k).map(|i| super::exact::unit(field, k, i)).collect()
    } else {
        kernel_basis(&Matrix::from_rows(field, k, &rows))
    };
    let xi = candidates
        .iter()
        .map(|x| h.combine(x))
        .find(|f| ext.project(&f.to_vector()).iter().any(|s| !s.is_zero()))
        .ok_or_else(|| Error::CheckFailed("no almost split extension found".into()))?;
    let sum = Module::direct_sum(y.algebra(), &[tau_y.clone(), p0.clone()])?;
    let push = ModuleMap::into_sum(&omega, &[xi, iota.scale(&-field.one())], &sum);
    Ok(cokernel(&push).0)
}

fn uniserials(algebra: &Arc<BoundAlgebra>, cap: usize) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for v in 0..algebra.vertex_count() {
        let p = algebra.projective(v);
        for k in 1..=p.dim() {
            out.push(quotient(&p, &radical_power_spans(&p, k)).0);
            if out.len() > cap {
                return Err(Error::InventoryCapExceeded { cap });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra;

    fn alg(text: &str) -> Arc<BoundAlgebra> {
        Arc::new(parse_algebra(text).unwrap())
    }

    fn linear(n: usize) -> Arc<BoundAlgebra> {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<String> = (1..n).map(|i| format!("a{i}: {i} -> {}", i + 1)).collect();
        alg(&format!("vertices: {}\narrows: {}\n", vertices.join(" "), arrows.join(", ")))
    }

    fn truncated_loop(n: usize) -> Arc<BoundAlgebra> {
        let rel = vec!["x"; n].join("*");
        alg(&format!("vertices: 1\narrows: x: 1 -> 1\nrelations: {rel}\n"))
    }

    #[test]
    fn a2_inventory() {
        let a = linear(2);
        for backend in [Backend::Knitting, Backend::Nakayama] {
            let inv = Inventory::build_with(&a, 100, backend).unwrap();
            assert_eq!(inv.len(), 3);
            let mut names = inv.names().to_vec();
            names.sort();
            assert_eq!(names, vec!["P1", "P2", "S1"]);
        }
    }

    #[test]
    fn linear_counts() {
        for n in 1..=4 {
            let a = linear(n);
            for backend in [Backend::Knitting, Backend::Nakayama] {
                assert_eq!(Inventory::build_with(&a, 100, backend).unwrap().len(), n * (n + 1) / 2);
            }
        }
    }

    #[test]
    fn truncated_loop_counts() {
        for n in 2..=4 {
            let a = truncated_loop(n);
            assert_eq!(Inventory::build_with(&a, 100, Backend::Knitting).unwrap().len(), n);
            assert_eq!(Inventory::build(&a, 100).unwrap().len(), n);
        }
    }

    #[test]
    fn backends_agree_on_cyclic_nakayama() {
        let a = alg("vertices: 1 2\narrows: a: 1 -> 2, b: 2 -> 1\nrelations: a*b*a\n");
        let k = Inventory::build_with(&a, 100, Backend::Knitting).unwrap();
        let c = Inventory::build_with(&a, 100, Backend::Nakayama).unwrap();
        assert_eq!(k.len(), c.len());
        for m in c.modules() {
            assert!(k.find(m).unwrap().is_some());
        }
    }

    #[test]
    fn d4_has_twelve() {
        let a = alg("vertices: 1 2 3 4\narrows: a: 1 -> 4, b: 2 -> 4, c: 3 -> 4\n");
        let inv = Inventory::build(&a, 100).unwrap();
        assert_eq!(inv.len(), 12);
        assert!(inv.modules().iter().any(|m| m.dims() == [1, 1, 1, 2]));
    }

    #[test]
    fn cap_is_enforced() {
        let kronecker = alg("vertices: 1 2\narrows: a: 1 -> 2, b: 1 -> 2\n");
        assert!(matches!(Inventory::build(&kronecker, 6), Err(Error::InventoryCapExceeded { cap: 6 })));
        assert!(Inventory::build(&kronecker, DEFAULT_INVENTORY_CAP).is_err());
    }

    #[test]
    fn multiplicities_recover_summands() {
        let a = linear(3);
        let inv = Inventory::build(&a, 100).unwrap();
        let m = Module::direct_sum(&a, &[inv.get(0).clone(), inv.get(4).clone(), inv.get(4).clone()]).unwrap();
        let mult = inv.multiplicities(&m).unwrap();
        let mut expect = vec![0; inv.len()];
        expect[0] = 1;
        expect[4] = 2;
        assert_eq!(mult, expect);
    }

    #[test]
    fn json_round_trip() {
        let a = alg("vertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\nrelations: b*a\n");
        let inv = Inventory::build_with(&a, 100, Backend::Knitting).unwrap();
        assert_eq!(inv.len(), 5);
        let json = inv.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: InventoryJson = serde_json::from_str(&text).unwrap();
        let inv2 = Inventory::from_json(&a, &back).unwrap();
        assert_eq!(inv2.modules(), inv.modules());
        assert_eq!(inv2.names(), inv.names());
    }
}
