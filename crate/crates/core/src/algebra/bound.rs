use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{ParseError, ParseErrorKind};
use crate::linalg::{rref, Field, Matrix, Scalar};

use super::parse::parse_quiver_file;
use super::quiver::{Path, Quiver, Relation};

/// Default bound on the number of paths considered while computing the path basis.
pub const DEFAULT_PATH_CAP: usize = 10_000;

/// Linear combination of path-basis elements, as (basis index, coefficient) pairs.
pub type Combination = Vec<(usize, Scalar)>;

/// A bound quiver algebra kQ/I together with a basis of residue classes of paths.
///
/// Basis paths are sorted by (source, target, length, arrows). Paths of length at
/// least `vanishing_length` are zero.
#[derive(Debug)]
pub struct BoundAlgebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    reductions: HashMap<Path, Combination>,
    vanishing_length: usize,
}

impl PartialEq for BoundAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.basis == other.basis
    }
}

impl Eq for BoundAlgebra {}

pub fn parse_algebra(text: &str) -> Result<BoundAlgebra, ParseError> {
    parse_algebra_with_cap(text, DEFAULT_PATH_CAP)
}

pub fn parse_algebra_with_cap(text: &str, cap: usize) -> Result<BoundAlgebra, ParseError> {
    let file = parse_quiver_file(text)?;
    let line = file.relation_lines.last().copied().unwrap_or(1);
    BoundAlgebra::new(file.field, file.quiver, file.relations, cap).map_err(|kind| ParseError { line, column: 1, kind })
}

impl BoundAlgebra {
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>, cap: usize) -> Result<Self, ParseErrorKind> {
        for r in &relations {
            if r.min_len() < 2 {
                return Err(ParseErrorKind::ShortRelation(format!("{r:?}")));
            }
        }
        let (mut basis, reductions, vanishing_length) = compute_basis(field, &quiver, &relations, cap)?;
        basis.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let reductions = reductions
            .into_iter()
            .map(|(p, combo)| (p, combo.into_iter().map(|(q, c)| (index[&q], c)).collect()))
            .collect();
        Ok(BoundAlgebra { field, quiver, relations, basis, index, reductions, vanishing_length })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn vanishing_length(&self) -> usize {
        self.vanishing_length
    }

    pub fn vertex(&self, label: &str) -> Result<usize, crate::Error> {
        self.quiver.vertex_index(label).ok_or_else(|| crate::Error::UnknownVertex(label.to_string()))
    }

    pub fn basis_index(&self, path: &Path) -> Option<usize> {
        self.index.get(path).copied()
    }

    /// Indices of basis paths from `v` to `w`, in basis order.
    pub fn basis_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == v && self.basis[i].target == w).collect()
    }

    /// The residue class of a path in terms of the basis.
    pub fn residue(&self, path: &Path) -> Combination {
        if path.len() >= self.vanishing_length {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(path) {
            return vec![(i, self.field.one())];
        }
        self.reductions.get(path).cloned().unwrap_or_default()
    }

    /// Product in the algebra, with `b * a` meaning `a` followed by `b`; operands
    /// and result are coordinate vectors in the path basis.
    pub fn multiply(&self, b: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() || self.basis[i].target != self.basis[j].source {
                    continue;
                }
                let coef = ca * cb;
                for (k, c) in self.residue(&self.basis[i].then(&self.basis[j])) {
                    out[k] = &out[k] + &(&coef * &c);
                }
            }
        }
        out
    }

    pub fn is_nakayama(&self) -> bool {
        self.quiver.is_nakayama_shaped()
    }

    /// The opposite algebra, with basis paths reversed.
    pub fn opposite(&self) -> BoundAlgebra {
        let quiver = self.quiver.opposite();
        let relations = self.relations.iter().map(Relation::reversed).collect();
        let mut order: Vec<usize> = (0..self.basis.len()).collect();
        let reversed: Vec<Path> = self.basis.iter().map(Path::reversed).collect();
        order.sort_by(|&a, &b| sort_key(&reversed[a]).cmp(&sort_key(&reversed[b])));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let basis: Vec<Path> = order.iter().map(|&i| reversed[i].clone()).collect();
        let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let reductions = self
            .reductions
            .iter()
            .map(|(p, combo)| (p.reversed(), combo.iter().map(|(i, c)| (new_index[*i], c.clone())).collect()))
            .collect();
        BoundAlgebra {
            field: self.field,
            quiver,
            relations,
            basis,
            index,
            reductions,
            vanishing_length: self.vanishing_length,
        }
    }

    /// All paths of exactly the given length.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        for _ in 0..len {
            layer = extend(&self.quiver, &layer);
        }
        layer
    }
}

impl fmt::Display for BoundAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.basis.iter().map(|p| p.display(&self.quiver).to_string()).collect();
        write!(f, "{}Q/I, dim {} [{}]", self.field, self.dim(), names.join(", "))
    }
}

fn sort_key(p: &Path) -> (usize, usize, usize, &[usize]) {
    (p.source, p.target, p.len(), &p.arrows)
}

fn extend(quiver: &Quiver, layer: &[Path]) -> Vec<Path> {
    let mut next = Vec::new();
    for p in layer {
        for a in quiver.arrows_from(p.target) {
            next.push(p.then(&Path::arrow(quiver, a)));
        }
    }
    next
}

type Reductions = HashMap<Path, Vec<(Path, Scalar)>>;

/// All paths up to some length, stored as a prefix tree. Node ids increase with
/// length and, within a length, follow the lexicographic order of the arrows.
struct PathTrie {
    source: Vec<usize>,
    target: Vec<usize>,
    len: Vec<usize>,
    parent: Vec<usize>,
    last: Vec<usize>,
    children: Vec<Vec<(usize, usize)>>,
    layers: Vec<Vec<usize>>,
}

impl PathTrie {
    fn new(quiver: &Quiver) -> Self {
        let n = quiver.vertex_count();
        PathTrie {
            source: (0..n).collect(),
            target: (0..n).collect(),
            len: vec![0; n],
            parent: vec![usize::MAX; n],
            last: vec![usize::MAX; n],
            children: vec![Vec::new(); n],
            layers: vec![(0..n).collect()],
        }
    }

    fn count(&self) -> usize {
        self.source.len()
    }

    fn next_layer_size(&self, quiver: &Quiver) -> usize {
        let top = self.layers.last().unwrap();
        top.iter().map(|&x| quiver.arrows_from(self.target[x]).count()).sum()
    }

    fn grow(&mut self, quiver: &Quiver) {
        let top = self.layers.last().unwrap().clone();
        let mut layer = Vec::new();
        for x in top {
            for a in quiver.arrows_from(self.target[x]) {
                let id = self.count();
                self.source.push(self.source[x]);
                self.target.push(quiver.arrow(a).target);
                self.len.push(self.len[x] + 1);
                self.parent.push(x);
                self.last.push(a);
                self.children.push(Vec::new());
                self.children[x].push((a, id));
                layer.push(id);
            }
        }
        self.layers.push(layer);
    }

    fn child(&self, x: usize, a: usize) -> Option<usize> {
        self.children[x].iter().find(|(b, _)| *b == a).map(|&(_, c)| c)
    }

    fn walk(&self, mut x: usize, arrows: &[usize]) -> Option<usize> {
        for &a in arrows {
            x = self.child(x, a)?;
        }
        Some(x)
    }

    fn path(&self, mut x: usize) -> Path {
        let (source, target) = (self.source[x], self.target[x]);
        let mut arrows = Vec::with_capacity(self.len[x]);
        while self.len[x] > 0 {
            arrows.push(self.last[x]);
            x = self.parent[x];
        }
        arrows.reverse();
        Path { source, target, arrows }
    }
}

/// Computes the path basis by reducing modulo I + J^m for increasing m until every
/// path of length m - 1 vanishes. Shorter paths are expressed through longer ones.
fn compute_basis(
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    cap: usize,
) -> Result<(Vec<Path>, Reductions, usize), ParseErrorKind> {
    let mut trie = PathTrie::new(quiver);
    if trie.count() > cap {
        return Err(ParseErrorKind::NonAdmissible { cap });
    }
    // the trie holds all paths of length < m
    let mut m = 1;
    loop {
        // grow at least one layer, and up to twice the length while under the cap
        let target = (2 * m).max(2);
        while trie.layers.len() < target {
            let size = trie.next_layer_size(quiver);
            if trie.count() + size > cap {
                break;
            }
            trie.grow(quiver);
        }
        if trie.layers.len() == m {
            return Err(ParseErrorKind::NonAdmissible { cap });
        }
        m = trie.layers.len();
        let (free, reductions) = reduce_truncated(field, &trie, relations, m);
        let top_vanishes = trie.layers[m - 1].iter().all(|x| reductions.get(x).is_some_and(|c| c.is_empty()));
        if top_vanishes {
            let basis: Vec<Path> = free.into_iter().filter(|&x| trie.len[x] < m - 1).map(|x| trie.path(x)).collect();
            // longer paths reduce to combinations of even longer ones, hence to zero
            let vanishing = basis.iter().map(|p| p.len() + 1).max().unwrap_or(1);
            let reductions = reductions
                .into_iter()
                .filter(|(x, _)| trie.len[*x] < vanishing)
                .map(|(x, combo)| (trie.path(x), combo.into_iter().map(|(y, c)| (trie.path(y), c)).collect()))
                .collect();
            return Ok((basis, reductions, vanishing));
        }
    }
}

type NodeCombination = Vec<(usize, Scalar)>;

fn reduce_truncated(
    field: Field,
    trie: &PathTrie,
    relations: &[Relation],
    m: usize,
) -> (Vec<usize>, HashMap<usize, NodeCombination>) {
    let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for x in 0..trie.count() {
        blocks.entry((trie.source[x], trie.target[x])).or_default().push(x);
    }
    let mut gens: BTreeMap<(usize, usize), Vec<NodeCombination>> = BTreeMap::new();
    for r in relations {
        let ml = r.min_len();
        if ml >= m {
            continue;
        }
        for q in (0..trie.count()).filter(|&q| trie.target[q] == r.source() && trie.len[q] + ml < m) {
            let starts: Vec<Option<usize>> = r
                .terms
                .iter()
                .map(|(_, t)| if trie.len[q] + t.len() < m { trie.walk(q, &t.arrows) } else { None })
                .collect();
            // depth-first over continuations p, tracking the node of q·t·p per term
            let mut stack = vec![(r.target(), starts)];
            while let Some((p, nodes)) = stack.pop() {
                let row: NodeCombination =
                    r.terms.iter().zip(&nodes).filter_map(|((c, _), x)| x.map(|x| (x, c.clone()))).collect();
                if !row.is_empty() {
                    gens.entry((trie.source[q], trie.target[p])).or_default().push(row);
                }
                if trie.len[q] + ml + trie.len[p] + 1 >= m {
                    continue;
                }
                for &(a, child) in &trie.children[p] {
                    let next: Vec<Option<usize>> = nodes.iter().map(|x| x.and_then(|x| trie.child(x, a))).collect();
                    stack.push((child, next));
                }
            }
        }
    }

    let mut free = Vec::new();
    let mut reductions = HashMap::new();
    for (key, cols) in blocks {
        // node ids are already ordered by (length, arrows)
        let rows = gens.remove(&key).unwrap_or_default();
        if rows.is_empty() {
            free.extend(cols);
            continue;
        }
        let col_of: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mat = Matrix::zeros(field, rows.len(), cols.len());
        for (i, terms) in rows.iter().enumerate() {
            for (x, c) in terms {
                let j = col_of[x];
                mat[(i, j)] = &mat[(i, j)] + c;
            }
        }
        let reduced = rref(&mat);
        let mut is_pivot = vec![false; cols.len()];
        for &p in &reduced.pivots {
            is_pivot[p] = true;
        }
        for (row, &pc) in reduced.pivots.iter().enumerate() {
            let combo: NodeCombination = (0..cols.len())
                .filter(|&j| !is_pivot[j] && !reduced.matrix[(row, j)].is_zero())
                .map(|j| (cols[j], -&reduced.matrix[(row, j)]))
                .collect();
            reductions.insert(cols[pc], combo);
        }
        free.extend((0..cols.len()).filter(|&j| !is_pivot[j]).map(|j| cols[j]));
    }
    (free, reductions)
}
