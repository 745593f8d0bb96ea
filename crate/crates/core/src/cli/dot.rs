use std::fmt::Write;

use crate::error::Result;
use crate::tautilt::{Subcat, TauContext};

/// A rendered DOT digraph with its size.
#[derive(Clone, Debug)]
pub struct Graph {
    pub dot: String,
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

fn label(ctx: &TauContext, s: &Subcat) -> String {
    format!("{{{}}}", ctx.names(s).join(" "))
}

fn render(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the torsion classes `Fac P(S) = S`, with an edge from each
/// class to the classes it covers.
pub fn tors_hasse(ctx: &TauContext) -> Result<Graph> {
    let classes = ctx.enumerate_fac_fixed_points()?;
    let mut edges = Vec::new();
    for (i, big) in classes.iter().enumerate() {
        for (j, small) in classes.iter().enumerate() {
            if i == j || !small.is_subset(big) {
                continue;
            }
            let covered =
                !classes.iter().any(|mid| mid != big && mid != small && small.is_subset(mid) && mid.is_subset(big));
            if covered {
                edges.push((i, j));
            }
        }
    }
    let labels: Vec<String> = classes.iter().map(|s| label(ctx, s)).collect();
    Ok(Graph { dot: render("tors", &labels, &edges), nodes: classes.len(), edges })
}

/// Exchange graph of support τ-tilting subcategories. Each `M` is completed by
/// the shifted projectives `P_v[1]` with `Hom(P_v, M) = 0`; two nodes are joined
/// when the completed sets differ in one summand, oriented from the larger
/// torsion class `Fac M` to the smaller.
pub fn stt_exchange(ctx: &TauContext) -> Result<Graph> {
    let stt = ctx.support_tau_tilting_list()?.to_vec();
    let labels_v = ctx.algebra().quiver().vertices();
    let pairs: Vec<Vec<String>> = stt
        .iter()
        .map(|m| {
            let mut items = ctx.names(m);
            for (v, label) in labels_v.iter().enumerate() {
                if m.iter().all(|i| ctx.module(i).dims()[v] == 0) {
                    items.push(format!("P{label}[1]"));
                }
            }
            items
        })
        .collect();
    let facs: Vec<Subcat> = stt.iter().map(|m| ctx.fac(m)).collect();
    let mut edges = Vec::new();
    for i in 0..stt.len() {
        for j in 0..stt.len() {
            let shared = pairs[i].iter().filter(|x| pairs[j].contains(x)).count();
            let one_apart = shared + 1 == pairs[i].len() && shared + 1 == pairs[j].len();
            if i != j && one_apart && facs[j].is_subset(&facs[i]) {
                edges.push((i, j));
            }
        }
    }
    let labels: Vec<String> = pairs.iter().map(|p| format!("{{{}}}", p.join(" "))).collect();
    Ok(Graph { dot: render("exchange", &labels, &edges), nodes: stt.len(), edges })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::parse_algebra;

    fn a2() -> TauContext {
        TauContext::build(&Arc::new(parse_algebra("vertices: 1 2\narrows: a: 1 -> 2\n").unwrap()), 100).unwrap()
    }

    #[test]
    fn a2_pentagon() {
        let c = a2();
        let g = stt_exchange(&c).unwrap();
        assert_eq!(g.nodes, 5);
        assert_eq!(g.edges.len(), 5);
        let mut degree = [0; 5];
        for (a, b) in &g.edges {
            degree[*a] += 1;
            degree[*b] += 1;
        }
        assert!(degree.iter().all(|&d| d == 2));
        assert!(g.dot.starts_with("digraph exchange {"));
    }

    #[test]
    fn a2_hasse_matches_exchange() {
        let c = a2();
        let h = tors_hasse(&c).unwrap();
        assert_eq!(h.nodes, 5);
        assert_eq!(h.edges.len(), 5);
    }
}
