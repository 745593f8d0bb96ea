use crate::error::{Error, Result};
use crate::tautilt::{Subcat, TauContext};

/// Parses a subcategory given by member names.
///
/// Members are separated by `;` or `,`. A member is one of
/// - an inventory name such as `P1`, `S2`, `I3` or `1,1,0#0`;
/// - `P`, `S` or `I` alone when the quiver has a single vertex;
/// - a dimension vector `d1,...,dn`, optionally followed by `#k` to pick the
///   `k`-th member with that vector;
/// - `#i` for the inventory member with index `i`.
///
/// The empty string is the zero subcategory.
pub fn parse_members(ctx: &TauContext, text: &str) -> Result<Subcat> {
    let n = ctx.algebra().vertex_count();
    let tokens: Vec<&str> = text.split([';', ',']).map(str::trim).filter(|t| !t.is_empty()).collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        let tok = tokens[k];
        if tok.starts_with(|c: char| c.is_ascii_digit()) && n > 0 {
            let end = k + n;
            if end > tokens.len() {
                return Err(Error::UnknownMember(tokens[k..].join(",")));
            }
            let spelled = tokens[k..end].join(",");
            out.push(by_dims(ctx, &tokens[k..end], &spelled)?);
            k = end;
        } else {
            out.push(by_name(ctx, tok)?);
            k += 1;
        }
    }
    Ok(Subcat::new(out))
}

fn by_name(ctx: &TauContext, tok: &str) -> Result<usize> {
    if let Some(i) = (0..ctx.len()).find(|&i| ctx.name(i) == tok) {
        return Ok(i);
    }
    if let Some(index) = tok.strip_prefix('#') {
        return index
            .parse::<usize>()
            .ok()
            .filter(|&i| i < ctx.len())
            .ok_or_else(|| Error::UnknownMember(tok.to_string()));
    }
    let labels = ctx.algebra().quiver().vertices();
    let (kind, vertex) = match tok.split_at_checked(1) {
        Some((kind, "")) if labels.len() == 1 => (kind, Some(0)),
        Some((kind, label)) => (kind, ctx.algebra().quiver().vertex_index(label)),
        None => (tok, None),
    };
    if let (Some(v), true) = (vertex, matches!(kind, "P" | "S" | "I")) {
        let alg = ctx.algebra();
        let m = match kind {
            "P" => alg.projective(v),
            "S" => alg.simple(v),
            _ => alg.injective(v),
        };
        return ctx.inventory().find(&m)?.ok_or_else(|| Error::UnknownMember(tok.to_string()));
    }
    Err(Error::UnknownMember(tok.to_string()))
}

fn by_dims(ctx: &TauContext, parts: &[&str], spelled: &str) -> Result<usize> {
    let unknown = || Error::UnknownMember(spelled.to_string());
    let last = parts[parts.len() - 1];
    let (last, pick) = match last.split_once('#') {
        Some((d, k)) => (d, Some(k.parse::<usize>().map_err(|_| unknown())?)),
        None => (last, None),
    };
    let mut dims = Vec::with_capacity(parts.len());
    for p in &parts[..parts.len() - 1] {
        dims.push(p.parse::<usize>().map_err(|_| unknown())?);
    }
    dims.push(last.trim().parse::<usize>().map_err(|_| unknown())?);
    let matching: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.module(i).dims() == dims.as_slice()).collect();
    match pick {
        Some(k) => matching.get(k).copied().ok_or_else(unknown),
        None if matching.len() == 1 => Ok(matching[0]),
        None => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::parse_algebra;

    fn ctx(text: &str) -> TauContext {
        TauContext::build(&Arc::new(parse_algebra(text).unwrap()), 100).unwrap()
    }

    fn names(c: &TauContext, s: &Subcat) -> Vec<String> {
        c.names(s)
    }

    #[test]
    fn names_and_vectors() {
        let c = ctx("vertices: 1 2\narrows: a: 1 -> 2\n");
        let ps = parse_members(&c, "P1,S1").unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(parse_members(&c, "S1;P1").unwrap(), ps);
        assert_eq!(parse_members(&c, "").unwrap(), Subcat::zero());
        assert_eq!(parse_members(&c, "1,1").unwrap(), parse_members(&c, "P1").unwrap());
        assert_eq!(parse_members(&c, "1,1#0; 0,1").unwrap(), parse_members(&c, "P1, P2").unwrap());
        assert_eq!(parse_members(&c, "I2").unwrap(), parse_members(&c, "P1").unwrap());
        assert_eq!(parse_members(&c, "#0").unwrap().len(), 1);
        for bad in ["X9", "2,2", "1", "#7", "1,1#1", "P3"] {
            assert!(matches!(parse_members(&c, bad), Err(Error::UnknownMember(_))), "{bad}");
        }
    }

    #[test]
    fn single_vertex_shorthand() {
        let c = ctx("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x\n");
        assert_eq!(names(&c, &parse_members(&c, "S").unwrap()), vec!["S1"]);
        assert_eq!(parse_members(&c, "I").unwrap(), parse_members(&c, "P").unwrap());
    }
}
