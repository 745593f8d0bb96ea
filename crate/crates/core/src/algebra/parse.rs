//! Reader for the quiver file format.
//!
//! ```text
//! field: Q            # or F5, F7, ...
//! vertices: 1 2 3
//! arrows: a: 1 -> 2, b: 2 -> 3
//! relations: b*a      # b*a means a, then b
//! ```

use crate::error::{ParseError, ParseErrorKind};
use crate::linalg::{is_prime, Field, Scalar};

use super::quiver::{Arrow, Path, Quiver, Relation};

/// Syntactic content of a quiver file, before the path basis is computed.
#[derive(Clone, Debug)]
pub struct QuiverFile {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// Line of each relation, for error reporting.
    pub relation_lines: Vec<usize>,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        let column = self.text[..offset.min(self.text.len())].chars().count() + 1;
        ParseError { line: self.number, column, kind }
    }

    fn syntax(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        self.err(offset, ParseErrorKind::Syntax(msg.into()))
    }
}

fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `s` (which starts at byte `base` of the line) on `sep`, yielding trimmed
/// pieces with their line offsets.
fn split_items(s: &str, base: usize, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), sep))) {
        if c == sep {
            let piece = &s[start..i];
            let lead = piece.len() - piece.trim_start().len();
            out.push((base + start + lead, piece.trim()));
            start = i + c.len_utf8();
        }
    }
    out
}

pub fn parse_quiver_file(text: &str) -> Result<QuiverFile, ParseError> {
    let mut field: Option<Field> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut raw_arrows: Vec<(usize, usize, String, String, String)> = Vec::new();
    let mut raw_relations: Vec<(usize, usize, String)> = Vec::new();
    let mut lines_text: Vec<&str> = Vec::new();

    for (i, full) in text.lines().enumerate() {
        lines_text.push(full);
        let line = Line { number: i + 1, text: full };
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let lead = content.len() - content.trim_start().len();
            return Err(line.syntax(lead, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value = &content[colon + 1..];
        let vbase = colon + 1;
        match key {
            "field" => {
                let lead = value.len() - value.trim_start().len();
                let v = value.trim();
                let f = parse_field(v).ok_or_else(|| {
                    line.syntax(vbase + lead, format!("unknown field `{v}` (use Q or Fp with p prime)"))
                })?;
                if field.is_some() {
                    return Err(line.syntax(0, "field declared twice"));
                }
                field = Some(f);
            }
            "vertices" => {
                let mut offset = vbase;
                for tok in value.split(|c: char| c.is_whitespace() || c == ',') {
                    let here = offset;
                    offset += tok.len() + 1;
                    if tok.is_empty() {
                        continue;
                    }
                    if !tok.chars().all(is_label_char) {
                        return Err(line.syntax(here, format!("invalid vertex label `{tok}`")));
                    }
                    if vertices.iter().any(|v| v == tok) {
                        return Err(line.syntax(here, format!("duplicate vertex `{tok}`")));
                    }
                    vertices.push(tok.to_string());
                }
            }
            "arrows" => {
                for (off, item) in split_items(value, vbase, ',') {
                    if item.is_empty() {
                        continue;
                    }
                    let Some(c) = item.find(':') else {
                        return Err(line.syntax(off, "expected `label: source -> target`"));
                    };
                    let label = item[..c].trim();
                    let rest = &item[c + 1..];
                    let Some(arrow_pos) = rest.find("->") else {
                        return Err(line.syntax(off + c + 1, "expected `->`"));
                    };
                    let src = rest[..arrow_pos].trim();
                    let tgt = rest[arrow_pos + 2..].trim();
                    let label_ok = label.chars().next().is_some_and(|ch| ch.is_alphabetic() || ch == '_')
                        && label.chars().all(is_label_char);
                    if !label_ok {
                        return Err(line.syntax(off, format!("invalid arrow label `{label}`")));
                    }
                    for (name, pos) in [(src, off + c + 1), (tgt, off + c + 1 + arrow_pos + 2)] {
                        if name.is_empty() || !name.chars().all(is_label_char) {
                            return Err(line.syntax(pos, format!("invalid vertex `{name}`")));
                        }
                    }
                    raw_arrows.push((line.number, off, label.into(), src.into(), tgt.into()));
                }
            }
            "relations" => {
                for (off, item) in split_items(value, vbase, ',') {
                    if !item.is_empty() {
                        raw_relations.push((line.number, off, item.to_string()));
                    }
                }
            }
            other => {
                let lead = content.len() - content.trim_start().len();
                return Err(line.syntax(lead, format!("unknown key `{other}`")));
            }
        }
    }

    let field = field.unwrap_or(Field::Rational);
    let line_of = |n: usize| Line { number: n, text: lines_text[n - 1] };

    let mut arrows = Vec::new();
    for (n, off, label, src, tgt) in raw_arrows {
        let l = line_of(n);
        if arrows.iter().any(|a: &Arrow| a.label == label) {
            return Err(l.syntax(off, format!("duplicate arrow `{label}`")));
        }
        let lookup = |name: &str| {
            vertices.iter().position(|v| v == name).ok_or_else(|| l.syntax(off, format!("undeclared vertex `{name}`")))
        };
        let source = lookup(&src)?;
        let target = lookup(&tgt)?;
        arrows.push(Arrow { label, source, target });
    }
    if vertices.is_empty() {
        return Err(ParseError {
            line: lines_text.len().max(1),
            column: 1,
            kind: ParseErrorKind::Syntax("no vertices declared".into()),
        });
    }
    let quiver = Quiver::new(vertices, arrows).map_err(|m| ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Syntax(m),
    })?;

    let mut relations = Vec::new();
    let mut relation_lines = Vec::new();
    for (n, off, item) in raw_relations {
        let l = line_of(n);
        relations.push(parse_relation(&l, off, &item, field, &quiver)?);
        relation_lines.push(n);
    }
    Ok(QuiverFile { field, quiver, relations, relation_lines })
}

fn parse_field(s: &str) -> Option<Field> {
    if s == "Q" || s == "QQ" {
        return Some(Field::Rational);
    }
    let digits = s.strip_prefix('F').or_else(|| s.strip_prefix("GF"))?;
    let p: u64 = digits.parse().ok()?;
    is_prime(p).then_some(Field::Prime(p))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Star,
    Plus,
    Minus,
    Slash,
}

fn tokenize(l: &Line<'_>, base: usize, s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let pos = base + i;
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '*' => {
                chars.next();
                out.push((pos, Tok::Star));
            }
            '+' => {
                chars.next();
                out.push((pos, Tok::Plus));
            }
            '-' => {
                chars.next();
                out.push((pos, Tok::Minus));
            }
            '/' => {
                chars.next();
                out.push((pos, Tok::Slash));
            }
            c if c.is_ascii_digit() => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Num(s[i..end].to_string())));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if is_label_char(d) {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(s[i..end].to_string())));
            }
            other => return Err(l.syntax(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

fn parse_relation(
    l: &Line<'_>,
    base: usize,
    text: &str,
    field: Field,
    quiver: &Quiver,
) -> Result<Relation, ParseError> {
    let toks = tokenize(l, base, text)?;
    let end = base + text.len();
    let mut i = 0;
    let mut terms: Vec<(Scalar, Path)> = Vec::new();
    let mut first = true;
    while i < toks.len() || first {
        let mut sign = field.one();
        match toks.get(i) {
            Some((_, Tok::Plus)) => i += 1,
            Some((_, Tok::Minus)) => {
                sign = -&sign;
                i += 1;
            }
            Some((p, _)) if !first => return Err(l.syntax(*p, "expected `+` or `-`")),
            _ => {}
        }
        first = false;
        let mut coef = field.one();
        if let Some((p, Tok::Num(n))) = toks.get(i) {
            let mut lit = n.clone();
            i += 1;
            if let Some((_, Tok::Slash)) = toks.get(i) {
                i += 1;
                match toks.get(i) {
                    Some((_, Tok::Num(d))) => {
                        lit = format!("{lit}/{d}");
                        i += 1;
                    }
                    Some((q, _)) => return Err(l.syntax(*q, "expected denominator")),
                    None => return Err(l.syntax(end, "expected denominator")),
                }
            }
            coef = field.parse(&lit).ok_or_else(|| l.syntax(*p, format!("invalid coefficient `{lit}`")))?;
            if let Some((_, Tok::Star)) = toks.get(i) {
                i += 1;
            }
        }
        // path: ident (* ident)*
        let mut labels: Vec<(usize, String)> = Vec::new();
        loop {
            match toks.get(i) {
                Some((p, Tok::Ident(name))) => {
                    labels.push((*p, name.clone()));
                    i += 1;
                }
                Some((p, _)) => return Err(l.syntax(*p, "expected arrow label")),
                None => return Err(l.syntax(end, "expected arrow label")),
            }
            if let Some((_, Tok::Star)) = toks.get(i) {
                i += 1;
            } else {
                break;
            }
        }
        let start = labels[0].0;
        let mut arrows = Vec::new();
        for (p, name) in labels.iter().rev() {
            let a = quiver.arrow_index(name).ok_or_else(|| l.syntax(*p, format!("unknown arrow `{name}`")))?;
            arrows.push((a, *p));
        }
        for w in arrows.windows(2) {
            let (a, _) = w[0];
            let (b, pb) = w[1];
            if quiver.arrow(a).target != quiver.arrow(b).source {
                return Err(
                    l.syntax(pb, format!("`{}` does not follow `{}`", quiver.arrow(b).label, quiver.arrow(a).label))
                );
            }
        }
        let path = Path {
            source: quiver.arrow(arrows[0].0).source,
            target: quiver.arrow(arrows.last().unwrap().0).target,
            arrows: arrows.iter().map(|(a, _)| *a).collect(),
        };
        if path.len() < 2 {
            return Err(l.err(start, ParseErrorKind::ShortRelation(text.to_string())));
        }
        if let Some((_, p0)) = terms.first() {
            if p0.source != path.source || p0.target != path.target {
                return Err(l.syntax(start, "paths in a relation must be parallel"));
            }
        }
        let c = &sign * &coef;
        match terms.iter_mut().find(|(_, p)| *p == path) {
            Some((existing, _)) => *existing = &*existing + &c,
            None => terms.push((c, path)),
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    if terms.is_empty() {
        return Err(l.syntax(base, "relation has no nonzero terms"));
    }
    Ok(Relation { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_linear_a3() {
        let f = parse_quiver_file("field: Q\nvertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\nrelations: b*a  # zero\n")
            .unwrap();
        assert_eq!(f.quiver.vertex_count(), 3);
        assert_eq!(f.quiver.arrows().len(), 2);
        assert_eq!(f.relations.len(), 1);
        assert_eq!(f.relations[0].terms[0].1.arrows, vec![0, 1]);
    }

    #[test]
    fn reads_linear_combination() {
        let f = parse_quiver_file(
            "field: F5\nvertices: 1 2 3 4\narrows: a: 1 -> 2, b: 2 -> 4, c: 1 -> 3, d: 3 -> 4\nrelations: b*a - 2/3 d*c\n",
        )
        .unwrap();
        assert_eq!(f.field, Field::Prime(5));
        let r = &f.relations[0];
        assert_eq!(r.terms.len(), 2);
        // -2/3 = -2 * 2 = -4 = 1 mod 5
        assert!(r.terms[1].0.is_one());
    }

    #[test]
    fn reports_positions() {
        let e = parse_quiver_file("vertices: 1 2\narrows: a: 1 -> 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_quiver_file("vertices: 1\narrows: x: 1 -> 1\nrelations: x * y\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 16));
        let e = parse_quiver_file("vertices 1 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_quiver_file("field: F6\nvertices: 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
    }

    #[test]
    fn rejects_short_relation() {
        let e = parse_quiver_file("vertices: 1 2\narrows: a: 1 -> 2\nrelations: a\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ShortRelation(_)));
    }

    #[test]
    fn rejects_non_composable() {
        let e = parse_quiver_file("vertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\nrelations: a*b\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn cancelling_terms_are_rejected() {
        let e = parse_quiver_file("vertices: 1\narrows: x: 1 -> 1\nrelations: x*x - x*x\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }
}
