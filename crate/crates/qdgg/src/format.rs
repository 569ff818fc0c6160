//! JSON interchange and DOT export.

use std::fmt::Write;

use qdgg_core::{PairBuilder, QDGGPair, QPoly, Side};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// `(src, dst, ascending coefficients)`; `src` indexes level `l`, `dst` level `l + 1`.
type EdgeRow = (usize, usize, Vec<i64>);

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    r: u32,
    height: usize,
    levels: Vec<Vec<String>>,
    gamma_edges: Vec<Vec<EdgeRow>>,
    gamma_prime_edges: Vec<Vec<EdgeRow>>,
}

fn edge_rows<P>(pair: &QDGGPair<P>, side: Side) -> Vec<Vec<EdgeRow>> {
    let edges = pair.graph(side).edges();
    (0..pair.height())
        .map(|level| {
            edges
                .level_edges(level)
                .map(|(src, dst, w)| (src, dst, w.coeffs().to_vec()))
                .collect()
        })
        .collect()
}

/// Serializes a pair as one line of JSON followed by a newline.
pub fn to_json<P>(pair: &QDGGPair<P>) -> Result<String> {
    let doc = PairJson {
        r: pair.r(),
        height: pair.height(),
        levels: (0..pair.levels().count())
            .map(|l| pair.levels().keys(l).to_vec())
            .collect(),
        gamma_edges: edge_rows(pair, Side::Gamma),
        gamma_prime_edges: edge_rows(pair, Side::GammaPrime),
    };
    let mut out = serde_json::to_string(&doc)?;
    out.push('\n');
    Ok(out)
}

/// Parses [`to_json`] output back into a pair keyed by vertex strings. All
/// graph invariants are revalidated.
pub fn from_json(text: &str) -> Result<QDGGPair<String>> {
    let doc: PairJson = serde_json::from_str(text)?;
    if doc.levels.len() != doc.height + 1 {
        return Err(CliError::Format(format!(
            "height {} but {} levels",
            doc.height,
            doc.levels.len()
        )));
    }
    for (name, edges) in [
        ("gamma_edges", &doc.gamma_edges),
        ("gamma_prime_edges", &doc.gamma_prime_edges),
    ] {
        if edges.len() != doc.height {
            return Err(CliError::Format(format!(
                "{name} has {} levels, expected {}",
                edges.len(),
                doc.height
            )));
        }
    }
    let mut b = PairBuilder::new(doc.r);
    for keys in doc.levels {
        b.push_level(keys)?;
    }
    for (side, edges) in [
        (Side::Gamma, doc.gamma_edges),
        (Side::GammaPrime, doc.gamma_prime_edges),
    ] {
        for (level, rows) in edges.into_iter().enumerate() {
            for (src, dst, coeffs) in rows {
                b.add_edge(side, level, src, dst, QPoly::from_coeffs(coeffs))?;
            }
        }
    }
    Ok(b.finish())
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Both graphs in one digraph: `Γ` edges solid, `Γ′` edges dashed, ranked by
/// height. Nodes are named `level:index` and labelled by key.
pub fn to_dot<P>(pair: &QDGGPair<P>) -> String {
    let mut out = String::from("digraph qdgg {\n  rankdir=BT;\n  node [shape=box];\n");
    for level in 0..pair.levels().count() {
        let _ = write!(out, "  {{ rank=same;");
        for (i, key) in pair.levels().keys(level).iter().enumerate() {
            let _ = write!(
                out,
                " {} [label={}];",
                quoted(&format!("{level}:{i}")),
                quoted(key)
            );
        }
        out.push_str(" }\n");
    }
    for (side, style) in [(Side::Gamma, "solid"), (Side::GammaPrime, "dashed")] {
        let edges = pair.graph(side).edges();
        for level in 0..pair.height() {
            for (src, dst, w) in edges.level_edges(level) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [style={style}, label={}];",
                    quoted(&format!("{level}:{src}")),
                    quoted(&format!("{}:{dst}", level + 1)),
                    quoted(&w.to_string())
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The compact polynomial grammar used in tables: `1+2q+2q^2+q^3`.
pub fn compact(p: &QPoly) -> String {
    p.to_string().replace([' ', '*'], "")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdgg_core::permutations::perm_graphs;
    use qdgg_core::VertexKey;

    #[test]
    fn json_shape() {
        let pair = perm_graphs(2).unwrap();
        let text = to_json(&pair).unwrap();
        assert!(text.starts_with(r#"{"r":1,"height":2,"levels":[["∅"],["1"],["12","21"]],"gamma_edges":[[[0,0,[1]]],[[0,0,[1]],[0,1,[0,1]]]]"#));
        let back = from_json(&text).unwrap();
        assert_eq!(to_json(&back).unwrap(), text);
        assert!(pair.diff_by_key(&back).is_empty());
    }

    #[test]
    fn json_rejects_inconsistent_input() {
        let bad_height =
            r#"{"r":1,"height":1,"levels":[["∅"]],"gamma_edges":[],"gamma_prime_edges":[]}"#;
        assert!(matches!(from_json(bad_height), Err(CliError::Format(_))));
        let zero_weight = r#"{"r":1,"height":1,"levels":[["∅"],["1"]],"gamma_edges":[[[0,0,[]]]],"gamma_prime_edges":[[[0,0,[1]]]]}"#;
        assert!(matches!(from_json(zero_weight), Err(CliError::Core(_))));
        let dup = r#"{"r":1,"height":1,"levels":[["∅"],["a","a"]],"gamma_edges":[[]],"gamma_prime_edges":[[]]}"#;
        assert!(matches!(from_json(dup), Err(CliError::Core(_))));
        assert!(matches!(from_json("{"), Err(CliError::Json(_))));
    }

    #[test]
    fn dot_styles() {
        let pair = perm_graphs(2).unwrap();
        let dot = to_dot(&pair);
        assert!(dot.contains(r#""1:0" -> "2:1" [style=solid, label="q"];"#));
        assert!(dot.contains(r#""1:0" -> "2:1" [style=dashed, label="1"];"#));
        assert!(dot.contains(r#""2:1" [label="21"];"#));
        assert_eq!(dot.matches("->").count(), 2 * 3);
        assert_eq!(quoted(r#"a"b\"#), r#""a\"b\\""#);
        assert_eq!(
            pair.levels().keys(0)[0],
            qdgg_core::permutations::Permutation::identity(0).key()
        );
    }

    #[test]
    fn compact_form() {
        let p = QPoly::from_coeffs(vec![1, 2, 2, 1]);
        assert_eq!(compact(&p), "1+2q+2q^2+q^3");
        assert_eq!(compact(&p).parse::<QPoly>().unwrap(), p);
        assert_eq!(compact(&QPoly::from_coeffs(vec![0, -1, 0, 3])), "-q+3q^3");
    }
}
