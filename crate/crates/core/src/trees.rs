//! The pair `(Tree, Tree′)` on plane binary trees.
//!
//! `Tree` joins `T` to `SG(T, i)` with weight `q^i`; `Tree′` joins `T*`
//! (leftmost leaf removed) to `T` with weight 1.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded_graph::{PairBuilder, QDGGPair, Side, VertexKey, EMPTY_KEY};
use crate::permutations::{all_permutations, inversions, Permutation};
use crate::qpoly::{q_factorial, QPoly};

/// A plane binary tree below its implicit unary root. `Leaf` alone is the
/// empty tree `∅`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneBinaryTree {
    Leaf,
    Node(Box<PlaneBinaryTree>, Box<PlaneBinaryTree>),
}

use PlaneBinaryTree::{Leaf, Node};

impl PlaneBinaryTree {
    pub fn empty() -> Self {
        Leaf
    }

    pub fn node(left: PlaneBinaryTree, right: PlaneBinaryTree) -> Self {
        Node(Box::new(left), Box::new(right))
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => l.size() + r.size() + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Leaf)
    }

    /// Parses the key form: `(` left `)` right, with `∅` or `` for the empty tree.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == EMPTY_KEY {
            return Ok(Leaf);
        }
        let bytes = text.as_bytes();
        let (tree, rest) =
            parse_seq(bytes).ok_or_else(|| Error::Parse(alloc::format!("bad tree {text:?}")))?;
        if rest != bytes.len() {
            return Err(Error::Parse(alloc::format!("bad tree {text:?}")));
        }
        Ok(tree)
    }

    fn write_key(&self, out: &mut String) {
        if let Node(l, r) = self {
            out.push('(');
            l.write_key(out);
            out.push(')');
            r.write_key(out);
        }
    }
}

/// Parses a balanced word from the start of `bytes`; returns the tree and the
/// offset where parsing stopped.
fn parse_seq(bytes: &[u8]) -> Option<(PlaneBinaryTree, usize)> {
    fn go(bytes: &[u8], pos: usize) -> Option<(PlaneBinaryTree, usize)> {
        match bytes.get(pos) {
            None | Some(b')') => Some((Leaf, pos)),
            Some(b'(') => {
                let (l, pos) = go(bytes, pos + 1)?;
                if bytes.get(pos) != Some(&b')') {
                    return None;
                }
                let (r, pos) = go(bytes, pos + 1)?;
                Some((PlaneBinaryTree::node(l, r), pos))
            }
            Some(_) => None,
        }
    }
    go(bytes, 0)
}

impl VertexKey for PlaneBinaryTree {
    fn key(&self) -> String {
        if self.is_empty() {
            return String::from(EMPTY_KEY);
        }
        let mut out = String::new();
        self.write_key(&mut out);
        out
    }
}

impl core::fmt::Display for PlaneBinaryTree {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.key())
    }
}

/// `T1 ∨ T2`.
pub fn graft(t1: PlaneBinaryTree, t2: PlaneBinaryTree) -> PlaneBinaryTree {
    PlaneBinaryTree::node(t1, t2)
}

/// Cuts `t` along the path from leaf `i` to the root.
pub fn splice(t: &PlaneBinaryTree, i: usize) -> Result<(PlaneBinaryTree, PlaneBinaryTree)> {
    let p = t.size();
    if i > p {
        return Err(Error::ArgumentOutOfRange {
            what: "leaf",
            value: i,
            max: p,
        });
    }
    Ok(splice_at(t, i))
}

fn splice_at(t: &PlaneBinaryTree, i: usize) -> (PlaneBinaryTree, PlaneBinaryTree) {
    match t {
        Leaf => (Leaf, Leaf),
        Node(l, r) => {
            let ls = l.size();
            if i <= ls {
                let (l1, l2) = splice_at(l, i);
                (l1, PlaneBinaryTree::node(l2, (**r).clone()))
            } else {
                let (r1, r2) = splice_at(r, i - ls - 1);
                (PlaneBinaryTree::node((**l).clone(), r1), r2)
            }
        }
    }
}

/// `SG(T, i)`: splice at leaf `i`, then graft the halves.
pub fn sg(t: &PlaneBinaryTree, i: usize) -> Result<PlaneBinaryTree> {
    let (t1, t2) = splice(t, i)?;
    Ok(graft(t1, t2))
}

/// `T*`: drops leaf 0 and the internal node it hangs from.
pub fn remove_leftmost(t: &PlaneBinaryTree) -> Result<PlaneBinaryTree> {
    match t {
        Leaf => Err(Error::Empty("tree")),
        Node(l, r) if l.is_empty() => Ok((**r).clone()),
        Node(l, r) => Ok(PlaneBinaryTree::node(remove_leftmost(l)?, (**r).clone())),
    }
}

/// All trees with `n` internal nodes, ordered by left subtree size and then
/// recursively.
pub fn trees_of_size(n: usize) -> Vec<PlaneBinaryTree> {
    trees_by_size(n).pop().expect("at least one level")
}

/// Levels `0..=height` of the canonical enumeration.
pub fn trees_by_size(height: usize) -> Vec<Vec<PlaneBinaryTree>> {
    let mut levels: Vec<Vec<PlaneBinaryTree>> = alloc::vec![alloc::vec![Leaf]];
    for n in 1..=height {
        let mut level = Vec::new();
        for k in 0..n {
            for l in &levels[k] {
                for r in &levels[n - 1 - k] {
                    level.push(PlaneBinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        levels.push(level);
    }
    levels
}

pub fn tree_graphs(height: usize) -> Result<QDGGPair<PlaneBinaryTree>> {
    let mut b = PairBuilder::new(1);
    for level in trees_by_size(height) {
        b.push_level(level)?;
    }
    for n in 0..height {
        let level: Vec<PlaneBinaryTree> = b.levels().payloads(n).to_vec();
        for (src, t) in level.iter().enumerate() {
            for i in 0..=n {
                let up = sg(t, i)?;
                let dst = b
                    .levels()
                    .find(n + 1, &up.key())
                    .expect("level is complete");
                b.add_edge(Side::Gamma, n, src, dst, QPoly::monomial(1, i))?;
            }
        }
        let upper: Vec<PlaneBinaryTree> = b.levels().payloads(n + 1).to_vec();
        for (dst, t) in upper.iter().enumerate() {
            let down = remove_leftmost(t)?;
            let src = b.levels().find(n, &down.key()).expect("level is complete");
            b.add_edge(Side::GammaPrime, n, src, dst, QPoly::one())?;
        }
    }
    Ok(b.finish())
}

/// Labels of the internal nodes in left-to-right (in-order) position,
/// increasing from every node to its children.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearExtension {
    labels: Vec<u16>,
}

impl LinearExtension {
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }
}

/// `w_e`: the labels read from left to right.
pub fn perm_of(e: &LinearExtension) -> Permutation {
    Permutation::from_one_line(e.labels.clone()).expect("labels are a bijection")
}

pub fn linear_extensions(t: &PlaneBinaryTree) -> Vec<LinearExtension> {
    let mut out: Vec<LinearExtension> = extensions(t)
        .into_iter()
        .map(|labels| LinearExtension { labels })
        .collect();
    out.sort();
    out
}

fn extensions(t: &PlaneBinaryTree) -> Vec<Vec<u16>> {
    let Node(l, r) = t else {
        return alloc::vec![Vec::new()];
    };
    let (ls, rs) = (l.size(), r.size());
    let (left, right) = (extensions(l), extensions(r));
    let mut out = Vec::new();
    // Choose which of the labels 2..=n go to the left subtree.
    for chosen in subsets(ls + rs, ls) {
        let mut to_left = Vec::with_capacity(ls);
        let mut to_right = Vec::with_capacity(rs);
        for label in 0..ls + rs {
            if chosen & (1 << label) != 0 {
                to_left.push(label as u16 + 2);
            } else {
                to_right.push(label as u16 + 2);
            }
        }
        for el in &left {
            for er in &right {
                let mut labels: Vec<u16> = el.iter().map(|&v| to_left[v as usize - 1]).collect();
                labels.push(1);
                labels.extend(er.iter().map(|&v| to_right[v as usize - 1]));
                out.push(labels);
            }
        }
    }
    out
}

/// Bitmasks of `k`-element subsets of `0..n`.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeLemmaReport {
    pub p: usize,
    /// Trees whose `f_Tree` differs from the sum over their linear extensions.
    pub mismatches: Vec<PlaneBinaryTree>,
    pub prime_all_one: bool,
    pub extension_count: usize,
    /// Every permutation of `S_p` arises from exactly one extension.
    pub covers_each_once: bool,
    pub grouped_sum: QPoly,
    pub q_factorial: QPoly,
}

impl TreeLemmaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.prime_all_one
            && self.covers_each_once
            && self.grouped_sum == self.q_factorial
    }
}

pub fn check_lemma_tree(pair: &QDGGPair<PlaneBinaryTree>, p: usize) -> Result<TreeLemmaReport> {
    let f = pair.gamma().path_gfs(p)?;
    let f_prime = pair.gamma_prime().path_gfs(p)?;
    let mut mismatches = Vec::new();
    let mut seen: BTreeMap<Permutation, usize> = BTreeMap::new();
    let mut grouped_sum = QPoly::zero();
    let mut extension_count = 0;
    for v in pair.levels().vertices(p) {
        let t = pair.levels().payload(v);
        let mut sum = QPoly::zero();
        for e in linear_extensions(t) {
            let w = perm_of(&e);
            sum = sum.checked_add(&QPoly::monomial(1, inversions(&w)))?;
            *seen.entry(w).or_default() += 1;
            extension_count += 1;
        }
        if sum != f[p][v.index] {
            mismatches.push(t.clone());
        }
        grouped_sum = grouped_sum.checked_add(&f[p][v.index])?;
    }
    let all = all_permutations(p);
    let covers_each_once = seen.len() == all.len() && all.iter().all(|w| seen.get(w) == Some(&1));
    Ok(TreeLemmaReport {
        p,
        mismatches,
        prime_all_one: f_prime[p].iter().all(QPoly::is_one),
        extension_count,
        covers_each_once,
        grouped_sum,
        q_factorial: q_factorial(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn t(s: &str) -> PlaneBinaryTree {
        PlaneBinaryTree::parse(s).unwrap()
    }

    /// The four-node tree of the grafting figure.
    fn example() -> PlaneBinaryTree {
        graft(t("()"), t("()()"))
    }

    #[test]
    fn keys_round_trip() {
        assert_eq!(Leaf.key(), "∅");
        assert_eq!(graft(Leaf, Leaf).key(), "()");
        assert_eq!(example().key(), "(())()()");
        for level in trees_by_size(5) {
            for tree in level {
                assert_eq!(t(&tree.key()), tree);
            }
        }
        assert!(PlaneBinaryTree::parse("(").is_err());
        assert!(PlaneBinaryTree::parse(")(").is_err());
        assert!(PlaneBinaryTree::parse("(x)").is_err());
    }

    #[test]
    fn catalan_sizes() {
        let sizes: Vec<usize> = trees_by_size(6).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(graft(t("()"), t("(())")).size(), 4);
    }

    #[test]
    fn splice_figure() {
        let (t1, t2) = splice(&example(), 2).unwrap();
        assert_eq!(t1, graft(t("()"), Leaf));
        assert_eq!(t2, t("()()"));
        assert!(splice(&example(), 5).is_err());
    }

    #[test]
    fn splice_ends_and_sizes() {
        for level in trees_by_size(6) {
            for tree in level {
                let p = tree.size();
                assert_eq!(splice(&tree, 0).unwrap(), (Leaf, tree.clone()));
                assert_eq!(splice(&tree, p).unwrap(), (tree.clone(), Leaf));
                for i in 0..=p {
                    let (t1, t2) = splice(&tree, i).unwrap();
                    assert_eq!((t1.size(), t2.size()), (i, p - i));
                    assert_eq!(sg(&tree, i).unwrap().size(), p + 1);
                }
            }
        }
    }

    #[test]
    fn splice_of_a_graft() {
        for level in trees_by_size(5) {
            for a in trees_by_size(2).concat() {
                for b in &level {
                    let g = graft(a.clone(), b.clone());
                    let k = a.size();
                    assert_eq!(splice(&g, k).unwrap(), (a.clone(), graft(Leaf, b.clone())));
                    assert_eq!(
                        splice(&g, k + 1).unwrap(),
                        (graft(a.clone(), Leaf), b.clone())
                    );
                }
            }
        }
    }

    #[test]
    fn remove_leftmost_figure() {
        assert_eq!(remove_leftmost(&example()).unwrap(), t("()()()"));
        assert_eq!(remove_leftmost(&t("()")).unwrap(), Leaf);
        assert_eq!(remove_leftmost(&Leaf), Err(Error::Empty("tree")));
    }

    #[test]
    fn commutation_identities() {
        for level in trees_by_size(6) {
            for tree in level {
                assert_eq!(remove_leftmost(&sg(&tree, 0).unwrap()).unwrap(), tree);
                if tree.is_empty() {
                    continue;
                }
                let star = remove_leftmost(&tree).unwrap();
                for i in 1..=tree.size() {
                    let lhs = remove_leftmost(&sg(&tree, i).unwrap()).unwrap();
                    assert_eq!(lhs, sg(&star, i - 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn example_extensions() {
        let words: Vec<String> = linear_extensions(&example())
            .iter()
            .map(|e| perm_of(e).key())
            .collect();
        assert_eq!(words, ["2134", "3124", "4123"]);
        let comb = graft(graft(graft(Leaf, Leaf), Leaf), Leaf);
        assert_eq!(linear_extensions(&comb).len(), 1);
    }

    #[test]
    fn graph_shape_and_relation() {
        let pair = tree_graphs(7).unwrap();
        assert_eq!(pair.levels().sizes()[..5], [1, 1, 2, 5, 14]);
        for n in 0..7 {
            for v in pair.levels().vertices(n) {
                assert_eq!(pair.gamma().edges().up_edges(v).len(), n + 1);
            }
        }
        assert!(pair.verify_qweyl(Some(6)).unwrap().passed());
    }

    #[test]
    fn lemma_up_to_six() {
        let pair = tree_graphs(6).unwrap();
        for p in 0..=6 {
            let report = check_lemma_tree(&pair, p).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.extension_count, (1..=p).product::<usize>());
        }
        let v = pair.levels().find(4, &example().key()).unwrap();
        let f = pair.gamma().path_gfs(4).unwrap();
        assert_eq!(f[4][v], QPoly::from_coeffs(vec![0, 1, 1, 1]));
    }
}
