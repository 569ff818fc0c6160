//! The quantized r-Fibonacci pair on words in `1_1, ..., 1_r, 2`, with
//! snakeshapes and Young-Fibonacci tableaux.
//!
//! Down-edges of a word `w` come in two forms, where `s` counts the letters
//! before the one that changes:
//!
//! 1. remove the first `1_i` of `w`: weight `q^s` in both graphs;
//! 2. turn a `2` whose prefix is all `2`s into some `1_i`: weight `q^{s+1}`
//!    in `Fib`, `q^s` in `Fib′`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::graded_graph::{PairBuilder, QDGGPair, Side, VertexKey, VertexRef, EMPTY_KEY};
use crate::qpoly::QPoly;
use crate::reflection::{Reflectable, ReflectedVertex, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `1_i`, with `1 <= i <= r`.
    One(u32),
    Two,
}

impl Letter {
    pub fn value(self) -> usize {
        match self {
            Letter::One(_) => 1,
            Letter::Two => 2,
        }
    }
}

/// A vertex of the r-Fibonacci pair. The alphabet size `r` is carried along
/// because it decides the key format.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibWord {
    r: u32,
    letters: Vec<Letter>,
}

impl FibWord {
    pub fn empty(r: u32) -> Self {
        FibWord {
            r,
            letters: Vec::new(),
        }
    }

    pub fn new(r: u32, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if let Letter::One(i) = *l {
                if i == 0 || i > r {
                    return Err(Error::ArgumentOutOfRange {
                        what: "letter index",
                        value: i as usize,
                        max: r as usize,
                    });
                }
            }
        }
        Ok(FibWord { r, letters })
    }

    /// Parses `21121` (for `r = 1`) or `2.1_2.1_1`; `∅` or the empty string
    /// is the empty word.
    pub fn parse(text: &str, r: u32) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_KEY {
            return Ok(FibWord::empty(r));
        }
        let bad = || Error::Parse(alloc::format!("bad Fibonacci word {text:?}"));
        let mut letters = Vec::new();
        if text.contains('.') || text.contains('_') {
            for part in text.split('.') {
                letters.push(match part {
                    "2" => Letter::Two,
                    "1" => Letter::One(1),
                    _ => {
                        let idx = part.strip_prefix("1_").ok_or_else(bad)?;
                        Letter::One(idx.parse().map_err(|_| bad())?)
                    }
                });
            }
        } else {
            for c in text.chars() {
                letters.push(match c {
                    '1' => Letter::One(1),
                    '2' => Letter::Two,
                    _ => return Err(bad()),
                });
            }
        }
        FibWord::new(r, letters)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn height(&self) -> usize {
        self.letters.iter().map(|l| l.value()).sum()
    }

    fn prepend(&self, letter: Letter) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        FibWord { r: self.r, letters }
    }

    /// The down-neighbors `v` of this word with the `Fib` and `Fib′` weights
    /// of the edge `(v, self)`.
    pub fn down_neighbors(&self) -> Vec<(FibWord, QPoly, QPoly)> {
        let mut out = Vec::new();
        if let Some(s) = self
            .letters
            .iter()
            .position(|l| matches!(l, Letter::One(_)))
        {
            let mut letters = self.letters.clone();
            letters.remove(s);
            let w = QPoly::monomial(1, s);
            out.push((FibWord { r: self.r, letters }, w.clone(), w));
        }
        for s in 0..self.letters.len() {
            if self.letters[s] != Letter::Two {
                break;
            }
            for i in 1..=self.r {
                let mut letters = self.letters.clone();
                letters[s] = Letter::One(i);
                out.push((
                    FibWord { r: self.r, letters },
                    QPoly::monomial(1, s + 1),
                    QPoly::monomial(1, s),
                ));
            }
        }
        out
    }
}

impl VertexKey for FibWord {
    fn key(&self) -> String {
        if self.letters.is_empty() {
            return String::from(EMPTY_KEY);
        }
        let mut out = String::new();
        for (k, l) in self.letters.iter().enumerate() {
            if self.r >= 2 && k > 0 {
                out.push('.');
            }
            match (*l, self.r) {
                (Letter::Two, _) => out.push('2'),
                (Letter::One(_), 1) => out.push('1'),
                (Letter::One(i), _) => {
                    let _ = write!(out, "1_{i}");
                }
            }
        }
        out
    }
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// `v^i` prepends `1_i`, `w'` prepends `2`.
impl Reflectable for FibWord {
    fn copy(&self, i: u32) -> Self {
        self.prepend(Letter::One(i))
    }

    fn prime(&self) -> Self {
        self.prepend(Letter::Two)
    }
}

/// The word matching a reflection-built vertex under the prepend rule.
pub fn word_from_reflected(v: &ReflectedVertex, r: u32) -> FibWord {
    let letters = v
        .tags()
        .iter()
        .map(|t| match *t {
            Tag::Copy(i) => Letter::One(i),
            Tag::Prime => Letter::Two,
        })
        .collect();
    FibWord { r, letters }
}

/// All words of each height `0..=height`, in generation order: at height
/// `n`, first `1_i w` for `i = 1..r` and `w` of height `n - 1`, then `2 w`
/// for `w` of height `n - 2`.
pub fn words_by_height(r: u32, height: usize) -> Vec<Vec<FibWord>> {
    let mut levels: Vec<Vec<FibWord>> = Vec::with_capacity(height + 1);
    levels.push(alloc::vec![FibWord::empty(r)]);
    for n in 1..=height {
        let mut level = Vec::new();
        for i in 1..=r {
            level.extend(levels[n - 1].iter().map(|w| w.prepend(Letter::One(i))));
        }
        if n >= 2 {
            level.extend(levels[n - 2].iter().map(|w| w.prepend(Letter::Two)));
        }
        levels.push(level);
    }
    levels
}

/// The explicit `(Fib_(r), Fib′_(r))` pair up to `height`.
pub fn fib_graphs(r: u32, height: usize) -> Result<QDGGPair<FibWord>> {
    if r == 0 {
        return Err(Error::ArgumentOutOfRange {
            what: "r",
            value: 0,
            max: u32::MAX as usize,
        });
    }
    let mut b = PairBuilder::new(r);
    for level in words_by_height(r, height) {
        b.push_level(level)?;
    }
    for n in 1..=height {
        let words: Vec<FibWord> = b.levels().payloads(n).to_vec();
        for (dst, w) in words.iter().enumerate() {
            for (v, m, m_prime) in w.down_neighbors() {
                let src = b
                    .levels()
                    .find(n - 1, &v.key())
                    .expect("down-neighbor has one height less");
                b.add_edge(Side::Gamma, n - 1, src, dst, m)?;
                b.add_edge(Side::GammaPrime, n - 1, src, dst, m_prime)?;
            }
        }
    }
    Ok(b.finish())
}

/// Column heights of a word, leftmost letter first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Snakeshape {
    columns: Vec<u8>,
}

impl Snakeshape {
    pub fn columns(&self) -> &[u8] {
        &self.columns
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(|&c| c as usize).sum()
    }
}

pub fn snakeshape(w: &FibWord) -> Snakeshape {
    Snakeshape {
        columns: w.letters.iter().map(|l| l.value() as u8).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    Single(u32),
    Double { lower: u32, upper: u32 },
}

impl Column {
    fn min(self) -> u32 {
        match self {
            Column::Single(a) => a,
            Column::Double { lower, .. } => lower,
        }
    }
}

/// A filling of a snakeshape by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YFTableau {
    columns: Vec<Column>,
}

impl YFTableau {
    pub fn from_columns(columns: Vec<Column>) -> Self {
        YFTableau { columns }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn shape(&self) -> Snakeshape {
        Snakeshape {
            columns: self
                .columns
                .iter()
                .map(|c| match c {
                    Column::Single(_) => 1,
                    Column::Double { .. } => 2,
                })
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.shape().size()
    }

    /// Entries of the bottom row, one per column.
    pub fn lower_row(&self) -> Vec<u32> {
        self.columns.iter().map(|c| c.min()).collect()
    }

    /// Entries of the top row, one per height-two column.
    pub fn upper_row(&self) -> Vec<u32> {
        self.columns
            .iter()
            .filter_map(|c| match c {
                Column::Double { upper, .. } => Some(*upper),
                Column::Single(_) => None,
            })
            .collect()
    }

    /// Checks bijectivity and the three ordering conditions.
    pub fn is_valid(&self) -> bool {
        let n = self.size();
        let mut seen = alloc::vec![false; n + 1];
        for c in &self.columns {
            let entries: &[u32] = match c {
                Column::Single(a) => core::slice::from_ref(a),
                Column::Double { lower, upper } => {
                    if lower >= upper {
                        return false;
                    }
                    &[*lower, *upper][..]
                }
            };
            for &e in entries {
                let e = e as usize;
                if e == 0 || e > n || seen[e] {
                    return false;
                }
                seen[e] = true;
            }
        }
        for (k, c) in self.columns.iter().enumerate() {
            let mut right = self.columns[k + 1..].iter().flat_map(|c| match *c {
                Column::Single(a) => [Some(a), None],
                Column::Double { lower, upper } => [Some(lower), Some(upper)],
            });
            let ok = match *c {
                Column::Single(a) => right.all(|e| e.is_none_or(|e| e < a)),
                Column::Double { lower, upper } => {
                    right.all(|e| e.is_none_or(|e| e < lower || e > upper))
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Column position of `i` among the columns already holding an entry
    /// smaller than `i`, i.e. its position in the sub-tableau on `1..=i`.
    fn growth_position(&self, col: usize, i: u32) -> usize {
        self.columns[..col].iter().filter(|c| c.min() < i).count()
    }

    fn locate(&self, i: u32) -> Option<(usize, bool)> {
        self.columns.iter().enumerate().find_map(|(k, c)| match *c {
            Column::Single(a) if a == i => Some((k, false)),
            Column::Double { lower, .. } if lower == i => Some((k, false)),
            Column::Double { upper, .. } if upper == i => Some((k, true)),
            _ => None,
        })
    }

    fn weight_exponents(&self) -> (usize, usize) {
        let mut wt = 0;
        let mut wt_prime = 0;
        for i in 1..=self.size() as u32 {
            let (col, upper) = self.locate(i).expect("bijective filling");
            let p = self.growth_position(col, i);
            wt += p + usize::from(upper);
            wt_prime += p;
        }
        (wt, wt_prime)
    }

    /// `Fib` weight: `q^{p_i}` per bottom entry, `q^{p_i+1}` per top entry.
    pub fn wt(&self) -> QPoly {
        QPoly::monomial(1, self.weight_exponents().0)
    }

    /// `Fib′` weight: `q^{p_i}` per entry.
    pub fn wt_prime(&self) -> QPoly {
        QPoly::monomial(1, self.weight_exponents().1)
    }

    /// The chain of words obtained by restricting to `1..=k` for
    /// `k = 0..=n`; this is the path from `∅` the tableau encodes.
    pub fn path(&self) -> Vec<FibWord> {
        (0..=self.size() as u32)
            .map(|k| {
                let letters = self
                    .columns
                    .iter()
                    .filter_map(|c| match *c {
                        Column::Single(a) => (a <= k).then_some(Letter::One(1)),
                        Column::Double { lower, upper } => {
                            if upper <= k {
                                Some(Letter::Two)
                            } else {
                                (lower <= k).then_some(Letter::One(1))
                            }
                        }
                    })
                    .collect();
                FibWord { r: 1, letters }
            })
            .collect()
    }
}

/// Every Young-Fibonacci tableau of the shape. Columns are filled left to
/// right from the still-unused numbers: a height-one column must take the
/// largest of them, a height-two column any two that are adjacent among them.
pub fn enumerate_yf_tableaux(shape: &Snakeshape) -> Vec<YFTableau> {
    fn go(cols: &[u8], remaining: &mut Vec<u32>, acc: &mut Vec<Column>, out: &mut Vec<YFTableau>) {
        let Some((&h, rest)) = cols.split_first() else {
            out.push(YFTableau {
                columns: acc.clone(),
            });
            return;
        };
        if h == 1 {
            let a = remaining.pop().expect("enough entries");
            acc.push(Column::Single(a));
            go(rest, remaining, acc, out);
            acc.pop();
            remaining.push(a);
        } else {
            for k in 0..remaining.len().saturating_sub(1) {
                let lower = remaining.remove(k);
                let upper = remaining.remove(k);
                acc.push(Column::Double { lower, upper });
                go(rest, remaining, acc, out);
                acc.pop();
                remaining.insert(k, upper);
                remaining.insert(k, lower);
            }
        }
    }
    let mut remaining: Vec<u32> = (1..=shape.size() as u32).collect();
    let mut out = Vec::new();
    go(&shape.columns, &mut remaining, &mut Vec::new(), &mut out);
    out
}

/// Outcome of comparing tableau weight sums with path generating functions.
#[derive(Clone, Debug, PartialEq)]
pub struct FibLemmaReport {
    pub word: FibWord,
    pub tableaux: usize,
    pub sum_wt: QPoly,
    pub f_fib: QPoly,
    pub sum_wt_prime: QPoly,
    pub f_fib_prime: QPoly,
}

impl FibLemmaReport {
    pub fn passed(&self) -> bool {
        self.sum_wt == self.f_fib && self.sum_wt_prime == self.f_fib_prime
    }
}

/// `Σ_T wt(T) = f_Fib^w` and `Σ_T wt′(T) = f_Fib′^w` over tableaux of the
/// snakeshape of `w`. Needs an `r = 1` pair built at least to `h(w)`.
pub fn check_lemma_fib(pair: &QDGGPair<FibWord>, w: &FibWord) -> Result<FibLemmaReport> {
    if pair.r() != 1 || w.r != 1 {
        return Err(Error::ArgumentOutOfRange {
            what: "r",
            value: pair.r().max(w.r) as usize,
            max: 1,
        });
    }
    let n = w.height();
    let index = pair
        .levels()
        .find(n, &w.key())
        .ok_or(Error::LevelOutOfRange {
            level: n,
            levels: pair.levels().count(),
        })?;
    let v = VertexRef::new(n, index);
    let tableaux = enumerate_yf_tableaux(&snakeshape(w));
    let mut sum_wt = QPoly::zero();
    let mut sum_wt_prime = QPoly::zero();
    for t in &tableaux {
        sum_wt = sum_wt.checked_add(&t.wt())?;
        sum_wt_prime = sum_wt_prime.checked_add(&t.wt_prime())?;
    }
    Ok(FibLemmaReport {
        word: w.clone(),
        tableaux: tableaux.len(),
        sum_wt,
        f_fib: pair.gamma().path_gf(v)?,
        sum_wt_prime,
        f_fib_prime: pair.gamma_prime().path_gf(v)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_graph::LinearCombination;
    use alloc::string::ToString;
    use alloc::vec;

    fn word(s: &str) -> FibWord {
        FibWord::parse(s, 1).unwrap()
    }

    fn displayed_tableau() -> YFTableau {
        YFTableau::from_columns(vec![
            Column::Double { lower: 2, upper: 3 },
            Column::Single(7),
            Column::Single(6),
            Column::Double { lower: 4, upper: 5 },
            Column::Single(1),
        ])
    }

    #[test]
    fn levels_for_r1() {
        let p = fib_graphs(1, 2).unwrap();
        assert_eq!(p.levels().keys(0), &["∅"]);
        assert_eq!(p.levels().keys(1), &["1"]);
        assert_eq!(p.levels().keys(2), &["11", "2"]);
        let one = p.levels().find(1, "1").unwrap();
        let two = p.levels().find(2, "2").unwrap();
        assert_eq!(p.gamma().edges().weight(1, one, two), Some(&QPoly::q()));
        assert_eq!(
            p.gamma_prime().edges().weight(1, one, two),
            Some(&QPoly::one())
        );
    }

    #[test]
    fn up_and_down_examples() {
        let p = fib_graphs(1, 3).unwrap();
        let x = LinearCombination::vertex(VertexRef::new(1, 0));
        let u = p.gamma().apply_up(&x).unwrap();
        assert_eq!(
            u.coefficient(p.levels().find(2, "11").unwrap()),
            QPoly::one()
        );
        assert_eq!(u.coefficient(p.levels().find(2, "2").unwrap()), QPoly::q());
        for key in ["2", "11"] {
            let v = VertexRef::new(2, p.levels().find(2, key).unwrap());
            let d = p
                .gamma_prime()
                .apply_down(&LinearCombination::vertex(v))
                .unwrap();
            assert_eq!(d, x);
        }
        let du = p.gamma_prime().apply_down(&u).unwrap();
        assert_eq!(du.coefficient(0), QPoly::from_coeffs(vec![1, 1]));
        assert_eq!(
            p.gamma()
                .path_gf(VertexRef::new(2, p.levels().find(2, "2").unwrap()))
                .unwrap(),
            QPoly::q()
        );
    }

    #[test]
    fn r2_neighbors_of_1_1() {
        let p = fib_graphs(2, 2).unwrap();
        let src = p.levels().find(1, "1_1").unwrap();
        let mut ups: Vec<(String, QPoly)> = p
            .gamma()
            .edges()
            .up_edges(VertexRef::new(1, src))
            .iter()
            .map(|(t, w)| (p.levels().key(VertexRef::new(2, *t)).to_string(), w.clone()))
            .collect();
        ups.sort();
        assert_eq!(
            ups,
            vec![
                ("1_1.1_1".to_string(), QPoly::one()),
                ("1_2.1_1".to_string(), QPoly::one()),
                ("2".to_string(), QPoly::q()),
            ]
        );
        assert_eq!(p.levels().sizes(), vec![1, 2, 5]);
    }

    #[test]
    fn relation_holds_for_small_r() {
        for r in 1..=3 {
            let p = fib_graphs(r, 6).unwrap();
            let report = p.verify_qweyl(Some(5)).unwrap();
            assert!(report.passed(), "r = {r}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn snakeshapes() {
        assert_eq!(snakeshape(&word("21121")).columns(), &[2, 1, 1, 2, 1]);
        assert!(snakeshape(&FibWord::empty(1)).columns().is_empty());
        assert_eq!(snakeshape(&word("22")).columns(), &[2, 2]);
    }

    #[test]
    fn parse_and_keys() {
        assert_eq!(word("21121").key(), "21121");
        let w = FibWord::parse("2.1_2.1_1", 2).unwrap();
        assert_eq!(w.key(), "2.1_2.1_1");
        assert_eq!(w.height(), 4);
        assert!(FibWord::parse("1_3", 2).is_err());
        assert!(FibWord::parse("13", 1).is_err());
        assert_eq!(FibWord::parse("∅", 1).unwrap(), FibWord::empty(1));
    }

    #[test]
    fn small_tableaux() {
        assert_eq!(enumerate_yf_tableaux(&snakeshape(&word("1"))).len(), 1);
        let two = enumerate_yf_tableaux(&snakeshape(&word("2")));
        assert_eq!(
            two,
            vec![YFTableau::from_columns(vec![Column::Double {
                lower: 1,
                upper: 2
            }])]
        );
        assert_eq!(two[0].wt(), QPoly::q());
        assert_eq!(two[0].wt_prime(), QPoly::one());
        let single = YFTableau::from_columns(vec![Column::Single(1)]);
        assert_eq!(single.wt(), QPoly::one());
        assert_eq!(single.wt_prime(), QPoly::one());
    }

    /// All bijective fillings, filtered by the validity predicate.
    fn brute_force_count(shape: &Snakeshape) -> usize {
        fn perms(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut (1..=shape.size() as u32).collect(), 0, &mut all);
        all.iter()
            .filter(|fill| {
                let mut it = fill.iter();
                let cols = shape
                    .columns()
                    .iter()
                    .map(|&h| {
                        if h == 1 {
                            Column::Single(*it.next().unwrap())
                        } else {
                            Column::Double {
                                lower: *it.next().unwrap(),
                                upper: *it.next().unwrap(),
                            }
                        }
                    })
                    .collect();
                YFTableau::from_columns(cols).is_valid()
            })
            .count()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let words = words_by_height(1, 6);
        for level in &words {
            for w in level {
                let shape = snakeshape(w);
                let listed = enumerate_yf_tableaux(&shape);
                assert!(listed.iter().all(YFTableau::is_valid));
                assert_eq!(listed.len(), brute_force_count(&shape), "{w}");
            }
        }
    }

    #[test]
    fn displayed_tableau_and_its_path() {
        let t = displayed_tableau();
        assert!(t.is_valid());
        assert_eq!(t.lower_row(), vec![2, 7, 6, 4, 1]);
        assert_eq!(t.upper_row(), vec![3, 5]);
        let keys: Vec<String> = t.path().iter().map(|w| w.key()).collect();
        assert_eq!(keys, ["∅", "1", "11", "21", "211", "221", "2121", "21121"]);
        assert_eq!(t.wt(), QPoly::monomial(1, 6));
        assert_eq!(t.wt_prime(), QPoly::monomial(1, 4));
    }

    #[test]
    fn tableau_paths_carry_their_weights() {
        let p = fib_graphs(1, 6).unwrap();
        for level in words_by_height(1, 6) {
            for w in level {
                for t in enumerate_yf_tableaux(&snakeshape(&w)) {
                    let path = t.path();
                    let (mut wt, mut wt_prime) = (QPoly::one(), QPoly::one());
                    for (h, pair) in path.windows(2).enumerate() {
                        let src = p.levels().find(h, &pair[0].key()).unwrap();
                        let dst = p.levels().find(h + 1, &pair[1].key()).unwrap();
                        wt = &wt * p.gamma().edges().weight(h, src, dst).unwrap();
                        wt_prime = &wt_prime * p.gamma_prime().edges().weight(h, src, dst).unwrap();
                    }
                    assert_eq!(wt, t.wt());
                    assert_eq!(wt_prime, t.wt_prime());
                }
            }
        }
    }

    #[test]
    fn lemma_small_words() {
        let p = fib_graphs(1, 7).unwrap();
        for key in ["1", "2", "21121"] {
            let report = check_lemma_fib(&p, &word(key)).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let r2 = fib_graphs(2, 2).unwrap();
        assert!(check_lemma_fib(&r2, &FibWord::parse("2", 2).unwrap()).is_err());
    }
}
