//! The pair `(Tab, Tab′)` on standard Young tableaux, and Robinson–Schensted.
//!
//! A `Tab` edge `P -> P′` shifts every entry `>= k` of `P` up by one and
//! row-inserts `k`, with weight `q^{n+1-k}`. A `Tab′` edge joins `P′` to the
//! tableau obtained by deleting its largest entry, with weight 1.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::graded_graph::{PairBuilder, QDGGPair, Side, VertexKey, VertexRef, EMPTY_KEY};
use crate::permutations::{all_permutations, inversions, Permutation};
use crate::qpoly::{q_factorial, QPoly};

/// Rows weakly shorten, rows and columns strictly increase, entries are `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<u16>>,
}

impl StandardTableau {
    pub fn empty() -> Self {
        StandardTableau::default()
    }

    pub fn from_rows(rows: Vec<Vec<u16>>) -> Result<Self> {
        let t = StandardTableau { rows };
        if t.is_standard() {
            Ok(t)
        } else {
            Err(Error::Parse(alloc::format!(
                "{:?} is not a standard tableau",
                t.rows
            )))
        }
    }

    /// Parses `1,2/3`; `∅` is the empty tableau.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_KEY {
            return Ok(StandardTableau::empty());
        }
        let bad = || Error::Parse(alloc::format!("bad tableau {text:?}"));
        let rows = text
            .split('/')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad()))
                    .collect()
            })
            .collect::<Result<Vec<Vec<u16>>>>()?;
        StandardTableau::from_rows(rows)
    }

    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = alloc::vec![false; n + 1];
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() || (r > 0 && row.len() > self.rows[r - 1].len()) {
                return false;
            }
            for (c, &x) in row.iter().enumerate() {
                let xi = x as usize;
                if xi == 0 || xi > n || seen[xi] {
                    return false;
                }
                seen[xi] = true;
                if c > 0 && row[c - 1] >= x {
                    return false;
                }
                if r > 0 && self.rows[r - 1][c] >= x {
                    return false;
                }
            }
        }
        true
    }

    /// Row-inserts `x`, returning the row of the new cell.
    fn row_insert(&mut self, mut x: u16) -> usize {
        for (r, row) in self.rows.iter_mut().enumerate() {
            match row.iter().position(|&y| y > x) {
                Some(c) => x = core::mem::replace(&mut row[c], x),
                None => {
                    row.push(x);
                    return r;
                }
            }
        }
        self.rows.push(alloc::vec![x]);
        self.rows.len() - 1
    }

    /// Outer corners: rows where a new cell may be appended.
    fn addable_rows(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.rows.len())
            .filter(|&r| r == 0 || self.rows[r - 1].len() > self.rows[r].len())
            .collect();
        out.push(self.rows.len());
        out
    }
}

impl VertexKey for StandardTableau {
    fn key(&self) -> String {
        if self.rows.is_empty() {
            return String::from(EMPTY_KEY);
        }
        let mut out = String::new();
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                out.push('/');
            }
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{x}");
            }
        }
        out
    }
}

/// The `Tab` up-neighbor for `k` and its weight `q^{n+1-k}`.
pub fn insert_up(p: &StandardTableau, k: usize) -> Result<(StandardTableau, QPoly)> {
    let n = p.size();
    if k == 0 || k > n + 1 {
        return Err(Error::ArgumentOutOfRange {
            what: "k",
            value: k,
            max: n + 1,
        });
    }
    let k16 = k as u16;
    let mut out = StandardTableau {
        rows: p
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| if x >= k16 { x + 1 } else { x })
                    .collect()
            })
            .collect(),
    };
    out.row_insert(k16);
    Ok((out, QPoly::monomial(1, n + 1 - k)))
}

/// Deletes the cell holding the largest entry.
pub fn remove_top(p: &StandardTableau) -> Result<StandardTableau> {
    let n = p.size() as u16;
    if n == 0 {
        return Err(Error::Empty("tableau"));
    }
    let mut rows = p.rows.clone();
    let r = rows
        .iter()
        .position(|row| row.last() == Some(&n))
        .expect("largest entry ends its row");
    rows[r].pop();
    if rows[r].is_empty() {
        rows.pop();
    }
    Ok(StandardTableau { rows })
}

/// All standard tableaux of each size `0..=height`, grown from the previous
/// level by placing the new maximum in each outer corner.
pub fn tableaux_by_size(height: usize) -> Vec<Vec<StandardTableau>> {
    let mut levels = alloc::vec![alloc::vec![StandardTableau::empty()]];
    for n in 1..=height {
        let mut next = Vec::new();
        for t in &levels[n - 1] {
            for r in t.addable_rows() {
                let mut rows = t.rows.clone();
                if r == rows.len() {
                    rows.push(Vec::new());
                }
                rows[r].push(n as u16);
                next.push(StandardTableau { rows });
            }
        }
        levels.push(next);
    }
    levels
}

pub fn tab_graphs(height: usize) -> Result<QDGGPair<StandardTableau>> {
    let mut b = PairBuilder::new(1);
    for level in tableaux_by_size(height) {
        b.push_level(level)?;
    }
    for n in 0..height {
        let level: Vec<StandardTableau> = b.levels().payloads(n).to_vec();
        for (src, p) in level.iter().enumerate() {
            for k in 1..=n + 1 {
                let (up, weight) = insert_up(p, k)?;
                let dst = b
                    .levels()
                    .find(n + 1, &up.key())
                    .expect("insertion stays standard");
                b.add_edge(Side::Gamma, n, src, dst, weight)?;
            }
        }
        let upper: Vec<StandardTableau> = b.levels().payloads(n + 1).to_vec();
        for (dst, p) in upper.iter().enumerate() {
            let down = remove_top(p)?;
            let src = b
                .levels()
                .find(n, &down.key())
                .expect("deletion stays standard");
            b.add_edge(Side::GammaPrime, n, src, dst, QPoly::one())?;
        }
    }
    Ok(b.finish())
}

/// Robinson–Schensted: insertion tableau `P` and recording tableau `Q`.
pub fn rs(w: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p = StandardTableau::empty();
    let mut q = StandardTableau::empty();
    for (step, &x) in w.one_line().iter().enumerate() {
        let r = p.row_insert(x);
        if r == q.rows.len() {
            q.rows.push(Vec::new());
        }
        q.rows[r].push(step as u16 + 1);
    }
    (p, q)
}

/// One `Tab` path from `∅` to some tableau: its end point, the recording
/// tableau of its sequence of shapes, and its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct TabPath {
    pub end: VertexRef,
    pub recording: StandardTableau,
    pub weight: QPoly,
}

/// Every `Tab` path from `∅` to level `n`.
pub fn tab_paths(pair: &QDGGPair<StandardTableau>, n: usize) -> Result<Vec<TabPath>> {
    if n >= pair.levels().count() {
        return Err(Error::LevelOutOfRange {
            level: n,
            levels: pair.levels().count(),
        });
    }
    let mut frontier = alloc::vec![TabPath {
        end: VertexRef::new(0, 0),
        recording: StandardTableau::empty(),
        weight: QPoly::one(),
    }];
    for h in 0..n {
        let mut next = Vec::with_capacity(frontier.len() * (h + 1));
        for path in &frontier {
            let shape = pair.levels().payload(path.end).shape();
            for (dst, m) in pair.gamma().edges().up_edges(path.end) {
                let end = VertexRef::new(h + 1, *dst);
                let new_shape = pair.levels().payload(end).shape();
                let row = (0..new_shape.len())
                    .find(|&r| shape.get(r).copied().unwrap_or(0) < new_shape[r])
                    .expect("shapes differ by one cell");
                let mut recording = path.recording.clone();
                if row == recording.rows.len() {
                    recording.rows.push(Vec::new());
                }
                recording.rows[row].push(h as u16 + 1);
                next.push(TabPath {
                    end,
                    recording,
                    weight: path.weight.checked_mul(m)?,
                });
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TabLemmaReport {
    pub n: usize,
    pub paths: usize,
    /// Permutations whose recorded path is missing or has weight other than `q^{inv(w)}`.
    pub mismatches: Vec<Permutation>,
    /// Insertion tableaux whose `f^P_Tab` differs from the sum of `q^{inv}`
    /// over permutations with that insertion tableau.
    pub partial_sum_mismatches: Vec<StandardTableau>,
    pub prime_all_one: bool,
    pub grouped_sum: QPoly,
    pub q_factorial: QPoly,
}

impl TabLemmaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.partial_sum_mismatches.is_empty()
            && self.prime_all_one
            && self.grouped_sum == self.q_factorial
    }
}

pub fn check_lemma_tab(pair: &QDGGPair<StandardTableau>, n: usize) -> Result<TabLemmaReport> {
    let paths = tab_paths(pair, n)?;
    let mut by_pq: BTreeMap<(usize, String), QPoly> = BTreeMap::new();
    for path in &paths {
        by_pq.insert((path.end.index, path.recording.key()), path.weight.clone());
    }

    let mut mismatches = Vec::new();
    let mut partial: BTreeMap<usize, QPoly> = BTreeMap::new();
    for w in all_permutations(n) {
        let (p, q) = rs(&w);
        let expected = QPoly::monomial(1, inversions(&w));
        let Some(index) = pair.levels().find(n, &p.key()) else {
            mismatches.push(w);
            continue;
        };
        let entry = partial.entry(index).or_default();
        *entry = entry.checked_add(&expected)?;
        if by_pq.get(&(index, q.key())) != Some(&expected) {
            mismatches.push(w);
        }
    }

    let f = pair.gamma().path_gfs(n)?;
    let f_prime = pair.gamma_prime().path_gfs(n)?;
    let mut grouped_sum = QPoly::zero();
    let mut partial_sum_mismatches = Vec::new();
    for (index, gf) in f[n].iter().enumerate() {
        grouped_sum = grouped_sum.checked_add(gf)?;
        if partial.get(&index).cloned().unwrap_or_default() != *gf {
            partial_sum_mismatches.push(pair.levels().payload(VertexRef::new(n, index)).clone());
        }
    }
    Ok(TabLemmaReport {
        n,
        paths: paths.len(),
        mismatches,
        partial_sum_mismatches,
        prime_all_one: f_prime[n].iter().all(QPoly::is_one),
        grouped_sum,
        q_factorial: q_factorial(n)?,
    })
}
