//! The pair `(Perm, Perm′)` on all permutations.
//!
//! `Perm` deletes the letter `n` from `w ∈ S_n`, with weight `q^{n-s}` for
//! `n` at 1-based position `s`. `Perm′` deletes the last letter and
//! standardizes, with weight 1. Path generating functions are `q^{inv(w)}`
//! and `1`.
//!
//! Deleting the first letter instead does not give `DU - qUD = I` with
//! these weights: it yields `DU = q^n I + UD` on `S_n`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::graded_graph::{PairBuilder, QDGGPair, Side, VertexKey, VertexRef, EMPTY_KEY};
use crate::qpoly::{q_factorial, QPoly};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u16).collect())
    }

    pub fn from_one_line(one_line: Vec<u16>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = alloc::vec![false; n + 1];
        for &x in &one_line {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parse(alloc::format!(
                    "{one_line:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(one_line))
    }

    /// Parses a key: single digits (`41523`) or comma separated values.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_KEY {
            return Ok(Permutation(Vec::new()));
        }
        let bad = || Error::Parse(alloc::format!("bad permutation {text:?}"));
        let values: Vec<u16> = if text.contains(',') {
            text.split(',')
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as u16).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::from_one_line(values)
    }

    pub fn one_line(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w` with its largest letter removed, plus the 1-based position it occupied.
    pub fn delete_max(&self) -> Option<(Permutation, usize)> {
        let n = self.0.len() as u16;
        let pos = self.0.iter().position(|&x| x == n)?;
        let mut rest = self.0.clone();
        rest.remove(pos);
        Some((Permutation(rest), pos + 1))
    }

    /// `w` without its first letter, remaining letters standardized.
    pub fn delete_first(&self) -> Option<Permutation> {
        let (&first, rest) = self.0.split_first()?;
        Some(standardize_without(rest, first))
    }

    /// `w` without its last letter, remaining letters standardized.
    pub fn delete_last(&self) -> Option<Permutation> {
        let (&last, rest) = self.0.split_last()?;
        Some(standardize_without(rest, last))
    }

    /// Lexicographic successor, `None` after the last permutation.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut v = self.0.clone();
        let i = v.windows(2).rposition(|w| w[0] < w[1])?;
        let j = v
            .iter()
            .rposition(|&x| x > v[i])
            .expect("pivot has a larger suffix element");
        v.swap(i, j);
        v[i + 1..].reverse();
        Some(Permutation(v))
    }
}

impl VertexKey for Permutation {
    fn key(&self) -> String {
        if self.0.is_empty() {
            return String::from(EMPTY_KEY);
        }
        let mut out = String::new();
        let compact = self.0.len() <= 9;
        for (i, x) in self.0.iter().enumerate() {
            if !compact && i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{x}");
        }
        out
    }
}

fn standardize_without(rest: &[u16], gone: u16) -> Permutation {
    Permutation(
        rest.iter()
            .map(|&x| if x > gone { x - 1 } else { x })
            .collect(),
    )
}

/// `#{(i, j) : i < j, w(i) > w(j)}`.
pub fn inversions(w: &Permutation) -> usize {
    let v = &w.0;
    (0..v.len())
        .map(|i| v[i + 1..].iter().filter(|&&x| x < v[i]).count())
        .sum()
}

/// `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur = Some(Permutation::identity(n));
    while let Some(p) = cur {
        cur = p.next_lex();
        out.push(p);
    }
    out
}

pub fn perm_graphs(height: usize) -> Result<QDGGPair<Permutation>> {
    let mut b = PairBuilder::new(1);
    for n in 0..=height {
        b.push_level(all_permutations(n))?;
    }
    for n in 1..=height {
        let level: Vec<Permutation> = b.levels().payloads(n).to_vec();
        for (dst, w) in level.iter().enumerate() {
            let (v, s) = w.delete_max().expect("nonempty");
            let src = b
                .levels()
                .find(n - 1, &v.key())
                .expect("S_{n-1} is complete");
            b.add_edge(Side::Gamma, n - 1, src, dst, QPoly::monomial(1, n - s))?;
            let v = w.delete_last().expect("nonempty");
            let src = b
                .levels()
                .find(n - 1, &v.key())
                .expect("S_{n-1} is complete");
            b.add_edge(Side::GammaPrime, n - 1, src, dst, QPoly::one())?;
        }
    }
    Ok(b.finish())
}

/// Per-permutation and summed checks at one height.
#[derive(Clone, Debug, PartialEq)]
pub struct PermIdentityReport {
    pub n: usize,
    /// Permutations whose `Perm` generating function is not `q^{inv}`.
    pub gamma_mismatches: Vec<Permutation>,
    /// Permutations whose `Perm′` generating function is not `1`.
    pub gamma_prime_mismatches: Vec<Permutation>,
    pub inversion_sum: QPoly,
    pub q_factorial: QPoly,
}

impl PermIdentityReport {
    pub fn passed(&self) -> bool {
        self.gamma_mismatches.is_empty()
            && self.gamma_prime_mismatches.is_empty()
            && self.inversion_sum == self.q_factorial
    }
}

pub fn check_perm_identities(pair: &QDGGPair<Permutation>, n: usize) -> Result<PermIdentityReport> {
    let up = pair.gamma().path_gfs(n)?;
    let down = pair.gamma_prime().path_gfs(n)?;
    let mut report = PermIdentityReport {
        n,
        gamma_mismatches: Vec::new(),
        gamma_prime_mismatches: Vec::new(),
        inversion_sum: QPoly::zero(),
        q_factorial: q_factorial(n)?,
    };
    for v in pair.levels().vertices(n) {
        let w = pair.levels().payload(v);
        let expected = QPoly::monomial(1, inversions(w));
        report.inversion_sum = report.inversion_sum.checked_add(&expected)?;
        if up[n][v.index] != expected {
            report.gamma_mismatches.push(w.clone());
        }
        if !down[n][v.index].is_one() {
            report.gamma_prime_mismatches.push(w.clone());
        }
    }
    Ok(report)
}

/// Locates a permutation in a built pair.
pub fn find(pair: &QDGGPair<Permutation>, w: &Permutation) -> Option<VertexRef> {
    let n = w.len();
    pair.levels()
        .find(n, &w.key())
        .map(|i| VertexRef::new(n, i))
}
