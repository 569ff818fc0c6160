//! Leveled, edge-weighted graphs and the up/down operators on them.
//!
//! A [`QDGGPair`] owns one shared [`Levels`] store and two [`EdgeStore`]s,
//! one for the up graph `Γ` and one for the down graph `Γ′`. Borrowed
//! [`GradedGraph`] views expose the operators `U`, `D`, the pairing and path
//! generating functions. Everything is generic over a [`Scalar`] so the same
//! code runs on `Z[q]` weights and on weights specialized at an integer `q`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Overflow, Result};
use crate::qpoly::{q_factorial, q_falling, QPoly};

/// Coefficient ring for linear combinations and edge weights.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(c: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self, Overflow>;
    fn try_mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn try_neg(&self) -> Result<Self, Overflow>;
}

impl Scalar for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn from_int(c: i64) -> Self {
        QPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other)
    }
    fn try_neg(&self) -> Result<Self, Overflow> {
        self.checked_neg()
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_int(c: i64) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn try_add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn try_neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
}

/// Payloads carry a canonical textual key, unique within a level.
pub trait VertexKey {
    fn key(&self) -> String;
}

impl VertexKey for String {
    fn key(&self) -> String {
        self.clone()
    }
}

/// Textual key used by every family for the height-0 vertex.
pub const EMPTY_KEY: &str = "∅";

/// A vertex addressed by height and position within its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub level: usize,
    pub index: usize,
}

impl VertexRef {
    pub fn new(level: usize, index: usize) -> Self {
        VertexRef { level, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.index)
    }
}

/// Vertex payloads per level, with their keys and a key index.
#[derive(Clone, Debug)]
pub struct Levels<P> {
    payloads: Vec<Vec<P>>,
    keys: Vec<Vec<String>>,
    index: Vec<BTreeMap<String, usize>>,
}

impl<P> Levels<P> {
    fn empty() -> Self {
        Levels {
            payloads: Vec::new(),
            keys: Vec::new(),
            index: Vec::new(),
        }
    }

    /// Number of levels stored (height + 1).
    pub fn count(&self) -> usize {
        self.payloads.len()
    }

    pub fn size(&self, level: usize) -> usize {
        self.payloads.get(level).map_or(0, Vec::len)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.payloads.iter().map(Vec::len).collect()
    }

    pub fn payloads(&self, level: usize) -> &[P] {
        self.payloads.get(level).map_or(&[], Vec::as_slice)
    }

    pub fn payload(&self, v: VertexRef) -> &P {
        &self.payloads[v.level][v.index]
    }

    pub fn keys(&self, level: usize) -> &[String] {
        self.keys.get(level).map_or(&[], Vec::as_slice)
    }

    pub fn key(&self, v: VertexRef) -> &str {
        &self.keys[v.level][v.index]
    }

    pub fn find(&self, level: usize, key: &str) -> Option<usize> {
        self.index.get(level)?.get(key).copied()
    }

    pub fn vertices(&self, level: usize) -> impl Iterator<Item = VertexRef> {
        (0..self.size(level)).map(move |i| VertexRef::new(level, i))
    }

    fn check(&self, v: VertexRef) -> Result<()> {
        if v.level >= self.count() {
            return Err(Error::LevelOutOfRange {
                level: v.level,
                levels: self.count(),
            });
        }
        let size = self.size(v.level);
        if v.index >= size {
            return Err(Error::VertexOutOfRange {
                level: v.level,
                index: v.index,
                size,
            });
        }
        Ok(())
    }
}

/// Edge lists for one graph. `up[i][v]` lists `(target, weight)` pairs into
/// level `i + 1`, `down[i][w]` lists `(source, weight)` pairs from level
/// `i - 1`; both sorted by the opposite endpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeStore<S = QPoly> {
    up: Adjacency<S>,
    down: Adjacency<S>,
}

/// `[level][vertex]` -> sorted `(neighbor, weight)` list.
type Adjacency<S> = Vec<Vec<Vec<(usize, S)>>>;

impl<S: Scalar> EdgeStore<S> {
    fn from_maps(sizes: &[usize], maps: &[BTreeMap<(usize, usize), S>]) -> Self {
        let mut up: Vec<Vec<Vec<(usize, S)>>> =
            sizes.iter().map(|&n| vec![Vec::new(); n]).collect();
        let mut down = up.clone();
        for (level, map) in maps.iter().enumerate() {
            for (&(src, dst), weight) in map {
                up[level][src].push((dst, weight.clone()));
                down[level + 1][dst].push((src, weight.clone()));
            }
        }
        for list in down.iter_mut().flatten() {
            list.sort_by_key(|&(src, _)| src);
        }
        EdgeStore { up, down }
    }

    pub fn up_edges(&self, v: VertexRef) -> &[(usize, S)] {
        self.up
            .get(v.level)
            .and_then(|l| l.get(v.index))
            .map_or(&[], Vec::as_slice)
    }

    pub fn down_edges(&self, v: VertexRef) -> &[(usize, S)] {
        self.down
            .get(v.level)
            .and_then(|l| l.get(v.index))
            .map_or(&[], Vec::as_slice)
    }

    /// Weight of the edge `level:src -> level+1:dst`, if present.
    pub fn weight(&self, level: usize, src: usize, dst: usize) -> Option<&S> {
        let list = self.up.get(level)?.get(src)?;
        list.binary_search_by_key(&dst, |&(t, _)| t)
            .ok()
            .map(|i| &list[i].1)
    }

    /// All edges leaving `level`, ordered by source then target.
    pub fn level_edges(&self, level: usize) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.up
            .get(level)
            .into_iter()
            .flat_map(|l| l.iter().enumerate())
            .flat_map(|(src, list)| list.iter().map(move |(dst, w)| (src, *dst, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.up.iter().flatten().map(Vec::len).sum()
    }
}

impl EdgeStore<QPoly> {
    /// Evaluates every weight at `q = c`, dropping edges whose weight vanishes.
    pub fn specialize(&self, c: i64) -> Result<EdgeStore<i64>> {
        let convert = |lists: &Adjacency<QPoly>| -> Result<Adjacency<i64>> {
            lists
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|list| {
                            let mut out = Vec::with_capacity(list.len());
                            for (t, w) in list {
                                let value = w.evaluate_at(c)?;
                                if value != 0 {
                                    out.push((*t, value));
                                }
                            }
                            Ok(out)
                        })
                        .collect()
                })
                .collect()
        };
        Ok(EdgeStore {
            up: convert(&self.up)?,
            down: convert(&self.down)?,
        })
    }
}

/// Finite formal sum of same-level vertices; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCombination<S = QPoly> {
    level: usize,
    terms: BTreeMap<usize, S>,
}

impl<S: Scalar> LinearCombination<S> {
    pub fn zero(level: usize) -> Self {
        LinearCombination {
            level,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector for a single vertex.
    pub fn vertex(v: VertexRef) -> Self {
        let mut x = Self::zero(v.level);
        x.terms.insert(v.index, S::one());
        x
    }

    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (usize, S)>) -> Result<Self> {
        let mut x = Self::zero(level);
        for (i, c) in terms {
            x.add_term(i, &c)?;
        }
        Ok(x)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn coefficient(&self, index: usize) -> S {
        self.terms.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, index: usize, c: &S) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&index) {
            Some(old) => {
                let sum = old.try_add(c)?;
                if !sum.is_zero() {
                    self.terms.insert(index, sum);
                }
            }
            None => {
                self.terms.insert(index, c.clone());
            }
        }
        Ok(())
    }

    pub fn scaled(&self, c: &S) -> Result<Self> {
        let mut out = Self::zero(self.level);
        for (&i, a) in &self.terms {
            out.add_term(i, &a.try_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: other.level,
            });
        }
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&S::one().try_neg()?)?)
    }
}

/// `(x, v)`: the coefficient of `v` in `x`.
pub fn pairing<S: Scalar>(x: &LinearCombination<S>, v: VertexRef) -> Result<S> {
    if x.level != v.level {
        return Err(Error::LevelMismatch {
            expected: x.level,
            found: v.level,
        });
    }
    Ok(x.coefficient(v.index))
}

/// Borrowed view of one weighted graded graph of a pair.
#[derive(Clone, Copy, Debug)]
pub struct GradedGraph<'a, P, S = QPoly> {
    levels: &'a Levels<P>,
    edges: &'a EdgeStore<S>,
}

impl<'a, P, S: Scalar> GradedGraph<'a, P, S> {
    pub fn levels(&self) -> &'a Levels<P> {
        self.levels
    }

    pub fn edges(&self) -> &'a EdgeStore<S> {
        self.edges
    }

    /// `U`: each vertex goes to the weighted sum of its up-neighbors.
    pub fn apply_up(&self, x: &LinearCombination<S>) -> Result<LinearCombination<S>> {
        let target = x.level + 1;
        if target >= self.levels.count() {
            return Err(Error::LevelOutOfRange {
                level: target,
                levels: self.levels.count(),
            });
        }
        let mut out = LinearCombination::zero(target);
        for (v, c) in x.terms() {
            for (w, m) in self.edges.up_edges(VertexRef::new(x.level, v)) {
                out.add_term(*w, &c.try_mul(m)?)?;
            }
        }
        Ok(out)
    }

    /// `D`, the adjoint of `U`. Level-0 input is an error.
    pub fn apply_down(&self, x: &LinearCombination<S>) -> Result<LinearCombination<S>> {
        if x.level == 0 {
            return Err(Error::DownFromLevelZero);
        }
        if x.level >= self.levels.count() {
            return Err(Error::LevelOutOfRange {
                level: x.level,
                levels: self.levels.count(),
            });
        }
        let mut out = LinearCombination::zero(x.level - 1);
        for (w, c) in x.terms() {
            for (v, m) in self.edges.down_edges(VertexRef::new(x.level, w)) {
                out.add_term(*v, &c.try_mul(m)?)?;
            }
        }
        Ok(out)
    }

    /// Weight generating functions `f^v = (U^n ∅, v)` of every level
    /// `0..=max_level`, by bottom-up dynamic programming.
    pub fn path_gfs(&self, max_level: usize) -> Result<Vec<Vec<S>>> {
        let source_size = self.levels.size(0);
        if source_size != 1 {
            return Err(Error::NoUniqueMinimum { size: source_size });
        }
        if max_level >= self.levels.count() {
            return Err(Error::LevelOutOfRange {
                level: max_level,
                levels: self.levels.count(),
            });
        }
        let mut all = vec![vec![S::one()]];
        for level in 0..max_level {
            let below = &all[level];
            let mut next = vec![S::zero(); self.levels.size(level + 1)];
            for (v, f) in below.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                for (w, m) in self.edges.up_edges(VertexRef::new(level, v)) {
                    next[*w] = next[*w].try_add(&f.try_mul(m)?)?;
                }
            }
            all.push(next);
        }
        Ok(all)
    }

    pub fn path_gf(&self, v: VertexRef) -> Result<S> {
        self.levels.check(v)?;
        let mut all = self.path_gfs(v.level)?;
        Ok(all
            .pop()
            .map(|mut l| l.swap_remove(v.index))
            .unwrap_or_else(S::zero))
    }
}

/// Which graph of a pair an edge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Gamma,
    GammaPrime,
}

/// Two weighted graded graphs on one vertex set, with differential coefficient `r`.
#[derive(Clone, Debug)]
pub struct QDGGPair<P> {
    levels: Levels<P>,
    gamma: EdgeStore,
    gamma_prime: EdgeStore,
    r: u32,
}

impl<P> QDGGPair<P> {
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Top level held by the finite prefix.
    pub fn height(&self) -> usize {
        self.levels.count().saturating_sub(1)
    }

    pub fn levels(&self) -> &Levels<P> {
        &self.levels
    }

    /// The up graph `Γ`.
    pub fn gamma(&self) -> GradedGraph<'_, P> {
        GradedGraph {
            levels: &self.levels,
            edges: &self.gamma,
        }
    }

    /// The down graph `Γ′`.
    pub fn gamma_prime(&self) -> GradedGraph<'_, P> {
        GradedGraph {
            levels: &self.levels,
            edges: &self.gamma_prime,
        }
    }

    pub fn graph(&self, side: Side) -> GradedGraph<'_, P> {
        match side {
            Side::Gamma => self.gamma(),
            Side::GammaPrime => self.gamma_prime(),
        }
    }

    /// Checks `D_{Γ′} U_Γ v - q U_Γ D_{Γ′} v = r v` for every vertex with
    /// height `<= max_height`; `None` checks nothing.
    pub fn verify_qweyl(&self, max_height: Option<usize>) -> Result<QWeylReport<QPoly>> {
        verify_relation(
            &self.levels,
            &self.gamma,
            &self.gamma_prime,
            &QPoly::q(),
            self.r,
            max_height,
        )
    }

    /// `sum_{h(v)=n} f_Γ^v f_{Γ′}^v` against `r^n [n]_q!`.
    pub fn check_theorem_main(&self, n: usize) -> Result<TheoremReport> {
        let up = self.gamma().path_gfs(n)?;
        let down = self.gamma_prime().path_gfs(n)?;
        theorem_from_gfs(self.r, n, &up[n], &down[n])
    }

    /// Theorem checks for every `n` in `0..=max_n`, sharing one DP sweep.
    pub fn check_theorem_all(&self, max_n: usize) -> Result<Vec<TheoremReport>> {
        let up = self.gamma().path_gfs(max_n)?;
        let down = self.gamma_prime().path_gfs(max_n)?;
        (0..=max_n)
            .map(|n| theorem_from_gfs(self.r, n, &up[n], &down[n]))
            .collect()
    }

    /// Up `n` steps from `∅` in `Γ`, then down to `w` in `Γ′`, compared with
    /// `r^{n-m} [n]_q ... [m+1]_q f^w_Γ`.
    pub fn mixed_path_gf(&self, w: VertexRef, n: usize) -> Result<MixedReport> {
        self.levels.check(w)?;
        let m = w.level;
        if m > n {
            return Err(Error::ArgumentOutOfRange {
                what: "h(w)",
                value: m,
                max: n,
            });
        }
        let up = self.gamma();
        let down = self.gamma_prime();
        let size = self.levels.size(0);
        if size != 1 {
            return Err(Error::NoUniqueMinimum { size });
        }
        let mut x = LinearCombination::vertex(VertexRef::new(0, 0));
        for _ in 0..n {
            x = up.apply_up(&x)?;
        }
        for _ in m..n {
            x = down.apply_down(&x)?;
        }
        let value = pairing(&x, w)?;
        let f_w = up.path_gf(w)?;
        let r_pow = QPoly::constant(i64::from(self.r)).checked_pow((n - m) as u32)?;
        let expected = r_pow.checked_mul(&q_falling(n, m)?)?.checked_mul(&f_w)?;
        Ok(MixedReport {
            vertex: w,
            n,
            value,
            expected,
        })
    }

    /// Both edge stores evaluated at `q = c`.
    pub fn specialize(&self, c: i64) -> Result<SpecializedPair<'_, P>> {
        Ok(SpecializedPair {
            levels: &self.levels,
            gamma: self.gamma.specialize(c)?,
            gamma_prime: self.gamma_prime.specialize(c)?,
            r: self.r,
            q: c,
        })
    }

    /// Renames payloads, keeping levels, order and edges.
    pub fn map_payloads<Q: VertexKey>(&self, f: impl Fn(&P) -> Q) -> Result<QDGGPair<Q>> {
        let mut levels = Levels::empty();
        for level in &self.levels.payloads {
            push_level(&mut levels, level.iter().map(&f).collect())?;
        }
        Ok(QDGGPair {
            levels,
            gamma: self.gamma.clone(),
            gamma_prime: self.gamma_prime.clone(),
            r: self.r,
        })
    }

    /// Compares two pairs by vertex key rather than by index. Returns a list
    /// of human-readable differences; empty means the pairs are isomorphic
    /// under the key correspondence with equal weights.
    pub fn diff_by_key<Q>(&self, other: &QDGGPair<Q>) -> Vec<String> {
        let mut diffs = Vec::new();
        if self.r != other.r {
            diffs.push(alloc::format!("r differs: {} vs {}", self.r, other.r));
        }
        if self.levels.count() != other.levels.count() {
            diffs.push(alloc::format!(
                "level count differs: {} vs {}",
                self.levels.count(),
                other.levels.count()
            ));
            return diffs;
        }
        for level in 0..self.levels.count() {
            let mut mine: Vec<&String> = self.levels.keys(level).iter().collect();
            let mut theirs: Vec<&String> = other.levels.keys(level).iter().collect();
            mine.sort();
            theirs.sort();
            if mine != theirs {
                diffs.push(alloc::format!("vertex keys differ at level {level}"));
            }
        }
        if !diffs.is_empty() {
            return diffs;
        }
        for (side, a, b) in [
            ("Γ", &self.gamma, &other.gamma),
            ("Γ′", &self.gamma_prime, &other.gamma_prime),
        ] {
            for level in 0..self.levels.count().saturating_sub(1) {
                let keyed = |levels_src: &[String], levels_dst: &[String], store: &EdgeStore| {
                    store
                        .level_edges(level)
                        .map(|(s, d, w)| {
                            ((levels_src[s].clone(), levels_dst[d].clone()), w.clone())
                        })
                        .collect::<BTreeMap<_, _>>()
                };
                let ea = keyed(self.levels.keys(level), self.levels.keys(level + 1), a);
                let eb = keyed(other.levels.keys(level), other.levels.keys(level + 1), b);
                if ea != eb {
                    for (edge, w) in &ea {
                        match eb.get(edge) {
                            None => {
                                diffs.push(alloc::format!("{side}: edge {edge:?} only in left"))
                            }
                            Some(w2) if w2 != w => diffs
                                .push(alloc::format!("{side}: edge {edge:?} weight {w} vs {w2}")),
                            _ => {}
                        }
                    }
                    for edge in eb.keys().filter(|e| !ea.contains_key(*e)) {
                        diffs.push(alloc::format!("{side}: edge {edge:?} only in right"));
                    }
                }
            }
        }
        diffs
    }
}

fn theorem_from_gfs(r: u32, n: usize, up: &[QPoly], down: &[QPoly]) -> Result<TheoremReport> {
    let mut lhs = QPoly::zero();
    for (f, g) in up.iter().zip(down) {
        lhs = lhs.checked_add(&f.checked_mul(g)?)?;
    }
    let rhs = QPoly::constant(i64::from(r))
        .checked_pow(n as u32)?
        .checked_mul(&q_factorial(n)?)?;
    Ok(TheoremReport { n, lhs, rhs })
}

fn push_level<P: VertexKey>(levels: &mut Levels<P>, payloads: Vec<P>) -> Result<()> {
    let level = levels.count();
    let keys: Vec<String> = payloads.iter().map(VertexKey::key).collect();
    let mut index = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        if index.insert(k.clone(), i).is_some() {
            return Err(Error::DuplicateVertex {
                level,
                key: k.clone(),
            });
        }
    }
    levels.payloads.push(payloads);
    levels.keys.push(keys);
    levels.index.push(index);
    Ok(())
}

fn verify_relation<P, S: Scalar>(
    levels: &Levels<P>,
    up: &EdgeStore<S>,
    down: &EdgeStore<S>,
    q: &S,
    r: u32,
    max_height: Option<usize>,
) -> Result<QWeylReport<S>> {
    let mut report = QWeylReport {
        r,
        max_height,
        checked: 0,
        failures: Vec::new(),
    };
    let Some(max_height) = max_height else {
        return Ok(report);
    };
    if max_height + 1 >= levels.count() {
        return Err(Error::LevelOutOfRange {
            level: max_height + 1,
            levels: levels.count(),
        });
    }
    let gamma = GradedGraph { levels, edges: up };
    let gamma_prime = GradedGraph {
        levels,
        edges: down,
    };
    let r_scalar = S::from_int(i64::from(r));
    let minus_q = q.try_neg()?;
    for level in 0..=max_height {
        for v in levels.vertices(level) {
            let x = LinearCombination::vertex(v);
            let mut lhs = gamma_prime.apply_down(&gamma.apply_up(&x)?)?;
            if level > 0 {
                let ud = gamma.apply_up(&gamma_prime.apply_down(&x)?)?;
                lhs = lhs.add(&ud.scaled(&minus_q)?)?;
            }
            let discrepancy = lhs.sub(&x.scaled(&r_scalar)?)?;
            report.checked += 1;
            if !discrepancy.is_empty() {
                report.failures.push(QWeylFailure {
                    vertex: v,
                    discrepancy,
                });
            }
        }
    }
    Ok(report)
}

/// Outcome of checking the relation vertex by vertex.
#[derive(Clone, Debug)]
pub struct QWeylReport<S = QPoly> {
    pub r: u32,
    pub max_height: Option<usize>,
    pub checked: usize,
    pub failures: Vec<QWeylFailure<S>>,
}

impl<S> QWeylReport<S> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A vertex `v` where `DUv - qUDv - rv` is nonzero.
#[derive(Clone, Debug)]
pub struct QWeylFailure<S = QPoly> {
    pub vertex: VertexRef,
    pub discrepancy: LinearCombination<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub n: usize,
    pub lhs: QPoly,
    pub rhs: QPoly,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedReport {
    pub vertex: VertexRef,
    pub n: usize,
    /// `(D^{n-m} U^n ∅, w)`.
    pub value: QPoly,
    pub expected: QPoly,
}

impl MixedReport {
    pub fn passed(&self) -> bool {
        self.value == self.expected
    }
}

/// A pair whose weights were evaluated at an integer `q`.
#[derive(Clone, Debug)]
pub struct SpecializedPair<'a, P> {
    levels: &'a Levels<P>,
    gamma: EdgeStore<i64>,
    gamma_prime: EdgeStore<i64>,
    r: u32,
    q: i64,
}

impl<'a, P> SpecializedPair<'a, P> {
    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn gamma(&self) -> GradedGraph<'_, P, i64> {
        GradedGraph {
            levels: self.levels,
            edges: &self.gamma,
        }
    }

    pub fn gamma_prime(&self) -> GradedGraph<'_, P, i64> {
        GradedGraph {
            levels: self.levels,
            edges: &self.gamma_prime,
        }
    }

    /// Checks `DU - c UD = rI` with the specialized value `c` of `q`.
    pub fn verify_relation(&self, max_height: Option<usize>) -> Result<QWeylReport<i64>> {
        verify_relation(
            self.levels,
            &self.gamma,
            &self.gamma_prime,
            &self.q,
            self.r,
            max_height,
        )
    }
}

/// Incremental constructor; validates the graph invariants as edges arrive.
#[derive(Clone, Debug)]
pub struct PairBuilder<P> {
    levels: Levels<P>,
    gamma: Vec<BTreeMap<(usize, usize), QPoly>>,
    gamma_prime: Vec<BTreeMap<(usize, usize), QPoly>>,
    r: u32,
}

impl<P: VertexKey + Clone> PairBuilder<P> {
    pub fn new(r: u32) -> Self {
        PairBuilder {
            levels: Levels::empty(),
            gamma: Vec::new(),
            gamma_prime: Vec::new(),
            r,
        }
    }

    /// Reopens a finished pair so more levels can be added on top.
    pub fn from_pair(pair: &QDGGPair<P>) -> Self {
        let collect = |store: &EdgeStore| -> Vec<BTreeMap<(usize, usize), QPoly>> {
            (0..pair.levels.count().saturating_sub(1))
                .map(|l| {
                    store
                        .level_edges(l)
                        .map(|(s, d, w)| ((s, d), w.clone()))
                        .collect()
                })
                .collect()
        };
        PairBuilder {
            levels: pair.levels.clone(),
            gamma: collect(&pair.gamma),
            gamma_prime: collect(&pair.gamma_prime),
            r: pair.r,
        }
    }

    pub fn level_count(&self) -> usize {
        self.levels.count()
    }

    pub fn levels(&self) -> &Levels<P> {
        &self.levels
    }

    /// Appends the next level; returns its height.
    pub fn push_level(&mut self, payloads: Vec<P>) -> Result<usize> {
        push_level(&mut self.levels, payloads)?;
        let count = self.levels.count();
        if count >= 2 {
            self.gamma.push(BTreeMap::new());
            self.gamma_prime.push(BTreeMap::new());
        }
        Ok(count - 1)
    }

    /// Adds the edge `level:src -> level+1:dst` with a weight in `N[q] \ {0}`.
    pub fn add_edge(
        &mut self,
        side: Side,
        level: usize,
        src: usize,
        dst: usize,
        weight: QPoly,
    ) -> Result<()> {
        if level + 1 >= self.levels.count() {
            return Err(Error::LevelOutOfRange {
                level: level + 1,
                levels: self.levels.count(),
            });
        }
        self.levels.check(VertexRef::new(level, src))?;
        self.levels.check(VertexRef::new(level + 1, dst))?;
        if weight.is_zero() || !weight.is_nonnegative() {
            return Err(Error::InvalidWeight {
                level,
                source: src,
                target: dst,
            });
        }
        let map = match side {
            Side::Gamma => &mut self.gamma[level],
            Side::GammaPrime => &mut self.gamma_prime[level],
        };
        if map.insert((src, dst), weight).is_some() {
            return Err(Error::DuplicateEdge {
                level,
                source: src,
                target: dst,
            });
        }
        Ok(())
    }

    pub fn finish(self) -> QDGGPair<P> {
        let sizes = self.levels.sizes();
        QDGGPair {
            gamma: EdgeStore::from_maps(&sizes, &self.gamma),
            gamma_prime: EdgeStore::from_maps(&sizes, &self.gamma_prime),
            levels: self.levels,
            r: self.r,
        }
    }
}
