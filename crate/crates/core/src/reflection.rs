//! q-reflection: growing a partial pair one level at a time.
//!
//! From a pair satisfying `DU - qUD = rI` below its top level `n`, the new
//! level `n + 1` holds `r` copies `v^1..v^r` of every top vertex and one
//! mirrored vertex `w'` for every vertex of level `n - 1`.
//!
//! Edge rules for the new level:
//!
//! | edge        | `Γ` weight        | `Γ′` weight     | present when        |
//! |-------------|-------------------|-----------------|---------------------|
//! | `v -> v^i`  | `1`               | `1`             | always              |
//! | `v -> w'`   | `q·m′(w, v)`      | —               | `(w, v)` in `Γ′`    |
//! | `v -> w'`   | —                 | `m(w, v)`       | `(w, v)` in `Γ`     |
//!
//! The `Γ′` mirrored edges follow the edges of `Γ`; with that rule
//! `D U v = r v + q Σ m′(w,v) m(w,u) u = r v + q U D v` at the top level.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::graded_graph::{PairBuilder, QDGGPair, Side, VertexKey, EMPTY_KEY};
use crate::qpoly::QPoly;

/// Payloads that q-reflection can synthesize new vertices from.
pub trait Reflectable: VertexKey + Clone {
    /// The copy `v^i`, for `1 <= i <= r`.
    fn copy(&self, i: u32) -> Self;
    /// The mirrored vertex `w'`.
    fn prime(&self) -> Self;
}

/// One step of the construction history of a reflected vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Copy(u32),
    Prime,
}

/// A vertex produced by reflection from the single-vertex seed, recorded as
/// its tags, most recent first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReflectedVertex {
    tags: Vec<Tag>,
}

impl ReflectedVertex {
    pub fn seed() -> Self {
        ReflectedVertex::default()
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }
}

impl VertexKey for ReflectedVertex {
    /// `∅` for the seed, otherwise e.g. `c1.p.c2`.
    fn key(&self) -> String {
        if self.tags.is_empty() {
            return String::from(EMPTY_KEY);
        }
        let mut out = String::new();
        for (i, tag) in self.tags.iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            match tag {
                Tag::Copy(c) => {
                    let _ = write!(out, "c{c}");
                }
                Tag::Prime => out.push('p'),
            }
        }
        out
    }
}

impl Reflectable for ReflectedVertex {
    fn copy(&self, i: u32) -> Self {
        let mut tags = Vec::with_capacity(self.tags.len() + 1);
        tags.push(Tag::Copy(i));
        tags.extend_from_slice(&self.tags);
        ReflectedVertex { tags }
    }

    fn prime(&self) -> Self {
        let mut tags = Vec::with_capacity(self.tags.len() + 1);
        tags.push(Tag::Prime);
        tags.extend_from_slice(&self.tags);
        ReflectedVertex { tags }
    }
}

/// The height-0 pair with the single vertex `seed`.
pub fn seed_pair<P: Reflectable>(seed: P, r: u32) -> QDGGPair<P> {
    let mut b = PairBuilder::new(r);
    b.push_level(alloc::vec![seed])
        .expect("single vertex level");
    b.finish()
}

/// Extends a partial qDGG of height `n` to height `n + 1`. Fails when the
/// input violates the relation at some height `< n`.
pub fn reflect_once<P: Reflectable>(pair: &QDGGPair<P>) -> Result<QDGGPair<P>> {
    let n = pair.height();
    let report = pair.verify_qweyl(n.checked_sub(1))?;
    if !report.passed() {
        return Err(Error::NotPartialQDGG {
            failures: report.failures.len(),
        });
    }
    Ok(reflect_unchecked(pair))
}

fn reflect_unchecked<P: Reflectable>(pair: &QDGGPair<P>) -> QDGGPair<P> {
    let n = pair.height();
    let r = pair.r();
    let levels = pair.levels();
    let top = levels.payloads(n);
    let below: &[P] = if n > 0 { levels.payloads(n - 1) } else { &[] };

    let mut payloads = Vec::with_capacity(r as usize * top.len() + below.len());
    for i in 1..=r {
        payloads.extend(top.iter().map(|v| v.copy(i)));
    }
    let prime_offset = payloads.len();
    payloads.extend(below.iter().map(Reflectable::prime));

    let mut b = PairBuilder::from_pair(pair);
    b.push_level(payloads).expect("reflected keys are distinct");
    let add = |b: &mut PairBuilder<P>, side, src, dst, w| {
        b.add_edge(side, n, src, dst, w)
            .expect("reflected edges are valid");
    };
    for i in 0..r as usize {
        for v in 0..top.len() {
            add(&mut b, Side::Gamma, v, i * top.len() + v, QPoly::one());
            add(&mut b, Side::GammaPrime, v, i * top.len() + v, QPoly::one());
        }
    }
    if n > 0 {
        for (w, v, weight) in pair.gamma_prime().edges().level_edges(n - 1) {
            add(&mut b, Side::Gamma, v, prime_offset + w, weight.shift(1));
        }
        for (w, v, weight) in pair.gamma().edges().level_edges(n - 1) {
            add(
                &mut b,
                Side::GammaPrime,
                v,
                prime_offset + w,
                weight.clone(),
            );
        }
    }
    b.finish()
}

/// Reflects the single-vertex seed `height` times.
pub fn build_by_reflection(r: u32, height: usize) -> Result<QDGGPair<ReflectedVertex>> {
    build_from_seed(ReflectedVertex::seed(), r, height)
}

pub fn build_from_seed<P: Reflectable>(seed: P, r: u32, height: usize) -> Result<QDGGPair<P>> {
    if r == 0 {
        return Err(Error::ArgumentOutOfRange {
            what: "r",
            value: 0,
            max: u32::MAX as usize,
        });
    }
    let mut pair = seed_pair(seed, r);
    for _ in 0..height {
        pair = reflect_once(&pair)?;
    }
    Ok(pair)
}
