//! Words in `U`, `D` modulo `DU = qUD + r`, and their action on graphs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graded_graph::{LinearCombination, QDGGPair};
use crate::qpoly::{q_integer, QPoly, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    U,
    D,
}

/// A word in `U` and `D`, read as an operator product (rightmost acts first).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorWord {
    letters: Vec<Op>,
}

impl OperatorWord {
    pub fn new(letters: Vec<Op>) -> Self {
        OperatorWord { letters }
    }

    /// Parses letters `U`/`D` (case-insensitive); whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' | 'u' => Ok(Op::U),
                'D' | 'd' => Ok(Op::D),
                _ => Err(Error::Parse(alloc::format!(
                    "bad operator letter {c:?} in {text:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OperatorWord::new)
    }

    /// `U^i D^j`.
    pub fn monomial(i: usize, j: usize) -> Self {
        let mut letters = alloc::vec![Op::U; i];
        letters.extend(core::iter::repeat_n(Op::D, j));
        OperatorWord { letters }
    }

    pub fn letters(&self) -> &[Op] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Net change in height: `#U - #D`.
    pub fn degree(&self) -> isize {
        self.letters
            .iter()
            .map(|op| if *op == Op::U { 1 } else { -1 })
            .sum()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.letters {
            f.write_str(if *op == Op::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

/// `Σ c_ij U^i D^j` for a fixed differential coefficient `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    r: u32,
    terms: BTreeMap<(usize, usize), QPoly>,
}

impl NormalForm {
    pub fn zero(r: u32) -> Self {
        NormalForm {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(r: u32, i: usize, j: usize, c: QPoly) -> Self {
        let mut nf = NormalForm::zero(r);
        if !c.is_zero() {
            nf.terms.insert((i, j), c);
        }
        nf
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &QPoly)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, i: usize, j: usize) -> QPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: &QPoly) -> Result<()> {
        let sum = self.coefficient(i, j).checked_add(c)?;
        if sum.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &NormalForm) -> Result<NormalForm> {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &QPoly) -> Result<NormalForm> {
        let mut out = NormalForm::zero(self.r);
        for ((i, j), d) in self.terms() {
            out.add_term(i, j, &d.checked_mul(c)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for NormalForm {
    /// `(1 + q) + (q + 2*q^2 + q^3) * U D + q^4 * U^2 D^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let mut ops = String::new();
            for (letter, e) in [("U", *i), ("D", *j)] {
                if e == 0 {
                    continue;
                }
                if !ops.is_empty() {
                    ops.push(' ');
                }
                ops.push_str(letter);
                if e > 1 {
                    ops.push_str(&alloc::format!("^{e}"));
                }
            }
            let coeff = if c.term_count() > 1 {
                alloc::format!("({c})")
            } else {
                alloc::format!("{c}")
            };
            match (ops.is_empty(), c.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&ops)?,
                (false, false) => write!(f, "{coeff} * {ops}")?,
            }
        }
        Ok(())
    }
}

/// Rewrites the leftmost `DU` to `qUD + r` until no `D` precedes a `U`.
/// Equal intermediate words are merged.
pub fn normal_order(w: &OperatorWord, r: u32) -> Result<NormalForm> {
    let r_poly = QPoly::constant(i64::from(r));
    let mut pending: BTreeMap<Vec<Op>, QPoly> = BTreeMap::new();
    pending.insert(w.letters.clone(), QPoly::one());
    let mut out = NormalForm::zero(r);
    while let Some((word, c)) = pending.pop_first() {
        let Some(p) = word.windows(2).position(|pair| pair == [Op::D, Op::U]) else {
            let i = word.iter().take_while(|op| **op == Op::U).count();
            out.add_term(i, word.len() - i, &c)?;
            continue;
        };
        let mut swapped = word.clone();
        swapped.swap(p, p + 1);
        let mut dropped = word;
        dropped.drain(p..p + 2);
        for (next, factor) in [(swapped, c.shift(1)), (dropped, c.checked_mul(&r_poly)?)] {
            if factor.is_zero() {
                continue;
            }
            let slot = pending.entry(next).or_default();
            *slot = slot.checked_add(&factor)?;
        }
    }
    Ok(out)
}

/// `D U^n = r [n]_q U^{n-1} + q^n U^n D`.
pub fn d_power_rule(n: usize, r: u32) -> Result<NormalForm> {
    let mut nf = NormalForm::term(r, n, 1, QPoly::monomial(1, n));
    if n > 0 {
        nf.add_term(n - 1, 0, &q_integer(n).checked_scale(i64::from(r))?)?;
    }
    Ok(nf)
}

/// `D f(U) = r f^q(U) + f(qU) D` for a polynomial `f`.
pub fn d_series_rule(f: &QSeries, r: u32) -> Result<NormalForm> {
    let mut nf = NormalForm::zero(r);
    for (i, c) in f.q_derivative()?.coeffs().iter().enumerate() {
        nf.add_term(i, 0, &c.checked_scale(i64::from(r))?)?;
    }
    for (i, c) in f.rescale_by_q().coeffs().iter().enumerate() {
        nf.add_term(i, 1, c)?;
    }
    Ok(nf)
}

/// Normal ordering of `D f(U)` term by term through [`normal_order`].
pub fn normal_order_d_series(f: &QSeries, r: u32) -> Result<NormalForm> {
    let mut nf = NormalForm::zero(r);
    for (n, a) in f.coeffs().iter().enumerate() {
        let mut letters = alloc::vec![Op::D];
        letters.extend(core::iter::repeat_n(Op::U, n));
        nf = nf.add(&normal_order(&OperatorWord::new(letters), r)?.scaled(a)?)?;
    }
    Ok(nf)
}

/// Applies `w` to `x` right to left, `U` through `Γ` and `D` through `Γ′`.
/// `D` below height 0 is the zero map; the result must land at a height
/// `>= 0` and every intermediate height must be built.
pub fn evaluate_on_graph<P>(
    w: &OperatorWord,
    pair: &QDGGPair<P>,
    x: &LinearCombination,
) -> Result<LinearCombination> {
    let start = x.level() as isize;
    let end = start + w.degree();
    if end < 0 {
        return Err(Error::DownFromLevelZero);
    }
    let mut level = start;
    let mut current = Some(x.clone());
    for op in w.letters.iter().rev() {
        level += if *op == Op::U { 1 } else { -1 };
        if level >= pair.levels().count() as isize {
            return Err(Error::LevelOutOfRange {
                level: level as usize,
                levels: pair.levels().count(),
            });
        }
        current = match (current, op) {
            (None, _) => None,
            (Some(v), Op::U) => Some(pair.gamma().apply_up(&v)?),
            (Some(v), Op::D) if v.level() == 0 => None,
            (Some(v), Op::D) => Some(pair.gamma_prime().apply_down(&v)?),
        };
    }
    Ok(current.unwrap_or_else(|| LinearCombination::zero(end as usize)))
}

/// `Σ c_ij U^i D^j x`, each monomial applied through [`evaluate_on_graph`].
pub fn evaluate_normal_form<P>(
    nf: &NormalForm,
    pair: &QDGGPair<P>,
    x: &LinearCombination,
) -> Result<LinearCombination> {
    let mut out: Option<LinearCombination> = None;
    for ((i, j), c) in nf.terms() {
        let y = evaluate_on_graph(&OperatorWord::monomial(i, j), pair, x)?.scaled(c)?;
        out = Some(match out {
            None => y,
            Some(acc) => acc.add(&y)?,
        });
    }
    match out {
        Some(v) => Ok(v),
        None => Ok(LinearCombination::zero(x.level())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci::{fib_graphs, FibWord};
    use crate::graded_graph::{VertexKey, VertexRef};
    use crate::qpoly::q_factorial;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn word(s: &str) -> OperatorWord {
        OperatorWord::parse(s).unwrap()
    }

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn basic_rewrites() {
        let du = normal_order(&word("DU"), 2).unwrap();
        assert_eq!(du.coefficient(1, 1), QPoly::q());
        assert_eq!(du.coefficient(0, 0), QPoly::constant(2));
        assert_eq!(du.terms().count(), 2);
        assert_eq!(
            normal_order(&word("UD"), 1).unwrap(),
            NormalForm::term(1, 1, 1, QPoly::one())
        );
        assert_eq!(
            normal_order(&word(""), 1).unwrap(),
            NormalForm::term(1, 0, 0, QPoly::one())
        );
    }

    #[test]
    fn dduu_by_hand() {
        for r in 1..=3i64 {
            let nf = normal_order(&word("DDUU"), r as u32).unwrap();
            let two = q_integer(2);
            assert_eq!(nf.coefficient(0, 0), two.checked_scale(r * r).unwrap());
            assert_eq!(
                nf.coefficient(1, 1),
                two.checked_mul(&two)
                    .unwrap()
                    .shift(1)
                    .checked_scale(r)
                    .unwrap()
            );
            assert_eq!(nf.coefficient(2, 2), QPoly::monomial(1, 4));
            assert_eq!(nf.terms().count(), 3);
        }
        let nf = normal_order(&word("DDUU"), 1).unwrap();
        assert_eq!(
            nf.to_string(),
            "(1 + q) + (q + 2*q^2 + q^3) * U D + q^4 * U^2 D^2"
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(NormalForm::zero(1).to_string(), "0");
        assert_eq!(d_power_rule(0, 1).unwrap().to_string(), "D");
        assert_eq!(d_power_rule(1, 3).unwrap().to_string(), "3 + q * U D");
        assert_eq!(NormalForm::term(1, 2, 0, QPoly::one()).to_string(), "U^2");
    }

    #[test]
    fn power_rule_matches_rewriting() {
        for r in 1..=3 {
            for n in 0..=8 {
                let mut letters = vec![Op::D];
                letters.extend(core::iter::repeat_n(Op::U, n));
                let rewritten = normal_order(&OperatorWord::new(letters), r).unwrap();
                assert_eq!(rewritten, d_power_rule(n, r).unwrap(), "n = {n}, r = {r}");
            }
        }
        let three = d_power_rule(3, 1).unwrap();
        assert_eq!(three.coefficient(2, 0), poly(&[1, 1, 1]));
        assert_eq!(three.coefficient(3, 1), QPoly::monomial(1, 3));
    }

    #[test]
    fn du_on_fibonacci_word() {
        let pair = fib_graphs(1, 3).unwrap();
        let one = pair
            .levels()
            .find(1, &FibWord::parse("1", 1).unwrap().key())
            .unwrap();
        let x = LinearCombination::vertex(VertexRef::new(1, one));
        let y = evaluate_on_graph(&word("DU"), &pair, &x).unwrap();
        assert_eq!(y, x.scaled(&poly(&[1, 1])).unwrap());
        assert_eq!(evaluate_on_graph(&word(""), &pair, &x).unwrap(), x);
    }

    #[test]
    fn d_n_u_n_on_empty() {
        for r in 1..=3 {
            let pair = fib_graphs(r, 5).unwrap();
            let empty = LinearCombination::vertex(VertexRef::new(0, 0));
            for n in 0..=5usize {
                let w = OperatorWord::new([vec![Op::D; n], vec![Op::U; n]].concat());
                let expected = q_factorial(n)
                    .unwrap()
                    .checked_scale(i64::from(r).pow(n as u32))
                    .unwrap();
                let y = evaluate_on_graph(&w, &pair, &empty).unwrap();
                assert_eq!(y, empty.scaled(&expected).unwrap());
                let nf = normal_order(&w, r).unwrap();
                assert_eq!(nf.coefficient(0, 0), expected);
            }
        }
    }

    #[test]
    fn below_height_zero() {
        let pair = fib_graphs(1, 3).unwrap();
        let empty = LinearCombination::vertex(VertexRef::new(0, 0));
        assert_eq!(
            evaluate_on_graph(&word("UD"), &pair, &empty).unwrap(),
            LinearCombination::zero(0)
        );
        assert_eq!(
            evaluate_on_graph(&word("D"), &pair, &empty),
            Err(Error::DownFromLevelZero)
        );
        assert!(matches!(
            evaluate_on_graph(&word("UUUU"), &pair, &empty),
            Err(Error::LevelOutOfRange { .. })
        ));
        assert!(OperatorWord::parse("UXD").is_err());
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![Just(Op::U), Just(Op::D)]
    }

    proptest! {
        #[test]
        fn normal_form_evaluates_like_the_word(
            letters in prop::collection::vec(op(), 0..=6),
            start in 0usize..3,
            pick in any::<prop::sample::Index>(),
        ) {
            let pair = fib_graphs(1, 8).unwrap();
            let v = VertexRef::new(start, pick.index(pair.levels().size(start)));
            let x = LinearCombination::vertex(v);
            let w = OperatorWord::new(letters);
            let nf = normal_order(&w, 1).unwrap();
            prop_assert_eq!(evaluate_on_graph(&w, &pair, &x), evaluate_normal_form(&nf, &pair, &x));
        }

        #[test]
        fn series_rule_matches_rewriting(
            coeffs in prop::collection::vec(prop::collection::vec(-5i64..=5, 0..4), 0..=6),
            r in 1u32..=3,
        ) {
            let f = QSeries::from_coeffs(coeffs.into_iter().map(QPoly::from_coeffs).collect());
            prop_assert_eq!(d_series_rule(&f, r).unwrap(), normal_order_d_series(&f, r).unwrap());
        }
    }
}
