//! Integer polynomials in the formal variable `q`.
//!
//! [`QPoly`] is the scalar type for every edge weight, path generating
//! function and normal-form coefficient in the crate. Storage is dense and
//! ascending by degree, always trimmed so that equality is structural.
//! All arithmetic is checked: on `i64` overflow the `checked_*` methods return
//! [`Overflow`], while the operator impls panic with a message.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Overflow};

/// Polynomial in `q` with integer coefficients; index `i` holds the
/// coefficient of `q^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![1] }
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        QPoly::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// `c * q^degree`.
    pub fn monomial(c: i64, degree: usize) -> Self {
        if c == 0 {
            return QPoly::zero();
        }
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        QPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// True when every coefficient is `>= 0`, i.e. the value lies in `N[q]`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// `Some(k)` when the polynomial is exactly `q^k`.
    pub fn as_unit_monomial(&self) -> Option<usize> {
        let deg = self.degree()?;
        (self.coeffs[deg] == 1 && self.coeffs[..deg].iter().all(|&c| c == 0)).then_some(deg)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn checked_add(&self, other: &QPoly) -> Result<QPoly, Overflow> {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.checked_add(s).ok_or(Overflow)?;
        }
        Ok(QPoly::from_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &QPoly) -> Result<QPoly, Overflow> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<QPoly, Overflow> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QPoly { coeffs })
    }

    pub fn checked_mul(&self, other: &QPoly) -> Result<QPoly, Overflow> {
        if self.is_zero() || other.is_zero() {
            return Ok(QPoly::zero());
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(term).ok_or(Overflow)?;
            }
        }
        Ok(QPoly::from_coeffs(coeffs))
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn checked_scale(&self, c: i64) -> Result<QPoly, Overflow> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QPoly::from_coeffs(coeffs))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        QPoly { coeffs }
    }

    pub fn checked_pow(&self, exp: u32) -> Result<QPoly, Overflow> {
        let mut acc = QPoly::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes the integer `c` for `q` (Horner evaluation).
    pub fn evaluate_at(&self, c: i64) -> Result<i64, Overflow> {
        self.coeffs.iter().rev().try_fold(0i64, |acc, &a| {
            acc.checked_mul(c)
                .and_then(|v| v.checked_add(a))
                .ok_or(Overflow)
        })
    }
}

/// `[n]_q = 1 + q + ... + q^{n-1}`; zero for `n = 0`.
pub fn q_integer(n: usize) -> QPoly {
    QPoly { coeffs: vec![1; n] }
}

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`; one for `n = 0`.
pub fn q_factorial(n: usize) -> Result<QPoly, Overflow> {
    q_falling(n, 0)
}

/// `[n]_q [n-1]_q ... [m+1]_q`, the empty product being one when `n <= m`.
pub fn q_falling(n: usize, m: usize) -> Result<QPoly, Overflow> {
    let mut acc = QPoly::one();
    for k in (m + 1)..=n {
        acc = acc.checked_mul(&q_integer(k))?;
    }
    Ok(acc)
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(c)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                self.$checked(rhs)
                    .unwrap_or_else(|_| panic!(concat!("QPoly ", $what, " overflowed i64")))
            }
        }
        impl $trait for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add, "addition");
forward_binop!(Sub, sub, checked_sub, "subtraction");
forward_binop!(Mul, mul, checked_mul, "multiplication");

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.checked_neg().expect("QPoly negation overflowed i64")
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.checked_neg().expect("QPoly negation overflowed i64")
    }
}

/// Renders as `a0 + a1*q + a2*q^2`, skipping zero terms and unit coefficients.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, false) => f.write_str(" + ")?,
                (false, true) => f.write_str(" - ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Accepts the rendering grammar. Whitespace is ignored and the `*` between
/// a coefficient and `q` is optional, so `1+2q+q^2` also parses.
impl FromStr for QPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::Parse(alloc::format!("{msg} in polynomial {s:?}"));
        if text.is_empty() {
            return Err(err("empty input"));
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = QPoly::zero();
        let mut first = true;
        while pos < bytes.len() {
            let mut negative = false;
            match bytes[pos] {
                b'+' if !first => pos += 1,
                b'-' => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err("expected '+' or '-'")),
            }
            first = false;

            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: Option<i64> = if pos > start {
                Some(
                    text[start..pos]
                        .parse()
                        .map_err(|_| err("coefficient out of range"))?,
                )
            } else {
                None
            };
            let mut degree = 0usize;
            if pos < bytes.len() && bytes[pos] == b'*' {
                if coeff.is_none() {
                    return Err(err("'*' without a coefficient"));
                }
                pos += 1;
                if bytes.get(pos) != Some(&b'q') {
                    return Err(err("expected 'q' after '*'"));
                }
            }
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                degree = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == start {
                        return Err(err("missing exponent"));
                    }
                    degree = text[start..pos]
                        .parse()
                        .map_err(|_| err("exponent out of range"))?;
                }
            } else if coeff.is_none() {
                return Err(err("expected a term"));
            }
            let mut c = coeff.unwrap_or(1);
            if negative {
                c = -c;
            }
            acc = acc
                .checked_add(&QPoly::monomial(c, degree))
                .map_err(Error::from)?;
        }
        Ok(acc)
    }
}

/// Truncated power series in one variable `t` with [`QPoly`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<QPoly>,
}

impl QSeries {
    pub fn from_coeffs(mut coeffs: Vec<QPoly>) -> Self {
        while coeffs.last().is_some_and(QPoly::is_zero) {
            coeffs.pop();
        }
        QSeries { coeffs }
    }

    /// `c * t^n`.
    pub fn monomial(c: QPoly, n: usize) -> Self {
        let mut coeffs = vec![QPoly::zero(); n];
        coeffs.push(c);
        QSeries::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> QPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The q-derivative `sum a_n t^n -> sum [n]_q a_n t^{n-1}`.
    pub fn q_derivative(&self) -> Result<QSeries, Overflow> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| q_integer(n).checked_mul(a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries::from_coeffs(coeffs))
    }

    /// `f(t) -> f(q t)`: the coefficient of `t^n` picks up a factor `q^n`.
    pub fn rescale_by_q(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a.shift(n))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    /// Independent schoolbook product over plain vectors (no trimming, no checks).
    fn naive_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for i in 0..a.len() {
            for j in 0..b.len() {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    }

    #[test]
    fn q_integer_values() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(1), QPoly::one());
        assert_eq!(q_integer(3).coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn q_factorial_matches_naive_expansion() {
        assert_eq!(q_factorial(0).unwrap(), QPoly::one());
        assert_eq!(q_factorial(1).unwrap(), QPoly::one());
        let oracle = naive_mul(&naive_mul(&[1], &[1, 1]), &[1, 1, 1]);
        assert_eq!(oracle, vec![1, 2, 2, 1]);
        assert_eq!(q_factorial(3).unwrap().coeffs(), &oracle[..]);
    }

    #[test]
    fn q_factorial_at_one_is_factorial() {
        let mut fact = 1i64;
        for n in 0..=10usize {
            if n > 0 {
                fact *= n as i64;
            }
            assert_eq!(q_factorial(n).unwrap().evaluate_at(1).unwrap(), fact);
        }
    }

    #[test]
    fn basic_arithmetic() {
        let one_plus_q = QPoly::from_coeffs(vec![1, 1]);
        assert_eq!((&one_plus_q * &one_plus_q).coeffs(), &[1, 2, 1]);
        assert_eq!(&one_plus_q + &QPoly::zero(), one_plus_q);
        assert_eq!(q_integer(3).evaluate_at(1).unwrap(), 3);
        assert_eq!(QPoly::from_coeffs(vec![0, 0, 0]), QPoly::zero());
        assert_eq!(QPoly::q().as_unit_monomial(), Some(1));
        assert_eq!(QPoly::from_coeffs(vec![0, 2]).as_unit_monomial(), None);
    }

    #[test]
    fn overflow_is_reported() {
        let big = QPoly::constant(i64::MAX);
        assert_eq!(big.checked_add(&QPoly::one()), Err(Overflow));
        assert_eq!(big.checked_mul(&QPoly::constant(2)), Err(Overflow));
        assert_eq!(big.checked_scale(3), Err(Overflow));
        assert_eq!(QPoly::constant(i64::MIN).checked_neg(), Err(Overflow));
        assert_eq!(
            QPoly::from_coeffs(vec![1, 1]).evaluate_at(i64::MAX),
            Err(Overflow)
        );
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn operator_panics_on_overflow() {
        let _ = QPoly::constant(i64::MAX) + QPoly::one();
    }

    #[test]
    fn rendering() {
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(q_factorial(3).unwrap().to_string(), "1 + 2*q + 2*q^2 + q^3");
        assert_eq!(
            QPoly::from_coeffs(vec![0, -1, 0, 3]).to_string(),
            "-q + 3*q^3"
        );
        assert_eq!(QPoly::from_coeffs(vec![2, -1]).to_string(), "2 - q");
        assert_eq!(QPoly::constant(-7).to_string(), "-7");
    }

    #[test]
    fn parsing() {
        let p: QPoly = "1 + 2*q + 2*q^2 + q^3".parse().unwrap();
        assert_eq!(p, q_factorial(3).unwrap());
        let compact: QPoly = "1+2q+2q^2+q^3".parse().unwrap();
        assert_eq!(compact, p);
        assert_eq!("0".parse::<QPoly>().unwrap(), QPoly::zero());
        assert_eq!(
            "-q + 3*q^3".parse::<QPoly>().unwrap().coeffs(),
            &[0, -1, 0, 3]
        );
        assert_eq!("q^2 + q^2".parse::<QPoly>().unwrap().coeffs(), &[0, 0, 2]);
        for bad in ["", "1 +", "q^", "*q", "2q q", "x", "++1"] {
            assert!(bad.parse::<QPoly>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn q_derivative_examples() {
        let t3 = QSeries::monomial(QPoly::one(), 3);
        assert_eq!(
            t3.q_derivative().unwrap(),
            QSeries::monomial(q_integer(3), 2)
        );
        let c = QSeries::monomial(QPoly::constant(5), 0);
        assert!(c.q_derivative().unwrap().is_zero());
        let f = QSeries::from_coeffs(vec![QPoly::zero(), QPoly::one(), QPoly::one()]);
        assert_eq!(
            f.q_derivative().unwrap(),
            QSeries::from_coeffs(vec![QPoly::one(), q_integer(2)])
        );
    }

    #[test]
    fn q_derivative_of_powers() {
        for n in 1..=20 {
            let d = QSeries::monomial(QPoly::one(), n).q_derivative().unwrap();
            assert_eq!(d.degree(), Some(n - 1));
            assert_eq!(d.coeff(n - 1), q_integer(n));
        }
    }

    #[test]
    fn rescale_by_q_shifts_coefficients() {
        let f = QSeries::from_coeffs(vec![QPoly::one(), QPoly::one(), QPoly::constant(2)]);
        let g = f.rescale_by_q();
        assert_eq!(g.coeff(0), QPoly::one());
        assert_eq!(g.coeff(1), QPoly::q());
        assert_eq!(g.coeff(2), QPoly::monomial(2, 2));
    }

    fn small_poly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(-50i64..50, 0..8).prop_map(QPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a - &a, QPoly::zero());
        }

        #[test]
        fn product_matches_naive(a in small_poly(), b in small_poly()) {
            let oracle = QPoly::from_coeffs(naive_mul(a.coeffs(), b.coeffs()));
            prop_assert_eq!(&a * &b, oracle);
        }

        #[test]
        fn canonical_form(a in small_poly(), b in small_poly()) {
            let s = &a + &b;
            prop_assert!(s.coeffs().last().is_none_or(|&c| c != 0));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), x in -3i64..4) {
            let ab = (&a * &b).evaluate_at(x).unwrap();
            prop_assert_eq!(ab, a.evaluate_at(x).unwrap() * b.evaluate_at(x).unwrap());
        }

        #[test]
        fn render_parse_round_trip(a in small_poly()) {
            let back: QPoly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
