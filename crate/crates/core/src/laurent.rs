//! Exact Laurent-polynomial arithmetic over the integers.
//!
//! [`LaurentPoly`] is the carrier of every graded multiplicity in this crate:
//! coefficients are arbitrary-precision integers, exponents may be negative,
//! and the zero polynomial is the empty coefficient map. The module also
//! provides the bar-involution q -> q^{-1}, quantum integers [n]_q, quantum
//! factorials [n]_q!, and exact division with a remainder check.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer Laurent polynomial in the grading variable q.
///
/// Canonical form: no zero coefficient is ever stored, so equality is
/// structural equality of the coefficient maps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0)
    }

    /// q^exp
    pub fn monomial(exp: i32) -> Self {
        LaurentPoly::term(1, exp)
    }

    /// coeff * q^exp
    pub fn term(coeff: impl Into<BigInt>, exp: i32) -> Self {
        let coeff = coeff.into();
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<C: Into<BigInt>, I: IntoIterator<Item = (C, i32)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (c, e) in terms {
            p.add_term(c.into(), e);
        }
        p
    }

    fn add_term(&mut self, coeff: BigInt, exp: i32) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0) == BigInt::from(1)
    }

    /// Coefficient of q^exp (zero when absent).
    pub fn coeff(&self, exp: i32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The bar-involution q -> q^{-1}, applied termwise.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// Sum of all coefficients, i.e. the specialization at q = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiply by q^k.
    pub fn shifted(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// True when every exponent is >= 1, i.e. the polynomial lies in qZ[q].
    pub fn has_positive_exponents(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 1)
    }

    /// True when every coefficient is >= 0.
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Exact quotient self / g over integer Laurent polynomials.
    ///
    /// Long division from the top exponent; any nonzero remainder or
    /// non-integral coefficient step reports [`Error::Division`], which in
    /// the calling contexts of this crate signals corrupted inputs or a
    /// bug (divisibility is guaranteed there).
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        if g.is_zero() {
            return Err(Error::Division {
                f: self.to_string(),
                g: g.to_string(),
            });
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let err = || Error::Division {
            f: self.to_string(),
            g: g.to_string(),
        };
        let g_top = g.max_exp().unwrap();
        let g_lead = g.coeff(g_top);
        // An exact quotient h has min_exp(h) = min_exp(f) - min_exp(g).
        let quot_floor = self.min_exp().unwrap() - g.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(top) = rem.max_exp() {
            let q_exp = top - g_top;
            if q_exp < quot_floor {
                return Err(err());
            }
            let lead = rem.coeff(top);
            if !(&lead % &g_lead).is_zero() {
                return Err(err());
            }
            let q_coeff = &lead / &g_lead;
            let t = LaurentPoly::term(q_coeff, q_exp);
            rem -= &(&t * g);
            quot += &t;
        }
        Ok(quot)
    }
}

/// The quantum integer [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}.
pub fn quantum_int(n: u32) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::QuantumIntOutOfRange);
    }
    let n = n as i32;
    Ok(LaurentPoly::from_terms((0..n).map(|k| (1, n - 1 - 2 * k))))
}

/// The quantum factorial [n]_q! = [n]_q [n-1]_q ... [1]_q, with [0]_q! = 1.
pub fn quantum_factorial(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for k in 1..=n {
        p = &p * &quantum_int(k).expect("k >= 1");
    }
    p
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(c.clone(), e);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(-c.clone(), e);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigInt,
    exp: i32,
    braced: bool,
) -> fmt::Result {
    let mag = coeff.abs();
    if first {
        if coeff.is_negative() {
            write!(f, "-")?;
        }
    } else if coeff.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if exp == 0 {
        return write!(f, "{mag}");
    }
    if mag != BigInt::from(1) {
        write!(f, "{mag}")?;
    }
    match exp {
        1 => write!(f, "q"),
        _ if braced => write!(f, "q^{{{exp}}}"),
        _ => write!(f, "q^{exp}"),
    }
}

/// Renders with descending exponents and explicit `q^-k`, e.g. `2q^3 - q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            write_term(f, i == 0, c, e, false)?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// LaTeX form with braced exponents, e.g. `2q^{3} - q^{-1}`.
    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        struct Latex<'a>(&'a LaurentPoly);
        impl fmt::Display for Latex<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, (e, c)) in self.0.terms().rev().enumerate() {
                    write_term(f, i == 0, c, e, true)?;
                }
                Ok(())
            }
        }
        Latex(self).to_string()
    }
}

/// JSON form: object mapping exponent strings to integer coefficients,
/// e.g. `{"-1":1,"1":1}` for q + q^{-1}. Coefficients round-trip exactly
/// at any size (serde_json is built with arbitrary-precision numbers).
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let n: serde_json::Number = c
                .to_string()
                .parse()
                .map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&e.to_string(), &n)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, serde_json::Number>()? {
                    let exp: i32 = key
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent {key:?}")))?;
                    let coeff: BigInt = value
                        .to_string()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("non-integer coefficient {value}")))?;
                    p.add_term(coeff, exp);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(c, e)| (c, e)))
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::zero().bar(), LaurentPoly::zero());
        let pal = p(&[(1, 1), (1, -1)]);
        assert_eq!(pal.bar(), pal);
        assert_eq!(p(&[(2, 3), (-1, -1)]).bar(), p(&[(2, -3), (-1, 1)]));
    }

    #[test]
    fn quantum_int_examples() {
        assert_eq!(quantum_int(1).unwrap(), LaurentPoly::one());
        assert_eq!(quantum_int(2).unwrap(), p(&[(1, 1), (1, -1)]));
        assert_eq!(quantum_int(3).unwrap(), p(&[(1, 2), (1, 0), (1, -2)]));
        assert_eq!(quantum_int(0), Err(Error::QuantumIntOutOfRange));
    }

    #[test]
    fn quantum_factorial_examples() {
        assert_eq!(quantum_factorial(0), LaurentPoly::one());
        assert_eq!(quantum_factorial(2), p(&[(1, 1), (1, -1)]));
        // [3]_q! = (q^2 + 1 + q^-2)(q + q^-1)
        assert_eq!(
            quantum_factorial(3),
            p(&[(1, 3), (2, 1), (2, -1), (1, -3)])
        );
    }

    #[test]
    fn exact_div_examples() {
        let two = p(&[(1, 1), (1, -1)]);
        assert_eq!(two.exact_div(&two).unwrap(), LaurentPoly::one());
        assert_eq!(
            p(&[(1, 2), (1, 0)]).exact_div(&two).unwrap(),
            LaurentPoly::monomial(1)
        );
        assert!(matches!(
            p(&[(1, 2), (1, 1)]).exact_div(&two),
            Err(Error::Division { .. })
        ));
        assert!(p(&[(1, 0)]).exact_div(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(LaurentPoly::zero().eval_at_one(), BigInt::from(0));
        assert_eq!(p(&[(1, 1), (1, -1)]).eval_at_one(), BigInt::from(2));
        assert_eq!(quantum_factorial(3).eval_at_one(), BigInt::from(6));
    }

    #[test]
    fn factorial_at_one_is_factorial() {
        let mut fact = BigInt::from(1);
        for n in 0..=10u32 {
            if n > 0 {
                fact *= n;
            }
            assert_eq!(quantum_factorial(n).eval_at_one(), fact);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[(1, 1), (1, -1)]).to_string(), "q + q^-1");
        assert_eq!(p(&[(2, 3), (-1, -1)]).to_string(), "2q^3 - q^-1");
        assert_eq!(p(&[(-1, 2), (5, 0)]).to_string(), "-q^2 + 5");
        assert_eq!(p(&[(2, 3), (-1, -1)]).latex(), "2q^{3} - q^{-1}");
        assert_eq!(p(&[(1, 1)]).latex(), "q");
    }

    #[test]
    fn json_round_trip_big_coefficients() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let mut poly = LaurentPoly::term(huge, -4);
        poly += &LaurentPoly::term(-7, 2);
        let text = serde_json::to_string(&poly).unwrap();
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, poly);
        assert_eq!(
            serde_json::to_string(&p(&[(1, 1), (1, -1)])).unwrap(),
            r#"{"-1":1,"1":1}"#
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-40i64..=40, -8i32..=8), 0..8)
            .prop_map(|terms| LaurentPoly::from_terms(terms))
    }

    proptest! {
        #[test]
        fn bar_is_an_involution(a in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a);
        }

        #[test]
        fn bar_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn quantum_values_are_bar_invariant(n in 0u32..=9) {
            prop_assert!(quantum_factorial(n).is_bar_invariant());
            if n > 0 {
                prop_assert!(quantum_int(n).unwrap().is_bar_invariant());
            }
        }

        #[test]
        fn exact_div_inverts_multiplication(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        }
    }
}
