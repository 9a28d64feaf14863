//! Exact rationals, square classes of ℚ^×, places of ℚ and Hilbert symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{domain, Error, Result};

/// Arbitrary precision rational number, always stored in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats as `"n"` for integers and `"p/q"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A class in ℚ^×/(ℚ^×)², represented by its signed squarefree integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn from_i64(n: i64) -> Result<Self> {
        squarefree_rep(&rat(n))
    }

    pub fn rep(&self) -> &BigInt {
        &self.0
    }

    pub fn to_rat(&self) -> Rat {
        Rat::from_integer(self.0.clone())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Product of classes; no factorization needed.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        SquareClass(&self.0 / &g * (&other.0 / &g))
    }

    /// The class of `−a`.
    pub fn negate(&self) -> SquareClass {
        SquareClass(-&self.0)
    }

    /// Local coordinates of the class at a place (see [`LocalCoords`]).
    pub fn local(&self, v: &Place) -> LocalCoords {
        match v {
            Place::Real => LocalCoords {
                val: false,
                a: self.0.is_negative(),
                b: false,
            },
            Place::Prime(p) => {
                let pi = BigInt::from_biguint(Sign::Plus, p.clone());
                let (q, r) = self.0.div_rem(&pi);
                let (val, unit) = if r.is_zero() { (true, q) } else { (false, self.0.clone()) };
                if p == &BigUint::from(2u32) {
                    let m8 = unit.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
                    LocalCoords {
                        val,
                        a: m8 % 4 == 3,
                        b: m8 == 3 || m8 == 5,
                    }
                } else {
                    LocalCoords {
                        val,
                        a: arith::legendre(&unit, p) == -1,
                        b: false,
                    }
                }
            }
        }
    }

    /// Whether the class is trivial in ℚ_v^×/(ℚ_v^×)².
    pub fn is_local_square(&self, v: &Place) -> bool {
        let c = self.local(v);
        !c.val && !c.a && !c.b
    }

    /// Odd primes and 2 dividing the representative.
    pub fn prime_divisors(&self) -> Vec<BigUint> {
        arith::factorize(&self.0.magnitude().clone())
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// Coordinates of a local square class as a vector over F₂.
///
/// At the real place `a` is the sign bit. At an odd prime `val` is the
/// valuation parity and `a` says the unit part is a non-residue. At 2 the unit
/// `u` contributes `a = ε(u)` (u ≡ 3 mod 4) and `b = ω(u)` (u ≡ ±3 mod 8).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalCoords {
    pub val: bool,
    pub a: bool,
    pub b: bool,
}

/// A place of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(BigUint),
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Prime(BigUint::from(p))
    }

    fn is_two(&self) -> bool {
        matches!(self, Place::Prime(p) if p == &BigUint::from(2u32))
    }

    /// `ε(p) = (p−1)/2 mod 2` for odd primes.
    fn eps(&self) -> bool {
        match self {
            Place::Prime(p) => (p % 4u32) == BigUint::from(3u32),
            Place::Real => false,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Hilbert symbol of two local coordinate vectors, as a bit (`true` = −1).
pub fn hilbert_bit(x: LocalCoords, y: LocalCoords, v: &Place) -> bool {
    match v {
        Place::Real => x.a && y.a,
        _ if v.is_two() => (x.a && y.a) ^ (x.val && y.b) ^ (y.val && x.b),
        _ => (x.val && y.val && v.eps()) ^ (y.val && x.a) ^ (x.val && y.a),
    }
}

/// The unique signed squarefree integer `s` with `a/s` a square.
pub fn squarefree_rep(a: &Rat) -> Result<SquareClass> {
    if a.is_zero() {
        return domain("square class of zero");
    }
    let n = a.numer() * a.denom();
    let core = arith::squarefree_part(n.magnitude());
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok(SquareClass(BigInt::from_biguint(sign, core)))
}

/// Hilbert symbol `(a, b)_v ∈ {+1, −1}`.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i8> {
    let a = squarefree_rep(a)?;
    let b = squarefree_rep(b)?;
    Ok(hilbert_classes(&a, &b, v))
}

pub fn hilbert_classes(a: &SquareClass, b: &SquareClass, v: &Place) -> i8 {
    if hilbert_bit(a.local(v), b.local(v), v) {
        -1
    } else {
        1
    }
}

/// `{∞, 2} ∪ {p : p divides the squarefree representative of an entry}`.
pub fn relevant_places(entries: &[Rat]) -> Result<BTreeSet<Place>> {
    let classes = entries
        .iter()
        .map(squarefree_rep)
        .collect::<Result<Vec<_>>>()?;
    Ok(relevant_places_of_classes(classes.iter()))
}

pub fn relevant_places_of_classes<'a>(
    classes: impl IntoIterator<Item = &'a SquareClass>,
) -> BTreeSet<Place> {
    let mut out = BTreeSet::from([Place::Real, Place::prime(2)]);
    let mut seen = BTreeSet::new();
    for c in classes {
        if seen.insert(c.0.magnitude().clone()) {
            out.extend(c.prime_divisors().into_iter().map(Place::Prime));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_i64(n).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_rep(&rat(18)).unwrap(), sc(2));
        assert_eq!(squarefree_rep(&ratio(-4, 9)).unwrap().rep(), &BigInt::from(-1));
        assert_eq!(squarefree_rep(&rat(1)).unwrap(), SquareClass::one());
        assert_eq!(squarefree_rep(&ratio(5, 3)).unwrap().rep(), &BigInt::from(15));
        assert!(matches!(squarefree_rep(&rat(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(rat_to_string(&ratio(-3, 2)), "-3/2");
        assert_eq!(rat_to_string(&rat(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::prime(3)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&rat(2), &rat(5), &Place::prime(5)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), &Place::prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(2), &rat(3), &Place::prime(3)).unwrap(), -1);
        assert!(hilbert_symbol(&rat(0), &rat(3), &Place::Real).is_err());
    }

    #[test]
    fn relevant_place_examples() {
        let set = |v: &[u64]| {
            let mut s: BTreeSet<Place> = v.iter().map(|&p| Place::prime(p)).collect();
            s.insert(Place::Real);
            s
        };
        assert_eq!(relevant_places(&[rat(1), rat(-1)]).unwrap(), set(&[2]));
        assert_eq!(relevant_places(&[rat(6)]).unwrap(), set(&[2, 3]));
        assert_eq!(
            relevant_places(&[ratio(5, 3), rat(7)]).unwrap(),
            set(&[2, 3, 5, 7])
        );
    }

    #[test]
    fn class_product_and_negation() {
        assert_eq!(sc(6).mul(&sc(10)), sc(15));
        assert_eq!(sc(-3).mul(&sc(-3)), SquareClass::one());
        assert_eq!(sc(5).negate(), sc(-5));
    }
}
