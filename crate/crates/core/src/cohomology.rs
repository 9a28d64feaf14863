//! A computable model of h^*(ℚ) = H^*(ℚ, μ₂): formal sums of symbols with
//! equality decided by local evaluation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::pfister::{PfisterPresentation, ScaledPfister};
use crate::quadform::{clifford_places, profile_of_counts, witt_filtration_degree, GWClass};
use crate::rationals::{hilbert_bit, relevant_places_of_classes, Place, SquareClass};

/// A degree-`d` class, stored as an unreduced list of symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct CohClass {
    degree: usize,
    symbols: Vec<Vec<SquareClass>>,
}

/// Complete invariant of a class in h^d(ℚ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohValue {
    /// h⁰ = ℤ/2.
    Parity(bool),
    /// h¹ = ℚ^×/(ℚ^×)².
    Class(SquareClass),
    /// h² ⊂ ⊕_v ℤ/2: the places where the class is nontrivial.
    Places(BTreeSet<Place>),
    /// h^d ≅ ℤ/2 for d ≥ 3, read at the real place.
    Real(bool),
}

impl CohClass {
    pub fn zero(degree: usize) -> Self {
        CohClass { degree, symbols: Vec::new() }
    }

    /// The unit `1 ∈ h⁰`.
    pub fn one() -> Self {
        CohClass { degree: 0, symbols: vec![Vec::new()] }
    }

    pub fn symbol(entries: Vec<SquareClass>) -> Self {
        CohClass { degree: entries.len(), symbols: vec![entries] }
    }

    pub fn from_symbols(degree: usize, symbols: Vec<Vec<SquareClass>>) -> Result<Self> {
        if symbols.iter().any(|s| s.len() != degree) {
            return domain("symbol length differs from degree");
        }
        let mut c = CohClass { degree, symbols: Vec::new() };
        for s in symbols {
            c.push(s);
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn symbols(&self) -> &[Vec<SquareClass>] {
        &self.symbols
    }

    /// Adds a symbol, cancelling an identical one already present.
    fn push(&mut self, s: Vec<SquareClass>) {
        match self.symbols.iter().position(|t| *t == s) {
            Some(k) => {
                self.symbols.swap_remove(k);
            }
            None => self.symbols.push(s),
        }
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        if self.degree != other.degree {
            return domain("adding classes of different degrees");
        }
        let mut out = self.clone();
        for s in &other.symbols {
            out.push(s.clone());
        }
        Ok(out)
    }

    pub fn eval(&self) -> CohValue {
        match self.degree {
            0 => CohValue::Parity(self.symbols.len() % 2 == 1),
            1 => CohValue::Class(self.symbols.iter().fold(SquareClass::one(), |acc, s| acc.mul(&s[0]))),
            2 => {
                let places = relevant_places_of_classes(self.symbols.iter().flatten());
                CohValue::Places(
                    places
                        .into_iter()
                        .filter(|v| {
                            self.symbols
                                .iter()
                                .filter(|s| hilbert_bit(s[0].local(v), s[1].local(v), v))
                                .count()
                                % 2
                                == 1
                        })
                        .collect(),
                )
            }
            _ => CohValue::Real(
                self.symbols
                    .iter()
                    .filter(|s| s.iter().all(SquareClass::is_negative))
                    .count()
                    % 2
                    == 1,
            ),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.eval() == CohClass::zero(self.degree).eval()
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return write!(f, "0 (h^{})", self.degree);
        }
        let parts: Vec<String> = self
            .symbols
            .iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(|c| c.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn coh_equal(x: &CohClass, y: &CohClass) -> Result<bool> {
    if x.degree != y.degree {
        return domain("comparing classes of different degrees");
    }
    Ok(x.eval() == y.eval())
}

/// Cup product: concatenation of symbols, extended bilinearly.
pub fn cup(x: &CohClass, y: &CohClass) -> CohClass {
    let mut out = CohClass::zero(x.degree + y.degree);
    for s in &x.symbols {
        for t in &y.symbols {
            let mut st = s.clone();
            st.extend(t.iter().cloned());
            out.push(st);
        }
    }
    out
}

/// `⟨⟨a_1, …, a_n⟩⟩ ↦ (a_1, …, a_n)` for a linear presentation, with
/// `a_k = −f(e_k)` along the stored basis.
pub fn symbol_of_pfister(p: &PfisterPresentation) -> Result<CohClass> {
    if !p.w.is_linear() {
        return domain("symbol_of_pfister needs a linear subspace");
    }
    Ok(CohClass::symbol(p.w.basis().iter().map(|&e| p.f.eval(e).negate()).collect()))
}

/// Image in h^m of `Σ coeff·⟨scale⟩⟨⟨slots⟩⟩`. Each coefficient is split
/// into powers of two, `2^k` contributing `k` extra slots `−1`.
pub fn class_of_scaled_pfister_sum(terms: &[ScaledPfister], m: usize) -> Result<CohClass> {
    let minus_one = SquareClass::one().negate();
    let mut out = CohClass::zero(m);
    for t in terms {
        let c = t.coeff.unsigned_abs();
        for k in (0..64).filter(|k| c >> k & 1 == 1) {
            let fold = t.fold() + k;
            if fold < m {
                return Err(Error::Property(format!(
                    "term of fold {fold} is not in I^{m}"
                )));
            }
            if fold == m {
                let mut s = vec![minus_one.clone(); k];
                s.extend(t.slots.iter().cloned());
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// The degree-`d` invariant `e_d` of a class in I^d(ℚ), computed from its
/// classical invariants alone.
pub fn milnor_value(x: &GWClass, d: usize) -> Result<CohValue> {
    if !witt_filtration_degree(x).at_least(d as u32) {
        return Err(Error::Property(format!("class not in I^{d}")));
    }
    let counts = x.witt_form();
    Ok(match d {
        0 => CohValue::Parity(counts.iter().map(|(_, m)| m).sum::<u64>() % 2 == 1),
        1 => {
            let places = relevant_places_of_classes(counts.iter().map(|(c, _)| c));
            CohValue::Class(profile_of_counts(&counts, &places).signed_disc)
        }
        2 => CohValue::Places(clifford_places(&counts)),
        _ => CohValue::Real((x.signature() >> d) & 1 == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2comb::AffineSubspace;
    use crate::pfister::{pfister_slots, SquareClassMorphism};
    use crate::quadform::DiagForm;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_i64(n).unwrap()
    }

    fn sym(v: &[i64]) -> CohClass {
        CohClass::symbol(v.iter().map(|&n| sc(n)).collect())
    }

    #[test]
    fn equality_examples() {
        assert!(!coh_equal(&sym(&[-1, -1, -1]), &CohClass::zero(3)).unwrap());
        assert!(coh_equal(&sym(&[2, 3, 5]), &CohClass::zero(3)).unwrap());
        let ab = sym(&[2, 3]);
        assert!(coh_equal(&ab.add(&ab).unwrap(), &CohClass::zero(2)).unwrap());
        assert!(coh_equal(&sym(&[2, 3]), &CohClass::zero(3)).is_err());
    }

    #[test]
    fn cup_examples() {
        assert_eq!(cup(&sym(&[2]), &sym(&[3])), sym(&[2, 3]));
        assert!(cup(&CohClass::zero(1), &sym(&[3])).is_zero());
        let lhs = cup(&sym(&[2]).add(&sym(&[5])).unwrap(), &sym(&[3]));
        let rhs = sym(&[2, 3]).add(&sym(&[5, 3])).unwrap();
        assert!(coh_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn symbol_of_pfister_examples() {
        let f = SquareClassMorphism::new(vec![sc(-2), sc(-3)]);
        let p = PfisterPresentation::new(f, AffineSubspace::power_set(0b11)).unwrap();
        assert_eq!(symbol_of_pfister(&p).unwrap(), sym(&[2, 3]));
        assert_eq!(sym(&[2, 3]).eval(), CohValue::Places([Place::prime(2), Place::prime(3)].into()));
        assert!(sym(&[1, 7]).is_zero());
        let p = PfisterPresentation::new(
            SquareClassMorphism::new(vec![sc(-2)]),
            AffineSubspace::point(1),
        )
        .unwrap();
        assert!(symbol_of_pfister(&p).is_err());
    }

    #[test]
    fn scaled_sums() {
        let phi = ScaledPfister::new(1, sc(7), vec![sc(2), sc(3)]);
        assert_eq!(class_of_scaled_pfister_sum(&[phi.clone()], 2).unwrap(), sym(&[2, 3]));
        let two_phi = ScaledPfister::new(2, sc(1), vec![sc(2), sc(3)]);
        assert_eq!(class_of_scaled_pfister_sum(&[two_phi], 3).unwrap(), sym(&[-1, 2, 3]));
        assert!(class_of_scaled_pfister_sum(&[phi.clone()], 1).unwrap().is_zero());
        assert!(class_of_scaled_pfister_sum(&[phi], 3).is_err());
    }

    #[test]
    fn milnor_values_match_symbols() {
        let x = pfister_slots(&[sc(2), sc(3)]);
        assert_eq!(milnor_value(&x, 2).unwrap(), sym(&[2, 3]).eval());
        let x = pfister_slots(&[sc(-1), sc(-1), sc(-1)]);
        assert_eq!(milnor_value(&x, 3).unwrap(), CohValue::Real(true));
        let x = DiagForm::from_ints(&[1, 5]).unwrap().to_gw();
        assert_eq!(milnor_value(&x, 1).unwrap(), CohValue::Class(sc(-5)));
        assert!(milnor_value(&x, 2).is_err());
    }
}
