//! Coordinate-free Pfister forms `⟨⟨f|W⟩⟩` and their scalar-twisted
//! variants, and the `(δ, t)` data of a family of binary forms.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{domain, Result};
use crate::f2comb::{elements, is_even, parity_hyperplane_section, singleton, v_subspace, AffineSubspace, Subset};
use crate::quadform::{represents, DiagForm, GWClass};
use crate::rationals::{squarefree_rep, Rat, SquareClass};

/// A group morphism `P(X) → ℚ^×/(ℚ^×)²`, given by its values on singletons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassMorphism {
    values: Vec<SquareClass>,
}

impl SquareClassMorphism {
    pub fn new(values: Vec<SquareClass>) -> Self {
        SquareClassMorphism { values }
    }

    pub fn from_rats(values: &[Rat]) -> Result<Self> {
        Ok(SquareClassMorphism {
            values: values.iter().map(squarefree_rep).collect::<Result<_>>()?,
        })
    }

    /// The morphism `{i} ↦ −a_i` attached to a diagonalization `⟨a_i⟩`.
    pub fn of_diagonal(q: &DiagForm) -> Self {
        SquareClassMorphism {
            values: q.classes().iter().map(SquareClass::negate).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[SquareClass] {
        &self.values
    }

    pub fn eval(&self, x: Subset) -> SquareClass {
        elements(x).fold(SquareClass::one(), |acc, i| acc.mul(&self.values[i]))
    }
}

/// The data of `⟨⟨f|W⟩⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterPresentation {
    pub f: SquareClassMorphism,
    pub w: AffineSubspace,
}

impl PfisterPresentation {
    pub fn new(f: SquareClassMorphism, w: AffineSubspace) -> Result<Self> {
        let univ = if f.len() >= 32 { u32::MAX } else { (1u32 << f.len()) - 1 };
        if w.support() & !univ != 0 {
            return domain("affine subspace outside the morphism's universe");
        }
        Ok(PfisterPresentation { f, w })
    }

    pub fn to_gw(&self) -> GWClass {
        GWClass::from_terms(self.w.points().into_iter().map(|x| (self.f.eval(x), 1)))
    }
}

/// `⟨⟨f|W⟩⟩ = ⟨f(x)⟩_{x∈W}`.
pub fn pfister_of(p: &PfisterPresentation) -> DiagForm {
    DiagForm::new(p.w.points().into_iter().map(|x| p.f.eval(x).to_rat()).collect())
        .expect("square class representatives are nonzero")
}

/// `⟨⟨a_1, …, a_n⟩⟩ = Π ⟨1, −a_i⟩`.
pub fn pfister_slots(slots: &[SquareClass]) -> GWClass {
    slots.iter().fold(GWClass::one(), |acc, a| {
        &acc * &GWClass::from_terms([(SquareClass::one(), 1), (a.negate(), 1)])
    })
}

/// A morphism on (part of) P(X) with rational values, meaningful modulo the
/// similarity factors of some Pfister form.
pub trait ScalarMorphism {
    fn value(&self, x: Subset) -> Result<Rat>;
}

/// Multiplicative extension of rational values on singletons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMorphism {
    values: Vec<Rat>,
}

impl RatMorphism {
    pub fn new(values: Vec<Rat>) -> Self {
        RatMorphism { values }
    }
}

impl ScalarMorphism for RatMorphism {
    fn value(&self, x: Subset) -> Result<Rat> {
        let mut out = Rat::one();
        for i in elements(x) {
            match self.values.get(i) {
                Some(v) => out *= v,
                None => return domain("subset outside the morphism's universe"),
            }
        }
        Ok(out)
    }
}

/// A morphism `P₀(S) → ℚ^×/G(φ)`, stored on the basis pairs `{s₀, s}` of
/// P₀(S), with `s₀` the first element of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSimMorphism {
    support: Subset,
    first: Option<usize>,
    pair_values: BTreeMap<usize, Rat>,
    reference: DiagForm,
}

impl ModSimMorphism {
    /// `pair_value(s)` is the representative of `t({s₀, s})`.
    pub fn new(support: Subset, reference: DiagForm, pair_value: impl Fn(usize, usize) -> Rat) -> Self {
        let first = elements(support).next();
        let pair_values = match first {
            Some(s0) => elements(support).skip(1).map(|s| (s, pair_value(s0, s))).collect(),
            None => BTreeMap::new(),
        };
        ModSimMorphism { support, first, pair_values, reference }
    }

    pub fn support(&self) -> Subset {
        self.support
    }

    pub fn reference(&self) -> &DiagForm {
        &self.reference
    }

    /// The stored representative on the pair `{s₀, s}`.
    pub fn basis_value(&self, s: usize) -> Option<&Rat> {
        self.pair_values.get(&s)
    }

    /// Whether two representatives agree modulo the similarity factors of
    /// the reference form.
    pub fn congruent(&self, r1: &Rat, r2: &Rat) -> Result<bool> {
        represents(&self.reference, &(r1 * r2))
    }
}

impl ScalarMorphism for ModSimMorphism {
    fn value(&self, x: Subset) -> Result<Rat> {
        if !is_even(x) || x & !self.support != 0 {
            return domain("t is only defined on even subsets of its support");
        }
        let mut out = Rat::one();
        for s in elements(x) {
            if Some(s) != self.first {
                out *= &self.pair_values[&s];
            }
        }
        Ok(out)
    }
}

/// `Σ_{x∈W} ⟨t(x)⟩·q`.
pub fn pfister_times(t: &dyn ScalarMorphism, w: &AffineSubspace, q: &GWClass) -> Result<GWClass> {
    let mut out = GWClass::zero();
    for x in w.points() {
        out = &out + &q.scale_rat(&t.value(x)?)?;
    }
    Ok(out)
}

/// `q = ⟨t⟩⟨⟨δ⟩⟩` with `t` the first entry and `δ = −det q`.
pub fn binary_decompose(q: &DiagForm) -> Result<(Rat, SquareClass)> {
    if q.dim() != 2 {
        return domain("binary_decompose needs a form of dimension 2");
    }
    let e = q.entries();
    Ok((e[0].clone(), squarefree_rep(&-(&e[0] * &e[1]))?))
}

/// The `δ_i`, `t_i` of a family of binary forms `q_i = ⟨t_i⟩⟨⟨δ_i⟩⟩`.
#[derive(Clone, Debug)]
pub struct BinaryFamily {
    pub t: Vec<Rat>,
    pub delta: Vec<SquareClass>,
}

impl BinaryFamily {
    pub fn new(qs: &[DiagForm]) -> Result<Self> {
        let (t, delta) = qs.iter().map(binary_decompose).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        Ok(BinaryFamily { t, delta })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// `δ({i}) = −δ_i`.
    pub fn delta_morphism(&self) -> SquareClassMorphism {
        SquareClassMorphism::new(self.delta.iter().map(SquareClass::negate).collect())
    }

    /// `t({i}) = −t_i`.
    pub fn t_morphism(&self) -> RatMorphism {
        RatMorphism::new(self.t.iter().map(|t| -t.clone()).collect())
    }
}

/// `Ψ^{V,U} = ⟨⟨t|V; δ|U⟩⟩`.
pub fn psi_quad(v: &AffineSubspace, u: &AffineSubspace, fam: &BinaryFamily) -> Result<GWClass> {
    if !v.direction_within(u) {
        return domain("direction of V must lie in the direction of U");
    }
    let univ = (1u32 << fam.len()) - 1;
    if (v.support() | u.support()) & !univ != 0 {
        return domain("subspaces outside the family's index set");
    }
    let delta = PfisterPresentation::new(fam.delta_morphism(), u.clone())?.to_gw();
    pfister_times(&fam.t_morphism(), v, &delta)
}

/// `Ψ₀^{V,U} = Ψ^{V∩P₀(X),U}`, zero when the section is empty.
pub fn psi0_quad(v: &AffineSubspace, u: &AffineSubspace, fam: &BinaryFamily) -> Result<GWClass> {
    if !v.direction_within(u) {
        return domain("direction of V must lie in the direction of U");
    }
    match parity_hyperplane_section(v) {
        Some(v0) => psi_quad(&v0, u, fam),
        None => Ok(GWClass::zero()),
    }
}

/// `Ψ^{J,A} = Ψ^{J+P(A), P(A∪J)}`.
pub fn psi_ja(j: Subset, a: Subset, fam: &BinaryFamily) -> Result<GWClass> {
    psi_quad(&v_subspace(j, a)?, &AffineSubspace::power_set(a | j), fam)
}

pub fn psi0_ja(j: Subset, a: Subset, fam: &BinaryFamily) -> Result<GWClass> {
    psi0_quad(&v_subspace(j, a)?, &AffineSubspace::power_set(a | j), fam)
}

/// `coeff · ⟨scale⟩ · ⟨⟨slots⟩⟩`, a multiple of a general Pfister form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPfister {
    pub coeff: i64,
    pub scale: SquareClass,
    pub slots: Vec<SquareClass>,
}

impl ScaledPfister {
    pub fn new(coeff: i64, scale: SquareClass, slots: Vec<SquareClass>) -> Self {
        ScaledPfister { coeff, scale, slots }
    }

    /// Reads `⟨⟨f|W⟩⟩` as `⟨f(w₀)⟩⟨⟨−f(e_1), …, −f(e_n)⟩⟩`.
    pub fn from_presentation(coeff: i64, p: &PfisterPresentation) -> Self {
        ScaledPfister {
            coeff,
            scale: p.f.eval(p.w.base()),
            slots: p.w.basis().iter().map(|&e| p.f.eval(e).negate()).collect(),
        }
    }

    pub fn fold(&self) -> usize {
        self.slots.len()
    }

    pub fn to_gw(&self) -> GWClass {
        pfister_slots(&self.slots).scale(&self.scale).times(self.coeff)
    }
}

/// Sum of a list of scaled Pfister terms.
pub fn scaled_sum(terms: &[ScaledPfister]) -> GWClass {
    terms.iter().map(ScaledPfister::to_gw).sum()
}

/// Slots of the singleton basis of P(s) under `f`.
pub fn power_set_slots(f: &SquareClassMorphism, s: Subset) -> Vec<SquareClass> {
    elements(s).map(|i| f.eval(singleton(i)).negate()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{gw_equal, witt_equal};
    use crate::rationals::rat;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_i64(n).unwrap()
    }

    fn g(v: &[i64]) -> GWClass {
        DiagForm::from_ints(v).unwrap().to_gw()
    }

    #[test]
    fn pfister_of_examples() {
        // f({1}) = −a, f({2}) = −b with a = 2, b = 3
        let f = SquareClassMorphism::new(vec![sc(-2), sc(-3)]);
        let p = PfisterPresentation::new(f.clone(), AffineSubspace::power_set(0b11)).unwrap();
        assert!(gw_equal(&pfister_of(&p).to_gw(), &g(&[1, -2, -3, 6])));
        let p = PfisterPresentation::new(f.clone(), AffineSubspace::point(0)).unwrap();
        assert_eq!(pfister_of(&p).to_gw(), g(&[1]));
        let p = PfisterPresentation::new(f, AffineSubspace::even_power_set(0b11)).unwrap();
        assert_eq!(pfister_of(&p).to_gw(), g(&[1, 6]));
    }

    #[test]
    fn pfister_times_examples() {
        let q = pfister_slots(&[sc(2), sc(3)]);
        let t = RatMorphism::new(vec![rat(-5)]);
        let out = pfister_times(&t, &AffineSubspace::point(0), &q).unwrap();
        assert_eq!(out, q);
        let out = pfister_times(&t, &AffineSubspace::power_set(0b1), &q).unwrap();
        assert!(gw_equal(&out, &pfister_slots(&[sc(5), sc(2), sc(3)])));
        // q = ⟨1⟩ recovers the plain Pfister form
        let f = SquareClassMorphism::new(vec![sc(-5)]);
        let p = PfisterPresentation::new(f, AffineSubspace::power_set(1)).unwrap();
        assert_eq!(
            pfister_times(&t, &AffineSubspace::power_set(1), &GWClass::one()).unwrap(),
            p.to_gw()
        );
    }

    #[test]
    fn binary_decompose_examples() {
        let q = DiagForm::from_ints(&[2, 3]).unwrap();
        let (t, d) = binary_decompose(&q).unwrap();
        assert_eq!((t.clone(), d.clone()), (rat(2), sc(-6)));
        assert!(gw_equal(&pfister_slots(&[d]).scale_rat(&t).unwrap(), &q.to_gw()));
        let (t, d) = binary_decompose(&DiagForm::from_ints(&[1, -1]).unwrap()).unwrap();
        assert_eq!((t, d), (rat(1), SquareClass::one()));
        assert!(binary_decompose(&DiagForm::from_ints(&[1]).unwrap()).is_err());
    }

    #[test]
    fn psi_examples() {
        let qs = vec![DiagForm::from_ints(&[2, 3]).unwrap()];
        let fam = BinaryFamily::new(&qs).unwrap();
        // Ψ₀^{∅,{i}} = ⟨1, ab⟩
        assert_eq!(psi0_ja(0, 0b1, &fam).unwrap(), g(&[1, 6]));
        let qs = vec![DiagForm::from_ints(&[2, 3]).unwrap(), DiagForm::from_ints(&[5, -7]).unwrap()];
        let fam = BinaryFamily::new(&qs).unwrap();
        let expected = pfister_slots(&[sc(-6), sc(35)]).scale_rat(&rat(10)).unwrap();
        assert!(gw_equal(&psi_ja(0b11, 0, &fam).unwrap(), &expected));
        let hyp = vec![DiagForm::from_ints(&[1, -1]).unwrap(); 2];
        let fam = BinaryFamily::new(&hyp).unwrap();
        assert!(witt_equal(&psi_ja(0, 0b11, &fam).unwrap(), &GWClass::zero()));
        // {1} + P(∅) has no even point
        assert!(psi0_ja(0b1, 0, &fam).unwrap().is_zero());
        assert!(psi_quad(&AffineSubspace::power_set(0b1), &AffineSubspace::power_set(0b10), &fam).is_err());
    }

    #[test]
    fn mod_sim_morphism_on_even_subsets() {
        let t = ModSimMorphism::new(0b111, DiagForm::from_ints(&[1, 1]).unwrap(), |a, b| rat((a + b + 1) as i64));
        assert_eq!(t.value(0b011).unwrap(), rat(2));
        assert_eq!(t.value(0b101).unwrap(), rat(3));
        assert_eq!(t.value(0b110).unwrap(), rat(6));
        assert!(t.value(0b001).is_err());
        assert!(t.congruent(&rat(2), &rat(10)).unwrap());
    }

    #[test]
    fn scaled_pfister_from_presentation() {
        let f = SquareClassMorphism::new(vec![sc(-2), sc(-3), sc(5)]);
        let w = AffineSubspace::new(0b100, vec![0b001, 0b010]).unwrap();
        let p = PfisterPresentation::new(f, w).unwrap();
        let sp = ScaledPfister::from_presentation(1, &p);
        assert_eq!(sp.fold(), 2);
        assert!(gw_equal(&sp.to_gw(), &p.to_gw()));
    }
}
