//! Diagonal skew-hermitian forms over a quaternion algebra with its
//! canonical involution, the graded ring `GW(ℚ) ⊕ GW⁻¹(Q, γ)`, the forms
//! `π(I)`, `φ(I)`, the morphism `t`, `Ψ₀^{J,A}`, and the extension `β̂`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cohomology::{class_of_scaled_pfister_sum, CohClass};
use crate::error::{domain, Error, Result};
use crate::f2comb::{card, elements, parity_hyperplane_section, subsets_of, v_subspace, Subset};
use crate::lambda_ops::{binom, GammaFn};
use crate::pfister::{pfister_slots, ModSimMorphism, ScalarMorphism, ScaledPfister};
use crate::quadform::{diagonalize_gram, witt_equal, witt_filtration_degree, DiagForm, FiltrationDegree, GWClass};
use crate::quaternion::{Quat, QuaternionAlgebra};
use crate::rationals::{rat, squarefree_rep, Rat, SquareClass};

/// `⟨z_1⟩_γ ⊥ … ⊥ ⟨z_n⟩_γ` with pure invertible `z_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermDiagForm {
    algebra: QuaternionAlgebra,
    gens: Vec<Quat>,
}

impl HermDiagForm {
    pub fn new(algebra: QuaternionAlgebra, gens: Vec<Quat>) -> Result<Self> {
        if gens.len() > 16 {
            return domain("at most 16 generators");
        }
        for z in &gens {
            if !z.is_pure() || algebra.nrd(z).is_zero() {
                return domain(format!("generator {z:?} is not pure and invertible"));
            }
        }
        Ok(HermDiagForm { algebra, gens })
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn gens(&self) -> &[Quat] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `z_i ↦ λ·z_i` for all `i`.
    pub fn rescale(&self, lambda: &Rat) -> Result<HermDiagForm> {
        HermDiagForm::new(self.algebra.clone(), self.gens.iter().map(|z| z.scale(lambda)).collect())
    }

    fn square_class(&self, i: usize) -> SquareClass {
        squarefree_rep(&self.algebra.square(&self.gens[i]).expect("pure")).expect("invertible")
    }

    fn check_subset(&self, s: Subset) -> Result<()> {
        if s >> self.len() != 0 {
            return domain("subset outside the generator index set");
        }
        Ok(())
    }
}

/// The GW class of `(x, y) ↦ Trd(x·z·ȳ·z′)` on Q, from its Gram matrix in
/// the basis `1, i, j, k`.
pub fn odd_product(alg: &QuaternionAlgebra, z: &Quat, z2: &Quat) -> Result<GWClass> {
    let basis = [
        Quat::scalar(Rat::one()),
        Quat::pure_ints(1, 0, 0),
        Quat::pure_ints(0, 1, 0),
        Quat::pure_ints(0, 0, 1),
    ];
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| alg.trd(&alg.mul_all(&[x, z, &alg.conj(y), z2])))
                .collect()
        })
        .collect();
    for p in 0..4 {
        for q in 0..p {
            if gram[p][q] != gram[q][p] {
                return Err(Error::Internal("trace Gram matrix is not symmetric".into()));
            }
        }
    }
    let diag = diagonalize_gram(&gram).map_err(|e| Error::Internal(format!("trace form: {e}")))?;
    Ok(DiagForm::new(diag)?.to_gw())
}

/// `⟨z⟩_γ·⟨z′⟩_γ` in the graded ring: `⟨−1⟩` times the trace form of
/// [`odd_product`], so that `⟨z⟩_γ·⟨z′⟩_γ = ⟨−Trd(zz′)⟩·φ` while the trace
/// form itself is `⟨Trd(zz′)⟩·φ`.
pub fn graded_odd_product(alg: &QuaternionAlgebra, z: &Quat, z2: &Quat) -> Result<GWClass> {
    Ok(odd_product(alg, z, z2)?.scale(&SquareClass::one().negate()))
}

/// Slots `z_i²` of `π(I)`.
pub fn pi_slots(s: Subset, form: &HermDiagForm) -> Result<Vec<SquareClass>> {
    form.check_subset(s)?;
    Ok(elements(s).map(|i| form.square_class(i)).collect())
}

/// `π(I) = ⟨⟨z_i²⟩⟩_{i∈I}`.
pub fn pi_form(s: Subset, form: &HermDiagForm) -> Result<DiagForm> {
    pfister_slots(&pi_slots(s, form)?).to_form()
}

/// Slots of `φ(I)`: `z₁², z₀²z₂², z₃², …` with `z₀` anti-commuting with `z₁`;
/// `π(I)` when `|I| ≤ 1`.
pub fn phi_slots(s: Subset, form: &HermDiagForm) -> Result<Vec<SquareClass>> {
    let mut slots = pi_slots(s, form)?;
    if slots.len() >= 2 {
        let first = elements(s).next().expect("nonempty");
        let z0 = form.algebra.find_anticommuting(&form.gens[first])?;
        let z0sq = squarefree_rep(&form.algebra.square(&z0)?)?;
        slots[1] = slots[1].mul(&z0sq);
    }
    Ok(slots)
}

pub fn norm_form_gw(alg: &QuaternionAlgebra) -> GWClass {
    alg.norm_form().to_gw()
}

/// `φ(I)`, checked to be Witt-equivalent to `π(I) − 2^{|I|−2}·n_Q`.
pub fn phi_form(s: Subset, form: &HermDiagForm) -> Result<DiagForm> {
    let phi = pfister_slots(&phi_slots(s, form)?);
    let n = card(s);
    if n >= 2 {
        let expected = &pfister_slots(&pi_slots(s, form)?) - &norm_form_gw(&form.algebra).times(1 << (n - 2));
        if !witt_equal(&phi, &expected) {
            return Err(Error::Internal("phi(I) is not Witt-equivalent to pi(I) - 2^(|I|-2) n_Q".into()));
        }
    }
    phi.to_form()
}

/// `t: P₀(S) → ℚ^×/G(φ(S))` with `t({s₀, s}) = −Trd(z_{s₀} z_s)`, or `1`
/// when that trace vanishes.
pub fn t_morphism(s: Subset, form: &HermDiagForm) -> Result<ModSimMorphism> {
    if card(s) < 2 {
        return domain("t needs at least two indices");
    }
    let phi = pfister_slots(&phi_slots(s, form)?).to_form()?;
    let alg = &form.algebra;
    Ok(ModSimMorphism::new(s, phi, |a, b| {
        let tr = alg.trd(&alg.mul(&form.gens[a], &form.gens[b]));
        if tr.is_zero() {
            Rat::one()
        } else {
            -tr
        }
    }))
}

/// Points and `t`-values of `W_{J,A} = (J + P(A)) ∩ P₀(X)`, as a scaled
/// Pfister presentation over `φ(A∪J)`: `⟨t(w₀)⟩⟨⟨−t(e_1), …⟩⟩φ(A∪J)`.
pub fn psi0_herm_term(j: Subset, a: Subset, form: &HermDiagForm) -> Result<Option<ScaledPfister>> {
    form.check_subset(j | a)?;
    let w = match parity_hyperplane_section(&v_subspace(j, a)?) {
        Some(w) => w,
        None => return Ok(None),
    };
    let s = a | j;
    let phi = phi_slots(s, form)?;
    let t = if card(s) >= 2 { Some(t_morphism(s, form)?) } else { None };
    let value = |x: Subset| -> Result<Rat> {
        match &t {
            Some(t) => t.value(x),
            None => Ok(Rat::one()),
        }
    };
    let mut slots: Vec<SquareClass> = w
        .basis()
        .iter()
        .map(|&e| Ok(squarefree_rep(&value(e)?)?.negate()))
        .collect::<Result<_>>()?;
    slots.extend(phi);
    Ok(Some(ScaledPfister::new(1, squarefree_rep(&value(w.base())?)?, slots)))
}

/// `Ψ₀^{J,A} = Σ_{x∈W_{J,A}} ⟨t(x)⟩·φ(A∪J)`.
pub fn psi0_herm(j: Subset, a: Subset, form: &HermDiagForm) -> Result<GWClass> {
    form.check_subset(j | a)?;
    let w = match parity_hyperplane_section(&v_subspace(j, a)?) {
        Some(w) => w,
        None => return Ok(GWClass::zero()),
    };
    let s = a | j;
    let phi = pfister_slots(&phi_slots(s, form)?);
    let t = if card(s) >= 2 { Some(t_morphism(s, form)?) } else { None };
    let mut out = GWClass::zero();
    for x in w.points() {
        let tx = match &t {
            Some(t) => t.value(x)?,
            None => Rat::one(),
        };
        out = &out + &phi.scale_rat(&tx)?;
    }
    Ok(out)
}

/// An element of `GW(ℚ) ⊕ GW⁻¹(Q, γ)`: an even class plus a formal
/// integer combination of rank-one forms `⟨z⟩_γ`. Odd·odd products go
/// through [`graded_odd_product`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedGWElement {
    pub even: GWClass,
    pub odd: BTreeMap<Quat, i64>,
}

impl GradedGWElement {
    pub fn even(x: GWClass) -> Self {
        GradedGWElement { even: x, odd: BTreeMap::new() }
    }

    pub fn odd_gen(z: &Quat, m: i64) -> Self {
        let mut odd = BTreeMap::new();
        if m != 0 {
            odd.insert(z.clone(), m);
        }
        GradedGWElement { even: GWClass::zero(), odd }
    }

    pub fn add(&self, other: &GradedGWElement) -> GradedGWElement {
        let mut odd = self.odd.clone();
        for (z, m) in &other.odd {
            let e = odd.entry(z.clone()).or_insert(0);
            *e += m;
            if *e == 0 {
                odd.remove(z);
            }
        }
        GradedGWElement { even: &self.even + &other.even, odd }
    }

    pub fn mul(&self, other: &GradedGWElement, alg: &QuaternionAlgebra) -> Result<GradedGWElement> {
        let mut out = GradedGWElement::even(&self.even * &other.even);
        // even · odd: ⟨c⟩·⟨z⟩_γ = ⟨cz⟩_γ
        for (x, y) in [(self, other), (other, self)] {
            for (c, m) in x.even.terms() {
                for (z, n) in &y.odd {
                    out = out.add(&GradedGWElement::odd_gen(&z.scale(&c.to_rat()), m * n));
                }
            }
        }
        for (z, m) in &self.odd {
            for (z2, n) in &other.odd {
                out.even = &out.even + &graded_odd_product(alg, z, z2)?.times(m * n);
            }
        }
        Ok(out)
    }
}

/// `P_2^d(⟨z⟩_γ)`: `1`, `2 − ⟨z⟩_γ`, `⟨⟨z²⟩⟩ − ⟨z⟩_γ`.
pub fn herm_p2(alg: &QuaternionAlgebra, z: &Quat, d: usize) -> Result<GradedGWElement> {
    Ok(match d {
        0 => GradedGWElement::even(GWClass::one()),
        1 => GradedGWElement::even(GWClass::integer(2)).add(&GradedGWElement::odd_gen(z, -1)),
        2 => {
            let zz = squarefree_rep(&alg.square(z)?)?;
            GradedGWElement::even(pfister_slots(&[zz])).add(&GradedGWElement::odd_gen(z, -1))
        }
        _ => return domain("P_2^d needs d <= 2"),
    })
}

/// Even component of `P_n^d(h) = Σ_{|γ|=d} Π_i P_2^{γ(i)}(⟨z_i⟩_γ)`.
#[allow(non_snake_case)]
pub fn Q_herm(n: usize, d: usize, form: &HermDiagForm) -> Result<GWClass> {
    if n != 2 * form.len() {
        return domain("Q_herm needs n = 2·(number of generators)");
    }
    if d > n {
        return domain("Q_herm needs d <= n");
    }
    let alg = &form.algebra;
    let mut total = GWClass::zero();
    for gamma in GammaFn::all_with_size(form.len(), 2, d) {
        let mut prod = GradedGWElement::even(GWClass::one());
        for (z, &g) in form.gens.iter().zip(gamma.values()) {
            prod = prod.mul(&herm_p2(alg, z, g)?, alg)?;
        }
        total = &total + &prod.even;
    }
    Ok(total)
}

fn nq_sum(x: usize, d: usize, min_a: usize) -> i64 {
    (min_a..=x)
        .filter(|&a| 2 * a <= d && d <= x + a)
        .map(|a| binom(x as i64, a as i64) * binom((x - a) as i64, (d - 2 * a) as i64) << (d - a - 2))
        .sum()
}

/// `N(x, d) = Σ_{A⊆X, 2|A| ≤ d ≤ x+|A|} C(x−|A|, d−2|A|)·2^{d−|A|−2}`.
#[allow(non_snake_case)]
pub fn N_coeff(x: usize, d: usize) -> Result<i64> {
    if d % 2 != 0 || d <= 2 || d > 2 * x {
        return domain("N(x, d) needs d even with 2 < d <= 2x");
    }
    let n = nq_sum(x, d, 0);
    debug_assert_eq!(n % (1 << (d / 2 - 2)), 0);
    Ok(n)
}

/// The multiplicity of `n_Q` in `Q_n^d(h)` once every `π(A)` with `|A| ≥ 2`
/// is rewritten as `φ(A) + 2^{|A|−2}·n_Q`: the terms of `N` with `|A| ≥ 2`.
pub fn nq_multiplicity(x: usize, d: usize) -> Result<i64> {
    if d % 2 != 0 || d > 2 * x {
        return domain("n_Q multiplicity needs d even with d <= 2x");
    }
    Ok(if d < 4 { 0 } else { nq_sum(x, d, 2) })
}

/// The `Ψ₀` side of the decomposition of `Q_n^d(h)`: pairs `(c, J, A)` with
/// `c = C(|X|+|A|−k, |X|+|A|−d)·2^{d−k}` and `k = 2|A| + |J|`.
pub fn qnd_psi_terms(x: usize, d: usize) -> Vec<(i64, Subset, Subset)> {
    let full = if x == 0 { 0 } else { (1u32 << x) - 1 };
    let mut out = Vec::new();
    for a in subsets_of(full) {
        for j in subsets_of(full & !a) {
            let (na, nj) = (card(a) as usize, card(j) as usize);
            let k = 2 * na + nj;
            if 2 * na > d || d > x + na || k > d {
                continue;
            }
            let c = binom((x + na - k) as i64, (x + na - d) as i64) << (d - k);
            if c != 0 {
                out.push((c, j, a));
            }
        }
    }
    out
}

/// Right side `nq·n_Q + Σ c·Ψ₀^{J,A}` of the decomposition of `Q_n^d(h)`.
pub fn qnd_quat_rhs(d: usize, form: &HermDiagForm, nq: i64) -> Result<GWClass> {
    let mut rhs = norm_form_gw(&form.algebra).times(nq);
    for (c, j, a) in qnd_psi_terms(form.len(), d) {
        rhs = &rhs + &psi0_herm(j, a, form)?.times(c);
    }
    Ok(rhs)
}

/// `Q_n^d(h) = N'·n_Q + Σ C(…)·2^{d−k}·Ψ₀^{J,A}` in W(ℚ), with `N'` the
/// multiplicity from [`nq_multiplicity`].
pub fn verify_qnd_quat(d: usize, form: &HermDiagForm) -> Result<bool> {
    let x = form.len();
    let lhs = Q_herm(2 * x, d, form)?;
    let rhs = qnd_quat_rhs(d, form, nq_multiplicity(x, d)?)?;
    Ok(witt_equal(&lhs, &rhs))
}

/// The `n_Q` coefficient subtracted in `β̂`; zero when `d ≤ 2`.
fn beta_n(x: usize, d: usize) -> Result<i64> {
    if d <= 2 {
        Ok(0)
    } else {
        N_coeff(x, d)
    }
}

fn coeff_value(a: &[ScaledPfister]) -> GWClass {
    crate::pfister::scaled_sum(a)
}

fn product_terms(a: &[ScaledPfister], b: &[ScaledPfister]) -> Vec<ScaledPfister> {
    let mut out = Vec::new();
    for s in a {
        for t in b {
            let mut slots = s.slots.clone();
            slots.extend(t.slots.iter().cloned());
            out.push(ScaledPfister::new(s.coeff * t.coeff, s.scale.mul(&t.scale), slots));
        }
    }
    out
}

fn check_even_degrees(coeffs: &[(Vec<ScaledPfister>, usize)], x: usize) -> Result<()> {
    for (_, d) in coeffs {
        if d % 2 != 0 || *d > 2 * x {
            return domain("beta_hat coefficients need even d <= 2·(number of generators)");
        }
    }
    Ok(())
}

/// The degree `m` guaranteed for `β = Σ a_d Q^d`: `min_d (deg a_d + d − 1)`.
pub fn expected_degree(coeffs: &[(Vec<ScaledPfister>, usize)]) -> FiltrationDegree {
    coeffs
        .iter()
        .filter_map(|(a, d)| match witt_filtration_degree(&coeff_value(a)) {
            FiltrationDegree::Infinite => None,
            FiltrationDegree::Finite(k) => Some(FiltrationDegree::Finite((k + *d as u32).saturating_sub(1))),
        })
        .min()
        .unwrap_or(FiltrationDegree::Infinite)
}

/// `β̂ = Σ a_d·Q^d(h) − Σ a_d·N(|X|, d)·n_Q`, checked to lie in `I^m` with
/// `m` from [`expected_degree`].
pub fn beta_hat(coeffs: &[(Vec<ScaledPfister>, usize)], form: &HermDiagForm) -> Result<GWClass> {
    let x = form.len();
    check_even_degrees(coeffs, x)?;
    let nq = norm_form_gw(&form.algebra);
    let mut out = GWClass::zero();
    for (a, d) in coeffs {
        let a = coeff_value(a);
        let term = &Q_herm(2 * x, *d, form)? - &nq.times(beta_n(x, *d)?);
        out = &out + &(&a * &term);
    }
    if let FiltrationDegree::Finite(m) = expected_degree(coeffs) {
        if !witt_filtration_degree(&out).at_least(m) {
            return Err(Error::Property(format!("beta_hat is not in I^{m}")));
        }
    }
    Ok(out)
}

/// `β̂` as a sum of scaled Pfister forms: for each `d`, the `Ψ₀` terms of
/// `Q^d(h)` and the leftover `(N' − N)·n_Q`, multiplied by `a_d`.
pub fn beta_hat_terms(coeffs: &[(Vec<ScaledPfister>, usize)], form: &HermDiagForm) -> Result<Vec<ScaledPfister>> {
    let x = form.len();
    check_even_degrees(coeffs, x)?;
    let alg = &form.algebra;
    let nq = ScaledPfister::new(
        1,
        SquareClass::one(),
        vec![squarefree_rep(alg.a())?, squarefree_rep(alg.b())?],
    );
    let mut out = Vec::new();
    for (a, d) in coeffs {
        let mut parts = Vec::new();
        if *d == 0 {
            parts.push(ScaledPfister::new(1, SquareClass::one(), vec![]));
        } else {
            let extra = nq_multiplicity(x, *d)? - beta_n(x, *d)?;
            if extra != 0 {
                parts.push(ScaledPfister { coeff: extra, ..nq.clone() });
            }
            for (c, j, aa) in qnd_psi_terms(x, *d) {
                if let Some(mut t) = psi0_herm_term(j, aa, form)? {
                    t.coeff = c;
                    parts.push(t);
                }
            }
        }
        out.extend(product_terms(a, &parts));
    }
    Ok(out)
}

/// The class of `β̂` in `h^m(ℚ)`, read off its Pfister decomposition.
pub fn extension_class(coeffs: &[(Vec<ScaledPfister>, usize)], form: &HermDiagForm, m: usize) -> Result<CohClass> {
    class_of_scaled_pfister_sum(&beta_hat_terms(coeffs, form)?, m)
}

/// The binary form attached to `z = x·i + y·j + w·k` in `(1, 1)` by the
/// matrix model `i ↦ diag(1, −1)`, `j ↦ antidiag(1, 1)`.
pub fn morita_split_11(alg: &QuaternionAlgebra, z: &Quat) -> Result<DiagForm> {
    if alg.a() != &rat(1) || alg.b() != &rat(1) {
        return domain("the Morita model is only defined for (1, 1)");
    }
    if !z.is_pure() || alg.nrd(z).is_zero() {
        return domain("morita_split_11 needs a pure invertible quaternion");
    }
    let [_, x, y, w] = &z.0;
    let gram = vec![vec![y - w, -x.clone()], vec![-x.clone(), -(y + w)]];
    DiagForm::new(diagonalize_gram(&gram)?)
}

/// `⟨⟨z²⟩⟩·n_Q = 2·n_Q` in W(ℚ).
pub fn check_z_nq(alg: &QuaternionAlgebra, z: &Quat) -> Result<bool> {
    let zz = squarefree_rep(&alg.square(z)?)?;
    let nq = norm_form_gw(alg);
    Ok(witt_equal(&(&pfister_slots(&[zz]) * &nq), &nq.times(2)))
}

/// Which of `π`, `φ` a product factor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiPhi {
    Pi,
    Phi,
}

fn pi_phi_gw(kind: PiPhi, s: Subset, form: &HermDiagForm) -> Result<GWClass> {
    Ok(pfister_slots(&match kind {
        PiPhi::Pi => pi_slots(s, form)?,
        PiPhi::Phi => phi_slots(s, form)?,
    }))
}

/// The product table: a product of two of `π(I)`, `φ(J)` is
/// `2^{|I∩J|}·φ(I∪J)` when every `φ` factor has at least two indices, and
/// `2^{|I∩J|}·π(I∪J)` otherwise. Returns `(in W, in GW)`.
pub fn check_pi_phi_product(
    k1: PiPhi,
    i: Subset,
    k2: PiPhi,
    j: Subset,
    form: &HermDiagForm,
) -> Result<(bool, bool)> {
    let lhs = &pi_phi_gw(k1, i, form)? * &pi_phi_gw(k2, j, form)?;
    let effective = |k: PiPhi, s: Subset| if card(s) <= 1 { PiPhi::Pi } else { k };
    let kind = match (effective(k1, i), effective(k2, j)) {
        (PiPhi::Pi, PiPhi::Pi) => PiPhi::Pi,
        _ => PiPhi::Phi,
    };
    let rhs = pi_phi_gw(kind, i | j, form)?.times(1 << card(i & j));
    Ok((witt_equal(&lhs, &rhs), crate::quadform::gw_equal(&lhs, &rhs)))
}

/// `t({i,j})·t({i,k})·t({j,k}) ∈ G(φ({i,j,k}))` with the representatives
/// `−Trd(z_a z_b)`, or `1` for a vanishing trace.
pub fn check_t_cocycle(form: &HermDiagForm, i: usize, j: usize, k: usize) -> Result<bool> {
    let s: Subset = (1 << i) | (1 << j) | (1 << k);
    if card(s) != 3 {
        return domain("t cocycle needs three distinct indices");
    }
    form.check_subset(s)?;
    let alg = &form.algebra;
    let rep = |a: usize, b: usize| {
        let tr = alg.trd(&alg.mul(&form.gens[a], &form.gens[b]));
        if tr.is_zero() {
            Rat::one()
        } else {
            -tr
        }
    };
    let prod = rep(i, j) * rep(i, k) * rep(j, k);
    crate::quadform::in_similarity_group(&prod, &phi_form(s, form)?)
}

/// The signs `s` with `trace form = ⟨s·Trd(zz′)⟩·φ({z, z′})`; `None` when
/// the trace vanishes.
pub fn trace_form_signs(alg: &QuaternionAlgebra, z: &Quat, z2: &Quat) -> Result<Option<Vec<i8>>> {
    let tr = alg.trd(&alg.mul(z, z2));
    if tr.is_zero() {
        return Ok(None);
    }
    let form = HermDiagForm::new(alg.clone(), vec![z.clone(), z2.clone()])?;
    let phi = pfister_slots(&phi_slots(0b11, &form)?);
    let g = odd_product(alg, z, z2)?;
    let mut signs = Vec::new();
    for sgn in [1i8, -1] {
        if crate::quadform::gw_equal(&g, &phi.scale_rat(&(&tr * rat(sgn as i64)))?) {
            signs.push(sgn);
        }
    }
    Ok(Some(signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::gw_equal;

    fn alg(a: i64, b: i64) -> QuaternionAlgebra {
        QuaternionAlgebra::from_ints(a, b).unwrap()
    }

    fn form(a: i64, b: i64, gens: &[(i64, i64, i64)]) -> HermDiagForm {
        HermDiagForm::new(alg(a, b), gens.iter().map(|&(x, y, w)| Quat::pure_ints(x, y, w)).collect()).unwrap()
    }

    fn g(v: &[i64]) -> GWClass {
        DiagForm::from_ints(v).unwrap().to_gw()
    }

    #[test]
    fn odd_product_examples() {
        let q = alg(-1, -1);
        let i = Quat::pure_ints(1, 0, 0);
        let j = Quat::pure_ints(0, 1, 0);
        assert!(gw_equal(&odd_product(&q, &i, &i).unwrap(), &g(&[-2, -2, 2, 2])));
        assert!(gw_equal(&odd_product(&q, &i, &j).unwrap(), &g(&[1, -1, 1, -1])));
        let z = Quat::pure_ints(1, 2, -1);
        assert_eq!(odd_product(&q, &z, &z).unwrap().rank(), 4);
        assert_eq!(
            graded_odd_product(&q, &i, &i).unwrap(),
            odd_product(&q, &i, &i).unwrap().scale(&SquareClass::one().negate())
        );
    }

    #[test]
    fn trace_form_sign_is_plus() {
        // (3, −7), z = z' = j: Trd = −14, and −1 is not a similarity factor of φ
        let q = alg(3, -7);
        let j = Quat::pure_ints(0, 1, 0);
        assert_eq!(trace_form_signs(&q, &j, &j).unwrap(), Some(vec![1]));
        assert_eq!(trace_form_signs(&q, &Quat::pure_ints(1, 0, 0), &j).unwrap(), None);
    }

    #[test]
    fn pi_phi_table() {
        let h = form(-1, -3, &[(1, 0, 0), (0, 1, 1), (1, 1, 0)]);
        for kinds in [(PiPhi::Pi, PiPhi::Pi), (PiPhi::Pi, PiPhi::Phi), (PiPhi::Phi, PiPhi::Phi)] {
            for i in 0..8 {
                for j in 0..8 {
                    assert!(check_pi_phi_product(kinds.0, i, kinds.1, j, &h).unwrap().0);
                }
            }
        }
    }

    #[test]
    fn cocycle_and_z_nq() {
        let h = form(-1, -1, &[(1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        assert!(check_t_cocycle(&h, 0, 1, 2).unwrap());
        assert!(check_t_cocycle(&h, 0, 0, 2).is_err());
        assert!(check_z_nq(h.algebra(), &Quat::pure_ints(1, 1, 1)).unwrap());
    }

    #[test]
    fn pi_phi_examples() {
        let h = form(-1, -1, &[(1, 0, 0), (0, 1, 0)]);
        assert_eq!(pi_form(0, &h).unwrap().to_gw(), g(&[1]));
        assert!(gw_equal(&pi_form(0b01, &h).unwrap().to_gw(), &g(&[1, 1])));
        assert!(gw_equal(&pi_form(0b11, &h).unwrap().to_gw(), &g(&[1, 1, 1, 1])));
        assert!(gw_equal(&phi_form(0b11, &h).unwrap().to_gw(), &g(&[1, 1, -1, -1])));
        assert_eq!(phi_form(0b01, &h).unwrap(), pi_form(0b01, &h).unwrap());
    }

    #[test]
    fn n_coefficients() {
        assert_eq!(N_coeff(2, 4).unwrap(), 1);
        assert_eq!(N_coeff(3, 4).unwrap(), 9);
        assert!(N_coeff(3, 3).is_err());
        assert!(N_coeff(2, 2).is_err());
        assert_eq!(nq_multiplicity(3, 4).unwrap(), 3);
        assert_eq!(nq_multiplicity(2, 4).unwrap(), 1);
        for x in 1..=6 {
            for d in (4..=2 * x).step_by(2) {
                assert_eq!(N_coeff(x, d).unwrap() % (1 << (d / 2 - 2)), 0);
            }
        }
    }

    #[test]
    fn psi0_examples() {
        let h = form(2, 5, &[(1, 1, 0), (0, 1, 1), (1, 0, 2)]);
        assert!(gw_equal(&psi0_herm(0, 0b001, &h).unwrap(), &pfister_slots(&pi_slots(0b001, &h).unwrap())));
        assert!(psi0_herm(0b001, 0, &h).unwrap().is_zero());
        assert!(psi0_herm(0b011, 0b001, &h).is_err());
    }

    #[test]
    fn morita_examples() {
        let q = alg(1, 1);
        assert!(gw_equal(&morita_split_11(&q, &Quat::pure_ints(1, 0, 0)).unwrap().to_gw(), &g(&[1, -1])));
        assert_eq!(morita_split_11(&q, &Quat::pure_ints(0, 1, 0)).unwrap().to_gw(), g(&[1, -1]));
        assert!(morita_split_11(&alg(-1, -1), &Quat::pure_ints(1, 0, 0)).is_err());
    }

    #[test]
    fn small_qnd_instance() {
        let h = form(-1, -1, &[(1, 0, 0), (0, 1, 0)]);
        assert!(verify_qnd_quat(4, &h).unwrap());
    }
}
