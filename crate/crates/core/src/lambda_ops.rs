//! λ-operations on GW(ℚ), the invariants `P_r^d`, `Q_n^d`, their family
//! versions `P_m^γ`, `Q_m^γ`, Stiefel-Whitney classes, and the identities
//! relating them.

use crate::cohomology::{coh_equal, cup, CohClass};
use crate::error::{domain, Result};
use crate::f2comb::{card, elements, singleton, subsets_of, theta, AffineSubspace, Subset};
use crate::pfister::{psi0_ja, psi_ja, BinaryFamily, PfisterPresentation, SquareClassMorphism};
use crate::quadform::{gw_equal, witt_equal, witt_filtration_degree, DiagForm, GWClass};

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `[λ⁰(x), λ¹(x), …]` for an honest class `x`, via `λ_t(x + ⟨c⟩) = λ_t(x)(1 + ⟨c⟩t)`.
pub fn lambda_all(x: &GWClass) -> Result<Vec<GWClass>> {
    let mut out = vec![GWClass::one()];
    for (c, m) in x.terms() {
        if *m < 0 {
            return domain("λ-operations need an honest form");
        }
        let line = GWClass::of_class(c.clone());
        for _ in 0..*m {
            out.push(GWClass::zero());
            for k in (1..out.len()).rev() {
                let add = &out[k - 1] * &line;
                out[k] = &out[k] + &add;
            }
        }
    }
    Ok(out)
}

/// `λ^d(⟨a_i⟩) = ⟨a_I⟩_{|I|=d}`.
pub fn lambda_d(q: &DiagForm, d: usize) -> GWClass {
    lambda_all(&q.to_gw())
        .expect("diagonal forms are honest")
        .into_iter()
        .nth(d)
        .unwrap_or_default()
}

/// Even and odd parts of a value: terms from `λ^k` with `k` even or odd.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EvenOddPair {
    pub even: GWClass,
    pub odd: GWClass,
}

impl EvenOddPair {
    pub fn total(&self) -> GWClass {
        &self.even + &self.odd
    }
}

/// `P_r^d` split by the parity of `k` in `Σ_k (−1)^k C(r−k, d−k) λ^k`.
pub fn p_even_odd(r: usize, d: usize, q: &DiagForm) -> Result<EvenOddPair> {
    if d > r {
        return domain(format!("P_r^d needs d <= r (got r = {r}, d = {d})"));
    }
    let lam = lambda_all(&q.to_gw())?;
    let mut out = EvenOddPair::default();
    for (k, l) in lam.iter().enumerate().take(d + 1) {
        let c = binom((r - k) as i64, (d - k) as i64) * if k % 2 == 0 { 1 } else { -1 };
        let term = l.times(c);
        if k % 2 == 0 {
            out.even = &out.even + &term;
        } else {
            out.odd = &out.odd + &term;
        }
    }
    Ok(out)
}

/// `P_r^d = Σ_{k=0}^d (−1)^k C(r−k, d−k) λ^k`.
#[allow(non_snake_case)]
pub fn P(r: usize, d: usize, q: &DiagForm) -> Result<GWClass> {
    Ok(p_even_odd(r, d, q)?.total())
}

/// The even part of `P_n^d`.
#[allow(non_snake_case)]
pub fn Q(n: usize, d: usize, q: &DiagForm) -> Result<GWClass> {
    Ok(p_even_odd(n, d, q)?.even)
}

/// A function `γ: X → {0, …, m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFn {
    values: Vec<usize>,
    m: usize,
}

impl GammaFn {
    pub fn new(values: Vec<usize>, m: usize) -> Result<Self> {
        if values.iter().any(|&v| v > m) {
            return domain(format!("gamma values must be <= {m}"));
        }
        Ok(GammaFn { values, m })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|γ| = Σ γ(i)`.
    pub fn size(&self) -> usize {
        self.values.iter().sum()
    }

    /// Every `γ: {0..n} → {0..m}` with `|γ| = d`.
    pub fn all_with_size(n: usize, m: usize, d: usize) -> Vec<GammaFn> {
        GammaFn::all(n, m).into_iter().filter(|g| g.size() == d).collect()
    }

    pub fn all(n: usize, m: usize) -> Vec<GammaFn> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    (0..=m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|values| GammaFn { values, m }).collect()
    }

    /// `γ⁻¹(v)` as a subset.
    pub fn preimage(&self, v: usize) -> Subset {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == v)
            .fold(0, |acc, (i, _)| acc | singleton(i))
    }
}

fn check_family(gamma: &GammaFn, qs: &[DiagForm]) -> Result<()> {
    if gamma.values.len() != qs.len() {
        return domain("gamma and family have different index sets");
    }
    if qs.iter().any(|q| q.dim() != gamma.m) {
        return domain(format!("every form in the family must have dimension {}", gamma.m));
    }
    Ok(())
}

/// `P_m^γ((q_i)) = Π P_m^{γ(i)}(q_i)`.
#[allow(non_snake_case)]
pub fn P_gamma(gamma: &GammaFn, qs: &[DiagForm]) -> Result<GWClass> {
    check_family(gamma, qs)?;
    let mut out = GWClass::one();
    for (q, &g) in qs.iter().zip(&gamma.values) {
        out = &out * &P(gamma.m, g, q)?;
    }
    Ok(out)
}

/// Even part of `P_m^γ`: products with an even number of odd factors.
#[allow(non_snake_case)]
pub fn Q_gamma(gamma: &GammaFn, qs: &[DiagForm]) -> Result<GWClass> {
    check_family(gamma, qs)?;
    // Running (even, odd) pair of the partial product.
    let mut acc = EvenOddPair { even: GWClass::one(), odd: GWClass::zero() };
    for (q, &g) in qs.iter().zip(&gamma.values) {
        let f = p_even_odd(gamma.m, g, q)?;
        acc = EvenOddPair {
            even: &(&acc.even * &f.even) + &(&acc.odd * &f.odd),
            odd: &(&acc.even * &f.odd) + &(&acc.odd * &f.even),
        };
    }
    Ok(acc.even)
}

/// `w_d(⟨a_i⟩) = Σ_{|I|=d} (a_i)_{i∈I}`.
pub fn w_d(q: &DiagForm, d: usize) -> CohClass {
    let classes = q.classes();
    let n = classes.len();
    let mut symbols = Vec::new();
    if n < 32 {
        for s in subsets_of((1u32 << n) - 1) {
            if card(s) as usize == d {
                symbols.push(elements(s).map(|i| classes[i].clone()).collect());
            }
        }
    }
    CohClass::from_symbols(d, symbols).expect("symbols have length d")
}

/// `w_γ((q_i)) = ∪_i w_{γ(i)}(q_i)`.
pub fn w_gamma(gamma: &GammaFn, qs: &[DiagForm]) -> Result<CohClass> {
    check_family(gamma, qs)?;
    Ok(qs
        .iter()
        .zip(&gamma.values)
        .fold(CohClass::one(), |acc, (q, &g)| cup(&acc, &w_d(q, g))))
}

fn orth_all(qs: &[DiagForm]) -> DiagForm {
    qs.iter()
        .skip(1)
        .fold(qs.first().cloned().unwrap_or_else(|| DiagForm::new(vec![]).unwrap()), |acc, q| acc.orth(q))
}

/// `P_{s+t}^d(q₁ ⊥ q₂) = Σ_{d₁+d₂=d} P_s^{d₁}(q₁)·P_t^{d₂}(q₂)` in GW.
pub fn check_sum_rule(s: usize, t: usize, d: usize, q1: &DiagForm, q2: &DiagForm) -> Result<bool> {
    let lhs = P(s + t, d, &q1.orth(q2))?;
    let mut rhs = GWClass::zero();
    for d1 in 0..=d.min(s) {
        let d2 = d - d1;
        if d2 <= t {
            rhs = &rhs + &(&P(s, d1, q1)? * &P(t, d2, q2)?);
        }
    }
    Ok(gw_equal(&lhs, &rhs))
}

/// `Σ_{|I|=d} ⟨⟨f|P(I)⟩⟩` with `f({i}) = −a_i`.
pub fn pfister_expansion(q: &DiagForm, d: usize) -> GWClass {
    let f = SquareClassMorphism::of_diagonal(q);
    let n = q.dim();
    subsets_of((1u32 << n) - 1)
        .filter(|&s| card(s) as usize == d)
        .map(|s| {
            PfisterPresentation::new(f.clone(), AffineSubspace::power_set(s))
                .expect("subset inside universe")
                .to_gw()
        })
        .sum()
}

/// `P_r^d(⟨a_i⟩) = Σ_{|I|=d} ⟨⟨f|P(I)⟩⟩` in W(ℚ), for `dim q = r`, and
/// the value lies in I^d.
pub fn check_prd_expansion(r: usize, d: usize, q: &DiagForm) -> Result<bool> {
    if q.dim() != r {
        return domain("check_prd_expansion needs dim q = r");
    }
    let lhs = P(r, d, q)?;
    Ok(witt_equal(&lhs, &pfister_expansion(q, d)) && witt_filtration_degree(&lhs).at_least(d as u32))
}

/// `P_{rm}^d(Σ q_i) = Σ_{|γ|=d} P_m^γ` (GW) and the matching identity for
/// `w_d` (h^d).
pub fn check_decom_prd_gamma(m: usize, d: usize, qs: &[DiagForm]) -> Result<bool> {
    let r = qs.len();
    let total = orth_all(qs);
    let gammas = GammaFn::all_with_size(r, m, d);
    let mut rhs = GWClass::zero();
    let mut w_rhs = CohClass::zero(d);
    for g in &gammas {
        rhs = &rhs + &P_gamma(g, qs)?;
        w_rhs = w_rhs.add(&w_gamma(g, qs)?)?;
    }
    Ok(gw_equal(&P(r * m, d, &total)?, &rhs) && coh_equal(&w_d(&total, d), &w_rhs)?)
}

/// `Q_{rm}^d(Σ q_i) = Σ_{|γ|=d} Q_m^γ` in GW.
pub fn check_decom_qrd_gamma(m: usize, d: usize, qs: &[DiagForm]) -> Result<bool> {
    let r = qs.len();
    let mut rhs = GWClass::zero();
    for g in GammaFn::all_with_size(r, m, d) {
        rhs = &rhs + &Q_gamma(&g, qs)?;
    }
    Ok(gw_equal(&Q(r * m, d, &orth_all(qs))?, &rhs))
}

/// The image of `P_{m|Y|}^γ` (and of `Q_{m|Y|}^γ`) in invariants of
/// `(Quad_m)^{X×Y}`: `Σ_{ω_X=γ} P_m^ω`. Forms are indexed `i·|Y| + j`.
pub fn check_prd_gamma_omega(m: usize, ny: usize, gamma: &[usize], qs: &[DiagForm]) -> Result<bool> {
    let nx = gamma.len();
    if qs.len() != nx * ny {
        return domain("family must be indexed by X × Y");
    }
    let grouped: Vec<DiagForm> = (0..nx).map(|i| orth_all(&qs[i * ny..(i + 1) * ny])).collect();
    let g = GammaFn::new(gamma.to_vec(), m * ny)?;
    let lhs_p = P_gamma(&g, &grouped)?;
    let lhs_q = Q_gamma(&g, &grouped)?;
    let mut rhs_p = GWClass::zero();
    let mut rhs_q = GWClass::zero();
    for omega in GammaFn::all(nx * ny, m) {
        let fits = (0..nx).all(|i| omega.values[i * ny..(i + 1) * ny].iter().sum::<usize>() == gamma[i]);
        if fits {
            rhs_p = &rhs_p + &P_gamma(&omega, qs)?;
            rhs_q = &rhs_q + &Q_gamma(&omega, qs)?;
        }
    }
    Ok(gw_equal(&lhs_p, &rhs_p) && gw_equal(&lhs_q, &rhs_q))
}

fn pfister_sums_over(f: &SquareClassMorphism, sets: impl Iterator<Item = Subset>) -> (GWClass, GWClass) {
    let mut full = GWClass::zero();
    let mut even = GWClass::zero();
    for s in sets {
        full = &full + &PfisterPresentation::new(f.clone(), AffineSubspace::power_set(s)).unwrap().to_gw();
        even = &even + &PfisterPresentation::new(f.clone(), AffineSubspace::even_power_set(s)).unwrap().to_gw();
    }
    (full, even)
}

/// The four identities obtained by diagonalizing each `q_i` as
/// `⟨a_{i,j}⟩_{j∈Y}`, checked in W(ℚ).
pub fn check_pq_split(gamma: &[usize], qs: &[DiagForm]) -> Result<bool> {
    let nx = qs.len();
    if gamma.len() != nx || nx == 0 {
        return domain("gamma and family have different index sets");
    }
    let ny = qs[0].dim();
    if qs.iter().any(|q| q.dim() != ny) || nx * ny > 16 {
        return domain("forms must share a dimension and |X×Y| <= 16");
    }
    let total = orth_all(qs);
    let f = SquareClassMorphism::of_diagonal(&total);
    let full = (1u32 << (nx * ny)) - 1;
    let d: usize = gamma.iter().sum();
    let (p_sum, q_sum) = pfister_sums_over(&f, subsets_of(full).filter(|&s| card(s) as usize == d));
    let n = nx * ny;
    let ok_d = witt_equal(&P(n, d, &total)?, &p_sum) && witt_equal(&Q(n, d, &total)?, &q_sum);
    let matches = |s: Subset| theta(s, nx, ny).iter().zip(gamma).all(|(t, &g)| *t as usize == g);
    let (pg_sum, qg_sum) = pfister_sums_over(&f, subsets_of(full).filter(|&s| matches(s)));
    let g = GammaFn::new(gamma.to_vec(), ny)?;
    let ok_g = witt_equal(&P_gamma(&g, qs)?, &pg_sum) && witt_equal(&Q_gamma(&g, qs)?, &qg_sum);
    Ok(ok_d && ok_g)
}

/// Right-hand sides `Σ_{J⊆B} 2^{|B∖J|} Ψ^{J,A}` and the `Ψ₀` version, with
/// `A = γ⁻¹(2)`, `B = γ⁻¹(1)`.
pub fn pq_m2_rhs(gamma: &GammaFn, fam: &BinaryFamily) -> Result<(GWClass, GWClass)> {
    let (a, b) = (gamma.preimage(2), gamma.preimage(1));
    let mut p = GWClass::zero();
    let mut q = GWClass::zero();
    for j in subsets_of(b) {
        let c = 1i64 << card(b & !j);
        p = &p + &psi_ja(j, a, fam)?.times(c);
        q = &q + &psi0_ja(j, a, fam)?.times(c);
    }
    Ok((p, q))
}

/// `P_2^γ = Σ 2^{|B∖J|} Ψ^{J,A}` and `Q_2^γ = Σ 2^{|B∖J|} Ψ₀^{J,A}` in W(ℚ).
pub fn check_pq_m2(gamma: &GammaFn, qs: &[DiagForm]) -> Result<bool> {
    if gamma.m != 2 {
        return domain("the m = 2 identities need gamma into {0,1,2}");
    }
    let fam = BinaryFamily::new(qs)?;
    let (p, q) = pq_m2_rhs(gamma, &fam)?;
    Ok(witt_equal(&P_gamma(gamma, qs)?, &p) && witt_equal(&Q_gamma(gamma, qs)?, &q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfister::pfister_slots;
    use crate::rationals::SquareClass;

    fn f(v: &[i64]) -> DiagForm {
        DiagForm::from_ints(v).unwrap()
    }

    fn g(v: &[i64]) -> GWClass {
        f(v).to_gw()
    }

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_i64(n).unwrap()
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_d(&f(&[2, 3, 5]), 2), g(&[6, 10, 15]));
        assert_eq!(lambda_d(&f(&[2, 3]), 0), g(&[1]));
        assert!(lambda_d(&f(&[2, 3]), 3).is_zero());
        assert_eq!(lambda_d(&f(&[2, 2, 2]), 2), g(&[1, 1, 1]));
    }

    #[test]
    fn lambda_matches_subset_products() {
        let q = f(&[2, -3, 5, -7, 10]);
        let cls = q.classes();
        for d in 0..=5 {
            let oracle: GWClass = subsets_of(0b11111)
                .filter(|&s| card(s) as usize == d)
                .map(|s| GWClass::of_class(elements(s).fold(SquareClass::one(), |a, i| a.mul(&cls[i]))))
                .sum();
            assert_eq!(lambda_d(&q, d), oracle);
        }
    }

    #[test]
    fn p_examples() {
        assert_eq!(P(1, 1, &f(&[3])).unwrap(), &GWClass::one() - &g(&[3]));
        // P_1^1 = λ⁰ − λ¹ = ⟨1⟩ − ⟨a⟩, which is ⟨⟨a⟩⟩ in W
        assert!(witt_equal(&P(1, 1, &f(&[3])).unwrap(), &pfister_slots(&[sc(3)])));
        assert_eq!(P(2, 1, &f(&[2, 3])).unwrap(), &GWClass::integer(2) - &g(&[2, 3]));
        assert_eq!(P(4, 0, &f(&[2, 3, 5, 7])).unwrap(), GWClass::one());
        assert!(P(1, 2, &f(&[2])).is_err());
    }

    #[test]
    fn q_examples() {
        assert_eq!(Q(2, 2, &f(&[2, 3])).unwrap(), g(&[1, 6]));
        assert_eq!(Q(2, 1, &f(&[2, 3])).unwrap(), GWClass::integer(2));
        let q = f(&[2, 3, -5]);
        assert_eq!(Q(3, 2, &q).unwrap(), Q(3, 2, &q.scale(&crate::rationals::rat(7)).unwrap()).unwrap());
    }

    #[test]
    fn gamma_examples() {
        let qs = vec![f(&[2]), f(&[3])];
        let chi = GammaFn::new(vec![1, 1], 1).unwrap();
        assert!(witt_equal(&P_gamma(&chi, &qs).unwrap(), &pfister_slots(&[sc(2), sc(3)])));
        assert_eq!(Q_gamma(&chi, &qs).unwrap(), g(&[1, 6]));
        let zero = GammaFn::new(vec![0, 0], 1).unwrap();
        assert_eq!(P_gamma(&zero, &qs).unwrap(), GWClass::one());
        assert!(GammaFn::new(vec![2], 1).is_err());
        assert!(P_gamma(&chi, &[f(&[2, 3]), f(&[5, 7])]).is_err());
    }

    #[test]
    fn stiefel_whitney_examples() {
        let q = f(&[2, 3]);
        assert!(coh_equal(&w_d(&q, 1), &CohClass::symbol(vec![sc(6)])).unwrap());
        assert!(coh_equal(&w_d(&q, 0), &CohClass::one()).unwrap());
        assert_eq!(w_d(&q, 2), CohClass::symbol(vec![sc(2), sc(3)]));
    }

    #[test]
    fn identity_examples() {
        assert!(check_sum_rule(1, 1, 1, &f(&[2]), &f(&[3])).unwrap());
        assert!(check_sum_rule(2, 3, 0, &f(&[2, 5]), &f(&[3, -1, 7])).unwrap());
        assert!(check_prd_expansion(3, 2, &f(&[2, -3, 5])).unwrap());
        assert!(check_decom_prd_gamma(2, 3, &[f(&[2, 3]), f(&[-1, 5])]).unwrap());
        assert!(check_decom_qrd_gamma(2, 2, &[f(&[2, 3]), f(&[-1, 5])]).unwrap());
        assert!(check_prd_gamma_omega(1, 2, &[2, 1], &[f(&[2]), f(&[3]), f(&[-5]), f(&[7])]).unwrap());
        assert!(check_pq_split(&[2, 1], &[f(&[2, 3]), f(&[-5, 7])]).unwrap());
        let gamma = GammaFn::new(vec![2, 1], 2).unwrap();
        assert!(check_pq_m2(&gamma, &[f(&[2, 3]), f(&[-5, 7])]).unwrap());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(3, -1), 0);
    }
}
