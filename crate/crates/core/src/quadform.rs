//! Diagonal quadratic forms over ℚ, the Grothendieck-Witt ring and its
//! decidable equality, isotropy, and the fundamental filtration.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{domain, Result};
use crate::rationals::{
    hilbert_bit, relevant_places_of_classes, squarefree_rep, LocalCoords, Place, Rat,
    SquareClass,
};

/// A diagonal form `⟨a_1, …, a_n⟩` with nonzero rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagForm {
    entries: Vec<Rat>,
}

impl DiagForm {
    pub fn new(entries: Vec<Rat>) -> Result<Self> {
        if entries.iter().any(|e| e == &Rat::from_integer(0.into())) {
            return domain("diagonal form with a zero entry");
        }
        Ok(DiagForm { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        DiagForm::new(entries.iter().map(|&e| crate::rationals::rat(e)).collect())
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Orthogonal sum.
    pub fn orth(&self, other: &DiagForm) -> DiagForm {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagForm { entries }
    }

    /// `⟨c⟩·q`.
    pub fn scale(&self, c: &Rat) -> Result<DiagForm> {
        DiagForm::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn classes(&self) -> Vec<SquareClass> {
        self.entries
            .iter()
            .map(|e| squarefree_rep(e).expect("entries are nonzero"))
            .collect()
    }

    pub fn to_gw(&self) -> GWClass {
        let mut out = GWClass::zero();
        for c in self.classes() {
            out.add_term(c, 1);
        }
        out
    }
}

/// An element of GW(ℚ): a virtual diagonal form, i.e. a finitely supported
/// integer combination of square classes.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct GWClass {
    terms: BTreeMap<SquareClass, i64>,
}

impl GWClass {
    pub fn zero() -> Self {
        GWClass::default()
    }

    pub fn one() -> Self {
        GWClass::of_class(SquareClass::one())
    }

    /// The rank-one class `⟨c⟩`.
    pub fn of_class(c: SquareClass) -> Self {
        let mut g = GWClass::zero();
        g.add_term(c, 1);
        g
    }

    pub fn of_rat(r: &Rat) -> Result<Self> {
        Ok(GWClass::of_class(squarefree_rep(r)?))
    }

    pub fn integer(n: i64) -> Self {
        GWClass::one().times(n)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SquareClass, i64)>) -> Self {
        let mut g = GWClass::zero();
        for (c, m) in terms {
            g.add_term(c, m);
        }
        g
    }

    pub fn add_term(&mut self, c: SquareClass, m: i64) {
        if m == 0 {
            return;
        }
        match self.terms.entry(c) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(m);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<SquareClass, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Virtual rank.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn signature(&self) -> i64 {
        self.terms
            .iter()
            .map(|(c, m)| if c.is_negative() { -m } else { *m })
            .sum()
    }

    /// Integer multiple.
    pub fn times(&self, n: i64) -> GWClass {
        if n == 0 {
            return GWClass::zero();
        }
        GWClass {
            terms: self.terms.iter().map(|(c, m)| (c.clone(), m * n)).collect(),
        }
    }

    /// `⟨c⟩·x`.
    pub fn scale(&self, c: &SquareClass) -> GWClass {
        GWClass::from_terms(self.terms.iter().map(|(k, m)| (k.mul(c), *m)))
    }

    pub fn scale_rat(&self, r: &Rat) -> Result<GWClass> {
        Ok(self.scale(&squarefree_rep(r)?))
    }

    /// An anisotropic-ish honest form representing the Witt class: pairs
    /// `⟨a⟩, ⟨−a⟩` cancel and negative multiplicities become `⟨−a⟩`.
    pub fn witt_form(&self) -> Vec<(SquareClass, u64)> {
        let mut net: BTreeMap<SquareClass, i64> = BTreeMap::new();
        for (c, m) in &self.terms {
            let (key, sign) = if c.is_negative() {
                (c.negate(), -1)
            } else {
                (c.clone(), 1)
            };
            *net.entry(key).or_insert(0) += sign * m;
        }
        net.into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|(c, m)| {
                if m > 0 {
                    (c, m as u64)
                } else {
                    (c.negate(), (-m) as u64)
                }
            })
            .collect()
    }

    /// Expands into an honest diagonal form; fails if some multiplicity is
    /// negative.
    pub fn to_form(&self) -> Result<DiagForm> {
        let mut entries = Vec::new();
        for (c, m) in &self.terms {
            if *m < 0 {
                return domain("virtual class with negative multiplicity");
            }
            entries.extend(std::iter::repeat(c.to_rat()).take(*m as usize));
        }
        DiagForm::new(entries)
    }
}

impl fmt::Debug for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, m)| {
                if *m == 1 {
                    format!("<{c}>")
                } else {
                    format!("{m}<{c}>")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a GWClass> for &'a GWClass {
    type Output = GWClass;
    fn add(self, rhs: &GWClass) -> GWClass {
        let mut out = self.clone();
        for (c, m) in &rhs.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl Add for GWClass {
    type Output = GWClass;
    fn add(self, rhs: GWClass) -> GWClass {
        &self + &rhs
    }
}

impl<'a> Sub<&'a GWClass> for &'a GWClass {
    type Output = GWClass;
    fn sub(self, rhs: &GWClass) -> GWClass {
        let mut out = self.clone();
        for (c, m) in &rhs.terms {
            out.add_term(c.clone(), -m);
        }
        out
    }
}

impl Sub for GWClass {
    type Output = GWClass;
    fn sub(self, rhs: GWClass) -> GWClass {
        &self - &rhs
    }
}

impl Neg for &GWClass {
    type Output = GWClass;
    fn neg(self) -> GWClass {
        self.times(-1)
    }
}

impl<'a> Mul<&'a GWClass> for &'a GWClass {
    type Output = GWClass;
    fn mul(self, rhs: &GWClass) -> GWClass {
        let mut out = GWClass::zero();
        for (a, m) in &self.terms {
            for (b, n) in &rhs.terms {
                out.add_term(a.mul(b), m * n);
            }
        }
        out
    }
}

impl Mul for GWClass {
    type Output = GWClass;
    fn mul(self, rhs: GWClass) -> GWClass {
        &self * &rhs
    }
}

impl std::iter::Sum for GWClass {
    fn sum<I: Iterator<Item = GWClass>>(iter: I) -> GWClass {
        iter.fold(GWClass::zero(), |acc, x| &acc + &x)
    }
}

/// Classical invariants of a nondegenerate form over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittProfile {
    pub rank: i64,
    /// Squarefree class of `(−1)^{n(n−1)/2} · Π a_i`.
    pub signed_disc: SquareClass,
    /// Places where `Π_{i<j} (a_i, a_j)_v = −1`.
    pub hasse: BTreeSet<Place>,
    pub signature: i64,
}

fn hasse_bit(counted: &[(LocalCoords, u64)], v: &Place) -> bool {
    let mut bit = false;
    for (i, (x, m)) in counted.iter().enumerate() {
        // C(m, 2) copies of (x, x)
        if (m * m.saturating_sub(1) / 2) % 2 == 1 && hilbert_bit(*x, *x, v) {
            bit = !bit;
        }
        for (y, n) in &counted[i + 1..] {
            if (m * n) % 2 == 1 && hilbert_bit(*x, *y, v) {
                bit = !bit;
            }
        }
    }
    bit
}

/// Profile of the honest form with entries `c` repeated `m` times, computed at
/// the given places.
pub(crate) fn profile_of_counts(
    counts: &[(SquareClass, u64)],
    places: &BTreeSet<Place>,
) -> WittProfile {
    let n: u64 = counts.iter().map(|(_, m)| m).sum();
    let mut det = SquareClass::one();
    let mut signature = 0i64;
    for (c, m) in counts {
        if m % 2 == 1 {
            det = det.mul(c);
        }
        signature += if c.is_negative() { -(*m as i64) } else { *m as i64 };
    }
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        det = det.negate();
    }
    let hasse = places
        .iter()
        .filter(|v| {
            let local: Vec<(LocalCoords, u64)> =
                counts.iter().map(|(c, m)| (c.local(v), *m)).collect();
            hasse_bit(&local, v)
        })
        .cloned()
        .collect();
    WittProfile {
        rank: n as i64,
        signed_disc: det,
        hasse,
        signature,
    }
}

fn hyperbolic_counts(k: u64) -> Vec<(SquareClass, u64)> {
    if k == 0 {
        return Vec::new();
    }
    vec![(SquareClass::one(), k), (SquareClass::one().negate(), k)]
}

fn pad(counts: &[(SquareClass, u64)], k: u64) -> Vec<(SquareClass, u64)> {
    let mut out: BTreeMap<SquareClass, u64> = counts.iter().cloned().collect();
    for (c, m) in hyperbolic_counts(k) {
        *out.entry(c).or_insert(0) += m;
    }
    out.into_iter().collect()
}

pub fn witt_profile(q: &DiagForm) -> WittProfile {
    let counts: Vec<(SquareClass, u64)> = q.to_gw().terms.into_iter().map(|(c, m)| (c, m as u64)).collect();
    let places = relevant_places_of_classes(counts.iter().map(|(c, _)| c));
    profile_of_counts(&counts, &places)
}

/// Equality in W(ℚ): compare profiles after padding the smaller honest
/// representative with hyperbolic planes.
pub fn witt_equal(x: &GWClass, y: &GWClass) -> bool {
    let fx = x.witt_form();
    let fy = y.witt_form();
    let nx: u64 = fx.iter().map(|(_, m)| m).sum();
    let ny: u64 = fy.iter().map(|(_, m)| m).sum();
    if nx % 2 != ny % 2 {
        return false;
    }
    let (fx, fy) = if nx < ny {
        (pad(&fx, (ny - nx) / 2), fy)
    } else {
        (fx, pad(&fy, (nx - ny) / 2))
    };
    let places = relevant_places_of_classes(fx.iter().chain(fy.iter()).map(|(c, _)| c));
    profile_of_counts(&fx, &places) == profile_of_counts(&fy, &places)
}

/// Whether `x` is zero in W(ℚ).
pub fn witt_is_zero(x: &GWClass) -> bool {
    witt_equal(x, &GWClass::zero())
}

/// Equality in GW(ℚ): same virtual rank and same Witt class.
pub fn gw_equal(x: &GWClass, y: &GWClass) -> bool {
    x.rank() == y.rank() && witt_equal(x, y)
}

fn unsigned_det(classes: &[SquareClass]) -> SquareClass {
    classes.iter().fold(SquareClass::one(), |acc, c| acc.mul(c))
}

fn local_isotropic(classes: &[SquareClass], v: &Place) -> bool {
    let n = classes.len();
    if let Place::Real = v {
        let pos = classes.iter().any(|c| !c.is_negative());
        let neg = classes.iter().any(|c| c.is_negative());
        return pos && neg;
    }
    let d = unsigned_det(classes);
    let local: Vec<(LocalCoords, u64)> = classes.iter().map(|c| (c.local(v), 1)).collect();
    let eps = hasse_bit(&local, v);
    let minus_one = SquareClass::one().negate();
    match n {
        0 | 1 => false,
        2 => d.negate().is_local_square(v),
        3 => eps == hilbert_bit(minus_one.local(v), d.negate().local(v), v),
        4 => !d.is_local_square(v) || eps == hilbert_bit(minus_one.local(v), minus_one.local(v), v),
        _ => true,
    }
}

/// Hasse-Minkowski: isotropic over ℚ iff isotropic at every place.
pub fn is_isotropic(q: &DiagForm) -> bool {
    let classes = q.classes();
    if classes.len() < 2 {
        return false;
    }
    if classes.len() == 2 {
        return unsigned_det(&classes).negate().is_one();
    }
    let places = relevant_places_of_classes(classes.iter());
    places.iter().all(|v| local_isotropic(&classes, v))
}

/// Whether `q` represents the nonzero rational `c`.
pub fn represents(q: &DiagForm, c: &Rat) -> Result<bool> {
    if c.is_zero() {
        return domain("represents: zero value");
    }
    Ok(is_isotropic(&q.orth(&DiagForm::new(vec![-c.clone()])?)))
}

/// Membership of `λ` in the similarity group of a Pfister form `phi`, using
/// that Pfister forms are round.
pub fn in_similarity_group(lambda: &Rat, phi: &DiagForm) -> Result<bool> {
    represents(phi, lambda)
}

/// Diagonalizes a symmetric rational matrix by congruence. Fails on
/// asymmetric or singular input.
pub fn diagonalize_gram(gram: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    let n = gram.len();
    let mut m: Vec<Vec<Rat>> = gram.to_vec();
    if m.iter().any(|row| row.len() != n) {
        return domain("Gram matrix is not square");
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return domain("Gram matrix is not symmetric");
            }
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // x_k += x_j makes the pivot 2·m[k][j]
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][k] += v;
                }
            } else {
                return domain("Gram matrix is singular");
            }
        }
        let pivot = m[k][k].clone();
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] / &pivot;
            for c in k..n {
                let v = &f * &m[k][c];
                m[r][c] -= v;
            }
            for rr in k..n {
                let v = &f * &m[rr][k];
                m[rr][r] -= v;
            }
        }
        diag.push(pivot);
    }
    Ok(diag)
}

/// Largest `n` with `x ∈ I^n(ℚ)`, or infinity for the zero Witt class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiltrationDegree {
    Finite(u32),
    Infinite,
}

impl FiltrationDegree {
    pub fn at_least(self, n: u32) -> bool {
        match self {
            FiltrationDegree::Infinite => true,
            FiltrationDegree::Finite(k) => k >= n,
        }
    }
}

impl fmt::Display for FiltrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDegree::Finite(k) => write!(f, "{k}"),
            FiltrationDegree::Infinite => write!(f, "inf"),
        }
    }
}

/// Witt invariant data of an even-rank class with trivial discriminant: the
/// places where the Clifford invariant is nontrivial. Normalized so that the
/// hyperbolic form of the same rank has none.
pub(crate) fn clifford_places(counts: &[(SquareClass, u64)]) -> BTreeSet<Place> {
    let n: u64 = counts.iter().map(|(_, m)| m).sum();
    let places = relevant_places_of_classes(counts.iter().map(|(c, _)| c));
    let own = profile_of_counts(counts, &places).hasse;
    let hyp = profile_of_counts(&hyperbolic_counts(n / 2), &places).hasse;
    own.symmetric_difference(&hyp).cloned().collect()
}

pub fn witt_filtration_degree(x: &GWClass) -> FiltrationDegree {
    if witt_is_zero(x) {
        return FiltrationDegree::Infinite;
    }
    let counts = x.witt_form();
    let n: u64 = counts.iter().map(|(_, m)| m).sum();
    if n % 2 == 1 {
        return FiltrationDegree::Finite(0);
    }
    let places = relevant_places_of_classes(counts.iter().map(|(c, _)| c));
    if !profile_of_counts(&counts, &places).signed_disc.is_one() {
        return FiltrationDegree::Finite(1);
    }
    if !clifford_places(&counts).is_empty() {
        return FiltrationDegree::Finite(2);
    }
    // I^3(ℚ) is torsion free and detected by the signature.
    let sig = x.signature().abs();
    debug_assert!(sig != 0 && sig % 8 == 0);
    FiltrationDegree::Finite(sig.trailing_zeros())
}
