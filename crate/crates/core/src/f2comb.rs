//! F₂-linear combinatorics of power sets: subsets as bit masks, affine
//! subspaces, the maps `θ`, `s_*`, `Δ`, and the group algebra ℤ[P(X×Y)].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Result};

/// Largest supported universe.
pub const MAX_UNIVERSE: usize = 16;

/// A subset of a universe, as a bit mask over element indices.
pub type Subset = u32;

pub fn card(s: Subset) -> u32 {
    s.count_ones()
}

pub fn is_even(s: Subset) -> bool {
    s.count_ones() % 2 == 0
}

pub fn singleton(i: usize) -> Subset {
    1 << i
}

/// Indices of the elements of `s`, in increasing order.
pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

/// All subsets of `s`.
pub fn subsets_of(s: Subset) -> impl Iterator<Item = Subset> {
    // Standard submask enumeration, ascending.
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == s { None } else { Some(((cur | !s).wrapping_add(1)) & s) };
        Some(cur)
    })
}

/// A finite ordered set of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > MAX_UNIVERSE {
            return domain(format!("universe larger than {MAX_UNIVERSE}"));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return domain("duplicate universe labels");
        }
        Ok(Universe { labels })
    }

    /// The universe `{1, …, n}`.
    pub fn range(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| i.to_string()).collect())
    }

    /// `X × Y`, indexed as `i·|Y| + j`, labelled `"(x,y)"`.
    pub fn product(x: &Universe, y: &Universe) -> Result<Self> {
        let mut labels = Vec::new();
        for a in &x.labels {
            for b in &y.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        Universe::new(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> Subset {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = 0;
        for l in labels {
            match self.index_of(l.as_ref()) {
                Some(i) => s |= singleton(i),
                None => return domain(format!("unknown label {:?}", l.as_ref())),
            }
        }
        Ok(s)
    }

    /// Sorted label list of a subset.
    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        let mut out: Vec<String> = elements(s).map(|i| self.labels[i].clone()).collect();
        out.sort();
        out
    }
}

/// Reduces `v` against an echelon basis keyed by leading bit.
fn reduce(pivots: &BTreeMap<u32, Subset>, mut v: Subset) -> Subset {
    while v != 0 {
        let lead = 31 - v.leading_zeros();
        match pivots.get(&lead) {
            Some(p) => v ^= p,
            None => break,
        }
    }
    v
}

/// Rank over F₂ of a family of subsets.
pub fn f2_rank(vectors: &[Subset]) -> usize {
    let mut pivots = BTreeMap::new();
    for &v in vectors {
        let r = reduce(&pivots, v);
        if r != 0 {
            pivots.insert(31 - r.leading_zeros(), r);
        }
    }
    pivots.len()
}

/// An affine subspace `base + span(basis)` of P(X).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    base: Subset,
    basis: Vec<Subset>,
}

impl AffineSubspace {
    pub fn new(base: Subset, basis: Vec<Subset>) -> Result<Self> {
        if f2_rank(&basis) != basis.len() {
            return domain("affine subspace basis is not independent");
        }
        Ok(AffineSubspace { base, basis })
    }

    pub fn point(base: Subset) -> Self {
        AffineSubspace { base, basis: Vec::new() }
    }

    /// The linear subspace P(s), with the singleton basis.
    pub fn power_set(s: Subset) -> Self {
        AffineSubspace {
            base: 0,
            basis: elements(s).map(singleton).collect(),
        }
    }

    /// P₀(s): even subsets of `s`, with basis `{s₀, x}` for the first element `s₀`.
    pub fn even_power_set(s: Subset) -> Self {
        let mut it = elements(s);
        let basis = match it.next() {
            Some(first) => it.map(|x| singleton(first) | singleton(x)).collect(),
            None => Vec::new(),
        };
        AffineSubspace { base: 0, basis }
    }

    pub fn base(&self) -> Subset {
        self.base
    }

    pub fn basis(&self) -> &[Subset] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_linear(&self) -> bool {
        self.contains(0)
    }

    /// Union of the supports of all points.
    pub fn support(&self) -> Subset {
        self.basis.iter().fold(self.base, |acc, b| acc | b)
    }

    /// The `2^dim` points, each exactly once.
    pub fn points(&self) -> Vec<Subset> {
        let mut out = vec![self.base];
        for &b in &self.basis {
            let n = out.len();
            for k in 0..n {
                out.push(out[k] ^ b);
            }
        }
        out
    }

    pub fn direction_contains(&self, v: Subset) -> bool {
        let mut pivots = BTreeMap::new();
        for &b in &self.basis {
            let r = reduce(&pivots, b);
            pivots.insert(31 - r.leading_zeros(), r);
        }
        reduce(&pivots, v) == 0
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.direction_contains(x ^ self.base)
    }

    /// Whether the direction of `self` lies in the direction of `other`.
    pub fn direction_within(&self, other: &AffineSubspace) -> bool {
        self.basis.iter().all(|&b| other.direction_contains(b))
    }

    /// Image under a linear map given on singletons.
    pub fn map(&self, f: impl Fn(Subset) -> Subset) -> AffineSubspace {
        AffineSubspace {
            base: f(self.base),
            basis: self.basis.iter().map(|&b| f(b)).collect(),
        }
    }

    /// Minkowski sum with a linear subspace whose direction is independent
    /// of ours.
    pub fn direct_sum(&self, other: &AffineSubspace) -> Result<AffineSubspace> {
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().copied());
        AffineSubspace::new(self.base ^ other.base, basis)
    }
}

/// `W ∩ P₀(X)`, or `None` when the intersection is empty.
pub fn parity_hyperplane_section(w: &AffineSubspace) -> Option<AffineSubspace> {
    match w.basis.iter().position(|&b| !is_even(b)) {
        None => is_even(w.base).then(|| w.clone()),
        Some(k) => {
            let e = w.basis[k];
            let basis = w
                .basis
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &b)| if is_even(b) { b } else { b ^ e })
                .collect();
            let base = if is_even(w.base) { w.base } else { w.base ^ e };
            Some(AffineSubspace { base, basis })
        }
    }
}

/// `V_{J,A} = J + P(A)`.
pub fn v_subspace(j: Subset, a: Subset) -> Result<AffineSubspace> {
    if j & a != 0 {
        return domain("J and A overlap");
    }
    Ok(AffineSubspace {
        base: j,
        basis: elements(a).map(singleton).collect(),
    })
}

/// Fibre sizes `θ_I(i) = |π⁻¹(i) ∩ I|` for `I ⊆ X × Y` (index `i·ny + j`).
pub fn theta(i_set: Subset, nx: usize, ny: usize) -> Vec<u32> {
    let fibre = (1u32 << ny) - 1;
    (0..nx).map(|i| card(i_set >> (i * ny) & fibre)).collect()
}

/// `s_*`: pushes a subset of X along the section `s(i) = (i, section[i])`.
pub fn section_push(s: Subset, section: &[usize], ny: usize) -> Subset {
    elements(s).fold(0, |acc, i| acc | singleton(i * ny + section[i]))
}

/// `Δ(I) = I × Y`.
pub fn diagonal(s: Subset, ny: usize) -> Subset {
    let fibre = (1u32 << ny) - 1;
    elements(s).fold(0, |acc, i| acc | fibre << (i * ny))
}

/// Whether `s_*(P(X)) ⊕ Δ(P(X)) = P(X×Y)`, decided by an F₂ rank count.
pub fn section_diagonal_spans(nx: usize, ny: usize, section: &[usize]) -> bool {
    let mut vs: Vec<Subset> = (0..nx).map(|i| section_push(singleton(i), section, ny)).collect();
    vs.extend((0..nx).map(|i| diagonal(singleton(i), ny)));
    f2_rank(&vs) == nx * ny && vs.len() == nx * ny
}

/// An element of the integral group algebra ℤ[P(U)].
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroupAlgebraElt {
    coeffs: BTreeMap<Subset, i64>,
}

impl GroupAlgebraElt {
    pub fn zero() -> Self {
        GroupAlgebraElt::default()
    }

    pub fn add_term(&mut self, s: Subset, c: i64) {
        let e = self.coeffs.entry(s).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&s);
        }
    }

    /// `c · σ(points)`.
    pub fn add_points(&mut self, points: impl IntoIterator<Item = Subset>, c: i64) {
        for p in points {
            self.add_term(p, c);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Subset, i64> {
        &self.coeffs
    }
}

impl fmt::Debug for GroupAlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(s, c)| format!("{c}[{s:#b}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Both sides of the ℤ[P(X×Y)] identity for `γ: X → {0,1,2}`. With `even`,
/// the left side uses `P₀(I)` and the right side `V_{J,A} ∩ P₀(X)`.
pub fn group_algebra_sides(
    ny: usize,
    gamma: &[u8],
    section: &[usize],
    even: bool,
) -> Result<(GroupAlgebraElt, GroupAlgebraElt)> {
    let nx = gamma.len();
    if gamma.iter().any(|&g| g > 2) {
        return domain("gamma must take values in {0,1,2}");
    }
    if section.len() != nx || section.iter().any(|&j| j >= ny) {
        return domain("section out of range");
    }
    if nx * ny > MAX_UNIVERSE {
        return domain("product universe too large");
    }
    let full = (1u32 << (nx * ny)) - 1;
    let mut lhs = GroupAlgebraElt::zero();
    for i_set in subsets_of(full) {
        if theta(i_set, nx, ny).iter().zip(gamma).all(|(t, &g)| *t == g as u32) {
            let pts = if even {
                AffineSubspace::even_power_set(i_set)
            } else {
                AffineSubspace::power_set(i_set)
            };
            lhs.add_points(pts.points(), 1);
        }
    }
    let pick = |v: u8| {
        gamma
            .iter()
            .enumerate()
            .filter(|&(_, &g)| g == v)
            .fold(0u32, |acc, (i, _)| acc | singleton(i))
    };
    let (a, b) = (pick(2), pick(1));
    let mut rhs = GroupAlgebraElt::zero();
    for j in subsets_of(b) {
        let v = v_subspace(j, a)?;
        let v = if even {
            match parity_hyperplane_section(&v) {
                Some(v) => v,
                None => continue,
            }
        } else {
            v
        };
        let pushed = v.map(|x| section_push(x, section, ny));
        let diag = AffineSubspace::power_set(a | j).map(|x| diagonal(x, ny));
        let sum = pushed.direct_sum(&diag)?;
        rhs.add_points(sum.points(), 1i64 << card(b & !j));
    }
    Ok((lhs, rhs))
}

/// The ℤ[P(X×Y)] identity with the section `s(i) = (i, first element of Y)`.
pub fn verify_group_algebra_identity(x: &Universe, y: &Universe, gamma: &[u8]) -> Result<bool> {
    if gamma.len() != x.len() {
        return domain("gamma length differs from |X|");
    }
    verify_group_algebra_identity_with_section(y.len(), gamma, &vec![0; x.len()])
}

pub fn verify_group_algebra_identity_with_section(
    ny: usize,
    gamma: &[u8],
    section: &[usize],
) -> Result<bool> {
    let (l, r) = group_algebra_sides(ny, gamma, section, false)?;
    Ok(l == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn submask_enumeration() {
        let v: Vec<_> = subsets_of(0b101).collect();
        assert_eq!(v, vec![0, 1, 4, 5]);
        assert_eq!(subsets_of(0).count(), 1);
        assert_eq!(subsets_of(0xff).count(), 256);
    }

    #[test]
    fn enumeration_is_distinct_and_closed() {
        let w = AffineSubspace::new(0b1000, vec![0b0011, 0b0110, 0b1100]).unwrap();
        let pts = w.points();
        let set: BTreeSet<_> = pts.iter().copied().collect();
        assert_eq!(set.len(), 8);
        for &p in &pts {
            for &b in w.basis() {
                assert!(set.contains(&(p ^ b)));
            }
        }
        assert!(AffineSubspace::new(0, vec![0b11, 0b01, 0b10]).is_err());
    }

    #[test]
    fn parity_sections() {
        // P({1,2}) ∩ P₀ = {∅, {1,2}}
        let s = parity_hyperplane_section(&AffineSubspace::power_set(0b11)).unwrap();
        let mut pts = s.points();
        pts.sort();
        assert_eq!(pts, vec![0, 0b11]);
        assert!(parity_hyperplane_section(&AffineSubspace::point(0b1)).is_none());
        // {1,2} + span{{3}}
        let w = AffineSubspace::new(0b011, vec![0b100]).unwrap();
        assert_eq!(parity_hyperplane_section(&w).unwrap().points(), vec![0b011]);
    }

    #[test]
    fn parity_section_matches_filter() {
        for base in 0..16u32 {
            for basis in [vec![], vec![1], vec![3], vec![1, 2], vec![3, 5], vec![1, 2, 4, 8]] {
                let w = AffineSubspace::new(base, basis).unwrap();
                let expected: BTreeSet<_> = w.points().into_iter().filter(|&p| is_even(p)).collect();
                let got: BTreeSet<_> = parity_hyperplane_section(&w)
                    .map(|s| s.points().into_iter().collect())
                    .unwrap_or_default();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn v_subspace_examples() {
        assert_eq!(v_subspace(0, 0b1).unwrap().points(), vec![0, 1]);
        assert_eq!(v_subspace(0b10, 0b1).unwrap().points(), vec![0b10, 0b11]);
        assert_eq!(v_subspace(0b110, 0).unwrap().points(), vec![0b110]);
        assert!(v_subspace(0b11, 0b1).is_err());
    }

    #[test]
    fn theta_examples() {
        // X = {1,2}, Y = {u,v}; (1,u)=bit0, (1,v)=bit1, (2,u)=bit2, (2,v)=bit3
        assert_eq!(theta(0b0111, 2, 2), vec![2, 1]);
        assert_eq!(theta(0, 2, 2), vec![0, 0]);
        assert_eq!(theta(0b1000, 2, 2), vec![0, 1]);
    }

    #[test]
    fn group_algebra_small_cases() {
        let (l, r) = group_algebra_sides(2, &[1], &[0], false).unwrap();
        let mut expected = GroupAlgebraElt::zero();
        expected.add_term(0, 2);
        expected.add_term(0b01, 1);
        expected.add_term(0b10, 1);
        assert_eq!(l, expected);
        assert_eq!(r, expected);
        let (l, r) = group_algebra_sides(2, &[0, 0], &[0, 0], false).unwrap();
        let mut one = GroupAlgebraElt::zero();
        one.add_term(0, 1);
        assert_eq!((l.clone(), r), (one.clone(), one));
        let x = Universe::range(2).unwrap();
        let y = Universe::new(vec!["u".into(), "v".into()]).unwrap();
        assert!(verify_group_algebra_identity(&x, &y, &[2, 1]).unwrap());
        assert!(verify_group_algebra_identity(&x, &y, &[3, 1]).is_err());
    }

    #[test]
    fn section_diagonal_complement() {
        for section in [[0, 0, 0], [1, 0, 1], [1, 1, 1]] {
            assert!(section_diagonal_spans(3, 2, &section));
        }
        assert!(!section_diagonal_spans(2, 3, &[0, 0]));
    }

    #[test]
    fn universe_labels() {
        let x = Universe::range(2).unwrap();
        let y = Universe::new(vec!["u".into(), "v".into()]).unwrap();
        let xy = Universe::product(&x, &y).unwrap();
        assert_eq!(xy.labels()[2], "(2,u)");
        let s = xy.subset_from_labels(&["(2,v)", "(1,u)"]).unwrap();
        assert_eq!(s, 0b1001);
        assert_eq!(xy.labels_of(s), vec!["(1,u)", "(2,v)"]);
        assert!(Universe::range(17).is_err());
    }
}
