//! Exact arithmetic in quaternion algebras `(a, b)_ℚ` with `i² = a`,
//! `j² = b`, `ij = k = −ji`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::quadform::{is_isotropic, DiagForm};
use crate::rationals::{rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    a: Rat,
    b: Rat,
}

/// `c0 + c1·i + c2·j + c3·k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quat(pub [Rat; 4]);

impl Quat {
    pub fn scalar(c: Rat) -> Quat {
        Quat([c, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    /// The pure quaternion `x·i + y·j + w·k`.
    pub fn pure(x: Rat, y: Rat, w: Rat) -> Quat {
        Quat([Rat::zero(), x, y, w])
    }

    pub fn pure_ints(x: i64, y: i64, w: i64) -> Quat {
        Quat::pure(rat(x), rat(y), rat(w))
    }

    pub fn is_pure(&self) -> bool {
        self.0[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Quat {
        Quat(self.0.clone().map(|x| x * c))
    }

    pub fn add(&self, other: &Quat) -> Quat {
        let mut out = self.0.clone();
        for (o, y) in out.iter_mut().zip(&other.0) {
            *o += y;
        }
        Quat(out)
    }

    pub fn sub(&self, other: &Quat) -> Quat {
        self.add(&other.scale(&rat(-1)))
    }

    /// The scalar part, if the pure part vanishes.
    pub fn as_scalar(&self) -> Option<&Rat> {
        self.0[1..].iter().all(Zero::is_zero).then_some(&self.0[0])
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(crate::rationals::rat_to_string).collect();
        write!(f, "{} + {}i + {}j + {}k", c[0], c[1], c[2], c[3])
    }
}

impl QuaternionAlgebra {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return domain("quaternion algebra with a zero structure constant");
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        QuaternionAlgebra::new(rat(a), rat(b))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn mul(&self, x: &Quat, y: &Quat) -> Quat {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        let [x0, x1, x2, x3] = &x.0;
        let [y0, y1, y2, y3] = &y.0;
        Quat([
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - &ab * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ])
    }

    pub fn mul_all(&self, xs: &[&Quat]) -> Quat {
        xs.iter().fold(Quat::scalar(Rat::one()), |acc, x| self.mul(&acc, x))
    }

    pub fn conj(&self, x: &Quat) -> Quat {
        let [x0, x1, x2, x3] = &x.0;
        Quat([x0.clone(), -x1, -x2, -x3])
    }

    pub fn trd(&self, x: &Quat) -> Rat {
        &x.0[0] * rat(2)
    }

    pub fn nrd(&self, x: &Quat) -> Rat {
        let (a, b) = (&self.a, &self.b);
        let [x0, x1, x2, x3] = &x.0;
        x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3
    }

    /// `z²` for a pure quaternion, a scalar equal to `−nrd(z)`.
    pub fn square(&self, z: &Quat) -> Result<Rat> {
        if !z.is_pure() {
            return domain("square of a non-pure quaternion is not a scalar");
        }
        Ok(-self.nrd(z))
    }

    /// `n_Q = ⟨1, −a, −b, ab⟩`.
    pub fn norm_form(&self) -> DiagForm {
        DiagForm::new(vec![rat(1), -self.a.clone(), -self.b.clone(), &self.a * &self.b])
            .expect("nonzero structure constants")
    }

    pub fn is_split(&self) -> bool {
        is_isotropic(&self.norm_form())
    }

    /// A pure invertible `z₀` with `trd(z·z₀) = 0`; basis vectors are tried
    /// first, in the order `i, j, k`.
    pub fn find_anticommuting(&self, z: &Quat) -> Result<Quat> {
        if !z.is_pure() || self.nrd(z).is_zero() {
            return domain("find_anticommuting needs a pure invertible quaternion");
        }
        let candidates = [Quat::pure_ints(1, 0, 0), Quat::pure_ints(0, 1, 0), Quat::pure_ints(0, 0, 1)];
        for e in &candidates {
            if self.trd(&self.mul(z, e)).is_zero() {
                return Ok(e.clone());
            }
        }
        // Kernel of y ↦ a·x1·y1 + b·x2·y2 − ab·x3·y3.
        let c = [&self.a * &z.0[1], &self.b * &z.0[2], -(&self.a * &self.b) * &z.0[3]];
        let p = (0..3).find(|&i| !c[i].is_zero()).expect("z is nonzero");
        let kernel: Vec<Quat> = (0..3)
            .filter(|&q| q != p)
            .map(|q| {
                let mut v = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
                v[q + 1] = Rat::one();
                v[p + 1] = -(&c[q] / &c[p]);
                Quat(v)
            })
            .collect();
        let sum = kernel[0].add(&kernel[1]);
        [kernel[0].clone(), kernel[1].clone(), sum]
            .into_iter()
            .find(|v| !self.nrd(v).is_zero())
            .ok_or_else(|| crate::error::Error::Internal("no invertible trace-orthogonal vector".into()))
    }

    /// `Trd(z₁z₂)·Trd(z₁z₃) = z₁²·Trd(z₂z₃) + Trd(z₁z₂z₁z₃)`.
    pub fn check_magique(&self, z1: &Quat, z2: &Quat, z3: &Quat) -> Result<bool> {
        if !(z1.is_pure() && z2.is_pure() && z3.is_pure()) {
            return domain("check_magique needs pure quaternions");
        }
        let lhs = self.trd(&self.mul(z1, z2)) * self.trd(&self.mul(z1, z3));
        let rhs = self.square(z1)? * self.trd(&self.mul(z2, z3)) + self.trd(&self.mul_all(&[z1, z2, z1, z3]));
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::gw_equal;

    fn alg(a: i64, b: i64) -> QuaternionAlgebra {
        QuaternionAlgebra::from_ints(a, b).unwrap()
    }

    fn qi() -> Quat {
        Quat::pure_ints(1, 0, 0)
    }
    fn qj() -> Quat {
        Quat::pure_ints(0, 1, 0)
    }
    fn qk() -> Quat {
        Quat::pure_ints(0, 0, 1)
    }

    #[test]
    fn multiplication_table() {
        let q = alg(2, 5);
        assert_eq!(q.mul(&qi(), &qi()), Quat::scalar(rat(2)));
        assert_eq!(q.mul(&qj(), &qj()), Quat::scalar(rat(5)));
        assert_eq!(q.mul(&qi(), &qj()), qk());
        assert_eq!(q.mul(&qj(), &qi()), qk().scale(&rat(-1)));
        assert_eq!(q.mul(&qk(), &qk()), Quat::scalar(rat(-10)));
        assert_eq!(q.mul(&qk(), &qi()), qj().scale(&rat(-2)));
    }

    #[test]
    fn trace_and_norm_examples() {
        let q = alg(-1, -1);
        assert_eq!(q.trd(&q.mul(&qi(), &qj())), rat(0));
        assert_eq!(q.trd(&q.mul(&qi(), &qi())), rat(-2));
        assert_eq!(alg(3, 7).nrd(&qi()), rat(-3));
    }

    #[test]
    fn norm_forms_and_splitting() {
        assert_eq!(alg(-1, -1).norm_form(), DiagForm::from_ints(&[1, 1, 1, 1]).unwrap());
        assert_eq!(alg(1, 1).norm_form(), DiagForm::from_ints(&[1, -1, -1, 1]).unwrap());
        assert!(gw_equal(
            &alg(-1, 3).norm_form().to_gw(),
            &DiagForm::from_ints(&[1, 1, -3, -3]).unwrap().to_gw()
        ));
        assert!(alg(1, 1).is_split());
        assert!(!alg(-1, -1).is_split());
        assert!(!alg(2, 3).is_split());
    }

    #[test]
    fn anticommuting_examples() {
        let q = alg(-1, -1);
        assert_eq!(q.find_anticommuting(&qi()).unwrap(), qj());
        assert_eq!(alg(2, 5).find_anticommuting(&qj()).unwrap(), qi());
        let z = Quat::pure_ints(1, 1, 0);
        let z0 = q.find_anticommuting(&z).unwrap();
        assert_eq!(q.trd(&q.mul(&z, &z0)), rat(0));
        assert!(!q.nrd(&z0).is_zero());
        let z = Quat::pure_ints(1, 2, 3);
        let z0 = alg(2, 5).find_anticommuting(&z).unwrap();
        assert_eq!(alg(2, 5).trd(&alg(2, 5).mul(&z, &z0)), rat(0));
        assert!(q.find_anticommuting(&Quat::scalar(rat(1))).is_err());
        // i + j is a zero divisor in (1, −1)
        assert!(alg(1, -1).find_anticommuting(&Quat::pure_ints(1, 1, 0)).is_err());
    }

    #[test]
    fn magique_examples() {
        let q = alg(-1, -1);
        assert!(q.check_magique(&qi(), &qj(), &qk()).unwrap());
        assert_eq!(q.trd(&q.mul(&qi(), &qj())) * q.trd(&q.mul(&qi(), &qk())), rat(0));
        // (i, i, i): 4a² = a·2a + 2a²
        let q = alg(3, 7);
        assert_eq!(q.trd(&q.mul(&qi(), &qi())).pow(2), rat(36));
        assert!(q.check_magique(&qi(), &qi(), &qi()).unwrap());
        assert!(q.check_magique(&Quat::scalar(rat(1)), &qi(), &qi()).is_err());
    }
}
