//! Exact checks of two polynomial identities families: the rank-3 determinant
//! expansion behind chirotope axiom 3, and three factorisation identities in
//! `s, t, u` used to split the sign conditions into cases.

use num_traits::{One, Zero};

use super::poly::Poly3;
use super::rational::Rational;
use super::vec3::{det3, Vec3};

/// Both sides of
/// `det(x1,x2,x3) det(y1,y2,y3) = sum_k det(y_k,x2,x3) det(y with x1 in slot k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GpReport {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl GpReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn gp3_identity_check(x: &[Vec3<Rational>; 3], y: &[Vec3<Rational>; 3]) -> GpReport {
    let lhs = det3(&x[0], &x[1], &x[2]) * det3(&y[0], &y[1], &y[2]);
    let mut rhs = Rational::zero();
    for k in 0..3 {
        let mut swapped = y.clone();
        swapped[k] = x[0].clone();
        rhs += det3(&y[k], &x[1], &x[2]) * det3(&swapped[0], &swapped[1], &swapped[2]);
    }
    GpReport { lhs, rhs }
}

/// One expanded identity `lhs = rhs`; `difference` is `lhs - rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyIdentity {
    pub name: &'static str,
    pub lhs: Poly3,
    pub rhs: Poly3,
    pub difference: Poly3,
}

impl PolyIdentity {
    fn new(name: &'static str, lhs: Poly3, rhs: Poly3) -> Self {
        let difference = &lhs - &rhs;
        PolyIdentity {
            name,
            lhs,
            rhs,
            difference,
        }
    }

    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

/// The three identities relating `1-2t+tu-su` to the other sign conditions:
///
/// * `(2-u)(2t-1) = -2(1-2t+tu-su) + u(1-2s)`
/// * `t^2-(1-s)u = -(1-2t+tu-su) + (1-t)(1-t-u)`
/// * `(1-t)^2-su = (1-2t+tu-su) + t(t-u)`
pub fn poly_identities() -> [PolyIdentity; 3] {
    let (s, t, u) = (Poly3::s(), Poly3::t(), Poly3::u());
    let one = Poly3::one();
    let two = Poly3::from(2);
    let sheet = sheet_t_factor();

    let first = PolyIdentity::new(
        "(2-u)(2t-1)",
        (&two - &u) * (&two * &t - one.clone()),
        -(&two * &sheet) + &u * &(&one - &(&two * &s)),
    );
    let second = PolyIdentity::new(
        "t^2-(1-s)u",
        &t * &t - (&one - &s) * u.clone(),
        -sheet.clone() + (&one - &t) * (&(&one - &t) - &u),
    );
    let third = PolyIdentity::new(
        "(1-t)^2-su",
        (&one - &t).pow(2) - &s * &u,
        sheet + &t * &(&t - &u),
    );
    [first, second, third]
}

/// `1 - 2t + tu - su`.
pub(crate) fn sheet_t_factor() -> Poly3 {
    let (s, t, u) = (Poly3::s(), Poly3::t(), Poly3::u());
    Poly3::one() - Poly3::from(2) * t.clone() + &t * &u - &s * &u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn e(i: usize) -> Vec3<Rational> {
        let mut c = [int(0), int(0), int(0)];
        c[i] = int(1);
        let [x, y, z] = c;
        Vec3::new(x, y, z)
    }

    #[test]
    fn identity_on_standard_basis() {
        let basis = [e(0), e(1), e(2)];
        let report = gp3_identity_check(&basis, &basis);
        assert_eq!(report.lhs, int(1));
        assert_eq!(report.rhs, int(1));
    }

    #[test]
    fn identity_on_hand_example() {
        // Oracle: det(e1,e2,e3) = 1 and det((1,1,0),(0,1,1),(1,0,1)) = 2, so
        // the left side is 2; the right side is expanded term by term below.
        let x = [e(0), e(1), e(2)];
        let y = [
            Vec3::new(int(1), int(1), int(0)),
            Vec3::new(int(0), int(1), int(1)),
            Vec3::new(int(1), int(0), int(1)),
        ];
        // k=1: det(y1,e2,e3)=1, det(e1,y2,y3)=1        -> 1
        // k=2: det(y2,e2,e3)=0                          -> 0
        // k=3: det(y3,e2,e3)=1, det(y1,y2,e1)=1         -> 1
        let report = gp3_identity_check(&x, &y);
        assert_eq!(report.lhs, int(2));
        assert_eq!(report.rhs, int(2));
    }

    #[test]
    fn factorisation_identities_expand_to_zero() {
        for id in poly_identities() {
            assert!(id.holds(), "{}: {}", id.name, id.difference);
        }
    }
}
