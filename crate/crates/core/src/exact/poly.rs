//! Sparse polynomials in `s, t, u` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};

/// Exponent triple `s^s * t^t * u^u`. Ordered lexicographically in `(s, t, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub s: u32,
    pub t: u32,
    pub u: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { s: 0, t: 0, u: 0 };

    pub fn new(s: u32, t: u32, u: u32) -> Self {
        Monomial { s, t, u }
    }

    pub fn degree(&self) -> u32 {
        self.s + self.t + self.u
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            s: self.s + other.s,
            t: self.t + other.t,
            u: self.u + other.u,
        }
    }
}

/// Which of the three parameters a substitution targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    S,
    T,
    U,
}

/// Polynomial over the rationals in the parameters `s, t, u`.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty
/// map and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly3 {
    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly3 { terms }
    }

    pub fn s() -> Self {
        Self::term(Monomial::new(1, 0, 0), Rational::one())
    }

    pub fn t() -> Self {
        Self::term(Monomial::new(0, 1, 0), Rational::one())
    }

    pub fn u() -> Self {
        Self::term(Monomial::new(0, 0, 1), Rational::one())
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::S => Self::s(),
            Var::T => Self::t(),
            Var::U => Self::u(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly3::one(), |acc, _| &acc * self)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn eval(&self, s: &Rational, t: &Rational, u: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(s.clone(), m.s as usize)
                * num_traits::pow(t.clone(), m.t as usize)
                * num_traits::pow(u.clone(), m.u as usize);
        }
        acc
    }

    /// Substitutes a rational value for one parameter, leaving a polynomial in
    /// the other two.
    pub fn substitute(&self, var: Var, value: &Rational) -> Poly3 {
        let mut out = Poly3::zero();
        for (m, c) in &self.terms {
            let (exp, rest) = match var {
                Var::S => (m.s, Monomial { s: 0, ..*m }),
                Var::T => (m.t, Monomial { t: 0, ..*m }),
                Var::U => (m.u, Monomial { u: 0, ..*m }),
            };
            out.add_term(rest, c * num_traits::pow(value.clone(), exp as usize));
        }
        out
    }

    /// Replaces one parameter by a polynomial.
    pub fn compose(&self, var: Var, value: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (m, c) in &self.terms {
            let (exp, rest) = match var {
                Var::S => (m.s, Monomial { s: 0, ..*m }),
                Var::T => (m.t, Monomial { t: 0, ..*m }),
                Var::U => (m.u, Monomial { u: 0, ..*m }),
            };
            out = out + Poly3::term(rest, c.clone()) * value.pow(exp);
        }
        out
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.terms.keys().any(|m| match var {
            Var::S => m.s > 0,
            Var::T => m.t > 0,
            Var::U => m.u > 0,
        })
    }
}

impl From<Rational> for Poly3 {
    fn from(c: Rational) -> Self {
        Poly3::constant(c)
    }
}

impl From<i64> for Poly3 {
    fn from(c: i64) -> Self {
        Poly3::constant(Rational::from_integer(c.into()))
    }
}

impl Zero for Poly3 {
    fn zero() -> Self {
        Poly3::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly3 {
    fn one() -> Self {
        Poly3::constant(Rational::one())
    }
}

impl<'a> Add<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;

    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;

    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;

    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;

    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Poly3 {
            type Output = Poly3;
            fn $f(self, rhs: Poly3) -> Poly3 {
                (&self).$f(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly3 {
    type Output = Poly3;

    fn neg(self) -> Poly3 {
        -&self
    }
}

/// Sorted term list `coeff*s^a*t^b*u^c`, joined by `" + "`; variables with a
/// zero exponent are left out and the zero polynomial prints as `0`.
impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&format_rational(c))?;
            for (name, e) in [("s", m.s), ("t", m.t), ("u", m.u)] {
                if e > 0 {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
