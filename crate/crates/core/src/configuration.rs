//! The 13-point configuration `X(s,t,u)`.
//!
//! Columns 1–4 are a projective frame, 5, 7 and 9 move along lines of the
//! frame with the parameters `s`, `t` and `u`, and every later column is the
//! intersection of two lines through earlier columns. [`closed_form`] writes
//! the resulting matrix down directly; [`construct_sequence`] recomputes it
//! step by step with cross products and [`agreement_check`] compares the two.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exact::{cross, format_rational, rat_sign, Poly3, Rational, Scalar, Sign, Vec3};

/// Number of points; labels run from 1 to `NUM_POINTS`.
pub const NUM_POINTS: usize = 13;

/// Labels whose columns have last coordinate zero for every parameter value.
pub const POINTS_AT_INFINITY: [u8; 3] = [1, 2, 9];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    pub s: Rational,
    pub t: Rational,
    pub u: Rational,
}

impl ParamPoint {
    pub fn new(s: Rational, t: Rational, u: Rational) -> Self {
        ParamPoint { s, t, u }
    }

    /// `(s, t, u)` from `(numerator, denominator)` pairs.
    pub fn from_fracs(s: (i64, i64), t: (i64, i64), u: (i64, i64)) -> Self {
        use crate::exact::rat;
        ParamPoint::new(rat(s.0, s.1), rat(t.0, t.1), rat(u.0, u.1))
    }

    /// The base point `(1/2, 1/2, 1/3)`.
    pub fn base() -> Self {
        Self::from_fracs((1, 2), (1, 2), (1, 3))
    }

    pub fn to_json(&self) -> Value {
        json!([
            format_rational(&self.s),
            format_rational(&self.t),
            format_rational(&self.u)
        ])
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.s),
            format_rational(&self.t),
            format_rational(&self.u)
        )
    }
}

/// Thirteen labelled columns. Column `i` (1-based) is point `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration<S> {
    columns: Vec<Vec3<S>>,
}

impl<S> Configuration<S> {
    /// Panics unless exactly 13 columns are given.
    pub fn new(columns: Vec<Vec3<S>>) -> Self {
        assert_eq!(columns.len(), NUM_POINTS, "a configuration has 13 columns");
        Configuration { columns }
    }

    pub fn column(&self, label: u8) -> &Vec3<S> {
        &self.columns[usize::from(label) - 1]
    }

    pub fn columns(&self) -> &[Vec3<S>] {
        &self.columns
    }

    /// `(label, column)` pairs in label order.
    pub fn labelled(&self) -> impl Iterator<Item = (u8, &Vec3<S>)> {
        self.columns.iter().enumerate().map(|(i, c)| (i as u8 + 1, c))
    }
}

impl Configuration<Poly3> {
    pub fn eval(&self, p: &ParamPoint) -> Configuration<Rational> {
        Configuration::new(
            self.columns
                .iter()
                .map(|c| c.map(|e| e.eval(&p.s, &p.t, &p.u)))
                .collect(),
        )
    }
}

impl Configuration<Rational> {
    pub fn to_json(&self) -> Value {
        let cols: Vec<Value> = self
            .labelled()
            .map(|(label, c)| {
                json!({
                    "label": label,
                    "coords": c.coords().map(format_rational),
                })
            })
            .collect();
        json!({ "columns": cols })
    }
}

/// The printed matrix, entry by entry, over any exact ring.
pub fn closed_form_in<S: Scalar>(s: S, t: S, u: S) -> Configuration<S> {
    let zero = || S::zero();
    let one = || S::one();
    let st = s.clone() * t.clone();
    let su = s.clone() * u.clone();
    // t - u + su and 1 - u + su appear in columns 11 and 13
    let a = t.clone() - u.clone() + su.clone();
    let b = one() - u.clone() + su.clone();
    let one_minus_su = one() - su.clone();

    let columns = vec![
        Vec3::new(one(), zero(), zero()),
        Vec3::new(zero(), one(), zero()),
        Vec3::new(zero(), zero(), one()),
        Vec3::new(one(), one(), one()),
        Vec3::new(s.clone(), zero(), one()),
        Vec3::new(s.clone(), one(), one()),
        Vec3::new(zero(), t.clone(), one()),
        Vec3::new(one(), t.clone(), one()),
        Vec3::new(one(), u.clone(), zero()),
        Vec3::new(st.clone(), t.clone(), one_minus_su.clone()),
        Vec3::new(
            s.clone() + t.clone() - u.clone() - st.clone() + su.clone(),
            a.clone(),
            b.clone(),
        ),
        Vec3::new(
            s.clone() + t.clone() - st - s.clone() * su,
            t,
            one_minus_su,
        ),
        Vec3::new(s * a.clone(), a, b),
    ];
    Configuration::new(columns)
}

pub fn closed_form(p: &ParamPoint) -> Configuration<Rational> {
    closed_form_in(p.s.clone(), p.t.clone(), p.u.clone())
}

pub fn closed_form_symbolic() -> Configuration<Poly3> {
    closed_form_in(Poly3::s(), Poly3::t(), Poly3::u())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("construction step {0} produced the zero vector")]
    DegenerateStep(u8),
    #[error("column {0} of the construction is not proportional to the closed form")]
    Mismatch(u8),
}

/// Non-fatal findings from the construction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionIssue {
    /// Two columns represent the same projective point.
    DuplicatePoint(u8, u8),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Construction<S> {
    pub configuration: Configuration<S>,
    pub issues: Vec<ConstructionIssue>,
}

/// Runs the 13 construction steps literally. Joins and meets are both the
/// bare cross product; no column is rescaled.
pub fn construct_sequence_in<S: Scalar>(s: S, t: S, u: S) -> Result<Vec<Vec3<S>>, ConfigError> {
    let mut x: Vec<Vec3<S>> = Vec::with_capacity(NUM_POINTS);
    let (zero, one) = (S::zero(), S::one());
    x.push(Vec3::new(one.clone(), zero.clone(), zero.clone()));
    x.push(Vec3::new(zero.clone(), one.clone(), zero.clone()));
    x.push(Vec3::new(zero.clone(), zero.clone(), one.clone()));
    x.push(Vec3::new(one.clone(), one.clone(), one));

    // indices below are 1-based labels
    let join = |x: &[Vec3<S>], a: usize, b: usize| cross(&x[a - 1], &x[b - 1]);
    let meet = |l: Vec3<S>, m: Vec3<S>| cross(&l, &m);

    x.push(x[0].scale(&s) + x[2].clone()); // 5
    x.push(meet(join(&x, 1, 4), join(&x, 2, 5))); // 6
    x.push(x[1].scale(&t) + x[2].clone()); // 7
    x.push(meet(join(&x, 1, 7), join(&x, 2, 4))); // 8
    x.push(x[1].scale(&u) + x[0].clone()); // 9
    x.push(meet(join(&x, 7, 9), join(&x, 3, 6))); // 10
    x.push(meet(join(&x, 4, 5), join(&x, 8, 9))); // 11
    x.push(meet(join(&x, 1, 10), join(&x, 4, 5))); // 12
    x.push(meet(join(&x, 3, 6), join(&x, 1, 11))); // 13

    for (i, v) in x.iter().enumerate() {
        if v.is_zero() {
            return Err(ConfigError::DegenerateStep(i as u8 + 1));
        }
    }
    Ok(x)
}

pub fn construct_sequence(p: &ParamPoint) -> Result<Construction<Rational>, ConfigError> {
    let columns = construct_sequence_in(p.s.clone(), p.t.clone(), p.u.clone())?;
    let mut issues = Vec::new();
    for i in 0..NUM_POINTS {
        for j in i + 1..NUM_POINTS {
            if cross(&columns[i], &columns[j]).is_zero() {
                issues.push(ConstructionIssue::DuplicatePoint(i as u8 + 1, j as u8 + 1));
            }
        }
    }
    Ok(Construction {
        configuration: Configuration::new(columns),
        issues,
    })
}

/// `Some(λ)` when `v = λ·w` with `λ ≠ 0`.
pub fn proportionality(v: &Vec3<Rational>, w: &Vec3<Rational>) -> Option<Rational> {
    let pivot = w.coords().into_iter().zip(v.coords()).find(|(wc, _)| !wc.is_zero())?;
    let lambda = pivot.1 / pivot.0;
    if lambda.is_zero() || w.scale(&lambda) != *v {
        return None;
    }
    Some(lambda)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnAgreement {
    pub label: u8,
    pub lambda: Rational,
}

impl ColumnAgreement {
    pub fn exact(&self) -> bool {
        self.lambda.is_one()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub point: ParamPoint,
    pub columns: Vec<ColumnAgreement>,
    pub issues: Vec<ConstructionIssue>,
}

impl AgreementReport {
    /// All scale factors positive, so both matrices have the same chirotope.
    pub fn passes(&self) -> bool {
        self.columns.iter().all(|c| rat_sign(&c.lambda) == Sign::Pos)
    }

    pub fn all_exact(&self) -> bool {
        self.columns.iter().all(ColumnAgreement::exact)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point.to_json(),
            "passes": self.passes(),
            "all_exact": self.all_exact(),
            "lambdas": self.columns.iter().map(|c| format_rational(&c.lambda)).collect::<Vec<_>>(),
            "duplicates": self.issues.iter().map(|ConstructionIssue::DuplicatePoint(i, j)| [i, j]).collect::<Vec<_>>(),
        })
    }
}

/// Compares the construction sequence against the closed form column by column.
pub fn agreement_check(p: &ParamPoint) -> Result<AgreementReport, ConfigError> {
    let construction = construct_sequence(p)?;
    let closed = closed_form(p);
    let mut columns = Vec::with_capacity(NUM_POINTS);
    for (label, seq) in construction.configuration.labelled() {
        let lambda = proportionality(seq, closed.column(label)).ok_or(ConfigError::Mismatch(label))?;
        columns.push(ColumnAgreement { label, lambda });
    }
    Ok(AgreementReport {
        point: p.clone(),
        columns,
        issues: construction.issues,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffinePosition {
    Finite { x: Rational, y: Rational },
    AtInfinity { dx: Rational, dy: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePoint {
    pub label: u8,
    pub position: AffinePosition,
}

impl AffinePoint {
    pub fn is_finite(&self) -> bool {
        matches!(self.position, AffinePosition::Finite { .. })
    }

    pub fn to_json(&self) -> Value {
        match &self.position {
            AffinePosition::Finite { x, y } => json!({
                "label": self.label,
                "kind": "finite",
                "x": format_rational(x),
                "y": format_rational(y),
            }),
            AffinePosition::AtInfinity { dx, dy } => json!({
                "label": self.label,
                "kind": "infinity",
                "dx": format_rational(dx),
                "dy": format_rational(dy),
            }),
        }
    }
}

/// Dehomogenises every column with nonzero last coordinate onto the plane
/// `z = 1`; the rest become directions at infinity.
pub fn affine_image(c: &Configuration<Rational>) -> Vec<AffinePoint> {
    c.labelled()
        .map(|(label, v)| {
            let position = if v.z.is_zero() {
                AffinePosition::AtInfinity {
                    dx: v.x.clone(),
                    dy: v.y.clone(),
                }
            } else {
                AffinePosition::Finite {
                    x: &v.x / &v.z,
                    y: &v.y / &v.z,
                }
            };
            AffinePoint { label, position }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Monomial};

    fn v(x: Rational, y: Rational, z: Rational) -> Vec3<Rational> {
        Vec3::new(x, y, z)
    }

    #[test]
    fn base_point_columns_match_printed_matrix() {
        let x = closed_form(&ParamPoint::base());
        let h = rat(1, 2);
        let printed = [
            v(int(1), int(0), int(0)),
            v(int(0), int(1), int(0)),
            v(int(0), int(0), int(1)),
            v(int(1), int(1), int(1)),
            v(h.clone(), int(0), int(1)),
            v(h.clone(), int(1), int(1)),
            v(int(0), h.clone(), int(1)),
            v(int(1), h.clone(), int(1)),
            v(int(1), rat(1, 3), int(0)),
        ];
        for (i, col) in printed.iter().enumerate() {
            assert_eq!(x.column(i as u8 + 1), col, "column {}", i + 1);
        }
        // (st, t, 1 - su) at (1/2, 1/2, 1/3)
        assert_eq!(x.column(10), &v(rat(1, 4), rat(1, 2), rat(5, 6)));
    }

    #[test]
    fn symbolic_entries() {
        let x = closed_form_symbolic();
        assert_eq!(x.column(10).x, Poly3::s() * Poly3::t());
        assert_eq!(x.column(11).z, Poly3::one() - Poly3::u() + Poly3::s() * Poly3::u());
        assert_eq!(x.column(12).x.coeff(&Monomial::new(2, 0, 1)), int(-1));
        assert_eq!(x.eval(&ParamPoint::base()), closed_form(&ParamPoint::base()));
    }

    #[test]
    fn sequence_step_six_by_hand() {
        // (x1 x x4) x (x2 x x5) = (0,-1,1) x (1,0,-1/2) = (1/2, 1, 1)
        let c = construct_sequence(&ParamPoint::base()).unwrap();
        assert_eq!(c.configuration.column(6), &v(rat(1, 2), int(1), int(1)));
        assert!(c.issues.is_empty());
    }

    #[test]
    fn u_zero_merges_points_one_and_nine() {
        let p = ParamPoint::new(rat(1, 2), rat(1, 2), int(0));
        let c = construct_sequence(&p).unwrap();
        assert!(c.issues.contains(&ConstructionIssue::DuplicatePoint(1, 9)));
    }

    #[test]
    fn degenerate_step_is_reported() {
        // t = 0 puts x7 on x3 and s = u = 1 puts x9 on the line x3 v x6,
        // so the two lines meeting in x10 coincide.
        let p = ParamPoint::new(int(1), int(0), int(1));
        assert_eq!(construct_sequence(&p).unwrap_err(), ConfigError::DegenerateStep(10));
    }

    #[test]
    fn agreement_at_named_points() {
        for p in [
            ParamPoint::base(),
            ParamPoint::from_fracs((1, 2), (3, 8), (1, 4)),
            ParamPoint::from_fracs((3, 4), (11, 24), (2, 7)),
        ] {
            let report = agreement_check(&p).unwrap();
            assert!(report.passes(), "{p}");
            assert_eq!(report.columns.len(), NUM_POINTS);
        }
        assert!(agreement_check(&ParamPoint::base()).unwrap().all_exact());
    }

    #[test]
    fn proportionality_detects_sign_and_mismatch() {
        let a = v(int(1), int(2), int(0));
        assert_eq!(proportionality(&a.scale(&int(-3)), &a), Some(int(-3)));
        assert_eq!(proportionality(&v(int(1), int(2), int(1)), &a), None);
        assert_eq!(proportionality(&Vec3::zero(), &a), None);
    }

    #[test]
    fn affine_image_of_base_point() {
        let img = affine_image(&closed_form(&ParamPoint::base()));
        let infinite: Vec<u8> = img.iter().filter(|p| !p.is_finite()).map(|p| p.label).collect();
        assert_eq!(infinite, POINTS_AT_INFINITY);
        assert_eq!(
            img[3].position,
            AffinePosition::Finite { x: int(1), y: int(1) }
        );
        assert_eq!(
            img[8].position,
            AffinePosition::AtInfinity { dx: int(1), dy: rat(1, 3) }
        );
        assert_eq!(
            img[6].position,
            AffinePosition::Finite { x: int(0), y: rat(1, 2) }
        );
    }
}
