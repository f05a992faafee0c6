//! Which member of the family `χ⁻, χ⁰, χ⁺` a parameter point realizes.
//!
//! Two independent routes decide this. The inequality route evaluates nine
//! polynomials that must be positive plus the sign of
//! `D = u(1-2s)(1-2t+tu-su)`; the chirotope route computes all 286 signs of
//! `X(s,t,u)` and compares them with the three target maps. [`classify`]
//! runs both and fails loudly if they ever disagree.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::chirotope::{family, signs_of, Chirotope, ChirotopeError, Triple};
use crate::configuration::{closed_form, closed_form_symbolic, ParamPoint};
use crate::exact::{
    det3, format_rational, int, parse_rational, rat, rat_sign, ParseRationalError, Poly3, Rational,
    Sign,
};
use crate::exact::Var;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Minus,
    Zero,
    Plus,
    Other,
}

impl Label {
    pub fn from_sign(s: Sign) -> Label {
        match s {
            Sign::Neg => Label::Minus,
            Sign::Zero => Label::Zero,
            Sign::Pos => Label::Plus,
        }
    }

    pub fn epsilon(self) -> Option<Sign> {
        match self {
            Label::Minus => Some(Sign::Neg),
            Label::Zero => Some(Sign::Zero),
            Label::Plus => Some(Sign::Pos),
            Label::Other => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Minus => "minus",
            Label::Zero => "zero",
            Label::Plus => "plus",
            Label::Other => "other",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minus" | "-" => Ok(Label::Minus),
            "zero" | "0" => Ok(Label::Zero),
            "plus" | "+" => Ok(Label::Plus),
            "other" => Ok(Label::Other),
            _ => Err(format!("unknown label `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(
        "inequality route says {by_inequalities} but chirotope route says {by_chirotope} at {point}"
    )]
    InternalInconsistency {
        point: Box<ParamPoint>,
        by_inequalities: Label,
        by_chirotope: Label,
    },
    #[error("u' = {0} is one of the excluded values -1, 0, 1/2, 1, 3/2, 2, 3")]
    ExcludedParameter(String),
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
}

/// Values of the quantities whose signs decide membership. Each one is a
/// determinant of `X(s,t,u)` up to a factor that is positive inside the cube
/// (see [`symbolic_determinant_table`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityProfile {
    pub s: Rational,
    pub one_minus_s: Rational,
    pub t: Rational,
    pub one_minus_t: Rational,
    pub u: Rational,
    pub one_minus_t_minus_u: Rational,
    pub t_minus_u: Rational,
    /// `t² - (1-s)u`
    pub t_sq_minus_rest: Rational,
    /// `(1-t)² - su`
    pub one_minus_t_sq_minus_su: Rational,
    /// `u(1-2s)(1-2t+tu-su)`
    pub d: Rational,
}

impl InequalityProfile {
    fn strict(&self) -> [(&'static str, &Rational); 9] {
        [
            ("s", &self.s),
            ("1-s", &self.one_minus_s),
            ("t", &self.t),
            ("1-t", &self.one_minus_t),
            ("u", &self.u),
            ("1-t-u", &self.one_minus_t_minus_u),
            ("t-u", &self.t_minus_u),
            ("t^2-(1-s)u", &self.t_sq_minus_rest),
            ("(1-t)^2-su", &self.one_minus_t_sq_minus_su),
        ]
    }

    /// The nine quantities other than `D` are all positive.
    pub fn strict_conditions_hold(&self) -> bool {
        self.strict().iter().all(|(_, v)| rat_sign(v) == Sign::Pos)
    }

    pub fn failed_conditions(&self) -> Vec<&'static str> {
        self.strict()
            .iter()
            .filter(|(_, v)| rat_sign(v) != Sign::Pos)
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn label(&self) -> Label {
        if self.strict_conditions_hold() {
            Label::from_sign(rat_sign(&self.d))
        } else {
            Label::Other
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (name, v) in self.strict() {
            map.insert(name.to_string(), json!(format_rational(v)));
        }
        map.insert("D".into(), json!(format_rational(&self.d)));
        Value::Object(map)
    }
}

pub fn inequality_profile(p: &ParamPoint) -> InequalityProfile {
    let one = Rational::one();
    let (s, t, u) = (&p.s, &p.t, &p.u);
    let one_minus_s = &one - s;
    let one_minus_t = &one - t;
    let sheet = &one - int(2) * t + t * u - s * u;
    InequalityProfile {
        s: s.clone(),
        one_minus_s: one_minus_s.clone(),
        t: t.clone(),
        one_minus_t: one_minus_t.clone(),
        u: u.clone(),
        one_minus_t_minus_u: &one_minus_t - u,
        t_minus_u: t - u,
        t_sq_minus_rest: t * t - &one_minus_s * u,
        one_minus_t_sq_minus_su: &one_minus_t * &one_minus_t - s * u,
        d: u * (&one - int(2) * s) * sheet,
    }
}

fn targets() -> &'static [(Label, Chirotope); 3] {
    static TARGETS: OnceLock<[(Label, Chirotope); 3]> = OnceLock::new();
    TARGETS.get_or_init(|| {
        [Sign::Neg, Sign::Zero, Sign::Pos].map(|e| (Label::from_sign(e), family(e)))
    })
}

/// Label from the full sign vector of `X(p)`: the `ε` with `χ_X(p) = χ^ε`.
pub fn classify_by_chirotope(p: &ParamPoint) -> Label {
    let chi = signs_of(&closed_form(p));
    targets()
        .iter()
        .find(|(_, target)| *target == chi)
        .map(|(l, _)| *l)
        .unwrap_or(Label::Other)
}

/// Inequality route only.
pub fn classify_fast(p: &ParamPoint) -> Label {
    inequality_profile(p).label()
}

/// Runs both routes; they must agree.
pub fn classify(p: &ParamPoint) -> Result<Label, ClassifyError> {
    let by_inequalities = classify_fast(p);
    let by_chirotope = classify_by_chirotope(p);
    if by_inequalities != by_chirotope {
        return Err(ClassifyError::InternalInconsistency {
            point: Box::new(p.clone()),
            by_inequalities,
            by_chirotope,
        });
    }
    Ok(by_inequalities)
}

/// One entry of the determinant table: an ordered triple of columns and the
/// closed-form polynomial its determinant should equal.
#[derive(Debug, Clone, PartialEq)]
pub struct DetIdentity {
    pub triple: [u8; 3],
    pub expected: Poly3,
    pub computed: Poly3,
}

impl DetIdentity {
    pub fn holds(&self) -> bool {
        self.expected == self.computed
    }

    pub fn to_json(&self) -> Value {
        json!({
            "triple": self.triple,
            "expected": self.expected.to_string(),
            "computed": self.computed.to_string(),
            "holds": self.holds(),
        })
    }
}

/// Expected determinants of `X(s,t,u)` for the ten triples that carry the
/// sign conditions.
pub fn expected_determinants() -> Vec<([u8; 3], Poly3)> {
    let (s, t, u) = (Poly3::s(), Poly3::t(), Poly3::u());
    let one = Poly3::one();
    let two = Poly3::from(2);
    let one_minus = |p: &Poly3| &one - p;
    let sheet = &one - &(&two * &t) + &t * &u - &s * &u;
    vec![
        ([2, 3, 5], s.clone()),
        ([2, 5, 4], one_minus(&s)),
        ([1, 7, 3], t.clone()),
        ([1, 4, 7], one_minus(&t)),
        ([1, 9, 3], u.clone()),
        ([4, 7, 9], &one_minus(&t) - &u),
        ([3, 9, 8], &t - &u),
        ([5, 13, 7], &s * &(&t * &t - &one_minus(&s) * &u)),
        (
            [6, 12, 8],
            &one_minus(&s) * &(one_minus(&t).pow(2) - &s * &u),
        ),
        ([9, 12, 13], &u * &one_minus(&(&two * &s)) * sheet),
    ]
}

pub fn symbolic_determinant_table() -> Vec<DetIdentity> {
    let x = closed_form_symbolic();
    expected_determinants()
        .into_iter()
        .map(|(triple, expected)| {
            let [i, j, k] = triple;
            DetIdentity {
                triple,
                computed: det3(x.column(i), x.column(j), x.column(k)),
                expected,
            }
        })
        .collect()
}

/// Which open piece of a two-piece region a point lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    /// `s < 1/2`
    LowS,
    /// `s > 1/2`
    HighS,
}

fn pos(q: &Rational) -> bool {
    rat_sign(q) == Sign::Pos
}

fn between(lo: &Rational, x: &Rational, hi: &Rational) -> bool {
    lo < x && x < hi
}

/// Explicit description of the `χ⁻` region as two boxes with a curved lid on
/// `u`. The upper bounds on `u` are compared with denominators cleared; the
/// denominators `s`, `t-s`, `1-s`, `s-t` are positive inside each piece.
pub fn region_minus(p: &ParamPoint) -> Option<Piece> {
    let (zero, half, one) = (int(0), rat(1, 2), int(1));
    let (s, t, u) = (&p.s, &p.t, &p.u);
    let two = int(2);
    if between(&zero, s, &half) && between(&half, t, &one) {
        let ok = pos(u)
            && *u < &one - t
            && s * u < (&one - t) * (&one - t)
            && (t - s) * u < &two * t - &one;
        return ok.then_some(Piece::LowS);
    }
    if between(&half, s, &one) && between(&zero, t, &half) {
        let ok = pos(u)
            && u < t
            && (&one - s) * u < t * t
            && (s - t) * u < &one - &two * t;
        return ok.then_some(Piece::HighS);
    }
    None
}

/// Explicit description of the `χ⁺` region. The square-root bounds on `t`
/// are squared: `√((1-s)u) < t` iff `t > 0` and `t² > (1-s)u`, and
/// `t < 1 - √(su)` iff `1 - t > 0` and `(1-t)² > su`.
pub fn region_plus(p: &ParamPoint) -> Option<Piece> {
    let (zero, half, one, two) = (int(0), rat(1, 2), int(1), int(2));
    let (s, t, u) = (&p.s, &p.t, &p.u);
    if !between(&zero, u, &half) {
        return None;
    }
    let one_minus_u_sq = (&one - u) * (&one - u);
    // 2 - u > 0 here, so t < (1-su)/(2-u) iff t(2-u) < 1-su
    let t_scaled = t * (&two - u);
    let one_minus_su = &one - s * u;
    if between(&zero, s, &half) {
        let ok = pos(&(&one_minus_u_sq - (&one - s) * u))
            && pos(t)
            && t * t > (&one - s) * u
            && t_scaled < one_minus_su;
        return ok.then_some(Piece::LowS);
    }
    if between(&half, s, &one) {
        let ok = pos(&(&one_minus_u_sq - s * u))
            && one_minus_su < t_scaled
            && pos(&(&one - t))
            && (&one - t) * (&one - t) > s * u;
        return ok.then_some(Piece::HighS);
    }
    None
}

/// Membership in the two sheets of the `χ⁰` region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SheetMembership {
    /// On `1 - 2s = 0`.
    pub sheet_s: bool,
    /// On `1 - 2t + tu - su = 0`.
    pub sheet_t: bool,
}

impl SheetMembership {
    pub fn any(&self) -> bool {
        self.sheet_s || self.sheet_t
    }

    pub fn both(&self) -> bool {
        self.sheet_s && self.sheet_t
    }
}

pub fn on_sheet_s(p: &ParamPoint) -> bool {
    let (zero, one, two) = (int(0), int(1), int(2));
    let (s, t, u) = (&p.s, &p.t, &p.u);
    *s == rat(1, 2)
        && between(&zero, t, &one)
        && pos(u)
        && *u < &two * t * t
        && *u < &two * (&one - t) * (&one - t)
}

pub fn on_sheet_t(p: &ParamPoint) -> bool {
    let (zero, half, one, two) = (int(0), rat(1, 2), int(1), int(2));
    let (s, t, u) = (&p.s, &p.t, &p.u);
    let one_minus_u_sq = (&one - u) * (&one - u);
    between(&zero, s, &one)
        && between(&zero, u, &half)
        && pos(&(&one_minus_u_sq - s * u))
        && pos(&(&one_minus_u_sq - (&one - s) * u))
        && (&one - &two * t + t * u - s * u).is_zero()
}

pub fn region_zero(p: &ParamPoint) -> SheetMembership {
    SheetMembership {
        sheet_s: on_sheet_s(p),
        sheet_t: on_sheet_t(p),
    }
}

/// The values of `u'` for which `X(1/2, 1/2, u')` may not be used as base.
pub fn excluded_u_values() -> [Rational; 7] {
    [int(-1), int(0), rat(1, 2), int(1), rat(3, 2), int(2), int(3)]
}

/// Chirotope of `X(1/2, 1/2, u')`, the alternative base point.
pub fn alt_base_chirotope(u_prime: &Rational) -> Result<Chirotope, ClassifyError> {
    if excluded_u_values().contains(u_prime) {
        return Err(ClassifyError::ExcludedParameter(format_rational(u_prime)));
    }
    let p = ParamPoint::new(rat(1, 2), rat(1, 2), u_prime.clone());
    Ok(crate::chirotope::chirotope_of(&closed_form(&p))?)
}

/// What goes wrong on the line `s = t = 1/2` at a given `u`: triples whose
/// determinant vanishes there but not identically along the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    pub u: Rational,
    pub extra_zeros: Vec<Triple>,
}

impl Degeneracy {
    pub fn is_generic(&self) -> bool {
        self.extra_zeros.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": format_rational(&self.u),
            "generic": self.is_generic(),
            "extra_zeros": self.extra_zeros.iter().map(|t| t.labels()).collect::<Vec<_>>(),
        })
    }
}

pub fn degeneracy_on_base_line(u: &Rational) -> Degeneracy {
    let x = closed_form_symbolic();
    let half = rat(1, 2);
    let extra_zeros = Triple::all()
        .iter()
        .copied()
        .filter(|t| {
            let [i, j, k] = t.labels();
            let line = det3(x.column(i), x.column(j), x.column(k))
                .substitute(Var::S, &half)
                .substitute(Var::T, &half);
            !line.is_zero() && line.eval(&half, &half, u).is_zero()
        })
        .collect();
    Degeneracy {
        u: u.clone(),
        extra_zeros,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BatchError {
    #[error("line {line}: expected three rationals `s t u`")]
    Arity { line: usize },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: ParseRationalError,
    },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Reads `s t u` lines and writes CSV rows `s,t,u,label,D`. Blank lines and
/// lines starting with `#` are skipped.
pub fn classify_batch(input: &str) -> Result<String, BatchError> {
    let mut out = String::from("s,t,u,label,D\n");
    for (idx, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(BatchError::Arity { line: idx + 1 });
        }
        let mut vals = Vec::with_capacity(3);
        for f in fields {
            vals.push(parse_rational(f).map_err(|source| BatchError::Parse {
                line: idx + 1,
                source,
            })?);
        }
        let p = ParamPoint::new(vals[0].clone(), vals[1].clone(), vals[2].clone());
        let label = classify(&p)?;
        let d = inequality_profile(&p).d;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_rational(&p.s),
            format_rational(&p.t),
            format_rational(&p.u),
            label,
            format_rational(&d)
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::base_chirotope;

    fn p(s: (i64, i64), t: (i64, i64), u: (i64, i64)) -> ParamPoint {
        ParamPoint::from_fracs(s, t, u)
    }

    #[test]
    fn determinant_table_holds() {
        let table = symbolic_determinant_table();
        assert_eq!(table.len(), 10);
        for row in &table {
            assert!(row.holds(), "{:?}: {} vs {}", row.triple, row.computed, row.expected);
        }
        assert_eq!(table[0].computed, Poly3::s());
    }

    #[test]
    fn profile_values() {
        assert!(inequality_profile(&ParamPoint::base()).d.is_zero());
        let q = inequality_profile(&p((1, 4), (3, 4), (1, 8)));
        for v in [&q.s, &q.one_minus_s, &q.t, &q.one_minus_t, &q.u, &q.one_minus_t_minus_u, &q.t_minus_u] {
            assert!(pos(v));
        }
        assert!(inequality_profile(&p((1, 2), (1, 2), (1, 2))).t_minus_u.is_zero());
    }

    #[test]
    fn classify_named_points() {
        let cases = [
            (ParamPoint::base(), Label::Zero),
            (p((1, 2), (3, 8), (1, 4)), Label::Zero),
            (p((3, 4), (11, 24), (2, 7)), Label::Zero),
            (p((1, 4), (3, 4), (1, 8)), Label::Minus),
            (p((1, 4), (1, 2), (1, 4)), Label::Plus),
            (p((1, 2), (1, 2), (1, 2)), Label::Other),
        ];
        for (pt, expected) in cases {
            assert_eq!(classify(&pt), Ok(expected), "{pt}");
        }
    }

    #[test]
    fn region_minus_examples() {
        assert_eq!(region_minus(&p((1, 4), (3, 4), (1, 8))), Some(Piece::LowS));
        assert_eq!(region_minus(&p((3, 4), (1, 4), (1, 8))), Some(Piece::HighS));
        assert_eq!(region_minus(&p((1, 2), (3, 4), (1, 8))), None);
    }

    #[test]
    fn region_plus_examples() {
        assert_eq!(region_plus(&p((1, 4), (1, 2), (1, 4))), Some(Piece::LowS));
        assert_eq!(region_plus(&p((3, 4), (1, 2), (1, 4))), Some(Piece::HighS));
        assert_eq!(region_plus(&p((1, 2), (1, 2), (1, 4))), None);
    }

    #[test]
    fn region_zero_examples() {
        let left = region_zero(&p((1, 2), (3, 8), (1, 4)));
        assert!(left.sheet_s && !left.sheet_t);
        let right = region_zero(&p((3, 4), (11, 24), (2, 7)));
        assert!(right.sheet_t && !right.sheet_s);
        assert!(region_zero(&p((1, 2), (1, 2), (1, 4))).both());
    }

    #[test]
    fn alternative_base_points() {
        assert_eq!(alt_base_chirotope(&rat(1, 4)).as_ref(), Ok(base_chirotope()));
        assert_eq!(alt_base_chirotope(&rat(1, 3)).as_ref(), Ok(base_chirotope()));
        assert!(matches!(
            alt_base_chirotope(&int(2)),
            Err(ClassifyError::ExcludedParameter(_))
        ));
        // 2 is excluded from use as a base, but its sign vector still differs
        let at_two = crate::chirotope::signs_of(&closed_form(&p((1, 2), (1, 2), (2, 1))));
        assert_ne!(&at_two, base_chirotope());
    }

    #[test]
    fn excluded_values_are_degenerate() {
        for u in excluded_u_values() {
            assert!(!degeneracy_on_base_line(&u).is_generic(), "u = {u}");
        }
        // frozen from an independent symbolic expansion
        let at_minus_one: Vec<[u8; 3]> = degeneracy_on_base_line(&int(-1))
            .extra_zeros
            .iter()
            .map(Triple::labels)
            .collect();
        assert_eq!(
            at_minus_one,
            [[3, 8, 12], [4, 7, 13], [5, 7, 9], [5, 7, 10], [5, 9, 10], [6, 8, 9], [6, 8, 11], [6, 9, 11]]
        );
        assert!(degeneracy_on_base_line(&rat(1, 3)).is_generic());
        assert!(degeneracy_on_base_line(&rat(5, 2)).is_generic());
    }

    #[test]
    fn batch_csv() {
        let out = classify_batch("1/4 3/4 1/8\n# comment\n\n0.5 0.375 0.25\n").unwrap();
        assert_eq!(
            out,
            "s,t,u,label,D\n1/4,3/4,1/8,minus,-7/256\n1/2,3/8,1/4,zero,0/1\n"
        );
        assert!(matches!(classify_batch("1 2"), Err(BatchError::Arity { line: 1 })));
        assert!(matches!(classify_batch("1 2 x"), Err(BatchError::Parse { line: 1, .. })));
    }
}
