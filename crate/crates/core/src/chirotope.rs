//! Rank-3 chirotopes on the ground set `E = {1, …, 13}`.
//!
//! Values are stored densely, one [`Sign`] per increasing triple, in the
//! lexicographic order of [`Triple::all`]. Unsorted access goes through
//! [`Chirotope::eval`], which applies the permutation sign.

use std::fmt::Write as _;
use std::ops::Neg;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::configuration::{closed_form, Configuration, ParamPoint, NUM_POINTS};
use crate::exact::{common_denominator, Rational, Sign};

/// `C(13, 3)`.
pub const NUM_TRIPLES: usize = 286;

const N: usize = NUM_POINTS;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChirotopeError {
    #[error("label {0} is outside 1..=13")]
    LabelOutOfRange(u8),
    #[error("({0}, {1}, {2}) is not a strictly increasing triple")]
    NotIncreasing(u8, u8, u8),
    #[error("all 286 signs are zero; the configuration has rank below 3")]
    IdenticallyZero,
    #[error("bad chirotope row {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Increasing triple `i < j < k` of labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    i: u8,
    j: u8,
    k: u8,
}

impl Triple {
    pub fn new(i: u8, j: u8, k: u8) -> Result<Self, ChirotopeError> {
        for l in [i, j, k] {
            check_label(l)?;
        }
        if !(i < j && j < k) {
            return Err(ChirotopeError::NotIncreasing(i, j, k));
        }
        Ok(Triple { i, j, k })
    }

    pub fn labels(&self) -> [u8; 3] {
        [self.i, self.j, self.k]
    }

    /// Position in the lexicographic enumeration.
    pub fn rank(&self) -> usize {
        usize::from(tables().rank[flat(self.i, self.j, self.k)])
    }

    /// All 286 triples in lexicographic order.
    pub fn all() -> &'static [Triple] {
        &tables().triples
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

fn check_label(l: u8) -> Result<(), ChirotopeError> {
    if l == 0 || usize::from(l) > N {
        Err(ChirotopeError::LabelOutOfRange(l))
    } else {
        Ok(())
    }
}

fn flat(i: u8, j: u8, k: u8) -> usize {
    ((usize::from(i) - 1) * N + usize::from(j) - 1) * N + usize::from(k) - 1
}

struct Tables {
    triples: Vec<Triple>,
    rank: Vec<u16>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut triples = Vec::with_capacity(NUM_TRIPLES);
        let mut rank = vec![u16::MAX; N * N * N];
        let n = N as u8;
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    rank[flat(i, j, k)] = triples.len() as u16;
                    triples.push(Triple { i, j, k });
                }
            }
        }
        Tables { triples, rank }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chirotope {
    values: [Sign; NUM_TRIPLES],
}

/// A six-tuple `(i1, i2, i3, j1, j2, j3)` breaking the exchange axiom.
pub type Violation = [u8; 6];

impl Chirotope {
    pub fn from_values(values: [Sign; NUM_TRIPLES]) -> Self {
        Chirotope { values }
    }

    pub fn values(&self) -> &[Sign; NUM_TRIPLES] {
        &self.values
    }

    pub fn get(&self, t: Triple) -> Sign {
        self.values[t.rank()]
    }

    /// Alternating extension to arbitrary label triples.
    pub fn eval(&self, i: u8, j: u8, k: u8) -> Result<Sign, ChirotopeError> {
        for l in [i, j, k] {
            check_label(l)?;
        }
        if i == j || j == k || i == k {
            return Ok(Sign::Zero);
        }
        let mut idx = [i, j, k];
        let mut parity = Sign::Pos;
        // three-element bubble sort, counting swaps
        for (a, b) in [(0, 1), (1, 2), (0, 1)] {
            if idx[a] > idx[b] {
                idx.swap(a, b);
                parity = -parity;
            }
        }
        Ok(parity * self.values[tables().rank[flat(idx[0], idx[1], idx[2])] as usize])
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|s| s.is_zero())
    }

    /// Same map with one increasing triple reassigned.
    pub fn flip(&self, t: Triple, sign: Sign) -> Chirotope {
        let mut out = self.clone();
        out.values[t.rank()] = sign;
        out
    }

    pub fn equal_up_to_sign(&self, other: &Chirotope) -> bool {
        self == other || *self == -other
    }

    pub fn zero_set(&self) -> Vec<Triple> {
        Triple::all()
            .iter()
            .copied()
            .filter(|t| self.get(*t).is_zero())
            .collect()
    }

    /// Signed values for every ordered label triple, indexed by `flat`.
    fn dense(&self) -> Vec<i8> {
        let mut table = vec![0i8; N * N * N];
        let n = N as u8;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    table[flat(i, j, k)] = self.eval(i, j, k).expect("labels in range").as_i8();
                }
            }
        }
        table
    }

    /// Exhaustive check of the exchange axiom over all `13^6` six-tuples,
    /// in the quantifier form: whenever
    /// `χ(j_k, i2, i3) · χ(j_1..i1 at k..j_3) ≥ 0` for `k = 1, 2, 3`,
    /// then `χ(i1, i2, i3) · χ(j1, j2, j3) ≥ 0`.
    ///
    /// Returns every violating six-tuple, sorted.
    pub fn axiom3_violations(&self) -> Vec<Violation> {
        let table = self.dense();
        let mut out: Vec<Violation> = (0..N * N * N)
            .into_par_iter()
            .flat_map_iter(|head| {
                let mut found = Vec::new();
                scan_head(&table, head, |v| {
                    found.push(v);
                    true
                });
                found
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Stops at the first violation in lexicographic order of six-tuples.
    pub fn first_axiom3_violation(&self) -> Option<Violation> {
        let table = self.dense();
        (0..N * N * N).find_map(|head| {
            let mut first = None;
            scan_head(&table, head, |v| {
                first = Some(v);
                false
            });
            first
        })
    }

    pub fn check_axioms(&self) -> AxiomReport {
        AxiomReport {
            not_identically_zero: !self.is_identically_zero(),
            alternating: self.is_alternating(),
            axiom3_violations: self.axiom3_violations(),
        }
    }

    /// Re-derives alternation from `eval` over all ordered triples.
    fn is_alternating(&self) -> bool {
        let n = N as u8;
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                (1..=n).all(|k| {
                    let v = self.eval(i, j, k).unwrap();
                    v == -self.eval(j, i, k).unwrap()
                        && v == -self.eval(i, k, j).unwrap()
                        && v == self.eval(j, k, i).unwrap()
                })
            })
        })
    }

    /// Rows `i,j,k,sign` for increasing triples in lexicographic order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,sign\n");
        for t in Triple::all() {
            writeln!(out, "{},{},{},{}", t.i, t.j, t.k, self.get(*t).as_i8()).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Chirotope, ChirotopeError> {
        let mut values = [Sign::Zero; NUM_TRIPLES];
        let mut seen = [false; NUM_TRIPLES];
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "i,j,k,sign" {
                continue;
            }
            let bad = |reason: &str| ChirotopeError::Parse {
                line: line_no + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<i64> = line
                .split(',')
                .map(|f| f.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad("non-integer field"))?;
            let [i, j, k, s] = fields[..] else {
                return Err(bad("expected four fields"));
            };
            let label = |v: i64| u8::try_from(v).map_err(|_| bad("label out of range"));
            let t = Triple::new(label(i)?, label(j)?, label(k)?)?;
            let sign = i8::try_from(s).ok().and_then(Sign::from_i8).ok_or_else(|| bad("sign must be -1, 0 or 1"))?;
            values[t.rank()] = sign;
            seen[t.rank()] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(ChirotopeError::Parse {
                line: 0,
                reason: format!("missing triple {}", Triple::all()[missing]),
            });
        }
        Ok(Chirotope { values })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = Triple::all()
            .iter()
            .map(|t| json!([t.i, t.j, t.k, self.get(*t).as_i8()]))
            .collect();
        json!({ "triples": rows })
    }
}

/// Scans all `j` for the six-tuples whose `i`-part is the ordered triple at
/// `head`. `report` returns `false` to stop early.
fn scan_head(table: &[i8], head: usize, mut report: impl FnMut(Violation) -> bool) {
    let i1 = head / (N * N);
    let i2 = (head / N) % N;
    let i3 = head % N;
    let chi_i = table[head];
    if chi_i == 0 {
        // χ(i)·χ(j) = 0 for every j; nothing can be violated
        return;
    }
    let at = |a: usize, b: usize, c: usize| table[(a * N + b) * N + c];
    for j1 in 0..N {
        // k = 1 term: χ(j1, i2, i3) · χ(i1, j2, j3)
        let a1 = at(j1, i2, i3);
        for j2 in 0..N {
            let a2 = at(j2, i2, i3);
            for j3 in 0..N {
                let chi_j = at(j1, j2, j3);
                if chi_i * chi_j >= 0 {
                    continue;
                }
                let a3 = at(j3, i2, i3);
                let premise = a1 * at(i1, j2, j3) >= 0
                    && a2 * at(j1, i1, j3) >= 0
                    && a3 * at(j1, j2, i1) >= 0;
                if premise {
                    let v = [i1, i2, i3, j1, j2, j3].map(|x| x as u8 + 1);
                    if !report(v) {
                        return;
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub not_identically_zero: bool,
    pub alternating: bool,
    pub axiom3_violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.not_identically_zero && self.alternating && self.axiom3_violations.is_empty()
    }
}

impl Neg for &Chirotope {
    type Output = Chirotope;

    fn neg(self) -> Chirotope {
        Chirotope {
            values: self.values.map(|s| -s),
        }
    }
}

impl Neg for Chirotope {
    type Output = Chirotope;

    fn neg(self) -> Chirotope {
        -&self
    }
}

/// Columns scaled by positive integers to integer vectors; signs of
/// determinants are unchanged.
enum IntColumns {
    Small(Vec<[i128; 3]>),
    Big(Vec<[BigInt; 3]>),
}

// 3 * 40 bits per product, six products: fits in i128 without overflow.
const SMALL_BITS: u64 = 40;

fn integer_columns(c: &Configuration<Rational>) -> IntColumns {
    let big: Vec<[BigInt; 3]> = c
        .columns()
        .iter()
        .map(|v| {
            let d = Rational::from_integer(common_denominator(v.coords()));
            v.coords().map(|x| (x * &d).to_integer())
        })
        .collect();
    let small = big.iter().all(|col| col.iter().all(|x| x.bits() <= SMALL_BITS));
    if small {
        IntColumns::Small(
            big.iter()
                .map(|col| col.each_ref().map(|x| x.to_i128().expect("checked bit length")))
                .collect(),
        )
    } else {
        IntColumns::Big(big)
    }
}

fn det_sign_i128(a: &[i128; 3], b: &[i128; 3], c: &[i128; 3]) -> Sign {
    let d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    Sign::of(&d)
}

fn det_sign_big(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> Sign {
    let d = &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0]);
    Sign::of(&d)
}

/// Signs of all 286 minors, allowing the all-zero map.
pub fn signs_of(c: &Configuration<Rational>) -> Chirotope {
    let mut values = [Sign::Zero; NUM_TRIPLES];
    let cols = integer_columns(c);
    for (slot, t) in values.iter_mut().zip(Triple::all()) {
        let [i, j, k] = t.labels().map(|l| usize::from(l) - 1);
        *slot = match &cols {
            IntColumns::Small(v) => det_sign_i128(&v[i], &v[j], &v[k]),
            IntColumns::Big(v) => det_sign_big(&v[i], &v[j], &v[k]),
        };
    }
    Chirotope { values }
}

/// The chirotope `sgn det(x_i, x_j, x_k)` of a rational configuration.
pub fn chirotope_of(c: &Configuration<Rational>) -> Result<Chirotope, ChirotopeError> {
    let chi = signs_of(c);
    if chi.is_identically_zero() {
        return Err(ChirotopeError::IdenticallyZero);
    }
    Ok(chi)
}

/// The triple whose sign distinguishes the three matroids of the family.
pub fn flip_triple() -> Triple {
    Triple::new(9, 12, 13).unwrap()
}

/// Chirotope of `X(1/2, 1/2, 1/3)`.
pub fn base_chirotope() -> &'static Chirotope {
    static BASE: OnceLock<Chirotope> = OnceLock::new();
    BASE.get_or_init(|| chirotope_of(&closed_form(&ParamPoint::base())).expect("base point has rank 3"))
}

/// `χ^ε`: the base chirotope with the value at `(9, 12, 13)` set to `ε`.
pub fn family(epsilon: Sign) -> Chirotope {
    base_chirotope().flip(flip_triple(), epsilon)
}
