//! Classification of structured rings from the factorization of `R/J(R)`.
//!
//! `R/J(R)` of a finite ring is a product of matrix rings `M_{n_i}(F_{q_i})`.
//! For the constructors of [`RingSpec`] that product is read off the syntax,
//! and the three verdicts below are decided from it:
//!
//! * well-covered: `R/J(R)` is `F`, `F x F`, `M_2(F)` or `Z_2^k`;
//! * Cohen-Macaulay: `J(R) = 0` and `R` is a field or `Z_2^k`;
//! * Gorenstein: `J(R) = 0` and `R` is `Z_2^k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{numth, RingSpec};

/// Multiset of `(matrix size, field order)` pairs, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorList(Vec<(usize, u64)>);

impl FactorList {
    pub fn new(mut factors: Vec<(usize, u64)>) -> Self {
        factors.sort_unstable();
        FactorList(factors)
    }

    pub fn as_slice(&self) -> &[(usize, u64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &FactorList) -> FactorList {
        FactorList::new(self.0.iter().chain(&other.0).copied().collect())
    }

    fn all_z2(&self) -> bool {
        self.0.iter().all(|&f| f == (1, 2))
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, q)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            if *n == 1 {
                write!(f, "F_{q}")?;
            } else {
                write!(f, "M_{n}(F_{q})")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Question {
    WellCovered,
    Cm,
    Gorenstein,
}

impl Question {
    pub fn as_str(self) -> &'static str {
        match self {
            Question::WellCovered => "wellcovered",
            Question::Cm => "cm",
            Question::Gorenstein => "gorenstein",
        }
    }
}

impl std::str::FromStr for Question {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "wellcovered" | "well-covered" => Ok(Question::WellCovered),
            "cm" | "CM" => Ok(Question::Cm),
            "gorenstein" => Ok(Question::Gorenstein),
            other => Err(format!("unknown question '{other}' (expected wellcovered, cm or gorenstein)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: bool,
    /// The clause of the classification that decided the answer.
    pub clause: String,
    pub witness_hint: Option<String>,
}

impl Verdict {
    fn yes(clause: &str) -> Self {
        Verdict { answer: true, clause: clause.into(), witness_hint: None }
    }

    fn no(clause: &str, hint: Option<&str>) -> Self {
        Verdict { answer: false, clause: clause.into(), witness_hint: hint.map(Into::into) }
    }
}

/// JSON verdict record: `{ring, question, answer, clause, factors}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub ring: String,
    pub question: Question,
    pub answer: bool,
    pub clause: String,
    pub factors: Vec<(usize, u64)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_hint: Option<String>,
}

pub const CLAUSE_FIELD: &str = "F";
pub const CLAUSE_FIELD_SQUARED: &str = "F × F";
pub const CLAUSE_M2: &str = "M_2(F)";
pub const CLAUSE_Z2K: &str = "Z_2^k";
pub const CLAUSE_IS_FIELD: &str = "R is a field";
pub const CLAUSE_RADICAL: &str = "J(R) ≠ 0";

/// Factors of `R/J(R)`.
pub fn semisimple_quotient(spec: &RingSpec) -> FactorList {
    match spec {
        RingSpec::Z(m) => {
            FactorList::new(numth::factorize(*m).into_iter().map(|(p, _)| (1, p)).collect())
        }
        RingSpec::GF(q) => FactorList::new(vec![(1, *q)]),
        RingSpec::T(n, base) => {
            let q = base.field_order().expect("validated: T needs a field base");
            FactorList::new(vec![(1, q); *n])
        }
        RingSpec::M(n, base) => FactorList::new(
            semisimple_quotient(base).0.into_iter().map(|(m, q)| (m * n, q)).collect(),
        ),
        RingSpec::Prod(fs) => fs
            .iter()
            .map(semisimple_quotient)
            .fold(FactorList::default(), |acc, f| acc.union(&f)),
    }
}

/// Whether `J(R) = 0`, from the syntax.
pub fn radical_is_zero(spec: &RingSpec) -> bool {
    match spec {
        RingSpec::Z(m) => numth::radical(*m) == *m,
        RingSpec::GF(_) => true,
        RingSpec::T(n, _) => *n == 1,
        RingSpec::M(_, base) => radical_is_zero(base),
        RingSpec::Prod(fs) => fs.iter().all(radical_is_zero),
    }
}

fn refutation_hint(factors: &FactorList) -> &'static str {
    let noncommutative = factors.as_slice().iter().any(|&(n, _)| n > 1);
    if noncommutative && factors.len() > 1 {
        "a matrix factor next to another factor: (R × {0}) ∪ (M × non-units) is a small maximal independent set"
    } else if noncommutative {
        "matrix size above 2: greedy extension of the reduced-diagonal family is a small maximal independent set"
    } else {
        "commutative semisimple quotient with fields of different orders or more than two factors"
    }
}

pub fn classify_well_covered(spec: &RingSpec) -> Verdict {
    let f = semisimple_quotient(spec);
    match f.as_slice() {
        [(1, _)] => Verdict::yes(CLAUSE_FIELD),
        [(1, q1), (1, q2)] if q1 == q2 => Verdict::yes(CLAUSE_FIELD_SQUARED),
        [(2, _)] => Verdict::yes(CLAUSE_M2),
        _ if f.all_z2() => Verdict::yes(CLAUSE_Z2K),
        _ => Verdict::no(
            "R/J(R) is not isomorphic to F, F × F, M_2(F) or Z_2^k",
            Some(refutation_hint(&f)),
        ),
    }
}

pub fn classify_cm(spec: &RingSpec) -> Verdict {
    if !radical_is_zero(spec) {
        return Verdict::no(CLAUSE_RADICAL, Some("the top pure skeleton is disconnected in codimension 1"));
    }
    let f = semisimple_quotient(spec);
    match f.as_slice() {
        [(1, _)] => Verdict::yes(CLAUSE_IS_FIELD),
        _ if f.all_z2() => Verdict::yes(CLAUSE_Z2K),
        _ => Verdict::no("R is neither a field nor Z_2^k", None),
    }
}

pub fn classify_gorenstein(spec: &RingSpec) -> Verdict {
    if !radical_is_zero(spec) {
        return Verdict::no(CLAUSE_RADICAL, None);
    }
    if semisimple_quotient(spec).all_z2() {
        Verdict::yes(CLAUSE_Z2K)
    } else {
        Verdict::no("R is not isomorphic to Z_2^k", None)
    }
}

pub fn classify(spec: &RingSpec, question: Question) -> VerdictReport {
    let v = match question {
        Question::WellCovered => classify_well_covered(spec),
        Question::Cm => classify_cm(spec),
        Question::Gorenstein => classify_gorenstein(spec),
    };
    VerdictReport {
        ring: spec.to_string(),
        question,
        answer: v.answer,
        clause: v.clause,
        factors: semisimple_quotient(spec).as_slice().to_vec(),
        witness_hint: v.witness_hint,
    }
}
