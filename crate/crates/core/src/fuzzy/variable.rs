use serde::Serialize;

use super::{FuzzyError, TriangularMF};
use crate::scalar::Scalar;

/// Tolerance for inputs that fall just outside a universe; such values are clamped.
pub const UNIVERSE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term<F> {
    pub label: String,
    pub mf: TriangularMF<F>,
}

/// A named variable over a closed universe, partitioned into fuzzy terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticVariable<F> {
    name: String,
    /// Alternative spellings accepted by the rule parser.
    aliases: Vec<String>,
    lo: F,
    hi: F,
    terms: Vec<Term<F>>,
}

impl<F: Scalar> LinguisticVariable<F> {
    /// Checks label uniqueness (case-insensitive), that every term lies in
    /// `[lo, hi]`, and that every point of the universe has positive
    /// membership in some term.
    pub fn new(
        name: impl Into<String>,
        lo: F,
        hi: F,
        terms: Vec<(String, TriangularMF<F>)>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || terms.is_empty() {
            return Err(FuzzyError::InvalidVariable {
                variable: name,
                reason: "universe must be a non-empty interval with at least one term".into(),
            });
        }
        for (i, (label, mf)) in terms.iter().enumerate() {
            if terms[..i].iter().any(|(l, _)| l.eq_ignore_ascii_case(label)) {
                return Err(FuzzyError::InvalidVariable {
                    variable: name,
                    reason: format!("duplicate term `{label}`"),
                });
            }
            if mf.a() < lo || mf.c() > hi {
                return Err(FuzzyError::InvalidVariable {
                    variable: name,
                    reason: format!("term `{label}` extends outside the universe"),
                });
            }
        }
        let terms: Vec<Term<F>> = terms.into_iter().map(|(label, mf)| Term { label, mf }).collect();
        if !covers(&terms, lo, hi) {
            return Err(FuzzyError::InvalidVariable {
                variable: name,
                reason: "terms leave part of the universe with zero membership".into(),
            });
        }
        Ok(LinguisticVariable {
            name,
            aliases: Vec::new(),
            lo,
            hi,
            terms,
        })
    }

    pub fn with_aliases<I, S>(mut self, aliases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.aliases.extend(aliases.into_iter().map(Into::into));
        self
    }

    /// `labels.len()` evenly spaced triangles over `[lo, hi]` with shoulder
    /// ends; memberships sum to one everywhere.
    pub fn evenly_partitioned(name: impl Into<String>, lo: F, hi: F, labels: &[&str]) -> Result<Self, FuzzyError> {
        let name = name.into();
        let n = labels.len();
        if n < 2 {
            return Err(FuzzyError::InvalidVariable {
                variable: name,
                reason: "an even partition needs at least two terms".into(),
            });
        }
        let step = (hi - lo) / F::from_count(n - 1);
        let peak = |i: usize| if i == n - 1 { hi } else { lo + step * F::from_count(i) };
        let mut terms = Vec::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            let a = if i == 0 { lo } else { peak(i - 1) };
            let c = if i == n - 1 { hi } else { peak(i + 1) };
            terms.push((label.to_string(), TriangularMF::new(a, peak(i), c)?));
        }
        Self::new(name, lo, hi, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aliases(&self) -> &[String] {
        &self.aliases
    }

    pub fn universe(&self) -> (F, F) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn answers_to(&self, name: &str) -> bool {
        self.name.eq_ignore_ascii_case(name) || self.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label.eq_ignore_ascii_case(label))
    }

    /// Membership of `x` in every term, in term order.
    ///
    /// Values within [`UNIVERSE_SLACK`] of the universe are clamped into it.
    pub fn fuzzify(&self, x: F) -> Result<Vec<F>, FuzzyError> {
        let slack = F::lit(UNIVERSE_SLACK);
        if x.is_nan() || x < self.lo - slack || x > self.hi + slack {
            return Err(FuzzyError::OutOfUniverse {
                variable: self.name.clone(),
                value: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        let x = x.max(self.lo).min(self.hi);
        Ok(self.terms.iter().map(|t| t.mf.eval(x)).collect())
    }
}

fn covers<F: Scalar>(terms: &[Term<F>], lo: F, hi: F) -> bool {
    let mut spans: Vec<(F, bool, F, bool)> = terms.iter().map(|t| t.mf.positive_support()).collect();
    // closed starts sort first among equal starts
    spans.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap().then(y.1.cmp(&x.1)));
    let (mut reach, mut reach_closed) = (lo, false);
    for (start, start_closed, end, end_closed) in spans {
        let connected = start < reach || (start == reach && (reach_closed || start_closed));
        if !connected {
            break;
        }
        if end > reach {
            reach = end;
            reach_closed = end_closed;
        } else if end == reach {
            reach_closed |= end_closed;
        }
    }
    reach > hi || (reach == hi && reach_closed)
}
