//! Crisp sentence scores from feature vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::features::FeatureVector;
use crate::fuzzy::{FuzzyError, FuzzySystem};
use crate::scalar::Scalar;

/// How a summary was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Sum of the eight feature scores.
    Gsm,
    /// Mamdani fuzzy inference over the eight feature scores.
    Fuzzy,
    /// Leading words of the document.
    Baseline,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Gsm, Method::Fuzzy, Method::Baseline];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Gsm => "gsm",
            Method::Fuzzy => "fuzzy",
            Method::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gsm" => Ok(Method::Gsm),
            "fuzzy" => Ok(Method::Fuzzy),
            "baseline" => Ok(Method::Baseline),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoredSentence<F> {
    pub sentence_index: usize,
    pub score: F,
    pub method: Method,
}

/// Per-feature multipliers for the statistic score; all ones by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsmWeights<F>(pub [F; 8]);

impl<F: Scalar> Default for GsmWeights<F> {
    fn default() -> Self {
        GsmWeights([F::one(); 8])
    }
}

impl<F: Scalar> GsmWeights<F> {
    /// `None` if any weight is negative or not finite.
    pub fn new(weights: [F; 8]) -> Option<Self> {
        weights
            .iter()
            .all(|w| w.is_finite() && *w >= F::zero())
            .then_some(GsmWeights(weights))
    }
}

/// Unweighted sum of the eight feature scores, in `[0, 8]`.
pub fn score_gsm<F: Scalar>(features: &FeatureVector<F>) -> F {
    features.to_array().into_iter().fold(F::zero(), |acc, v| acc + v)
}

pub fn score_gsm_weighted<F: Scalar>(features: &FeatureVector<F>, weights: &GsmWeights<F>) -> F {
    features
        .to_array()
        .into_iter()
        .zip(weights.0)
        .fold(F::zero(), |acc, (v, w)| acc + v * w)
}

/// Fuzzy importance in `[0, 1]`.
pub fn score_fuzzy<F: Scalar>(system: &FuzzySystem<F>, features: &FeatureVector<F>) -> Result<F, FuzzyError> {
    system.evaluate(&features.to_array())
}

/// Scores every sentence of a document with the statistic method.
pub fn score_all_gsm<F: Scalar>(features: &[FeatureVector<F>], weights: &GsmWeights<F>) -> Vec<ScoredSentence<F>> {
    features
        .iter()
        .enumerate()
        .map(|(i, f)| ScoredSentence {
            sentence_index: i,
            score: score_gsm_weighted(f, weights),
            method: Method::Gsm,
        })
        .collect()
}

/// Scores every sentence of a document with the fuzzy system.
pub fn score_all_fuzzy<F: Scalar>(
    features: &[FeatureVector<F>],
    system: &FuzzySystem<F>,
) -> Result<Vec<ScoredSentence<F>>, FuzzyError> {
    features
        .iter()
        .enumerate()
        .map(|(i, f)| {
            Ok(ScoredSentence {
                sentence_index: i,
                score: score_fuzzy(system, f)?,
                method: Method::Fuzzy,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::default_system;

    #[test]
    fn gsm_sums() {
        assert_eq!(score_gsm(&FeatureVector::<f64>::splat(0.0)), 0.0);
        assert_eq!(score_gsm(&FeatureVector::<f64>::splat(1.0)), 8.0);
        let v = FeatureVector::<f64>::from_array([0.5, 0.25, 1.0, 0.6, 0.0, 0.5, 1.0, 0.0]);
        assert!((score_gsm(&v) - 3.85).abs() < 1e-12);
        assert_eq!(score_gsm_weighted(&v, &GsmWeights::default()), score_gsm(&v));
    }

    #[test]
    fn weights_validated() {
        assert!(GsmWeights::new([1.0, 0.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0]).is_some());
        assert!(GsmWeights::new([1.0, -0.1, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0]).is_none());
        let w = GsmWeights::new([2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(score_gsm_weighted(&FeatureVector::splat(0.5), &w), 1.0);
    }

    #[test]
    fn fuzzy_is_deterministic_and_centered() {
        let sys = default_system::<f64>();
        let v = FeatureVector::from_array([0.3, 0.9, 0.7, 1.0, 0.4, 0.1, 0.8, 0.0]);
        assert_eq!(score_fuzzy(&sys, &v).unwrap(), score_fuzzy(&sys, &v).unwrap());
        let mid = score_fuzzy(&sys, &FeatureVector::splat(0.5)).unwrap();
        assert!((0.4..=0.6).contains(&mid));
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("lead".parse::<Method>().is_err());
    }
}
