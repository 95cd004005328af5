use std::collections::BTreeMap;

use super::rules::{parse_rules, RuleBase};
use super::{FuzzyError, LinguisticVariable};
use crate::scalar::Scalar;

pub const DEFAULT_RESOLUTION: usize = 1001;
pub const MIN_RESOLUTION: usize = 101;

/// A Mamdani inference system: min for AND and implication, max for
/// aggregation, centroid defuzzification.
#[derive(Debug, Clone)]
pub struct FuzzySystem<F> {
    inputs: Vec<LinguisticVariable<F>>,
    output: LinguisticVariable<F>,
    rules: RuleBase<F>,
    resolution: usize,
}

/// The aggregated output fuzzy set produced by [`FuzzySystem::infer`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutputCurve<'a, F> {
    variable: &'a LinguisticVariable<F>,
    /// Clipping level of each output term.
    activations: Vec<F>,
}

impl<'a, F: Scalar> OutputCurve<'a, F> {
    pub fn new(variable: &'a LinguisticVariable<F>, activations: Vec<F>) -> Self {
        assert_eq!(variable.terms().len(), activations.len());
        OutputCurve { variable, activations }
    }

    pub fn activations(&self) -> &[F] {
        &self.activations
    }

    pub fn activation(&self, label: &str) -> Option<F> {
        self.variable.term_index(label).map(|i| self.activations[i])
    }

    /// `max_t min(activation_t, mf_t(y))`
    pub fn membership(&self, y: F) -> F {
        self.variable
            .terms()
            .iter()
            .zip(&self.activations)
            .map(|(t, a)| a.min(t.mf.eval(y)))
            .fold(F::zero(), F::max)
    }

    pub fn universe(&self) -> (F, F) {
        self.variable.universe()
    }

    /// Membership at `resolution` evenly spaced points across the universe.
    pub fn sample(&self, resolution: usize) -> Vec<(F, F)> {
        let (lo, hi) = self.universe();
        grid(lo, hi, resolution).map(|y| (y, self.membership(y))).collect()
    }
}

fn grid<F: Scalar>(lo: F, hi: F, resolution: usize) -> impl Iterator<Item = F> {
    let last = F::from_count(resolution.max(2) - 1);
    (0..resolution).map(move |i| lo + (hi - lo) * F::from_count(i) / last)
}

/// Discrete centroid `Σ y μ(y) / Σ μ(y)` over `resolution` evenly spaced
/// points of `[lo, hi]`; `None` when the curve has no mass.
pub fn centroid<F: Scalar>(curve: impl Fn(F) -> F, lo: F, hi: F, resolution: usize) -> Option<F> {
    let (num, den) = grid(lo, hi, resolution).fold((F::zero(), F::zero()), |(n, d), y| {
        let m = curve(y);
        (n + y * m, d + m)
    });
    (den > F::zero()).then(|| num / den)
}

/// Centroid of an aggregated output; the midpoint of the universe when no
/// rule fired.
pub fn defuzzify_centroid<F: Scalar>(curve: &OutputCurve<'_, F>, resolution: usize) -> F {
    let (lo, hi) = curve.universe();
    centroid(|y| curve.membership(y), lo, hi, resolution).unwrap_or_else(|| (lo + hi) / F::lit(2.0))
}

impl<F: Scalar> FuzzySystem<F> {
    pub fn new(
        inputs: Vec<LinguisticVariable<F>>,
        output: LinguisticVariable<F>,
        rules: RuleBase<F>,
    ) -> Result<Self, FuzzyError> {
        for (i, v) in inputs.iter().enumerate() {
            if inputs[..i].iter().any(|p| p.answers_to(v.name())) {
                return Err(FuzzyError::InvalidVariable {
                    variable: v.name().to_string(),
                    reason: "declared twice".into(),
                });
            }
        }
        for rule in &rules.rules {
            for c in &rule.antecedents {
                let ok = inputs
                    .get(c.variable_index)
                    .is_some_and(|v| v.name() == c.variable && v.terms().get(c.term_index).is_some());
                if !ok {
                    return Err(FuzzyError::UnknownVariable(c.variable.clone()));
                }
            }
            if output.terms().get(rule.consequent_index).is_none() {
                return Err(FuzzyError::UnknownVariable(output.name().to_string()));
            }
        }
        Ok(FuzzySystem {
            inputs,
            output,
            rules,
            resolution: DEFAULT_RESOLUTION,
        })
    }

    /// Declares the variables and parses `rule_text` against them.
    pub fn from_rule_text(
        inputs: Vec<LinguisticVariable<F>>,
        output: LinguisticVariable<F>,
        rule_text: &str,
    ) -> Result<Self, FuzzyError> {
        let rules = parse_rules(rule_text, &inputs, &output)?;
        Self::new(inputs, output, rules)
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self, FuzzyError> {
        if resolution < MIN_RESOLUTION {
            return Err(FuzzyError::Resolution(resolution));
        }
        self.resolution = resolution;
        Ok(self)
    }

    pub fn inputs(&self) -> &[LinguisticVariable<F>] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable<F> {
        &self.output
    }

    pub fn rules(&self) -> &RuleBase<F> {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    fn input(&self, name: &str) -> Result<&LinguisticVariable<F>, FuzzyError> {
        self.inputs
            .iter()
            .find(|v| v.answers_to(name))
            .ok_or_else(|| FuzzyError::UnknownVariable(name.to_string()))
    }

    /// Membership degree of `x` in each term of input `name`, keyed by label.
    pub fn fuzzify(&self, name: &str, x: F) -> Result<BTreeMap<String, F>, FuzzyError> {
        let var = self.input(name)?;
        let degrees = var.fuzzify(x)?;
        Ok(var
            .terms()
            .iter()
            .zip(degrees)
            .map(|(t, d)| (t.label.clone(), d))
            .collect())
    }

    /// Runs the rule base on crisp inputs given in declaration order.
    pub fn infer(&self, inputs: &[F]) -> Result<OutputCurve<'_, F>, FuzzyError> {
        if inputs.len() != self.inputs.len() {
            let missing = self.inputs.get(inputs.len()).map_or("<extra input>", |v| v.name());
            return Err(FuzzyError::MissingInput(missing.to_string()));
        }
        let degrees = self
            .inputs
            .iter()
            .zip(inputs)
            .map(|(v, x)| v.fuzzify(*x))
            .collect::<Result<Vec<_>, _>>()?;
        let mut activations = vec![F::zero(); self.output.terms().len()];
        for rule in &self.rules.rules {
            let strength = rule
                .antecedents
                .iter()
                .map(|c| degrees[c.variable_index][c.term_index])
                .fold(F::one(), F::min)
                * rule.weight;
            let slot = &mut activations[rule.consequent_index];
            *slot = slot.max(strength);
        }
        Ok(OutputCurve::new(&self.output, activations))
    }

    /// Like [`infer`](Self::infer) with inputs looked up by name (or alias).
    pub fn infer_named(&self, inputs: &BTreeMap<String, F>) -> Result<OutputCurve<'_, F>, FuzzyError> {
        let ordered = self
            .inputs
            .iter()
            .map(|v| {
                inputs
                    .iter()
                    .find(|(k, _)| v.answers_to(k))
                    .map(|(_, x)| *x)
                    .ok_or_else(|| FuzzyError::MissingInput(v.name().to_string()))
            })
            .collect::<Result<Vec<F>, _>>()?;
        self.infer(&ordered)
    }

    /// Fuzzify, infer and defuzzify.
    pub fn evaluate(&self, inputs: &[F]) -> Result<F, FuzzyError> {
        let curve = self.infer(inputs)?;
        Ok(defuzzify_centroid(&curve, self.resolution))
    }
}
