//! A small Mamdani fuzzy-inference engine.
//!
//! Variables are partitioned into triangular fuzzy sets, rules are written in
//! a line-oriented `IF ... THEN ...` language (see [`rules`]), and crisp
//! outputs come from centroid defuzzification. The engine knows nothing
//! about summarization; [`sentence_importance_system`] wires it to the eight
//! sentence features.

mod membership;
pub mod rules;
mod system;
mod variable;

use thiserror::Error;

pub use membership::TriangularMF;
pub use rules::{parse_rules, Clause, FuzzyRule, Location, RuleBase, RuleParseError};
pub use system::{centroid, defuzzify_centroid, FuzzySystem, OutputCurve, DEFAULT_RESOLUTION, MIN_RESOLUTION};
pub use variable::{LinguisticVariable, Term, UNIVERSE_SLACK};

use crate::features::FEATURE_NAMES;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("invalid triangular membership function ({a}, {b}, {c}): need a <= b <= c and a < c")]
    InvalidMembership { a: f64, b: f64, c: f64 },
    #[error("invalid variable `{variable}`: {reason}")]
    InvalidVariable { variable: String, reason: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("value {value} is outside the universe of `{variable}`")]
    OutOfUniverse { variable: String, value: f64 },
    #[error("no value given for input `{0}`")]
    MissingInput(String),
    #[error("defuzzifier resolution {0} is below the minimum of 101")]
    Resolution(usize),
    #[error(transparent)]
    Rules(#[from] RuleParseError),
}

/// Labels of the five input terms, lowest first.
pub const INPUT_TERMS: [&str; 5] = ["VL", "L", "M", "H", "VH"];
/// Name of the output variable of the sentence-importance system.
pub const OUTPUT_VARIABLE: &str = "importance";
/// The shipped rule base, also found at `rules/default.rules`.
pub const DEFAULT_RULES: &str = include_str!("../../../../rules/default.rules");

/// Alternative input names, matching the variable names used in the
/// classic sample rule (`NoWordInTitle is VH ...`).
const INPUT_ALIASES: [&[&str]; 8] = [
    &["f1", "NoWordInTitle", "TitleWord"],
    &["f2", "SentenceLength"],
    &["f3", "TermFreq", "TermWeight"],
    &["f4", "SentencePosition"],
    &["f5", "SentenceSimilarity"],
    &["f6", "NoProperNoun", "ProperNoun"],
    &["f7", "NoThematicWord", "ThematicWord"],
    &["f8", "NumericalData"],
];

/// One input variable per sentence feature, each split evenly into
/// VL / L / M / H / VH over `[0, 1]`.
pub fn feature_inputs<F: Scalar>() -> Vec<LinguisticVariable<F>> {
    FEATURE_NAMES
        .iter()
        .zip(INPUT_ALIASES)
        .map(|(name, aliases)| {
            LinguisticVariable::evenly_partitioned(*name, F::zero(), F::one(), &INPUT_TERMS)
                .expect("static partition")
                .with_aliases(aliases.iter().copied())
        })
        .collect()
}

/// `importance` over `[0, 1]` with Unimportant (0,0,.5), Average (0,.5,1)
/// and Important (.5,1,1).
pub fn importance_output<F: Scalar>() -> LinguisticVariable<F> {
    let half = F::lit(0.5);
    let (zero, one) = (F::zero(), F::one());
    let terms = vec![
        (
            "Unimportant".to_string(),
            TriangularMF::new(zero, zero, half).expect("static"),
        ),
        (
            "Average".to_string(),
            TriangularMF::new(zero, half, one).expect("static"),
        ),
        (
            "Important".to_string(),
            TriangularMF::new(half, one, one).expect("static"),
        ),
    ];
    LinguisticVariable::new(OUTPUT_VARIABLE, zero, one, terms)
        .expect("static output")
        .with_aliases(["Sentence"])
}

/// The sentence-importance system with the given rule text.
pub fn sentence_importance_system<F: Scalar>(rule_text: &str) -> Result<FuzzySystem<F>, FuzzyError> {
    FuzzySystem::from_rule_text(feature_inputs(), importance_output(), rule_text)
}

/// The sentence-importance system with the shipped rules.
pub fn default_system<F: Scalar>() -> FuzzySystem<F> {
    sentence_importance_system(DEFAULT_RULES).expect("shipped rules parse")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE_RULE: &str = "IF (NoWordInTitle is VH) and (SentenceLength is H) and (TermFreq is VH) \
        and (SentencePosition is H) and (SentenceSimilarity is VH) and (NoProperNoun is H) \
        and (NoThematicWord is VH) and (NumericalData is H) THEN (Sentence is important)";

    fn parse(text: &str) -> Result<RuleBase<f64>, RuleParseError> {
        parse_rules(text, &feature_inputs(), &importance_output())
    }

    #[test]
    fn fuzzify_default_partition() {
        let sys = default_system::<f64>();
        let at = |x: f64| -> Vec<f64> { sys.fuzzify("f1_title", x).unwrap().into_values().collect() };
        // BTreeMap order: H, L, M, VH, VL
        assert_eq!(at(0.5), [0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(at(0.625), [0.5, 0.0, 0.5, 0.0, 0.0]);
        assert_eq!(at(0.0), [0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(sys.fuzzify("f9", 0.1), Err(FuzzyError::UnknownVariable(_))));
        assert!(matches!(sys.fuzzify("f2", 1.5), Err(FuzzyError::OutOfUniverse { .. })));
    }

    #[test]
    fn parses_simple_rule() {
        let rb = parse("IF f1 is VH AND f4 is H THEN importance is Important").unwrap();
        assert_eq!(rb.len(), 1);
        let r = &rb.rules[0];
        assert_eq!(r.antecedents.len(), 2);
        assert_eq!(
            (r.antecedents[0].variable.as_str(), r.antecedents[0].term.as_str()),
            ("f1_title", "VH")
        );
        assert_eq!(
            (r.antecedents[1].variable.as_str(), r.antecedents[1].term.as_str()),
            ("f4_position", "H")
        );
        assert_eq!(r.consequent, "Important");
        assert_eq!(r.weight, 1.0);
    }

    #[test]
    fn parses_sample_rule() {
        let rb = parse(SAMPLE_RULE).unwrap();
        let r = &rb.rules[0];
        assert_eq!(r.antecedents.len(), 8);
        let terms: Vec<&str> = r.antecedents.iter().map(|c| c.term.as_str()).collect();
        assert_eq!(terms, ["VH", "H", "VH", "H", "VH", "H", "VH", "H"]);
        assert_eq!(r.consequent, "Important");
    }

    #[test]
    fn reports_errors_with_locations() {
        assert_eq!(
            parse("IF f1 is XXL THEN importance is Important"),
            Err(RuleParseError::UnknownTerm {
                at: Location { line: 1, column: 10 },
                variable: "f1_title".into(),
                term: "XXL".into()
            })
        );
        assert!(matches!(
            parse("# c\nIF f9 is H THEN importance is Important"),
            Err(RuleParseError::UnknownVariable {
                at: Location { line: 2, column: 4 },
                ..
            })
        ));
        assert!(matches!(
            parse("IF f1 is H THEN speed is Important"),
            Err(RuleParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse("IF f1 is H importance is Important"),
            Err(RuleParseError::Syntax {
                at: Location { line: 1, column: 12 },
                ..
            })
        ));
        assert!(matches!(
            parse("IF f1 is H THEN importance is Important WITH 1.5"),
            Err(RuleParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("IF f1 is H AND f1 is M THEN importance is Average"),
            Err(RuleParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("IF f1 is H THEN importance is Important;"),
            Err(RuleParseError::Syntax { .. })
        ));
        assert_eq!(parse("# only comments\n\n"), Err(RuleParseError::Empty));
    }

    #[test]
    fn conflicting_rules_rejected() {
        let text = "IF f1 is H AND f2 is L THEN importance is Important\n\
                    IF f2 is L AND f1 is H THEN importance is Average\n";
        assert_eq!(
            parse(text),
            Err(RuleParseError::ConflictingRules {
                first: Location { line: 1, column: 1 },
                second: Location { line: 2, column: 1 }
            })
        );
        // a repeated rule with the same conclusion is fine
        assert!(
            parse("IF f1 is H THEN importance is Important\nif F1_TITLE IS h then IMPORTANCE is important").is_ok()
        );
    }

    #[test]
    fn weights_and_keywords_case_insensitive() {
        let rb = parse("if f3 is m then importance is average with 0.25  # note\n").unwrap();
        assert_eq!(rb.rules[0].weight, 0.25);
        assert_eq!(rb.rules[0].consequent, "Average");
    }

    #[test]
    fn printing_round_trips() {
        let rb = parse(DEFAULT_RULES).unwrap();
        let printed = rb.to_dsl(OUTPUT_VARIABLE);
        assert_eq!(parse(&printed).unwrap(), rb);
        let sample = parse(SAMPLE_RULE).unwrap();
        assert_eq!(parse(&sample.to_dsl(OUTPUT_VARIABLE)).unwrap(), sample);
    }

    fn single_rule_system(text: &str) -> FuzzySystem<f64> {
        sentence_importance_system(text).unwrap()
    }

    #[test]
    fn single_rule_clips_consequent() {
        let sys = single_rule_system("IF f1 is H THEN importance is Important");
        // H(0.7) = (0.7 - 0.5) / 0.25 = 0.8; pick x with H degree 0.7 instead
        let x = 0.5 + 0.7 * 0.25;
        let curve = sys.infer(&[x, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((curve.activation("Important").unwrap() - 0.7).abs() < 1e-12);
        let important = TriangularMF::<f64>::new(0.5, 1.0, 1.0).unwrap();
        for i in 0..=10 {
            let y = i as f64 / 10.0;
            assert!((curve.membership(y) - important.eval(y).min(0.7)).abs() < 1e-12);
        }
    }

    #[test]
    fn no_rule_fires_gives_average() {
        let sys = single_rule_system("IF f1 is VH THEN importance is Important");
        let curve = sys.infer(&[0.0; 8]).unwrap();
        assert!(curve.activations().iter().all(|a| *a == 0.0));
        assert_eq!(defuzzify_centroid(&curve, 1001), 0.5);
        assert_eq!(sys.evaluate(&[0.0; 8]).unwrap(), 0.5);
    }

    #[test]
    fn two_rule_micro_example() {
        // R1: f1 is H -> Important, R2: f2 is L WITH 0.5 -> Unimportant
        let sys = single_rule_system(
            "IF f1 is H THEN importance is Important\nIF f2 is L THEN importance is Unimportant WITH 0.5",
        );
        // f1 = 0.6 -> H = 0.4; f2 = 0.2 -> L = 0.8, weighted 0.4
        let curve = sys.infer(&[0.6, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let got: Vec<f64> = curve.sample(11).into_iter().map(|(_, m)| m).collect();
        // hand evaluation: Unimportant (0,0,.5) clipped at .4, Important (.5,1,1) clipped at .4
        let expected = [0.4, 0.4, 0.4, 0.4, 0.2, 0.0, 0.2, 0.4, 0.4, 0.4, 0.4];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-12, "{got:?}");
        }
    }

    #[test]
    fn missing_inputs() {
        let sys = default_system::<f64>();
        assert!(matches!(sys.infer(&[0.5; 7]), Err(FuzzyError::MissingInput(n)) if n == "f8_numeric"));
        let mut named = std::collections::BTreeMap::new();
        for name in &FEATURE_NAMES[..7] {
            named.insert(name.to_string(), 0.5);
        }
        assert!(matches!(sys.infer_named(&named), Err(FuzzyError::MissingInput(_))));
        named.insert("NumericalData".into(), 0.5);
        assert!(sys.infer_named(&named).is_ok());
    }

    #[test]
    fn centroid_values() {
        let important = TriangularMF::<f64>::new(0.5, 1.0, 1.0).unwrap();
        let c = centroid(|y| important.eval(y), 0.0, 1.0, 10001).unwrap();
        assert!((c - (0.5 + 1.0 + 1.0) / 3.0).abs() < 1e-3);
        let sym = TriangularMF::<f64>::new(0.2, 0.5, 0.8).unwrap();
        assert!((centroid(|y| sym.eval(y), 0.0, 1.0, 1001).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(centroid(|_| 0.0, 0.0, 1.0, 1001), None);
    }

    #[test]
    fn resolution_floor() {
        assert!(matches!(
            default_system::<f64>().with_resolution(100),
            Err(FuzzyError::Resolution(100))
        ));
        assert!(default_system::<f64>().with_resolution(101).is_ok());
    }

    #[test]
    fn default_rule_extremes() {
        let sys = default_system::<f64>();
        assert!(sys.evaluate(&[1.0; 8]).unwrap() >= 0.75);
        assert!(sys.evaluate(&[0.0; 8]).unwrap() <= 0.25);
        let mid = sys.evaluate(&[0.5; 8]).unwrap();
        assert!((0.4..=0.6).contains(&mid));
        let single = default_system::<f32>();
        assert!(single.evaluate(&[1.0; 8]).unwrap() >= 0.75);
    }
}
