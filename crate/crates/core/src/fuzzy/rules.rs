//! Rule types and the rule-file language.
//!
//! ```text
//! rulefile   := { rule | comment | blank } ;
//! rule       := "IF" clause { "AND" clause } "THEN" var "is" label [ "WITH" number ] ;
//! clause     := var "is" label ;
//! var, label := identifier ([A-Za-z_][A-Za-z0-9_]*) ;
//! number     := decimal in (0,1] ;
//! ```
//!
//! Keywords, variable names and labels are matched case-insensitively and
//! `#` starts a comment running to the end of the line. A clause may be
//! wrapped in parentheses, `IF (f1_title is VH) and (...)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::LinguisticVariable;
use crate::scalar::Scalar;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleParseError {
    #[error("{at}: syntax error: {message}")]
    Syntax { at: Location, message: String },
    #[error("{at}: unknown variable `{name}`")]
    UnknownVariable { at: Location, name: String },
    #[error("{at}: variable `{variable}` has no term `{term}`")]
    UnknownTerm {
        at: Location,
        variable: String,
        term: String,
    },
    #[error("{second}: rule conflicts with the rule at {first} (same conditions, different conclusion)")]
    ConflictingRules { first: Location, second: Location },
    #[error("rule file contains no rules")]
    Empty,
}

/// `variable is term`, resolved against the declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub variable: String,
    pub term: String,
    #[serde(skip)]
    pub(crate) variable_index: usize,
    #[serde(skip)]
    pub(crate) term_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyRule<F> {
    /// Conditions in declaration order of their variables; unmentioned
    /// inputs are unconstrained.
    pub antecedents: Vec<Clause>,
    /// Term of the output variable.
    pub consequent: String,
    #[serde(skip)]
    pub(crate) consequent_index: usize,
    /// In `(0, 1]`.
    pub weight: F,
    #[serde(skip)]
    pub(crate) at: Location,
}

impl<F: Scalar> FuzzyRule<F> {
    pub fn location(&self) -> Location {
        self.at
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleBase<F> {
    pub rules: Vec<FuzzyRule<F>>,
    pub source_text: String,
}

impl<F: Scalar> PartialEq for RuleBase<F> {
    /// Structural equality: same conditions, conclusions and weights in the same order.
    fn eq(&self, other: &Self) -> bool {
        self.rules.len() == other.rules.len()
            && self
                .rules
                .iter()
                .zip(&other.rules)
                .all(|(a, b)| a.antecedents == b.antecedents && a.consequent == b.consequent && a.weight == b.weight)
    }
}

impl<F: Scalar> RuleBase<F> {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Renders the rules in the rule-file language, one per line, using
    /// canonical variable names.
    pub fn to_dsl(&self, output: &str) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            out.push_str("IF ");
            let clauses: Vec<String> = rule
                .antecedents
                .iter()
                .map(|c| format!("{} is {}", c.variable, c.term))
                .collect();
            out.push_str(&clauses.join(" AND "));
            out.push_str(&format!(" THEN {output} is {}", rule.consequent));
            if rule.weight != F::one() {
                out.push_str(&format!(" WITH {}", rule.weight));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Open,
    Close,
    End,
}

#[derive(Debug, Clone)]
struct Lexeme {
    tok: Tok,
    at: Location,
}

fn lex(text: &str) -> Result<Vec<Lexeme>, RuleParseError> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let at = Location {
                line: line_no + 1,
                column: i + 1,
            };
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c == '(' || c == ')' {
                out.push(Lexeme {
                    tok: if c == '(' { Tok::Open } else { Tok::Close },
                    at,
                });
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Lexeme {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    at,
                });
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                out.push(Lexeme {
                    tok: Tok::Number(chars[start..i].iter().collect()),
                    at,
                });
            } else {
                return Err(RuleParseError::Syntax {
                    at,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    let end = Location {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    out.push(Lexeme { tok: Tok::End, at: end });
    Ok(out)
}

struct Parser<'a, F> {
    lexemes: Vec<Lexeme>,
    pos: usize,
    inputs: &'a [LinguisticVariable<F>],
    output: &'a LinguisticVariable<F>,
}

impl<'a, F: Scalar> Parser<'a, F> {
    fn peek(&self) -> &Lexeme {
        &self.lexemes[self.pos]
    }

    fn next(&mut self) -> Lexeme {
        let l = self.lexemes[self.pos].clone();
        if self.pos + 1 < self.lexemes.len() {
            self.pos += 1;
        }
        l
    }

    fn syntax(at: Location, message: impl Into<String>) -> RuleParseError {
        RuleParseError::Syntax {
            at,
            message: message.into(),
        }
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s.eq_ignore_ascii_case(kw))
    }

    fn keyword(&mut self, kw: &str) -> Result<Location, RuleParseError> {
        let l = self.next();
        match &l.tok {
            Tok::Ident(s) if s.eq_ignore_ascii_case(kw) => Ok(l.at),
            other => Err(Self::syntax(
                l.at,
                format!("expected `{kw}`, found {}", Self::describe(other)),
            )),
        }
    }

    fn identifier(&mut self, what: &str) -> Result<(String, Location), RuleParseError> {
        let l = self.next();
        match l.tok {
            Tok::Ident(s) => Ok((s, l.at)),
            other => Err(Self::syntax(
                l.at,
                format!("expected {what}, found {}", Self::describe(&other)),
            )),
        }
    }

    fn clause(&mut self) -> Result<Clause, RuleParseError> {
        let parenthesized = matches!(self.peek().tok, Tok::Open);
        if parenthesized {
            self.next();
        }
        let (var, var_at) = self.identifier("a variable name")?;
        self.keyword("is")?;
        let (label, label_at) = self.identifier("a term label")?;
        if parenthesized {
            let l = self.next();
            if l.tok != Tok::Close {
                return Err(Self::syntax(
                    l.at,
                    format!("expected `)`, found {}", Self::describe(&l.tok)),
                ));
            }
        }
        let variable_index =
            self.inputs
                .iter()
                .position(|v| v.answers_to(&var))
                .ok_or(RuleParseError::UnknownVariable {
                    at: var_at,
                    name: var.clone(),
                })?;
        let variable = &self.inputs[variable_index];
        let term_index = variable.term_index(&label).ok_or_else(|| RuleParseError::UnknownTerm {
            at: label_at,
            variable: variable.name().to_string(),
            term: label.clone(),
        })?;
        Ok(Clause {
            variable: variable.name().to_string(),
            term: variable.terms()[term_index].label.clone(),
            variable_index,
            term_index,
        })
    }

    fn rule(&mut self) -> Result<FuzzyRule<F>, RuleParseError> {
        let at = self.keyword("IF")?;
        let mut antecedents = vec![self.clause()?];
        while self.at_keyword("AND") {
            self.next();
            antecedents.push(self.clause()?);
        }
        self.keyword("THEN")?;

        let parenthesized = matches!(self.peek().tok, Tok::Open);
        if parenthesized {
            self.next();
        }
        let (var, var_at) = self.identifier("the output variable")?;
        if !self.output.answers_to(&var) {
            return Err(RuleParseError::UnknownVariable { at: var_at, name: var });
        }
        self.keyword("is")?;
        let (label, label_at) = self.identifier("a term label")?;
        if parenthesized {
            let l = self.next();
            if l.tok != Tok::Close {
                return Err(Self::syntax(
                    l.at,
                    format!("expected `)`, found {}", Self::describe(&l.tok)),
                ));
            }
        }
        let consequent_index = self
            .output
            .term_index(&label)
            .ok_or_else(|| RuleParseError::UnknownTerm {
                at: label_at,
                variable: self.output.name().to_string(),
                term: label.clone(),
            })?;

        let mut weight = F::one();
        if self.at_keyword("WITH") {
            self.next();
            let l = self.next();
            let value = match &l.tok {
                Tok::Number(s) => s.parse::<f64>().ok(),
                _ => None,
            };
            match value {
                Some(v) if v > 0.0 && v <= 1.0 => weight = F::lit(v),
                _ => {
                    return Err(Self::syntax(
                        l.at,
                        format!("expected a weight in (0, 1], found {}", Self::describe(&l.tok)),
                    ))
                }
            }
        }

        for (i, c) in antecedents.iter().enumerate() {
            if antecedents[..i].iter().any(|p| p.variable_index == c.variable_index) {
                return Err(Self::syntax(
                    at,
                    format!("variable `{}` appears twice in one rule", c.variable),
                ));
            }
        }
        antecedents.sort_by_key(|c| c.variable_index);

        Ok(FuzzyRule {
            antecedents,
            consequent: self.output.terms()[consequent_index].label.clone(),
            consequent_index,
            weight,
            at,
        })
    }
}

/// Parses a rule file against declared input and output variables.
pub fn parse_rules<F: Scalar>(
    text: &str,
    inputs: &[LinguisticVariable<F>],
    output: &LinguisticVariable<F>,
) -> Result<RuleBase<F>, RuleParseError> {
    let mut parser = Parser {
        lexemes: lex(text)?,
        pos: 0,
        inputs,
        output,
    };
    let mut rules = Vec::new();
    while parser.peek().tok != Tok::End {
        rules.push(parser.rule()?);
    }
    if rules.is_empty() {
        return Err(RuleParseError::Empty);
    }

    let mut seen: BTreeMap<Vec<(usize, usize)>, &FuzzyRule<F>> = BTreeMap::new();
    for rule in &rules {
        let key: Vec<(usize, usize)> = rule
            .antecedents
            .iter()
            .map(|c| (c.variable_index, c.term_index))
            .collect();
        if let Some(prev) = seen.get(&key) {
            if prev.consequent_index != rule.consequent_index {
                return Err(RuleParseError::ConflictingRules {
                    first: prev.at,
                    second: rule.at,
                });
            }
        } else {
            seen.insert(key, rule);
        }
    }

    Ok(RuleBase {
        rules,
        source_text: text.to_string(),
    })
}
