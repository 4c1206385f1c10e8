//! Parameters given as arithmetic expressions in the problem size.
//!
//! Rules are evaluated with `n` (and, where available, `k` and `tau`) bound
//! as reals. Besides the expression language's own operators (`^` is
//! exponentiation) and `floor`/`ceil`/`round`/`min`/`max`, the functions
//! `ln`, `log2`, `sqrt` and `exp` are available.

use std::fmt;
use std::str::FromStr;

use evalexpr::{
    ContextWithMutableFunctions, ContextWithMutableVariables, DefaultNumericTypes, EvalexprError, Function,
    HashMapContext, Node, Value,
};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rule {
    source: String,
}

/// Values the rule may refer to.
#[derive(Clone, Copy, Debug, Default)]
pub struct RuleVars {
    pub n: f64,
    pub k: Option<f64>,
    pub tau: Option<f64>,
}

impl RuleVars {
    pub fn n(n: usize) -> Self {
        RuleVars {
            n: n as f64,
            ..Default::default()
        }
    }
}

fn unary(f: fn(f64) -> f64) -> Function<DefaultNumericTypes> {
    Function::new(move |arg: &Value<DefaultNumericTypes>| Ok(Value::from_float(f(arg.as_number()?))))
}

fn context(
    vars: &RuleVars,
) -> std::result::Result<HashMapContext<DefaultNumericTypes>, EvalexprError<DefaultNumericTypes>> {
    let mut ctx = HashMapContext::<DefaultNumericTypes>::new();
    ctx.set_value("n".into(), Value::from_float(vars.n))?;
    if let Some(k) = vars.k {
        ctx.set_value("k".into(), Value::from_float(k))?;
    }
    if let Some(tau) = vars.tau {
        ctx.set_value("tau".into(), Value::from_float(tau))?;
    }
    ctx.set_function("ln".into(), unary(f64::ln))?;
    ctx.set_function("log2".into(), unary(f64::log2))?;
    ctx.set_function("sqrt".into(), unary(f64::sqrt))?;
    ctx.set_function("exp".into(), unary(f64::exp))?;
    Ok(ctx)
}

impl Rule {
    pub fn new(source: impl Into<String>) -> Result<Self> {
        let source = source.into();
        let trimmed = source.trim();
        if trimmed.is_empty() {
            return Err(Error::config("rule", "empty expression"));
        }
        Self::parse_tree(trimmed)?;
        Ok(Rule {
            source: trimmed.to_string(),
        })
    }

    fn parse_tree(source: &str) -> Result<Node<DefaultNumericTypes>> {
        evalexpr::build_operator_tree::<DefaultNumericTypes>(source)
            .map_err(|e| Error::config("rule", format!("cannot parse {source:?}: {e}")))
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, vars: &RuleVars) -> Result<f64> {
        let tree = Self::parse_tree(&self.source)?;
        let ctx = context(vars).map_err(|e| Error::config("rule", e.to_string()))?;
        let v = tree
            .eval_number_with_context(&ctx)
            .map_err(|e| Error::config("rule", format!("cannot evaluate {:?}: {e}", self.source)))?;
        if !v.is_finite() {
            return Err(Error::config(
                "rule",
                format!("{:?} is not finite at n = {}", self.source, vars.n),
            ));
        }
        Ok(v)
    }

    /// Evaluates and rounds down to a non-negative integer.
    pub fn eval_floor(&self, vars: &RuleVars) -> Result<u64> {
        let v = self.eval(vars)?;
        if v < 0.0 {
            return Err(Error::config(
                "rule",
                format!("{:?} is negative at n = {}", self.source, vars.n),
            ));
        }
        Ok(v.floor() as u64)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::new(s)
    }
}

impl TryFrom<String> for Rule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Rule::new(s)
    }
}

impl From<Rule> for String {
    fn from(r: Rule) -> String {
        r.source
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_default_rules() {
        let k = Rule::new("floor(n/5)").unwrap();
        assert_eq!(k.eval_floor(&RuleVars::n(60)).unwrap(), 12);
        assert_eq!(k.eval_floor(&RuleVars::n(32)).unwrap(), 6);
        let tau = Rule::new("n^1.3").unwrap();
        assert_eq!(tau.eval_floor(&RuleVars::n(60)).unwrap(), 204);
        let budget = Rule::new("40*n^2*ln(n)").unwrap();
        let expected = 40.0 * 64.0f64.powi(2) * 64f64.ln();
        assert!((budget.eval(&RuleVars::n(64)).unwrap() - expected).abs() < 1e-6);
    }

    #[test]
    fn sees_k_and_tau() {
        let r = Rule::new("40*(n^3.5/k^2 + tau*sqrt(n) + n^1.5*ln(n))").unwrap();
        let vars = RuleVars {
            n: 30.0,
            k: Some(6.0),
            tau: Some(83.0),
        };
        let n: f64 = 30.0;
        let expected = 40.0 * (n.powf(3.5) / 36.0 + 83.0 * n.sqrt() + n.powf(1.5) * n.ln());
        assert!((r.eval(&vars).unwrap() - expected).abs() < 1e-6);
        assert!(r.eval(&RuleVars::n(30)).is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(Rule::new("").is_err());
        assert!(Rule::new("(n").is_err());
        assert!(Rule::new("0 - n").unwrap().eval_floor(&RuleVars::n(3)).is_err());
        assert!(Rule::new("ln(0)").unwrap().eval(&RuleVars::n(3)).is_err());
    }
}
