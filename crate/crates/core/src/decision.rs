use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pc::PcCombiner;
use crate::scalar::Scalar;

/// A multiple testing procedure for partial conjunction nulls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    AdaFilterBonferroni,
    AdaFilterBh,
    /// Bonferroni correction applied to per-hypothesis PC p-values.
    DirectBonferroni(PcCombiner),
    /// Benjamini-Hochberg step-up applied to per-hypothesis PC p-values.
    DirectBh(PcCombiner),
}

impl Method {
    /// Short label, e.g. `adafilter-bh` or `direct-bonferroni-fisher`.
    pub fn label(&self) -> String {
        match self {
            Method::AdaFilterBonferroni => "adafilter-bonferroni".into(),
            Method::AdaFilterBh => "adafilter-bh".into(),
            Method::DirectBonferroni(c) => format!("direct-bonferroni-{c}"),
            Method::DirectBh(c) => format!("direct-bh-{c}"),
        }
    }

    /// Parses a method name plus an optional combiner (required for direct methods).
    pub fn parse(name: &str, combiner: Option<PcCombiner>) -> std::result::Result<Self, String> {
        let name = name.to_ascii_lowercase();
        if let Ok(m) = Method::from_str(&name) {
            return Ok(m);
        }
        let combiner = combiner.ok_or_else(|| format!("method '{name}' needs a combiner"))?;
        match name.as_str() {
            "direct-bonferroni" => Ok(Method::DirectBonferroni(combiner)),
            "direct-bh" => Ok(Method::DirectBh(combiner)),
            _ => Err(format!("unknown method '{name}'")),
        }
    }

    /// True for procedures that target the per-family error rate.
    pub fn targets_pfer(&self) -> bool {
        matches!(self, Method::AdaFilterBonferroni | Method::DirectBonferroni(_))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        match s.as_str() {
            "adafilter-bonferroni" => return Ok(Method::AdaFilterBonferroni),
            "adafilter-bh" => return Ok(Method::AdaFilterBh),
            _ => {}
        }
        for (prefix, direct) in [
            (
                "direct-bonferroni-",
                Method::DirectBonferroni as fn(PcCombiner) -> Method,
            ),
            ("direct-bh-", Method::DirectBh),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return rest.parse().map(direct);
            }
        }
        Err(format!("unknown method '{s}'"))
    }
}

/// Outcome of running a procedure on one p-value matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionResult<T> {
    pub method: Method,
    pub alpha: T,
    /// Selection threshold: hypothesis `j` is rejected iff its statistic is `<= gamma0`.
    pub gamma0: T,
    /// Size of the multiplicity set the threshold was adjusted for
    /// (Bonferroni-type procedures only).
    pub filtered_count: Option<usize>,
    pub rejected: Vec<bool>,
    /// Derived adjusted values; `None` entries for untestable hypotheses.
    pub adjusted: Option<Vec<Option<T>>>,
    pub untestable: Vec<bool>,
}

impl<T: Scalar> DecisionResult<T> {
    pub fn rejection_count(&self) -> usize {
        self.rejected.iter().filter(|&&r| r).count()
    }

    pub fn rejected_indices(&self) -> Vec<usize> {
        self.rejected
            .iter()
            .enumerate()
            .filter_map(|(j, &r)| r.then_some(j))
            .collect()
    }
}

pub(crate) fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidAlpha(alpha.to_f64_lossy()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        let all = [
            Method::AdaFilterBonferroni,
            Method::AdaFilterBh,
            Method::DirectBonferroni(PcCombiner::Fisher),
            Method::DirectBh(PcCombiner::Simes),
        ];
        for m in all {
            assert_eq!(m.label().parse::<Method>().unwrap(), m);
        }
        assert_eq!(
            Method::parse("direct-bh", Some(PcCombiner::Bonferroni)).unwrap(),
            Method::DirectBh(PcCombiner::Bonferroni)
        );
        assert!(Method::parse("direct-bh", None).is_err());
        assert!(Method::parse("holm", Some(PcCombiner::Simes)).is_err());
    }
}
