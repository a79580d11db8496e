//! Named example shifts and codes with their known verdicts.

use std::sync::Arc;

use crate::code::{parse_code, SlidingBlockCode};
use crate::error::{Error, Result};
use crate::shift::Shift;

/// Verdicts a built-in code is known to have. `None` means not asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Expected {
    pub injective: Option<bool>,
    pub surjective: Option<bool>,
    pub pre_injective: Option<bool>,
}

/// A named shift, optionally with an endomorphism of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Builtin {
    pub name: &'static str,
    pub summary: &'static str,
    pub shift_file: &'static str,
    pub shift_text: &'static str,
    pub code_file: Option<&'static str>,
    pub code_text: Option<&'static str>,
    pub expected: Expected,
}

impl Builtin {
    pub fn shift(&self) -> Result<Arc<Shift>> {
        Shift::parse(self.shift_text)
    }

    pub fn code(&self) -> Result<Option<SlidingBlockCode>> {
        match self.code_text {
            None => Ok(None),
            Some(text) => parse_code(text, &self.shift()?).map(Some),
        }
    }
}

const WEISS: &str = include_str!("../../data/weiss.sft");
const FULL2: &str = include_str!("../../data/full2.sft");
const TWO_POINT: &str = include_str!("../../data/two_point.sft");
const GOLDEN_MEAN: &str = include_str!("../../data/golden_mean.sft");
const GOLDEN_PAIR: &str = include_str!("../../data/golden_pair.sft");
const THREE_CLASSES: &str = include_str!("../../data/three_classes.sft");

fn verdicts(injective: bool, surjective: bool, pre_injective: bool) -> Expected {
    Expected {
        injective: Some(injective),
        surjective: Some(surjective),
        pre_injective: Some(pre_injective),
    }
}

fn shift_only(
    name: &'static str,
    summary: &'static str,
    shift_file: &'static str,
    shift_text: &'static str,
) -> Builtin {
    Builtin {
        name,
        summary,
        shift_file,
        shift_text,
        code_file: None,
        code_text: None,
        expected: Expected::default(),
    }
}

/// Every built-in, in listing order.
pub fn builtins() -> Vec<Builtin> {
    vec![
        shift_only(
            "weiss",
            "reducible shift: 0s, then 1s, then 2s",
            "weiss.sft",
            WEISS,
        ),
        Builtin {
            name: "weiss_tau",
            summary: "injective but not surjective on the Weiss shift",
            shift_file: "weiss.sft",
            shift_text: WEISS,
            code_file: Some("weiss_tau.sbc"),
            code_text: Some(include_str!("../../data/weiss_tau.sbc")),
            expected: verdicts(true, false, true),
        },
        Builtin {
            name: "moore_fail",
            summary: "surjective but not pre-injective on the Weiss shift",
            shift_file: "weiss.sft",
            shift_text: WEISS,
            code_file: Some("moore_fail.sbc"),
            code_text: Some(include_str!("../../data/moore_fail.sbc")),
            expected: verdicts(false, true, false),
        },
        Builtin {
            name: "xor",
            summary: "surjective and pre-injective but not injective on the full 2-shift",
            shift_file: "full2.sft",
            shift_text: FULL2,
            code_file: Some("xor.sbc"),
            code_text: Some(include_str!("../../data/xor.sbc")),
            expected: verdicts(false, true, true),
        },
        shift_only("two_point", "two fixed points", "two_point.sft", TWO_POINT),
        Builtin {
            name: "collapse",
            summary: "pre-injective but not surjective on two fixed points",
            shift_file: "two_point.sft",
            shift_text: TWO_POINT,
            code_file: Some("collapse.sbc"),
            code_text: Some(include_str!("../../data/collapse.sbc")),
            expected: verdicts(false, false, true),
        },
        shift_only(
            "golden_mean",
            "no two consecutive ones",
            "golden_mean.sft",
            GOLDEN_MEAN,
        ),
        shift_only("full2", "full shift on two symbols", "full2.sft", FULL2),
        shift_only(
            "golden_pair",
            "disjoint union of two golden mean shifts",
            "golden_pair.sft",
            GOLDEN_PAIR,
        ),
        shift_only(
            "three_classes",
            "period 3, mixing on each class under the third power",
            "three_classes.sft",
            THREE_CLASSES,
        ),
    ]
}

pub fn builtin(name: &str) -> Result<Builtin> {
    builtins()
        .into_iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::goe_verdict;

    #[test]
    fn every_builtin_parses_and_validates() {
        for b in builtins() {
            let s = b.shift().unwrap();
            assert!(!s.is_empty(), "{}", b.name);
            if let Some(c) = b.code().unwrap() {
                c.validate().unwrap();
            }
        }
    }

    #[test]
    fn builtin_codes_have_their_expected_verdicts() {
        for b in builtins() {
            let Some(code) = b.code().unwrap() else {
                continue;
            };
            let r = goe_verdict(&code).unwrap();
            let e = b.expected;
            assert_eq!(e.injective, Some(r.injective), "{}", b.name);
            assert_eq!(e.surjective, Some(r.surjective), "{}", b.name);
            assert_eq!(e.pre_injective, Some(r.pre_injective), "{}", b.name);
            assert!(r.violations.is_empty(), "{}", b.name);
        }
    }

    #[test]
    fn file_codes_match_the_rule_functions() {
        use crate::code::fixtures;
        assert_eq!(
            builtin("weiss_tau").unwrap().code().unwrap().unwrap(),
            fixtures::weiss_tau()
        );
        assert_eq!(
            builtin("moore_fail").unwrap().code().unwrap().unwrap(),
            fixtures::moore_fail()
        );
        assert_eq!(
            builtin("xor").unwrap().code().unwrap().unwrap(),
            fixtures::xor()
        );
        assert_eq!(
            builtin("collapse").unwrap().code().unwrap().unwrap(),
            fixtures::collapse()
        );
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert_eq!(builtin("nope"), Err(Error::UnknownExample("nope".into())));
    }
}
