//! Exact decisions of injectivity, surjectivity and pre-injectivity, and the
//! Garden of Eden consistency checks built on them.

mod automata;
mod pair;

pub use automata::{determinize, subshift_contains, Containment, SubsetAutomaton};
pub use pair::{
    is_injective, is_injective_on, is_pre_injective, is_pre_injective_on, PairEdge, PairGraph,
    PairVerdict,
};

use std::fmt;

use crate::analysis::{self, ENTROPY_TOLERANCE};
use crate::code::{image_sofic, SlidingBlockCode, SoficPresentation};
use crate::error::Result;
use crate::shift::{EpConfig, Word};

/// Entropy of the shift against the entropy of the image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyCheck {
    pub source: f64,
    pub image: f64,
    /// Whether "equal entropy" agrees with the exact surjectivity verdict.
    pub agrees: bool,
}

/// Surjectivity verdict with its witness and the entropy cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct SurjectivityVerdict {
    pub holds: bool,
    /// Shortest, then lexicographically least, word of the shift that no
    /// point of the image contains.
    pub witness: Option<Word>,
    /// Present when the shift is irreducible.
    pub entropy: Option<EntropyCheck>,
}

/// Decides surjectivity by language inclusion of the shift in the image.
///
/// On irreducible shifts the verdict is cross-checked against entropy: a
/// proper subshift of an irreducible shift of finite type has strictly
/// smaller entropy.
pub fn is_surjective(code: &SlidingBlockCode) -> Result<SurjectivityVerdict> {
    let shift = code.shift();
    let source = SoficPresentation::from_shift(shift);
    let image = determinize(&image_sofic(code));
    let inclusion = subshift_contains(&source, &image);
    let entropy = if analysis::is_irreducible(shift.presentation())? {
        let h = analysis::entropy(shift.presentation())?;
        let hi = if image.graph().is_empty() {
            f64::NEG_INFINITY
        } else {
            analysis::entropy(image.graph())?
        };
        let equal = (h - hi).abs() <= ENTROPY_TOLERANCE;
        Some(EntropyCheck {
            source: h,
            image: hi,
            agrees: equal == inclusion.holds,
        })
    } else {
        None
    };
    Ok(SurjectivityVerdict {
        holds: inclusion.holds,
        witness: inclusion.counterexample,
        entropy,
    })
}

/// A contradiction between the verdicts and a theorem that applies to the
/// shift. Any occurrence indicates a bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    /// Irreducible shift with surjective ≠ pre-injective.
    GardenOfEden,
    /// Non-wandering shift with an injective, non-surjective code.
    Surjunctivity,
    /// Non-wandering shift with a surjective, non-pre-injective code.
    Moore,
    /// Injective but not pre-injective.
    InjectiveNotPreInjective,
    /// Entropy disagrees with the exact surjectivity verdict.
    EntropyOracle,
    /// A witness failed to re-verify by direct application.
    Witness,
    /// A surjective code on a non-wandering shift does not permute the
    /// cyclic classes.
    ComponentAction,
    /// A homoclinic witness pair spans two components.
    HomoclinicComponent,
    /// A power of the code is pre-injective while the code is not.
    PowerDescent,
}

impl Violation {
    pub const ALL: [Violation; 9] = [
        Violation::GardenOfEden,
        Violation::Surjunctivity,
        Violation::Moore,
        Violation::InjectiveNotPreInjective,
        Violation::EntropyOracle,
        Violation::Witness,
        Violation::ComponentAction,
        Violation::HomoclinicComponent,
        Violation::PowerDescent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Violation::GardenOfEden => "garden-of-eden",
            Violation::Surjunctivity => "surjunctivity",
            Violation::Moore => "moore",
            Violation::InjectiveNotPreInjective => "injective-not-pre-injective",
            Violation::EntropyOracle => "entropy-oracle",
            Violation::Witness => "witness",
            Violation::ComponentAction => "component-action",
            Violation::HomoclinicComponent => "homoclinic-component",
            Violation::PowerDescent => "power-descent",
        }
    }
}

impl std::str::FromStr for Violation {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Violation::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| crate::error::Error::parse(0, format!("unknown violation `{s}`")))
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All verdicts for one code, with witnesses and consistency checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionReport {
    pub injective: bool,
    pub surjective: bool,
    pub pre_injective: bool,
    pub non_injective_witness: Option<(EpConfig, EpConfig)>,
    pub non_surjective_witness: Option<Word>,
    pub non_pre_injective_witness: Option<(EpConfig, EpConfig)>,
    pub irreducible: bool,
    pub nonwandering: bool,
    pub entropy: Option<EntropyCheck>,
    pub violations: Vec<Violation>,
}

impl DecisionReport {
    /// Surjective implies pre-injective.
    pub fn moore_consistent(&self) -> bool {
        !self.surjective || self.pre_injective
    }

    /// Pre-injective implies surjective.
    pub fn myhill_consistent(&self) -> bool {
        !self.pre_injective || self.surjective
    }

    /// Injective implies surjective.
    pub fn surjunctive_consistent(&self) -> bool {
        !self.injective || self.surjective
    }
}

/// Checks that `(x, y)` are distinct points of the shift with equal image,
/// and homoclinic when asked.
pub fn verify_pair(code: &SlidingBlockCode, x: &EpConfig, y: &EpConfig, homoclinic: bool) -> bool {
    let spec = code.shift().spec();
    if !spec.admits(x) || !spec.admits(y) || x.same_point(y) {
        return false;
    }
    let same_image = match (code.apply_to_ep(x), code.apply_to_ep(y)) {
        (Ok(a), Ok(b)) => a.same_point(&b),
        _ => false,
    };
    same_image && (!homoclinic || x.differences(y).is_some_and(|d| !d.is_empty()))
}

/// Checks that `w` is a word of the shift that no word of the shift maps
/// onto.
pub fn verify_missing_word(code: &SlidingBlockCode, w: &Word) -> bool {
    let shift = code.shift();
    if !shift.language(w.len()).contains(w) {
        return false;
    }
    let n = w.len() + code.window_len() - 1;
    !shift
        .language(n)
        .iter()
        .any(|u| code.apply_word(u).as_deref() == Some(&w[..]))
}

/// Runs every decision and flags contradictions with the theorems that
/// apply to the shift.
pub fn goe_verdict(code: &SlidingBlockCode) -> Result<DecisionReport> {
    let p = code.shift().presentation();
    let irreducible = analysis::is_irreducible(p)?;
    let nonwandering = analysis::is_nonwandering(p);
    let surj = is_surjective(code)?;
    let pg = PairGraph::new(code);
    let inj = is_injective_on(&pg);
    let pre = is_pre_injective_on(&pg);

    let mut violations = Vec::new();
    if irreducible && surj.holds != pre.holds {
        violations.push(Violation::GardenOfEden);
    }
    if nonwandering && inj.holds && !surj.holds {
        violations.push(Violation::Surjunctivity);
    }
    if nonwandering && surj.holds && !pre.holds {
        violations.push(Violation::Moore);
    }
    if inj.holds && !pre.holds {
        violations.push(Violation::InjectiveNotPreInjective);
    }
    if surj.entropy.is_some_and(|e| !e.agrees) {
        violations.push(Violation::EntropyOracle);
    }
    let witnesses_ok = inj
        .witness
        .as_ref()
        .is_none_or(|(x, y)| verify_pair(code, x, y, false))
        && pre
            .witness
            .as_ref()
            .is_none_or(|(x, y)| verify_pair(code, x, y, true))
        && surj
            .witness
            .as_ref()
            .is_none_or(|w| verify_missing_word(code, w));
    if !witnesses_ok {
        violations.push(Violation::Witness);
    }

    Ok(DecisionReport {
        injective: inj.holds,
        surjective: surj.holds,
        pre_injective: pre.holds,
        non_injective_witness: inj.witness,
        non_surjective_witness: surj.witness,
        non_pre_injective_witness: pre.witness,
        irreducible,
        nonwandering,
        entropy: surj.entropy,
        violations,
    })
}
