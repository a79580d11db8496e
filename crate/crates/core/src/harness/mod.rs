//! Exhaustive enumeration of small codes and theorem-checking scans.

mod builtin;

pub use builtin::{builtin, builtins, Builtin, Expected};

use std::sync::Arc;

use rayon::prelude::*;

use crate::analysis::{self, spectral_decomposition, SpectralDecomposition};
use crate::code::{component_action, power, SlidingBlockCode, WindowTable};
use crate::decision::{
    goe_verdict, is_pre_injective, verify_missing_word, DecisionReport, Violation,
};
use crate::dynamics::component_of;
use crate::error::{Error, Result};
use crate::shift::Shift;

/// Default limit on the number of candidate rule tables in one scan.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Candidates are evaluated in chunks of this many indices; each chunk is
/// split across workers and merged in index order.
const CHUNK: u128 = 4096;

/// What to enumerate and how.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub shift: Arc<Shift>,
    pub max_memory: usize,
    pub max_anticipation: usize,
    /// Upper bound on `memory + anticipation + 1`, if any.
    pub max_window: Option<usize>,
    /// Skip rule tables that do not map the shift into itself.
    pub only_valid: bool,
    pub workers: usize,
    pub cap: u128,
    /// Checks that `τ^k` pre-injective implies `τ` pre-injective for
    /// `2 ≤ k ≤ power_check`.
    pub power_check: usize,
}

impl ScanConfig {
    pub fn new(shift: Arc<Shift>, max_memory: usize, max_anticipation: usize) -> Self {
        ScanConfig {
            shift,
            max_memory,
            max_anticipation,
            max_window: None,
            only_valid: true,
            workers: 1,
            cap: DEFAULT_CAP,
            power_check: 3,
        }
    }

    pub fn with_max_window(mut self, w: usize) -> Self {
        self.max_window = Some(w);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Debug, Clone)]
struct Shape {
    memory: usize,
    anticipation: usize,
    windows: Arc<WindowTable>,
    count: u128,
}

/// All rule tables of the configured window shapes, indexed in order.
///
/// Shapes come in order of memory, then anticipation. Within a shape, tables
/// are in lexicographic order with the first allowed window most
/// significant.
#[derive(Debug, Clone)]
pub struct CodeSpace {
    shift: Arc<Shift>,
    shapes: Vec<Shape>,
    total: u128,
}

impl CodeSpace {
    pub fn new(cfg: &ScanConfig) -> Result<Self> {
        let k = cfg.shift.alphabet().len() as u128;
        let mut shapes = Vec::new();
        let mut total: u128 = 0;
        let over = |cap| Error::CapExceeded {
            candidates: u128::MAX,
            cap,
        };
        for memory in 0..=cfg.max_memory {
            for anticipation in 0..=cfg.max_anticipation {
                let w = memory + anticipation + 1;
                if cfg.max_window.is_some_and(|mw| w > mw) {
                    continue;
                }
                let windows = Arc::new(WindowTable::new(&cfg.shift, w));
                let n = u32::try_from(windows.len()).map_err(|_| over(cfg.cap))?;
                let count = k.checked_pow(n).ok_or_else(|| over(cfg.cap))?;
                total = total.checked_add(count).ok_or_else(|| over(cfg.cap))?;
                shapes.push(Shape {
                    memory,
                    anticipation,
                    windows,
                    count,
                });
            }
        }
        if total > cfg.cap {
            return Err(Error::CapExceeded {
                candidates: total,
                cap: cfg.cap,
            });
        }
        Ok(CodeSpace {
            shift: cfg.shift.clone(),
            shapes,
            total,
        })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The rule table with the given index.
    pub fn code(&self, index: u128) -> SlidingBlockCode {
        let mut rest = index;
        let k = self.shift.alphabet().len() as u128;
        for shape in &self.shapes {
            if rest < shape.count {
                let n = shape.windows.len();
                let mut rule = vec![0; n];
                for slot in rule.iter_mut().rev() {
                    *slot = (rest % k) as usize;
                    rest /= k;
                }
                return SlidingBlockCode::from_table(
                    self.shift.clone(),
                    shape.memory,
                    shape.anticipation,
                    shape.windows.clone(),
                    rule,
                );
            }
            rest -= shape.count;
        }
        panic!("code index {index} out of range");
    }
}

/// Every candidate (or every valid endomorphism) with its index.
pub fn enumerate_codes(cfg: &ScanConfig) -> Result<impl Iterator<Item = (u128, SlidingBlockCode)>> {
    let space = CodeSpace::new(cfg)?;
    let only_valid = cfg.only_valid;
    Ok((0..space.len())
        .map(move |i| (i, space.code(i)))
        .filter(move |(_, c)| !only_valid || c.is_endomorphism()))
}

/// A contradiction found by a scan, with enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanViolation {
    pub index: u128,
    pub kind: Violation,
    pub sbc: String,
}

/// A code worth showing, with the text of its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanExample {
    pub index: u128,
    pub sbc: String,
    pub witness: String,
}

/// Totals of a scan. Identical for every worker count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanResult {
    pub candidates: u128,
    pub valid: u64,
    pub injective: u64,
    pub surjective: u64,
    pub pre_injective: u64,
    /// Injective, not surjective.
    pub not_surjunctive: u64,
    /// Surjective, not pre-injective.
    pub moore_failures: u64,
    /// Pre-injective, not surjective.
    pub myhill_failures: u64,
    pub oracle_checks: u64,
    pub oracle_disagreements: u64,
    pub power_checks: u64,
    pub component_checks: u64,
    pub irreducible: bool,
    pub nonwandering: bool,
    pub violations: Vec<ScanViolation>,
    /// First pre-injective, non-surjective code, if any.
    pub myhill_example: Option<ScanExample>,
}

struct Context {
    irreducible: bool,
    decomposition: Option<SpectralDecomposition>,
    power_check: usize,
}

#[derive(Default)]
struct Outcome {
    report: Option<DecisionReport>,
    extra: Vec<Violation>,
    power_checks: u64,
    component_checks: u64,
}

fn evaluate(code: &SlidingBlockCode, ctx: &Context) -> Result<Outcome> {
    if !code.is_endomorphism() {
        return Ok(Outcome::default());
    }
    let report = goe_verdict(code)?;
    let mut out = Outcome::default();
    if let Some(d) = &ctx.decomposition {
        // Surjective codes permute the cyclic classes.
        if report.surjective {
            out.component_checks += 1;
            let action = component_action(code, d)?;
            if !action.is_permutation || !action.commutes_with_shift(d) {
                out.extra.push(Violation::ComponentAction);
            }
        }
        // Homoclinic points share a component.
        if let Some((x, y)) = &report.non_pre_injective_witness {
            out.component_checks += 1;
            let shift = code.shift();
            let cx = component_of(shift, d, x);
            if cx.is_none() || cx != component_of(shift, d, y) {
                out.extra.push(Violation::HomoclinicComponent);
            }
        }
    }
    if !report.pre_injective {
        for k in 2..=ctx.power_check {
            out.power_checks += 1;
            if is_pre_injective(&power(code, k)?).holds {
                out.extra.push(Violation::PowerDescent);
                break;
            }
        }
    }
    out.report = Some(report);
    Ok(out)
}

/// Decides every valid endomorphism of the configured shapes and records
/// any contradiction with the theorems that apply to the shift.
pub fn scan_theorems(cfg: &ScanConfig) -> Result<ScanResult> {
    let space = CodeSpace::new(cfg)?;
    let p = cfg.shift.presentation();
    let irreducible = analysis::is_irreducible(p)?;
    let nonwandering = analysis::is_nonwandering(p);
    let ctx = Context {
        irreducible,
        decomposition: if nonwandering {
            Some(spectral_decomposition(p)?)
        } else {
            None
        },
        power_check: cfg.power_check,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;

    let mut result = ScanResult {
        candidates: space.len(),
        irreducible,
        nonwandering,
        ..ScanResult::default()
    };
    let mut start = 0;
    while start < space.len() {
        let end = (start + CHUNK).min(space.len());
        let outcomes: Vec<Result<Outcome>> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| evaluate(&space.code(i), &ctx))
                .collect()
        });
        for (i, outcome) in (start..end).zip(outcomes) {
            merge(&mut result, &space, i, outcome?, &ctx);
        }
        start = end;
    }
    Ok(result)
}

fn merge(result: &mut ScanResult, space: &CodeSpace, index: u128, o: Outcome, ctx: &Context) {
    let Some(r) = o.report else { return };
    result.valid += 1;
    result.injective += r.injective as u64;
    result.surjective += r.surjective as u64;
    result.pre_injective += r.pre_injective as u64;
    result.not_surjunctive += (r.injective && !r.surjective) as u64;
    result.moore_failures += (r.surjective && !r.pre_injective) as u64;
    result.myhill_failures += (r.pre_injective && !r.surjective) as u64;
    result.power_checks += o.power_checks;
    result.component_checks += o.component_checks;
    if let Some(e) = r.entropy {
        debug_assert!(ctx.irreducible);
        result.oracle_checks += 1;
        result.oracle_disagreements += !e.agrees as u64;
    }
    let kinds: Vec<Violation> = r.violations.iter().chain(&o.extra).copied().collect();
    if !kinds.is_empty() || (r.pre_injective && !r.surjective && result.myhill_example.is_none()) {
        let code = space.code(index);
        let sbc = code.to_sbc_text();
        if r.pre_injective && !r.surjective && result.myhill_example.is_none() {
            let alphabet = code.shift().alphabet();
            let word = r
                .non_surjective_witness
                .as_ref()
                .expect("non-surjective verdict has a witness");
            if verify_missing_word(&code, word) {
                result.myhill_example = Some(ScanExample {
                    index,
                    sbc: sbc.clone(),
                    witness: alphabet.format_word(word),
                });
            } else {
                result.violations.push(ScanViolation {
                    index,
                    kind: Violation::Witness,
                    sbc: sbc.clone(),
                });
            }
        }
        for kind in kinds {
            result.violations.push(ScanViolation {
                index,
                kind,
                sbc: sbc.clone(),
            });
        }
    }
}
