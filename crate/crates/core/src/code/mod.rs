//! Sliding block codes acting on a shift of finite type.
//!
//! A code with memory `m` and anticipation `a` computes coordinate `i` of the
//! image from the window `x[i-m..=i+a]`. Rules are stored in symbol
//! coordinates and must be total on the allowed windows of the ambient shift.

mod action;
mod sofic;

pub use action::{component_action, ComponentAction};
pub use sofic::{image_sofic, window_graph, SoficPresentation, WindowEdge, WindowGraph};

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shift::{EpConfig, PeriodicConfig, Shift, Symbol, Word};

/// The allowed windows of a given width, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowTable {
    width: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WindowTable {
    pub fn new(shift: &Shift, width: usize) -> Self {
        let words: Vec<Word> = shift.language(width).into_iter().collect();
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        WindowTable {
            width,
            words,
            index,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, window: &[Symbol]) -> Option<usize> {
        self.index.get(window).copied()
    }
}

#[derive(Debug, Clone)]
pub struct SlidingBlockCode {
    shift: Arc<Shift>,
    memory: usize,
    anticipation: usize,
    windows: Arc<WindowTable>,
    rule: Vec<Symbol>,
}

impl PartialEq for SlidingBlockCode {
    fn eq(&self, other: &Self) -> bool {
        self.memory == other.memory
            && self.anticipation == other.anticipation
            && self.rule == other.rule
            && self.windows.words == other.windows.words
            && same_shift(&self.shift, &other.shift)
    }
}

impl Eq for SlidingBlockCode {}

impl SlidingBlockCode {
    /// Builds a code from a rule table aligned with `windows`.
    pub fn from_table(
        shift: Arc<Shift>,
        memory: usize,
        anticipation: usize,
        windows: Arc<WindowTable>,
        rule: Vec<Symbol>,
    ) -> Self {
        assert_eq!(
            windows.width(),
            memory + anticipation + 1,
            "window width mismatch"
        );
        assert_eq!(
            windows.len(),
            rule.len(),
            "rule must cover every allowed window"
        );
        SlidingBlockCode {
            shift,
            memory,
            anticipation,
            windows,
            rule,
        }
    }

    /// Builds a code from a function on allowed windows.
    pub fn from_fn(
        shift: Arc<Shift>,
        memory: usize,
        anticipation: usize,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Self {
        let windows = Arc::new(WindowTable::new(&shift, memory + anticipation + 1));
        let rule = windows.words().iter().map(|w| f(w)).collect();
        SlidingBlockCode::from_table(shift, memory, anticipation, windows, rule)
    }

    pub fn identity(shift: Arc<Shift>) -> Self {
        SlidingBlockCode::from_fn(shift, 0, 0, |w| w[0])
    }

    pub fn shift(&self) -> &Arc<Shift> {
        &self.shift
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn window_len(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn windows(&self) -> &Arc<WindowTable> {
        &self.windows
    }

    pub fn rule(&self) -> &[Symbol] {
        &self.rule
    }

    /// Output for one window, `None` if the window is not allowed.
    pub fn output(&self, window: &[Symbol]) -> Option<Symbol> {
        self.windows.position(window).map(|i| self.rule[i])
    }

    /// Image of a finite word: one output per full window.
    pub fn apply_word(&self, w: &[Symbol]) -> Option<Vec<Symbol>> {
        if w.len() < self.window_len() {
            return Some(Vec::new());
        }
        w.windows(self.window_len())
            .map(|win| self.output(win))
            .collect()
    }

    fn not_allowed(&self, window: &[Symbol]) -> Error {
        Error::NotAllowed(format!(
            "window `{}` is not allowed",
            self.shift.alphabet().format_word(window)
        ))
    }

    fn output_at(&self, x: impl Fn(i64) -> Symbol, i: i64) -> Result<Symbol> {
        let win: Vec<Symbol> = (i - self.memory as i64..=i + self.anticipation as i64)
            .map(&x)
            .collect();
        self.output(&win).ok_or_else(|| self.not_allowed(&win))
    }

    /// Image of a periodic point; the period is preserved.
    pub fn apply_to_periodic(&self, x: &PeriodicConfig) -> Result<PeriodicConfig> {
        let word = (0..x.period() as i64)
            .map(|i| self.output_at(|j| x.at(j), i))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicConfig::new(word))
    }

    /// Image of an eventually periodic point, coordinates aligned.
    pub fn apply_to_ep(&self, x: &EpConfig) -> Result<EpConfig> {
        let m = self.memory as i64;
        let a = self.anticipation as i64;
        // Image coordinates below `lo` only see the left tail, those from
        // `hi` on only the right tail.
        let lo = x.offset() - a;
        let hi = x.right_start() + m;
        let at = |i: i64| x.at(i);
        let eval = |range: std::ops::Range<i64>| {
            range
                .map(|i| self.output_at(at, i))
                .collect::<Result<Vec<_>>>()
        };
        let left = eval(lo - x.left().len() as i64..lo)?;
        let bridge = eval(lo..hi)?;
        let right = eval(hi..hi + x.right().len() as i64)?;
        Ok(EpConfig::new(left, bridge, right, lo).normalized())
    }

    /// Shortest source word whose image contains a window forbidden by the
    /// ambient spec, or `None` when the code maps the shift into itself.
    pub fn endomorphism_violation(&self) -> Option<(Word, Word)> {
        let spec = self.shift.spec();
        let n = spec.step() + 1 + self.window_len() - 1;
        self.shift.language(n).into_iter().find_map(|src| {
            let img = self
                .apply_word(&src)
                .expect("language words have allowed windows");
            (!spec.admits_word(&img)).then_some((src, Word(img)))
        })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.endomorphism_violation().is_none()
    }

    /// Like [`Self::is_endomorphism`], but returns the violation as an error.
    pub fn validate(&self) -> Result<()> {
        match self.endomorphism_violation() {
            None => Ok(()),
            Some((src, img)) => {
                let a = self.shift.alphabet();
                Err(Error::NotEndomorphism {
                    source_word: a.format_word(&src),
                    image: a.format_word(&img),
                })
            }
        }
    }

    /// `.sbc` text of the code.
    pub fn to_sbc_text(&self) -> String {
        let a = self.shift.alphabet();
        let mut out = String::new();
        let _ = writeln!(out, "memory {}", self.memory);
        let _ = writeln!(out, "anticipation {}", self.anticipation);
        for (w, &s) in self.windows.words().iter().zip(&self.rule) {
            let _ = writeln!(out, "rule {} {}", a.format_word(w), a.token(s));
        }
        out
    }
}

fn same_shift(a: &Arc<Shift>, b: &Arc<Shift>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `c2 ∘ c1`: apply `c1`, then `c2`.
pub fn compose(c2: &SlidingBlockCode, c1: &SlidingBlockCode) -> Result<SlidingBlockCode> {
    if !same_shift(&c1.shift, &c2.shift) {
        return Err(Error::AmbientMismatch);
    }
    let memory = c1.memory + c2.memory;
    let anticipation = c1.anticipation + c2.anticipation;
    let windows = Arc::new(WindowTable::new(&c1.shift, memory + anticipation + 1));
    let mut rule = Vec::with_capacity(windows.len());
    for w in windows.words() {
        let mid = c1.apply_word(w).expect("allowed window");
        let out = c2.output(&mid).ok_or_else(|| {
            let a = c1.shift.alphabet();
            Error::NotEndomorphism {
                source_word: a.format_word(w),
                image: a.format_word(&mid),
            }
        })?;
        rule.push(out);
    }
    Ok(SlidingBlockCode::from_table(
        c1.shift.clone(),
        memory,
        anticipation,
        windows,
        rule,
    ))
}

/// `k`-fold composition of `c` with itself.
pub fn power(c: &SlidingBlockCode, k: usize) -> Result<SlidingBlockCode> {
    if k < 1 {
        return Err(Error::InvalidPower);
    }
    let mut acc = c.clone();
    for _ in 1..k {
        acc = compose(c, &acc)?;
    }
    Ok(acc)
}

/// Result of [`parse_code_with_warnings`].
#[derive(Debug, Clone)]
pub struct ParsedCode {
    pub code: SlidingBlockCode,
    /// Rules given for windows the shift does not allow; they are ignored.
    pub warnings: Vec<String>,
}

/// Parses `.sbc` text:
///
/// ```text
/// memory 1
/// anticipation 0
/// rule 0.0 0
/// rule 1.2 1
/// ```
pub fn parse_code_with_warnings(text: &str, shift: &Arc<Shift>) -> Result<ParsedCode> {
    let alphabet = shift.alphabet();
    let mut memory: Option<usize> = None;
    let mut anticipation: Option<usize> = None;
    let mut rules: Vec<(usize, Word, Symbol)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let int = |slot: &mut Option<usize>, name: &str| -> Result<()> {
            let [_, value] = toks[..] else {
                return Err(Error::parse(line_no, format!("`{name}` takes one integer")));
            };
            if slot.is_some() {
                return Err(Error::parse(line_no, format!("`{name}` given twice")));
            }
            *slot = Some(
                value
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad {name} `{value}`")))?,
            );
            Ok(())
        };
        match toks[0] {
            "memory" => int(&mut memory, "memory")?,
            "anticipation" => int(&mut anticipation, "anticipation")?,
            "rule" => {
                let [_, window, symbol] = toks[..] else {
                    return Err(Error::parse(line_no, "`rule` takes a window and a symbol"));
                };
                let wrap = |e: Error| Error::parse(line_no, e.to_string());
                let w = alphabet.parse_word(window).map_err(wrap)?;
                let s = alphabet.lookup(symbol).map_err(wrap)?;
                rules.push((line_no, w, s));
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    let memory = memory.ok_or_else(|| Error::parse(0, "missing `memory`"))?;
    let anticipation = anticipation.ok_or_else(|| Error::parse(0, "missing `anticipation`"))?;
    let windows = Arc::new(WindowTable::new(shift, memory + anticipation + 1));
    let mut table: Vec<Option<Symbol>> = vec![None; windows.len()];
    let mut warnings = Vec::new();
    for (line_no, w, s) in rules {
        if w.len() != windows.width() {
            let e = Error::WrongLength {
                word: alphabet.format_word(&w),
                expected: windows.width(),
                found: w.len(),
            };
            return Err(Error::parse(line_no, e.to_string()));
        }
        match windows.position(&w) {
            None => warnings.push(format!(
                "line {line_no}: window `{}` is not allowed; rule ignored",
                alphabet.format_word(&w)
            )),
            Some(i) => match table[i] {
                Some(prev) if prev != s => {
                    return Err(Error::parse(
                        line_no,
                        format!("conflicting rules for `{}`", alphabet.format_word(&w)),
                    ))
                }
                _ => table[i] = Some(s),
            },
        }
    }
    let rule = table
        .iter()
        .zip(windows.words())
        .map(|(s, w)| s.ok_or_else(|| Error::MissingRule(alphabet.format_word(w))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedCode {
        code: SlidingBlockCode::from_table(shift.clone(), memory, anticipation, windows, rule),
        warnings,
    })
}

pub fn parse_code(text: &str, shift: &Arc<Shift>) -> Result<SlidingBlockCode> {
    parse_code_with_warnings(text, shift).map(|p| p.code)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn shift(text: &str) -> Arc<Shift> {
        Shift::parse(text).unwrap()
    }

    pub fn full2() -> Arc<Shift> {
        shift("alphabet 0 1\nstep 0\nallowed 0 1")
    }

    pub fn golden() -> Arc<Shift> {
        shift("alphabet 0 1\nstep 1\nforbidden 1.1")
    }

    pub fn weiss() -> Arc<Shift> {
        shift("alphabet 0 1 2\nstep 1\nallowed 0.0 1.1 2.2 0.1 1.2")
    }

    pub fn two_cycle() -> Arc<Shift> {
        shift("alphabet a b\nstep 1\nallowed a.b b.a")
    }

    pub fn two_point() -> Arc<Shift> {
        shift("alphabet 0 1\nstep 1\nallowed 0.0 1.1")
    }

    pub fn xor() -> SlidingBlockCode {
        SlidingBlockCode::from_fn(full2(), 0, 1, |w| (w[0] + w[1]) % 2)
    }

    /// Rewrites the `2` of an occurrence of `12` to `1`.
    pub fn weiss_tau() -> SlidingBlockCode {
        SlidingBlockCode::from_fn(weiss(), 1, 0, |w| if w == [1, 2] { 1 } else { w[1] })
    }

    /// Rewrites the middle `1` of an occurrence of `112` to `2`.
    pub fn moore_fail() -> SlidingBlockCode {
        SlidingBlockCode::from_fn(weiss(), 1, 1, |w| if w == [1, 1, 2] { 2 } else { w[1] })
    }

    pub fn collapse() -> SlidingBlockCode {
        SlidingBlockCode::from_fn(two_point(), 0, 0, |_| 0)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn pc(w: &[usize]) -> PeriodicConfig {
        PeriodicConfig::new(w.to_vec())
    }

    fn ep(l: &[usize], b: &[usize], r: &[usize], o: i64) -> EpConfig {
        EpConfig::new(l.to_vec(), b.to_vec(), r.to_vec(), o)
    }

    #[test]
    fn parse_xor() {
        let text = "memory 0\nanticipation 1\nrule 0.0 0\nrule 0.1 1\nrule 1.0 1\nrule 1.1 0\n";
        let c = parse_code(text, &full2()).unwrap();
        assert_eq!(c, xor());
        assert!(c.is_endomorphism());
        assert_eq!(parse_code(&c.to_sbc_text(), &full2()).unwrap(), c);
    }

    #[test]
    fn parse_weiss_tau_with_ignored_rule() {
        let text = "memory 1\nanticipation 0\n\
                    rule 0.0 0\nrule 0.1 1\nrule 1.1 1\nrule 1.2 1\nrule 2.2 2\n\
                    rule 0.2 2 # not an allowed window\n";
        let parsed = parse_code_with_warnings(text, &weiss()).unwrap();
        assert_eq!(parsed.code, weiss_tau());
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.code.is_endomorphism());
    }

    #[test]
    fn parse_identity_on_any_shift() {
        for s in [full2(), golden(), weiss()] {
            let text = SlidingBlockCode::identity(s.clone()).to_sbc_text();
            let c = parse_code(&text, &s).unwrap();
            assert!(c.is_endomorphism());
        }
    }

    #[test]
    fn parse_errors() {
        let s = golden();
        assert_eq!(
            parse_code("memory 0\nanticipation 0\nrule 0 0\n", &s),
            Err(Error::MissingRule("1".into()))
        );
        assert!(matches!(
            parse_code("memory 0\nanticipation 0\nrule 0 0\nrule 1 7\n", &s),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(parse_code("memory 0\nrule 0 0\nrule 1 1\n", &s).is_err());
        assert!(matches!(
            parse_code(
                "memory 0\nanticipation 0\nrule 0 0\nrule 0 1\nrule 1 1\n",
                &s
            ),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn constant_one_on_golden_mean_is_not_an_endomorphism() {
        let c = SlidingBlockCode::from_fn(golden(), 0, 0, |_| 1);
        let (src, img) = c.endomorphism_violation().unwrap();
        assert_eq!(src, Word(vec![0, 0]));
        assert_eq!(img, Word(vec![1, 1]));
        assert!(matches!(c.validate(), Err(Error::NotEndomorphism { .. })));
    }

    #[test]
    fn periodic_images() {
        assert_eq!(xor().apply_to_periodic(&pc(&[1])).unwrap(), pc(&[0]));
        let id = SlidingBlockCode::identity(golden());
        assert_eq!(
            id.apply_to_periodic(&pc(&[0, 1, 0])).unwrap(),
            pc(&[0, 1, 0])
        );
        assert_eq!(weiss_tau().apply_to_periodic(&pc(&[2])).unwrap(), pc(&[2]));
        assert!(xor().apply_to_periodic(&pc(&[0, 1])).unwrap().period() == 2);
        // 1^∞ is not a point of the golden mean shift; the window `1.1` is unknown.
        let wide = SlidingBlockCode::from_fn(golden(), 0, 1, |w| w[0]);
        assert!(wide.apply_to_periodic(&pc(&[1])).is_err());
    }

    #[test]
    fn moore_fail_identifies_the_homoclinic_pair() {
        // v = …000 1 1 2 2 2…, u = …000 1 2 2 2… with coordinate 1 the first `1`.
        let v = ep(&[0], &[1, 1], &[2], 1);
        let u = ep(&[0], &[1], &[2], 1);
        let c = moore_fail();
        assert!(c.apply_to_ep(&v).unwrap().same_point(&u));
        assert!(c.apply_to_ep(&u).unwrap().same_point(&u));
        let id = SlidingBlockCode::identity(weiss());
        assert!(id.apply_to_ep(&v).unwrap().same_point(&v));
    }

    #[test]
    fn xor_squared_is_window_three_rule() {
        let sq = power(&xor(), 2).unwrap();
        assert_eq!((sq.memory(), sq.anticipation()), (0, 2));
        for w in sq.windows().words() {
            assert_eq!(sq.output(w), Some((w[0] + w[2]) % 2));
        }
    }

    #[test]
    fn identity_is_neutral() {
        let id = SlidingBlockCode::identity(full2());
        let c = compose(&id, &xor()).unwrap();
        for w in [vec![0, 1, 1], vec![1, 0, 0, 1]] {
            let x = pc(&w);
            assert_eq!(c.apply_to_periodic(&x), xor().apply_to_periodic(&x));
        }
        let id5 = power(&id, 5).unwrap();
        for w in [vec![0], vec![1, 0, 1]] {
            assert_eq!(id5.apply_to_periodic(&pc(&w)).unwrap(), pc(&w));
        }
        assert_eq!(power(&weiss_tau(), 1).unwrap(), weiss_tau());
        assert_eq!(power(&xor(), 0), Err(Error::InvalidPower));
    }

    #[test]
    fn compose_rejects_foreign_codes() {
        let id = SlidingBlockCode::identity(golden());
        assert_eq!(compose(&id, &xor()), Err(Error::AmbientMismatch));
    }

    #[test]
    fn powers_match_repeated_application() {
        let samples = [
            vec![0],
            vec![1],
            vec![0, 1],
            vec![0, 0, 1],
            vec![1, 1, 0, 1],
        ];
        for k in 1..=3 {
            let ck = power(&xor(), k).unwrap();
            for w in &samples {
                let mut x = pc(w);
                for _ in 0..k {
                    x = xor().apply_to_periodic(&x).unwrap();
                }
                assert_eq!(ck.apply_to_periodic(&pc(w)).unwrap(), x);
            }
        }
    }

    /// All periodic points of the shift with period ≤ `n`.
    fn periodic_points(s: &Shift, n: usize) -> Vec<PeriodicConfig> {
        let spec = s.spec();
        (1..=n)
            .flat_map(|p| spec.alphabet().all_words(p).collect::<Vec<_>>())
            .filter(|w| {
                let cyc: Vec<usize> = w.iter().chain(w.iter()).chain(w.iter()).copied().collect();
                spec.admits_word(&cyc)
            })
            .map(PeriodicConfig::new)
            .collect()
    }

    fn arb_full2_code() -> impl Strategy<Value = SlidingBlockCode> {
        (0usize..2, 0usize..2, any::<u16>()).prop_map(|(m, a, bits)| {
            SlidingBlockCode::from_fn(full2(), m, a, move |w| {
                let idx = w.iter().fold(0, |acc, &s| acc * 2 + s);
                ((bits >> (idx % 16)) & 1) as usize
            })
        })
    }

    proptest! {
        #[test]
        fn periodic_images_agree_with_windowed_application(c in arb_full2_code()) {
            for x in periodic_points(&full2(), 4) {
                let y = c.apply_to_periodic(&x).unwrap();
                // Period preserved (as a period).
                prop_assert_eq!(y.period(), x.period());
                let n = x.period() as i64;
                let wide: Vec<usize> = (-10..n + 10).map(|i| x.at(i)).collect();
                let img = c.apply_word(&wide).unwrap();
                for (k, &s) in img.iter().enumerate() {
                    let i = k as i64 - 10 + c.memory() as i64;
                    prop_assert_eq!(y.at(i), s);
                }
            }
        }

        #[test]
        fn composition_is_associative(c1 in arb_full2_code(), c2 in arb_full2_code(), c3 in arb_full2_code()) {
            let left = compose(&compose(&c3, &c2).unwrap(), &c1).unwrap();
            let right = compose(&c3, &compose(&c2, &c1).unwrap()).unwrap();
            for x in periodic_points(&full2(), 4) {
                prop_assert_eq!(left.apply_to_periodic(&x).unwrap(), right.apply_to_periodic(&x).unwrap());
            }
        }

        #[test]
        fn ep_images_agree_with_windowed_application(
            c in arb_full2_code(),
            l in prop::collection::vec(0usize..2, 1..3),
            b in prop::collection::vec(0usize..2, 0..4),
            r in prop::collection::vec(0usize..2, 1..3),
            o in -3i64..3,
        ) {
            let x = EpConfig::new(l, b, r, o);
            let y = c.apply_to_ep(&x).unwrap();
            let m = c.memory() as i64;
            let a = c.anticipation() as i64;
            for i in -15..15 {
                let win = x.slice(i - m, i + a + 1);
                prop_assert_eq!(y.at(i), c.output(&win).unwrap());
            }
        }

        #[test]
        fn homoclinic_points_have_homoclinic_images(
            c in arb_full2_code(),
            b1 in prop::collection::vec(0usize..2, 3),
            b2 in prop::collection::vec(0usize..2, 3),
        ) {
            // Both points are 0^∞ outside a finite bridge.
            let x = EpConfig::new(vec![0], b1, vec![1, 0], 0);
            let y = EpConfig::new(vec![0], b2, vec![1, 0], 0);
            let (fx, fy) = (c.apply_to_ep(&x).unwrap(), c.apply_to_ep(&y).unwrap());
            let far = |z: &EpConfig, lo: i64, hi: i64| z.slice(lo, hi);
            // Differences confined to a bounded window.
            prop_assert_eq!(far(&fx, -40, -10), far(&fy, -40, -10));
            prop_assert_eq!(far(&fx, 10, 40), far(&fy, 10, 40));
        }
    }
}
