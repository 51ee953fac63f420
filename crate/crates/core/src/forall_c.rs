//! The right adjoint `∀_c` of `c*`, on the preframe base of pairs.
//!
//! A pair `(s,t) ∈ S_↰ × S_↱` stands for the open `↰s ∨ ↱t` of Cantor
//! space. Its image under `∀_c` is `θ(s,t)`: the whole interval when the two
//! hooks overlap, and otherwise `θ_↰(s) ∨ θ_↱(t)` with
//! `θ_↱(t) = (c(t-^ω),1]` and `θ_↰(s) = [-1,c(s+^ω))`.
//!
//! The checkers verify the adjunction and the Frobenius condition stage by
//! stage on all parameters up to a given length.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::cantor_opens::{check_pair_relations, lhook, pair_open, rhook, GeneratedOpen};
use crate::dyadic::{cprime, Dyadic, IntervalOpen};
use crate::error::{Error, Result};
use crate::inverse_image::cstar_interval;
use crate::report::{Report, Section};
use crate::streams::pad;
use crate::words::{overlap, s_join, SElement, SLattice, Sign, SignWord};

/// `(s,t)`, standing for `↰s ∨ ↱t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PreframeBasic {
    pub s: SElement,
    pub t: SElement,
}

impl PreframeBasic {
    pub fn new(s: SElement, t: SElement) -> Self {
        PreframeBasic { s, t }
    }

    pub fn open(&self) -> GeneratedOpen {
        pair_open(&self.s, &self.t)
    }
}

impl fmt::Display for PreframeBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

impl FromStr for PreframeBasic {
    type Err = Error;

    /// `(s,t)` or `s,t`, each component a word, `_` or `bot`.
    fn from_str(input: &str) -> Result<Self> {
        let body = input.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let (s, t) = body.split_once(',').ok_or_else(|| Error::Parse {
            what: "pair",
            input: input.to_string(),
            reason: "expected (s,t)".into(),
        })?;
        Ok(PreframeBasic::new(s.trim().parse()?, t.trim().parse()?))
    }
}

/// `θ_↱(t)`: empty at bottom, everything if `t` has no `+`, else `(c(t-^ω),1]`.
pub fn theta_right(t: &SElement) -> IntervalOpen {
    match t.as_word() {
        None => IntervalOpen::empty(),
        Some(t) if !t.contains(Sign::Plus) => IntervalOpen::whole(),
        Some(t) => IntervalOpen::above(pad(t, Sign::Minus).exact_value().expect("closed form")),
    }
}

/// `θ_↰(s)`: empty at bottom, everything if `s` has no `-`, else `[-1,c(s+^ω))`.
pub fn theta_left(s: &SElement) -> IntervalOpen {
    match s.as_word() {
        None => IntervalOpen::empty(),
        Some(s) if !s.contains(Sign::Minus) => IntervalOpen::whole(),
        Some(s) => IntervalOpen::below(pad(s, Sign::Plus).exact_value().expect("closed form")),
    }
}

pub fn theta(p: &PreframeBasic) -> IntervalOpen {
    theta_pair(&p.s, &p.t)
}

fn theta_pair(s: &SElement, t: &SElement) -> IntervalOpen {
    if let (Some(s), Some(t)) = (s.as_word(), t.as_word()) {
        if overlap(s, t) {
            return IntervalOpen::whole();
        }
    }
    theta_left(s).join(&theta_right(t))
}

/// `[-1,c′(s)) ∨ (c′(t),1]`, a side at bottom contributing nothing.
pub fn basic_interval(s: &SElement, t: &SElement) -> IntervalOpen {
    let left = s
        .as_word()
        .map_or_else(IntervalOpen::empty, |s| IntervalOpen::below(cprime(s).to_rational()));
    let right = t
        .as_word()
        .map_or_else(IntervalOpen::empty, |t| IntervalOpen::above(cprime(t).to_rational()));
    left.join(&right)
}

/// `s-+ᵏ-`, the depth-`k` left generator of `c*([-1,c′(s)))`.
fn left_stage(s: &SElement, k: usize) -> SElement {
    match s.as_word() {
        None => SElement::Bottom,
        Some(s) => SElement::Word(s.with(Sign::Minus).with_run(Sign::Plus, k).with(Sign::Minus)),
    }
}

/// `t+-ˡ+`, the depth-`l` right generator of `c*((c′(t),1])`.
fn right_stage(t: &SElement, l: usize) -> SElement {
    match t.as_word() {
        None => SElement::Bottom,
        Some(t) => SElement::Word(t.with(Sign::Plus).with_run(Sign::Minus, l).with(Sign::Plus)),
    }
}

fn pow2_neg(n: usize) -> BigRational {
    Dyadic::pow2_neg(n as u32).to_rational()
}

/// Counit, unit, overlap exclusion and the behaviour on finite joins, for
/// components of length at most `max_len` and stages up to `depth`.
pub fn check_adjunction(max_len: usize, depth: usize) -> Report {
    let elems: Vec<SElement> = SElement::all_up_to(max_len).collect();
    let words: Vec<SignWord> = SignWord::all_up_to(max_len).collect();
    let mut report = Report::default();

    let mut counit = Section::new("counit: c*(theta(s,t)) ≤ (s,t) at each depth");
    for s in &elems {
        for t in &elems {
            let p = PreframeBasic::new(s.clone(), t.clone());
            let open = p.open();
            let approx = cstar_interval(&theta(&p)).expect("theta has dyadic endpoints");
            for k in 0..=depth {
                counit.check(approx.at_depth(k).leq(&open), || format!("{p} at depth {k}"));
            }
        }
    }
    report.push(counit);

    let mut family = Section::new("counit: rhook(t-^k+-^l+) ≤ rhook t, lhook(s+^k-+^l-) ≤ lhook s");
    for w in &words {
        let (r, l) = (rhook(w), lhook(w));
        for k in 0..=depth {
            for j in 0..=depth {
                let tr = w.with_run(Sign::Minus, k).with(Sign::Plus).with_run(Sign::Minus, j).with(Sign::Plus);
                let tl = w.with_run(Sign::Plus, k).with(Sign::Minus).with_run(Sign::Plus, j).with(Sign::Minus);
                family.check(rhook(&tr).leq(&r) && lhook(&tl).leq(&l), || {
                    format!("w = {w:?}, k = {k}, l = {j}")
                });
            }
        }
    }
    report.push(family);

    let mut below = Section::new("unit: every stage theta(s-+^k-, t+-^l+) ≤ [-1,c′(s)) ∨ (c′(t),1]");
    let mut ends = Section::new("unit: stage endpoints are c′(s) - 2^-(|s|+k+1) and c′(t) + 2^-(|t|+l+1)");
    let mut grows = Section::new("unit: stages increase with k and l");
    for s in &elems {
        for t in &elems {
            let v = basic_interval(s, t);
            let stage = |k: usize, l: usize| theta_pair(&left_stage(s, k), &right_stage(t, l));
            for k in 0..=depth {
                for l in 0..=depth {
                    let w = stage(k, l);
                    below.check(w.leq(&v), || format!("s = {s}, t = {t}, k = {k}, l = {l}: {w}"));
                    if k < depth {
                        grows.check(w.leq(&stage(k + 1, l)), || format!("s = {s}, t = {t}, k = {k}"));
                    }
                    if l < depth {
                        grows.check(w.leq(&stage(k, l + 1)), || format!("s = {s}, t = {t}, l = {l}"));
                    }
                    if v.is_whole() {
                        continue;
                    }
                    let left = s.as_word().map_or_else(IntervalOpen::empty, |s| {
                        IntervalOpen::below(cprime(s).to_rational() - pow2_neg(s.len() + k + 1))
                    });
                    let right = t.as_word().map_or_else(IntervalOpen::empty, |t| {
                        IntervalOpen::above(cprime(t).to_rational() + pow2_neg(t.len() + l + 1))
                    });
                    let expected = left.join(&right);
                    ends.check(w == expected, || format!("s = {s}, t = {t}: {w} vs {expected}"));
                }
            }
        }
    }
    for k in 0..=depth {
        let e = cprime(&SignWord::from_signs([Sign::Plus]).with_run(Sign::Minus, k));
        ends.check(e.to_rational() == pow2_neg(k + 1), || format!("c′(+-^{k}) = {e}"));
    }
    report.push(below);
    report.push(ends);
    report.push(grows);

    let mut exclusion = Section::new("unit: c′(s) ≤ c′(t) excludes s-+^k- overlapping t+-^l+");
    for s in &words {
        for t in &words {
            if cprime(s) > cprime(t) {
                continue;
            }
            for k in 0..=depth {
                for l in 0..=depth {
                    let (a, b) = (left_stage(&s.clone().into(), k), right_stage(&t.clone().into(), l));
                    let hit = overlap(a.as_word().expect("word"), b.as_word().expect("word"));
                    exclusion.check(!hit, || format!("s = {s:?}, t = {t:?}, k = {k}, l = {l}"));
                }
            }
        }
    }
    report.push(exclusion);

    // θ(s,t) is everything on overlap while θ(s,⊥) ∨ θ(⊥,t) can miss the
    // single point c(s+^ω) = c(t-^ω).
    let mut joins = Section::new("finite joins: theta(s,t) vs theta(s,bot) ∨ theta(bot,t)");
    for s in &words {
        for t in &words {
            if !overlap(s, t) {
                continue;
            }
            let split = theta_left(&s.clone().into()).join(&theta_right(&t.clone().into()));
            if split.is_whole() {
                joins.check(true, String::new);
                continue;
            }
            let a = pad(s, Sign::Plus).exact_value().expect("closed form");
            let b = pad(t, Sign::Minus).exact_value().expect("closed form");
            let gap_is_point = a == b && split == punctured(&a);
            joins.check(gap_is_point, || format!("s = {s:?}, t = {t:?}: {split}"));
            if gap_is_point {
                joins.notes.push(format!("s = {s:?}, t = {t:?} misses {}", crate::dyadic::format_rational(&a)));
            }
        }
    }
    report.push(joins);
    report
}

/// `[-1,1]` without the point `a`.
fn punctured(a: &BigRational) -> IntervalOpen {
    IntervalOpen::below(a.clone()).join(&IntervalOpen::above(a.clone()))
}

/// Stagewise `∀_c(a ∨ c*b) ≤ ∀_c(a) ∨ b` for `a = (s,t)` and
/// `b = [-1,c′(s′)) ∨ (c′(t′),1]`, all components of length at most
/// `max_len` (bottom included) and stages `k,l ≤ depth`.
pub fn check_frobenius(max_len: usize, depth: usize) -> Report {
    let elems: Vec<SElement> = SElement::all_up_to(max_len).collect();

    // Index every element that can occur as a component of a ∨ c*b.
    let mut left = Interner::default();
    let mut right = Interner::default();
    for e in &elems {
        left.intern(e);
        right.intern(e);
    }
    let n = elems.len();
    let mut join_left = vec![0; n * n * (depth + 1)];
    let mut join_right = vec![0; n * n * (depth + 1)];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            for k in 0..=depth {
                let sl = s_join(a, &left_stage(b, k), SLattice::Left);
                let tr = s_join(a, &right_stage(b, k), SLattice::Right);
                join_left[(i * n + j) * (depth + 1) + k] = left.intern(&sl);
                join_right[(i * n + j) * (depth + 1) + k] = right.intern(&tr);
            }
        }
    }

    let mut hooks = Section::new("Frobenius: joins in S are joins of hooks");
    let lhooks: Vec<GeneratedOpen> = left.items.iter().map(|s| pair_open(s, &SElement::Bottom)).collect();
    let rhooks: Vec<GeneratedOpen> = right.items.iter().map(|t| pair_open(&SElement::Bottom, t)).collect();
    for (i, a) in left.items.iter().enumerate() {
        for (j, b) in left.items.iter().enumerate() {
            let m = left.index[&s_join(a, b, SLattice::Left)];
            hooks.check(lhooks[i].join(&lhooks[j]) == lhooks[m], || format!("left {a} ∨ {b}"));
        }
    }
    for (i, a) in right.items.iter().enumerate() {
        for (j, b) in right.items.iter().enumerate() {
            let m = right.index[&s_join(a, b, SLattice::Right)];
            hooks.check(rhooks[i].join(&rhooks[j]) == rhooks[m], || format!("right {a} ∨ {b}"));
        }
    }

    let thetas: Vec<Vec<IntervalOpen>> = left
        .items
        .iter()
        .map(|s| right.items.iter().map(|t| theta_pair(s, t)).collect())
        .collect();
    let basics: Vec<Vec<IntervalOpen>> = elems
        .iter()
        .map(|s| elems.iter().map(|t| basic_interval(s, t)).collect())
        .collect();

    let mut inclusion = Section::new("Frobenius: theta(s'',t'') ≤ theta(s,t) ∨ b at every stage");
    let mut grows = Section::new("Frobenius: theta(s,t) ≤ theta(s'',t'')");
    for si in 0..n {
        for ti in 0..n {
            let theta_a = &thetas[left.index[&elems[si]]][right.index[&elems[ti]]];
            for spi in 0..n {
                for tpi in 0..n {
                    let rhs = theta_a.join(&basics[spi][tpi]);
                    for k in 0..=depth {
                        let sl = join_left[(si * n + spi) * (depth + 1) + k];
                        for l in 0..=depth {
                            let tr = join_right[(ti * n + tpi) * (depth + 1) + l];
                            let lhs = &thetas[sl][tr];
                            inclusion.check(lhs.leq(&rhs), || {
                                format!(
                                    "a = ({},{}), b = ({},{}), k = {k}, l = {l}",
                                    elems[si], elems[ti], elems[spi], elems[tpi]
                                )
                            });
                            grows.check(theta_a.leq(lhs), || {
                                format!("a = ({},{}), k = {k}, l = {l}", elems[si], elems[ti])
                            });
                        }
                    }
                }
            }
        }
    }

    // When s'' comes from b and overlaps t, the proof bounds
    // c(t-^ω) ≤ c′(s′-+^k) < c′(s′); dually for t''.
    let mut branch = Section::new("Frobenius: overlap branch endpoint inequalities");
    let words: Vec<SignWord> = SignWord::all_up_to(max_len).collect();
    for sp in &words {
        for t in &words {
            for k in 0..=depth {
                let x = sp.with(Sign::Minus).with_run(Sign::Plus, k);
                if !overlap(&x.with(Sign::Minus), t) {
                    continue;
                }
                let ct = pad(t, Sign::Minus).exact_value().expect("closed form");
                let mid = cprime(&x).to_rational();
                let top = cprime(sp).to_rational();
                branch.check(ct <= mid && mid < top, || format!("s' = {sp:?}, t = {t:?}, k = {k}"));
                branch.check(
                    theta_right(&t.clone().into()).join(&IntervalOpen::below(top)).is_whole(),
                    || format!("s' = {sp:?}, t = {t:?}, k = {k}: union is not everything"),
                );
            }
        }
    }
    for tp in &words {
        for s in &words {
            for l in 0..=depth {
                let x = tp.with(Sign::Plus).with_run(Sign::Minus, l);
                if !overlap(s, &x.with(Sign::Plus)) {
                    continue;
                }
                let cs = pad(s, Sign::Plus).exact_value().expect("closed form");
                let mid = cprime(&x).to_rational();
                let bottom = cprime(tp).to_rational();
                branch.check(cs >= mid && mid > bottom, || format!("t' = {tp:?}, s = {s:?}, l = {l}"));
            }
        }
    }

    let mut report = Report::default();
    report.push(hooks);
    report.push(inclusion);
    report.push(grows);
    report.push(branch);
    report
}

#[derive(Default)]
struct Interner {
    items: Vec<SElement>,
    index: HashMap<SElement, usize>,
}

impl Interner {
    fn intern(&mut self, e: &SElement) -> usize {
        if let Some(&i) = self.index.get(e) {
            return i;
        }
        self.items.push(e.clone());
        self.index.insert(e.clone(), self.items.len() - 1);
        self.items.len() - 1
    }
}

/// The presentation relations on `S`, read through `θ`, plus the rule that
/// `θ(s,t)` is everything when `t` has no `+` or `s` has no `-`.
pub fn check_theta_relations(max_len: usize) -> Report {
    let mut report = check_pair_relations(max_len, "theta", theta_pair);
    let mut whole = Section::new("theta: everything when t has no + or s has no -");
    for s in SignWord::all_up_to(max_len) {
        for t in SignWord::all_up_to(max_len) {
            if !t.contains(Sign::Plus) || !s.contains(Sign::Minus) {
                let v = theta_pair(&s.clone().into(), &t.clone().into());
                whole.check(v.is_whole(), || format!("s = {s:?}, t = {t:?}: {v}"));
            }
        }
    }
    report.push(whole);
    report
}
