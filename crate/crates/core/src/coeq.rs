//! The coequalizer of `u₋, u₊ : 2* → 2^ω`.
//!
//! An open `U` of Cantor space is in `Ω C` when
//! `(∃m) s+-^m ∈ U ⟺ (∃n) s-+^n ∈ U` for every word `s`. These are exactly
//! the opens of the form `c*(V)`, and [`factor_generator`] finds, for each
//! member `u` of such an open, an interval `V` with `↑u ≤ c*(V) ≤ U`.
//!
//! The interval is connected, so the only finitely generated opens in `Ω C`
//! are `∅` and everything; factorization therefore works on membership
//! oracles, typically `c*` of a known interval open.

use crate::cantor_opens::GeneratedOpen;
use crate::dyadic::{cprime, IntervalOpen, Lower, Upper};
use crate::error::{Error, Result};
use crate::inverse_image::{cstar_contains, cstar_interval};
use crate::report::{Report, Section};
use crate::words::{Sign, SignWord};

/// An up-closed set of words, i.e. an open of Cantor space given by which
/// cylinders it contains. Oracles must answer consistently.
pub trait OpenOracle: Send + Sync {
    /// Whether `↑t ≤ U`.
    fn contains(&self, t: &SignWord) -> bool;

    /// A depth `M` such that `s·d·(flip d)^m ∈ U` for some `m` exactly when
    /// it holds for `m = M`, for every `s`. `None` if unknown.
    fn stabilization_bound(&self) -> Option<usize>;
}

impl OpenOracle for GeneratedOpen {
    fn contains(&self, t: &SignWord) -> bool {
        self.member(t)
    }

    fn stabilization_bound(&self) -> Option<usize> {
        Some(self.max_len() + 1)
    }
}

/// `c*(V)` for an interval open with dyadic endpoints.
#[derive(Clone, Debug)]
pub struct CstarOracle {
    v: IntervalOpen,
    bound: usize,
}

impl CstarOracle {
    pub fn new(v: IntervalOpen) -> Result<Self> {
        // reject non-dyadic endpoints up front
        cstar_interval(&v)?;
        let mut exponent = 0;
        for seg in v.segments() {
            let ends = [
                match &seg.lower {
                    Lower::Open(a) => Some(a),
                    Lower::ClosedMinusOne => None,
                },
                match &seg.upper {
                    Upper::Open(b) => Some(b),
                    Upper::ClosedOne => None,
                },
            ];
            for q in ends.into_iter().flatten() {
                exponent = exponent.max(q.denom().bits().saturating_sub(1) as usize);
            }
        }
        Ok(CstarOracle { v, bound: exponent + 1 })
    }

    pub fn interval(&self) -> &IntervalOpen {
        &self.v
    }
}

impl OpenOracle for CstarOracle {
    fn contains(&self, t: &SignWord) -> bool {
        cstar_contains(&self.v, t).expect("endpoints checked on construction")
    }

    /// Every endpoint is a multiple of `2^-E`, so once `|s| + m > E` the
    /// image of `↑(s+-^m)` is inside `V` as soon as `c(s+-^ω) = c′(s)` is.
    fn stabilization_bound(&self) -> Option<usize> {
        Some(self.bound)
    }
}

/// The image of an oracle under the sign swap.
pub struct Swapped<'a>(pub &'a dyn OpenOracle);

impl OpenOracle for Swapped<'_> {
    fn contains(&self, t: &SignWord) -> bool {
        self.0.contains(&t.swap())
    }

    fn stabilization_bound(&self) -> Option<usize> {
        self.0.stabilization_bound()
    }
}

/// Whether `s·d·(flip d)^m ∈ U` for some `m ≤ probe`.
fn reaches(u: &dyn OpenOracle, s: &SignWord, d: Sign, probe: usize) -> bool {
    u.contains(&s.with(d).with_run(d.flip(), probe))
}

/// A word of length at most `max_len` on which the two sides of the `Ω C`
/// condition differ, probing `probe` trailing digits.
pub fn omega_c_witness(u: &dyn OpenOracle, max_len: usize, probe: usize) -> Option<SignWord> {
    SignWord::all_up_to(max_len)
        .find(|s| reaches(u, s, Sign::Plus, probe) != reaches(u, s, Sign::Minus, probe))
}

/// `U ∈ Ω C`. Words longer than every generator satisfy the condition
/// trivially, and `max_len(U) + 1` trailing digits decide the rest.
pub fn in_omega_c(u: &GeneratedOpen) -> bool {
    omega_c_witness(u, u.max_len(), u.max_len() + 1).is_none()
}

/// `2(|u| + depth) + 2`.
pub fn default_bound(u: &SignWord, depth: usize) -> usize {
    2 * (u.len() + depth) + 2
}

fn search(
    u: &dyn OpenOracle,
    family: &str,
    bound: usize,
    candidate: impl Fn(usize) -> SignWord,
) -> Result<SignWord> {
    (0..=bound)
        .map(candidate)
        .find(|s| u.contains(s))
        .ok_or_else(|| Error::WitnessBoundExhausted {
            family: family.to_string(),
            bound,
            conclusive: u.stabilization_bound().is_some_and(|b| bound >= b),
        })
}

/// An interval `V` with `↑w ≤ c*(V) ≤ U`, found by searching at most
/// `bound + 1` candidates per witness.
pub fn factor_generator(w: &SignWord, u: &dyn OpenOracle, bound: usize) -> Result<IntervalOpen> {
    if !u.contains(w) {
        return Err(Error::NotMember { word: w.clone() });
    }
    if w.is_empty() {
        return Ok(IntervalOpen::whole());
    }
    let n = w.len();
    if !w.contains(Sign::Minus) {
        let s = search(u, "+^(n-1)-+^m", bound, |m| {
            SignWord::repeat(Sign::Plus, n - 1).with(Sign::Minus).with_run(Sign::Plus, m)
        })?;
        return Ok(IntervalOpen::above(cprime(&s).to_rational()));
    }
    if !w.contains(Sign::Plus) {
        return Ok(factor_generator(&w.swap(), &Swapped(u), bound)?.reflect());
    }
    if w.last() == Some(Sign::Plus) {
        return Ok(factor_generator(&w.swap(), &Swapped(u), bound)?.reflect());
    }
    // w = w′+-ⁿ with n ≥ 1
    let run = w.signs().iter().rev().take_while(|&&d| d == Sign::Minus).count();
    let stem = w.truncate(n - run - 1);
    let s0 = search(u, "u'-+^m", bound, |m| stem.with(Sign::Minus).with_run(Sign::Plus, m))?;
    let s1 = search(u, "u'+-^(n-1)+-^k", bound, |k| {
        stem.with(Sign::Plus)
            .with_run(Sign::Minus, run - 1)
            .with(Sign::Plus)
            .with_run(Sign::Minus, k)
    })?;
    Ok(IntervalOpen::open(cprime(&s0).to_rational(), cprime(&s1).to_rational()))
}

/// Outcome of [`verify_factorization`]: the checks and the covering family.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub report: Report,
    pub family: Vec<(SignWord, IntervalOpen)>,
}

/// Factors every minimal member `u` of `U` with `|u| ≤ depth` (a member
/// whose parent is not one) and checks that `↑u ≤ c*(V)`, exactly and at
/// some approximant depth; that every word of length at most `depth` in
/// `c*(V)` is in `U`; that the family covers every member up to `depth`;
/// and, when `truth` is the interval with `U = c*(truth)`, that
/// `V ≤ truth`.
pub fn verify_factorization(
    u: &dyn OpenOracle,
    depth: usize,
    truth: Option<&IntervalOpen>,
) -> Factorization {
    let mut found = Section::new("factorization: a witness interval exists");
    let mut covers = Section::new("factorization: up(u) ≤ c*(V)");
    let mut inside = Section::new("factorization: c*(V) ≤ U up to depth");
    let mut sound = Section::new("factorization: V ≤ the true interval");
    let mut family = Vec::new();
    let mut covered = Section::new("factorization: the family covers every member up to depth");
    let members: Vec<SignWord> = SignWord::all_up_to(depth).filter(|t| u.contains(t)).collect();
    let minimal = members.iter().filter(|t| t.is_empty() || !u.contains(&t.parent()));

    for w in minimal {
        let bound = default_bound(w, depth);
        let v = match factor_generator(w, u, bound) {
            Ok(v) => v,
            Err(e) => {
                found.check(false, || format!("u = {w:?}: {e}"));
                continue;
            }
        };
        found.check(true, String::new);
        let approx = cstar_interval(&v).expect("witness endpoints are dyadic");
        let reached = (0..=depth + bound).any(|k| approx.at_depth(k).member(w));
        covers.check(reached && cstar_contains(&v, w).unwrap_or(false), || {
            format!("u = {w:?}, V = {v}")
        });
        for t in SignWord::all_up_to(depth) {
            if cstar_contains(&v, &t).unwrap_or(false) {
                inside.check(u.contains(&t), || format!("u = {w:?}, V = {v}, t = {t:?}"));
            }
        }
        if let Some(truth) = truth {
            sound.check(v.leq(truth), || format!("u = {w:?}, V = {v} not within {truth}"));
        }
        family.push((w.clone(), v));
    }

    for t in &members {
        let hit = family.iter().any(|(_, v)| cstar_contains(v, t).unwrap_or(false));
        covered.check(hit, || format!("t = {t:?}"));
    }

    let mut report = Report::default();
    report.push(found);
    report.push(covers);
    report.push(inside);
    report.push(covered);
    if truth.is_some() {
        report.push(sound);
    }
    Factorization { report, family }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor_opens::{u_star, Side};
    use crate::streams::{u_minus, u_plus};

    fn w(s: &str) -> SignWord {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GeneratedOpen {
        s.parse().unwrap()
    }

    fn oracle(v: &str) -> CstarOracle {
        CstarOracle::new(v.parse().unwrap()).unwrap()
    }

    #[test]
    fn omega_c_examples() {
        assert!(in_omega_c(&g("{_}")));
        assert!(in_omega_c(&g("{}")));
        assert!(!in_omega_c(&g("{+}")));
        assert!(!in_omega_c(&g("{+-,-+}")));
        assert_eq!(omega_c_witness(&g("{+}"), 1, 2), Some(SignWord::empty()));
        assert!(omega_c_witness(&g("{+-,-+}"), 1, 3).is_some());
    }

    #[test]
    fn omega_c_agrees_with_inverse_images() {
        let cells: Vec<SignWord> = SignWord::all_of_len(3).collect();
        for mask in 0u32..(1 << cells.len()) {
            let u = GeneratedOpen::from_words(
                cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c.clone()),
            );
            let brute = u_star(Side::Plus, &u).same_as(&u_star(Side::Minus, &u));
            assert_eq!(in_omega_c(&u), brute, "{u}");
            assert_eq!(in_omega_c(&u), u.is_bottom() || u.is_top(), "{u}");
        }
    }

    #[test]
    fn c_equalizes_the_two_maps() {
        for s in SignWord::all_up_to(8) {
            assert_eq!(u_plus(&s).exact_value(), u_minus(&s).exact_value());
        }
    }

    #[test]
    fn cstar_oracles_are_in_omega_c() {
        for v in ["(0,1]", "(-3/8,1/4)", "[-1,-1/4) u (1/4,1]", "[-1,1)"] {
            let o = oracle(v);
            let probe = o.stabilization_bound().unwrap();
            assert_eq!(omega_c_witness(&o, 6, probe), None, "{v}");
        }
    }

    #[test]
    fn factor_examples() {
        let whole = oracle("[-1,1]");
        assert_eq!(factor_generator(&SignWord::empty(), &whole, 4).unwrap(), IntervalOpen::whole());
        let pos = oracle("(0,1]");
        assert_eq!(factor_generator(&w("++"), &pos, 4).unwrap().to_string(), "(3/8,1]");
        let low = oracle("[-1,1/2)");
        let v = factor_generator(&w("+--"), &low, 8).unwrap();
        assert!(cstar_contains(&v, &w("+--")).unwrap());
        assert!(v.leq(low.interval()));
    }

    #[test]
    fn factor_errors() {
        let pos = oracle("(0,1]");
        assert!(matches!(factor_generator(&w("-"), &pos, 4), Err(Error::NotMember { .. })));
        // not in Ω C: the search runs past the stabilization depth
        let bad = g("{++}");
        match factor_generator(&w("++"), &bad, 5) {
            Err(Error::WitnessBoundExhausted { conclusive, .. }) => assert!(conclusive),
            other => panic!("{other:?}"),
        }
        match factor_generator(&w("++"), &bad, 1) {
            Err(Error::WitnessBoundExhausted { conclusive, .. }) => assert!(!conclusive),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verification_examples() {
        let pos: IntervalOpen = "(0,1]".parse().unwrap();
        let f = verify_factorization(&oracle("(0,1]"), 3, Some(&pos));
        assert!(f.report.passed(), "{}", f.report);
        assert!(f.family.iter().any(|(_, v)| v.to_string() == "(3/8,1]"));

        let f = verify_factorization(&oracle("[-1,1]"), 3, None);
        assert!(f.family.iter().all(|(_, v)| v.is_whole()));

        let split: IntervalOpen = "[-1,0) u (0,1]".parse().unwrap();
        let f = verify_factorization(&oracle("[-1,0) u (0,1]"), 4, Some(&split));
        assert!(f.report.passed(), "{}", f.report);
        let zero = num_rational::BigRational::from_integer(0.into());
        assert!(f.family.iter().all(|(_, v)| !v.contains(&zero)));
    }
}
