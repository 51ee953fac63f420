//! Finite sign words and the decidable order relations on them.
//!
//! A [`SignWord`] is a finite sequence over `{-, +}`. Positions are 1-based,
//! matching the reading of a word as the leading digits of a binary expansion
//! where digit `i` carries weight `2^-i`.
//!
//! The relations here are all decided by a single left-to-right scan:
//!
//! | function        | meaning                                              |
//! |-----------------|------------------------------------------------------|
//! | [`is_prefix`]   | `s` is an initial segment of `t`                     |
//! | [`lt`]          | at the first difference `s` has `-` and `t` has `+`  |
//! | [`lexl`]        | `lt(s,t)` or `s` prefixes `t`                        |
//! | [`lexu`]        | `lt(s,t)` or `t` prefixes `s`                        |
//! | [`overlap`]     | the left hook of `s` and right hook of `t` cover all |
//! | [`lmid`]        | every stream through `t` evaluates above `s`         |
//! | [`midl`]        | every stream through `t` evaluates below `s`         |

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One binary digit, read as `-1` or `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Minus),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A finite word over `{-, +}`; the empty word is allowed.
///
/// The derived `Ord` is the lexicographic order with `-` before `+` and a
/// prefix before its extensions, which coincides with [`lexl`]. It is used for
/// deterministic container ordering.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignWord(Vec<Sign>);

impl SignWord {
    pub fn empty() -> Self {
        SignWord(Vec::new())
    }

    pub fn from_signs(signs: impl IntoIterator<Item = Sign>) -> Self {
        SignWord(signs.into_iter().collect())
    }

    /// `sign` repeated `n` times.
    pub fn repeat(sign: Sign, n: usize) -> Self {
        SignWord(vec![sign; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Digit at 1-based position `i`.
    pub fn digit(&self, i: usize) -> Option<Sign> {
        if i == 0 {
            None
        } else {
            self.0.get(i - 1).copied()
        }
    }

    pub fn last(&self) -> Option<Sign> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<Sign> {
        self.0.first().copied()
    }

    /// The word followed by one more digit.
    pub fn with(&self, sign: Sign) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(sign);
        SignWord(v)
    }

    pub fn concat(&self, other: &SignWord) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        SignWord(v)
    }

    /// Appends `sign^n`.
    pub fn with_run(&self, sign: Sign, n: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + n);
        v.extend_from_slice(&self.0);
        v.extend(std::iter::repeat_n(sign, n));
        SignWord(v)
    }

    /// The first `n` digits (the whole word if it is shorter).
    pub fn truncate(&self, n: usize) -> Self {
        SignWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Drops the first digit; the empty word stays empty.
    pub fn tail(&self) -> Self {
        SignWord(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    /// Drops the last digit; the empty word stays empty.
    pub fn parent(&self) -> Self {
        let n = self.0.len().saturating_sub(1);
        SignWord(self.0[..n].to_vec())
    }

    /// Flips every digit.
    pub fn swap(&self) -> Self {
        SignWord(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn contains(&self, sign: Sign) -> bool {
        self.0.contains(&sign)
    }

    /// Every word of length exactly `n`, in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = SignWord> {
        assert!(n < usize::BITS as usize, "word length {n} too large to enumerate");
        (0..(1usize << n)).map(move |bits| {
            SignWord(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 1 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    /// Every word of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = SignWord> {
        (0..=max_len).flat_map(SignWord::all_of_len)
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &SignWord) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for SignWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| {
                Sign::from_char(c).ok_or_else(|| Error::Parse {
                    what: "word",
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignWord)
    }
}

impl FromIterator<Sign> for SignWord {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Self {
        SignWord(iter.into_iter().collect())
    }
}

/// Where two words first part ways.
enum Divergence {
    /// `s` has `-` and `t` has `+` at this 0-based index.
    Below(usize),
    /// `s` has `+` and `t` has `-` where they first differ.
    Above,
    /// One is a prefix of the other.
    Comparable,
}

fn diverge(s: &SignWord, t: &SignWord) -> Divergence {
    let i = s.common_prefix_len(t);
    match (s.0.get(i), t.0.get(i)) {
        (Some(Sign::Minus), Some(Sign::Plus)) => Divergence::Below(i),
        (Some(Sign::Plus), Some(Sign::Minus)) => Divergence::Above,
        _ => Divergence::Comparable,
    }
}

pub fn is_prefix(s: &SignWord, t: &SignWord) -> bool {
    t.0.starts_with(&s.0)
}

/// `s < t`: some `u` has `u-` prefixing `s` and `u+` prefixing `t`.
pub fn lt(s: &SignWord, t: &SignWord) -> bool {
    matches!(diverge(s, t), Divergence::Below(_))
}

/// Lexicographic order, `-` before `+`, prefixes first.
pub fn lexl(s: &SignWord, t: &SignWord) -> bool {
    lt(s, t) || is_prefix(s, t)
}

/// Dual lexicographic order: `lt(s,t)` or `t` is a prefix of `s`.
pub fn lexu(s: &SignWord, t: &SignWord) -> bool {
    lt(s, t) || is_prefix(t, s)
}

/// `{ t+ : t- ⊑ s }`, sorted by length. Each is minimal among words above `s`.
pub fn right_bristles(s: &SignWord) -> Vec<SignWord> {
    bristles(s, Sign::Minus)
}

/// `{ t- : t+ ⊑ s }`, sorted by length.
pub fn left_bristles(s: &SignWord) -> Vec<SignWord> {
    bristles(s, Sign::Plus)
}

fn bristles(s: &SignWord, turn: Sign) -> Vec<SignWord> {
    s.0.iter()
        .enumerate()
        .filter(|(_, &d)| d == turn)
        .map(|(i, &d)| {
            let mut v = s.0[..i].to_vec();
            v.push(d.flip());
            SignWord(v)
        })
        .collect()
}

/// `s ≬ t`: `t < s`, or the two are prefix-comparable, or `s = u-+^k` and
/// `t = u+-^l` for some `u, k, l`.
pub fn overlap(s: &SignWord, t: &SignWord) -> bool {
    match diverge(s, t) {
        Divergence::Comparable | Divergence::Above => true,
        Divergence::Below(i) => {
            s.0[i + 1..].iter().all(|&d| d == Sign::Plus)
                && t.0[i + 1..].iter().all(|&d| d == Sign::Minus)
        }
    }
}

/// `s ⊲ t`: `s < t`, or `s+-^k+ ⊑ t` for some `k ≥ 0`.
pub fn lmid(s: &SignWord, t: &SignWord) -> bool {
    beyond(s, t, Sign::Plus)
}

/// `t ⊳ s`: `t < s`, or `s-+^k- ⊑ t` for some `k ≥ 0`.
pub fn midl(t: &SignWord, s: &SignWord) -> bool {
    beyond(s, t, Sign::Minus)
}

// `t` lies strictly on the `dir` side of `s` for every extension: either it
// diverges from `s` towards `dir`, or it extends `s` by `dir` and then
// contains `dir` at least once more.
fn beyond(s: &SignWord, t: &SignWord, dir: Sign) -> bool {
    match diverge(s, t) {
        Divergence::Below(_) => dir == Sign::Plus,
        Divergence::Above => dir == Sign::Minus,
        Divergence::Comparable => {
            is_prefix(s, t)
                && t.0.get(s.len()) == Some(&dir)
                && t.0[s.len() + 1..].contains(&dir)
        }
    }
}

/// Member of `S_↱` or `S_↰`: a word, or an adjoined bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SElement {
    Bottom,
    Word(SignWord),
}

impl SElement {
    pub fn word(w: SignWord) -> Self {
        SElement::Word(w)
    }

    pub fn as_word(&self) -> Option<&SignWord> {
        match self {
            SElement::Bottom => None,
            SElement::Word(w) => Some(w),
        }
    }

    pub fn swap(&self) -> Self {
        match self {
            SElement::Bottom => SElement::Bottom,
            SElement::Word(w) => SElement::Word(w.swap()),
        }
    }

    /// Bottom followed by every word of length at most `max_len`.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = SElement> {
        std::iter::once(SElement::Bottom).chain(SignWord::all_up_to(max_len).map(SElement::Word))
    }
}

impl From<SignWord> for SElement {
    fn from(w: SignWord) -> Self {
        SElement::Word(w)
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SElement::Bottom => write!(f, "bot"),
            SElement::Word(w) if w.is_empty() => write!(f, "_"),
            SElement::Word(w) => write!(f, "{w}"),
        }
    }
}

impl FromStr for SElement {
    type Err = Error;

    /// `bot` for bottom, `_` or the empty string for ε, otherwise a word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bot" | "⊥" => Ok(SElement::Bottom),
            "_" => Ok(SElement::Word(SignWord::empty())),
            w => w.parse().map(SElement::Word),
        }
    }
}

/// Which of the two totally ordered lattices on `2* ∪ {⊥}` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SLattice {
    /// `S_↱`: words ordered by the reverse of [`lexl`]; ε is top.
    Right,
    /// `S_↰`: words ordered by [`lexu`]; ε is top.
    Left,
}

/// Order of the chosen lattice, bottom least.
pub fn s_leq(a: &SElement, b: &SElement, lattice: SLattice) -> bool {
    match (a, b) {
        (SElement::Bottom, _) => true,
        (SElement::Word(_), SElement::Bottom) => false,
        (SElement::Word(x), SElement::Word(y)) => match lattice {
            SLattice::Right => lexl(y, x),
            SLattice::Left => lexu(x, y),
        },
    }
}

pub fn s_cmp(a: &SElement, b: &SElement, lattice: SLattice) -> Ordering {
    match (s_leq(a, b, lattice), s_leq(b, a, lattice)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

pub fn s_meet(a: &SElement, b: &SElement, lattice: SLattice) -> SElement {
    if s_leq(a, b, lattice) {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn s_join(a: &SElement, b: &SElement, lattice: SLattice) -> SElement {
    if s_leq(a, b, lattice) {
        b.clone()
    } else {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SignWord {
        s.parse().unwrap()
    }

    fn e(s: &str) -> SElement {
        s.parse().unwrap()
    }

    #[test]
    fn prefix_examples() {
        assert!(is_prefix(&w(""), &w("+-")));
        assert!(is_prefix(&w("-+"), &w("-+-")));
        assert!(!is_prefix(&w("+"), &w("-+")));
    }

    #[test]
    fn order_examples() {
        assert!(lt(&w("-+"), &w("+")));
        assert!(lt(&w("+-+"), &w("++")));
        assert!(!lt(&w("-+"), &w("-+-")));

        assert!(lexl(&w("-+"), &w("-+-")));
        assert!(lexl(&w("-+-"), &w("+")));
        assert!(!lexl(&w("+"), &w("-")));

        assert!(lexu(&w("-+-"), &w("-+")));
        assert!(lexu(&w("--"), &w("+")));
        assert!(!lexu(&w(""), &w("+")));
    }

    #[test]
    fn bristle_examples() {
        assert_eq!(right_bristles(&w("-+-")), vec![w("+"), w("-++")]);
        assert!(right_bristles(&w("")).is_empty());
        assert_eq!(right_bristles(&w("--")), vec![w("+"), w("-+")]);

        assert_eq!(left_bristles(&w("+")), vec![w("-")]);
        assert_eq!(left_bristles(&w("-+-")), vec![w("--")]);
        assert!(left_bristles(&w("--")).is_empty());
    }

    #[test]
    fn overlap_examples() {
        assert!(overlap(&w("-+"), &w("+-")));
        assert!(overlap(&w("+"), &w("++")));
        assert!(!overlap(&w("--"), &w("+")));
    }

    #[test]
    fn lmid_midl_examples() {
        assert!(lmid(&w(""), &w("+-+")));
        assert!(lmid(&w("-+"), &w("+")));
        assert!(!lmid(&w(""), &w("+-")));

        assert!(midl(&w("+--"), &w("+")));
        assert!(!midl(&w("-+-"), &w("-")));
        assert!(midl(&w("-"), &w("+")));
    }

    #[test]
    fn s_lattice_examples() {
        assert_eq!(s_meet(&e("bot"), &e("+"), SLattice::Right), e("bot"));
        assert_eq!(s_join(&e("+-"), &e("++"), SLattice::Right), e("+-"));
        assert_eq!(s_join(&e("-"), &e("+"), SLattice::Left), e("+"));
        // ε is top of both
        for x in SElement::all_up_to(4) {
            assert!(s_leq(&x, &e("_"), SLattice::Right));
            assert!(s_leq(&x, &e("_"), SLattice::Left));
        }
    }

    #[test]
    fn parse_rejects_foreign_characters() {
        assert!("+-x".parse::<SignWord>().is_err());
        assert!("+0".parse::<SignWord>().is_err());
        assert_eq!("".parse::<SignWord>().unwrap(), SignWord::empty());
    }

    #[test]
    fn digits_are_one_based() {
        let s = w("+-");
        assert_eq!(s.digit(0), None);
        assert_eq!(s.digit(1), Some(Sign::Plus));
        assert_eq!(s.digit(2), Some(Sign::Minus));
        assert_eq!(s.digit(3), None);
    }

    #[test]
    fn trichotomy() {
        let words: Vec<_> = SignWord::all_up_to(8).collect();
        for s in &words {
            for t in words.iter().step_by(7) {
                let cases = [
                    lt(s, t),
                    lt(t, s),
                    is_prefix(s, t) || is_prefix(t, s),
                ];
                assert_eq!(cases.iter().filter(|&&b| b).count(), 1, "{s:?} {t:?}");
            }
        }
    }

    #[test]
    fn lex_orders_are_total_orders() {
        let words: Vec<_> = SignWord::all_up_to(5).collect();
        for order in [lexl, lexu] {
            for s in &words {
                assert!(order(s, s));
                for t in &words {
                    assert!(order(s, t) || order(t, s));
                    if order(s, t) && order(t, s) {
                        assert_eq!(s, t);
                    }
                    for u in &words {
                        if order(s, t) && order(t, u) {
                            assert!(order(s, u), "{s:?} {t:?} {u:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bristles_are_minimal_words_above() {
        for s in SignWord::all_up_to(6) {
            let rb = right_bristles(&s);
            // antichain
            for a in &rb {
                for b in &rb {
                    assert!(a == b || !(is_prefix(a, b) || is_prefix(b, a)));
                }
            }
            // every word above s has exactly one bristle as a prefix
            for u in SignWord::all_up_to(7) {
                let hits = rb.iter().filter(|b| is_prefix(b, &u)).count();
                assert_eq!(hits, usize::from(lt(&s, &u)), "{s:?} {u:?}");
            }
            // left bristles are the swapped right bristles of the swap
            let mut lb: Vec<_> = right_bristles(&s.swap()).iter().map(SignWord::swap).collect();
            lb.sort_by_key(SignWord::len);
            assert_eq!(left_bristles(&s), lb);
        }
    }

    #[test]
    fn overlap_is_up_closed() {
        let words: Vec<_> = SignWord::all_up_to(6).collect();
        let pairs: Vec<_> = words
            .iter()
            .flat_map(|s| words.iter().map(move |t| (s, t)))
            .filter(|(s, t)| overlap(s, t))
            .collect();
        for (s, t) in pairs {
            for s2 in words.iter().filter(|s2| lexu(s, s2)) {
                for t2 in words.iter().filter(|t2| lexl(t2, t)) {
                    assert!(overlap(s2, t2), "{s:?} {t:?} -> {s2:?} {t2:?}");
                }
            }
        }
    }

    #[test]
    fn lmid_midl_swap_duality() {
        let words: Vec<_> = SignWord::all_up_to(6).collect();
        for s in &words {
            for t in &words {
                assert_eq!(lmid(s, t), midl(&t.swap(), &s.swap()));
            }
        }
    }

    #[test]
    fn lmid_matches_definition_by_search() {
        // s ⊲ t iff s < t or some s+-^k+ prefixes t
        for s in SignWord::all_up_to(4) {
            for t in SignWord::all_up_to(7) {
                let by_search = lt(&s, &t)
                    || (0..=t.len()).any(|k| {
                        is_prefix(
                            &s.with(Sign::Plus).with_run(Sign::Minus, k).with(Sign::Plus),
                            &t,
                        )
                    });
                assert_eq!(lmid(&s, &t), by_search, "{s:?} {t:?}");
            }
        }
    }

    #[test]
    fn overlap_matches_definition_by_search() {
        for s in SignWord::all_up_to(5) {
            for t in SignWord::all_up_to(5) {
                let mut form_iv = false;
                for u in SignWord::all_up_to(4) {
                    for k in 0..=5 {
                        for l in 0..=5 {
                            if s == u.with(Sign::Minus).with_run(Sign::Plus, k)
                                && t == u.with(Sign::Plus).with_run(Sign::Minus, l)
                            {
                                form_iv = true;
                            }
                        }
                    }
                }
                let expected =
                    lt(&t, &s) || is_prefix(&t, &s) || is_prefix(&s, &t) || form_iv;
                assert_eq!(overlap(&s, &t), expected, "{s:?} {t:?}");
            }
        }
    }
}
