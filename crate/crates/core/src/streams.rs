//! Infinite digit streams over `{-,+}` and `{-,0,+}`.
//!
//! A stream is backed either by an eventually periodic closed form
//! `prefix(period)`, which supports exact evaluation, or by a producer rule
//! `n ↦ digit n` with an internal memo. The memo is a pure cache behind a
//! mutex, so streams are `Send + Sync` and digits never change once read.
//!
//! Operations that combine streams are causal: digit `n` of the result reads
//! only digits `1..=n+1` of the inputs (`n+1` for `tail`).

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::{Dyadic, FormalBall, PosRational};
use crate::error::{Error, Result};
use crate::words::{Sign, SignWord};

/// A digit with an integer weight in `{-1, 0, 1}`.
pub trait Digit: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn value(self) -> i8;
    fn to_char(self) -> char;
    fn from_char(c: char) -> Option<Self>;
}

impl Digit for Sign {
    fn value(self) -> i8 {
        Sign::value(self)
    }
    fn to_char(self) -> char {
        Sign::to_char(self)
    }
    fn from_char(c: char) -> Option<Self> {
        Sign::from_char(c)
    }
}

/// Signed binary digit `-1`, `0` or `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trit {
    Minus,
    Zero,
    Plus,
}

impl From<Sign> for Trit {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Minus => Trit::Minus,
            Sign::Plus => Trit::Plus,
        }
    }
}

impl Digit for Trit {
    fn value(self) -> i8 {
        match self {
            Trit::Minus => -1,
            Trit::Zero => 0,
            Trit::Plus => 1,
        }
    }
    fn to_char(self) -> char {
        match self {
            Trit::Minus => '-',
            Trit::Zero => '0',
            Trit::Plus => '+',
        }
    }
    fn from_char(c: char) -> Option<Self> {
        match c {
            '-' => Some(Trit::Minus),
            '0' => Some(Trit::Zero),
            '+' => Some(Trit::Plus),
            _ => None,
        }
    }
}

/// `prefix · period^ω` in normal form: the period is primitive and the
/// prefix does not end with the period's last digit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClosedForm<D> {
    prefix: Vec<D>,
    period: Vec<D>,
}

impl<D: Digit> ClosedForm<D> {
    pub fn new(prefix: Vec<D>, period: Vec<D>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse {
                what: "stream",
                input: render(&prefix, &period),
                reason: "period must be nonempty".into(),
            });
        }
        let mut prefix = prefix;
        let mut period = primitive_root(period);
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(ClosedForm { prefix, period })
    }

    pub fn prefix(&self) -> &[D] {
        &self.prefix
    }

    pub fn period(&self) -> &[D] {
        &self.period
    }

    fn digit(&self, n: usize) -> D {
        debug_assert!(n >= 1);
        let i = n - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Same stream written with a prefix of length `p` and a period of
    /// length `l`; `p` must be at least the normal prefix length and `l` a
    /// multiple of the normal period length.
    fn unrolled(&self, p: usize, l: usize) -> (Vec<D>, Vec<D>) {
        let prefix = (1..=p).map(|n| self.digit(n)).collect();
        let period = (p + 1..=p + l).map(|n| self.digit(n)).collect();
        (prefix, period)
    }

    fn head_tail(&self) -> (D, ClosedForm<D>) {
        if let Some((&h, rest)) = self.prefix.split_first() {
            let cf = ClosedForm::new(rest.to_vec(), self.period.clone()).expect("nonempty period");
            (h, cf)
        } else {
            let mut period = self.period.clone();
            let h = period[0];
            period.rotate_left(1);
            (h, ClosedForm::new(Vec::new(), period).expect("nonempty period"))
        }
    }

    /// The exact value `Σ dᵢ 2^-i` as a rational.
    pub fn value(&self) -> BigRational {
        let pre = word_value(&self.prefix);
        let per = word_value(&self.period);
        let l = self.period.len();
        let scale = BigRational::new(BigInt::one(), BigInt::one() << self.prefix.len());
        let geometric = BigRational::new(BigInt::one() << l, (BigInt::one() << l) - 1);
        pre.to_rational() + scale * per.to_rational() * geometric
    }
}

fn primitive_root<D: Digit>(period: Vec<D>) -> Vec<D> {
    let l = period.len();
    for p in 1..l {
        if l.is_multiple_of(p) && (0..l).all(|i| period[i] == period[i % p]) {
            return period[..p].to_vec();
        }
    }
    period
}

fn word_value<D: Digit>(digits: &[D]) -> Dyadic {
    let mut acc = BigInt::zero();
    for &d in digits {
        acc <<= 1u32;
        acc += i64::from(d.value());
    }
    Dyadic::new(acc, digits.len() as u32)
}

fn render<D: Digit>(prefix: &[D], period: &[D]) -> String {
    let mut s: String = prefix.iter().map(|d| d.to_char()).collect();
    s.push('(');
    s.extend(period.iter().map(|d| d.to_char()));
    s.push(')');
    s
}

type Rule<D> = Box<dyn Fn(usize) -> D + Send + Sync>;

struct Producer<D> {
    rule: Rule<D>,
    memo: Mutex<Vec<D>>,
}

enum Repr<D> {
    Closed(ClosedForm<D>),
    Producer(Producer<D>),
}

/// A productive infinite stream of digits, indexed from 1.
pub struct Stream<D: Digit> {
    inner: Arc<Repr<D>>,
}

pub type SignStream = Stream<Sign>;
pub type TritStream = Stream<Trit>;

impl<D: Digit> Clone for Stream<D> {
    fn clone(&self) -> Self {
        Stream {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<D: Digit> Stream<D> {
    pub fn from_closed_form(cf: ClosedForm<D>) -> Self {
        Stream {
            inner: Arc::new(Repr::Closed(cf)),
        }
    }

    pub fn periodic(prefix: Vec<D>, period: Vec<D>) -> Result<Self> {
        ClosedForm::new(prefix, period).map(Stream::from_closed_form)
    }

    /// `d^ω`.
    pub fn constant(d: D) -> Self {
        Stream::periodic(Vec::new(), vec![d]).expect("nonempty period")
    }

    /// A producer-backed stream. `rule(n)` must return for every `n ≥ 1`
    /// and always give the same digit for the same `n`.
    pub fn from_fn(rule: impl Fn(usize) -> D + Send + Sync + 'static) -> Self {
        Stream {
            inner: Arc::new(Repr::Producer(Producer {
                rule: Box::new(rule),
                memo: Mutex::new(Vec::new()),
            })),
        }
    }

    pub fn closed_form(&self) -> Option<&ClosedForm<D>> {
        match &*self.inner {
            Repr::Closed(cf) => Some(cf),
            Repr::Producer(_) => None,
        }
    }

    /// Digit at 1-based position `n`.
    pub fn digit(&self, n: usize) -> D {
        assert!(n >= 1, "stream digits are indexed from 1");
        match &*self.inner {
            Repr::Closed(cf) => cf.digit(n),
            Repr::Producer(p) => {
                let mut memo = p.memo.lock().unwrap_or_else(|e| e.into_inner());
                while memo.len() < n {
                    let next = (p.rule)(memo.len() + 1);
                    memo.push(next);
                }
                memo[n - 1]
            }
        }
    }

    /// The first `n` digits.
    pub fn take(&self, n: usize) -> Vec<D> {
        (1..=n).map(|i| self.digit(i)).collect()
    }

    pub fn cons(&self, d: D) -> Self {
        match self.closed_form() {
            Some(cf) => {
                let mut prefix = Vec::with_capacity(cf.prefix.len() + 1);
                prefix.push(d);
                prefix.extend_from_slice(&cf.prefix);
                Stream::periodic(prefix, cf.period.clone()).expect("nonempty period")
            }
            None => {
                let s = self.clone();
                Stream::from_fn(move |n| if n == 1 { d } else { s.digit(n - 1) })
            }
        }
    }

    pub fn head(&self) -> D {
        self.digit(1)
    }

    pub fn tail(&self) -> Self {
        match self.closed_form() {
            Some(cf) => Stream::from_closed_form(cf.head_tail().1),
            None => {
                let s = self.clone();
                Stream::from_fn(move |n| s.digit(n + 1))
            }
        }
    }

    /// Digitwise image; closed forms stay closed.
    pub fn map<E: Digit>(&self, f: fn(D) -> E) -> Stream<E> {
        match self.closed_form() {
            Some(cf) => Stream::periodic(
                cf.prefix.iter().map(|&d| f(d)).collect(),
                cf.period.iter().map(|&d| f(d)).collect(),
            )
            .expect("nonempty period"),
            None => {
                let s = self.clone();
                Stream::from_fn(move |n| f(s.digit(n)))
            }
        }
    }

    /// Digitwise combination; digit `n` of the result reads digit `n` of
    /// each input. Two closed forms give a closed form whose period length
    /// is the lcm of the input periods.
    pub fn zip_with<E: Digit, F: Digit>(&self, other: &Stream<E>, f: fn(D, E) -> F) -> Stream<F> {
        match (self.closed_form(), other.closed_form()) {
            (Some(a), Some(b)) => {
                let p = a.prefix.len().max(b.prefix.len());
                let l = a.period.len().lcm(&b.period.len());
                let (ap, aq) = a.unrolled(p, l);
                let (bp, bq) = b.unrolled(p, l);
                Stream::periodic(
                    ap.into_iter().zip(bp).map(|(x, y)| f(x, y)).collect(),
                    aq.into_iter().zip(bq).map(|(x, y)| f(x, y)).collect(),
                )
                .expect("nonempty period")
            }
            _ => {
                let (a, b) = (self.clone(), other.clone());
                Stream::from_fn(move |n| f(a.digit(n), b.digit(n)))
            }
        }
    }

    /// `(Σ_{i≤n} dᵢ 2^-i, 2^-n)`; the value of the stream lies in the
    /// closed ball.
    pub fn approximant(&self, n: usize) -> FormalBall {
        FormalBall::new(word_value(&self.take(n)), PosRational::pow2_neg(n as u32))
    }

    /// Exact value of an eventually periodic stream.
    pub fn exact_value(&self) -> Result<BigRational> {
        self.closed_form().map(ClosedForm::value).ok_or(Error::NoClosedForm)
    }
}

impl Stream<Sign> {
    /// `half(±s) = ±∓s`.
    pub fn half(&self) -> Self {
        match self.closed_form() {
            Some(cf) => {
                let (h, rest) = cf.head_tail();
                let mut prefix = vec![h, h.flip()];
                prefix.extend_from_slice(&rest.prefix);
                Stream::periodic(prefix, rest.period).expect("nonempty period")
            }
            None => {
                let s = self.clone();
                Stream::from_fn(move |n| match n {
                    1 => s.digit(1),
                    2 => s.digit(1).flip(),
                    _ => s.digit(n - 1),
                })
            }
        }
    }

    /// The inclusion of sign streams into trit streams.
    pub fn embed(&self) -> TritStream {
        self.map(Trit::from)
    }

    /// `w · s`.
    pub fn prepend(&self, w: &SignWord) -> Self {
        w.signs().iter().rev().fold(self.clone(), |acc, &d| acc.cons(d))
    }
}

impl<D: Digit> fmt::Display for Stream<D> {
    /// Closed forms print as `prefix(period)`; producer streams print their
    /// first 24 digits followed by `...`, which is not re-parseable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.closed_form() {
            Some(cf) => write!(f, "{}", render(&cf.prefix, &cf.period)),
            None => {
                let s: String = self.take(24).iter().map(|d| d.to_char()).collect();
                write!(f, "{s}...")
            }
        }
    }
}

impl<D: Digit> fmt::Debug for Stream<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<D: Digit> PartialEq for Stream<D> {
    /// Structural equality of closed forms. Producer streams compare equal
    /// only to themselves.
    fn eq(&self, other: &Self) -> bool {
        match (self.closed_form(), other.closed_form()) {
            (Some(a), Some(b)) => a == b,
            _ => Arc::ptr_eq(&self.inner, &other.inner),
        }
    }
}

impl<D: Digit> FromStr for Stream<D> {
    type Err = Error;

    /// `prefix(period)`, e.g. `+-(-+)`; `(p)` is purely periodic.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "stream",
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        let (prefix, rest) = t
            .split_once('(')
            .ok_or_else(|| err("expected prefix(period)".into()))?;
        let period = rest
            .strip_suffix(')')
            .ok_or_else(|| err("missing closing ')'".into()))?;
        let digits = |part: &str| {
            part.chars()
                .map(|c| D::from_char(c).ok_or_else(|| err(format!("unexpected character {c:?}"))))
                .collect::<Result<Vec<D>>>()
        };
        let (prefix, period) = (digits(prefix)?, digits(period)?);
        if period.is_empty() {
            return Err(err("period must be nonempty".into()));
        }
        Stream::periodic(prefix, period)
    }
}

/// `(c′(s|n), 2^-n)`.
pub fn approximant(s: &SignStream, n: usize) -> FormalBall {
    s.approximant(n)
}

/// Evaluation of a trit stream to `n` digits.
pub fn trit_approximant(s: &TritStream, n: usize) -> FormalBall {
    s.approximant(n)
}

/// `u₋(s) = s+-^ω`.
pub fn u_minus(s: &SignWord) -> SignStream {
    Stream::periodic(s.with(Sign::Plus).signs().to_vec(), vec![Sign::Minus])
        .expect("nonempty period")
}

/// `u₊(s) = s-+^ω`.
pub fn u_plus(s: &SignWord) -> SignStream {
    Stream::periodic(s.with(Sign::Minus).signs().to_vec(), vec![Sign::Plus])
        .expect("nonempty period")
}

/// Sequence midpoint: agreeing digits pass through, disagreeing ones give 0.
pub fn m_s(s1: &SignStream, s2: &SignStream) -> TritStream {
    s1.zip_with(s2, |a, b| if a == b { Trit::from(a) } else { Trit::Zero })
}

/// Midpoint on trit streams with one digit of lookahead: digit `n` of the
/// result reads digits `1..=n+1` of each input. Closed forms give a closed
/// form.
pub fn mid(x: &TritStream, y: &TritStream) -> TritStream {
    // Carry bookkeeping in quarters: after emitting k digits the remainder
    // is w/4 plus a tail in [-1/2, 1/2], with w kept in [-2, 2].
    fn step(w: i8, next: i8) -> (Trit, i8) {
        let v = 2 * w + next;
        if v > 2 {
            (Trit::Plus, v - 4)
        } else if v < -2 {
            (Trit::Minus, v + 4)
        } else {
            (Trit::Zero, v)
        }
    }
    let pair = |n: usize| x.digit(n).value() + y.digit(n).value();

    if let (Some(a), Some(b)) = (x.closed_form(), y.closed_form()) {
        let p = a.prefix.len().max(b.prefix.len());
        let l = a.period.len().lcm(&b.period.len());
        let mut seen = std::collections::HashMap::new();
        let mut out = Vec::new();
        let mut w = pair(1);
        for k in 0.. {
            if k >= p {
                if let Some(&start) = seen.get(&(w, (k - p) % l)) {
                    let period = out.split_off(start);
                    return Stream::periodic(out, period).expect("nonempty period");
                }
                seen.insert((w, (k - p) % l), k);
            }
            let (o, next) = step(w, pair(k + 2));
            out.push(o);
            w = next;
        }
        unreachable!("finitely many carry states");
    }

    let (x, y) = (x.clone(), y.clone());
    Stream::from_fn(move |n| {
        let pair = |i: usize| x.digit(i).value() + y.digit(i).value();
        let mut w = pair(1);
        let mut o = Trit::Zero;
        for k in 0..n {
            (o, w) = step(w, pair(k + 2));
        }
        o
    })
}

/// `s · d^ω` for a finite word.
pub fn pad(s: &SignWord, d: Sign) -> SignStream {
    Stream::constant(d).prepend(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{cprime, parse_rational};

    fn ss(s: &str) -> SignStream {
        s.parse().unwrap()
    }

    fn ts(s: &str) -> TritStream {
        s.parse().unwrap()
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn closed_forms_normalize() {
        assert_eq!(ss("+-(+-)").to_string(), "(+-)");
        assert_eq!(ss("(++)").to_string(), "(+)");
        assert_eq!(ss("+(-+)").to_string(), "(+-)");
        assert_eq!(ss("-(+-)"), ss("(-+)"));
        assert!("+(".parse::<SignStream>().is_err());
        assert!("+()".parse::<SignStream>().is_err());
        assert!("+(0)".parse::<SignStream>().is_err());
        assert!("+-".parse::<SignStream>().is_err());
    }

    #[test]
    fn cons_and_tail() {
        assert_eq!(ss("+(-)").tail(), ss("(-)"));
        assert_eq!(ss("(+)").cons(Sign::Minus).to_string(), "-(+)");
        assert_eq!(ss("(+-)").tail().to_string(), "(-+)");
    }

    #[test]
    fn approximant_examples() {
        let a = ss("(+)").approximant(3);
        assert_eq!(a.center, "7/8".parse().unwrap());
        assert_eq!(a.radius, "1/8".parse().unwrap());
        let b = ss("(+-)").approximant(2);
        assert_eq!(b.center, "1/4".parse().unwrap());
        assert_eq!(b.radius, "1/4".parse().unwrap());
        assert_eq!(ss("-(+)").approximant(0), FormalBall::unit());
    }

    #[test]
    fn exact_value_examples() {
        assert_eq!(ss("(+)").exact_value().unwrap(), q("1"));
        assert_eq!(ss("+(-)").exact_value().unwrap(), q("0"));
        assert_eq!(ss("(+-)").exact_value().unwrap(), q("1/3"));
        let producer = Stream::from_fn(|_| Sign::Plus);
        assert_eq!(producer.exact_value(), Err(Error::NoClosedForm));
    }

    #[test]
    fn half_examples() {
        assert_eq!(ss("+(+)").half().to_string(), "+-(+)");
        assert_eq!(ss("-(+-)").half(), ss("-+(+-)"));
        assert_eq!(ss("-(+-)").half().exact_value().unwrap(), q("-1/6"));
        assert_eq!(ss("+(-)").half().to_string(), "+(-)");
        assert_eq!(ss("+(-)").half().exact_value().unwrap(), q("0"));
    }

    #[test]
    fn u_plus_minus_examples() {
        assert_eq!(u_minus(&SignWord::empty()).to_string(), "+(-)");
        assert_eq!(u_plus(&"+".parse().unwrap()).to_string(), "+-(+)");
        for s in SignWord::all_up_to(6) {
            let c = cprime(&s).to_rational();
            assert_eq!(u_minus(&s).exact_value().unwrap(), c);
            assert_eq!(u_plus(&s).exact_value().unwrap(), c);
        }
    }

    #[test]
    fn embed_examples() {
        assert_eq!(ss("(+)").embed(), ts("(+)"));
        assert_eq!(ss("+(-)").embed(), ts("+(-)"));
    }

    #[test]
    fn m_s_examples() {
        assert_eq!(m_s(&ss("(+)"), &ss("(-)")), ts("(0)"));
        assert_eq!(m_s(&ss("(+)"), &ss("(+)")), ts("(+)"));
        let m = m_s(&ss("+(-)"), &ss("(+)"));
        assert_eq!(m, ts("+(0)"));
        assert_eq!(m.exact_value().unwrap(), q("1/2"));
    }

    #[test]
    fn trit_approximant_examples() {
        let z = trit_approximant(&ts("(0)"), 5);
        assert_eq!(z.center, Dyadic::zero());
        assert_eq!(z.radius, "1/32".parse().unwrap());
        let a = trit_approximant(&ts("+0(-)"), 2);
        assert_eq!(a.center, "1/2".parse().unwrap());
        assert_eq!(a.radius, "1/4".parse().unwrap());
    }

    #[test]
    fn producer_operations_are_causal() {
        use std::sync::atomic::{AtomicUsize, Ordering};
        let reads = Arc::new(AtomicUsize::new(0));
        let r = Arc::clone(&reads);
        let a = Stream::from_fn(move |n| {
            r.fetch_max(n, Ordering::SeqCst);
            if n % 3 == 0 { Sign::Plus } else { Sign::Minus }
        });
        let b = ss("(+-)");
        let m = m_s(&a, &b);
        m.take(7);
        assert_eq!(reads.load(Ordering::SeqCst), 7);
        assert_eq!(m.take(4), vec![Trit::Zero, Trit::Minus, Trit::Plus, Trit::Minus]);
    }

    #[test]
    fn producer_and_closed_forms_agree() {
        let cf = ss("+-(+--)");
        let prod = {
            let c = cf.clone();
            Stream::from_fn(move |n| c.digit(n))
        };
        assert_eq!(prod.half().take(30), cf.half().take(30));
        assert_eq!(prod.tail().take(30), cf.tail().take(30));
        assert_eq!(prod.cons(Sign::Plus).take(30), cf.cons(Sign::Plus).take(30));
        assert_eq!(prod.embed().take(30), cf.embed().take(30));
        assert_eq!(
            m_s(&prod, &ss("(-+)")).take(30),
            m_s(&cf, &ss("(-+)")).take(30)
        );
    }

    #[test]
    fn streams_are_shareable_across_threads() {
        let s = Stream::from_fn(|n| if n.is_power_of_two() { Sign::Plus } else { Sign::Minus });
        let handles: Vec<_> = (0..4)
            .map(|k| {
                let s = s.clone();
                std::thread::spawn(move || s.take(50 + k * 10))
            })
            .collect();
        let outs: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for o in &outs {
            assert_eq!(&o[..50], &outs[0][..50]);
        }
    }

    #[test]
    fn pad_evaluates_to_word_endpoints() {
        let t: SignWord = "+-".parse().unwrap();
        // c(t-^ω) = c′(t) - 2^-|t|
        assert_eq!(pad(&t, Sign::Minus).exact_value().unwrap(), q("0"));
        assert_eq!(pad(&t, Sign::Plus).exact_value().unwrap(), q("1/2"));
    }

    #[test]
    fn trit_midpoint_is_exact_on_closed_forms() {
        let samples = ["(+)", "(-)", "(0)", "+0(-+)", "-(0+-)", "0+(+0)", "(+-0-)"];
        for a in samples {
            for b in samples {
                let (x, y) = (ts(a), ts(b));
                let m = mid(&x, &y);
                assert!(m.closed_form().is_some());
                let expected = (x.exact_value().unwrap() + y.exact_value().unwrap()) / q("2");
                assert_eq!(m.exact_value().unwrap(), expected, "{a} {b}");
            }
        }
        assert_eq!(mid(&ts("(+)"), &ts("(+)")).to_string(), "(+)");
    }

    #[test]
    fn trit_midpoint_producer_matches_closed_form() {
        let (x, y) = (ts("+0(-+0)"), ts("-(+)"));
        let lazy_x = Stream::from_fn({
            let x = x.clone();
            move |n| x.digit(n)
        });
        assert_eq!(mid(&lazy_x, &y).take(40), mid(&x, &y).take(40));
    }
}
