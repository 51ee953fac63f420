//! Exact scalars: dyadic rationals, positive rationals, formal balls, and
//! finite unions of intervals in `[-1,1]`.
//!
//! Centres of formal balls are dyadic while radii may be any positive
//! rational, so the two number types are kept apart. Nothing here uses
//! floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{Sign, SignWord};

/// `numerator / 2^exponent`, normalized so the numerator is odd unless the
/// exponent is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            exponent = 0;
        }
        while exponent > 0 && (&numerator & BigInt::one()).is_zero() {
            numerator >>= 1u32;
            exponent -= 1;
        }
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    pub fn minus_one() -> Self {
        Dyadic::new(-1, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(n, 0)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic::new(1, k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.numerator.is_positive() {
            1
        } else if self.numerator.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn half(&self) -> Self {
        Dyadic::new(self.numerator.clone(), self.exponent + 1)
    }

    pub fn double(&self) -> Self {
        if self.exponent == 0 {
            Dyadic::new(&self.numerator << 1u32, 0)
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent - 1)
        }
    }

    /// `(self + other) / 2`.
    pub fn midpoint(&self, other: &Dyadic) -> Self {
        (self + other).half()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            numerator: self.numerator.abs(),
            exponent: self.exponent,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    /// The rational as a dyadic, if its reduced denominator is a power of two.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let d = q.denom();
        let bits = d.bits();
        if bits == 0 || (BigInt::one() << (bits - 1)) != *d {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), (bits - 1) as u32))
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -&self.numerator,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `a/2^k`, an integer, or `p/q` with `q` a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "dyadic",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if let Some((num, exp)) = t.split_once("/2^") {
            let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
            let exp: u32 = exp.parse().map_err(|_| err("bad exponent"))?;
            return Ok(Dyadic::new(num, exp));
        }
        let q = parse_rational(t).map_err(|_| err("not a rational"))?;
        Dyadic::from_rational(&q).ok_or_else(|| err("denominator is not a power of two"))
    }
}

/// Parses `p/q` or `p` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
        reason: "expected p/q or an integer".to_string(),
    };
    let t = s.trim();
    let q = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| err())?),
    };
    Ok(q)
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A strictly positive rational.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosRational(BigRational);

impl PosRational {
    pub fn new(q: BigRational) -> Result<Self> {
        if q.is_positive() {
            Ok(PosRational(q))
        } else {
            Err(Error::OutOfRange {
                value: format_rational(&q),
                range: "the positive rationals",
            })
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::OutOfRange {
                value: format!("{p}/{q}"),
                range: "the positive rationals",
            });
        }
        PosRational::new(BigRational::new(p.into(), q.into()))
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        PosRational(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn half(&self) -> Self {
        PosRational(&self.0 / BigInt::from(2))
    }

    pub fn midpoint(&self, other: &PosRational) -> Self {
        PosRational((&self.0 + &other.0) / BigInt::from(2))
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl fmt::Debug for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PosRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PosRational::new(parse_rational(s)?)
    }
}

/// Formal open ball with dyadic centre and positive rational radius.
///
/// Balls over the dyadics of `(-1,1)` have centres strictly inside that
/// range; intermediate balls (for example the `(0, 1+ε)` family around the
/// bottom filter) are allowed to leave it, so the constructor does not
/// enforce the range. See [`FormalBall::has_unit_centre`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalBall {
    pub center: Dyadic,
    pub radius: PosRational,
}

impl FormalBall {
    pub fn new(center: Dyadic, radius: PosRational) -> Self {
        FormalBall { center, radius }
    }

    /// The ball `(0,1)` standing for the bottom filter.
    pub fn unit() -> Self {
        FormalBall::new(Dyadic::zero(), PosRational::pow2_neg(0))
    }

    pub fn has_unit_centre(&self) -> bool {
        Dyadic::minus_one() < self.center && self.center < Dyadic::one()
    }

    pub fn lower(&self) -> BigRational {
        self.center.to_rational() - self.radius.value()
    }

    pub fn upper(&self) -> BigRational {
        self.center.to_rational() + self.radius.value()
    }

    /// Whether the closed ball contains `x`.
    pub fn contains_closed(&self, x: &BigRational) -> bool {
        (x - self.center.to_rational()).abs() <= *self.radius.value()
    }
}

impl fmt::Display for FormalBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.center, self.radius)
    }
}

impl FromStr for FormalBall {
    type Err = Error;

    /// Accepts the display form `c ± r`.
    fn from_str(s: &str) -> Result<Self> {
        let (c, r) = s.split_once('±').ok_or_else(|| Error::Parse {
            what: "ball",
            input: s.to_string(),
            reason: "expected centre ± radius".to_string(),
        })?;
        Ok(FormalBall::new(c.parse()?, r.parse()?))
    }
}

impl fmt::Debug for FormalBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.center, self.radius)
    }
}

fn centre_gap(a: &FormalBall, b: &FormalBall) -> BigRational {
    (&b.center - &a.center).abs().to_rational()
}

/// `a ⊂ b`: `|b.center - a.center| + a.radius < b.radius`.
pub fn refines(a: &FormalBall, b: &FormalBall) -> bool {
    centre_gap(a, b) + a.radius.value() < *b.radius.value()
}

/// Non-strict containment `|b.center - a.center| + a.radius ≤ b.radius`.
pub fn contained_in(a: &FormalBall, b: &FormalBall) -> bool {
    centre_gap(a, b) + a.radius.value() <= *b.radius.value()
}

/// A ball strictly between `a` and `b` when `a ⊂ b`.
pub fn interpolate(a: &FormalBall, b: &FormalBall) -> Option<FormalBall> {
    if !refines(a, b) {
        return None;
    }
    let slack = b.radius.value() - centre_gap(a, b);
    let radius = (a.radius.value() + slack) / BigInt::from(2);
    Some(FormalBall::new(
        a.center.clone(),
        PosRational::new(radius).expect("interpolated radius exceeds a positive radius"),
    ))
}

/// `Σ sᵢ 2^-i`, the value of a finite word padded with zeros.
pub fn cprime(s: &SignWord) -> Dyadic {
    let n = s.len();
    let mut acc = BigInt::zero();
    for &d in s.signs() {
        acc <<= 1u32;
        acc += i64::from(d.value());
    }
    Dyadic::new(acc, n as u32)
}

/// The unique word with `cprime(w) = d`, for `-1 < d < 1`.
pub fn cprime_inv(d: &Dyadic) -> Result<SignWord> {
    if !(Dyadic::minus_one() < *d && *d < Dyadic::one()) {
        return Err(Error::OutOfRange {
            value: d.to_string(),
            range: "the open interval (-1,1)",
        });
    }
    let mut digits = Vec::with_capacity(d.exponent() as usize);
    let mut rest = d.clone();
    while !rest.is_zero() {
        let sign = if rest.signum() > 0 { Sign::Plus } else { Sign::Minus };
        digits.push(sign);
        rest = &rest.double() - &Dyadic::from_int(i64::from(sign.value()));
    }
    Ok(SignWord::from_signs(digits))
}

/// Left end of a segment: `[-1` or `(a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Lower {
    ClosedMinusOne,
    Open(BigRational),
}

/// Right end of a segment: `1]` or `b)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Upper {
    ClosedOne,
    Open(BigRational),
}

impl Lower {
    fn key(&self) -> (BigRational, bool) {
        match self {
            Lower::ClosedMinusOne => (-BigRational::one(), false),
            Lower::Open(a) => (a.clone(), true),
        }
    }

    fn canonical(self) -> Self {
        match self {
            Lower::Open(a) if a < -BigRational::one() => Lower::ClosedMinusOne,
            l => l,
        }
    }
}

impl Upper {
    fn key(&self) -> (BigRational, bool) {
        match self {
            Upper::ClosedOne => (BigRational::one(), true),
            Upper::Open(b) => (b.clone(), false),
        }
    }

    fn canonical(self) -> Self {
        match self {
            Upper::Open(b) if b > BigRational::one() => Upper::ClosedOne,
            u => u,
        }
    }
}

fn cmp_lower(a: &Lower, b: &Lower) -> Ordering {
    match (a, b) {
        (Lower::ClosedMinusOne, Lower::ClosedMinusOne) => Ordering::Equal,
        _ => a.key().cmp(&b.key()),
    }
}

fn cmp_upper(a: &Upper, b: &Upper) -> Ordering {
    match (a, b) {
        (Upper::ClosedOne, Upper::ClosedOne) => Ordering::Equal,
        _ => a.key().cmp(&b.key()),
    }
}

/// One connected piece of an [`IntervalOpen`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub lower: Lower,
    pub upper: Upper,
}

impl Segment {
    fn is_empty(&self) -> bool {
        match (&self.lower, &self.upper) {
            (Lower::ClosedMinusOne, Upper::ClosedOne) => false,
            (Lower::ClosedMinusOne, Upper::Open(b)) => *b <= -BigRational::one(),
            (Lower::Open(a), Upper::ClosedOne) => *a >= BigRational::one(),
            (Lower::Open(a), Upper::Open(b)) => a >= b,
        }
    }

    fn within(&self, other: &Segment) -> bool {
        cmp_lower(&other.lower, &self.lower) != Ordering::Greater
            && cmp_upper(&self.upper, &other.upper) != Ordering::Greater
    }

    /// Whether `next`, starting no earlier, joins onto `self` as one interval.
    fn runs_into(&self, next: &Segment) -> bool {
        match (&self.upper, &next.lower) {
            (Upper::ClosedOne, _) | (_, Lower::ClosedMinusOne) => true,
            (Upper::Open(b), Lower::Open(a)) => a < b,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let above = match &self.lower {
            Lower::ClosedMinusOne => *x >= -BigRational::one(),
            Lower::Open(a) => x > a,
        };
        let below = match &self.upper {
            Upper::ClosedOne => *x <= BigRational::one(),
            Upper::Open(b) => x < b,
        };
        above && below
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Lower::ClosedMinusOne => write!(f, "[-1,")?,
            Lower::Open(a) => write!(f, "({},", format_rational(a))?,
        }
        match &self.upper {
            Upper::ClosedOne => write!(f, "1]"),
            Upper::Open(b) => write!(f, "{})", format_rational(b)),
        }
    }
}

/// An open of `[-1,1]` given as a finite union of intervals.
///
/// The canonical form is sorted, has no empty segment, and never holds two
/// segments that share a point. Segments like `(a,b)` and `(b,c)` stay apart
/// because `b` is in neither.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalOpen {
    segments: Vec<Segment>,
}

impl IntervalOpen {
    pub fn empty() -> Self {
        IntervalOpen {
            segments: Vec::new(),
        }
    }

    pub fn whole() -> Self {
        IntervalOpen::from_segments([Segment {
            lower: Lower::ClosedMinusOne,
            upper: Upper::ClosedOne,
        }])
    }

    pub fn from_segments(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut segs: Vec<Segment> = segments
            .into_iter()
            .map(|s| Segment {
                lower: s.lower.canonical(),
                upper: s.upper.canonical(),
            })
            .filter(|s| !s.is_empty())
            .collect();
        segs.sort_by(|a, b| cmp_lower(&a.lower, &b.lower));
        let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
        for s in segs {
            match out.last_mut() {
                Some(prev) if prev.runs_into(&s) => {
                    if cmp_upper(&s.upper, &prev.upper) == Ordering::Greater {
                        prev.upper = s.upper;
                    }
                }
                _ => out.push(s),
            }
        }
        IntervalOpen { segments: out }
    }

    /// `(a,1]`, clipped into `[-1,1]`.
    pub fn above(a: BigRational) -> Self {
        IntervalOpen::from_segments([Segment {
            lower: Lower::Open(a),
            upper: Upper::ClosedOne,
        }])
    }

    /// `[-1,b)`, clipped into `[-1,1]`.
    pub fn below(b: BigRational) -> Self {
        IntervalOpen::from_segments([Segment {
            lower: Lower::ClosedMinusOne,
            upper: Upper::Open(b),
        }])
    }

    /// `(a,b)`, clipped into `[-1,1]`.
    pub fn open(a: BigRational, b: BigRational) -> Self {
        IntervalOpen::from_segments([Segment {
            lower: Lower::Open(a),
            upper: Upper::Open(b),
        }])
    }

    /// The points within the ball: `(p-α, p+α)` clipped to `[-1,1]`, an end
    /// beyond `±1` becoming the closed end `±1`.
    pub fn from_ball(b: &FormalBall) -> Self {
        IntervalOpen::open(b.lower(), b.upper())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        *self == IntervalOpen::whole()
    }

    pub fn join(&self, other: &IntervalOpen) -> IntervalOpen {
        IntervalOpen::from_segments(self.segments.iter().chain(&other.segments).cloned())
    }

    pub fn meet(&self, other: &IntervalOpen) -> IntervalOpen {
        let mut out = Vec::new();
        for a in &self.segments {
            for b in &other.segments {
                let lower = if cmp_lower(&a.lower, &b.lower) == Ordering::Less {
                    b.lower.clone()
                } else {
                    a.lower.clone()
                };
                let upper = if cmp_upper(&a.upper, &b.upper) == Ordering::Less {
                    a.upper.clone()
                } else {
                    b.upper.clone()
                };
                out.push(Segment { lower, upper });
            }
        }
        IntervalOpen::from_segments(out)
    }

    pub fn leq(&self, other: &IntervalOpen) -> bool {
        self.segments
            .iter()
            .all(|s| other.segments.iter().any(|o| s.within(o)))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.segments.iter().any(|s| s.contains(x))
    }

    /// Image under `x ↦ -x`.
    pub fn reflect(&self) -> IntervalOpen {
        IntervalOpen::from_segments(self.segments.iter().map(|s| Segment {
            lower: match &s.upper {
                Upper::ClosedOne => Lower::ClosedMinusOne,
                Upper::Open(b) => Lower::Open(-b),
            },
            upper: match &s.lower {
                Lower::ClosedMinusOne => Upper::ClosedOne,
                Lower::Open(a) => Upper::Open(-a),
            },
        }))
    }
}

impl fmt::Display for IntervalOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for IntervalOpen {
    type Err = Error;

    /// Segments such as `[-1,-1/4)`, `(1/4,1]` or `(a,b)` joined by ` u `;
    /// `{}` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "interval open",
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if t == "{}" {
            return Ok(IntervalOpen::empty());
        }
        let mut segments = Vec::new();
        for piece in t.split(['u', '∪']) {
            let p = piece.trim();
            let (open, body) = p
                .split_at_checked(1)
                .ok_or_else(|| err("empty segment".into()))?;
            let (body, close) = body
                .split_at_checked(body.len().saturating_sub(1))
                .ok_or_else(|| err(format!("malformed segment {p:?}")))?;
            let (a, b) = body
                .split_once(',')
                .ok_or_else(|| err(format!("segment {p:?} needs two endpoints")))?;
            let a = parse_rational(a)?;
            let b = parse_rational(b)?;
            let lower = match open {
                "[" if a == -BigRational::one() => Lower::ClosedMinusOne,
                "[" => return Err(err(format!("only -1 may be a closed left end in {p:?}"))),
                "(" => Lower::Open(a),
                _ => return Err(err(format!("segment {p:?} must start with '[' or '('"))),
            };
            let upper = match close {
                "]" if b == BigRational::one() => Upper::ClosedOne,
                "]" => return Err(err(format!("only 1 may be a closed right end in {p:?}"))),
                ")" => Upper::Open(b),
                _ => return Err(err(format!("segment {p:?} must end with ']' or ')'"))),
            };
            segments.push(Segment { lower, upper });
        }
        Ok(IntervalOpen::from_segments(segments))
    }
}
