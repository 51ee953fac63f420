//! Inverse images of interval opens along `c : 2^ω → [-1,1]`.
//!
//! `c*(V)` is usually not finitely generated, so it is represented as an
//! [`ApproxOpen`]: a monotone family of generated opens whose join is
//! `c*(V)`. The basic cases are
//!
//! * `c*((c′(s),1]) = ⋁ₖ ↱(s+-ᵏ+)`
//! * `c*([-1,c′(s))) = ⋁ₖ ↰(s-+ᵏ-)`
//! * `c*((-1,1]) = ⋁ₖ ↑(-ᵏ+)` and dually `c*([-1,1)) = ⋁ₖ ↑(+ᵏ-)`
//!
//! and a general open with dyadic endpoints is assembled from them by meets
//! and joins. Membership of a cylinder is decided exactly by [`lmid`] and
//! [`midl`], since `↑t` is compact.
//!
//! Independently, `c*` on rays `(p,1]` satisfies the recurrence
//! `T(f)*(p,1] = ↑+ ∧ t*f*(2p-1,1] ∨ ↑- ∧ t*f*(2p+1,1]` coming from the
//! iteration of the midpoint; [`t_star_iterate`] unfolds it from the bottom
//! filter.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::cantor_opens::{lhook, rhook, GeneratedOpen};
use crate::dyadic::{cprime_inv, Dyadic, IntervalOpen, Lower, Segment, Upper};
use crate::error::{Error, Result};
use crate::words::{lmid, midl, Sign, SignWord};

type Rule = Arc<dyn Fn(usize) -> GeneratedOpen + Send + Sync>;

/// A directed join `⋁ₖ at_depth(k)` of generated opens.
#[derive(Clone)]
pub struct ApproxOpen {
    rule: Rule,
}

impl ApproxOpen {
    /// `rule` must be monotone in the depth.
    pub fn new(rule: impl Fn(usize) -> GeneratedOpen + Send + Sync + 'static) -> Self {
        ApproxOpen {
            rule: Arc::new(rule),
        }
    }

    pub fn constant(u: GeneratedOpen) -> Self {
        ApproxOpen::new(move |_| u.clone())
    }

    pub fn at_depth(&self, k: usize) -> GeneratedOpen {
        (self.rule)(k)
    }

    pub fn meet(&self, other: &ApproxOpen) -> ApproxOpen {
        let (a, b) = (self.clone(), other.clone());
        ApproxOpen::new(move |k| a.at_depth(k).meet(&b.at_depth(k)))
    }

    pub fn join(&self, other: &ApproxOpen) -> ApproxOpen {
        let (a, b) = (self.clone(), other.clone());
        ApproxOpen::new(move |k| a.at_depth(k).join(&b.at_depth(k)))
    }
}

impl fmt::Debug for ApproxOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ApproxOpen[{}, {}, ...]", self.at_depth(0), self.at_depth(1))
    }
}

/// `c*((c′(s),1])`, at depth `k` equal to `↱(s+-ᵏ+)`.
pub fn cstar_upper(s: &SignWord) -> ApproxOpen {
    let s = s.clone();
    ApproxOpen::new(move |k| {
        rhook(&s.with(Sign::Plus).with_run(Sign::Minus, k).with(Sign::Plus))
    })
}

/// `c*([-1,c′(s)))`, at depth `k` equal to `↰(s-+ᵏ-)`.
pub fn cstar_lower(s: &SignWord) -> ApproxOpen {
    let s = s.clone();
    ApproxOpen::new(move |k| {
        lhook(&s.with(Sign::Minus).with_run(Sign::Plus, k).with(Sign::Minus))
    })
}

/// `c*((-1,1])`, at depth `k` equal to `⋁_{i≤k} ↑(-ⁱ+)`.
pub fn cstar_above_minus_one() -> ApproxOpen {
    ApproxOpen::new(|k| {
        GeneratedOpen::from_words((0..=k).map(|i| SignWord::repeat(Sign::Minus, i).with(Sign::Plus)))
    })
}

/// `c*([-1,1))`, at depth `k` equal to `⋁_{i≤k} ↑(+ⁱ-)`.
pub fn cstar_below_one() -> ApproxOpen {
    ApproxOpen::new(|k| {
        GeneratedOpen::from_words((0..=k).map(|i| SignWord::repeat(Sign::Plus, i).with(Sign::Minus)))
    })
}

/// The word `s` with `c′(s) = a`, for a dyadic `a` strictly inside `(-1,1)`.
fn endpoint_word(a: &BigRational) -> Result<SignWord> {
    let d = Dyadic::from_rational(a).ok_or_else(|| Error::NonDyadicEndpoint(a.to_string()))?;
    cprime_inv(&d)
}

fn lower_approx(l: &Lower) -> Result<Option<ApproxOpen>> {
    Ok(match l {
        Lower::ClosedMinusOne => None,
        Lower::Open(a) if *a == -BigRational::one() => Some(cstar_above_minus_one()),
        Lower::Open(a) => Some(cstar_upper(&endpoint_word(a)?)),
    })
}

fn upper_approx(u: &Upper) -> Result<Option<ApproxOpen>> {
    Ok(match u {
        Upper::ClosedOne => None,
        Upper::Open(b) if *b == BigRational::one() => Some(cstar_below_one()),
        Upper::Open(b) => Some(cstar_lower(&endpoint_word(b)?)),
    })
}

fn segment_approx(seg: &Segment) -> Result<ApproxOpen> {
    Ok(match (lower_approx(&seg.lower)?, upper_approx(&seg.upper)?) {
        (None, None) => ApproxOpen::constant(GeneratedOpen::top()),
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => a.meet(&b),
    })
}

/// `c*(V)` for an open with dyadic endpoints.
pub fn cstar_interval(v: &IntervalOpen) -> Result<ApproxOpen> {
    v.segments()
        .iter()
        .map(segment_approx)
        .try_fold(ApproxOpen::constant(GeneratedOpen::bottom()), |acc, seg| {
            Ok(acc.join(&seg?))
        })
}

/// Which half-open interval a membership query targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// `(c′(s),1]`
    Upper(SignWord),
    /// `[-1,c′(s))`
    Lower(SignWord),
}

/// `↑t ≤ c*(target)`, decided as `s ⊲ t` or `t ⊳ s`.
pub fn cstar_member(t: &SignWord, target: &Target) -> bool {
    match target {
        Target::Upper(s) => lmid(s, t),
        Target::Lower(s) => midl(t, s),
    }
}

/// `↑t ≤ c*(V)`, exactly. The image of `↑t` is connected and the segments
/// of `V` share no point, so a single segment must contain it.
pub fn cstar_contains(v: &IntervalOpen, t: &SignWord) -> Result<bool> {
    for seg in v.segments() {
        let above = match &seg.lower {
            Lower::ClosedMinusOne => true,
            Lower::Open(a) if *a == -BigRational::one() => t.contains(Sign::Plus),
            Lower::Open(a) => cstar_member(t, &Target::Upper(endpoint_word(a)?)),
        };
        let below = match &seg.upper {
            Upper::ClosedOne => true,
            Upper::Open(b) if *b == BigRational::one() => t.contains(Sign::Minus),
            Upper::Open(b) => cstar_member(t, &Target::Lower(endpoint_word(b)?)),
        };
        if above && below {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A ray `(p,1]` of `[-1,1]`, normalized so that `p < -1` is the whole
/// interval and `p ≥ 1` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ray {
    Whole,
    OpenFrom(Dyadic),
    Empty,
}

impl Ray {
    pub fn from_endpoint(p: Dyadic) -> Ray {
        if p < Dyadic::minus_one() {
            Ray::Whole
        } else if p >= Dyadic::one() {
            Ray::Empty
        } else {
            Ray::OpenFrom(p)
        }
    }

    /// Preimage under `x ↦ (x + a)/2` for `a = ±1`: `(2p ∓ 1, 1]`.
    fn pull(&self, d: Sign) -> Ray {
        match self {
            Ray::OpenFrom(p) => {
                Ray::from_endpoint(&p.double() - &Dyadic::from_int(i64::from(d.value())))
            }
            r => r.clone(),
        }
    }
}

/// `f₀*`: the bottom filter lies only in the whole interval.
pub fn t_star_base(r: &Ray) -> GeneratedOpen {
    match r {
        Ray::Whole => GeneratedOpen::top(),
        _ => GeneratedOpen::bottom(),
    }
}

/// One unfolding `T(f)*(p,1] = ↑+ ∧ t*f*(2p-1,1] ∨ ↑- ∧ t*f*(2p+1,1]`.
pub fn t_star_step(f: &dyn Fn(&Ray) -> GeneratedOpen, r: &Ray) -> GeneratedOpen {
    match r {
        Ray::Whole => GeneratedOpen::top(),
        Ray::Empty => GeneratedOpen::bottom(),
        Ray::OpenFrom(_) => {
            let plus = f(&r.pull(Sign::Plus)).prefixed(Sign::Plus);
            let minus = f(&r.pull(Sign::Minus)).prefixed(Sign::Minus);
            plus.join(&minus)
        }
    }
}

/// `Fₙ* = Tⁿ(f₀)*` on a ray. For `p = c′(s)` this equals
/// `cstar_upper(s).at_depth(n - |s| - 2)` once `n ≥ |s| + 2`.
pub fn t_star_iterate(n: usize, r: &Ray) -> GeneratedOpen {
    if n == 0 {
        t_star_base(r)
    } else {
        t_star_step(&|q: &Ray| t_star_iterate(n - 1, q), r)
    }
}
