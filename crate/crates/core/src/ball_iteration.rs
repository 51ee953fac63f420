//! Iterating the midpoint on formal balls.
//!
//! For endpoints `a₋, a₊` the map `M : 2^ω → 𝕀` with
//! `M(±s) = m(a±, M(s))` is the limit of the iterates `Mₙ`, where `M₀` is
//! the bottom filter, represented by the ball `(0,1)`, and
//! `Mₙ₊₁(±s) = m′(a±, Mₙ(s))`. Each step halves the radius, so `Mₙ(s)` has
//! radius exactly `2⁻ⁿ`.

use std::fmt;

use num_rational::BigRational;

use crate::dyadic::{contained_in, Dyadic, FormalBall, PosRational};
use crate::error::{Error, Result};
use crate::streams::{Digit, Stream};

/// `m′` on two balls: midpoint of centres, midpoint of radii.
pub fn m_prime(x: &FormalBall, f: &FormalBall) -> FormalBall {
    FormalBall::new(x.center.midpoint(&f.center), x.radius.midpoint(&f.radius))
}

/// `m′` with an exact point on the left.
pub fn m_prime_point(x: &Dyadic, f: &FormalBall) -> FormalBall {
    FormalBall::new(x.midpoint(&f.center), f.radius.half())
}

/// `M₀*(p,α)`: whether `(0,1) ⊂ (p,α)`, i.e. `|p| + 1 < α`.
pub fn m0_star(ball: &FormalBall) -> bool {
    crate::dyadic::refines(&FormalBall::unit(), ball)
}

/// The two endpoints of an instance `M_{a₋a₊}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoints {
    minus: Dyadic,
    plus: Dyadic,
}

impl Endpoints {
    pub fn new(minus: Dyadic, plus: Dyadic) -> Result<Self> {
        for a in [&minus, &plus] {
            if *a < Dyadic::minus_one() || *a > Dyadic::one() {
                return Err(Error::OutOfRange {
                    value: a.to_string(),
                    range: "[-1,1]",
                });
            }
        }
        Ok(Endpoints { minus, plus })
    }

    /// `(-1, 1)`, for which `M` is the map `c`.
    pub fn standard() -> Self {
        Endpoints {
            minus: Dyadic::minus_one(),
            plus: Dyadic::one(),
        }
    }

    pub fn minus(&self) -> &Dyadic {
        &self.minus
    }

    pub fn plus(&self) -> &Dyadic {
        &self.plus
    }

    /// `a₀ = m(a₋, a₊)`.
    pub fn zero(&self) -> Dyadic {
        self.minus.midpoint(&self.plus)
    }

    /// Interpretation of a digit: `a₋`, `a₀` or `a₊`.
    pub fn point<D: Digit>(&self, d: D) -> Dyadic {
        match d.value() {
            -1 => self.minus.clone(),
            0 => self.zero(),
            _ => self.plus.clone(),
        }
    }

    /// `(a₋+a₊)/2 + x·(a₊-a₋)/2`, the affine image of `x ∈ [-1,1]`.
    pub fn affine(&self, x: &BigRational) -> BigRational {
        let (lo, hi) = (self.minus.to_rational(), self.plus.to_rational());
        let two = BigRational::from_integer(2.into());
        (&lo + &hi) / &two + x * (hi - lo) / two
    }
}

/// `Mₙ(input)`; trit digits `0` are read as `a₀`.
pub fn iterate_m<D: Digit>(endpoints: &Endpoints, input: &Stream<D>, n: usize) -> FormalBall {
    input
        .take(n)
        .into_iter()
        .rev()
        .fold(FormalBall::unit(), |ball, d| m_prime_point(&endpoints.point(d), &ball))
}

/// A finite chain `b₀ ⊇ b₁ ⊇ …` of formal balls, approximating a point.
#[derive(Clone, PartialEq, Eq)]
pub struct BallChain {
    balls: Vec<FormalBall>,
}

impl BallChain {
    pub fn new(balls: Vec<FormalBall>) -> Result<Self> {
        if let Some(i) = (1..balls.len()).find(|&i| !contained_in(&balls[i], &balls[i - 1])) {
            return Err(Error::NotAChain { index: i });
        }
        Ok(BallChain { balls })
    }

    /// `M₀(input), …, Mₙ(input)`.
    pub fn iterates<D: Digit>(endpoints: &Endpoints, input: &Stream<D>, n: usize) -> Self {
        let balls = (0..=n).map(|k| iterate_m(endpoints, input, k)).collect();
        BallChain::new(balls).expect("iterates are nested")
    }

    pub fn balls(&self) -> &[FormalBall] {
        &self.balls
    }

    pub fn last(&self) -> Option<&FormalBall> {
        self.balls.last()
    }
}

impl fmt::Debug for BallChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.balls).finish()
    }
}

/// A carrier with a midpoint operation and two endpoints.
pub trait MidpointAlgebra {
    type Elem: Clone;

    fn midpoint(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn a_minus(&self) -> Self::Elem;
    fn a_plus(&self) -> Self::Elem;
    /// Equality up to the precision the instance can decide.
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn a_zero(&self) -> Self::Elem {
        self.midpoint(&self.a_minus(), &self.a_plus())
    }

    fn a_half_minus(&self) -> Self::Elem {
        self.midpoint(&self.a_zero(), &self.a_minus())
    }

    fn a_half_plus(&self) -> Self::Elem {
        self.midpoint(&self.a_zero(), &self.a_plus())
    }

    /// Idempotence, commutativity and transposition on every combination of
    /// `samples`; returns the first failing law.
    fn check_laws(&self, samples: &[Self::Elem]) -> std::result::Result<(), String> {
        for a in samples {
            if !self.same(&self.midpoint(a, a), a) {
                return Err("idempotence".into());
            }
            for b in samples {
                if !self.same(&self.midpoint(a, b), &self.midpoint(b, a)) {
                    return Err("commutativity".into());
                }
                for c in samples {
                    for d in samples {
                        let lhs = self.midpoint(&self.midpoint(a, b), &self.midpoint(c, d));
                        let rhs = self.midpoint(&self.midpoint(a, c), &self.midpoint(b, d));
                        if !self.same(&lhs, &rhs) {
                            return Err("transposition".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dyadics in `[a₋, a₊]` with the exact average.
#[derive(Clone, Debug)]
pub struct AffineInterval(pub Endpoints);

impl MidpointAlgebra for AffineInterval {
    type Elem = Dyadic;

    fn midpoint(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.midpoint(b)
    }
    fn a_minus(&self) -> Dyadic {
        self.0.minus.clone()
    }
    fn a_plus(&self) -> Dyadic {
        self.0.plus.clone()
    }
    fn same(&self, a: &Dyadic, b: &Dyadic) -> bool {
        a == b
    }
}

/// Formal balls under `m′`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Balls;

impl MidpointAlgebra for Balls {
    type Elem = FormalBall;

    fn midpoint(&self, a: &FormalBall, b: &FormalBall) -> FormalBall {
        m_prime(a, b)
    }
    fn a_minus(&self) -> FormalBall {
        FormalBall::new(Dyadic::minus_one(), PosRational::pow2_neg(0))
    }
    fn a_plus(&self) -> FormalBall {
        FormalBall::new(Dyadic::one(), PosRational::pow2_neg(0))
    }
    fn same(&self, a: &FormalBall, b: &FormalBall) -> bool {
        a == b
    }
}

/// Trit streams under the digitwise midpoint, compared to `precision`
/// digits' worth of value.
#[derive(Clone, Copy, Debug)]
pub struct TritStreams {
    pub precision: usize,
}

impl MidpointAlgebra for TritStreams {
    type Elem = crate::streams::TritStream;

    fn midpoint(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::streams::mid(a, b)
    }
    fn a_minus(&self) -> Self::Elem {
        Stream::constant(crate::streams::Trit::Minus)
    }
    fn a_plus(&self) -> Self::Elem {
        Stream::constant(crate::streams::Trit::Plus)
    }
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        // the values lie within 2^-n of the centres
        let n = self.precision;
        let gap = (a.approximant(n).center - b.approximant(n).center).abs();
        gap.to_rational() <= BigRational::new(2.into(), num_bigint::BigInt::from(1) << n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{parse_rational, refines};
    use crate::streams::{SignStream, TritStream};
    use num_traits::Signed;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn ball(c: &str, r: &str) -> FormalBall {
        FormalBall::new(d(c), r.parse().unwrap())
    }

    fn ss(s: &str) -> SignStream {
        s.parse().unwrap()
    }

    #[test]
    fn m_prime_examples() {
        assert_eq!(m_prime(&ball("1/2", "1/4"), &ball("0", "1")), ball("1/4", "5/8"));
        assert_eq!(m_prime(&FormalBall::unit(), &FormalBall::unit()), FormalBall::unit());
    }

    #[test]
    fn m_prime_is_monotone() {
        let x = ball("1/2", "1/4");
        let f = ball("0", "1");
        let x2 = ball("9/16", "1/8");
        let f2 = ball("1/4", "1/2");
        assert!(refines(&x2, &x) && refines(&f2, &f));
        assert!(refines(&m_prime(&x2, &f2), &m_prime(&x, &f)));
    }

    #[test]
    fn iterate_examples() {
        let e = Endpoints::standard();
        assert_eq!(iterate_m(&e, &ss("(+)"), 3), ball("7/8", "1/8"));
        let odd = Endpoints::new(d("0"), d("1/2")).unwrap();
        assert_eq!(iterate_m(&odd, &ss("(-+)"), 0), FormalBall::unit());
        // limit 1/2 for the constant + stream
        let b = iterate_m(&odd, &ss("(+)"), 12);
        let gap = (b.center.to_rational() - parse_rational("1/2").unwrap()).abs();
        assert!(gap <= *PosRational::pow2_neg(12).value());
    }

    #[test]
    fn m0_star_examples() {
        assert!(m0_star(&ball("0", "2")));
        assert!(!m0_star(&ball("1/2", "1")));
        assert!(m0_star(&ball("0", "9/8")));
    }

    #[test]
    fn iterates_match_approximants() {
        let e = Endpoints::standard();
        for s in ["(+)", "-(+-)", "+-+(--+)", "(-)"] {
            let st = ss(s);
            for n in 0..=20 {
                assert_eq!(iterate_m(&e, &st, n), st.approximant(n));
            }
        }
        let t: TritStream = "0+(0-)".parse().unwrap();
        for n in 0..=12 {
            assert_eq!(iterate_m(&e, &t, n), t.approximant(n));
        }
    }

    #[test]
    fn iterates_form_a_chain_with_halving_radii() {
        let e = Endpoints::new(d("-1/2"), d("3/4")).unwrap();
        let chain = BallChain::iterates(&e, &ss("+-(+--)"), 20);
        for w in chain.balls().windows(2) {
            assert_eq!(w[1].radius, w[0].radius.half());
        }
        assert!(BallChain::new(vec![ball("0", "1/2"), ball("0", "1")]).is_err());
    }

    #[test]
    fn affine_oracle_agreement() {
        let e = Endpoints::new(d("-3/4"), d("1/8")).unwrap();
        let st = ss("-+(+--)");
        let exact = e.affine(&st.exact_value().unwrap());
        for n in 0..=20 {
            let b = iterate_m(&e, &st, n);
            let gap = (b.center.to_rational() - &exact).abs();
            assert!(gap <= *PosRational::pow2_neg(n as u32).value(), "n = {n}");
        }
    }

    #[test]
    fn endpoints_are_range_checked() {
        assert!(Endpoints::new(d("-2"), d("0")).is_err());
    }

    #[test]
    fn instances_satisfy_the_laws() {
        let alg = AffineInterval(Endpoints::new(d("-1/2"), d("1")).unwrap());
        let pts = [alg.a_minus(), alg.a_plus(), alg.a_zero(), alg.a_half_plus(), d("1/8")];
        assert_eq!(alg.check_laws(&pts), Ok(()));
        assert_eq!(alg.a_zero(), d("1/4"));

        let balls = [Balls.a_minus(), Balls.a_plus(), ball("1/4", "1/8"), ball("0", "3")];
        assert_eq!(Balls.check_laws(&balls), Ok(()));

        let ts = TritStreams { precision: 30 };
        let streams: Vec<TritStream> =
            ["(+)", "(-)", "+0(-)", "-(+0)"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(ts.check_laws(&streams), Ok(()));
    }
}
