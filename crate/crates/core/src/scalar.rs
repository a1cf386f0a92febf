//! Exact coefficient ring: integer Laurent polynomials in `q, t, s, u, a`
//! divided by a power of `z = q - q^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The fixed variable set, in rendering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    Q,
    T,
    S,
    U,
    A,
}

pub const NVARS: usize = 5;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::T, Var::S, Var::U, Var::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::S => "s",
            Var::U => "u",
            Var::A => "a",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("substitution may not rebind the denominator variable q")]
    BindsDenominatorVariable,
    #[error("binding for {0} is not a unit monomial")]
    NonInvertibleBinding(Var),
}

/// Exponent vector over `(q, t, s, u, a)`. The derived ordering is the
/// lexicographic order used for rendering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (x, y) in r.0.iter_mut().zip(other.0) {
            *x += y;
        }
        r
    }

    fn pow(&self, e: i32) -> Monomial {
        Monomial(self.0.map(|x| x * e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Integer Laurent polynomial. Zero coefficients are never stored, so the
/// term map is the canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), Monomial::one())
    }

    pub fn term(coeff: impl Into<BigInt>, mono: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, coeff.into());
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `(q - q^-1)` as a polynomial.
    pub fn z() -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(Var::Q, 1), BigInt::one());
        p.add_term(Monomial::var(Var::Q, -1), -BigInt::one());
        p
    }

    pub fn scale_mono(&self, coeff: &BigInt, mono: &Monomial) -> Self {
        let mut r = Self::zero();
        if coeff.is_zero() {
            return r;
        }
        for (m, c) in &self.terms {
            r.terms.insert(m.mul(mono), c * coeff);
        }
        r
    }

    /// If `self` is `±m` for a monomial `m`, returns the sign and `m`.
    pub fn as_unit_monomial(&self) -> Option<(i32, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *m))
        } else if (-c).is_one() {
            Some((-1, *m))
        } else {
            None
        }
    }

    /// Exact division by `q - q^-1`, or `None` when it does not divide.
    ///
    /// `P/(q - q^-1) = q * P/(q^2 - 1)`; the division by `q^2 - 1` only
    /// touches the `q` exponent, so it runs independently on every slice of
    /// terms sharing the remaining exponents.
    pub fn div_z(&self) -> Option<Self> {
        let mut slices: BTreeMap<[i32; NVARS - 1], BTreeMap<i32, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = [0; NVARS - 1];
            rest.copy_from_slice(&m.0[1..]);
            slices.entry(rest).or_default().insert(m.0[0], c.clone());
        }
        let mut out = Self::zero();
        for (rest, slice) in slices {
            let lo = *slice.keys().next().unwrap();
            let hi = *slice.keys().next_back().unwrap();
            let n = (hi - lo) as usize;
            if n < 2 {
                return None;
            }
            let mut d = vec![BigInt::zero(); n + 1];
            for (e, c) in slice {
                d[(e - lo) as usize] = c;
            }
            let mut quot = vec![BigInt::zero(); n - 1];
            for i in (2..=n).rev() {
                let c = std::mem::take(&mut d[i]);
                d[i - 2] += &c;
                quot[i - 2] = c;
            }
            if !d[0].is_zero() || !d[1].is_zero() {
                return None;
            }
            for (j, c) in quot.into_iter().enumerate() {
                let mut m = [0; NVARS];
                m[0] = lo + j as i32 + 1;
                m[1..].copy_from_slice(&rest);
                out.add_term(Monomial(m), c);
            }
        }
        Some(out)
    }

    fn substitute(&self, images: &[Option<(i32, Monomial)>; NVARS]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut mono = Monomial::one();
            let mut sign = 1;
            for v in Var::ALL {
                let e = m.exp(v);
                match &images[v.index()] {
                    None => mono.0[v.index()] += e,
                    Some((sg, img)) => {
                        mono = mono.mul(&img.pow(e));
                        if *sg < 0 && e.rem_euclid(2) == 1 {
                            sign = -sign;
                        }
                    }
                }
            }
            out.add_term(mono, if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    fn invert(&self, vars: &[Var]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut mm = *m;
            for v in vars {
                mm.0[v.index()] = -mm.0[v.index()];
            }
            out.add_term(mm, c.clone());
        }
        out
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (m, c) in &rhs.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

/// `num / (q - q^-1)^denom_pow`, kept canonical: when `denom_pow > 0` the
/// numerator is not divisible by `q - q^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    denom_pow: u32,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn new(num: LaurentPoly, denom_pow: u32) -> Self {
        let mut s = Scalar { num, denom_pow };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), denom_pow: 0 }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: LaurentPoly::term(n, Monomial::one()), denom_pow: 0 }
    }

    pub fn var(v: Var) -> Self {
        Scalar::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Scalar::monomial(1, Monomial::var(v, e))
    }

    pub fn monomial(coeff: i64, mono: Monomial) -> Self {
        Scalar { num: LaurentPoly::term(coeff, mono), denom_pow: 0 }
    }

    /// Product of variable powers, e.g. `mono(&[(Var::T, -1), (Var::Q, 1)])`.
    pub fn mono(powers: &[(Var, i32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in powers {
            m.0[v.index()] += e;
        }
        Scalar::monomial(1, m)
    }

    /// `z = q - q^-1`.
    pub fn z() -> Self {
        Scalar { num: LaurentPoly::z(), denom_pow: 0 }
    }

    /// `1 / (q - q^-1)^k`.
    pub fn inv_z_pow(k: u32) -> Self {
        Scalar { num: LaurentPoly::one(), denom_pow: k }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.denom_pow == 0 && self.num == LaurentPoly::one()
    }

    /// True when the value is a Laurent polynomial (no denominator).
    pub fn is_laurent(&self) -> bool {
        self.denom_pow == 0
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.denom_pow = 0;
            return;
        }
        while self.denom_pow > 0 {
            match self.num.div_z() {
                Some(n) => {
                    self.num = n;
                    self.denom_pow -= 1;
                }
                None => break,
            }
        }
    }

    fn lifted_num(&self, k: u32) -> LaurentPoly {
        let mut n = self.num.clone();
        let z = LaurentPoly::z();
        for _ in self.denom_pow..k {
            n = &n * &z;
        }
        n
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = Scalar::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Applies the ring homomorphism sending each bound variable to a unit
    /// monomial (`±m`). `q` may not be rebound.
    pub fn substitute(&self, bindings: &[(Var, LaurentPoly)]) -> Result<Scalar, ScalarError> {
        let mut images: [Option<(i32, Monomial)>; NVARS] = [None; NVARS];
        for (v, target) in bindings {
            if *v == Var::Q {
                return Err(ScalarError::BindsDenominatorVariable);
            }
            let unit = target.as_unit_monomial().ok_or(ScalarError::NonInvertibleBinding(*v))?;
            images[v.index()] = Some(unit);
        }
        Ok(Scalar::new(self.num.substitute(&images), self.denom_pow))
    }

    /// The involution `v -> v^-1` on the listed variables. Inverting `q`
    /// negates the denominator `q - q^-1`.
    pub fn invert_vars(&self, vars: &[Var]) -> Scalar {
        let mut num = self.num.invert(vars);
        if vars.contains(&Var::Q) && self.denom_pow % 2 == 1 {
            num = -&num;
        }
        Scalar::new(num, self.denom_pow)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let k = self.denom_pow.max(rhs.denom_pow);
        Scalar::new(&self.lifted_num(k) + &rhs.lifted_num(k), k)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        Scalar::new(&self.num * &rhs.num, self.denom_pow + rhs.denom_pow)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, denom_pow: self.denom_pow }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Scalar::new(p, 0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_pow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/(q - q^-1)^{}", self.num, self.denom_pow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::var(Var::Q)
    }

    fn qi() -> Scalar {
        Scalar::var_pow(Var::Q, -1)
    }

    fn delta_h(v: Var) -> Scalar {
        (Scalar::var(v) - Scalar::var_pow(v, -1)) * Scalar::inv_z_pow(1)
    }

    #[test]
    fn additive_inverse_and_identity() {
        assert!((q() + (-q())).is_zero());
        let d = delta_h(Var::T);
        assert_eq!(&d + &Scalar::zero(), d);
    }

    #[test]
    fn one_plus_fraction() {
        let s = Scalar::var(Var::S);
        let si = Scalar::var_pow(Var::S, -1);
        let lhs = Scalar::one() + (&s - &si) * Scalar::inv_z_pow(1);
        let rhs = Scalar::new(&(&LaurentPoly::z() + s.numerator()) + &-si.numerator(), 1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.denom_pow(), 1);
    }

    #[test]
    fn products() {
        assert_eq!(Scalar::z() * (q() + qi()), Scalar::var_pow(Var::Q, 2) - Scalar::var_pow(Var::Q, -2));
        let r = Scalar::z() * Scalar::inv_z_pow(1);
        assert!(r.is_one());
        assert_eq!(r.denom_pow(), 0);
        let t = Scalar::var(Var::T);
        let lhs = &t * &delta_h(Var::T);
        let rhs = (Scalar::var_pow(Var::T, 2) - Scalar::one()) * Scalar::inv_z_pow(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_examples() {
        let tq = LaurentPoly::term(1, Monomial([1, 1, 0, 0, 0]));
        let t2 = Scalar::var_pow(Var::T, 2);
        assert_eq!(t2.substitute(&[(Var::T, tq.clone())]).unwrap(), Scalar::mono(&[(Var::T, 2), (Var::Q, 2)]));

        let lhs = delta_h(Var::T).substitute(&[(Var::T, tq)]).unwrap();
        let expect = (Scalar::mono(&[(Var::T, 1), (Var::Q, 1)]) - Scalar::mono(&[(Var::T, -1), (Var::Q, -1)]))
            * Scalar::inv_z_pow(1);
        assert_eq!(lhs, expect);

        let a2q = LaurentPoly::term(1, Monomial([-1, 0, 0, 0, 2]));
        let s = Scalar::var(Var::S).substitute(&[(Var::S, a2q)]).unwrap();
        assert_eq!(s.to_string(), "q^-1*a^2");
    }

    #[test]
    fn substitution_errors() {
        let x = Scalar::var(Var::T);
        assert_eq!(x.substitute(&[(Var::Q, LaurentPoly::var(Var::T))]), Err(ScalarError::BindsDenominatorVariable));
        let bad = &LaurentPoly::one() + &LaurentPoly::var(Var::T);
        assert_eq!(x.substitute(&[(Var::T, bad)]), Err(ScalarError::NonInvertibleBinding(Var::T)));
        let two_t = LaurentPoly::term(2, Monomial::var(Var::T, 1));
        assert!(x.substitute(&[(Var::T, two_t)]).is_err());
    }

    #[test]
    fn unknot_recursion_instance() {
        let lhs = &q() * &delta_h(Var::T) + Scalar::var_pow(Var::T, -1);
        let rhs = (Scalar::mono(&[(Var::T, 1), (Var::Q, 1)]) - Scalar::mono(&[(Var::T, -1), (Var::Q, -1)]))
            * Scalar::inv_z_pow(1);
        assert_eq!(lhs, rhs);
        assert_ne!(q(), qi());
    }

    #[test]
    fn rendering() {
        let d = delta_h(Var::T);
        assert_eq!(d.to_string(), "(-t^-1 + t)/(q - q^-1)^1");
        let d = delta_h(Var::T).substitute(&[(Var::T, LaurentPoly::term(1, Monomial([1, 1, 0, 0, 0])))]).unwrap();
        assert_eq!(d.to_string(), "(-q^-1*t^-1 + q*t)/(q - q^-1)^1");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((Scalar::from_int(3) * q() - Scalar::from_int(2)).to_string(), "-2 + 3*q");
    }

    #[test]
    fn divides_exactly_only_when_possible() {
        let p = &LaurentPoly::var(Var::T) + &LaurentPoly::var(Var::Q);
        let lifted = Scalar::new(&p * &LaurentPoly::z(), 1);
        assert_eq!(lifted, Scalar::new(p.clone(), 0));
        let stuck = Scalar::new(p.clone(), 1);
        assert_eq!(stuck.denom_pow(), 1);
        assert_eq!(stuck.numerator(), &p);
    }

    #[test]
    fn inverting_q_flips_denominator() {
        let d = delta_h(Var::T);
        assert_eq!(d.invert_vars(&[Var::Q, Var::T]), d);
        assert_eq!(d.invert_vars(&[Var::Q]), -d.clone());
    }
}
