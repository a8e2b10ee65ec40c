use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclo::{decompose_binomial, is_unit, CycloFactor};
use super::poly::{LaurentPoly, Ring};
use super::SymError;

/// Reduced fraction whose denominator is a product of cyclotomic pieces of
/// binomials `1 - M`. Since every such piece is irreducible and stored in a
/// fixed normal form, reduced representations are unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: BTreeMap<CycloFactor, u32>,
}

impl RatFunc {
    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_poly(LaurentPoly::zero(ring))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_poly(LaurentPoly::one(ring))
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(ring, c))
    }

    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&CycloFactor, u32)> {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    pub fn denominator(&self) -> LaurentPoly {
        let ring = self.ring().clone();
        let mut d = LaurentPoly::one(&ring);
        for (f, &k) in &self.den {
            d = &d * &f.poly(&ring).pow(k);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let ring = self.ring().clone();
        let mut den = std::mem::take(&mut self.den);
        for (f, k) in den.iter_mut() {
            let fp = f.poly(&ring);
            while *k > 0 {
                match self.num.div_exact(&fp) {
                    Ok(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        den.retain(|_, k| *k > 0);
        self.den = den;
        self
    }

    /// Same denominator over a new numerator.
    pub fn with_numerator(&self, num: LaurentPoly) -> Self {
        RatFunc { num, den: self.den.clone() }.normalize()
    }

    /// Divide by a polynomial that splits into a unit times binomials.
    pub fn div_poly(&self, p: &LaurentPoly) -> Result<Self, SymError> {
        let (unit, fs) = decompose_binomial(p)?;
        let num = if is_unit(&unit) {
            self.num.div_exact(&unit)?
        } else {
            // a non-unit content such as 2 - 2x would need rational coefficients
            return Err(SymError::NotInvertible(unit.to_string()));
        };
        let mut den = self.den.clone();
        for f in fs {
            *den.entry(f).or_insert(0) += 1;
        }
        Ok(RatFunc { num, den }.normalize())
    }

    /// Divide by another fraction whose numerator splits into binomials.
    pub fn div(&self, o: &RatFunc) -> Result<Self, SymError> {
        let mut r = self.div_poly(&o.num)?;
        for (f, &k) in &o.den {
            r = r.mul_poly(&f.poly(self.ring()).pow(k));
        }
        Ok(r)
    }

    pub fn inv(&self) -> Result<Self, SymError> {
        Self::one(self.ring()).div(self)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .normalize()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: i32) -> Result<Self, SymError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let num = self.num.pow(k as u32);
        let den = self.den.iter().map(|(f, &e)| (f.clone(), e * k as u32)).collect();
        Ok(RatFunc { num, den })
    }

    fn combine(&self, o: &RatFunc, sub: bool) -> Self {
        assert!(self.ring() == o.ring(), "fractions from different rings");
        let ring = self.ring().clone();
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |r: &RatFunc| {
            let mut n = r.num.clone();
            for (f, &k) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                if k > have {
                    n = &n * &f.poly(&ring).pow(k - have);
                }
            }
            n
        };
        let a = lift(self);
        let b = lift(o);
        let num = if sub { &a - &b } else { &a + &b };
        RatFunc { num, den }.normalize()
    }

    /// Substitute variables by signed monomials (or, for variables absent
    /// from the denominator, arbitrary Laurent polynomials).
    pub fn substitute(
        &self,
        target: &Ring,
        assign: &HashMap<usize, LaurentPoly>,
    ) -> Result<Self, SymError> {
        let mut r = RatFunc::from_poly(self.num.substitute(target, assign)?);
        let ring = self.ring().clone();
        for (f, &k) in &self.den {
            let c = f.companion(&ring).substitute(target, assign)?;
            let m = LaurentPoly::monomial(&ring, f.dir.pow(f.order as i32), 1);
            let b = &LaurentPoly::one(&ring) - &m;
            let b = b.substitute(target, assign)?;
            if b.is_zero() {
                return Err(SymError::DivisionByZero);
            }
            for _ in 0..k {
                r = r.mul_poly(&c).div_poly(&b)?;
            }
        }
        Ok(r)
    }

    /// Re-express in another ring by variable name.
    pub fn embed(&self, target: &Ring) -> Result<Self, SymError> {
        let mut num = self.num.embed(target)?;
        let mut den = BTreeMap::new();
        for (f, &k) in &self.den {
            let m = LaurentPoly::monomial(self.ring(), f.dir.clone(), 1).embed(target)?;
            let dir = m.as_term().unwrap().0.clone();
            let first = dir.exps().iter().find(|&&e| e != 0).copied().unwrap_or(0);
            if first > 0 {
                *den.entry(CycloFactor::new(dir, f.order)).or_insert(0) += k;
                continue;
            }
            // Phi_d(M) = M^phi(d) Phi_d(1/M) for d > 1, and 1 - M = -M (1 - 1/M)
            let unit = if f.order == 1 {
                -&m
            } else {
                let phi = super::cyclo::cyclotomic(f.order).len() as u32 - 1;
                m.pow(phi)
            };
            num = num.div_exact(&unit.pow(k))?;
            *den.entry(CycloFactor::new(dir.inv(), f.order)).or_insert(0) += k;
        }
        Ok(RatFunc { num, den }.normalize())
    }

    /// Exact evaluation; `None` on a vanishing denominator.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let n = self.num.eval(point)?;
        let d = self.denominator().eval(point)?;
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (fac, &k)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", fac.poly(self.ring()))?;
            if k != 1 {
                write!(f, "^{k}")?;
            }
        }
        write!(f, ")")
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        self.combine(o, false)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self.combine(o, true)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        assert!(self.ring() == o.ring(), "fractions from different rings");
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RatFunc {
            num: &self.num * &o.num,
            den,
        }
        .normalize()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, o: RatFunc) -> RatFunc {
                (&self).$f(&o)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, o: &RatFunc) -> RatFunc {
                (&self).$f(o)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $f(self, o: RatFunc) -> RatFunc {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(mut it: I) -> RatFunc {
        let first = it.next().expect("sum of an empty fraction iterator needs a ring");
        it.fold(first, |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(&["x", "q"])
    }

    fn bin(r: &Ring, a: i32, b: i32) -> LaurentPoly {
        &LaurentPoly::one(r) - &LaurentPoly::mono(r, &[(0, a), (1, b)])
    }

    #[test]
    fn cancellation_is_canonical() {
        let r = ring();
        // (1 - x^2q^14)/(1 - xq^7) = 1 + xq^7
        let f = RatFunc::from_poly(bin(&r, 2, 14)).div_poly(&bin(&r, 1, 7)).unwrap();
        assert!(f.is_poly());
        assert_eq!(f.numerator(), &(&LaurentPoly::one(&r) + &LaurentPoly::mono(&r, &[(0, 1), (1, 7)])));
        // a/b + c/b built two ways agree
        let g1 = &RatFunc::one(&r).div_poly(&bin(&r, 1, 8)).unwrap()
            + &RatFunc::from_poly(LaurentPoly::mono(&r, &[(0, 1)])).div_poly(&bin(&r, 1, 8)).unwrap();
        let g2 = RatFunc::from_poly(&LaurentPoly::one(&r) + &LaurentPoly::var(&r, 0))
            .div_poly(&bin(&r, 1, 8))
            .unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn inverse_of_negative_exponent_binomial() {
        let r = ring();
        let a = RatFunc::from_poly(bin(&r, 0, -1)); // 1 - q^-1
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, RatFunc::one(&r));
        // 1/(1-q^-1) = -q/(1-q)
        let c = RatFunc::from_poly(-LaurentPoly::mono(&r, &[(1, 1)])).div_poly(&bin(&r, 0, 1)).unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn substitution_into_denominator() {
        let r = Ring::new(&["x", "q", "X1", "X2"]);
        let one = LaurentPoly::one(&r);
        let f = RatFunc::one(&r)
            .div_poly(&(&one + &LaurentPoly::mono(&r, &[(2, 1), (3, 3)])))
            .unwrap();
        let mut a = HashMap::new();
        a.insert(2, LaurentPoly::mono(&r, &[(0, 2)]));
        a.insert(3, LaurentPoly::mono(&r, &[(1, 2)]));
        let g = f.substitute(&r, &a).unwrap();
        let want = RatFunc::one(&r)
            .div_poly(&(&one + &LaurentPoly::mono(&r, &[(0, 2), (1, 6)])))
            .unwrap();
        assert_eq!(g, want);
        let mut z = HashMap::new();
        z.insert(2, LaurentPoly::mono(&r, &[(1, -3)]));
        z.insert(3, LaurentPoly::mono(&r, &[(1, 1)]));
        let h = RatFunc::one(&r)
            .div_poly(&(&one - &LaurentPoly::mono(&r, &[(2, 1), (3, 3)])))
            .unwrap();
        assert_eq!(h.substitute(&r, &z), Err(SymError::DivisionByZero));
    }

    #[test]
    fn display_shows_factored_denominator() {
        let r = ring();
        let f = RatFunc::from_poly(LaurentPoly::var(&r, 0)).div_poly(&bin(&r, 1, 8)).unwrap();
        assert_eq!(f.to_string(), "(x)/((-x*q^8 + 1))");
    }
}
