use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SymError;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    names: Vec<String>,
}

/// A fixed, ordered list of variable names. Polynomials only combine when
/// they share a ring.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Ring {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate variable {a}");
        }
        Ring(Arc::new(RingData { names }))
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<LaurentPoly, SymError> {
        let i = self
            .index(name)
            .ok_or_else(|| SymError::UnknownVariable(name.to_string()))?;
        Ok(LaurentPoly::var(self, i))
    }

    pub fn one_mono(&self) -> Monomial {
        Monomial::one(self.nvars())
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically by variable position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn from_exps(e: Vec<i32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// True when every exponent of `o` is at most the matching exponent here.
    pub fn divisible_by(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn gcd_exps(&self) -> i32 {
        self.0.iter().fold(0i32, |g, &e| g.gcd(&e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Laurent polynomial with big-integer coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(ring: &Ring) -> Self {
        LaurentPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Ring, c: impl Into<BigInt>) -> Self {
        Self::monomial(ring, ring.one_mono(), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Monomial from a sparse list of (variable index, exponent).
    pub fn mono(ring: &Ring, exps: &[(usize, i32)]) -> Self {
        let mut e = vec![0; ring.nvars()];
        for &(i, k) in exps {
            e[i] += k;
        }
        Self::monomial(ring, Monomial::from_exps(e), 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::mono(ring, &[(i, 1)])
    }

    pub fn from_terms(ring: &Ring, it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// The sole monomial and coefficient if this is a single term.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        match self.as_term() {
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, o: &LaurentPoly) {
        assert!(self.ring == o.ring, "polynomials from different rings");
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power allowing negative exponents for single terms with unit
    /// coefficient.
    pub fn powi(&self, k: i32) -> Result<Self, SymError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        match self.as_term() {
            Some((m, c)) if c.abs().is_one() => {
                let sign = if c.is_negative() && k % 2 != 0 { -1 } else { 1 };
                Ok(Self::monomial(&self.ring, m.pow(k), sign))
            }
            _ => Err(SymError::NotInvertible(self.to_string())),
        }
    }

    /// Minimum and maximum exponent of variable `v` over all terms.
    pub fn degree_range(&self, v: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.0[v]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Per-variable minimum exponent.
    pub fn min_exps(&self) -> Monomial {
        let n = self.ring.nvars();
        let mut lo = vec![i32::MAX; n];
        for m in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(m.0[i]);
            }
        }
        if self.terms.is_empty() {
            lo = vec![0; n];
        }
        Monomial::from_exps(lo)
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The part of `self` whose `v`-exponent equals `k`, with that exponent
    /// cleared.
    pub fn coefficient_in(&self, v: usize, k: i32) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[v] == k {
                let mut e = m.0.clone();
                e[v] = 0;
                out.terms.insert(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Terms with `v`-exponent at most `d`.
    pub fn truncate_in(&self, v: usize, d: i32) -> Self {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division. Fails with `InexactDivision` when `d` does not divide
    /// `self` in the Laurent ring.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<Self, SymError> {
        self.check_ring(d);
        if d.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if let Some((m, c)) = d.as_term() {
            let mi = m.inv();
            let mut out = Self::zero(&self.ring);
            for (k, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return Err(SymError::InexactDivision);
                }
                out.terms.insert(k.mul(&mi), q);
            }
            return Ok(out);
        }
        // Shift both to honest polynomials without monomial factors, then run
        // ordinary division; a single divisor is its own Groebner basis so the
        // remainder is zero exactly when the division is exact.
        let sp = self.min_exps();
        let sd = d.min_exps();
        let mut r = self.mul_monomial(&sp.inv());
        let dd = d.mul_monomial(&sd.inv());
        let (lm, lc) = {
            let (m, c) = dd.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut quot = Self::zero(&self.ring);
        while let Some((m, c)) = r.leading() {
            if !m.divisible_by(&lm) {
                return Err(SymError::InexactDivision);
            }
            let (qc, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return Err(SymError::InexactDivision);
            }
            let qm = m.div(&lm);
            for (k, v) in &dd.terms {
                r.add_term(k.mul(&qm), -(v * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot.mul_monomial(&sp.div(&sd)))
    }

    /// Substitute variables by Laurent polynomials. Variables without an
    /// assignment are kept. Negative powers need a unit monomial image.
    pub fn substitute(
        &self,
        target: &Ring,
        assign: &HashMap<usize, LaurentPoly>,
    ) -> Result<Self, SymError> {
        let n = self.ring.nvars();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let img = match assign.get(&i) {
                Some(p) => {
                    if p.ring != *target {
                        return Err(SymError::RingMismatch);
                    }
                    p.clone()
                }
                None => {
                    let name = &self.ring.names()[i];
                    target.var(name)?
                }
            };
            images.push(img);
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[i].powi(e)?;
                        cache.insert((i, e), p.clone());
                        p
                    }
                };
                t = &t * &p;
            }
            out += &t;
        }
        Ok(out)
    }

    /// Re-express in another ring by variable name.
    pub fn embed(&self, target: &Ring) -> Result<Self, SymError> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .ring
            .names()
            .iter()
            .map(|n| target.index(n).ok_or_else(|| SymError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial::from_exps(e), c.clone());
        }
        Ok(out)
    }

    /// Exact rational evaluation. `None` when a zero is raised to a negative
    /// power.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if point[i].is_zero() && e < 0 {
                    return None;
                }
                let b = if e < 0 { point[i].recip() } else { point[i].clone() };
                t *= num_traits::pow(b, e.unsigned_abs() as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    fn fmt_mono(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.names()[i])?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text: terms by descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                self.fmt_mono(m, f)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        self.check_ring(o);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        self.check_ring(o);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.check_ring(o);
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return o.mul_monomial(m).scale(c);
        }
        if o.terms.len() == 1 {
            let (m, c) = o.terms.iter().next().unwrap();
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                *acc.entry(a.mul(b)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        LaurentPoly {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$f(o)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xq() -> Ring {
        Ring::new(&["x", "q"])
    }

    fn m(r: &Ring, a: i32, b: i32) -> LaurentPoly {
        LaurentPoly::mono(r, &[(0, a), (1, b)])
    }

    #[test]
    fn difference_of_squares() {
        let r = xq();
        let one = LaurentPoly::one(&r);
        let a = &one - &m(&r, 1, 7);
        let b = &one + &m(&r, 1, 7);
        assert_eq!(&a * &b, &one - &m(&r, 2, 14));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let r = xq();
        let p = &(&LaurentPoly::one(&r) - &m(&r, 1, 8)) * &(&LaurentPoly::one(&r) + &m(&r, 2, 13));
        assert_eq!(p.to_string(), "-x^3*q^21 + x^2*q^13 - x*q^8 + 1");
        assert_eq!(LaurentPoly::zero(&r).to_string(), "0");
        assert_eq!(m(&r, 0, -1).scale(&BigInt::from(-3)).to_string(), "-3*q^-1");
    }

    #[test]
    fn exact_division_and_failure() {
        let r = xq();
        let one = LaurentPoly::one(&r);
        let a = &one - &m(&r, 1, 7);
        let b = &m(&r, -2, 3) + &m(&r, 5, 0).scale(&BigInt::from(4));
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        let c = &one + &m(&r, 1, 0);
        assert_eq!(p.div_exact(&c), Err(SymError::InexactDivision));
        assert_eq!(p.div_exact(&LaurentPoly::zero(&r)), Err(SymError::DivisionByZero));
        // content is respected
        let two = LaurentPoly::constant(&r, 2);
        assert_eq!(a.div_exact(&two), Err(SymError::InexactDivision));
    }

    #[test]
    fn substitute_monomials() {
        let r = Ring::new(&["x", "q", "X1", "X2"]);
        let f = &LaurentPoly::one(&r) - &LaurentPoly::mono(&r, &[(2, 1), (3, 7)]);
        let mut a = HashMap::new();
        a.insert(2, LaurentPoly::var(&r, 0));
        a.insert(3, LaurentPoly::var(&r, 1));
        let g = f.substitute(&r, &a).unwrap();
        let want = &LaurentPoly::one(&r) - &LaurentPoly::mono(&r, &[(0, 1), (1, 7)]);
        assert_eq!(g, want);
        assert_eq!(f.substitute(&r, &HashMap::new()).unwrap(), f);
    }

    #[test]
    fn negative_power_needs_unit() {
        let r = xq();
        let p = &LaurentPoly::one(&r) + &m(&r, 1, 0);
        assert!(p.powi(-1).is_err());
        assert_eq!(m(&r, 1, 2).scale(&BigInt::from(-1)).powi(-3).unwrap(), m(&r, -3, -6).scale(&BigInt::from(-1)));
    }

    #[test]
    fn coefficient_extraction() {
        let r = xq();
        let p = &(&m(&r, 2, 3) + &m(&r, 2, 5)) + &m(&r, 1, 1);
        assert_eq!(p.coefficient_in(0, 2), &m(&r, 0, 3) + &m(&r, 0, 5));
        assert_eq!(p.truncate_in(0, 1), m(&r, 1, 1));
        assert_eq!(p.degree_range(1), Some((1, 5)));
    }
}
