use std::ops::{Add, Mul, Sub};

use super::cyclo::CycloFactor;
use super::poly::{LaurentPoly, Monomial, Ring};
use super::ratfunc::RatFunc;
use super::SymError;

/// Power series in one variable truncated after a fixed degree, with
/// coefficients that are fractions free of that variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    var: usize,
    coeffs: Vec<RatFunc>,
}

impl Series {
    pub fn zero(ring: &Ring, var: usize, degree: u32) -> Self {
        Series {
            var,
            coeffs: vec![RatFunc::zero(ring); degree as usize + 1],
        }
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn ring(&self) -> &Ring {
        self.coeffs[0].ring()
    }

    pub fn coeff(&self, k: usize) -> &RatFunc {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Split a polynomial by degree in the series variable.
    pub fn from_poly(p: &LaurentPoly, var: usize, degree: u32) -> Result<Self, SymError> {
        let ring = p.ring();
        let mut out = Self::zero(ring, var, degree);
        let mut parts: Vec<LaurentPoly> = vec![LaurentPoly::zero(ring); degree as usize + 1];
        for (m, c) in p.terms() {
            let e = m.exps()[var];
            if e < 0 {
                return Err(SymError::NotPowerSeries(format!(
                    "negative power of {} in {}",
                    ring.names()[var],
                    p
                )));
            }
            if e as u32 > degree {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[var] = 0;
            parts[e as usize].add_term(Monomial::from_exps(ex), c.clone());
        }
        for (k, part) in parts.into_iter().enumerate() {
            out.coeffs[k] = RatFunc::from_poly(part);
        }
        Ok(out)
    }

    /// Expand a fraction. Denominator factors that involve the series
    /// variable are expanded geometrically; the others stay in the
    /// coefficients.
    pub fn from_ratfunc(f: &RatFunc, var: usize, degree: u32) -> Result<Self, SymError> {
        let ring = f.ring().clone();
        let mut s = Self::from_poly(f.numerator(), var, degree)?;
        let mut fixed: Vec<(CycloFactor, u32)> = Vec::new();
        for (fac, k) in f.den_factors() {
            let e = fac.dir.exps()[var];
            if e == 0 {
                fixed.push((fac.clone(), k));
                continue;
            }
            // 1/Phi_d(M) = C_d(M)/(1 - M^d); flip to a positive exponent first.
            let (num, n) = if e > 0 {
                let n = LaurentPoly::monomial(&ring, fac.dir.pow(fac.order as i32), 1);
                (fac.companion(&ring), n)
            } else {
                let inv = CycloFactor::new(fac.dir.inv(), fac.order);
                let m = LaurentPoly::monomial(&ring, fac.dir.inv(), 1);
                let unit = if fac.order == 1 {
                    -&m
                } else {
                    let phi = super::cyclo::cyclotomic(fac.order).len() as u32 - 1;
                    m.pow(phi)
                };
                let n = LaurentPoly::monomial(&ring, inv.dir.pow(fac.order as i32), 1);
                (&inv.companion(&ring) * &unit, n)
            };
            let ne = n.as_term().unwrap().0.exps()[var];
            let mut geo = LaurentPoly::zero(&ring);
            let mut j = 0;
            while j * ne <= degree as i32 {
                geo += &n.pow(j as u32);
                j += 1;
            }
            let factor = &num * &geo;
            for _ in 0..k {
                s = s.mul_poly(&factor)?;
            }
        }
        if !fixed.is_empty() {
            let mut d = LaurentPoly::one(&ring);
            for (fac, k) in &fixed {
                d = &d * &fac.poly(&ring).pow(*k);
            }
            let mut coeffs = Vec::with_capacity(s.coeffs.len());
            for c in &s.coeffs {
                let mut c = c.clone();
                for (fac, k) in &fixed {
                    for _ in 0..*k {
                        c = c.div_poly(&fac.poly(&ring))?;
                    }
                }
                coeffs.push(c);
            }
            s.coeffs = coeffs;
        }
        Ok(s)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self, SymError> {
        let other = Self::from_poly(p, self.var, self.degree())?;
        Ok(self * &other)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Drop everything above `degree`.
    pub fn truncate(&self, degree: u32) -> Self {
        let n = (degree as usize + 1).min(self.coeffs.len());
        Series {
            var: self.var,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Reassemble as a single fraction.
    pub fn to_ratfunc(&self) -> RatFunc {
        let ring = self.ring().clone();
        let mut acc = RatFunc::zero(&ring);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = LaurentPoly::mono(&ring, &[(self.var, k as i32)]);
            acc = &acc + &c.mul_poly(&m);
        }
        acc
    }

    /// Polynomial form; fails if a coefficient still has a denominator.
    pub fn to_poly(&self) -> Result<LaurentPoly, SymError> {
        let ring = self.ring().clone();
        let mut acc = LaurentPoly::zero(&ring);
        for (k, c) in self.coeffs.iter().enumerate() {
            let p = c.as_poly().ok_or_else(|| {
                SymError::NotPowerSeries(format!("coefficient of degree {k} is not a polynomial"))
            })?;
            acc += &(p * &LaurentPoly::mono(&ring, &[(self.var, k as i32)]));
        }
        Ok(acc)
    }

    /// First degree at which two series differ.
    pub fn first_difference(&self, o: &Series) -> Option<usize> {
        let n = self.coeffs.len().min(o.coeffs.len());
        (0..n).find(|&k| self.coeffs[k] != o.coeffs[k])
    }
}

fn check(a: &Series, b: &Series) {
    assert_eq!(a.var, b.var, "series in different variables");
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        check(self, o);
        let n = self.coeffs.len().min(o.coeffs.len());
        Series {
            var: self.var,
            coeffs: (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(),
        }
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        check(self, o);
        let n = self.coeffs.len().min(o.coeffs.len());
        Series {
            var: self.var,
            coeffs: (0..n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(),
        }
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        check(self, o);
        let n = self.coeffs.len().min(o.coeffs.len());
        let ring = self.ring().clone();
        let mut coeffs = vec![RatFunc::zero(&ring); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        Series { var: self.var, coeffs }
    }
}

/// Expansion of `f` in `var` through degree `degree`, as a polynomial. Every
/// denominator factor must involve `var`.
pub fn truncate(f: &RatFunc, var: usize, degree: u32) -> Result<LaurentPoly, SymError> {
    for (fac, _) in f.den_factors() {
        if fac.dir.exps()[var] == 0 {
            return Err(SymError::NotPowerSeries(format!(
                "denominator factor {} is free of {}",
                fac.poly(f.ring()),
                f.ring().names()[var]
            )));
        }
    }
    Series::from_ratfunc(f, var, degree)?.to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let r = Ring::new(&["x", "q"]);
        let f = RatFunc::one(&r)
            .div_poly(&(&LaurentPoly::one(&r) - &LaurentPoly::mono(&r, &[(0, 1), (1, 8)])))
            .unwrap();
        let t = truncate(&f, 0, 2).unwrap();
        let want = &(&LaurentPoly::one(&r) + &LaurentPoly::mono(&r, &[(0, 1), (1, 8)]))
            + &LaurentPoly::mono(&r, &[(0, 2), (1, 16)]);
        assert_eq!(t, want);
    }

    #[test]
    fn x_free_denominator_rejected() {
        let r = Ring::new(&["x", "q"]);
        let f = RatFunc::one(&r)
            .div_poly(&(&LaurentPoly::one(&r) - &LaurentPoly::mono(&r, &[(1, 1)])))
            .unwrap();
        assert!(matches!(truncate(&f, 0, 3), Err(SymError::NotPowerSeries(_))));
        // but the series type keeps it in the coefficients
        let s = Series::from_ratfunc(&f, 0, 3).unwrap();
        assert_eq!(s.coeff(0), &f);
        assert!(s.coeff(1).is_zero());
    }

    #[test]
    fn higher_cyclotomic_factor_expands() {
        let r = Ring::new(&["x", "q"]);
        // 1/(1 + x q^3) contains Phi_2
        let one = LaurentPoly::one(&r);
        let b = &one + &LaurentPoly::mono(&r, &[(0, 1), (1, 3)]);
        let f = RatFunc::one(&r).div_poly(&b).unwrap();
        let s = Series::from_ratfunc(&f, 0, 4).unwrap();
        let back = s.mul_poly(&b).unwrap();
        assert_eq!(back.to_poly().unwrap(), one);
    }

    #[test]
    fn truncation_tower() {
        let r = Ring::new(&["x", "q"]);
        let one = LaurentPoly::one(&r);
        let f = RatFunc::from_poly(&one + &LaurentPoly::mono(&r, &[(1, 2)]))
            .div_poly(&(&one - &LaurentPoly::mono(&r, &[(0, 2), (1, 12)])))
            .unwrap()
            .div_poly(&(&one + &LaurentPoly::mono(&r, &[(0, 1), (1, -1)])))
            .unwrap();
        let t5 = truncate(&f, 0, 5).unwrap();
        let t4 = truncate(&f, 0, 4).unwrap();
        assert_eq!(t5.truncate_in(0, 4), t4);
    }
}

