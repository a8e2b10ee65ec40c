use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{LaurentPoly, Monomial, Ring};
use super::SymError;

/// Irreducible denominator factor `Phi_d(M)` with `M` a primitive monomial
/// whose first nonzero exponent is positive. For `d = 1` the factor is stored
/// as `1 - M` rather than `M - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloFactor {
    pub dir: Monomial,
    pub order: u32,
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Coefficients (constant first) of the standard cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let f = cyclotomic(d);
        p = div_monic(&p, &f);
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn div_monic(p: &[i64], f: &[i64]) -> Vec<i64> {
    let mut r = p.to_vec();
    let df = f.len() - 1;
    let dq = r.len() - 1 - df;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + df];
        q[i] = c;
        for (j, &fj) in f.iter().enumerate() {
            r[i + j] -= c * fj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

impl CycloFactor {
    pub fn new(dir: Monomial, order: u32) -> Self {
        debug_assert!(order >= 1);
        CycloFactor { dir, order }
    }

    /// The factor as a Laurent polynomial.
    pub fn poly(&self, ring: &Ring) -> LaurentPoly {
        if self.order == 1 {
            return &LaurentPoly::one(ring) - &LaurentPoly::monomial(ring, self.dir.clone(), 1);
        }
        let c = cyclotomic(self.order);
        LaurentPoly::from_terms(
            ring,
            c.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (self.dir.pow(i as i32), BigInt::from(v))),
        )
    }

    /// `C` with `poly * C = 1 - M^d`.
    pub fn companion(&self, ring: &Ring) -> LaurentPoly {
        let mut c = LaurentPoly::one(ring);
        for e in divisors(self.order) {
            if e < self.order {
                c = &c * &CycloFactor::new(self.dir.clone(), e).poly(ring);
            }
        }
        c
    }
}

/// Split `p` as `unit * prod(factors)` where `unit` is a signed monomial and
/// every factor is an irreducible cyclotomic piece of a binomial.
pub fn decompose_binomial(p: &LaurentPoly) -> Result<(LaurentPoly, Vec<CycloFactor>), SymError> {
    let ring = p.ring();
    if p.is_zero() {
        return Err(SymError::DivisionByZero);
    }
    if p.len() == 1 {
        return Ok((p.clone(), vec![]));
    }
    if p.len() != 2 {
        return Err(SymError::NotBinomial(p.to_string()));
    }
    let mut it = p.terms();
    let (m2, c2) = it.next().unwrap();
    let (m1, c1) = it.next().unwrap();
    if c1.abs() != c2.abs() {
        return Err(SymError::NotBinomial(p.to_string()));
    }
    // p = c2*M2*(1 - eps*N)
    let eps: i32 = if c1 == c2 { -1 } else { 1 };
    let n = m1.div(m2);
    let g = n.gcd_exps();
    let mut prim = Monomial::from_exps(n.exps().iter().map(|e| e / g).collect());
    let mut unit = LaurentPoly::monomial(ring, m2.clone(), c2.clone());
    let first = prim.exps().iter().find(|&&e| e != 0).copied().unwrap_or(0);
    if first < 0 {
        prim = prim.inv();
        // 1 - eps*P^-g = -eps*P^-g * (1 - eps*P^g)
        unit = &unit * &LaurentPoly::monomial(ring, prim.pow(-g), BigInt::from(-eps));
    }
    let g = g as u32;
    let orders: Vec<u32> = if eps == 1 {
        divisors(g)
    } else {
        divisors(2 * g).into_iter().filter(|d| g % d != 0).collect()
    };
    Ok((
        unit,
        orders.into_iter().map(|d| CycloFactor::new(prim.clone(), d)).collect(),
    ))
}

/// Units of the Laurent ring over the integers: signed monomials.
pub fn is_unit(p: &LaurentPoly) -> bool {
    p.as_term().map(|(_, c)| c.abs().is_one()).unwrap_or(false)
}
