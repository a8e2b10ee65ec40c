//! The J-integral family: the summation oracle for `J_0(p^B, p^C)`, the
//! generating functions in `X_1..X_6`, the operators `T_0..T_4`, and the
//! case formulas for `I(s, t)`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{XQ, ZetaError};
use crate::symra::{parse, LaurentPoly, RatFunc};

/// Which version of the inner double sum of the oracle to use. `AsPrinted`
/// omits the `(x^2 q^14)^k` weight on the `k`-th block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Corrected,
    AsPrinted,
}

/// Which generating function `T_3 + T_4` act on in the assembly of `J0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Assembly {
    /// `T_3 + T_4` applied to `J2^2`.
    Corrected,
    /// `T_3 + T_4` applied to `J2^1`.
    AsPrinted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    BothUnit,
    T2Unit,
    T2Nonunit,
}

impl std::str::FromStr for Case {
    type Err = ZetaError;
    fn from_str(s: &str) -> Result<Self, ZetaError> {
        match s {
            "both-unit" => Ok(Case::BothUnit),
            "t2-unit" => Ok(Case::T2Unit),
            "t2-nonunit" => Ok(Case::T2Nonunit),
            _ => Err(ZetaError::BadCase(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TOp {
    T0,
    T1,
    T2,
    T3,
    T4,
}

fn p(xq: &XQ, s: &str) -> RatFunc {
    parse(&xq.ring, s).expect("fixed display parses")
}

/// `J_2(B, C, E)`; `E = None` stands for infinity.
pub fn j2(xq: &XQ, b: i64, c: i64, e: Option<i64>) -> Result<RatFunc, ZetaError> {
    if b.min(c).min(e.unwrap_or(i64::MAX)) < 0 {
        return Ok(RatFunc::zero(&xq.ring));
    }
    let (b, c) = (b as i32, c as i32);
    let pre = RatFunc::from_poly(&xq.b(1, 6) * &xq.b(b + 1, 7 * (b + 1)))
        .div_poly(&xq.b(1, 7))?
        .div_poly(&xq.b(1, 7))?
        .div_poly(&xq.b(2, 13))?;
    let lead = &xq.b(2, 12) * &xq.b(1, 6);
    let mid = &(&xq.b(1, 5) * &xq.b(2, 13)) * &xq.m(c + 1, 7 * (c + 1));
    let br = match e {
        Some(e) if (e as i32) < c => {
            let e = e as i32;
            &(&lead * &xq.b(2 * (e + 1), 13 * (e + 1))) - &(&mid * &xq.b(e + 1, 6 * (e + 1)))
        }
        _ => {
            let last = &(&(&xq.one_minus_qinv() * &xq.m(1, 6)) * &xq.b(1, 7)) * &xq.m(2 * (c + 1), 13 * (c + 1));
            &(&lead - &mid) + &last
        }
    };
    Ok(pre.mul_poly(&br))
}

/// `J_0(p^B, p^C)` by direct finite summation.
pub fn j_oracle(b: i64, c: i64, variant: Variant) -> Result<RatFunc, ZetaError> {
    if b > c {
        return Err(ZetaError::BadParams(format!("B = {b} > C = {c}")));
    }
    let xq = XQ::new();
    if b < 0 {
        return Ok(RatFunc::zero(&xq.ring));
    }
    let w = xq.one_minus_qinv();
    let j = |b, c, e| j2(&xq, b, c, e);
    let mut r = j(b, c, None)?;
    let mut s1 = RatFunc::zero(&xq.ring);
    let mut s2 = RatFunc::zero(&xq.ring);
    let mut s3 = RatFunc::zero(&xq.ring);
    for l in 1..=b {
        s1 = &s1 + &j(b - l, c - l, None)?.mul_poly(&xq.m(l as i32, 8 * l as i32));
    }
    for k in 1..=b {
        s2 = &s2 + &j(b - k, c, None)?.mul_poly(&xq.m(2 * k as i32, 13 * k as i32));
        let mut blk = RatFunc::zero(&xq.ring);
        for l in 0..k {
            blk = &blk + &j(b - k, c, Some(c - k + l))?.mul_poly(&xq.m(0, -l as i32));
        }
        for l in 1..=b - k {
            blk = &blk + &j(b - k - l, c - l, Some(c - k - l))?.mul_poly(&xq.m(l as i32, 8 * l as i32));
        }
        if variant == Variant::Corrected {
            blk = blk.mul_poly(&xq.m(2 * k as i32, 14 * k as i32));
        }
        s3 = &s3 + &blk;
    }
    r = &r + &(&s1 + &s2).mul_poly(&w);
    r = &r + &s3.mul_poly(&w.pow(2));
    Ok(r)
}

/// `J0 = J_0(p^B, p^C)` evaluated at `X = (x^{B+1}, q^{B+1}, x^{C+1}, q^{C+1})`.
pub fn specialize(ext: &XQ, f: &RatFunc, b: i64, c: i64) -> Result<RatFunc, ZetaError> {
    let xq = XQ::new();
    let (b, c) = (b as i32 + 1, c as i32 + 1);
    specialize_at(ext, f, [xq.m(b, 0), xq.m(0, b), xq.m(c, 0), xq.m(0, c)])
}

/// Substitute `X_1..X_4` by the given polynomials in `x, q`; `X_5, X_6` must
/// not occur.
pub fn specialize_at(ext: &XQ, f: &RatFunc, xs: [LaurentPoly; 4]) -> Result<RatFunc, ZetaError> {
    let xq = XQ::new();
    let mut assign: HashMap<usize, LaurentPoly> = HashMap::new();
    for (i, v) in xs.into_iter().enumerate() {
        assign.insert(i + 2, v);
    }
    for i in [6, 7] {
        if f.numerator().degree_range(i).is_some_and(|r| r != (0, 0)) {
            return Err(ZetaError::BadParams(format!("{} occurs", ext.ring.names()[i])));
        }
        assign.insert(i, LaurentPoly::one(&xq.ring));
    }
    Ok(f.substitute(&xq.ring, &assign)?)
}

impl XQ {
    /// `1 - q^{-1}`.
    pub fn one_minus_qinv(&self) -> LaurentPoly {
        self.b(0, -1)
    }

    /// `J2^1`.
    pub fn j21(&self) -> LaurentPoly {
        self.parse_poly(
            "(1-X1*X2^7)*((1-x^2*q^12)*(1-x*q^6)-(1-x*q^5)*(1-x^2*q^13)*X3*X4^7\
             +(1-q^-1)*x*q^6*(1-x*q^7)*X3^2*X4^13)",
        )
    }

    /// `J2^2`.
    pub fn j22(&self) -> LaurentPoly {
        self.parse_poly(
            "(1-X1*X2^7)*((1-x^2*q^12)*(1-x*q^6)*(1-X5^2*X6^13)\
             -X3*X4^7*(1-x*q^5)*(1-x^2*q^13)*(1-X5*X6^6))",
        )
    }

    fn parse_poly(&self, s: &str) -> LaurentPoly {
        crate::symra::parse_poly(&self.ring, s).expect("fixed display parses")
    }

    /// `1 / (1 - x^a q^b)`, rejecting `a = b = 0`.
    fn inv_b(&self, a: i32, b: i32, at: &[i32; 6]) -> Result<RatFunc, ZetaError> {
        if a == 0 && b == 0 {
            return Err(ZetaError::Singular(self.x_monomial(at).to_string()));
        }
        Ok(RatFunc::one(&self.ring).div_poly(&self.b(a, b))?)
    }

    /// `X_1^{e_1} ... X_6^{e_6}`.
    pub fn x_monomial(&self, e: &[i32; 6]) -> LaurentPoly {
        let exps: Vec<(usize, i32)> = e.iter().enumerate().map(|(i, &k)| (i + 2, k)).collect();
        LaurentPoly::mono(&self.ring, &exps)
    }

    fn xv(&self, i: usize, e: i32) -> LaurentPoly {
        LaurentPoly::mono(&self.ring, &[(i + 1, e)])
    }

    /// Value of an operator on a single monomial `X^n`.
    fn t_mono(&self, op: TOp, n: &[i32; 6]) -> Result<RatFunc, ZetaError> {
        let [n1, n2, n3, n4, n5, n6] = *n;
        let base = self.x_monomial(&[n1, n2, n3, n4, 0, 0]);
        if matches!(op, TOp::T0 | TOp::T1 | TOp::T2) && (n5 != 0 || n6 != 0) {
            return Err(ZetaError::BadParams(format!("{op:?} acts on X1..X4, got {}", self.x_monomial(n))));
        }
        let x12 = |a: i32, b: i32| &self.xv(1, a) * &self.xv(2, b);
        let v = match op {
            TOp::T0 => RatFunc::from_poly(&self.b(2 - n1 - n3, 14 - n2 - n4) * &self.b(3 - n1 - n3, 21 - n2 - n4)),
            TOp::T1 => {
                let (e1, e2) = (1 - n1 - n3, 8 - n2 - n4);
                self.inv_b(e1, e2, n)?.mul_poly(&(&self.m(e1, e2) - &x12(e1, e2)))
            }
            TOp::T2 => {
                let (a, b) = (2 - n1, 13 - n2);
                self.inv_b(a, b, n)?.mul_poly(&(&self.m(a, b) - &x12(a, b)))
            }
            TOp::T3 => {
                let (a, b) = (2 - n1 - n5, 14 - n2 - n6);
                let (c, d) = (2 - n1, 13 - n2);
                let ia = self.inv_b(a, b, n)?;
                let ic = self.inv_b(c, d, n)?;
                let first = (&ia * &ic).mul_poly(&self.m(a, b));
                let inner = &ic.mul_poly(&x12(c, d)) - &ia.mul_poly(&x12(a, b));
                let second = &self.inv_b(n5, n6 - 1, n)? * &inner;
                (&first + &second).mul_poly(&(&self.xv(3, n5) * &self.xv(4, n6)))
            }
            TOp::T4 => {
                let (a1, b1) = (1 - n1 - n3 - n5, 8 - n2 - n4 - n6);
                let (a2, b2) = (2 - n1 - n5, 14 - n2 - n6);
                let (c, d) = (1 + n3, 6 + n4);
                let i1 = self.inv_b(a1, b1, n)?;
                let i2 = self.inv_b(a2, b2, n)?;
                let ic = self.inv_b(c, d, n)?;
                let t1 = (&i1 * &i2).mul_poly(&self.m(3 - 2 * n1 - n3 - 2 * n5, 22 - 2 * n2 - n4 - 2 * n6));
                let t2 = (&i1 * &ic).mul_poly(&(&self.m(c, d) * &x12(a1, b1)));
                let t3 = (&i2 * &ic).mul_poly(&x12(a2, b2));
                (&(&t1 - &t2) + &t3).mul_poly(&(&self.xv(3, n5) * &self.xv(4, n6)))
            }
        };
        Ok(v.mul_poly(&base))
    }

    /// Apply an operator to a Laurent polynomial in `x, q, X_1..X_6`,
    /// linearly over the `x, q` coefficients.
    pub fn t_apply(&self, op: TOp, f: &LaurentPoly) -> Result<RatFunc, ZetaError> {
        let mut groups: BTreeMap<[i32; 6], LaurentPoly> = BTreeMap::new();
        for (m, c) in f.terms() {
            let e = m.exps();
            let key = [e[2], e[3], e[4], e[5], e[6], e[7]];
            let coef = LaurentPoly::monomial(
                &self.ring,
                crate::symra::Monomial::from_exps(vec![e[0], e[1], 0, 0, 0, 0, 0, 0]),
                c.clone(),
            );
            let _ = groups.entry(key).or_insert_with(|| LaurentPoly::zero(&self.ring));
            *groups.get_mut(&key).unwrap() += &coef;
        }
        let mut out = RatFunc::zero(&self.ring);
        for (n, c) in &groups {
            out = &out + &self.t_mono(op, n)?.mul_poly(c);
        }
        Ok(out)
    }

    /// `T_0` on a fraction whose denominator is free of the `X_i`.
    pub fn t0_fraction(&self, f: &RatFunc) -> Result<RatFunc, ZetaError> {
        let t = self.t_apply(TOp::T0, f.numerator())?;
        let num = t.as_poly().expect("T0 is polynomial").clone();
        Ok(f.with_numerator(num))
    }

    /// `(1-xq^6)/((1-xq^7)^2(1-x^2q^13))`.
    fn j_prefactor(&self) -> RatFunc {
        p(self, "(1-x*q^6)/((1-x*q^7)^2*(1-x^2*q^13))")
    }

    /// `J0` assembled from `J2^1`, `J2^2` and the operators.
    pub fn j0_assembled(&self, asm: Assembly) -> Result<RatFunc, ZetaError> {
        let w = self.one_minus_qinv();
        let j21 = self.j21();
        let j34 = match asm {
            Assembly::Corrected => self.j22(),
            Assembly::AsPrinted => j21.clone(),
        };
        let t12 = &self.t_apply(TOp::T1, &j21)? + &self.t_apply(TOp::T2, &j21)?;
        let t34 = &self.t_apply(TOp::T3, &j34)? + &self.t_apply(TOp::T4, &j34)?;
        let inner = &(&RatFunc::from_poly(j21) + &t12.mul_poly(&w)) + &t34.mul_poly(&w.pow(2));
        Ok(&self.j_prefactor() * &inner)
    }

    /// Closed form of `J0`, with the prefactors and the last line restored.
    pub fn j0_closed(&self) -> RatFunc {
        p(
            self,
            "(1-x*q^6)*(1-x^2*q^12)/((1-x*q^7)*(1-x^2*q^14)*(1-x^2*q^13))*(\
               (1-x*q^6)*(1-x^2*q^13)/(1-x*q^8)\
               -X1*X2^8*(1-x*q^5)*(1-x^2*q^14)/(1-x*q^8)\
               +(1-q^-1)*x*q^6*X1^2*X2^14)\
             +(1-x*q^6)/((1-x*q^7)^2*(1-x^2*q^13))*(\
               X3*X4^7*(1-x*q^5)*(-(1+x*q^6)*(1-x*q^7)*X2*q^-1\
                 +(1-x^2*q^13)*q^-1*X1*X2^7\
                 -(1-q^-1)*x*q^6*X1^2*X2^14)\
               +(1-q^-1)*x*q^5*(1-x*q^7)*X3^2*X4^13*(X2-X1*X2^8))",
        )
    }

    /// The closed form of `J0` exactly as displayed.
    pub fn j0_printed(&self) -> RatFunc {
        p(
            self,
            "(1-x*q^6)*(1-x^2*q^12)*(1-x*q^7)^3/((1-x^2*q^14)^3*(1-x^2*q^13))*(\
               (1-x*q^6)*(1-x^2*q^13)/(1-q^8*x)\
               -X1*X2^8*(1-x*q^5)*(1-x^2*q^14)/(1-x*q^8)\
               +(1-q^-1)*x*q^6*X1^2*X2^14)\
             +X3*X4^7*(1-q^5*x)*(-(1+q^6*x)*(1-q^7*x)*X2*q^-1\
               +(1-q^13*x^2)*q^-1*X1*X2^7\
               -(1-q^-1)*q^6*x*X1^2*X2^14)\
             +X3^2*X4^13*(1-q^-1)/(x*q^7*(1-q^8*x))*(\
               (1-q^8*x)*(1+x^2*q^12-x^2*q^13-x^3*q^19)*X2\
               +x*q^8*(1-x*q^4-x*q^6+x^2*q^11+x^2*q^12-x^2*q^13)*X1*X2^8)",
        )
    }

    /// `[T_0.J0]` in closed form; `printed` selects the displayed middle term
    /// `(1-xq^6)(1-xq^8)X3X4^7` instead of `(1-xq^5)(1-xq^6)X1X2^8`.
    pub fn t0_j0_display(&self, printed: bool) -> RatFunc {
        let mid = if printed { "(1-x*q^6)*(1-x*q^8)*X3*X4^7" } else { "(1-x*q^5)*(1-x*q^6)*X1*X2^8" };
        p(
            self,
            &format!(
                "(1-x*q^6)*(1-x^2*q^12)/((1-x*q^7)*(1-x*q^8))*(\
                   (1-x*q^6)*(1-x^3*q^21)-{mid}-q^-1*X2*X3*X4^7*(1-x*q^5)*(1-x*q^8))"
            ),
        )
    }

    /// `I_0(n, m)` with `(xq^8)^{m+1} = X1 X2^8` and
    /// `(xq^8)^m (xq^7)^{n+1} = q^{-1} X2 X3 X4^7`.
    pub fn i0_generic(&self) -> LaurentPoly {
        self.parse_poly(
            "(1-x*q^6)*(1-x^3*q^21)-(1-x*q^5)*(1-x*q^6)*X1*X2^8-q^-1*X2*X3*X4^7*(1-x*q^5)*(1-x*q^8)",
        )
    }
}

/// `Z I_0(n, m) / ((1-xq^7)(1-xq^8))`.
pub fn theorem_value(n: i64, m: i64) -> Result<RatFunc, ZetaError> {
    let xq = XQ::new();
    Ok(RatFunc::from_poly(&xq.z() * &xq.i0(n, m)).div_poly(&xq.b(1, 7))?.div_poly(&xq.b(1, 8))?)
}

/// `I(s, t)` for valuations `(n, m)` through the case formulas, with `J_0`
/// evaluated by `j0`.
pub fn closed_i_with(
    n: i64,
    m: i64,
    case: Case,
    j0: &dyn Fn(i64, i64) -> Result<RatFunc, ZetaError>,
) -> Result<RatFunc, ZetaError> {
    let xq = XQ::new();
    let pre = xq.p0()?.mul_poly(&xq.b(1, 7));
    let j0z = |b: i64, c: i64| if b < 0 || c < 0 { Ok(RatFunc::zero(&xq.ring)) } else { j0(b, c) };
    let inner = match case {
        Case::BothUnit => {
            if n != 0 || m != 0 {
                return Err(ZetaError::BadParams("both-unit needs n = m = 0".into()));
            }
            let one = LaurentPoly::one(&xq.ring);
            j0z(0, 0)?.mul_poly(&(&one + &xq.m(3, 18)))
        }
        Case::T2Unit => {
            if m != 0 || n < 1 {
                return Err(ZetaError::BadParams("t2-unit needs m = 0 < n".into()));
            }
            &j0z(0, n)? - &j0z(0, n - 2)?.mul_poly(&xq.m(4, 26))
        }
        Case::T2Nonunit => {
            if m < 1 || n < 0 {
                return Err(ZetaError::BadParams("t2-nonunit needs m >= 1".into()));
            }
            let (b, c) = (m, n + m);
            let one = LaurentPoly::one(&xq.ring);
            let k1 = &xq.m(2, 14) * &(&one + &xq.m(1, 7));
            &(&j0z(b, c)? - &j0z(b - 1, c - 1)?.mul_poly(&k1)) + &j0z(b - 2, c - 2)?.mul_poly(&xq.m(5, 35))
        }
    };
    Ok(&pre * &inner)
}

/// `I(s, t)` through the case formulas with `J_0` from the closed form.
pub fn closed_i(n: i64, m: i64, case: Case) -> Result<RatFunc, ZetaError> {
    let ext = XQ::ext();
    let j0 = ext.j0_closed();
    closed_i_with(n, m, case, &|b, c| specialize(&ext, &j0, b, c))
}

/// The generic form of the `t2`-nonunit case: `(1-xq^7) P_0 [T_0.J0]`
/// compared with `Z I_0 / ((1-xq^7)(1-xq^8))` as fractions in `X_1..X_4`.
pub fn t2_nonunit_generic() -> Result<(RatFunc, RatFunc), ZetaError> {
    let ext = XQ::ext();
    let t0 = ext.t0_fraction(&ext.j0_assembled(Assembly::Corrected)?)?;
    let pre = XQ::new().p0()?.embed(&ext.ring)?.mul_poly(&ext.b(1, 7));
    let lhs = &pre * &t0;
    let rhs = RatFunc::from_poly(&ext.z() * &ext.i0_generic()).div_poly(&ext.b(1, 7))?.div_poly(&ext.b(1, 8))?;
    Ok((lhs, rhs))
}

/// The `t2`-unit case with `t_1` symbolic: `X_3 = x^{n+1}`, `X_4 = q^{n+1}`
/// kept as variables and `X_1 = x`, `X_2 = q`.
pub fn t2_unit_generic() -> Result<(RatFunc, RatFunc), ZetaError> {
    let ext = XQ::ext();
    let j0 = ext.j0_closed();
    let sub = |x3: LaurentPoly, x4: LaurentPoly| -> Result<RatFunc, ZetaError> {
        let mut a: HashMap<usize, LaurentPoly> = HashMap::new();
        a.insert(2, ext.m(1, 0));
        a.insert(3, ext.m(0, 1));
        a.insert(4, x3);
        a.insert(5, x4);
        Ok(j0.substitute(&ext.ring, &a)?)
    };
    let x3 = ext.xv(3, 1);
    let x4 = ext.xv(4, 1);
    let a = sub(x3.clone(), x4.clone())?;
    let b = sub(&x3 * &ext.m(-2, 0), &x4 * &ext.m(0, -2))?;
    let inner = &a - &b.mul_poly(&ext.m(4, 26));
    let pre = XQ::new().p0()?.embed(&ext.ring)?.mul_poly(&ext.b(1, 7));
    let lhs = &pre * &inner;
    // I_0(n, 0) with (xq^7)^{n+1} = X3 X4^7
    let i0 = crate::symra::parse_poly(
        &ext.ring,
        "(1-x*q^6)*(1-x^3*q^21)-(1-x*q^5)*(1-x*q^6)*x*q^8-(1-x*q^8)*(1-x*q^5)*X3*X4^7",
    )?;
    let rhs = RatFunc::from_poly(&ext.z() * &i0).div_poly(&ext.b(1, 7))?.div_poly(&ext.b(1, 8))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn j2_vanishes_below_zero() {
        let xq = XQ::new();
        assert!(j2(&xq, -1, 3, None).unwrap().is_zero());
        assert!(j2(&xq, 1, -1, Some(2)).unwrap().is_zero());
        assert!(j2(&xq, 1, 2, Some(-1)).unwrap().is_zero());
        assert!(!j2(&xq, 0, 0, None).unwrap().is_zero());
    }

    #[test]
    fn oracle_trivial_sums() {
        let xq = XQ::new();
        assert_eq!(j_oracle(0, 0, Variant::Corrected).unwrap(), j2(&xq, 0, 0, None).unwrap());
        assert_eq!(j_oracle(0, 4, Variant::AsPrinted).unwrap(), j2(&xq, 0, 4, None).unwrap());
        assert!(matches!(j_oracle(3, 2, Variant::Corrected), Err(ZetaError::BadParams(_))));
    }

    #[test]
    fn oracle_matches_closed_form() {
        let ext = XQ::ext();
        let j0 = ext.j0_closed();
        assert_eq!(j_oracle(2, 3, Variant::Corrected).unwrap(), specialize(&ext, &j0, 2, 3).unwrap());
        assert_ne!(j_oracle(2, 3, Variant::AsPrinted).unwrap(), specialize(&ext, &j0, 2, 3).unwrap());
    }

    #[test]
    fn t2_on_a_binomial() {
        let ext = XQ::ext();
        let f = crate::symra::parse_poly(&ext.ring, "1-X1*X2^7").unwrap();
        let want = parse(
            &ext.ring,
            "x^2*q^13/(1-x^2*q^13)-x*q^6*X1*X2^7/(1-x*q^6)+x*q^6*X1^2*X2^13*(1-x*q^7)/((1-x*q^6)*(1-x^2*q^13))",
        )
        .unwrap();
        assert_eq!(ext.t_apply(TOp::T2, &f).unwrap(), want);
    }

    #[test]
    fn t1_on_one() {
        let ext = XQ::ext();
        let one = LaurentPoly::one(&ext.ring);
        let want = parse(&ext.ring, "(x*q^8-X1*X2^8)/(1-x*q^8)").unwrap();
        assert_eq!(ext.t_apply(TOp::T1, &one).unwrap(), want);
    }

    #[test]
    fn singular_monomial_is_named() {
        let ext = XQ::ext();
        let f = ext.x_monomial(&[1, 8, 0, 0, 0, 0]);
        match ext.t_apply(TOp::T1, &f) {
            Err(ZetaError::Singular(s)) => assert_eq!(s, "X1*X2^8"),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn t0_of_assembly_matches_display() {
        let ext = XQ::ext();
        let t0 = ext.t0_fraction(&ext.j0_closed()).unwrap();
        assert_eq!(t0, ext.t0_j0_display(false));
        assert_ne!(t0, ext.t0_j0_display(true));
    }

    #[test]
    fn both_unit_case() {
        assert_eq!(closed_i(0, 0, Case::BothUnit).unwrap(), theorem_value(0, 0).unwrap());
        assert!(closed_i(1, 0, Case::BothUnit).is_err());
        assert!("sideways".parse::<Case>().is_err());
    }

    #[test]
    fn small_cases_both_routes() {
        let oracle = |b, c| j_oracle(b, c, Variant::Corrected);
        for (n, m, case) in [(1, 0, Case::T2Unit), (2, 0, Case::T2Unit), (1, 1, Case::T2Nonunit), (0, 2, Case::T2Nonunit)] {
            let want = theorem_value(n, m).unwrap();
            assert_eq!(closed_i(n, m, case).unwrap(), want, "({n},{m})");
            assert_eq!(closed_i_with(n, m, case, &oracle).unwrap(), want, "({n},{m})");
        }
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(i32, i32, [i32; 6], i64)>> {
        prop::collection::vec(
            (-2i32..3, -3i32..4, prop::array::uniform6(0i32..3), -3i64..4),
            1..4,
        )
    }

    fn build(ext: &XQ, terms: &[(i32, i32, [i32; 6], i64)], op: TOp) -> LaurentPoly {
        let mut f = LaurentPoly::zero(&ext.ring);
        for (a, b, e, c) in terms {
            let mut e = *e;
            if matches!(op, TOp::T0 | TOp::T1 | TOp::T2) {
                e[4] = 0;
                e[5] = 0;
            }
            f += &(&ext.x_monomial(&e) * &ext.m(*a, *b)).scale(&num_bigint::BigInt::from(*c));
        }
        f
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn t_operators_are_linear(f in arb_poly(), g in arb_poly(), k in -3i64..4, op in 0usize..5) {
            let ext = XQ::ext();
            let op = [TOp::T0, TOp::T1, TOp::T2, TOp::T3, TOp::T4][op];
            let (f, g) = (build(&ext, &f, op), build(&ext, &g, op));
            let (tf, tg) = match (ext.t_apply(op, &f), ext.t_apply(op, &g)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Ok(()),
            };
            prop_assert_eq!(ext.t_apply(op, &(&f + &g)).unwrap(), &tf + &tg);
            let c = LaurentPoly::constant(&ext.ring, k);
            prop_assert_eq!(ext.t_apply(op, &(&f * &c)).unwrap(), tf.mul_poly(&c));
        }
    }
}
