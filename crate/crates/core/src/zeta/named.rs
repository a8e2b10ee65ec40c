//! Named polynomial families, zeta multisets and Gindikin-Karpelevich
//! products.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{XQ, ZetaError};
use crate::rootsys::{Root, RootSystem};
use crate::symra::{LaurentPoly, RatFunc};
use crate::weyl::{WeylElt, WeylGroup};

/// Multiset of factors `zeta(17 k s - j)^e`, keyed by `(k, j)`. Under
/// `x = q^{-17s}` each factor is `1 / (1 - x^k q^j)`. The multiple `k` also
/// labels the character power `chi^k` of an L-factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZetaMultiset(pub BTreeMap<(u32, i64), i64>);

impl ZetaMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_list(num: &[(u32, i64)], den: &[(u32, i64)]) -> Self {
        let mut z = Self::new();
        for &f in num {
            z.add(f, 1);
        }
        for &f in den {
            z.add(f, -1);
        }
        z
    }

    pub fn add(&mut self, f: (u32, i64), e: i64) {
        let v = self.0.entry(f).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(&f);
        }
    }

    pub fn mul(&self, o: &ZetaMultiset) -> ZetaMultiset {
        let mut z = self.clone();
        for (&f, &e) in &o.0 {
            z.add(f, e);
        }
        z
    }

    pub fn inv(&self) -> ZetaMultiset {
        ZetaMultiset(self.0.iter().map(|(&f, &e)| (f, -e)).collect())
    }

    /// Factors with positive exponent.
    pub fn numerator(&self) -> ZetaMultiset {
        ZetaMultiset(self.0.iter().filter(|(_, &e)| e > 0).map(|(&f, &e)| (f, e)).collect())
    }

    /// Factors with negative exponent, as a multiset with positive exponents.
    pub fn denominator(&self) -> ZetaMultiset {
        ZetaMultiset(self.0.iter().filter(|(_, &e)| e < 0).map(|(&f, &e)| (f, -e)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of `(1 - x^k q^j)^{-e}`.
    pub fn to_ratfunc(&self, xq: &XQ) -> Result<RatFunc, ZetaError> {
        let mut num = LaurentPoly::one(&xq.ring);
        let mut r = RatFunc::one(&xq.ring);
        for (&(k, j), &e) in &self.0 {
            let b = xq.b(k as i32, j as i32);
            if e < 0 {
                num = &num * &b.pow((-e) as u32);
            } else {
                for _ in 0..e {
                    r = r.div_poly(&b)?;
                }
            }
        }
        Ok(r.mul_poly(&num))
    }
}

fn fmt_factor(f: &mut fmt::Formatter<'_>, (k, j): (u32, i64), e: i64) -> fmt::Result {
    write!(f, "zeta({}s", 17 * k)?;
    match j.cmp(&0) {
        std::cmp::Ordering::Greater => write!(f, "-{j}")?,
        std::cmp::Ordering::Less => write!(f, "+{}", -j)?,
        _ => {}
    }
    write!(f, ")")?;
    if e != 1 {
        write!(f, "^{e}")?;
    }
    Ok(())
}

impl fmt::Display for ZetaMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator();
        let den = self.denominator();
        let side = |f: &mut fmt::Formatter<'_>, z: &ZetaMultiset| -> fmt::Result {
            if z.is_empty() {
                return write!(f, "1");
            }
            for (i, (&k, &e)) in z.0.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                fmt_factor(f, k, e)?;
            }
            Ok(())
        };
        side(f, &num)?;
        if !den.is_empty() {
            write!(f, " / (")?;
            side(f, &den)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `N(s) = zeta(17s) prod_{i=2..6} zeta(17s-i) prod_{i=5..8} zeta(34s-2i) zeta(51s-21)`.
pub fn normalizing_factor() -> ZetaMultiset {
    let mut l = vec![(1, 0)];
    l.extend((2..=6).map(|i| (1, i)));
    l.extend((5..=8).map(|i| (2, 2 * i)));
    l.push((3, 21));
    ZetaMultiset::from_list(&l, &[])
}

/// `Z_1(s)` as a ratio of L-factors with the trivial character.
pub fn z1() -> ZetaMultiset {
    ZetaMultiset::from_list(
        &[(1, 10), (1, 11), (1, 12), (1, 13), (1, 14), (1, 16)],
        &[(1, 0), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6)],
    )
}

pub fn z2() -> ZetaMultiset {
    ZetaMultiset::from_list(
        &[(2, 17), (2, 19), (2, 21), (2, 23), (3, 29)],
        &[(2, 10), (2, 12), (2, 14), (2, 16), (3, 21)],
    )
}

/// Expected intertwining constant of `w''`.
pub fn w_double_prime_expected() -> ZetaMultiset {
    ZetaMultiset::from_list(
        &[(1, 6), (1, 6), (1, 6), (1, 6), (2, 13)],
        &[(1, 4), (1, 3), (1, 2), (1, 0), (2, 10)],
    )
}

/// `a * s + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub a: i64,
    pub b: i64,
}

impl FromStr for AffineForm {
    type Err = ZetaError;

    /// Accepts forms like `17s-6`, `-34s+14`, `s`, `-1`.
    fn from_str(s: &str) -> Result<Self, ZetaError> {
        let bad = || ZetaError::MalformedForm(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let (a, rest) = match t.find('s') {
            None => (0, t.as_str()),
            Some(i) => {
                let coef = &t[..i];
                let a = match coef {
                    "" | "+" => 1,
                    "-" => -1,
                    c => c.parse::<i64>().map_err(|_| bad())?,
                };
                (a, &t[i + 1..])
            }
        };
        let b = if rest.is_empty() {
            0
        } else {
            rest.strip_prefix('+').unwrap_or(rest).parse::<i64>().map_err(|_| bad())?
        };
        Ok(AffineForm { a, b })
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, b) => write!(f, "{b}"),
            (a, 0) => write!(f, "{a}s"),
            (a, b) if b > 0 => write!(f, "{a}s+{b}"),
            (a, b) => write!(f, "{a}s{b}"),
        }
    }
}

/// How a root is paired with the exponent vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// `<lambda, a>`.
    Direct,
    /// `<rho - lambda, a>`: the vector lists exponents of the unnormalized
    /// inducing character in the opposite sign convention.
    RhoMinus,
}

/// Character exponents `[s_1..s_r]` attached to the simple coroots.
#[derive(Clone, Debug)]
pub struct GkContext {
    pub rs: RootSystem,
    pub forms: Vec<AffineForm>,
    pub pairing: Pairing,
}

impl GkContext {
    pub fn new(rs: RootSystem, forms: &[&str]) -> Result<Self, ZetaError> {
        if forms.len() != rs.rank() {
            return Err(ZetaError::MalformedForm(format!("expected {} forms", rs.rank())));
        }
        let forms = forms.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>()?;
        Ok(GkContext { rs, forms, pairing: Pairing::Direct })
    }

    pub fn with_pairing(mut self, p: Pairing) -> Self {
        self.pairing = p;
        self
    }

    /// The exponent vector attached to `w''`.
    pub fn w_double_prime() -> Self {
        GkContext::new(
            RootSystem::e8(),
            &["17s-6", "17s-6", "17s-6", "-34s+14", "17s-6", "-17s+7", "17s-6", "17s-5"],
        )
        .expect("fixed forms parse")
        .with_pairing(Pairing::RhoMinus)
    }

    /// `delta_{P_i}^s` shifted by `-rho`: `17s - 1` on `i`, `-1` elsewhere.
    pub fn parabolic(rs: RootSystem, i: usize) -> Self {
        let forms = (1..=rs.rank())
            .map(|j| if j == i { AffineForm { a: 17, b: -1 } } else { AffineForm { a: 0, b: -1 } })
            .collect();
        GkContext { rs, forms, pairing: Pairing::Direct }
    }

    /// The pairing of a root (simple-root coordinates, simply laced) with the
    /// exponent vector.
    pub fn pairing(&self, a: &Root) -> AffineForm {
        let mut out = AffineForm { a: 0, b: 0 };
        for (c, f) in a.0.iter().zip(&self.forms) {
            out.a += *c as i64 * f.a;
            out.b += *c as i64 * f.b;
        }
        if self.pairing == Pairing::RhoMinus {
            out.a = -out.a;
            out.b = a.height() as i64 - out.b;
        }
        out
    }
}

pub enum GkMode<'a> {
    /// Roots with positive coefficient on the given simple root.
    Parabolic(usize),
    /// Inversion set of a Weyl element.
    Word(&'a WeylElt),
}

/// Product of `zeta(<lambda, a>) / zeta(<lambda, a> + 1)` over the selected
/// positive roots.
pub fn gk_product(ctx: &GkContext, g: &WeylGroup, mode: GkMode<'_>) -> Result<ZetaMultiset, ZetaError> {
    let roots: Vec<Root> = match mode {
        GkMode::Parabolic(i) => ctx.rs.radical_roots(i).map_err(|e| ZetaError::Root(e.to_string()))?,
        GkMode::Word(w) => g.inversion_set(w),
    };
    let mut z = ZetaMultiset::new();
    for a in &roots {
        let f = ctx.pairing(a);
        if f.a <= 0 || f.a % 17 != 0 {
            return Err(ZetaError::MalformedForm(format!("<lambda,{a}> = {f}")));
        }
        let k = (f.a / 17) as u32;
        z.add((k, -f.b), 1);
        z.add((k, -f.b - 1), -1);
    }
    Ok(z)
}

/// Shared polynomial families in `x, q`.
impl XQ {
    /// `Z = (1-x)(1-xq^2)(1-xq^3)(1-xq^4)(1-x^2q^10)(1-x^2q^12)`.
    pub fn z(&self) -> LaurentPoly {
        self.prod(&[(1, 0), (1, 2), (1, 3), (1, 4), (2, 10), (2, 12)])
    }

    /// `z0 = (1-xq^5)(1-xq^6)(1-xq^7)(1-xq^8)(1-x^2q^14)(1-x^3q^21)`.
    pub fn z0(&self) -> LaurentPoly {
        self.prod(&[(1, 5), (1, 6), (1, 7), (1, 8), (2, 14), (3, 21)])
    }

    /// Factored form of `I_0(n, m)`.
    pub fn i0(&self, n: i64, m: i64) -> LaurentPoly {
        let t1 = &self.b(1, 6) * &self.b(3, 21);
        let t2 = &(&self.b(1, 5) * &self.b(1, 6)) * &self.m(m as i32 + 1, 8 * (m as i32 + 1));
        let t3 = &(&self.b(1, 8) * &self.b(1, 5)) * &self.m((m + n + 1) as i32, (8 * m + 7 * (n + 1)) as i32);
        &(&t1 - &t2) - &t3
    }

    /// The eleven-term expansion of `I_0(n, m)`.
    pub fn i0_expanded(&self, n: i64, m: i64) -> LaurentPoly {
        let (n, m) = (n as i32, m as i32);
        let terms: [(i32, i32, i32); 12] = [
            (1, 0, 0),
            (-1, 1, 6),
            (-1, 3, 21),
            (1, 4, 27),
            (-1, m + 1, 8 * (m + 1)),
            (1, m + 2, 8 * m + 14),
            (-1, n + m + 1, 7 * (n + 1) + 8 * m),
            (1, n + m + 2, 7 * n + 8 * m + 12),
            (1, n + m + 2, 7 * n + 8 * m + 15),
            (-1, n + m + 3, 7 * n + 8 * m + 20),
            (1, m + 2, 8 * m + 13),
            (-1, m + 3, 8 * m + 19),
        ];
        let mut p = LaurentPoly::zero(&self.ring);
        for (c, a, b) in terms {
            p += &self.m(a, b).scale(&c.into());
        }
        p
    }

    /// `I_0(n, 0) = (1-xq^8)((1-xq^6)(1+x^2q^13) - (1-xq^5) x^{n+1} q^{7n+7})`.
    pub fn i0_n0_factored(&self, n: i64) -> LaurentPoly {
        let one = LaurentPoly::one(&self.ring);
        let inner = &(&self.b(1, 6) * &(&one + &self.m(2, 13)))
            - &(&self.b(1, 5) * &self.m(n as i32 + 1, 7 * n as i32 + 7));
        &self.b(1, 8) * &inner
    }

    /// `P_0 = (1-x)(1-xq^2)(1-xq^3)(1-xq^4)(1-x^2q^10) / ((1-xq^6)(1-xq^7))`.
    pub fn p0(&self) -> Result<RatFunc, ZetaError> {
        let num = self.prod(&[(1, 0), (1, 2), (1, 3), (1, 4), (2, 10)]);
        Ok(RatFunc::from_poly(num).div_poly(&self.b(1, 6))?.div_poly(&self.b(1, 7))?)
    }

    /// `J_0^c = (1-xq^6)(1-x^3q^21)`, `J_1^c = xq^8(1-xq^5)(1-xq^6)`,
    /// `J_2^c = xq^7(1-xq^5)(1-xq^8)`.
    pub fn jc(&self, i: usize) -> LaurentPoly {
        match i {
            0 => &self.b(1, 6) * &self.b(3, 21),
            1 => &self.m(1, 8) * &(&self.b(1, 5) * &self.b(1, 6)),
            _ => &self.m(1, 7) * &(&self.b(1, 5) * &self.b(1, 8)),
        }
    }
}

/// Identifiers of the named families.
pub const NAMED_IDS: [&str; 12] = ["Z", "I0", "z0", "N", "Z1", "Z2", "J0c", "J1c", "J2c", "J21", "J22", "J0"];

/// Value of a named family; `I0` takes `(n, m)`.
pub fn named(id: &str, params: &[i64]) -> Result<RatFunc, ZetaError> {
    let xq = XQ::new();
    let xr = XQ::ext();
    Ok(match id {
        "Z" => xq.z().into(),
        "z0" => xq.z0().into(),
        "I0" => {
            let (n, m) = match params {
                [n, m] if *n >= 0 && *m >= 0 => (*n, *m),
                _ => return Err(ZetaError::BadParams(id.into())),
            };
            xq.i0(n, m).into()
        }
        "N" => normalizing_factor().to_ratfunc(&xq)?,
        "Z1" => z1().to_ratfunc(&xq)?,
        "Z2" => z2().to_ratfunc(&xq)?,
        "J0c" => xq.jc(0).into(),
        "J1c" => xq.jc(1).into(),
        "J2c" => xq.jc(2).into(),
        "J21" => xr.j21().into(),
        "J22" => xr.j22().into(),
        "J0" => xr.j0_assembled(super::jfam::Assembly::Corrected)?,
        _ => return Err(ZetaError::UnknownId(id.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_forms() {
        let f: AffineForm = "17s-6".parse().unwrap();
        assert_eq!(f, AffineForm { a: 17, b: -6 });
        assert_eq!("-34s+14".parse::<AffineForm>().unwrap(), AffineForm { a: -34, b: 14 });
        assert_eq!("s".parse::<AffineForm>().unwrap(), AffineForm { a: 1, b: 0 });
        assert_eq!("-1".parse::<AffineForm>().unwrap(), AffineForm { a: 0, b: -1 });
        assert!("17x".parse::<AffineForm>().is_err());
        assert_eq!(f.to_string(), "17s-6");
    }

    #[test]
    fn i0_forms_agree() {
        let xq = XQ::new();
        for n in 0..=10 {
            for m in 0..=10 {
                assert_eq!(xq.i0(n, m), xq.i0_expanded(n, m), "({n},{m})");
            }
            assert_eq!(xq.i0(n, 0), xq.i0_n0_factored(n));
        }
    }

    #[test]
    fn n_from_named_pieces() {
        let xq = XQ::new();
        // z0 * Z * (1-x^2q^16) / ((1-xq^7)(1-xq^8)) is the reciprocal of the zeta product
        let lhs = RatFunc::from_poly(&(&xq.z0() * &xq.z()) * &xq.b(2, 16))
            .div_poly(&xq.b(1, 7))
            .unwrap()
            .div_poly(&xq.b(1, 8))
            .unwrap();
        assert_eq!(lhs, normalizing_factor().inv().to_ratfunc(&xq).unwrap());
        assert_eq!(&named("N", &[]).unwrap() * &lhs, RatFunc::one(&xq.ring));
    }

    #[test]
    fn multiset_display() {
        assert_eq!(
            w_double_prime_expected().to_string(),
            "zeta(17s-6)^4*zeta(34s-13) / (zeta(17s)*zeta(17s-2)*zeta(17s-3)*zeta(17s-4)*zeta(34s-10))"
        );
    }

    #[test]
    fn identity_word_gives_empty_product() {
        let g = WeylGroup::e8();
        let ctx = GkContext::parabolic(RootSystem::e8(), 2);
        let z = gk_product(&ctx, &g, GkMode::Word(&g.identity())).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn parabolic_p2_cancels_to_n() {
        let g = WeylGroup::e8();
        let ctx = GkContext::parabolic(RootSystem::e8(), 2);
        let z = gk_product(&ctx, &g, GkMode::Parabolic(2)).unwrap();
        assert_eq!(z.denominator(), normalizing_factor());
        assert_eq!(z.numerator(), z1().mul(&z2()).numerator());
    }

    #[test]
    fn w_double_prime_constant() {
        let g = WeylGroup::e8();
        let w = g.evaluate(&crate::weyl::WeylWord::parse(crate::weyl::words::W_DOUBLE_PRIME).unwrap()).unwrap();
        let ctx = GkContext::w_double_prime();
        assert_eq!(gk_product(&ctx, &g, GkMode::Word(&w)).unwrap(), w_double_prime_expected());
        let direct = ctx.clone().with_pairing(Pairing::Direct);
        assert!(matches!(gk_product(&direct, &g, GkMode::Word(&w)), Err(ZetaError::MalformedForm(_))));
    }

    #[test]
    fn unknown_named() {
        assert!(matches!(named("nope", &[]), Err(ZetaError::UnknownId(_))));
        assert!(matches!(named("I0", &[1]), Err(ZetaError::BadParams(_))));
    }
}
