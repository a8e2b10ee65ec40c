//! Character theory of G2(C) on the weight lattice: alternating sums, Weyl
//! characters, the subset-sum polynomials `P_nu`, the constants `Q`,
//! spherical function values and the symmetric algebra of the 7-dimensional
//! representation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symra::{LaurentPoly, Monomial, RatFunc, Ring, SymError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("ring has no variable {0}")]
    MissingVariable(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `n * w1 + m * w2`; `w1` is the highest weight of the 7-dimensional
/// representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub n: i32,
    pub m: i32,
}

impl Weight {
    pub const ZERO: Weight = Weight { n: 0, m: 0 };
    pub const RHO: Weight = Weight { n: 1, m: 1 };

    pub const fn new(n: i32, m: i32) -> Self {
        Weight { n, m }
    }

    pub fn is_dominant(&self) -> bool {
        self.n >= 0 && self.m >= 0
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.n > 0 && self.m > 0
    }

    pub fn add(self, o: Weight) -> Weight {
        Weight::new(self.n + o.n, self.m + o.m)
    }

    pub fn sub(self, o: Weight) -> Weight {
        Weight::new(self.n - o.n, self.m - o.m)
    }

    pub fn scale(self, k: i32) -> Weight {
        Weight::new(self.n * k, self.m * k)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// Simple roots in fundamental-weight coordinates (short one first).
pub const SIMPLE_ROOTS: [Weight; 2] = [Weight::new(2, -1), Weight::new(-3, 2)];

/// Positive roots: a1, a2, a1+a2, 2a1+a2, 3a1+a2, 3a1+2a2.
pub const POSITIVE_ROOTS: [Weight; 6] = [
    Weight::new(2, -1),
    Weight::new(-3, 2),
    Weight::new(-1, 1),
    Weight::new(1, 0),
    Weight::new(3, -1),
    Weight::new(0, 1),
];

/// Element of W(G2) as an integer matrix on `(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct G2Elt {
    pub mat: [[i32; 2]; 2],
    pub length: usize,
}

impl G2Elt {
    pub fn apply(&self, w: Weight) -> Weight {
        let a = self.mat;
        Weight::new(a[0][0] * w.n + a[0][1] * w.m, a[1][0] * w.n + a[1][1] * w.m)
    }

    pub fn sign(&self) -> i32 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn mat_mul(a: [[i32; 2]; 2], b: [[i32; 2]; 2]) -> [[i32; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// The 12 elements of W(G2) ordered by length.
pub fn weyl_group() -> &'static [G2Elt] {
    static W: OnceLock<Vec<G2Elt>> = OnceLock::new();
    W.get_or_init(|| {
        let s = [[[-1, 0], [1, 1]], [[1, 3], [0, -1]]];
        let mut out = vec![G2Elt { mat: [[1, 0], [0, 1]], length: 0 }];
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for g in &s {
                    let m = mat_mul(*g, e.mat);
                    if !out.iter().chain(next.iter()).any(|x: &G2Elt| x.mat == m) {
                        next.push(G2Elt { mat: m, length: e.length + 1 });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    })
}

/// Dominant representative of the orbit of `w` with the element reaching it.
pub fn to_dominant(w: Weight) -> (Weight, G2Elt) {
    weyl_group()
        .iter()
        .map(|g| (g.apply(w), *g))
        .find(|(v, _)| v.is_dominant())
        .expect("every orbit meets the dominant chamber")
}

fn ab(ring: &Ring) -> Result<(usize, usize), CharError> {
    let a = ring.index("a").ok_or_else(|| CharError::MissingVariable("a".into()))?;
    let b = ring.index("b").ok_or_else(|| CharError::MissingVariable("b".into()))?;
    Ok((a, b))
}

fn q_index(ring: &Ring) -> Result<usize, CharError> {
    ring.index("q").ok_or_else(|| CharError::MissingVariable("q".into()))
}

/// `a^n b^m`.
pub fn weight_monomial(ring: &Ring, w: Weight) -> Result<LaurentPoly, CharError> {
    let (a, b) = ab(ring)?;
    Ok(LaurentPoly::mono(ring, &[(a, w.n), (b, w.m)]))
}

/// `A_l = sum_w (-1)^l(w) tau^{w l}`.
pub fn alt_sum(ring: &Ring, l: Weight) -> Result<LaurentPoly, CharError> {
    let mut out = LaurentPoly::zero(ring);
    for g in weyl_group() {
        let t = weight_monomial(ring, g.apply(l))?;
        out += &t.scale(&BigInt::from(g.sign()));
    }
    Ok(out)
}

/// `chi_l = A_{l + rho} / A_rho`.
pub fn weyl_character(ring: &Ring, l: Weight) -> Result<LaurentPoly, CharError> {
    if !l.is_dominant() {
        return Err(CharError::NotDominant(l));
    }
    Ok(alt_sum(ring, l.add(Weight::RHO))?.div_exact(&alt_sum(ring, Weight::RHO)?)?)
}

/// Weyl dimension formula.
pub fn dimension(l: Weight) -> BigInt {
    // <l + rho, alpha^vee> over positive coroots, in coroot coordinates
    const COROOTS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2)];
    let (n, m) = ((l.n + 1) as i64, (l.m + 1) as i64);
    let num: i64 = COROOTS.iter().map(|(c1, c2)| c1 * n + c2 * m).product();
    let den: i64 = COROOTS.iter().map(|(c1, c2)| c1 + c2).product();
    BigInt::from(num / den)
}

/// `A_mu / A_rho` as `(sign, lambda)` with `A_mu / A_rho = sign * chi_lambda`,
/// or `None` when `mu` lies on a wall.
pub fn straighten(mu: Weight) -> Option<(i32, Weight)> {
    let (d, g) = to_dominant(mu);
    d.is_regular_dominant().then(|| (g.sign(), d.sub(Weight::RHO)))
}

/// Expansion of a W-invariant polynomial in the characters: coefficient of
/// `chi_l` read off from the strictly dominant part of `f * A_rho`. The other
/// variables of the ring ride along in the coefficients.
pub fn decompose(f: &LaurentPoly) -> Result<BTreeMap<Weight, LaurentPoly>, CharError> {
    let ring = f.ring().clone();
    let (a, b) = ab(&ring)?;
    let g = f * &alt_sum(&ring, Weight::RHO)?;
    let mut out: BTreeMap<Weight, LaurentPoly> = BTreeMap::new();
    for (mono, c) in g.terms() {
        let e = mono.exps();
        let w = Weight::new(e[a], e[b]);
        if !w.is_regular_dominant() {
            continue;
        }
        let mut rest = e.to_vec();
        rest[a] = 0;
        rest[b] = 0;
        out.entry(w.sub(Weight::RHO))
            .or_insert_with(|| LaurentPoly::zero(&ring))
            .add_term(Monomial::from_exps(rest), c.clone());
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `S0` and `P_nu(q^{-1})` from `prod_{a>0} (1 - q^{-1} tau^{-a})`, as
/// Laurent polynomials in `q`.
pub fn s0_and_p(ring: &Ring) -> Result<BTreeMap<Weight, LaurentPoly>, CharError> {
    let q = q_index(ring)?;
    let mut out: BTreeMap<Weight, LaurentPoly> = BTreeMap::new();
    for mask in 0u32..64 {
        let mut nu = Weight::ZERO;
        for (i, r) in POSITIVE_ROOTS.iter().enumerate() {
            if mask >> i & 1 == 1 {
                nu = nu.add(*r);
            }
        }
        let k = mask.count_ones() as i32;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out.entry(nu)
            .or_insert_with(|| LaurentPoly::zero(ring))
            .add_term(Monomial::from_exps(unit_exps(ring.nvars(), q, -k)), BigInt::from(sign));
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn unit_exps(n: usize, v: usize, k: i32) -> Vec<i32> {
    let mut e = vec![0; n];
    e[v] = k;
    e
}

/// Direct expansion of `prod_{a>0}(1 - q^{-1} tau^{-a})`.
pub fn positive_root_product(ring: &Ring) -> Result<LaurentPoly, CharError> {
    let q = q_index(ring)?;
    let mut p = LaurentPoly::one(ring);
    for r in POSITIVE_ROOTS {
        let t = LaurentPoly::mono(ring, &[(q, -1)]) * weight_monomial(ring, r.scale(-1))?;
        p = &p * &(LaurentPoly::one(ring) - t);
    }
    Ok(p)
}

/// `Q = (1-q^-2)(1-q^-6)/(1-q^-1)^2` as a polynomial in `q^-1`.
pub fn q_constant(ring: &Ring) -> Result<LaurentPoly, CharError> {
    let q = q_index(ring)?;
    let coeffs = [1, 2, 2, 2, 2, 2, 1];
    Ok(LaurentPoly::from_terms(
        ring,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::from_exps(unit_exps(ring.nvars(), q, -(i as i32))), BigInt::from(*c))),
    ))
}

/// `Q_w`: `Q` at the origin, `1 + q^-1` when exactly one coordinate is zero,
/// otherwise 1.
pub fn q_varpi(ring: &Ring, w: Weight) -> Result<LaurentPoly, CharError> {
    if !w.is_dominant() {
        return Err(CharError::NotDominant(w));
    }
    let q = q_index(ring)?;
    Ok(match (w.n == 0, w.m == 0) {
        (true, true) => q_constant(ring)?,
        (true, false) | (false, true) => LaurentPoly::one(ring) + LaurentPoly::mono(ring, &[(q, -1)]),
        _ => LaurentPoly::one(ring),
    })
}

/// `Q / Q_w`, always a polynomial in `q^-1`.
pub fn q_ratio(ring: &Ring, w: Weight) -> Result<LaurentPoly, CharError> {
    Ok(q_constant(ring)?.div_exact(&q_varpi(ring, w)?)?)
}

/// `sum_nu P_nu A_{w + rho - nu} / A_rho` expanded in characters.
pub fn spherical_chars(ring: &Ring, w: Weight) -> Result<BTreeMap<Weight, LaurentPoly>, CharError> {
    if !w.is_dominant() {
        return Err(CharError::NotDominant(w));
    }
    let mut out: BTreeMap<Weight, LaurentPoly> = BTreeMap::new();
    for (nu, p) in s0_table(ring)? {
        if let Some((s, l)) = straighten(w.add(Weight::RHO).sub(nu)) {
            *out.entry(l).or_insert_with(|| LaurentPoly::zero(ring)) += &p.scale(&BigInt::from(s));
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn s0_table(ring: &Ring) -> Result<Vec<(Weight, LaurentPoly)>, CharError> {
    Ok(s0_and_p(ring)?.into_iter().collect())
}

/// `omega(t) = q^{-3n-5m} / Q * sum_nu P_nu A_{w+rho-nu} / A_rho` as a
/// rational function in `q, a, b`.
pub fn spherical(ring: &Ring, w: Weight) -> Result<RatFunc, CharError> {
    let q = q_index(ring)?;
    let mut s = LaurentPoly::zero(ring);
    for (l, c) in spherical_chars(ring, w)? {
        s += &(&c * &weyl_character(ring, l)?);
    }
    s = s.mul_monomial(&Monomial::from_exps(unit_exps(ring.nvars(), q, -3 * w.n - 5 * w.m)));
    Ok(inv_q_constant(ring)?.mul_poly(&s))
}

/// `1/Q = (1-q^-1)^2 / ((1-q^-2)(1-q^-6))`.
pub fn inv_q_constant(ring: &Ring) -> Result<RatFunc, CharError> {
    let q = q_index(ring)?;
    let one = LaurentPoly::one(ring);
    let qi = |k: i32| LaurentPoly::mono(ring, &[(q, -k)]);
    let num = (&one - &qi(1)).pow(2);
    Ok(RatFunc::from_poly(num).div_poly(&(&one - &qi(2)))?.div_poly(&(&one - &qi(6)))?)
}

/// `1/Q_w` from the factored forms of `Q` and `1 + q^-1`.
pub fn inv_q_varpi(ring: &Ring, w: Weight) -> Result<RatFunc, CharError> {
    if !w.is_dominant() {
        return Err(CharError::NotDominant(w));
    }
    let q = q_index(ring)?;
    let one = LaurentPoly::one(ring);
    let qi = |k: i32| LaurentPoly::mono(ring, &[(q, -k)]);
    Ok(match (w.n == 0, w.m == 0) {
        (true, true) => inv_q_constant(ring)?,
        (true, false) | (false, true) => RatFunc::from_poly(&one - &qi(1)).div_poly(&(&one - &qi(2)))?,
        _ => RatFunc::one(ring),
    })
}

/// Weights of the 7-dimensional representation.
pub fn standard_weights() -> [Weight; 7] {
    [
        Weight::new(1, 0),
        Weight::new(-1, 1),
        Weight::new(2, -1),
        Weight::ZERO,
        Weight::new(-2, 1),
        Weight::new(1, -1),
        Weight::new(-1, 0),
    ]
}

/// Characters of `Sym^r V7` for `r <= r_max`, by complete homogeneous
/// symmetric functions in the 7 weight monomials.
pub fn sym_power_chars(ring: &Ring, r_max: usize) -> Result<Vec<LaurentPoly>, CharError> {
    // h[r] over the first k variables, updated one variable at a time
    let mut h = vec![LaurentPoly::zero(ring); r_max + 1];
    h[0] = LaurentPoly::one(ring);
    for w in standard_weights() {
        let y = weight_monomial(ring, w)?;
        for r in 1..=r_max {
            let add = &h[r - 1] * &y;
            h[r] += &add;
        }
    }
    Ok(h)
}

/// Both sides of the Sym(St) generating series up to `X^{r_max}`:
/// `chi_{(r,0)}` and `char Sym^r V7`.
#[derive(Clone, Debug)]
pub struct SymSeries {
    pub chi: Vec<LaurentPoly>,
    pub sym: Vec<LaurentPoly>,
}

pub fn sym_series(ring: &Ring, r_max: usize) -> Result<SymSeries, CharError> {
    let chi = (0..=r_max)
        .map(|r| weyl_character(ring, Weight::new(r as i32, 0)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SymSeries { chi, sym: sym_power_chars(ring, r_max)? })
}

impl SymSeries {
    /// `(1 - X^2) * sum Sym^r X^r == sum chi_{(r,0)} X^r` coefficient by
    /// coefficient.
    pub fn brion_holds(&self) -> bool {
        (0..self.chi.len()).all(|r| {
            let lhs = if r >= 2 { &self.sym[r] - &self.sym[r - 2] } else { self.sym[r].clone() };
            lhs == self.chi[r]
        })
    }
}

/// `{"(n,m)": coefficient}` for a polynomial in `a, b`.
pub fn char_to_json(f: &LaurentPoly) -> Result<serde_json::Value, CharError> {
    let (a, b) = ab(f.ring())?;
    let mut map = serde_json::Map::new();
    for (mono, c) in f.terms() {
        let e = mono.exps();
        let w = Weight::new(e[a], e[b]);
        let mut rest = e.to_vec();
        rest[a] = 0;
        rest[b] = 0;
        let key = w.to_string();
        let piece = LaurentPoly::monomial(f.ring(), Monomial::from_exps(rest), c.clone());
        let prev = map
            .get(&key)
            .and_then(|v| v.as_str())
            .map(|s| s.to_string());
        let val = match prev {
            None => piece.to_string(),
            Some(p) => format!("{p} + {piece}"),
        };
        map.insert(key, serde_json::Value::String(val));
    }
    Ok(serde_json::Value::Object(map))
}

/// Multiplicity of each weight in a polynomial in `a, b` with integer
/// coefficients.
pub fn weight_multiplicities(f: &LaurentPoly) -> Result<HashMap<Weight, BigInt>, CharError> {
    let (a, b) = ab(f.ring())?;
    let mut out: HashMap<Weight, BigInt> = HashMap::new();
    for (mono, c) in f.terms() {
        let e = mono.exps();
        *out.entry(Weight::new(e[a], e[b])).or_insert_with(BigInt::zero) += c;
    }
    Ok(out)
}

/// Sum of the coefficients (value at the identity).
pub fn coefficient_sum(f: &LaurentPoly) -> BigInt {
    f.terms().fold(BigInt::zero(), |s, (_, c)| s + c)
}

/// True when `f` is fixed by every element of W(G2) acting on `(a, b)`.
pub fn is_weyl_invariant(f: &LaurentPoly) -> Result<bool, CharError> {
    let mult = weight_multiplicities(f)?;
    Ok(weyl_group()
        .iter()
        .all(|g| mult.iter().all(|(w, c)| mult.get(&g.apply(*w)) == Some(c))))
}

pub fn char_ring() -> Ring {
    Ring::new(&["a", "b"])
}
