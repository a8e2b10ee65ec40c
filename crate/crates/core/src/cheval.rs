//! Chevalley structure constants for simply-laced root systems and a small
//! commutator calculus for products of root-group elements.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{Root, RootSystem};
use crate::symra::{LaurentPoly, Ring, SymError};
use crate::weyl::{WeylElt, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevError {
    #[error("root system {0} is not simply laced")]
    NotSimplyLaced(String),
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("roots {0} do not lie in a common nilpotent subset")]
    NonNilpotent(String),
    #[error("root {0} is not allowed in this word")]
    UnsupportedRoot(String),
    #[error("variable {0} missing from the coefficient ring")]
    MissingVariable(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `N_{alpha,beta}` for every pair with `alpha + beta` a root.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    rs: RootSystem,
    sum: Vec<Vec<Option<usize>>>,
    n: Vec<Vec<i8>>,
}

/// Bimultiplicative sign cocycle: (-1)^(sum a_i b_i + sum_{i<j} C_ij a_i b_j).
fn cocycle(rs: &RootSystem, a: &Root, b: &Root) -> i8 {
    let c = rs.cartan();
    let r = a.0.len();
    let mut e: i64 = 0;
    for i in 0..r {
        e += (a.0[i] * b.0[i]) as i64;
        for j in (i + 1)..r {
            if c[i][j] != 0 {
                e += (a.0[i] * b.0[j]) as i64;
            }
        }
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl StructureConstants {
    /// Cocycle construction, `e_{-alpha}` negated so that
    /// `N_{-a,-b} = -N_{a,b}`, then each `e_xi` rescaled by a sign so that the
    /// extraspecial pair of every positive root has `N = +1`.
    pub fn build(rs: &RootSystem) -> Result<Self, ChevError> {
        if !rs.spec().is_simply_laced() {
            return Err(ChevError::NotSimplyLaced(rs.spec().name.clone()));
        }
        let roots = rs.roots();
        let nr = roots.len();
        let sum: Vec<Vec<Option<usize>>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| rs.index_of(&a.add(b))).collect())
            .collect();
        let c: Vec<i8> = roots.iter().map(|r| if r.is_positive() { 1 } else { -1 }).collect();
        let mut n1 = vec![vec![0i8; nr]; nr];
        for i in 0..nr {
            for j in 0..nr {
                if let Some(k) = sum[i][j] {
                    n1[i][j] = cocycle(rs, &roots[i], &roots[j]) * c[i] * c[j] * c[k];
                }
            }
        }
        // extraspecial normalization
        let mut d = vec![0i8; nr];
        let neg_index = |i: usize| rs.index_of(&roots[i].neg()).unwrap();
        for (i, r) in roots.iter().enumerate() {
            if !r.is_positive() {
                continue;
            }
            if r.height() == 1 {
                d[i] = 1;
                continue;
            }
            let (a, b) = (0..nr)
                .filter(|&a| roots[a].is_positive())
                .find_map(|a| {
                    let b = rs.index_of(&r.sub(&roots[a]))?;
                    roots[b].is_positive().then_some((a, b))
                })
                .expect("positive root of height > 1 splits");
            d[i] = d[a] * d[b] * n1[a][b];
        }
        for i in 0..nr {
            if !roots[i].is_positive() {
                d[i] = d[neg_index(i)];
            }
        }
        let mut n = vec![vec![0i8; nr]; nr];
        for i in 0..nr {
            for j in 0..nr {
                if let Some(k) = sum[i][j] {
                    n[i][j] = n1[i][j] * d[i] * d[j] * d[k];
                }
            }
        }
        Ok(StructureConstants { rs: rs.clone(), sum, n })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `N_{a,b}`, or `None` when `a + b` is not a root.
    pub fn get(&self, a: &Root, b: &Root) -> Option<i8> {
        let i = self.rs.index_of(a)?;
        let j = self.rs.index_of(b)?;
        self.sum[i][j].map(|_| self.n[i][j])
    }

    fn get_idx(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        self.sum[i][j].map(|k| (k, self.n[i][j]))
    }

    /// Extraspecial pair of a positive root of height at least 2.
    pub fn extraspecial_pair(&self, xi: &Root) -> Option<(Root, Root)> {
        let roots = self.rs.roots();
        roots.iter().filter(|a| a.is_positive()).find_map(|a| {
            let b = xi.sub(a);
            (self.rs.is_root(&b) && b.is_positive()).then(|| (a.clone(), b))
        })
    }

    /// Exhaustive scan of antisymmetry, the negation rule and the triangle
    /// identity. Returns the number of violations.
    pub fn triangle_violations(&self) -> usize {
        let nr = self.rs.roots().len();
        let neg: Vec<usize> = self
            .rs
            .roots()
            .iter()
            .map(|r| self.rs.index_of(&r.neg()).unwrap())
            .collect();
        let mut bad = 0;
        for i in 0..nr {
            for j in 0..nr {
                let Some((k, nij)) = self.get_idx(i, j) else { continue };
                if self.get_idx(j, i).map(|t| t.1) != Some(-nij) {
                    bad += 1;
                }
                if self.get_idx(neg[i], neg[j]).map(|t| t.1) != Some(-nij) {
                    bad += 1;
                }
                // gamma = -(a+b)
                let g = neg[k];
                let njg = self.get_idx(j, g).map(|t| t.1);
                let ngi = self.get_idx(g, i).map(|t| t.1);
                if njg != Some(nij) || ngi != Some(nij) {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// Jacobi identity of the Lie algebra with Chevalley basis brackets
    /// `[e_a, e_b] = N_{a,b} e_{a+b}`, `[e_a, e_{-a}] = h_a`,
    /// `[h, e_b] = <b, h> e_b`, over every triple of root vectors. Returns
    /// the number of failing triples.
    pub fn jacobi_violations(&self) -> usize {
        let roots = self.rs.roots();
        let nr = roots.len();
        let rank = self.rs.rank();
        let neg: Vec<usize> = roots.iter().map(|r| self.rs.index_of(&r.neg()).unwrap()).collect();
        // pairing <b, a^vee> for simply-laced: b . C . a
        let pair = |b: usize, a: usize| -> i64 {
            let (x, y) = (&roots[b].0, &roots[a].0);
            let c = self.rs.cartan();
            let mut s = 0i64;
            for p in 0..rank {
                for q in 0..rank {
                    s += (x[p] * c[q][p] * y[q]) as i64;
                }
            }
            s
        };
        #[derive(Clone)]
        enum El {
            Zero,
            E(usize, i64),
            H(usize, i64),
        }
        // [e_a, y]
        let br = |a: usize, y: &El| -> El {
            match *y {
                El::Zero => El::Zero,
                El::E(b, cb) => {
                    if b == neg[a] {
                        El::H(a, cb)
                    } else if let Some((k, n)) = self.get_idx(a, b) {
                        El::E(k, cb * n as i64)
                    } else {
                        El::Zero
                    }
                }
                // [e_a, c h_b] = -c <a, b^vee> e_a
                El::H(b, cb) => El::E(a, -cb * pair(a, b)),
            }
        };
        let mut bad = 0;
        for a in 0..nr {
            for b in 0..nr {
                for c in 0..nr {
                    let t1 = br(a, &br(b, &El::E(c, 1)));
                    let t2 = br(b, &br(c, &El::E(a, 1)));
                    let t3 = br(c, &br(a, &El::E(b, 1)));
                    let mut acc_e: HashMap<usize, i64> = HashMap::new();
                    let mut acc_h = vec![0i64; rank];
                    for t in [t1, t2, t3] {
                        match t {
                            El::Zero => {}
                            El::E(k, v) => *acc_e.entry(k).or_insert(0) += v,
                            El::H(k, v) => {
                                for (p, x) in acc_h.iter_mut().enumerate() {
                                    *x += v * roots[k].0[p] as i64;
                                }
                            }
                        }
                    }
                    if acc_e.values().any(|&v| v != 0) || acc_h.iter().any(|&v| v != 0) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }
}

/// Ordered product `x_{r1}(c1) x_{r2}(c2) ...` with polynomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentWord {
    ring: Ring,
    factors: Vec<(Root, LaurentPoly)>,
}

impl UnipotentWord {
    pub fn identity(ring: &Ring) -> Self {
        UnipotentWord { ring: ring.clone(), factors: vec![] }
    }

    pub fn new(ring: &Ring, factors: Vec<(Root, LaurentPoly)>) -> Self {
        UnipotentWord { ring: ring.clone(), factors }
    }

    pub fn single(root: Root, c: LaurentPoly) -> Self {
        UnipotentWord { ring: c.ring().clone(), factors: vec![(root, c)] }
    }

    pub fn factors(&self) -> &[(Root, LaurentPoly)] {
        &self.factors
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn concat(&self, o: &UnipotentWord) -> UnipotentWord {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        UnipotentWord { ring: self.ring.clone(), factors: f }
    }

    pub fn inverse(&self) -> UnipotentWord {
        UnipotentWord {
            ring: self.ring.clone(),
            factors: self.factors.iter().rev().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }

    /// Coefficient of `x_root` in a canonical word.
    pub fn coefficient(&self, root: &Root) -> LaurentPoly {
        self.factors
            .iter()
            .find(|(r, _)| r == root)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| LaurentPoly::zero(&self.ring))
    }

    pub fn roots(&self) -> Vec<Root> {
        self.factors.iter().map(|(r, _)| r.clone()).collect()
    }
}

const MAX_STEPS: usize = 1_000_000;

impl StructureConstants {
    /// Canonical form: factors sorted by root order (height, then lex), equal
    /// roots merged, zero coordinates dropped. Moving `x_a(t)` past `x_b(u)`
    /// uses `x_a(t) x_b(u) = x_b(u) x_a(t) x_{a+b}(N_{a,b} t u)`, valid since
    /// no higher commutator terms occur in simply-laced type.
    pub fn collect(&self, w: &UnipotentWord) -> Result<UnipotentWord, ChevError> {
        let mut v: Vec<(usize, LaurentPoly)> = Vec::with_capacity(w.factors.len());
        let mut sign = None;
        for (r, c) in &w.factors {
            let i = self.rs.index_of(r).ok_or_else(|| ChevError::NotARoot(r.to_string()))?;
            let p = r.is_positive();
            if *sign.get_or_insert(p) != p {
                return Err(ChevError::NonNilpotent(
                    w.factors.iter().map(|(r, _)| r.to_string()).collect::<Vec<_>>().join(","),
                ));
            }
            if !c.is_zero() {
                v.push((i, c.clone()));
            }
        }
        let mut i = 0;
        let mut steps = 0;
        while i + 1 < v.len() {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(ChevError::NonNilpotent("collection did not terminate".into()));
            }
            let (a, b) = (v[i].0, v[i + 1].0);
            if a == b {
                let c = &v[i].1 + &v[i + 1].1;
                v.remove(i + 1);
                if c.is_zero() {
                    v.remove(i);
                } else {
                    v[i].1 = c;
                }
                i = i.saturating_sub(1);
                continue;
            }
            if a < b {
                i += 1;
                continue;
            }
            let (ta, tb) = (v[i].1.clone(), v[i + 1].1.clone());
            v[i] = (b, tb.clone());
            v[i + 1] = (a, ta.clone());
            if let Some((k, n)) = self.get_idx(a, b) {
                let c = (&ta * &tb).scale(&BigInt::from(n));
                v.insert(i + 2, (k, c));
            }
            i = i.saturating_sub(1);
        }
        Ok(UnipotentWord {
            ring: w.ring.clone(),
            factors: v.into_iter().map(|(i, c)| (self.rs.root(i).clone(), c)).collect(),
        })
    }

    pub fn product(&self, a: &UnipotentWord, b: &UnipotentWord) -> Result<UnipotentWord, ChevError> {
        self.collect(&a.concat(b))
    }

    /// `by * word * by^{-1}` in canonical form.
    pub fn conjugate(&self, word: &UnipotentWord, by: &UnipotentWord) -> Result<UnipotentWord, ChevError> {
        self.collect(&by.concat(word).concat(&by.inverse()))
    }
}

/// `u -> psi(sum c_i u_{beta_i})`.
#[derive(Clone, Debug)]
pub struct CharacterSupport {
    pub terms: Vec<(Root, LaurentPoly)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub root: String,
    pub poly: String,
    #[serde(skip)]
    pub value: Option<LaurentPoly>,
}

/// Roots of `U(P_i)` whose image under `sigma` stays in `P_j`.
pub fn stabilized_roots(g: &WeylGroup, sigma: &WeylElt, radical: usize, parabolic: usize) -> Vec<Root> {
    g.root_system()
        .radical_roots(radical)
        .unwrap_or_default()
        .into_iter()
        .filter(|a| g.act(sigma, a).0[parabolic - 1] >= 0)
        .collect()
}

/// For every `gamma` in `U^sigma`, the polynomial `c_gamma` with
/// `[delta . psi](x_gamma(v)) = psi(c_gamma v)`, where
/// `[delta . psi](u) = psi(delta^{-1} u delta)`. The variable `v` must be in
/// the coefficient ring.
pub fn character_conditions(
    sc: &StructureConstants,
    u_sigma: &[Root],
    psi: &CharacterSupport,
    delta: &UnipotentWord,
    delta_support: Option<&[Root]>,
) -> Result<Vec<(Root, LaurentPoly)>, ChevError> {
    if let Some(allowed) = delta_support {
        for (r, _) in delta.factors() {
            if !allowed.contains(r) {
                return Err(ChevError::UnsupportedRoot(r.to_string()));
            }
        }
    }
    let ring = delta.ring().clone();
    let v = ring.var("v").map_err(|_| ChevError::MissingVariable("v".into()))?;
    let dinv = delta.inverse();
    let mut out = Vec::new();
    for g in u_sigma {
        let w = sc.conjugate(&UnipotentWord::single(g.clone(), v.clone()), &dinv)?;
        let mut c = LaurentPoly::zero(&ring);
        for (beta, k) in &psi.terms {
            c += &(k * &w.coefficient(beta));
        }
        out.push((g.clone(), c.div_exact(&v)?));
    }
    Ok(out)
}

/// Outcome of eliminating variables forced to vanish by a condition of the
/// form `+-var`.
#[derive(Clone, Debug)]
pub struct ReducedConditions {
    pub zeroed: Vec<String>,
    pub remaining: Vec<LaurentPoly>,
}

pub fn reduce_conditions(conds: &[LaurentPoly]) -> ReducedConditions {
    let mut cur: Vec<LaurentPoly> = conds.iter().filter(|c| !c.is_zero()).cloned().collect();
    let mut zeroed = Vec::new();
    loop {
        let lin = cur.iter().find_map(|c| {
            let (m, k) = c.as_term()?;
            let nz: Vec<(usize, i32)> =
                m.exps().iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect();
            (nz.len() == 1 && nz[0].1 == 1 && (k == &BigInt::from(1) || k == &BigInt::from(-1))).then(|| nz[0].0)
        });
        let Some(var) = lin else { break };
        let ring = cur[0].ring().clone();
        zeroed.push(ring.names()[var].clone());
        let mut a = HashMap::new();
        a.insert(var, LaurentPoly::zero(&ring));
        cur = cur
            .iter()
            .map(|c| c.substitute(&ring, &a).expect("polynomial substitution"))
            .filter(|c| !c.is_zero())
            .collect();
    }
    let mut seen = BTreeMap::new();
    for c in cur {
        // identify conditions up to sign
        let key = if c.leading().map(|(_, k)| k < &BigInt::from(0)).unwrap_or(false) { -&c } else { c };
        seen.insert(key.to_string(), key);
    }
    zeroed.sort();
    ReducedConditions { zeroed, remaining: seen.into_values().collect() }
}

/// Report of the two root-level claims about `D_0`.
#[derive(Clone, Debug, Serialize)]
pub struct D0Report {
    pub abelian: bool,
    pub root_sums: Vec<String>,
    pub normalized: bool,
    pub offenders: Vec<String>,
}

pub const D0_ROOTS: [&str; 5] = ["00001100", "00011100", "00001110", "00000111", "00011110"];

pub fn d0_structure_check(rs: &RootSystem) -> D0Report {
    let d0: Vec<Root> = D0_ROOTS.iter().map(|s| Root::parse(s).unwrap()).collect();
    let mut root_sums = Vec::new();
    for i in 0..d0.len() {
        for j in (i + 1)..d0.len() {
            let s = d0[i].add(&d0[j]);
            if rs.is_root(&s) {
                root_sums.push(format!("{}+{}={}", d0[i], d0[j], s));
            }
        }
    }
    let mut offenders = Vec::new();
    for r in &d0 {
        for k in [4, 7] {
            let s = r.sub(&Root::simple(8, k));
            if rs.is_root(&s) && !d0.contains(&s) {
                offenders.push(format!("{r}-a{k}={s}"));
            }
        }
    }
    D0Report { abelian: root_sums.is_empty(), root_sums, normalized: offenders.is_empty(), offenders }
}

pub const Z_ROOTS: [(&str, i64); 3] = [("00011100", 1), ("00001110", 1), ("00000111", -1)];

/// `z = x_{00011100}(1) x_{00001110}(1) x_{00000111}(-1)`.
pub fn z_word(ring: &Ring) -> UnipotentWord {
    UnipotentWord::new(
        ring,
        Z_ROOTS.iter().map(|(r, c)| (Root::parse(r).unwrap(), LaurentPoly::constant(ring, *c))).collect(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct ZReport {
    /// Roots of `U` made positive by `w0`.
    pub complement: Vec<String>,
    pub offenders: Vec<String>,
}

/// For each root of `U(P_1)` that `w0` keeps positive, no difference with a
/// root of `z` is a root.
pub fn z_normalizes_check(g: &WeylGroup, w0: &WeylElt) -> ZReport {
    let rs = g.root_system();
    let comp: Vec<Root> = rs
        .radical_roots(1)
        .unwrap()
        .into_iter()
        .filter(|a| g.act(w0, a).is_positive())
        .collect();
    let mut offenders = Vec::new();
    for a in &comp {
        for (z, _) in Z_ROOTS {
            let d = a.sub(&Root::parse(z).unwrap());
            if rs.is_root(&d) {
                offenders.push(format!("{a}-{z}={d}"));
            }
        }
    }
    ZReport { complement: comp.iter().map(|r| r.to_string()).collect(), offenders }
}

#[derive(Clone, Debug, Serialize)]
pub struct V4Report {
    pub v4: Vec<String>,
    /// Roots appearing after conjugating each root group of `V4`.
    pub image_roots: Vec<String>,
    pub escapes: Vec<String>,
    pub w0_negative: Vec<String>,
}

pub const V4_EXTRA: [&str; 2] = ["01121110", "01122110"];

/// Conjugates `x_a(v)` for every `a` in `V4` by `x_{00011110}(1)` and
/// records which roots occur; also tests `w0 a > 0` on `V4` and the two extra roots.
pub fn v4_check(sc: &StructureConstants, g: &WeylGroup, w0: &WeylElt) -> Result<V4Report, ChevError> {
    let rs = sc.root_system();
    let v4: Vec<Root> = rs
        .positive_roots()
        .into_iter()
        .filter(|a| a.0[3] > 0 && [0, 5, 6, 7].iter().all(|&i| a.0[i] == 0))
        .collect();
    let ring = Ring::new(&["v"]);
    let v = ring.var("v")?;
    let by = UnipotentWord::single(Root::parse("00011110").unwrap(), LaurentPoly::one(&ring));
    let extra: Vec<Root> = V4_EXTRA.iter().map(|r| Root::parse(r).unwrap()).collect();
    let mut image = std::collections::BTreeSet::new();
    for a in &v4 {
        let w = sc.conjugate(&UnipotentWord::single(a.clone(), v.clone()), &by)?;
        image.extend(w.roots());
    }
    let escapes = image.iter().filter(|r| !v4.contains(r) && !extra.contains(r)).map(|r| r.to_string()).collect();
    let w0_negative = v4
        .iter()
        .chain(extra.iter())
        .filter(|a| !g.act(w0, a).is_positive())
        .map(|r| r.to_string())
        .collect();
    Ok(V4Report {
        v4: v4.iter().map(|r| r.to_string()).collect(),
        image_roots: image.iter().map(|r| r.to_string()).collect(),
        escapes,
        w0_negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystemSpec;
    use proptest::prelude::*;

    fn a2() -> RootSystem {
        RootSystem::new(RootSystemSpec::a(2)).unwrap()
    }

    #[test]
    fn a2_convention() {
        let rs = a2();
        let sc = StructureConstants::build(&rs).unwrap();
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        assert_eq!(sc.get(&a1, &a2), Some(1));
        assert_eq!(sc.get(&a2, &a1), Some(-1));
        assert_eq!(sc.get(&a1, &a1), None);
        assert_eq!(sc.triangle_violations(), 0);
        assert_eq!(sc.jacobi_violations(), 0);
    }

    #[test]
    fn d4_and_g2() {
        let d4 = RootSystem::new(RootSystemSpec::simply_laced("D4", 4, &[(1, 2), (2, 3), (2, 4)])).unwrap();
        let sc = StructureConstants::build(&d4).unwrap();
        assert_eq!(sc.triangle_violations(), 0);
        assert_eq!(sc.jacobi_violations(), 0);
        assert!(matches!(StructureConstants::build(&RootSystem::g2()), Err(ChevError::NotSimplyLaced(_))));
    }

    #[test]
    fn extraspecial_pairs_are_positive() {
        let rs = RootSystem::e8();
        let sc = StructureConstants::build(&rs).unwrap();
        for r in rs.positive_roots().iter().filter(|r| r.height() > 1) {
            let (a, b) = sc.extraspecial_pair(r).unwrap();
            assert_eq!(sc.get(&a, &b), Some(1), "{r}");
        }
    }

    #[test]
    fn collection_basics() {
        let rs = a2();
        let sc = StructureConstants::build(&rs).unwrap();
        let ring = Ring::new(&["t", "u"]);
        let t = ring.var("t").unwrap();
        let u = ring.var("u").unwrap();
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        let w = UnipotentWord::new(&ring, vec![(a2.clone(), u.clone()), (a1.clone(), t.clone())]);
        let c = sc.collect(&w).unwrap();
        // x_a2(u) x_a1(t) = x_a1(t) x_a2(u) x_{a1+a2}(N_{a2,a1} u t)
        assert_eq!(
            c.factors(),
            &[(a1.clone(), t.clone()), (a2.clone(), u.clone()), (Root(vec![1, 1]), -(&t * &u))]
        );
        let id = UnipotentWord::identity(&ring);
        let x = UnipotentWord::single(a1.clone(), t.clone());
        assert_eq!(sc.conjugate(&x, &id).unwrap(), x);
        let bad = UnipotentWord::new(&ring, vec![(a1.clone(), t.clone()), (a1.neg(), u)]);
        assert!(matches!(sc.collect(&bad), Err(ChevError::NonNilpotent(_))));
    }

    #[test]
    fn d0_claims() {
        let rep = d0_structure_check(&RootSystem::e8());
        assert!(rep.abelian, "{:?}", rep.root_sums);
        assert!(rep.normalized, "{:?}", rep.offenders);
    }


    fn w0(g: &WeylGroup) -> WeylElt {
        use crate::weyl::{words, WeylWord};
        g.evaluate(&WeylWord::parse(&format!("{}{}", words::W_LNG, words::NU0_A)).unwrap()).unwrap()
    }

    #[test]
    fn z_and_v4() {
        let g = WeylGroup::e8();
        let sc = StructureConstants::build(g.root_system()).unwrap();
        let w0 = w0(&g);
        let z = z_normalizes_check(&g, &w0);
        assert_eq!(z.complement.len(), 7);
        assert!(z.offenders.is_empty());
        let v = v4_check(&sc, &g, &w0).unwrap();
        assert_eq!(v.v4.len(), 9);
        assert!(v.escapes.is_empty() && v.w0_negative.is_empty());
        assert!(v.image_roots.contains(&"01122110".to_string()));
    }

    #[test]
    fn trivial_character_conditions() {
        let g = WeylGroup::e8();
        let sc = StructureConstants::build(g.root_system()).unwrap();
        let us = stabilized_roots(&g, &w0(&g), 1, 2);
        let ring = Ring::new(&["v"]);
        let id = UnipotentWord::identity(&ring);
        let empty = CharacterSupport { terms: vec![] };
        let c = character_conditions(&sc, &us, &empty, &id, None).unwrap();
        assert!(c.iter().all(|(_, p)| p.is_zero()));
        // identity delta: raw psi values, and supp(psi) misses U^sigma
        let psi = CharacterSupport {
            terms: crate::weyl::words::SUPPORT
                .iter()
                .map(|r| (Root::parse(r).unwrap(), LaurentPoly::one(&ring)))
                .collect(),
        };
        let c = character_conditions(&sc, &us, &psi, &id, None).unwrap();
        assert!(c.iter().all(|(_, p)| p.is_zero()));
        let bad = UnipotentWord::single(Root::parse("10000000").unwrap(), LaurentPoly::one(&ring));
        let allowed = [Root::parse("00000100").unwrap()];
        assert!(matches!(
            character_conditions(&sc, &us, &psi, &bad, Some(&allowed)),
            Err(ChevError::UnsupportedRoot(_))
        ));
    }

    #[test]
    fn reduction_eliminates_linear_variables() {
        let ring = Ring::new(&["a", "b", "c"]);
        let a = ring.var("a").unwrap();
        let b = ring.var("b").unwrap();
        let c = ring.var("c").unwrap();
        let r = reduce_conditions(&[-&a, &(&a * &b) + &c, &b * &c - &a]);
        assert_eq!(r.zeroed, vec!["a".to_string(), "c".to_string()]);
        assert!(r.remaining.is_empty());
    }

    fn e8_positive_word(ring: &Ring, len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
        let _ = ring;
        proptest::collection::vec((0usize..120, -3i64..4), 0..len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn conjugation_is_an_action(
            w in e8_positive_word(&Ring::new(&["z"]), 5),
            g in e8_positive_word(&Ring::new(&["z"]), 4),
            h in e8_positive_word(&Ring::new(&["z"]), 4),
        ) {
            let rs = RootSystem::e8();
            let sc = StructureConstants::build(&rs).unwrap();
            let ring = Ring::new(&["z"]);
            let pos = rs.positive_roots();
            let mk = |v: &Vec<(usize, i64)>| UnipotentWord::new(
                &ring,
                v.iter().map(|&(i, c)| (pos[i].clone(), LaurentPoly::constant(&ring, c))).collect(),
            );
            let (w, g, h) = (mk(&w), mk(&g), mk(&h));
            let hg = sc.product(&h, &g).unwrap();
            let lhs = sc.conjugate(&sc.conjugate(&w, &g).unwrap(), &h).unwrap();
            let rhs = sc.conjugate(&w, &hg).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn commuting_factors_reorder_freely(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
            let rs = RootSystem::e8();
            let sc = StructureConstants::build(&rs).unwrap();
            let ring = Ring::new(&["a", "b", "c", "d", "e"]);
            let d0: Vec<Root> = D0_ROOTS.iter().map(|s| Root::parse(s).unwrap()).collect();
            let names = ["a", "b", "c", "d", "e"];
            let base: Vec<(Root, LaurentPoly)> =
                d0.iter().zip(names).map(|(r, n)| (r.clone(), ring.var(n).unwrap())).collect();
            let shuffled: Vec<(Root, LaurentPoly)> = perm.iter().map(|&i| base[i].clone()).collect();
            prop_assert_eq!(
                sc.collect(&UnipotentWord::new(&ring, base)).unwrap(),
                sc.collect(&UnipotentWord::new(&ring, shuffled)).unwrap()
            );
        }
    }
}
