//! Weyl group elements as integer matrices on the root lattice, and the
//! parabolic coset combinatorics built on them.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsys::{Root, RootError, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("letter {0} is not a simple index (rank {1})")]
    BadLetter(usize, usize),
    #[error("cannot parse word {0:?}")]
    BadWord(String),
    #[error("element is not among the enumerated representatives")]
    NotEnumerated,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Word in simple reflections, letters 1-based as in `w[2431...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn parse(s: &str) -> Result<Self, WeylError> {
        let body = s
            .trim()
            .trim_start_matches("w[")
            .trim_end_matches(']');
        body.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .map(WeylWord)
            .ok_or_else(|| WeylError::BadWord(s.to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &WeylWord) -> WeylWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        WeylWord(v)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            if l < 10 {
                write!(f, "{l}")?;
            } else {
                write!(f, "({l})")?;
            }
        }
        Ok(())
    }
}

/// Column `j` of `m` is the image of the simple root `alpha_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    m: Vec<i32>,
    mi: Vec<i32>,
    length: usize,
}

impl WeylElt {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn matrix(&self) -> &[i32] {
        &self.m
    }
}

fn matmul(a: &[i32], b: &[i32], n: usize) -> Vec<i32> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn column_positive(m: &[i32], n: usize, j: usize) -> bool {
    (0..n).all(|i| m[i * n + j] >= 0)
}

/// Which cosets `min_coset_rep` reduces in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    /// `W_J w`
    Left,
    /// `w W_J`
    Right,
    /// `W_J w W_K`
    Double(BTreeSet<usize>),
}

/// The three classes of surviving representatives.
#[derive(Clone, Debug)]
pub struct Classification {
    pub sht: Vec<WeylElt>,
    pub lng: Vec<WeylElt>,
    pub lng_prime: Vec<WeylElt>,
    pub other: Vec<WeylElt>,
}

pub struct WeylGroup {
    rs: RootSystem,
    gens: Vec<Vec<i32>>,
    pos: Vec<Root>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.rank();
        let gens = (1..=n)
            .map(|i| {
                let mut m = vec![0; n * n];
                for j in 1..=n {
                    let img = rs.reflect(i, &Root::simple(n, j));
                    for r in 0..n {
                        m[r * n + (j - 1)] = img.0[r];
                    }
                }
                m
            })
            .collect();
        let pos = rs.positive_roots();
        WeylGroup { rs, gens, pos }
    }

    pub fn e8() -> Self {
        Self::new(RootSystem::e8())
    }

    pub fn g2() -> Self {
        Self::new(RootSystem::g2())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn identity(&self) -> WeylElt {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElt { mi: m.clone(), m, length: 0 }
    }

    pub fn simple(&self, i: usize) -> Result<WeylElt, WeylError> {
        self.check_letter(i)?;
        let g = self.gens[i - 1].clone();
        Ok(WeylElt { mi: g.clone(), m: g, length: 1 })
    }

    fn check_letter(&self, i: usize) -> Result<(), WeylError> {
        if i == 0 || i > self.rank() {
            Err(WeylError::BadLetter(i, self.rank()))
        } else {
            Ok(())
        }
    }

    fn make(&self, m: Vec<i32>, mi: Vec<i32>) -> WeylElt {
        let mut e = WeylElt { m, mi, length: 0 };
        e.length = self.count_inversions(&e);
        e
    }

    fn count_inversions(&self, w: &WeylElt) -> usize {
        self.pos.iter().filter(|r| !self.act(w, r).is_positive()).count()
    }

    pub fn mul(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        let n = self.rank();
        self.make(matmul(&a.m, &b.m, n), matmul(&b.mi, &a.mi, n))
    }

    pub fn inverse(&self, a: &WeylElt) -> WeylElt {
        WeylElt { m: a.mi.clone(), mi: a.m.clone(), length: a.length }
    }

    /// `w * s_i`, trusting the caller about the length change.
    fn times_simple(&self, w: &WeylElt, i: usize, up: bool) -> WeylElt {
        let n = self.rank();
        let g = &self.gens[i];
        WeylElt {
            m: matmul(&w.m, g, n),
            mi: matmul(g, &w.mi, n),
            length: if up { w.length + 1 } else { w.length - 1 },
        }
    }

    /// `s_i * w`, trusting the caller about the length change.
    fn simple_times(&self, i: usize, w: &WeylElt, up: bool) -> WeylElt {
        let n = self.rank();
        let g = &self.gens[i];
        WeylElt {
            m: matmul(g, &w.m, n),
            mi: matmul(&w.mi, g, n),
            length: if up { w.length + 1 } else { w.length - 1 },
        }
    }

    pub fn evaluate(&self, w: &WeylWord) -> Result<WeylElt, WeylError> {
        let n = self.rank();
        let mut m = self.identity();
        for &l in &w.0 {
            self.check_letter(l)?;
            m.m = matmul(&m.m, &self.gens[l - 1], n);
            m.mi = matmul(&self.gens[l - 1], &m.mi, n);
        }
        Ok(self.make(m.m, m.mi))
    }

    pub fn act(&self, w: &WeylElt, a: &Root) -> Root {
        let n = self.rank();
        Root(
            (0..n)
                .map(|i| (0..n).map(|j| w.m[i * n + j] * a.0[j]).sum())
                .collect(),
        )
    }

    /// `{alpha > 0 : w alpha < 0}` in root order.
    pub fn inversion_set(&self, w: &WeylElt) -> Vec<Root> {
        self.pos
            .iter()
            .filter(|r| !self.act(w, r).is_positive())
            .cloned()
            .collect()
    }

    /// `w alpha_i < 0` (1-based `i`).
    pub fn right_descent(&self, w: &WeylElt, i: usize) -> bool {
        !column_positive(&w.m, self.rank(), i - 1)
    }

    /// `w^{-1} alpha_i < 0` (1-based `i`).
    pub fn left_descent(&self, w: &WeylElt, i: usize) -> bool {
        !column_positive(&w.mi, self.rank(), i - 1)
    }

    /// A reduced word: peel right descents, smallest index first.
    pub fn reduced_word(&self, w: &WeylElt) -> WeylWord {
        let mut w = w.clone();
        let mut letters = Vec::with_capacity(w.length);
        while w.length > 0 {
            let i = (1..=self.rank()).find(|&i| self.right_descent(&w, i)).unwrap();
            w = self.times_simple(&w, i - 1, false);
            letters.push(i);
        }
        letters.reverse();
        WeylWord(letters)
    }

    /// Unique minimal-length element of the requested coset.
    pub fn min_coset_rep(&self, j: &BTreeSet<usize>, w: &WeylElt, side: &Side) -> WeylElt {
        let (left, right): (&BTreeSet<usize>, BTreeSet<usize>) = match side {
            Side::Left => (j, BTreeSet::new()),
            Side::Right => (&EMPTY, j.clone()),
            Side::Double(k) => (j, k.clone()),
        };
        let mut w = w.clone();
        loop {
            let mut changed = false;
            for &l in left {
                if self.left_descent(&w, l) {
                    w = self.simple_times(l - 1, &w, false);
                    changed = true;
                }
            }
            for &r in &right {
                if self.right_descent(&w, r) {
                    w = self.times_simple(&w, r - 1, false);
                    changed = true;
                }
            }
            if !changed {
                return w;
            }
        }
    }

    /// Minimal representatives of `W_J \ W`, generated breadth first without
    /// materializing `W`. Output sorted by (length, reduced word).
    pub fn enumerate_left_min(&self, j: &BTreeSet<usize>) -> Vec<WeylElt> {
        let n = self.rank();
        let id = self.identity();
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        seen.insert(id.m.clone());
        let mut all = vec![id.clone()];
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let cand: Vec<WeylElt> = frontier
                .par_iter()
                .flat_map_iter(|w| {
                    (0..n)
                        .filter(|&s| column_positive(&w.m, n, s))
                        .map(|s| self.times_simple(w, s, true))
                        .filter(|v| j.iter().all(|&l| column_positive(&v.mi, n, l - 1)))
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut next = Vec::new();
            for v in cand {
                if seen.insert(v.m.clone()) {
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        self.sort_elements(all)
    }

    fn sort_elements(&self, v: Vec<WeylElt>) -> Vec<WeylElt> {
        let mut keyed: Vec<(usize, WeylWord, WeylElt)> = v
            .into_par_iter()
            .map(|w| (w.length, self.reduced_word(&w), w))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        keyed.into_iter().map(|t| t.2).collect()
    }

    /// Minimal representatives of `W_J \ W / W_K`.
    pub fn enumerate_double_cosets(&self, j: &BTreeSet<usize>, k: &BTreeSet<usize>) -> Vec<WeylElt> {
        self.enumerate_left_min(j)
            .into_iter()
            .filter(|w| k.iter().all(|&r| !self.right_descent(w, r)))
            .collect()
    }

    /// Split into (maps every support root negative, the rest).
    pub fn support_filter(&self, reps: &[WeylElt], supp: &[Root]) -> (Vec<WeylElt>, Vec<WeylElt>) {
        reps.iter()
            .cloned()
            .partition(|w| supp.iter().all(|a| self.act(w, a).0.iter().all(|&c| c <= 0)))
    }

    /// Membership in the standard parabolic subgroup `W_J`.
    pub fn in_parabolic(&self, w: &WeylElt, j: &BTreeSet<usize>) -> bool {
        self.inversion_set(w)
            .iter()
            .all(|r| r.0.iter().enumerate().all(|(i, &c)| c == 0 || j.contains(&(i + 1))))
    }

    /// Does `w` fix the fundamental weight `varpi_i`? Weights are handled in
    /// fundamental-weight coordinates along a reduced word.
    pub fn fixes_fundamental_weight(&self, w: &WeylElt, i: usize) -> bool {
        let n = self.rank();
        let mut lam = vec![0; n];
        lam[i - 1] = 1;
        let word = self.reduced_word(w);
        let c = self.rs.cartan();
        for &l in word.0.iter().rev() {
            let p = lam[l - 1];
            // alpha_l in weight coordinates: sum_j <alpha_j^vee, alpha_l> varpi_j
            for (jj, x) in lam.iter_mut().enumerate() {
                *x -= p * c[jj][l - 1];
            }
        }
        lam.iter().enumerate().all(|(k, &x)| x == if k == i - 1 { 1 } else { 0 })
    }

    /// Sort survivors by the double coset `W_J sigma W_K` they share with
    /// `w_sht` or `w_lng`; `lng_prime` holds those `sigma` in the long class
    /// with `w_lng^{-1} sigma` outside both `W_{\a}` and `W_{\b}`.
    pub fn classify(
        &self,
        survivors: &[WeylElt],
        j: &BTreeSet<usize>,
        k: &BTreeSet<usize>,
        w_sht: &WeylElt,
        w_lng: &WeylElt,
        avoid: (usize, usize),
    ) -> Classification {
        let side = Side::Double(k.clone());
        let rs = self.min_coset_rep(j, w_sht, &side);
        let rl = self.min_coset_rep(j, w_lng, &side);
        let li = self.inverse(w_lng);
        let all: BTreeSet<usize> = (1..=self.rank()).collect();
        let wo = |x: usize| -> BTreeSet<usize> { all.iter().copied().filter(|&y| y != x).collect() };
        let (wa, wb) = (wo(avoid.0), wo(avoid.1));
        let mut c = Classification { sht: vec![], lng: vec![], lng_prime: vec![], other: vec![] };
        for s in survivors {
            let r = self.min_coset_rep(j, s, &side);
            if r == rs {
                c.sht.push(s.clone());
            } else if r == rl {
                let nu = self.mul(&li, s);
                if !self.in_parabolic(&nu, &wa) && !self.in_parabolic(&nu, &wb) {
                    c.lng_prime.push(s.clone());
                }
                c.lng.push(s.clone());
            } else {
                c.other.push(s.clone());
            }
        }
        c
    }

    /// Elements of a standard parabolic subgroup, by closure.
    pub fn parabolic_elements(&self, j: &BTreeSet<usize>) -> Vec<WeylElt> {
        let id = self.identity();
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        seen.insert(id.m.clone());
        let mut out = vec![id.clone()];
        let mut frontier = vec![id];
        while let Some(w) = frontier.pop() {
            for &l in j {
                let up = !self.right_descent(&w, l);
                let v = self.times_simple(&w, l - 1, up);
                if seen.insert(v.m.clone()) {
                    out.push(v.clone());
                    frontier.push(v);
                }
            }
        }
        out
    }
}

static EMPTY: BTreeSet<usize> = BTreeSet::new();

/// Index sets used throughout: the Levi of `P_2` (all but 2) and of `P_1`.
pub fn levi_without(rank: usize, i: usize) -> BTreeSet<usize> {
    (1..=rank).filter(|&x| x != i).collect()
}

pub fn index_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

/// Named words.
pub mod words {
    pub const W_SHT: &str = "2431542345654234576542314354287654231435426543765428765431";
    pub const W_LNG: &str = "24315423456542314354276542314354265437654287654231435426543765428765431";
    pub const NU0_A: &str = "345678243546576";
    pub const NU0_B: &str = "345678245673456";
    pub const W_DOUBLE_PRIME: &str = "243154234654237654";
    pub const SUPPORT: [&str; 4] = ["11221111", "11122111", "12232210", "11233210"];
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn involution_and_identity() {
        let g = WeylGroup::e8();
        let w = g.evaluate(&WeylWord::parse("44").unwrap()).unwrap();
        assert_eq!(w, g.identity());
        assert!(matches!(g.evaluate(&WeylWord(vec![9])), Err(WeylError::BadLetter(9, 8))));
        let a = Root::parse("11221111").unwrap();
        assert_eq!(g.act(&g.identity(), &a), a);
        assert!(g.inversion_set(&g.identity()).is_empty());
    }

    #[test]
    fn g2_full_group() {
        let g = WeylGroup::g2();
        let all = g.enumerate_double_cosets(&BTreeSet::new(), &BTreeSet::new());
        assert_eq!(all.len(), 12);
        let full = index_set(&[1, 2]);
        assert_eq!(g.enumerate_double_cosets(&full, &full), vec![g.identity()]);
        // |W_J\W| * |W_J| = |W|
        for j in [index_set(&[1]), index_set(&[2])] {
            assert_eq!(g.enumerate_left_min(&j).len() * g.parabolic_elements(&j).len(), 12);
        }
    }

    #[test]
    fn parabolic_membership_matches_generated_subgroup() {
        let g = WeylGroup::g2();
        let all = g.enumerate_left_min(&BTreeSet::new());
        for j in [index_set(&[1]), index_set(&[2]), BTreeSet::new()] {
            let sub: HashSet<Vec<i32>> = g.parabolic_elements(&j).into_iter().map(|w| w.m).collect();
            for w in &all {
                assert_eq!(g.in_parabolic(w, &j), sub.contains(&w.m));
                if j.len() == 1 {
                    let other = if j.contains(&1) { 2 } else { 1 };
                    assert_eq!(g.in_parabolic(w, &j), g.fixes_fundamental_weight(w, other));
                }
            }
        }
    }

    #[test]
    fn whole_group_coset_is_identity() {
        let g = WeylGroup::e8();
        let all: BTreeSet<usize> = (1..=8).collect();
        let w = g.evaluate(&WeylWord::parse(words::W_SHT).unwrap()).unwrap();
        assert_eq!(g.min_coset_rep(&all, &w, &Side::Left), g.identity());
    }

    #[test]
    fn word_lengths() {
        let g = WeylGroup::e8();
        let s = g.evaluate(&WeylWord::parse(words::W_SHT).unwrap()).unwrap();
        let l = g.evaluate(&WeylWord::parse(words::W_LNG).unwrap()).unwrap();
        assert_eq!((s.length(), l.length()), (58, 71));
        assert_eq!(g.inversion_set(&s).len(), 58);
        let rw = g.reduced_word(&l);
        assert_eq!(g.evaluate(&rw).unwrap(), l);
    }

    fn arb_word(rank: usize, max: usize) -> impl Strategy<Value = WeylWord> {
        proptest::collection::vec(1..=rank, 0..max).prop_map(WeylWord)
    }

    proptest! {
        #[test]
        fn evaluate_is_homomorphic(u in arb_word(8, 20), v in arb_word(8, 20)) {
            let g = WeylGroup::e8();
            let a = g.evaluate(&u).unwrap();
            let b = g.evaluate(&v).unwrap();
            let ab = g.evaluate(&u.concat(&v)).unwrap();
            prop_assert_eq!(&g.mul(&a, &b), &ab);
            prop_assert!(ab.length() <= u.len() + v.len());
            prop_assert_eq!(ab.length(), g.inversion_set(&ab).len());
        }

        #[test]
        fn min_rep_is_idempotent_and_minimal(u in arb_word(8, 30)) {
            let g = WeylGroup::e8();
            let w = g.evaluate(&u).unwrap();
            let j = levi_without(8, 2);
            let k = index_set(&[4, 7]);
            let side = Side::Double(k.clone());
            let r = g.min_coset_rep(&j, &w, &side);
            prop_assert_eq!(&g.min_coset_rep(&j, &r, &side), &r);
            prop_assert!(r.length() <= w.length());
            for &l in &j { prop_assert!(!g.left_descent(&r, l)); }
            for &l in &k { prop_assert!(!g.right_descent(&r, l)); }
        }
    }
}
