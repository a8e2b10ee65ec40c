//! Root systems from Cartan matrices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid Cartan matrix: {0}")]
    BadCartan(String),
    #[error("reflection closure exceeded {0} roots; not of finite type")]
    NotFinite(usize),
    #[error("simple index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("not a root: {0}")]
    NotARoot(String),
}

/// `cartan[i][j] = <alpha_i^vee, alpha_j>`, so `s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub name: String,
    pub cartan: Vec<Vec<i32>>,
    pub labels: Vec<String>,
}

impl RootSystemSpec {
    pub fn new(name: &str, cartan: Vec<Vec<i32>>) -> Self {
        let labels = (1..=cartan.len()).map(|i| i.to_string()).collect();
        RootSystemSpec { name: name.into(), cartan, labels }
    }

    /// Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
    pub fn e8() -> Self {
        let edges = [(1, 3), (3, 4), (4, 2), (4, 5), (5, 6), (6, 7), (7, 8)];
        Self::simply_laced("E8", 8, &edges)
    }

    /// Bourbaki labelling: alpha_1 short, alpha_2 long.
    pub fn g2() -> Self {
        Self::new("G2", vec![vec![2, -3], vec![-1, 2]])
    }

    pub fn a(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Self::simply_laced(&format!("A{n}"), n, &edges)
    }

    pub fn simply_laced(name: &str, n: usize, edges: &[(usize, usize)]) -> Self {
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in edges {
            c[a - 1][b - 1] = -1;
            c[b - 1][a - 1] = -1;
        }
        Self::new(name, c)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn validate(&self) -> Result<(), RootError> {
        let n = self.rank();
        if n == 0 {
            return Err(RootError::BadCartan("rank 0".into()));
        }
        if self.labels.len() != n {
            return Err(RootError::BadCartan("label count differs from rank".into()));
        }
        for (i, row) in self.cartan.iter().enumerate() {
            if row.len() != n {
                return Err(RootError::BadCartan(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 2 {
                    return Err(RootError::BadCartan(format!("diagonal entry {} is {v}", i + 1)));
                }
                if i != j && v > 0 {
                    return Err(RootError::BadCartan(format!("positive entry at ({},{})", i + 1, j + 1)));
                }
                if i != j && (v == 0) != (self.cartan[j][i] == 0) {
                    return Err(RootError::BadCartan(format!("zero pattern not symmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.cartan[i][j] == self.cartan[j][i]))
    }
}

/// Coordinates in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Root(v)
    }

    /// Digit-string form such as `11221111`; negative roots get a leading `-`.
    pub fn parse(s: &str) -> Result<Root, RootError> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let v: Option<Vec<i32>> = body.chars().map(|c| c.to_digit(10).map(|d| d as i32)).collect();
        let v = v.ok_or_else(|| RootError::NotARoot(s.to_string()))?;
        Ok(if neg { Root(v).neg() } else { Root(v) })
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.0.iter().any(|&c| c < 0);
        if neg {
            write!(f, "-")?;
        }
        let wide = self.0.iter().any(|&c| c.abs() > 9);
        for (i, c) in self.0.iter().enumerate() {
            if wide && i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.abs())?;
        }
        Ok(())
    }
}

/// Height first, then descending lex, so that `a1 < a2 < ... < a_n`.
impl Ord for Root {
    fn cmp(&self, o: &Self) -> Ordering {
        self.height().cmp(&o.height()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

const CLOSURE_LIMIT: usize = 20_000;

impl RootSystem {
    pub fn new(spec: RootSystemSpec) -> Result<Self, RootError> {
        spec.validate()?;
        let n = spec.rank();
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue: Vec<Root> = Vec::new();
        for i in 1..=n {
            for r in [Root::simple(n, i), Root::simple(n, i).neg()] {
                seen.insert(r.clone(), ());
                queue.push(r);
            }
        }
        while let Some(r) = queue.pop() {
            for i in 0..n {
                let s = reflect_with(&spec.cartan, i, &r);
                if !seen.contains_key(&s) {
                    if seen.len() >= CLOSURE_LIMIT {
                        return Err(RootError::NotFinite(CLOSURE_LIMIT));
                    }
                    seen.insert(s.clone(), ());
                    queue.push(s);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_keys().collect();
        roots.sort();
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Ok(RootSystem { spec, roots, index })
    }

    pub fn e8() -> Self {
        Self::new(RootSystemSpec::e8()).expect("E8 is finite")
    }

    pub fn g2() -> Self {
        Self::new(RootSystemSpec::g2()).expect("G2 is finite")
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.spec.cartan
    }

    /// All roots in (height, lex) order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots.iter().filter(|r| r.is_positive()).cloned().collect()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootError> {
        if i == 0 || i > self.rank() {
            Err(RootError::IndexOutOfRange(i, self.rank()))
        } else {
            Ok(())
        }
    }

    /// Positive roots with a positive coefficient at simple index `i`
    /// (1-based): the roots of the unipotent radical of the maximal
    /// parabolic omitting `i`.
    pub fn radical_roots(&self, i: usize) -> Result<Vec<Root>, RootError> {
        self.check_index(i)?;
        Ok(self
            .roots
            .iter()
            .filter(|r| r.is_positive() && r.0[i - 1] > 0)
            .cloned()
            .collect())
    }

    /// `<alpha, alpha_j^vee>` for 1-based `j`.
    pub fn pairing(&self, a: &Root, j: usize) -> i32 {
        a.0.iter()
            .enumerate()
            .map(|(i, &c)| c * self.spec.cartan[j - 1][i])
            .sum()
    }

    /// Simple reflection `s_i` (1-based) applied to any vector.
    pub fn reflect(&self, i: usize, v: &Root) -> Root {
        reflect_with(&self.spec.cartan, i - 1, v)
    }
}

fn reflect_with(cartan: &[Vec<i32>], i: usize, v: &Root) -> Root {
    let p: i32 = v.0.iter().enumerate().map(|(j, &c)| c * cartan[i][j]).sum();
    let mut out = v.0.clone();
    out[i] -= p;
    Root(out)
}

/// A rank-2 torus mapped into the maximal torus by coweights, followed by a
/// change of basis on the character side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusRestriction {
    /// Coweights in the simple-coroot basis.
    pub coweights: Vec<Vec<i32>>,
    pub basis_change: [[i32; 2]; 2],
}

impl TorusRestriction {
    /// `a1 -> alpha2^vee alpha3^vee alpha5^vee (a1)`, `a2 -> alpha4^vee (a2)`;
    /// converted to `t1 = beta_lng(t)`, `t2 = beta_sht(t)` coordinates.
    pub fn g2_in_e8() -> Self {
        TorusRestriction {
            coweights: vec![vec![0, 1, 1, 0, 1, 0, 0, 0], vec![0, 0, 0, 1, 0, 0, 0, 0]],
            // (a1, a2)-exponents (e1, e2) give t1^{-(e1+2e2)} t2^{-(2e1+3e2)};
            // the overall sign is fixed so that the roots carrying r5, r6 in
            // the U-character restrict to t2 and t1*t2.
            basis_change: [[-1, -2], [-2, -3]],
        }
    }

    pub fn restrict(&self, rs: &RootSystem, a: &Root) -> (i32, i32) {
        let e: Vec<i32> = self
            .coweights
            .iter()
            .map(|cw| {
                cw.iter()
                    .enumerate()
                    .map(|(j, &c)| c * rs.pairing(a, j + 1))
                    .sum()
            })
            .collect();
        let b = &self.basis_change;
        (b[0][0] * e[0] + b[0][1] * e[1], b[1][0] * e[0] + b[1][1] * e[1])
    }

    pub fn is_invertible(&self) -> bool {
        let b = &self.basis_change;
        b[0][0] * b[1][1] - b[0][1] * b[1][0] != 0
    }
}

pub fn roots_to_json(roots: &[Root]) -> serde_json::Value {
    serde_json::Value::Array(roots.iter().map(|r| serde_json::Value::String(r.to_string())).collect())
}

pub fn spec_from_json(s: &str) -> Result<RootSystemSpec, RootError> {
    serde_json::from_str(s).map_err(|e| RootError::BadCartan(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let g2 = RootSystem::g2();
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.positive_roots().len(), 6);
        let e8 = RootSystem::e8();
        assert_eq!(e8.roots().len(), 240);
        assert_eq!(e8.positive_roots().len(), 120);
        let a1 = RootSystem::new(RootSystemSpec::new("A1", vec![vec![2]])).unwrap();
        assert_eq!(a1.roots(), &[Root(vec![-1]), Root(vec![1])]);
    }

    #[test]
    fn radicals() {
        let e8 = RootSystem::e8();
        assert_eq!(e8.radical_roots(1).unwrap().len(), 78);
        assert_eq!(e8.radical_roots(2).unwrap().len(), 92);
        assert_eq!(RootSystem::g2().radical_roots(1).unwrap().len(), 5);
        assert_eq!(e8.radical_roots(9), Err(RootError::IndexOutOfRange(9, 8)));
        assert_eq!(e8.radical_roots(0), Err(RootError::IndexOutOfRange(0, 8)));
    }

    #[test]
    fn g2_roots_by_hand() {
        // alpha1, alpha2, a1+a2, 2a1+a2, 3a1+a2, 3a1+2a2
        let want: Vec<Root> = [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]]
            .iter()
            .map(|v| Root(v.to_vec()))
            .collect();
        let mut got = RootSystem::g2().positive_roots();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        let mut want = want;
        want.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got, want);
    }

    #[test]
    fn affine_type_rejected() {
        // affine A1: [[2,-2],[-2,2]]
        let s = RootSystemSpec::new("A1~", vec![vec![2, -2], vec![-2, 2]]);
        assert!(matches!(RootSystem::new(s), Err(RootError::NotFinite(_))));
        let bad = RootSystemSpec::new("bad", vec![vec![2, 1], vec![1, 2]]);
        assert!(matches!(RootSystem::new(bad), Err(RootError::BadCartan(_))));
    }

    #[test]
    fn highest_root_and_printing() {
        let e8 = RootSystem::e8();
        let top = e8.roots().last().unwrap();
        assert_eq!(top.to_string(), "23465432");
        assert_eq!(Root::parse("11221111").unwrap().to_string(), "11221111");
        assert_eq!(Root::parse("-00011100").unwrap(), Root(vec![0, 0, 0, 1, 1, 1, 0, 0]).neg());
        assert!(e8.is_root(&Root::parse("12232210").unwrap()));
    }

    #[test]
    fn restriction_examples() {
        let e8 = RootSystem::e8();
        let tr = TorusRestriction::g2_in_e8();
        assert!(tr.is_invertible());
        let mut sum = (0, 0);
        let extra: Vec<Root> = ["11110000", "11111000", "11121000", "11221000", "12232100", "12232110", "12232111"]
            .iter()
            .map(|s| Root::parse(s).unwrap())
            .collect();
        for r in e8.radical_roots(1).unwrap() {
            if extra.contains(&r) {
                continue;
            }
            let (a, b) = tr.restrict(&e8, &r);
            sum = (sum.0 + a, sum.1 + b);
        }
        assert_eq!(sum, (5, 10));
        // the roots carrying r5 and r6 in the U-character
        assert_eq!(tr.restrict(&e8, &Root::parse("11232211").unwrap()), (0, 1));
        assert_eq!(tr.restrict(&e8, &Root::parse("11222221").unwrap()), (1, 1));
    }
}
