use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Which component of a pair an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
}

impl Component {
    pub fn index(self) -> u8 {
        match self {
            Component::First => 1,
            Component::Second => 2,
        }
    }
}

impl TryFrom<u8> for Component {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Component::First),
            2 => Ok(Component::Second),
            _ => Err(param("component", format!("{v} is not 1 or 2"))),
        }
    }
}

/// A pair `F = (F1, F2)` of finite sets of positive integers, each stored
/// strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct PairF {
    f1: Vec<u32>,
    f2: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    f1: Vec<u32>,
    f2: Vec<u32>,
}

impl TryFrom<RawPair> for PairF {
    type Error = Error;
    fn try_from(raw: RawPair) -> Result<Self> {
        PairF::new(raw.f1, raw.f2)
    }
}

impl From<PairF> for RawPair {
    fn from(p: PairF) -> Self {
        RawPair { f1: p.f1, f2: p.f2 }
    }
}

fn normalize(name: &'static str, mut v: Vec<u32>) -> Result<Vec<u32>> {
    if v.contains(&0) {
        return Err(param(name, "elements must be positive integers"));
    }
    v.sort_unstable();
    let len = v.len();
    v.dedup();
    if v.len() != len {
        return Err(param(name, "elements must be distinct"));
    }
    Ok(v)
}

impl PairF {
    /// Sorts each component; rejects zeros and repeated elements.
    pub fn new(f1: Vec<u32>, f2: Vec<u32>) -> Result<Self> {
        Ok(Self {
            f1: normalize("f1", f1)?,
            f2: normalize("f2", f2)?,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn f1(&self) -> &[u32] {
        &self.f1
    }

    pub fn f2(&self) -> &[u32] {
        &self.f2
    }

    pub fn k1(&self) -> usize {
        self.f1.len()
    }

    pub fn k2(&self) -> usize {
        self.f2.len()
    }

    pub fn k(&self) -> usize {
        self.f1.len() + self.f2.len()
    }

    pub fn component(&self, c: Component) -> &[u32] {
        match c {
            Component::First => &self.f1,
            Component::Second => &self.f2,
        }
    }

    /// `u_F = sum F1 + sum F2 - binom(k1 + 1, 2) - binom(k2, 2)`, checked to
    /// be nonnegative.
    pub fn uf(&self) -> Result<usize> {
        let sum: i64 = self.f1.iter().chain(&self.f2).map(|&f| f as i64).sum();
        let k1 = self.k1() as i64;
        let k2 = self.k2() as i64;
        let u = sum - (k1 + 1) * k1 / 2 - k2 * (k2 - 1) / 2;
        usize::try_from(u).map_err(|_| Error::Index(format!("u_F = {u} is negative for {self}")))
    }

    pub fn sigma(&self) -> Result<SigmaF> {
        Ok(SigmaF {
            u: self.uf()?,
            excluded: self.f1.clone(),
        })
    }

    /// The pair with the largest element of the chosen component removed.
    pub fn reduce(&self, c: Component) -> Result<PairF> {
        let mut out = self.clone();
        let v = match c {
            Component::First => &mut out.f1,
            Component::Second => &mut out.f2,
        };
        if v.pop().is_none() {
            return Err(Error::Reduction(c.index()));
        }
        Ok(out)
    }

    /// Every pair `(H1, H2)` with `H1 ⊆ F1`, `H2 ⊆ F2`.
    pub fn subpairs(&self) -> Vec<PairF> {
        let subsets = |v: &[u32]| -> Vec<Vec<u32>> {
            (0..1u32 << v.len())
                .map(|mask| {
                    v.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect()
        };
        let mut out = Vec::new();
        for h1 in subsets(&self.f1) {
            for h2 in subsets(&self.f2) {
                out.push(PairF {
                    f1: h1.clone(),
                    f2: h2,
                });
            }
        }
        out
    }
}

impl fmt::Display for PairF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[u32]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                format!(
                    "{{{}}}",
                    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                )
            }
        };
        write!(f, "({}, {})", set(&self.f1), set(&self.f2))
    }
}

/// The index set `{u_F, u_F + 1, ...} \ {u_F + f : f in F1}`, kept as
/// offset plus exclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaF {
    pub u: usize,
    pub excluded: Vec<u32>,
}

impl SigmaF {
    pub fn contains(&self, n: usize) -> bool {
        n >= self.u && !self.excluded.contains(&((n - self.u) as u32))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (self.u..).filter(move |&n| self.contains(n))
    }

    pub fn prefix(&self, count: usize) -> Vec<usize> {
        self.iter().take(count).collect()
    }
}

/// `u_F`.
pub fn pair_uf(f: &PairF) -> Result<usize> {
    f.uf()
}

/// The first `count` elements of `sigma_F`.
pub fn sigma_prefix(f: &PairF, count: usize) -> Result<Vec<usize>> {
    Ok(f.sigma()?.prefix(count))
}

pub fn reduce_pair(f: &PairF, c: Component) -> Result<PairF> {
    f.reduce(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &[u32], b: &[u32]) -> PairF {
        PairF::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn uf_examples() {
        assert_eq!(pair_uf(&pair(&[], &[])).unwrap(), 0);
        assert_eq!(pair_uf(&pair(&[1], &[])).unwrap(), 0);
        assert_eq!(pair_uf(&pair(&[], &[1])).unwrap(), 1);
        // 1+2+3 - binom(3,2) - binom(1,2) = 6 - 3 - 0
        assert_eq!(pair_uf(&pair(&[1, 2], &[3])).unwrap(), 3);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_prefix(&pair(&[], &[]), 4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(sigma_prefix(&pair(&[1], &[]), 4).unwrap(), vec![0, 2, 3, 4]);
        assert_eq!(sigma_prefix(&pair(&[], &[1]), 3).unwrap(), vec![1, 2, 3]);
        let s = pair(&[1, 2], &[3]).sigma().unwrap();
        assert_eq!(s.prefix(4), vec![3, 6, 7, 8]);
        assert!(!s.contains(4));
        assert!(!s.contains(2));
    }

    #[test]
    fn reduce_examples() {
        let f = pair(&[1, 2], &[3]);
        assert_eq!(reduce_pair(&f, Component::First).unwrap(), pair(&[1], &[3]));
        assert_eq!(
            reduce_pair(&f, Component::Second).unwrap(),
            pair(&[1, 2], &[])
        );
        assert_eq!(
            reduce_pair(&pair(&[1], &[]), Component::First).unwrap(),
            PairF::empty()
        );
        assert_eq!(
            reduce_pair(&PairF::empty(), Component::Second),
            Err(Error::Reduction(2))
        );
    }

    #[test]
    fn validation_and_json() {
        assert!(PairF::new(vec![0], vec![]).is_err());
        assert!(PairF::new(vec![2, 2], vec![]).is_err());
        assert_eq!(PairF::new(vec![3, 1], vec![]).unwrap().f1(), &[1, 3]);
        let p: PairF = serde_json::from_str(r#"{"f1":[2,1],"f2":[5]}"#).unwrap();
        assert_eq!(p, pair(&[1, 2], &[5]));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"f1":[1,2],"f2":[5]}"#
        );
        assert!(serde_json::from_str::<PairF>(r#"{"f1":[0],"f2":[]}"#).is_err());
        assert_eq!(p.to_string(), "({1,2}, {5})");
    }

    #[test]
    fn subpair_family() {
        let subs = pair(&[1, 2], &[3]).subpairs();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&PairF::empty()));
        assert!(subs.contains(&pair(&[2], &[3])));
    }
}
