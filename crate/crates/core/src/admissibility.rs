//! Admissibility of a real parameter `c` and a pair `F`: the sign of
//! `prod_{F1}(n - f) prod_{F2}(n + c + f) / (n + c)_ĉ` over all `n >= 0`.
//!
//! Two independent deciders: a finite sign scan, and the parity rule on the
//! maximal segments of `G` inside the augmented ordered set `S`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{param, Result};
use crate::exactnum::{
    ceil_int, floor_int, format_rational, int, is_nonpositive_integer, BigRational,
};
use crate::exceptional::PairF;

/// `(c, F)` with `ĉ = max(-[c], 0)` precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityInstance {
    pub c: BigRational,
    pub pair: PairF,
    pub c_hat: usize,
}

impl AdmissibilityInstance {
    /// Rejects `c in {0, -1, -2, ...}`.
    pub fn new(c: BigRational, pair: PairF) -> Result<Self> {
        if is_nonpositive_integer(&c) {
            return Err(param(
                "c",
                format!("{} is a nonpositive integer", format_rational(&c)),
            ));
        }
        let neg_floor = -floor_int(&c);
        let c_hat = if neg_floor.is_positive() {
            neg_floor
                .to_usize()
                .ok_or_else(|| param("c", "magnitude too large"))?
        } else {
            0
        };
        Ok(Self { c, pair, c_hat })
    }

    /// `N* = ceil(max(max F1 ∪ {0}, -c))`. Past it every factor is positive.
    pub fn scan_horizon(&self) -> usize {
        let max_f1 = self.pair.f1().last().copied().unwrap_or(0);
        let neg_c = ceil_int(&-&self.c).max(BigInt::zero());
        neg_c.to_usize().unwrap_or(usize::MAX).max(max_f1 as usize)
    }

    /// Sign (-1, 0 or 1) of the admissibility quotient at `n`.
    pub fn sign_at(&self, n: usize) -> i8 {
        let nn = int(n as i64);
        let mut negatives = 0usize;
        for &f in self.pair.f1() {
            match (n as i64).cmp(&(f as i64)) {
                Ordering::Equal => return 0,
                Ordering::Less => negatives += 1,
                Ordering::Greater => {}
            }
        }
        let base = &nn + &self.c;
        for &f in self.pair.f2() {
            if (&base + int(f as i64)).is_negative() {
                negatives += 1;
            }
        }
        for m in 0..self.c_hat {
            if (&base + int(m as i64)).is_negative() {
                negatives += 1;
            }
        }
        if negatives.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DirectVerdict {
    Admissible,
    /// The first `n` at which the quotient is negative.
    Witness(usize),
}

impl DirectVerdict {
    pub fn is_admissible(self) -> bool {
        matches!(self, DirectVerdict::Admissible)
    }
}

/// Scans `n = 0..=N*`; a zero quotient (`n in F1`) is not a violation.
pub fn is_admissible_direct(inst: &AdmissibilityInstance) -> DirectVerdict {
    (0..=inst.scan_horizon())
        .find(|&n| inst.sign_at(n) < 0)
        .map_or(DirectVerdict::Admissible, DirectVerdict::Witness)
}

/// Maximal runs of consecutive integers in a sorted set.
pub fn integer_runs(set: &[u32]) -> Vec<Vec<u32>> {
    let mut runs: Vec<Vec<u32>> = Vec::new();
    for &v in set {
        match runs.last_mut() {
            Some(run) if *run.last().unwrap() + 1 == v => run.push(v),
            _ => runs.push(vec![v]),
        }
    }
    runs
}

/// `prod_{f in F1} (n - f) >= 0` for all `n`, i.e. every maximal run of
/// consecutive integers in `F1` has even length.
pub fn hermite_admissible(f1: &[u32]) -> bool {
    integer_runs(f1).iter().all(|r| r.len() % 2 == 0)
}

/// A maximal segment of `G` in the order of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub elements: Vec<BigRational>,
}

impl Segment {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", display_set(&self.elements, false))
    }
}

/// `S = N ∪ {-c - m : m in {0..-[c]-1} \ F2}`, `G = F1 ∪ (S \ N)`, and the
/// maximal segments of `G` under the successor order of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    /// The non-integer points added to `N` to form `S`, increasing.
    pub augmentation: Vec<BigRational>,
    pub g_set: Vec<BigRational>,
    pub segments: Vec<Segment>,
}

impl SegmentDecomposition {
    /// Leading elements of `S`: every natural up to `upto` merged with the
    /// augmentation points below it.
    pub fn s_prefix(&self, upto: usize) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = (0..=upto).map(|n| int(n as i64)).collect();
        let top = int(upto as i64);
        out.extend(self.augmentation.iter().filter(|p| **p < top).cloned());
        out.sort();
        out
    }

    /// The prefix of `S` shown when printing it: up to two naturals past the
    /// largest augmentation point.
    pub fn s_display_prefix(&self) -> Vec<BigRational> {
        let upto = self
            .augmentation
            .last()
            .map_or(2, |p| ceil_int(p).to_usize().unwrap_or(0) + 2);
        self.s_prefix(upto)
    }

    pub fn all_even(&self) -> bool {
        self.segments.iter().all(|s| s.size() % 2 == 0)
    }
}

/// Renders `{0, 1/4, 1, ...}`; integers print without a denominator.
pub fn display_set(items: &[BigRational], open_ended: bool) -> String {
    let mut parts: Vec<String> = items.iter().map(|q| q.to_string()).collect();
    if open_ended {
        parts.push("...".into());
    }
    format!("{{{}}}", parts.join(", "))
}

/// Builds `S`, `G` and the segment decomposition. Requires `c < 0`.
pub fn build_segments(inst: &AdmissibilityInstance) -> Result<SegmentDecomposition> {
    if !inst.c.is_negative() {
        return Err(param("c", "segment decomposition needs c < 0"));
    }
    let f2 = inst.pair.f2();
    let mut augmentation: Vec<BigRational> = (0..inst.c_hat)
        .filter(|m| !f2.contains(&(*m as u32)))
        .map(|m| -&inst.c - int(m as i64))
        .collect();
    augmentation.sort();

    let mut g_set: Vec<BigRational> = inst
        .pair
        .f1()
        .iter()
        .map(|&f| int(f as i64))
        .chain(augmentation.iter().cloned())
        .collect();
    g_set.sort();

    // Walk S far enough that the element after max(G) is visited.
    let bound = g_set
        .last()
        .map_or(0, |g| floor_int(g).to_usize().unwrap_or(0) + 1);
    let decomposition = SegmentDecomposition {
        augmentation,
        g_set,
        segments: Vec::new(),
    };
    let s_walk = decomposition.s_prefix(bound + 1);

    let mut segments: Vec<Segment> = Vec::new();
    let mut open = false;
    for s in s_walk {
        if decomposition.g_set.binary_search(&s).is_ok() {
            if open {
                segments.last_mut().unwrap().elements.push(s);
            } else {
                segments.push(Segment { elements: vec![s] });
                open = true;
            }
        } else {
            open = false;
        }
    }
    Ok(SegmentDecomposition {
        segments,
        ..decomposition
    })
}

/// The parity criterion; for `c >= 0` it reduces to Hermite admissibility
/// of `F1`.
pub fn is_admissible_segments(inst: &AdmissibilityInstance) -> bool {
    if !inst.c.is_negative() {
        return hermite_admissible(inst.pair.f1());
    }
    build_segments(inst)
        .expect("c < 0 checked above")
        .all_even()
}
