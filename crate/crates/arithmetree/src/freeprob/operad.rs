//! Partition-indexed evaluation of multilinear bimodule maps and the
//! indexed partial compositions they generate.
//!
//! A family assigns to every arity `n` a map `f^(n): M^{(x)n} -> B` over a
//! `B`-`B`-bimodule `M`. A noncrossing partition acts by evaluating its
//! most nested blocks first; a collapsed block's value is absorbed into the
//! module element on its left (on its right at the start of the word), and
//! the top-level block values multiply left to right in `B`.

use crate::error::{Error, Result};
use crate::ncp::NCPartition;
use crate::sampling::SplitMix64;
use std::collections::BTreeMap;
use std::fmt;

/// An algebra `B` acting on both sides of a module `M`; the minimal
/// structure partition evaluation needs.
pub trait OperadSystem {
    type B: Clone + PartialEq + fmt::Debug;
    type M: Clone + fmt::Debug;

    fn mul_b(&self, x: &Self::B, y: &Self::B) -> Self::B;
    /// `m * b`.
    fn absorb_right(&self, m: &Self::M, b: &Self::B) -> Self::M;
    /// `b * m`.
    fn absorb_left(&self, b: &Self::B, m: &Self::M) -> Self::M;
}

/// Systems whose `B` carries rational-linear structure, enough for Möbius
/// convolution.
pub trait LinearSystem: OperadSystem {
    fn zero_b(&self) -> Self::B;
    fn add_b(&self, x: &Self::B, y: &Self::B) -> Self::B;
    fn scale_b(&self, c: &num_rational::BigRational, x: &Self::B) -> Self::B;
}

/// Systems that can draw sample module words for law checking.
pub trait SampleWords: OperadSystem {
    fn sample_word(&self, len: usize, rng: &mut SplitMix64) -> Vec<Self::M>;
}

/// A family of `n`-ary bimodule-balanced maps, one per arity.
pub trait Family<S: OperadSystem> {
    fn apply(&self, sys: &S, word: &[S::M]) -> Result<S::B>;

    /// The augmentation unit `f^(0)`: the identity of `B` on itself.
    fn empty(&self, _sys: &S, b: &S::B) -> S::B {
        b.clone()
    }
}

/// Evaluates a family at a noncrossing partition: innermost blocks first
/// (ties left to right), nested values absorbed into the left neighbour,
/// top-level values multiplied left to right.
pub fn evaluate_partition<S: OperadSystem, F: Family<S> + ?Sized>(
    sys: &S,
    fam: &F,
    p: &NCPartition,
    word: &[S::M],
) -> Result<S::B> {
    if word.len() != p.n() {
        return Err(Error::WordLength {
            expected: p.n(),
            got: word.len(),
        });
    }
    if p.n() == 0 {
        return Err(Error::ZeroDegree("evaluate_partition"));
    }
    let blocks = p.blocks();
    let depth_of = |b: &[usize]| {
        blocks
            .iter()
            .filter(|c| c[0] < b[0] && *c.last().unwrap() > *b.last().unwrap())
            .count()
    };
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(depth_of(&blocks[i])), blocks[i][0]));

    let mut working: BTreeMap<usize, S::M> = word
        .iter()
        .enumerate()
        .map(|(i, m)| (i + 1, m.clone()))
        .collect();
    let mut top_values: Vec<(usize, S::B)> = Vec::new();
    for &bi in &order {
        let block = &blocks[bi];
        let slots: Vec<S::M> = block
            .iter()
            .map(|pos| {
                working
                    .get(pos)
                    .expect("block member still present")
                    .clone()
            })
            .collect();
        debug_assert!(
            {
                let keys: Vec<usize> = working
                    .range(block[0]..=*block.last().unwrap())
                    .map(|(k, _)| *k)
                    .collect();
                keys == *block
            },
            "innermost-first keeps blocks consecutive"
        );
        let value = fam.apply(sys, &slots)?;
        for pos in block {
            working.remove(pos);
        }
        if depth_of(block) > 0 {
            if let Some((&pos, _)) = working.range(..block[0]).next_back() {
                let absorbed = sys.absorb_right(&working[&pos], &value);
                working.insert(pos, absorbed);
            } else {
                let (&pos, _) = working
                    .range(block[0]..)
                    .next()
                    .expect("a nested block has an enclosing element");
                let absorbed = sys.absorb_left(&value, &working[&pos]);
                working.insert(pos, absorbed);
            }
        } else {
            top_values.push((block[0], value));
        }
    }
    top_values.sort_by_key(|(pos, _)| *pos);
    let mut iter = top_values.into_iter();
    let (_, first) = iter.next().expect("at least one top-level block");
    Ok(iter.fold(first, |acc, (_, v)| sys.mul_b(&acc, &v)))
}

/// An element of the operad generated by the base family under indexed
/// composition. `Base(n)` stands for `f^(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpElem {
    Base(usize),
    Compose {
        outer: Box<OpElem>,
        slot: usize,
        inner: Box<OpElem>,
    },
}

impl OpElem {
    /// Arity adds under composition: `mu o_i nu` has arity
    /// `arity(mu) + arity(nu)`.
    pub fn arity(&self) -> usize {
        match self {
            OpElem::Base(n) => *n,
            OpElem::Compose { outer, inner, .. } => outer.arity() + inner.arity(),
        }
    }

    /// Applies the composite: the inner map eats its slots, its value is
    /// absorbed into the left neighbour (right neighbour at slot 1), and
    /// the outer map finishes.
    pub fn apply<S: OperadSystem, F: Family<S> + ?Sized>(
        &self,
        sys: &S,
        fam: &F,
        word: &[S::M],
    ) -> Result<S::B> {
        if word.len() != self.arity() {
            return Err(Error::WordLength {
                expected: self.arity(),
                got: word.len(),
            });
        }
        match self {
            OpElem::Base(_) => fam.apply(sys, word),
            OpElem::Compose { outer, slot, inner } => {
                let n = inner.arity();
                let i = *slot;
                let value = inner.apply(sys, fam, &word[i - 1..i - 1 + n])?;
                let mut rest: Vec<S::M> = Vec::with_capacity(word.len() - n);
                rest.extend_from_slice(&word[..i - 1]);
                rest.extend_from_slice(&word[i - 1 + n..]);
                if i >= 2 {
                    rest[i - 2] = sys.absorb_right(&rest[i - 2], &value);
                } else {
                    rest[0] = sys.absorb_left(&value, &rest[0]);
                }
                outer.apply(sys, fam, &rest)
            }
        }
    }
}

/// `mu o_i nu` for `1 <= i <= arity(mu) + 1`.
pub fn compose(outer: OpElem, slot: usize, inner: OpElem) -> Result<OpElem> {
    if slot < 1 || slot > outer.arity() + 1 {
        return Err(Error::SlotOutOfRange {
            slot,
            arity: outer.arity(),
        });
    }
    Ok(OpElem::Compose {
        outer: Box::new(outer),
        slot,
        inner: Box::new(inner),
    })
}

/// Reads a partition left to right as a chain `(arity, slot)`: the block
/// containing 1 gives the head operation `f^(size)` at slot 1, and every
/// later block starting at `s` with `q` elements appends `o_s f^(q)`.
pub fn composition_chain(p: &NCPartition) -> Vec<(usize, usize)> {
    p.blocks().iter().map(|b| (b.len(), b[0])).collect()
}

/// Folds a chain into an operad element.
pub fn fold_chain(chain: &[(usize, usize)]) -> Result<OpElem> {
    let mut iter = chain.iter();
    let &(head, _) = iter.next().ok_or(Error::ZeroDegree("fold_chain"))?;
    let mut acc = OpElem::Base(head);
    for &(q, s) in iter {
        acc = compose(acc, s, OpElem::Base(q))?;
    }
    Ok(acc)
}

/// One failed instance of a composition relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub relation: u8,
    pub i: usize,
    pub j: usize,
    pub sample: usize,
}

/// Outcome of checking both composition relations on sampled words.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub arities: (usize, usize, usize),
    pub cases_checked: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, m, n) = self.arities;
        if self.holds() {
            write!(
                f,
                "relations hold for arities ({l},{m},{n}): {} cases",
                self.cases_checked
            )
        } else {
            write!(
                f,
                "{} violations in {} cases for arities ({l},{m},{n}); first: ",
                self.violations.len(),
                self.cases_checked
            )?;
            let v = &self.violations[0];
            write!(
                f,
                "relation {} at i={}, j={}, sample {}",
                v.relation, v.i, v.j, v.sample
            )
        }
    }
}

/// Checks the two composition relations
/// `(lam o_i mu) o_{j+m} nu = (lam o_j nu) o_i mu` for `i <= j` and
/// `lam o_i (mu o_j nu) = (lam o_i mu) o_{i+j-1} nu`
/// for all legal index pairs on seeded sample words.
pub fn operad_laws_check<S: SampleWords, F: Family<S> + ?Sized>(
    sys: &S,
    fam: &F,
    l: usize,
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<LawReport> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::ZeroDegree("operad_laws_check"));
    }
    let mut rng = SplitMix64::new(seed);
    let total = l + m + n;
    let words: Vec<Vec<S::M>> = (0..samples)
        .map(|_| sys.sample_word(total, &mut rng))
        .collect();
    let mut report = LawReport {
        arities: (l, m, n),
        cases_checked: 0,
        violations: Vec::new(),
    };
    for i in 1..=l + 1 {
        for j in i..=l + 1 {
            let lhs = compose(
                compose(OpElem::Base(l), i, OpElem::Base(m))?,
                j + m,
                OpElem::Base(n),
            )?;
            let rhs = compose(
                compose(OpElem::Base(l), j, OpElem::Base(n))?,
                i,
                OpElem::Base(m),
            )?;
            for (si, w) in words.iter().enumerate() {
                report.cases_checked += 1;
                if lhs.apply(sys, fam, w)? != rhs.apply(sys, fam, w)? {
                    report.violations.push(LawViolation {
                        relation: 1,
                        i,
                        j,
                        sample: si,
                    });
                }
            }
        }
    }
    for i in 1..=l + 1 {
        for j in 1..=m + 1 {
            let lhs = compose(
                OpElem::Base(l),
                i,
                compose(OpElem::Base(m), j, OpElem::Base(n))?,
            )?;
            let rhs = compose(
                compose(OpElem::Base(l), i, OpElem::Base(m))?,
                i + j - 1,
                OpElem::Base(n),
            )?;
            for (si, w) in words.iter().enumerate() {
                report.cases_checked += 1;
                if lhs.apply(sys, fam, w)? != rhs.apply(sys, fam, w)? {
                    report.violations.push(LawViolation {
                        relation: 2,
                        i,
                        j,
                        sample: si,
                    });
                }
            }
        }
    }
    Ok(report)
}
