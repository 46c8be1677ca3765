//! Symbolic system for golden-value checks: `B` is the free monoid on
//! nested applications, `M` the free bimodule on named generators.
//!
//! Balanced-tensor rewriting (`a (x) b*a' = a*b (x) a'` for `b` in `B`) is
//! normalized at application time: a slot's left coefficient migrates into
//! the previous slot's tail, the first slot's out the front and the last
//! slot's out the back. Two expressions that the rewriting identifies thus
//! compare equal structurally.

use super::operad::{Family, OperadSystem, SampleWords};
use crate::error::Result;
use crate::sampling::SplitMix64;
use std::fmt;

/// A formal product of applications; the empty product is the unit of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalB {
    pub factors: Vec<FormalApp>,
}

/// One application `f^(k)(slot_1 (x) ... (x) slot_k)` in normal form: every
/// slot is a generator followed by a tail of applications, and the last
/// slot's tail is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalApp {
    pub slots: Vec<FormalSlot>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSlot {
    pub gen: String,
    pub tail: Vec<FormalApp>,
}

impl FormalSlot {
    pub fn new(gen: &str, tail: Vec<FormalApp>) -> FormalSlot {
        FormalSlot {
            gen: gen.to_string(),
            tail,
        }
    }
}

/// A module element `b * gen * b'` with formal coefficients on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalM {
    pub left: Vec<FormalApp>,
    pub gen: String,
    pub right: Vec<FormalApp>,
}

impl FormalM {
    pub fn gen(name: &str) -> FormalM {
        FormalM {
            left: Vec::new(),
            gen: name.to_string(),
            right: Vec::new(),
        }
    }
}

/// The generic word `a1 (x) ... (x) an`.
pub fn generator_word(n: usize) -> Vec<FormalM> {
    (1..=n).map(|i| FormalM::gen(&format!("a{i}"))).collect()
}

impl fmt::Display for FormalApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}(", self.slots.len())?;
        for (i, slot) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{}", slot.gen)?;
            for app in &slot.tail {
                write!(f, " {app}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for FormalB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, app) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{app}")?;
        }
        Ok(())
    }
}

/// The symbolic system.
#[derive(Debug, Clone, Default)]
pub struct FormalSystem;

impl OperadSystem for FormalSystem {
    type B = FormalB;
    type M = FormalM;

    fn mul_b(&self, x: &FormalB, y: &FormalB) -> FormalB {
        let mut factors = x.factors.clone();
        factors.extend(y.factors.iter().cloned());
        FormalB { factors }
    }

    fn absorb_right(&self, m: &FormalM, b: &FormalB) -> FormalM {
        let mut out = m.clone();
        out.right.extend(b.factors.iter().cloned());
        out
    }

    fn absorb_left(&self, b: &FormalB, m: &FormalM) -> FormalM {
        let mut out = m.clone();
        let mut left = b.factors.clone();
        left.extend(out.left);
        out.left = left;
        out
    }
}

impl SampleWords for FormalSystem {
    fn sample_word(&self, len: usize, _rng: &mut SplitMix64) -> Vec<FormalM> {
        generator_word(len)
    }
}

/// The free family: applying `f^(k)` builds a formal application, after the
/// balance normalization described at module level.
#[derive(Debug, Clone, Default)]
pub struct FreeFamily;

impl Family<FormalSystem> for FreeFamily {
    fn apply(&self, _sys: &FormalSystem, word: &[FormalM]) -> Result<FormalB> {
        let k = word.len();
        assert!(k >= 1, "families are applied to non-empty words");
        let mut factors = word[0].left.clone();
        let mut slots = Vec::with_capacity(k);
        for idx in 0..k {
            let mut tail = word[idx].right.clone();
            if idx + 1 < k {
                tail.extend(word[idx + 1].left.iter().cloned());
                slots.push(FormalSlot {
                    gen: word[idx].gen.clone(),
                    tail,
                });
            } else {
                slots.push(FormalSlot {
                    gen: word[idx].gen.clone(),
                    tail: Vec::new(),
                });
            }
        }
        factors.push(FormalApp { slots });
        factors.extend(word[k - 1].right.iter().cloned());
        Ok(FormalB { factors })
    }
}
