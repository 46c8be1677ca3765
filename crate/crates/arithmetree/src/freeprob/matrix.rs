//! Square rational matrices: the noncommutative desk algebra for the
//! composition-law checks.

use super::operad::{Family, LinearSystem, OperadSystem, SampleWords};
use crate::error::{Error, Result};
use crate::sampling::SplitMix64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A `dim x dim` matrix of rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(dim: usize) -> RatMatrix {
        RatMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigRational::one();
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<BigRational>) -> Result<RatMatrix> {
        if entries.len() != dim * dim {
            return Err(Error::Parse(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut out = RatMatrix::zero(dim);
        for i in 0..dim {
            for k in 0..dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let add = a * other.get(k, j);
                    out.entries[i * dim + j] += add;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        RatMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Trace divided by the dimension, the canonical state.
    pub fn normalized_trace(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.dim {
            acc += self.get(i, i);
        }
        acc / BigRational::from(BigInt::from(self.dim as i64))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..self.dim {
            if row > 0 {
                write!(f, "; ")?;
            }
            for col in 0..self.dim {
                if col > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(row, col))?;
            }
        }
        Ok(())
    }
}

/// Matrices acting on themselves: `M = B`, both actions are multiplication.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub dim: usize,
}

impl OperadSystem for MatrixAlgebra {
    type B = RatMatrix;
    type M = RatMatrix;

    fn mul_b(&self, x: &RatMatrix, y: &RatMatrix) -> RatMatrix {
        x.mul(y)
    }

    fn absorb_right(&self, m: &RatMatrix, b: &RatMatrix) -> RatMatrix {
        m.mul(b)
    }

    fn absorb_left(&self, b: &RatMatrix, m: &RatMatrix) -> RatMatrix {
        b.mul(m)
    }
}

impl LinearSystem for MatrixAlgebra {
    fn zero_b(&self) -> RatMatrix {
        RatMatrix::zero(self.dim)
    }

    fn add_b(&self, x: &RatMatrix, y: &RatMatrix) -> RatMatrix {
        x.add(y)
    }

    fn scale_b(&self, c: &BigRational, x: &RatMatrix) -> RatMatrix {
        x.scale(c)
    }
}

impl SampleWords for MatrixAlgebra {
    fn sample_word(&self, len: usize, rng: &mut SplitMix64) -> Vec<RatMatrix> {
        (0..len).map(|_| random_matrix(self.dim, rng)).collect()
    }
}

/// Dense matrix with small integer entries.
pub fn random_matrix(dim: usize, rng: &mut SplitMix64) -> RatMatrix {
    let entries = (0..dim * dim)
        .map(|_| BigRational::from(BigInt::from(rng.int_in(-3, 3))))
        .collect();
    RatMatrix { dim, entries }
}

/// The moment family of the identity state on `M = B`: a bimodule map with
/// `phi(1) = 1` on the algebra itself is the identity, so
/// `f^(n)(a1 (x) ... (x) an) = a1 a2 ... an`.
#[derive(Debug, Clone, Default)]
pub struct ProductFamily;

impl Family<MatrixAlgebra> for ProductFamily {
    fn apply(&self, sys: &MatrixAlgebra, word: &[RatMatrix]) -> Result<RatMatrix> {
        let mut iter = word.iter();
        let first = iter
            .next()
            .ok_or(Error::ZeroDegree("product family"))?
            .clone();
        Ok(iter.fold(first, |acc, m| sys.mul_b(&acc, m)))
    }
}

/// Deliberately broken control: multiplies the word in reverse, which is
/// not bimodule balanced, so the composition relations must fail on a
/// noncommutative algebra.
#[derive(Debug, Clone, Default)]
pub struct ReversedProductFamily;

impl Family<MatrixAlgebra> for ReversedProductFamily {
    fn apply(&self, sys: &MatrixAlgebra, word: &[RatMatrix]) -> Result<RatMatrix> {
        let mut iter = word.iter().rev();
        let first = iter
            .next()
            .ok_or(Error::ZeroDegree("reversed family"))?
            .clone();
        Ok(iter.fold(first, |acc, m| sys.mul_b(&acc, m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn algebra_axioms_on_samples() {
        let mut rng = SplitMix64::new(0xa16e);
        let one = RatMatrix::identity(2);
        for _ in 0..25 {
            let a = random_matrix(2, &mut rng);
            let b = random_matrix(2, &mut rng);
            let c = random_matrix(2, &mut rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(one.mul(&a), a);
            assert_eq!(a.mul(&one), a);
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
        }
    }

    #[test]
    fn normalized_trace_of_identity_is_one() {
        assert_eq!(RatMatrix::identity(3).normalized_trace(), rat(1));
        let m = RatMatrix::from_entries(2, vec![rat(1), rat(5), rat(7), rat(3)]).unwrap();
        assert_eq!(m.normalized_trace(), rat(2));
    }

    #[test]
    fn product_family_is_balanced() {
        let sys = MatrixAlgebra { dim: 2 };
        let fam = ProductFamily;
        let mut rng = SplitMix64::new(0xba1a);
        for _ in 0..10 {
            let b = random_matrix(2, &mut rng);
            let bp = random_matrix(2, &mut rng);
            let word = sys.sample_word(3, &mut rng);
            let mut framed = word.clone();
            framed[0] = sys.absorb_left(&b, &framed[0]);
            framed[2] = sys.absorb_right(&framed[2], &bp);
            let lhs = fam.apply(&sys, &framed).unwrap();
            let rhs = b.mul(&fam.apply(&sys, &word).unwrap()).mul(&bp);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reversed_family_is_unbalanced() {
        let sys = MatrixAlgebra { dim: 2 };
        let fam = ReversedProductFamily;
        let b = RatMatrix::from_entries(2, vec![rat(0), rat(1), rat(0), rat(0)]).unwrap();
        let c = RatMatrix::from_entries(2, vec![rat(0), rat(0), rat(1), rat(0)]).unwrap();
        let d = RatMatrix::from_entries(2, vec![rat(1), rat(0), rat(0), rat(2)]).unwrap();
        let word = vec![c.clone(), d];
        let mut framed = word.clone();
        framed[0] = sys.absorb_left(&b, &framed[0]);
        let lhs = fam.apply(&sys, &framed).unwrap();
        let rhs = b.mul(&fam.apply(&sys, &word).unwrap());
        assert_ne!(lhs, rhs);
    }
}
