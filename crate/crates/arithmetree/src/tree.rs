//! Planar rooted binary trees and their parenthesis monomials.
//!
//! A tree of degree `n` has `n` internal (trivalent) vertices and `n + 1`
//! leaves. Degree 0 is the bare leaf. Every tree of degree >= 1 corresponds
//! to one complete bracketing of the word `x1 x2 ... x(n+1)`.

use crate::error::{Error, Result};
use serde_json::Value;
use std::fmt;

/// A planar rooted binary tree: either a leaf or an internal vertex with an
/// ordered pair of subtrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    /// The degree-1 tree `Y`.
    pub fn y() -> Tree {
        Tree::Node(Box::new(Tree::Leaf), Box::new(Tree::Leaf))
    }

    /// Number of internal vertices.
    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => l.degree() + r.degree() + 1,
        }
    }

    /// Number of leaves (`degree + 1`).
    pub fn leaves(&self) -> usize {
        self.degree() + 1
    }

    /// Mirror image: swaps left and right recursively.
    pub fn mirror(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(l, r) => Tree::Node(Box::new(r.mirror()), Box::new(l.mirror())),
        }
    }

    /// JSON form: a leaf is `0`, a node is `[left, right]`.
    pub fn to_json(&self) -> Value {
        match self {
            Tree::Leaf => Value::from(0),
            Tree::Node(l, r) => Value::Array(vec![l.to_json(), r.to_json()]),
        }
    }

    /// Parses the `0` / `[left, right]` JSON form.
    pub fn from_json(v: &Value) -> Result<Tree> {
        match v {
            Value::Number(n) if n.as_u64() == Some(0) => Ok(Tree::Leaf),
            Value::Array(items) if items.len() == 2 => Ok(Tree::Node(
                Box::new(Tree::from_json(&items[0])?),
                Box::new(Tree::from_json(&items[1])?),
            )),
            other => Err(Error::Parse(format!(
                "tree JSON must be 0 or a two-element array, got {other}"
            ))),
        }
    }

    /// Parses a tree from its JSON text form.
    pub fn from_json_str(s: &str) -> Result<Tree> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("tree JSON: {e}")))?;
        Tree::from_json(&v)
    }
}

/// Grafts two trees under a new root. The degree of the result is
/// `deg(l) + deg(r) + 1`.
pub fn graft_trees(l: Tree, r: Tree) -> Tree {
    Tree::Node(Box::new(l), Box::new(r))
}

/// One token of a parenthesis monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Open,
    Close,
    /// `Var(i)` stands for the variable `x_i`, `i` counted from 1.
    Var(u32),
}

/// The complete expression of a tree: a balanced bracketing of
/// `x1 ... x(n+1)` with `n` opening and `n` closing parentheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParenMonomial {
    tokens: Vec<Token>,
}

impl ParenMonomial {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub(crate) fn from_tokens(tokens: Vec<Token>) -> ParenMonomial {
        ParenMonomial { tokens }
    }
}

impl fmt::Display for ParenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tokens {
            match t {
                Token::Open => write!(f, "(")?,
                Token::Close => write!(f, ")")?,
                Token::Var(i) => write!(f, "x{i}")?,
            }
        }
        Ok(())
    }
}

/// The complete expression of a tree of degree >= 1. A bare leaf has no
/// parenthesization and is rejected.
pub fn exp_of(t: &Tree) -> Result<ParenMonomial> {
    if t.degree() == 0 {
        return Err(Error::ZeroDegree("exp"));
    }
    let mut tokens = Vec::with_capacity(3 * t.degree() + 1);
    let mut next_var = 1u32;
    render(t, &mut tokens, &mut next_var);
    Ok(ParenMonomial::from_tokens(tokens))
}

fn render(t: &Tree, out: &mut Vec<Token>, next_var: &mut u32) {
    match t {
        Tree::Leaf => {
            out.push(Token::Var(*next_var));
            *next_var += 1;
        }
        Tree::Node(l, r) => {
            out.push(Token::Open);
            render(l, out, next_var);
            render(r, out, next_var);
            out.push(Token::Close);
        }
    }
}
