//! The vector coding of binary trees.
//!
//! A tree of degree `n` is coded by a vector `(v_1, ..., v_n)` read off its
//! complete expression: `v_i = i` when an opening parenthesis stands directly
//! before `x_i`, otherwise `v_i = j` where the rightmost closing parenthesis
//! after `x_i` closes an opening one attached to `x_j`. The coordinates obey
//! `1 <= v_i <= i`, and the map is injective on trees; the degree-0 tree is
//! given the name `(0)`.
//!
//! Decoding is total on the bounds-valid vectors (an error-correcting code):
//! a vector that is not the name of a tree still decodes to one.

use crate::error::{Error, Result};
use crate::tree::{exp_of, graft_trees, Token, Tree};
use std::fmt;
use std::str::FromStr;

/// A bounds-valid coordinate vector: `1 <= v_i <= i` for each `i`.
/// Membership says nothing about naming an actual tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateVec(Vec<u32>);

impl CandidateVec {
    pub fn new(coords: Vec<u32>) -> Result<CandidateVec> {
        check_bounds(&coords)?;
        Ok(CandidateVec(coords))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

/// The name of a binary tree. Degree 0 is the empty vector, printed `(0)`.
///
/// Construction validates that the vector actually names a tree, i.e. that
/// decoding and re-reading reproduces it. The derived `Ord` is lexicographic
/// and is only used for canonical listing; the Tamari order lives in
/// [`crate::tamari`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Vec<u32>);

impl Name {
    pub fn new(coords: Vec<u32>) -> Result<Name> {
        check_bounds(&coords)?;
        let decoded = decode(&coords);
        let reread = name_coords(&decoded);
        if reread != coords {
            return Err(Error::NotAName(format_vector(&coords)));
        }
        Ok(Name(coords))
    }

    /// The name `(0)` of the bare leaf.
    pub fn leaf() -> Name {
        Name(Vec::new())
    }

    /// The name `(1)` of the tree `Y`.
    pub fn y() -> Name {
        Name(vec![1])
    }

    /// The all-ones name `(1,...,1)` of the left comb, the Tamari minimum.
    pub fn left_comb(n: usize) -> Name {
        Name(vec![1; n])
    }

    /// The staircase name `(1,2,...,n)` of the right comb, the Tamari maximum.
    pub fn right_comb(n: usize) -> Name {
        Name((1..=n as u32).collect())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_candidate(&self) -> CandidateVec {
        CandidateVec(self.0.clone())
    }

    /// Internal constructor for vectors valid by construction.
    pub(crate) fn from_valid(coords: Vec<u32>) -> Name {
        debug_assert!(Name::new(coords.clone()).is_ok(), "invalid name {coords:?}");
        Name(coords)
    }
}

fn check_bounds(coords: &[u32]) -> Result<()> {
    for (idx, &c) in coords.iter().enumerate() {
        if c < 1 || c as usize > idx + 1 {
            return Err(Error::InvalidCandidate(format_vector(coords)));
        }
    }
    Ok(())
}

/// Reads the name of a tree. Total: the leaf maps to `(0)`.
pub fn name_of(t: &Tree) -> Name {
    Name(name_coords(t))
}

fn name_coords(t: &Tree) -> Vec<u32> {
    if t.degree() == 0 {
        return Vec::new();
    }
    let tokens = exp_of(t).expect("degree >= 1").tokens().to_vec();
    name_from_tokens(&tokens)
}

/// Reads a name from a complete expression token sequence.
pub(crate) fn name_from_tokens(tokens: &[Token]) -> Vec<u32> {
    let mut var_pos = Vec::new();
    let mut stack = Vec::new();
    let mut open_of_close = vec![usize::MAX; tokens.len()];
    for (p, t) in tokens.iter().enumerate() {
        match t {
            Token::Open => stack.push(p),
            Token::Close => {
                let o = stack.pop().expect("balanced parentheses");
                open_of_close[p] = o;
            }
            Token::Var(_) => var_pos.push(p),
        }
    }
    assert!(stack.is_empty(), "balanced parentheses");
    let n = var_pos.len() - 1;
    let mut coords = Vec::with_capacity(n);
    for i in 1..=n {
        let p = var_pos[i - 1];
        if p > 0 && tokens[p - 1] == Token::Open {
            coords.push(i as u32);
            continue;
        }
        // Rightmost closing parenthesis directly after x_i; it closes an
        // opening one attached to some x_j.
        let mut q = p + 1;
        while q < tokens.len() && tokens[q] == Token::Close {
            q += 1;
        }
        assert!(q > p + 1, "complete expression: x{i} must be followed by )");
        let open = open_of_close[q - 1];
        let j = tokens[open + 1..]
            .iter()
            .find_map(|t| match t {
                Token::Var(j) => Some(*j),
                _ => None,
            })
            .expect("every opening parenthesis is attached to a variable");
        coords.push(j);
    }
    coords
}

/// Decodes any bounds-valid vector into a tree.
///
/// The monomial `(^q1 x1 (^q2 x2 ... (^qn xn x(n+1)` with `q_i` the
/// multiplicity of the value `i` is completed from the highest `i` with
/// `q_i != 0` downwards, each group closing as a left comb. Vectors that do
/// name a tree decode to that tree; the rest are corrected to a nearby one.
pub fn tree_of(c: &CandidateVec) -> Tree {
    decode(c.coords())
}

fn decode(coords: &[u32]) -> Tree {
    let n = coords.len();
    let mut multiplicity = vec![0usize; n + 1];
    for &v in coords {
        multiplicity[v as usize] += 1;
    }
    // Items carry the variable index of their leftmost leaf.
    let mut items: Vec<(usize, Tree)> = (1..=n + 1).map(|k| (k, Tree::Leaf)).collect();
    for j in (1..=n).rev() {
        let q = multiplicity[j];
        if q == 0 {
            continue;
        }
        let idx = items
            .iter()
            .position(|(leftmost, _)| *leftmost == j)
            .expect("x_j is the leftmost leaf of some item");
        let tail: Vec<Tree> = items
            .drain(idx + 1..idx + 1 + q)
            .map(|(_, tree)| tree)
            .collect();
        let mut acc = std::mem::replace(&mut items[idx].1, Tree::Leaf);
        for t in tail {
            acc = graft_trees(acc, t);
        }
        items[idx].1 = acc;
    }
    debug_assert_eq!(items.len(), 1);
    items.pop().expect("one item remains").1
}

/// True iff the vector survives a decode/re-read round trip, i.e. names a
/// tree.
pub fn is_name(c: &CandidateVec) -> bool {
    coords_are_name(c.coords())
}

pub(crate) fn coords_are_name(coords: &[u32]) -> bool {
    name_coords(&decode(coords)) == coords
}

/// Splits a name of degree >= 1 as `v = v_l \/ v_r` at the highest
/// coordinate equal to 1.
pub fn split_name(v: &Name) -> Result<(Name, Name)> {
    if v.is_leaf() {
        return Err(Error::ZeroDegree("split"));
    }
    let coords = v.coords();
    let k = coords
        .iter()
        .rposition(|&c| c == 1)
        .expect("coords[0] == 1");
    let left = Name::from_valid(coords[..k].to_vec());
    let shift = k as u32 + 1;
    let right = Name::from_valid(coords[k + 1..].iter().map(|&c| c - shift).collect());
    Ok((left, right))
}

/// Grafting on names: `v \/ w = (v, 1, |v| + 1 + w)`, with `(0)` behaving as
/// the empty prefix/suffix. Mirrors grafting of the underlying trees.
pub fn vee(v: &Name, w: &Name) -> Name {
    let mut coords = v.coords().to_vec();
    coords.push(1);
    let shift = v.degree() as u32 + 1;
    coords.extend(w.coords().iter().map(|&c| c + shift));
    Name::from_valid(coords)
}

/// All names of degree `n`, lexicographically sorted. There are Catalan-many.
pub fn enumerate_names(n: usize) -> Vec<Name> {
    names_up_to(n).pop().expect("degree n present")
}

/// Names of every degree `0..=n`, indexed by degree.
pub fn names_up_to(n: usize) -> Vec<Vec<Name>> {
    let mut by_degree: Vec<Vec<Name>> = vec![vec![Name::leaf()]];
    for d in 1..=n {
        let mut out = Vec::new();
        for a in 0..d {
            let b = d - 1 - a;
            for l in &by_degree[a] {
                for r in &by_degree[b] {
                    out.push(vee(l, r));
                }
            }
        }
        out.sort();
        by_degree.push(out);
    }
    by_degree
}

/// The dendriform involution: `(v \/ w)^† = w^† \/ v^†`, fixing `(0)` and
/// `(1)`. On trees it is the mirror image.
pub fn dagger(v: &Name) -> Name {
    if v.is_leaf() {
        return v.clone();
    }
    let (l, r) = split_name(v).expect("degree >= 1");
    vee(&dagger(&r), &dagger(&l))
}

/// Number of self-dual names of degree `n`: zero in even degree, Catalan in
/// odd degree.
pub fn self_dual_count(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroDegree("self_dual_count"));
    }
    Ok(enumerate_names(n)
        .iter()
        .filter(|v| dagger(v) == **v)
        .count())
}

pub(crate) fn format_vector(coords: &[u32]) -> String {
    if coords.is_empty() {
        return "(0)".to_string();
    }
    let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join(","))
}

pub(crate) fn parse_vector(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("vector must be parenthesized: {s:?}")))?;
    if inner == "0" {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad coordinate {p:?} in {s:?}")))
        })
        .collect()
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vector(&self.0))
    }
}

impl fmt::Display for CandidateVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vector(&self.0))
    }
}

impl FromStr for Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Name> {
        Name::new(parse_vector(s)?)
    }
}

impl FromStr for CandidateVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CandidateVec> {
        CandidateVec::new(parse_vector(s)?)
    }
}
