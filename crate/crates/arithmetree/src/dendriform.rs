//! The tree arithmetic: over/under operations, grove addition and its
//! left/right split, universal expressions, multiplication by substitution,
//! grove decomposition, first-degree equations and primality.

use crate::error::{Error, Result};
use crate::grove::Grove;
use crate::name::{dagger, enumerate_names, split_name, vee, Name};
use crate::tamari::interval;
use std::collections::BTreeSet;
use std::fmt;

/// Shifted addition with 1 as right annihilator: coordinates equal to 1
/// stay 1, every other coordinate gains `k`.
pub fn shift_absorb(k: u32, w: &Name) -> Vec<u32> {
    w.coords()
        .iter()
        .map(|&c| if c == 1 { 1 } else { c + k })
        .collect()
}

/// Over: the tree of `w` with its leftmost leaf replaced by the tree of
/// `v`. On coordinates `(v, |v| . w)` with the annihilating shift. `(0)`
/// is a two-sided unit.
pub fn over(v: &Name, w: &Name) -> Name {
    if v.is_leaf() {
        return w.clone();
    }
    if w.is_leaf() {
        return v.clone();
    }
    let mut coords = v.coords().to_vec();
    coords.extend(shift_absorb(v.degree() as u32, w));
    Name::from_valid(coords)
}

/// Under: the tree of `v` with its rightmost leaf replaced by the tree of
/// `w`. On coordinates `(v, |v| + w)`.
pub fn under(v: &Name, w: &Name) -> Name {
    if v.is_leaf() {
        return w.clone();
    }
    if w.is_leaf() {
        return v.clone();
    }
    let shift = v.degree() as u32;
    let mut coords = v.coords().to_vec();
    coords.extend(w.coords().iter().map(|&c| c + shift));
    Name::from_valid(coords)
}

/// Grove addition of two names: every name in the sandwich
/// `[v over w, v under w]`.
pub fn star_names(v: &Name, w: &Name) -> Grove {
    if v.is_leaf() {
        return Grove::singleton(w.clone());
    }
    if w.is_leaf() {
        return Grove::singleton(v.clone());
    }
    let lo = over(v, w);
    let hi = under(v, w);
    Grove::from_names(interval(&lo, &hi).expect("equal degrees")).expect("endpoints are names")
}

/// Grove addition, extended to groves by distributivity on both sides.
/// The empty sentinel absorbs.
pub fn star(a: &Grove, b: &Grove) -> Grove {
    if a.is_empty_sentinel() || b.is_empty_sentinel() {
        return Grove::Empty;
    }
    let mut acc: BTreeSet<Name> = BTreeSet::new();
    for v in a.iter() {
        for w in b.iter() {
            acc.extend(star_names(v, w).iter().cloned());
        }
    }
    Grove::from_names(acc).expect("sum of groves is a grove")
}

/// Left part of the split of grove addition on names:
/// `v -| w = v_l \/ (v_r + w)`. Undefined on `(0) -| (0)`.
pub fn dend_left_names(v: &Name, w: &Name) -> Result<Grove> {
    match (v.is_leaf(), w.is_leaf()) {
        (true, true) => Err(Error::UndefinedOnUnits("left")),
        (true, false) => Ok(Grove::Empty),
        (false, true) => Ok(Grove::singleton(v.clone())),
        (false, false) => {
            let (vl, vr) = split_name(v)?;
            let names: BTreeSet<Name> = star_names(&vr, w).iter().map(|t| vee(&vl, t)).collect();
            Ok(Grove::from_names(names)?)
        }
    }
}

/// Right part of the split: `v |- w = (v + w_l) \/ w_r`. Undefined on
/// `(0) |- (0)`.
pub fn dend_right_names(v: &Name, w: &Name) -> Result<Grove> {
    match (v.is_leaf(), w.is_leaf()) {
        (true, true) => Err(Error::UndefinedOnUnits("right")),
        (false, true) => Ok(Grove::Empty),
        (true, false) => Ok(Grove::singleton(w.clone())),
        (false, false) => {
            let (wl, wr) = split_name(w)?;
            let names: BTreeSet<Name> = star_names(v, &wl).iter().map(|t| vee(t, &wr)).collect();
            Ok(Grove::from_names(names)?)
        }
    }
}

/// `-|` on groves: pairwise, unioned; the empty sentinel absorbs.
pub fn dend_left(a: &Grove, b: &Grove) -> Result<Grove> {
    grove_pairwise(a, b, dend_left_names)
}

/// `|-` on groves.
pub fn dend_right(a: &Grove, b: &Grove) -> Result<Grove> {
    grove_pairwise(a, b, dend_right_names)
}

fn grove_pairwise(a: &Grove, b: &Grove, op: fn(&Name, &Name) -> Result<Grove>) -> Result<Grove> {
    if a.is_empty_sentinel() || b.is_empty_sentinel() {
        return Ok(Grove::Empty);
    }
    let mut acc = Grove::Empty;
    for v in a.iter() {
        for w in b.iter() {
            acc = acc.union(&op(v, w)?)?;
        }
    }
    Ok(acc)
}

/// The elementwise involution of a grove.
pub fn dagger_grove(g: &Grove) -> Grove {
    match g {
        Grove::Empty => Grove::Empty,
        Grove::Names(set) => Grove::Names(set.iter().map(dagger).collect()),
    }
}

/// Universal expression of a name over the generator `(1)` in the
/// operations `prec` / `succ`; sides coming from `(0)` are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DendExpr {
    Gen,
    Prec(Box<DendExpr>, Box<DendExpr>),
    Succ(Box<DendExpr>, Box<DendExpr>),
}

impl fmt::Display for DendExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(e: &DendExpr) -> String {
            match e {
                DendExpr::Gen => "(1)".to_string(),
                other => format!("({other})"),
            }
        }
        match self {
            DendExpr::Gen => write!(f, "(1)"),
            DendExpr::Prec(l, r) => write!(f, "{}≺{}", child(l), child(r)),
            DendExpr::Succ(l, r) => write!(f, "{}≻{}", child(l), child(r)),
        }
    }
}

/// Universal expression in the over/under operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LExpr {
    Gen,
    Over(Box<LExpr>, Box<LExpr>),
    Under(Box<LExpr>, Box<LExpr>),
}

impl fmt::Display for LExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(e: &LExpr) -> String {
            match e {
                LExpr::Gen => "(1)".to_string(),
                other => format!("({other})"),
            }
        }
        match self {
            LExpr::Gen => write!(f, "(1)"),
            LExpr::Over(l, r) => write!(f, "{}↗{}", child(l), child(r)),
            LExpr::Under(l, r) => write!(f, "{}↘{}", child(l), child(r)),
        }
    }
}

/// The `prec`/`succ` universal expression of a name of degree >= 1:
/// `omega(v) = omega(v_l) succ (1) prec omega(v_r)`.
pub fn omega_expr(v: &Name) -> Result<DendExpr> {
    if v.is_leaf() {
        return Err(Error::ZeroDegree("omega"));
    }
    let (l, r) = split_name(v)?;
    Ok(match (l.is_leaf(), r.is_leaf()) {
        (true, true) => DendExpr::Gen,
        (true, false) => DendExpr::Prec(Box::new(DendExpr::Gen), Box::new(omega_expr(&r)?)),
        (false, true) => DendExpr::Succ(Box::new(omega_expr(&l)?), Box::new(DendExpr::Gen)),
        (false, false) => DendExpr::Prec(
            Box::new(DendExpr::Succ(
                Box::new(omega_expr(&l)?),
                Box::new(DendExpr::Gen),
            )),
            Box::new(omega_expr(&r)?),
        ),
    })
}

/// The over/under universal expression:
/// `varpi(v) = varpi(v_l) over (1) under varpi(v_r)`.
pub fn varpi_expr(v: &Name) -> Result<LExpr> {
    if v.is_leaf() {
        return Err(Error::ZeroDegree("varpi"));
    }
    let (l, r) = split_name(v)?;
    Ok(match (l.is_leaf(), r.is_leaf()) {
        (true, true) => LExpr::Gen,
        (true, false) => LExpr::Under(Box::new(LExpr::Gen), Box::new(varpi_expr(&r)?)),
        (false, true) => LExpr::Over(Box::new(varpi_expr(&l)?), Box::new(LExpr::Gen)),
        (false, false) => LExpr::Under(
            Box::new(LExpr::Over(Box::new(varpi_expr(&l)?), Box::new(LExpr::Gen))),
            Box::new(varpi_expr(&r)?),
        ),
    })
}

/// Evaluates a `prec`/`succ` expression with the generator bound to a grove.
pub fn eval_dend(expr: &DendExpr, g: &Grove) -> Result<Grove> {
    match expr {
        DendExpr::Gen => Ok(g.clone()),
        DendExpr::Prec(l, r) => dend_left(&eval_dend(l, g)?, &eval_dend(r, g)?),
        DendExpr::Succ(l, r) => dend_right(&eval_dend(l, g)?, &eval_dend(r, g)?),
    }
}

/// Evaluates an over/under expression with the generator bound to a name.
pub fn eval_l(expr: &LExpr, v: &Name) -> Name {
    match expr {
        LExpr::Gen => v.clone(),
        LExpr::Over(l, r) => over(&eval_l(l, v), &eval_l(r, v)),
        LExpr::Under(l, r) => under(&eval_l(l, v), &eval_l(r, v)),
    }
}

/// Dendriform multiplication `u |x v`: the universal expression of `u`
/// evaluated at `v`. Extended to groves by distributivity on the left only;
/// `(0)` annihilates from the left, the empty sentinel absorbs. The right
/// operand must have degree >= 1.
pub fn ltimes(a: &Grove, b: &Grove) -> Result<Grove> {
    if a.is_empty_sentinel() || b.is_empty_sentinel() {
        return Ok(Grove::Empty);
    }
    if a.degree() == Some(0) {
        return Ok(Grove::unit());
    }
    if b.degree() == Some(0) {
        return Err(Error::ZeroDegree("ltimes right operand"));
    }
    let mut acc = Grove::Empty;
    for u in a.iter() {
        acc = acc.union(&eval_dend(&omega_expr(u)?, b)?)?;
    }
    Ok(acc)
}

/// The multiplication in the over/under arithmetic: `varpi(u)` evaluated at
/// `v`, always a single name of degree `|u| * |v|`.
pub fn l_mult(u: &Name, v: &Name) -> Result<Name> {
    if u.is_leaf() || v.is_leaf() {
        return Err(Error::ZeroDegree("l_mult"));
    }
    let result = eval_l(&varpi_expr(u)?, v);
    debug_assert_eq!(result.degree(), u.degree() * v.degree());
    Ok(result)
}

/// Reinterprets the `prec`/`succ` expression of `u` with `succ -> over` and
/// `prec -> under` and evaluates at `(1)`. Matches the over/under
/// evaluation, i.e. reproduces `u`.
pub fn middle_term(u: &Name) -> Result<Name> {
    fn to_l(e: &DendExpr) -> LExpr {
        match e {
            DendExpr::Gen => LExpr::Gen,
            DendExpr::Succ(l, r) => LExpr::Over(Box::new(to_l(l)), Box::new(to_l(r))),
            DendExpr::Prec(l, r) => LExpr::Under(Box::new(to_l(l)), Box::new(to_l(r))),
        }
    }
    Ok(eval_l(&to_l(&omega_expr(u)?), &Name::y()))
}

/// A grove written as a union of dendriform sums plus a residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroveDecomposition {
    /// Factor lists, each of length >= 2, canonically sorted.
    pub sums: Vec<Vec<Name>>,
    /// Names not covered by any sum, lexicographically sorted.
    pub rest: Vec<Name>,
}

impl GroveDecomposition {
    /// Recomputes the grove the decomposition came from.
    pub fn recombine(&self) -> Grove {
        let mut acc = Grove::Empty;
        for factors in &self.sums {
            acc = acc.union(&star_fold(factors)).expect("uniform degree");
        }
        for name in &self.rest {
            acc = acc
                .union(&Grove::singleton(name.clone()))
                .expect("uniform degree");
        }
        acc
    }
}

/// Folds a factor list with grove addition.
pub fn star_fold(factors: &[Name]) -> Grove {
    let mut iter = factors.iter();
    let first = iter.next().expect("at least one factor");
    let mut acc = Grove::singleton(first.clone());
    for f in iter {
        acc = star(&acc, &Grove::singleton(f.clone()));
    }
    acc
}

/// All ways of reading a name as `v_1 over v_2 over ... over v_m` with
/// `m >= 2`, deepest readings first, prefixes in lexicographic order.
fn over_factorizations(u: &Name) -> Vec<Vec<Name>> {
    let coords = u.coords();
    let mut out = Vec::new();
    for k in 1..coords.len() {
        let Ok(prefix) = Name::new(coords[..k].to_vec()) else {
            continue;
        };
        let Some(tail) = unshift_over(&coords[k..], k as u32) else {
            continue;
        };
        let Ok(tail_name) = Name::new(tail) else {
            continue;
        };
        for mut deeper in over_factorizations(&tail_name) {
            deeper.insert(0, prefix.clone());
            out.push(deeper);
        }
        out.push(vec![prefix, tail_name]);
    }
    out
}

/// Inverts `k . w`: 1 stays 1, anything above `k` drops by `k`, the rest is
/// impossible.
fn unshift_over(tail: &[u32], k: u32) -> Option<Vec<u32>> {
    tail.iter()
        .map(|&c| {
            if c == 1 {
                Some(1)
            } else if c > k {
                Some(c - k)
            } else {
                None
            }
        })
        .collect()
}

/// Decomposes a grove into dendriform sums plus a residual, greedily and
/// deterministically: candidate minima in lexicographic order, deepest
/// factor readings first, every candidate sum verified by recomputation
/// before it is extracted.
pub fn decompose_grove(g: &Grove) -> Result<GroveDecomposition> {
    if g.is_empty_sentinel() {
        return Err(Error::EmptyGrove("decompose"));
    }
    let mut rest: BTreeSet<Name> = g.iter().cloned().collect();
    let mut sums: Vec<Vec<Name>> = Vec::new();
    'outer: loop {
        let minima: Vec<Name> = rest.iter().cloned().collect();
        for min in minima {
            for factors in over_factorizations(&min) {
                let sum = star_fold(&factors);
                if sum.iter().all(|t| rest.contains(t)) {
                    for t in sum.iter() {
                        rest.remove(t);
                    }
                    sums.push(factors);
                    continue 'outer;
                }
            }
        }
        break;
    }
    sums.sort();
    Ok(GroveDecomposition {
        sums,
        rest: rest.into_iter().collect(),
    })
}

/// Solves `v + X = G` for a grove `X`, if possible. The candidate set of
/// all names whose sum with `v` stays inside `G` is the unique solution
/// whenever one exists.
pub fn solve_left(v: &Name, g: &Grove) -> Result<Option<Grove>> {
    let Some(deg_g) = g.degree() else {
        return Err(Error::EmptyGrove("solve"));
    };
    if deg_g <= v.degree() {
        return Err(Error::DegreeMismatch(v.degree(), deg_g));
    }
    let unknown_degree = deg_g - v.degree();
    let candidates: Vec<Name> = enumerate_names(unknown_degree)
        .into_iter()
        .filter(|x| star_names(v, x).iter().all(|t| g.contains(t)))
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let solution = Grove::from_names(candidates)?;
    if star(&Grove::singleton(v.clone()), &solution) == *g {
        Ok(Some(solution))
    } else {
        Ok(None)
    }
}

/// A name is prime when it is not a singleton product `u |x u'` of names of
/// degree >= 2.
pub fn is_prime(v: &Name) -> Result<bool> {
    if v.is_leaf() {
        return Err(Error::ZeroDegree("prime"));
    }
    let n = v.degree();
    let target = Grove::singleton(v.clone());
    for m in 2..n {
        if !n.is_multiple_of(m) || n / m < 2 {
            continue;
        }
        for u in enumerate_names(m) {
            let left = Grove::singleton(u);
            for w in enumerate_names(n / m) {
                if ltimes(&left, &Grove::singleton(w))? == target {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
