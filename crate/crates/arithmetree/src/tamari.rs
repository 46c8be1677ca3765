//! The Tamari order on names and its Möbius functions.
//!
//! On vectors the order is simply coordinatewise comparison, which matches
//! the rotation order on the underlying trees. The unique minimum of degree
//! `n` is the all-ones name (the left comb) and the maximum is the staircase
//! `(1,2,...,n)` (the right comb).

use crate::error::{Error, Result};
use crate::name::Name;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coordinatewise comparison. Errors on a degree mismatch.
pub fn leq(v: &Name, w: &Name) -> Result<bool> {
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch(v.degree(), w.degree()));
    }
    Ok(v.coords().iter().zip(w.coords()).all(|(a, b)| a <= b))
}

/// All names `t` with `v <= t <= w`, lexicographically sorted. Empty when
/// the coordinatewise box is empty.
///
/// Every prefix of a name is a name, so the box is walked as a prefix tree
/// and dead branches are cut early.
pub fn interval(v: &Name, w: &Name) -> Result<Vec<Name>> {
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch(v.degree(), w.degree()));
    }
    let lo = v.coords();
    let hi = w.coords();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Ok(Vec::new());
    }
    if v.degree() == 0 {
        return Ok(vec![Name::leaf()]);
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(lo.len());
    extend_prefix(&mut prefix, lo, hi, &mut out);
    Ok(out)
}

fn extend_prefix(prefix: &mut Vec<u32>, lo: &[u32], hi: &[u32], out: &mut Vec<Name>) {
    let k = prefix.len();
    if k == lo.len() {
        out.push(Name::from_valid(prefix.clone()));
        return;
    }
    for c in lo[k]..=hi[k] {
        prefix.push(c);
        if crate::name::coords_are_name(prefix) {
            extend_prefix(prefix, lo, hi, out);
        }
        prefix.pop();
    }
}

/// Closed-form Möbius value of a name relative to the lattice minimum:
/// `(-1)^t` when every coordinate is 1 or its own index, `t` counting the
/// coordinates with `v_i = i != 1`; zero otherwise.
pub fn mobius_closed(v: &Name) -> BigInt {
    let mut t = 0u32;
    for (idx, &c) in v.coords().iter().enumerate() {
        let i = idx as u32 + 1;
        if c == 1 {
            continue;
        }
        if c == i {
            t += 1;
        } else {
            return BigInt::zero();
        }
    }
    if t.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Generic poset Möbius function over the interval `[v, w]`:
/// `mu(v,v) = 1` and `mu(v,w) = -sum of mu(v,t) over v <= t < w`.
pub fn mobius_poset(v: &Name, w: &Name) -> Result<BigInt> {
    if !leq(v, w)? {
        return Err(Error::NotComparable);
    }
    let elems = interval(v, w)?;
    // Lexicographic order extends the coordinatewise order, so accumulating
    // in the sorted interval visits every t before anything above it.
    let mut mu: Vec<BigInt> = Vec::with_capacity(elems.len());
    for (i, t) in elems.iter().enumerate() {
        if i == 0 {
            mu.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for (j, s) in elems[..i].iter().enumerate() {
            if leq(s, t)? {
                acc += &mu[j];
            }
        }
        mu.push(-acc);
    }
    Ok(mu.pop().unwrap_or_else(BigInt::one))
}

/// Product `prod_i (|w_i - v_i| + 1)`, an upper bound on the number of
/// monotone paths from `v` to `w` in the associahedron skeleton.
pub fn path_bound(v: &Name, w: &Name) -> Result<BigInt> {
    if !leq(v, w)? {
        return Err(Error::NotComparable);
    }
    let mut acc = BigInt::one();
    for (a, b) in v.coords().iter().zip(w.coords()) {
        acc *= BigInt::from(b.abs_diff(*a) + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::name::{dagger, enumerate_names, name_of, tree_of};
    use crate::tree::Tree;

    fn name(s: &str) -> Name {
        s.parse().unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&name("(1,1)"), &name("(1,2)")).unwrap());
        assert!(leq(&name("(1,1,3)"), &name("(1,2,3)")).unwrap());
        assert!(!leq(&name("(1,2,1)"), &name("(1,1,3)")).unwrap());
        assert!(!leq(&name("(1,1,3)"), &name("(1,2,1)")).unwrap());
        assert!(leq(&name("(1)"), &name("(1,1)")).is_err());
    }

    #[test]
    fn interval_examples() {
        let full = interval(&name("(1,1)"), &name("(1,2)")).unwrap();
        assert_eq!(full, vec![name("(1,1)"), name("(1,2)")]);
        // (1,1,2) is not a name, so the box collapses to the endpoints.
        let gap = interval(&name("(1,1,1)"), &name("(1,1,3)")).unwrap();
        assert_eq!(gap, vec![name("(1,1,1)"), name("(1,1,3)")]);
        let point = interval(&name("(1,2,2)"), &name("(1,2,2)")).unwrap();
        assert_eq!(point, vec![name("(1,2,2)")]);
        assert!(interval(&name("(1,2)"), &name("(1,1)")).unwrap().is_empty());
    }

    /// Plain odometer scan of the box, as an oracle for the pruned walk.
    fn interval_brute(v: &Name, w: &Name) -> Vec<Name> {
        use crate::name::{is_name, CandidateVec};
        let lo = v.coords();
        let hi = w.coords();
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return Vec::new();
        }
        let n = lo.len();
        if n == 0 {
            return vec![Name::leaf()];
        }
        let mut out = Vec::new();
        let mut current = lo.to_vec();
        loop {
            let cand = CandidateVec::new(current.clone()).unwrap();
            if is_name(&cand) {
                out.push(Name::new(current.clone()).unwrap());
            }
            let mut idx = n;
            loop {
                if idx == 0 {
                    return out;
                }
                idx -= 1;
                if current[idx] < hi[idx] {
                    current[idx] += 1;
                    current[(idx + 1)..n].copy_from_slice(&lo[(idx + 1)..n]);
                    break;
                }
            }
        }
    }

    #[test]
    fn pruned_interval_matches_box_scan() {
        for n in 1..=5 {
            let names = enumerate_names(n);
            for v in &names {
                for w in &names {
                    assert_eq!(
                        interval(v, w).unwrap(),
                        interval_brute(v, w),
                        "interval [{v}, {w}]"
                    );
                }
            }
        }
    }

    #[test]
    fn order_axioms() {
        for n in 0..=6 {
            let names = enumerate_names(n);
            for a in &names {
                assert!(leq(a, a).unwrap());
                for b in &names {
                    if leq(a, b).unwrap() && leq(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if !leq(a, b).unwrap() {
                        continue;
                    }
                    for c in &names {
                        if leq(b, c).unwrap() {
                            assert!(leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minimum_is_left_comb_and_maximum_is_right_comb() {
        for n in 0..=6 {
            let min = Name::left_comb(n);
            let max = Name::right_comb(n);
            for v in enumerate_names(n) {
                assert!(leq(&min, &v).unwrap());
                assert!(leq(&v, &max).unwrap());
            }
        }
    }

    /// All trees reachable by one left-to-right rotation.
    fn rotations(t: &Tree) -> Vec<Tree> {
        let mut out = Vec::new();
        if let Tree::Node(l, r) = t {
            if let Tree::Node(a, b) = &**l {
                // (a \/ b) \/ r -> a \/ (b \/ r)
                out.push(Tree::Node(
                    a.clone(),
                    Box::new(Tree::Node(b.clone(), r.clone())),
                ));
            }
            for l2 in rotations(l) {
                out.push(Tree::Node(Box::new(l2), r.clone()));
            }
            for r2 in rotations(r) {
                out.push(Tree::Node(l.clone(), Box::new(r2)));
            }
        }
        out
    }

    #[test]
    fn coordinatewise_order_is_rotation_closure() {
        for n in 1..=5 {
            let names = enumerate_names(n);
            for v in &names {
                // Breadth-first closure of rotations starting from v's tree.
                let mut reachable = std::collections::BTreeSet::new();
                let mut frontier = vec![tree_of(&v.as_candidate())];
                reachable.insert(v.clone());
                while let Some(t) = frontier.pop() {
                    for next in rotations(&t) {
                        let w = name_of(&next);
                        if reachable.insert(w) {
                            frontier.push(next);
                        }
                    }
                }
                for w in &names {
                    assert_eq!(
                        leq(v, w).unwrap(),
                        reachable.contains(w),
                        "rotation order vs coordinates at {v}, {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn mobius_closed_examples() {
        assert_eq!(mobius_closed(&name("(1)")), BigInt::from(1));
        assert_eq!(mobius_closed(&name("(1,1,3)")), BigInt::from(-1));
        assert_eq!(mobius_closed(&name("(1,2,1)")), BigInt::from(-1));
        assert_eq!(mobius_closed(&name("(1,2,3)")), BigInt::from(1));
        assert_eq!(mobius_closed(&name("(1,1,1)")), BigInt::from(1));
        assert_eq!(mobius_closed(&name("(1,2,2)")), BigInt::from(0));
        assert_eq!(mobius_closed(&Name::leaf()), BigInt::from(1));
    }

    #[test]
    fn mobius_poset_examples() {
        let v = name("(1,2,2)");
        assert_eq!(mobius_poset(&v, &v).unwrap(), BigInt::from(1));
        assert_eq!(
            mobius_poset(&name("(1,1,1)"), &name("(1,1,3)")).unwrap(),
            BigInt::from(-1)
        );
        assert!(mobius_poset(&name("(1,2,1)"), &name("(1,1,3)")).is_err());
    }

    #[test]
    fn closed_form_matches_poset_recursion() {
        for n in 0..=5 {
            let min = Name::left_comb(n);
            for v in enumerate_names(n) {
                assert_eq!(
                    mobius_poset(&min, &v).unwrap(),
                    mobius_closed(&v),
                    "Möbius at {v}"
                );
            }
        }
    }

    #[test]
    fn involution_is_lattice_antiautomorphism() {
        for n in 0..=5 {
            let names = enumerate_names(n);
            for v in &names {
                for w in &names {
                    assert_eq!(
                        leq(v, w).unwrap(),
                        leq(&dagger(w), &dagger(v)).unwrap(),
                        "{v} vs {w}"
                    );
                    if leq(v, w).unwrap() {
                        assert_eq!(
                            mobius_poset(v, w).unwrap(),
                            mobius_poset(&dagger(w), &dagger(v)).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn grafting_respects_order() {
        use crate::name::vee;
        for a in 0..=3usize {
            for b in 0..=(3 - a) {
                let left = enumerate_names(a);
                let right = enumerate_names(b);
                for v in &left {
                    for w in &left {
                        if !leq(v, w).unwrap() {
                            continue;
                        }
                        for u in &right {
                            for z in &right {
                                if leq(u, z).unwrap() && u != z {
                                    let lhs = vee(v, u);
                                    let rhs = vee(w, z);
                                    assert!(leq(&lhs, &rhs).unwrap() && lhs != rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn path_bound_examples() {
        let v = name("(1,2,2)");
        assert_eq!(path_bound(&v, &v).unwrap(), BigInt::from(1));
        assert_eq!(
            path_bound(&name("(1,1)"), &name("(1,2)")).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            path_bound(&name("(1,1,1)"), &name("(1,2,3)")).unwrap(),
            BigInt::from(6)
        );
        assert!(path_bound(&name("(1,2,1)"), &name("(1,1,3)")).is_err());
    }

    /// Exhaustive monotone path count through cover relations.
    fn cover_targets(v: &Name, all: &[Name]) -> Vec<Name> {
        let ups: Vec<&Name> = all
            .iter()
            .filter(|t| *t != v && leq(v, t).unwrap())
            .collect();
        ups.iter()
            .filter(|t| !ups.iter().any(|s| *s != **t && leq(s, t).unwrap()))
            .map(|t| (*t).clone())
            .collect()
    }

    fn path_count(v: &Name, w: &Name, all: &[Name]) -> u64 {
        if v == w {
            return 1;
        }
        cover_targets(v, all)
            .iter()
            .filter(|t| leq(t, w).unwrap())
            .map(|t| path_count(t, w, all))
            .sum()
    }

    #[test]
    fn path_bound_dominates_monotone_path_count() {
        for n in 1..=4 {
            let names = enumerate_names(n);
            for v in &names {
                for w in &names {
                    if leq(v, w).unwrap() {
                        let bound = path_bound(v, w).unwrap();
                        let exact = BigInt::from(path_count(v, w, &names));
                        assert!(exact <= bound, "paths {v} -> {w}: {exact} > {bound}");
                    }
                }
            }
        }
    }
}
