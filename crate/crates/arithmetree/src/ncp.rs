//! Noncrossing partitions of `{1..n}`, their refinement order and Möbius
//! function, and the bijection with binary trees.
//!
//! Internal vertices are labelled in preorder (vertex, left subtree, right
//! subtree); blocks are the maximal chains of right children. Geometrically
//! this is the projection of the SW-NE branches onto the right axis.

use crate::error::{Error, Result};
use crate::name::{dagger, name_of, tree_of};
use crate::tree::Tree;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// A noncrossing partition of `{1..n}` in canonical form: blocks sorted by
/// minimum, elements ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NCPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NCPartition {
    /// Validates and canonicalizes. The blocks must partition `{1..n}` and
    /// be noncrossing.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<NCPartition> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        check_partition(&blocks, n)?;
        if !crossing_free(&blocks) {
            return Err(Error::InvalidPartition(format!(
                "crossing blocks in {}",
                format_blocks(&blocks)
            )));
        }
        Ok(NCPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The all-singletons partition, the refinement minimum.
    pub fn singletons(n: usize) -> NCPartition {
        NCPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// The one-block partition, the refinement maximum. For `n = 0` this
    /// is the empty partition.
    pub fn one_block(n: usize) -> NCPartition {
        if n == 0 {
            return NCPartition::singletons(0);
        }
        NCPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// JSON form: array of block arrays.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.blocks
                .iter()
                .map(|b| {
                    serde_json::Value::Array(
                        b.iter().map(|&x| serde_json::Value::from(x)).collect(),
                    )
                })
                .collect(),
        )
    }
}

fn check_partition(blocks: &[Vec<usize>], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    let mut count = 0usize;
    for block in blocks {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        for &x in block {
            if x < 1 || x > n || seen[x] {
                return Err(Error::InvalidPartition(format!(
                    "element {x} repeated or out of range 1..{n}"
                )));
            }
            seen[x] = true;
            count += 1;
        }
    }
    if count != n {
        return Err(Error::InvalidPartition(format!(
            "covers {count} of {n} elements"
        )));
    }
    Ok(())
}

/// Quadruple test: no `p1 < q1 < p2 < q2` with `p1 ~ p2` in one block and
/// `q1 ~ q2` in a different one.
fn crossing_free(blocks: &[Vec<usize>]) -> bool {
    let mut block_of = std::collections::HashMap::new();
    for (i, block) in blocks.iter().enumerate() {
        for &x in block {
            block_of.insert(x, i);
        }
    }
    let elems: Vec<usize> = {
        let mut v: Vec<usize> = block_of.keys().copied().collect();
        v.sort_unstable();
        v
    };
    for &p1 in &elems {
        for &q1 in elems.iter().filter(|&&x| x > p1) {
            if block_of[&q1] == block_of[&p1] {
                continue;
            }
            for &p2 in elems.iter().filter(|&&x| x > q1) {
                if block_of[&p2] != block_of[&p1] {
                    continue;
                }
                for &q2 in elems.iter().filter(|&&x| x > p2) {
                    if block_of[&q2] == block_of[&q1] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether raw blocks form a noncrossing partition of `{1..n}`. Errors when
/// they are not a partition at all.
pub fn is_noncrossing(blocks: &[Vec<usize>], n: usize) -> Result<bool> {
    let mut sorted: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    sorted.sort();
    check_partition(&sorted, n)?;
    Ok(crossing_free(&sorted))
}

/// Labels internal vertices in preorder and links every vertex to its right
/// child; the chains are the blocks.
pub fn to_partition(t: &Tree) -> Result<NCPartition> {
    let n = t.degree();
    if n == 0 {
        return Err(Error::ZeroDegree("to_partition"));
    }
    let mut right_child = vec![None; n + 1];
    let mut next = 1usize;
    preorder_links(t, &mut next, &mut right_child);
    let mut is_right_child = vec![false; n + 1];
    for target in right_child.iter().flatten() {
        is_right_child[*target] = true;
    }
    let mut blocks = Vec::new();
    let chain_starts = (1..=n).filter(|&v| !is_right_child[v]);
    for start in chain_starts {
        let mut block = vec![start];
        let mut cur = start;
        while let Some(next_v) = right_child[cur] {
            block.push(next_v);
            cur = next_v;
        }
        blocks.push(block);
    }
    NCPartition::new(n, blocks)
}

fn preorder_links(t: &Tree, next: &mut usize, right_child: &mut [Option<usize>]) -> Option<usize> {
    match t {
        Tree::Leaf => None,
        Tree::Node(l, r) => {
            let me = *next;
            *next += 1;
            preorder_links(l, next, right_child);
            right_child[me] = preorder_links(r, next, right_child);
            Some(me)
        }
    }
}

/// Rebuilds the tree: the right child of `k` is its successor inside its
/// block, and preorder makes every subtree a contiguous label range.
pub fn from_partition(p: &NCPartition) -> Tree {
    let mut succ = vec![None; p.n + 1];
    for block in &p.blocks {
        for pair in block.windows(2) {
            succ[pair[0]] = Some(pair[1]);
        }
    }
    build(1, p.n, &succ)
}

fn build(lo: usize, hi: usize, succ: &[Option<usize>]) -> Tree {
    if lo > hi {
        return Tree::Leaf;
    }
    match succ[lo] {
        Some(s) => {
            debug_assert!(s <= hi, "noncrossing successor stays in the subtree");
            Tree::Node(
                Box::new(build(lo + 1, s - 1, succ)),
                Box::new(build(s, hi, succ)),
            )
        }
        None => Tree::Node(Box::new(build(lo + 1, hi, succ)), Box::new(Tree::Leaf)),
    }
}

/// Refinement order: every block of `p` is contained in a block of `q`.
pub fn refine_leq(p: &NCPartition, q: &NCPartition) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::DegreeMismatch(p.n, q.n));
    }
    Ok(p.blocks.iter().all(|b| {
        q.blocks
            .iter()
            .any(|c| b.iter().all(|x| c.binary_search(x).is_ok()))
    }))
}

/// Generic Möbius function of the refinement interval `[p, q]`.
pub fn nc_mobius(p: &NCPartition, q: &NCPartition) -> Result<BigInt> {
    if !refine_leq(p, q)? {
        return Err(Error::NotComparable);
    }
    let mut elems: Vec<NCPartition> = enumerate_nc(p.n)?
        .into_iter()
        .filter(|s| refine_leq(p, s).unwrap_or(false) && refine_leq(s, q).unwrap_or(false))
        .collect();
    // Finer partitions have strictly more blocks, so sorting by descending
    // block count is a linear extension of refinement.
    elems.sort_by(|a, b| b.blocks.len().cmp(&a.blocks.len()).then_with(|| a.cmp(b)));
    let mut mu: Vec<BigInt> = Vec::with_capacity(elems.len());
    for (i, t) in elems.iter().enumerate() {
        if i == 0 {
            mu.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for (j, s) in elems[..i].iter().enumerate() {
            if refine_leq(s, t)? {
                acc += &mu[j];
            }
        }
        mu.push(-acc);
    }
    Ok(mu.pop().unwrap_or_else(BigInt::one))
}

/// The involution induced on partitions by the mirror image of trees.
pub fn partition_dagger(p: &NCPartition) -> NCPartition {
    let name = name_of(&from_partition(p));
    let mirrored = tree_of(&dagger(&name).as_candidate());
    to_partition(&mirrored).expect("degree preserved")
}

/// Each block written as a cycle, blocks by increasing minimum.
pub fn to_cycles(p: &NCPartition) -> String {
    p.blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(","))
        })
        .collect()
}

/// All noncrossing partitions of `{1..n}` in canonical order; Catalan-many.
pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>> {
    if n == 0 {
        return Err(Error::ZeroDegree("enumerate_nc"));
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    gather(1, n, &mut blocks, &mut out);
    out.sort();
    Ok(out)
}

fn gather(next: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<NCPartition>) {
    if next > n {
        if crossing_free(blocks) {
            let mut sorted = blocks.clone();
            sorted.sort();
            out.push(NCPartition { n, blocks: sorted });
        }
        return;
    }
    for i in 0..blocks.len() {
        blocks[i].push(next);
        gather(next + 1, n, blocks, out);
        blocks[i].pop();
    }
    blocks.push(vec![next]);
    gather(next + 1, n, blocks, out);
    blocks.pop();
}

impl fmt::Display for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_blocks(&self.blocks))
    }
}

fn format_blocks(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect()
}

impl FromStr for NCPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<NCPartition> {
        let s = s.trim();
        if !s.starts_with('{') || !s.ends_with('}') {
            return Err(Error::Parse(format!(
                "partition must be braced blocks: {s:?}"
            )));
        }
        let mut blocks = Vec::new();
        let mut max = 0usize;
        for part in s[1..s.len() - 1].split("}{") {
            let block: Result<Vec<usize>> = part
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element {x:?} in {s:?}")))
                })
                .collect();
            let block = block?;
            max = max.max(block.iter().copied().max().unwrap_or(0));
            blocks.push(block);
        }
        NCPartition::new(max, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::name::{enumerate_names, Name};
    use crate::tree::graft_trees;

    fn name(s: &str) -> Name {
        s.parse().unwrap()
    }

    fn partition(s: &str) -> NCPartition {
        s.parse().unwrap()
    }

    fn tree(s: &str) -> Tree {
        tree_of(&name(s).as_candidate())
    }

    #[test]
    fn to_partition_examples() {
        assert_eq!(to_partition(&tree("(1,1)")).unwrap(), partition("{1}{2}"));
        assert_eq!(to_partition(&tree("(1,2)")).unwrap(), partition("{1,2}"));
        assert_eq!(
            to_partition(&tree("(1,2,3)")).unwrap(),
            partition("{1,2,3}")
        );
        assert_eq!(
            to_partition(&tree("(1,1,3)")).unwrap(),
            partition("{1,3}{2}")
        );
        assert_eq!(
            to_partition(&tree("(1,2,2)")).unwrap(),
            partition("{1,2}{3}")
        );
        assert!(to_partition(&Tree::Leaf).is_err());
    }

    #[test]
    fn from_partition_examples() {
        assert_eq!(from_partition(&partition("{1,2}")), tree("(1,2)"));
        assert_eq!(
            from_partition(&NCPartition::singletons(4)),
            tree("(1,1,1,1)")
        );
    }

    #[test]
    fn worked_ten_vertex_inverse() {
        let p = partition("{1,9}{2,6,7}{3,4}{5}{8}{10}");
        let t = from_partition(&p);
        // The root's right subtree starts at preorder label 9, so the left
        // subtree holds labels 2..=8.
        let Tree::Node(left, right) = &t else {
            panic!("degree 10 tree");
        };
        assert_eq!(left.degree(), 7);
        assert_eq!(right.degree(), 2);
        // Vertex 5 sits at a leaf position: both children are leaves.
        let mut next = 1usize;
        let mut at_five = None;
        fn find(t: &Tree, next: &mut usize, target: usize, out: &mut Option<Tree>) {
            if let Tree::Node(l, r) = t {
                let me = *next;
                *next += 1;
                if me == target {
                    *out = Some(t.clone());
                }
                find(l, next, target, out);
                find(r, next, target, out);
            }
        }
        find(&t, &mut next, 5, &mut at_five);
        assert_eq!(at_five.unwrap(), Tree::y());
        assert_eq!(to_partition(&t).unwrap(), p);
        assert_eq!(to_cycles(&p), "(1,9)(2,6,7)(3,4)(5)(8)(10)");
    }

    #[test]
    fn noncrossing_checks() {
        assert!(!is_noncrossing(&[vec![1, 3], vec![2, 4]], 4).unwrap());
        assert!(is_noncrossing(
            &[
                vec![1, 9],
                vec![2, 6, 7],
                vec![3, 4],
                vec![5],
                vec![8],
                vec![10]
            ],
            10
        )
        .unwrap());
        assert!(is_noncrossing(&[vec![1], vec![2], vec![3]], 3).unwrap());
        assert!(is_noncrossing(&[vec![1], vec![1, 2]], 2).is_err());
        assert!(is_noncrossing(&[vec![1]], 2).is_err());
        assert!("{1,3}{2,4}".parse::<NCPartition>().is_err());
    }

    #[test]
    fn refinement_examples() {
        let bottom = NCPartition::singletons(3);
        let top = NCPartition::one_block(3);
        assert!(refine_leq(&bottom, &top).unwrap());
        assert!(refine_leq(&partition("{1,2}{3}"), &top).unwrap());
        let a = partition("{1,2}{3}");
        let b = partition("{1}{2,3}");
        assert!(!refine_leq(&a, &b).unwrap());
        assert!(!refine_leq(&b, &a).unwrap());
        assert!(refine_leq(&bottom, &NCPartition::one_block(4)).is_err());
    }

    #[test]
    fn mobius_examples() {
        let p = partition("{1,2}{3}");
        assert_eq!(nc_mobius(&p, &p).unwrap(), BigInt::from(1));
        assert_eq!(
            nc_mobius(&NCPartition::singletons(2), &NCPartition::one_block(2)).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            nc_mobius(&NCPartition::singletons(3), &NCPartition::one_block(3)).unwrap(),
            BigInt::from(2)
        );
        assert!(nc_mobius(&partition("{1,2}{3}"), &partition("{1}{2,3}")).is_err());
    }

    #[test]
    fn zeta_mobius_inverse() {
        for n in 1..=5 {
            let all = enumerate_nc(n).unwrap();
            for p in &all {
                for q in &all {
                    if !refine_leq(p, q).unwrap() {
                        continue;
                    }
                    let mut acc = BigInt::from(0);
                    for s in &all {
                        if refine_leq(p, s).unwrap() && refine_leq(s, q).unwrap() {
                            acc += nc_mobius(s, q).unwrap();
                        }
                    }
                    let expected = if p == q { 1 } else { 0 };
                    assert_eq!(acc, BigInt::from(expected), "zeta inverse at {p}, {q}");
                }
            }
        }
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(partition_dagger(&partition("{1,2}")), partition("{1}{2}"));
        assert_eq!(
            partition_dagger(&partition("{1,2,3}")),
            NCPartition::singletons(3)
        );
        for n in 1..=6 {
            for p in enumerate_nc(n).unwrap() {
                assert_eq!(partition_dagger(&partition_dagger(&p)), p);
            }
        }
    }

    #[test]
    fn cycles_text() {
        assert_eq!(to_cycles(&NCPartition::singletons(3)), "(1)(2)(3)");
        assert_eq!(to_cycles(&partition("{1,2}")), "(1,2)");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_nc(1).unwrap(), vec![NCPartition::one_block(1)]);
        assert_eq!(enumerate_nc(3).unwrap().len(), 5);
        assert_eq!(enumerate_nc(8).unwrap().len(), 1430);
        assert!(enumerate_nc(0).is_err());
    }

    #[test]
    fn bijection_both_ways() {
        for n in 1..=8 {
            let names = enumerate_names(n);
            let mut images = std::collections::BTreeSet::new();
            for v in &names {
                let t = tree_of(&v.as_candidate());
                let p = to_partition(&t).unwrap();
                assert_eq!(from_partition(&p), t, "round trip through {p}");
                images.insert(p);
            }
            let all = enumerate_nc(n).unwrap();
            assert_eq!(images.len(), all.len());
            assert!(images.iter().eq(all.iter()));
            for p in &all {
                assert_eq!(&to_partition(&from_partition(p)).unwrap(), p);
            }
        }
    }

    #[test]
    fn blocks_are_maximal_right_child_chains() {
        for n in 1..=6 {
            for v in enumerate_names(n) {
                let t = tree_of(&v.as_candidate());
                let mut right_child = vec![None; n + 1];
                let mut next = 1usize;
                preorder_links(&t, &mut next, &mut right_child);
                let p = to_partition(&t).unwrap();
                for block in p.blocks() {
                    for pair in block.windows(2) {
                        assert_eq!(right_child[pair[0]], Some(pair[1]));
                    }
                    let first = block[0];
                    assert!(
                        !right_child.contains(&Some(first)),
                        "block must start a chain"
                    );
                    let last = *block.last().unwrap();
                    assert_eq!(right_child[last], None, "block must end a chain");
                }
            }
        }
    }

    #[test]
    fn text_and_json_forms() {
        let p = partition("{2,6,7}{1,9}{3,4}{8}{5}{10}");
        assert_eq!(p.to_string(), "{1,9}{2,6,7}{3,4}{5}{8}{10}");
        assert_eq!(partition("{1,2}{3}").to_json().to_string(), "[[1,2],[3]]");
        assert!("1,2".parse::<NCPartition>().is_err());
    }

    #[test]
    fn degree_two_partitions_from_combs() {
        let left_comb = graft_trees(Tree::y(), Tree::Leaf);
        let right_comb = graft_trees(Tree::Leaf, Tree::y());
        assert_eq!(to_partition(&left_comb).unwrap(), partition("{1}{2}"));
        assert_eq!(to_partition(&right_comb).unwrap(), partition("{1,2}"));
    }
}
