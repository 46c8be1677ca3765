//! Moment tables over formal generator words, free cumulants by Möbius
//! convolution over the refinement lattice, moment reconstruction, and
//! desk-scale freeness verification.

use super::operad::{evaluate_partition, Family, LinearSystem, OperadSystem, SampleWords};
use crate::error::{Error, Result};
use crate::ncp::{enumerate_nc, refine_leq, NCPartition};
use crate::sampling::SplitMix64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Default truncation bound for the lattice sums.
pub const DEFAULT_BOUND: usize = 6;

/// A rational multiple of a word in named generators: the module elements
/// of the scalar system.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledWord {
    pub coeff: BigRational,
    pub word: String,
}

impl ScaledWord {
    pub fn gen(c: char) -> ScaledWord {
        ScaledWord {
            coeff: BigRational::one(),
            word: c.to_string(),
        }
    }

    pub fn word(w: &str) -> ScaledWord {
        ScaledWord {
            coeff: BigRational::one(),
            word: w.to_string(),
        }
    }
}

/// Converts a plain generator word into module slots, one letter each.
pub fn word_slots(word: &str) -> Vec<ScaledWord> {
    word.chars().map(ScaledWord::gen).collect()
}

/// Rational scalars acting on scaled words; both actions multiply the
/// coefficient.
#[derive(Debug, Clone)]
pub struct WordSystem {
    pub gens: Vec<char>,
}

impl OperadSystem for WordSystem {
    type B = BigRational;
    type M = ScaledWord;

    fn mul_b(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }

    fn absorb_right(&self, m: &ScaledWord, b: &BigRational) -> ScaledWord {
        ScaledWord {
            coeff: &m.coeff * b,
            word: m.word.clone(),
        }
    }

    fn absorb_left(&self, b: &BigRational, m: &ScaledWord) -> ScaledWord {
        self.absorb_right(m, b)
    }
}

impl LinearSystem for WordSystem {
    fn zero_b(&self) -> BigRational {
        BigRational::zero()
    }

    fn add_b(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }

    fn scale_b(&self, c: &BigRational, x: &BigRational) -> BigRational {
        c * x
    }
}

impl SampleWords for WordSystem {
    fn sample_word(&self, len: usize, rng: &mut SplitMix64) -> Vec<ScaledWord> {
        (0..len)
            .map(|_| ScaledWord::gen(self.gens[rng.below(self.gens.len())]))
            .collect()
    }
}

/// Word-indexed rational values over a declared generator set, total on all
/// words up to a length bound (unlisted words are zero). Also used to store
/// cumulant tables; the moment-specific rule `phi(empty) = 1` lives in
/// [`MomentTable::phi`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    gens: Vec<char>,
    bound: usize,
    values: BTreeMap<String, BigRational>,
}

impl MomentTable {
    pub fn new(mut gens: Vec<char>, bound: usize) -> MomentTable {
        gens.sort_unstable();
        gens.dedup();
        MomentTable {
            gens,
            bound,
            values: BTreeMap::new(),
        }
    }

    pub fn gens(&self) -> &[char] {
        &self.gens
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check_word(&self, word: &str) -> Result<()> {
        if word.len() > self.bound {
            return Err(Error::BeyondBound {
                len: word.len(),
                bound: self.bound,
            });
        }
        if let Some(bad) = word.chars().find(|c| !self.gens.contains(c)) {
            return Err(Error::Parse(format!(
                "undeclared generator {bad:?} in {word:?}"
            )));
        }
        Ok(())
    }

    pub fn set(&mut self, word: &str, value: BigRational) -> Result<()> {
        self.check_word(word)?;
        if word.is_empty() {
            return Err(Error::Parse("the empty word is fixed".into()));
        }
        if value.is_zero() {
            self.values.remove(word);
        } else {
            self.values.insert(word.to_string(), value);
        }
        Ok(())
    }

    /// Raw table lookup, defaulting to zero. Cumulant tables are read this
    /// way.
    pub fn get(&self, word: &str) -> Result<BigRational> {
        self.check_word(word)?;
        Ok(self
            .values
            .get(word)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    /// Moment lookup: the empty word is 1.
    pub fn phi(&self, word: &str) -> Result<BigRational> {
        if word.is_empty() {
            return Ok(BigRational::one());
        }
        self.get(word)
    }

    /// All words of length `1..=len` over the generators, by length then
    /// lexicographically.
    pub fn words_up_to(&self, len: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut layer = vec![String::new()];
        for _ in 1..=len {
            let mut next = Vec::new();
            for w in &layer {
                for &g in &self.gens {
                    let mut s = w.clone();
                    s.push(g);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Parses line-oriented `word value` pairs; `#` starts a comment. The
    /// generator set is inferred and the bound is the longer of
    /// `min_bound` and the longest word.
    pub fn parse(text: &str, min_bound: usize) -> Result<MomentTable> {
        let mut entries = Vec::new();
        let mut gens = Vec::new();
        let mut bound = min_bound;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(word), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!(
                    "line {}: expected `word value`, got {raw:?}",
                    lineno + 1
                )));
            };
            if !word.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(Error::Parse(format!(
                    "line {}: word must be letters, got {word:?}",
                    lineno + 1
                )));
            }
            let value = BigRational::from_str(value).map_err(|_| {
                Error::Parse(format!("line {}: bad rational {value:?}", lineno + 1))
            })?;
            gens.extend(word.chars());
            bound = bound.max(word.len());
            entries.push((word.to_string(), value));
        }
        let mut table = MomentTable::new(gens, bound);
        for (word, value) in entries {
            table.set(&word, value)?;
        }
        Ok(table)
    }

    /// The stored (nonzero) entries as `word value` lines, by length then
    /// word.
    pub fn to_text(&self) -> String {
        let mut entries: Vec<(&String, &BigRational)> = self.values.iter().collect();
        entries.sort_by_key(|(w, _)| (w.len(), (*w).clone()));
        entries.iter().map(|(w, v)| format!("{w} {v}\n")).collect()
    }
}

/// The family a moment table induces: multiply the slot coefficients and
/// look up the concatenated word.
#[derive(Debug, Clone)]
pub struct MomentFamily<'a> {
    pub table: &'a MomentTable,
}

impl Family<WordSystem> for MomentFamily<'_> {
    fn apply(&self, _sys: &WordSystem, word: &[ScaledWord]) -> Result<BigRational> {
        let mut coeff = BigRational::one();
        let mut concat = String::new();
        for slot in word {
            coeff *= &slot.coeff;
            concat.push_str(&slot.word);
        }
        Ok(coeff * self.table.phi(&concat)?)
    }
}

/// Möbius row of the refinement lattice at `p`: every `sigma <= p` with
/// `mu(sigma, p)`, computed by one triangular recursion.
pub(crate) fn mobius_row(p: &NCPartition) -> Result<Vec<(NCPartition, BigInt)>> {
    let mut down: Vec<NCPartition> = enumerate_nc(p.n())?
        .into_iter()
        .filter(|s| refine_leq(s, p).unwrap_or(false))
        .collect();
    // Coarser partitions have fewer blocks; p itself comes first.
    down.sort_by_key(|s| (s.blocks().len(), s.clone()));
    let mut mu: Vec<BigInt> = Vec::with_capacity(down.len());
    for (i, sigma) in down.iter().enumerate() {
        if i == 0 {
            mu.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for (j, tau) in down[..i].iter().enumerate() {
            if refine_leq(sigma, tau)? {
                acc += &mu[j];
            }
        }
        mu.push(-acc);
    }
    Ok(down.into_iter().zip(mu).collect())
}

/// The cumulant at a partition: the Möbius convolution
/// `sum over sigma <= p of mu(sigma, p) * evaluation at sigma`.
pub fn cumulant_at<S: LinearSystem, F: Family<S> + ?Sized>(
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
    let mut acc = sys.zero_b();
    for (sigma, mu) in mobius_row(p)? {
        let val = evaluate_partition(sys, fam, &sigma, word)?;
        acc = sys.add_b(&acc, &sys.scale_b(&BigRational::from(mu), &val));
    }
    Ok(acc)
}

/// The free cumulant: the convolution at the one-block partition.
pub fn cumulant<S: LinearSystem, F: Family<S> + ?Sized>(
    sys: &S,
    fam: &F,
    word: &[S::M],
) -> Result<S::B> {
    if word.is_empty() {
        return Err(Error::ZeroDegree("cumulant"));
    }
    cumulant_at(sys, fam, &NCPartition::one_block(word.len()), word)
}

/// All cumulants of words up to length `n` from a moment table. The Möbius
/// row of each length is computed once and shared across the words.
pub fn cumulants_from_moments(phi: &MomentTable, n: usize) -> Result<MomentTable> {
    if n > phi.bound() {
        return Err(Error::BeyondBound {
            len: n,
            bound: phi.bound(),
        });
    }
    let sys = WordSystem {
        gens: phi.gens().to_vec(),
    };
    let fam = MomentFamily { table: phi };
    let mut out = MomentTable::new(phi.gens().to_vec(), n);
    for len in 1..=n {
        let row = mobius_row(&NCPartition::one_block(len))?;
        for word in out.words_up_to(len) {
            if word.len() != len {
                continue;
            }
            let slots = word_slots(&word);
            let mut acc = BigRational::zero();
            for (sigma, mu) in &row {
                let val = evaluate_partition(&sys, &fam, sigma, &slots)?;
                acc += BigRational::from(mu.clone()) * val;
            }
            out.set(&word, acc)?;
        }
    }
    Ok(out)
}

/// Moments from a cumulant table: for each word, the sum over noncrossing
/// partitions of the blockwise cumulant products.
pub fn moments_from_cumulants(kappa: &MomentTable, n: usize) -> Result<MomentTable> {
    if n > kappa.bound() {
        return Err(Error::BeyondBound {
            len: n,
            bound: kappa.bound(),
        });
    }
    let mut out = MomentTable::new(kappa.gens().to_vec(), n);
    for word in out.words_up_to(n) {
        let chars: Vec<char> = word.chars().collect();
        let mut acc = BigRational::zero();
        for p in enumerate_nc(chars.len())? {
            let mut product = BigRational::one();
            for block in p.blocks() {
                let sub: String = block.iter().map(|&i| chars[i - 1]).collect();
                product *= kappa.get(&sub)?;
                if product.is_zero() {
                    break;
                }
            }
            acc += product;
        }
        out.set(&word, acc)?;
    }
    Ok(out)
}

/// One generator of a would-be free family: a symbol, the subalgebra it
/// spans, and its moment sequence `phi(g^k)` for `k = 1..`.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub symbol: char,
    pub subalgebra: u32,
    pub moments: Vec<BigRational>,
}

impl GeneratorSpec {
    /// The generator's own moment table up to `bound` (missing moments are
    /// zero).
    pub fn table(&self, bound: usize) -> Result<MomentTable> {
        let mut t = MomentTable::new(vec![self.symbol], bound);
        for (k, value) in self.moments.iter().enumerate().take(bound) {
            let word: String = std::iter::repeat_n(self.symbol, k + 1).collect();
            t.set(&word, value.clone())?;
        }
        Ok(t)
    }
}

/// Joint moments of free generators: pure cumulants from each moment
/// sequence, every mixed cumulant declared zero, and the partition sum
/// rebuilt over the combined alphabet. The bound is capped at
/// [`DEFAULT_BOUND`] to keep the lattice sums desk-sized.
pub fn free_joint_moments(gens: &[GeneratorSpec], bound: usize) -> Result<MomentTable> {
    if bound > DEFAULT_BOUND {
        return Err(Error::BeyondBound {
            len: bound,
            bound: DEFAULT_BOUND,
        });
    }
    let mut symbols = Vec::new();
    let mut pure: BTreeMap<char, MomentTable> = BTreeMap::new();
    for g in gens {
        if pure.contains_key(&g.symbol) {
            return Err(Error::Parse(format!(
                "generator {:?} declared twice",
                g.symbol
            )));
        }
        symbols.push(g.symbol);
        pure.insert(g.symbol, cumulants_from_moments(&g.table(bound)?, bound)?);
    }
    let mut out = MomentTable::new(symbols, bound);
    for word in out.words_up_to(bound) {
        let chars: Vec<char> = word.chars().collect();
        let mut acc = BigRational::zero();
        for p in enumerate_nc(chars.len())? {
            let mut product = BigRational::one();
            for block in p.blocks() {
                let first = chars[block[0] - 1];
                if block.iter().any(|&i| chars[i - 1] != first) {
                    product = BigRational::zero();
                    break;
                }
                let sub: String = std::iter::repeat_n(first, block.len()).collect();
                product *= pure[&first].get(&sub)?;
                if product.is_zero() {
                    break;
                }
            }
            acc += product;
        }
        out.set(&word, acc)?;
    }
    Ok(out)
}

/// Outcome of the two-way freeness verification.
#[derive(Debug, Clone)]
pub struct FreenessReport {
    pub bound: usize,
    pub alternating_checked: usize,
    pub alternating_violations: Vec<(String, BigRational)>,
    pub mixed_checked: usize,
    pub nonzero_mixed_cumulants: Vec<(String, BigRational)>,
    pub free: bool,
}

impl fmt::Display for FreenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "alternating centered products checked: {} ({} nonzero)",
            self.alternating_checked,
            self.alternating_violations.len()
        )?;
        for (desc, value) in &self.alternating_violations {
            writeln!(f, "  phi[{desc}] = {value}")?;
        }
        writeln!(
            f,
            "mixed cumulants checked: {} ({} nonzero)",
            self.mixed_checked,
            self.nonzero_mixed_cumulants.len()
        )?;
        for (word, value) in &self.nonzero_mixed_cumulants {
            writeln!(f, "  kappa[{word}] = {value}")?;
        }
        write!(f, "free: {}", self.free)
    }
}

/// Checks joint moment data for freeness both ways: every alternating
/// product of centered generator powers must have vanishing expectation,
/// and every mixed cumulant up to the bound must be zero.
pub fn freeness_report(
    joint: &MomentTable,
    labels: &BTreeMap<char, u32>,
    bound: usize,
) -> Result<FreenessReport> {
    if bound > joint.bound() || bound > DEFAULT_BOUND {
        return Err(Error::BeyondBound {
            len: bound,
            bound: joint.bound().min(DEFAULT_BOUND),
        });
    }
    for g in joint.gens() {
        if !labels.contains_key(g) {
            return Err(Error::Parse(format!(
                "generator {g:?} has no subalgebra label"
            )));
        }
    }
    let mut report = FreenessReport {
        bound,
        alternating_checked: 0,
        alternating_violations: Vec::new(),
        mixed_checked: 0,
        nonzero_mixed_cumulants: Vec::new(),
        free: true,
    };
    // (a) Voiculescu's condition on the constructed data.
    let mut seq: Vec<(char, usize)> = Vec::new();
    alternating_products(joint, labels, bound, &mut seq, &mut report)?;
    // (b) mixed cumulants from the same data.
    let sys = WordSystem {
        gens: joint.gens().to_vec(),
    };
    let fam = MomentFamily { table: joint };
    for word in joint.words_up_to(bound) {
        let mut word_labels = word.chars().map(|c| labels[&c]);
        let first = word_labels.next().expect("non-empty word");
        if word_labels.all(|l| l == first) {
            continue;
        }
        report.mixed_checked += 1;
        let value = cumulant(&sys, &fam, &word_slots(&word))?;
        if !value.is_zero() {
            report.nonzero_mixed_cumulants.push((word, value));
        }
    }
    report.free =
        report.alternating_violations.is_empty() && report.nonzero_mixed_cumulants.is_empty();
    Ok(report)
}

fn alternating_products(
    joint: &MomentTable,
    labels: &BTreeMap<char, u32>,
    budget: usize,
    seq: &mut Vec<(char, usize)>,
    report: &mut FreenessReport,
) -> Result<()> {
    let used: usize = seq.iter().map(|(_, k)| k).sum();
    if seq.len() >= 2 {
        report.alternating_checked += 1;
        let value = centered_expectation(joint, seq)?;
        if !value.is_zero() {
            let desc: Vec<String> = seq.iter().map(|(g, k)| format!("({g}^{k}-phi)")).collect();
            report.alternating_violations.push((desc.join(""), value));
        }
    }
    for &g in joint.gens() {
        if let Some((prev, _)) = seq.last() {
            if labels[&g] == labels[prev] {
                continue;
            }
        }
        for k in 1..=budget.saturating_sub(used) {
            seq.push((g, k));
            alternating_products(joint, labels, budget, seq, report)?;
            seq.pop();
        }
    }
    Ok(())
}

/// Expectation of a product of centered powers, by subset expansion of the
/// centering.
fn centered_expectation(joint: &MomentTable, seq: &[(char, usize)]) -> Result<BigRational> {
    let r = seq.len();
    let mut phis = Vec::with_capacity(r);
    for (g, k) in seq {
        let word: String = std::iter::repeat_n(*g, *k).collect();
        phis.push(joint.phi(&word)?);
    }
    let mut acc = BigRational::zero();
    for mask in 0u32..(1 << r) {
        let mut coeff = BigRational::one();
        let mut word = String::new();
        for (i, (g, k)) in seq.iter().enumerate() {
            if mask & (1 << i) != 0 {
                word.extend(std::iter::repeat_n(*g, *k));
            } else {
                coeff *= -phis[i].clone();
            }
        }
        acc += coeff * joint.phi(&word)?;
    }
    Ok(acc)
}

/// Parses a freeness specification: `gen <symbol> <label>` lines declaring
/// generators and `moment <word> <value>` lines giving each generator's
/// moment sequence (words must be powers of one declared generator).
pub fn parse_freeness_spec(text: &str) -> Result<(Vec<GeneratorSpec>, usize)> {
    let mut order: Vec<char> = Vec::new();
    let mut labels: BTreeMap<char, u32> = BTreeMap::new();
    let mut moments: BTreeMap<char, Vec<(usize, BigRational)>> = BTreeMap::new();
    let mut longest = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["gen", sym, label] => {
                let mut chars = sym.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(Error::Parse(format!(
                        "line {}: generator must be one letter",
                        lineno + 1
                    )));
                };
                let label: u32 = label.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad subalgebra label", lineno + 1))
                })?;
                if labels.insert(c, label).is_some() {
                    return Err(Error::Parse(format!(
                        "line {}: generator {c:?} declared twice",
                        lineno + 1
                    )));
                }
                order.push(c);
            }
            ["moment", word, value] => {
                let mut chars = word.chars();
                let Some(c) = chars.next() else {
                    return Err(Error::Parse(format!("line {}: empty word", lineno + 1)));
                };
                if !word.chars().all(|x| x == c) {
                    return Err(Error::Parse(format!(
                        "line {}: moment words are powers of one generator",
                        lineno + 1
                    )));
                }
                if !labels.contains_key(&c) {
                    return Err(Error::Parse(format!(
                        "line {}: generator {c:?} not declared",
                        lineno + 1
                    )));
                }
                let value = BigRational::from_str(value).map_err(|_| {
                    Error::Parse(format!("line {}: bad rational {value:?}", lineno + 1))
                })?;
                longest = longest.max(word.len());
                moments.entry(c).or_default().push((word.len(), value));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected `gen` or `moment` directive",
                    lineno + 1
                )));
            }
        }
    }
    let specs = order
        .into_iter()
        .map(|c| {
            let mut seq = vec![BigRational::zero(); longest];
            for (len, value) in moments.get(&c).into_iter().flatten() {
                seq[len - 1] = value.clone();
            }
            GeneratorSpec {
                symbol: c,
                subalgebra: labels[&c],
                moments: seq,
            }
        })
        .collect();
    Ok((specs, longest))
}
