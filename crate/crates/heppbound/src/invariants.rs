//! Derksen's invariant (the multiset of rank-increment words over all edge
//! orders), its evaluation map onto unit-index Hepp bounds, Crapo's beta
//! invariant by three routes, and the word calculus with its shuffle
//! identities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::Rational;
use crate::engine::position_limit_at_zero_dimension;
use crate::matroid::{EdgeSubset, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("input exceeds the size limit {0} for this method")]
    SizeLimit(usize),
    #[error("word sum mixes lengths or loop counts")]
    MixedWords,
    #[error("a word hits a vanishing denominator (divergent subobject at unit indices)")]
    PoleInWord,
    #[error("vanishing partial sum of letters")]
    PolePartialSum,
    #[error("could not find a non-degenerate limit direction")]
    LimitDegenerate,
}

/// A 0/1 word of rank increments, letter `k` in bit `k`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Word {
    bits: u64,
    len: u8,
}

impl Word {
    pub fn empty() -> Word {
        Word { bits: 0, len: 0 }
    }

    pub fn from_letters(letters: &[u8]) -> Word {
        assert!(letters.len() <= 64);
        let mut bits = 0u64;
        for (k, &l) in letters.iter().enumerate() {
            debug_assert!(l <= 1);
            if l == 1 {
                bits |= 1 << k;
            }
        }
        Word {
            bits,
            len: letters.len() as u8,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, k: usize) -> u8 {
        (self.bits >> k & 1) as u8
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.len()).map(|k| self.letter(k)).collect()
    }

    pub fn push(&self, letter: u8) -> Word {
        let mut w = *self;
        if letter == 1 {
            w.bits |= 1 << w.len;
        }
        w.len += 1;
        w
    }

    /// Number of ones (the rank of any matroid producing this word).
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            write!(f, "{}", self.letter(k))?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for Word {
    type Err = String;
    fn from_str(s: &str) -> Result<Word, String> {
        let letters: Result<Vec<u8>, String> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(format!("bad word letter {c:?}")),
            })
            .collect();
        Ok(Word::from_letters(&letters?))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> std::cmp::Ordering {
        let common = self.len().min(other.len());
        for k in 0..common {
            match self.letter(k).cmp(&other.letter(k)) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer-multiplicity multiset of words, lexicographically ordered.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, BigUint>,
}

impl WordSum {
    pub fn new() -> WordSum {
        WordSum::default()
    }

    pub fn singleton(word: Word) -> WordSum {
        let mut ws = WordSum::new();
        ws.add(word, BigUint::from(1u32));
        ws
    }

    pub fn add(&mut self, word: Word, mult: BigUint) {
        if mult == BigUint::from(0u32) {
            return;
        }
        *self.terms.entry(word).or_default() += mult;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigUint)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn scale(&self, factor: &BigUint) -> WordSum {
        let mut out = WordSum::new();
        for (w, m) in self.iter() {
            out.add(*w, m * factor);
        }
        out
    }

    pub fn push_letter(&self, letter: u8) -> WordSum {
        let mut out = WordSum::new();
        for (w, m) in self.iter() {
            out.add(w.push(letter), m.clone());
        }
        out
    }

    /// Shuffle product: every interleaving of every pair of words.
    pub fn shuffle(&self, other: &WordSum) -> WordSum {
        let mut out = WordSum::new();
        for (v, mv) in self.iter() {
            for (w, mw) in other.iter() {
                let mult = mv * mw;
                for s in shuffle_words(v, w) {
                    out.add(s, mult.clone());
                }
            }
        }
        out
    }
}

impl fmt::Debug for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.iter().map(|(w, m)| format!("{}*[{}]", m, w)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// All interleavings of two 0/1 words (with repetitions when they collide).
fn shuffle_words(v: &Word, w: &Word) -> Vec<Word> {
    let n = v.len();
    let m = w.len();
    let total = n + m;
    assert!(total <= 64);
    let mut out = Vec::new();
    // choose the positions of v's letters among 0..total
    let mut positions: Vec<usize> = (0..n).collect();
    loop {
        let mut letters = vec![0u8; total];
        let mut taken = vec![false; total];
        for (i, &p) in positions.iter().enumerate() {
            letters[p] = v.letter(i);
            taken[p] = true;
        }
        let mut j = 0;
        for (slot, t) in taken.iter().enumerate() {
            if !*t {
                letters[slot] = w.letter(j);
                j += 1;
            }
        }
        out.push(Word::from_letters(&letters));
        // next combination
        if n == 0 {
            break;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if positions[i] != i + total - n {
                break;
            }
        }
        if positions[i] == i + total - n {
            return out;
        }
        positions[i] += 1;
        for k in (i + 1)..n {
            positions[k] = positions[k - 1] + 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerksenMethod {
    /// Sum over all edge orders, grouped by prefix set.
    Direct,
    /// Recursion down the lattice of bridgeless subsets.
    Bridgeless,
    /// Recursion up the lattice of flats (rank-one flats of quotients).
    Flats,
}

const DERKSEN_DIRECT_LIMIT: usize = 12;

/// The multiset of rank-increment words over all `N!` edge orders.
pub fn derksen(m: &Matroid, method: DerksenMethod) -> Result<WordSum, InvariantError> {
    match method {
        DerksenMethod::Direct => derksen_direct(m),
        DerksenMethod::Bridgeless => Ok(derksen_bridgeless(m)),
        DerksenMethod::Flats => Ok(derksen_flats(m)),
    }
}

fn derksen_direct(m: &Matroid) -> Result<WordSum, InvariantError> {
    let n = m.size();
    if n > DERKSEN_DIRECT_LIMIT {
        return Err(InvariantError::SizeLimit(DERKSEN_DIRECT_LIMIT));
    }
    let mut layer: HashMap<u64, WordSum> = HashMap::new();
    layer.insert(0, WordSum::singleton(Word::empty()));
    for size in 1..=n {
        let mut next: HashMap<u64, WordSum> = HashMap::new();
        for mask in 1..(1u64 << n) {
            let subset = EdgeSubset(mask);
            if subset.len() != size {
                continue;
            }
            let r = m.rank(subset);
            let mut acc = WordSum::new();
            for e in subset.iter() {
                let prev = subset.remove(e);
                let increment = (r - m.rank(prev)) as u8;
                let sub = &layer[&prev.0];
                for (w, mult) in sub.iter() {
                    acc.add(w.push(increment), mult.clone());
                }
            }
            next.insert(mask, acc);
        }
        layer = next;
    }
    Ok(layer.remove(&EdgeSubset::full(n).0).unwrap())
}

fn ones_word(k: usize) -> Word {
    Word::from_letters(&vec![1; k])
}

fn zeros_word(k: usize) -> Word {
    Word::from_letters(&vec![0; k])
}

fn factorial_big(n: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

fn derksen_bridgeless(m: &Matroid) -> WordSum {
    // split off the bridges of the ground set: they shuffle in as
    // rank-increasing letters
    let interior = m.interior(m.ground());
    let bridges = m.size() - interior.len();
    let mut memo: HashMap<u64, WordSum> = HashMap::new();
    let core = derksen_bridgeless_rec(m, interior, &mut memo);
    if bridges == 0 {
        return core;
    }
    let bridge_words = WordSum::singleton(ones_word(bridges)).scale(&factorial_big(bridges));
    core.shuffle(&bridge_words)
}

fn derksen_bridgeless_rec(
    m: &Matroid,
    subset: EdgeSubset,
    memo: &mut HashMap<u64, WordSum>,
) -> WordSum {
    if subset.is_empty() {
        return WordSum::singleton(Word::empty());
    }
    if let Some(ws) = memo.get(&subset.0) {
        return ws.clone();
    }
    let mut acc = WordSum::new();
    for child in m.bridgeless_children(subset).expect("bridgeless") {
        let quotient = subset.len() - child.len();
        let sub = derksen_bridgeless_rec(m, child, memo);
        let shuffled = if quotient >= 2 {
            sub.shuffle(&WordSum::singleton(ones_word(quotient - 1)))
        } else {
            sub
        };
        acc = {
            let mut acc2 = acc;
            let pushed = shuffled.push_letter(0).scale(&factorial_big(quotient));
            for (w, mult) in pushed.iter() {
                acc2.add(*w, mult.clone());
            }
            acc2
        };
    }
    memo.insert(subset.0, acc.clone());
    acc
}

fn derksen_flats(m: &Matroid) -> WordSum {
    let mut memo: HashMap<u64, WordSum> = HashMap::new();
    derksen_flats_rec(m, EdgeSubset::EMPTY, &mut memo)
}

/// Derksen word sum of the quotient by `contracted`, by splitting off loops
/// and grouping orders by the first rank-one flat they span.
fn derksen_flats_rec(
    m: &Matroid,
    contracted: EdgeSubset,
    memo: &mut HashMap<u64, WordSum>,
) -> WordSum {
    if let Some(ws) = memo.get(&contracted.0) {
        return ws.clone();
    }
    let ground = contracted.complement(m.size());
    let loops = EdgeSubset::from_elems(
        ground
            .iter()
            .filter(|&e| m.quotient_rank(contracted, EdgeSubset::singleton(e)) == 0),
    );
    let rest = ground.minus(loops);
    let mut core = WordSum::singleton(Word::empty());
    if !rest.is_empty() {
        // rank-one flats of the loopless part
        let mut flats: Vec<EdgeSubset> = Vec::new();
        for e in rest.iter() {
            let mut flat = EdgeSubset::singleton(e);
            debug_assert_eq!(m.quotient_rank(contracted, flat), 1);
            for f in rest.iter() {
                if f != e && m.quotient_rank(contracted, flat.insert(f)) == 1 {
                    flat = flat.insert(f);
                }
            }
            if !flats.contains(&flat) {
                flats.push(flat);
            }
        }
        let mut acc = WordSum::new();
        for flat in flats {
            let sub = derksen_flats_rec(m, contracted.union(flat), memo);
            let zeros = flat.len() - 1;
            let shuffled = if zeros > 0 {
                sub.shuffle(&WordSum::singleton(zeros_word(zeros)))
            } else {
                sub
            };
            // prepend the rank-increasing letter
            let mut prefixed = WordSum::new();
            for (w, mult) in shuffled.iter() {
                let mut letters = vec![1u8];
                letters.extend(w.letters());
                prefixed.add(Word::from_letters(&letters), mult.clone());
            }
            let scaled = prefixed.scale(&factorial_big(flat.len()));
            for (w, mult) in scaled.iter() {
                acc.add(*w, mult.clone());
            }
        }
        core = acc;
    }
    let out = if loops.is_empty() {
        core
    } else {
        core.shuffle(&WordSum::singleton(zeros_word(loops.len())))
            .scale(&factorial_big(loops.len()))
    };
    memo.insert(contracted.0, out.clone());
    out
}

/// Evaluate a rank-increment word sum to the unit-index Hepp bound. All
/// words must share one length and a positive loop count.
pub fn derksen_to_hepp(ws: &WordSum) -> Result<Rational, InvariantError> {
    let mut shape: Option<(usize, usize)> = None;
    let mut acc = Rational::zero();
    for (word, mult) in ws.iter() {
        let n = word.len();
        let loops = n - word.weight();
        match shape {
            None => {
                if loops == 0 {
                    return Err(InvariantError::MixedWords);
                }
                shape = Some((n, loops));
            }
            Some(s) if s != (n, loops) => return Err(InvariantError::MixedWords),
            _ => {}
        }
        acc += Rational::from_bigint(BigInt::from(mult.clone())) * word_hepp_factor(word)?;
    }
    if shape.is_none() {
        return Err(InvariantError::MixedWords);
    }
    Ok(acc)
}

/// `h(word)`: the product over proper prefixes of the reciprocal degree of
/// convergence at unit indices.
pub fn word_hepp_factor(word: &Word) -> Result<Rational, InvariantError> {
    let n = word.len();
    let loops = (n - word.weight()) as i64;
    debug_assert!(loops >= 1);
    let d2 = Rational::new(n as i64, loops);
    let mut acc = Rational::one();
    let mut prefix_loops = 0i64;
    for k in 1..n {
        prefix_loops += (1 - word.letter(k - 1) as i64).max(0);
        let den = Rational::from_int(k as i64) - &d2 * &Rational::from_int(prefix_loops);
        if den.is_zero() {
            return Err(InvariantError::PoleInWord);
        }
        acc = acc / den;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrapoMethod {
    /// Alternating subset sum of ranks.
    SubsetSum,
    /// Deletion-contraction with one-element base cases.
    DeletionContraction,
    /// Limit of the position-space Hepp bound onto vanishing dimension.
    HeppLimit,
}

const CRAPO_SUBSET_LIMIT: usize = 20;

/// Crapo's beta invariant.
pub fn crapo(m: &Matroid, method: CrapoMethod) -> Result<i64, InvariantError> {
    match method {
        CrapoMethod::SubsetSum => crapo_subset_sum(m),
        CrapoMethod::DeletionContraction => Ok(crapo_del_con(m, m.ground())),
        CrapoMethod::HeppLimit => crapo_hepp_limit(m),
    }
}

fn crapo_subset_sum(m: &Matroid) -> Result<i64, InvariantError> {
    let n = m.size();
    if n > CRAPO_SUBSET_LIMIT {
        return Err(InvariantError::SizeLimit(CRAPO_SUBSET_LIMIT));
    }
    let mut acc: i64 = 0;
    for mask in 0..=EdgeSubset::full(n).0 {
        let subset = EdgeSubset(mask);
        let sign = if subset.len().is_multiple_of(2) { 1 } else { -1 };
        acc += sign * m.rank(subset) as i64;
    }
    let rank_sign = if m.full_rank().is_multiple_of(2) { 1 } else { -1 };
    Ok(rank_sign * acc)
}

fn crapo_del_con(m: &Matroid, subset: EdgeSubset) -> i64 {
    if subset.len() == 1 {
        // single loop: 0; single bridge: 1 (both fixed by the subset sum on
        // one-element matroids)
        return m.rank(subset) as i64;
    }
    // any loop or bridge in a larger matroid splits off a direct summand
    let r = m.rank(subset);
    let pick = subset
        .iter()
        .find(|&e| m.rank(EdgeSubset::singleton(e)) == 1 && m.rank(subset.remove(e)) == r);
    match pick {
        None => 0,
        Some(e) => {
            // deletion keeps the same ambient matroid; contraction passes
            // to the quotient by e
            let deleted = crapo_del_con(m, subset.remove(e));
            let contracted = crapo_del_con(&m.contract(EdgeSubset::singleton(e)), {
                // re-index the remaining elements
                let mut mask = 0u64;
                let mut pos = 0;
                for f in 0..m.size() {
                    if f == e {
                        continue;
                    }
                    if subset.contains(f) {
                        mask |= 1 << pos;
                    }
                    pos += 1;
                }
                EdgeSubset(mask)
            });
            deleted + contracted
        }
    }
}

fn crapo_hepp_limit(m: &Matroid) -> Result<i64, InvariantError> {
    if m.size() == 1 {
        return Ok(m.rank(m.ground()) as i64);
    }
    if !m.is_connected() {
        return Ok(0);
    }
    let n = m.size();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbe7a);
    'attempt: for _ in 0..32 {
        // base point with zero total and no vanishing subset sums
        let mut base: Vec<Rational> = (0..n - 1)
            .map(|_| Rational::from_int(rng.gen_range(-40i64..=40)))
            .collect();
        let partial: Rational = base.iter().cloned().sum();
        base.push(-partial);
        if n <= 16 {
            for mask in 1..EdgeSubset::full(n).0 {
                let mut sum = Rational::zero();
                for e in EdgeSubset(mask).iter() {
                    sum += &base[e];
                }
                if sum.is_zero() {
                    continue 'attempt;
                }
            }
        }
        let value = match position_limit_at_zero_dimension(m, &base) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let sign = if (m.full_rank() + 1).is_multiple_of(2) { 1 } else { -1 };
        let beta = Rational::from_int(sign) * value;
        if !beta.is_integer() {
            continue;
        }
        let digits = beta.numer().to_string();
        return digits.parse().map_err(|_| InvariantError::LimitDegenerate);
    }
    Err(InvariantError::LimitDegenerate)
}

/// The word maps of the calculus: iterated reciprocal partial sums.
pub fn chi(word: &[Rational]) -> Result<Rational, InvariantError> {
    let mut acc = Rational::one();
    let mut partial = Rational::zero();
    for s in word {
        partial += s;
        if partial.is_zero() {
            return Err(InvariantError::PolePartialSum);
        }
        acc = acc / partial.clone();
    }
    Ok(acc)
}

/// Same as `chi` but without the final partial-sum factor; zero on the
/// empty word.
pub fn chi_check(word: &[Rational]) -> Result<Rational, InvariantError> {
    if word.is_empty() {
        return Ok(Rational::zero());
    }
    chi(&word[..word.len() - 1])
}

/// All `(n, m)`-shuffles of two letter sequences.
pub fn shuffle(v: &[Rational], w: &[Rational]) -> Vec<Vec<Rational>> {
    fn rec(v: &[Rational], w: &[Rational], cur: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
        if v.is_empty() && w.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((first, rest)) = v.split_first() {
            cur.push(first.clone());
            rec(rest, w, cur, out);
            cur.pop();
        }
        if let Some((first, rest)) = w.split_first() {
            cur.push(first.clone());
            rec(v, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(v, w, &mut Vec::new(), &mut out);
    out
}

/// Antipode of the shuffle algebra: reversal with sign `(-1)^length`.
pub fn antipode(word: &[Rational]) -> (i64, Vec<Rational>) {
    let sign = if word.len().is_multiple_of(2) { 1 } else { -1 };
    (sign, word.iter().rev().cloned().collect())
}
