//! Concatenation of DFA languages by the product-with-subset construction,
//! language powers, and an independent subset-construction oracle for
//! cross-checking.
//!
//! The constructed states are pairs `(i, R)`: a state of the first machine
//! plus the set of second-machine states currently live. Pairs where `i` is
//! final but the second machine's start state is missing from `R` cannot
//! occur and are excluded from the state set, which is what brings the full
//! size to `m·2^n − |F₁|·2^{n−1}`.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::dfa::{Dfa, State, Symbol, Word};
use crate::error::Error;
use crate::minimize::minimize;

/// Widest supported subset mask for the second machine.
pub const MAX_SUBSET_BITS: usize = 63;

/// A state `(i, R)` of the concatenation construction: `first` is a state of
/// machine 1, bit `r` of `subset` is set iff state `r` of machine 2 is live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairState {
    pub first: State,
    pub subset: u64,
}

impl PairState {
    pub fn new(first: State, subset: u64) -> Self {
        PairState { first, subset }
    }
}

/// A constructed concatenation DFA together with its provenance map: entry
/// `q` is the pair state that DFA state `q` stands for.
#[derive(Clone, Debug)]
pub struct ConcatDfa {
    pub dfa: Dfa,
    pub pair_states: Vec<PairState>,
}

impl ConcatDfa {
    /// Serializes as the shared JSON DFA format extended with a
    /// `pair_states` side table of `[first, subset_mask]` rows.
    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(&self.dfa).expect("DFA serialization cannot fail");
        let table: Vec<serde_json::Value> = self
            .pair_states
            .iter()
            .map(|p| serde_json::json!([p.first, p.subset]))
            .collect();
        value
            .as_object_mut()
            .expect("DFA serializes to an object")
            .insert("pair_states".to_string(), serde_json::Value::Array(table));
        value.to_string()
    }
}

/// Per-symbol successor bitmasks of the second machine: `table[a][r]` is the
/// one-bit mask of `delta2[r][a]`.
fn successor_bits(m2: &Dfa) -> Vec<Vec<u64>> {
    (0..m2.alphabet_size)
        .map(|a| (0..m2.num_states).map(|r| 1u64 << m2.delta[r][a]).collect())
        .collect()
}

fn subset_image(mask: u64, bits: &[u64]) -> u64 {
    let mut rest = mask;
    let mut image = 0;
    while rest != 0 {
        let r = rest.trailing_zeros() as usize;
        image |= bits[r];
        rest &= rest - 1;
    }
    image
}

fn finals_mask(m: &Dfa) -> u64 {
    m.finals.iter().fold(0u64, |acc, &f| acc | (1 << f))
}

struct ConcatRule<'a> {
    m1: &'a Dfa,
    succ: Vec<Vec<u64>>,
    start2_bit: u64,
    finals2: u64,
}

impl<'a> ConcatRule<'a> {
    fn new(m1: &'a Dfa, m2: &'a Dfa) -> Result<Self, Error> {
        if m1.alphabet_size != m2.alphabet_size {
            return Err(Error::AlphabetMismatch {
                left: m1.alphabet_size,
                right: m2.alphabet_size,
            });
        }
        if m2.num_states > MAX_SUBSET_BITS {
            return Err(Error::SubsetWidthExceeded {
                num_states: m2.num_states,
                max: MAX_SUBSET_BITS,
            });
        }
        Ok(ConcatRule {
            succ: successor_bits(m2),
            start2_bit: 1u64 << m2.start,
            finals2: finals_mask(m2),
            m1,
        })
    }

    fn start(&self) -> PairState {
        let subset = if self.m1.is_final(self.m1.start) {
            self.start2_bit
        } else {
            0
        };
        PairState::new(self.m1.start, subset)
    }

    /// One application of the transition rule: step the first machine, image
    /// the subset, and inject the second machine's start whenever the first
    /// machine lands on a final state.
    fn step(&self, p: PairState, a: Symbol) -> PairState {
        let first = self.m1.delta[p.first][a];
        let mut subset = subset_image(p.subset, &self.succ[a]);
        if self.m1.is_final(first) {
            subset |= self.start2_bit;
        }
        PairState::new(first, subset)
    }

    fn is_final(&self, p: PairState) -> bool {
        p.subset & self.finals2 != 0
    }

    fn is_excluded(&self, p: PairState) -> bool {
        self.m1.is_final(p.first) && p.subset & self.start2_bit == 0
    }
}

fn assemble(
    rule: &ConcatRule,
    pair_states: Vec<PairState>,
    index: impl Fn(PairState) -> usize,
) -> ConcatDfa {
    let start = index(rule.start());
    let delta = pair_states
        .iter()
        .map(|&p| {
            (0..rule.m1.alphabet_size)
                .map(|a| index(rule.step(p, a)))
                .collect()
        })
        .collect();
    let finals = pair_states
        .iter()
        .enumerate()
        .filter(|&(_, &p)| rule.is_final(p))
        .map(|(q, _)| q)
        .collect();
    ConcatDfa {
        dfa: Dfa {
            alphabet_size: rule.m1.alphabet_size,
            num_states: pair_states.len(),
            start,
            finals,
            delta,
            labels: rule.m1.labels.clone(),
        },
        pair_states,
    }
}

/// The full concatenation construction for `L(m1)·L(m2)`.
///
/// Materializes the entire state set `Q₁ × 2^{Q₂}` minus the excluded pairs,
/// reachable or not, so the result has exactly `m·2^n − |F₁|·2^{n−1}` states.
/// States are indexed lexicographically by `(first, subset)`. Use
/// [`yzs_concat_reachable`] when only the language matters.
pub fn yzs_concat(m1: &Dfa, m2: &Dfa, state_limit: usize) -> Result<ConcatDfa, Error> {
    let rule = ConcatRule::new(m1, m2)?;
    let n2 = m2.num_states as u32;
    let full = (m1.num_states as u128) << n2;
    let excluded = (m1.finals.len() as u128) << (n2 - 1);
    let required = full - excluded;
    if required > state_limit as u128 {
        return Err(Error::StateLimitExceeded {
            required: required.min(usize::MAX as u128) as usize,
            limit: state_limit,
        });
    }

    let mut pair_states = Vec::with_capacity(required as usize);
    let mut index_of = vec![usize::MAX; (full as usize).max(1)];
    for first in 0..m1.num_states {
        for subset in 0..(1u64 << n2) {
            let p = PairState::new(first, subset);
            if !rule.is_excluded(p) {
                index_of[(first << n2) | subset as usize] = pair_states.len();
                pair_states.push(p);
            }
        }
    }
    debug_assert_eq!(pair_states.len() as u128, required);

    Ok(assemble(&rule, pair_states, |p| {
        index_of[(p.first << n2) | p.subset as usize]
    }))
}

/// Reachable-only variant of [`yzs_concat`]: same transition rule, same
/// language, but only the pair states discoverable from the start are
/// materialized (breadth-first, symbols in increasing order).
pub fn yzs_concat_reachable(m1: &Dfa, m2: &Dfa, state_limit: usize) -> Result<ConcatDfa, Error> {
    let rule = ConcatRule::new(m1, m2)?;
    let mut index: HashMap<PairState, usize> = HashMap::new();
    let mut pair_states = Vec::new();
    let mut queue = VecDeque::new();
    let start = rule.start();
    index.insert(start, 0);
    pair_states.push(start);
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        for a in 0..m1.alphabet_size {
            let q = rule.step(p, a);
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(q) {
                if pair_states.len() >= state_limit {
                    return Err(Error::StateLimitExceeded {
                        required: pair_states.len() + 1,
                        limit: state_limit,
                    });
                }
                slot.insert(pair_states.len());
                pair_states.push(q);
                queue.push_back(q);
            }
        }
    }
    Ok(assemble(&rule, pair_states, |p| index[&p]))
}

/// The concatenation construction applied to a machine and itself, so the
/// result accepts `L(m)²`.
pub fn square_construction(m: &Dfa, state_limit: usize) -> Result<ConcatDfa, Error> {
    yzs_concat(m, m, state_limit)
}

/// A DFA for `L(m)^k`, built by repeated concatenation with minimization
/// between steps to keep the iterated construction from blowing up. `k = 1`
/// returns the machine itself; the last concatenation is left unminimized.
pub fn power_construction(m: &Dfa, k: usize, state_limit: usize) -> Result<Dfa, Error> {
    if k < 1 {
        return Err(Error::OutOfRange {
            param: "k",
            value: k,
            min: 1,
        });
    }
    let mut acc = m.clone();
    for _ in 2..=k {
        let prev = minimize(&acc);
        acc = yzs_concat_reachable(&prev, m, state_limit)?.dfa;
    }
    Ok(acc)
}

/// Independent concatenation oracle: glue an ε-free nondeterministic machine
/// for `L(m1)·L(m2)` (final states of machine 1 spawn machine 2's start
/// behavior), determinize by accessible subset construction, and minimize.
///
/// Shares no code with [`yzs_concat`]'s pair-state transition rule, so the
/// two routes check each other.
pub fn oracle_concat(m1: &Dfa, m2: &Dfa, state_limit: usize) -> Result<Dfa, Error> {
    if m1.alphabet_size != m2.alphabet_size {
        return Err(Error::AlphabetMismatch {
            left: m1.alphabet_size,
            right: m2.alphabet_size,
        });
    }
    let n1 = m1.num_states;
    let total = n1 + m2.num_states;
    if total > 128 {
        return Err(Error::SubsetWidthExceeded {
            num_states: total,
            max: 128,
        });
    }
    let finals1: u128 = m1.finals.iter().fold(0, |acc, &f| acc | (1u128 << f));
    let finals2: u128 = m2
        .finals
        .iter()
        .fold(0, |acc, &f| acc | (1u128 << (n1 + f)));
    let start2_bit = 1u128 << (n1 + m2.start);
    let close = |set: u128| {
        if set & finals1 != 0 {
            set | start2_bit
        } else {
            set
        }
    };

    let step = |set: u128, a: Symbol| {
        let mut image = 0u128;
        for q in 0..n1 {
            if set & (1u128 << q) != 0 {
                image |= 1u128 << m1.delta[q][a];
            }
        }
        for q in 0..m2.num_states {
            if set & (1u128 << (n1 + q)) != 0 {
                image |= 1u128 << (n1 + m2.delta[q][a]);
            }
        }
        close(image)
    };

    let start = close(1u128 << m1.start);
    let mut index: HashMap<u128, usize> = HashMap::new();
    let mut subsets = vec![start];
    let mut delta: Vec<Vec<State>> = Vec::new();
    index.insert(start, 0);
    let mut next = 0;
    while next < subsets.len() {
        let set = subsets[next];
        let mut row = Vec::with_capacity(m1.alphabet_size);
        for a in 0..m1.alphabet_size {
            let image = step(set, a);
            let id = *index.entry(image).or_insert_with(|| {
                subsets.push(image);
                subsets.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        if subsets.len() > state_limit {
            return Err(Error::StateLimitExceeded {
                required: subsets.len(),
                limit: state_limit,
            });
        }
        next += 1;
    }
    let finals = subsets
        .iter()
        .enumerate()
        .filter(|&(_, &set)| set & finals2 != 0)
        .map(|(q, _)| q)
        .collect();
    let det = Dfa {
        alphabet_size: m1.alphabet_size,
        num_states: subsets.len(),
        start: 0,
        finals,
        delta,
        labels: m1.labels.clone(),
    };
    Ok(minimize(&det))
}

/// The word that drives the square construction of the binary witness from
/// its start state `(0, ∅)` to `target`.
///
/// For `(0, R)` with `R = {r₁ < ⋯ < r_{k−1}} ∪ {r_k = 0}` when `0 ∈ R` (else
/// `r₁ < ⋯ < r_k`), the word is `1ⁿ(10)^{s_k} ⋯ 1ⁿ(10)^{s_1}` with
/// `s₁ = (r₁−1) mod n` and `s_j = (r_j − r_{j−1}) mod n`; for `first > 0`
/// the subset is rotated down by `first` and `1^first` is appended.
pub fn reachability_word(n: usize, target: PairState) -> Result<Word, Error> {
    if n < 3 {
        return Err(Error::OutOfRange {
            param: "n",
            value: n,
            min: 3,
        });
    }
    if target.first >= n || target.subset >> n != 0 {
        return Err(Error::IllegalPairState {
            first: target.first,
            subset: target.subset,
        });
    }
    // Excluded-state rule of the construction: the witness's only final
    // state is n-1 and the second copy starts at 0.
    if target.first == n - 1 && target.subset & 1 == 0 {
        return Err(Error::IllegalPairState {
            first: target.first,
            subset: target.subset,
        });
    }
    let subset = if target.first > 0 {
        rotate_subset_down(target.subset, target.first, n)
    } else {
        target.subset
    };
    let mut word = word_reaching_zero(n, subset);
    word.extend(std::iter::repeat_n(1, target.first));
    Ok(word)
}

/// `{(r − shift) mod n : r ∈ mask}`.
fn rotate_subset_down(mask: u64, shift: usize, n: usize) -> u64 {
    (0..n)
        .filter(|&r| mask & (1 << r) != 0)
        .fold(0, |acc, r| acc | (1 << ((r + n - shift) % n)))
}

fn word_reaching_zero(n: usize, mask: u64) -> Word {
    let mut rs: Vec<usize> = (0..n).filter(|&r| mask & (1 << r) != 0).collect();
    if rs.first() == Some(&0) {
        // 0 is ordered last when present.
        rs.rotate_left(1);
    }
    let shifts: Vec<usize> = rs
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            let prev = if j == 0 { 1 } else { rs[j - 1] };
            (r + n - prev) % n
        })
        .collect();
    let mut word = Vec::new();
    for &s in shifts.iter().rev() {
        word.extend(std::iter::repeat_n(1, n));
        for _ in 0..s {
            word.push(1);
            word.push(0);
        }
    }
    word
}
