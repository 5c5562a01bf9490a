//! Trimming, minimization, equivalence and isomorphism of DFAs.
//!
//! Minimization is Moore-style partition refinement on the reachable part of
//! the automaton, followed by a breadth-first renumbering. The BFS numbering
//! (symbols scanned in increasing order) doubles as a canonical form:
//! two trim DFAs are isomorphic exactly when their renumbered tables are
//! identical, which is what pairwise-inequivalence arguments reduce to here.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::dfa::{Dfa, State};
use crate::error::Error;

/// States reachable from the start, in BFS order (symbols in increasing
/// index order).
fn reachable_in_bfs_order(d: &Dfa) -> Vec<State> {
    let mut seen = vec![false; d.num_states];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen[d.start] = true;
    queue.push_back(d.start);
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for a in 0..d.alphabet_size {
            let t = d.delta[q][a];
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order
}

/// Restriction of `d` to the states reachable from its start state,
/// renumbered in BFS order. Preserves the language.
pub fn trim(d: &Dfa) -> Dfa {
    let order = reachable_in_bfs_order(d);
    let mut new_id = vec![usize::MAX; d.num_states];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new;
    }
    let delta = order
        .iter()
        .map(|&old| d.delta[old].iter().map(|&t| new_id[t]).collect())
        .collect();
    let finals = d
        .finals
        .iter()
        .filter(|&&f| new_id[f] != usize::MAX)
        .map(|&f| new_id[f])
        .collect();
    Dfa {
        alphabet_size: d.alphabet_size,
        num_states: order.len(),
        start: 0,
        finals,
        delta,
        labels: d.labels.clone(),
    }
}

/// The minimal complete DFA for `L(d)`, in canonical BFS numbering.
///
/// Trims, then refines the finality partition by splitting blocks on the
/// blocks of their symbol successors until stable, then rebuilds the
/// quotient automaton. The empty language yields a single non-final sink,
/// the full language a single final state.
pub fn minimize(d: &Dfa) -> Dfa {
    let t = trim(d);
    let n = t.num_states;

    // Initial partition: by finality. Block ids assigned in first-seen
    // state order so the refinement is deterministic.
    let mut block = vec![0usize; n];
    let mut num_blocks = assign_blocks(&mut block, |q| usize::from(t.is_final(q)));

    loop {
        let signature = |q: State| {
            let mut sig = Vec::with_capacity(t.alphabet_size + 1);
            sig.push(block[q]);
            sig.extend(t.delta[q].iter().map(|&s| block[s]));
            sig
        };
        let mut next = vec![0usize; n];
        let next_blocks = assign_blocks(&mut next, signature);
        if next_blocks == num_blocks {
            break;
        }
        block = next;
        num_blocks = next_blocks;
    }

    // Quotient automaton over the stable partition.
    let mut representative = vec![usize::MAX; num_blocks];
    for q in 0..n {
        if representative[block[q]] == usize::MAX {
            representative[block[q]] = q;
        }
    }
    let delta = representative
        .iter()
        .map(|&q| t.delta[q].iter().map(|&s| block[s]).collect())
        .collect();
    let finals = representative
        .iter()
        .enumerate()
        .filter(|&(_, &q)| t.is_final(q))
        .map(|(b, _)| b)
        .collect();
    let quotient = Dfa {
        alphabet_size: t.alphabet_size,
        num_states: num_blocks,
        start: block[t.start],
        finals,
        delta,
        labels: t.labels.clone(),
    };
    // Every block contains a reachable state, so this is a pure renumbering.
    trim(&quotient)
}

fn assign_blocks<K: std::hash::Hash + Eq>(block: &mut [usize], key: impl Fn(State) -> K) -> usize {
    let mut ids: HashMap<K, usize> = HashMap::new();
    for (q, slot) in block.iter_mut().enumerate() {
        let next_id = ids.len();
        *slot = *ids.entry(key(q)).or_insert(next_id);
    }
    ids.len()
}

/// Whether `a` and `b` accept the same language, by synchronized product
/// search for a state pair disagreeing on finality.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool, Error> {
    if a.alphabet_size != b.alphabet_size {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet_size,
            right: b.alphabet_size,
        });
    }
    let mut seen = vec![false; a.num_states * b.num_states];
    let mut queue = VecDeque::new();
    seen[a.start * b.num_states + b.start] = true;
    queue.push_back((a.start, b.start));
    while let Some((qa, qb)) = queue.pop_front() {
        if a.is_final(qa) != b.is_final(qb) {
            return Ok(false);
        }
        for sym in 0..a.alphabet_size {
            let pair = (a.delta[qa][sym], b.delta[qb][sym]);
            let idx = pair.0 * b.num_states + pair.1;
            if !seen[idx] {
                seen[idx] = true;
                queue.push_back(pair);
            }
        }
    }
    Ok(true)
}

/// Whether the reachable parts of `a` and `b` are the same automaton up to
/// state renaming: canonical (trim + BFS renumber) forms compared
/// structure-for-structure, labels ignored.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    let ca = trim(a);
    let cb = trim(b);
    ca.alphabet_size == cb.alphabet_size
        && ca.num_states == cb.num_states
        && ca.start == cb.start
        && ca.finals == cb.finals
        && ca.delta == cb.delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::binary_witness;

    /// Independent oracle: minimal state count by a brute-force
    /// Myhill-Nerode table. Marks reachable state pairs distinguishable by a
    /// fixpoint over one-symbol extensions, then counts the classes.
    fn nerode_minimal_size(d: &Dfa) -> usize {
        let t = trim(d);
        let n = t.num_states;
        let mut distinct = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                if t.is_final(p) != t.is_final(q) {
                    distinct[p * n + q] = true;
                }
            }
        }
        loop {
            let mut changed = false;
            for p in 0..n {
                for q in 0..n {
                    if distinct[p * n + q] {
                        continue;
                    }
                    for a in 0..t.alphabet_size {
                        if distinct[t.delta[p][a] * n + t.delta[q][a]] {
                            distinct[p * n + q] = true;
                            changed = true;
                            break;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut representatives: Vec<State> = Vec::new();
        for q in 0..n {
            if !representatives.iter().any(|&r| !distinct[r * n + q]) {
                representatives.push(q);
            }
        }
        representatives.len()
    }

    /// Independent oracle: acceptance signature of every reachable state over
    /// all words up to `max_len`; distinct signatures bound the class count
    /// from below.
    fn signature_classes(d: &Dfa, max_len: usize) -> usize {
        let t = trim(d);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut all = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &words {
                for a in 0..t.alphabet_size {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            words = next;
        }
        let mut sigs = std::collections::HashSet::new();
        for q in 0..t.num_states {
            let sig: Vec<bool> = all
                .iter()
                .map(|w| t.is_final(t.run_from(q, w).unwrap()))
                .collect();
            sigs.insert(sig);
        }
        sigs.len()
    }

    #[test]
    fn trim_is_identity_on_connected_dfa() {
        let m = binary_witness(4).unwrap();
        assert!(isomorphic(&trim(&m), &m));
        assert_eq!(trim(&m).num_states, 4);
    }

    #[test]
    fn trim_drops_unreachable_state() {
        // State 2 is unreachable from 0.
        let d = Dfa::new(2, vec![vec![0, 1], vec![1, 0], vec![2, 2]], 0, [1]).unwrap();
        let t = trim(&d);
        assert_eq!(t.num_states, 2);
        assert_eq!(t.enumerate_language(10), d.enumerate_language(10));
        assert_eq!(trim(&t).num_states, t.num_states);
    }

    #[test]
    fn minimize_is_idempotent() {
        let d = Dfa::new(2, vec![vec![0, 1], vec![1, 0], vec![2, 2]], 0, [1]).unwrap();
        let once = minimize(&d);
        let twice = minimize(&once);
        assert!(isomorphic(&once, &twice));
        assert_eq!(once.num_states, twice.num_states);
    }

    #[test]
    fn minimize_square_of_binary_witness_against_nerode_table() {
        let m = binary_witness(3).unwrap();
        let sq = crate::concat::square_construction(&m, crate::dfa::DEFAULT_STATE_LIMIT).unwrap();
        let oracle = nerode_minimal_size(&sq.dfa);
        assert_eq!(oracle, 20);
        assert_eq!(minimize(&sq.dfa).num_states, oracle);
    }

    #[test]
    fn minimize_redundant_unary_odd_lengths() {
        // 0(00)* with 5 redundant states: states walk 0..6, then 6 loops
        // back to 5; odd positions are final.
        let d = Dfa::new(
            1,
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![5],
                vec![6],
                vec![5],
            ],
            0,
            [1, 3, 5],
        )
        .unwrap();
        // Distinguishing-word search up to length 4 already separates the
        // two classes and no more.
        assert_eq!(signature_classes(&d, 4), 2);
        assert_eq!(minimize(&d).num_states, 2);
    }

    #[test]
    fn minimal_dfa_of_empty_language_is_one_nonfinal_state() {
        let d = Dfa::new(2, vec![vec![0, 1], vec![1, 1]], 0, []).unwrap();
        let m = minimize(&d);
        assert_eq!(m.num_states, 1);
        assert!(m.finals.is_empty());
    }

    #[test]
    fn minimal_dfa_of_full_language_is_one_final_state() {
        let d = Dfa::new(2, vec![vec![1, 1], vec![0, 0]], 0, [0, 1]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.num_states, 1);
        assert_eq!(m.finals.len(), 1);
    }

    #[test]
    fn equivalent_to_own_minimization_and_trim() {
        let d = Dfa::new(2, vec![vec![0, 1], vec![1, 0], vec![2, 2]], 0, [1]).unwrap();
        assert!(equivalent(&d, &minimize(&d)).unwrap());
        assert!(equivalent(&d, &trim(&d)).unwrap());
    }

    #[test]
    fn witnesses_of_different_sizes_are_inequivalent() {
        let a = binary_witness(3).unwrap();
        let b = binary_witness(4).unwrap();
        // "11" is accepted by the former only.
        assert!(a.accepts(&[1, 1]).unwrap());
        assert!(!b.accepts(&[1, 1]).unwrap());
        assert!(!equivalent(&a, &b).unwrap());
    }

    #[test]
    fn equivalent_rejects_alphabet_mismatch() {
        let a = binary_witness(3).unwrap();
        let b = Dfa::new(1, vec![vec![0]], 0, [0]).unwrap();
        assert!(matches!(
            equivalent(&a, &b),
            Err(Error::AlphabetMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn isomorphic_is_reflexive_and_renumbering_invariant() {
        let m = binary_witness(3).unwrap();
        assert!(isomorphic(&m, &m));
        // The same 3-cycle with states listed in a different order.
        let a = Dfa::new(1, vec![vec![1], vec![2], vec![0]], 0, [2]).unwrap();
        let b = Dfa::new(1, vec![vec![2], vec![0], vec![1]], 0, [1]).unwrap();
        assert!(isomorphic(&a, &b));
        assert!(!isomorphic(&a, &m));
    }

    #[test]
    fn minimize_output_has_no_identical_rows_with_same_finality() {
        let d = Dfa::new(
            2,
            vec![vec![1, 2], vec![3, 4], vec![3, 4], vec![3, 3], vec![4, 4]],
            0,
            [3, 4],
        )
        .unwrap();
        let m = minimize(&d);
        for p in 0..m.num_states {
            for q in p + 1..m.num_states {
                assert!(
                    m.is_final(p) != m.is_final(q) || m.delta[p] != m.delta[q],
                    "states {p} and {q} are locally indistinguishable"
                );
            }
        }
    }
}
