//! Complete deterministic finite automata over indexed alphabets.
//!
//! States and symbols are plain indices: a DFA with `num_states` states and
//! `alphabet_size` symbols has states `0..num_states` and symbols
//! `0..alphabet_size`. The transition table is total by construction; partial
//! automata are rejected by [`Dfa::validate`] rather than completed with a
//! sink, since every size count in this crate refers to complete DFAs.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::Error;

/// Index of a state inside a DFA transition table.
pub type State = usize;

/// Index of a symbol inside a DFA alphabet.
pub type Symbol = usize;

/// A word over an indexed alphabet. Valid for a given DFA when every entry is
/// below that DFA's `alphabet_size`.
pub type Word = Vec<Symbol>;

/// Default cap on the number of states a construction may materialize.
pub const DEFAULT_STATE_LIMIT: usize = 1 << 20;

/// A complete DFA: total transition table `delta[state][symbol]`, a start
/// state and a set of final states.
///
/// `labels` optionally carries one display string per alphabet symbol; it has
/// no semantics and is ignored by every language-level operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfa {
    pub alphabet_size: usize,
    pub num_states: usize,
    pub start: State,
    pub finals: BTreeSet<State>,
    pub delta: Vec<Vec<State>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Dfa {
    /// Builds a DFA and checks its invariants in one step.
    pub fn new(
        alphabet_size: usize,
        delta: Vec<Vec<State>>,
        start: State,
        finals: impl IntoIterator<Item = State>,
    ) -> Result<Self, Error> {
        let dfa = Dfa {
            alphabet_size,
            num_states: delta.len(),
            start,
            finals: finals.into_iter().collect(),
            delta,
            labels: None,
        };
        dfa.validate()?;
        Ok(dfa)
    }

    /// Attaches per-symbol display labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// Checks every structural invariant, reporting the first violation.
    pub fn validate(&self) -> Result<(), Error> {
        if self.alphabet_size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if self.num_states == 0 {
            return Err(Error::NoStates);
        }
        if self.delta.len() != self.num_states {
            return Err(Error::DeltaRowCount {
                rows: self.delta.len(),
                num_states: self.num_states,
            });
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet_size {
                return Err(Error::RaggedDeltaRow {
                    state: q,
                    len: row.len(),
                    alphabet_size: self.alphabet_size,
                });
            }
            for (a, &target) in row.iter().enumerate() {
                if target >= self.num_states {
                    return Err(Error::TransitionOutOfRange {
                        state: q,
                        symbol: a,
                        target,
                        num_states: self.num_states,
                    });
                }
            }
        }
        if self.start >= self.num_states {
            return Err(Error::StartOutOfRange {
                start: self.start,
                num_states: self.num_states,
            });
        }
        if let Some(&f) = self.finals.iter().find(|&&f| f >= self.num_states) {
            return Err(Error::FinalOutOfRange {
                state: f,
                num_states: self.num_states,
            });
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.alphabet_size {
                return Err(Error::LabelCount {
                    len: labels.len(),
                    alphabet_size: self.alphabet_size,
                });
            }
        }
        Ok(())
    }

    /// Single transition step.
    pub fn step(&self, q: State, a: Symbol) -> Result<State, Error> {
        if q >= self.num_states {
            return Err(Error::StateOutOfRange {
                state: q,
                num_states: self.num_states,
            });
        }
        if a >= self.alphabet_size {
            return Err(Error::SymbolOutOfRange {
                symbol: a,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(self.delta[q][a])
    }

    /// State reached from `q` by reading `word`.
    pub fn run_from(&self, q: State, word: &[Symbol]) -> Result<State, Error> {
        word.iter().try_fold(q, |state, &a| self.step(state, a))
    }

    /// State reached from the start state by reading `word`. The empty word
    /// returns the start state.
    pub fn run(&self, word: &[Symbol]) -> Result<State, Error> {
        self.run_from(self.start, word)
    }

    /// Whether the DFA accepts `word`.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool, Error> {
        Ok(self.finals.contains(&self.run(word)?))
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals.contains(&q)
    }

    /// All accepted words of length at most `max_len`, in length-then-
    /// lexicographic order.
    ///
    /// Words are generated by breadth-first expansion of a `(word, state)`
    /// frontier, so each word costs one transition rather than a full re-run.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Word> {
        let mut accepted = Vec::new();
        let mut frontier: Vec<(Word, State)> = vec![(Vec::new(), self.start)];
        for len in 0..=max_len {
            for (word, state) in &frontier {
                if self.is_final(*state) {
                    accepted.push(word.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::with_capacity(frontier.len() * self.alphabet_size);
            for (word, state) in &frontier {
                for a in 0..self.alphabet_size {
                    let mut extended = word.clone();
                    extended.push(a);
                    next.push((extended, self.delta[*state][a]));
                }
            }
            frontier = next;
        }
        accepted
    }

    /// Renders a word using the DFA's labels, falling back to the symbol
    /// indices. The empty word renders as `ε`.
    pub fn format_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter()
            .map(|&a| match &self.labels {
                Some(labels) if a < labels.len() => labels[a].clone(),
                _ => a.to_string(),
            })
            .collect()
    }

    /// Parses the shared JSON DFA format and validates the result.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let dfa: Dfa = serde_json::from_str(text)?;
        dfa.validate()?;
        Ok(dfa)
    }

    /// Serializes to the shared JSON DFA format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("DFA serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{binary_witness, unary_cycle_witness};

    fn word(s: &str) -> Word {
        s.chars()
            .map(|c| c.to_digit(10).unwrap() as Symbol)
            .collect()
    }

    #[test]
    fn validate_accepts_two_state_unary_cycle() {
        let d = Dfa::new(1, vec![vec![1], vec![0]], 0, [1]).unwrap();
        assert!(d.validate().is_ok());
    }

    #[test]
    fn validate_rejects_transition_target_out_of_range() {
        let d = Dfa {
            alphabet_size: 1,
            num_states: 2,
            start: 0,
            finals: BTreeSet::new(),
            delta: vec![vec![1], vec![2]],
            labels: None,
        };
        assert!(matches!(
            d.validate(),
            Err(Error::TransitionOutOfRange {
                state: 1,
                target: 2,
                ..
            })
        ));
    }

    #[test]
    fn validate_rejects_final_state_out_of_range() {
        let d = Dfa {
            alphabet_size: 1,
            num_states: 3,
            start: 0,
            finals: [5].into_iter().collect(),
            delta: vec![vec![0], vec![1], vec![2]],
            labels: None,
        };
        assert!(matches!(
            d.validate(),
            Err(Error::FinalOutOfRange {
                state: 5,
                num_states: 3
            })
        ));
    }

    #[test]
    fn validate_rejects_ragged_delta() {
        let d = Dfa {
            alphabet_size: 2,
            num_states: 2,
            start: 0,
            finals: BTreeSet::new(),
            delta: vec![vec![0, 1], vec![0]],
            labels: None,
        };
        assert!(matches!(
            d.validate(),
            Err(Error::RaggedDeltaRow { state: 1, .. })
        ));
    }

    #[test]
    fn validate_rejects_missing_rows() {
        let d = Dfa {
            alphabet_size: 1,
            num_states: 3,
            start: 0,
            finals: BTreeSet::new(),
            delta: vec![vec![0]],
            labels: None,
        };
        assert!(matches!(
            d.validate(),
            Err(Error::DeltaRowCount {
                rows: 1,
                num_states: 3
            })
        ));
    }

    #[test]
    fn step_on_binary_witness() {
        let m = binary_witness(3).unwrap();
        assert_eq!(m.step(1, 0).unwrap(), 0);
        assert_eq!(m.step(0, 0).unwrap(), 0);
        assert_eq!(m.step(2, 1).unwrap(), 0);
        assert!(matches!(m.step(3, 0), Err(Error::StateOutOfRange { .. })));
        assert!(matches!(m.step(0, 2), Err(Error::SymbolOutOfRange { .. })));
    }

    #[test]
    fn run_on_binary_witness() {
        let m = binary_witness(3).unwrap();
        assert_eq!(m.run(&[]).unwrap(), 0);
        assert_eq!(m.run(&word("11")).unwrap(), 2);
        assert_eq!(m.run(&word("110")).unwrap(), 2);
    }

    #[test]
    fn accepts_on_witnesses() {
        let m = binary_witness(3).unwrap();
        assert!(m.accepts(&word("11")).unwrap());
        assert!(!m.accepts(&[]).unwrap());
        let u = unary_cycle_witness(2).unwrap();
        assert!(u.accepts(&word("0")).unwrap());
    }

    #[test]
    fn enumerate_unary_cycle_lengths() {
        let u = unary_cycle_witness(2).unwrap();
        let lengths: Vec<usize> = u.enumerate_language(5).iter().map(Vec::len).collect();
        assert_eq!(lengths, vec![1, 3, 5]);
    }

    #[test]
    fn enumerate_with_no_finals_is_empty() {
        let d = Dfa::new(2, vec![vec![0, 1], vec![1, 0]], 0, []).unwrap();
        assert!(d.enumerate_language(6).is_empty());
    }

    #[test]
    fn enumerate_binary_witness_short_words() {
        // Exhaustive check over the 7 words of length <= 2: only "11" lands
        // on the single final state.
        let m = binary_witness(3).unwrap();
        assert_eq!(m.enumerate_language(2), vec![word("11")]);
    }

    #[test]
    fn json_round_trip() {
        let m = binary_witness(3).unwrap();
        let parsed = Dfa::from_json(&m.to_json()).unwrap();
        assert_eq!(parsed, m);
    }

    #[test]
    fn json_matches_shared_format() {
        let text = r#"{"alphabet_size": 2, "num_states": 3, "start": 0, "finals": [2],
                       "delta": [[0,1],[0,2],[2,0]], "labels": ["0","1"]}"#;
        let d = Dfa::from_json(text).unwrap();
        assert_eq!(d, binary_witness(3).unwrap());
    }

    #[test]
    fn json_rejects_missing_required_field() {
        let text = r#"{"alphabet_size": 1, "num_states": 1, "start": 0, "finals": []}"#;
        assert!(matches!(Dfa::from_json(text), Err(Error::Json(_))));
    }

    #[test]
    fn json_rejects_ragged_delta() {
        let text = r#"{"alphabet_size": 2, "num_states": 2, "start": 0, "finals": [],
                       "delta": [[0,1],[0]]}"#;
        assert!(matches!(
            Dfa::from_json(text),
            Err(Error::RaggedDeltaRow { .. })
        ));
    }

    #[test]
    fn json_rejects_out_of_range_target() {
        let text =
            r#"{"alphabet_size": 1, "num_states": 1, "start": 0, "finals": [], "delta": [[4]]}"#;
        assert!(matches!(
            Dfa::from_json(text),
            Err(Error::TransitionOutOfRange { .. })
        ));
    }

    #[test]
    fn json_ignores_unknown_side_tables() {
        let text = r#"{"alphabet_size": 1, "num_states": 1, "start": 0, "finals": [0],
                       "delta": [[0]], "pair_states": [[0, 0]]}"#;
        assert!(Dfa::from_json(text).is_ok());
    }
}
