//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("automaton must contain at least one state")]
    NoStates,

    #[error("transition table has {rows} rows but num_states is {num_states}")]
    DeltaRowCount { rows: usize, num_states: usize },

    #[error("transition row for state {state} has {len} entries, expected alphabet size {alphabet_size}")]
    RaggedDeltaRow {
        state: usize,
        len: usize,
        alphabet_size: usize,
    },

    #[error("transition target out of range: delta[{state}][{symbol}] = {target} with {num_states} states")]
    TransitionOutOfRange {
        state: usize,
        symbol: usize,
        target: usize,
        num_states: usize,
    },

    #[error("start state {start} out of range for {num_states} states")]
    StartOutOfRange { start: usize, num_states: usize },

    #[error("final state {state} out of range for {num_states} states")]
    FinalOutOfRange { state: usize, num_states: usize },

    #[error("state {state} out of range for {num_states} states")]
    StateOutOfRange { state: usize, num_states: usize },

    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },

    #[error("{len} labels given for alphabet of size {alphabet_size}")]
    LabelCount { len: usize, alphabet_size: usize },

    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("operation requires a unary alphabet, got alphabet size {alphabet_size}")]
    NotUnary { alphabet_size: usize },

    #[error("construction needs {required} states, exceeding the limit of {limit}")]
    StateLimitExceeded { required: usize, limit: usize },

    #[error(
        "second machine has {num_states} states, more than the {max}-bit subset mask can hold"
    )]
    SubsetWidthExceeded { num_states: usize, max: usize },

    #[error("{param} must be at least {min}, got {value}")]
    OutOfRange {
        param: &'static str,
        value: usize,
        min: usize,
    },

    #[error("pair state ({first}, {subset:#b}) is excluded: final first component requires the start of the second machine in the subset")]
    IllegalPairState { first: usize, subset: u64 },

    #[error("arithmetic overflow while computing {context}")]
    ArithmeticOverflow { context: &'static str },

    #[error(
        "tail length {tail} or cycle length {cycle} inconsistent with mu {mu} / lambda {lambda}"
    )]
    LengthSetShape {
        tail: usize,
        cycle: usize,
        mu: usize,
        lambda: usize,
    },

    #[error("cycle must contain at least one state")]
    EmptyCycle,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
