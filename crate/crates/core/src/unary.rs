//! Unary-language machinery: tail/cycle shape of unary DFAs, eventually
//! periodic length sets, and their sumset arithmetic.
//!
//! A unary language is just a set of word lengths, so concatenation is the
//! sumset. The sumset of two eventually periodic sets is again eventually
//! periodic with cycle `lcm(λ₁,λ₂)` and tail `μ₁ + μ₂ + lcm(λ₁,λ₂) − 1`;
//! [`unary_concat`] computes the result inside that frame and leaves it
//! uncanonicalized so the frame sizes stay observable. [`from_length_set`]
//! does the canonicalization and always yields the minimal DFA.

use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::Error;
use crate::minimize::trim;

/// Tail/cycle size of a connected unary DFA: `mu` states before the cycle,
/// `lambda` states on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChrobakSize {
    pub lambda: usize,
    pub mu: usize,
}

impl ChrobakSize {
    pub fn total(&self) -> usize {
        self.lambda + self.mu
    }
}

/// A unary language as a set of word lengths: a finite tail bitmap of length
/// `mu`, then a repeating cycle bitmap of length `lambda ≥ 1`. Length
/// `mu + j` is in the set iff `cycle[j mod lambda]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLengthSet", into = "RawLengthSet")]
pub struct EventuallyPeriodicSet {
    tail: Vec<bool>,
    cycle: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawLengthSet {
    mu: usize,
    lambda: usize,
    tail: Vec<bool>,
    cycle: Vec<bool>,
}

impl From<EventuallyPeriodicSet> for RawLengthSet {
    fn from(s: EventuallyPeriodicSet) -> Self {
        RawLengthSet {
            mu: s.tail.len(),
            lambda: s.cycle.len(),
            tail: s.tail,
            cycle: s.cycle,
        }
    }
}

impl TryFrom<RawLengthSet> for EventuallyPeriodicSet {
    type Error = Error;

    fn try_from(raw: RawLengthSet) -> Result<Self, Error> {
        if raw.mu != raw.tail.len() || raw.lambda != raw.cycle.len() {
            return Err(Error::LengthSetShape {
                tail: raw.tail.len(),
                cycle: raw.cycle.len(),
                mu: raw.mu,
                lambda: raw.lambda,
            });
        }
        EventuallyPeriodicSet::new(raw.tail, raw.cycle)
    }
}

impl EventuallyPeriodicSet {
    pub fn new(tail: Vec<bool>, cycle: Vec<bool>) -> Result<Self, Error> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(EventuallyPeriodicSet { tail, cycle })
    }

    /// The empty set: no tail, all-zero one-state cycle.
    pub fn empty() -> Self {
        EventuallyPeriodicSet {
            tail: Vec::new(),
            cycle: vec![false],
        }
    }

    pub fn mu(&self) -> usize {
        self.tail.len()
    }

    pub fn lambda(&self) -> usize {
        self.cycle.len()
    }

    pub fn tail(&self) -> &[bool] {
        &self.tail
    }

    pub fn cycle(&self) -> &[bool] {
        &self.cycle
    }

    /// Whether length `t` is in the set.
    pub fn contains(&self, t: usize) -> bool {
        if t < self.tail.len() {
            self.tail[t]
        } else {
            self.cycle[(t - self.tail.len()) % self.cycle.len()]
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.tail.iter().chain(self.cycle.iter()).any(|&b| b)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("length-set serialization cannot fail")
    }
}

/// Tail and cycle lengths of the unique successor path from the start state.
pub fn chrobak_size(d: &Dfa) -> Result<ChrobakSize, Error> {
    if d.alphabet_size != 1 {
        return Err(Error::NotUnary {
            alphabet_size: d.alphabet_size,
        });
    }
    let mut first_visit = vec![usize::MAX; d.num_states];
    let mut q = d.start;
    let mut step = 0;
    while first_visit[q] == usize::MAX {
        first_visit[q] = step;
        q = d.delta[q][0];
        step += 1;
    }
    let mu = first_visit[q];
    Ok(ChrobakSize {
        lambda: step - mu,
        mu,
    })
}

/// The length set of a unary DFA: finality read along the path for the tail
/// bits, then around the cycle.
pub fn to_length_set(d: &Dfa) -> Result<EventuallyPeriodicSet, Error> {
    let t = trim(d);
    let size = chrobak_size(&t)?;
    let mut bits = Vec::with_capacity(size.total());
    let mut q = t.start;
    for _ in 0..size.total() {
        bits.push(t.is_final(q));
        q = t.delta[q][0];
    }
    let cycle = bits.split_off(size.mu);
    EventuallyPeriodicSet::new(bits, cycle)
}

/// The minimal unary DFA for a length set.
///
/// Canonicalizes first (primitive cycle period, then the tail shrunk while
/// its last bit agrees with the cycle bit for that position) and lays the
/// result out as a tail feeding a cycle. The output never loses to its own
/// minimization.
pub fn from_length_set(s: &EventuallyPeriodicSet) -> Dfa {
    let mut cycle = s.cycle().to_vec();
    let period = primitive_period(&cycle);
    cycle.truncate(period);
    let mut tail = s.tail().to_vec();
    // Dropping the last tail bit shifts the cycle's phase back by one, so
    // the bit must match the cycle's last slot.
    while tail.last() == cycle.last() && !tail.is_empty() {
        tail.pop();
        cycle.rotate_right(1);
    }

    let mu = tail.len();
    let lambda = cycle.len();
    let num_states = mu + lambda;
    let delta: Vec<Vec<usize>> = (0..num_states)
        .map(|q| vec![if q + 1 < num_states { q + 1 } else { mu }])
        .collect();
    let finals = tail
        .iter()
        .chain(cycle.iter())
        .enumerate()
        .filter(|&(_, &b)| b)
        .map(|(q, _)| q)
        .collect();
    Dfa {
        alphabet_size: 1,
        num_states,
        start: 0,
        finals,
        delta,
        labels: Some(vec!["0".to_string()]),
    }
}

/// Smallest `d` dividing `cycle.len()` such that the cycle bits are
/// invariant under rotation by `d`.
fn primitive_period(cycle: &[bool]) -> usize {
    let n = cycle.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (0..n).all(|j| cycle[j] == cycle[(j + d) % n]))
        .expect("the full length is always a period")
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn checked_lcm(a: usize, b: usize) -> Result<usize, Error> {
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::ArithmeticOverflow {
            context: "lcm of cycle lengths",
        })
}

/// The sumset `{a + b : a ∈ s1, b ∈ s2}` inside its guaranteed frame:
/// cycle `lcm(λ₁,λ₂)`, tail `μ₁ + μ₂ + lcm(λ₁,λ₂) − 1`. Bits are computed
/// by exact convolution of memberships; the frame may be non-canonical.
pub fn unary_concat(
    s1: &EventuallyPeriodicSet,
    s2: &EventuallyPeriodicSet,
) -> Result<EventuallyPeriodicSet, Error> {
    let lambda = checked_lcm(s1.lambda(), s2.lambda())?;
    let mu = s1
        .mu()
        .checked_add(s2.mu())
        .and_then(|v| v.checked_add(lambda - 1))
        .ok_or(Error::ArithmeticOverflow {
            context: "tail length of a sumset frame",
        })?;
    let extent = mu.checked_add(lambda).ok_or(Error::ArithmeticOverflow {
        context: "frame size of a sumset",
    })?;
    let mut bits = vec![false; extent];
    for (t, bit) in bits.iter_mut().enumerate() {
        *bit = (0..=t).any(|a| s1.contains(a) && s2.contains(t - a));
    }
    let cycle = bits.split_off(mu);
    EventuallyPeriodicSet::new(bits, cycle)
}

/// The `k`-fold sumset by left-fold over [`unary_concat`]; `k = 1` returns
/// the set unchanged.
pub fn unary_power(s: &EventuallyPeriodicSet, k: usize) -> Result<EventuallyPeriodicSet, Error> {
    if k < 1 {
        return Err(Error::OutOfRange {
            param: "k",
            value: k,
            min: 1,
        });
    }
    let mut acc = s.clone();
    for _ in 2..=k {
        acc = unary_concat(&acc, s)?;
    }
    Ok(acc)
}

/// Frame size of the `k`-th power of a unary DFA of the given size:
/// `(λ, kμ + (k−1)λ − k + 1)`, so `kn − k + 1` states in total.
pub fn unary_power_size(size: ChrobakSize, k: usize) -> Result<ChrobakSize, Error> {
    if k < 2 {
        return Err(Error::OutOfRange {
            param: "k",
            value: k,
            min: 2,
        });
    }
    let overflow = Error::ArithmeticOverflow {
        context: "unary power frame size",
    };
    // kμ + (k−1)λ − k + 1; λ ≥ 1 keeps the running value non-negative.
    let mu = k
        .checked_mul(size.mu)
        .and_then(|v| v.checked_add((k - 1).checked_mul(size.lambda)?))
        .and_then(|v| v.checked_add(1))
        .and_then(|v| v.checked_sub(k))
        .ok_or(overflow)?;
    Ok(ChrobakSize {
        lambda: size.lambda,
        mu,
    })
}
