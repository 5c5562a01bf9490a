//! Witness families with known extremal state complexity, their expected-size
//! formulas, and end-to-end verification drivers.
//!
//! [`binary_witness`] is the binary family whose square needs `n·2ⁿ − 2ⁿ⁻¹`
//! states; [`unary_cycle_witness`] is the unary cycle whose `k`-th power needs
//! `kn − k + 1`. The `verify_*` drivers run the constructions, minimize,
//! compare against the formulas, and cross-check with independent routes.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::concat::{oracle_concat, power_construction, square_construction};
use crate::dfa::{Dfa, DEFAULT_STATE_LIMIT};
use crate::error::Error;
use crate::minimize::{equivalent, isomorphic, minimize};
use crate::unary::{from_length_set, to_length_set, unary_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessFamily {
    BinarySquare,
    UnaryPower,
}

impl WitnessFamily {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessFamily::BinarySquare => "binary_square",
            WitnessFamily::UnaryPower => "unary_power",
        }
    }
}

/// Outcome of one verification cell: construction sizes, the formula value,
/// and whether everything agreed.
///
/// Raw and minimal sizes are carried separately so "no states merge" is
/// visible data rather than a lost intermediate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: WitnessFamily,
    pub n: usize,
    /// Power exponent; 2 for the square family.
    pub k: usize,
    #[serde(rename = "raw")]
    pub raw_states: usize,
    #[serde(rename = "minimal")]
    pub minimal_states: usize,
    #[serde(rename = "expected")]
    pub expected_states: usize,
    pub pass: bool,
    #[serde(rename = "ms", with = "duration_millis")]
    pub elapsed: Duration,
}

mod duration_millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

impl VerificationReport {
    pub fn csv_header() -> &'static str {
        "family,n,k,raw,minimal,expected,pass,ms"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.family.name(),
            self.n,
            self.k,
            self.raw_states,
            self.minimal_states,
            self.expected_states,
            self.pass,
            self.elapsed.as_millis()
        )
    }
}

/// The binary family: states `0..n`, symbol 0 sends 1 to 0 and fixes every
/// other state, symbol 1 is the cycle `i ↦ i+1 mod n`, final state `n−1`.
pub fn binary_witness(n: usize) -> Result<Dfa, Error> {
    if n < 3 {
        return Err(Error::OutOfRange {
            param: "n",
            value: n,
            min: 3,
        });
    }
    let delta = (0..n)
        .map(|i| vec![if i == 1 { 0 } else { i }, (i + 1) % n])
        .collect();
    Ok(Dfa::new(2, delta, 0, [n - 1])?.with_labels(vec!["0".into(), "1".into()]))
}

/// The unary family: a directed `n`-cycle with final state `n−1`, accepting
/// `0^{n−1}(0ⁿ)*`.
pub fn unary_cycle_witness(n: usize) -> Result<Dfa, Error> {
    if n < 2 {
        return Err(Error::OutOfRange {
            param: "n",
            value: n,
            min: 2,
        });
    }
    let delta = (0..n).map(|i| vec![(i + 1) % n]).collect();
    Ok(Dfa::new(1, delta, 0, [n - 1])?.with_labels(vec!["0".into()]))
}

/// `n·2ⁿ − 2ⁿ⁻¹`, the minimal DFA size for the square of [`binary_witness`].
pub fn expected_square_states(n: usize) -> Result<usize, Error> {
    if n < 3 {
        return Err(Error::OutOfRange {
            param: "n",
            value: n,
            min: 3,
        });
    }
    let overflow = Error::ArithmeticOverflow {
        context: "expected square size n·2^n − 2^(n−1)",
    };
    if n >= usize::BITS as usize {
        return Err(overflow);
    }
    let pow = 1usize << n;
    n.checked_mul(pow)
        .and_then(|v| v.checked_sub(pow / 2))
        .ok_or(overflow)
}

/// `kn − k + 1`, the minimal DFA size for the `k`-th power of
/// [`unary_cycle_witness`].
pub fn expected_unary_power_states(n: usize, k: usize) -> Result<usize, Error> {
    if n < 2 {
        return Err(Error::OutOfRange {
            param: "n",
            value: n,
            min: 2,
        });
    }
    if k < 2 {
        return Err(Error::OutOfRange {
            param: "k",
            value: k,
            min: 2,
        });
    }
    k.checked_mul(n)
        .and_then(|v| v.checked_add(1))
        .and_then(|v| v.checked_sub(k))
        .ok_or(Error::ArithmeticOverflow {
            context: "expected unary power size kn − k + 1",
        })
}

/// Runs the square pipeline for the binary family: construct, minimize,
/// compare with [`expected_square_states`]. For `n ≤ 6` the language is also
/// cross-checked against the subset-construction oracle.
pub fn verify_square(n: usize) -> Result<VerificationReport, Error> {
    let clock = Instant::now();
    let m = binary_witness(n)?;
    let expected = expected_square_states(n)?;
    let raw = square_construction(&m, DEFAULT_STATE_LIMIT)?;
    let minimal = minimize(&raw.dfa);
    let mut pass = minimal.num_states == expected;
    if n <= 6 {
        let oracle = oracle_concat(&m, &m, DEFAULT_STATE_LIMIT)?;
        pass = pass && equivalent(&minimal, &oracle)?;
    }
    Ok(VerificationReport {
        family: WitnessFamily::BinarySquare,
        n,
        k: 2,
        raw_states: raw.dfa.num_states,
        minimal_states: minimal.num_states,
        expected_states: expected,
        pass,
        elapsed: clock.elapsed(),
    })
}

/// Runs the power pipeline for the unary family along two independent
/// routes — iterated construction plus minimization, and length-set
/// arithmetic — and demands they agree with each other and with
/// [`expected_unary_power_states`].
pub fn verify_unary(n: usize, k: usize) -> Result<VerificationReport, Error> {
    let clock = Instant::now();
    let m = unary_cycle_witness(n)?;
    let expected = expected_unary_power_states(n, k)?;
    let power = power_construction(&m, k, DEFAULT_STATE_LIMIT)?;
    let minimal = minimize(&power);
    let arithmetic = from_length_set(&unary_power(&to_length_set(&m)?, k)?);
    let pass = minimal.num_states == expected
        && arithmetic.num_states == expected
        && isomorphic(&minimal, &arithmetic);
    Ok(VerificationReport {
        family: WitnessFamily::UnaryPower,
        n,
        k,
        raw_states: power.num_states,
        minimal_states: minimal.num_states,
        expected_states: expected,
        pass,
        elapsed: clock.elapsed(),
    })
}
