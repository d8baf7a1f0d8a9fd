//! Two-state hidden-Markov posterior by brute-force path enumeration.
//!
//! States: 0 = quiet, 1 = active. The chain starts in state 0 with
//! probability one, transitions before each observation, and emits a binary
//! observation per step:
//!
//! ```text
//! P(1 | prev 0) = epsilon      P(0 | prev 1) = delta
//! P(y=1 | state 1) = p_detect  P(y=0 | state 0) = p_reject
//! ```
//!
//! The filtering posterior P(x_t | y_1..y_t) is computed by summing the
//! joint probability of every hidden path of length t — exponential in t, so
//! keep sequences short (<= ~20). No recursion tricks are shared with the
//! implementation this checks.

/// Model parameters for the enumeration.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub epsilon: f64,
    pub delta: f64,
    pub p_detect: f64,
    pub p_reject: f64,
}

fn transition(p: &Params, prev: u8, next: u8) -> f64 {
    match (prev, next) {
        (0, 0) => 1.0 - p.epsilon,
        (0, 1) => p.epsilon,
        (1, 0) => p.delta,
        (1, 1) => 1.0 - p.delta,
        _ => unreachable!("states are binary"),
    }
}

fn emission(p: &Params, state: u8, y: bool) -> f64 {
    match (state, y) {
        (0, false) => p.p_reject,
        (0, true) => 1.0 - p.p_reject,
        (1, true) => p.p_detect,
        (1, false) => 1.0 - p.p_detect,
        _ => unreachable!("states are binary"),
    }
}

/// Filtering posterior [P(x_t = 0 | y_1..t), P(x_t = 1 | y_1..t)] after the
/// last observation, by enumerating all `2^t` hidden paths from the fixed
/// start state 0.
///
/// Returns `None` when every path has probability zero (the observation
/// sequence is impossible under the model).
pub fn posterior_by_enumeration(params: &Params, observations: &[bool]) -> Option<[f64; 2]> {
    let t = observations.len();
    assert!(t >= 1, "need at least one observation");
    assert!(t <= 24, "path enumeration is exponential; keep t small");
    let mut mass = [0.0f64; 2];
    // Each bit of `path` is one hidden state, step 1 in bit 0.
    for path in 0u64..(1u64 << t) {
        let mut prob = 1.0;
        let mut prev = 0u8;
        for (step, &y) in observations.iter().enumerate() {
            let state = ((path >> step) & 1) as u8;
            prob *= transition(params, prev, state) * emission(params, state, y);
            prev = state;
        }
        mass[prev as usize] += prob;
    }
    let total = mass[0] + mass[1];
    if total == 0.0 {
        None
    } else {
        Some([mass[0] / total, mass[1] / total])
    }
}

/// Filtering posterior at every step: element `t-1` is the posterior after
/// observations `y_1..y_t`.
pub fn posterior_trace(params: &Params, observations: &[bool]) -> Vec<Option<[f64; 2]>> {
    (1..=observations.len())
        .map(|t| posterior_by_enumeration(params, &observations[..t]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Params = Params {
        epsilon: 0.1,
        delta: 0.00001,
        p_detect: 0.9,
        p_reject: 0.8,
    };

    #[test]
    fn single_observation_matches_hand_computation() {
        // Paths of length 1 from state 0: stay (0.9) or switch (0.1).
        // y = 1: mass0 = 0.9 * (1 - 0.8) = 0.18, mass1 = 0.1 * 0.9 = 0.09,
        // so P(x=1) = 0.09 / 0.27 = 1/3.
        let post = posterior_by_enumeration(&P, &[true]).unwrap();
        assert!((post[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((post[0] + post[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uninformative_emissions_reduce_to_transition_prior() {
        // With p_detect = p_reject = 0.5 the emission term cancels and the
        // posterior after one step is just the transition distribution.
        let p = Params {
            epsilon: 0.23,
            delta: 0.05,
            p_detect: 0.5,
            p_reject: 0.5,
        };
        let post = posterior_by_enumeration(&p, &[true]).unwrap();
        assert!((post[1] - 0.23).abs() < 1e-15);
    }

    #[test]
    fn two_step_posterior_matches_hand_computation() {
        // y = [1, 1] under P. Four paths from start state 0:
        //   00: 0.9*0.2 * 0.9*0.2         = 0.032400
        //   01: 0.9*0.2 * 0.1*0.9         = 0.016200
        //   10: 0.1*0.9 * 0.00001*0.2     = 0.00000018
        //   11: 0.1*0.9 * 0.99999*0.9     = 0.08099919
        // mass0 = 0.03240018, mass1 = 0.09719919
        let post = posterior_by_enumeration(&P, &[true, true]).unwrap();
        let mass0 = 0.9 * 0.2 * 0.9 * 0.2 + 0.1 * 0.9 * 0.00001 * 0.2;
        let mass1 = 0.9 * 0.2 * 0.1 * 0.9 + 0.1 * 0.9 * 0.99999 * 0.9;
        assert!((post[1] - mass1 / (mass0 + mass1)).abs() < 1e-15);
    }

    #[test]
    fn impossible_observations_return_none() {
        // p_reject = 1 and p_detect = 1 make y = 0 impossible in state 1 and
        // y = 1 impossible in state 0; the sequence [1, 0] then has no path:
        // step 1 y=1 forces state 1, step 2 y=0 forces state 0, but the only
        // way back is the delta transition... which is allowed. Close that
        // door too by setting delta = 0.
        let p = Params {
            epsilon: 0.1,
            delta: 0.0,
            p_detect: 1.0,
            p_reject: 1.0,
        };
        assert!(posterior_by_enumeration(&p, &[true, false]).is_none());
    }

    #[test]
    fn trace_prefix_agrees_with_full_enumeration() {
        let ys = [true, false, true, true, false];
        let trace = posterior_trace(&P, &ys);
        assert_eq!(trace.len(), 5);
        for (t, entry) in trace.iter().enumerate() {
            let direct = posterior_by_enumeration(&P, &ys[..=t]).unwrap();
            let entry = entry.unwrap();
            assert!((entry[1] - direct[1]).abs() < 1e-15);
        }
    }
}
