//! Metropolis transition test with an adaptive temperature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Tuning of the temperature schedule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TransitionParams {
    pub t_init: f64,
    /// Consecutive rejections before the temperature doubles.
    pub n_fail_max: u32,
    /// Temperature ceiling as a multiple of `t_init`.
    pub t_cap_factor: f64,
}

impl Default for TransitionParams {
    fn default() -> Self {
        Self {
            t_init: 1.0,
            n_fail_max: 10,
            t_cap_factor: 10.0,
        }
    }
}

impl TransitionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_init > 0.0 && self.t_init.is_finite()) {
            return Err(Error::Config(format!("t_init {} must be > 0", self.t_init)));
        }
        if self.n_fail_max == 0 {
            return Err(Error::Config("n_fail_max must be >= 1".into()));
        }
        if !(self.t_cap_factor >= 1.0) {
            return Err(Error::Config(format!(
                "t_cap_factor {} must be >= 1",
                self.t_cap_factor
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct TransitionState {
    pub temperature: f64,
    pub t_init: f64,
    /// Cost normalizer `K`.
    pub k: f64,
    pub n_fail: u32,
    n_fail_max: u32,
    t_max: f64,
    cost_lo: f64,
    cost_hi: f64,
}

impl TransitionState {
    /// `k` is the mean state cost at start and goal.
    pub fn new(params: &TransitionParams, k: f64) -> Result<Self> {
        params.validate()?;
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Config(format!("cost normalizer {k} must be > 0")));
        }
        Ok(Self {
            temperature: params.t_init,
            t_init: params.t_init,
            k,
            n_fail: 0,
            n_fail_max: params.n_fail_max,
            t_max: params.t_init * params.t_cap_factor,
            cost_lo: f64::INFINITY,
            cost_hi: f64::NEG_INFINITY,
        })
    }

    /// Widens the running cost range with a newly seen state cost.
    pub fn observe(&mut self, cost: f64) {
        self.cost_lo = self.cost_lo.min(cost);
        self.cost_hi = self.cost_hi.max(cost);
    }

    /// `max - min` over observed costs, zero before two distinct costs.
    pub fn cost_range(&self) -> f64 {
        if self.cost_hi >= self.cost_lo {
            self.cost_hi - self.cost_lo
        } else {
            0.0
        }
    }
}

/// Accepts every move that does not raise the state cost. An uphill move is
/// accepted with probability `exp(-dc / (K T))`; accepting one cools the
/// temperature, repeated rejections heat it.
pub fn transition_test(
    ts: &mut TransitionState,
    c_from: f64,
    c_to: f64,
    rng: &mut RngStream,
) -> bool {
    ts.observe(c_from);
    ts.observe(c_to);
    let dc = c_to - c_from;
    if dc <= 0.0 {
        return true;
    }
    let p = (-dc / (ts.k * ts.temperature)).exp();
    if rng.uniform() < p {
        // range >= dc > 0 since both endpoints were observed
        let cooled = ts.temperature / 2f64.powf(dc / ts.cost_range());
        ts.temperature = cooled.max(ts.t_init * 1e-6);
        ts.n_fail = 0;
        true
    } else {
        ts.n_fail += 1;
        if ts.n_fail >= ts.n_fail_max {
            ts.temperature = (ts.temperature * 2.0).min(ts.t_max);
            ts.n_fail = 0;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(t: f64) -> TransitionState {
        TransitionState::new(
            &TransitionParams {
                t_init: t,
                ..Default::default()
            },
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn downhill_always_accepted() {
        let mut ts = state(1e-3);
        let mut rng = RngStream::new(4);
        for i in 0..1000 {
            let c = 1.0 + i as f64;
            assert!(transition_test(&mut ts, c + 1.0, c, &mut rng));
            assert!(transition_test(&mut ts, c, c, &mut rng));
        }
        assert_eq!(ts.temperature, 1e-3);
    }

    #[test]
    fn acceptance_rate_is_exp_minus_one() {
        let mut rng = RngStream::new(7);
        let n = 100_000;
        let mut acc = 0;
        for _ in 0..n {
            let mut ts = state(1.0);
            if transition_test(&mut ts, 1.0, 2.0, &mut rng) {
                acc += 1;
            }
        }
        let f = acc as f64 / n as f64;
        assert!((f - (-1.0f64).exp()).abs() < 0.01, "rate {f}");
    }

    #[test]
    fn hot_temperature_accepts_everything() {
        let mut rng = RngStream::new(8);
        let mut ts = state(1e12);
        for _ in 0..1000 {
            assert!(transition_test(&mut ts, 1.0, 10.0, &mut rng));
            ts.temperature = 1e12;
        }
    }

    #[test]
    fn rejections_heat_up_to_the_cap() {
        let mut rng = RngStream::new(9);
        let mut ts = state(1e-6);
        for _ in 0..10_000 {
            transition_test(&mut ts, 1.0, 10.0, &mut rng);
            assert!(ts.temperature <= 1e-5 + 1e-18);
        }
        assert!(ts.temperature > 1e-6);
    }

    #[test]
    fn uphill_accept_cools_with_floor() {
        let mut rng = RngStream::new(10);
        let mut ts = state(1.0);
        ts.observe(1.0);
        ts.observe(3.0);
        // force acceptance with a huge temperature, then check the cooling
        ts.temperature = 1e9;
        assert!(transition_test(&mut ts, 1.0, 2.0, &mut rng));
        assert!((ts.temperature - 1e9 / 2f64.powf(0.5)).abs() < 1e-3);
        ts.temperature = 1e-6;
        ts.k = 1e12;
        assert!(transition_test(&mut ts, 1.0, 3.0, &mut rng));
        assert_eq!(ts.temperature, 1e-6);
    }

    #[test]
    fn params_validation() {
        assert!(TransitionParams::default().validate().is_ok());
        let bad = TransitionParams {
            t_init: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = TransitionParams {
            n_fail_max: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
