use super::ConsistencyError;

/// Parameters of the proper-learning sample bound for a class of Cliffords
/// built from `d`-local gates on an interaction graph of degree `Δ` with
/// at most `Γ` gates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LearningParameters {
    pub d: u32,
    pub delta: u32,
    pub gamma: u32,
    pub epsilon: f64,
    pub failure_probability: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl LearningParameters {
    /// CNOT circuits on `n ≥ 2` qubits: two-qubit gates, `Δ = ⌈log₂ n⌉`,
    /// `Γ = n²`, with `ε = δ = 0.1`, `α = 0`, `β = 1/2`.
    pub fn cnot_defaults(n: u32) -> Self {
        Self {
            d: 2,
            delta: n.max(2).next_power_of_two().trailing_zeros(),
            gamma: n * n,
            epsilon: 0.1,
            failure_probability: 0.1,
            alpha: 0.0,
            beta: 0.5,
        }
    }

    fn validate(&self) -> Result<(), ConsistencyError> {
        let bad = |msg: &str| Err(ConsistencyError::InvalidParameters(msg.into()));
        if self.d < 2 {
            return bad("d must be at least 2");
        }
        if self.delta < 1 || self.gamma < 1 {
            return bad("delta and gamma must be positive");
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad("epsilon must lie in (0, 1)");
        }
        if !(self.failure_probability > 0.0 && self.failure_probability < 1.0) {
            return bad("delta (failure probability) must lie in (0, 1)");
        }
        if !(self.alpha >= 0.0 && self.alpha < 1.0 && self.beta > self.alpha && self.beta <= 1.0) {
            return bad("need 0 <= alpha < beta <= 1");
        }
        Ok(())
    }
}

/// [`sample_complexity`] at [`LearningParameters::cnot_defaults`]`(8)`.
pub const CNOT_N8_SAMPLES: u64 = 595_911_952;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleComplexity {
    /// Value of the bound before rounding.
    pub value: f64,
    pub samples: u64,
}

/// `m = (1/ε) · (Δ d⁴ Γ² log Δ · log²(Δ d⁴ Γ² log Γ / ((β − α) ε)) + log(1/δ))`
/// with all hidden constants set to 1 and natural logarithms.
pub fn sample_complexity(p: &LearningParameters) -> Result<SampleComplexity, ConsistencyError> {
    p.validate()?;
    let (d, delta, gamma) = (f64::from(p.d), f64::from(p.delta), f64::from(p.gamma));
    let core = delta * d.powi(4) * gamma.powi(2);
    let inner = core * gamma.ln() / ((p.beta - p.alpha) * p.epsilon);
    let log_inner = inner.max(1.0).ln();
    let value = (core * delta.ln() * log_inner.powi(2) + (1.0 / p.failure_probability).ln()) / p.epsilon;
    Ok(SampleComplexity {
        value,
        samples: value.ceil() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnot_defaults_at_eight_qubits() {
        let p = LearningParameters::cnot_defaults(8);
        assert_eq!((p.d, p.delta, p.gamma), (2, 3, 64));
        assert_eq!(sample_complexity(&p).unwrap().samples, CNOT_N8_SAMPLES);
    }

    #[test]
    fn monotone_in_gamma() {
        let p = LearningParameters::cnot_defaults(8);
        let doubled = LearningParameters { gamma: 2 * p.gamma, ..p };
        assert!(sample_complexity(&doubled).unwrap().value > sample_complexity(&p).unwrap().value);
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut p = LearningParameters::cnot_defaults(8);
        p.beta = 0.0;
        assert!(sample_complexity(&p).is_err());
        p = LearningParameters::cnot_defaults(8);
        p.epsilon = 1.0;
        assert!(sample_complexity(&p).is_err());
    }
}
