//! Dense `2^n × 2^n` reference simulation.
//!
//! Everything here works with explicit complex matrices and shares no code
//! with the symbolic stabilizer routines, so the two can check each other.
//! Qubit 0 is the most significant tensor factor.

use ndarray::{linalg::kron, Array2};
use num_complex::Complex64;

use crate::circuit::Gate;
use crate::pauli::PauliOperator;
use crate::stabilizer::{StabilizerError, StabilizerState};

pub const MAX_DENSE_QUBITS: usize = 10;

pub type Matrix = Array2<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_size(n: usize) -> Result<(), StabilizerError> {
    if n > MAX_DENSE_QUBITS {
        return Err(StabilizerError::TooManyQubits {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn single(name: char) -> Matrix {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let entries = match name {
        'I' => [l, o, o, l],
        'X' => [o, l, l, o],
        'Y' => [o, -i, i, o],
        'Z' => [l, o, o, -l],
        'H' => [h, h, h, -h],
        'P' => [l, o, o, i],
        '0' => [l, o, o, o],
        '1' => [o, o, o, l],
        _ => unreachable!("unknown single-qubit matrix {name}"),
    };
    Array2::from_shape_vec((2, 2), entries.to_vec()).expect("2x2")
}

fn tensor(factors: impl IntoIterator<Item = Matrix>) -> Matrix {
    factors
        .into_iter()
        .fold(Array2::from_elem((1, 1), c(1.0, 0.0)), |acc, f| kron(&acc, &f))
}

pub fn identity(n: usize) -> Matrix {
    Array2::eye(1 << n)
}

pub fn pauli_matrix(p: &PauliOperator) -> Result<Matrix, StabilizerError> {
    check_size(p.num_qubits())?;
    let m = tensor((0..p.num_qubits()).map(|i| {
        single(match (p.x_bits().get(i), p.z_bits().get(i)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        })
    }));
    Ok(if p.is_negative() { -m } else { m })
}

/// `ρ = ∏_i (I + g_i)/2`, which equals `2^{-n} Σ_{g ∈ G} g`.
pub fn state_matrix(rho: &StabilizerState) -> Result<Matrix, StabilizerError> {
    let n = rho.num_qubits();
    check_size(n)?;
    let id = identity(n);
    let mut acc = id.clone();
    for g in rho.generators() {
        let proj = (&id + &pauli_matrix(g)?) * c(0.5, 0.0);
        acc = acc.dot(&proj);
    }
    Ok(acc)
}

fn trace(m: &Matrix) -> Complex64 {
    m.diag().sum()
}

/// `tr[(I + P)/2 · ρ]` by explicit matrix arithmetic.
pub fn dense_expectation_oracle(
    rho: &StabilizerState,
    p: &PauliOperator,
) -> Result<f64, StabilizerError> {
    if p.num_qubits() != rho.num_qubits() {
        return Err(StabilizerError::DimensionMismatch {
            expected: rho.num_qubits(),
            found: p.num_qubits(),
        });
    }
    let e = (&identity(p.num_qubits()) + &pauli_matrix(p)?) * c(0.5, 0.0);
    let t = trace(&e.dot(&state_matrix(rho)?));
    debug_assert!(t.im.abs() < 1e-9);
    Ok(t.re)
}

pub fn gate_unitary(n: usize, g: &Gate) -> Result<Matrix, StabilizerError> {
    check_size(n)?;
    let on = |a: usize, name: char| tensor((0..n).map(|i| single(if i == a { name } else { 'I' })));
    Ok(match *g {
        Gate::X(a) => on(a, 'X'),
        Gate::Z(a) => on(a, 'Z'),
        Gate::H(a) => on(a, 'H'),
        Gate::P(a) => on(a, 'P'),
        Gate::Cnot { control, target } => {
            let idle = tensor((0..n).map(|i| single(if i == control { '0' } else { 'I' })));
            let flip = tensor((0..n).map(|i| {
                single(if i == control {
                    '1'
                } else if i == target {
                    'X'
                } else {
                    'I'
                })
            }));
            idle + flip
        }
    })
}

/// Product of the gate unitaries, first gate applied first.
pub fn circuit_unitary(n: usize, gates: &[Gate]) -> Result<Matrix, StabilizerError> {
    let mut u = identity(n);
    for g in gates {
        u = gate_unitary(n, g)?.dot(&u);
    }
    Ok(u)
}

pub fn adjoint(m: &Matrix) -> Matrix {
    m.t().mapv(|z| z.conj())
}

/// The signed Pauli equal to `m`, if there is one, found by scanning all
/// `4^n` candidates.
pub fn as_pauli(m: &Matrix, n: usize) -> Result<Option<PauliOperator>, StabilizerError> {
    check_size(n)?;
    let dim = (1u64 << n) as f64;
    for code in 0..1u64 << (2 * n) {
        let x = crate::f2::BitVector::from_u64(n, code & ((1 << n) - 1));
        let z = crate::f2::BitVector::from_u64(n, code >> n);
        let candidate = PauliOperator::new(false, x, z)?;
        let overlap = trace(&pauli_matrix(&candidate)?.dot(m)) / dim;
        if (overlap - c(1.0, 0.0)).norm() < 1e-9 {
            return Ok(Some(candidate));
        }
        if (overlap + c(1.0, 0.0)).norm() < 1e-9 {
            return Ok(Some(candidate.negated()));
        }
    }
    Ok(None)
}

/// `tr[(I + P)/2 · U ρ U†]` with `U` built from the gate list.
pub fn dense_circuit_expectation(
    n: usize,
    gates: &[Gate],
    rho: &StabilizerState,
    p: &PauliOperator,
) -> Result<f64, StabilizerError> {
    let u = circuit_unitary(n, gates)?;
    let evolved = u.dot(&state_matrix(rho)?).dot(&adjoint(&u));
    let e = (&identity(n) + &pauli_matrix(p)?) * c(0.5, 0.0);
    Ok(trace(&e.dot(&evolved)).re)
}

/// `U P U†` computed densely and converted back to a Pauli.
pub fn dense_conjugate(
    n: usize,
    gates: &[Gate],
    p: &PauliOperator,
) -> Result<Option<PauliOperator>, StabilizerError> {
    let u = circuit_unitary(n, gates)?;
    as_pauli(&u.dot(&pauli_matrix(p)?).dot(&adjoint(&u)), n)
}
