//! Stabilizer, logical and graph syndromes of Pauli errors.
//!
//! Syndrome bit 1 means anticommutation (measurement outcome -1). The graph
//! syndrome can be reached two ways: algebraically as `alpha = gamma . J`
//! from the concatenated stabilizer/logical syndrome, or directly by
//! frame-mapping the error onto the graph and reading `mu Gamma (+) nu`.
//! The two paths agreeing for every error is the module's core consistency
//! theorem and is enforced by the test suite.

use crate::codes::StabilizerCode;
use crate::extraction::{FrameDirection, GraphExtraction};
use crate::gf2::BitVec;
use crate::pauli::{symplectic_product, PauliOperator};

/// All syndromes of one error against one code/extraction pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeSet {
    /// Stabilizer syndrome, N-k bits.
    pub beta: BitVec,
    /// Logical syndrome, k bits (decoding-internal; never measured).
    pub beta_tilde: BitVec,
    /// Total syndrome `beta || beta_tilde`, N bits.
    pub gamma: BitVec,
    /// Graph syndrome, N bits.
    pub alpha: BitVec,
}

/// Bit j = anticommutation of the error with stabilizer S_j.
pub fn measure_beta(code: &StabilizerCode, error: &PauliOperator) -> BitVec {
    BitVec::from_fn(code.n() - code.k(), |j| {
        symplectic_product(error, &code.stabilizers()[j])
    })
}

/// Bit j = anticommutation of the error with logical Z_j.
pub fn measure_beta_tilde(code: &StabilizerCode, error: &PauliOperator) -> BitVec {
    BitVec::from_fn(code.k(), |j| {
        symplectic_product(error, &code.logical_z()[j])
    })
}

/// Concatenation in generator order: stabilizer bits then logical bits.
pub fn concat_gamma(beta: &BitVec, beta_tilde: &BitVec) -> BitVec {
    beta.concat(beta_tilde)
}

/// `alpha = gamma . J` (row vector times the total recombination matrix).
pub fn alpha_from_gamma(ext: &GraphExtraction, gamma: &BitVec) -> BitVec {
    ext.j_matrix().vecmul(gamma)
}

/// Frame-maps the error to the graph side as `(mu, nu)` and returns
/// `mu Gamma (+) nu`.
pub fn alpha_direct(ext: &GraphExtraction, error: &PauliOperator) -> BitVec {
    let graph_err = ext.frame_map(error, FrameDirection::PhysicalToGraph);
    let mut alpha = ext.gamma().vecmul(graph_err.x_part());
    alpha.xor_assign(graph_err.z_part());
    alpha
}

/// Computes every syndrome of `error` in one call.
pub fn measure_all(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    error: &PauliOperator,
) -> SyndromeSet {
    let beta = measure_beta(code, error);
    let beta_tilde = measure_beta_tilde(code, error);
    let gamma = concat_gamma(&beta, &beta_tilde);
    let alpha = alpha_from_gamma(ext, &gamma);
    SyndromeSet {
        beta,
        beta_tilde,
        gamma,
        alpha,
    }
}

/// Parses the CLI syndrome format: a '0'/'1' string of the expected length,
/// most-significant (first generator) first.
pub fn parse_syndrome(text: &str, expected_len: usize) -> Result<BitVec, String> {
    let v = BitVec::from_bit_str(text.trim())
        .ok_or_else(|| format!("syndrome must be a string of 0/1, got '{text}'"))?;
    if v.len() != expected_len {
        return Err(format!(
            "syndrome has {} bits, expected {expected_len}",
            v.len()
        ));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;
    use crate::comb::for_each_support;
    use crate::extraction::extract;
    use crate::gf2::BitMatrix;
    use crate::pauli::{PauliKind, PauliOperator};

    #[test]
    fn beta_of_z4_error_is_1001() {
        let code = builtin("five_qubit").unwrap();
        let z4 = PauliOperator::single(5, 3, PauliKind::Z);
        assert_eq!(measure_beta(&code, &z4).to_bit_string(), "1001");
    }

    #[test]
    fn beta_of_x5_error_is_0011() {
        let code = builtin("five_qubit").unwrap();
        let x5 = PauliOperator::single(5, 4, PauliKind::X);
        assert_eq!(measure_beta(&code, &x5).to_bit_string(), "0011");
    }

    #[test]
    fn identity_has_zero_syndromes() {
        let code = builtin("noncss11").unwrap();
        let id = PauliOperator::identity(11);
        assert!(measure_beta(&code, &id).is_zero());
        assert!(measure_beta_tilde(&code, &id).is_zero());
    }

    #[test]
    fn beta_tilde_examples() {
        let code = builtin("five_qubit").unwrap();
        // sigma^z_4 against L^z = YYIXI: anticommute on qubit 4
        let z4 = PauliOperator::single(5, 3, PauliKind::Z);
        assert_eq!(measure_beta_tilde(&code, &z4).to_bit_string(), "1");
        // sigma^x_5: L^z has no support on qubit 5
        let x5 = PauliOperator::single(5, 4, PauliKind::X);
        assert_eq!(measure_beta_tilde(&code, &x5).to_bit_string(), "0");
    }

    #[test]
    fn alpha_from_gamma_against_reference_j() {
        // hand multiplication of (1,0,0,1,1) against the worked-example J
        let reference_j = BitMatrix::from_int_rows(&[
            &[1, 0, 1, 0, 0],
            &[1, 1, 1, 1, 0],
            &[0, 0, 1, 0, 0],
            &[1, 0, 1, 1, 0],
            &[1, 0, 0, 1, 1],
        ]);
        let gamma_vec = BitVec::from_bit_str("10011").unwrap();
        assert_eq!(reference_j.vecmul(&gamma_vec).to_bit_string(), "10001");
    }

    #[test]
    fn alpha_from_gamma_is_linear_in_unit_vectors() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        assert!(alpha_from_gamma(&ext, &BitVec::zeros(5)).is_zero());
        for j in 0..5 {
            let e_j = BitVec::unit(5, j);
            assert_eq!(alpha_from_gamma(&ext, &e_j), *ext.j_matrix().row(j));
        }
    }

    #[test]
    fn graph_frame_unit_errors() {
        // in the graph frame, sigma^z_i flips only generator i and
        // sigma^x_i flips exactly the neighborhood of i
        let code = builtin("steane").unwrap();
        let ext = extract(&code).unwrap();
        for i in 0..7 {
            let z_graph = PauliOperator::single(7, i, PauliKind::Z);
            let z_phys = ext.frame_map(&z_graph, FrameDirection::GraphToPhysical);
            assert_eq!(alpha_direct(&ext, &z_phys), BitVec::unit(7, i));
            let x_graph = PauliOperator::single(7, i, PauliKind::X);
            let x_phys = ext.frame_map(&x_graph, FrameDirection::GraphToPhysical);
            assert_eq!(alpha_direct(&ext, &x_phys), *ext.gamma().row(i));
        }
    }

    #[test]
    fn cross_path_identity_exhaustive_weight_two() {
        for name in ["five_qubit", "steane", "noncss11"] {
            let code = builtin(name).unwrap();
            let ext = extract(&code).unwrap();
            let n = code.n();
            let kinds = [PauliKind::X, PauliKind::Y, PauliKind::Z];
            for q in 1..=2usize {
                for_each_support(n, q, |support| {
                    let mut assignment = vec![0usize; q];
                    loop {
                        let mut e = PauliOperator::identity(n);
                        for (pos, &qubit) in support.iter().enumerate() {
                            e.set(qubit, kinds[assignment[pos]]);
                        }
                        let s = measure_all(&code, &ext, &e);
                        assert_eq!(alpha_direct(&ext, &e), s.alpha, "{name} {e}");
                        let mut pos = 0;
                        loop {
                            if pos == q {
                                return;
                            }
                            assignment[pos] += 1;
                            if assignment[pos] < 3 {
                                break;
                            }
                            assignment[pos] = 0;
                            pos += 1;
                        }
                    }
                });
            }
        }
    }

    #[test]
    fn syndromes_are_linear_and_stabilizer_invariant() {
        let code = builtin("noncss11").unwrap();
        let ext = extract(&code).unwrap();
        let e1 = PauliOperator::single(11, 2, PauliKind::Y);
        let e2 = PauliOperator::single(11, 7, PauliKind::X);
        let prod = e1.product(&e2);
        let s1 = measure_all(&code, &ext, &e1);
        let s2 = measure_all(&code, &ext, &e2);
        let sp = measure_all(&code, &ext, &prod);
        assert_eq!(sp.beta, s1.beta.xor(&s2.beta));
        assert_eq!(sp.alpha, s1.alpha.xor(&s2.alpha));

        // multiplying by a stabilizer leaves beta unchanged
        let shifted = prod.product(&code.stabilizers()[4]);
        assert_eq!(measure_beta(&code, &shifted), sp.beta);
        // multiplying by logical X_j flips beta_tilde bit j
        let flipped = prod.product(&code.logical_x()[0]);
        assert_eq!(
            measure_beta_tilde(&code, &flipped).get(0),
            !sp.beta_tilde.get(0)
        );
    }

    #[test]
    fn parse_syndrome_checks_length_and_alphabet() {
        assert_eq!(
            parse_syndrome("1001", 4).unwrap(),
            BitVec::from_bit_str("1001").unwrap()
        );
        assert!(parse_syndrome("10a1", 4).is_err());
        assert!(parse_syndrome("101", 4).is_err());
    }
}
