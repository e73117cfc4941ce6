//! Local-Clifford-equivalent graph extraction.
//!
//! Any stabilizer state has a check matrix `A = (Z; X)` (2N x N, one column
//! per generator of the extended set S_1..S_{N-k}, L^z_1..L^z_k). Column
//! recombinations bring the X block to the form `(X_1 | 0)` with `X_1` of
//! full column rank n; choosing n qubit rows that make `X_1l` invertible
//! splits the qubits into left and right nodes. The closed-form
//! recombination
//!
//! ```text
//! J = J_elim . | X1l^-1              0      |
//!              | Z2r^-1 Z1r X1l^-1   Z2r^-1 |
//! ```
//!
//! followed by Hadamards on the right nodes and phase gates on the left
//! nodes with a set diagonal of `C = (Z1l + (X1l^T)^-1 X1r^T Z1r) X1l^-1`
//! turns the check matrix into graph-generator form `(Gamma; I)` with
//!
//! ```text
//! Gamma = | C + diag(C)   B^T |        B = X1r X1l^-1.
//!         | B             0   |
//! ```
//!
//! All pivot choices take the lowest admissible index, so extraction is
//! bit-identical across runs. The constructor re-verifies the generator
//! identity symplectically before returning; phases are never tracked.

use crate::codes::StabilizerCode;
use crate::gf2::{BitMatrix, BitVec, RowBasis};
use crate::pauli::PauliOperator;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("normal form failed: {0}")]
    NormalForm(String),
    #[error("extraction invalid at graph generator {node}: {detail}")]
    Invalid { node: usize, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameDirection {
    PhysicalToGraph,
    GraphToPhysical,
}

/// Check matrix `(Z; X)` of the extended generator set, 2N x N.
/// Rows 0..N hold the Z parts by qubit, rows N..2N the X parts; column `j`
/// is the j-th generator in S_1..S_{N-k}, L^z order.
pub fn build_check_matrix(code: &StabilizerCode) -> BitMatrix {
    let n = code.n();
    let gens: Vec<&PauliOperator> = code.extended_generators().collect();
    let mut a = BitMatrix::zeros(2 * n, n);
    for (j, g) in gens.iter().enumerate() {
        for i in 0..n {
            if g.z_part().get(i) {
                a.set(i, j, true);
            }
            if g.x_part().get(i) {
                a.set(n + i, j, true);
            }
        }
    }
    a
}

/// Result of the column elimination: recombined generators with the X block
/// in `(X_1 | 0)` form, the qubit partition, and the recorded column
/// operations.
#[derive(Debug, Clone)]
pub struct NormalForm {
    /// Rank of the X block; the number of left nodes.
    pub x_rank: usize,
    /// Left qubits (original ids, ascending).
    pub left: Vec<usize>,
    /// Right qubits (original ids, ascending).
    pub right: Vec<usize>,
    /// Recombined generator columns, pivots first.
    pub gens: Vec<PauliOperator>,
    /// N x N column-operation record: `A' = A . j_elim`.
    pub j_elim: BitMatrix,
}

/// Column elimination with lowest-index pivoting. Pivot columns are taken
/// verbatim (in original order); only dependent columns are recombined, so
/// an input already in `(X_1 | 0)` form passes through unchanged.
pub fn normal_form(code: &StabilizerCode) -> Result<NormalForm, ExtractionError> {
    let n = code.n();
    let mut gens: Vec<PauliOperator> = code.extended_generators().cloned().collect();
    debug_assert_eq!(gens.len(), n);

    // recipes[c] = combination of original columns forming current column c
    // (J_elim transposed, maintained row-wise).
    let mut recipes = BitMatrix::identity(n);
    let mut x_basis = RowBasis::new(n, n);
    let mut pivots: Vec<usize> = Vec::new();
    let mut dependents: Vec<usize> = Vec::new();

    for c in 0..n {
        let x = gens[c].x_part().clone();
        match x_basis.express(&x) {
            Some(recipe) => {
                for pi in recipe.ones() {
                    let pivot_col = pivots[pi];
                    let pivot_gen = gens[pivot_col].clone();
                    gens[c].mul_assign(&pivot_gen);
                    recipes.xor_row_into(pivot_col, c);
                }
                debug_assert!(gens[c].x_part().is_zero());
                dependents.push(c);
            }
            None => {
                x_basis.insert(&x);
                pivots.push(c);
            }
        }
    }
    let x_rank = pivots.len();

    // reorder columns: pivots first, dependents after, both in original order
    let order: Vec<usize> = pivots.iter().chain(dependents.iter()).copied().collect();
    let gens: Vec<PauliOperator> = order.iter().map(|&c| gens[c].clone()).collect();
    let recipe_rows: Vec<BitVec> = order.iter().map(|&c| recipes.row(c).clone()).collect();
    let j_elim = BitMatrix::from_rows(recipe_rows).transpose();

    // greedy lowest-index qubit rows making X1l invertible
    let mut row_basis = RowBasis::new(x_rank, n);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for q in 0..n {
        let row = BitVec::from_fn(x_rank, |c| gens[c].x_part().get(q));
        if left.len() < x_rank && row_basis.insert(&row) {
            left.push(q);
        } else {
            right.push(q);
        }
    }
    if left.len() < x_rank {
        return Err(ExtractionError::NormalForm(format!(
            "X block claims rank {x_rank} but only {} independent qubit rows",
            left.len()
        )));
    }
    Ok(NormalForm {
        x_rank,
        left,
        right,
        gens,
        j_elim,
    })
}

/// The extracted equivalent graph: adjacency matrix, total recombination,
/// qubit partition and the per-qubit local Clifford frame. Immutable.
#[derive(Debug, Clone)]
pub struct GraphExtraction {
    n: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    phase_nodes: Vec<usize>,
    gamma: BitMatrix,
    j: BitMatrix,
}

impl GraphExtraction {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn left_nodes(&self) -> &[usize] {
        &self.left
    }

    pub fn right_nodes(&self) -> &[usize] {
        &self.right
    }

    /// Left nodes whose frame carries a phase gate (diag C = 1).
    pub fn phase_nodes(&self) -> &[usize] {
        &self.phase_nodes
    }

    /// Adjacency matrix indexed by original qubit ids.
    pub fn gamma(&self) -> &BitMatrix {
        &self.gamma
    }

    /// Total recombination: rows index the original generators
    /// (S_1..S_{N-k}, L^z), columns index graph nodes (= qubit ids).
    pub fn j_matrix(&self) -> &BitMatrix {
        &self.j
    }

    pub fn is_right(&self, qubit: usize) -> bool {
        self.right.binary_search(&qubit).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.gamma.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// True when no edge joins two left nodes or two right nodes.
    pub fn is_bipartite(&self) -> bool {
        self.edges().iter().all(|&(a, b)| {
            self.is_right(a) != self.is_right(b)
        })
    }

    /// Per-qubit local Clifford frame: Hadamard on right nodes swaps the
    /// x/z bits, the phase gate on phase nodes maps (x, z) to (x, z^x).
    /// Both are symplectically self-inverse, so the two directions apply
    /// the same substitution; weight is preserved.
    pub fn frame_map(&self, p: &PauliOperator, _direction: FrameDirection) -> PauliOperator {
        debug_assert_eq!(p.len(), self.n);
        let mut x = p.x_part().clone();
        let mut z = p.z_part().clone();
        for &q in &self.right {
            let (xb, zb) = (x.get(q), z.get(q));
            x.set(q, zb);
            z.set(q, xb);
        }
        for &q in &self.phase_nodes {
            if x.get(q) {
                z.toggle(q);
            }
        }
        PauliOperator::from_parts(x, z)
    }
}

/// Runs the full extraction and self-verifies before returning.
pub fn extract(code: &StabilizerCode) -> Result<GraphExtraction, ExtractionError> {
    let nf = normal_form(code)?;
    let n = code.n();
    let nr = nf.x_rank;
    let n_right = n - nr;

    let col_ids: Vec<usize> = (0..nr).collect();
    let dep_ids: Vec<usize> = (0..n_right).collect();
    let all_qubits: Vec<usize> = (0..n).collect();

    // X1 (N x nr) and Z1, Z2 blocks of the recombined columns
    let x1 = BitMatrix::from_rows(
        all_qubits
            .iter()
            .map(|&q| BitVec::from_fn(nr, |c| nf.gens[c].x_part().get(q)))
            .collect(),
    );
    let z1 = BitMatrix::from_rows(
        all_qubits
            .iter()
            .map(|&q| BitVec::from_fn(nr, |c| nf.gens[c].z_part().get(q)))
            .collect(),
    );
    let z2 = BitMatrix::from_rows(
        all_qubits
            .iter()
            .map(|&q| BitVec::from_fn(n_right, |c| nf.gens[nr + c].z_part().get(q)))
            .collect(),
    );

    let x1l = x1.submatrix(&nf.left, &col_ids);
    let x1r = x1.submatrix(&nf.right, &col_ids);
    let z1l = z1.submatrix(&nf.left, &col_ids);
    let z1r = z1.submatrix(&nf.right, &col_ids);
    let z2r = z2.submatrix(&nf.right, &dep_ids);

    let err = |what: &str| ExtractionError::NormalForm(what.to_string());
    let x1l_inv = x1l.inverse().map_err(|_| err("X1l not invertible"))?;
    let z2r_inv = z2r.inverse().map_err(|_| err("Z2r not invertible"))?;

    let b = x1r.matmul(&x1l_inv).map_err(|e| err(&e.to_string()))?;
    let c = z1l
        .xor(
            &x1l_inv
                .transpose()
                .matmul(&x1r.transpose())
                .and_then(|m| m.matmul(&z1r))
                .map_err(|e| err(&e.to_string()))?,
        )
        .and_then(|m| m.matmul(&x1l_inv))
        .map_err(|e| err(&e.to_string()))?;

    // Gamma in left||right order: ((C + diag C, B^T), (B, 0))
    let mut gamma_perm = BitMatrix::zeros(n, n);
    for i in 0..nr {
        for j in 0..nr {
            if i != j && c.get(i, j) {
                gamma_perm.set(i, j, true);
            }
        }
        for j in 0..n_right {
            if b.get(j, i) {
                gamma_perm.set(i, nr + j, true);
                gamma_perm.set(nr + j, i, true);
            }
        }
    }

    // J_closed in (pivot, dependent) block order
    let lower_left = z2r_inv
        .matmul(&z1r)
        .and_then(|m| m.matmul(&x1l_inv))
        .map_err(|e| err(&e.to_string()))?;
    let mut j_closed = BitMatrix::zeros(n, n);
    for i in 0..nr {
        for j in 0..nr {
            if x1l_inv.get(i, j) {
                j_closed.set(i, j, true);
            }
        }
    }
    for i in 0..n_right {
        for j in 0..nr {
            if lower_left.get(i, j) {
                j_closed.set(nr + i, j, true);
            }
        }
        for j in 0..n_right {
            if z2r_inv.get(i, j) {
                j_closed.set(nr + i, nr + j, true);
            }
        }
    }
    let j_perm = nf
        .j_elim
        .matmul(&j_closed)
        .map_err(|e| err(&e.to_string()))?;

    // permute graph nodes back to original qubit ids
    let perm: Vec<usize> = nf.left.iter().chain(nf.right.iter()).copied().collect();
    let mut gamma = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if gamma_perm.get(i, j) {
                gamma.set(perm[i], perm[j], true);
            }
        }
    }
    let mut j = BitMatrix::zeros(n, n);
    for g in 0..n {
        for (pos, &orig) in perm.iter().enumerate() {
            if j_perm.get(g, pos) {
                j.set(g, orig, true);
            }
        }
    }

    let phase_nodes: Vec<usize> = (0..nr)
        .filter(|&i| c.get(i, i))
        .map(|i| nf.left[i])
        .collect();
    let mut phase_nodes = phase_nodes;
    phase_nodes.sort_unstable();

    let ext = GraphExtraction {
        n,
        left: nf.left,
        right: nf.right,
        phase_nodes,
        gamma,
        j,
    };
    verify_extraction(code, &ext)?;
    Ok(ext)
}

/// Symplectic re-derivation of every graph generator: the J-recombination
/// of the original generators, pushed through the local Clifford frame,
/// must equal X on the node and Z on its neighborhood. Also re-checks the
/// structural graph invariants.
pub fn verify_extraction(
    code: &StabilizerCode,
    ext: &GraphExtraction,
) -> Result<(), ExtractionError> {
    let n = code.n();
    if !ext.gamma.is_symmetric() {
        return Err(ExtractionError::Invalid {
            node: 0,
            detail: "adjacency matrix not symmetric".into(),
        });
    }
    if !ext.gamma.diagonal_is_zero() {
        return Err(ExtractionError::Invalid {
            node: 0,
            detail: "adjacency matrix has a self-loop".into(),
        });
    }
    if ext.j.rank() != n {
        return Err(ExtractionError::Invalid {
            node: 0,
            detail: "recombination matrix J is singular".into(),
        });
    }
    let gens: Vec<PauliOperator> = code.extended_generators().cloned().collect();
    for node in 0..n {
        let mut acc = PauliOperator::identity(n);
        for (g, gen) in gens.iter().enumerate() {
            if ext.j.get(g, node) {
                acc.mul_assign(gen);
            }
        }
        let mapped = ext.frame_map(&acc, FrameDirection::PhysicalToGraph);
        let expected_x = BitVec::unit(n, node);
        if mapped.x_part() != &expected_x || mapped.z_part() != ext.gamma.row(node) {
            return Err(ExtractionError::Invalid {
                node,
                detail: format!(
                    "got ({}, {}), expected ({}, {})",
                    mapped.x_part(),
                    mapped.z_part(),
                    expected_x,
                    ext.gamma.row(node)
                ),
            });
        }
    }
    if code.is_css() {
        if !ext.phase_nodes.is_empty() {
            return Err(ExtractionError::Invalid {
                node: ext.phase_nodes[0],
                detail: "CSS code produced phase nodes".into(),
            });
        }
        if !ext.is_bipartite() {
            return Err(ExtractionError::Invalid {
                node: 0,
                detail: "CSS code produced a non-bipartite graph".into(),
            });
        }
    }
    Ok(())
}
