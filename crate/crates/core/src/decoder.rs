//! Bounded-distance decoding over graph cosets.
//!
//! Every Pauli error with graph syndrome `alpha` lies in the coset
//! `{(mu, mu Gamma (+) alpha)}` over all N-bit strings `mu`, so `(0, alpha)`
//! is always an available correction and decoding never fails. The decoder
//! enumerates `mu` supports of increasing Hamming weight `q` up to the
//! target bound `T` (member weight is never below `w[mu]`, so the search
//! stops as soon as the best weight reaches `q`), does this for every
//! logical-syndrome branch, and returns the lightest member mapped back to
//! the physical frame.
//!
//! Two graph-structural optimizations cut the candidate pool: *pruning*
//! keeps only nodes within the first `min(T, w[alpha])` feed-forward layers
//! rooted at the syndrome, and *structured sampling* requires the occupied
//! layers of a support to form a contiguous prefix of the layers available
//! to the pool. Both are validated against the unoptimized search by the
//! test suite.

use crate::codes::StabilizerCode;
use crate::comb::for_each_support;
use crate::extraction::{FrameDirection, GraphExtraction};
use crate::gf2::{BitMatrix, BitVec};
use crate::pauli::{symplectic_product, PauliKind, PauliOperator};
use crate::syndrome::{alpha_from_gamma, concat_gamma, measure_beta};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecoderError {
    #[error("decode_css requires a CSS code")]
    NotCss,
    #[error("error and correction have different stabilizer syndromes")]
    SyndromeMismatch,
}

/// Decoder settings. `target_weight` is the BDD bound T; the default for a
/// code is its correction radius t = (d-1)/2.
#[derive(Debug, Clone, Copy)]
pub struct DecodeConfig {
    pub target_weight: usize,
    pub prune: bool,
    pub structured: bool,
    /// None resolves to `code.is_css()` at decode time.
    pub css_fastpath: Option<bool>,
    /// Forces T = N, recovering maximum-likelihood (non-degenerate) decoding.
    pub exhaustive_mld: bool,
}

impl DecodeConfig {
    pub fn bdd(target_weight: usize) -> Self {
        Self {
            target_weight,
            prune: true,
            structured: true,
            css_fastpath: None,
            exhaustive_mld: false,
        }
    }

    pub fn auto_for(code: &StabilizerCode) -> Self {
        Self::bdd(code.t())
    }

    pub fn mld() -> Self {
        Self {
            target_weight: usize::MAX,
            prune: true,
            structured: true,
            css_fastpath: None,
            exhaustive_mld: true,
        }
    }

    fn effective_t(&self, n: usize) -> usize {
        if self.exhaustive_mld {
            n
        } else {
            self.target_weight.min(n)
        }
    }
}

/// Feed-forward layering of a graph rooted at a syndrome.
///
/// Layer 1 holds the syndrome nodes and their neighbors; each later layer
/// holds the neighbors of the previous layer together with *their*
/// neighbors, minus everything already assigned. Nodes with no path to a
/// syndrome node never appear.
#[derive(Debug, Clone)]
pub struct Ffn {
    layers: Vec<Vec<usize>>,
    layer_of: Vec<Option<usize>>,
}

impl Ffn {
    /// Layers in order; `layers()[m]` is layer m+1.
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// 1-based layer index of a node, if it appears at all.
    pub fn layer_of(&self, node: usize) -> Option<usize> {
        self.layer_of[node]
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

/// Builds the full FFN (until exhaustion); empty for the zero syndrome.
pub fn build_ffn(gamma: &BitMatrix, alpha: &BitVec) -> Ffn {
    use std::collections::BTreeSet;
    let n = alpha.len();
    let mut layer_of: Vec<Option<usize>> = vec![None; n];
    let mut layers: Vec<Vec<usize>> = Vec::new();

    let mut first: BTreeSet<usize> = alpha.ones().collect();
    for i in alpha.ones() {
        first.extend(gamma.row(i).ones());
    }
    let mut current: Vec<usize> = first.into_iter().collect();
    while !current.is_empty() {
        let idx = layers.len() + 1;
        for &node in &current {
            layer_of[node] = Some(idx);
        }
        layers.push(current.clone());

        let mut hop1: BTreeSet<usize> = BTreeSet::new();
        for &i in &current {
            hop1.extend(gamma.row(i).ones());
        }
        let mut candidates = hop1.clone();
        for &j in &hop1 {
            candidates.extend(gamma.row(j).ones());
        }
        current = candidates
            .into_iter()
            .filter(|&node| layer_of[node].is_none())
            .collect();
    }
    Ffn { layers, layer_of }
}

/// The coset member `(mu, mu Gamma (+) alpha)` in the graph frame.
pub fn coset_member(gamma: &BitMatrix, alpha: &BitVec, mu: &BitVec) -> PauliOperator {
    let mut z = gamma.vecmul(mu);
    z.xor_assign(alpha);
    PauliOperator::from_parts(mu.clone(), z)
}

/// Result of a coset-minimum search. `member` is in the graph frame;
/// `bounded` is set when the `(0, alpha)` fallback was returned with weight
/// above the search bound.
#[derive(Debug, Clone)]
pub struct CosetMin {
    pub mu: BitVec,
    pub member: PauliOperator,
    pub weight: usize,
    pub bounded: bool,
    pub explored: u64,
}

/// Minimum-weight coset member within the BDD bound. Total: when nothing
/// lighter than `(0, alpha)` is found, that fallback is returned.
pub fn coset_minimum(gamma: &BitMatrix, alpha: &BitVec, cfg: &DecodeConfig) -> CosetMin {
    coset_search(gamma, alpha, cfg, None)
}

/// Like [`coset_minimum`] but with the candidate pool restricted by a node
/// filter (used by the CSS half-decodes).
fn coset_search(
    gamma: &BitMatrix,
    alpha: &BitVec,
    cfg: &DecodeConfig,
    pool_filter: Option<&dyn Fn(usize) -> bool>,
) -> CosetMin {
    let n = alpha.len();
    let t = cfg.effective_t(n);
    let w_alpha = alpha.count_ones();

    let mut best_mu = BitVec::zeros(n);
    let mut best_weight = w_alpha;
    let mut fallback_won = true;
    let mut explored: u64 = 0;

    if w_alpha > 0 {
        let q_cap = t.min(w_alpha);

        // candidate pool, ordered layer-major when structured
        let ffn = (cfg.prune || cfg.structured).then(|| build_ffn(gamma, alpha));
        let admitted = |node: usize| pool_filter.is_none_or(|f| f(node));
        let pool: Vec<usize> = match &ffn {
            Some(ffn) if cfg.prune => {
                let max_layer = q_cap.min(ffn.layers().len());
                let mut nodes: Vec<usize> = ffn.layers()[..max_layer]
                    .iter()
                    .flatten()
                    .copied()
                    .filter(|&v| admitted(v))
                    .collect();
                if cfg.structured {
                    nodes.sort_by_key(|&v| (ffn.layer_of(v), v));
                } else {
                    nodes.sort_unstable();
                }
                nodes
            }
            Some(ffn) if cfg.structured => {
                let mut nodes: Vec<usize> = (0..n)
                    .filter(|&v| ffn.layer_of(v).is_some() && admitted(v))
                    .collect();
                nodes.sort_by_key(|&v| (ffn.layer_of(v), v));
                nodes
            }
            _ => (0..n).filter(|&v| admitted(v)).collect(),
        };

        // layer indices available to the pool, for the prefix rule
        let candidate_layers: Vec<usize> = match (&ffn, cfg.structured) {
            (Some(ffn), true) => {
                let mut ls: Vec<usize> = pool
                    .iter()
                    .filter_map(|&v| ffn.layer_of(v))
                    .collect();
                ls.sort_unstable();
                ls.dedup();
                ls
            }
            _ => Vec::new(),
        };

        let mut nu = BitVec::zeros(n);
        let mut support_layers: Vec<usize> = Vec::new();
        for q in 1..=q_cap {
            if best_weight <= q {
                break;
            }
            if q > pool.len() {
                break;
            }
            for_each_support(pool.len(), q, |positions| {
                if best_weight <= q {
                    return;
                }
                if cfg.structured {
                    let ffn = ffn.as_ref().unwrap();
                    support_layers.clear();
                    support_layers.extend(
                        positions
                            .iter()
                            .filter_map(|&p| ffn.layer_of(pool[p])),
                    );
                    support_layers.sort_unstable();
                    support_layers.dedup();
                    if support_layers.as_slice()
                        != &candidate_layers[..support_layers.len().min(candidate_layers.len())]
                    {
                        return;
                    }
                }
                nu.clone_from(alpha);
                for &p in positions {
                    nu.xor_assign(gamma.row(pool[p]));
                }
                explored += 1;
                // weight of (mu, nu) = |supp(nu)| + nodes of mu not in supp(nu)
                let mut weight = nu.count_ones();
                for &p in positions {
                    if !nu.get(pool[p]) {
                        weight += 1;
                    }
                }
                if weight < best_weight {
                    best_weight = weight;
                    best_mu = BitVec::zeros(n);
                    for &p in positions {
                        best_mu.set(pool[p], true);
                    }
                    fallback_won = false;
                }
            });
        }
    }

    let member = coset_member(gamma, alpha, &best_mu);
    debug_assert_eq!(member.weight(), best_weight);
    CosetMin {
        mu: best_mu,
        member,
        weight: best_weight,
        bounded: fallback_won && w_alpha > t,
        explored,
    }
}

/// Decoder output. The correction is in the physical frame and always
/// conforms to the input stabilizer syndrome.
#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub correction: PauliOperator,
    pub weight: usize,
    /// Numeric value of the winning logical-syndrome branch.
    pub branch: u64,
    /// (branch, coset-minimum weight) for every branch evaluated.
    pub branch_weights: Vec<(u64, usize)>,
    pub explored: u64,
    pub bounded: bool,
}

/// Full decode: searches every logical-syndrome branch and keeps the
/// global minimum, ties broken toward the smallest branch value. When the
/// CSS fast path applies (automatic for CSS codes) each branch is solved
/// on the two bipartite halves instead of the full graph, shrinking the
/// candidate pool to one partition side per half.
pub fn decode(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    beta: &BitVec,
    cfg: &DecodeConfig,
) -> DecodeResult {
    assert_eq!(beta.len(), code.n() - code.k(), "syndrome length");
    let fastpath = cfg.css_fastpath.unwrap_or(code.is_css()) && code.is_css();
    if fastpath {
        return split_branch_decode(code, ext, beta, cfg);
    }

    let k = code.k();
    let mut best: Option<(u64, CosetMin)> = None;
    let mut branch_weights = Vec::new();
    let mut explored = 0;
    for bt in 0..(1u64 << k) {
        let beta_tilde = BitVec::from_decimal_msb_first(bt, k);
        let gamma_vec = concat_gamma(beta, &beta_tilde);
        let alpha = alpha_from_gamma(ext, &gamma_vec);
        let cm = coset_minimum(ext.gamma(), &alpha, cfg);
        explored += cm.explored;
        branch_weights.push((bt, cm.weight));
        let better = match &best {
            None => true,
            Some((_, b)) => cm.weight < b.weight,
        };
        if better {
            best = Some((bt, cm));
        }
    }
    let (branch, cm) = best.expect("at least one branch");
    let correction = ext.frame_map(&cm.member, FrameDirection::GraphToPhysical);
    debug_assert_eq!(&measure_beta(code, &correction), beta);
    DecodeResult {
        weight: correction.weight(),
        correction,
        branch,
        branch_weights,
        explored,
        bounded: cm.bounded,
    }
}

/// CSS-specialized decode; see [`decode`] for the generic entry point.
/// Requires a CSS code.
pub fn decode_css(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    beta: &BitVec,
    cfg: &DecodeConfig,
) -> Result<DecodeResult, DecoderError> {
    if !code.is_css() {
        return Err(DecoderError::NotCss);
    }
    assert_eq!(beta.len(), code.n() - code.k(), "syndrome length");
    Ok(split_branch_decode(code, ext, beta, cfg))
}

/// Bipartite split decode. On a CSS graph, X-type physical errors light
/// only right-side graph syndrome bits and map to x-support on left nodes
/// (and vice versa for Z-type errors), so each branch syndrome splits into
/// two independent half-problems whose candidate pool is a single
/// partition side. The logical-syndrome branches shift only the right half
/// (the extended generator L^z is Z-type), so identical half-problems are
/// solved once and reused. Halves are multiplied into one correction per
/// branch and the lightest branch wins, ties toward the smaller value.
fn split_branch_decode(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    beta: &BitVec,
    cfg: &DecodeConfig,
) -> DecodeResult {
    let n = code.n();
    let k = code.k();
    let is_right: Vec<bool> = (0..n).map(|q| ext.is_right(q)).collect();
    let left_pool = |q: usize| !is_right[q];
    let right_pool = |q: usize| is_right[q];

    let mut half_cache: std::collections::HashMap<(bool, BitVec), CosetMin> =
        std::collections::HashMap::new();
    let mut explored_total = 0u64;
    let mut best: Option<(u64, PauliOperator, usize, bool)> = None;
    let mut branch_weights = Vec::new();

    for bt in 0..(1u64 << k) {
        let beta_tilde = BitVec::from_decimal_msb_first(bt, k);
        let gamma_vec = concat_gamma(beta, &beta_tilde);
        let alpha = alpha_from_gamma(ext, &gamma_vec);
        let alpha_right = BitVec::from_fn(n, |q| alpha.get(q) && is_right[q]);
        let alpha_left = BitVec::from_fn(n, |q| alpha.get(q) && !is_right[q]);

        let mut solve = |on_right_syndrome: bool, alpha_half: BitVec| -> CosetMin {
            let key = (on_right_syndrome, alpha_half.clone());
            if let Some(hit) = half_cache.get(&key) {
                return hit.clone();
            }
            let filter: &dyn Fn(usize) -> bool = if on_right_syndrome {
                &left_pool
            } else {
                &right_pool
            };
            let cm = coset_search(ext.gamma(), &alpha_half, cfg, Some(filter));
            explored_total += cm.explored;
            half_cache.insert(key, cm.clone());
            cm
        };
        let half_x = solve(true, alpha_right);
        let half_z = solve(false, alpha_left);

        let combined = half_x.member.product(&half_z.member);
        let weight = combined.weight();
        branch_weights.push((bt, weight));
        let bounded = half_x.bounded || half_z.bounded;
        let better = match &best {
            None => true,
            Some((_, _, w, _)) => weight < *w,
        };
        if better {
            best = Some((bt, combined, weight, bounded));
        }
    }

    let (branch, member, weight, bounded) = best.expect("at least one branch");
    let correction = ext.frame_map(&member, FrameDirection::GraphToPhysical);
    debug_assert_eq!(&measure_beta(code, &correction), beta);
    debug_assert_eq!(correction.weight(), weight);
    DecodeResult {
        correction,
        weight,
        branch,
        branch_weights,
        explored: explored_total,
        bounded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Found(PauliOperator),
    AtLeast(usize),
}

impl OracleResult {
    pub fn weight(&self) -> Option<usize> {
        match self {
            OracleResult::Found(p) => Some(p.weight()),
            OracleResult::AtLeast(_) => None,
        }
    }
}

/// Brute-force non-degenerate MLD reference: enumerates Pauli operators by
/// increasing weight (supports in lexicographic order, {X, Y, Z}
/// assignments) and returns the first one matching the stabilizer
/// syndrome. Shares nothing with the graph machinery.
pub fn oracle_decode(code: &StabilizerCode, beta: &BitVec, w_max: usize) -> OracleResult {
    let n = code.n();
    if beta.is_zero() {
        return OracleResult::Found(PauliOperator::identity(n));
    }
    let kinds = [PauliKind::X, PauliKind::Y, PauliKind::Z];
    for q in 1..=w_max.min(n) {
        let mut found: Option<PauliOperator> = None;
        for_each_support(n, q, |support| {
            if found.is_some() {
                return;
            }
            let mut assignment = vec![0usize; q];
            loop {
                let mut op = PauliOperator::identity(n);
                for (pos, &qubit) in support.iter().enumerate() {
                    op.set(qubit, kinds[assignment[pos]]);
                }
                if &measure_beta(code, &op) == beta {
                    found = Some(op);
                    return;
                }
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
        if let Some(op) = found {
            return OracleResult::Found(op);
        }
    }
    OracleResult::AtLeast(w_max + 1)
}

/// Degeneracy-aware success test: the residual `error . correction` causes
/// a logical error exactly when it anticommutes with some logical operator
/// (equivalently, lies outside the stabilizer group).
pub fn is_logical_error(
    code: &StabilizerCode,
    error: &PauliOperator,
    correction: &PauliOperator,
) -> Result<bool, DecoderError> {
    if measure_beta(code, error) != measure_beta(code, correction) {
        return Err(DecoderError::SyndromeMismatch);
    }
    let residual = error.product(correction);
    debug_assert!(code
        .stabilizers()
        .iter()
        .all(|s| !symplectic_product(&residual, s)));
    let logical = code
        .logical_z()
        .iter()
        .chain(code.logical_x())
        .any(|l| symplectic_product(&residual, l));
    Ok(logical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;
    use crate::extraction::extract;
    use crate::syndrome::measure_all;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn all_errors_of_weight(n: usize, q: usize) -> Vec<PauliOperator> {
        let kinds = [PauliKind::X, PauliKind::Y, PauliKind::Z];
        let mut out = Vec::new();
        for_each_support(n, q, |support| {
            let mut assignment = vec![0usize; q];
            loop {
                let mut op = PauliOperator::identity(n);
                for (pos, &qubit) in support.iter().enumerate() {
                    op.set(qubit, kinds[assignment[pos]]);
                }
                out.push(op);
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
        out
    }

    #[test]
    fn coset_member_baseline_and_unit() {
        let ext = extract(&builtin("five_qubit").unwrap()).unwrap();
        let alpha = BitVec::from_bit_str("10110").unwrap();
        let zero = BitVec::zeros(5);
        let base = coset_member(ext.gamma(), &alpha, &zero);
        assert_eq!(base.x_part(), &zero);
        assert_eq!(base.z_part(), &alpha);

        let e2 = BitVec::unit(5, 2);
        let m = coset_member(ext.gamma(), &BitVec::zeros(5), &e2);
        assert_eq!(m.x_part(), &e2);
        assert_eq!(m.z_part(), ext.gamma().row(2));
        assert!(m.weight() >= 1);
    }

    #[test]
    fn coset_member_weight_bounded_below_by_mu() {
        let ext = extract(&builtin("noncss11").unwrap()).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..500 {
            let alpha = BitVec::from_fn(11, |_| rng.gen::<bool>());
            let mu = BitVec::from_fn(11, |_| rng.gen::<bool>());
            let member = coset_member(ext.gamma(), &alpha, &mu);
            assert!(member.weight() >= mu.count_ones());
        }
    }

    #[test]
    fn ffn_empty_for_zero_syndrome() {
        let ext = extract(&builtin("five_qubit").unwrap()).unwrap();
        let ffn = build_ffn(ext.gamma(), &BitVec::zeros(5));
        assert!(ffn.is_empty());
    }

    #[test]
    fn ffn_first_layer_is_syndrome_plus_neighbors() {
        let ext = extract(&builtin("five_qubit").unwrap()).unwrap();
        let alpha = BitVec::unit(5, 3);
        let ffn = build_ffn(ext.gamma(), &alpha);
        let mut expected: Vec<usize> = ext.gamma().row(3).ones().collect();
        expected.push(3);
        expected.sort_unstable();
        assert_eq!(ffn.layers()[0], expected);
        // every node sits in exactly one layer
        let mut seen = [0usize; 5];
        for layer in ffn.layers() {
            for &v in layer {
                seen[v] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c <= 1));
    }

    #[test]
    fn ffn_skips_disconnected_nodes() {
        // path 0-1-2 plus isolated node 3
        let gamma = BitMatrix::from_int_rows(&[
            &[0, 1, 0, 0],
            &[1, 0, 1, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, 0],
        ]);
        let ffn = build_ffn(&gamma, &BitVec::unit(4, 0));
        assert!(ffn.layer_of(3).is_none());
        assert!(ffn.layer_of(2).is_some());
    }

    /// Exhaustive reference: minimum weight over all 2^N mu.
    fn brute_coset_minimum(gamma: &BitMatrix, alpha: &BitVec) -> usize {
        let n = alpha.len();
        let mut best = usize::MAX;
        for bits in 0..(1u64 << n) {
            let mu = BitVec::from_fn(n, |i| (bits >> i) & 1 == 1);
            best = best.min(coset_member(gamma, alpha, &mu).weight());
        }
        best
    }

    #[test]
    fn coset_minimum_matches_brute_force_on_five_qubit_graph() {
        let ext = extract(&builtin("five_qubit").unwrap()).unwrap();
        let cfg = DecodeConfig::mld();
        for a in 0..32u64 {
            let alpha = BitVec::from_decimal_msb_first(a, 5);
            let cm = coset_minimum(ext.gamma(), &alpha, &cfg);
            assert_eq!(cm.weight, brute_coset_minimum(ext.gamma(), &alpha), "alpha {a}");
            assert_eq!(cm.member.weight(), cm.weight);
        }
    }

    #[test]
    fn coset_minimum_trivial_cases() {
        let ext = extract(&builtin("steane").unwrap()).unwrap();
        let cfg = DecodeConfig::bdd(1);
        let zero = coset_minimum(ext.gamma(), &BitVec::zeros(7), &cfg);
        assert_eq!(zero.weight, 0);
        assert!(!zero.bounded);
        for i in 0..7 {
            let cm = coset_minimum(ext.gamma(), &BitVec::unit(7, i), &cfg);
            assert_eq!(cm.weight, 1, "node {i}");
            assert!(!cm.bounded);
        }
    }

    #[test]
    fn decode_zero_syndrome_is_identity() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let r = decode(&code, &ext, &BitVec::zeros(4), &DecodeConfig::auto_for(&code));
        assert!(r.correction.is_identity());
        assert_eq!(r.weight, 0);
        assert_eq!(r.branch, 0);
    }

    #[test]
    fn decode_beta_1001_is_weight_one_and_degenerate_with_z4() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let beta = BitVec::from_bit_str("1001").unwrap();
        let r = decode(&code, &ext, &beta, &DecodeConfig::auto_for(&code));
        assert_eq!(r.weight, 1);
        let z4 = PauliOperator::single(5, 3, PauliKind::Z);
        assert_eq!(is_logical_error(&code, &z4, &r.correction), Ok(false));
    }

    #[test]
    fn decode_matches_oracle_on_all_five_qubit_syndromes() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let cfg = DecodeConfig::mld();
        for b in 0..16u64 {
            let beta = BitVec::from_decimal_msb_first(b, 4);
            let decoded = decode(&code, &ext, &beta, &cfg);
            let oracle = oracle_decode(&code, &beta, 5);
            assert_eq!(Some(decoded.weight), oracle.weight(), "beta {b}");
        }
    }

    #[test]
    fn decode_weight_monotone_in_target() {
        let code = builtin("noncss11").unwrap();
        let ext = extract(&code).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let beta = BitVec::from_fn(10, |_| rng.gen::<bool>());
            let mut prev = usize::MAX;
            for t in [0usize, 1, 2, 3, 11] {
                let r = decode(&code, &ext, &beta, &DecodeConfig::bdd(t));
                assert!(r.weight <= prev, "T={t}");
                prev = r.weight;
            }
        }
    }

    #[test]
    fn optimizations_do_not_change_weights() {
        for name in ["five_qubit", "noncss11", "steane"] {
            let code = builtin(name).unwrap();
            let ext = extract(&code).unwrap();
            let nk = code.n() - code.k();
            let mut rng = StdRng::seed_from_u64(7);
            for _ in 0..200 {
                let beta = BitVec::from_fn(nk, |_| rng.gen::<bool>());
                let mut weights = Vec::new();
                for (prune, structured) in [(true, true), (true, false), (false, true), (false, false)] {
                    let mut cfg = DecodeConfig::auto_for(&code);
                    cfg.prune = prune;
                    cfg.structured = structured;
                    cfg.css_fastpath = Some(false);
                    weights.push(decode(&code, &ext, &beta, &cfg).weight);
                }
                assert!(
                    weights.windows(2).all(|w| w[0] == w[1]),
                    "{name} beta={beta} weights={weights:?}"
                );
            }
        }
    }

    /// Every coset member of weight w has its mu-support inside the first
    /// w FFN layers; checked exhaustively on the two smallest codes.
    #[test]
    fn ffn_containment_exhaustive() {
        for name in ["five_qubit", "steane"] {
            let code = builtin(name).unwrap();
            let ext = extract(&code).unwrap();
            let n = code.n();
            for a in 0..(1u64 << n) {
                let alpha = BitVec::from_decimal_msb_first(a, n);
                if alpha.is_zero() {
                    continue;
                }
                let ffn = build_ffn(ext.gamma(), &alpha);
                for m in 0..(1u64 << n) {
                    let mu = BitVec::from_fn(n, |i| (m >> i) & 1 == 1);
                    if mu.is_zero() {
                        continue;
                    }
                    let w = coset_member(ext.gamma(), &alpha, &mu).weight();
                    for node in mu.ones() {
                        let layer = ffn.layer_of(node);
                        assert!(
                            layer.is_some() && layer.unwrap() <= w,
                            "{name}: alpha={a} mu-node {node} in layer {layer:?} but weight {w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decode_css_rejects_non_css() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        assert_eq!(
            decode_css(&code, &ext, &BitVec::zeros(4), &DecodeConfig::auto_for(&code)).unwrap_err(),
            DecoderError::NotCss
        );
    }

    #[test]
    fn decode_css_zero_syndrome() {
        let code = builtin("steane").unwrap();
        let ext = extract(&code).unwrap();
        let r = decode_css(&code, &ext, &BitVec::zeros(6), &DecodeConfig::auto_for(&code)).unwrap();
        assert!(r.correction.is_identity());
    }

    #[test]
    fn css_x_errors_light_only_one_side() {
        let code = builtin("steane").unwrap();
        let ext = extract(&code).unwrap();
        for q in 0..7 {
            let e = PauliOperator::single(7, q, PauliKind::X);
            let s = measure_all(&code, &ext, &e);
            let sides: Vec<bool> = s.alpha.ones().map(|v| ext.is_right(v)).collect();
            assert!(
                sides.iter().all(|&r| r) || sides.iter().all(|&r| !r),
                "qubit {q}: syndrome straddles the partition"
            );
        }
    }

    #[test]
    fn decode_css_matches_decode_on_weight_one_errors() {
        let code = builtin("steane").unwrap();
        let ext = extract(&code).unwrap();
        let cfg = DecodeConfig::auto_for(&code);
        let mut full = cfg;
        full.css_fastpath = Some(false);
        for e in all_errors_of_weight(7, 1) {
            let beta = measure_beta(&code, &e);
            let a = decode(&code, &ext, &beta, &full);
            let b = decode_css(&code, &ext, &beta, &cfg).unwrap();
            assert_eq!(a.weight, b.weight, "error {e}");
            assert_eq!(is_logical_error(&code, &e, &b.correction), Ok(false));
        }
    }

    /// On a CSS code, the branch matching the error's own logical syndrome
    /// attains the global minimum for every correctable-weight error, and
    /// the opposite branch costs at least d - t (it must absorb a logical
    /// operator). Skipping the branch minimization entirely is therefore
    /// only sound for errors with a trivial logical syndrome.
    #[test]
    fn css_branch_of_error_attains_minimum() {
        let code = builtin("steane").unwrap();
        let ext = extract(&code).unwrap();
        let mut cfg = DecodeConfig::auto_for(&code);
        cfg.css_fastpath = Some(false);
        let t = code.t();
        let d = code.d();
        for e in all_errors_of_weight(7, 1) {
            let beta = measure_beta(&code, &e);
            let bt = crate::syndrome::measure_beta_tilde(&code, &e).to_decimal_msb_first();
            let r = decode(&code, &ext, &beta, &cfg);
            let w_own = r.branch_weights.iter().find(|(b, _)| *b == bt).unwrap().1;
            let w_other = r.branch_weights.iter().find(|(b, _)| *b != bt).unwrap().1;
            assert_eq!(w_own, r.weight, "error {e}");
            assert!(w_own <= t, "error {e}");
            assert!(w_other >= d - t, "error {e}: other branch {w_other}");
        }
    }

    #[test]
    fn oracle_examples() {
        let code = builtin("five_qubit").unwrap();
        assert_eq!(
            oracle_decode(&code, &BitVec::zeros(4), 2),
            OracleResult::Found(PauliOperator::identity(5))
        );
        let beta = BitVec::from_bit_str("1001").unwrap();
        assert_eq!(oracle_decode(&code, &beta, 3).weight(), Some(1));

        let noncss11 = builtin("noncss11").unwrap();
        let mut e = PauliOperator::identity(11);
        e.set(2, PauliKind::Y);
        e.set(8, PauliKind::X);
        let beta = measure_beta(&noncss11, &e);
        let w = oracle_decode(&noncss11, &beta, 2).weight().unwrap();
        assert!(w <= 2);
    }

    #[test]
    fn logical_error_predicate() {
        let code = builtin("five_qubit").unwrap();
        let e = PauliOperator::single(5, 1, PauliKind::Y);
        assert_eq!(is_logical_error(&code, &e, &e), Ok(false));
        let with_logical = e.product(&code.logical_x()[0]);
        assert_eq!(is_logical_error(&code, &e, &with_logical), Ok(true));
        let with_stabilizer = e.product(&code.stabilizers()[0]);
        assert_eq!(is_logical_error(&code, &e, &with_stabilizer), Ok(false));
        let mismatched = PauliOperator::single(5, 0, PauliKind::X);
        assert_eq!(
            is_logical_error(&code, &e, &mismatched),
            Err(DecoderError::SyndromeMismatch)
        );
    }

    #[test]
    fn bdd_guarantee_weight_one_on_five_qubit() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let cfg = DecodeConfig::bdd(1);
        for e in all_errors_of_weight(5, 1) {
            let beta = measure_beta(&code, &e);
            let r = decode(&code, &ext, &beta, &cfg);
            assert_eq!(is_logical_error(&code, &e, &r.correction), Ok(false), "{e}");
        }
    }
}
