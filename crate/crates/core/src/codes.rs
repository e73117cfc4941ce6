//! Stabilizer-code data model, validation, the built-in code registry, and
//! generators for the triangular color and rotated surface code families.

use crate::comb::for_each_support;
use crate::gf2::{binomial, BitMatrix, BitVec, RowBasis};
use crate::pauli::{pauli_parse_n, PauliKind, PauliOperator};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("expected {expected} {what}, found {found}")]
    WrongCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("operator {which}[{index}] acts on {found} qubits, expected {expected}")]
    WrongLength {
        which: &'static str,
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("stabilizers {i} and {j} anticommute")]
    Commutation { i: usize, j: usize },
    #[error("stabilizer {stabilizer} anticommutes with logical {kind}[{logical}]")]
    LogicalCommutation {
        stabilizer: usize,
        kind: &'static str,
        logical: usize,
    },
    #[error("logical pairing violated between {a}[{i}] and {b}[{j}]")]
    LogicalPairing {
        a: &'static str,
        i: usize,
        b: &'static str,
        j: usize,
    },
    #[error("generators are linearly dependent (rank {rank} < {expected})")]
    Dependence { rank: usize, expected: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("unknown code '{0}'")]
    UnknownCode(String),
    #[error("invalid family distance {d}: must be odd and >= 3")]
    InvalidDistance { d: usize },
    #[error("enumeration budget exceeded: {needed} candidates > cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
}

/// An `[[N, k, d]]` stabilizer code: `N - k` stabilizer generators plus `k`
/// logical Z/X pairs. Immutable after construction.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    k: usize,
    d: usize,
    stabilizers: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    css: bool,
}

impl StabilizerCode {
    /// Validating constructor; the returned code satisfies every invariant
    /// checked by [`validate_parts`].
    pub fn new(
        name: impl Into<String>,
        n: usize,
        k: usize,
        d: usize,
        stabilizers: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
    ) -> Result<Self, ValidationError> {
        validate_parts(n, k, &stabilizers, &logical_z, &logical_x)?;
        let css = stabilizers
            .iter()
            .all(|s| s.x_part().is_zero() || s.z_part().is_zero());
        Ok(Self {
            name: name.into(),
            n,
            k,
            d,
            stabilizers,
            logical_z,
            logical_x,
            css,
        })
    }

    /// Skips validation. Intended for experiments on deliberately broken
    /// codes (e.g. probing what happens when a check is removed).
    pub fn new_unchecked(
        name: impl Into<String>,
        n: usize,
        k: usize,
        d: usize,
        stabilizers: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
    ) -> Self {
        let css = stabilizers
            .iter()
            .all(|s| s.x_part().is_zero() || s.z_part().is_zero());
        Self {
            name: name.into(),
            n,
            k,
            d,
            stabilizers,
            logical_z,
            logical_x,
            css,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Correction radius t = (d - 1) / 2.
    pub fn t(&self) -> usize {
        (self.d - 1) / 2
    }

    pub fn is_css(&self) -> bool {
        self.css
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    /// Generators in the order used to build the check matrix and the total
    /// syndrome: S_1 .. S_{N-k} followed by the logical Z operators.
    pub fn extended_generators(&self) -> impl Iterator<Item = &PauliOperator> {
        self.stabilizers.iter().chain(self.logical_z.iter())
    }

    /// Echelon basis of the stabilizer group's symplectic rows, for
    /// membership tests.
    pub fn stabilizer_basis(&self) -> RowBasis {
        RowBasis::from_rows(
            &self
                .stabilizers
                .iter()
                .map(PauliOperator::symplectic_row)
                .collect::<Vec<_>>(),
        )
    }

    /// Serializes to the code file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.d);
        for s in &self.stabilizers {
            out.push_str(&format!("S {s}\n"));
        }
        for l in &self.logical_z {
            out.push_str(&format!("LZ {l}\n"));
        }
        for l in &self.logical_x {
            out.push_str(&format!("LX {l}\n"));
        }
        out
    }
}

/// Checks all `StabilizerCode` invariants, returning the first violation.
#[allow(clippy::needless_range_loop)]
pub fn validate_parts(
    n: usize,
    k: usize,
    stabilizers: &[PauliOperator],
    logical_z: &[PauliOperator],
    logical_x: &[PauliOperator],
) -> Result<(), ValidationError> {
    use crate::pauli::symplectic_product as sp;

    if stabilizers.len() != n - k {
        return Err(ValidationError::WrongCount {
            what: "stabilizers",
            expected: n - k,
            found: stabilizers.len(),
        });
    }
    if logical_z.len() != k {
        return Err(ValidationError::WrongCount {
            what: "logical Z operators",
            expected: k,
            found: logical_z.len(),
        });
    }
    if logical_x.len() != k {
        return Err(ValidationError::WrongCount {
            what: "logical X operators",
            expected: k,
            found: logical_x.len(),
        });
    }
    for (which, ops) in [
        ("S", stabilizers),
        ("LZ", logical_z),
        ("LX", logical_x),
    ] {
        if let Some((i, op)) = ops.iter().enumerate().find(|(_, op)| op.len() != n) {
            return Err(ValidationError::WrongLength {
                which,
                index: i,
                expected: n,
                found: op.len(),
            });
        }
    }

    for i in 0..stabilizers.len() {
        for j in (i + 1)..stabilizers.len() {
            if sp(&stabilizers[i], &stabilizers[j]) {
                return Err(ValidationError::Commutation { i, j });
            }
        }
    }
    for (si, s) in stabilizers.iter().enumerate() {
        for (kind, ops) in [("LZ", logical_z), ("LX", logical_x)] {
            if let Some((li, _)) = ops.iter().enumerate().find(|(_, l)| sp(s, l)) {
                return Err(ValidationError::LogicalCommutation {
                    stabilizer: si,
                    kind,
                    logical: li,
                });
            }
        }
    }
    // L^z_j anticommutes with L^x_j only; same-kind logicals all commute.
    for i in 0..k {
        for j in 0..k {
            if sp(&logical_z[i], &logical_x[j]) != (i == j) {
                return Err(ValidationError::LogicalPairing {
                    a: "LZ",
                    i,
                    b: "LX",
                    j,
                });
            }
        }
        for j in (i + 1)..k {
            if sp(&logical_z[i], &logical_z[j]) {
                return Err(ValidationError::LogicalPairing {
                    a: "LZ",
                    i,
                    b: "LZ",
                    j,
                });
            }
            if sp(&logical_x[i], &logical_x[j]) {
                return Err(ValidationError::LogicalPairing {
                    a: "LX",
                    i,
                    b: "LX",
                    j,
                });
            }
        }
    }

    // The N rows {stabilizers, logical Z} must be independent over GF(2).
    let rows: Vec<BitVec> = stabilizers
        .iter()
        .chain(logical_z.iter())
        .map(PauliOperator::symplectic_row)
        .collect();
    let rank = BitMatrix::from_rows(rows).rank();
    if rank != n {
        return Err(ValidationError::Dependence { rank, expected: n });
    }
    Ok(())
}

pub fn validate(code: &StabilizerCode) -> Result<(), ValidationError> {
    validate_parts(
        code.n,
        code.k,
        &code.stabilizers,
        &code.logical_z,
        &code.logical_x,
    )
}

/// Parses the code file format:
///
/// ```text
/// N k d
/// S <pauli-string>     (N-k lines)
/// LZ <pauli-string>    (k lines)
/// LX <pauli-string>    (k lines)
/// ```
///
/// `#` starts a comment; blank lines are ignored.
pub fn load_code(text: &str, name: impl Into<String>) -> Result<StabilizerCode, CodeError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut stabilizers = Vec::new();
    let mut logical_z = Vec::new();
    let mut logical_x = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if header.is_none() {
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(CodeError::Parse {
                    line,
                    msg: format!("expected header 'N k d', got '{content}'"),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| CodeError::Parse {
                    line,
                    msg: format!("invalid number '{s}' in header"),
                })
            };
            header = Some((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
            continue;
        }
        let (n, _, _) = header.unwrap();
        let (tag, rest) = content.split_once(char::is_whitespace).ok_or_else(|| {
            CodeError::Parse {
                line,
                msg: format!("expected '<tag> <pauli-string>', got '{content}'"),
            }
        })?;
        let op = pauli_parse_n(rest.trim(), n).map_err(|e| CodeError::Parse {
            line,
            msg: e.to_string(),
        })?;
        match tag {
            "S" => stabilizers.push(op),
            "LZ" => logical_z.push(op),
            "LX" => logical_x.push(op),
            other => {
                return Err(CodeError::Parse {
                    line,
                    msg: format!("unknown tag '{other}'"),
                })
            }
        }
    }

    let (n, k, d) = header.ok_or(CodeError::Parse {
        line: 0,
        msg: "empty code file".into(),
    })?;
    StabilizerCode::new("file", n, k, d, stabilizers, logical_z, logical_x)
        .map(|mut c| {
            c.name = name.into();
            c
        })
        .map_err(CodeError::from)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFamily {
    Color,
    Surface,
}

#[derive(Debug, Clone, Copy)]
pub struct CodeFamilySpec {
    pub family: CodeFamily,
    pub d: usize,
}

pub fn build_family(spec: CodeFamilySpec) -> Result<StabilizerCode, CodeError> {
    if spec.d < 3 || spec.d.is_multiple_of(2) {
        return Err(CodeError::InvalidDistance { d: spec.d });
    }
    match spec.family {
        CodeFamily::Color => color_code(spec.d),
        CodeFamily::Surface => surface_code(spec.d),
    }
}

fn pure_op(n: usize, support: &[usize], kind: PauliKind) -> PauliOperator {
    let mut p = PauliOperator::identity(n);
    for &q in support {
        p.set(q, kind);
    }
    p
}

/// Rotated surface code on a d x d qubit grid.
///
/// Qubits sit at (row, col), 1-based; plaquettes live on the (d+1)^2 faces
/// of the grid, Z-type when face row+col is even. Interior faces carry
/// weight-4 checks; the checkerboard continues onto the boundary with
/// weight-2 X checks on top/bottom and weight-2 Z checks on left/right.
/// The logical Z is the Z string along row 1 and the logical X the X string
/// down column 1 (the orientation that commutes with this boundary layout).
fn surface_code(d: usize) -> Result<StabilizerCode, CodeError> {
    let n = d * d;
    let qubit = |r: usize, c: usize| (r - 1) * d + (c - 1);

    let mut x_faces: Vec<Vec<usize>> = Vec::new();
    let mut z_faces: Vec<Vec<usize>> = Vec::new();
    for fr in 0..=d {
        for fc in 0..=d {
            let mut support = Vec::new();
            for r in [fr, fr + 1] {
                for c in [fc, fc + 1] {
                    if (1..=d).contains(&r) && (1..=d).contains(&c) {
                        support.push(qubit(r, c));
                    }
                }
            }
            let z_type = (fr + fc) % 2 == 0;
            let interior = (1..d).contains(&fr) && (1..d).contains(&fc);
            let top_bottom = (fr == 0 || fr == d) && (1..d).contains(&fc);
            let left_right = (fc == 0 || fc == d) && (1..d).contains(&fr);
            if interior {
                if z_type {
                    z_faces.push(support);
                } else {
                    x_faces.push(support);
                }
            } else if top_bottom && !z_type {
                x_faces.push(support);
            } else if left_right && z_type {
                z_faces.push(support);
            }
        }
    }

    let mut stabilizers = Vec::new();
    for f in &x_faces {
        stabilizers.push(pure_op(n, f, PauliKind::X));
    }
    for f in &z_faces {
        stabilizers.push(pure_op(n, f, PauliKind::Z));
    }
    let lz_support: Vec<usize> = (1..=d).map(|c| qubit(1, c)).collect();
    let lx_support: Vec<usize> = (1..=d).map(|r| qubit(r, 1)).collect();
    let logical_z = vec![pure_op(n, &lz_support, PauliKind::Z)];
    let logical_x = vec![pure_op(n, &lx_support, PauliKind::X)];

    StabilizerCode::new(
        format!("surface:{d}"),
        n,
        1,
        d,
        stabilizers,
        logical_z,
        logical_x,
    )
    .map_err(CodeError::from)
}

/// Triangular 6.6.6 color code with N = (3d^2 + 1) / 4.
///
/// Sites live on the axial triangle {(i, j): i, j >= 0, i + j <= L} with
/// L = 3(d-1)/2. Sites with (i - j) = 1 (mod 3) are plaquette centers; the
/// rest are qubits, and each plaquette acts on its in-region axial
/// neighbors (a hexagon, truncated to weight 4 on the boundary). Every
/// plaquette carries both an X- and a Z-type stabilizer. Both logical
/// operators run along the j = 0 edge, which holds exactly d qubits.
fn color_code(d: usize) -> Result<StabilizerCode, CodeError> {
    let l = 3 * (d - 1) / 2;
    let residue = |i: usize, j: usize| (i as i64 - j as i64).rem_euclid(3);

    let mut qubit_ids = std::collections::BTreeMap::new();
    for i in 0..=l {
        for j in 0..=(l - i) {
            if residue(i, j) != 1 {
                let id = qubit_ids.len();
                qubit_ids.insert((i, j), id);
            }
        }
    }
    let n = qubit_ids.len();
    debug_assert_eq!(n, (3 * d * d + 1) / 4);

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for i in 0..=l {
        for j in 0..=(l - i) {
            if residue(i, j) != 1 {
                continue;
            }
            let (i, j) = (i as i64, j as i64);
            let mut support = Vec::new();
            for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)] {
                let (ni, nj) = (i + di, j + dj);
                if ni >= 0 && nj >= 0 && ni + nj <= l as i64 {
                    support.push(qubit_ids[&(ni as usize, nj as usize)]);
                }
            }
            support.sort_unstable();
            faces.push(support);
        }
    }

    let mut stabilizers = Vec::new();
    for f in &faces {
        stabilizers.push(pure_op(n, f, PauliKind::X));
    }
    for f in &faces {
        stabilizers.push(pure_op(n, f, PauliKind::Z));
    }
    let edge: Vec<usize> = qubit_ids
        .iter()
        .filter(|((_, j), _)| *j == 0)
        .map(|(_, &id)| id)
        .collect();
    debug_assert_eq!(edge.len(), d);
    let logical_z = vec![pure_op(n, &edge, PauliKind::Z)];
    let logical_x = vec![pure_op(n, &edge, PauliKind::X)];

    StabilizerCode::new(
        format!("color:{d}"),
        n,
        1,
        d,
        stabilizers,
        logical_z,
        logical_x,
    )
    .map_err(CodeError::from)
}

/// Names accepted by [`builtin`]. The family entries take any odd d >= 3.
pub fn registry_names() -> Vec<&'static str> {
    vec![
        "five_qubit",
        "steane",
        "noncss11",
        "noncss17",
        "noncss25",
        "noncss29",
        "color:<d>",
        "surface:<d>",
    ]
}

/// Concrete registry entries for listings: the fixed codes plus the family
/// members used in the simulations.
pub fn registry_entries() -> Vec<StabilizerCode> {
    let mut out: Vec<StabilizerCode> = ["five_qubit", "steane", "noncss11", "noncss17", "noncss25", "noncss29"]
        .iter()
        .map(|name| builtin(name).expect("builtin registry entry"))
        .collect();
    for d in [3, 5] {
        out.push(builtin(&format!("color:{d}")).unwrap());
        out.push(builtin(&format!("surface:{d}")).unwrap());
    }
    out
}

fn code_from_table(
    name: &str,
    n: usize,
    d: usize,
    stabilizers: &[&str],
    lz: &str,
    lx: &str,
) -> Result<StabilizerCode, CodeError> {
    let stabs = stabilizers
        .iter()
        .map(|s| pauli_parse_n(s, n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CodeError::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
    let lz = pauli_parse_n(lz, n).map_err(|e| CodeError::Parse {
        line: 0,
        msg: e.to_string(),
    })?;
    let lx = pauli_parse_n(lx, n).map_err(|e| CodeError::Parse {
        line: 0,
        msg: e.to_string(),
    })?;
    StabilizerCode::new(name, n, 1, d, stabs, vec![lz], vec![lx]).map_err(CodeError::from)
}

/// Resolves a registry name (`five_qubit`, `steane`, `noncss11`, ...,
/// `color:<d>`, `surface:<d>`) to a validated code.
pub fn builtin(name: &str) -> Result<StabilizerCode, CodeError> {
    if let Some(d) = name.strip_prefix("color:") {
        let d = d
            .parse::<usize>()
            .map_err(|_| CodeError::UnknownCode(name.into()))?;
        return build_family(CodeFamilySpec {
            family: CodeFamily::Color,
            d,
        });
    }
    if let Some(d) = name.strip_prefix("surface:") {
        let d = d
            .parse::<usize>()
            .map_err(|_| CodeError::UnknownCode(name.into()))?;
        return build_family(CodeFamilySpec {
            family: CodeFamily::Surface,
            d,
        });
    }
    match name {
        "five_qubit" => code_from_table(
            name,
            5,
            3,
            &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            "YYIXI",
            "IYIZZ",
        ),
        "steane" => code_from_table(
            name,
            7,
            3,
            &[
                "XXXXIII", "IXXIXXI", "IIXXIXX", "ZZZZIII", "IZZIZZI", "IIZZIZZ",
            ],
            "IIIIZZZ",
            "XXIIXII",
        ),
        "noncss11" => code_from_table(
            name,
            11,
            5,
            &[
                "XIIIIXZZIXX",
                "ZIIIIZXYYIX",
                "IXIIIXZYZIY",
                "IZIIIZZZYYI",
                "IIXIIXZXXZI",
                "IIZIIZYIYZZ",
                "IIIXIXYIXXY",
                "IIIZIZIZXZX",
                "IIIIXXXIZZX",
                "IIIIZZIYZYZ",
            ],
            "IZIIXYZYIII",
            "IXXIIIZIXIX",
        ),
        "noncss17" => code_from_table(
            name,
            17,
            7,
            &[
                "XIIIIIIIXZYYIIYYZ",
                "ZIIIIIIIZYXXIIXXY",
                "IXIIIIIIZZYZYIXZI",
                "IZIIIIIIYYXYXIZYI",
                "IIXIIIIIIZZYZYIXZ",
                "IIZIIIIIIYYXYXIZY",
                "IIIXIIIIZYYYYZZXZ",
                "IIIZIIIIYXXXXYYZY",
                "IIIIXIIIZXZZYYYYZ",
                "IIIIZIIIYZYYXXXXY",
                "IIIIIXIIZXIYZYZZI",
                "IIIIIZIIYZIXYXYYI",
                "IIIIIIXIIZXIYZYZZ",
                "IIIIIIZIIYZIXYXYY",
                "IIIIIIIXZYYIIYYZX",
                "IIIIIIIZYXXIIXXYZ",
            ],
            "IXIIZYYXIIIZIIIIX",
            "YIYIIIIXIIIYZZXII",
        ),
        "noncss25" => code_from_table(
            name,
            25,
            9,
            &[
                "XIIYYIIIIIIIZYXIIXZYIIYXZ",
                "ZIIXXIIIIIIIYXZIIZYXIIXZY",
                "IXIYZIIIIIIIYXZIIZYXIIXZY",
                "IZIXYIIIIIIIXZYIIYXZIIZYX",
                "IIXZYIIIIIIIYXZIIZYXIIXZY",
                "IIZYXIIIIIIIXZYIIYXZIIZYX",
                "IIIIIXIIYYIIYXZIIYXZIIYXZ",
                "IIIIIZIIXXIIXZYIIXZYIIXZY",
                "IIIIIIXIYZIIXZYIIXZYIIXZY",
                "IIIIIIZIXYIIZYXIIZYXIIZYX",
                "IIIIIIIXZYIIXZYIIXZYIIXZY",
                "IIIIIIIZYXIIZYXIIZYXIIZYX",
                "IIIIIIIIIIXIYZXIIIIIIIIII",
                "IIIIIIIIIIZIXYZIIIIIIIIII",
                "IIIIIIIIIIIXXXXIIIIIIIIII",
                "IIIIIIIIIIIZZZZIIIIIIIIII",
                "IIIIIIIIIIIIIIIXIYZXIIIII",
                "IIIIIIIIIIIIIIIZIXYZIIIII",
                "IIIIIIIIIIIIIIIIXXXXIIIII",
                "IIIIIIIIIIIIIIIIZZZZIIIII",
                "IIIIIIIIIIIIIIIIIIIIXIYZX",
                "IIIIIIIIIIIIIIIIIIIIZIXYZ",
                "IIIIIIIIIIIIIIIIIIIIIXXXX",
                "IIIIIIIIIIIIIIIIIIIIIZZZZ",
            ],
            "XIIYYIYZXIIIIIIXIZIZIIIII",
            "IIIIIYIYYIIIIIIIYIZXIYXIZ",
        ),
        "noncss29" => code_from_table(
            name,
            29,
            11,
            &[
                "XIIIIIIIIIIIIIXYZZXZZXXZZXZZY",
                "ZIIIIIIIIIIIIIZXYYZYYZZYYZYYX",
                "IXIIIIIIIIIIIIYYZYXIYXZIYXIYI",
                "IZIIIIIIIIIIIIXXYXZIXZYIXZIXI",
                "IIXIIIIIIIIIIIIYYZYXIYXZIYXIY",
                "IIZIIIIIIIIIIIIXXYXZIXZYIXZIX",
                "IIIXIIIIIIIIIIYZZZXZIYIIYYZIZ",
                "IIIZIIIIIIIIIIXYYYZYIXIIXXYIY",
                "IIIIXIIIIIIIIIZZXXIZXZXYYXIXX",
                "IIIIZIIIIIIIIIYYZZIYZYZXXZIZZ",
                "IIIIIXIIIIIIIIXXIYIZIIYYXZYZZ",
                "IIIIIZIIIIIIIIZZIXIYIIXXZYXYY",
                "IIIIIIXIIIIIIIZIZYXYXZZIIYXIY",
                "IIIIIIZIIIIIIIYIYXZXZYYIIXZIX",
                "IIIIIIIXIIIIIIYIXYIIZZXYXYZIZ",
                "IIIIIIIZIIIIIIXIZXIIYYZXZXYIY",
                "IIIIIIIIXIIIIIZZYZXYYIIZIYIXX",
                "IIIIIIIIZIIIIIYYXYZXXIIYIXIZZ",
                "IIIIIIIIIXIIIIXXIXYYXZXZIXXZZ",
                "IIIIIIIIIZIIIIZZIZXXZYZYIZZYY",
                "IIIIIIIIIIXIIIZIZYYIIYIZXZZZY",
                "IIIIIIIIIIZIIIYIYXXIIXIYZYYYX",
                "IIIIIIIIIIIXIIYIXYIZXYIXYZYYI",
                "IIIIIIIIIIIZIIXIZXIYZXIZXYXXI",
                "IIIIIIIIIIIIXIIYIXYIZXYIXYZYY",
                "IIIIIIIIIIIIZIIXIZXIYZXIZXYXX",
                "IIIIIIIIIIIIIXYZZXZZXXZZXZZYX",
                "IIIIIIIIIIIIIZXYYZYYZZYYZYYXZ",
            ],
            "IIIZIIIIIXIXYYZIYIIIIXIXIIXIY",
            "IIIIZIIXYIIXIIYIIXIZIIIYIYXIZ",
        ),
        other => Err(CodeError::UnknownCode(other.into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBound {
    Exact(usize),
    AtLeast(usize),
}

pub const DISTANCE_BUDGET_DEFAULT: u128 = 100_000_000;

/// Brute-force distance oracle: the minimum weight over all Pauli operators
/// that commute with every stabilizer yet lie outside the stabilizer group.
/// Enumerates supports by increasing weight with all {X, Y, Z} assignments;
/// independent of the graph machinery.
pub fn verify_distance(
    code: &StabilizerCode,
    w_max: usize,
    cap: u128,
) -> Result<DistanceBound, CodeError> {
    let n = code.n();
    let needed: u128 = (0..=w_max as u64)
        .map(|q| binomial(n as u64, q) * 3u128.pow(q as u32))
        .sum();
    if needed > cap {
        return Err(CodeError::BudgetExceeded { needed, cap });
    }

    let basis = code.stabilizer_basis();
    let kinds = [PauliKind::X, PauliKind::Y, PauliKind::Z];
    for q in 1..=w_max {
        let mut found = None;
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
                let commutes_all = code
                    .stabilizers()
                    .iter()
                    .all(|s| !crate::pauli::symplectic_product(&op, s));
                if commutes_all && !basis.contains(&op.symplectic_row()) {
                    found = Some(op);
                    return;
                }
                // odometer over {X,Y,Z}^q
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
        if found.is_some() {
            return Ok(DistanceBound::Exact(q));
        }
    }
    Ok(DistanceBound::AtLeast(w_max + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_parse;

    #[test]
    fn all_builtins_validate() {
        for code in registry_entries() {
            assert_eq!(validate(&code), Ok(()), "code {}", code.name());
        }
    }

    #[test]
    fn css_flags() {
        assert!(!builtin("five_qubit").unwrap().is_css());
        assert!(builtin("steane").unwrap().is_css());
        assert!(builtin("color:3").unwrap().is_css());
        assert!(builtin("surface:5").unwrap().is_css());
        for name in ["noncss11", "noncss17", "noncss25", "noncss29"] {
            assert!(!builtin(name).unwrap().is_css(), "{name}");
        }
    }

    #[test]
    fn duplicated_generator_is_dependence() {
        let code = builtin("five_qubit").unwrap();
        let mut stabs = code.stabilizers().to_vec();
        stabs[1] = stabs[0].clone();
        let err = StabilizerCode::new(
            "broken",
            5,
            1,
            3,
            stabs,
            code.logical_z().to_vec(),
            code.logical_x().to_vec(),
        )
        .unwrap_err();
        assert!(matches!(err, ValidationError::Dependence { .. }), "{err:?}");
    }

    #[test]
    fn family_sizes_match_closed_form() {
        for d in [3usize, 5, 7] {
            let color = builtin(&format!("color:{d}")).unwrap();
            assert_eq!(color.n(), (3 * d * d + 1) / 4);
            assert_eq!(color.k(), 1);
            let surface = builtin(&format!("surface:{d}")).unwrap();
            assert_eq!(surface.n(), d * d);
            assert_eq!(surface.k(), 1);
        }
        assert_eq!(builtin("surface:3").unwrap().n(), 9);
        assert_eq!(builtin("color:3").unwrap().n(), 7);
    }

    #[test]
    fn family_logical_weights_equal_distance() {
        for name in ["color:3", "color:5", "surface:3", "surface:5"] {
            let code = builtin(name).unwrap();
            assert_eq!(code.logical_z()[0].weight(), code.d(), "{name}");
            assert_eq!(code.logical_x()[0].weight(), code.d(), "{name}");
        }
    }

    #[test]
    fn color_stabilizers_come_in_xz_pairs() {
        for d in [3usize, 5] {
            let code = builtin(&format!("color:{d}")).unwrap();
            let stabs = code.stabilizers();
            let half = stabs.len() / 2;
            for i in 0..half {
                let x = &stabs[i];
                let z = &stabs[half + i];
                assert!(x.z_part().is_zero());
                assert!(z.x_part().is_zero());
                assert_eq!(x.x_part(), z.z_part(), "paired supports differ");
            }
        }
    }

    /// color:3 must be the Steane code up to qubit relabeling: brute-force
    /// search for a permutation matching the face supports.
    #[test]
    fn color3_is_steane_up_to_relabeling() {
        let color = builtin("color:3").unwrap();
        let steane = builtin("steane").unwrap();
        let supports = |code: &StabilizerCode| -> Vec<Vec<usize>> {
            code.stabilizers()
                .iter()
                .filter(|s| s.z_part().is_zero())
                .map(|s| s.x_part().ones().collect())
                .collect()
        };
        let color_faces = supports(&color);
        let steane_faces = supports(&steane);
        assert_eq!(color_faces.len(), 3);
        assert_eq!(steane_faces.len(), 3);

        let mut perm: Vec<usize> = (0..7).collect();
        let mut found = false;
        permute(&mut perm, 0, &mut |p: &[usize]| {
            if found {
                return;
            }
            let mapped: Vec<Vec<usize>> = color_faces
                .iter()
                .map(|f| {
                    let mut m: Vec<usize> = f.iter().map(|&q| p[q]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            let matches = steane_faces
                .iter()
                .all(|sf| mapped.iter().any(|mf| mf == sf));
            if matches {
                found = true;
            }
        });
        assert!(found, "no qubit relabeling maps color:3 onto steane");
    }

    fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
        if start == items.len() {
            visit(items);
            return;
        }
        for i in start..items.len() {
            items.swap(start, i);
            permute(items, start + 1, visit);
            items.swap(start, i);
        }
    }

    #[test]
    fn distance_of_five_qubit_is_three() {
        let code = builtin("five_qubit").unwrap();
        assert_eq!(
            verify_distance(&code, 3, DISTANCE_BUDGET_DEFAULT).unwrap(),
            DistanceBound::Exact(3)
        );
    }

    #[test]
    fn steane_has_no_low_weight_logical() {
        let code = builtin("steane").unwrap();
        assert_eq!(
            verify_distance(&code, 2, DISTANCE_BUDGET_DEFAULT).unwrap(),
            DistanceBound::AtLeast(3)
        );
    }

    #[test]
    fn deleting_a_check_exposes_weight_one_logical() {
        let code = builtin("five_qubit").unwrap();
        let mut stabs = code.stabilizers().to_vec();
        stabs.pop();
        let crippled = StabilizerCode::new_unchecked(
            "five_qubit_minus_s4",
            5,
            1,
            3,
            stabs,
            code.logical_z().to_vec(),
            code.logical_x().to_vec(),
        );
        assert_eq!(
            verify_distance(&crippled, 1, DISTANCE_BUDGET_DEFAULT).unwrap(),
            DistanceBound::Exact(1)
        );
    }

    #[test]
    fn family_distances_verified() {
        for (name, d) in [
            ("color:3", 3),
            ("surface:3", 3),
            ("color:5", 5),
            ("surface:5", 5),
        ] {
            let code = builtin(name).unwrap();
            assert_eq!(
                verify_distance(&code, d, DISTANCE_BUDGET_DEFAULT).unwrap(),
                DistanceBound::Exact(d),
                "{name}"
            );
        }
    }

    /// Distance checks double as transcription checks on the operator
    /// tables: a typo that still validates would almost surely change the
    /// minimum logical weight.
    #[test]
    fn noncss_table_distances() {
        let noncss11 = builtin("noncss11").unwrap();
        assert_eq!(
            verify_distance(&noncss11, 5, DISTANCE_BUDGET_DEFAULT).unwrap(),
            DistanceBound::Exact(5)
        );
        // full w <= 7 on 17 qubits is feasible but slow; w <= 5 already
        // rules out any low-weight logical
        let noncss17 = builtin("noncss17").unwrap();
        assert_eq!(
            verify_distance(&noncss17, 5, DISTANCE_BUDGET_DEFAULT).unwrap(),
            DistanceBound::AtLeast(6)
        );
    }

    #[test]
    fn budget_guard_trips() {
        let code = builtin("noncss29").unwrap();
        assert!(matches!(
            verify_distance(&code, 11, 1_000),
            Err(CodeError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn code_file_roundtrip() {
        let code = builtin("noncss11").unwrap();
        let text = code.to_file_string();
        let reloaded = load_code(&text, "noncss11").unwrap();
        assert_eq!(reloaded.n(), 11);
        assert_eq!(reloaded.d(), 5);
        assert_eq!(reloaded.stabilizers(), code.stabilizers());
    }

    #[test]
    fn load_code_reports_line_numbers() {
        let text = "5 1 3\nS XZZXI\nS IXZZQ\n";
        match load_code(text, "bad") {
            Err(CodeError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            load_code("", "empty"),
            Err(CodeError::Parse { line: 0, .. })
        ));
    }

    #[test]
    fn load_code_validates() {
        // five_qubit header but steane-sized operators
        let text = "5 1 3\nS XZZXI\nS XZZXI\nS XIXZZ\nS ZXIXZ\nLZ YYIXI\nLX IYIZZ\n";
        assert!(matches!(
            load_code(text, "dup"),
            Err(CodeError::Validation(ValidationError::Dependence { .. }))
        ));
    }

    #[test]
    fn logical_pairing_checked() {
        let code = builtin("five_qubit").unwrap();
        // logical X that commutes with LZ: use a stabilizer
        let err = StabilizerCode::new(
            "broken",
            5,
            1,
            3,
            code.stabilizers().to_vec(),
            code.logical_z().to_vec(),
            vec![pauli_parse("XZZXI").unwrap()],
        )
        .unwrap_err();
        assert!(matches!(err, ValidationError::LogicalPairing { .. }));
    }
}
