//! Packed-bit linear algebra over GF(2).
//!
//! Vectors are stored as little-endian `u64` words; bits beyond the logical
//! length are kept zero so that equality, hashing and popcounts can work on
//! whole words. Matrices are row-major collections of [`BitVec`] rows.
//! Gaussian elimination pivots on the lowest admissible index, which makes
//! every derived quantity (rank, inverse, echelon basis) deterministic.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("matrix is singular (rank {rank} < dimension {dim})")]
    Singular { rank: usize, dim: usize },
    #[error("dimension mismatch: {left} vs {right} in {op}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
}

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of '0'/'1' characters, index 0 first.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    /// Unit vector with a single bit set.
    pub fn unit(len: usize, idx: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(idx, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        (self.words[idx / WORD_BITS] >> (idx % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: usize, value: bool) {
        debug_assert!(idx < self.len);
        let w = idx / WORD_BITS;
        let b = idx % WORD_BITS;
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    #[inline]
    pub fn toggle(&mut self, idx: usize) {
        debug_assert!(idx < self.len);
        self.words[idx / WORD_BITS] ^= 1 << (idx % WORD_BITS);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Enforces the canonical form: bits beyond `len` are zero.
    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Popcount of the bitwise OR with `other`; the weight of a Pauli
    /// operator is this applied to its x/z halves.
    pub fn or_count_ones(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Parity of the AND with `other` (the GF(2) inner product).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let acc: u64 = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b));
        acc.count_ones() % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn lowest_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Picks the listed positions into a new, shorter vector.
    pub fn gather(&self, idx: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(idx.len());
        for (o, &i) in idx.iter().enumerate() {
            if self.get(i) {
                out.set(o, true);
            }
        }
        out
    }

    /// Inverse of [`gather`]: writes bit `o` of `self` at position `idx[o]`.
    pub fn scatter(&self, idx: &[usize], len: usize) -> BitVec {
        debug_assert_eq!(self.len, idx.len());
        let mut out = BitVec::zeros(len);
        for (o, &i) in idx.iter().enumerate() {
            if self.get(o) {
                out.set(i, true);
            }
        }
        out
    }

    /// Interprets the bits as a big-endian number (bit 0 is the most
    /// significant), matching the displayed syndrome convention.
    pub fn to_decimal_msb_first(&self) -> u64 {
        debug_assert!(self.len <= 64);
        let mut acc = 0u64;
        for i in 0..self.len {
            acc = (acc << 1) | (self.get(i) as u64);
        }
        acc
    }

    pub fn from_decimal_msb_first(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

impl std::fmt::Display for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds a matrix from 0/1 integer rows; handy for literal test data.
    pub fn from_int_rows(rows: &[&[u8]]) -> Self {
        let data = rows
            .iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
            .collect();
        Self::from_rows(data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVec {
        &mut self.data[r]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    /// `self[dst] ^= self[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        b.xor_assign(a);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                out.data[c].set(r, true);
            }
        }
        out
    }

    /// Row-space dimension via Gaussian elimination, pivoting on the lowest
    /// remaining row index.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.data[r].get(col)) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            for r in 0..m.rows {
                if r != rank && m.data[r].get(col) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Gauss-Jordan inverse. Fails with [`Gf2Error::Singular`] when the rank
    /// falls short of the dimension.
    pub fn inverse(&self) -> Result<BitMatrix, Gf2Error> {
        if self.rows != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "inverse",
                left: format!("{}x{}", self.rows, self.cols),
                right: "square".into(),
            });
        }
        let dim = self.rows;
        let mut m = self.clone();
        let mut inv = BitMatrix::identity(dim);
        let mut rank = 0;
        for col in 0..dim {
            let Some(pivot) = (rank..dim).find(|&r| m.data[r].get(col)) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            inv.swap_rows(rank, pivot);
            for r in 0..dim {
                if r != rank && m.data[r].get(col) {
                    m.xor_row_into(rank, r);
                    inv.xor_row_into(rank, r);
                }
            }
            rank += 1;
        }
        if rank < dim {
            return Err(Gf2Error::Singular { rank, dim });
        }
        Ok(inv)
    }

    /// GF(2) matrix product.
    pub fn matmul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                op: "matmul",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                out.data[r].xor_assign(&other.data[c]);
            }
        }
        Ok(out)
    }

    /// Row-vector times matrix: `v . self`.
    pub fn vecmul(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = BitVec::zeros(self.cols);
        for r in v.ones() {
            out.xor_assign(&self.data[r]);
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> BitMatrix {
        let data: Vec<BitVec> = row_idx
            .iter()
            .map(|&r| self.data[r].gather(col_idx))
            .collect();
        Self {
            rows: row_idx.len(),
            cols: col_idx.len(),
            data,
        }
    }

    /// Entry-wise XOR (GF(2) matrix sum).
    pub fn xor(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "xor",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn diagonal_is_zero(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| !self.get(i, i))
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {}", r.to_bit_string())?;
        }
        write!(f, "]")
    }
}

/// Incremental row-echelon basis used for span membership tests and for
/// expressing vectors as combinations of previously inserted rows.
#[derive(Clone, Debug)]
pub struct RowBasis {
    /// Reduced rows, each paired with the recipe over inserted rows.
    rows: Vec<(BitVec, BitVec)>,
    pivots: Vec<usize>,
    width: usize,
    inserted: usize,
    capacity: usize,
}

impl RowBasis {
    pub fn new(width: usize, capacity: usize) -> Self {
        Self {
            rows: Vec::new(),
            pivots: Vec::new(),
            width,
            inserted: 0,
            capacity,
        }
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let width = rows.first().map_or(0, BitVec::len);
        let mut basis = Self::new(width, rows.len());
        for r in rows {
            basis.insert(r);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut residue = v.clone();
        let mut recipe = BitVec::zeros(self.capacity);
        for ((row, row_recipe), &pivot) in self.rows.iter().zip(&self.pivots) {
            if residue.get(pivot) {
                residue.xor_assign(row);
                recipe.xor_assign(row_recipe);
            }
        }
        (residue, recipe)
    }

    /// Inserts a row; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.width);
        debug_assert!(self.inserted < self.capacity);
        let (mut residue, mut recipe) = self.reduce(v);
        recipe.set(self.inserted, true);
        self.inserted += 1;
        match residue.lowest_set() {
            Some(pivot) => {
                // keep earlier rows reduced against the new pivot
                for (row, row_recipe) in self.rows.iter_mut() {
                    if row.get(pivot) {
                        row.xor_assign(&residue);
                        row_recipe.xor_assign(&recipe);
                    }
                }
                residue.mask_tail();
                self.rows.push((residue, recipe));
                self.pivots.push(pivot);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// If `v` lies in the span, returns which inserted rows XOR to it.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (residue, recipe) = self.reduce(v);
        residue.is_zero().then_some(recipe)
    }
}

/// n choose k without overflow panic at the sizes used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
