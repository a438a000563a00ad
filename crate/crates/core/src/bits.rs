//! Bit-packed Boolean vectors and matrices.
//!
//! `∨` is max, `∧` is min, `¬a = 1 - a`. The matrix conjunction-product is
//! `[A ∧ C]_ij = ⋁_h a_ih ∧ c_hj`; the elementwise conjunction is the
//! Boolean Hadamard product.

use std::fmt;

use crate::error::SimError;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn check(&self, other: &Self) -> Result<(), SimError> {
        if self.len != other.len {
            return Err(SimError::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len, other.len
            )));
        }
        Ok(())
    }

    pub fn or(&self, other: &Self) -> Result<Self, SimError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    /// Elementwise conjunction.
    pub fn and(&self, other: &Self) -> Result<Self, SimError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn not(&self) -> Self {
        let mut out = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        if let Some(last) = out.words.last_mut() {
            *last &= tail_mask(self.len);
        }
        out
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// Row-major bit matrix; each row is padded to whole 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, SimError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(SimError::DimensionMismatch(format!(
                    "row {i} has {} columns, expected {cols}",
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let idx = i * self.stride + j / WORD;
        let mask = 1u64 << (j % WORD);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), SimError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(SimError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn or(&self, other: &Self) -> Result<Self, SimError> {
        self.check_same_shape(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    /// Elementwise conjunction (Boolean Hadamard product).
    pub fn hadamard(&self, other: &Self) -> Result<Self, SimError> {
        self.check_same_shape(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn not(&self) -> Self {
        let mask = tail_mask(self.cols);
        let mut out = self.clone();
        for r in 0..self.rows {
            let row = &mut out.data[r * self.stride..(r + 1) * self.stride];
            for w in row.iter_mut() {
                *w = !*w;
            }
            if let Some(last) = row.last_mut() {
                *last &= mask;
            }
        }
        out
    }

    /// Conjunction-product `self ∧ other`.
    pub fn conj_product(&self, other: &Self) -> Result<Self, SimError> {
        if self.cols != other.rows {
            return Err(SimError::DimensionMismatch(format!(
                "{}x{} ∧ {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for h in 0..self.cols {
                if self.get(i, h) {
                    let src = other.row(h).to_vec();
                    let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ v` for a column vector: row-wise AND followed by any-bit.
    pub fn conj_vector(&self, v: &BitVector) -> Result<BitVector, SimError> {
        if self.cols != v.len() {
            return Err(SimError::DimensionMismatch(format!(
                "{}x{} ∧ vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let hit = self.row(i).iter().zip(v.words()).any(|(&a, &b)| a & b != 0);
            out.set(i, hit);
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            stride: self.stride,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
