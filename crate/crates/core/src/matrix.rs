//! Boolean share matrices.
//!
//! A [`BitMatrix`] is stored column-major. Each [`Column`] packs its rows
//! big-endian into 64-bit words (row 1 is the most significant bit of the
//! first word), so matrices with at most 64 rows use a single machine word
//! per column and comparing word slices compares columns as bit strings.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::access::Subset;
use crate::error::{Result, VcsError};

/// One column of a share matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column {
    words: SmallVec<[u64; 1]>,
}

impl Column {
    pub fn zeros(rows: usize) -> Self {
        Column {
            words: smallvec![0; rows.div_ceil(64).max(1)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut c = Column::zeros(bits.len());
        for (r, &b) in bits.iter().enumerate() {
            if b {
                c.set(r, true);
            }
        }
        c
    }

    /// Row `r` (0-based).
    pub fn get(&self, r: usize) -> bool {
        self.words[r / 64] & (1u64 << (63 - r % 64)) != 0
    }

    pub fn set(&mut self, r: usize, value: bool) {
        let bit = 1u64 << (63 - r % 64);
        if value {
            self.words[r / 64] |= bit;
        } else {
            self.words[r / 64] &= !bit;
        }
    }

    /// True when some row in `mask` is set.
    fn hits(&self, mask: &Column) -> bool {
        self.words.iter().zip(&mask.words).any(|(a, b)| a & b != 0)
    }

    fn to_bit_string(&self, rows: usize) -> String {
        (0..rows).map(|r| if self.get(r) { '1' } else { '0' }).collect()
    }

    fn from_bit_string(s: &str) -> Option<(Self, usize)> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some((Column::from_bits(&bits), bits.len()))
    }
}

impl fmt::Debug for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Column(")?;
        for w in &self.words {
            write!(f, "{w:016x}")?;
        }
        write!(f, ")")
    }
}

/// Number of ones in a row vector.
pub fn weight(v: &[bool]) -> usize {
    v.iter().filter(|&&b| b).count()
}

/// An `n x m` Boolean matrix with `n, m >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    rows: usize,
    cols: Vec<Column>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(VcsError::InvalidMatrix(format!(
                "{rows}x{cols} matrix: rows and columns must be positive"
            )));
        }
        Ok(BitMatrix {
            rows,
            cols: vec![Column::zeros(rows); cols],
        })
    }

    pub fn from_columns(rows: usize, cols: Vec<Column>) -> Result<Self> {
        if rows == 0 || cols.is_empty() {
            return Err(VcsError::InvalidMatrix(
                "rows and columns must be positive".into(),
            ));
        }
        let words = rows.div_ceil(64);
        if cols.iter().any(|c| c.words.len() != words) {
            return Err(VcsError::InvalidMatrix("column height mismatch".into()));
        }
        Ok(BitMatrix { rows, cols })
    }

    /// Builds from row-major 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut out = BitMatrix::zeros(n, m)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(VcsError::InvalidMatrix(format!(
                    "row {} has {} entries, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => out.cols[j].set(i, true),
                    _ => {
                        return Err(VcsError::InvalidMatrix(format!(
                            "entry ({}, {}) is {v}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Builds from strings such as `["010", "101"]`.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b.wrapping_sub(b'0')).collect())
            .collect();
        Self::from_rows(&parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cols[col].get(row)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.cols[col].set(row, value);
    }

    /// Row `i` (0-based).
    pub fn row(&self, i: usize) -> Vec<bool> {
        self.cols.iter().map(|c| c.get(i)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| self.cols.iter().map(|c| c.get(i) as u8).collect())
            .collect()
    }

    fn check_rows(&self, x: Subset) -> Result<()> {
        if x.is_empty() {
            return Err(VcsError::EmptySubset);
        }
        match x.max() {
            Some(p) if p > self.rows => Err(VcsError::ParticipantOutOfRange {
                participant: p,
                n: self.rows,
            }),
            _ => Ok(()),
        }
    }

    fn row_mask(&self, x: Subset) -> Column {
        let mut mask = Column::zeros(self.rows);
        for p in x.iter() {
            mask.set(p - 1, true);
        }
        mask
    }

    /// Bitwise OR of the rows of the participants in `x`.
    pub fn or_rows(&self, x: Subset) -> Result<Vec<bool>> {
        self.check_rows(x)?;
        Ok(self.or_rows_unchecked(x))
    }

    pub(crate) fn or_rows_unchecked(&self, x: Subset) -> Vec<bool> {
        let mask = self.row_mask(x);
        self.cols.iter().map(|c| c.hits(&mask)).collect()
    }

    /// Hamming weight of [`or_rows`](Self::or_rows), without allocating.
    pub(crate) fn or_weight(&self, x: Subset) -> usize {
        let mask = self.row_mask(x);
        self.cols.iter().filter(|c| c.hits(&mask)).count()
    }

    /// The `|x| x m` matrix of the rows in `x`, ascending participant order.
    pub fn restrict(&self, x: Subset) -> Result<BitMatrix> {
        self.check_rows(x)?;
        Ok(self.restrict_unchecked(x))
    }

    pub(crate) fn restrict_unchecked(&self, x: Subset) -> BitMatrix {
        let picked: Vec<usize> = x.iter().map(|p| p - 1).collect();
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut out = Column::zeros(picked.len());
                for (k, &r) in picked.iter().enumerate() {
                    if c.get(r) {
                        out.set(k, true);
                    }
                }
                out
            })
            .collect();
        BitMatrix {
            rows: picked.len(),
            cols,
        }
    }

    /// `self || other`.
    pub fn concat(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(VcsError::DimensionMismatch(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(BitMatrix {
            rows: self.rows,
            cols,
        })
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        debug_assert_eq!(perm.len(), self.cols.len());
        BitMatrix {
            rows: self.rows,
            cols: perm.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Columns sorted ascending; equal for column-permutation-equal matrices.
    pub fn canonical(&self) -> ColumnMultiset {
        let mut sorted = self.cols.clone();
        sorted.sort();
        let mut entries: Vec<(Column, usize)> = Vec::new();
        for c in sorted {
            match entries.last_mut() {
                Some((last, count)) if *last == c => *count += 1,
                _ => entries.push((c, 1)),
            }
        }
        ColumnMultiset {
            rows: self.rows,
            entries,
        }
    }

    pub fn permutation_equal(&self, other: &BitMatrix) -> bool {
        self.rows == other.rows && self.canonical() == other.canonical()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.cols
                    .iter()
                    .map(|c| if c.get(i) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        write!(f, "BitMatrix[{}]", rows.join(" / "))
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(deserializer)?;
        BitMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// A sorted multiset of columns: the canonical representative of a matrix
/// under column permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnMultiset {
    rows: usize,
    entries: Vec<(Column, usize)>,
}

impl ColumnMultiset {
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Distinct columns with their multiplicities, ascending.
    pub fn entries(&self) -> &[(Column, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    /// Multiset union (sum of multiplicities).
    pub fn merge(&self, other: &ColumnMultiset) -> Result<ColumnMultiset> {
        if self.rows != other.rows {
            return Err(VcsError::DimensionMismatch(format!(
                "cannot merge {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut counts: BTreeMap<Column, usize> = BTreeMap::new();
        for (c, k) in self.entries.iter().chain(&other.entries) {
            *counts.entry(c.clone()).or_default() += k;
        }
        Ok(ColumnMultiset {
            rows: self.rows,
            entries: counts.into_iter().collect(),
        })
    }

    /// Expands back into a matrix with columns in canonical order.
    pub fn to_matrix(&self) -> Result<BitMatrix> {
        let cols = self
            .entries
            .iter()
            .flat_map(|(c, k)| std::iter::repeat_n(c.clone(), *k))
            .collect();
        BitMatrix::from_columns(self.rows, cols)
    }
}

#[derive(Serialize, Deserialize)]
struct ColumnCount {
    column: String,
    count: usize,
}

impl Serialize for ColumnMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries
            .iter()
            .map(|(c, k)| ColumnCount {
                column: c.to_bit_string(self.rows),
                count: *k,
            })
            .collect::<Vec<_>>()
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColumnMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = Vec::<ColumnCount>::deserialize(deserializer)?;
        let mut rows = None;
        let mut counts: BTreeMap<Column, usize> = BTreeMap::new();
        for cc in raw {
            let (col, len) = Column::from_bit_string(&cc.column)
                .ok_or_else(|| D::Error::custom("column must be a 0/1 string"))?;
            if *rows.get_or_insert(len) != len {
                return Err(D::Error::custom("columns differ in length"));
            }
            if cc.count == 0 {
                return Err(D::Error::custom("column count must be positive"));
            }
            *counts.entry(col).or_default() += cc.count;
        }
        Ok(ColumnMultiset {
            rows: rows.ok_or_else(|| D::Error::custom("empty multiset"))?,
            entries: counts.into_iter().collect(),
        })
    }
}

/// Basis-matrix models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisModel {
    /// Every qualified set reconstructs; reconstruction is darker.
    Vcs2,
    /// Only minimal qualified sets reconstruct, darker or lighter; larger
    /// qualified sets learn nothing from their stacked weight.
    Vcs3,
    /// Like `Vcs3` without the condition on larger qualified sets.
    Vcs5,
}

impl BasisModel {
    pub fn number(self) -> u8 {
        match self {
            BasisModel::Vcs2 => 2,
            BasisModel::Vcs3 => 3,
            BasisModel::Vcs5 => 5,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            2 => Ok(BasisModel::Vcs2),
            3 => Ok(BasisModel::Vcs3),
            5 => Ok(BasisModel::Vcs5),
            other => Err(VcsError::UnsupportedModel(other)),
        }
    }
}

/// Collection (multiset of matrices) models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CollectionModel {
    Vcs1,
    Vcs4,
}

impl CollectionModel {
    pub fn number(self) -> u8 {
        match self {
            CollectionModel::Vcs1 => 1,
            CollectionModel::Vcs4 => 4,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(CollectionModel::Vcs1),
            4 => Ok(CollectionModel::Vcs4),
            other => Err(VcsError::UnsupportedModel(other)),
        }
    }
}

/// A pair of basis matrices `(S0, S1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisScheme {
    pub model: BasisModel,
    pub s0: BitMatrix,
    pub s1: BitMatrix,
}

impl BasisScheme {
    pub fn new(model: BasisModel, s0: BitMatrix, s1: BitMatrix) -> Result<Self> {
        if s0.rows() != s1.rows() || s0.cols() != s1.cols() {
            return Err(VcsError::DimensionMismatch(format!(
                "S0 is {}x{}, S1 is {}x{}",
                s0.rows(),
                s0.cols(),
                s1.rows(),
                s1.cols()
            )));
        }
        Ok(BasisScheme { model, s0, s1 })
    }

    pub fn n(&self) -> usize {
        self.s0.rows()
    }

    pub fn m(&self) -> usize {
        self.s0.cols()
    }

    pub fn with_model(&self, model: BasisModel) -> Self {
        BasisScheme {
            model,
            ..self.clone()
        }
    }

    /// `S0` for a white pixel (`false`), `S1` for black.
    pub fn basis_for(&self, black: bool) -> &BitMatrix {
        if black {
            &self.s1
        } else {
            &self.s0
        }
    }

    /// Both matrices extended by `other`'s columns.
    pub fn concat(&self, other: &BasisScheme) -> Result<Self> {
        BasisScheme::new(
            self.model,
            self.s0.concat(&other.s0)?,
            self.s1.concat(&other.s1)?,
        )
    }

    /// The model-1 collections generated by all column permutations.
    pub fn to_collections(&self) -> Result<CollectionScheme> {
        const MAX_PERMUTED_COLUMNS: usize = 8;
        let m = self.m();
        if m > MAX_PERMUTED_COLUMNS {
            return Err(VcsError::CapExceeded {
                what: "pixel expansion for permutation expansion",
                value: m,
                cap: MAX_PERMUTED_COLUMNS,
            });
        }
        let mut c0 = BTreeMap::new();
        let mut c1 = BTreeMap::new();
        for perm in permutations(m) {
            *c0.entry(self.s0.permute_columns(&perm)).or_insert(0) += 1;
            *c1.entry(self.s1.permute_columns(&perm)).or_insert(0) += 1;
        }
        CollectionScheme::new(CollectionModel::Vcs1, c0, c1)
    }
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct BasisFile {
    model: u8,
    n: usize,
    m: usize,
    #[serde(rename = "S0")]
    s0: BitMatrix,
    #[serde(rename = "S1")]
    s1: BitMatrix,
}

impl Serialize for BasisScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BasisFile {
            model: self.model.number(),
            n: self.n(),
            m: self.m(),
            s0: self.s0.clone(),
            s1: self.s1.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BasisScheme {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BasisFile::deserialize(deserializer)?;
        let model = BasisModel::from_number(raw.model).map_err(D::Error::custom)?;
        let scheme = BasisScheme::new(model, raw.s0, raw.s1).map_err(D::Error::custom)?;
        if scheme.n() != raw.n || scheme.m() != raw.m {
            return Err(D::Error::custom(format!(
                "declared {}x{} but matrices are {}x{}",
                raw.n,
                raw.m,
                scheme.n(),
                scheme.m()
            )));
        }
        Ok(scheme)
    }
}

/// A pair of frequency-weighted matrix collections `(C0, C1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionScheme {
    pub model: CollectionModel,
    n: usize,
    m: usize,
    c0: BTreeMap<BitMatrix, u64>,
    c1: BTreeMap<BitMatrix, u64>,
}

impl CollectionScheme {
    pub fn new(
        model: CollectionModel,
        c0: BTreeMap<BitMatrix, u64>,
        c1: BTreeMap<BitMatrix, u64>,
    ) -> Result<Self> {
        let first = c0
            .keys()
            .next()
            .ok_or_else(|| VcsError::InvalidMatrix("C0 is empty".into()))?;
        if c1.is_empty() {
            return Err(VcsError::InvalidMatrix("C1 is empty".into()));
        }
        let (n, m) = (first.rows(), first.cols());
        for (mat, &freq) in c0.iter().chain(c1.iter()) {
            if mat.rows() != n || mat.cols() != m {
                return Err(VcsError::DimensionMismatch(format!(
                    "collection mixes {n}x{m} and {}x{} matrices",
                    mat.rows(),
                    mat.cols()
                )));
            }
            if freq == 0 {
                return Err(VcsError::InvalidMatrix("frequency must be positive".into()));
            }
        }
        Ok(CollectionScheme { model, n, m, c0, c1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn c0(&self) -> &BTreeMap<BitMatrix, u64> {
        &self.c0
    }

    pub fn c1(&self) -> &BTreeMap<BitMatrix, u64> {
        &self.c1
    }

    pub fn collection_for(&self, black: bool) -> &BTreeMap<BitMatrix, u64> {
        if black {
            &self.c1
        } else {
            &self.c0
        }
    }

    pub fn with_model(&self, model: CollectionModel) -> Self {
        CollectionScheme {
            model,
            ..self.clone()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WeightedMatrix {
    matrix: BitMatrix,
    frequency: u64,
}

#[derive(Serialize, Deserialize)]
struct CollectionFile {
    model: u8,
    n: usize,
    m: usize,
    #[serde(rename = "C0")]
    c0: Vec<WeightedMatrix>,
    #[serde(rename = "C1")]
    c1: Vec<WeightedMatrix>,
}

fn to_weighted(map: &BTreeMap<BitMatrix, u64>) -> Vec<WeightedMatrix> {
    map.iter()
        .map(|(matrix, &frequency)| WeightedMatrix {
            matrix: matrix.clone(),
            frequency,
        })
        .collect()
}

fn from_weighted(list: Vec<WeightedMatrix>) -> BTreeMap<BitMatrix, u64> {
    let mut map = BTreeMap::new();
    for w in list {
        *map.entry(w.matrix).or_insert(0) += w.frequency;
    }
    map
}

impl Serialize for CollectionScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CollectionFile {
            model: self.model.number(),
            n: self.n,
            m: self.m,
            c0: to_weighted(&self.c0),
            c1: to_weighted(&self.c1),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CollectionScheme {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CollectionFile::deserialize(deserializer)?;
        let model = CollectionModel::from_number(raw.model).map_err(D::Error::custom)?;
        let scheme = CollectionScheme::new(model, from_weighted(raw.c0), from_weighted(raw.c1))
            .map_err(D::Error::custom)?;
        if scheme.n != raw.n || scheme.m != raw.m {
            return Err(D::Error::custom(format!(
                "declared {}x{} but matrices are {}x{}",
                raw.n, raw.m, scheme.n, scheme.m
            )));
        }
        Ok(scheme)
    }
}

/// Either kind of scheme, as read from a scheme file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scheme {
    Basis(BasisScheme),
    Collection(CollectionScheme),
}

impl Scheme {
    pub fn n(&self) -> usize {
        match self {
            Scheme::Basis(s) => s.n(),
            Scheme::Collection(c) => c.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Scheme::Basis(s) => s.m(),
            Scheme::Collection(c) => c.m(),
        }
    }

    pub fn model_number(&self) -> u8 {
        match self {
            Scheme::Basis(s) => s.model.number(),
            Scheme::Collection(c) => c.model.number(),
        }
    }
}

/// The basis matrix for `black` with a uniformly random column permutation.
pub fn sample_share_matrix<R: Rng + ?Sized>(s: &BasisScheme, black: bool, rng: &mut R) -> BitMatrix {
    let mut perm: Vec<usize> = (0..s.m()).collect();
    perm.shuffle(rng);
    s.basis_for(black).permute_columns(&perm)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn set(xs: &[usize]) -> Subset {
        Subset::from_participants(xs.iter().copied()).unwrap()
    }

    fn p4_s0() -> BitMatrix {
        BitMatrix::from_row_strings(&["010", "011", "011", "001"]).unwrap()
    }

    fn p4_s1() -> BitMatrix {
        BitMatrix::from_row_strings(&["010", "101", "011", "100"]).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn or_rows_examples() {
        assert_eq!(p4_s1().or_rows(set(&[1, 2])).unwrap(), bits("111"));
        for i in 1..=4 {
            assert_eq!(p4_s0().or_rows(set(&[i])).unwrap(), p4_s0().row(i - 1));
        }
        let z = BitMatrix::zeros(3, 4).unwrap();
        assert_eq!(z.or_rows(set(&[1, 3])).unwrap(), vec![false; 4]);
        assert_eq!(z.or_rows(Subset::EMPTY), Err(VcsError::EmptySubset));
        assert!(z.or_rows(set(&[4])).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&bits("111")), 3);
        assert_eq!(weight(&bits("011")), 2);
        assert_eq!(weight(&[false; 7]), 0);
    }

    #[test]
    fn restrict_examples() {
        let r = p4_s0().restrict(set(&[1, 3])).unwrap();
        assert_eq!(r.to_rows(), vec![vec![0, 1, 0], vec![0, 1, 1]]);
        assert_eq!(p4_s0().restrict(set(&[1, 2, 3, 4])).unwrap(), p4_s0());
        // Restricting twice: rows {2,4} of rows {1,2,4} are rows {2,4}.
        let once = p4_s1().restrict(set(&[1, 2, 4])).unwrap();
        assert_eq!(
            once.restrict(set(&[2, 3])).unwrap(),
            p4_s1().restrict(set(&[2, 4])).unwrap()
        );
        assert!(p4_s0().restrict(Subset::EMPTY).is_err());
    }

    #[test]
    fn concat_examples() {
        let a = BitMatrix::from_row_strings(&["1", "0"]).unwrap();
        let b = BitMatrix::from_row_strings(&["01", "11"]).unwrap();
        let ab = a.concat(&b).unwrap();
        assert_eq!((ab.rows(), ab.cols()), (2, 3));
        assert_eq!(ab.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let c = BitMatrix::from_row_strings(&["1"]).unwrap();
        assert!(matches!(a.concat(&c), Err(VcsError::DimensionMismatch(_))));
        assert!(BitMatrix::zeros(2, 0).is_err());
    }

    #[test]
    fn canonical_examples() {
        let x = set(&[1, 4]);
        assert_eq!(
            p4_s0().restrict(x).unwrap().canonical(),
            p4_s1().restrict(x).unwrap().canonical()
        );
        let q = set(&[1, 2]);
        assert_ne!(
            p4_s0().restrict(q).unwrap().canonical(),
            p4_s1().restrict(q).unwrap().canonical()
        );
        let reversed = p4_s1().permute_columns(&[2, 1, 0]);
        assert_eq!(reversed.canonical(), p4_s1().canonical());
    }

    #[test]
    fn canonical_is_big_endian_sorted() {
        // Columns of the P4 S1: 0101, 1010, 0110 (row 1 first).
        let json = serde_json::to_string(&p4_s1().canonical()).unwrap();
        assert_eq!(
            json,
            r#"[{"column":"0101","count":1},{"column":"0110","count":1},{"column":"1010","count":1}]"#
        );
        let back: ColumnMultiset = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p4_s1().canonical());
    }

    #[test]
    fn wide_columns_use_multiple_words() {
        let mut m = BitMatrix::zeros(70, 2).unwrap();
        m.set(69, 0, true);
        m.set(0, 1, true);
        assert_eq!(m.or_weight(Subset::singleton(1)), 1);
        let canon = m.canonical();
        // Row 1 is most significant, so column 1 (bit at row 70) sorts first.
        assert!(canon.entries()[0].0.get(69));
        assert!(canon.entries()[1].0.get(0));
    }

    #[test]
    fn sampling_single_column_is_identity() {
        let s = BasisScheme::new(
            BasisModel::Vcs2,
            BitMatrix::from_row_strings(&["0", "0"]).unwrap(),
            BitMatrix::from_row_strings(&["1", "1"]).unwrap(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            assert_eq!(sample_share_matrix(&s, true, &mut rng), s.s1);
            assert_eq!(sample_share_matrix(&s, false, &mut rng), s.s0);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = BasisScheme::new(BasisModel::Vcs2, p4_s0(), p4_s1()).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| sample_share_matrix(&s, true, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
    }

    #[test]
    fn sampling_is_uniform_over_permutations() {
        // The P4 S0 has three distinct columns, so each of the 3! orders is
        // a distinct matrix.
        let s = BasisScheme::new(BasisModel::Vcs2, p4_s0(), p4_s1()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut counts: BTreeMap<BitMatrix, usize> = BTreeMap::new();
        let draws = 10_000;
        for _ in 0..draws {
            *counts.entry(sample_share_matrix(&s, false, &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 6.0).abs() <= 0.02, "frequency {freq}");
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations(3),
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn scheme_json() {
        let s = BasisScheme::new(BasisModel::Vcs2, p4_s0(), p4_s1()).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"model":2,"n":4,"m":3,"S0":[[0,1,0],[0,1,1],[0,1,1],[0,0,1]],"S1":[[0,1,0],[1,0,1],[0,1,1],[1,0,0]]}"#
        );
        let parsed: Scheme = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, Scheme::Basis(s.clone()));

        let coll = s.to_collections().unwrap();
        assert_eq!(coll.c0().values().sum::<u64>(), 6);
        let cjson = serde_json::to_string(&coll).unwrap();
        let parsed: Scheme = serde_json::from_str(&cjson).unwrap();
        assert_eq!(parsed, Scheme::Collection(coll));

        assert!(serde_json::from_str::<BasisScheme>(
            r#"{"model":1,"n":1,"m":1,"S0":[[0]],"S1":[[1]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<BasisScheme>(
            r#"{"model":2,"n":2,"m":1,"S0":[[0]],"S1":[[1]]}"#
        )
        .is_err());
    }
}
