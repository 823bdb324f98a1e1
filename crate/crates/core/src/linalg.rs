//! Dense matrices over a tower level: row reduction, rank, null spaces,
//! column restriction and expansion of entries into subfield coordinates.

use thiserror::Error;

use crate::gf::{FieldOps, FieldSpec, Felt, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("column indices must be strictly increasing (offending index {0})")]
    Duplicate(usize),
    #[error("empty column index set")]
    EmptyIndexSet,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Row-major matrix whose entries all live at one level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    level: usize,
    data: Vec<Felt>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize, level: usize) -> FMatrix {
        FMatrix { rows, cols, level, data: vec![Felt::zero(level); rows * cols] }
    }

    pub fn identity(n: usize, level: usize) -> FMatrix {
        let mut m = FMatrix::zeros(n, n, level);
        for i in 0..n {
            m.set(i, i, Felt::one(level));
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` is used when `rows` is
    /// empty.
    pub fn from_rows(rows: Vec<Vec<Felt>>, cols: usize, level: usize) -> FMatrix {
        let cols = rows.first().map_or(cols, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        let data = rows.into_iter().flatten().map(|x| x.at(level)).collect();
        FMatrix { rows: n, cols, level, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Felt) {
        self.data[r * self.cols + c] = x.at(self.level);
    }

    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Felt> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(self.cols, self.rows, self.level);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let level = self.level.max(other.level);
        let data = self.data.iter().chain(&other.data).map(|x| x.at(level)).collect();
        FMatrix { rows: self.rows + other.rows, cols: self.cols, level, data }
    }

    pub fn mul(&self, other: &FMatrix, f: &(impl FieldOps + ?Sized)) -> Result<FMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let level = self.level.max(other.level);
        let mut out = FMatrix::zeros(self.rows, other.cols, level);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `M v^T` as a vector of length `rows`.
    pub fn mul_vec(&self, v: &[Felt], f: &(impl FieldOps + ?Sized)) -> Result<Vec<Felt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let level = self.level.max(v.iter().map(|x| x.level()).max().unwrap_or(0));
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(Felt::zero(level), |acc, (&a, &b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        f.add(acc, f.mul(a, b))
                    }
                })
            })
            .collect())
    }

    /// Reduced row echelon form (zero rows last) and the pivot columns.
    pub fn rref(&self, f: &(impl FieldOps + ?Sized)) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pj = m.get(r, j);
                    if !pj.is_zero() {
                        let v = f.sub(m.get(i, j), f.mul(factor, pj));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self, f: &(impl FieldOps + ?Sized)) -> usize {
        self.rref(f).1.len()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_basis(&self, f: &(impl FieldOps + ?Sized)) -> FMatrix {
        let (m, pivots) = self.rref(f);
        FMatrix::from_rows(m.row_vecs().into_iter().take(pivots.len()).collect(), self.cols, self.level)
    }

    /// Basis of `{v : M v^T = 0}` as the rows of the returned matrix, one per
    /// free column, with a 1 in that column.
    pub fn null_space_basis(&self, f: &(impl FieldOps + ?Sized)) -> FMatrix {
        let (m, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&j| {
                let mut v = vec![Felt::zero(self.level); self.cols];
                v[j] = Felt::one(self.level);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, j));
                }
                v
            })
            .collect();
        FMatrix::from_rows(rows, self.cols, self.level)
    }

    /// Some `x` with `M x^T = b`, or `None` when the system is inconsistent.
    pub fn solve_particular(&self, b: &[Felt], f: &(impl FieldOps + ?Sized)) -> Option<Vec<Felt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let level = self.level.max(b.iter().map(|x| x.level()).max().unwrap_or(0));
        let aug_rows = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r]);
                row
            })
            .collect();
        let aug = FMatrix::from_rows(aug_rows, self.cols + 1, level);
        let (m, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Felt::zero(level); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, f: &(impl FieldOps + ?Sized)) -> Result<FMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug_rows = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Felt::one(self.level) } else { Felt::zero(self.level) }));
                row
            })
            .collect();
        let (m, pivots) = FMatrix::from_rows(aug_rows, 2 * n, self.level).rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let rows = (0..n).map(|r| m.row(r)[n..].to_vec()).collect();
        Ok(FMatrix::from_rows(rows, n, self.level))
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &FMatrix, f: &(impl FieldOps + ?Sized)) -> bool {
        let r = self.rank(f);
        self.vstack(other).rank(f) == r
    }

    pub fn row_space_eq(&self, other: &FMatrix, f: &(impl FieldOps + ?Sized)) -> bool {
        self.cols == other.cols && self.row_basis(f) == other.row_basis(f)
    }

    /// Replaces each row by `[level : base]` rows holding the coordinates of
    /// its entries over `base`; the `F_base` kernel is unchanged.
    pub fn subfield_expand(&self, spec: &FieldSpec, base: usize) -> Result<FMatrix, LinalgError> {
        if base > self.level {
            return Err(LinalgError::Field(GfError::LevelMismatch { left: self.level, right: base }));
        }
        let m = spec.degree_over(self.level, base);
        let mut out = FMatrix::zeros(self.rows * m, self.cols, base);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for (k, x) in spec.coords(self.get(r, c), base).into_iter().enumerate() {
                    out.set(r * m + k, c, x);
                }
            }
        }
        Ok(out)
    }

    /// Columns at the strictly increasing positions `idx`.
    pub fn restrict_columns(&self, idx: &[usize]) -> Result<FMatrix, LinalgError> {
        if idx.is_empty() {
            return Err(LinalgError::EmptyIndexSet);
        }
        for (k, &i) in idx.iter().enumerate() {
            if i >= self.cols {
                return Err(LinalgError::IndexOutOfRange { index: i, cols: self.cols });
            }
            if k > 0 && idx[k - 1] >= i {
                return Err(LinalgError::Duplicate(i));
            }
        }
        let rows = (0..self.rows).map(|r| idx.iter().map(|&c| self.get(r, c)).collect()).collect();
        Ok(FMatrix::from_rows(rows, idx.len(), self.level))
    }

    /// Applies a column permutation: column `j` of the result is column
    /// `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> FMatrix {
        assert_eq!(perm.len(), self.cols, "permutation length");
        let rows = (0..self.rows).map(|r| perm.iter().map(|&c| self.get(r, c)).collect()).collect();
        FMatrix::from_rows(rows, self.cols, self.level)
    }

    /// `rows cols` header, then one line of space-separated digit strings per
    /// row.
    pub fn to_text(&self, spec: &FieldSpec) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|&x| spec.format(x)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str, spec: &FieldSpec, level: usize) -> Result<FMatrix, LinalgError> {
        let bad = |msg: &str| LinalgError::Field(GfError::parse(s.lines().next().unwrap_or(""), msg));
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<Result<_, _>>()?;
        let [rows, cols] = header[..] else {
            return Err(bad("header must be `rows cols`"));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines.next().ok_or_else(|| bad("missing row"))?;
            let entries = line.split_whitespace().map(|t| spec.parse(t, level)).collect::<Result<Vec<_>, _>>()?;
            if entries.len() != cols {
                return Err(bad("row length differs from header"));
            }
            data.extend(entries);
        }
        if lines.next().is_some() {
            return Err(bad("trailing rows"));
        }
        Ok(FMatrix { rows, cols, level, data })
    }
}
