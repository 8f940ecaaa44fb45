//! Dense matrices over a finite field and Gaussian elimination.

use serde::{Deserialize, Serialize};

use crate::ffield::{Field, FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Serialized form: `{n, k, field: {p, k}, rows: [[enc]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub k: usize,
    pub field: FieldSpec,
    pub rows: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            let pivot_row: Vec<FieldElement> = self.row(row)[col..].to_vec();
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let factor = self.get(i, col);
                if factor.is_zero() {
                    continue;
                }
                for (off, &pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let j = col + off;
                    let v = f.sub(self.get(i, j), f.mul(factor, pv));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.cols,
            k: self.rows,
            field: self.field.spec().clone(),
            rows: (0..self.rows)
                .map(|i| self.row(i).iter().map(|e| e.enc()).collect())
                .collect(),
        }
    }

    /// One row per line, entries as comma-separated encodings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|e| e.enc().to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    #[test]
    fn rank_basics() {
        let f = make_field(7, 2).unwrap();
        assert_eq!(Matrix::identity(&f, 5).rank(), 5);
        assert_eq!(Matrix::zeros(&f, 3, 4).rank(), 0);
        let e = |n| f.element(n).unwrap();
        let m = Matrix::from_rows(&f, 3, vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.stack(&Matrix::identity(&f, 3)).rank(), 3);
    }

    #[test]
    fn rank_of_vandermonde() {
        let f = make_field(3, 3).unwrap();
        let pts: Vec<FieldElement> = f.elements().take(10).collect();
        let rows = (0..6)
            .map(|i| pts.iter().map(|&x| f.pow(x, i)).collect())
            .collect();
        let m = Matrix::from_rows(&f, 10, rows);
        assert_eq!(m.rank(), 6);
        let json = m.to_json();
        assert_eq!((json.n, json.k), (10, 6));
    }
}
