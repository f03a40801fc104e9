//! Small dense integer matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// A product or characteristic polynomial left the `i64` range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in matrix arithmetic")]
pub struct Overflow;

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row slices; all rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, Overflow> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    let t = a.checked_mul(b).ok_or(Overflow)?;
                    out.data[idx] = out.data[idx].checked_add(t).ok_or(Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on overflow.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("matrix product overflow")
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0)
    }

    /// Some power is entrywise positive. Uses Wielandt's bound on the exponent.
    pub fn is_primitive(&self) -> bool {
        if !self.is_square() || self.rows == 0 || !self.is_nonnegative() {
            return false;
        }
        let n = self.rows;
        let pattern: Vec<bool> = self.data.iter().map(|&x| x > 0).collect();
        let mut power = pattern.clone();
        let limit = (n - 1) * (n - 1) + 1;
        for _ in 0..limit {
            if power.iter().all(|&b| b) {
                return true;
            }
            let mut next = vec![false; n * n];
            for i in 0..n {
                for k in 0..n {
                    if !power[i * n + k] {
                        continue;
                    }
                    for j in 0..n {
                        if pattern[k * n + j] {
                            next[i * n + j] = true;
                        }
                    }
                }
            }
            power = next;
        }
        power.iter().all(|&b| b)
    }

    /// Characteristic polynomial `det(xI − M)` by Berkowitz' division-free
    /// algorithm, carried out in `i128`.
    pub fn charpoly(&self) -> Result<IntPoly, Overflow> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(IntPoly::one());
        }
        let a = |i: usize, j: usize| self.get(i, j) as i128;
        let mut v: Vec<i128> = vec![1, -a(0, 0)];
        for r in 1..n {
            let mut t = vec![0i128; r + 2];
            t[0] = 1;
            t[1] = -a(r, r);
            let mut x: Vec<i128> = (0..r).map(|i| a(i, r)).collect();
            for k in 0..r {
                let mut dot: i128 = 0;
                for (j, xj) in x.iter().enumerate() {
                    dot = dot
                        .checked_add(a(r, j).checked_mul(*xj).ok_or(Overflow)?)
                        .ok_or(Overflow)?;
                }
                t[k + 2] = -dot;
                if k + 1 < r {
                    let mut y = vec![0i128; r];
                    for (i, yi) in y.iter_mut().enumerate() {
                        let mut s: i128 = 0;
                        for (j, xj) in x.iter().enumerate() {
                            s = s
                                .checked_add(a(i, j).checked_mul(*xj).ok_or(Overflow)?)
                                .ok_or(Overflow)?;
                        }
                        *yi = s;
                    }
                    x = y;
                }
            }
            let mut nv = vec![0i128; r + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                let mut s: i128 = 0;
                for j in 0..=i.min(r) {
                    s = s
                        .checked_add(t[i - j].checked_mul(v[j]).ok_or(Overflow)?)
                        .ok_or(Overflow)?;
                }
                *slot = s;
            }
            v = nv;
        }
        let mut asc = Vec::with_capacity(n + 1);
        for c in v.iter().rev() {
            asc.push(i64::try_from(*c).map_err(|_| Overflow)?);
        }
        Ok(IntPoly::new(asc))
    }

    /// Traces of `M, M², …, M^count` in `i128`.
    pub fn power_traces(&self, count: usize) -> Result<Vec<i128>, Overflow> {
        assert!(self.is_square());
        let n = self.rows;
        let base: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut cur = base.clone();
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            out.push((0..n).map(|i| cur[i * n + i]).sum());
            if k + 1 == count {
                break;
            }
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    let c = cur[i * n + l];
                    if c == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let t = c.checked_mul(base[l * n + j]).ok_or(Overflow)?;
                        next[i * n + j] = next[i * n + j].checked_add(t).ok_or(Overflow)?;
                    }
                }
            }
            cur = next;
        }
        Ok(out)
    }

    /// Minimum row sum; for a nonnegative matrix this bounds its spectral
    /// radius from below.
    pub fn min_row_sum(&self) -> i64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().sum())
            .min()
            .unwrap_or(0)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>3}", self.get(i, j))?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        assert_eq!(m.charpoly().unwrap(), IntPoly::from_descending(&[1, -3, 1]));
        let c = IntMatrix::from_rows(&[[0, 0, -1], [1, 0, 0], [0, 1, 1]]);
        // companion of x^3 - x^2 + 1
        assert_eq!(
            c.charpoly().unwrap(),
            IntPoly::from_descending(&[1, -1, 0, 1])
        );
        assert_eq!(
            IntMatrix::identity(3).charpoly().unwrap(),
            IntPoly::from_descending(&[1, -3, 3, -1])
        );
    }

    #[test]
    fn charpoly_matches_power_traces() {
        let m = IntMatrix::from_rows(&[[1, 2, 0, -1], [0, 1, 3, 1], [2, 0, 1, 1], [1, 1, 0, 2]]);
        let p = m.charpoly().unwrap();
        let t = m.power_traces(4).unwrap();
        // Newton: p1 = -c_{n-1}
        assert_eq!(t[0], -(p.coeff(3) as i128));
        assert_eq!(t[0], m.trace() as i128);
    }

    #[test]
    fn primitivity() {
        assert!(IntMatrix::from_rows(&[[1, 1], [1, 0]]).is_primitive());
        assert!(!IntMatrix::from_rows(&[[0, 1], [1, 0]]).is_primitive());
        assert!(!IntMatrix::from_rows(&[[1, 0], [1, 1]]).is_primitive());
    }
}
