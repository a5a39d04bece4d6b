use rug::Float;

use super::complex::ComplexBall;

use crate::error::{Error, Result};

/// Dense matrix of complex balls.
#[derive(Clone, Debug)]
pub struct BallMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexBall>,
}

impl BallMatrix {
    pub fn zero(rows: usize, cols: usize, prec: u32) -> Self {
        BallMatrix {
            rows,
            cols,
            data: vec![ComplexBall::zero(prec); rows * cols],
        }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = BallMatrix::zero(n, n, prec);
        for i in 0..n {
            *m.at_mut(i, i) = ComplexBall::one(prec);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ComplexBall>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(BallMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Build from column vectors.
    pub fn from_columns(cols: Vec<Vec<ComplexBall>>, prec: u32) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let mut m = BallMatrix::zero(r, c, prec);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                *m.at_mut(i, j) = v;
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

    pub fn at(&self, i: usize, j: usize) -> &ComplexBall {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut ComplexBall {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &ComplexBall> {
        self.data.iter()
    }

    /// Largest entry radius.
    pub fn max_rad(&self) -> Float {
        let mut m = super::rad_zero();
        for e in &self.data {
            let r = e.rad_upper();
            if r > m {
                m = r;
            }
        }
        m
    }

    pub fn mul(&self, other: &BallMatrix, prec: u32) -> Result<BallMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BallMatrix::zero(self.rows, other.cols, prec);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ComplexBall::zero(prec);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j), prec), prec);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ComplexBall], prec: u32) -> Result<Vec<ComplexBall>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vec[{}]",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = ComplexBall::zero(prec);
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(&v[k], prec), prec);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Solve A X = B by Gaussian elimination with certified nonzero pivots.
    ///
    /// Interval elimination encloses the solutions of every point system
    /// contained in (A, B). A pivot whose ball contains zero signals
    /// insufficient precision; callers retry at higher precision.
    pub fn solve(&self, rhs: &BallMatrix, prec: u32) -> Result<BallMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("solve needs a square matrix".into()));
        }
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("solve rhs row mismatch".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();

        for col in 0..n {
            // pivot: row with the largest certified lower bound of |entry|
            let mut best = col;
            let mut best_mag = a.at(col, col).mag_lower();
            for r in (col + 1)..n {
                let m = a.at(r, col).mag_lower();
                if m > best_mag {
                    best_mag = m;
                    best = r;
                }
            }
            if best_mag.is_zero() {
                return Err(Error::PivotContainsZero);
            }
            if best != col {
                for j in 0..n {
                    let tmp = a.at(col, j).clone();
                    *a.at_mut(col, j) = a.at(best, j).clone();
                    *a.at_mut(best, j) = tmp;
                }
                for j in 0..b.cols {
                    let tmp = b.at(col, j).clone();
                    *b.at_mut(col, j) = b.at(best, j).clone();
                    *b.at_mut(best, j) = tmp;
                }
            }
            let piv = a.at(col, col).clone();
            for r in (col + 1)..n {
                if a.at(r, col).is_exact_zero() {
                    continue;
                }
                let factor = a.at(r, col).checked_div(&piv, prec)?;
                for j in col..n {
                    let t = factor.mul(a.at(col, j), prec);
                    *a.at_mut(r, j) = a.at(r, j).sub(&t, prec);
                }
                // the eliminated entry is exactly zero by construction
                *a.at_mut(r, col) = ComplexBall::zero(prec);
                for j in 0..b.cols {
                    let t = factor.mul(b.at(col, j), prec);
                    *b.at_mut(r, j) = b.at(r, j).sub(&t, prec);
                }
            }
        }

        // back substitution
        let mut x = BallMatrix::zero(n, b.cols, prec);
        for col in 0..b.cols {
            for i in (0..n).rev() {
                let mut acc = b.at(i, col).clone();
                for k in (i + 1)..n {
                    let t = a.at(i, k).mul(x.at(k, col), prec);
                    acc = acc.sub(&t, prec);
                }
                *x.at_mut(i, col) = acc.checked_div(a.at(i, i), prec)?;
            }
        }
        Ok(x)
    }

    /// Do all entries of two equally-shaped matrices pairwise intersect?
    pub fn intersects(&self, other: &BallMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.intersects(b))
    }

    /// Does every entry contain the corresponding entry of `other`?
    pub fn contains(&self, other: &BallMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.contains_ball(b))
    }

    /// Hull that contains the identity check: every diagonal entry contains
    /// 1, every off-diagonal entry contains 0.
    pub fn contains_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let zero = rug::Rational::new();
        let one = rug::Rational::from(1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &one } else { &zero };
                if !self.at(i, j).contains_rational_pair(want, &zero) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn ball_int_matrix(vals: &[&[i64]], prec: u32) -> BallMatrix {
        BallMatrix::from_rows(
            vals.iter()
                .map(|row| row.iter().map(|&v| ComplexBall::from_i64(v, prec)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = ball_int_matrix(&[&[1, 2], &[3, 4]], 64);
        let i = BallMatrix::identity(2, 64);
        let p = a.mul(&i, 64).unwrap();
        assert!(p.contains(&a));
        assert!(a.contains(&p));
    }

    #[test]
    fn exact_integer_product() {
        let a = ball_int_matrix(&[&[1, 2], &[3, 4]], 64);
        let b = ball_int_matrix(&[&[5, 6], &[7, 8]], 64);
        let p = a.mul(&b, 64).unwrap();
        let expect = [[19i64, 22], [43, 50]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(p
                    .at(i, j)
                    .contains_rational_pair(&Rational::from(expect[i][j]), &Rational::new()));
            }
        }
    }

    #[test]
    fn associativity_contains_exact() {
        let a = ball_int_matrix(&[&[1, 2], &[3, 4]], 64);
        let b = ball_int_matrix(&[&[0, 1], &[1, 1]], 64);
        let c = ball_int_matrix(&[&[2, 0], &[1, 3]], 64);
        let p1 = a.mul(&b, 64).unwrap().mul(&c, 64).unwrap();
        let p2 = a.mul(&b.mul(&c, 64).unwrap(), 64).unwrap();
        assert!(p1.intersects(&p2));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let i = BallMatrix::identity(3, 64);
        let b = ball_int_matrix(&[&[1, 2], &[3, 4], &[5, 6]], 64);
        let x = i.solve(&b, 64).unwrap();
        assert!(x.contains(&b) || b.contains(&x) || x.intersects(&b));
    }

    #[test]
    fn solve_contains_exact_inverse_application() {
        // A = [[2,1],[1,1]], A^{-1} = [[1,-1],[-1,2]]
        let a = ball_int_matrix(&[&[2, 1], &[1, 1]], 64);
        let b = BallMatrix::identity(2, 64);
        let x = a.solve(&b, 64).unwrap();
        let expect = [[1i64, -1], [-1, 2]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(x
                    .at(i, j)
                    .contains_rational_pair(&Rational::from(expect[i][j]), &Rational::new()));
            }
        }
    }

    #[test]
    fn solve_zero_row_fails() {
        let a = ball_int_matrix(&[&[1, 1], &[0, 0]], 64);
        let b = BallMatrix::identity(2, 64);
        assert!(matches!(a.solve(&b, 64), Err(Error::PivotContainsZero)));
    }
}
