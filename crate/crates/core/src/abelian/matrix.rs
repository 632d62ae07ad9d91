use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

/// Exact integer scalars usable in matrices and Smith normal form.
pub trait IntScalar: Integer + Signed + Clone + fmt::Debug + fmt::Display + From<i32> {}

impl<T> IntScalar for T where T: Integer + Signed + Clone + fmt::Debug + fmt::Display + From<i32> {}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(IntMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        IntMatrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let start = range.start;
        Self::from_fn(self.rows, range.len(), |i, j| self[(i, start + j)].clone())
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, range: std::ops::Range<usize>) -> Self {
        let start = range.start;
        Self::from_fn(range.len(), self.cols, |i, j| self[(start + i, j)].clone())
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * q.clone();
            self[(dst, j)] = self[(dst, j)].clone() + v;
        }
    }

    /// `col[dst] += q · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &T) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * q.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = num / prev.clone();
                }
                m[(i, k)] = T::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

impl<T> std::ops::Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Smith normal form `U · M · V = D`.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl<T: IntScalar> Snf<T> {
    /// The nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Checks every postcondition: the identity, unimodularity, diagonal
    /// shape, positivity and the divisibility chain.
    pub fn verify(&self, m: &IntMatrix<T>) -> bool {
        let shape_ok = (0..self.d.rows()).all(|i| {
            (0..self.d.cols()).all(|j| i == j && i < self.rank || self.d[(i, j)].is_zero())
        });
        let factors = self.invariant_factors();
        let chain_ok = factors.iter().all(|x| x.is_positive())
            && factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        shape_ok
            && chain_ok
            && self.u.mul(m).mul(&self.v) == self.d
            && self.u.is_unimodular()
            && self.v.is_unimodular()
    }
}

/// Computes the Smith normal form by alternating row and column elimination.
pub fn smith_normal_form<T: IntScalar>(m: &IntMatrix<T>) -> Snf<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
            let Some((pi, pj)) = pivot else {
                return Snf { u, d, v, rank: t };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    let q = -q;
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    let q = -q;
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match bad_row {
                Some(i) => {
                    d.add_row(t, i, &T::one());
                    u.add_row(t, i, &T::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v, rank: t }
}

/// An integer solution `x` of `a · x = b`, if one exists.
pub fn solve<T: IntScalar>(a: &IntMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![T::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < snf.rank {
            let di = &snf.d[(i, i)];
            if !ubi.is_multiple_of(di) {
                return None;
            }
            y[i] = ubi.clone() / di.clone();
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis (as columns) of the integer null space `{x : a · x = 0}`.
pub fn null_space<T: IntScalar>(a: &IntMatrix<T>) -> IntMatrix<T> {
    let snf = smith_normal_form(a);
    snf.v.columns(snf.rank..a.cols())
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_basis<T: IntScalar>(a: &IntMatrix<T>) -> IntMatrix<T> {
    let snf = smith_normal_form(a);
    a.mul(&snf.v).columns(0..snf.rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(rows: &[&[i64]]) -> IntMatrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn identity_is_its_own_normal_form() {
        let m: IntMatrix<BigInt> = IntMatrix::identity(3);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, m);
        assert!(s.verify(&m));
    }

    #[test]
    fn two_by_two() {
        let m = big(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn column_vector() {
        let m = big(&[&[0], &[0], &[1], &[1], &[0]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1)]);
    }

    #[test]
    fn machine_integers_work_too() {
        let m: IntMatrix<i64> = IntMatrix::from_rows(vec![vec![4, 6], vec![6, 9], vec![2, 3]], 2).unwrap();
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.invariant_factors(), vec![1]);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn determinants() {
        assert_eq!(big(&[&[2, 1], &[7, 4]]).determinant(), BigInt::from(1));
        assert_eq!(big(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).determinant(), BigInt::from(-2));
        assert_eq!(big(&[&[1, 2], &[2, 4]]).determinant(), BigInt::from(0));
    }

    #[test]
    fn empty_shapes() {
        let m: IntMatrix<BigInt> = IntMatrix::zeros(0, 3);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(null_space(&m).cols(), 3);
        let m: IntMatrix<BigInt> = IntMatrix::zeros(2, 0);
        assert!(smith_normal_form(&m).verify(&m));
    }

    #[test]
    fn solving() {
        let a = big(&[&[2, 0], &[0, 3]]);
        let b = [BigInt::from(4), BigInt::from(9)];
        assert_eq!(a.mul_vec(&solve(&a, &b).unwrap()), b.to_vec());
        assert!(solve(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());
        let ns = null_space(&big(&[&[1, 1, 0]]));
        assert_eq!(ns.cols(), 2);
    }
}
