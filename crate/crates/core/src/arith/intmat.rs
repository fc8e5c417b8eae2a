use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (p*a + q*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = u * &x + v * &y;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = u * &x + v * &y;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        hermite_normal_form(self).rows
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form: returns `(U, D, V)` with `U * A * V = D`, `U` and `V`
/// unimodular, `D` diagonal with non-negative entries `d_1 | d_2 | ...`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // pivot: smallest nonzero |entry| in the trailing block
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot with gcd row operations
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                if (&d[(i, t)] % &d[(t, t)]).is_zero() {
                    let k = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row(i, t, &k);
                    u.add_row(i, t, &k);
                    continue;
                }
                let (p, q, g) = bezout(&d[(t, t)], &d[(i, t)]);
                let a_t = &d[(t, t)] / &g;
                let a_i = &d[(i, t)] / &g;
                let (uu, vv) = (-a_i, a_t);
                d.combine_rows(t, i, &p, &q, &uu, &vv);
                u.combine_rows(t, i, &p, &q, &uu, &vv);
            }
            // clear row t right of the pivot with gcd column operations
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                if (&d[(t, j)] % &d[(t, t)]).is_zero() {
                    let k = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col(j, t, &k);
                    v.add_col(j, t, &k);
                    continue;
                }
                let (p, q, g) = bezout(&d[(t, t)], &d[(t, j)]);
                let a_t = &d[(t, t)] / &g;
                let a_j = &d[(t, j)] / &g;
                let (uu, vv) = (-a_j, a_t);
                d.combine_cols(t, j, &p, &q, &uu, &vv);
                v.combine_cols(t, j, &p, &q, &uu, &vv);
                dirty = true;
            }
            if dirty && (t + 1..m).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // divisibility: pivot must divide the whole trailing block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &d[(t, t)]).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Returns `(p, q, g)` with `p*a + q*b = g = gcd(a, b) > 0` (for not both zero).
fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.x, -e.y, -e.gcd)
    } else {
        (e.x, e.y, e.gcd)
    }
}

/// Row-style Hermite normal form of the row lattice: zero rows removed,
/// pivots positive and strictly increasing in column, entries above each
/// pivot reduced into `[0, pivot)`. Unique for a given lattice.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows, h.cols);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                continue;
            }
            let (p, q, g) = bezout(&h[(r, c)], &h[(i, c)]);
            let a_r = &h[(r, c)] / &g;
            let a_i = &h[(i, c)] / &g;
            let (uu, vv) = (-a_i, a_r);
            h.combine_rows(r, i, &p, &q, &uu, &vv);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let k = h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row(i, r, &-k);
        }
        r += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(&rows, n)
}

/// Diagonal entries of the Smith form (the invariant factors, zeros included).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (_, d, _) = smith_normal_form(a);
    (0..a.rows.min(a.cols)).map(|i| d[(i, i)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_case() {
        let i2 = IntMatrix::identity(2);
        let (u, d, v) = smith_normal_form(&i2);
        assert_eq!(u, i2);
        assert_eq!(d, i2);
        assert_eq!(v, i2);
    }

    #[test]
    fn two_by_two() {
        // [[2,4],[6,8]]: gcd of entries 2, det -8 so D = diag(2, 4).
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(u.mul(&a).mul(&v), d);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(v.det().abs(), BigInt::one());
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::from_i64(&[&[0]]);
        let (_, d, _) = smith_normal_form(&a);
        assert_eq!(d, a);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntMatrix::from_i64(&[&[2, 2], &[1, 3]]);
        let b = IntMatrix::from_i64(&[&[3, 5], &[1, 3], &[0, 0]]);
        // rows of b: (3,5) = (2,2) + (1,3); (1,3); both lattices are the same
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(hermite_normal_form(&a), IntMatrix::from_i64(&[&[1, 3], &[0, 4]]));
    }

    #[test]
    fn determinant() {
        let a = IntMatrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert_eq!(a.det(), BigInt::from(2 * (3 - 2) + (1 - 3)));
    }
}
