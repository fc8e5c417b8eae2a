use super::rational::Rational;
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let k = rows[i][c].clone();
            for j in c..ncols {
                let v = &rows[r][j] * &k;
                rows[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right kernel `{ y : A y = 0 }` of an `m x n` matrix given by rows.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solves `A y = b` (rows of A, right-hand side b); any particular solution.
pub fn solve(rows: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut y = vec![Rational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        y[p] = aug[i][ncols].clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Rational = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(&a, &[int(2), int(0)]), Some(vec![int(1), int(1)]));
        let b = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(&b, &[int(1), int(3)]), None);
    }
}
