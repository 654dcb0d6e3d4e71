//! Fraction-free (Bareiss) elimination over the integers for exact rank
//! decisions and linear solves of the orthogonality systems.

use crate::rat::{Integer, Rat};
use rug::Rational;

/// Solve M x = rhs exactly. Returns None when the matrix is singular.
pub fn solve_exact(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rhs.len();
    assert_eq!(rows.len(), n);
    if n == 0 {
        return Some(vec![]);
    }
    // clear denominators per row
    let mut m: Vec<Vec<Integer>> = Vec::with_capacity(n);
    for (row, r) in rows.iter().zip(rhs) {
        assert_eq!(row.len(), n);
        let mut lcm = Integer::from(1);
        for x in row.iter().chain(std::iter::once(r)) {
            lcm = lcm.lcm(x.denom());
        }
        let mut irow = Vec::with_capacity(n + 1);
        for x in row.iter().chain(std::iter::once(r)) {
            let v = Rational::from(x * Rational::from(lcm.clone()));
            debug_assert_eq!(*v.denom(), 1);
            irow.push(v.numer().clone());
        }
        m.push(irow);
    }
    // Bareiss forward elimination
    let mut prev = Integer::from(1);
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0)?;
            m.swap(k, swap);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = Integer::from(&m[i][j] * &m[k][k]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = Integer::new();
        }
        prev = m[k][k].clone();
    }
    if m[n - 1][n - 1] == 0 {
        return None;
    }
    // back substitution in rationals
    let mut x = vec![Rat::new(); n];
    for i in (0..n).rev() {
        let mut s = Rational::from(m[i][n].clone());
        for j in i + 1..n {
            s -= Rational::from(&x[j] * Rational::from(m[i][j].clone()));
        }
        x[i] = s / Rational::from(m[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1 -> (2, 1)
        let rows = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let rhs = vec![rat(3, 1), rat(1, 1)];
        assert_eq!(solve_exact(&rows, &rhs).unwrap(), vec![rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn rational_entries() {
        // (1/2)x + (1/3)y = 1 ; (1/5)x - y = 0
        let rows = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 5), rat(-1, 1)]];
        let rhs = vec![rat(1, 1), rat(0, 1)];
        let x = solve_exact(&rows, &rhs).unwrap();
        assert_eq!(x[1], Rational::from(&x[0] * rat(1, 5)));
        let chk = Rational::from(&x[0] * rat(1, 2)) + Rational::from(&x[1] * rat(1, 3));
        assert_eq!(chk, rat(1, 1));
    }

    #[test]
    fn detects_singularity() {
        let rows = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        let rhs = vec![rat(1, 1), rat(2, 1)];
        assert!(solve_exact(&rows, &rhs).is_none());
    }
}
