//! Small exact linear algebra helpers: rational solves and nullspaces,
//! integer lattice checks, and full-cone tests for semigroup generation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Reduced row echelon form in place; returns pivot column per row.
fn rref(mat: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][c].clone().recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Solves `A x = b` for the matrix with columns `cols`; `None` when
/// inconsistent. Free variables (if the columns are dependent) are set to
/// zero.
pub fn solve_columns(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    let k = cols.len();
    if k == 0 {
        return if b.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][k].clone();
    }
    Some(x)
}

/// Basis of the right nullspace of the row matrix `rows` (dimension `cols`).
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut mat: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = rref(&mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -mat[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut mat = rows.to_vec();
    rref(&mut mat).len()
}

/// True when the integer vectors span `Z^dim` as a lattice. Hermite-style
/// column elimination: the lattice is full iff every pivot is a unit.
pub fn spans_full_integer_lattice(vecs: &[Vec<BigInt>], dim: usize) -> bool {
    if dim == 0 {
        return true;
    }
    let mut active: Vec<Vec<BigInt>> = vecs.to_vec();
    for c in 0..dim {
        loop {
            let mut idxs: Vec<usize> = (0..active.len())
                .filter(|&i| !active[i][c].is_zero())
                .collect();
            if idxs.is_empty() {
                return false;
            }
            idxs.sort_by(|&i, &j| active[i][c].abs().cmp(&active[j][c].abs()));
            let pi = idxs[0];
            if idxs.len() == 1 {
                if active[pi][c].abs() != BigInt::one() {
                    return false;
                }
                active.swap_remove(pi);
                break;
            }
            let pivot_row = active[pi].clone();
            let p = pivot_row[c].clone();
            for &j in &idxs[1..] {
                let q = active[j][c].div_floor(&p);
                for (a, b) in active[j].iter_mut().zip(pivot_row.iter()) {
                    *a -= &q * b;
                }
            }
        }
    }
    true
}

/// True when the rational cone generated by `vecs` is all of `Q^dim`,
/// i.e. there is no nonzero `y` with `<y, v> >= 0` for every generator.
pub fn cone_is_full_space(vecs: &[Vec<BigInt>], dim: usize) -> bool {
    if dim == 0 {
        return true;
    }
    let rows: Vec<Vec<Rat>> = vecs
        .iter()
        .map(|v| v.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    if rank(&rows) < dim {
        return false;
    }
    if dim == 1 {
        let pos = vecs.iter().any(|v| v[0].is_positive());
        let neg = vecs.iter().any(|v| v[0].is_negative());
        return pos && neg;
    }
    // The dual cone {y : <y,v> >= 0 for all v} is pointed since the vectors
    // span; if it is nonzero it has an extreme ray determined by dim-1
    // linearly independent active constraints.
    let k = rows.len();
    let mut subset: Vec<usize> = (0..dim - 1).collect();
    loop {
        let sel: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
        if rank(&sel) == dim - 1 {
            for y in nullspace(&sel, dim) {
                let neg_y: Vec<Rat> = y.iter().map(|x| -x.clone()).collect();
                for cand in [y, neg_y] {
                    let ok = rows.iter().all(|v| {
                        let dot = v
                            .iter()
                            .zip(cand.iter())
                            .map(|(a, b)| a * b)
                            .fold(Rat::zero(), |s, t| s + t);
                        !dot.is_negative()
                    });
                    if ok {
                        return false;
                    }
                }
            }
        }
        let mut i = subset.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if subset[i] + (subset.len() - i) < k {
                subset[i] += 1;
                for j in i + 1..subset.len() {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn solve_simple() {
        let cols = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        let x = solve_columns(&cols, &[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(2)]);
        assert!(solve_columns(&[vec![rat(1), rat(0)]], &[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn nullspace_of_plane() {
        let rows = vec![vec![rat(1), rat(1), rat(0)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(v[0].clone() + v[1].clone(), rat(0));
        }
    }

    #[test]
    fn lattice_span() {
        assert!(spans_full_integer_lattice(&[b(&[1, 0]), b(&[0, 1])], 2));
        assert!(spans_full_integer_lattice(&[b(&[2, 1]), b(&[1, 1])], 2));
        assert!(spans_full_integer_lattice(&[b(&[3, 1]), b(&[2, 1])], 2));
        assert!(!spans_full_integer_lattice(&[b(&[2, 0]), b(&[0, 1])], 2));
        assert!(!spans_full_integer_lattice(&[b(&[1, 1])], 2));
        assert!(spans_full_integer_lattice(&[], 0));
    }

    #[test]
    fn cone_fullness() {
        assert!(cone_is_full_space(
            &[b(&[1, 0]), b(&[-1, 0]), b(&[0, 1]), b(&[0, -1])],
            2
        ));
        assert!(!cone_is_full_space(&[b(&[1, 0]), b(&[0, 1])], 2));
        assert!(!cone_is_full_space(
            &[b(&[1, 0]), b(&[0, 1]), b(&[1, -1])],
            2
        ));
        assert!(cone_is_full_space(
            &[b(&[1, 0]), b(&[0, 1]), b(&[-1, -1])],
            2
        ));
        assert!(cone_is_full_space(&[b(&[1]), b(&[-1])], 1));
        assert!(!cone_is_full_space(&[b(&[1])], 1));
    }
}
