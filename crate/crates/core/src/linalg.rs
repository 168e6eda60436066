//! Exact rank of sparse integer matrices over the rationals.
//!
//! Rows are inserted one at a time into an echelon basis using fraction-free
//! row combinations `a * r - b * p`, with the row content divided out after
//! each step. Entries are `i64` with checked arithmetic; on overflow the whole
//! computation is redone with big integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

/// Sparse matrix with integer entries, stored as rows of `(column, value)`
/// pairs sorted by column.
#[derive(Debug, Clone, Default)]
pub struct SparseIntMatrix {
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn new() -> Self {
        SparseIntMatrix { rows: Vec::new() }
    }

    pub fn push_row(&mut self, mut row: Vec<(usize, i64)>) {
        row.retain(|&(_, v)| v != 0);
        row.sort_unstable_by_key(|&(c, _)| c);
        self.rows.push(row);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        let small: Vec<Vec<(usize, i64)>> = self.rows.clone();
        match echelon_rank(small) {
            Some(r) => r,
            None => {
                let big = self
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
                    .collect();
                echelon_rank(big).expect("big-integer elimination cannot overflow")
            }
        }
    }
}

fn normalize<T>(row: &mut [(usize, T)])
where
    T: Clone + Integer + Signed,
{
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let flip = row.first().map(|(_, v)| v.is_negative()).unwrap_or(false);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
    if flip {
        for (_, v) in row.iter_mut() {
            *v = -v.clone();
        }
    }
}

/// `a * r - b * p` for sparse rows, where `a`, `b` are the leading entries of
/// `p` and `r`; the leading column cancels.
fn eliminate<T>(r: &[(usize, T)], p: &[(usize, T)]) -> Option<Vec<(usize, T)>>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let a = p[0].1.clone();
    let b = r[0].1.clone();
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < p.len() {
        let (col, val) = match (r.get(i), p.get(j)) {
            (Some((cr, vr)), Some((cp, _))) if cr < cp => {
                i += 1;
                (*cr, a.checked_mul(vr)?)
            }
            (Some((cr, _)), Some((cp, vp))) if cp < cr => {
                j += 1;
                (*cp, T::zero().checked_sub(&b.checked_mul(vp)?)?)
            }
            (Some((cr, vr)), Some((_, vp))) => {
                i += 1;
                j += 1;
                (*cr, a.checked_mul(vr)?.checked_sub(&b.checked_mul(vp)?)?)
            }
            (Some((cr, vr)), None) => {
                i += 1;
                (*cr, a.checked_mul(vr)?)
            }
            (None, Some((cp, vp))) => {
                j += 1;
                (*cp, T::zero().checked_sub(&b.checked_mul(vp)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    Some(out)
}

fn echelon_rank<T>(rows: Vec<Vec<(usize, T)>>) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for mut row in rows {
        normalize(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    row = eliminate(&row, p)?;
                    normalize(&mut row);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}
