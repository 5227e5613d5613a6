//! Rank of small dense matrices over a finite field.

use alloc::vec::Vec;

use crate::field::{FieldElement, GaloisField};

/// Rank of the row-major `rows x cols` matrix, destroying it in the process.
pub fn rank_in_place(
    field: &GaloisField,
    m: &mut [FieldElement],
    rows: usize,
    cols: usize,
) -> usize {
    debug_assert_eq!(m.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in col..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field.inv(m[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let lead = m[r * cols + col];
            if lead.is_zero() {
                continue;
            }
            let factor = field.mul(lead, inv);
            for c in col..cols {
                let sub = field.mul(factor, m[rank * cols + c]);
                m[r * cols + c] = field.sub(m[r * cols + c], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the matrix whose rows are `rows`; all rows must have equal length.
pub fn rank(field: &GaloisField, rows: &[Vec<FieldElement>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut flat: Vec<FieldElement> = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        assert_eq!(r.len(), cols, "ragged matrix");
        flat.extend_from_slice(r);
    }
    rank_in_place(field, &mut flat, rows.len(), cols)
}
