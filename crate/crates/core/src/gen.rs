//! Random M-matrices and pairs for property tests and fuzzing.

use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use crate::exactla::{Int, IntMatrix};
use crate::mmatrix::is_m_matrix;
use crate::pair::ChipFiringPair;

/// Bounds for generated matrices.
#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub max_dim: usize,
    /// Largest magnitude of an off-diagonal entry.
    pub max_off: i64,
    /// Largest allowed `|det|`.
    pub max_det: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_dim: 3,
            max_off: 2,
            max_det: 60,
        }
    }
}

fn det_within(a: &IntMatrix, max_det: i64) -> bool {
    a.det()
        .ok()
        .and_then(|d: Int| d.abs().to_i64())
        .is_some_and(|d| d != 0 && d <= max_det)
}

/// A random M-matrix: nonpositive off-diagonal entries and a diagonal that
/// dominates each row sum, retried until the result is an M-matrix with
/// small determinant.
pub fn random_m_matrix<R: Rng>(rng: &mut R, cfg: &GenConfig) -> IntMatrix {
    loop {
        let n = rng.gen_range(1..=cfg.max_dim);
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            let mut off = 0;
            for (j, e) in row.iter_mut().enumerate() {
                if i != j {
                    *e = -rng.gen_range(0..=cfg.max_off);
                    off -= *e;
                }
            }
            row[i] = off + rng.gen_range(0..=2);
        }
        let m = IntMatrix::from_i64(&rows).expect("square");
        if is_m_matrix(&m) && det_within(&m, cfg.max_det) {
            return m;
        }
    }
}

/// A random invertible `L` of dimension `n`. Half the time it is `M` with
/// some off-diagonal signs flipped, as a signed graph would give.
pub fn random_l<R: Rng>(rng: &mut R, m: &IntMatrix, cfg: &GenConfig) -> IntMatrix {
    let n = m.rows();
    loop {
        let mut l = m.clone();
        if rng.gen_bool(0.5) {
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        let v = -l.get(i, j).clone();
                        l.set(i, j, v.clone());
                        l.set(j, i, v);
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let v = if i == j {
                        rng.gen_range(1..=4)
                    } else {
                        rng.gen_range(-cfg.max_off..=cfg.max_off)
                    };
                    l.set(i, j, Int::from(v));
                }
            }
        }
        if det_within(&l, cfg.max_det) {
            return l;
        }
    }
}

pub fn random_pair<R: Rng>(rng: &mut R, cfg: &GenConfig) -> ChipFiringPair {
    let m = random_m_matrix(rng, cfg);
    let l = random_l(rng, &m, cfg);
    ChipFiringPair::new(l, m).expect("generated pair is valid")
}
