//! Chip-firing on M-matrices: stabilization, z-superstability, the
//! superstable and critical configurations, and per-class lookup tables.

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{Int, IntMatrix, IntVector, RatMatrix, Vector};
use crate::lattice::{ClassId, ClassIndex, DEFAULT_ENUMERATION_CAP};

/// A chip configuration: one integer per non-sink site.
pub type Configuration = IntVector;

/// Positive diagonal, nonpositive off-diagonal, invertible, and entrywise
/// nonnegative inverse.
pub fn is_m_matrix(m: &IntMatrix) -> bool {
    sign_pattern_violation(m).is_none()
        && m.inverse()
            .map(|inv| inv.entries().iter().all(|x| !x.is_negative()))
            .unwrap_or(false)
}

fn sign_pattern_violation(m: &IntMatrix) -> Option<String> {
    if !m.is_square() || m.rows() == 0 {
        return Some(format!("shape {}x{} is not square", m.rows(), m.cols()));
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if i == j && !e.is_positive() {
                return Some(format!(
                    "diagonal entry ({}, {}) = {e} is not positive",
                    i + 1,
                    j + 1
                ));
            }
            if i != j && e.is_positive() {
                return Some(format!(
                    "off-diagonal entry ({}, {}) = {e} is positive",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    None
}

/// An M-matrix with everything the pair machinery needs precomputed.
#[derive(Debug)]
pub struct MMatrix {
    m: IntMatrix,
    inverse: RatMatrix,
    det: Int,
    classes: ClassIndex,
    c_max: Configuration,
    superstables: Vec<Configuration>,
    criticals: Vec<Configuration>,
    sst_by_class: HashMap<ClassId, usize>,
    crit_by_class: HashMap<ClassId, usize>,
}

impl MMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        Self::with_cap(m, DEFAULT_ENUMERATION_CAP)
    }

    /// Validates `m` and builds the superstable/critical class tables.
    /// Fails when the stable box holds more than `cap` candidates.
    pub fn with_cap(m: IntMatrix, cap: u64) -> Result<Self> {
        if let Some(why) = sign_pattern_violation(&m) {
            return Err(Error::NotMMatrix(why));
        }
        let inverse = m
            .inverse()
            .map_err(|_| Error::NotMMatrix("matrix is singular".into()))?;
        if inverse.entries().iter().any(Signed::is_negative) {
            return Err(Error::NotMMatrix("inverse has a negative entry".into()));
        }
        let det = m.det()?;
        let classes = ClassIndex::new(&m)?;
        let c_max = Vector(m.diag().iter().map(|d| d - 1).collect());

        let mut mm = MMatrix {
            m,
            inverse,
            det,
            classes,
            c_max,
            superstables: Vec::new(),
            criticals: Vec::new(),
            sst_by_class: HashMap::new(),
            crit_by_class: HashMap::new(),
        };
        mm.build_tables(cap)?;
        Ok(mm)
    }

    fn build_tables(&mut self, cap: u64) -> Result<()> {
        let bounds: Vec<u64> = self
            .c_max
            .iter()
            .map(|c| c.to_u64().unwrap_or(u64::MAX))
            .collect();
        let box_size = bounds
            .iter()
            .try_fold(1u64, |acc, b| acc.checked_mul(b + 1));
        match box_size {
            Some(size) if size <= cap => {}
            _ => {
                return Err(Error::CapExceeded {
                    count: bounds.iter().map(|b| Int::from(*b) + 1).product(),
                    cap,
                })
            }
        }
        let candidates = box_points(&bounds);
        self.superstables = candidates
            .into_par_iter()
            .filter(|s| self.is_z_superstable(s))
            .collect();
        if Int::from(self.superstables.len()) != self.det {
            return Err(Error::Verification(format!(
                "found {} superstables but det M = {}",
                self.superstables.len(),
                self.det
            )));
        }
        self.criticals = self
            .superstables
            .iter()
            .map(|s| self.classical_dual(s))
            .collect();
        self.criticals.sort();

        for (table, configs) in [
            (&mut self.sst_by_class, &self.superstables),
            (&mut self.crit_by_class, &self.criticals),
        ] {
            for (i, c) in configs.iter().enumerate() {
                let id = self.classes.class_id(c)?;
                if table.insert(id, i).is_some() {
                    return Err(Error::Verification(format!(
                        "two configurations share the class of {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn class_index(&self) -> &ClassIndex {
        &self.classes
    }

    /// `(M_11 - 1, ..., M_nn - 1)`, the coordinatewise-maximal critical.
    pub fn c_max(&self) -> &Configuration {
        &self.c_max
    }

    /// All superstables, lexicographically sorted.
    pub fn superstables(&self) -> &[Configuration] {
        &self.superstables
    }

    /// All criticals, lexicographically sorted.
    pub fn criticals(&self) -> &[Configuration] {
        &self.criticals
    }

    fn check_dim(&self, v: &IntVector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `c - M e_i`; legality is not checked.
    pub fn fire(&self, c: &Configuration, i: usize) -> Result<Configuration> {
        self.check_dim(c)?;
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.dim(),
            });
        }
        Ok(c.sub(&self.m.column(i)))
    }

    pub fn is_ready(&self, c: &Configuration, i: usize) -> bool {
        c[i] >= *self.m.get(i, i)
    }

    pub fn ready_sites(&self, c: &Configuration) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_ready(c, i)).collect()
    }

    pub fn is_stable(&self, c: &Configuration) -> bool {
        (0..self.dim()).all(|i| !self.is_ready(c, i))
    }

    /// Stabilizes by repeatedly firing the lowest-index ready site.
    pub fn stabilize(&self, c: &Configuration) -> Result<Configuration> {
        self.check_effective(c)?;
        let mut c = c.clone();
        while let Some(i) = (0..self.dim()).find(|&i| self.is_ready(&c, i)) {
            // firing i several times in a row stays legal while c_i >= M_ii
            let times = &c[i] / self.m.get(i, i);
            c = c.sub(&self.m.column(i).scale(&times));
        }
        Ok(c)
    }

    /// Stabilizes with single firings, letting `choose` pick among the ready sites.
    pub fn stabilize_by(
        &self,
        c: &Configuration,
        mut choose: impl FnMut(&[usize]) -> usize,
    ) -> Result<Configuration> {
        self.check_effective(c)?;
        let mut c = c.clone();
        loop {
            let ready = self.ready_sites(&c);
            if ready.is_empty() {
                return Ok(c);
            }
            let i = choose(&ready);
            if !ready.contains(&i) {
                return Err(Error::NotReady {
                    site: i,
                    at: c.to_string(),
                });
            }
            c = c.sub(&self.m.column(i));
        }
    }

    fn check_effective(&self, c: &Configuration) -> Result<()> {
        self.check_dim(c)?;
        if !c.is_nonnegative() {
            return Err(Error::NotEffective(c.to_string()));
        }
        Ok(())
    }

    /// Box bound for the z-superstability search: `floor(M^{-1} s)`.
    ///
    /// If `z >= 0` and `s - M z >= 0` then `z = M^{-1} s - M^{-1}(s - M z) <= M^{-1} s`
    /// because `M^{-1} >= 0`, so every witness lies in this box.
    pub fn superstability_bound(&self, s: &Configuration) -> IntVector {
        self.inverse
            .mul_vec(&s.to_rational())
            .expect("dimension checked")
            .floor()
    }

    /// A nonzero `z >= 0` with `s - M z >= 0` inside `[0, bound]`, if any.
    pub fn find_multifiring(&self, s: &Configuration, bound: &IntVector) -> Option<IntVector> {
        let bounds: Vec<u64> = bound.iter().map(|b| b.to_u64().unwrap_or(0)).collect();
        let n = self.dim();
        let mut z = vec![0u64; n];
        loop {
            let mut i = n;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if z[i] < bounds[i] {
                    z[i] += 1;
                    break;
                }
                z[i] = 0;
            }
            let zv = Vector(z.iter().map(|&x| Int::from(x)).collect());
            let rest = s.sub(&self.m.mul_vec(&zv).expect("dimension checked"));
            if rest.is_nonnegative() {
                return Some(zv);
            }
        }
    }

    /// True iff `s >= 0` and no nonzero `z >= 0` keeps `s - M z` effective.
    pub fn is_z_superstable(&self, s: &Configuration) -> bool {
        if s.len() != self.dim() || !s.is_nonnegative() {
            return false;
        }
        let bound = self.superstability_bound(s);
        self.find_multifiring(s, &bound).is_none()
    }

    /// `c_max - v`.
    pub fn classical_dual(&self, v: &Configuration) -> Configuration {
        self.c_max.sub(v)
    }

    /// The superstable in the class of `v` (any integer vector).
    pub fn sstab_of_class(&self, v: &IntVector) -> Result<&Configuration> {
        let id = self.classes.class_id(v)?;
        Ok(&self.superstables[self.sst_by_class[&id]])
    }

    /// The critical in the class of `v` (any integer vector).
    pub fn crit_of_class(&self, v: &IntVector) -> Result<&Configuration> {
        let id = self.classes.class_id(v)?;
        Ok(&self.criticals[self.crit_by_class[&id]])
    }

    pub fn is_superstable(&self, v: &IntVector) -> bool {
        v.len() == self.dim() && self.sstab_of_class(v).map(|s| s == v).unwrap_or(false)
    }

    pub fn is_critical(&self, v: &IntVector) -> bool {
        v.len() == self.dim() && self.crit_of_class(v).map(|c| c == v).unwrap_or(false)
    }
}

/// All points of the box `[0, b_1] x ... x [0, b_n]` in lexicographic order.
fn box_points(bounds: &[u64]) -> Vec<IntVector> {
    let mut out = Vec::new();
    let mut z = vec![0u64; bounds.len()];
    loop {
        out.push(Vector(z.iter().map(|&x| Int::from(x)).collect()));
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if z[i] < bounds[i] {
                z[i] += 1;
                break;
            }
            z[i] = 0;
        }
    }
}

/// Reduced Laplacian of the complete graph `K_n` (sink removed).
pub fn reduced_complete_laplacian(n: usize) -> IntMatrix {
    let k = n - 1;
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = if i == j { n as i64 - 1 } else { -1 };
            m.set(i, j, Int::from(v));
        }
    }
    m
}

impl MMatrix {
    /// The critical in the class of `v`, computed by stabilizing a class member
    /// that is ready everywhere. Independent of the lookup tables.
    pub fn critical_by_reachability(&self, v: &IntVector) -> Result<Configuration> {
        self.check_dim(v)?;
        // det(M) * 1 = M adj(M) 1 lies in the lattice, so shifting by it keeps the class
        let shift = Vector(vec![self.det.clone(); self.dim()]);
        let mut d = v.clone();
        while d.iter().zip(self.m.diag().iter()).any(|(x, m)| x < m) {
            d = d.add(&shift);
        }
        self.stabilize(&d)
    }
}
