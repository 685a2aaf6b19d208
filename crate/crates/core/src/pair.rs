//! Chip-firing pairs `(L, M)`: the valid configuration space `S+`, its
//! preimage space `R+`, firing in `R+`, and the superstable/critical sweep.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{floor_frac_split, Int, IntMatrix, IntVector, RatMatrix, RatVector, Rational};
use crate::lattice::{ClassIndex, DEFAULT_ENUMERATION_CAP};
use crate::mmatrix::MMatrix;

/// An invertible `L` together with an M-matrix `M`.
#[derive(Debug, Clone)]
pub struct ChipFiringPair {
    l: IntMatrix,
    m: Arc<MMatrix>,
    lm_inv: RatMatrix,
    ml_inv: RatMatrix,
    l_classes: ClassIndex,
    det_l: Int,
    cap: u64,
}

/// One configuration of a pair seen from both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairConfig {
    pub config: IntVector,
    pub preimage: RatVector,
    pub floor: IntVector,
    pub frac: RatVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_superstable: bool,
    pub is_critical: bool,
}

impl ChipFiringPair {
    pub fn new(l: IntMatrix, m: IntMatrix) -> Result<Self> {
        Self::with_cap(l, m, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(l: IntMatrix, m: IntMatrix, cap: u64) -> Result<Self> {
        let m = MMatrix::with_cap(m, cap)?;
        Self::from_shared(l, Arc::new(m), cap)
    }

    /// Builds a pair around an already-validated `M`, so sweeps over many
    /// `L` with a common `M` only pay for the M-side tables once.
    pub fn from_shared(l: IntMatrix, m: Arc<MMatrix>, cap: u64) -> Result<Self> {
        let n = l.require_square()?;
        if n != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                found: n,
            });
        }
        let det_l = l.det()?;
        if det_l.is_zero() {
            return Err(Error::Singular);
        }
        let l_inv = l.inverse()?;
        let lq = l.to_rational();
        let mq = m.matrix().to_rational();
        let lm_inv = lq.mul(m.inverse())?;
        let ml_inv = mq.mul(&l_inv)?;
        if lm_inv.mul(&mq)? != lq || ml_inv.mul(&lq)? != mq {
            return Err(Error::Verification(
                "cached LM^-1 / ML^-1 are inconsistent".into(),
            ));
        }
        let l_classes = ClassIndex::new(&l)?;
        Ok(ChipFiringPair {
            l,
            m,
            lm_inv,
            ml_inv,
            l_classes,
            det_l,
            cap,
        })
    }

    pub fn l(&self) -> &IntMatrix {
        &self.l
    }

    pub fn m(&self) -> &MMatrix {
        &self.m
    }

    pub fn shared_m(&self) -> Arc<MMatrix> {
        Arc::clone(&self.m)
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn lm_inv(&self) -> &RatMatrix {
        &self.lm_inv
    }

    pub fn ml_inv(&self) -> &RatMatrix {
        &self.ml_inv
    }

    pub fn det_l(&self) -> &Int {
        &self.det_l
    }

    pub fn det_m(&self) -> &Int {
        self.m.det()
    }

    pub fn l_class_index(&self) -> &ClassIndex {
        &self.l_classes
    }

    /// `x >= 0` and `LM^{-1} x` integral.
    pub fn rplus_member(&self, x: &RatVector) -> bool {
        x.len() == self.dim()
            && x.is_nonnegative()
            && self
                .lm_inv
                .mul_vec(x)
                .map(|y| y.is_integral())
                .unwrap_or(false)
    }

    /// `ML^{-1} c >= 0`.
    pub fn splus_member(&self, c: &IntVector) -> bool {
        c.len() == self.dim() && self.to_preimage_unchecked(c).is_nonnegative()
    }

    fn to_preimage_unchecked(&self, c: &IntVector) -> RatVector {
        self.ml_inv
            .mul_vec(&c.to_rational())
            .expect("dimension checked")
    }

    /// `ML^{-1} c`; no membership check.
    pub fn to_preimage(&self, c: &IntVector) -> Result<RatVector> {
        self.check_dim(c.len())?;
        Ok(self.to_preimage_unchecked(c))
    }

    /// `LM^{-1} x` for `x` in `R+`.
    pub fn to_config(&self, x: &RatVector) -> Result<IntVector> {
        if !self.rplus_member(x) {
            return Err(Error::NotInRPlus(x.to_string()));
        }
        Ok(self
            .lm_inv
            .mul_vec(x)?
            .to_integer()
            .expect("membership implies integral"))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    fn check_site(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.dim(),
            });
        }
        Ok(())
    }

    /// Whether `x - M e_i` stays in `R+`. Only nonnegativity of coordinate
    /// `i` can fail: `M e_i` maps to the integral `L e_i` and the other
    /// coordinates only grow.
    pub fn ready_to_fire(&self, x: &RatVector, i: usize) -> Result<bool> {
        if !self.rplus_member(x) {
            return Err(Error::NotInRPlus(x.to_string()));
        }
        self.check_site(i)?;
        Ok(x[i] >= Rational::from_integer(self.m.matrix().get(i, i).clone()))
    }

    pub fn fire_rplus(&self, x: &RatVector, i: usize) -> Result<RatVector> {
        if !self.ready_to_fire(x, i)? {
            return Err(Error::NotReady {
                site: i,
                at: x.to_string(),
            });
        }
        Ok(x.sub(&self.m.matrix().column(i).to_rational()))
    }

    /// Fires the lowest ready site until none is ready.
    pub fn stabilize_rplus(&self, x: &RatVector) -> Result<RatVector> {
        if !self.rplus_member(x) {
            return Err(Error::NotInRPlus(x.to_string()));
        }
        let (floor, frac) = floor_frac_split(x);
        // firing never changes the fractional part, and readiness of site i
        // depends only on floor(x_i) >= M_ii
        Ok(self.m.stabilize(&floor)?.to_rational().add(&frac))
    }

    /// Stabilizes a configuration of `S+` through its preimage.
    pub fn stabilize_splus(&self, c: &IntVector) -> Result<IntVector> {
        if !self.splus_member(c) {
            return Err(Error::NotInSPlus(c.to_string()));
        }
        self.to_config(&self.stabilize_rplus(&self.to_preimage_unchecked(c))?)
    }

    /// Superstable/critical status via the floor of the preimage.
    pub fn classify(&self, c: &IntVector) -> Result<Classification> {
        if !self.splus_member(c) {
            return Err(Error::NotInSPlus(c.to_string()));
        }
        let floor = self.to_preimage_unchecked(c).floor();
        Ok(Classification {
            is_superstable: self.m.is_superstable(&floor),
            is_critical: self.m.is_critical(&floor),
        })
    }

    pub fn record(&self, x: &RatVector) -> Result<PairConfig> {
        let config = self.to_config(x)?;
        let (floor, frac) = floor_frac_split(x);
        Ok(PairConfig {
            config,
            preimage: x.clone(),
            floor,
            frac,
        })
    }

    /// The superstable preimage in the `L`-class of `c`.
    pub fn superstable_of_class(&self, c: &IntVector) -> Result<PairConfig> {
        let (floor, frac) = floor_frac_split(&self.to_preimage(c)?);
        let x = self.m.sstab_of_class(&floor)?.to_rational().add(&frac);
        self.record(&x)
    }

    /// The critical preimage in the `L`-class of `c`.
    pub fn critical_of_class(&self, c: &IntVector) -> Result<PairConfig> {
        let (floor, frac) = floor_frac_split(&self.to_preimage(c)?);
        let x = self.m.crit_of_class(&floor)?.to_rational().add(&frac);
        self.record(&x)
    }

    /// True iff `x` is the superstable preimage of its class.
    pub fn is_superstable_preimage(&self, x: &RatVector) -> bool {
        self.to_config(x)
            .and_then(|c| self.superstable_of_class(&c))
            .map(|r| &r.preimage == x)
            .unwrap_or(false)
    }

    /// True iff `x` is the critical preimage of its class.
    pub fn is_critical_preimage(&self, x: &RatVector) -> bool {
        self.to_config(x)
            .and_then(|c| self.critical_of_class(&c))
            .map(|r| &r.preimage == x)
            .unwrap_or(false)
    }

    fn sweep(
        &self,
        pick: impl Fn(&IntVector) -> Result<PairConfig> + Sync + Send,
    ) -> Result<Vec<PairConfig>> {
        let reps = self.l_classes.representatives(self.cap)?;
        let mut out = reps.par_iter().map(pick).collect::<Result<Vec<_>>>()?;
        out.sort_by(|a, b| a.config.cmp(&b.config));
        Ok(out)
    }

    /// One superstable per class of `Z^n / L Z^n`, sorted by configuration.
    pub fn enumerate_superstables(&self) -> Result<Vec<PairConfig>> {
        self.sweep(|c| self.superstable_of_class(c))
    }

    /// One critical per class of `Z^n / L Z^n`, sorted by configuration.
    pub fn enumerate_criticals(&self) -> Result<Vec<PairConfig>> {
        self.sweep(|c| self.critical_of_class(c))
    }
}

/// Coordinatewise-maximal element of `configs`, if one exists.
pub fn coordinatewise_max(configs: &[IntVector]) -> Option<&IntVector> {
    configs.iter().find(|c| {
        configs
            .iter()
            .all(|d| d.iter().zip(c.iter()).all(|(a, b)| a <= b))
    })
}
