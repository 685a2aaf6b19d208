//! The involution `mu` on superstables of `M` and the duality map
//! `D(x) = c_max - mu(floor x) + frac x` from superstable to critical preimages.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{floor_frac_split, Int, IntVector, RatVector};
use crate::fracket::{quotient_by_zero_fracket, zero_fracket_lattice, zero_fracket_order, Side};
use crate::lattice::{count_order_le2, element_order, AbelianGroup};
use crate::pair::{ChipFiringPair, PairConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MuCase {
    Identity,
    Dual,
}

/// `{LM^{-1} 2s} = {LM^{-1} c_max}`, the condition for `mu(s) = s`.
fn is_mu_fixed(p: &ChipFiringPair, s: &IntVector) -> bool {
    let two_s = s.scale(&BigInt::from(2)).to_rational();
    let lhs = p
        .lm_inv()
        .mul_vec(&two_s)
        .expect("dimension checked")
        .frac();
    let rhs = p
        .lm_inv()
        .mul_vec(&p.m().c_max().to_rational())
        .expect("dimension checked")
        .frac();
    lhs == rhs
}

pub fn mu_with_case(p: &ChipFiringPair, s: &IntVector) -> Result<(IntVector, MuCase)> {
    if !p.m().is_superstable(s) {
        return Err(Error::NotSuperstable(s.to_string()));
    }
    if is_mu_fixed(p, s) {
        Ok((s.clone(), MuCase::Identity))
    } else {
        Ok((
            p.m().sstab_of_class(&p.m().classical_dual(s))?.clone(),
            MuCase::Dual,
        ))
    }
}

pub fn involution_mu(p: &ChipFiringPair, s: &IntVector) -> Result<IntVector> {
    Ok(mu_with_case(p, s)?.0)
}

pub fn duality_with_case(p: &ChipFiringPair, x: &RatVector) -> Result<(RatVector, MuCase)> {
    if !p.is_superstable_preimage(x) {
        return Err(Error::NotSuperstablePreimage(x.to_string()));
    }
    let (floor, frac) = floor_frac_split(x);
    let (mu, case) = mu_with_case(p, &floor)?;
    let y = p.m().classical_dual(&mu).to_rational().add(&frac);
    if !p.is_critical_preimage(&y) {
        return Err(Error::Verification(format!(
            "D({x}) = {y} is not a critical preimage"
        )));
    }
    Ok((y, case))
}

/// `c_max - mu(floor x) + frac x`.
pub fn duality(p: &ChipFiringPair, x: &RatVector) -> Result<RatVector> {
    Ok(duality_with_case(p, x)?.0)
}

/// `mu(c_max - floor y) + frac y`.
pub fn duality_inverse(p: &ChipFiringPair, y: &RatVector) -> Result<RatVector> {
    if !p.is_critical_preimage(y) {
        return Err(Error::NotCriticalPreimage(y.to_string()));
    }
    let (floor, frac) = floor_frac_split(y);
    let x = involution_mu(p, &p.m().classical_dual(&floor))?
        .to_rational()
        .add(&frac);
    if !p.is_superstable_preimage(&x) {
        return Err(Error::Verification(format!(
            "D^-1({y}) = {x} is not a superstable preimage"
        )));
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityRecord {
    pub superstable: PairConfig,
    pub critical: PairConfig,
    pub mu_case: MuCase,
}

/// `D` on every superstable preimage, sorted by superstable configuration.
pub fn duality_table(p: &ChipFiringPair) -> Result<Vec<DualityRecord>> {
    p.enumerate_superstables()?
        .into_par_iter()
        .map(|s| {
            let (y, mu_case) = duality_with_case(p, &s.preimage)?;
            Ok(DualityRecord {
                critical: p.record(&y)?,
                superstable: s,
                mu_case,
            })
        })
        .collect()
}

/// Superstables of `M` fixed by `mu`, in lexicographic order.
pub fn fixed_points(p: &ChipFiringPair) -> Vec<IntVector> {
    p.m()
        .superstables()
        .iter()
        .filter(|s| is_mu_fixed(p, s))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointPrediction {
    pub actual: usize,
    /// `|F_0^M|`.
    pub zero_fracket_order: Int,
    /// `K(M) / F_0^M`.
    pub quotient: AbelianGroup,
    /// Elements of the quotient with order at most 2.
    pub order_le2: Int,
    /// The count must be 0 or this value.
    pub predicted: Int,
}

impl FixedPointPrediction {
    pub fn consistent(&self) -> bool {
        self.actual == 0 || Int::from(self.actual) == self.predicted
    }
}

pub fn predicted_fixed_point_count(p: &ChipFiringPair) -> Result<FixedPointPrediction> {
    let quotient = quotient_by_zero_fracket(p, Side::M)?;
    let zero_fracket_order = zero_fracket_order(p, Side::M)?;
    let order_le2 = count_order_le2(&quotient);
    Ok(FixedPointPrediction {
        actual: fixed_points(p).len(),
        predicted: &zero_fracket_order * &order_le2,
        zero_fracket_order,
        quotient,
        order_le2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonzeroCriteria {
    pub c_max_order: Int,
    pub quotient: AbelianGroup,
    /// `c_max` has odd order in `K(M)/F_0^M`, so fixed points must exist.
    pub odd_order_guarantee: bool,
    /// For a cyclic quotient and even order: `|quotient| / ord(c_max)` is even.
    pub cyclic_even_criterion: Option<bool>,
}

impl NonzeroCriteria {
    /// Whether the criteria agree with an observed fixed-point count.
    pub fn consistent_with(&self, count: usize) -> bool {
        let nonzero = count > 0;
        (!self.odd_order_guarantee || nonzero)
            && self.cyclic_even_criterion.is_none_or(|c| c == nonzero)
    }
}

pub fn nonzero_criteria(p: &ChipFiringPair) -> Result<NonzeroCriteria> {
    let quotient = quotient_by_zero_fracket(p, Side::M)?;
    let lattice = zero_fracket_lattice(p, Side::M)?;
    let c_max_order = element_order(&lattice, p.m().c_max())?;
    let odd = c_max_order.is_odd();
    let cyclic_even_criterion =
        (quotient.is_cyclic() && !odd).then(|| (quotient.order() / &c_max_order).is_even());
    Ok(NonzeroCriteria {
        c_max_order,
        quotient,
        odd_order_guarantee: odd,
        cyclic_even_criterion,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointAnalysis {
    pub fixed_points: Vec<IntVector>,
    pub prediction: FixedPointPrediction,
    pub criteria: NonzeroCriteria,
}

impl FixedPointAnalysis {
    pub fn consistent(&self) -> bool {
        self.prediction.consistent() && self.criteria.consistent_with(self.fixed_points.len())
    }
}

pub fn analyze_fixed_points(p: &ChipFiringPair) -> Result<FixedPointAnalysis> {
    Ok(FixedPointAnalysis {
        fixed_points: fixed_points(p),
        prediction: predicted_fixed_point_count(p)?,
        criteria: nonzero_criteria(p)?,
    })
}

/// True when the quotient is trivial, i.e. every class is its own fracket.
pub fn is_trivial_quotient(q: &AbelianGroup) -> bool {
    q.order().is_one()
}
