//! Frackets: classes of a critical group grouped by the fractional part of
//! their image under `ML^{-1}` (side L) or `LM^{-1}` (side M).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, Int, IntMatrix, IntVector, RatMatrix, RatVector, Rational};
use crate::lattice::{
    lattice_intersect_with_zn, quotient_group, sublattice_quotient, AbelianGroup, ClassId,
    ClassIndex,
};
use crate::pair::ChipFiringPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    L,
    M,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::L => Side::M,
            Side::M => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::M => "M",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(Side::L),
            "M" | "m" => Ok(Side::M),
            _ => Err(Error::Parse(format!("unknown side {s:?}, expected L or M"))),
        }
    }
}

fn side_matrix(p: &ChipFiringPair, side: Side) -> &IntMatrix {
    match side {
        Side::L => p.l(),
        Side::M => p.m().matrix(),
    }
}

fn side_classes(p: &ChipFiringPair, side: Side) -> &ClassIndex {
    match side {
        Side::L => p.l_class_index(),
        Side::M => p.m().class_index(),
    }
}

fn side_det(p: &ChipFiringPair, side: Side) -> Int {
    match side {
        Side::L => p.det_l().abs(),
        Side::M => p.det_m().abs(),
    }
}

/// The map whose fractional parts define the frackets of `side`.
pub fn fracket_map(p: &ChipFiringPair, side: Side) -> &RatMatrix {
    match side {
        Side::L => p.ml_inv(),
        Side::M => p.lm_inv(),
    }
}

/// Least common multiple of the entry denominators.
pub fn flcm(a: &RatMatrix) -> Int {
    a.denominator_lcm()
}

pub fn gcd_entries(a: &IntMatrix) -> Result<Int> {
    a.gcd_entries()
}

/// gcd over the entries of both matrices.
pub fn gcd_two(a: &IntMatrix, b: &IntMatrix) -> Result<Int> {
    match (a.gcd_entries(), b.gcd_entries()) {
        (Ok(x), Ok(y)) => Ok(x.gcd(&y)),
        (Ok(x), Err(_)) | (Err(_), Ok(x)) => Ok(x),
        (Err(e), Err(_)) => Err(e),
    }
}

/// `|det side| * map(side)`, an integer matrix.
pub fn scaled_map(p: &ChipFiringPair, side: Side) -> IntMatrix {
    let det = Rational::from_integer(side_det(p, side));
    fracket_map(p, side)
        .scale(&det)
        .to_integer()
        .expect("|det A| A^-1 is the adjugate up to sign")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fracket {
    pub key: RatVector,
    pub classes: Vec<ClassId>,
    pub representatives: Vec<IntVector>,
}

impl Fracket {
    pub fn size(&self) -> usize {
        self.classes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FracketPartition {
    pub side: Side,
    /// Sorted by key.
    pub frackets: Vec<Fracket>,
}

impl FracketPartition {
    pub fn keys(&self) -> Vec<&RatVector> {
        self.frackets.iter().map(|f| &f.key).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.frackets.iter().map(Fracket::size).collect()
    }

    pub fn get(&self, key: &RatVector) -> Option<&Fracket> {
        self.frackets.iter().find(|f| &f.key == key)
    }

    pub fn zero(&self) -> &Fracket {
        self.frackets
            .iter()
            .find(|f| f.key.is_zero())
            .expect("the zero class is always present")
    }
}

/// Groups every class of the side's critical group by its fracket key.
pub fn fracket_partition(p: &ChipFiringPair, side: Side) -> Result<FracketPartition> {
    let classes = side_classes(p, side);
    let map = fracket_map(p, side);
    let reps = classes.representatives(p.cap())?;
    let keyed = reps
        .into_par_iter()
        .map(|v| {
            let key = map.mul_vec(&v.to_rational())?.frac();
            let id = classes.class_id(&v)?;
            Ok((key, id, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut groups: BTreeMap<RatVector, Fracket> = BTreeMap::new();
    for (key, id, v) in keyed {
        let entry = groups.entry(key.clone()).or_insert_with(|| Fracket {
            key,
            classes: Vec::new(),
            representatives: Vec::new(),
        });
        entry.classes.push(id);
        entry.representatives.push(v);
    }
    Ok(FracketPartition {
        side,
        frackets: groups.into_values().collect(),
    })
}

/// Lattice of integer vectors whose image under the side's map is integral.
pub fn zero_fracket_lattice(p: &ChipFiringPair, side: Side) -> Result<IntMatrix> {
    // {v : A v integral} = Z^n ∩ A^{-1} Z^n
    let inverse_map = match side {
        Side::L => p.lm_inv(),
        Side::M => p.ml_inv(),
    };
    lattice_intersect_with_zn(inverse_map)
}

/// `K(side) / F_0`, computed from the lattice alone.
pub fn quotient_by_zero_fracket(p: &ChipFiringPair, side: Side) -> Result<AbelianGroup> {
    quotient_group(&zero_fracket_lattice(p, side)?)
}

/// The group structure of `F_0` itself.
pub fn zero_fracket_group(p: &ChipFiringPair, side: Side) -> Result<AbelianGroup> {
    sublattice_quotient(&zero_fracket_lattice(p, side)?, side_matrix(p, side))
}

/// `|F_0|` from the lattice route: `|det side| / |K / F_0|`.
pub fn zero_fracket_order(p: &ChipFiringPair, side: Side) -> Result<Int> {
    Ok(side_det(p, side) / quotient_by_zero_fracket(p, side)?.order())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroFracket {
    pub side: Side,
    pub members: Vec<ClassId>,
    pub member_representatives: Vec<IntVector>,
    pub lattice: IntMatrix,
    pub quotient: AbelianGroup,
    pub group: AbelianGroup,
}

impl ZeroFracket {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Zero fracket by enumeration, cross-checked against the lattice route.
pub fn zero_fracket(p: &ChipFiringPair, side: Side) -> Result<ZeroFracket> {
    let partition = fracket_partition(p, side)?;
    let zero = partition.zero();
    let lattice = zero_fracket_lattice(p, side)?;
    let quotient = quotient_group(&lattice)?;
    let group = sublattice_quotient(&lattice, side_matrix(p, side))?;
    let det = side_det(p, side);
    if Int::from(zero.size()) * quotient.order() != det || group.order() != Int::from(zero.size()) {
        return Err(Error::Verification(format!(
            "zero {side}-fracket has {} classes but the lattice route gives |K/F0| = {}",
            zero.size(),
            quotient.order()
        )));
    }
    Ok(ZeroFracket {
        side,
        members: zero.classes.clone(),
        member_representatives: zero.representatives.clone(),
        lattice,
        quotient,
        group,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargestFactorCheck {
    pub side: Side,
    pub largest_invariant_factor: Int,
    pub flcm: Int,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargestFactorReport {
    pub l: LargestFactorCheck,
    pub m: LargestFactorCheck,
}

impl LargestFactorReport {
    pub fn holds(&self) -> bool {
        self.l.holds && self.m.holds
    }
}

/// Largest invariant factor of `K(side)/F_0` against `flcm` of the side's map.
pub fn verify_largest_invariant_factor(p: &ChipFiringPair) -> Result<LargestFactorReport> {
    let check = |side: Side| -> Result<LargestFactorCheck> {
        let largest = quotient_by_zero_fracket(p, side)?.largest_factor();
        let flcm = flcm(fracket_map(p, side));
        Ok(LargestFactorCheck {
            side,
            holds: largest == flcm,
            largest_invariant_factor: largest,
            flcm,
        })
    };
    Ok(LargestFactorReport {
        l: check(Side::L)?,
        m: check(Side::M)?,
    })
}

fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeFormulaReport {
    /// gcd of the entries of `|L| ML^{-1}`.
    pub gcd_l: Int,
    /// gcd of the entries of `|M| LM^{-1}`.
    pub gcd_m: Int,
    pub p_l: Int,
    pub p_m: Int,
    /// `gcd(gcd(|L|, gcd_l), gcd(|M|, gcd_m)) / gcd(p_M, p_L)`.
    pub predicted: Int,
    /// `gcd(gcd_l, gcd_m) / gcd(p_M, p_L)`, without folding in the determinants.
    #[serde(serialize_with = "serialize_rational")]
    pub unreduced_formula: Rational,
    pub actual_l: Int,
    pub actual_m: Int,
}

impl SizeFormulaReport {
    pub fn agrees(&self) -> bool {
        self.predicted == self.actual_l && self.actual_l == self.actual_m
    }
}

/// Zero-fracket size from the gcds of the scaled maps and the non-largest
/// invariant factors of both quotients.
///
/// Each factor is `gcd(|A|, gcd(|A| A'))` rather than the bare entry gcd:
/// `flcm(A') = |A| / gcd(|A|, gcd(|A| A'))`, and the bare gcd overshoots
/// when every entry of `|A| A'` shares a factor with nothing in `|A|`
/// (for example `L = 2M`).
pub fn zero_fracket_size_formula(p: &ChipFiringPair) -> Result<SizeFormulaReport> {
    let gcd_l = gcd_entries(&scaled_map(p, Side::L))?;
    let gcd_m = gcd_entries(&scaled_map(p, Side::M))?;
    let q_l = quotient_by_zero_fracket(p, Side::L)?;
    let q_m = quotient_by_zero_fracket(p, Side::M)?;
    let p_l = q_l.product_without_largest();
    let p_m = q_m.product_without_largest();
    let denom = p_l.gcd(&p_m);
    let folded = side_det(p, Side::L)
        .gcd(&gcd_l)
        .gcd(&side_det(p, Side::M).gcd(&gcd_m));
    let predicted = &folded / &denom;
    if &predicted * &denom != folded {
        return Err(Error::Verification(format!(
            "size formula {folded}/{denom} is not an integer"
        )));
    }
    Ok(SizeFormulaReport {
        unreduced_formula: Rational::new(gcd_l.gcd(&gcd_m), denom),
        actual_l: side_det(p, Side::L) / q_l.order(),
        actual_m: side_det(p, Side::M) / q_m.order(),
        gcd_l,
        gcd_m,
        p_l,
        p_m,
        predicted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCheck {
    pub side: Side,
    pub cyclic: bool,
    /// `gcd(|side|, gcd(|side| map))`.
    pub gcd_value: Int,
    /// The bare entry gcd of `|side| map`.
    pub entry_gcd: Int,
    pub actual: Int,
}

impl CyclicCheck {
    /// `K/F_0` is cyclic exactly when `|F_0|` equals the gcd value.
    pub fn consistent(&self) -> bool {
        self.cyclic == (self.actual == self.gcd_value)
    }
}

pub fn cyclic_check(p: &ChipFiringPair, side: Side) -> Result<CyclicCheck> {
    let q = quotient_by_zero_fracket(p, side)?;
    let entry_gcd = gcd_entries(&scaled_map(p, side))?;
    let det = side_det(p, side);
    Ok(CyclicCheck {
        side,
        cyclic: q.is_cyclic(),
        gcd_value: det.gcd(&entry_gcd),
        entry_gcd,
        actual: det / q.order(),
    })
}

/// `|F_0|` via the gcd shortcut when `K(side)/F_0` is cyclic.
pub fn cyclic_shortcut(p: &ChipFiringPair, side: Side) -> Result<Option<Int>> {
    let check = cyclic_check(p, side)?;
    if !check.consistent() {
        return Err(Error::Verification(format!(
            "side {side}: cyclic = {} but |F0| = {} and gcd = {}",
            check.cyclic, check.actual, check.gcd_value
        )));
    }
    Ok(check.cyclic.then_some(check.gcd_value))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FracketReport {
    pub side: Side,
    pub keys: Vec<RatVector>,
    pub sizes: Vec<usize>,
    pub zero_fracket_members: Vec<IntVector>,
    pub quotient: AbelianGroup,
    pub predicted_size: Int,
    pub actual_size: Int,
}

pub fn fracket_report(p: &ChipFiringPair, side: Side) -> Result<FracketReport> {
    let partition = fracket_partition(p, side)?;
    let zero = zero_fracket(p, side)?;
    let formula = zero_fracket_size_formula(p)?;
    Ok(FracketReport {
        side,
        keys: partition.frackets.iter().map(|f| f.key.clone()).collect(),
        sizes: partition.sizes(),
        zero_fracket_members: zero.member_representatives.clone(),
        quotient: zero.quotient.clone(),
        predicted_size: formula.predicted,
        actual_size: Int::from(zero.size()),
    })
}

/// Whether `v` lies in the zero fracket of `side`.
pub fn in_zero_fracket(p: &ChipFiringPair, side: Side, v: &IntVector) -> Result<bool> {
    Ok(fracket_map(p, side)
        .mul_vec(&v.to_rational())?
        .is_integral())
}
