//! Integer lattices: Smith and Hermite normal forms, finite abelian quotients
//! `Z^n / A Z^n`, canonical class coordinates and lattice intersection.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Int, IntMatrix, IntVector, RatMatrix, Vector};

/// Default ceiling on the number of classes any sweep may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// `A = U * D * V` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_n`, all positive.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        self.d.diag().0
    }
}

/// Work state for the elimination: `p * A * q = work`.
struct Smith {
    work: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
    rank: usize,
}

impl Smith {
    fn new(a: &IntMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        Smith {
            work: a.clone(),
            p: IntMatrix::identity(m),
            p_inv: IntMatrix::identity(m),
            q: IntMatrix::identity(n),
            q_inv: IntMatrix::identity(n),
            rank: 0,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.work.swap_rows(a, b);
        self.p.swap_rows(a, b);
        self.p_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.work.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        self.work.add_row_multiple(dst, src, k);
        self.p.add_row_multiple(dst, src, k);
        self.p_inv.add_col_multiple(src, dst, &-k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        self.work.add_col_multiple(dst, src, k);
        self.q.add_col_multiple(dst, src, k);
        self.q_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.work.negate_row(i);
        self.p.negate_row(i);
        self.p_inv.negate_col(i);
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.work.rows() {
            for j in t..self.work.cols() {
                let a = self.work.get(i, j).abs();
                if !a.is_zero() && best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(mut self) -> Self {
        let (m, n) = (self.work.rows(), self.work.cols());
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_abs_entry(t) else {
                    return self;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.work.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let k = self.work.get(i, t).div_floor(&pivot);
                    self.add_row(i, t, &-k);
                    clean &= self.work.get(i, t).is_zero();
                }
                for j in t + 1..n {
                    let k = self.work.get(t, j).div_floor(&pivot);
                    self.add_col(j, t, &-k);
                    clean &= self.work.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..m)
                    .find(|&i| (t + 1..n).any(|j| !self.work.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &Int::one()),
                    None => break,
                }
            }
            if self.work.get(t, t).is_negative() {
                self.negate_row(t);
            }
            self.rank = t + 1;
        }
        self
    }
}

/// Smith normal form of a nonsingular square integer matrix.
pub fn snf(a: &IntMatrix) -> Result<SnfDecomposition> {
    let n = a.require_square()?;
    let s = Smith::new(a).run();
    if s.rank < n {
        return Err(Error::Singular);
    }
    Ok(SnfDecomposition {
        u: s.p_inv,
        d: s.work,
        v: s.q_inv,
        u_inv: s.p,
        v_inv: s.q,
    })
}

/// Column Hermite normal form of the lattice spanned by the columns of `gens`.
///
/// The result has one column per basis vector, is lower triangular in echelon
/// form with positive pivots, and entries left of each pivot reduced into
/// `[0, pivot)`. Two generating sets span the same lattice iff their
/// normal forms coincide.
pub fn hnf_basis(gens: &IntMatrix) -> IntMatrix {
    let (m, n) = (gens.rows(), gens.cols());
    let mut a = gens.clone();
    let mut c = 0;
    for i in 0..m {
        if c == n {
            break;
        }
        loop {
            let best = (c..n)
                .filter(|&j| !a.get(i, j).is_zero())
                .min_by_key(|&j| a.get(i, j).abs());
            let Some(j) = best else { break };
            a.swap_cols(c, j);
            let pivot = a.get(i, c).clone();
            let mut clean = true;
            for j in c + 1..n {
                let k = a.get(i, j).div_floor(&pivot);
                a.add_col_multiple(j, c, &-k);
                clean &= a.get(i, j).is_zero();
            }
            if clean {
                break;
            }
        }
        if a.get(i, c).is_zero() {
            continue;
        }
        if a.get(i, c).is_negative() {
            a.negate_col(c);
        }
        let pivot = a.get(i, c).clone();
        for k in 0..c {
            let q = a.get(i, k).div_floor(&pivot);
            a.add_col_multiple(k, c, &-q);
        }
        c += 1;
    }
    let cols: Vec<IntVector> = (0..c).map(|j| a.column(j)).collect();
    IntMatrix::from_columns(&cols).unwrap_or_else(|_| IntMatrix::zeros(m, 0))
}

/// Finite abelian group given by its invariant factors `d_1 | d_2 | ...`,
/// each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    invariant_factors: Vec<Int>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Canonical form of `Z_{c_1} x Z_{c_2} x ...` for arbitrary positive orders.
    pub fn from_cyclic_factors(orders: &[Int]) -> Self {
        if orders.is_empty() {
            return Self::trivial();
        }
        let d = IntMatrix::diagonal(orders);
        let s = Smith::new(&d).run();
        Self::from_diagonal(&s.work.diag().0)
    }

    pub fn from_i64(orders: &[i64]) -> Self {
        Self::from_cyclic_factors(&orders.iter().map(|&o| Int::from(o)).collect::<Vec<_>>())
    }

    fn from_diagonal(diag: &[Int]) -> Self {
        AbelianGroup {
            invariant_factors: diag.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn order(&self) -> Int {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Largest invariant factor (the exponent); 1 for the trivial group.
    pub fn largest_factor(&self) -> Int {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(Int::one)
    }

    /// Product of all invariant factors except the largest.
    pub fn product_without_largest(&self) -> Int {
        match self.invariant_factors.split_last() {
            Some((_, rest)) => rest.iter().product(),
            None => Int::one(),
        }
    }

    /// Number of elements `g` with `k g = 0`.
    pub fn torsion_count(&self, k: &Int) -> Int {
        self.invariant_factors.iter().map(|d| d.gcd(k)).product()
    }

    /// Whether `Z_m^r` embeds, i.e. at least `r` invariant factors are
    /// divisible by `m`.
    pub fn contains_elementary(&self, m: &Int, r: usize) -> bool {
        self.invariant_factors
            .iter()
            .filter(|d| d.is_multiple_of(m))
            .count()
            >= r
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Vector(self.invariant_factors.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vector<Int> = Vector::deserialize(d)?;
        Ok(Self::from_cyclic_factors(&v.0))
    }
}

/// Number of elements of order at most 2.
pub fn count_order_le2(g: &AbelianGroup) -> Int {
    g.torsion_count(&Int::from(2))
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "Z_1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariant factors of `Z^n / A Z^n`.
pub fn quotient_group(a: &IntMatrix) -> Result<AbelianGroup> {
    Ok(AbelianGroup::from_diagonal(&snf(a)?.invariant_factors()))
}

/// Canonical coordinates of a class in `Z^n / A Z^n`: residues of `U^{-1} v`
/// modulo the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub Vec<Int>);

impl Serialize for ClassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Vector(self.0.clone()).serialize(s)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Vector(self.0.clone()))
    }
}

/// Class bookkeeping for `Z^n / A Z^n`, computed once per matrix.
#[derive(Clone, Debug)]
pub struct ClassIndex {
    matrix: IntMatrix,
    snf: SnfDecomposition,
    moduli: Vec<Int>,
}

impl ClassIndex {
    pub fn new(a: &IntMatrix) -> Result<Self> {
        let snf = snf(a)?;
        let moduli = snf.invariant_factors();
        Ok(ClassIndex {
            matrix: a.clone(),
            snf,
            moduli,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn order(&self) -> Int {
        self.moduli.iter().product()
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_diagonal(&self.moduli)
    }

    pub fn class_id(&self, v: &IntVector) -> Result<ClassId> {
        let w = self.snf.u_inv().mul_vec(v)?;
        Ok(ClassId(
            w.iter()
                .zip(&self.moduli)
                .map(|(x, d)| x.mod_floor(d))
                .collect(),
        ))
    }

    pub fn same_class(&self, a: &IntVector, b: &IntVector) -> Result<bool> {
        Ok(self.class_id(a)? == self.class_id(b)?)
    }

    /// The representative `U * r` of a residue vector.
    pub fn representative(&self, id: &ClassId) -> IntVector {
        self.snf
            .u
            .mul_vec(&Vector(id.0.clone()))
            .expect("class id length matches the decomposition")
    }

    /// Least `k >= 1` with `k v` in the lattice.
    pub fn element_order(&self, v: &IntVector) -> Result<Int> {
        let id = self.class_id(v)?;
        Ok(id
            .0
            .iter()
            .zip(&self.moduli)
            .fold(Int::one(), |acc, (r, d)| acc.lcm(&(d / r.gcd(d)))))
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let count = self.order();
        if count > Int::from(cap) {
            return Err(Error::CapExceeded { count, cap });
        }
        Ok(())
    }

    /// All class ids in lexicographic residue order.
    pub fn class_ids(&self, cap: u64) -> Result<Vec<ClassId>> {
        self.check_cap(cap)?;
        let total = self.order().to_usize().unwrap_or(usize::MAX);
        let mut out = Vec::with_capacity(total);
        let mut current = vec![Int::zero(); self.moduli.len()];
        loop {
            out.push(ClassId(current.clone()));
            // odometer with the last coordinate least significant
            let mut i = self.moduli.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                current[i] += 1;
                if current[i] < self.moduli[i] {
                    break;
                }
                current[i] = Int::zero();
            }
        }
    }

    /// One representative per class, in lexicographic residue order.
    pub fn representatives(&self, cap: u64) -> Result<Vec<IntVector>> {
        Ok(self
            .class_ids(cap)?
            .iter()
            .map(|id| self.representative(id))
            .collect())
    }
}

/// Canonical coordinates of `v` modulo the column lattice of `a`.
pub fn class_id(a: &IntMatrix, v: &IntVector) -> Result<ClassId> {
    ClassIndex::new(a)?.class_id(v)
}

/// One representative per class of `Z^n / A Z^n`.
pub fn enumerate_class_reps(a: &IntMatrix, cap: u64) -> Result<Vec<IntVector>> {
    ClassIndex::new(a)?.representatives(cap)
}

/// Order of `v` in `Z^n / W Z^n`.
pub fn element_order(lattice: &IntMatrix, v: &IntVector) -> Result<Int> {
    ClassIndex::new(lattice)?.element_order(v)
}

/// Basis (in Hermite normal form) of `Z^n ∩ B Z^n` for nonsingular rational `B`.
pub fn lattice_intersect_with_zn(b: &RatMatrix) -> Result<IntMatrix> {
    b.require_square()?;
    let k = b.denominator_lcm();
    let c = b
        .scale(&crate::exactla::rat_from_int(&k))
        .to_integer()
        .expect("scaling by the denominator lcm clears all denominators");
    let s = snf(&c)?;
    // y is admissible iff (V y)_i is a multiple of k / gcd(d_i, k)
    let steps: Vec<Int> = s
        .invariant_factors()
        .iter()
        .map(|d| &k / d.gcd(&k))
        .collect();
    let y_basis = s.v_inv().mul(&IntMatrix::diagonal(&steps))?;
    let w = b.mul(&y_basis.to_rational())?;
    let w = w.to_integer().ok_or_else(|| {
        Error::Verification("lattice intersection produced a non-integral basis".into())
    })?;
    Ok(hnf_basis(&w))
}

/// Exact coordinates of `v` in the basis `w`, if they are integral.
pub fn lattice_coordinates(w: &IntMatrix, v: &IntVector) -> Result<Option<IntVector>> {
    let x = w.inverse()?.mul_vec(&v.to_rational())?;
    Ok(x.to_integer())
}

pub fn lattice_contains(w: &IntMatrix, v: &IntVector) -> Result<bool> {
    Ok(lattice_coordinates(w, v)?.is_some())
}

/// Structure of `outer / inner` where both are full-rank lattices given by
/// basis columns and `inner ⊆ outer`.
pub fn sublattice_quotient(outer: &IntMatrix, inner: &IntMatrix) -> Result<AbelianGroup> {
    let coords = outer.inverse()?.mul(&inner.to_rational())?;
    let coords = coords.to_integer().ok_or_else(|| {
        Error::Verification("inner lattice is not contained in the outer lattice".into())
    })?;
    quotient_group(&coords)
}

/// Structure of the subgroup of `Z^n / A Z^n` generated by the classes of `gens`.
pub fn generated_subgroup(a: &IntMatrix, gens: &[IntVector]) -> Result<AbelianGroup> {
    let mut cols = a.columns();
    cols.extend(gens.iter().cloned());
    let span = hnf_basis(&IntMatrix::from_columns(&cols)?);
    sublattice_quotient(&span, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, ivec, rat};
    use proptest::prelude::*;

    fn m_run3() -> IntMatrix {
        IntMatrix::from_i64(&[[3, -1, -1], [-1, 2, -1], [-1, -1, 3]]).unwrap()
    }

    fn l_run3() -> IntMatrix {
        IntMatrix::from_i64(&[[3, 1, -1], [1, 2, -1], [-1, -1, 3]]).unwrap()
    }

    fn check_snf(a: &IntMatrix, s: &SnfDecomposition) {
        assert_eq!(&s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), a);
        assert!(s.u.mul(s.u_inv()).unwrap().is_identity());
        assert!(s.v.mul(s.v_inv()).unwrap().is_identity());
        assert_eq!(s.u.det().unwrap().abs(), int(1));
        assert_eq!(s.v.det().unwrap().abs(), int(1));
        let d = s.invariant_factors();
        for i in 0..d.len() {
            assert!(d[i].is_positive());
            if i + 1 < d.len() {
                assert!(d[i + 1].is_multiple_of(&d[i]));
            }
            for j in 0..d.len() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    /// Brute-force oracle: enumerate Z^n / A Z^n by closure under +-e_i,
    /// comparing vectors through exact solves with A^{-1}.
    fn brute_force_group(a: &IntMatrix) -> Vec<IntVector> {
        let n = a.rows();
        let inv = a.inverse().unwrap();
        let same = |x: &IntVector, y: &IntVector| {
            inv.mul_vec(&x.sub(y).to_rational()).unwrap().is_integral()
        };
        let mut elems = vec![IntVector::zeros(n)];
        let mut frontier = elems.clone();
        while let Some(v) = frontier.pop() {
            for i in 0..n {
                for s in [1i64, -1] {
                    let w = v.add(&IntVector::unit(n, i).scale(&int(s)));
                    if !elems.iter().any(|e| same(e, &w)) {
                        elems.push(w.clone());
                        frontier.push(w);
                    }
                }
            }
        }
        elems
    }

    /// The k-torsion counts determine a finite abelian group up to isomorphism.
    fn torsion_profile_matches(a: &IntMatrix, elems: &[IntVector], g: &AbelianGroup) -> bool {
        let inv = a.inverse().unwrap();
        let order = elems.len() as i64;
        (1..=order).filter(|k| order % k == 0).all(|k| {
            let count = elems
                .iter()
                .filter(|e| {
                    inv.mul_vec(&e.scale(&int(k)).to_rational())
                        .unwrap()
                        .is_integral()
                })
                .count();
            int(count as i64) == g.torsion_count(&int(k))
        })
    }

    #[test]
    fn snf_examples() {
        let s = snf(&m_run3()).unwrap();
        check_snf(&m_run3(), &s);
        assert_eq!(s.invariant_factors(), vec![int(1), int(1), int(8)]);

        let s = snf(&IntMatrix::identity(3)).unwrap();
        check_snf(&IntMatrix::identity(3), &s);
        assert!(s.d.is_identity());

        let s = snf(&l_run3()).unwrap();
        check_snf(&l_run3(), &s);
        assert_eq!(s.invariant_factors(), vec![int(1), int(1), int(12)]);
    }

    #[test]
    fn snf_of_l_run3_matches_brute_force() {
        let elems = brute_force_group(&l_run3());
        assert_eq!(elems.len(), 12);
        let g = quotient_group(&l_run3()).unwrap();
        assert!(torsion_profile_matches(&l_run3(), &elems, &g));
        assert_eq!(g, AbelianGroup::from_i64(&[12]));
        // Z_2 x Z_6 has the same order but a different torsion profile
        assert!(!torsion_profile_matches(
            &l_run3(),
            &elems,
            &AbelianGroup::from_i64(&[2, 6])
        ));
    }

    #[test]
    fn snf_rejects_singular() {
        let a = IntMatrix::from_i64(&[[2, 4], [1, 2]]).unwrap();
        assert!(matches!(snf(&a), Err(Error::Singular)));
        let r = IntMatrix::from_i64(&[[1, 2, 3]]).unwrap();
        assert!(matches!(snf(&r), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn quotient_groups() {
        assert_eq!(quotient_group(&m_run3()).unwrap().to_string(), "Z_8");
        assert!(quotient_group(&IntMatrix::identity(3))
            .unwrap()
            .is_trivial());
        // all-negative internal edges on K6: L has +1 off the diagonal
        let rows: Vec<Vec<i64>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { 5 } else { 1 }).collect())
            .collect();
        let g = quotient_group(&IntMatrix::from_i64(&rows).unwrap()).unwrap();
        assert_eq!(g.order(), int(4 * 4 * 4 * 36));
        assert_eq!(g, AbelianGroup::from_i64(&[4, 4, 4, 36]));
    }

    #[test]
    fn group_formatting_and_canonical_form() {
        let g = AbelianGroup::from_i64(&[6, 4, 1]);
        let back: AbelianGroup = serde_json::from_str("[12, 2]").unwrap();
        assert_eq!(back, g);
        assert_eq!(g.invariant_factors(), &[int(2), int(12)]);
        assert_eq!(g.to_string(), "Z_2 x Z_12");
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2,12]");
        assert_eq!(AbelianGroup::trivial().to_string(), "Z_1");
    }

    #[test]
    fn class_ids() {
        let idx = ClassIndex::new(&m_run3()).unwrap();
        assert!(idx
            .class_id(&ivec(&[0, 0, 0]))
            .unwrap()
            .0
            .iter()
            .all(Zero::is_zero));
        let member = m_run3().mul_vec(&ivec(&[1, 2, 3])).unwrap();
        assert!(idx.class_id(&member).unwrap().0.iter().all(Zero::is_zero));
        assert!(idx
            .same_class(&ivec(&[1, 2, 0]), &ivec(&[2, 0, 1]))
            .unwrap());
        assert!(!idx
            .same_class(&ivec(&[1, 2, 0]), &ivec(&[2, 0, 0]))
            .unwrap());
        assert!(matches!(
            idx.class_id(&ivec(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn class_enumeration() {
        for (a, count) in [(m_run3(), 8), (l_run3(), 12), (IntMatrix::identity(3), 1)] {
            let idx = ClassIndex::new(&a).unwrap();
            let reps = idx.representatives(DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(reps.len(), count);
            let mut ids: Vec<ClassId> = reps.iter().map(|r| idx.class_id(r).unwrap()).collect();
            ids.dedup();
            assert_eq!(ids.len(), count);
            assert_eq!(ids, idx.class_ids(DEFAULT_ENUMERATION_CAP).unwrap());
        }
        assert_eq!(
            enumerate_class_reps(&IntMatrix::identity(3), 10).unwrap(),
            vec![ivec(&[0, 0, 0])]
        );
        assert!(matches!(
            enumerate_class_reps(&l_run3(), 11),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn order_le2_counts() {
        assert_eq!(count_order_le2(&AbelianGroup::from_i64(&[4])), int(2));
        assert_eq!(count_order_le2(&AbelianGroup::trivial()), int(1));
        assert_eq!(count_order_le2(&AbelianGroup::from_i64(&[2, 2])), int(4));
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&m_run3(), &ivec(&[0, 0, 0])).unwrap(), int(1));
        let direct = (1..=8)
            .find(|&k| {
                m_run3()
                    .inverse()
                    .unwrap()
                    .mul_vec(&ivec(&[1, 0, 0]).scale(&int(k)).to_rational())
                    .unwrap()
                    .is_integral()
            })
            .unwrap();
        assert_eq!(
            element_order(&m_run3(), &ivec(&[1, 0, 0])).unwrap(),
            int(direct)
        );
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_i64(&[[2, 0], [0, 3]]).unwrap();
        let b = IntMatrix::from_i64(&[[2, 4, 2], [3, 3, 0]]).unwrap();
        let h = hnf_basis(&a);
        assert_eq!(h.cols(), 2);
        // b spans {(2x, 3y) + ...}: columns (2,3),(4,3),(2,0) -> same as (2,0),(0,3)
        assert_eq!(hnf_basis(&b), h);
        let rank_deficient = IntMatrix::from_i64(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(hnf_basis(&rank_deficient).cols(), 1);
    }

    #[test]
    fn intersection_examples() {
        let ml_inv = m_run3()
            .to_rational()
            .mul(&l_run3().inverse().unwrap())
            .unwrap();
        let lm_inv = l_run3()
            .to_rational()
            .mul(&m_run3().inverse().unwrap())
            .unwrap();
        let w = lattice_intersect_with_zn(&ml_inv).unwrap();
        assert_eq!(quotient_group(&w).unwrap(), AbelianGroup::from_i64(&[4]));
        let w = lattice_intersect_with_zn(&lm_inv).unwrap();
        assert_eq!(quotient_group(&w).unwrap(), AbelianGroup::from_i64(&[6]));
        let w = lattice_intersect_with_zn(&RatMatrix::identity(3)).unwrap();
        assert!(quotient_group(&w).unwrap().is_trivial());
        // both L Z^n and M Z^n sit inside the respective intersections
        for (b, a) in [(&ml_inv, m_run3()), (&lm_inv, l_run3())] {
            let w = lattice_intersect_with_zn(b).unwrap();
            for col in a.columns() {
                assert!(lattice_contains(&w, &col).unwrap());
            }
        }
        let half = RatMatrix::diagonal(&[rat(1, 2), rat(1, 1)]);
        let w = lattice_intersect_with_zn(&half).unwrap();
        assert_eq!(w, IntMatrix::from_i64(&[[1, 0], [0, 1]]).unwrap());
    }

    #[test]
    fn generated_subgroups() {
        // In Z_8 = K(M_RUN3), the class of 4*(generator) spans Z_2.
        let idx = ClassIndex::new(&m_run3()).unwrap();
        let gen = idx
            .representatives(100)
            .unwrap()
            .into_iter()
            .find(|v| idx.element_order(v).unwrap() == int(8))
            .unwrap();
        let g = generated_subgroup(&m_run3(), &[gen.scale(&int(4))]).unwrap();
        assert_eq!(g, AbelianGroup::from_i64(&[2]));
        let g = generated_subgroup(&m_run3(), &[gen]).unwrap();
        assert_eq!(g, AbelianGroup::from_i64(&[8]));
    }

    fn nonsingular(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(prop::collection::vec(-5i64..=5, n), n)
            .prop_map(|rows| IntMatrix::from_i64(&rows).unwrap())
            .prop_filter("nonsingular", |a| !a.det().unwrap().is_zero())
    }

    fn rational_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        prop::collection::vec((-6i64..=6, 1i64..=6), n * n)
            .prop_map(move |e| {
                RatMatrix::new(n, n, e.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap()
            })
            .prop_filter("nonsingular", |b| !b.det().unwrap().is_zero())
    }

    proptest! {
        #[test]
        fn snf_round_trip(a in (1usize..=5).prop_flat_map(nonsingular)) {
            let s = snf(&a).unwrap();
            check_snf(&a, &s);
            prop_assert_eq!(quotient_group(&a).unwrap().order(), a.det().unwrap().abs());
        }

        #[test]
        fn enumerated_classes_are_distinct(a in (1usize..=3).prop_flat_map(nonsingular)) {
            let idx = ClassIndex::new(&a).unwrap();
            let reps = idx.representatives(DEFAULT_ENUMERATION_CAP).unwrap();
            prop_assert_eq!(int(reps.len() as i64), a.det().unwrap().abs());
            let mut ids: Vec<ClassId> = reps.iter().map(|r| idx.class_id(r).unwrap()).collect();
            ids.sort();
            ids.dedup();
            prop_assert_eq!(ids.len(), reps.len());
        }

        #[test]
        fn intersection_is_exact(
            (b, probes) in (1usize..=3).prop_flat_map(|n| (
                rational_matrix(n),
                prop::collection::vec(prop::collection::vec(-12i64..=12, n), 20),
            ))
        ) {
            let w = lattice_intersect_with_zn(&b).unwrap();
            let b_inv = b.inverse().unwrap();
            for col in w.columns() {
                prop_assert!(b_inv.mul_vec(&col.to_rational()).unwrap().is_integral());
            }
            // probes are mapped into Z^n ∩ B Z^n by scaling B y
            let k = crate::exactla::rat_from_int(&b.denominator_lcm());
            for p in probes {
                let y = ivec(&p).to_rational().scale(&k);
                let v = b.mul_vec(&y).unwrap();
                if let Some(v) = v.to_integer() {
                    prop_assert!(lattice_contains(&w, &v).unwrap());
                }
                let v = ivec(&p);
                let inside = b_inv.mul_vec(&v.to_rational()).unwrap().is_integral();
                prop_assert_eq!(inside, lattice_contains(&w, &v).unwrap());
            }
        }
    }
}
