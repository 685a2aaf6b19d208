//! Randomized invariants over generated M-matrices and pairs.

use std::collections::BTreeSet;

use chipfire::duality::{duality, duality_inverse, duality_table, involution_mu, MuCase};
use chipfire::exactla::{Int, IntVector, RatVector, Vector};
use chipfire::fracket::{fracket_map, fracket_partition, in_zero_fracket, zero_fracket, Side};
use chipfire::gen::{random_m_matrix, random_pair, GenConfig};
use chipfire::mmatrix::MMatrix;
use chipfire::pair::ChipFiringPair;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn m_matrix(seed: u64) -> MMatrix {
    MMatrix::new(random_m_matrix(&mut rng(seed), &GenConfig::default())).unwrap()
}

fn pair(seed: u64) -> ChipFiringPair {
    random_pair(&mut rng(seed), &GenConfig::default())
}

fn random_config<R: Rng>(rng: &mut R, n: usize, hi: i64) -> IntVector {
    Vector((0..n).map(|_| Int::from(rng.gen_range(0..=hi))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stabilization_is_schedule_independent(seed in any::<u64>()) {
        let m = m_matrix(seed);
        let mut r = rng(seed ^ 1);
        for _ in 0..10 {
            let c = random_config(&mut r, m.dim(), 15);
            let mut a = rng(r.gen());
            let mut b = rng(r.gen());
            let x = m.stabilize_by(&c, |ready| ready[a.gen_range(0..ready.len())]).unwrap();
            let y = m.stabilize_by(&c, |ready| ready[b.gen_range(0..ready.len())]).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(&x, &m.stabilize(&c).unwrap());
        }
    }

    #[test]
    fn one_superstable_and_one_critical_per_class(seed in any::<u64>()) {
        let m = m_matrix(seed);
        let det = m.det().abs();
        prop_assert_eq!(Int::from(m.superstables().len()), det.clone());
        prop_assert_eq!(Int::from(m.criticals().len()), det);
        let ids = |v: &[IntVector]| v.iter().map(|c| m.class_index().class_id(c).unwrap()).collect::<BTreeSet<_>>();
        prop_assert_eq!(ids(m.superstables()).len(), m.superstables().len());
        prop_assert_eq!(ids(m.criticals()).len(), m.criticals().len());
        for s in m.superstables() {
            prop_assert!(s.is_nonnegative());
            prop_assert!(m.c_max().sub(s).is_nonnegative());
            prop_assert!(m.is_z_superstable(s));
            prop_assert!(m.is_critical(&m.classical_dual(s)));
            prop_assert_eq!(&m.classical_dual(&m.classical_dual(s)), s);
        }
    }

    #[test]
    fn box_oracle_is_sound_and_stable(seed in any::<u64>()) {
        let m = m_matrix(seed);
        let mut r = rng(seed ^ 2);
        for _ in 0..20 {
            let s = random_config(&mut r, m.dim(), 10);
            let bound = m.superstability_bound(&s);
            let found = m.find_multifiring(&s, &bound);
            if let Some(z) = &found {
                prop_assert!(s.sub(&m.matrix().mul_vec(z).unwrap()).is_nonnegative());
            }
            let wider = bound.add(&Vector(vec![Int::from(1); m.dim()]));
            prop_assert_eq!(found.is_some(), m.find_multifiring(&s, &wider).is_some());
        }
    }

    #[test]
    fn transfer_maps_and_floors(seed in any::<u64>()) {
        let p = pair(seed);
        let ss = p.enumerate_superstables().unwrap();
        let cs = p.enumerate_criticals().unwrap();
        prop_assert_eq!(Int::from(ss.len()), p.det_l().abs());
        prop_assert_eq!(Int::from(cs.len()), p.det_l().abs());
        for (rows, superstable) in [(&ss, true), (&cs, false)] {
            let ids: BTreeSet<_> = rows.iter().map(|r| p.l_class_index().class_id(&r.config).unwrap()).collect();
            prop_assert_eq!(ids.len(), rows.len());
            for r in rows.iter() {
                prop_assert!(p.rplus_member(&r.preimage));
                prop_assert_eq!(&p.to_preimage(&r.config).unwrap(), &r.preimage);
                prop_assert_eq!(&p.to_config(&r.preimage).unwrap(), &r.config);
                if superstable {
                    prop_assert!(p.m().is_superstable(&r.floor));
                } else {
                    prop_assert!(p.m().is_critical(&r.floor));
                }
            }
        }
    }

    #[test]
    fn fractional_parts_are_class_invariants(seed in any::<u64>()) {
        let p = pair(seed);
        let mut r = rng(seed ^ 3);
        let map = fracket_map(&p, Side::L);
        for _ in 0..20 {
            let a = random_config(&mut r, p.dim(), 20);
            let z = Vector((0..p.dim()).map(|_| Int::from(r.gen_range(-3..=3))).collect());
            let b = a.add(&p.l().mul_vec(&z).unwrap());
            prop_assert!(p.l_class_index().same_class(&a, &b).unwrap());
            let fa = map.mul_vec(&a.to_rational()).unwrap().frac();
            let fb = map.mul_vec(&b.to_rational()).unwrap().frac();
            prop_assert_eq!(fa, fb);
        }
    }

    #[test]
    fn m_equivalent_floors_share_admissible_fractions(seed in any::<u64>()) {
        let p = pair(seed);
        let mut r = rng(seed ^ 4);
        let fracs: Vec<RatVector> = p.enumerate_superstables().unwrap().into_iter().map(|r| r.frac).collect();
        for f in &fracs {
            let a = random_config(&mut r, p.dim(), 10);
            let z = Vector((0..p.dim()).map(|_| Int::from(r.gen_range(0..=2))).collect());
            let b = a.add(&p.m().matrix().mul_vec(&z).unwrap());
            if !b.is_nonnegative() {
                continue;
            }
            let in_a = p.rplus_member(&a.to_rational().add(f));
            let in_b = p.rplus_member(&b.to_rational().add(f));
            prop_assert_eq!(in_a, in_b);
        }
    }

    #[test]
    fn duality_is_a_fraction_preserving_bijection(seed in any::<u64>()) {
        let p = pair(seed);
        for s in p.m().superstables() {
            let t = involution_mu(&p, s).unwrap();
            prop_assert!(p.m().is_superstable(&t));
            prop_assert_eq!(&involution_mu(&p, &t).unwrap(), s);
        }
        let table = duality_table(&p).unwrap();
        let images: BTreeSet<_> = table.iter().map(|r| r.critical.preimage.clone()).collect();
        let criticals: BTreeSet<_> = p.enumerate_criticals().unwrap().into_iter().map(|r| r.preimage).collect();
        prop_assert_eq!(images.len(), table.len());
        prop_assert_eq!(images, criticals);
        for r in &table {
            prop_assert_eq!(&r.critical.frac, &r.superstable.frac);
            prop_assert!(p.m().is_critical(&r.critical.floor));
            prop_assert_eq!(&duality_inverse(&p, &r.critical.preimage).unwrap(), &r.superstable.preimage);
            prop_assert_eq!(&duality(&p, &r.superstable.preimage).unwrap(), &r.critical.preimage);
        }
    }

    #[test]
    fn unsigned_pairs_use_classical_duality(seed in any::<u64>()) {
        let m = random_m_matrix(&mut rng(seed), &GenConfig::default());
        let p = ChipFiringPair::new(m.clone(), m).unwrap();
        let c_max = p.m().c_max().clone();
        for s in p.m().superstables() {
            prop_assert_eq!(duality(&p, &s.to_rational()).unwrap(), c_max.sub(s).to_rational());
        }
    }

    #[test]
    fn frackets_are_cosets_of_the_zero_fracket(seed in any::<u64>()) {
        let p = pair(seed);
        let mut sizes = Vec::new();
        for side in [Side::L, Side::M] {
            let classes = match side {
                Side::L => p.l_class_index(),
                Side::M => p.m().class_index(),
            };
            let part = fracket_partition(&p, side).unwrap();
            let zero = zero_fracket(&p, side).unwrap();
            let all: Vec<usize> = part.sizes();
            prop_assert!(all.iter().all(|&s| s == zero.size()));
            prop_assert_eq!(Int::from(all.iter().sum::<usize>()), classes.order());
            for a in &zero.member_representatives {
                prop_assert!(in_zero_fracket(&p, side, &a.neg()).unwrap());
                for b in &zero.member_representatives {
                    prop_assert!(in_zero_fracket(&p, side, &a.add(b)).unwrap());
                }
            }
            for f in &part.frackets {
                let v = &f.representatives[0];
                let coset: BTreeSet<_> = zero
                    .member_representatives
                    .iter()
                    .map(|w| classes.class_id(&v.add(w)).unwrap())
                    .collect();
                let members: BTreeSet<_> = f.classes.iter().cloned().collect();
                prop_assert_eq!(coset, members);
            }
            sizes.push(Int::from(zero.size()));
        }
        prop_assert_eq!(&sizes[0], &sizes[1]);
        let g = p.det_l().abs().gcd(&p.det_m().abs());
        prop_assert!(g.is_multiple_of(&sizes[0]));
    }
}

#[test]
fn both_mu_cases_occur() {
    let mut cases = BTreeSet::new();
    for seed in 0..200 {
        for r in duality_table(&pair(seed)).unwrap() {
            cases.insert(format!("{:?}", r.mu_case));
        }
    }
    println!("mu cases exercised: {cases:?}");
    assert!(cases.contains(&format!("{:?}", MuCase::Identity)));
    assert!(cases.contains(&format!("{:?}", MuCase::Dual)));
}
