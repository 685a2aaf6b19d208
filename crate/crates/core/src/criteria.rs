//! End-to-end reference checks. Each criterion reruns a computation on a
//! named fixture, compares against the reference data in [`crate::fixtures`],
//! and reports every individual comparison along with its runtime budget.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::{
    analyze_fixed_points, duality, duality_inverse, duality_table, involution_mu,
};
use crate::error::Result;
use crate::exactla::{int, ivec, rvec, Int, IntVector, RatVector, Rational};
use crate::fixtures::*;
use crate::fracket::{
    cyclic_shortcut, flcm, fracket_map, fracket_partition, gcd_entries, quotient_by_zero_fracket,
    scaled_map, zero_fracket, zero_fracket_size_formula, Side,
};
use crate::gen::{random_m_matrix, random_pair, GenConfig};
use crate::lattice::{AbelianGroup, DEFAULT_ENUMERATION_CAP};
use crate::mmatrix::MMatrix;
use crate::pair::ChipFiringPair;
use crate::sgraph::{
    half_n_integral, kn_z2_subgroup, scan_critical_groups, sweep, sweep_graph, Kind,
};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
    pub passed: bool,
}

impl CriterionOutcome {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn within_budget(&self) -> bool {
        self.budget_ms.is_none_or(|b| self.elapsed_ms < b)
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let budget = self
            .budget_ms
            .map(|b| format!(" < {b} ms"))
            .unwrap_or_default();
        write!(
            f,
            "[{}] {:>2} {} ({} ms{budget}, {}/{} checks)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, name: &str, got: T, want: T) {
        let passed = got == want;
        let detail = if passed {
            format!("{got}")
        } else {
            format!("got {got}, expected {want}")
        };
        self.add(name, passed, detail);
    }

    fn eq_all<T: PartialEq + fmt::Display>(&mut self, name: &str, got: &[T], want: &[T]) {
        let show = |v: &[T]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let passed = got == want;
        let detail = if passed {
            show(got)
        } else {
            format!("got {}, expected {}", show(got), show(want))
        };
        self.add(name, passed, detail);
    }
}

fn run(
    id: u8,
    title: &'static str,
    budget: Option<Duration>,
    body: impl FnOnce(&mut Checks) -> Result<()>,
) -> CriterionOutcome {
    let start = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = body(&mut checks) {
        checks.add("no errors", false, e.to_string());
    }
    let elapsed = start.elapsed();
    let budget_ms = budget.map(|b| b.as_millis());
    let mut outcome = CriterionOutcome {
        id,
        title,
        checks: checks.0,
        elapsed_ms: elapsed.as_millis(),
        budget_ms,
        passed: false,
    };
    if let Some(b) = budget_ms {
        let ok = outcome.elapsed_ms < b;
        outcome.checks.push(Check {
            name: "runtime budget".into(),
            passed: ok,
            detail: format!("{} ms of {b} ms", outcome.elapsed_ms),
        });
    }
    outcome.passed = outcome.checks.iter().all(|c| c.passed);
    outcome
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// Superstables and criticals of the unsigned `M` against the 8-row table.
pub fn criterion_1() -> CriterionOutcome {
    run(1, "unsigned superstables and criticals", secs(1), |c| {
        let m = MMatrix::new(run3_m())?;
        let want_s = sorted(UNSIGNED_TABLE.iter().map(|(s, _)| ivec(s)).collect());
        let want_c = sorted(UNSIGNED_TABLE.iter().map(|(_, k)| ivec(k)).collect());
        c.eq_all("superstables", m.superstables(), &want_s);
        c.eq_all("criticals", &sorted(m.criticals().to_vec()), &want_c);
        let rows_ok = UNSIGNED_TABLE
            .iter()
            .all(|(s, k)| m.classical_dual(&ivec(s)) == ivec(k));
        c.add("rows pair s with c_max - s", rows_ok, "");
        Ok(())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row(IntVector, RatVector, IntVector);

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0, self.1, self.2)
    }
}

fn printed_rows(critical: bool) -> Vec<Row> {
    sorted(
        PAIR_TABLE
            .iter()
            .map(|r| {
                if critical {
                    Row(
                        parse_int_vector(&r.critical),
                        parse_vector(&r.critical_preimage),
                        parse_int_vector(&r.critical_floor),
                    )
                } else {
                    Row(
                        parse_int_vector(&r.superstable),
                        parse_vector(&r.superstable_preimage),
                        parse_int_vector(&r.superstable_floor),
                    )
                }
            })
            .collect(),
    )
}

/// Pair superstables and criticals against the 12-row table.
pub fn criterion_2() -> CriterionOutcome {
    run(2, "pair superstables and criticals", secs(1), |c| {
        let p = run3();
        let rows = |v: Vec<crate::pair::PairConfig>| {
            sorted(
                v.into_iter()
                    .map(|r| Row(r.config, r.preimage, r.floor))
                    .collect::<Vec<Row>>(),
            )
        };
        c.eq_all(
            "superstable rows",
            &rows(p.enumerate_superstables()?),
            &printed_rows(false),
        );
        c.eq_all(
            "critical rows",
            &rows(p.enumerate_criticals()?),
            &printed_rows(true),
        );
        Ok(())
    })
}

/// The duality map, its inverse, row alignment with the table, and the
/// failure of the naive map.
pub fn criterion_3() -> CriterionOutcome {
    run(3, "duality map", None, |c| {
        let p = run3();
        let x = rvec(&[(4, 3), (7, 6), (0, 1)]);
        let y = duality(&p, &x)?;
        c.eq("D(4/3,7/6,0)", y.clone(), rvec(&[(7, 3), (7, 6), (1, 1)]));
        c.eq("S+ image of (5,4,0)", p.to_config(&y)?, ivec(&[8, 6, 1]));

        let mut misaligned = Vec::new();
        for r in PAIR_TABLE {
            let s = parse_vector(&r.superstable_preimage);
            let got = p.to_config(&duality(&p, &s)?)?;
            let want = parse_int_vector(&r.critical);
            if got != want {
                misaligned.push(format!(
                    "{} -> {got} (row has {want})",
                    parse_int_vector(&r.superstable)
                ));
            }
        }
        c.add(
            "row alignment",
            misaligned.is_empty(),
            format!(
                "{} of 12 rows differ: {}",
                misaligned.len(),
                misaligned.join("; ")
            ),
        );

        let table = duality_table(&p)?;
        let inverts = table.iter().all(|r| {
            duality_inverse(&p, &r.critical.preimage).ok().as_ref() == Some(&r.superstable.preimage)
        });
        c.add(
            "inverse recovers every input",
            inverts,
            format!("{} records", table.len()),
        );

        let naive = ivec(&[9, 7, 2]).sub(&ivec(&[1, 1, 0]));
        let class = p.classify(&naive)?;
        c.add(
            "naive c_max - s is not critical",
            !class.is_critical,
            format!(
                "{naive}: critical = {}, superstable = {}",
                class.is_critical, class.is_superstable
            ),
        );
        Ok(())
    })
}

/// The involution on superstables of `M`, and its collapse for `(M, M)`.
pub fn criterion_4() -> CriterionOutcome {
    run(4, "involution", None, |c| {
        let p = run3();
        let ss = p.m().superstables().to_vec();
        let mut bad = Vec::new();
        for s in &ss {
            if &involution_mu(&p, &involution_mu(&p, s)?)? != s {
                bad.push(s.to_string());
            }
        }
        c.add(
            "mu(mu(s)) = s",
            bad.is_empty(),
            format!("{} superstables, failures {bad:?}", ss.len()),
        );
        c.eq(
            "mu(1,1,0)",
            involution_mu(&p, &ivec(&[1, 1, 0]))?,
            ivec(&[0, 0, 1]),
        );

        let q = run3_unsigned();
        let c_max = q.m().c_max().clone();
        let mut id_ok = true;
        let mut dual_ok = true;
        for s in q.m().superstables() {
            id_ok &= &involution_mu(&q, s)? == s;
            dual_ok &= duality(&q, &s.to_rational())? == c_max.sub(s).to_rational();
        }
        c.add("(M, M): mu = id", id_ok, "");
        c.add("(M, M): D(x) = c_max - x", dual_ok, "");
        Ok(())
    })
}

fn keys(rows: &[[&str; 3]]) -> Vec<RatVector> {
    sorted(rows.iter().map(|r| parse_vector(r)).collect())
}

/// Fracket partitions, zero frackets, quotients and the gcd formulas.
pub fn criterion_5() -> CriterionOutcome {
    run(5, "frackets", secs(1), |c| {
        let p = run3();
        let part_l = fracket_partition(&p, Side::L)?;
        let part_m = fracket_partition(&p, Side::M)?;
        c.eq_all(
            "side L keys",
            &sorted(part_l.keys().into_iter().cloned().collect()),
            &keys(&RUN3_L_KEYS),
        );
        c.eq_all(
            "side M keys",
            &sorted(part_m.keys().into_iter().cloned().collect()),
            &keys(&RUN3_M_KEYS),
        );
        let all_two = part_l
            .sizes()
            .iter()
            .chain(part_m.sizes().iter())
            .all(|&s| s == 2);
        c.add(
            "every fracket has 2 classes",
            all_two,
            format!("L {:?}, M {:?}", part_l.sizes(), part_m.sizes()),
        );

        let zero_l = zero_fracket(&p, Side::L)?;
        let classes = p.l_class_index();
        let want = sorted(
            RUN3_PRINTED_ZERO_FRACKET_L
                .iter()
                .map(|v| classes.class_id(&ivec(v)))
                .collect::<Result<Vec<_>>>()?,
        );
        let got = sorted(zero_l.members.clone());
        let reps: Vec<String> = zero_l
            .member_representatives
            .iter()
            .map(|v| v.to_string())
            .collect();
        let detail = if got == want {
            format!("members {reps:?}")
        } else {
            let listed: Vec<String> = RUN3_PRINTED_ZERO_FRACKET_L
                .iter()
                .map(|v| {
                    let v = ivec(v);
                    let same = classes
                        .same_class(&v, &IntVector::zeros(v.len()))
                        .unwrap_or(false);
                    format!(
                        "{v} {} the class of zero",
                        if same { "is" } else { "is not" }
                    )
                })
                .collect();
            format!("members {reps:?}; reference classes: {}", listed.join(", "))
        };
        c.add("F0^L = {[(0,0,0)], [(3,3,3)]}", got == want, detail);

        c.eq(
            "K(M)/F0^M",
            quotient_by_zero_fracket(&p, Side::M)?,
            AbelianGroup::from_i64(&[4]),
        );
        c.eq(
            "K(L)/F0^L",
            quotient_by_zero_fracket(&p, Side::L)?,
            AbelianGroup::from_i64(&[6]),
        );
        c.eq("flcm(ML^-1)", flcm(fracket_map(&p, Side::L)), int(6));
        c.eq("flcm(LM^-1)", flcm(fracket_map(&p, Side::M)), int(4));
        let formula = zero_fracket_size_formula(&p)?;
        c.add(
            "size formula",
            formula.agrees() && formula.predicted == int(2),
            format!(
                "predicted {} actual {}/{}",
                formula.predicted, formula.actual_l, formula.actual_m
            ),
        );
        let shortcut = cyclic_shortcut(&p, Side::M)?;
        c.add(
            "cyclic shortcut gcd(|M| LM^-1)",
            shortcut == Some(int(2)),
            shortcut.map_or("quotient not cyclic".into(), |g| g.to_string()),
        );
        Ok(())
    })
}

/// Fixed-point counts on the fixture and on exhaustive small sweeps.
pub fn criterion_6() -> CriterionOutcome {
    run(6, "fixed points", secs(10), |c| {
        let p = run3();
        let a = analyze_fixed_points(&p)?;
        c.add(
            "RUN3 has |F0^M| * d = 4 fixed points",
            a.fixed_points.len() == 4 && a.prediction.predicted == int(4),
            format!(
                "actual {} predicted {} = {} * {}",
                a.fixed_points.len(),
                a.prediction.predicted,
                a.prediction.zero_fracket_order,
                a.prediction.order_le2
            ),
        );
        let mut items = sweep_graph(&run3_graph(), DEFAULT_ENUMERATION_CAP)?;
        let triangles = items.len();
        items.extend(sweep(Kind::Cycle, 6, DEFAULT_ENUMERATION_CAP)?);
        let mut count_bad = Vec::new();
        let mut odd_bad = Vec::new();
        let mut cyclic_bad = Vec::new();
        let mut cyclic_applied = 0;
        for (k, it) in items.iter().enumerate() {
            let a = analyze_fixed_points(&it.pair)?;
            let n = a.fixed_points.len();
            let label = if k < triangles {
                format!("triangle {}", it.pattern)
            } else {
                format!("C6 {}", it.pattern)
            };
            if !a.prediction.consistent() {
                count_bad.push(format!("{label}: {n} vs {}", a.prediction.predicted));
            }
            if a.criteria.odd_order_guarantee && n == 0 {
                odd_bad.push(label.clone());
            }
            if let Some(flag) = a.criteria.cyclic_even_criterion {
                cyclic_applied += 1;
                if flag != (n > 0) {
                    cyclic_bad.push(label);
                }
            }
        }
        let total = items.len();
        c.add(
            "count in {0, |F0^M| d}",
            count_bad.is_empty(),
            format!("{total} pairs; {count_bad:?}"),
        );
        c.add(
            "odd order guarantees fixed points",
            odd_bad.is_empty(),
            format!("{odd_bad:?}"),
        );
        c.add(
            "cyclic even-order biconditional",
            cyclic_bad.is_empty(),
            format!("applied to {cyclic_applied} pairs; {cyclic_bad:?}"),
        );
        Ok(())
    })
}

/// The signed `C_6` search and the absence of a coordinatewise maximum.
pub fn criterion_7() -> CriterionOutcome {
    run(7, "critical set without a maximum", secs(5), |c| {
        let hits = search_c6_patterns()?;
        c.eq_all("matching patterns", &hits, &[C6_PATTERN]);
        let p = c6();
        c.eq_all(
            "criticals",
            &critical_configs(&p)?,
            &sorted_rows(&C6_CRITICALS),
        );
        c.add(
            "no coordinatewise maximum",
            !has_coordinatewise_max(&p)?,
            "",
        );
        Ok(())
    })
}

/// Signed `K_6`: integrality, the list of critical groups, and `Z_2^4`.
pub fn criterion_8() -> CriterionOutcome {
    run(8, "signed K6", secs(120), |c| {
        let items = sweep(Kind::Complete, 6, DEFAULT_ENUMERATION_CAP)?;
        let bad: Vec<u64> = items
            .iter()
            .filter(|it| !half_n_integral(&it.pair, 6))
            .map(|it| it.pattern)
            .collect();
        c.add(
            "3 LM^-1 integral",
            bad.is_empty(),
            format!("{} patterns; failures {bad:?}", items.len()),
        );

        let scan = scan_critical_groups(&items, 4)?;
        let want: BTreeSet<AbelianGroup> = K6_GROUPS
            .iter()
            .map(|g| AbelianGroup::from_i64(g))
            .collect();
        let got: BTreeSet<AbelianGroup> = scan.groups.iter().cloned().collect();
        c.add(
            "seven critical groups",
            got == want,
            got.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        );
        c.add(
            "Z_2^4 embeds in every K(L) and F0^L",
            scan.holds(),
            format!(
                "group failures {:?}, F0 failures {:?}",
                scan.group_failures, scan.zero_fracket_failures
            ),
        );

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut sample: Vec<usize> = (1..items.len()).collect();
        sample.shuffle(&mut rng);
        sample.truncate(39);
        sample.push(0);
        sample.sort();
        let mut structural_bad = Vec::new();
        for &i in &sample {
            let r = kn_z2_subgroup(&items[i].pair, 6)?;
            if !r.holds() {
                structural_bad.push(items[i].pattern);
            }
        }
        c.add(
            "structural Z_2^4 subgroup of F0^L",
            structural_bad.is_empty(),
            format!(
                "{} sampled patterns; failures {structural_bad:?}",
                sample.len()
            ),
        );
        Ok(())
    })
}

fn random_config<R: Rng>(rng: &mut R, n: usize, hi: i64) -> IntVector {
    IntVector::from(
        (0..n)
            .map(|_| Int::from(rng.gen_range(0..=hi)))
            .collect::<Vec<_>>(),
    )
}

/// Randomized invariants over generated M-matrices and pairs.
pub fn criterion_9() -> CriterionOutcome {
    run(9, "randomized invariants", secs(60), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = GenConfig::default();
        let mut count = Vec::new();
        let mut per_class = Vec::new();
        let mut schedule = Vec::new();
        let mut widen = Vec::new();
        for k in 0..100 {
            let m = MMatrix::new(random_m_matrix(&mut rng, &cfg))?;
            let ss = m.superstables();
            if Int::from(ss.len()) != m.det().abs() {
                count.push(k);
            }
            let ids: BTreeSet<_> = ss
                .iter()
                .map(|s| m.class_index().class_id(s))
                .collect::<Result<_>>()?;
            if ids.len() != ss.len() {
                per_class.push(k);
            }
            for _ in 0..5 {
                let v = random_config(&mut rng, m.dim(), 12);
                let a = m.stabilize(&v)?;
                let b = m.stabilize_by(&v, |ready| ready[rng.gen_range(0..ready.len())])?;
                if a != b {
                    schedule.push(k);
                }
                let bound = m.superstability_bound(&v);
                let wider = bound.add(&IntVector::from(vec![Int::from(1); m.dim()]));
                if m.find_multifiring(&v, &bound).is_some()
                    != m.find_multifiring(&v, &wider).is_some()
                {
                    widen.push(k);
                }
            }
        }
        c.add(
            "superstable count = |det M|",
            count.is_empty(),
            format!("{count:?}"),
        );
        c.add(
            "one superstable per class",
            per_class.is_empty(),
            format!("{per_class:?}"),
        );
        c.add(
            "stabilization is schedule independent",
            schedule.is_empty(),
            format!("{schedule:?}"),
        );
        c.add(
            "box oracle stable under widening",
            widen.is_empty(),
            format!("{widen:?}"),
        );

        let mut transfer = Vec::new();
        let mut frac_inv = Vec::new();
        let mut bijection = Vec::new();
        for k in 0..50 {
            let p = random_pair(&mut rng, &cfg);
            if !pair_invariants_hold(&p, &mut rng, &mut transfer, &mut frac_inv, k)? {
                continue;
            }
            if !duality_is_bijection(&p)? {
                bijection.push(k);
            }
        }
        c.add(
            "transfer maps invert",
            transfer.is_empty(),
            format!("{transfer:?}"),
        );
        c.add(
            "fractional parts are class invariants",
            frac_inv.is_empty(),
            format!("{frac_inv:?}"),
        );
        c.add(
            "duality is a fraction-preserving bijection",
            bijection.is_empty(),
            format!("{bijection:?}"),
        );
        Ok(())
    })
}

fn pair_invariants_hold<R: Rng>(
    p: &ChipFiringPair,
    rng: &mut R,
    transfer: &mut Vec<usize>,
    frac_inv: &mut Vec<usize>,
    k: usize,
) -> Result<bool> {
    let n = p.dim();
    let start = transfer.len() + frac_inv.len();
    for r in p.enumerate_superstables()? {
        if p.to_preimage(&r.config)? != r.preimage || p.to_config(&r.preimage)? != r.config {
            transfer.push(k);
            break;
        }
    }
    let map = fracket_map(p, Side::L);
    for _ in 0..5 {
        let v = random_config(rng, n, 20);
        let i = rng.gen_range(0..n);
        let w = v.add(&p.l().column(i).scale(&Int::from(rng.gen_range(-3..=3))));
        let fv = map.mul_vec(&v.to_rational())?.frac();
        let fw = map.mul_vec(&w.to_rational())?.frac();
        if fv != fw {
            frac_inv.push(k);
            break;
        }
    }
    Ok(transfer.len() + frac_inv.len() == start)
}

fn duality_is_bijection(p: &ChipFiringPair) -> Result<bool> {
    let table = duality_table(p)?;
    let images: BTreeSet<RatVector> = table.iter().map(|r| r.critical.preimage.clone()).collect();
    let criticals: BTreeSet<RatVector> = p
        .enumerate_criticals()?
        .into_iter()
        .map(|r| r.preimage)
        .collect();
    let frac_ok = table.iter().all(|r| r.critical.frac == r.superstable.frac);
    let inverse_ok = table.iter().all(|r| {
        duality_inverse(p, &r.critical.preimage).ok().as_ref() == Some(&r.superstable.preimage)
    });
    Ok(images.len() == table.len() && images == criticals && frac_ok && inverse_ok)
}

/// The `(3,3)` entry of `|L| ML^{-1}` for the fixture, compared with the
/// reference value, and the entry gcd that both agree on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledEntryErratum {
    pub computed: Int,
    pub printed: Int,
    pub erratum: bool,
    pub computed_gcd: Int,
    pub printed_gcd: Int,
}

pub fn scaled_entry_erratum(p: &ChipFiringPair) -> Result<ScaledEntryErratum> {
    let scaled = scaled_map(p, Side::L);
    let printed = crate::exactla::IntMatrix::from_i64(&RUN3_PRINTED_SCALED_ML_INV)?;
    let computed = scaled.get(2, 2).clone();
    let reference = printed.get(2, 2).clone();
    Ok(ScaledEntryErratum {
        erratum: computed != reference,
        computed,
        printed: reference,
        computed_gcd: gcd_entries(&scaled)?,
        printed_gcd: gcd_entries(&printed)?,
    })
}

/// Reports the known misprint in `|L| ML^{-1}` and checks the gcd survives it.
pub fn criterion_10() -> CriterionOutcome {
    run(10, "scaled ML^-1 erratum", None, |c| {
        let e = scaled_entry_erratum(&run3())?;
        c.eq("computed (3,3) entry", e.computed.clone(), int(12));
        c.add(
            "flagged as erratum",
            e.erratum && e.printed == int(2),
            format!(
                "computed {} vs reference {} (documented erratum)",
                e.computed, e.printed
            ),
        );
        c.add(
            "gcd unaffected",
            e.computed_gcd == int(2) && e.printed_gcd == int(2),
            format!(
                "computed gcd {}, reference gcd {}",
                e.computed_gcd, e.printed_gcd
            ),
        );
        let det_l = Rational::from_integer(run3().det_l().clone());
        let only_entry = {
            let mut want = crate::exactla::IntMatrix::from_i64(&RUN3_PRINTED_SCALED_ML_INV)?;
            want.set(2, 2, int(12));
            fracket_map(&run3(), Side::L).scale(&det_l).to_integer() == Some(want)
        };
        c.add("every other entry matches", only_entry, "");
        Ok(())
    })
}

pub fn all_criteria() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}

pub fn criterion(id: u8) -> Option<CriterionOutcome> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => return None,
    })
}
