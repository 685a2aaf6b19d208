use anyhow::{bail, Result};
use chipfire::criteria::{all_criteria, criterion};
use chipfire::duality::{analyze_fixed_points, duality as dual, duality_inverse, duality_table};
use chipfire::fracket::{
    cyclic_check, fracket_partition, verify_largest_invariant_factor, zero_fracket,
    zero_fracket_size_formula, Side,
};
use chipfire::mmatrix::{is_m_matrix, MMatrix};
use chipfire::pair::ChipFiringPair;
use chipfire::sgraph::{
    base_graph, kn_z2_subgroup, pattern_signs, scan_critical_groups, sweep,
    verify_half_n_integrality, Kind,
};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::input::PairSource;
use crate::report::{Report, Section};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConfigKind {
    Superstable,
    Critical,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: ConfigKind,
    /// Also show R+ preimages and their floors
    #[arg(long)]
    preimages: bool,
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    /// Show which branch of the involution each row used
    #[arg(long)]
    show_mu_cases: bool,
    /// Map criticals back to superstables instead
    #[arg(long)]
    inverse: bool,
}

#[derive(Debug, Args)]
pub struct FixedPointArgs {
    /// Compare the count with the predicted value and the nonzero criteria
    #[arg(long)]
    predict: bool,
}

#[derive(Debug, Args)]
pub struct FracketArgs {
    #[arg(long, default_value = "L")]
    side: Side,
    /// Run the largest-invariant-factor, size-formula and cyclic-shortcut checks
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Complete,
    Cycle,
}

impl From<FamilyKind> for Kind {
    fn from(k: FamilyKind) -> Kind {
        match k {
            FamilyKind::Complete => Kind::Complete,
            FamilyKind::Cycle => Kind::Cycle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyCheck {
    HalfN,
    Z2Subgroup,
    CriticalGroups,
}

#[derive(Debug, Args)]
pub struct FamilyScanArgs {
    #[arg(long, value_enum)]
    kind: FamilyKind,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    verify: Option<FamilyCheck>,
}

#[derive(Debug, Args)]
pub struct ReferenceCheckArgs {
    /// Run only these criteria (1-10)
    #[arg(long, value_delimiter = ',')]
    criterion: Vec<u8>,
    /// Include every individual comparison
    #[arg(long)]
    verbose: bool,
}

pub fn check_mmatrix(source: &PairSource, cap: u64) -> Result<Report> {
    let (_, m) = source.matrices()?;
    let mut s = Section::key_values("M");
    s.kv(
        "matrix",
        m.to_rows()
            .iter()
            .map(|r| format!("{r:?}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    let ok = is_m_matrix(&m);
    s.kv("is_m_matrix", ok);
    let mut doc = json!({ "matrix": m, "is_m_matrix": ok });
    if ok {
        let mm = MMatrix::with_cap(m, cap)?;
        s.kv("det", mm.det());
        s.kv("c_max", mm.c_max());
        s.kv("critical_group", mm.class_index().group());
        s.kv("superstables", mm.superstables().len());
        doc["det"] = json!(mm.det().to_string());
        doc["c_max"] = json!(mm.c_max());
        doc["critical_group"] = json!(mm.class_index().group().to_string());
        doc["superstables"] = json!(mm.superstables().len());
    }
    Ok(Report::new(vec![s], doc).with_status(ok))
}

fn matrix_rows<T: chipfire::exactla::Scalar>(
    name: &str,
    m: &chipfire::exactla::Matrix<T>,
) -> Section {
    let mut s = Section::new(name, &[]);
    for r in m.to_rows() {
        s.row(r.iter().map(|x| x.to_string()));
    }
    s
}

pub fn show_pair(p: &ChipFiringPair) -> Result<Report> {
    let mut info = Section::key_values("pair");
    info.kv("dim", p.dim())
        .kv("det L", p.det_l())
        .kv("det M", p.det_m())
        .kv("c_max", p.m().c_max())
        .kv("K(L)", p.l_class_index().group())
        .kv("K(M)", p.m().class_index().group());
    let sections = vec![
        matrix_rows("L", p.l()),
        matrix_rows("M", p.m().matrix()),
        matrix_rows("LM^-1", p.lm_inv()),
        matrix_rows("ML^-1", p.ml_inv()),
        info,
    ];
    let doc = json!({
        "L": p.l(),
        "M": p.m().matrix(),
        "LM_inv": p.lm_inv(),
        "ML_inv": p.ml_inv(),
        "det_L": p.det_l().to_string(),
        "det_M": p.det_m().to_string(),
        "c_max": p.m().c_max(),
        "K_L": p.l_class_index().group().to_string(),
        "K_M": p.m().class_index().group().to_string(),
    });
    Ok(Report::new(sections, doc))
}

pub fn enumerate(p: &ChipFiringPair, a: &EnumerateArgs) -> Result<Report> {
    let (name, rows) = match a.kind {
        ConfigKind::Superstable => ("superstable", p.enumerate_superstables()?),
        ConfigKind::Critical => ("critical", p.enumerate_criticals()?),
    };
    let headers: &[&str] = if a.preimages {
        &["config", "preimage", "floor"]
    } else {
        &["config"]
    };
    let mut s = Section::new(format!("{} {name} configurations", rows.len()), headers);
    for r in &rows {
        if a.preimages {
            s.row([
                r.config.to_string(),
                r.preimage.to_string(),
                r.floor.to_string(),
            ]);
        } else {
            s.row([r.config.to_string()]);
        }
    }
    Ok(Report::new(
        vec![s],
        json!({ "kind": name, "configurations": rows }),
    ))
}

pub fn duality(p: &ChipFiringPair, a: &DualityArgs) -> Result<Report> {
    let table = duality_table(p)?;
    if a.inverse {
        let mut s = Section::new(
            "inverse duality",
            &["critical", "preimage", "superstable preimage", "round trip"],
        );
        let mut ok = true;
        let mut rows = Vec::new();
        let mut criticals = p.enumerate_criticals()?;
        criticals.sort_by(|x, y| x.config.cmp(&y.config));
        for c in &criticals {
            let x = duality_inverse(p, &c.preimage)?;
            let back = dual(p, &x)? == c.preimage;
            ok &= back;
            s.row([
                c.config.to_string(),
                c.preimage.to_string(),
                x.to_string(),
                back.to_string(),
            ]);
            rows.push(json!({ "critical": c, "superstable_preimage": x, "round_trip": back }));
        }
        return Ok(Report::new(vec![s], json!({ "inverse": rows })).with_status(ok));
    }
    let mut headers = vec!["superstable", "preimage", "critical", "preimage"];
    if a.show_mu_cases {
        headers.push("mu");
    }
    let mut s = Section::new("duality", &headers);
    for r in &table {
        let mut row = vec![
            r.superstable.config.to_string(),
            r.superstable.preimage.to_string(),
            r.critical.config.to_string(),
            r.critical.preimage.to_string(),
        ];
        if a.show_mu_cases {
            row.push(format!("{:?}", r.mu_case).to_lowercase());
        }
        s.row(row);
    }
    Ok(Report::new(vec![s], json!({ "duality": table })))
}

pub fn fixed_points(p: &ChipFiringPair, a: &FixedPointArgs) -> Result<Report> {
    let analysis = analyze_fixed_points(p)?;
    let mut list = Section::new(
        format!("{} fixed points", analysis.fixed_points.len()),
        &["superstable"],
    );
    for f in &analysis.fixed_points {
        list.row([f.to_string()]);
    }
    if !a.predict {
        return Ok(Report::new(
            vec![list],
            json!({ "fixed_points": analysis.fixed_points }),
        ));
    }
    let pr = &analysis.prediction;
    let cr = &analysis.criteria;
    let mut s = Section::key_values(format!("actual={} predicted={}", pr.actual, pr.predicted));
    s.kv("|F0^M|", &pr.zero_fracket_order)
        .kv("K(M)/F0^M", &pr.quotient)
        .kv("elements of order <= 2", &pr.order_le2)
        .kv("ord(c_max)", &cr.c_max_order)
        .kv("odd-order guarantee", cr.odd_order_guarantee)
        .kv(
            "cyclic even-order criterion",
            cr.cyclic_even_criterion
                .map_or("n/a".to_string(), |b| b.to_string()),
        )
        .kv("consistent", analysis.consistent());
    Ok(Report::new(vec![list, s], json!(analysis)).with_status(analysis.consistent()))
}

pub fn frackets(p: &ChipFiringPair, a: &FracketArgs) -> Result<Report> {
    let part = fracket_partition(p, a.side)?;
    let zero = zero_fracket(p, a.side)?;
    let mut s = Section::new(
        format!("{}-frackets", a.side),
        &["key", "size", "representatives"],
    );
    for f in &part.frackets {
        let reps: Vec<String> = f.representatives.iter().map(|v| v.to_string()).collect();
        s.row([f.key.to_string(), f.size().to_string(), reps.join(" ")]);
    }
    let mut z = Section::key_values("zero fracket");
    z.kv("size", zero.size())
        .kv("group", &zero.group)
        .kv("quotient", &zero.quotient);
    let mut doc = json!({ "partition": part, "zero_fracket": zero });
    let mut sections = vec![s, z];
    let mut ok = true;
    if a.verify {
        let lf = verify_largest_invariant_factor(p)?;
        let sf = zero_fracket_size_formula(p)?;
        let cl = cyclic_check(p, Side::L)?;
        let cm = cyclic_check(p, Side::M)?;
        let mut v = Section::new("verification", &["check", "result", "detail"]);
        v.row([
            "largest invariant factor = flcm".to_string(),
            lf.holds().to_string(),
            format!(
                "L: {} vs {}, M: {} vs {}",
                lf.l.largest_invariant_factor, lf.l.flcm, lf.m.largest_invariant_factor, lf.m.flcm
            ),
        ]);
        v.row([
            "zero fracket size formula".to_string(),
            sf.agrees().to_string(),
            format!(
                "predicted {} actual {}/{}",
                sf.predicted, sf.actual_l, sf.actual_m
            ),
        ]);
        for c in [&cl, &cm] {
            v.row([
                format!("cyclic shortcut side {}", c.side),
                c.consistent().to_string(),
                format!(
                    "cyclic {} gcd {} actual {}",
                    c.cyclic, c.gcd_value, c.actual
                ),
            ]);
        }
        ok = lf.holds() && sf.agrees() && cl.consistent() && cm.consistent();
        doc["verification"] =
            json!({ "largest_factor": lf, "size_formula": sf, "cyclic": [cl, cm], "ok": ok });
        sections.push(v);
    }
    Ok(Report::new(sections, doc).with_status(ok))
}

pub fn group(p: &ChipFiringPair) -> Result<Report> {
    let gl = p.l_class_index().group();
    let gm = p.m().class_index().group();
    let mut s = Section::new("critical groups", &["matrix", "order", "invariant factors"]);
    for (name, g) in [("L", &gl), ("M", &gm)] {
        let f: Vec<String> = g
            .invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect();
        s.row([name.to_string(), g.order().to_string(), f.join(" ")]);
    }
    Ok(Report::new(vec![s], json!({ "L": gl, "M": gm })))
}

pub fn family_scan(a: &FamilyScanArgs, cap: u64) -> Result<Report> {
    let kind: Kind = a.kind.into();
    let base = base_graph(kind, a.n)?;
    match a.verify {
        None => {
            let items = sweep(kind, a.n, cap)?;
            let rows = items
                .par_iter()
                .map(|it| {
                    let fp = analyze_fixed_points(&it.pair)?;
                    Ok((
                        it.pattern,
                        it.pair.l_class_index().group(),
                        fp.fixed_points.len(),
                        fp.consistent(),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut s = Section::new(
                format!("{} sign patterns of {kind} n={}", rows.len(), a.n),
                &["pattern", "signs", "K(L)", "fixed points"],
            );
            let mut ok = true;
            let mut doc = Vec::new();
            for (pattern, g, count, consistent) in &rows {
                ok &= consistent;
                s.row([
                    pattern.to_string(),
                    pattern_signs(&base, *pattern),
                    g.to_string(),
                    count.to_string(),
                ]);
                doc.push(json!({ "pattern": pattern, "group": g, "fixed_points": count, "consistent": consistent }));
            }
            Ok(
                Report::new(vec![s], json!({ "kind": kind, "n": a.n, "patterns": doc }))
                    .with_status(ok),
            )
        }
        Some(FamilyCheck::HalfN) => {
            if kind != Kind::Complete {
                bail!("half-n integrality applies to complete graphs");
            }
            let r = verify_half_n_integrality(a.n, cap)?;
            let mut s = Section::key_values(format!("(n/2) LM^-1 integral on K{}", a.n));
            s.kv("patterns", r.patterns)
                .kv("failures", format!("{:?}", r.failures))
                .kv("holds", r.holds());
            Ok(Report::new(vec![s], json!(r)).with_status(r.holds()))
        }
        Some(FamilyCheck::Z2Subgroup) => {
            if kind != Kind::Complete {
                bail!("the Z_2 subgroup check applies to complete graphs");
            }
            let items = sweep(kind, a.n, cap)?;
            let reports = items
                .par_iter()
                .map(|it| kn_z2_subgroup(&it.pair, a.n))
                .collect::<chipfire::Result<Vec<_>>>()?;
            let mut s = Section::new(
                format!("Z_2^{} inside F0^L", a.n - 2),
                &["pattern", "subgroup", "holds"],
            );
            let mut ok = true;
            for (it, r) in items.iter().zip(&reports) {
                ok &= r.holds();
                s.row([
                    it.pattern.to_string(),
                    r.subgroup.to_string(),
                    r.holds().to_string(),
                ]);
            }
            let doc: Vec<_> = items
                .iter()
                .zip(&reports)
                .map(|(it, r)| json!({ "pattern": it.pattern, "report": r }))
                .collect();
            Ok(Report::new(vec![s], json!({ "n": a.n, "reports": doc, "ok": ok })).with_status(ok))
        }
        Some(FamilyCheck::CriticalGroups) => {
            let items = sweep(kind, a.n, cap)?;
            let rank = a.n.saturating_sub(2);
            let scan = scan_critical_groups(&items, rank)?;
            let mut s = Section::new(
                format!(
                    "{} critical groups over {} patterns",
                    scan.groups.len(),
                    scan.patterns
                ),
                &["group", "order"],
            );
            for g in &scan.groups {
                s.row([g.to_string(), g.order().to_string()]);
            }
            let mut c = Section::key_values(format!("Z_2^{rank} embedding"));
            c.kv("group failures", format!("{:?}", scan.group_failures))
                .kv("F0^L failures", format!("{:?}", scan.zero_fracket_failures))
                .kv("holds", scan.holds());
            Ok(Report::new(vec![s, c], json!(scan)).with_status(scan.holds()))
        }
    }
}

pub fn reference_check(a: &ReferenceCheckArgs) -> Result<Report> {
    let outcomes = if a.criterion.is_empty() {
        all_criteria()
    } else {
        a.criterion
            .iter()
            .map(|&id| {
                criterion(id).ok_or_else(|| anyhow::anyhow!("no criterion {id}; expected 1-10"))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let mut s = Section::new(
        "criteria",
        &["id", "result", "title", "ms", "budget ms", "failed checks"],
    );
    for o in &outcomes {
        let failed: Vec<String> = o.failed_checks().map(|c| c.name.clone()).collect();
        s.row([
            o.id.to_string(),
            if o.passed { "PASS" } else { "FAIL" }.to_string(),
            o.title.to_string(),
            o.elapsed_ms.to_string(),
            o.budget_ms.map_or("-".to_string(), |b| b.to_string()),
            failed.join("; "),
        ]);
    }
    let mut sections = vec![s];
    if a.verbose {
        let mut d = Section::new("checks", &["id", "result", "check", "detail"]);
        for o in &outcomes {
            for c in &o.checks {
                d.row([
                    o.id.to_string(),
                    if c.passed { "ok" } else { "FAIL" }.to_string(),
                    c.name.clone(),
                    c.detail.clone(),
                ]);
            }
        }
        sections.push(d);
    }
    let ok = outcomes.iter().all(|o| o.passed);
    Ok(Report::new(sections, json!({ "criteria": outcomes, "ok": ok })).with_status(ok))
}
