//! Signed graphs and the pairs `(L, M)` of their reduced Laplacians, with
//! sign-pattern sweeps over complete graphs and cycles.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Int, IntMatrix, IntVector, Rational, Vector};
use crate::fracket::{in_zero_fracket, zero_fracket_group, Side};
use crate::lattice::{generated_subgroup, AbelianGroup, DEFAULT_ENUMERATION_CAP};
use crate::mmatrix::MMatrix;
use crate::pair::ChipFiringPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// +1 or -1
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    sink: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    /// Normalizes every edge to `u < v` and sorts the edge list.
    pub fn new(n: usize, sink: usize, edges: Vec<Edge>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Graph(format!("need at least 2 vertices, got {n}")));
        }
        if sink >= n {
            return Err(Error::Graph(format!(
                "sink {sink} out of range for {n} vertices"
            )));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for e in edges {
            if e.u >= n || e.v >= n {
                return Err(Error::Graph(format!(
                    "edge ({}, {}) has an endpoint out of range",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::Graph(format!("loop at vertex {}", e.u)));
            }
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Graph(format!(
                    "edge sign {} is not +1 or -1",
                    e.sign
                )));
            }
            norm.push(Edge {
                u: e.u.min(e.v),
                v: e.u.max(e.v),
                sign: e.sign,
            });
        }
        norm.sort();
        let g = SignedGraph {
            n,
            sink,
            edges: norm,
        };
        if !g.is_connected() {
            return Err(Error::Graph("underlying graph is disconnected".into()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in &self.edges {
                let y = if e.u == x {
                    e.v
                } else if e.v == x {
                    e.u
                } else {
                    continue;
                };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Same graph with a different sink.
    pub fn with_sink(&self, sink: usize) -> Result<Self> {
        SignedGraph::new(self.n, sink, self.edges.clone())
    }

    /// Indices into `edges()` of edges not touching the sink.
    pub fn non_sink_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].u != self.sink && self.edges[i].v != self.sink)
            .collect()
    }

    /// Number of sign patterns on non-sink edges.
    pub fn pattern_count(&self) -> Option<u64> {
        1u64.checked_shl(self.non_sink_edges().len() as u32)
    }

    /// Bit `k` of `pattern` set makes the `k`-th non-sink edge negative;
    /// all other edges become positive.
    pub fn with_pattern(&self, pattern: u64) -> Result<Self> {
        let slots = self.non_sink_edges();
        if slots.len() < 64 && pattern >> slots.len() != 0 {
            return Err(Error::Graph(format!(
                "pattern {pattern} needs more than {} bits",
                slots.len()
            )));
        }
        let mut edges: Vec<Edge> = self.edges.iter().map(|e| Edge { sign: 1, ..*e }).collect();
        for (bit, &i) in slots.iter().enumerate() {
            if pattern >> bit & 1 == 1 {
                edges[i].sign = -1;
            }
        }
        SignedGraph::new(self.n, self.sink, edges)
    }

    /// The pattern index of this graph's signs on non-sink edges.
    pub fn pattern(&self) -> u64 {
        self.non_sink_edges()
            .iter()
            .enumerate()
            .filter(|(_, &i)| self.edges[i].sign < 0)
            .fold(0, |acc, (bit, _)| acc | 1 << bit)
    }

    /// Reduced Laplacians `(L, M)` with the sink row and column removed.
    pub fn reduced_matrices(&self) -> (IntMatrix, IntMatrix) {
        let index: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.n)
                .map(|v| {
                    (v != self.sink).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let k = self.n - 1;
        let mut l = vec![vec![0i64; k]; k];
        let mut m = vec![vec![0i64; k]; k];
        for e in &self.edges {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if let Some(i) = index[a] {
                    l[i][i] += 1;
                    m[i][i] += 1;
                    if let Some(j) = index[b] {
                        l[i][j] -= e.sign as i64;
                        m[i][j] -= 1;
                    }
                }
            }
        }
        (
            IntMatrix::from_i64(&l).expect("square"),
            IntMatrix::from_i64(&m).expect("square"),
        )
    }

    pub fn reduced_laplacians(&self) -> Result<ChipFiringPair> {
        self.reduced_laplacians_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn reduced_laplacians_with_cap(&self, cap: u64) -> Result<ChipFiringPair> {
        let (l, m) = self.reduced_matrices();
        ChipFiringPair::with_cap(l, m, cap)
    }

    /// Edge-list text: a header `n <count> sink <id>` then `u v +|-` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {} sink {}\n", self.n, self.sink);
        for e in &self.edges {
            out.push_str(&format!(
                "{} {} {}\n",
                e.u,
                e.v,
                if e.sign > 0 { '+' } else { '-' }
            ));
        }
        out
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped;
    /// `sink <id>` may be omitted, defaulting to the highest vertex.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (n, sink) = match words.as_slice() {
            ["n", n] => {
                let n = parse_usize(n)?;
                (n, n.saturating_sub(1))
            }
            ["n", n, "sink", s] => (parse_usize(n)?, parse_usize(s)?),
            _ => {
                return Err(Error::Parse(format!(
                    "bad header {header:?}, expected \"n <count> sink <id>\""
                )))
            }
        };
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            let [u, v, s] = words.as_slice() else {
                return Err(Error::Parse(format!(
                    "line {}: expected \"u v +|-\"",
                    lineno + 1
                )));
            };
            edges.push(Edge {
                u: parse_usize(u)?,
                v: parse_usize(v)?,
                sign: parse_sign(s)?,
            });
        }
        SignedGraph::new(n, sink, edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("plain data")
    }

    /// Accepts either JSON or the edge-list format.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_edge_list(text)
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("expected a vertex index, got {s:?}")))
}

fn parse_sign(s: &str) -> Result<i8> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(Error::Parse(format!("expected + or -, got {s:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SignJson {
    Int(i8),
    Str(String),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    #[serde(default)]
    sink: Option<usize>,
    edges: Vec<(usize, usize, SignJson)>,
}

impl From<&SignedGraph> for GraphJson {
    fn from(g: &SignedGraph) -> Self {
        GraphJson {
            n: g.n,
            sink: Some(g.sink),
            edges: g
                .edges
                .iter()
                .map(|e| (e.u, e.v, SignJson::Int(e.sign)))
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for SignedGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let edges = raw
            .edges
            .into_iter()
            .map(|(u, v, s)| {
                let sign = match s {
                    SignJson::Int(i) => i,
                    SignJson::Str(s) => parse_sign(&s)?,
                };
                Ok(Edge { u, v, sign })
            })
            .collect::<Result<Vec<_>>>()?;
        SignedGraph::new(raw.n, raw.sink.unwrap_or(raw.n.saturating_sub(1)), edges)
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Complete,
    Cycle,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Complete => "complete",
            Kind::Cycle => "cycle",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(Kind::Complete),
            "cycle" => Ok(Kind::Cycle),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?}, expected complete or cycle"
            ))),
        }
    }
}

/// The all-positive member of a family, sink `n - 1`.
pub fn base_graph(kind: Kind, n: usize) -> Result<SignedGraph> {
    if n < 3 {
        return Err(Error::Graph(format!("family needs n >= 3, got {n}")));
    }
    let edges = match kind {
        Kind::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Edge { u, v, sign: 1 }))
            .collect(),
        Kind::Cycle => (0..n)
            .map(|u| Edge {
                u,
                v: (u + 1) % n,
                sign: 1,
            })
            .collect(),
    };
    SignedGraph::new(n, n - 1, edges)
}

pub fn family(kind: Kind, n: usize, pattern: u64) -> Result<SignedGraph> {
    base_graph(kind, n)?.with_pattern(pattern)
}

/// One sign pattern of a sweep.
#[derive(Debug, Clone)]
pub struct SweepItem {
    pub pattern: u64,
    pub pair: ChipFiringPair,
}

fn checked_pattern_count(base: &SignedGraph, cap: u64) -> Result<u64> {
    match base.pattern_count() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::CapExceeded {
            count: Int::from(2u8).pow(base.non_sink_edges().len() as u32),
            cap,
        }),
    }
}

/// Every sign pattern on the non-sink edges of `base`, in pattern order.
/// The M-matrix tables are built once and shared.
pub fn sweep_graph(base: &SignedGraph, cap: u64) -> Result<Vec<SweepItem>> {
    let count = checked_pattern_count(base, cap)?;
    let (_, m) = base.reduced_matrices();
    let m = Arc::new(MMatrix::with_cap(m, cap)?);
    (0..count)
        .into_par_iter()
        .map(|pattern| {
            let (l, _) = base.with_pattern(pattern)?.reduced_matrices();
            Ok(SweepItem {
                pattern,
                pair: ChipFiringPair::from_shared(l, Arc::clone(&m), cap)?,
            })
        })
        .collect()
}

pub fn sweep(kind: Kind, n: usize, cap: u64) -> Result<Vec<SweepItem>> {
    sweep_graph(&base_graph(kind, n)?, cap)
}

/// Number of spanning trees: `n^(n-2)` for `K_n`, `n` for `C_n`.
pub fn spanning_tree_count(kind: Kind, n: usize) -> Int {
    match kind {
        Kind::Complete => Int::from(n).pow(n as u32 - 2),
        Kind::Cycle => Int::from(n),
    }
}

fn require_even(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Graph(format!(
            "complete-graph checks need an even n >= 4, got {n}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfNReport {
    pub n: usize,
    pub patterns: u64,
    pub failures: Vec<u64>,
}

impl HalfNReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether `(n/2) LM^{-1}` is integral.
pub fn half_n_integral(p: &ChipFiringPair, n: usize) -> bool {
    p.lm_inv()
        .scale(&Rational::from_integer(Int::from(n / 2)))
        .is_integral()
}

/// `(n/2) LM^{-1}` integral for every signed `K_n`.
pub fn verify_half_n_integrality(n: usize, cap: u64) -> Result<HalfNReport> {
    require_even(n)?;
    let items = sweep(Kind::Complete, n, cap)?;
    let failures = items
        .iter()
        .filter(|it| !half_n_integral(&it.pair, n))
        .map(|it| it.pattern)
        .collect();
    Ok(HalfNReport {
        n,
        patterns: items.len() as u64,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Z2Report {
    pub n: usize,
    /// `LM^{-1} (n/2) e_i` for each non-sink vertex.
    pub generators: Vec<IntVector>,
    pub subset_sums: usize,
    pub all_superstable: bool,
    pub all_order_le2: bool,
    pub all_in_zero_fracket: bool,
    pub subgroup: AbelianGroup,
}

impl Z2Report {
    pub fn holds(&self) -> bool {
        self.all_superstable
            && self.all_order_le2
            && self.all_in_zero_fracket
            && self.subgroup == AbelianGroup::from_cyclic_factors(&vec![Int::from(2); self.n - 2])
    }
}

fn subsets_up_to(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&x: &usize| x + 1);
            for i in start..k {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Structural check of the `Z_2^{n-2}` subgroup of `F_0^L` for a signed `K_n`,
/// built from the preimages `s_i = (n/2) e_i`.
pub fn kn_z2_subgroup(p: &ChipFiringPair, n: usize) -> Result<Z2Report> {
    require_even(n)?;
    let k = p.dim();
    if k != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: k,
        });
    }
    let half = Int::from(n / 2);
    let subsets = subsets_up_to(k, (n - 2) / 2);
    let mut all_superstable = true;
    let mut all_order_le2 = true;
    let mut all_in_zero_fracket = true;
    for subset in &subsets {
        let mut x = IntVector::zeros(k);
        for &i in subset {
            x = x.add(&IntVector::unit(k, i).scale(&half));
        }
        let xq = x.to_rational();
        if !p.is_superstable_preimage(&xq) {
            all_superstable = false;
            continue;
        }
        let c = p.to_config(&xq)?;
        all_order_le2 &= p.l_class_index().element_order(&c)? <= Int::from(2);
        all_in_zero_fracket &= in_zero_fracket(p, Side::L, &c)?;
    }
    let generators = (0..k)
        .map(|i| p.to_config(&IntVector::unit(k, i).scale(&half).to_rational()))
        .collect::<Result<Vec<_>>>()?;
    let subgroup = generated_subgroup(p.l(), &generators)?;
    Ok(Z2Report {
        n,
        generators,
        subset_sums: subsets.len(),
        all_superstable,
        all_order_le2,
        all_in_zero_fracket,
        subgroup,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupScan {
    pub patterns: u64,
    /// Distinct critical groups `K(L)`, sorted.
    pub groups: Vec<AbelianGroup>,
    /// 2-rank needed for `Z_2^r` to embed.
    pub required_two_rank: usize,
    /// Patterns whose `K(L)` lacks `Z_2^r`.
    pub group_failures: Vec<u64>,
    /// Patterns whose `F_0^L` lacks `Z_2^r`.
    pub zero_fracket_failures: Vec<u64>,
}

impl GroupScan {
    pub fn holds(&self) -> bool {
        self.group_failures.is_empty() && self.zero_fracket_failures.is_empty()
    }
}

/// Collects the critical groups of a sweep and checks that `Z_2^r` embeds
/// in each `K(L)` and each `F_0^L`.
pub fn scan_critical_groups(items: &[SweepItem], required_two_rank: usize) -> Result<GroupScan> {
    let two = Int::from(2);
    let rows = items
        .par_iter()
        .map(|it| {
            let g = it.pair.l_class_index().group();
            let f0 = zero_fracket_group(&it.pair, Side::L)?;
            Ok((it.pattern, g, f0))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut groups = BTreeSet::new();
    let mut group_failures = Vec::new();
    let mut zero_fracket_failures = Vec::new();
    for (pattern, g, f0) in rows {
        if !g.contains_elementary(&two, required_two_rank) {
            group_failures.push(pattern);
        }
        if !f0.contains_elementary(&two, required_two_rank) {
            zero_fracket_failures.push(pattern);
        }
        groups.insert(g);
    }
    Ok(GroupScan {
        patterns: items.len() as u64,
        groups: groups.into_iter().collect(),
        required_two_rank,
        group_failures,
        zero_fracket_failures,
    })
}

/// Helper for reports: the pattern's bits as a `+`/`-` string over non-sink edges.
pub fn pattern_signs(base: &SignedGraph, pattern: u64) -> String {
    (0..base.non_sink_edges().len())
        .map(|b| if pattern >> b & 1 == 1 { '-' } else { '+' })
        .collect()
}

/// Smallest entry of `v` as `i64`, for compact reporting.
pub fn min_entry(v: &Vector<Int>) -> Option<i64> {
    v.iter().min().and_then(ToPrimitive::to_i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmatrix::is_m_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn run3_graph() -> SignedGraph {
        SignedGraph::parse_edge_list("n 4 sink 3\n0 1 -\n0 2 +\n1 2 +\n0 3 +\n2 3 +\n").unwrap()
    }

    #[test]
    fn run3_laplacians() {
        let (l, m) = run3_graph().reduced_matrices();
        assert_eq!(
            l,
            IntMatrix::from_i64(&[[3, 1, -1], [1, 2, -1], [-1, -1, 3]]).unwrap()
        );
        assert_eq!(
            m,
            IntMatrix::from_i64(&[[3, -1, -1], [-1, 2, -1], [-1, -1, 3]]).unwrap()
        );
        assert!(run3_graph().reduced_laplacians().is_ok());
        assert_eq!(run3_graph().pattern(), 1);
    }

    #[test]
    fn all_positive_gives_l_equal_m() {
        for kind in [Kind::Complete, Kind::Cycle] {
            let (l, m) = family(kind, 6, 0).unwrap().reduced_matrices();
            assert_eq!(l, m);
        }
        let g = base_graph(Kind::Complete, 6).unwrap();
        let all_neg = g.with_pattern((1 << 10) - 1).unwrap();
        let (l, m) = all_neg.reduced_matrices();
        assert_eq!(m, g.reduced_matrices().1);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 5 } else { 1 };
                assert_eq!(l.get(i, j), &Int::from(want));
            }
        }
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(
            base_graph(Kind::Complete, 6).unwrap().pattern_count(),
            Some(1024)
        );
        assert_eq!(
            base_graph(Kind::Cycle, 6).unwrap().pattern_count(),
            Some(16)
        );
        assert_eq!(sweep(Kind::Cycle, 6, 1000).unwrap().len(), 16);
        assert!(matches!(
            sweep(Kind::Complete, 6, 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(family(Kind::Cycle, 6, 16).is_err());
        for p in 0..16 {
            assert_eq!(family(Kind::Cycle, 6, p).unwrap().pattern(), p);
        }
    }

    #[test]
    fn m_is_an_m_matrix_with_tree_count_determinant() {
        for (kind, n) in [
            (Kind::Complete, 4),
            (Kind::Complete, 6),
            (Kind::Cycle, 5),
            (Kind::Cycle, 6),
        ] {
            let (_, m) = base_graph(kind, n).unwrap().reduced_matrices();
            assert!(is_m_matrix(&m));
            assert_eq!(m.det().unwrap(), spanning_tree_count(kind, n));
        }
    }

    #[test]
    fn sink_incident_signs_do_not_matter() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(3..7);
            let mut edges: Vec<Edge> = (1..n)
                .map(|v| Edge {
                    u: rng.gen_range(0..v),
                    v,
                    sign: 1,
                })
                .collect();
            for _ in 0..n {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    edges.push(Edge {
                        u,
                        v,
                        sign: if rng.gen() { 1 } else { -1 },
                    });
                }
            }
            let sink = rng.gen_range(0..n);
            let g = SignedGraph::new(n, sink, edges.clone()).unwrap();
            let flipped: Vec<Edge> = edges
                .iter()
                .map(|e| {
                    if e.u == sink || e.v == sink {
                        Edge {
                            sign: -e.sign,
                            ..*e
                        }
                    } else {
                        *e
                    }
                })
                .collect();
            let h = SignedGraph::new(n, sink, flipped).unwrap();
            assert_eq!(g.reduced_matrices(), h.reduced_matrices());
        }
    }

    #[test]
    fn multi_edges_accumulate() {
        let g = SignedGraph::parse_edge_list("n 3\n0 1 +\n0 1 -\n0 1 -\n1 2 +\n").unwrap();
        let (l, m) = g.reduced_matrices();
        assert_eq!(m, IntMatrix::from_i64(&[[3, -3], [-3, 4]]).unwrap());
        assert_eq!(l, IntMatrix::from_i64(&[[3, 1], [1, 4]]).unwrap());
    }

    #[test]
    fn parse_round_trips() {
        let g = run3_graph();
        assert_eq!(SignedGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(SignedGraph::from_json(&g.to_json()).unwrap(), g);
        let j = SignedGraph::parse(
            r#"{"n": 4, "sink": 3, "edges": [[0,1,"-"],[0,2,1],[1,2,"+"],[0,3,1],[2,3,1]]}"#,
        )
        .unwrap();
        assert_eq!(j, g);
        assert!(SignedGraph::parse_edge_list("n 3\n0 1 +\n").is_err());
        assert!(SignedGraph::parse_edge_list("m 3\n").is_err());
        assert!(SignedGraph::parse_edge_list("n 3\n0 1 x\n1 2 +\n").is_err());
        assert!(SignedGraph::parse_edge_list("n 3\n0 0 +\n1 2 +\n").is_err());
    }

    #[test]
    fn half_n_integrality_small() {
        let r = verify_half_n_integrality(4, 1 << 20).unwrap();
        assert_eq!(r.patterns, 8);
        assert!(r.holds());
        assert!(verify_half_n_integrality(5, 100).is_err());
        let p = family(Kind::Complete, 6, 0)
            .unwrap()
            .reduced_laplacians()
            .unwrap();
        assert!(half_n_integral(&p, 6));
    }

    #[test]
    fn z2_subgroup_k4() {
        for item in sweep(Kind::Complete, 4, 1 << 20).unwrap() {
            let r = kn_z2_subgroup(&item.pair, 4).unwrap();
            assert!(r.holds(), "pattern {}: {r:?}", item.pattern);
            assert_eq!(r.subset_sums, 4);
        }
    }

    #[test]
    fn z2_subgroup_k6_all_positive() {
        let p = family(Kind::Complete, 6, 0)
            .unwrap()
            .reduced_laplacians()
            .unwrap();
        let r = kn_z2_subgroup(&p, 6).unwrap();
        assert_eq!(r.subset_sums, 16);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn k6_all_positive_group() {
        let p = family(Kind::Complete, 6, 0)
            .unwrap()
            .reduced_laplacians()
            .unwrap();
        assert_eq!(
            p.l_class_index().group(),
            AbelianGroup::from_i64(&[6, 6, 6, 6])
        );
        assert_eq!(p.det_m(), &Int::from(1296));
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_up_to(5, 2).len(), 16);
        assert_eq!(subsets_up_to(3, 1).len(), 4);
        assert_eq!(
            pattern_signs(&base_graph(Kind::Cycle, 6).unwrap(), 5),
            "-+-+"
        );
    }
}
