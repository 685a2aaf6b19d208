//! Named example pairs and the reference tables they are checked against.

use crate::error::{Error, Result};
use crate::exactla::{ivec, parse_rational, IntMatrix, IntVector, RatVector, Vector};
use crate::lattice::DEFAULT_ENUMERATION_CAP;
use crate::pair::{coordinatewise_max, ChipFiringPair};
use crate::sgraph::{family, sweep, Kind, SignedGraph};

/// The signed graph behind the running 3-site example: a triangle on
/// vertices 0, 1, 2 with edge (0,1) negative, plus sink 3 joined to 0 and 2.
pub fn run3_graph() -> SignedGraph {
    SignedGraph::parse_edge_list("n 4 sink 3\n0 1 -\n0 2 +\n1 2 +\n0 3 +\n2 3 +\n")
        .expect("valid fixture")
}

pub fn run3_l() -> IntMatrix {
    IntMatrix::from_i64(&[[3, 1, -1], [1, 2, -1], [-1, -1, 3]]).expect("square")
}

pub fn run3_m() -> IntMatrix {
    IntMatrix::from_i64(&[[3, -1, -1], [-1, 2, -1], [-1, -1, 3]]).expect("square")
}

pub fn run3() -> ChipFiringPair {
    ChipFiringPair::new(run3_l(), run3_m()).expect("valid fixture")
}

/// `(M, M)` for the running example's `M`.
pub fn run3_unsigned() -> ChipFiringPair {
    ChipFiringPair::new(run3_m(), run3_m()).expect("valid fixture")
}

/// Superstable and critical of each class of the unsigned `M`, as printed.
pub const UNSIGNED_TABLE: [([i64; 3], [i64; 3]); 8] = [
    ([0, 0, 0], [2, 1, 2]),
    ([0, 0, 1], [2, 1, 1]),
    ([0, 0, 2], [2, 1, 0]),
    ([0, 1, 0], [2, 0, 2]),
    ([0, 1, 1], [2, 0, 1]),
    ([1, 0, 0], [1, 1, 2]),
    ([1, 1, 0], [1, 0, 2]),
    ([2, 0, 0], [0, 1, 2]),
];

/// One printed row of the pair table: a superstable and a critical, each as
/// configuration, preimage and floor.
#[derive(Debug, Clone, Copy)]
pub struct PrintedPairRow {
    pub superstable: [&'static str; 3],
    pub superstable_preimage: [&'static str; 3],
    pub superstable_floor: [&'static str; 3],
    pub critical: [&'static str; 3],
    pub critical_preimage: [&'static str; 3],
    pub critical_floor: [&'static str; 3],
}

macro_rules! row {
    ($s:expr, $sp:expr, $sf:expr, $c:expr, $cp:expr, $cf:expr) => {
        PrintedPairRow {
            superstable: $s,
            superstable_preimage: $sp,
            superstable_floor: $sf,
            critical: $c,
            critical_preimage: $cp,
            critical_floor: $cf,
        }
    };
}

/// The twelve rows of the running example, in printed order. Rows pair a
/// superstable with a critical side by side.
pub const PAIR_TABLE: [PrintedPairRow; 12] = [
    row!(
        ["0", "0", "0"],
        ["0", "0", "0"],
        ["0", "0", "0"],
        ["6", "4", "2"],
        ["2", "0", "2"],
        ["2", "0", "2"]
    ),
    row!(
        ["1", "1", "0"],
        ["0", "1/2", "0"],
        ["0", "0", "0"],
        ["7", "5", "2"],
        ["2", "1/2", "2"],
        ["2", "0", "2"]
    ),
    row!(
        ["4", "3", "2"],
        ["2/3", "1/3", "2"],
        ["0", "0", "2"],
        ["8", "6", "0"],
        ["8/3", "4/3", "0"],
        ["2", "1", "0"]
    ),
    row!(
        ["5", "4", "2"],
        ["2/3", "5/6", "2"],
        ["0", "0", "2"],
        ["9", "7", "0"],
        ["8/3", "11/6", "0"],
        ["2", "1", "0"]
    ),
    row!(
        ["2", "2", "0"],
        ["0", "1", "0"],
        ["0", "1", "0"],
        ["8", "6", "2"],
        ["2", "1", "2"],
        ["2", "1", "2"]
    ),
    row!(
        ["3", "3", "0"],
        ["0", "3/2", "0"],
        ["0", "1", "0"],
        ["9", "7", "2"],
        ["2", "3/2", "2"],
        ["2", "1", "2"]
    ),
    row!(
        ["3", "2", "0"],
        ["4/3", "1/6", "0"],
        ["1", "0", "0"],
        ["6", "4", "1"],
        ["7/3", "1/6", "1"],
        ["2", "0", "1"]
    ),
    row!(
        ["4", "3", "0"],
        ["4/3", "2/3", "0"],
        ["1", "0", "0"],
        ["7", "5", "1"],
        ["7/3", "2/3", "1"],
        ["2", "0", "1"]
    ),
    row!(
        ["5", "4", "0"],
        ["4/3", "7/6", "0"],
        ["1", "1", "0"],
        ["8", "6", "1"],
        ["7/3", "7/6", "1"],
        ["2", "1", "1"]
    ),
    row!(
        ["6", "5", "0"],
        ["4/3", "5/3", "0"],
        ["1", "1", "0"],
        ["9", "7", "1"],
        ["7/3", "5/3", "1"],
        ["2", "1", "1"]
    ),
    row!(
        ["6", "4", "0"],
        ["8/3", "1/3", "0"],
        ["2", "0", "0"],
        ["6", "5", "2"],
        ["2/3", "4/3", "2"],
        ["0", "1", "2"]
    ),
    row!(
        ["7", "5", "0"],
        ["8/3", "5/6", "0"],
        ["2", "0", "0"],
        ["7", "6", "2"],
        ["2/3", "11/6", "2"],
        ["0", "1", "2"]
    ),
];

pub fn parse_vector(entries: &[&str]) -> RatVector {
    Vector(
        entries
            .iter()
            .map(|s| parse_rational(s).expect("fixture rational"))
            .collect(),
    )
}

pub fn parse_int_vector(entries: &[&str]) -> IntVector {
    parse_vector(entries).to_integer().expect("fixture integer")
}

/// Fracket keys of the running example under `ML^{-1}` (side L).
pub const RUN3_L_KEYS: [[&str; 3]; 6] = [
    ["0", "0", "0"],
    ["1/3", "1/6", "0"],
    ["2/3", "1/3", "0"],
    ["0", "1/2", "0"],
    ["1/3", "2/3", "0"],
    ["2/3", "5/6", "0"],
];

/// Fracket keys of the running example under `LM^{-1}` (side M).
pub const RUN3_M_KEYS: [[&str; 3]; 4] = [
    ["0", "0", "0"],
    ["0", "1/4", "0"],
    ["0", "1/2", "0"],
    ["0", "3/4", "0"],
];

/// Printed zero fracket of side L, as class representatives.
pub const RUN3_PRINTED_ZERO_FRACKET_L: [[i64; 3]; 2] = [[0, 0, 0], [3, 3, 3]];

/// `|L| ML^{-1}` for the running example as printed; entry (3,3) reads 2.
pub const RUN3_PRINTED_SCALED_ML_INV: [[i64; 3]; 3] = [[16, -16, -4], [-10, 16, -2], [0, 0, 2]];

/// Printed invariant factors of the critical groups of signed `K_6`.
pub const K6_GROUPS: [[i64; 4]; 7] = [
    [6, 6, 6, 6],
    [2, 2, 12, 36],
    [2, 2, 6, 78],
    [2, 2, 10, 50],
    [2, 2, 8, 64],
    [2, 2, 4, 132],
    [4, 4, 4, 36],
];

/// Printed critical configurations of the signed `C_6` example.
pub const C6_CRITICALS: [[i64; 5]; 6] = [
    [9, 15, 17, 15, 9],
    [12, 20, 23, 21, 13],
    [13, 21, 23, 20, 12],
    [7, 11, 12, 11, 7],
    [10, 16, 18, 17, 11],
    [11, 17, 18, 16, 10],
];

/// Sign pattern on the non-sink edges of `C_6` (sink 5) found by
/// [`search_c6_pattern`]: every edge off the sink is negative.
pub const C6_PATTERN: u64 = 0b1111;

pub fn c6_graph() -> SignedGraph {
    family(Kind::Cycle, 6, C6_PATTERN).expect("valid fixture")
}

pub fn c6() -> ChipFiringPair {
    c6_graph().reduced_laplacians().expect("valid fixture")
}

pub fn sorted_rows<const N: usize>(rows: &[[i64; N]]) -> Vec<IntVector> {
    let mut v: Vec<IntVector> = rows.iter().map(|r| ivec(r)).collect();
    v.sort();
    v
}

/// Critical `S+` configurations of a pair, sorted.
pub fn critical_configs(p: &ChipFiringPair) -> Result<Vec<IntVector>> {
    Ok(p.enumerate_criticals()?
        .into_iter()
        .map(|r| r.config)
        .collect())
}

/// Patterns of signed `C_6` whose critical set equals the printed one.
pub fn search_c6_patterns() -> Result<Vec<u64>> {
    let want = sorted_rows(&C6_CRITICALS);
    let mut hits = Vec::new();
    for item in sweep(Kind::Cycle, 6, DEFAULT_ENUMERATION_CAP)? {
        if critical_configs(&item.pair)? == want {
            hits.push(item.pattern);
        }
    }
    Ok(hits)
}

/// The unique matching pattern, or an error if the search is ambiguous or empty.
pub fn search_c6_pattern() -> Result<u64> {
    match search_c6_patterns()?.as_slice() {
        [p] => Ok(*p),
        hits => Err(Error::Verification(format!(
            "expected one matching C_6 pattern, found {hits:?}"
        ))),
    }
}

/// Whether the critical set of `p` has a coordinatewise maximum.
pub fn has_coordinatewise_max(p: &ChipFiringPair) -> Result<bool> {
    Ok(coordinatewise_max(&critical_configs(p)?).is_some())
}
