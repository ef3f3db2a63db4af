//! Axiom checkers for operation tables.
//!
//! A travel groupoid satisfies
//!   (t1) `(u * v) * u == u`,
//!   (t2) `(u * v) * v == u` only for `u == v`;
//! it is simple when (t3) `v * u != u` implies `u * (v * u) == u * v`,
//! and smooth when (t4) `u * v == u * w` implies `u * (w * v) == u * v`.
//! A pair `(u, v)` with `u != v` is confusing when some iterate
//! `u *^i v` with `i >= 3` returns to `u`.
//!
//! Checkers exhaustively scan pairs/triples and report every witness in
//! sorted order; they never reject a table up front.

use serde::Serialize;
use thiserror::Error;

use crate::table::OperationTable;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PreconditionError {
    #[error("operation table is not a travel groupoid (t1/t2 fail)")]
    NotTravel,
    #[error("operation table is not a simple travel groupoid (t1/t2/t3 fail)")]
    NotSimple,
}

/// A confusing pair together with the smallest exponent `i >= 3` at which
/// `u *^i v == u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusingPair {
    pub pair: (usize, usize),
    pub exponent: usize,
}

/// Full axiom scan of a table: per-axiom witness lists plus summary flags.
/// Each flag mirrors the emptiness of its list; `is_simple`, `is_smooth`
/// and `is_non_confusing` carry their usual meaning only when `is_travel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    labels: Vec<String>,
    pub t1_violations: Vec<(usize, usize)>,
    pub t2_violations: Vec<(usize, usize)>,
    pub t3_violations: Vec<(usize, usize)>,
    pub t4_violations: Vec<(usize, usize, usize)>,
    pub confusing_pairs: Vec<ConfusingPair>,
    pub is_travel: bool,
    pub is_simple: bool,
    pub is_smooth: bool,
    pub is_non_confusing: bool,
}

/// Scans every pair and triple of the table and reports all violations.
pub fn axiom_report(t: &OperationTable) -> AxiomReport {
    let n = t.size();
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let x = t.get(u, v);
            if t.get(x, u) != u {
                t1.push((u, v));
            }
            if u != v && t.get(x, v) == u {
                t2.push((u, v));
            }
            let vu = t.get(v, u);
            if vu != u && t.get(u, vu) != x {
                t3.push((u, v));
            }
        }
    }
    let mut t4 = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let uv = t.get(u, v);
            for w in 0..n {
                if t.get(u, w) == uv && t.get(u, t.get(w, v)) != uv {
                    t4.push((u, v, w));
                }
            }
        }
    }
    let mut confusing = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if let Some(exponent) = confusing_exponent(t, u, v) {
                    confusing.push(ConfusingPair { pair: (u, v), exponent });
                }
            }
        }
    }
    let report = AxiomReport {
        labels: t.labels().to_vec(),
        is_travel: t1.is_empty() && t2.is_empty(),
        is_simple: t3.is_empty(),
        is_smooth: t4.is_empty(),
        is_non_confusing: confusing.is_empty(),
        t1_violations: t1,
        t2_violations: t2,
        t3_violations: t3,
        t4_violations: t4,
        confusing_pairs: confusing,
    };
    // Smooth travel groupoids are always non-confusing; a failure here is a
    // checker bug, not bad input.
    assert!(
        !(report.is_travel && report.is_smooth) || report.is_non_confusing,
        "smooth travel table flagged as confusing"
    );
    report
}

/// Smallest `i >= 3` with `u *^i v == u`, if the orbit of `u` under
/// multiplication by `v` returns to `u` before reaching `v`.
fn confusing_exponent(t: &OperationTable, u: usize, v: usize) -> Option<usize> {
    let bound = t.size() * t.size();
    let mut x = u;
    for i in 1..=bound {
        x = t.get(x, v);
        if x == v {
            return None;
        }
        if x == u {
            // First return at i; returns recur at every multiple of i.
            let exponent = match i {
                1 => 3,
                2 => 4,
                _ => i,
            };
            return Some(exponent);
        }
    }
    None
}

/// Fast t1+t2 check with early exit.
pub fn passes_travel_axioms(t: &OperationTable) -> bool {
    let n = t.size();
    for u in 0..n {
        for v in 0..n {
            let x = t.get(u, v);
            if t.get(x, u) != u {
                return false;
            }
            if u != v && t.get(x, v) == u {
                return false;
            }
        }
    }
    true
}

/// Fast t4 check with early exit.
pub fn passes_smoothness(t: &OperationTable) -> bool {
    let n = t.size();
    for u in 0..n {
        for v in 0..n {
            let uv = t.get(u, v);
            for w in 0..n {
                if t.get(u, w) == uv && t.get(u, t.get(w, v)) != uv {
                    return false;
                }
            }
        }
    }
    true
}

/// Fast confusing-pair check with early exit.
pub fn is_non_confusing(t: &OperationTable) -> bool {
    let n = t.size();
    for u in 0..n {
        for v in 0..n {
            if u != v && confusing_exponent(t, u, v).is_some() {
                return false;
            }
        }
    }
    true
}

/// Identities every travel groupoid satisfies as a consequence of t1+t2.
/// A non-empty result on a table that passes t1 and t2 indicates a checker
/// bug, since these follow by theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityViolation {
    /// `u * u != u`
    DiagonalNotFixed { u: usize },
    /// exactly one of `u * v == v`, `v * u == u` holds
    EdgeAsymmetry { u: usize, v: usize },
    /// `u * v == u` although `u != v`
    ReturnsToSource { u: usize, v: usize },
    /// `u * (u * v) != u * v`
    SecondStepMoves { u: usize, v: usize },
}

pub fn check_travel_identities(
    t: &OperationTable,
) -> Result<Vec<IdentityViolation>, PreconditionError> {
    if !passes_travel_axioms(t) {
        return Err(PreconditionError::NotTravel);
    }
    let n = t.size();
    let mut out = Vec::new();
    for u in 0..n {
        if t.get(u, u) != u {
            out.push(IdentityViolation::DiagonalNotFixed { u });
        }
        for v in 0..n {
            if (t.get(u, v) == v) != (t.get(v, u) == u) {
                out.push(IdentityViolation::EdgeAsymmetry { u, v });
            }
            if u != v && t.get(u, v) == u {
                out.push(IdentityViolation::ReturnsToSource { u, v });
            }
            let x = t.get(u, v);
            if t.get(u, x) != x {
                out.push(IdentityViolation::SecondStepMoves { u, v });
            }
        }
    }
    Ok(out)
}

/// A failed instance of the walk-reversal identity on a simple travel
/// groupoid: for the minimal `k` with `x *^k y == y`, the reverse walk must
/// satisfy `y *^j x == x *^{k-j} y` for all `0 <= j <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalViolation {
    pub x: usize,
    pub y: usize,
    pub k: usize,
    pub j: usize,
}

/// Checks the reversal identity over all ordered pairs whose forward walk
/// terminates. Expected empty on every simple travel groupoid.
pub fn check_reversal_identity(
    t: &OperationTable,
) -> Result<Vec<ReversalViolation>, PreconditionError> {
    if !passes_travel_axioms(t) {
        return Err(PreconditionError::NotTravel);
    }
    if !axiom_report(t).t3_violations.is_empty() {
        return Err(PreconditionError::NotSimple);
    }
    let n = t.size();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let walk = t.walk(x, y, n);
            if !walk.terminated {
                continue; // no k exists for this pair
            }
            let k = walk.steps();
            for j in 0..=k {
                if t.iterate(y, x, j) != t.iterate(x, y, k - j) {
                    out.push(ReversalViolation { x, y, k, j });
                }
            }
        }
    }
    Ok(out)
}

/// Smoothness via fibers: a travel groupoid is smooth exactly when every
/// set `{w : u * w = v}` is closed under the operation.
pub fn smooth_via_fibers(t: &OperationTable) -> Result<bool, PreconditionError> {
    if !passes_travel_axioms(t) {
        return Err(PreconditionError::NotTravel);
    }
    let n = t.size();
    for u in 0..n {
        for v in 0..n {
            let fiber = t.fiber(u, v);
            for &w in &fiber {
                for &w2 in &fiber {
                    if t.get(u, t.get(w, w2)) != v {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
pub struct ReportFlags {
    pub is_travel: bool,
    pub is_simple: bool,
    pub is_smooth: bool,
    pub is_non_confusing: bool,
}

#[derive(Serialize)]
pub struct ReportViolations {
    pub t1: Vec<[String; 2]>,
    pub t2: Vec<[String; 2]>,
    pub t3: Vec<[String; 2]>,
    pub t4: Vec<[String; 3]>,
}

#[derive(Serialize)]
pub struct ConfusingWitness {
    pub pair: [String; 2],
    pub exponent: usize,
}

#[derive(Serialize)]
pub struct ReportWitnesses {
    pub confusing_pairs: Vec<ConfusingWitness>,
}

/// Serializable view of an [`AxiomReport`] with vertex labels spelled out.
#[derive(Serialize)]
pub struct ReportView {
    pub flags: ReportFlags,
    pub violations: ReportViolations,
    pub witnesses: ReportWitnesses,
}

impl AxiomReport {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn pair(&self, p: &(usize, usize)) -> [String; 2] {
        [self.labels[p.0].clone(), self.labels[p.1].clone()]
    }

    pub fn view(&self) -> ReportView {
        ReportView {
            flags: ReportFlags {
                is_travel: self.is_travel,
                is_simple: self.is_simple,
                is_smooth: self.is_smooth,
                is_non_confusing: self.is_non_confusing,
            },
            violations: ReportViolations {
                t1: self.t1_violations.iter().map(|p| self.pair(p)).collect(),
                t2: self.t2_violations.iter().map(|p| self.pair(p)).collect(),
                t3: self.t3_violations.iter().map(|p| self.pair(p)).collect(),
                t4: self
                    .t4_violations
                    .iter()
                    .map(|&(u, v, w)| {
                        [
                            self.labels[u].clone(),
                            self.labels[v].clone(),
                            self.labels[w].clone(),
                        ]
                    })
                    .collect(),
            },
            witnesses: ReportWitnesses {
                confusing_pairs: self
                    .confusing_pairs
                    .iter()
                    .map(|c| ConfusingWitness {
                        pair: self.pair(&c.pair),
                        exponent: c.exponent,
                    })
                    .collect(),
            },
        }
    }

    /// Plain-text rendering, one section per axiom, deterministic order.
    pub fn render_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        out.push_str(&format!("travel: {}\n", yn(self.is_travel)));
        out.push_str(&format!("simple: {}\n", yn(self.is_simple)));
        out.push_str(&format!("smooth: {}\n", yn(self.is_smooth)));
        out.push_str(&format!("non_confusing: {}\n", yn(self.is_non_confusing)));
        let fmt_pairs = |name: &str, list: &[(usize, usize)], out: &mut String| {
            out.push_str(&format!("{name} violations: {}\n", list.len()));
            for (u, v) in list {
                out.push_str(&format!("  ({}, {})\n", self.labels[*u], self.labels[*v]));
            }
        };
        fmt_pairs("t1", &self.t1_violations, &mut out);
        fmt_pairs("t2", &self.t2_violations, &mut out);
        fmt_pairs("t3", &self.t3_violations, &mut out);
        out.push_str(&format!("t4 violations: {}\n", self.t4_violations.len()));
        for (u, v, w) in &self.t4_violations {
            out.push_str(&format!(
                "  ({}, {}, {})\n",
                self.labels[*u], self.labels[*v], self.labels[*w]
            ));
        }
        out.push_str(&format!("confusing pairs: {}\n", self.confusing_pairs.len()));
        for c in &self.confusing_pairs {
            out.push_str(&format!(
                "  ({}, {}) exponent {}\n",
                self.labels[c.pair.0], self.labels[c.pair.1], c.exponent
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID_TABLE: &str = include_str!("../tests/fixtures/grid_table.txt");

    fn grid_table() -> OperationTable {
        OperationTable::parse(GRID_TABLE).unwrap()
    }

    /// Three vertices where `(a_2 * a_5) * a_5 == a_2` breaks t2.
    fn t2_breaker() -> OperationTable {
        OperationTable::parse(concat!(
            "a_2 a_3 a_5\n",
            "a_2 a_3 a_3\n", // a_2 * a_5 = a_3
            "a_2 a_3 a_2\n", // a_3 * a_5 = a_2
            "a_2 a_3 a_5\n",
        ))
        .unwrap()
    }

    #[test]
    fn grid_table_is_travel_smooth_non_confusing() {
        let r = axiom_report(&grid_table());
        assert!(r.is_travel);
        assert!(r.is_smooth);
        assert!(r.is_non_confusing);
        assert!(r.t1_violations.is_empty());
        assert!(r.t2_violations.is_empty());
        assert!(r.t4_violations.is_empty());
    }

    #[test]
    fn t2_violation_is_witnessed() {
        let t = t2_breaker();
        let r = axiom_report(&t);
        assert!(!r.is_travel);
        let a2 = t.index_of("a_2").unwrap();
        let a5 = t.index_of("a_5").unwrap();
        assert!(r.t2_violations.contains(&(a2, a5)));
    }

    #[test]
    fn single_vertex_passes_everything() {
        let t = OperationTable::new(vec!["a".into()], vec![0]).unwrap();
        let r = axiom_report(&t);
        assert!(r.is_travel && r.is_simple && r.is_smooth && r.is_non_confusing);
    }

    #[test]
    fn travel_identities_hold_on_grid_table() {
        assert_eq!(check_travel_identities(&grid_table()).unwrap(), vec![]);
    }

    #[test]
    fn travel_identities_require_travel_table() {
        assert_eq!(
            check_travel_identities(&t2_breaker()).unwrap_err(),
            PreconditionError::NotTravel
        );
        assert_eq!(
            smooth_via_fibers(&t2_breaker()).unwrap_err(),
            PreconditionError::NotTravel
        );
    }

    #[test]
    fn fibers_route_matches_direct_scan_on_grid() {
        assert!(smooth_via_fibers(&grid_table()).unwrap());
    }

    #[test]
    fn reversal_identity_on_path_groupoid() {
        // Unique travel groupoid on the path a - b - c.
        let t = OperationTable::parse("a b c\na b b\na b c\nb b c\n").unwrap();
        let r = axiom_report(&t);
        assert!(r.is_travel && r.is_simple);
        assert_eq!(check_reversal_identity(&t).unwrap(), vec![]);
    }

    #[test]
    fn report_view_serializes_with_fixed_fields() {
        let view = axiom_report(&t2_breaker()).view();
        let json = serde_json::to_value(&view).unwrap();
        assert_eq!(json["flags"]["is_travel"], false);
        assert!(json["violations"]["t2"]
            .as_array()
            .unwrap()
            .contains(&serde_json::json!(["a_2", "a_5"])));
        assert!(json["witnesses"]["confusing_pairs"].is_array());
    }

    #[test]
    fn confusing_exponent_minimum_is_three() {
        // b * a = b: the orbit of b under *a has period 1, so the smallest
        // admissible exponent is 3. Such a table breaks t1/t2 but the
        // detector works on any table.
        let t = OperationTable::new(vec!["a".into(), "b".into()], vec![0, 1, 1, 1]).unwrap();
        let r = axiom_report(&t);
        assert_eq!(
            r.confusing_pairs,
            vec![ConfusingPair { pair: (1, 0), exponent: 3 }]
        );
    }
}
