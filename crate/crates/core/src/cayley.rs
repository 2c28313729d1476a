//! Mixed Cayley graphs `Cay(G, S)` and their exact spectra.
//!
//! Vertex `u` is joined to `v` when `v - u` lies in `S`. Differences in the
//! symmetric part of `S` give undirected edges; differences in the skew part
//! give arcs. The Hermitian matrix of the second kind puts `1` on edges,
//! `w_6` on forward arcs and `w_6^5` on backward arcs. Both this matrix and
//! the 0/1 adjacency matrix are diagonalized by the group characters, so
//! every eigenvalue is a character sum over `S`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cyclotomic::CycloNum;
use crate::error::{invalid, Error, Result};
use crate::group::{ElementSet, GroupElement, GroupSpec};
use crate::jacobi;
use crate::scalar::ExactScalar;

/// Connection set `S` split into its symmetric part (`s` and `-s` both in
/// `S`) and its skew part (`-s` not in `S`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    group: GroupSpec,
    members: ElementSet,
    sym_part: ElementSet,
    skew_part: ElementSet,
}

impl ConnectionSet {
    pub fn new(group: &GroupSpec, members: ElementSet) -> Result<Self> {
        if let Some(bad) = members.iter().find(|x| !group.contains(x)) {
            return Err(invalid(format!("{bad} is not an element of {group}")));
        }
        if members.iter().any(GroupElement::is_zero) {
            return Err(invalid("connection set must not contain the identity"));
        }
        let (sym_part, skew_part) = members
            .iter()
            .cloned()
            .partition(|s| members.contains(&group.neg(s)));
        Ok(ConnectionSet {
            group: group.clone(),
            members,
            sym_part,
            skew_part,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn sym_part(&self) -> &ElementSet {
        &self.sym_part
    }

    pub fn skew_part(&self) -> &ElementSet {
        &self.skew_part
    }

    pub fn is_oriented(&self) -> bool {
        self.sym_part.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.skew_part.is_empty()
    }

    /// Connection set made of the symmetric part alone.
    pub fn sym_subgraph(&self) -> ConnectionSet {
        ConnectionSet {
            group: self.group.clone(),
            members: self.sym_part.clone(),
            sym_part: self.sym_part.clone(),
            skew_part: ElementSet::new(),
        }
    }

    /// Connection set made of the skew part alone.
    pub fn skew_subgraph(&self) -> ConnectionSet {
        ConnectionSet {
            group: self.group.clone(),
            members: self.skew_part.clone(),
            sym_part: ElementSet::new(),
            skew_part: self.skew_part.clone(),
        }
    }

    /// Comma-separated listing accepted back by the set parser, e.g.
    /// `(0,1),(2,0)` or `1,5`.
    pub fn to_spec_string(&self) -> String {
        format_set(&self.members)
    }
}

pub fn format_set(set: &ElementSet) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Entry of the Hermitian matrix of the second kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermitianEntry {
    Zero,
    One,
    /// `w_6 = (1 + i sqrt 3) / 2`
    W6,
    /// `w_6^5 = (1 - i sqrt 3) / 2`
    W6Pow5,
}

impl HermitianEntry {
    pub fn conj(self) -> Self {
        match self {
            HermitianEntry::W6 => HermitianEntry::W6Pow5,
            HermitianEntry::W6Pow5 => HermitianEntry::W6,
            other => other,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            HermitianEntry::Zero => "0",
            HermitianEntry::One => "1",
            HermitianEntry::W6 => "w6",
            HermitianEntry::W6Pow5 => "w6^5",
        }
    }

    pub fn to_complex(self) -> (f64, f64) {
        let h = 3f64.sqrt() / 2.0;
        match self {
            HermitianEntry::Zero => (0.0, 0.0),
            HermitianEntry::One => (1.0, 0.0),
            HermitianEntry::W6 => (0.5, h),
            HermitianEntry::W6Pow5 => (0.5, -h),
        }
    }
}

/// Dense matrices indexed by the lexicographic element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedGraphMatrices {
    pub n: usize,
    pub adjacency: Vec<Vec<u8>>,
    pub hermitian2: Vec<Vec<HermitianEntry>>,
}

impl MixedGraphMatrices {
    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.hermitian2[u][v] == self.hermitian2[v][u].conj()))
    }

    /// `{"adjacency": [["0","1",..],..], "hermitian2": [["0","w6",..],..]}`
    pub fn to_json(&self) -> serde_json::Value {
        let adjacency: Vec<Vec<&str>> = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&a| if a == 1 { "1" } else { "0" }).collect())
            .collect();
        let hermitian2: Vec<Vec<&str>> = self
            .hermitian2
            .iter()
            .map(|row| row.iter().map(|h| h.code()).collect())
            .collect();
        serde_json::json!({ "adjacency": adjacency, "hermitian2": hermitian2 })
    }
}

pub fn build_matrices(cs: &ConnectionSet) -> MixedGraphMatrices {
    let g = cs.group();
    let elems: Vec<GroupElement> = g.elements().collect();
    let n = elems.len();
    let mut adjacency = vec![vec![0u8; n]; n];
    let mut hermitian2 = vec![vec![HermitianEntry::Zero; n]; n];
    for (u, x) in elems.iter().enumerate() {
        for (v, y) in elems.iter().enumerate() {
            let forward = cs.members().contains(&g.sub(y, x));
            let backward = cs.members().contains(&g.sub(x, y));
            adjacency[u][v] = forward as u8;
            hermitian2[u][v] = match (forward, backward) {
                (true, true) => HermitianEntry::One,
                (true, false) => HermitianEntry::W6,
                (false, true) => HermitianEntry::W6Pow5,
                (false, false) => HermitianEntry::Zero,
            };
        }
    }
    MixedGraphMatrices {
        n,
        adjacency,
        hermitian2,
    }
}

/// Graphviz rendering: undirected edges (`dir=none`) for the symmetric part,
/// arcs for the skew part, vertices labelled by coordinates.
pub fn to_dot(cs: &ConnectionSet) -> String {
    let g = cs.group();
    let elems: Vec<GroupElement> = g.elements().collect();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"Cay({g})\" {{");
    for (i, x) in elems.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{x}\"];");
    }
    for (u, x) in elems.iter().enumerate() {
        for s in cs.sym_part() {
            let v = g.index_of(&g.add(x, s));
            if u < v {
                let _ = writeln!(out, "  v{u} -> v{v} [dir=none];");
            }
        }
        for s in cs.skew_part() {
            let v = g.index_of(&g.add(x, s));
            let _ = writeln!(out, "  v{u} -> v{v};");
        }
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Exact spectra
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    /// Hermitian matrix of the second kind: `gamma = lambda + mu`.
    Hs,
    /// 0/1 adjacency matrix: `sum_{s in S} psi(s)`.
    Adjacency,
    /// Undirected part alone: `lambda`.
    SimplePart,
    /// Oriented part alone (Hermitian): `mu`.
    SkewPart,
}

impl SpectrumKind {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumKind::Hs => "hs",
            SpectrumKind::Adjacency => "adjacency",
            SpectrumKind::SimplePart => "simple_part",
            SpectrumKind::SkewPart => "skew_part",
        }
    }
}

/// Eigenvalue indexed by character `alpha`, in lexicographic order of `alpha`.
#[derive(Clone, Debug)]
pub struct ExactSpectrum<T> {
    pub kind: SpectrumKind,
    pub entries: BTreeMap<GroupElement, CycloNum<T>>,
}

impl<T: ExactScalar> ExactSpectrum<T> {
    pub fn values(&self) -> impl Iterator<Item = &CycloNum<T>> {
        self.entries.values()
    }

    pub fn all_integers(&self) -> bool {
        self.values().all(|v| v.as_integer().is_some())
    }

    pub fn all_eisenstein(&self) -> bool {
        self.values().all(|v| v.as_eisenstein().is_some())
    }

    /// Integer eigenvalues in `alpha` order, if every eigenvalue is one.
    pub fn integer_values(&self) -> Option<Vec<i64>> {
        self.values().map(CycloNum::as_integer).collect()
    }

    /// Real parts of the numerical values, ascending.
    pub fn sorted_real_approx(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.values().map(|z| z.to_complex().re).collect();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        v
    }

    pub fn trace(&self) -> CycloNum<T> {
        let order = self.values().next().map_or(1, CycloNum::order);
        self.values().fold(CycloNum::zero(order), |acc, v| &acc + v)
    }
}

/// Adds `w_N^e` with multiplicity `mult` into an exponent histogram.
fn bump(counts: &mut [i64], e: u64, mult: i64) {
    let n = counts.len() as u64;
    counts[(e % n) as usize] += mult;
}

/// `sum_{s in sym} psi_alpha(s)` accumulated into `counts`.
fn add_simple_terms(g: &GroupSpec, sym: &ElementSet, alpha: &GroupElement, counts: &mut [i64]) {
    for s in sym {
        bump(counts, g.character_exponent(alpha, s), 1);
    }
}

/// `sum_{s in skew} (w_6 psi_alpha(s) + w_6^5 psi_alpha(-s))` into `counts`.
fn add_skew_terms(g: &GroupSpec, skew: &ElementSet, alpha: &GroupElement, counts: &mut [i64]) {
    let n = g.root_order();
    let sixth = n / 6;
    for s in skew {
        let e = g.character_exponent(alpha, s);
        bump(counts, e + sixth, 1);
        bump(counts, (n - e) + 5 * sixth, 1);
    }
}

fn eigenvalue<T: ExactScalar>(
    cs: &ConnectionSet,
    alpha: &GroupElement,
    sym: Option<&ElementSet>,
    skew: Option<&ElementSet>,
) -> CycloNum<T> {
    let g = cs.group();
    let mut counts = vec![0i64; g.root_order() as usize];
    if let Some(sym) = sym {
        add_simple_terms(g, sym, alpha, &mut counts);
    }
    if let Some(skew) = skew {
        add_skew_terms(g, skew, alpha, &mut counts);
    }
    CycloNum::from_exponent_counts(g.root_order(), &counts)
}

/// `lambda_alpha = sum_{s in S \ S-bar} psi_alpha(s)`.
pub fn simple_part_eigenvalue<T: ExactScalar>(cs: &ConnectionSet, alpha: &GroupElement) -> CycloNum<T> {
    eigenvalue(cs, alpha, Some(cs.sym_part()), None)
}

/// `mu_alpha = sum_{s in S-bar} (w_6 psi_alpha(s) + w_6^5 psi_alpha(-s))`.
pub fn skew_part_eigenvalue<T: ExactScalar>(cs: &ConnectionSet, alpha: &GroupElement) -> CycloNum<T> {
    eigenvalue(cs, alpha, None, Some(cs.skew_part()))
}

/// `gamma_alpha = lambda_alpha + mu_alpha`, eigenvalue of the Hermitian
/// matrix of the second kind.
pub fn hs_eigenvalue<T: ExactScalar>(cs: &ConnectionSet, alpha: &GroupElement) -> CycloNum<T> {
    eigenvalue(cs, alpha, Some(cs.sym_part()), Some(cs.skew_part()))
}

/// `sum_{s in S} psi_alpha(s)`, eigenvalue of the 0/1 adjacency matrix.
pub fn a_eigenvalue<T: ExactScalar>(cs: &ConnectionSet, alpha: &GroupElement) -> CycloNum<T> {
    eigenvalue(cs, alpha, Some(cs.members()), None)
}

pub fn eigenvalue_of_kind<T: ExactScalar>(
    cs: &ConnectionSet,
    kind: SpectrumKind,
    alpha: &GroupElement,
) -> CycloNum<T> {
    match kind {
        SpectrumKind::Hs => hs_eigenvalue(cs, alpha),
        SpectrumKind::Adjacency => a_eigenvalue(cs, alpha),
        SpectrumKind::SimplePart => simple_part_eigenvalue(cs, alpha),
        SpectrumKind::SkewPart => skew_part_eigenvalue(cs, alpha),
    }
}

/// Full spectrum, one character sum per `alpha`; sums are evaluated in
/// parallel and collected in `alpha` order.
pub fn exact_spectrum<T: ExactScalar>(cs: &ConnectionSet, kind: SpectrumKind) -> ExactSpectrum<T> {
    let g = cs.group();
    let values: Vec<(GroupElement, CycloNum<T>)> = (0..g.order() as usize)
        .into_par_iter()
        .map(|i| {
            let alpha = g.element_at(i);
            let v = eigenvalue_of_kind(cs, kind, &alpha).reduce();
            (alpha, v)
        })
        .collect();
    ExactSpectrum {
        kind,
        entries: values.into_iter().collect(),
    }
}

/// Sequential variant of [`exact_spectrum`], for callers already running
/// inside a parallel sweep.
pub fn exact_spectrum_seq<T: ExactScalar>(cs: &ConnectionSet, kind: SpectrumKind) -> ExactSpectrum<T> {
    let g = cs.group();
    ExactSpectrum {
        kind,
        entries: g
            .elements()
            .map(|alpha| {
                let v = eigenvalue_of_kind(cs, kind, &alpha).reduce();
                (alpha, v)
            })
            .collect(),
    }
}

/// Largest vertex count the numeric oracle accepts.
pub const NUMERIC_ORACLE_MAX_N: usize = 128;

/// Eigenvalues of the Hermitian matrix of the second kind computed in
/// floating point by Jacobi rotations, ascending.
pub fn numeric_hermitian_eigenvalues(m: &MixedGraphMatrices) -> Result<Vec<f64>> {
    if m.n > NUMERIC_ORACLE_MAX_N {
        return Err(invalid(format!(
            "numeric oracle limited to {NUMERIC_ORACLE_MAX_N} vertices, got {}",
            m.n
        )));
    }
    let mut re = vec![0.0; m.n * m.n];
    let mut im = vec![0.0; m.n * m.n];
    for u in 0..m.n {
        for v in 0..m.n {
            let (r, i) = m.hermitian2[u][v].to_complex();
            re[u * m.n + v] = r;
            im[u * m.n + v] = i;
        }
    }
    jacobi::hermitian_eigenvalues(&re, &im, m.n, 1e-12, 1e-9)
}

/// Largest elementwise gap between the sorted numeric eigenvalues and the
/// sorted numerical values of the exact HS spectrum.
pub fn oracle_discrepancy<T: ExactScalar>(cs: &ConnectionSet) -> Result<f64> {
    let numeric = numeric_hermitian_eigenvalues(&build_matrices(cs))?;
    let exact = exact_spectrum::<T>(cs, SpectrumKind::Hs).sorted_real_approx();
    if numeric.len() != exact.len() {
        return Err(Error::Oracle(format!(
            "numeric oracle returned {} eigenvalues, expected {}",
            numeric.len(),
            exact.len()
        )));
    }
    Ok(numeric
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
