//! Frequency selection: candidate pairs, spectral dispersion, the greedy
//! partition-matroid maximizer and an exhaustive reference solver.
//!
//! Each interior Laplacian eigenvector `v_k` contributes the pair
//! `{DV(v_k), DV(−v_k)}` and exactly one member of every pair is selected.
//! The objective is the dispersion `δ(S) = Σ (s_{i+1} − s_i)²` of the sorted
//! selection padded with `0` and `f̃_max`. Greedy maximizes the submodular
//! complement `δ̃(S) = f̃_max² − δ(S)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::eigen::EigenBasis;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::matrix::Matrix;
use crate::variation::{clearly_greater, signed_dv, FmaxEstimate, Sign, SignedIndex};

/// Default limit on pairs for exhaustive enumeration (2^20 sign vectors).
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Slack allowed when checking that a frequency lies in `[0, f_max]`.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidatePair {
    pub eig_index: usize,
    pub f_pos: f64,
    pub f_neg: f64,
}

impl CandidatePair {
    pub fn value(&self, sign: Sign) -> f64 {
        match sign {
            Sign::Pos => self.f_pos,
            Sign::Neg => self.f_neg,
        }
    }
}

/// One member chosen from every candidate pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub choices: BTreeMap<usize, Sign>,
    /// Chosen frequency values, ascending.
    pub frequencies: Vec<f64>,
    pub dispersion: f64,
    pub dispersion_complement: f64,
}

impl Selection {
    fn new(pairs: &[CandidatePair], signs: &[Sign], fmax: f64) -> Self {
        let choices: BTreeMap<usize, Sign> = pairs
            .iter()
            .zip(signs)
            .map(|(p, &s)| (p.eig_index, s))
            .collect();
        let mut frequencies: Vec<f64> = pairs.iter().zip(signs).map(|(p, &s)| p.value(s)).collect();
        frequencies.sort_by(f64::total_cmp);
        let dispersion = sorted_dispersion(&clamped(&frequencies, fmax), fmax);
        Self {
            choices,
            frequencies,
            dispersion,
            dispersion_complement: (fmax * fmax - dispersion).max(0.0),
        }
    }

    /// True iff exactly one member of every pair is chosen and nothing else.
    pub fn is_matroid_basis(&self, pairs: &[CandidatePair]) -> bool {
        self.choices.len() == pairs.len()
            && self.frequencies.len() == pairs.len()
            && pairs
                .iter()
                .all(|p| self.choices.contains_key(&p.eig_index))
    }
}

/// Candidate pairs for every non-constant eigenvector except the one pinned
/// as the top frequency component, ordered by eigenvector index.
pub fn build_candidates(
    g: &Digraph,
    basis: &EigenBasis,
    fmax: &FmaxEstimate,
) -> Vec<CandidatePair> {
    (1..basis.len())
        .filter(|&k| k != fmax.achiever.eig_index)
        .map(|k| CandidatePair {
            eig_index: k,
            f_pos: signed_dv(g, basis, SignedIndex::new(k, Sign::Pos)),
            f_neg: signed_dv(g, basis, SignedIndex::new(k, Sign::Neg)),
        })
        .collect()
}

/// Dispersion of a multiset of frequencies inside `[0, fmax]`.
pub fn dispersion(values: &[f64], fmax: f64) -> Result<f64> {
    let tol = RANGE_SLACK * fmax.abs().max(1.0);
    if let Some(&value) = values.iter().find(|&&v| !(v >= -tol && v <= fmax + tol)) {
        return Err(Error::ValueOutOfRange { value, fmax });
    }
    let mut sorted = clamped(values, fmax);
    sorted.sort_by(f64::total_cmp);
    Ok(sorted_dispersion(&sorted, fmax))
}

/// `fmax² − dispersion(values, fmax)`.
pub fn dispersion_complement(values: &[f64], fmax: f64) -> Result<f64> {
    Ok(fmax * fmax - dispersion(values, fmax)?)
}

/// Frequencies above `fmax` cannot spread the spectrum any further than the
/// top component itself, so the objective sees them at `fmax`.
fn clamped(values: &[f64], fmax: f64) -> Vec<f64> {
    values.iter().map(|v| v.clamp(0.0, fmax.max(0.0))).collect()
}

fn sorted_dispersion(sorted: &[f64], fmax: f64) -> f64 {
    let mut prev = 0.0;
    let mut sum = 0.0;
    for &s in sorted.iter().chain(std::iter::once(&fmax)) {
        sum += (s - prev) * (s - prev);
        prev = s;
    }
    sum
}

/// Greedy partition-matroid maximization of `δ̃`.
///
/// Each round adds the remaining candidate with the largest marginal gain,
/// then drops its pair. Gains within rounding noise of each other are ties;
/// those go to the lower eigenvector index, then to the positive sign.
pub fn greedy_select(pairs: &[CandidatePair], fmax: f64) -> Selection {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| pairs[i].eig_index);

    let mut chosen: Vec<Option<Sign>> = vec![None; pairs.len()];
    let mut selected: Vec<f64> = Vec::with_capacity(pairs.len());

    for _ in 0..pairs.len() {
        let mut best: Option<(f64, usize, Sign)> = None;
        for &i in order.iter().filter(|&&i| chosen[i].is_none()) {
            for sign in [Sign::Pos, Sign::Neg] {
                let e = pairs[i].value(sign).clamp(0.0, fmax.max(0.0));
                let gain = marginal_gain(&selected, e, fmax);
                if best.is_none_or(|(b, _, _)| clearly_greater(gain, b)) {
                    best = Some((gain, i, sign));
                }
            }
        }
        let (_, i, sign) = best.expect("loop runs only while pairs remain");
        chosen[i] = Some(sign);
        let e = pairs[i].value(sign).clamp(0.0, fmax.max(0.0));
        let pos = selected.partition_point(|&s| s <= e);
        selected.insert(pos, e);
    }

    let signs: Vec<Sign> = chosen
        .into_iter()
        .map(|s| s.expect("every pair chosen"))
        .collect();
    Selection::new(pairs, &signs, fmax)
}

/// `δ̃(S ∪ {e}) − δ̃(S) = 2 (R − e)(e − L)` where `L`, `R` are the neighbours
/// of `e` in the padded sorted selection.
fn marginal_gain(sorted: &[f64], e: f64, fmax: f64) -> f64 {
    let pos = sorted.partition_point(|&s| s <= e);
    let left = if pos == 0 { 0.0 } else { sorted[pos - 1] };
    let right = sorted.get(pos).copied().unwrap_or(fmax);
    2.0 * (right - e) * (e - left)
}

/// Exhaustive minimizer of `δ` over all sign vectors, with the default cap.
pub fn oracle_select(pairs: &[CandidatePair], fmax: f64) -> Result<Selection> {
    oracle_select_with_cap(pairs, fmax, DEFAULT_ORACLE_CAP)
}

/// Exhaustive minimizer of `δ`. Ties resolve to the lexicographically
/// smallest sign vector (pairs by ascending index, `+` before `−`).
pub fn oracle_select_with_cap(pairs: &[CandidatePair], fmax: f64, cap: usize) -> Result<Selection> {
    let m = pairs.len();
    if m > cap || m >= 63 {
        return Err(Error::TooLarge { pairs: m, cap });
    }
    let mut ordered = pairs.to_vec();
    ordered.sort_by_key(|p| p.eig_index);

    // bit (m - 1 - i) set means pair i takes the negative sign, so numeric
    // mask order is lexicographic sign-vector order
    let sign_of = |mask: u64, i: usize| {
        if mask >> (m - 1 - i) & 1 == 1 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    };
    let (_, best_mask) = (0..1u64 << m)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(m),
            |buf, mask| {
                buf.clear();
                buf.extend(
                    ordered
                        .iter()
                        .enumerate()
                        .map(|(i, p)| p.value(sign_of(mask, i)).clamp(0.0, fmax.max(0.0))),
                );
                buf.sort_by(f64::total_cmp);
                (sorted_dispersion(buf, fmax), mask)
            },
        )
        .reduce(
            || (f64::INFINITY, u64::MAX),
            |a, b| match a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)) {
                std::cmp::Ordering::Greater => b,
                _ => a,
            },
        );
    let signs: Vec<Sign> = (0..m).map(|i| sign_of(best_mask, i)).collect();
    Ok(Selection::new(&ordered, &signs, fmax))
}

/// Equally spaced target spectrum `f_k = (k − 1)/(n − 1) · fmax`.
pub fn ideal_frequencies(n: usize, fmax: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidCount(n));
    }
    Ok((0..n).map(|k| k as f64 / (n - 1) as f64 * fmax).collect())
}

/// Dispersion after min-max rescaling the values to `[0, 1]`; the extreme
/// values act as the padding endpoints.
pub fn normalized_dispersion(freqs: &[f64]) -> Result<f64> {
    let lo = freqs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = freqs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if freqs.len() < 2 || hi <= lo || hi.is_nan() || lo.is_nan() {
        return Err(Error::DegenerateRange);
    }
    let mut scaled: Vec<f64> = freqs.iter().map(|f| (f - lo) / (hi - lo)).collect();
    scaled.sort_by(f64::total_cmp);
    let interior = &scaled[1..scaled.len() - 1];
    Ok(sorted_dispersion(interior, 1.0))
}

/// Orthonormal DGFT basis: signed Laplacian eigenvectors ordered by
/// directed variation.
#[derive(Debug, Clone, PartialEq)]
pub struct DgftBasis {
    /// Column `k` is the frequency component `u_k`.
    pub u: Matrix,
    pub frequencies: Vec<f64>,
    pub provenance: Vec<SignedIndex>,
    pub fmax: f64,
}

impl DgftBasis {
    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        self.u.column(k)
    }
}

/// Collects the constant eigenvector, the pinned top component and the
/// selected signed eigenvectors, sorted by frequency then eigenvector index.
pub fn assemble_basis(
    g: &Digraph,
    basis: &EigenBasis,
    fmax: &FmaxEstimate,
    sel: &Selection,
) -> Result<DgftBasis> {
    let n = basis.len();
    if g.node_count() != n || basis.eigenvectors.rows() != n {
        return Err(Error::InconsistentInputs(format!(
            "graph has {} nodes but eigenbasis has {n} vectors",
            g.node_count()
        )));
    }
    let mut columns = vec![SignedIndex::new(0, Sign::Pos)];
    if n > 1 {
        if fmax.achiever.eig_index == 0 || fmax.achiever.eig_index >= n {
            return Err(Error::InconsistentInputs(format!(
                "top component index {} invalid",
                fmax.achiever.eig_index
            )));
        }
        columns.push(fmax.achiever);
    }
    columns.extend(sel.choices.iter().map(|(&k, &s)| SignedIndex::new(k, s)));

    let mut seen = vec![false; n];
    for c in &columns {
        if c.eig_index >= n || std::mem::replace(&mut seen[c.eig_index], true) {
            return Err(Error::InconsistentInputs(format!(
                "eigenvector {} missing or used twice",
                c.eig_index
            )));
        }
    }
    if columns.len() != n {
        return Err(Error::InconsistentInputs(format!(
            "selection covers {} of {n} eigenvectors",
            columns.len()
        )));
    }

    let mut cols: Vec<(f64, SignedIndex)> = columns
        .into_iter()
        .map(|c| (signed_dv(g, basis, c), c))
        .collect();
    cols.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.eig_index.cmp(&b.1.eig_index)));

    let vectors: Vec<Vec<f64>> = cols.iter().map(|(_, c)| c.vector(basis)).collect();
    Ok(DgftBasis {
        u: Matrix::from_columns(&vectors),
        frequencies: cols.iter().map(|(f, _)| *f).collect(),
        provenance: cols.iter().map(|(_, c)| *c).collect(),
        fmax: fmax.value,
    })
}
