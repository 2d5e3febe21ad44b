//! Exhaustive, exact classification of small tables.
//!
//! Every engine produces candidate eigenmatrices, checks them with the
//! `tables` suite, and keeps the canonically distinct passes.

mod catalog;
mod degrees;
mod integral;
mod linear;
mod small;

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::exactnum::{Int, Quad};
use crate::tables::{
    canonical_form, degrees_multiplicities, full_suite, DegreeVector, ExactMatrix,
    VerificationReport,
};

pub use catalog::{catalog, catalog_match, separate_rank5_table, CatalogEntry, Listing};
pub use degrees::{enumerate_degree_vectors, unit_fraction_partitions};
pub use integral::{integral_nonexistence, parity_cases, ParityCase};
pub use linear::{
    classify_rank4_linear, classify_rank5_linear, classify_with_degree_one, mutual_divisor_pairs,
    non_real_row_configurations, square_order_filter, NonRealRowConfig,
};
pub use small::{classify_rank2, classify_rank3_asymmetric, classify_rank3_symmetric};

/// How far a search reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchBound {
    Exhaustive,
    UpTo(u64),
}

impl fmt::Display for SearchBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchBound::Exhaustive => f.write_str("exhaustive"),
            SearchBound::UpTo(n) => write!(f, "exhaustive up to {n}"),
        }
    }
}

/// A table that passed every check, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor<T: Int> {
    pub table: ExactMatrix<T>,
    pub degrees: DegreeVector<T>,
    pub report: VerificationReport,
    /// Name of the matching catalog entry, with its listing.
    pub tag: Option<String>,
}

/// A candidate that was ruled out, with the check that ruled it out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection<T: Int> {
    pub candidate: String,
    pub rule: String,
    pub witness: String,
    /// The rejected table, when one was built; re-checkable with `tables`.
    pub table: Option<ExactMatrix<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult<T: Int> {
    pub rank: usize,
    pub hypotheses: Vec<String>,
    pub survivors: Vec<Survivor<T>>,
    pub rejected: Vec<Rejection<T>>,
    pub search_bound: SearchBound,
    /// Branches the engine could not settle; a complete run has none.
    pub unresolved: Vec<String>,
    pub notes: Vec<String>,
}

impl<T: Int> ClassificationResult<T> {
    pub fn survivor_tables(&self) -> Vec<&ExactMatrix<T>> {
        self.survivors.iter().map(|s| &s.table).collect()
    }

    /// Rejections whose candidate description contains `needle`.
    pub fn rejections_matching<'a>(
        &'a self,
        needle: &'a str,
    ) -> impl Iterator<Item = &'a Rejection<T>> {
        self.rejected
            .iter()
            .filter(move |r| r.candidate.contains(needle))
    }

    /// Human-readable summary; `explain` adds every rejection.
    pub fn summary(&self, explain: bool) -> String {
        let mut out = format!(
            "rank {}: {} survivor(s), {} rejected, search {}\n",
            self.rank,
            self.survivors.len(),
            self.rejected.len(),
            self.search_bound
        );
        if !self.hypotheses.is_empty() {
            out.push_str(&format!("hypotheses: {}\n", self.hypotheses.join("; ")));
        }
        for (i, s) in self.survivors.iter().enumerate() {
            let tag = s.tag.as_deref().unwrap_or("no catalog match");
            out.push_str(&format!(
                "survivor {}: {} {} [{}]\n",
                i + 1,
                s.degrees,
                s.table.compact(),
                tag
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        for u in &self.unresolved {
            out.push_str(&format!("unresolved: {u}\n"));
        }
        if explain {
            for r in &self.rejected {
                out.push_str(&format!(
                    "rejected: {} -- {}: {}\n",
                    r.candidate, r.rule, r.witness
                ));
            }
        }
        out
    }
}

/// Accumulates candidates for one engine run.
#[derive(Debug)]
pub(crate) struct Collector<T: Int> {
    survivors: Vec<Survivor<T>>,
    seen: HashSet<ExactMatrix<T>>,
    rejected: Vec<Rejection<T>>,
    unresolved: Vec<String>,
    notes: Vec<String>,
}

impl<T: Int> Default for Collector<T> {
    fn default() -> Self {
        Collector {
            survivors: Vec::new(),
            seen: HashSet::new(),
            rejected: Vec::new(),
            unresolved: Vec::new(),
            notes: Vec::new(),
        }
    }
}

impl<T: Int> Collector<T> {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn reject(
        &mut self,
        candidate: impl Into<String>,
        rule: &str,
        witness: impl Into<String>,
    ) {
        self.rejected.push(Rejection {
            candidate: candidate.into(),
            rule: rule.into(),
            witness: witness.into(),
            table: None,
        });
    }

    pub(crate) fn reject_table(
        &mut self,
        candidate: String,
        rule: &str,
        witness: String,
        p: ExactMatrix<T>,
    ) {
        self.rejected.push(Rejection {
            candidate,
            rule: rule.into(),
            witness,
            table: Some(p),
        });
    }

    pub(crate) fn unresolved(&mut self, what: String) {
        self.unresolved.push(what);
    }

    pub(crate) fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    /// Runs the degree/multiplicity checks, then the full suite.
    pub(crate) fn consider(&mut self, candidate: String, p: ExactMatrix<T>) {
        let early = degrees_multiplicities(&p);
        if let Some(c) = early.first_failure() {
            let (rule, witness) = (c.name.clone(), c.witness.clone());
            self.reject_table(candidate, &rule, witness, p);
            return;
        }
        let report = full_suite(&p);
        if let Some(c) = report.first_failure() {
            let (rule, witness) = (c.name.clone(), c.witness.clone());
            self.reject_table(candidate, &rule, witness, p);
            return;
        }
        let canon = canonical_form(&p);
        if !self.seen.insert(canon.clone()) {
            return;
        }
        let degrees = DegreeVector::new(canon.degrees().expect("suite checked degrees"))
            .expect("suite checked degrees");
        let report = full_suite(&canon);
        self.survivors.push(Survivor {
            table: canon,
            degrees,
            report,
            tag: None,
        });
    }

    pub(crate) fn merge(&mut self, other: Collector<T>) {
        for s in other.survivors {
            if self.seen.insert(s.table.clone()) {
                self.survivors.push(s);
            }
        }
        self.rejected.extend(other.rejected);
        self.unresolved.extend(other.unresolved);
        self.notes.extend(other.notes);
    }

    pub(crate) fn finish(
        mut self,
        rank: usize,
        hypotheses: &[&str],
        search_bound: SearchBound,
    ) -> ClassificationResult<T> {
        self.survivors.sort_by_key(|a| sort_key(&a.table));
        let entries = catalog::<T>();
        for s in &mut self.survivors {
            s.tag = catalog_match(&entries, &s.table).map(|e| e.tag());
        }
        ClassificationResult {
            rank,
            hypotheses: hypotheses.iter().map(|h| h.to_string()).collect(),
            survivors: self.survivors,
            rejected: self.rejected,
            search_bound,
            unresolved: self.unresolved,
            notes: self.notes,
        }
    }
}

fn sort_key<T: Int>(m: &ExactMatrix<T>) -> (Option<T>, Vec<Vec<Quad<T>>>) {
    (m.disc().cloned(), m.entries().to_vec())
}

/// `sqrt(q)` for any rational `q`; imaginary when `q < 0`.
pub(crate) fn root_of<T: Int>(q: &Ratio<T>) -> Quad<T> {
    if q.is_zero() {
        return Quad::zero();
    }
    let nd = q.numer().clone() * q.denom().clone();
    Quad::new(Ratio::zero(), Ratio::new(T::one(), q.denom().clone()), nd)
}

/// Field shared by a list of entries, if any entry is irrational.
pub(crate) fn common_disc<'a, T: Int>(xs: impl IntoIterator<Item = &'a Quad<T>>) -> Option<T> {
    xs.into_iter().find_map(|x| x.disc().cloned())
}

pub(crate) fn int<T: Int>(n: i64) -> Ratio<T> {
    Ratio::from_integer(T::from_i64(n).unwrap())
}

pub(crate) fn is_square_u64(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

#[cfg(test)]
mod tests;
