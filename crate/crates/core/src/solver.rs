//! The decomposition-number engine.
//!
//! [`basic_solve`] splits a known d(q)r(q) + m(q) into its parts, using only
//! that d has positive exponents, m is bar-invariant, and r is nonzero and
//! bar-invariant; the solution is unique, and the splitter is deterministic.
//!
//! [`decomposition_matrix`] runs the induction on the distance between
//! partition pairs: within one distance stratum every pair depends only on
//! strictly closer pairs, so a stratum is evaluated as one data-parallel
//! batch (rayon when the `parallel` feature is on, plain iteration
//! otherwise) and the assembled matrix is identical either way.

use std::fmt;
use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladders::{ladder_weight, r_lambda, ResidueSeq};
use crate::laurent::LaurentPoly;
use crate::partitions::{
    all_partitions, dominates, distance, is_e_restricted, residue_content, Partition, QuantumChar,
};
use crate::tableaux::specht_multiplicity;

/// The two parts recovered by [`basic_solve`]: `d_part` with support in
/// strictly positive exponents, `m_part` bar-invariant, and
/// `d_part * r + m_part` equal to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSolution {
    pub d_part: LaurentPoly,
    pub m_part: LaurentPoly,
}

/// Recover (d, m) from f = d*r + m given r, where d lies in qZ[q], m is
/// bar-invariant, and r is nonzero and bar-invariant.
///
/// Peels the extreme terms of the running remainder: a top term above the
/// mirror of the bottom can only come from d*r; a balanced pair of extreme
/// terms can only come from m. Inputs not of the promised form surface as
/// [`Error::InconsistentInput`].
pub fn basic_solve(f: &LaurentPoly, r: &LaurentPoly) -> Result<BasicSolution> {
    if r.is_zero() || !r.is_bar_invariant() {
        return Err(Error::InconsistentInput(format!(
            "r must be nonzero and bar-invariant, got {r}"
        )));
    }
    let top_r_exp = r.max_exp().unwrap();
    let top_r_coeff = r.coeff(top_r_exp);
    let mut rem = f.clone();
    let mut d_part = LaurentPoly::zero();
    let mut m_part = LaurentPoly::zero();
    while !rem.is_zero() {
        let hi = rem.max_exp().unwrap();
        let lo = rem.min_exp().unwrap();
        if hi < 0 || hi + lo < 0 {
            return Err(Error::InconsistentInput(format!(
                "remainder {rem} has support outside the solvable range"
            )));
        }
        if hi == 0 && lo == 0 {
            // only a constant is left; it belongs to m
            m_part += &rem;
            break;
        }
        if hi + lo > 0 {
            // the top term must come from d*r
            let lead = rem.coeff(hi);
            if !num_traits::Zero::is_zero(&(&lead % &top_r_coeff)) {
                return Err(Error::InconsistentInput(format!(
                    "leading coefficient {lead} not divisible by {top_r_coeff}"
                )));
            }
            let t = LaurentPoly::term(&lead / &top_r_coeff, hi - top_r_exp);
            rem -= &(&t * r);
            d_part += &t;
        } else {
            // balanced extremes: the bottom term (and its mirror) belong to m
            let pair = &LaurentPoly::term(rem.coeff(lo), lo)
                + &LaurentPoly::term(rem.coeff(lo), -lo);
            rem -= &pair;
            m_part += &pair;
        }
    }
    if !d_part.has_positive_exponents() {
        return Err(Error::InconsistentInput(format!(
            "recovered d = {d_part} has non-positive exponents"
        )));
    }
    debug_assert!(m_part.is_bar_invariant());
    debug_assert_eq!(&(&d_part * r) + &m_part, *f);
    Ok(BasicSolution { d_part, m_part })
}

/// The graded decomposition matrix for (e, d) together with the companion
/// table of ladder-weight multiplicities.
///
/// Rows are all partitions of d, columns the e-restricted ones, both in
/// decreasing lexicographic order. `entries[i][c]` is the graded
/// decomposition number for (rows[i], cols[c]); `mtable[c][b]` is the
/// multiplicity of the ladder weight of cols[c] in the irreducible
/// character labelled by cols[b].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompMatrix {
    pub e: QuantumChar,
    pub d: u32,
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<LaurentPoly>>,
    pub mtable: Vec<Vec<LaurentPoly>>,
}

impl DecompMatrix {
    pub fn row_index(&self, mu: &Partition) -> Option<usize> {
        self.rows.iter().position(|p| p == mu)
    }

    pub fn col_index(&self, lam: &Partition) -> Option<usize> {
        self.cols.iter().position(|p| p == lam)
    }

    /// d_{mu,lambda}; `None` when either label is absent.
    pub fn entry(&self, mu: &Partition, lam: &Partition) -> Option<&LaurentPoly> {
        Some(&self.entries[self.row_index(mu)?][self.col_index(lam)?])
    }

    /// Multiplicity of the ladder weight of `lam` in the irreducible
    /// labelled by `nu`; `None` when either label is absent.
    pub fn m_value(&self, lam: &Partition, nu: &Partition) -> Option<&LaurentPoly> {
        Some(&self.mtable[self.col_index(lam)?][self.col_index(nu)?])
    }

    /// Shape coherence of a deserialized matrix.
    pub fn is_coherent(&self) -> bool {
        self.entries.len() == self.rows.len()
            && self.entries.iter().all(|r| r.len() == self.cols.len())
            && self.mtable.len() == self.cols.len()
            && self.mtable.iter().all(|r| r.len() == self.cols.len())
            && self.rows.iter().all(|p| p.size() == self.d)
            && self.cols.iter().all(|p| p.size() == self.d && is_e_restricted(p, self.e))
    }

    fn label(p: &Partition) -> String {
        if p.is_empty() {
            "()".to_string()
        } else {
            format!("({p})")
        }
    }

    fn cell(poly: &LaurentPoly, at_one: bool) -> String {
        if at_one {
            poly.eval_at_one().to_string()
        } else {
            poly.to_string()
        }
    }

    fn text_table(
        out: &mut String,
        row_labels: &[String],
        col_labels: &[String],
        cells: &[Vec<String>],
    ) {
        let mut widths: Vec<usize> = Vec::with_capacity(col_labels.len() + 1);
        widths.push(row_labels.iter().map(String::len).max().unwrap_or(0));
        for (c, label) in col_labels.iter().enumerate() {
            let w = cells.iter().map(|row| row[c].len()).max().unwrap_or(0);
            widths.push(w.max(label.len()));
        }
        let mut line = format!("{:w$}", "", w = widths[0]);
        for (c, label) in col_labels.iter().enumerate() {
            let _ = write!(line, "  {:w$}", label, w = widths[c + 1]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for (r, row_label) in row_labels.iter().enumerate() {
            let mut line = format!("{:w$}", row_label, w = widths[0]);
            for (c, cell) in cells[r].iter().enumerate() {
                let _ = write!(line, "  {:w$}", cell, w = widths[c + 1]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }

    /// Aligned text rendering of the matrix and the companion table.
    pub fn render_text(&self, at_one: bool) -> String {
        let row_labels: Vec<String> = self.rows.iter().map(Self::label).collect();
        let col_labels: Vec<String> = self.cols.iter().map(Self::label).collect();
        let mut out = String::new();
        let _ = writeln!(out, "d[mu,lambda]  (e = {}, d = {})", self.e, self.d);
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| Self::cell(p, at_one)).collect())
            .collect();
        Self::text_table(&mut out, &row_labels, &col_labels, &cells);
        let _ = writeln!(out, "\nm[lambda](D(nu))  (e = {}, d = {})", self.e, self.d);
        let mcells: Vec<Vec<String>> = self
            .mtable
            .iter()
            .map(|row| row.iter().map(|p| Self::cell(p, at_one)).collect())
            .collect();
        Self::text_table(&mut out, &col_labels, &col_labels, &mcells);
        out
    }

    /// CSV rendering of the matrix: one row per mu, entries as Laurent strings.
    pub fn render_csv(&self, at_one: bool) -> String {
        fn field(s: &str) -> String {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::new();
        let header: Vec<String> = std::iter::once("mu".to_string())
            .chain(self.cols.iter().map(|p| field(&p.to_string())))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (i, mu) in self.rows.iter().enumerate() {
            let row: Vec<String> = std::iter::once(field(&mu.to_string()))
                .chain(self.entries[i].iter().map(|p| field(&Self::cell(p, at_one))))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// LaTeX tabulars for the matrix and the companion table.
    pub fn render_latex(&self, at_one: bool) -> String {
        fn tabular(
            out: &mut String,
            row_labels: &[String],
            col_labels: &[String],
            cells: Vec<Vec<String>>,
        ) {
            let _ = writeln!(out, "\\begin{{tabular}}{{l|{}}}", "c".repeat(col_labels.len()));
            let header: Vec<String> = col_labels.iter().map(|l| format!("${l}$")).collect();
            let _ = writeln!(out, " & {} \\\\\\hline", header.join(" & "));
            for (r, label) in row_labels.iter().enumerate() {
                let body: Vec<String> = cells[r].iter().map(|c| format!("${c}$")).collect();
                let _ = writeln!(out, "${}$ & {} \\\\", label, body.join(" & "));
            }
            let _ = writeln!(out, "\\end{{tabular}}");
        }
        let cell = |p: &LaurentPoly| {
            if at_one {
                p.eval_at_one().to_string()
            } else {
                p.latex()
            }
        };
        let row_labels: Vec<String> = self.rows.iter().map(Partition::latex).collect();
        let col_labels: Vec<String> = self.cols.iter().map(Partition::latex).collect();
        let mut out = String::new();
        let _ = writeln!(out, "% graded decomposition matrix, e = {}, d = {}", self.e, self.d);
        tabular(
            &mut out,
            &row_labels,
            &col_labels,
            self.entries.iter().map(|r| r.iter().map(cell).collect()).collect(),
        );
        let _ = writeln!(out, "% ladder weight multiplicities m_\\lambda(D(\\nu))");
        tabular(
            &mut out,
            &col_labels,
            &col_labels,
            self.mtable.iter().map(|r| r.iter().map(cell).collect()).collect(),
        );
        out
    }

    /// Canonical JSON; with `at_one` the entries specialize to integers.
    pub fn render_json(&self, at_one: bool) -> String {
        if !at_one {
            return serde_json::to_string_pretty(self).expect("matrix serializes");
        }
        let int_cells = |table: &Vec<Vec<LaurentPoly>>| -> serde_json::Value {
            serde_json::Value::Array(
                table
                    .iter()
                    .map(|row| {
                        serde_json::Value::Array(
                            row.iter()
                                .map(|p| {
                                    let n: serde_json::Number =
                                        p.eval_at_one().to_string().parse().expect("integer");
                                    serde_json::Value::Number(n)
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let value = serde_json::json!({
            "e": self.e,
            "d": self.d,
            "rows": self.rows,
            "cols": self.cols,
            "entries": int_cells(&self.entries),
            "mtable": int_cells(&self.mtable),
        });
        serde_json::to_string_pretty(&value).expect("matrix serializes")
    }
}

/// How the stratum batches are evaluated and whether lookups are recorded.
#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Evaluate each distance stratum with rayon. Ignored (sequential)
    /// when the crate is built without the `parallel` feature.
    pub parallel: bool,
    /// Record, for every computed pair, which table cells it read.
    pub trace: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            parallel: cfg!(feature = "parallel"),
            trace: false,
        }
    }
}

/// A table read performed while computing one matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    /// Read of the decomposition number for (mu, nu).
    Decomp { mu: Partition, nu: Partition },
    /// Read of the ladder-weight multiplicity of lam in D(nu).
    MValue { lam: Partition, nu: Partition },
}

/// All reads performed while computing the entry for (mu, lam).
#[derive(Clone, Debug)]
pub struct PairTrace {
    pub mu: Partition,
    pub lam: Partition,
    pub lookups: Vec<Lookup>,
}

/// A computed matrix plus the lookup log when tracing was requested.
#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub matrix: DecompMatrix,
    pub trace: Option<Vec<PairTrace>>,
}

struct Universe {
    e: QuantumChar,
    parts: Vec<Partition>,
    /// part index of each column
    col_parts: Vec<usize>,
    /// column index of each part, when restricted
    col_of_part: Vec<Option<usize>>,
    /// dom[i][j]: parts[j] is dominated by parts[i]
    dom: Vec<Vec<bool>>,
    /// same residue content
    sim: Vec<Vec<bool>>,
    jweights: Vec<ResidueSeq>,
    rlams: Vec<LaurentPoly>,
}

impl Universe {
    fn build(d: u32, e: QuantumChar) -> Self {
        let parts = all_partitions(d);
        let n = parts.len();
        let contents: Vec<Vec<u64>> = parts.iter().map(|p| residue_content(p, e)).collect();
        let mut dom = vec![vec![false; n]; n];
        let mut sim = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                dom[i][j] = dominates(&parts[i], &parts[j]).expect("equal sizes");
                sim[i][j] = contents[i] == contents[j];
            }
        }
        let col_parts: Vec<usize> = (0..n).filter(|&i| is_e_restricted(&parts[i], e)).collect();
        let mut col_of_part = vec![None; n];
        for (c, &i) in col_parts.iter().enumerate() {
            col_of_part[i] = Some(c);
        }
        let jweights = col_parts
            .iter()
            .map(|&i| ladder_weight(&parts[i], e).expect("restricted"))
            .collect();
        let rlams = col_parts.iter().map(|&i| r_lambda(&parts[i], e)).collect();
        Universe {
            e,
            parts,
            col_parts,
            col_of_part,
            dom,
            sim,
            jweights,
            rlams,
        }
    }

    fn in_moves(&self, i: usize, j: usize) -> bool {
        self.dom[i][j] && self.sim[i][j]
    }
}

struct PairOut {
    row: usize,
    col: usize,
    d_poly: LaurentPoly,
    m_poly: Option<LaurentPoly>,
    lookups: Option<Vec<Lookup>>,
}

fn compute_pair(
    u: &Universe,
    entries: &[Vec<LaurentPoly>],
    mtable: &[Vec<LaurentPoly>],
    row: usize,
    col: usize,
    trace: bool,
) -> Result<PairOut> {
    let lam_idx = u.col_parts[col];
    let mu = &u.parts[row];
    let lam = &u.parts[lam_idx];
    let mut lookups = if trace { Some(Vec::new()) } else { None };
    if row == lam_idx {
        return Ok(PairOut {
            row,
            col,
            d_poly: LaurentPoly::one(),
            m_poly: Some(u.rlams[col].clone()),
            lookups,
        });
    }
    let at = |err: Error| err.at_pair(mu.to_string(), lam.to_string());
    // m_lambda(S(mu)) via the chain DP; never by tableau enumeration
    let mut f = specht_multiplicity(mu, &u.jweights[col], u.e).map_err(&at)?;
    let mu_restricted = u.col_of_part[row].is_some();
    for (nu_col, &nu_idx) in u.col_parts.iter().enumerate() {
        // nu runs over the restricted interval between lam and mu
        if !(u.in_moves(row, nu_idx) && u.in_moves(nu_idx, lam_idx)) {
            continue;
        }
        if nu_idx == lam_idx || (mu_restricted && nu_idx == row) {
            continue;
        }
        if let Some(log) = &mut lookups {
            log.push(Lookup::Decomp {
                mu: mu.clone(),
                nu: u.parts[nu_idx].clone(),
            });
            log.push(Lookup::MValue {
                lam: lam.clone(),
                nu: u.parts[nu_idx].clone(),
            });
        }
        f -= &(&entries[row][nu_col] * &mtable[col][nu_col]);
    }
    if mu_restricted {
        let sol = basic_solve(&f, &u.rlams[col]).map_err(&at)?;
        Ok(PairOut {
            row,
            col,
            d_poly: sol.d_part,
            m_poly: Some(sol.m_part),
            lookups,
        })
    } else {
        let d_poly = f.exact_div(&u.rlams[col]).map_err(&at)?;
        Ok(PairOut {
            row,
            col,
            d_poly,
            m_poly: None,
            lookups,
        })
    }
}

/// Compute the graded decomposition matrix for all partitions of d at
/// quantum characteristic e (characteristic-zero regime).
pub fn decomposition_matrix(d: u32, e: QuantumChar) -> Result<DecompMatrix> {
    Ok(decomposition_matrix_with(d, e, SolverOptions::default())?.matrix)
}

/// As [`decomposition_matrix`], with explicit evaluation options.
pub fn decomposition_matrix_with(
    d: u32,
    e: QuantumChar,
    options: SolverOptions,
) -> Result<SolveOutput> {
    let u = Universe::build(d, e);
    let n_rows = u.parts.len();
    let n_cols = u.col_parts.len();

    // every valid pair, ordered by distance then by the canonical
    // enumeration order on (mu, lambda); the tie-break fixes a
    // reproducible schedule, any same-distance order being correct
    let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
    for row in 0..n_rows {
        for (col, &lam_idx) in u.col_parts.iter().enumerate() {
            if u.in_moves(row, lam_idx) {
                let dist = distance(&u.parts[row], &u.parts[lam_idx]).expect("dominated");
                pairs.push((dist, row, col));
            }
        }
    }
    pairs.sort_unstable();

    let zero_row = vec![LaurentPoly::zero(); n_cols];
    let mut entries: Vec<Vec<LaurentPoly>> = vec![zero_row.clone(); n_rows];
    let mut mtable: Vec<Vec<LaurentPoly>> = vec![zero_row; n_cols];
    let mut trace: Option<Vec<PairTrace>> = if options.trace { Some(Vec::new()) } else { None };

    let mut start = 0;
    while start < pairs.len() {
        let dist = pairs[start].0;
        let mut end = start;
        while end < pairs.len() && pairs[end].0 == dist {
            end += 1;
        }
        let stratum = &pairs[start..end];
        let run = |&(_, row, col): &(u64, usize, usize)| {
            compute_pair(&u, &entries, &mtable, row, col, options.trace)
        };
        #[cfg(feature = "parallel")]
        let outputs: Vec<PairOut> = if options.parallel {
            stratum.par_iter().map(run).collect::<Result<_>>()?
        } else {
            stratum.iter().map(run).collect::<Result<_>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let outputs: Vec<PairOut> = stratum.iter().map(run).collect::<Result<_>>()?;

        for out in outputs {
            if let Some(log) = out.lookups {
                trace.as_mut().expect("tracing on").push(PairTrace {
                    mu: u.parts[out.row].clone(),
                    lam: u.parts[u.col_parts[out.col]].clone(),
                    lookups: log,
                });
            }
            if let Some(m_poly) = out.m_poly {
                let mu_col = u.col_of_part[out.row].expect("restricted row");
                mtable[out.col][mu_col] = m_poly;
            }
            entries[out.row][out.col] = out.d_poly;
        }
        start = end;
    }

    let cols: Vec<Partition> = u.col_parts.iter().map(|&i| u.parts[i].clone()).collect();
    let matrix = DecompMatrix {
        e,
        d,
        rows: u.parts,
        cols,
        entries,
        mtable,
    };
    Ok(SolveOutput { matrix, trace })
}

/// One verified invariant: its name, whether it held, and a witness plus
/// failure count when it did not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub failures: usize,
    pub witness: Option<String>,
}

/// The outcome of an invariant suite; failures are entries, not errors.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: &str, failures: Vec<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: failures.is_empty(),
            failures: failures.len(),
            witness: failures.into_iter().next(),
        });
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            if check.passed {
                writeln!(f, "ok   {}", check.name)?;
            } else {
                writeln!(
                    f,
                    "FAIL {} ({} failures; first: {})",
                    check.name,
                    check.failures,
                    check.witness.as_deref().unwrap_or("-")
                )?;
            }
        }
        Ok(())
    }
}

/// Check every structural invariant of a decomposition matrix: unit
/// diagonal, vanishing outside moves, positivity of off-diagonal entries,
/// and bar-invariance, diagonal values, and support of the companion table.
pub fn verify_matrix(m: &DecompMatrix) -> VerifyReport {
    let mut report = VerifyReport::default();
    let e = m.e;

    let in_moves = |mu: &Partition, lam: &Partition| {
        residue_content(mu, e) == residue_content(lam, e)
            && dominates(mu, lam).unwrap_or(false)
    };

    let mut diag = Vec::new();
    for lam in &m.cols {
        if m.entry(lam, lam) != Some(&LaurentPoly::one()) {
            diag.push(format!("entry(({lam}),({lam})) != 1"));
        }
    }
    report.push("diagonal-entries-one", diag);

    let mut outside = Vec::new();
    let mut positive = Vec::new();
    for (i, mu) in m.rows.iter().enumerate() {
        for (c, lam) in m.cols.iter().enumerate() {
            let entry = &m.entries[i][c];
            if !in_moves(mu, lam) && !entry.is_zero() {
                outside.push(format!("entry(({mu}),({lam})) = {entry} outside moves"));
            }
            if mu != lam && !(entry.has_positive_exponents() && entry.has_nonnegative_coeffs()) {
                positive.push(format!("entry(({mu}),({lam})) = {entry} not in qZ>=0[q]"));
            }
        }
    }
    report.push("zero-outside-moves", outside);
    report.push("offdiagonal-positive", positive);

    let mut bar = Vec::new();
    let mut diag_r = Vec::new();
    let mut mzero = Vec::new();
    for (c, lam) in m.cols.iter().enumerate() {
        for (b, nu) in m.cols.iter().enumerate() {
            let value = &m.mtable[c][b];
            if !value.is_bar_invariant() {
                bar.push(format!("m[({lam})](D({nu})) = {value} not bar-invariant"));
            }
            if !in_moves(nu, lam) && !value.is_zero() {
                mzero.push(format!("m[({lam})](D({nu})) = {value} outside moves"));
            }
        }
        let expected = r_lambda(lam, e);
        if m.mtable[c][c] != expected {
            diag_r.push(format!(
                "m[({lam})](D({lam})) = {} != {expected}",
                m.mtable[c][c]
            ));
        }
    }
    report.push("mtable-bar-invariant", bar);
    report.push("mtable-diagonal-r-lambda", diag_r);
    report.push("mtable-zero-outside-moves", mzero);

    report
}
