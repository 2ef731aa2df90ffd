//! Formal linear combinations over the partition basis and the identities
//! connecting them to the computed matrix: the unnormalized first
//! approximation, canonical-basis columns, expansion coefficients, the
//! reconstruction of irreducible characters by unitriangular
//! back-substitution, and projective multiplicities.
//!
//! The reconstruction is the crate's strongest end-to-end oracle: the
//! companion table produced by the solver must agree entry by entry with
//! coefficients read off the reconstructed characters.

use std::collections::BTreeMap;
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use serde::ser::Serializer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladders::{ladder_weight, r_lambda};
use crate::laurent::LaurentPoly;
use crate::partitions::{all_partitions, dominates, Partition, QuantumChar};
use crate::solver::{DecompMatrix, VerifyReport};
use crate::tableaux::{char_multiplicity, specht_character, specht_multiplicity, GradedCharacter};

/// A vector in the formal module with one basis element per partition of a
/// fixed size. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    d: u32,
    terms: BTreeMap<Partition, LaurentPoly>,
}

impl FockVector {
    pub fn zero(d: u32) -> Self {
        FockVector {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Coefficient at a partition, zero when absent.
    pub fn coeff(&self, p: &Partition) -> LaurentPoly {
        self.terms.get(p).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, p: Partition, poly: &LaurentPoly) {
        debug_assert_eq!(p.size(), self.d);
        if poly.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += poly;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(poly.clone());
            }
        }
    }

    /// self += coeff * other.
    pub fn add_scaled(&mut self, coeff: &LaurentPoly, other: &FockVector) {
        for (p, poly) in &other.terms {
            self.add_term(p.clone(), &(coeff * poly));
        }
    }

    fn label(p: &Partition) -> String {
        if p.is_empty() {
            "()".to_string()
        } else {
            format!("({p})")
        }
    }

    /// LaTeX form, dominant terms first.
    pub fn latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(p, poly)| {
                if poly.is_one() {
                    p.latex()
                } else if poly.num_terms() == 1 && poly.has_nonnegative_coeffs() {
                    format!("{}\\,{}", poly.latex(), p.latex())
                } else {
                    format!("({})\\,{}", poly.latex(), p.latex())
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Dominant terms first, e.g. `q*(3) + (1,1,1)`.
impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, poly)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let label = Self::label(p);
            if poly.is_one() {
                write!(f, "{label}")?;
            } else if poly.num_terms() == 1 && poly.has_nonnegative_coeffs() {
                write!(f, "{poly}*{label}")?;
            } else {
                write!(f, "({poly})*{label}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: `{"terms":[{"partition":[...],"poly":{...}}]}`.
impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            partition: &'a Partition,
            poly: &'a LaurentPoly,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            terms: Vec<Record<'a>>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(partition, poly)| Record { partition, poly })
            .collect();
        Wrapper { terms }.serialize(serializer)
    }
}

fn multiplicities_over(
    parts: &[Partition],
    j: &crate::ladders::ResidueSeq,
    e: QuantumChar,
) -> Result<Vec<LaurentPoly>> {
    #[cfg(feature = "parallel")]
    {
        parts
            .par_iter()
            .map(|mu| specht_multiplicity(mu, j, e))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        parts.iter().map(|mu| specht_multiplicity(mu, j, e)).collect()
    }
}

/// The unnormalized first approximation of the canonical basis vector of
/// an e-restricted shape: the sum over all partitions mu of the same size
/// of the ladder-weight multiplicity of lam in the Specht character of mu.
///
/// The normalizer r_lambda is deliberately not divided out, so every
/// coefficient stays an integer Laurent polynomial; callers print the
/// factor alongside.
pub fn first_approximation(lam: &Partition, e: QuantumChar) -> Result<FockVector> {
    let j = ladder_weight(lam, e)?;
    let parts = all_partitions(lam.size());
    let mults = multiplicities_over(&parts, &j, e)?;
    let mut vec = FockVector::zero(lam.size());
    for (mu, poly) in parts.into_iter().zip(mults) {
        vec.add_term(mu, &poly);
    }
    Ok(vec)
}

fn col_index_checked(m: &DecompMatrix, lam: &Partition) -> Result<usize> {
    m.col_index(lam).ok_or_else(|| {
        if lam.size() != m.d {
            Error::SizeMismatch(lam.size(), m.d)
        } else {
            Error::NotRestricted(lam.to_string(), m.e.get())
        }
    })
}

/// One column of the decomposition matrix as a vector: the canonical
/// basis element attached to lam.
pub fn canonical_basis_column(lam: &Partition, m: &DecompMatrix) -> Result<FockVector> {
    let c = col_index_checked(m, lam)?;
    let mut vec = FockVector::zero(m.d);
    for (i, mu) in m.rows.iter().enumerate() {
        vec.add_term(mu.clone(), &m.entries[i][c]);
    }
    Ok(vec)
}

/// The expansion coefficients of the unnormalized first approximation over
/// the canonical basis. These are exactly the companion-table row of lam;
/// the expansion identity is recomputed and checked before returning.
pub fn b_coefficients(lam: &Partition, m: &DecompMatrix) -> Result<Vec<(Partition, LaurentPoly)>> {
    let c = col_index_checked(m, lam)?;
    let coeffs: Vec<(Partition, LaurentPoly)> = m
        .cols
        .iter()
        .cloned()
        .zip(m.mtable[c].iter().cloned())
        .collect();
    let lhs = first_approximation(lam, m.e)?;
    let mut rhs = FockVector::zero(m.d);
    for (nu, b) in &coeffs {
        if !b.is_zero() {
            rhs.add_scaled(b, &canonical_basis_column(nu, m)?);
        }
    }
    if lhs != rhs {
        return Err(Error::IdentityViolation(format!(
            "first approximation of ({lam}) is not the expected combination of canonical vectors: \
             {lhs} vs {rhs}"
        )));
    }
    Ok(coeffs)
}

/// Solve the unitriangular system expressing Specht characters in terms of
/// irreducible ones, producing the graded character of every irreducible.
///
/// Columns are processed minimal-in-dominance first (increasing
/// lexicographic order refines dominance), so each character is complete
/// before anything reads it. Needs tableau enumeration for the restricted
/// shapes, hence the same size cap as [`specht_character`].
pub fn reconstruct_irreducible_characters(
    m: &DecompMatrix,
) -> Result<BTreeMap<Partition, GradedCharacter>> {
    let mut order: Vec<(usize, &Partition)> = m.cols.iter().enumerate().collect();
    order.sort_by_key(|&(_, p)| p.clone());
    let mut out: BTreeMap<Partition, GradedCharacter> = BTreeMap::new();
    for (c, lam) in order {
        let row = m.row_index(lam).expect("columns are rows");
        let mut ch = specht_character(lam, m.e)?;
        for (b, nu) in m.cols.iter().enumerate() {
            if b == c {
                continue;
            }
            let entry = &m.entries[row][b];
            if !entry.is_zero() {
                let known = out
                    .get(nu)
                    .expect("dominated column already reconstructed");
                ch.sub_scaled(entry, known);
            }
        }
        out.insert(lam.clone(), ch);
    }
    Ok(out)
}

/// Ladder-weight multiplicities of lam in the projective characters: the
/// matrix-weighted combination of its Specht multiplicities.
pub fn projective_character_mults(
    lam: &Partition,
    m: &DecompMatrix,
) -> Result<Vec<(Partition, LaurentPoly)>> {
    let _ = col_index_checked(m, lam)?;
    let j = ladder_weight(lam, m.e)?;
    let specht_mults = multiplicities_over(&m.rows, &j, m.e)?;
    Ok(m.cols
        .iter()
        .enumerate()
        .map(|(b, nu)| {
            let mut total = LaurentPoly::zero();
            for (i, ms) in specht_mults.iter().enumerate() {
                total += &(ms * &m.entries[i][b]);
            }
            (nu.clone(), total)
        })
        .collect())
}

/// Run every character-level and expansion-level invariant against a
/// computed matrix. Check failures become report entries; only inability
/// to compute (e.g. a size above the enumeration cap) is an error.
pub fn verify_fock(m: &DecompMatrix) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let e = m.e;
    let recon = reconstruct_irreducible_characters(m)?;
    let jweights: Vec<_> = m
        .cols
        .iter()
        .map(|lam| ladder_weight(lam, e).expect("columns are restricted"))
        .collect();
    // m_lambda(S(mu)) for every column lambda and row mu
    let specht_mults: Vec<Vec<LaurentPoly>> = jweights
        .iter()
        .map(|j| multiplicities_over(&m.rows, j, e))
        .collect::<Result<_>>()?;

    let mut expansion = Vec::new();
    for (i, mu) in m.rows.iter().enumerate() {
        let full = specht_character(mu, e)?;
        let mut combined = GradedCharacter::zero(e, m.d);
        for (b, nu) in m.cols.iter().enumerate() {
            combined.add_scaled(&m.entries[i][b], &recon[nu]);
        }
        if combined != full {
            expansion.push(format!("Specht character of ({mu}) != matrix expansion"));
        }
    }
    report.push("specht-character-expansion", expansion);

    let mut bar = Vec::new();
    let mut nonneg = Vec::new();
    let mut diag = Vec::new();
    for (c, lam) in m.cols.iter().enumerate() {
        let ch = &recon[lam];
        if !ch.is_bar_invariant() {
            bar.push(format!("irreducible character of ({lam}) not bar-invariant"));
        }
        if !ch.has_nonnegative_coeffs() {
            nonneg.push(format!("irreducible character of ({lam}) has negative entries"));
        }
        let got = char_multiplicity(ch, &jweights[c]);
        let want = r_lambda(lam, e);
        if got != want {
            diag.push(format!(
                "ladder weight of ({lam}) has multiplicity {got} in its irreducible, expected {want}"
            ));
        }
    }
    report.push("irreducible-bar-invariant", bar);
    report.push("irreducible-nonnegative", nonneg);
    report.push("irreducible-ladder-multiplicity", diag);

    let mut vanish = Vec::new();
    for (c, lam) in m.cols.iter().enumerate() {
        for mu in m.cols.iter() {
            if dominates(mu, lam).expect("equal sizes") {
                continue;
            }
            let got = char_multiplicity(&recon[mu], &jweights[c]);
            if !got.is_zero() {
                vanish.push(format!(
                    "ladder weight of ({lam}) appears in the irreducible of ({mu})"
                ));
            }
        }
    }
    report.push("ladder-weight-vanishing", vanish);

    let mut implies = Vec::new();
    for (i, mu) in m.rows.iter().enumerate() {
        for (c, lam) in m.cols.iter().enumerate() {
            if !m.entries[i][c].is_zero() && specht_mults[c][i].is_zero() {
                implies.push(format!(
                    "entry (({mu}),({lam})) nonzero but the ladder weight is absent"
                ));
            }
        }
    }
    report.push("nonzero-entry-implies-multiplicity", implies);

    let mut double = Vec::new();
    for (c, lam) in m.cols.iter().enumerate() {
        for (b, nu) in m.cols.iter().enumerate() {
            let direct = &m.mtable[c][b];
            let derived = char_multiplicity(&recon[nu], &jweights[c]);
            if *direct != derived {
                double.push(format!(
                    "m[({lam})](D({nu})) = {direct} but the reconstructed character gives {derived}"
                ));
            }
        }
    }
    report.push("mtable-matches-reconstruction", double);

    let mut expansion_b = Vec::new();
    for lam in &m.cols {
        if let Err(err) = b_coefficients(lam, m) {
            expansion_b.push(err.to_string());
        }
    }
    report.push("first-approx-expansion", expansion_b);

    // three expansions of the same projective class, all in irreducible
    // coordinates: via the companion table, via Specht multiplicities, and
    // via the projective multiplicities
    let mut proj = Vec::new();
    for (c, lam) in m.cols.iter().enumerate() {
        let via_proj = projective_character_mults(lam, m)?;
        for (k, kappa) in m.cols.iter().enumerate() {
            let mut via_mtable = LaurentPoly::zero();
            for b in 0..m.cols.len() {
                for i in 0..m.rows.len() {
                    via_mtable += &(&(&m.mtable[c][b] * &m.entries[i][b]) * &m.entries[i][k]);
                }
            }
            let mut via_specht = LaurentPoly::zero();
            for i in 0..m.rows.len() {
                via_specht += &(&specht_mults[c][i] * &m.entries[i][k]);
            }
            let ok = via_mtable == via_specht && via_specht == via_proj[k].1;
            if !ok {
                proj.push(format!(
                    "projective expansions disagree at lam = ({lam}), kappa = ({kappa})"
                ));
            }
        }
    }
    report.push("projective-expansion-consistency", proj);

    Ok(report)
}
