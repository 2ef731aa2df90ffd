//! Standard tableaux with their degrees, graded Specht characters, and the
//! ladder-weight multiplicity function on characters.
//!
//! Two multiplicity paths coexist on purpose. [`specht_character`]
//! enumerates every standard tableau of a shape and is capped by an
//! enumeration limit, because tableau counts grow super-exponentially.
//! [`specht_multiplicity`] extracts the coefficient of a single residue
//! sequence through a dynamic program over partial shapes and runs at any
//! size the solver needs. The two are tested against each other.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladders::ResidueSeq;
use crate::laurent::LaurentPoly;
use crate::partitions::{residue, Node, Partition, QuantumChar};

/// Size above which [`specht_character`] refuses to enumerate tableaux.
pub const DEFAULT_ENUMERATION_LIMIT: u32 = 12;

/// A standard tableau: a filling of a shape by 1..d increasing along rows
/// and down columns, stored as the node holding each label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    nodes: Vec<Node>,
}

impl StandardTableau {
    /// Build from the node of each label (index r holds label r+1),
    /// validating that every prefix of labels forms a partition shape.
    pub fn new(shape: Partition, nodes: Vec<Node>) -> Result<Self> {
        let bad = || {
            Error::InvalidPartition(format!(
                "filling {nodes:?} is not a standard tableau of shape ({shape})"
            ))
        };
        if nodes.len() != shape.size() as usize {
            return Err(bad());
        }
        let mut grown = Partition::empty();
        for &node in &nodes {
            if !grown.is_addable(node) || !shape.contains_node(node) {
                return Err(bad());
            }
            grown = grown.with_node_added(node);
        }
        Ok(StandardTableau { shape, nodes })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> u32 {
        self.shape.size()
    }

    /// Node holding the given label (1-indexed).
    pub fn node_of(&self, label: u32) -> Node {
        self.nodes[label as usize - 1]
    }

    /// The tableau filling each row of the shape left to right with
    /// 1, 2, ... in reading order.
    pub fn row_reading(shape: &Partition) -> Self {
        let nodes = shape.nodes().collect();
        StandardTableau {
            shape: shape.clone(),
            nodes,
        }
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut grid: Vec<Vec<u32>> = self
            .shape
            .parts()
            .iter()
            .map(|&len| vec![0; len as usize])
            .collect();
        for (i, node) in self.nodes.iter().enumerate() {
            grid[node.row as usize - 1][node.col as usize - 1] = i as u32 + 1;
        }
        for (i, row) in grid.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Every standard tableau of the given shape, in the deterministic order
/// produced by always trying the highest addable row first for the next
/// label. The count is the hook-length number.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(
        cur: &Partition,
        shape: &Partition,
        nodes: &mut Vec<Node>,
        out: &mut Vec<StandardTableau>,
    ) {
        if cur.size() == shape.size() {
            out.push(StandardTableau {
                shape: shape.clone(),
                nodes: nodes.clone(),
            });
            return;
        }
        for node in cur.addable_nodes() {
            if shape.contains_node(node) {
                nodes.push(node);
                rec(&cur.with_node_added(node), shape, nodes, out);
                nodes.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&Partition::empty(), shape, &mut Vec::new(), &mut out);
    out
}

/// The degree of a removable node: addable minus removable nodes of the
/// same residue strictly below it. May be negative.
pub fn node_degree(lam: &Partition, node: Node, e: QuantumChar) -> Result<i64> {
    if !lam.is_removable(node) {
        return Err(Error::NotRemovable {
            row: node.row,
            col: node.col,
        });
    }
    let i = residue(node, e);
    let addable = lam
        .addable_nodes()
        .into_iter()
        .filter(|a| a.row > node.row && residue(*a, e) == i)
        .count() as i64;
    let removable = lam
        .removable_nodes()
        .into_iter()
        .filter(|r| r.row > node.row && residue(*r, e) == i)
        .count() as i64;
    Ok(addable - removable)
}

/// The degree of a tableau: the sum of node degrees along its removal
/// chain, taking the empty tableau to degree zero.
pub fn tableau_degree(tableau: &StandardTableau, e: QuantumChar) -> i64 {
    let mut shape = tableau.shape.clone();
    let mut deg = 0i64;
    for label in (1..=tableau.size()).rev() {
        let node = tableau.node_of(label);
        deg += node_degree(&shape, node, e).expect("chain node is removable");
        shape = shape.with_node_removed(node);
    }
    deg
}

/// Residues of the nodes holding 1, 2, ..., d.
pub fn residue_sequence(tableau: &StandardTableau, e: QuantumChar) -> ResidueSeq {
    ResidueSeq::new(
        tableau
            .nodes
            .iter()
            .map(|&node| residue(node, e))
            .collect(),
    )
}

/// A graded character: a sparse map from residue sequences to graded
/// weight-space dimensions. Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    e: QuantumChar,
    d: u32,
    terms: BTreeMap<ResidueSeq, LaurentPoly>,
}

impl GradedCharacter {
    pub fn zero(e: QuantumChar, d: u32) -> Self {
        GradedCharacter {
            e,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn e(&self) -> QuantumChar {
        self.e
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

    pub fn terms(&self) -> impl Iterator<Item = (&ResidueSeq, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, seq: ResidueSeq, poly: &LaurentPoly) {
        debug_assert_eq!(seq.len(), self.d as usize);
        if poly.is_zero() {
            return;
        }
        match self.terms.entry(seq) {
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

    /// self += coeff * other, termwise.
    pub fn add_scaled(&mut self, coeff: &LaurentPoly, other: &GradedCharacter) {
        for (seq, poly) in &other.terms {
            self.add_term(seq.clone(), &(coeff * poly));
        }
    }

    /// self -= coeff * other, termwise.
    pub fn sub_scaled(&mut self, coeff: &LaurentPoly, other: &GradedCharacter) {
        self.add_scaled(&-coeff, other);
    }

    /// Coefficient at a residue sequence, zero when absent.
    pub fn multiplicity(&self, seq: &ResidueSeq) -> LaurentPoly {
        self.terms.get(seq).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_bar_invariant)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(LaurentPoly::has_nonnegative_coeffs)
    }

    /// Sum over all keys of the value at q = 1; for a Specht character this
    /// is the number of standard tableaux of the shape.
    pub fn total_mass(&self) -> BigInt {
        self.terms.values().map(LaurentPoly::eval_at_one).sum()
    }
}

impl fmt::Display for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (seq, poly)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{seq}: {poly}")?;
        }
        Ok(())
    }
}

/// JSON form: array of `{"seq": [...], "poly": {...}}` records sorted by seq.
impl Serialize for GradedCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            seq: &'a ResidueSeq,
            poly: &'a LaurentPoly,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (key, poly) in &self.terms {
            seq.serialize_element(&Record { seq: key, poly })?;
        }
        seq.end()
    }
}

/// The graded Specht character of a shape: the sum over its standard
/// tableaux of q^{deg} at the tableau's residue sequence.
///
/// Refuses shapes above [`DEFAULT_ENUMERATION_LIMIT`] boxes; use
/// [`specht_character_with_limit`] or (for one coefficient)
/// [`specht_multiplicity`] beyond that.
pub fn specht_character(mu: &Partition, e: QuantumChar) -> Result<GradedCharacter> {
    specht_character_with_limit(mu, e, DEFAULT_ENUMERATION_LIMIT)
}

pub fn specht_character_with_limit(
    mu: &Partition,
    e: QuantumChar,
    limit: u32,
) -> Result<GradedCharacter> {
    if mu.size() > limit {
        return Err(Error::EnumerationLimit(mu.to_string(), mu.size(), limit));
    }
    let mut ch = GradedCharacter::zero(e, mu.size());
    for tableau in standard_tableaux(mu) {
        let seq = residue_sequence(&tableau, e);
        let deg = tableau_degree(&tableau, e);
        ch.add_term(seq, &LaurentPoly::monomial(deg as i32));
    }
    Ok(ch)
}

/// The coefficient of one residue sequence in the graded Specht character
/// of `mu`, computed without enumerating tableaux.
///
/// Dynamic program over growth chains: step r adds one addable node of
/// residue `j[r]` inside `mu`, weighting by q^{degree of the added node in
/// the grown shape}. This mirrors the inductive tableau degree exactly, so
/// the result equals `specht_character(mu, e).multiplicity(j)`.
pub fn specht_multiplicity(
    mu: &Partition,
    j: &ResidueSeq,
    e: QuantumChar,
) -> Result<LaurentPoly> {
    if j.len() != mu.size() as usize {
        return Err(Error::LengthMismatch {
            got: j.len(),
            want: mu.size() as usize,
        });
    }
    let mut states: BTreeMap<Partition, LaurentPoly> = BTreeMap::new();
    states.insert(Partition::empty(), LaurentPoly::one());
    for &target in j.entries() {
        let mut next: BTreeMap<Partition, LaurentPoly> = BTreeMap::new();
        for (shape, poly) in &states {
            for node in shape.addable_nodes() {
                if !mu.contains_node(node) || residue(node, e) != target {
                    continue;
                }
                let grown = shape.with_node_added(node);
                let deg = node_degree(&grown, node, e).expect("added node is removable");
                let entry = next.entry(grown).or_insert_with(LaurentPoly::zero);
                *entry += &poly.shifted(deg as i32);
            }
        }
        next.retain(|_, poly| !poly.is_zero());
        if next.is_empty() {
            return Ok(LaurentPoly::zero());
        }
        states = next;
    }
    Ok(states.remove(mu).unwrap_or_else(LaurentPoly::zero))
}

/// Coefficient lookup on a character with zero default.
pub fn char_multiplicity(ch: &GradedCharacter, j: &ResidueSeq) -> LaurentPoly {
    ch.multiplicity(j)
}
