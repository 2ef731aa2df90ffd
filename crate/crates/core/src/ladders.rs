//! Ladder combinatorics: ladder membership, bottom-completeness, bottom
//! removable sequences, the ladder weight of a restricted partition, and
//! the ladder normalizer r_lambda.
//!
//! The m-th ladder is the set of nodes (1+k, m-k(e-1)); all its nodes have
//! residue (m-1) mod e. Ladders here run with the rows (the transposed
//! convention matching the Specht-module labels used throughout).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, LaurentPoly};
use crate::partitions::{is_e_restricted, Node, Partition, QuantumChar};

/// A residue sequence: entries in 0..e-1, one byte per entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResidueSeq(Vec<u8>);

impl ResidueSeq {
    pub fn new(entries: Vec<u8>) -> Self {
        ResidueSeq(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for ResidueSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Ladder intersection data of a partition: counts r_1..r_t (r_t != 0)
/// and the ladder residues. Empty for the empty partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderProfile {
    e: QuantumChar,
    counts: Vec<u32>,
    residues: Vec<u8>,
}

impl LadderProfile {
    pub fn e(&self) -> QuantumChar {
        self.e
    }

    /// r_m for m = 1..t, as counts[m-1].
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// res L_m = (m-1) mod e, as residues[m-1].
    pub fn residues(&self) -> &[u8] {
        &self.residues
    }

    /// Index of the bottom (last nonempty) ladder; zero for the empty shape.
    pub fn bottom_ladder(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }
}

/// The index m of the unique ladder containing the node: m = col + (row-1)(e-1).
pub fn ladder_index(node: Node, e: QuantumChar) -> u32 {
    node.col + (node.row - 1) * (e.get() - 1)
}

/// The common residue (m-1) mod e of the nodes of ladder m.
pub fn ladder_residue(m: u32, e: QuantumChar) -> u8 {
    ((m - 1) % e.get()) as u8
}

/// Ladder counts r_m = |lambda ∩ L_m| for m up to the bottom ladder of lambda.
pub fn ladder_profile(lam: &Partition, e: QuantumChar) -> LadderProfile {
    let mut counts: Vec<u32> = Vec::new();
    for node in lam.nodes() {
        let m = ladder_index(node, e) as usize;
        if counts.len() < m {
            counts.resize(m, 0);
        }
        counts[m - 1] += 1;
    }
    // the top-left corner is alone in L_1, so no trailing zeros can occur,
    // but an empty partition yields an empty profile
    while counts.last() == Some(&0) {
        counts.pop();
    }
    let residues = (1..=counts.len() as u32).map(|m| ladder_residue(m, e)).collect();
    LadderProfile { e, counts, residues }
}

/// Whether every ladder is bottom complete for lambda: if a ladder node is
/// in the shape, so is every node of that ladder in a lower row.
pub fn is_bottom_complete(lam: &Partition, e: QuantumChar) -> bool {
    let step = e.get() - 1;
    lam.nodes().all(|node| {
        // walk down the ladder of `node` until it exits the first column
        let mut below = node;
        loop {
            if below.col <= step {
                return true;
            }
            below = Node::new(below.row + 1, below.col - step);
            if !lam.contains_node(below) {
                return false;
            }
        }
    })
}

/// The nodes of lambda in its bottom ladder, ordered bottom row first.
/// All of them are removable and share the bottom ladder's residue.
pub fn bottom_removable_sequence(lam: &Partition, e: QuantumChar) -> Result<Vec<Node>> {
    if lam.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if !is_e_restricted(lam, e) {
        return Err(Error::NotRestricted(lam.to_string(), e.get()));
    }
    let t = ladder_profile(lam, e).bottom_ladder();
    let step = e.get() - 1;
    let mut out = Vec::new();
    for row in (1..=lam.rows() as u32).rev() {
        let col = t as i64 - i64::from((row - 1) * step);
        if col >= 1 && col <= i64::from(lam.row_len(row)) {
            let node = Node::new(row, col as u32);
            debug_assert!(lam.is_removable(node));
            out.push(node);
        }
    }
    Ok(out)
}

/// The ladder weight of an e-restricted partition: the residue sequence
/// obtained by peeling the shape ladder by ladder, bottom ladder last.
///
/// Computed in closed form as res L_1 repeated r_1 times, then res L_2
/// repeated r_2 times, and so on; this agrees with the recursive
/// peeling definition (tested against it directly).
pub fn ladder_weight(lam: &Partition, e: QuantumChar) -> Result<ResidueSeq> {
    if !is_e_restricted(lam, e) {
        return Err(Error::NotRestricted(lam.to_string(), e.get()));
    }
    let profile = ladder_profile(lam, e);
    let mut entries = Vec::with_capacity(lam.size() as usize);
    for (m1, &count) in profile.counts().iter().enumerate() {
        let res = profile.residues()[m1];
        entries.extend(std::iter::repeat(res).take(count as usize));
    }
    Ok(ResidueSeq::new(entries))
}

/// The ladder normalizer r_lambda: the product of the quantum factorials
/// of the ladder counts. Bar-invariant and nonzero; defined for any shape.
pub fn r_lambda(lam: &Partition, e: QuantumChar) -> LaurentPoly {
    ladder_profile(lam, e)
        .counts()
        .iter()
        .fold(LaurentPoly::one(), |acc, &r| &acc * &quantum_factorial(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::quantum_int;
    use crate::partitions::{all_partitions, residue};
    use num_bigint::BigInt;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn e(v: u32) -> QuantumChar {
        QuantumChar::new(v).unwrap()
    }

    #[test]
    fn ladder_index_examples() {
        assert_eq!(ladder_index(Node::new(1, 1), e(2)), 1);
        assert_eq!(ladder_index(Node::new(1, 1), e(5)), 1);
        assert_eq!(ladder_index(Node::new(2, 1), e(2)), 2);
        assert_eq!(ladder_index(Node::new(3, 1), e(3)), 5);
    }

    #[test]
    fn ladder_residue_matches_nodes() {
        for ev in [2u32, 3, 4, 5] {
            for lam in all_partitions(8) {
                for node in lam.nodes() {
                    let m = ladder_index(node, e(ev));
                    assert_eq!(residue(node, e(ev)), ladder_residue(m, e(ev)));
                }
            }
        }
    }

    #[test]
    fn profile_examples() {
        assert_eq!(ladder_profile(&p(&[1]), e(2)).counts(), &[1]);
        assert_eq!(ladder_profile(&p(&[2, 1]), e(2)).counts(), &[1, 2]);
        assert_eq!(ladder_profile(&p(&[3]), e(2)).counts(), &[1, 1, 1]);
        assert!(ladder_profile(&Partition::empty(), e(2)).counts().is_empty());
        assert_eq!(ladder_profile(&p(&[2, 2, 1]), e(2)).counts(), &[1, 2, 2]);
    }

    #[test]
    fn bottom_complete_examples() {
        assert!(is_bottom_complete(&p(&[2, 1]), e(2)));
        assert!(!is_bottom_complete(&p(&[3]), e(2)));
        assert!(is_bottom_complete(&Partition::empty(), e(2)));
    }

    #[test]
    fn bottom_complete_iff_restricted_small() {
        for ev in [2u32, 3, 4, 5] {
            for d in 0..=9u32 {
                for lam in all_partitions(d) {
                    assert_eq!(
                        is_bottom_complete(&lam, e(ev)),
                        is_e_restricted(&lam, e(ev)),
                        "at lam = {lam}, e = {ev}"
                    );
                }
            }
        }
    }

    #[test]
    fn bottom_removable_sequence_examples() {
        assert_eq!(
            bottom_removable_sequence(&p(&[2, 1]), e(2)).unwrap(),
            vec![Node::new(2, 1), Node::new(1, 2)]
        );
        assert_eq!(
            bottom_removable_sequence(&p(&[1]), e(3)).unwrap(),
            vec![Node::new(1, 1)]
        );
        assert_eq!(
            bottom_removable_sequence(&p(&[1, 1, 1]), e(2)).unwrap(),
            vec![Node::new(3, 1)]
        );
        assert!(matches!(
            bottom_removable_sequence(&Partition::empty(), e(2)),
            Err(Error::EmptyPartition)
        ));
        assert!(matches!(
            bottom_removable_sequence(&p(&[3]), e(2)),
            Err(Error::NotRestricted(..))
        ));
    }

    #[test]
    fn bottom_sequence_nodes_are_removable_and_share_residue() {
        for ev in [2u32, 3, 4] {
            for d in 1..=10u32 {
                for lam in all_partitions(d) {
                    if !is_e_restricted(&lam, e(ev)) {
                        continue;
                    }
                    let seq = bottom_removable_sequence(&lam, e(ev)).unwrap();
                    let t = ladder_profile(&lam, e(ev)).bottom_ladder();
                    assert!(!seq.is_empty());
                    for node in &seq {
                        assert!(lam.is_removable(*node));
                        assert_eq!(residue(*node, e(ev)), ladder_residue(t, e(ev)));
                    }
                    for w in seq.windows(2) {
                        assert!(w[0].row > w[1].row);
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_weight_examples() {
        assert_eq!(
            ladder_weight(&p(&[1]), e(2)).unwrap(),
            ResidueSeq::new(vec![0])
        );
        assert_eq!(
            ladder_weight(&p(&[2, 1]), e(2)).unwrap(),
            ResidueSeq::new(vec![0, 1, 1])
        );
        assert_eq!(
            ladder_weight(&p(&[1, 1, 1]), e(2)).unwrap(),
            ResidueSeq::new(vec![0, 1, 0])
        );
        assert_eq!(
            ladder_weight(&Partition::empty(), e(2)).unwrap(),
            ResidueSeq::new(vec![])
        );
        assert!(ladder_weight(&p(&[3]), e(2)).is_err());
    }

    #[test]
    fn r_lambda_examples() {
        assert_eq!(r_lambda(&p(&[1, 1, 1]), e(2)), LaurentPoly::one());
        assert_eq!(r_lambda(&p(&[2, 1]), e(2)), quantum_int(2).unwrap());
        let two = quantum_int(2).unwrap();
        assert_eq!(r_lambda(&p(&[2, 2, 1]), e(2)), &two * &two);
        assert_eq!(r_lambda(&Partition::empty(), e(2)), LaurentPoly::one());
    }

    #[test]
    fn r_lambda_properties() {
        for ev in [2u32, 3, 4] {
            for d in 0..=9u32 {
                for lam in all_partitions(d) {
                    let r = r_lambda(&lam, e(ev));
                    assert!(!r.is_zero());
                    assert!(r.is_bar_invariant());
                    let counts = ladder_profile(&lam, e(ev));
                    let expect: BigInt = counts
                        .counts()
                        .iter()
                        .map(|&c| (1..=c).map(BigInt::from).product::<BigInt>().max(BigInt::from(1)))
                        .product();
                    assert_eq!(r.eval_at_one(), expect);
                    // narrow shapes have all ladder counts <= 1
                    if lam.row_len(1) < ev {
                        assert!(r.is_one(), "lam = {lam}, e = {ev}");
                    }
                }
            }
        }
    }

    #[test]
    fn residue_seq_display_and_json() {
        let j = ResidueSeq::new(vec![0, 1, 1]);
        assert_eq!(j.to_string(), "(0,1,1)");
        assert_eq!(ResidueSeq::new(vec![]).to_string(), "()");
        assert_eq!(serde_json::to_string(&j).unwrap(), "[0,1,1]");
        let back: ResidueSeq = serde_json::from_str("[0,1,1]").unwrap();
        assert_eq!(back, j);
    }
}
