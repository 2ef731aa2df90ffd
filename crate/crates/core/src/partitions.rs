//! Partitions, nodes, and the order structure the algorithms consult:
//! dominance, e-restriction, residue contents, moves, and distance.

use std::fmt;
use std::str::FromStr;

use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The quantum characteristic e >= 2.
///
/// Residues are stored packed one byte per entry, so e is capped at 255;
/// every interesting computation lives at single-digit e anyway. e = 0 and
/// e = 1 are rejected outright: the ladder parametrization needs e >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantumChar(u32);

impl QuantumChar {
    pub fn new(e: u32) -> Result<Self> {
        if (2..=255).contains(&e) {
            Ok(QuantumChar(e))
        } else {
            Err(Error::QuantumChar(e))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for QuantumChar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

impl<'de> Deserialize<'de> for QuantumChar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = u32::deserialize(d)?;
        QuantumChar::new(e).map_err(serde::de::Error::custom)
    }
}

/// A box of a Young diagram, 1-indexed: row from the top, column from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn new(row: u32, col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Node { row, col }
    }
}

/// The residue (col - row) mod e of a node, normalized to 0..e-1.
pub fn residue(node: Node, e: QuantumChar) -> u8 {
    let e = i64::from(e.get());
    (i64::from(node.col) - i64::from(node.row)).rem_euclid(e) as u8
}

/// A partition: weakly decreasing positive parts. The empty sequence is
/// the empty partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0);
        if !ok {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Self::from_sorted(parts))
    }

    fn from_sorted(parts: Vec<u32>) -> Self {
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::from_sorted(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Number of nonempty rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the given 1-indexed row, zero beyond the last row.
    pub fn row_len(&self, row: u32) -> u32 {
        self.parts.get(row as usize - 1).copied().unwrap_or(0)
    }

    /// Partial sum of the first k parts (saturates past the last row).
    pub fn sigma(&self, k: usize) -> u32 {
        self.parts.iter().take(k).sum()
    }

    pub fn contains_node(&self, node: Node) -> bool {
        node.col <= self.row_len(node.row)
    }

    /// Row-wise containment: every row of `other` fits inside this shape.
    pub fn contains(&self, other: &Partition) -> bool {
        other.parts.len() <= self.parts.len()
            && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| {
            (1..=len).map(move |col| Node::new(i as u32 + 1, col))
        })
    }

    pub fn is_removable(&self, node: Node) -> bool {
        node.col == self.row_len(node.row)
            && node.col >= 1
            && self.row_len(node.row + 1) < node.col
    }

    pub fn is_addable(&self, node: Node) -> bool {
        node.col == self.row_len(node.row) + 1
            && (node.row == 1 || self.row_len(node.row - 1) >= node.col)
    }

    /// Removable nodes, top row first.
    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (i, &len) in self.parts.iter().enumerate() {
            let below = self.parts.get(i + 1).copied().unwrap_or(0);
            if len > below {
                out.push(Node::new(i as u32 + 1, len));
            }
        }
        out
    }

    /// Addable nodes, top row first (always includes the new-row node).
    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (i, &len) in self.parts.iter().enumerate() {
            let above = if i == 0 { u32::MAX } else { self.parts[i - 1] };
            if above > len {
                out.push(Node::new(i as u32 + 1, len + 1));
            }
        }
        out.push(Node::new(self.parts.len() as u32 + 1, 1));
        out
    }

    pub fn with_node_added(&self, node: Node) -> Partition {
        debug_assert!(self.is_addable(node), "node not addable");
        let mut parts = self.parts.clone();
        if node.row as usize > parts.len() {
            parts.push(1);
        } else {
            parts[node.row as usize - 1] += 1;
        }
        Partition::from_sorted(parts)
    }

    pub fn with_node_removed(&self, node: Node) -> Partition {
        debug_assert!(self.is_removable(node), "node not removable");
        let mut parts = self.parts.clone();
        parts[node.row as usize - 1] -= 1;
        if parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::from_sorted(parts)
    }

    /// LaTeX label with multiplicity exponents, e.g. `(2,1)` or `(1^{3})`.
    pub fn latex(&self) -> String {
        if self.is_empty() {
            return "\\varnothing".to_string();
        }
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match runs.last_mut() {
                Some((v, k)) if *v == p => *k += 1,
                _ => runs.push((p, 1)),
            }
        }
        let body: Vec<String> = runs
            .into_iter()
            .map(|(v, k)| if k == 1 { v.to_string() } else { format!("{v}^{{{k}}}") })
            .collect();
        format!("({})", body.join(","))
    }
}

/// Text form: parts joined by commas, `()` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "0" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| Error::InvalidPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

/// JSON form: array of parts, e.g. `[2,1]`.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of d, each exactly once, in decreasing lexicographic order.
pub fn all_partitions(d: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Whether `lam` is dominated by `mu` (lam ⊴ mu). Requires |mu| = |lam|.
pub fn dominates(mu: &Partition, lam: &Partition) -> Result<bool> {
    if mu.size() != lam.size() {
        return Err(Error::SizeMismatch(mu.size(), lam.size()));
    }
    let kmax = mu.rows().max(lam.rows());
    Ok((1..=kmax).all(|k| lam.sigma(k) <= mu.sigma(k)))
}

/// Whether successive part differences are all < e (last part against 0).
pub fn is_e_restricted(lam: &Partition, e: QuantumChar) -> bool {
    let e = e.get();
    let n = lam.rows();
    (0..n).all(|i| {
        let next = lam.parts().get(i + 1).copied().unwrap_or(0);
        lam.parts()[i] - next < e
    })
}

/// Number of i-nodes of `lam` for each residue i, indexed by residue.
pub fn residue_content(lam: &Partition, e: QuantumChar) -> Vec<u64> {
    let mut counts = vec![0u64; e.get() as usize];
    for node in lam.nodes() {
        counts[residue(node, e) as usize] += 1;
    }
    counts
}

/// The moves of mu: all lam of the same size with lam ⊴ mu and equal
/// residue content. Always contains mu itself.
pub fn moves(mu: &Partition, e: QuantumChar) -> Vec<Partition> {
    let content = residue_content(mu, e);
    all_partitions(mu.size())
        .into_iter()
        .filter(|lam| {
            residue_content(lam, e) == content && dominates(mu, lam).expect("equal sizes")
        })
        .collect()
}

/// The interval of moves between mu and lam: all nu with nu a move of mu
/// and lam a move of nu. Empty when lam is not a move of mu.
pub fn moves_between(mu: &Partition, lam: &Partition, e: QuantumChar) -> Vec<Partition> {
    if mu.size() != lam.size() {
        return Vec::new();
    }
    let content = residue_content(mu, e);
    if residue_content(lam, e) != content {
        return Vec::new();
    }
    all_partitions(mu.size())
        .into_iter()
        .filter(|nu| {
            residue_content(nu, e) == content
                && dominates(mu, nu).expect("equal sizes")
                && dominates(nu, lam).expect("equal sizes")
        })
        .collect()
}

/// The distance between mu and lam: the total of all partial-sum gaps.
/// Requires lam ⊴ mu; zero exactly when they are equal.
pub fn distance(mu: &Partition, lam: &Partition) -> Result<u64> {
    if !dominates(mu, lam)? {
        return Err(Error::NotDominated {
            mu: mu.to_string(),
            lambda: lam.to_string(),
        });
    }
    let kmax = mu.rows().max(lam.rows());
    Ok((1..=kmax)
        .map(|k| u64::from(mu.sigma(k)) - u64::from(lam.sigma(k)))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn e(v: u32) -> QuantumChar {
        QuantumChar::new(v).unwrap()
    }

    #[test]
    fn construction_and_validation() {
        assert!(Partition::new(vec![3, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::empty().size(), 0);
        assert!(QuantumChar::new(1).is_err());
        assert!(QuantumChar::new(0).is_err());
        assert!(QuantumChar::new(2).is_ok());
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(all_partitions(0), vec![Partition::empty()]);
        assert_eq!(all_partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(all_partitions(6).len(), 11);
        // brute-force distinctness
        let sixes = all_partitions(6);
        for (i, a) in sixes.iter().enumerate() {
            assert_eq!(a.size(), 6);
            for b in &sixes[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn sigma_saturates() {
        assert_eq!(p(&[3]).sigma(1), 3);
        assert_eq!(p(&[2, 1]).sigma(2), 3);
        assert_eq!(p(&[2, 1]).sigma(5), 3);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p(&[3]), &p(&[2, 1])).unwrap());
        assert!(!dominates(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(dominates(&p(&[3, 3]), &p(&[2, 2, 2])).unwrap());
        assert!(dominates(&p(&[2, 1]), &p(&[2, 1])).unwrap());
        assert!(matches!(
            dominates(&p(&[3]), &p(&[2])),
            Err(Error::SizeMismatch(3, 2))
        ));
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for d in 0..=8u32 {
            let parts = all_partitions(d);
            for a in &parts {
                assert!(dominates(a, a).unwrap());
                for b in &parts {
                    if a != b && dominates(a, b).unwrap() {
                        assert!(!dominates(b, a).unwrap(), "antisymmetry at {a}, {b}");
                    }
                    for c in &parts {
                        if dominates(a, b).unwrap() && dominates(b, c).unwrap() {
                            assert!(dominates(a, c).unwrap(), "transitivity at {a}, {b}, {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        assert!(!is_e_restricted(&p(&[3]), e(2)));
        assert!(is_e_restricted(&p(&[2, 1]), e(2)));
        assert!(is_e_restricted(&Partition::empty(), e(2)));
        assert!(is_e_restricted(&p(&[3]), e(4)));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(Node::new(1, 1), e(2)), 0);
        assert_eq!(residue(Node::new(2, 1), e(2)), 1);
        assert_eq!(residue(Node::new(1, 3), e(3)), 2);
    }

    #[test]
    fn residue_content_examples() {
        assert_eq!(residue_content(&p(&[3]), e(2)), vec![2, 1]);
        assert_eq!(residue_content(&p(&[1, 1, 1]), e(2)), vec![2, 1]);
        assert_eq!(residue_content(&Partition::empty(), e(2)), vec![0, 0]);
    }

    #[test]
    fn residue_content_totals_size() {
        for d in 0..=9u32 {
            for lam in all_partitions(d) {
                for ev in [2, 3, 5] {
                    let total: u64 = residue_content(&lam, e(ev)).iter().sum();
                    assert_eq!(total, u64::from(d));
                }
            }
        }
    }

    #[test]
    fn moves_examples() {
        assert_eq!(moves(&p(&[3]), e(2)), vec![p(&[3]), p(&[1, 1, 1])]);
        assert_eq!(moves(&p(&[2, 1]), e(2)), vec![p(&[2, 1])]);
        assert_eq!(moves(&Partition::empty(), e(2)), vec![Partition::empty()]);
    }

    #[test]
    fn moves_between_examples() {
        assert_eq!(
            moves_between(&p(&[3]), &p(&[1, 1, 1]), e(2)),
            vec![p(&[3]), p(&[1, 1, 1])]
        );
        assert_eq!(moves_between(&p(&[2, 1]), &p(&[2, 1]), e(2)), vec![p(&[2, 1])]);
        assert!(moves_between(&p(&[2, 1]), &p(&[3]), e(2)).is_empty());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(distance(&p(&[3]), &p(&[1, 1, 1])).unwrap(), 3);
        assert_eq!(distance(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(), 1);
        assert!(distance(&p(&[2, 1]), &p(&[3])).is_err());
    }

    #[test]
    fn move_distances_are_positive_off_diagonal() {
        for d in 0..=8u32 {
            for mu in all_partitions(d) {
                for lam in moves(&mu, e(3)) {
                    let dist = distance(&mu, &lam).unwrap();
                    assert_eq!(dist == 0, lam == mu);
                    for nu in moves_between(&mu, &lam, e(3)) {
                        let dn = distance(&mu, &nu).unwrap();
                        assert!(dn <= dist);
                        assert_eq!(dn == dist, nu == lam);
                    }
                }
            }
        }
    }

    #[test]
    fn node_calculus() {
        let lam = p(&[4, 2, 2, 1]);
        assert_eq!(
            lam.removable_nodes(),
            vec![Node::new(1, 4), Node::new(3, 2), Node::new(4, 1)]
        );
        assert_eq!(
            lam.addable_nodes(),
            vec![
                Node::new(1, 5),
                Node::new(2, 3),
                Node::new(4, 2),
                Node::new(5, 1)
            ]
        );
        for n in lam.removable_nodes() {
            let smaller = lam.with_node_removed(n);
            assert_eq!(smaller.size(), lam.size() - 1);
            assert_eq!(smaller.with_node_added(n), lam);
        }
        assert!(Partition::empty().addable_nodes() == vec![Node::new(1, 1)]);
    }

    #[test]
    fn text_and_json_forms() {
        assert_eq!(p(&[2, 1]).to_string(), "2,1");
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!(" 3 , 1 ".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        let back: Partition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(back, p(&[2, 1]));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        assert_eq!(p(&[1, 1, 1]).latex(), "(1^{3})");
        assert_eq!(p(&[2, 1]).latex(), "(2,1)");
    }
}
