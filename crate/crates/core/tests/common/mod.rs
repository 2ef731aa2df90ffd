//! Independent oracles used by the integration suites. Everything here
//! recomputes a quantity along a route the production code does not take.

use num_bigint::BigInt;

use qdecomp_core::ladders::{bottom_removable_sequence, ResidueSeq};
use qdecomp_core::laurent::LaurentPoly;
use qdecomp_core::partitions::{residue, Partition, QuantumChar};

/// Number of standard tableaux of a shape by the hook length formula.
pub fn hook_length_count(shape: &Partition) -> BigInt {
    let d = shape.size();
    let mut numerator: BigInt = (1..=u64::from(d)).map(BigInt::from).product();
    if d == 0 {
        return BigInt::from(1);
    }
    let conjugate_len = |col: u32| -> u32 {
        shape.parts().iter().filter(|&&p| p >= col).count() as u32
    };
    for node in shape.nodes() {
        let arm = shape.row_len(node.row) - node.col;
        let leg = conjugate_len(node.col) - node.row;
        numerator /= BigInt::from(arm + leg + 1);
    }
    numerator
}

/// The ladder weight by its literal peeling definition: the last entry is
/// the residue of the last node of the bottom removable sequence, and the
/// prefix is the ladder weight of the shape with that node removed.
pub fn ladder_weight_recursive(lam: &Partition, e: QuantumChar) -> ResidueSeq {
    let mut entries = vec![0u8; lam.size() as usize];
    let mut cur = lam.clone();
    for slot in (0..entries.len()).rev() {
        let seq = bottom_removable_sequence(&cur, e).expect("restricted and nonempty");
        let last = *seq.last().expect("nonempty sequence");
        entries[slot] = residue(last, e);
        cur = cur.with_node_removed(last);
    }
    ResidueSeq::new(entries)
}

/// Keep only the terms with strictly positive exponents.
pub fn positive_part(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.terms()
            .filter(|&(e, _)| e > 0)
            .map(|(e, c)| (c.clone(), e)),
    )
}

/// Split f = d*r + m along a route independent of the peeling solver:
/// f - bar(f) equals (d - bar(d))*r, so exact division recovers d as the
/// positive-exponent part, and m follows by subtraction.
pub fn basic_solve_by_involution(
    f: &LaurentPoly,
    r: &LaurentPoly,
) -> Option<(LaurentPoly, LaurentPoly)> {
    let skew = f - &f.bar();
    let h = skew.exact_div(r).ok()?;
    let d = positive_part(&h);
    let m = f - &(&d * r);
    m.is_bar_invariant().then_some((d, m))
}
