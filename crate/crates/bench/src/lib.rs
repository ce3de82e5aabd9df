//! Fixtures shared by the benchmarks.

use effdual_core::FamilySignature;

/// Signatures of increasing size, labelled for benchmark ids.
pub fn signatures() -> Vec<(&'static str, FamilySignature)> {
    [
        ("i2", vec![("i", 2)]),
        ("i2-j3", vec![("i", 2), ("j", 3)]),
        ("i3-j3-k3", vec![("i", 3), ("j", 3), ("k", 3)]),
    ]
    .into_iter()
    .map(|(id, entries)| (id, FamilySignature::new(entries).expect("valid fixture")))
    .collect()
}
