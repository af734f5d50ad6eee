//! Binary relations on a finite carrier and their order-theoretic predicates.
//!
//! A relation on `0..n` is an `n x n` incidence matrix; entry `(x, y)` is set
//! iff `(x, y)` belongs to the relation. Values are immutable and every
//! operation returns a fresh relation.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{words_for, Subset};

/// Largest carrier the exhaustive enumerators accept unless told otherwise.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// A finite carrier `0..n` with `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Carrier(usize);

impl Carrier {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        Ok(Carrier(n))
    }

    pub fn len(self) -> usize {
        self.0
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.0
    }

    pub fn check(self, x: usize) -> Result<()> {
        if x < self.0 {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                n: self.0,
            })
        }
    }
}

/// Which section of a relation at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `R(x) = {y | (x, y) in R}`
    Upper,
    /// `R^-1(x) = {y | (y, x) in R}`
    Lower,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinRelation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl FinRelation {
    pub fn empty(carrier: Carrier) -> Self {
        let n = carrier.len();
        let stride = words_for(n);
        FinRelation {
            n,
            stride,
            bits: vec![0; stride * n],
        }
    }

    pub fn full(carrier: Carrier) -> Self {
        Self::from_fn(carrier, |_, _| true)
    }

    /// The diagonal `{(x, x)}`.
    pub fn identity(carrier: Carrier) -> Self {
        Self::from_fn(carrier, |x, y| x == y)
    }

    pub fn from_fn(carrier: Carrier, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(carrier);
        for x in carrier.elements() {
            for y in carrier.elements() {
                if f(x, y) {
                    r.set(x, y);
                }
            }
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        carrier: Carrier,
        pairs: I,
    ) -> Result<Self> {
        let mut r = Self::empty(carrier);
        for (x, y) in pairs {
            carrier.check(x)?;
            carrier.check(y)?;
            r.set(x, y);
        }
        Ok(r)
    }

    /// Builds a relation from its row-major incidence pattern: bit `x * n + y`
    /// of `bits` is the entry `(x, y)`. Requires `n * n <= 64`.
    pub fn from_bits(carrier: Carrier, bits: u64) -> Self {
        let n = carrier.len();
        assert!(n * n <= 64, "bit-pattern constructor needs n*n <= 64");
        Self::from_fn(carrier, |x, y| bits >> (x * n + y) & 1 == 1)
    }

    /// Inverse of [`FinRelation::from_bits`].
    pub fn to_bits(&self) -> Option<u64> {
        if self.n * self.n > 64 {
            return None;
        }
        let mut bits = 0u64;
        for (x, y) in self.pairs() {
            bits |= 1 << (x * self.n + y);
        }
        Some(bits)
    }

    /// Builds a relation from its upper sections, one per element.
    pub fn from_rows(rows: Vec<Subset>) -> Result<Self> {
        let carrier = Carrier::new(rows.len())?;
        let mut r = Self::empty(carrier);
        for (x, row) in rows.iter().enumerate() {
            if row.carrier_len() != r.n {
                return Err(Error::CarrierMismatch {
                    left: r.n,
                    right: row.carrier_len(),
                });
            }
            let start = x * r.stride;
            r.bits[start..start + r.stride].copy_from_slice(row.words());
        }
        Ok(r)
    }

    fn set(&mut self, x: usize, y: usize) {
        self.bits[x * self.stride + y / 64] |= 1 << (y % 64);
    }

    fn row_words(&self, x: usize) -> &[u64] {
        &self.bits[x * self.stride..(x + 1) * self.stride]
    }

    pub fn carrier(&self) -> Carrier {
        Carrier(self.n)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.n && y < self.n && self.bits[x * self.stride + y / 64] >> (y % 64) & 1 == 1
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| {
            (0..self.n)
                .filter(move |&y| self.contains(x, y))
                .map(move |y| (x, y))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn same_carrier(&self, other: &FinRelation) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    fn zip_with(&self, other: &FinRelation, f: impl Fn(u64, u64) -> u64) -> FinRelation {
        debug_assert_eq!(self.n, other.n);
        FinRelation {
            n: self.n,
            stride: self.stride,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `R^-1 = {(x, y) | (y, x) in R}`.
    pub fn transpose(&self) -> FinRelation {
        let mut t = FinRelation::empty(self.carrier());
        for (x, y) in self.pairs() {
            t.set(y, x);
        }
        t
    }

    pub fn complement(&self) -> FinRelation {
        let full = FinRelation::full(self.carrier());
        full.zip_with(self, |a, b| a & !b)
    }

    pub fn union(&self, other: &FinRelation) -> Result<FinRelation> {
        self.same_carrier(other)?;
        Ok(self.zip_with(other, |a, b| a | b))
    }

    pub fn intersection(&self, other: &FinRelation) -> Result<FinRelation> {
        self.same_carrier(other)?;
        Ok(self.zip_with(other, |a, b| a & b))
    }

    pub fn difference(&self, other: &FinRelation) -> Result<FinRelation> {
        self.same_carrier(other)?;
        Ok(self.zip_with(other, |a, b| a & !b))
    }

    /// Inclusion; relations on different carriers are never included in
    /// one another.
    pub fn is_subset(&self, other: &FinRelation) -> bool {
        self.n == other.n
            && self
                .bits
                .iter()
                .zip(&other.bits)
                .all(|(&a, &b)| a & !b == 0)
    }

    /// The composition `self ∘ other`.
    ///
    /// `(y, x)` belongs to `R ∘ R'` iff `R^-1(x) ∩ R'(y)` is non-empty, that
    /// is, iff some `z` has `(y, z) in R'` and `(z, x) in R`: first step
    /// through `R'`, then through `R`.
    pub fn compose(&self, other: &FinRelation) -> Result<FinRelation> {
        self.same_carrier(other)?;
        Ok(self.compose_same(other))
    }

    pub(crate) fn compose_same(&self, other: &FinRelation) -> FinRelation {
        let mut out = FinRelation::empty(self.carrier());
        let stride = self.stride;
        for y in 0..self.n {
            let start = y * stride;
            for z in (0..self.n).filter(|&z| other.contains(y, z)) {
                let src = &self.bits[z * stride..(z + 1) * stride];
                for (dst, &w) in out.bits[start..start + stride].iter_mut().zip(src) {
                    *dst |= w;
                }
            }
        }
        out
    }

    /// `I = R ∩ R^-1`.
    pub fn symmetric_part(&self) -> FinRelation {
        self.zip_with(&self.transpose(), |a, b| a & b)
    }

    /// `P = R \ R^-1`.
    pub fn asymmetric_part(&self) -> FinRelation {
        self.zip_with(&self.transpose(), |a, b| a & !b)
    }

    /// `(I, P)`: disjoint, and their union is `R`.
    pub fn parts(&self) -> (FinRelation, FinRelation) {
        let t = self.transpose();
        (
            self.zip_with(&t, |a, b| a & b),
            self.zip_with(&t, |a, b| a & !b),
        )
    }

    pub fn upper_section(&self, x: usize) -> Result<Subset> {
        self.carrier().check(x)?;
        Ok(self.upper(x))
    }

    pub fn lower_section(&self, x: usize) -> Result<Subset> {
        self.carrier().check(x)?;
        Ok(self.lower(x))
    }

    pub fn section(&self, x: usize, direction: Direction) -> Result<Subset> {
        match direction {
            Direction::Upper => self.upper_section(x),
            Direction::Lower => self.lower_section(x),
        }
    }

    pub(crate) fn upper(&self, x: usize) -> Subset {
        Subset::from_words(self.n, self.row_words(x).to_vec())
    }

    pub(crate) fn lower(&self, x: usize) -> Subset {
        Subset::from_indices(self.n, (0..self.n).filter(|&y| self.contains(y, x)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    /// `P != ∅`.
    pub fn is_nontrivial(&self) -> bool {
        !self.asymmetric_part().is_empty()
    }

    /// `R ∪ R^-1 = X × X`.
    pub fn is_complete(&self) -> bool {
        let t = self.transpose();
        let joined = self.zip_with(&t, |a, b| a | b);
        joined == FinRelation::full(self.carrier())
    }

    /// `R ∘ R ⊆ R`.
    pub fn is_transitive(&self) -> bool {
        self.compose_same(self).is_subset(self)
    }

    /// `R^c` is transitive.
    pub fn is_negatively_transitive(&self) -> bool {
        self.complement().is_transitive()
    }

    /// `I ∘ P ⊆ P` and `P ∘ I ⊆ P`.
    pub fn is_semi_transitive(&self) -> bool {
        let (i, p) = self.parts();
        i.compose_same(&p).is_subset(&p) && p.compose_same(&i).is_subset(&p)
    }

    /// `R ∩ R^-1 ⊆ Δ`.
    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| x == y || !self.contains(y, x))
    }

    pub fn property_record(&self) -> PropertyRecord {
        let (i, _) = self.parts();
        PropertyRecord {
            non_trivial: self.is_nontrivial(),
            complete: self.is_complete(),
            transitive: self.is_transitive(),
            negatively_transitive: self.is_negatively_transitive(),
            semi_transitive: self.is_semi_transitive(),
            anti_symmetric: self.is_antisymmetric(),
            reflexive: self.is_reflexive(),
            symmetric_part_transitive: i.is_transitive(),
        }
    }

    /// Evaluates the three implications of Sen's deconstruction of
    /// transitivity on this relation.
    pub fn sen_check(&self) -> SenReport {
        let (i, p) = self.parts();
        let complete = self.is_complete();
        let semi = self.is_semi_transitive();
        let i_trans = i.is_transitive();
        let p_trans = p.is_transitive();
        SenReport {
            complete_semi_transitive_gives_transitive_indifference: Implication {
                antecedent: complete && semi,
                consequent: i_trans,
            },
            negatively_transitive_strict_part: Implication {
                antecedent: p.is_negatively_transitive(),
                consequent: p_trans && semi,
            },
            transitivity_decomposition: Equivalence {
                left: self.is_transitive(),
                right: semi && p_trans && i_trans,
            },
        }
    }

    /// First `(x, y, z)` in lexicographic order with `(x, y), (y, z)` in the
    /// relation but `(x, z)` missing.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in (0..self.n).filter(|&y| self.contains(x, y)) {
                for z in (0..self.n).filter(|&z| self.contains(y, z)) {
                    if !self.contains(x, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// First `(x, y)` in lexicographic order comparable in neither direction.
    pub fn completeness_witness(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| (x..self.n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.contains(x, y) && !self.contains(y, x))
    }

    /// Rows as `0`/`1` strings joined by `|`.
    pub fn to_row_string(&self) -> String {
        (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| if self.contains(x, y) { '1' } else { '0' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Debug for FinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRelation({})", self.to_row_string())
    }
}

impl fmt::Display for FinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_row_string())
    }
}

impl Serialize for FinRelation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<[usize; 2]> = self.pairs().map(|(x, y)| [x, y]).collect();
        let mut s = serializer.serialize_struct("FinRelation", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("pairs", &pairs)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub non_trivial: bool,
    pub complete: bool,
    pub transitive: bool,
    pub negatively_transitive: bool,
    pub semi_transitive: bool,
    pub anti_symmetric: bool,
    pub reflexive: bool,
    pub symmetric_part_transitive: bool,
}

impl PropertyRecord {
    pub fn rows(&self) -> [(&'static str, bool); 8] {
        [
            ("non_trivial", self.non_trivial),
            ("complete", self.complete),
            ("transitive", self.transitive),
            ("negatively_transitive", self.negatively_transitive),
            ("semi_transitive", self.semi_transitive),
            ("anti_symmetric", self.anti_symmetric),
            ("reflexive", self.reflexive),
            ("symmetric_part_transitive", self.symmetric_part_transitive),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub antecedent: bool,
    pub consequent: bool,
}

impl Implication {
    /// Vacuous implications count as satisfied.
    pub fn satisfied(&self) -> bool {
        !self.antecedent || self.consequent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub left: bool,
    pub right: bool,
}

impl Equivalence {
    pub fn satisfied(&self) -> bool {
        self.left == self.right
    }
}

/// (a) complete and semi-transitive implies `I` transitive; (b) `P`
/// negatively transitive implies `P` transitive and `R` semi-transitive;
/// (c) `R` transitive iff semi-transitive with `P` and `I` transitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SenReport {
    pub complete_semi_transitive_gives_transitive_indifference: Implication,
    pub negatively_transitive_strict_part: Implication,
    pub transitivity_decomposition: Equivalence,
}

impl SenReport {
    pub fn satisfied(&self) -> bool {
        self.complete_semi_transitive_gives_transitive_indifference
            .satisfied()
            && self.negatively_transitive_strict_part.satisfied()
            && self.transitivity_decomposition.satisfied()
    }
}

/// All `2^(n*n)` relations on the carrier, in increasing order of the
/// row-major incidence pattern (see [`FinRelation::from_bits`]).
pub fn enumerate_relations(carrier: Carrier) -> Result<impl Iterator<Item = FinRelation>> {
    enumerate_relations_bounded(carrier, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_relations_bounded(
    carrier: Carrier,
    bound: usize,
) -> Result<impl Iterator<Item = FinRelation>> {
    let n = carrier.len();
    // 2^(n*n) must fit the counter.
    if n > bound || n * n >= 64 {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok((0..1u64 << (n * n)).map(move |bits| FinRelation::from_bits(carrier, bits)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Carrier {
        Carrier::new(n).unwrap()
    }

    fn rel(n: usize, pairs: &[(usize, usize)]) -> FinRelation {
        FinRelation::from_pairs(c(n), pairs.iter().copied()).unwrap()
    }

    fn all(n: usize) -> Vec<FinRelation> {
        enumerate_relations(c(n)).unwrap().collect()
    }

    #[test]
    fn carrier_rejects_zero() {
        assert!(matches!(Carrier::new(0), Err(Error::EmptyCarrier)));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(rel(2, &[(0, 1)]).transpose(), rel(2, &[(1, 0)]));
        assert_eq!(
            FinRelation::identity(c(3)).transpose(),
            FinRelation::identity(c(3))
        );
        for r in all(3) {
            assert_eq!(r.transpose().transpose(), r);
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            FinRelation::empty(c(2)).complement(),
            FinRelation::full(c(2))
        );
        assert_eq!(
            FinRelation::identity(c(2)).complement(),
            rel(2, &[(0, 1), (1, 0)])
        );
        for r in all(3) {
            assert_eq!(r.complement().complement(), r);
        }
    }

    #[test]
    fn compose_follows_convention() {
        let r = rel(3, &[(1, 2)]);
        let rp = rel(3, &[(0, 1)]);
        assert_eq!(r.compose(&rp).unwrap(), rel(3, &[(0, 2)]));
        assert!(rp.compose(&r).unwrap().is_empty());
        let delta = FinRelation::identity(c(3));
        for r in all(3) {
            assert_eq!(delta.compose(&r).unwrap(), r);
            assert_eq!(r.compose(&delta).unwrap(), r);
        }
    }

    #[test]
    fn compose_rejects_carrier_mismatch() {
        let err = FinRelation::empty(c(2)).compose(&FinRelation::empty(c(3)));
        assert!(matches!(
            err,
            Err(Error::CarrierMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn transitivity_matches_triple_loop() {
        for r in all(3) {
            let naive = (0..3).all(|x| {
                (0..3).all(|y| {
                    (0..3).all(|z| !(r.contains(x, y) && r.contains(y, z)) || r.contains(x, z))
                })
            });
            assert_eq!(r.is_transitive(), naive, "{r}");
            assert_eq!(r.transitivity_witness().is_none(), naive);
        }
    }

    #[test]
    fn parts_examples() {
        let d = FinRelation::identity(c(3));
        assert_eq!(d.parts(), (d.clone(), FinRelation::empty(c(3))));
        let r = rel(2, &[(0, 1)]);
        assert_eq!(r.parts(), (FinRelation::empty(c(2)), r.clone()));
        for r in all(3) {
            let (i, p) = r.parts();
            assert!(i.intersection(&p).unwrap().is_empty());
            assert_eq!(i.union(&p).unwrap(), r);
        }
    }

    #[test]
    fn sections() {
        let r = rel(3, &[(0, 1), (0, 2)]);
        assert_eq!(
            r.section(0, Direction::Upper).unwrap(),
            Subset::from_indices(3, [1, 2])
        );
        assert!(matches!(
            r.upper_section(3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
        for r in all(3) {
            for x in 0..3 {
                assert_eq!(
                    r.lower_section(x).unwrap(),
                    r.transpose().upper_section(x).unwrap()
                );
            }
        }
    }

    #[test]
    fn property_record_examples() {
        let full = FinRelation::full(c(3)).property_record();
        assert!(full.complete && full.transitive && !full.non_trivial);
        let r = rel(2, &[(0, 1)]).property_record();
        assert!(r.non_trivial && !r.complete && r.semi_transitive);
    }

    #[test]
    fn sen_examples() {
        let full = FinRelation::full(c(3)).sen_check();
        assert!(
            full.complete_semi_transitive_gives_transitive_indifference
                .antecedent
        );
        assert!(full.satisfied());
        let r = rel(2, &[(0, 0), (1, 1), (0, 1)]).sen_check();
        assert_eq!(
            r.transitivity_decomposition,
            Equivalence {
                left: true,
                right: true
            }
        );
        assert!(r.satisfied());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_relations(c(1)).unwrap().count(), 2);
        assert_eq!(enumerate_relations(c(2)).unwrap().count(), 16);
        let three = all(3);
        assert_eq!(three.len(), 512);
        let mut dedup = three.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 512);
        for (i, r) in three.iter().enumerate() {
            assert_eq!(r.to_bits(), Some(i as u64));
        }
        assert!(matches!(
            enumerate_relations(c(5)).err(),
            Some(Error::BoundExceeded { n: 5, bound: 4 })
        ));
    }

    #[test]
    fn wide_relations_compose() {
        let n = 130;
        let chain = FinRelation::from_fn(c(n), |x, y| y == x + 1);
        let two = chain.compose(&chain).unwrap();
        assert!(two.contains(0, 2) && two.contains(127, 129) && !two.contains(0, 1));
        let order = FinRelation::from_fn(c(n), |x, y| x <= y);
        assert!(order.is_transitive() && order.is_antisymmetric() && order.is_complete());
    }
}
