//! Bi-relations: a hard part contained in a soft part whose strict part is in
//! turn contained in the strict hard part.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::{Carrier, FinRelation};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiRelation {
    hard: FinRelation,
    soft: FinRelation,
    hard_indifference: FinRelation,
    hard_strict: FinRelation,
    soft_indifference: FinRelation,
    soft_strict: FinRelation,
}

impl BiRelation {
    /// Validates `R_H ⊆ R_S` and `P_S ⊆ P_H`, naming the first offending
    /// pair otherwise.
    pub fn new(hard: FinRelation, soft: FinRelation) -> Result<Self> {
        if hard.len() != soft.len() {
            return Err(Error::CarrierMismatch {
                left: hard.len(),
                right: soft.len(),
            });
        }
        if let Some((x, y)) = hard.pairs().find(|&(x, y)| !soft.contains(x, y)) {
            return Err(Error::HardNotInSoft(x, y));
        }
        let (hard_indifference, hard_strict) = hard.parts();
        let (soft_indifference, soft_strict) = soft.parts();
        if let Some((x, y)) = soft_strict
            .pairs()
            .find(|&(x, y)| !hard_strict.contains(x, y))
        {
            return Err(Error::StrictSoftNotInStrictHard(x, y));
        }
        Ok(BiRelation {
            hard,
            soft,
            hard_indifference,
            hard_strict,
            soft_indifference,
            soft_strict,
        })
    }

    /// The bi-relation `(R, R)`.
    pub fn diagonal(relation: FinRelation) -> Self {
        BiRelation::new(relation.clone(), relation).expect("(R, R) is always a bi-relation")
    }

    pub fn carrier(&self) -> Carrier {
        self.hard.carrier()
    }

    pub fn len(&self) -> usize {
        self.hard.len()
    }

    pub fn hard(&self) -> &FinRelation {
        &self.hard
    }

    pub fn soft(&self) -> &FinRelation {
        &self.soft
    }

    /// `I_H`
    pub fn hard_indifference(&self) -> &FinRelation {
        &self.hard_indifference
    }

    /// `P_H`
    pub fn hard_strict(&self) -> &FinRelation {
        &self.hard_strict
    }

    /// `I_S`
    pub fn soft_indifference(&self) -> &FinRelation {
        &self.soft_indifference
    }

    /// `P_S`
    pub fn soft_strict(&self) -> &FinRelation {
        &self.soft_strict
    }

    pub fn is_diagonal(&self) -> bool {
        self.hard == self.soft
    }

    /// `P_S != ∅`.
    pub fn is_nontrivial(&self) -> bool {
        !self.soft_strict.is_empty()
    }

    pub fn is_semi_transitive(&self) -> bool {
        self.semi_transitivity().holds()
    }

    /// Checks the three semi-transitivity conditions in order and reports the
    /// first escaping triple.
    pub fn semi_transitivity(&self) -> SemiTransitivity {
        let hard_ok = &self.hard_strict;
        let checks: [(
            BiCondition,
            &FinRelation,
            &FinRelation,
            Option<&FinRelation>,
            &FinRelation,
        ); 6] = [
            (
                BiCondition::HardIndifferenceThenStrict,
                &self.hard_indifference,
                &self.hard_strict,
                None,
                hard_ok,
            ),
            (
                BiCondition::HardStrictThenIndifference,
                &self.hard_strict,
                &self.hard_indifference,
                None,
                hard_ok,
            ),
            (
                BiCondition::SoftIndifferenceAfterHard,
                &self.soft_indifference,
                &self.hard,
                None,
                &self.soft,
            ),
            (
                BiCondition::HardAfterSoftIndifference,
                &self.hard,
                &self.soft_indifference,
                None,
                &self.soft,
            ),
            (
                BiCondition::StrictSoftAfterSoftIndifference,
                &self.soft_strict,
                &self.soft_indifference,
                Some(&self.hard_strict),
                &self.soft_strict,
            ),
            (
                BiCondition::SoftIndifferenceAfterStrictSoft,
                &self.soft_indifference,
                &self.soft_strict,
                Some(&self.hard_strict),
                &self.soft_strict,
            ),
        ];
        for (condition, outer, inner, mask, target) in checks {
            if let Some((from, via, to)) = composition_escape(outer, inner, mask, target) {
                return SemiTransitivity::Violated(SemiTransitivityViolation {
                    condition,
                    from,
                    via,
                    to,
                });
            }
        }
        SemiTransitivity::Holds
    }

    /// Whether `R_H(y) ∪ R_H^-1(x) = P_S(y) ∪ P_S^-1(x)` for `(y, x) ∈ P_S`.
    ///
    /// The identity needs only semi-transitivity; no topology enters.
    pub fn section_union_identity(&self, y: usize, x: usize) -> Result<bool> {
        let carrier = self.carrier();
        carrier.check(y)?;
        carrier.check(x)?;
        if !self.soft_strict.contains(y, x) {
            return Err(Error::Precondition(format!(
                "({y}, {x}) is not in the strict soft part"
            )));
        }
        let hard_side = self.hard.upper(y).union(&self.hard.lower(x));
        let strict_side = self.soft_strict.upper(y).union(&self.soft_strict.lower(x));
        Ok(hard_side == strict_side)
    }

    /// The sets `{P_S(x), P_S^-1(x), R_H(x)^c, R_H^-1(x)^c}` over all `x`,
    /// which generate `τ(R_H, R_S)`.
    pub fn generating_sets(&self) -> Vec<Subset> {
        let mut sets = Vec::with_capacity(4 * self.len());
        for x in self.carrier().elements() {
            sets.push(self.soft_strict.upper(x));
            sets.push(self.soft_strict.lower(x));
            sets.push(self.hard.upper(x).complement());
            sets.push(self.hard.lower(x).complement());
        }
        sets
    }
}

/// Finds the first `(y, x)` in lexicographic order with some `z`,
/// `(y, z) ∈ inner` and `(z, x) ∈ outer`, lying in `mask` (if given) but not
/// in `target`. Returns `(y, z, x)` with the least such `z`.
fn composition_escape(
    outer: &FinRelation,
    inner: &FinRelation,
    mask: Option<&FinRelation>,
    target: &FinRelation,
) -> Option<(usize, usize, usize)> {
    let n = outer.len();
    for y in 0..n {
        for x in 0..n {
            if target.contains(y, x) || mask.is_some_and(|m| !m.contains(y, x)) {
                continue;
            }
            if let Some(z) = (0..n).find(|&z| inner.contains(y, z) && outer.contains(z, x)) {
                return Some((y, z, x));
            }
        }
    }
    None
}

/// Serialized as `{"hard": …, "soft": …}`.
impl Serialize for BiRelation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BiRelation", 2)?;
        s.serialize_field("hard", &self.hard)?;
        s.serialize_field("soft", &self.soft)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BiCondition {
    /// (i) `I_H ∘ P_H ⊆ P_H`
    HardIndifferenceThenStrict,
    /// (i) `P_H ∘ I_H ⊆ P_H`
    HardStrictThenIndifference,
    /// (ii) `I_S ∘ R_H ⊆ R_S`
    SoftIndifferenceAfterHard,
    /// (ii) `R_H ∘ I_S ⊆ R_S`
    HardAfterSoftIndifference,
    /// (iii) `P_H ∩ (P_S ∘ I_S) ⊆ P_S`
    StrictSoftAfterSoftIndifference,
    /// (iii) `P_H ∩ (I_S ∘ P_S) ⊆ P_S`
    SoftIndifferenceAfterStrictSoft,
}

impl BiCondition {
    /// Which of the three numbered conditions this clause belongs to.
    pub fn clause(self) -> u8 {
        match self {
            BiCondition::HardIndifferenceThenStrict | BiCondition::HardStrictThenIndifference => 1,
            BiCondition::SoftIndifferenceAfterHard | BiCondition::HardAfterSoftIndifference => 2,
            _ => 3,
        }
    }
}

/// A chain `from -> via -> to` whose composite `(from, to)` escapes the
/// required containment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SemiTransitivityViolation {
    pub condition: BiCondition,
    pub from: usize,
    pub via: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SemiTransitivity {
    Holds,
    Violated(SemiTransitivityViolation),
}

impl SemiTransitivity {
    pub fn holds(&self) -> bool {
        matches!(self, SemiTransitivity::Holds)
    }
}

/// All bi-relations on the carrier: hard parts in bit order, and for each
/// hard part its soft supersets in bit order, keeping only those with
/// `P_S ⊆ P_H`.
pub fn enumerate_birelations(carrier: Carrier) -> Result<impl Iterator<Item = BiRelation>> {
    let hards = crate::relation::enumerate_relations(carrier)?;
    let n = carrier.len();
    Ok(hards.flat_map(move |hard| {
        let hard_bits = hard.to_bits().expect("bounded carrier");
        let free = !hard_bits & mask(n);
        let (_, hard_strict) = hard.parts();
        submasks(free).filter_map(move |extra| {
            let soft = FinRelation::from_bits(carrier, hard_bits | extra);
            // P_S ⊆ P_H; the superset check is implied by construction.
            let (_, soft_strict) = soft.parts();
            soft_strict
                .is_subset(&hard_strict)
                .then(|| BiRelation::new(hard.clone(), soft).expect("validated"))
        })
    }))
}

/// Every bi-relation as `(hard, soft)` incidence patterns (see
/// [`FinRelation::from_bits`]), hard parts in bit order.
///
/// Given `R_H ⊆ R_S`, the condition `P_S ⊆ P_H` says exactly that every pair
/// added to the soft part ends up symmetric in it, so each hard part is
/// extended by independent units: a missing diagonal entry, both entries of
/// an unrelated pair, or the missing half of a one-way pair.
pub fn enumerate_birelation_bits(carrier: Carrier) -> Result<impl Iterator<Item = (u64, u64)>> {
    let hards = crate::relation::enumerate_relations(carrier)?
        .map(|r| r.to_bits().expect("bounded carrier"));
    Ok(hards.flat_map(move |hard| soft_extensions(carrier, hard).map(move |soft| (hard, soft))))
}

/// Soft parts compatible with the hard part `hard`, as incidence patterns.
pub fn soft_extensions(carrier: Carrier, hard: u64) -> impl Iterator<Item = u64> {
    let units = soft_units(carrier.len(), hard);
    (0..1u64 << units.len()).map(move |choice| {
        units
            .iter()
            .enumerate()
            .filter(|(i, _)| choice >> i & 1 == 1)
            .fold(hard, |acc, (_, u)| acc | u)
    })
}

fn soft_units(n: usize, hard: u64) -> Vec<u64> {
    let bit = |x: usize, y: usize| 1u64 << (x * n + y);
    let mut units = Vec::new();
    for x in 0..n {
        if hard & bit(x, x) == 0 {
            units.push(bit(x, x));
        }
        for y in x + 1..n {
            let (a, b) = (hard & bit(x, y) != 0, hard & bit(y, x) != 0);
            match (a, b) {
                (false, false) => units.push(bit(x, y) | bit(y, x)),
                (true, false) => units.push(bit(y, x)),
                (false, true) => units.push(bit(x, y)),
                (true, true) => {}
            }
        }
    }
    units
}

fn mask(n: usize) -> u64 {
    if n * n == 64 {
        u64::MAX
    } else {
        (1u64 << (n * n)) - 1
    }
}

/// Submasks of `set` in increasing numeric order.
fn submasks(set: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        // (cur - set) & set steps to the next larger submask.
        next = if cur == set {
            None
        } else {
            Some((cur.wrapping_sub(set)) & set)
        };
        Some(cur)
    })
}
