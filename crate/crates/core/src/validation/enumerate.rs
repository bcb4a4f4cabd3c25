use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::ValidationError;
use crate::analysis::{condition_a_on, condition_b_on};
use crate::system::{
    build_closed_loop_digraph, InformationPattern, ModelError, StructuralPattern, StructuralSystem,
};

/// Default bound on the number of entries an exhaustive search may range over.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Property a brute-force search looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Feasible,
    ConditionA,
    ConditionB,
}

impl Criterion {
    pub fn holds(self, sys: &StructuralSystem, k: &InformationPattern) -> Result<bool, ModelError> {
        let closed = build_closed_loop_digraph(sys, k)?;
        Ok(match self {
            Criterion::Feasible => {
                condition_a_on(&closed).holds && condition_b_on(&closed).is_some()
            }
            Criterion::ConditionA => condition_a_on(&closed).holds,
            Criterion::ConditionB => condition_b_on(&closed).is_some(),
        })
    }
}

fn check_cap(size: usize, cap: usize) -> Result<(), ValidationError> {
    if size > cap || size >= 64 {
        return Err(ValidationError::CapExceeded { size, cap });
    }
    Ok(())
}

/// Feasibility of every sub-pattern of a bounding pattern, indexed by bit mask
/// over the bounding pattern's entries (row-major).
#[derive(Debug, Clone)]
pub struct FeasibleFamily {
    inputs: usize,
    outputs: usize,
    entries: Vec<(usize, usize)>,
    feasible: Vec<bool>,
}

impl FeasibleFamily {
    pub fn build(
        sys: &StructuralSystem,
        k_max: &InformationPattern,
        cap: usize,
    ) -> Result<Self, ValidationError> {
        sys.check_pattern(k_max)?;
        check_cap(k_max.nnz(), cap)?;
        let entries: Vec<(usize, usize)> = k_max.nonzeros().collect();
        let (inputs, outputs) = k_max.shape();
        let mut family = Self {
            inputs,
            outputs,
            entries,
            feasible: Vec::new(),
        };
        family.feasible = (0..1u64 << family.entries.len())
            .into_par_iter()
            .map(|mask| Criterion::Feasible.holds(sys, &family.pattern(mask)))
            .collect::<Result<Vec<bool>, _>>()?;
        Ok(family)
    }

    /// Entries of the bounding pattern; bit `b` of a mask selects `entries()[b]`.
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn mask_count(&self) -> u64 {
        1u64 << self.entries.len()
    }

    pub fn pattern(&self, mask: u64) -> InformationPattern {
        let chosen = self
            .entries
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &e)| e);
        InformationPattern::new(self.inputs, self.outputs, chosen).expect("entries in range")
    }

    pub fn mask_of(&self, k: &InformationPattern) -> Option<u64> {
        let mut mask = 0u64;
        for e in k.nonzeros() {
            let b = self.entries.iter().position(|&x| x == e)?;
            mask |= 1 << b;
        }
        Some(mask)
    }

    pub fn is_feasible(&self, mask: u64) -> bool {
        self.feasible[mask as usize]
    }

    pub fn feasible_masks(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.mask_count()).filter(|&m| self.feasible[m as usize])
    }

    /// Feasible masks none of whose strict subsets is feasible. Computed over
    /// all subsets directly, without assuming feasibility is monotone.
    pub fn minimal_masks(&self) -> Vec<u64> {
        let count = self.mask_count() as usize;
        // below[m]: some strict subset of m is feasible
        let mut below = vec![false; count];
        for mask in 1..count {
            let mut bits = mask;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                bits ^= bit;
                let sub = mask ^ bit;
                if self.feasible[sub] || below[sub] {
                    below[mask] = true;
                    break;
                }
            }
        }
        (0..count)
            .filter(|&m| self.feasible[m] && !below[m])
            .map(|m| m as u64)
            .collect()
    }
}

fn sort_patterns(mut patterns: Vec<InformationPattern>) -> Vec<InformationPattern> {
    patterns.sort_by(|a, b| a.nnz().cmp(&b.nnz()).then_with(|| a.cmp(b)));
    patterns
}

/// All feasible sub-patterns of `k_max` (inclusive), sparsest first.
pub fn enumerate_feasible(
    sys: &StructuralSystem,
    k_max: &InformationPattern,
    cap: usize,
) -> Result<Vec<InformationPattern>, ValidationError> {
    let family = FeasibleFamily::build(sys, k_max, cap)?;
    Ok(sort_patterns(
        family.feasible_masks().map(|m| family.pattern(m)).collect(),
    ))
}

/// Minimum entry count meeting a criterion and every pattern attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsestPatterns {
    pub count: usize,
    pub patterns: Vec<InformationPattern>,
}

/// Searches all `p x m` patterns by increasing entry count. `None` when even
/// the full pattern fails the criterion.
pub fn sparsest_bruteforce(
    sys: &StructuralSystem,
    criterion: Criterion,
    cap: usize,
) -> Result<Option<SparsestPatterns>, ValidationError> {
    let (p, m) = (sys.p(), sys.m());
    check_cap(p * m, cap)?;
    let full = InformationPattern::from(StructuralPattern::full(p, m));
    if !criterion.holds(sys, &full)? {
        return Ok(None);
    }
    let positions: Vec<(usize, usize)> = full.nonzeros().collect();
    for size in 0..=positions.len() {
        let combos: Vec<Vec<(usize, usize)>> =
            positions.iter().copied().combinations(size).collect();
        let hits = combos
            .into_par_iter()
            .map(|entries| {
                let k = InformationPattern::new(p, m, entries).expect("entries in range");
                criterion.holds(sys, &k).map(|ok| ok.then_some(k))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let patterns: Vec<InformationPattern> = hits.into_iter().flatten().collect();
        if !patterns.is_empty() {
            return Ok(Some(SparsestPatterns {
                count: size,
                patterns: sort_patterns(patterns),
            }));
        }
    }
    unreachable!("the full pattern satisfies the criterion")
}

pub fn sparsest_feasible_bruteforce(
    sys: &StructuralSystem,
    cap: usize,
) -> Result<Option<SparsestPatterns>, ValidationError> {
    sparsest_bruteforce(sys, Criterion::Feasible, cap)
}

/// Minimal elements of the feasible family over all `p x m` patterns.
pub fn essential_bruteforce(
    sys: &StructuralSystem,
    cap: usize,
) -> Result<Vec<InformationPattern>, ValidationError> {
    let full = InformationPattern::from(StructuralPattern::full(sys.p(), sys.m()));
    let family = FeasibleFamily::build(sys, &full, cap)?;
    Ok(sort_patterns(
        family
            .minimal_masks()
            .into_iter()
            .map(|m| family.pattern(m))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_feasible;

    fn pat(rows: usize, cols: usize, one_based: &[(usize, usize)]) -> StructuralPattern {
        StructuralPattern::new(rows, cols, one_based.iter().map(|&(r, c)| (r - 1, c - 1))).unwrap()
    }

    fn ip(n: usize, one_based: &[(usize, usize)]) -> InformationPattern {
        pat(n, n, one_based).into()
    }

    fn e1() -> StructuralSystem {
        StructuralSystem::with_identity_io(pat(3, 3, &[(2, 1), (3, 2)])).unwrap()
    }

    fn decoupled() -> StructuralSystem {
        StructuralSystem::with_identity_io(pat(2, 2, &[])).unwrap()
    }

    #[test]
    fn scalar_self_loop_family() {
        let sys = StructuralSystem::with_identity_io(pat(1, 1, &[(1, 1)])).unwrap();
        let got = enumerate_feasible(&sys, &ip(1, &[(1, 1)]), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(got, vec![ip(1, &[(1, 1)])]);
    }

    #[test]
    fn e1_family_is_upward_closed() {
        let full: InformationPattern = StructuralPattern::full(3, 3).into();
        let family = FeasibleFamily::build(&e1(), &full, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(!family.is_feasible(0));
        for mask in family.feasible_masks() {
            for b in 0..9 {
                assert!(family.is_feasible(mask | (1 << b)));
            }
        }
    }

    #[test]
    fn zero_bound_gives_nothing() {
        let got = enumerate_feasible(&e1(), &InformationPattern::zeros(3, 3), 20).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn sparsest_examples() {
        let s = sparsest_feasible_bruteforce(&e1(), 20).unwrap().unwrap();
        assert_eq!(s.count, 1);
        assert!(s.patterns.contains(&ip(3, &[(1, 3)])));

        let s = sparsest_feasible_bruteforce(&decoupled(), 20)
            .unwrap()
            .unwrap();
        assert_eq!(s.count, 2);
        assert_eq!(
            s.patterns,
            vec![ip(2, &[(1, 1), (2, 2)]), ip(2, &[(1, 2), (2, 1)])]
        );

        let empty = StructuralSystem::with_identity_io(StructuralPattern::zeros(0, 0)).unwrap();
        let s = sparsest_feasible_bruteforce(&empty, 20).unwrap().unwrap();
        assert_eq!(s.count, 0);
        assert_eq!(s.patterns, vec![InformationPattern::zeros(0, 0)]);
    }

    #[test]
    fn unreachable_state_has_no_feasible_pattern() {
        // x2 has neither input nor output
        let sys = StructuralSystem::new(pat(2, 2, &[]), pat(2, 1, &[(1, 1)]), pat(1, 2, &[(1, 1)]))
            .unwrap();
        assert_eq!(sparsest_feasible_bruteforce(&sys, 20).unwrap(), None);
        assert!(essential_bruteforce(&sys, 20).unwrap().is_empty());
    }

    #[test]
    fn essential_members_are_minimal() {
        let ess = essential_bruteforce(&decoupled(), 20).unwrap();
        assert_eq!(
            ess,
            vec![ip(2, &[(1, 1), (2, 2)]), ip(2, &[(1, 2), (2, 1)])]
        );
        let ess = essential_bruteforce(&e1(), 20).unwrap();
        for a in &ess {
            assert!(is_feasible(&e1(), a).unwrap());
            for b in &ess {
                assert!(!a.is_strict_subpattern(b).unwrap());
            }
        }
        let sys = StructuralSystem::with_identity_io(pat(1, 1, &[(1, 1)])).unwrap();
        assert_eq!(
            essential_bruteforce(&sys, 20).unwrap(),
            vec![ip(1, &[(1, 1)])]
        );
    }

    #[test]
    fn cap_is_a_hard_error() {
        let sys = StructuralSystem::with_identity_io(StructuralPattern::zeros(5, 5)).unwrap();
        assert_eq!(
            essential_bruteforce(&sys, 20).unwrap_err(),
            ValidationError::CapExceeded { size: 25, cap: 20 }
        );
        assert!(sparsest_feasible_bruteforce(&sys, 20).is_err());
    }
}
