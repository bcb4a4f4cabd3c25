//! Rewrites that turn one feasible pattern into another while keeping one of
//! the two structural conditions intact.

use serde::{Deserialize, Serialize};

use super::DesignError;
use crate::analysis::condition_a_on;
use crate::graph::{disjoint_cycle_cover, scc_decompose};
use crate::system::{
    build_closed_loop_digraph, build_state_digraph, InformationPattern, StructuralSystem,
};

fn require_identity_io(sys: &StructuralSystem) -> Result<(), DesignError> {
    if sys.has_identity_io() {
        Ok(())
    } else {
        Err(DesignError::RequiresIdentityIo)
    }
}

/// Replaces the link `(i, j)` by `(i2, j)` and `(i, j2)`, routing the
/// feedback through the component that holds both `x_{i2}` and `x_{j2}`.
///
/// Preconditions: dedicated inputs and outputs, `k` meets condition (a),
/// `(i, j)` is in `k`, and `x_{i2}`, `x_{j2}` share a strongly connected
/// component of the state digraph.
pub fn bisect_feedback(
    sys: &StructuralSystem,
    k: &InformationPattern,
    (i, j): (usize, usize),
    (i2, j2): (usize, usize),
) -> Result<InformationPattern, DesignError> {
    require_identity_io(sys)?;
    sys.check_pattern(k)?;
    let n = sys.n();
    if [i, j, i2, j2].iter().any(|&v| v >= n) {
        return Err(DesignError::IndexOutOfRange { n });
    }
    if !k.contains(i, j) {
        return Err(DesignError::EntryAbsent {
            input: i,
            output: j,
        });
    }
    let state_sccs = scc_decompose(build_state_digraph(sys).graph());
    if !state_sccs.same_scc(i2, j2) {
        return Err(DesignError::NotCoScc {
            first: i2,
            second: j2,
        });
    }
    let closed = build_closed_loop_digraph(sys, k)?;
    if !condition_a_on(&closed).holds {
        return Err(DesignError::ConditionANotMet);
    }
    Ok(k.without_entry(i, j).with_entry(i2, j)?.with_entry(i, j2)?)
}

/// Which pair of new links `split_cycle` introduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitVariant {
    /// `(i_1, i_l)` and `(i_{l+1}, i_k)`: closes `x_{i_1}..x_{i_l}` and
    /// `x_{i_{l+1}}..x_{i_k}` into separate feedback cycles.
    #[default]
    CycleClosing,
    /// `(i_1, i_l)` and `(i_{l+1}, i_l)`; kept for comparison, it does not
    /// close the second sub-cycle in general.
    Literal,
}

/// Splits the feedback cycle `u_{i_1} -> x_{i_1} -> ... -> x_{i_k} -> y_{i_k} -> u_{i_1}`
/// after its `l`-th state (`1 <= l < k`).
///
/// `cycle` holds the states `i_1, ..., i_k`. Preconditions: dedicated inputs
/// and outputs, the state edges along `cycle` and the link `(i_1, i_k)` exist,
/// and the states off the cycle can be covered by disjoint cycles avoiding it,
/// so that the cycle belongs to a witness of condition (b).
pub fn split_cycle(
    sys: &StructuralSystem,
    k: &InformationPattern,
    cycle: &[usize],
    l: usize,
    variant: SplitVariant,
) -> Result<InformationPattern, DesignError> {
    require_identity_io(sys)?;
    sys.check_pattern(k)?;
    let n = sys.n();
    let len = cycle.len();
    if len == 0 {
        return Err(DesignError::InvalidCycle("empty cycle".into()));
    }
    if cycle.iter().any(|&v| v >= n) {
        return Err(DesignError::IndexOutOfRange { n });
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != len {
        return Err(DesignError::InvalidCycle("repeated state".into()));
    }
    if l == 0 || l >= len {
        return Err(DesignError::InvalidPosition {
            position: l,
            length: len,
        });
    }
    for w in cycle.windows(2) {
        if !sys.a().contains(w[1], w[0]) {
            return Err(DesignError::InvalidCycle(format!(
                "no state edge x{} -> x{}",
                w[0] + 1,
                w[1] + 1
            )));
        }
    }
    let (first, last) = (cycle[0], cycle[len - 1]);
    if !k.contains(first, last) {
        return Err(DesignError::InvalidCycle(format!(
            "feedback y{} -> u{} is not in the pattern",
            last + 1,
            first + 1
        )));
    }

    // The rest of the closed loop must still admit a cover of the remaining states.
    let closed = build_closed_loop_digraph(sys, k)?;
    let mut keep = vec![true; closed.graph().vertex_count()];
    for &x in cycle {
        keep[closed.state(x)] = false;
    }
    keep[closed.input(first)] = false;
    keep[closed.output(last)] = false;
    let (rest, old_ids) = closed.graph().induced(&keep);
    let optional: Vec<bool> = old_ids.iter().map(|&v| v >= closed.state_count()).collect();
    if disjoint_cycle_cover(&rest, &optional).is_none() {
        return Err(DesignError::ConditionBNotMet);
    }

    let at = cycle[l - 1];
    let after = cycle[l];
    let second = match variant {
        SplitVariant::CycleClosing => (after, last),
        SplitVariant::Literal => (after, at),
    };
    Ok(k.without_entry(first, last)
        .with_entry(first, at)?
        .with_entry(second.0, second.1)?)
}

/// Condition (a) still holds after `bisect_feedback`, and condition (b) after
/// `split_cycle`; used by tests and the family enumeration.
#[cfg(test)]
pub(crate) fn conditions(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<(bool, bool), DesignError> {
    let closed = build_closed_loop_digraph(sys, k)?;
    Ok((
        condition_a_on(&closed).holds,
        crate::analysis::condition_b_on(&closed).is_some(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::StructuralPattern;

    fn pat(n: usize, one_based: &[(usize, usize)]) -> StructuralPattern {
        StructuralPattern::new(n, n, one_based.iter().map(|&(r, c)| (r - 1, c - 1))).unwrap()
    }

    fn ip(n: usize, one_based: &[(usize, usize)]) -> InformationPattern {
        pat(n, one_based).into()
    }

    /// x1 -> x2 <-> x3 -> x4: the middle states form one component.
    fn bisect_system() -> StructuralSystem {
        StructuralSystem::with_identity_io(pat(4, &[(2, 1), (3, 2), (2, 3), (4, 3)])).unwrap()
    }

    #[test]
    fn bisect_replaces_y4_u1() {
        let sys = bisect_system();
        let k = ip(4, &[(1, 4)]);
        let out = bisect_feedback(&sys, &k, (0, 3), (2, 1)).unwrap();
        assert_eq!(out, ip(4, &[(3, 4), (1, 2)]));
        assert!(conditions(&sys, &out).unwrap().0);
    }

    #[test]
    fn bisect_degenerate_substitution() {
        let sys = StructuralSystem::with_identity_io(pat(2, &[(1, 2), (2, 1)])).unwrap();
        let k = ip(2, &[(1, 2)]);
        assert_eq!(bisect_feedback(&sys, &k, (0, 1), (0, 1)).unwrap(), k);
    }

    #[test]
    fn bisect_preconditions() {
        let sys = bisect_system();
        let k = ip(4, &[(1, 4)]);
        assert_eq!(
            bisect_feedback(&sys, &k, (1, 3), (2, 1)),
            Err(DesignError::EntryAbsent {
                input: 1,
                output: 3
            })
        );
        assert_eq!(
            bisect_feedback(&sys, &k, (0, 3), (0, 3)),
            Err(DesignError::NotCoScc {
                first: 0,
                second: 3
            })
        );
        let weak = ip(4, &[(1, 2)]);
        assert_eq!(
            bisect_feedback(&sys, &weak, (0, 1), (1, 2)),
            Err(DesignError::ConditionANotMet)
        );
        let general = StructuralSystem::new(pat(1, &[]), pat(1, &[]), pat(1, &[(1, 1)])).unwrap();
        assert_eq!(
            bisect_feedback(&general, &ip(1, &[(1, 1)]), (0, 0), (0, 0)),
            Err(DesignError::RequiresIdentityIo)
        );
    }

    fn chain4() -> StructuralSystem {
        StructuralSystem::with_identity_io(pat(4, &[(2, 1), (3, 2), (4, 3)])).unwrap()
    }

    #[test]
    fn split_chain_at_two() {
        let sys = chain4();
        let k = ip(4, &[(1, 4)]);
        let out = split_cycle(&sys, &k, &[0, 1, 2, 3], 2, SplitVariant::CycleClosing).unwrap();
        assert_eq!(out, ip(4, &[(1, 2), (3, 4)]));
        assert!(conditions(&sys, &out).unwrap().1);
    }

    #[test]
    fn split_pair_into_singletons() {
        let sys = StructuralSystem::with_identity_io(pat(2, &[(2, 1)])).unwrap();
        let k = ip(2, &[(1, 2)]);
        let out = split_cycle(&sys, &k, &[0, 1], 1, SplitVariant::CycleClosing).unwrap();
        assert_eq!(out, ip(2, &[(1, 1), (2, 2)]));
    }

    #[test]
    fn split_literal_variant() {
        let sys = chain4();
        let k = ip(4, &[(1, 4)]);
        let out = split_cycle(&sys, &k, &[0, 1, 2, 3], 2, SplitVariant::Literal).unwrap();
        assert_eq!(out, ip(4, &[(1, 2), (3, 2)]));
        // x3, x4 are no longer on any cycle
        assert!(!conditions(&sys, &out).unwrap().1);
    }

    #[test]
    fn split_rejects_bad_input() {
        let sys = chain4();
        let k = ip(4, &[(1, 4)]);
        let cyc = [0, 1, 2, 3];
        assert!(matches!(
            split_cycle(&sys, &k, &cyc, 4, SplitVariant::CycleClosing),
            Err(DesignError::InvalidPosition { .. })
        ));
        assert!(matches!(
            split_cycle(&sys, &k, &cyc, 0, SplitVariant::CycleClosing),
            Err(DesignError::InvalidPosition { .. })
        ));
        assert!(matches!(
            split_cycle(&sys, &k, &[0, 2, 3], 1, SplitVariant::CycleClosing),
            Err(DesignError::InvalidCycle(_))
        ));
        assert!(matches!(
            split_cycle(&sys, &ip(4, &[(1, 3)]), &cyc, 1, SplitVariant::CycleClosing),
            Err(DesignError::InvalidCycle(_))
        ));
        // x4 cannot be covered once the cycle x1..x3 is taken out
        assert_eq!(
            split_cycle(
                &sys,
                &ip(4, &[(1, 3)]),
                &[0, 1, 2],
                1,
                SplitVariant::CycleClosing
            ),
            Err(DesignError::ConditionBNotMet)
        );
    }
}
