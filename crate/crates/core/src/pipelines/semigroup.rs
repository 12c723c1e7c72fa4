//! Membership in the additive semigroup generated by a support.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expo::Expo;
use crate::series::Series;
use crate::weierstrass::DistinguishedPoly;

/// Decides membership in the set of finite nonempty sums of generators.
///
/// Zero generators are ignored, so every remaining generator has positive
/// total degree and the search below is a dynamic program over strictly
/// decreasing degree.
#[derive(Debug, Clone)]
pub struct Semigroup {
    generators: Vec<Expo>,
    // target -> index of a generator g with target - g a member (or target == g)
    memo: HashMap<Expo, Option<usize>>,
}

impl Semigroup {
    pub fn new<I: IntoIterator<Item = Expo>>(generators: I) -> Self {
        let set: BTreeSet<Expo> = generators.into_iter().filter(|e| !e.is_zero()).collect();
        Semigroup {
            generators: set.into_iter().collect(),
            memo: HashMap::new(),
        }
    }

    pub fn generators(&self) -> &[Expo] {
        &self.generators
    }

    fn step(&mut self, target: &Expo) -> Option<usize> {
        if let Some(hit) = self.memo.get(target) {
            return *hit;
        }
        let mut found = None;
        for i in 0..self.generators.len() {
            let g = &self.generators[i];
            if g == target {
                found = Some(i);
                break;
            }
            let Some(rest) = target.checked_sub(g) else {
                continue;
            };
            if rest.is_zero() {
                continue;
            }
            if self.step(&rest).is_some() {
                found = Some(i);
                break;
            }
        }
        self.memo.insert(target.clone(), found);
        found
    }

    /// A list of generators summing to `target`, or `None` if there is none.
    pub fn witness(&mut self, target: &Expo) -> Option<Vec<Expo>> {
        if target.is_zero() {
            return None;
        }
        let mut parts = Vec::new();
        let mut rest = target.clone();
        while !rest.is_zero() {
            let i = self.step(&rest)?;
            let g = self.generators[i].clone();
            rest = rest.checked_sub(&g).expect("memoized step divides target");
            parts.push(g);
        }
        Some(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCheck {
    pub target: Expo,
    pub member: bool,
    pub witness: Option<Vec<Expo>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupReport {
    /// Support of `F`.
    pub generators: Vec<Expo>,
    pub checked: Vec<MembershipCheck>,
    /// Targets are the support of the expanded polynomial up to this degree.
    pub guaranteed_degree: u32,
}

impl SemigroupReport {
    pub fn all_members(&self) -> bool {
        self.checked.iter().all(|c| c.member)
    }

    pub fn non_members(&self) -> impl Iterator<Item = &Expo> + '_ {
        self.checked.iter().filter(|c| !c.member).map(|c| &c.target)
    }
}

/// Checks every exponent of `expand(poly)` (up to its guaranteed degree)
/// for membership in the semigroup generated by the support of `f`.
pub fn semigroup_check(poly: &DistinguishedPoly, f: &Series) -> Result<SemigroupReport> {
    let expanded = poly.expand()?;
    let degree = expanded.guaranteed_degree();
    let mut semigroup = Semigroup::new(f.support());
    let checked = expanded
        .support()
        .into_iter()
        .filter(|e| e.total_degree() <= degree)
        .map(|target| {
            let witness = semigroup.witness(&target);
            MembershipCheck {
                member: witness.is_some(),
                target,
                witness,
            }
        })
        .collect();
    Ok(SemigroupReport {
        generators: semigroup.generators().to_vec(),
        checked,
        guaranteed_degree: degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Expo {
        Expo::new(v.to_vec())
    }

    #[test]
    fn explicit_sum() {
        let mut sg = Semigroup::new([e(&[1, 0]), e(&[0, 2])]);
        assert_eq!(
            sg.witness(&e(&[2, 2])),
            Some(vec![e(&[1, 0]), e(&[1, 0]), e(&[0, 2])])
        );
    }

    #[test]
    fn parity_blocks_membership() {
        let mut sg = Semigroup::new([e(&[1, 0]), e(&[0, 2])]);
        assert_eq!(sg.witness(&e(&[0, 1])), None);
        assert_eq!(sg.witness(&e(&[3, 5])), None);
        assert!(sg.witness(&e(&[3, 6])).is_some());
    }

    #[test]
    fn zero_is_not_a_nonempty_sum() {
        let mut sg = Semigroup::new([e(&[0, 0]), e(&[1, 0])]);
        assert_eq!(sg.generators().len(), 1);
        assert_eq!(sg.witness(&e(&[0, 0])), None);
    }

    #[test]
    fn witnesses_sum_to_target() {
        let mut sg = Semigroup::new([e(&[2, 0, 1]), e(&[0, 3, 0]), e(&[1, 1, 1])]);
        for target in [e(&[3, 4, 2]), e(&[4, 3, 2]), e(&[2, 6, 1])] {
            if let Some(w) = sg.witness(&target) {
                let sum = w.iter().fold(Expo::zero(3), |acc, g| acc.add(g));
                assert_eq!(sum, target);
            }
        }
        assert!(sg.witness(&e(&[3, 4, 2])).is_some());
    }

    #[test]
    fn lemma_example_has_a_non_member() {
        use crate::pipelines::lemma_split_traced;
        use crate::series::ratio;

        // (x1 + x2)^2 + (x1 + x2)^3
        let f = Series::from_terms(
            2,
            10,
            [
                (vec![2, 0], ratio(1, 1)),
                (vec![1, 1], ratio(2, 1)),
                (vec![0, 2], ratio(1, 1)),
                (vec![3, 0], ratio(1, 1)),
                (vec![2, 1], ratio(3, 1)),
                (vec![1, 2], ratio(3, 1)),
                (vec![0, 3], ratio(1, 1)),
            ],
        )
        .unwrap();
        let (_, trace) = lemma_split_traced(&f, 2).unwrap();
        let report = semigroup_check(&trace.even.preparation.poly, &trace.even.series).unwrap();
        // phi0 = (x1^2 + x1^3 - t) / (1 + 3 x1) carries 3 x1 t, and x1 t is
        // not a sum of (2,0,0), (3,0,0), (0,2,0), (1,2,0), (0,0,1)
        let missing: Vec<&Expo> = report.non_members().collect();
        assert_eq!(missing, vec![&e(&[1, 0, 1])]);
        for c in report.checked.iter().filter(|c| c.member) {
            let w = c.witness.as_ref().unwrap();
            let sum = w.iter().fold(Expo::zero(3), |acc, g| acc.add(g));
            assert_eq!(sum, c.target);
        }
    }
}
