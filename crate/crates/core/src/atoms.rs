//! Atoms of the Boolean algebra generated by subgroups, and the finer
//! classes that build skew-symmetric integral connection sets.
//!
//! For `x` of order `m`:
//! * the atom `[x]` is `{k x : gcd(k, m) = 1}`, the generators of `<x>`;
//! * for `3 | m`, the class `<<x>>` is `{k x : gcd(k, m) = 1, k = 1 mod 3}`,
//!   and `[x]` splits as `<<x>>` and `<<-x>>`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::cyclotomic::divisors;
use crate::error::{domain, Result};
use crate::group::{ElementSet, GroupElement, GroupSpec};

/// Units of `Z_m`: `{k : 1 <= k < m, gcd(k, m) = 1}`.
pub fn g_units(m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(domain(format!("unit set needs m >= 2, got {m}")));
    }
    Ok((1..m).filter(|k| k.gcd(&m) == 1).collect())
}

/// Units of `Z_m` congruent to `r` mod 3, for `3 | m`.
pub fn g_units_mod3(m: u64, r: u64) -> Result<Vec<u64>> {
    if m == 0 || m % 3 != 0 {
        return Err(domain(format!("{m} is not a positive multiple of 3")));
    }
    if r != 1 && r != 2 {
        return Err(domain(format!("residue {r} is not 1 or 2")));
    }
    Ok(g_units(m)?.into_iter().filter(|k| k % 3 == r).collect())
}

/// Divisors of `g` not divisible by 3.
pub fn divisors_not3(g: u64) -> Vec<u64> {
    divisors(g).into_iter().filter(|d| d % 3 != 0).collect()
}

/// Divisors of `g` congruent to `r` mod 3.
pub fn divisors_mod3(g: u64, r: u64) -> Result<Vec<u64>> {
    if r != 1 && r != 2 {
        return Err(domain(format!("residue {r} is not 1 or 2")));
    }
    Ok(divisors(g).into_iter().filter(|d| d % 3 == r).collect())
}

/// The atom `[x]`: elements generating the same cyclic subgroup as `x`.
pub fn atom_of(g: &GroupSpec, x: &GroupElement) -> ElementSet {
    if x.is_zero() {
        return BTreeSet::from([x.clone()]);
    }
    let ord = g.order_of(x);
    (1..ord)
        .filter(|k| k.gcd(&ord) == 1)
        .map(|k| g.scale(k as i64, x))
        .collect()
}

/// The class `<<x>>` for `x` of order divisible by 3.
pub fn eclass_of(g: &GroupSpec, x: &GroupElement) -> Result<ElementSet> {
    if !g.in_gamma3(x) {
        return Err(domain(format!("{x} has order not divisible by 3")));
    }
    let ord = g.order_of(x);
    Ok(g_units_mod3(ord, 1)?
        .into_iter()
        .map(|k| g.scale(k as i64, x))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    BooleanAtoms,
    SkewClasses,
}

/// A set written as a disjoint union of atoms or of `<<x>>` classes.
/// Representatives are the lexicographically smallest class members and
/// appear in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDecomposition {
    pub kind: DecompositionKind,
    pub representatives: Vec<GroupElement>,
    pub classes: Vec<ElementSet>,
}

impl AtomDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn union(&self) -> ElementSet {
        self.classes.iter().flatten().cloned().collect()
    }
}

/// Greedy closure: takes the smallest uncovered element, requires its whole
/// class to lie in `set`, and repeats.
fn decompose(
    set: &ElementSet,
    kind: DecompositionKind,
    class_of: impl Fn(&GroupElement) -> Option<ElementSet>,
) -> Option<AtomDecomposition> {
    let mut remaining = set.clone();
    let mut representatives = Vec::new();
    let mut classes = Vec::new();
    while let Some(x) = remaining.first().cloned() {
        let class = class_of(&x)?;
        if !class.is_subset(&remaining) {
            return None;
        }
        for y in &class {
            remaining.remove(y);
        }
        representatives.push(class.first().cloned().expect("classes are nonempty"));
        classes.push(class);
    }
    Some(AtomDecomposition {
        kind,
        representatives,
        classes,
    })
}

/// Decomposition of `set` into atoms, if `set` is a union of atoms.
pub fn in_boolean_algebra(g: &GroupSpec, set: &ElementSet) -> Option<AtomDecomposition> {
    decompose(set, DecompositionKind::BooleanAtoms, |x| Some(atom_of(g, x)))
}

/// Decomposition of `set` into `<<x>>` classes, if `set` is skew-symmetric,
/// lies in the elements of order divisible by 3, and is a union of classes.
pub fn in_skew_family(g: &GroupSpec, set: &ElementSet) -> Option<AtomDecomposition> {
    if set.iter().any(|x| set.contains(&g.neg(x))) {
        return None;
    }
    decompose(set, DecompositionKind::SkewClasses, |x| eclass_of(g, x).ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &GroupSpec, xs: &[&[i64]]) -> ElementSet {
        xs.iter().map(|c| g.element(c).unwrap()).collect()
    }

    fn cyc(g: &GroupSpec, xs: &[i64]) -> ElementSet {
        xs.iter().map(|&c| g.element(&[c]).unwrap()).collect()
    }

    #[test]
    fn unit_sets() {
        assert_eq!(g_units(12).unwrap(), vec![1, 5, 7, 11]);
        assert_eq!(g_units(3).unwrap(), vec![1, 2]);
        assert_eq!(g_units(9).unwrap(), vec![1, 2, 4, 5, 7, 8]);
        assert!(g_units(1).is_err());
        assert_eq!(g_units_mod3(12, 1).unwrap(), vec![1, 7]);
        assert_eq!(g_units_mod3(12, 2).unwrap(), vec![5, 11]);
        assert_eq!(g_units_mod3(9, 1).unwrap(), vec![1, 4, 7]);
        assert!(g_units_mod3(10, 1).is_err());
    }

    #[test]
    fn divisor_sets() {
        assert_eq!(divisors_not3(4), vec![1, 2, 4]);
        assert_eq!(divisors_mod3(4, 1).unwrap(), vec![1, 4]);
        assert_eq!(divisors_mod3(4, 2).unwrap(), vec![2]);
        assert_eq!(divisors_not3(3), vec![1]);
        assert_eq!(divisors_mod3(3, 1).unwrap(), vec![1]);
        assert!(divisors_mod3(3, 2).unwrap().is_empty());
        assert_eq!(divisors_not3(1), vec![1]);
    }

    #[test]
    fn atoms() {
        let z12 = GroupSpec::new(&[12]).unwrap();
        assert_eq!(atom_of(&z12, &z12.element(&[1]).unwrap()), cyc(&z12, &[1, 5, 7, 11]));
        let z9 = GroupSpec::new(&[9]).unwrap();
        assert_eq!(atom_of(&z9, &z9.element(&[3]).unwrap()), cyc(&z9, &[3, 6]));
        let z33 = GroupSpec::new(&[3, 3]).unwrap();
        assert_eq!(
            atom_of(&z33, &z33.element(&[1, 0]).unwrap()),
            set(&z33, &[&[1, 0], &[2, 0]])
        );
        assert_eq!(atom_of(&z33, &z33.zero()), set(&z33, &[&[0, 0]]));
    }

    #[test]
    fn eclasses() {
        let z9 = GroupSpec::new(&[9]).unwrap();
        assert_eq!(eclass_of(&z9, &z9.element(&[1]).unwrap()).unwrap(), cyc(&z9, &[1, 4, 7]));
        let z33 = GroupSpec::new(&[3, 3]).unwrap();
        assert_eq!(
            eclass_of(&z33, &z33.element(&[0, 1]).unwrap()).unwrap(),
            set(&z33, &[&[0, 1]])
        );
        let z12 = GroupSpec::new(&[12]).unwrap();
        assert_eq!(eclass_of(&z12, &z12.element(&[5]).unwrap()).unwrap(), cyc(&z12, &[5, 11]));
        assert_eq!(eclass_of(&z12, &z12.element(&[7]).unwrap()).unwrap(), cyc(&z12, &[1, 7]));
        let z4 = GroupSpec::new(&[4]).unwrap();
        assert!(eclass_of(&z4, &z4.element(&[1]).unwrap()).is_err());
    }

    #[test]
    fn boolean_algebra_membership() {
        let z33 = GroupSpec::new(&[3, 3]).unwrap();
        let d = in_boolean_algebra(&z33, &set(&z33, &[&[1, 0], &[2, 0]])).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.representatives[0], z33.element(&[1, 0]).unwrap());
        let z12 = GroupSpec::new(&[12]).unwrap();
        assert!(in_boolean_algebra(&z12, &cyc(&z12, &[1, 5])).is_none());
        assert!(in_boolean_algebra(&z12, &ElementSet::new()).unwrap().is_empty());
    }

    #[test]
    fn skew_family_membership() {
        let z9 = GroupSpec::new(&[9]).unwrap();
        let d = in_skew_family(&z9, &cyc(&z9, &[1, 4, 7])).unwrap();
        assert_eq!(d.kind, DecompositionKind::SkewClasses);
        assert_eq!(d.len(), 1);
        assert!(in_skew_family(&z9, &cyc(&z9, &[1, 4, 7, 2, 5, 8])).is_none());
        let z4 = GroupSpec::new(&[4]).unwrap();
        assert!(in_skew_family(&z4, &cyc(&z4, &[1])).is_none());
        assert!(in_skew_family(&z4, &ElementSet::new()).is_some());
        let z12 = GroupSpec::new(&[12]).unwrap();
        assert!(in_skew_family(&z12, &cyc(&z12, &[1, 5])).is_none());
    }
}
