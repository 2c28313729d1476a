//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}` and their characters.
//!
//! Characters are never evaluated as complex numbers here. `psi_alpha(x)` is
//! returned as an exponent `e` with `psi_alpha(x) = w_N^e`, where `N` is the
//! group's root order `lcm(6, exponent)`. That keeps every character value,
//! and every product with a sixth root of unity, inside one cyclotomic field.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{domain, invalid, Error, Result};

/// Default cap on the group order accepted by [`GroupSpec::new`].
pub const DEFAULT_MAX_ORDER: u64 = 4096;

/// Element sets are kept ordered so every listing is lexicographic.
pub type ElementSet = BTreeSet<GroupElement>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    order: u64,
    exponent: u64,
    root_order: u64,
}

/// A coordinate vector, each coordinate reduced modulo its cyclic factor.
///
/// The derived ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        Self::with_max_order(moduli, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(moduli: &[u64], max_order: u64) -> Result<Self> {
        if moduli.is_empty() {
            return Err(invalid("group needs at least one cyclic factor"));
        }
        if let Some(j) = moduli.iter().position(|&n| n == 0) {
            return Err(invalid(format!("modulus {j} is zero")));
        }
        let mut order: u64 = 1;
        for &n in moduli {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= max_order)
                .ok_or_else(|| invalid(format!("group order exceeds the cap of {max_order}")))?;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        Ok(GroupSpec {
            moduli: moduli.to_vec(),
            order,
            exponent,
            root_order: exponent.lcm(&6),
        })
    }

    /// Parses `"n1xn2x...xnk"`, e.g. `"3x3"` or `"12"`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::parse_with_max_order(spec, DEFAULT_MAX_ORDER)
    }

    pub fn parse_with_max_order(spec: &str, max_order: u64) -> Result<Self> {
        let mut moduli = Vec::new();
        let mut offset = 0;
        for part in spec.split(['x', 'X']) {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            if trimmed.is_empty() {
                return Err(Error::Parse {
                    position: offset + lead,
                    message: "expected a modulus".into(),
                });
            }
            if let Some((i, ch)) = trimmed.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
                return Err(Error::Parse {
                    position: offset + lead + i,
                    message: format!("unexpected character {ch:?}"),
                });
            }
            let n: u64 = trimmed.parse().map_err(|_| Error::Parse {
                position: offset + lead,
                message: "modulus out of range".into(),
            })?;
            moduli.push(n);
            offset += part.len() + 1;
        }
        Self::with_max_order(&moduli, max_order)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `lcm` of the moduli.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `N = lcm(6, exponent)`: all character values are powers of `w_N`.
    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(invalid(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    /// Like [`element`](Self::element) but rejects coordinates outside `[0, n_j)`.
    pub fn element_strict(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() == self.rank() {
            for (j, (&c, &n)) in coords.iter().zip(&self.moduli).enumerate() {
                if c < 0 || c as u64 >= n {
                    return Err(invalid(format!("coordinate {j} = {c} is outside [0, {n})")));
                }
            }
        }
        self.element(coords)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.rank() && x.coords.iter().zip(&self.moduli).all(|(&c, &n)| c < n)
    }

    /// Position of `x` in lexicographic order (last coordinate fastest).
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&c, &n)| acc * n + c) as usize
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (c, &n) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = index as u64 % n;
            index /= n as usize;
        }
        GroupElement { coords }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    /// `k * x`, with `k` allowed to be negative.
    pub fn scale(&self, k: i64, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &n)| {
                    let n = n as i128;
                    ((k as i128 * a as i128).rem_euclid(n)) as u64
                })
                .collect(),
        }
    }

    pub fn neg_set(&self, set: &ElementSet) -> ElementSet {
        set.iter().map(|x| self.neg(x)).collect()
    }

    /// Least `m >= 1` with `m * x = 0`.
    pub fn order_of(&self, x: &GroupElement) -> u64 {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&c, &n)| acc.lcm(&(n / n.gcd(&c))))
    }

    pub fn in_gamma3(&self, x: &GroupElement) -> bool {
        self.order_of(x) % 3 == 0
    }

    /// Elements whose order is divisible by 3.
    pub fn gamma3(&self) -> ElementSet {
        self.elements().filter(|x| self.in_gamma3(x)).collect()
    }

    /// `{k x : 1 <= k <= ord(x), k = r mod 3}` for `x` of order divisible by 3.
    pub fn m_class(&self, x: &GroupElement, r: u64) -> Result<ElementSet> {
        if r > 2 {
            return Err(domain(format!("residue {r} is not in {{0,1,2}}")));
        }
        if !self.in_gamma3(x) {
            return Err(domain(format!("{x} has order not divisible by 3")));
        }
        let ord = self.order_of(x);
        Ok((1..=ord)
            .filter(|k| k % 3 == r)
            .map(|k| self.scale(k as i64, x))
            .collect())
    }

    /// Exponent `e` in `[0, N)` with `psi_alpha(x) = w_N^e`.
    pub fn character_exponent(&self, alpha: &GroupElement, x: &GroupElement) -> u64 {
        let big_n = self.root_order as u128;
        let e = alpha
            .coords
            .iter()
            .zip(&x.coords)
            .zip(&self.moduli)
            .fold(0u128, |acc, ((&a, &b), &n)| {
                (acc + (big_n / n as u128) * ((a as u128 * b as u128) % n as u128)) % big_n
            });
        e as u64
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}
