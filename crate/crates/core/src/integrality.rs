//! HS-integrality and Eisenstein integrality of mixed Cayley graphs.
//!
//! Two independent routes decide every verdict:
//!
//! * set-theoretic: the symmetric part of `S` must be a union of atoms and
//!   the skew part a skew-symmetric union of `<<x>>` classes;
//! * spectral: every exact eigenvalue is tested for membership in `Z`
//!   (Hermitian matrix of the second kind) or in `Z[w_3]` (0/1 adjacency).
//!
//! [`classify`] runs both and records whether they agree. [`verify_theorems`]
//! sweeps all (or a seeded sample of) connection sets of a group, and also
//! checks the character-sum certificates `Z_x`, `C_x`, `T_x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{atom_of, eclass_of, g_units_mod3, in_boolean_algebra, in_skew_family, AtomDecomposition};
use crate::cayley::{
    a_eigenvalue, exact_spectrum, format_set, hs_eigenvalue, simple_part_eigenvalue, skew_part_eigenvalue,
    ConnectionSet, ExactSpectrum, SpectrumKind,
};
use crate::cyclotomic::CycloNum;
use crate::error::{invalid, Error, Result};
use crate::group::{ElementSet, GroupElement, GroupSpec};
use crate::scalar::{is_even, ExactScalar};

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// Character sums attached to `x` (order divisible by 3) and a character
/// `alpha`:
///
/// * `z = sum_{s in <<x>>} (w_6 psi(s) + w_6^5 psi(-s))`
/// * `c = sum_{s in [x]} psi(s)`
/// * `t = sum_{s in <<x>>} i sqrt3 (psi(s) - psi(-s))`
///
/// with `2z = c + t`, `3 | t`, and `c`, `t / 3` of equal parity.
#[derive(Clone, Debug)]
pub struct CertificateValues<T> {
    pub x: GroupElement,
    pub alpha: GroupElement,
    pub z: CycloNum<T>,
    pub c: CycloNum<T>,
    pub t: CycloNum<T>,
    pub t_over_3: i64,
    pub parity_ok: bool,
}

/// `i sqrt 3 = w_6 - w_6^5` in `Q(w_N)`.
pub fn i_sqrt3<T: ExactScalar>(order: u64) -> CycloNum<T> {
    let sixth = (order / 6) as i64;
    CycloNum::root(order, sixth).expect("positive order") - CycloNum::root(order, 5 * sixth).expect("positive order")
}

fn psi<T: ExactScalar>(g: &GroupSpec, alpha: &GroupElement, s: &GroupElement) -> CycloNum<T> {
    CycloNum::root(g.root_order(), g.character_exponent(alpha, s) as i64).expect("positive order")
}

/// `sum_{s in set} psi_alpha(s)`.
pub fn character_sum<T: ExactScalar>(g: &GroupSpec, set: &ElementSet, alpha: &GroupElement) -> CycloNum<T> {
    set.iter()
        .fold(CycloNum::zero(g.root_order()), |acc, s| &acc + &psi(g, alpha, s))
}

/// `i sqrt3 * sum_{s in set} (psi(s) - psi(-s))`.
fn skew_difference_sum<T: ExactScalar>(g: &GroupSpec, set: &ElementSet, alpha: &GroupElement) -> CycloNum<T> {
    let diff = set.iter().fold(CycloNum::zero(g.root_order()), |acc, s| {
        &(&acc + &psi(g, alpha, s)) - &psi(g, alpha, &g.neg(s))
    });
    &i_sqrt3(g.root_order()) * &diff
}

pub fn certificate<T: ExactScalar>(
    g: &GroupSpec,
    x: &GroupElement,
    alpha: &GroupElement,
) -> Result<CertificateValues<T>> {
    let eclass = eclass_of(g, x)?;
    let n = g.root_order();
    let w6 = CycloNum::<T>::root(n, (n / 6) as i64)?;
    let w6_5 = w6.conj();
    let z = eclass
        .iter()
        .fold(CycloNum::zero(n), |acc, s| {
            &(&acc + &(&w6 * &psi(g, alpha, s))) + &(&w6_5 * &psi(g, alpha, &g.neg(s)))
        })
        .reduce();
    let c = character_sum(g, &atom_of(g, x), alpha).reduce();
    let t = skew_difference_sum(g, &eclass, alpha).reduce();

    let violation = |what: &str| Error::Consistency(format!("x = {x}, alpha = {alpha}: {what}"));
    let z_int = z.as_integer().ok_or_else(|| violation("Z is not an integer"))?;
    let c_int = c.as_integer().ok_or_else(|| violation("C is not an integer"))?;
    let t_int = t.as_integer().ok_or_else(|| violation("T is not an integer"))?;
    if t_int % 3 != 0 {
        return Err(violation("T is not divisible by 3"));
    }
    if 2 * z_int != c_int + t_int {
        return Err(violation("2Z != C + T"));
    }
    let t_over_3 = t_int / 3;
    let parity_ok = is_even(&T::from_int(c_int - t_over_3));
    if !parity_ok {
        return Err(violation("C and T/3 differ in parity"));
    }
    Ok(CertificateValues {
        x: x.clone(),
        alpha: alpha.clone(),
        z,
        c,
        t,
        t_over_3,
        parity_ok,
    })
}

/// Checks how `T_x(alpha)` collapses, with `ord(x) = 3^t m`, `3 !| m`:
///
/// * `t = 1`: `T = 0` when `psi(m x) = 1`, otherwise `T = -3 C_{3x}` or
///   `+3 C_{3x}` according to `m mod 3` and which primitive cube root of
///   unity `psi(m x)` is;
/// * `t >= 2`: `T = 0` when `psi((ord/3) x) != 1`, otherwise
///   `T = 3 i sqrt3 sum_{r in G^1_{ord/3,3}} (psi(r x) - psi(-r x))`.
pub fn check_t_case_law<T: ExactScalar>(g: &GroupSpec, x: &GroupElement, alpha: &GroupElement) -> Result<()> {
    let cert = certificate::<T>(g, x, alpha)?;
    let ord = g.order_of(x);
    let n = g.root_order();
    let mut three_power = 0;
    let mut m = ord;
    while m % 3 == 0 {
        m /= 3;
        three_power += 1;
    }
    let violation = |what: String| Error::Consistency(format!("x = {x}, alpha = {alpha}: {what}"));
    let t = &cert.t;
    if three_power == 1 {
        let e = g.character_exponent(alpha, &g.scale(m as i64, x));
        if e == 0 {
            if !t.is_zero() {
                return Err(violation(format!("expected T = 0, got {t}")));
            }
            return Ok(());
        }
        let c3 = character_sum::<T>(g, &atom_of(g, &g.scale(3, x)), alpha);
        // Im psi(m x) is +sqrt3/2 for w_3 and -sqrt3/2 for w_3^2.
        let im_sign: i64 = if e == n / 3 { 1 } else { -1 };
        let m_sign: i64 = if m % 3 == 1 { -1 } else { 1 };
        let expect = c3.scale(&T::from_int(3 * im_sign * m_sign));
        if *t != expect {
            return Err(violation(format!("expected T = {expect}, got {t}")));
        }
    } else {
        let e = g.character_exponent(alpha, &g.scale((ord / 3) as i64, x));
        if e != 0 {
            if !t.is_zero() {
                return Err(violation(format!("expected T = 0, got {t}")));
            }
            return Ok(());
        }
        let inner: ElementSet = g_units_mod3(ord / 3, 1)?
            .into_iter()
            .map(|r| g.scale(r as i64, x))
            .collect();
        let expect = skew_difference_sum::<T>(g, &inner, alpha).scale(&T::from_int(3));
        if *t != expect {
            return Err(violation(format!("expected T = {expect}, got {t}")));
        }
    }
    Ok(())
}

/// Runs [`certificate`] and [`check_t_case_law`] for every `x` of order
/// divisible by 3 and every `alpha`. Returns the number of pairs checked.
pub fn check_all_certificates<T: ExactScalar>(g: &GroupSpec) -> std::result::Result<u64, Vec<Error>> {
    let pairs: Vec<(GroupElement, GroupElement)> = g
        .gamma3()
        .into_iter()
        .flat_map(|x| g.elements().map(move |a| (x.clone(), a)))
        .collect();
    let errors: Vec<Error> = pairs
        .par_iter()
        .filter_map(|(x, a)| check_t_case_law::<T>(g, x, a).err())
        .collect();
    if errors.is_empty() {
        Ok(pairs.len() as u64)
    } else {
        Err(errors)
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ClassificationReport<T> {
    pub group: GroupSpec,
    pub set: ConnectionSet,
    pub sym_decomposition: Option<AtomDecomposition>,
    pub skew_decomposition: Option<AtomDecomposition>,
    pub hs_verdict_characterization: bool,
    pub hs_verdict_spectral: bool,
    pub eisenstein_verdict_spectral: bool,
    pub hs_spectrum: ExactSpectrum<T>,
    pub a_spectrum: ExactSpectrum<T>,
    pub consistency: bool,
}

impl<T> ClassificationReport<T> {
    pub fn ensure_consistent(&self) -> Result<()> {
        if self.consistency {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "Cay({}, {{{}}}): characterization {}, HS spectral {}, Eisenstein spectral {}",
                self.group,
                format_set(self.set.members()),
                self.hs_verdict_characterization,
                self.hs_verdict_spectral,
                self.eisenstein_verdict_spectral
            )))
        }
    }
}

pub fn classify<T: ExactScalar>(g: &GroupSpec, set: ElementSet) -> Result<ClassificationReport<T>> {
    let cs = ConnectionSet::new(g, set)?;
    let sym_decomposition = in_boolean_algebra(g, cs.sym_part());
    let skew_decomposition = in_skew_family(g, cs.skew_part());
    let hs_verdict_characterization = sym_decomposition.is_some() && skew_decomposition.is_some();
    let hs_spectrum = exact_spectrum::<T>(&cs, SpectrumKind::Hs);
    let a_spectrum = exact_spectrum::<T>(&cs, SpectrumKind::Adjacency);
    let hs_verdict_spectral = hs_spectrum.all_integers();
    let eisenstein_verdict_spectral = a_spectrum.all_eisenstein();
    Ok(ClassificationReport {
        group: g.clone(),
        set: cs,
        sym_decomposition,
        skew_decomposition,
        hs_verdict_characterization,
        hs_verdict_spectral,
        eisenstein_verdict_spectral,
        hs_spectrum,
        a_spectrum,
        consistency: hs_verdict_characterization == hs_verdict_spectral
            && hs_verdict_spectral == eisenstein_verdict_spectral,
    })
}

/// Verdicts computed without keeping the spectra; used by sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub characterization: bool,
    pub hs_spectral: bool,
    pub eisenstein_spectral: bool,
    /// `Cay(G, S \ S-bar)` has an integral adjacency spectrum.
    pub sym_part_integral: bool,
    /// `Cay(G, S-bar)` has an integral Hermitian spectrum.
    pub skew_part_hs_integral: bool,
}

pub fn verdicts<T: ExactScalar>(cs: &ConnectionSet) -> Verdicts {
    let g = cs.group();
    let characterization =
        in_boolean_algebra(g, cs.sym_part()).is_some() && in_skew_family(g, cs.skew_part()).is_some();
    let mut v = Verdicts {
        characterization,
        hs_spectral: true,
        eisenstein_spectral: true,
        sym_part_integral: true,
        skew_part_hs_integral: true,
    };
    for alpha in g.elements() {
        v.hs_spectral &= hs_eigenvalue::<T>(cs, &alpha).as_integer().is_some();
        v.eisenstein_spectral &= a_eigenvalue::<T>(cs, &alpha).as_eisenstein().is_some();
        v.sym_part_integral &= simple_part_eigenvalue::<T>(cs, &alpha).as_integer().is_some();
        v.skew_part_hs_integral &= skew_part_eigenvalue::<T>(cs, &alpha).as_integer().is_some();
    }
    v
}

/// `(f_alpha, g_alpha)` with `f = sum_{sym} psi(s)` and
/// `g = sum_{skew} (w psi(s) + conj(w) psi(-s))`, `w = (1 + w_6^5) / 3`.
pub fn f_g_values<T: ExactScalar>(cs: &ConnectionSet, alpha: &GroupElement) -> (CycloNum<T>, CycloNum<T>) {
    let g = cs.group();
    let n = g.root_order();
    let third = T::from_ratio(1, 3);
    let w = (CycloNum::one(n) + CycloNum::root(n, 5 * (n / 6) as i64).expect("positive order")).scale(&third);
    let w_bar = w.conj();
    let f = character_sum(g, cs.sym_part(), alpha).reduce();
    let gv = cs
        .skew_part()
        .iter()
        .fold(CycloNum::zero(n), |acc, s| {
            &(&acc + &(&w * &psi(g, alpha, s))) + &(&w_bar * &psi(g, alpha, &g.neg(s)))
        })
        .reduce();
    (f, gv)
}

// ---------------------------------------------------------------------------
// Constructive enumeration
// ---------------------------------------------------------------------------

/// Per-atom options: absent, the whole atom (symmetric), or for atoms inside
/// the elements of order divisible by 3, one of its two `<<x>>` halves.
#[derive(Clone, Debug)]
struct AtomSlot {
    atom: ElementSet,
    halves: Option<(ElementSet, ElementSet)>,
}

impl AtomSlot {
    fn arity(&self) -> u64 {
        if self.halves.is_some() {
            4
        } else {
            2
        }
    }
}

/// Iterator over every HS-integral connection set of a group, built from
/// atom choices. Stops after `budget` sets and then reports truncation.
#[derive(Clone, Debug)]
pub struct HsIntegralSets {
    group: GroupSpec,
    slots: Vec<AtomSlot>,
    total: u128,
    limit: u128,
    next: u128,
}

impl HsIntegralSets {
    /// Number of HS-integral connection sets of the group.
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn truncated(&self) -> bool {
        self.total > self.limit
    }

    fn decode(&self, mut index: u128) -> ElementSet {
        let mut set = ElementSet::new();
        for slot in self.slots.iter().rev() {
            let arity = slot.arity() as u128;
            let digit = index % arity;
            index /= arity;
            match (digit, &slot.halves) {
                (0, _) => {}
                (1, _) => set.extend(slot.atom.iter().cloned()),
                (2, Some((plus, _))) => set.extend(plus.iter().cloned()),
                (3, Some((_, minus))) => set.extend(minus.iter().cloned()),
                _ => unreachable!("digit below arity"),
            }
        }
        set
    }
}

impl Iterator for HsIntegralSets {
    type Item = ConnectionSet;

    fn next(&mut self) -> Option<ConnectionSet> {
        if self.next >= self.limit.min(self.total) {
            return None;
        }
        let set = self.decode(self.next);
        self.next += 1;
        Some(ConnectionSet::new(&self.group, set).expect("atoms exclude the identity"))
    }
}

/// Atoms of the nonzero elements, in order of their smallest member.
pub fn nonzero_atoms(g: &GroupSpec) -> Vec<ElementSet> {
    let mut covered = ElementSet::new();
    let mut atoms = Vec::new();
    for x in g.elements().filter(|x| !x.is_zero()) {
        if covered.contains(&x) {
            continue;
        }
        let atom = atom_of(g, &x);
        covered.extend(atom.iter().cloned());
        atoms.push(atom);
    }
    atoms
}

pub fn enumerate_hs_integral(g: &GroupSpec, budget: u64) -> HsIntegralSets {
    let slots: Vec<AtomSlot> = nonzero_atoms(g)
        .into_iter()
        .map(|atom| {
            let rep = atom.first().cloned().expect("atoms are nonempty");
            let halves = eclass_of(g, &rep)
                .ok()
                .map(|plus| (plus, eclass_of(g, &g.neg(&rep)).expect("-x has the order of x")));
            AtomSlot { atom, halves }
        })
        .collect();
    let total = slots
        .iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s.arity() as u128));
    HsIntegralSets {
        group: g.clone(),
        slots,
        total,
        limit: budget as u128,
        next: 0,
    }
}

// ---------------------------------------------------------------------------
// Theorem sweeps
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Maximum number of subsets examined; sampling kicks in above it.
    pub budget: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: 4096,
            seed: 0,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub set: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub subsets_tested: u64,
    pub hs_integral_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub exhaustive: bool,
    pub certificate_pairs_checked: u64,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn subset_from_bits(elems: &[GroupElement], bit: impl Fn(usize) -> bool) -> ElementSet {
    elems
        .iter()
        .enumerate()
        .filter(|(i, _)| bit(*i))
        .map(|(_, x)| x.clone())
        .collect()
}

fn check_subset<T: ExactScalar>(g: &GroupSpec, set: ElementSet) -> (bool, Vec<Counterexample>) {
    let cs = ConnectionSet::new(g, set).expect("subsets of nonzero elements");
    let v = verdicts::<T>(&cs);
    let mut found = Vec::new();
    let mut flag = |check: &str, ok: bool| {
        if !ok {
            found.push(Counterexample {
                set: cs.to_spec_string(),
                check: check.to_string(),
                detail: format!("{v:?}"),
            });
        }
    };
    flag("spectral_vs_characterization", v.hs_spectral == v.characterization);
    flag("eisenstein_vs_hs", v.eisenstein_spectral == v.hs_spectral);
    flag(
        "split_lemma",
        v.hs_spectral == (v.sym_part_integral && v.skew_part_hs_integral),
    );
    (v.hs_spectral, found)
}

fn run_sweep<T: ExactScalar>(g: &GroupSpec, opts: &VerifyOptions) -> VerificationReport {
    let elems: Vec<GroupElement> = g.elements().filter(|x| !x.is_zero()).collect();
    let k = elems.len();
    let exhaustive = k < 64 && (1u64 << k) <= opts.budget;
    let count = if exhaustive { 1u64 << k } else { opts.budget };

    let outcomes: Vec<(bool, Vec<Counterexample>)> = (0..count)
        .into_par_iter()
        .map(|idx| {
            let set = if exhaustive {
                subset_from_bits(&elems, |i| idx >> i & 1 == 1)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(idx);
                let bits: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
                subset_from_bits(&elems, |i| bits[i])
            };
            check_subset::<T>(g, set)
        })
        .collect();

    let mut report = VerificationReport {
        group: g.to_string(),
        subsets_tested: count,
        hs_integral_count: 0,
        counterexamples: Vec::new(),
        seed: opts.seed,
        exhaustive,
        certificate_pairs_checked: 0,
    };
    for (integral, cex) in outcomes {
        report.hs_integral_count += integral as u64;
        report.counterexamples.extend(cex);
    }
    match check_all_certificates::<T>(g) {
        Ok(n) => report.certificate_pairs_checked = n,
        Err(errors) => report.counterexamples.extend(errors.into_iter().map(|e| Counterexample {
            set: String::new(),
            check: "certificate".into(),
            detail: e.to_string(),
        })),
    }
    report
}

/// Sweeps all subsets of the nonzero elements (or `budget` seeded random
/// subsets when there are more) and cross-checks the verdict routes:
/// spectral vs set-theoretic, Eisenstein vs Hermitian, and the split into
/// symmetric and skew parts. Also runs the certificate suite once.
pub fn verify_theorems<T: ExactScalar>(g: &GroupSpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    match opts.threads {
        None => Ok(run_sweep::<T>(g, opts)),
        Some(0) => Err(invalid("thread count must be positive")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(|| run_sweep::<T>(g, opts)))
        }
    }
}

/// Checks that `sum_{s in S} psi(s) = f + g + w_3 (g_alpha - g_{-alpha})`.
pub fn adjacency_decomposition_holds<T: ExactScalar>(cs: &ConnectionSet, alpha: &GroupElement) -> bool {
    let g = cs.group();
    let n = g.root_order();
    let (f, gv) = f_g_values::<T>(cs, alpha);
    let (_, gv_neg) = f_g_values::<T>(cs, &g.neg(alpha));
    let w3 = CycloNum::root(n, (n / 3) as i64).expect("positive order");
    let rhs = &(&f + &gv) + &(&w3 * &(&gv - &gv_neg));
    (&a_eigenvalue::<T>(cs, alpha) - &rhs).is_zero()
}
