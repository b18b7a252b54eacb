//! Finite Boolean algebras over named atoms, plus small poset helpers shared
//! by the other modules.
//!
//! An element is a bitset of atoms. Every element carries the identity token
//! of its algebra so that mixing elements of two algebras is caught instead
//! of silently reinterpreted.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ATOMS: usize = 16;
/// Enumeration routines (up-sets, subalgebras) refuse larger algebras.
pub const MAX_ENUM_ATOMS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolAlg {
    names: Vec<String>,
    token: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BElem {
    bits: u32,
    token: u64,
}

impl BElem {
    pub fn bits(self) -> u32 {
        self.bits
    }
}

fn default_atom_name(i: usize) -> String {
    const LETTERS: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    LETTERS.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("a{i}"))
}

// FNV-1a over the atom names; identical atom lists give the same algebra.
fn token_for(names: &[String]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for name in names {
        for b in name.bytes().chain(std::iter::once(0xff)) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h ^ names.len() as u64
}

impl BoolAlg {
    /// Powerset algebra of `n_atoms` atoms; names default to `p, q, r, ...`.
    pub fn new(n_atoms: usize, atom_names: Option<Vec<String>>) -> Result<Self> {
        if n_atoms > MAX_ATOMS {
            return Err(Error::TooManyAtoms { got: n_atoms, max: MAX_ATOMS });
        }
        let names = match atom_names {
            Some(names) => {
                if names.len() != n_atoms {
                    return Err(Error::AtomNameCount { names: names.len(), atoms: n_atoms });
                }
                names
            }
            None => (0..n_atoms).map(default_atom_name).collect(),
        };
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        let token = token_for(&names);
        Ok(BoolAlg { names, token })
    }

    pub fn with_atoms<S: AsRef<str>>(atoms: &[S]) -> Result<Self> {
        let names = atoms.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
        Self::new(names.len(), Some(names))
    }

    pub fn n_atoms(&self) -> usize {
        self.names.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.names
    }

    pub fn full_mask(&self) -> u32 {
        if self.names.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.names.len()) - 1
        }
    }

    pub fn size(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn elem(&self, bits: u32) -> Result<BElem> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::NotAnElement(bits));
        }
        Ok(BElem { bits, token: self.token })
    }

    pub(crate) fn elem_unchecked(&self, bits: u32) -> BElem {
        debug_assert!(bits & !self.full_mask() == 0);
        BElem { bits, token: self.token }
    }

    pub fn bottom(&self) -> BElem {
        self.elem_unchecked(0)
    }

    pub fn top(&self) -> BElem {
        self.elem_unchecked(self.full_mask())
    }

    pub fn atom(&self, i: usize) -> Result<BElem> {
        if i >= self.n_atoms() {
            return Err(Error::NotAnElement(1u32.checked_shl(i as u32).unwrap_or(0)));
        }
        Ok(self.elem_unchecked(1 << i))
    }

    pub fn atom_named(&self, name: &str) -> Result<BElem> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.elem_unchecked(1 << i))
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    /// Element whose atoms are exactly the named ones.
    pub fn from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<BElem> {
        let mut bits = 0;
        for n in names {
            bits |= self.atom_named(n.as_ref())?.bits;
        }
        Ok(self.elem_unchecked(bits))
    }

    pub fn names_of(&self, e: BElem) -> Result<Vec<String>> {
        self.own(e)?;
        Ok((0..self.n_atoms()).filter(|i| e.bits >> i & 1 == 1).map(|i| self.names[i].clone()).collect())
    }

    /// All `2^n` elements in increasing bitset order.
    pub fn elements(&self) -> impl Iterator<Item = BElem> + '_ {
        (0..=self.full_mask()).map(move |b| self.elem_unchecked(b))
    }

    pub fn contains(&self, e: BElem) -> bool {
        e.token == self.token && e.bits & !self.full_mask() == 0
    }

    fn own(&self, e: BElem) -> Result<()> {
        if e.token != self.token {
            Err(Error::ForeignElement)
        } else if e.bits & !self.full_mask() != 0 {
            Err(Error::NotAnElement(e.bits))
        } else {
            Ok(())
        }
    }

    fn own2(&self, a: BElem, b: BElem) -> Result<()> {
        self.own(a)?;
        self.own(b)
    }

    pub fn leq(&self, a: BElem, b: BElem) -> Result<bool> {
        self.own2(a, b)?;
        Ok(a.bits & !b.bits == 0)
    }

    pub fn meet(&self, a: BElem, b: BElem) -> Result<BElem> {
        self.own2(a, b)?;
        Ok(self.elem_unchecked(a.bits & b.bits))
    }

    pub fn join(&self, a: BElem, b: BElem) -> Result<BElem> {
        self.own2(a, b)?;
        Ok(self.elem_unchecked(a.bits | b.bits))
    }

    pub fn complement(&self, a: BElem) -> Result<BElem> {
        self.own(a)?;
        Ok(self.elem_unchecked(!a.bits & self.full_mask()))
    }

    /// Relative pseudo-complement, `¬a ∨ b`.
    pub fn implies(&self, a: BElem, b: BElem) -> Result<BElem> {
        self.own2(a, b)?;
        Ok(self.elem_unchecked(imp_bits(a.bits, b.bits, self.full_mask())))
    }

    /// `{p,q}` style rendering; the empty element prints as `{}`.
    pub fn show(&self, e: BElem) -> String {
        let names =
            (0..self.n_atoms()).filter(|i| e.bits >> i & 1 == 1).map(|i| self.names[i].as_str()).collect::<Vec<_>>();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Display for BoolAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{{{}}}", self.names.join(","))
    }
}

#[inline]
pub(crate) fn imp_bits(a: u32, b: u32, full: u32) -> u32 {
    (!a & full) | b
}

fn check_enum_guard(b: &BoolAlg) -> Result<()> {
    if b.n_atoms() > MAX_ENUM_ATOMS {
        return Err(Error::SizeCap { what: "enumeration atom count", got: b.n_atoms(), max: MAX_ENUM_ATOMS });
    }
    Ok(())
}

/// All upward-closed subsets of `b` that contain 1, each sorted by bitset.
/// Output order is by increasing membership mask over the carrier.
pub fn enumerate_upsets(b: &BoolAlg) -> Result<Vec<Vec<BElem>>> {
    check_enum_guard(b)?;
    let size = b.size();
    let full = b.full_mask();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << size) {
        if mask >> full & 1 == 0 {
            continue;
        }
        let up_closed =
            (0..size as u32).all(|x| mask >> x & 1 == 0 || (0..size as u32).all(|y| x & !y != 0 || mask >> y & 1 == 1));
        if up_closed {
            out.push(members_of_mask(b, mask));
        }
    }
    Ok(out)
}

/// All subsets of `b` containing 1 and closed under `→` and `∨`, i.e. every
/// implication subalgebra. Up-sets are among them, but so is e.g. `{0, 1}`.
pub fn enumerate_subalgebras(b: &BoolAlg) -> Result<Vec<Vec<BElem>>> {
    check_enum_guard(b)?;
    let size = b.size();
    let full = b.full_mask();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << size) {
        if mask >> full & 1 == 0 {
            continue;
        }
        let closed = (0..size as u32).filter(|x| mask >> x & 1 == 1).all(|x| {
            (0..size as u32)
                .filter(|y| mask >> y & 1 == 1)
                .all(|y| mask >> (x | y) & 1 == 1 && mask >> imp_bits(x, y, full) & 1 == 1)
        });
        if closed {
            out.push(members_of_mask(b, mask));
        }
    }
    Ok(out)
}

fn members_of_mask(b: &BoolAlg, mask: u64) -> Vec<BElem> {
    (0..b.size() as u32).filter(|x| mask >> x & 1 == 1).map(|x| b.elem_unchecked(x)).collect()
}

/// Cover pairs `(lower, upper)` of a finite order given by `leq`.
pub fn hasse_covers(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !leq(x, y) {
                continue;
            }
            let direct = (0..n).all(|z| z == x || z == y || !(leq(x, z) && leq(z, y)));
            if direct {
                covers.push((x, y));
            }
        }
    }
    covers
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_algebra_has_zero_equal_one() {
        let b = BoolAlg::new(0, None).unwrap();
        assert_eq!(b.size(), 1);
        assert_eq!(b.bottom(), b.top());
    }

    #[test]
    fn carrier_sizes() {
        assert_eq!(BoolAlg::new(2, None).unwrap().elements().count(), 4);
        let b3 = BoolAlg::new(3, None).unwrap();
        assert_eq!(b3.elements().count(), 8);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let m = b3.meet(b3.atom(i).unwrap(), b3.atom(j).unwrap()).unwrap();
                    assert_eq!(m, b3.bottom());
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(BoolAlg::new(17, None), Err(Error::TooManyAtoms { .. })));
        assert!(matches!(BoolAlg::with_atoms(&["p", "p"]), Err(Error::DuplicateAtom(_))));
        assert!(matches!(BoolAlg::new(2, Some(vec!["p".into()])), Err(Error::AtomNameCount { .. })));
    }

    #[test]
    fn implication_examples() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let p = b.atom_named("p").unwrap();
        let q = b.atom_named("q").unwrap();
        assert_eq!(b.implies(p, p).unwrap(), b.top());
        assert_eq!(b.implies(p, b.bottom()).unwrap(), q);
        let pq = b.join(p, q).unwrap();
        assert_eq!(b.meet(pq, q).unwrap(), q);
    }

    #[test]
    fn cross_algebra_operands_are_rejected() {
        let b1 = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let b2 = BoolAlg::with_atoms(&["x", "y"]).unwrap();
        let p = b1.atom(0).unwrap();
        let x = b2.atom(0).unwrap();
        assert_eq!(b1.meet(p, x), Err(Error::ForeignElement));
        assert_eq!(b1.leq(x, x), Err(Error::ForeignElement));
        // same atom list means same algebra
        let b3 = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        assert!(b3.meet(p, b3.top()).is_ok());
    }

    #[test]
    fn boolean_laws_exhaustive() {
        for n in 0..=3 {
            let b = BoolAlg::new(n, None).unwrap();
            let els: Vec<_> = b.elements().collect();
            for &x in &els {
                assert_eq!(b.meet(x, b.complement(x).unwrap()).unwrap(), b.bottom());
                assert_eq!(b.join(x, b.complement(x).unwrap()).unwrap(), b.top());
                for &y in &els {
                    assert_eq!(b.meet(x, y).unwrap(), b.meet(y, x).unwrap());
                    assert_eq!(b.join(x, b.meet(x, y).unwrap()).unwrap(), x);
                    assert_eq!(b.meet(x, b.join(x, y).unwrap()).unwrap(), x);
                    for &z in &els {
                        let l = b.meet(x, b.join(y, z).unwrap()).unwrap();
                        let r = b.join(b.meet(x, y).unwrap(), b.meet(x, z).unwrap()).unwrap();
                        assert_eq!(l, r);
                        assert_eq!(
                            b.join(x, b.join(y, z).unwrap()).unwrap(),
                            b.join(b.join(x, y).unwrap(), z).unwrap()
                        );
                    }
                }
            }
        }
    }

    // Independent oracle: enumerate every subset of the carrier as a Vec<bool>
    // and test up-closure through the `leq` accessor.
    fn brute_upsets(b: &BoolAlg) -> usize {
        let els: Vec<_> = b.elements().collect();
        let mut count = 0;
        for mask in 0..(1u32 << els.len()) {
            let inside = |i: usize| mask >> i & 1 == 1;
            if !inside(els.len() - 1) {
                continue;
            }
            let ok = (0..els.len())
                .all(|i| !inside(i) || (0..els.len()).all(|j| !b.leq(els[i], els[j]).unwrap() || inside(j)));
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn upset_counts_match_brute_force() {
        let b0 = BoolAlg::new(0, None).unwrap();
        assert_eq!(enumerate_upsets(&b0).unwrap(), vec![vec![b0.top()]]);
        let b1 = BoolAlg::new(1, None).unwrap();
        assert_eq!(enumerate_upsets(&b1).unwrap(), vec![vec![b1.top()], vec![b1.bottom(), b1.top()]]);
        for n in 0..=3 {
            let b = BoolAlg::new(n, None).unwrap();
            assert_eq!(enumerate_upsets(&b).unwrap().len(), brute_upsets(&b));
        }
        // frozen from brute_upsets: 1, 2, 5, 19
        let counts: Vec<_> =
            (0..=3).map(|n| enumerate_upsets(&BoolAlg::new(n, None).unwrap()).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn two_atom_algebra_has_six_implication_subalgebras() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let subs = enumerate_subalgebras(&b).unwrap();
        assert_eq!(subs.len(), 6);
        // {0, 1} is a subalgebra but not an up-set
        assert!(subs.contains(&vec![b.bottom(), b.top()]));
        assert!(!enumerate_upsets(&b).unwrap().contains(&vec![b.bottom(), b.top()]));
    }

    #[test]
    fn upsets_are_closed_under_join_and_implies() {
        for n in 0..=3 {
            let b = BoolAlg::new(n, None).unwrap();
            for u in enumerate_upsets(&b).unwrap() {
                for &x in &u {
                    for &y in &u {
                        assert!(u.contains(&b.join(x, y).unwrap()));
                        assert!(u.contains(&b.implies(x, y).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        let b = BoolAlg::new(4, None).unwrap();
        assert!(matches!(enumerate_upsets(&b), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn hasse_of_two_atoms_is_a_square() {
        let b = BoolAlg::new(2, None).unwrap();
        let covers = hasse_covers(4, |x, y| x as u32 & !(y as u32) == 0);
        assert_eq!(covers.len(), 4);
        assert!(!covers.contains(&(0, 3)));
        let _ = b;
    }
}
