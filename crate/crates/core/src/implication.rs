//! Finite implication algebras realized inside an ambient Boolean algebra.
//!
//! A carrier is a subset of the ambient containing 1 and closed under
//! `a → b = ¬a ∨ b` and `∨`. Meets are partial: `a ∧ b` exists in the
//! carrier only when the greatest common lower bound lies in it.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::order::{imp_bits, BElem, BoolAlg};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpAlg {
    ambient: BoolAlg,
    members: Vec<u32>,
    // bits -> position + 1, zero when absent
    index: Vec<u32>,
}

impl ImpAlg {
    fn build(ambient: BoolAlg, bits: BTreeSet<u32>) -> Self {
        let members: Vec<u32> = bits.into_iter().collect();
        let mut index = vec![0u32; ambient.size()];
        for (i, &b) in members.iter().enumerate() {
            index[b as usize] = i as u32 + 1;
        }
        ImpAlg { ambient, members, index }
    }

    fn own_bits(ambient: &BoolAlg, els: &[BElem]) -> Result<BTreeSet<u32>> {
        els.iter().map(|&e| if ambient.contains(e) { Ok(e.bits()) } else { Err(Error::ForeignElement) }).collect()
    }

    /// Smallest subset containing `generators` and 1 that is closed under
    /// `→` and `∨`.
    pub fn generate(ambient: &BoolAlg, generators: &[BElem]) -> Result<Self> {
        let full = ambient.full_mask();
        let mut set = Self::own_bits(ambient, generators)?;
        set.insert(full);
        loop {
            let cur: Vec<u32> = set.iter().copied().collect();
            let before = set.len();
            for &x in &cur {
                for &y in &cur {
                    set.insert(x | y);
                    set.insert(imp_bits(x, y, full));
                }
            }
            if set.len() == before {
                break;
            }
        }
        Ok(Self::build(ambient.clone(), set))
    }

    /// Validating constructor: `carrier` must contain 1 and be closed under
    /// `→` and `∨`.
    pub fn from_carrier(ambient: &BoolAlg, carrier: &[BElem]) -> Result<Self> {
        let alg = Self::from_carrier_unchecked(ambient, carrier)?;
        let report = check_implication_axioms(&alg);
        if let Some(bad) = report.entries.iter().find(|e| e.kind == CheckKind::Axiom && !e.passed()) {
            return Err(Error::NotImplicationAlgebra(bad.describe(ambient)));
        }
        Ok(alg)
    }

    /// Wraps an arbitrary subset; only membership in the ambient is checked.
    /// Use [`check_implication_axioms`] to find out what it violates.
    pub fn from_carrier_unchecked(ambient: &BoolAlg, carrier: &[BElem]) -> Result<Self> {
        let bits = Self::own_bits(ambient, carrier)?;
        Ok(Self::build(ambient.clone(), bits))
    }

    pub fn full(ambient: &BoolAlg) -> Self {
        Self::build(ambient.clone(), (0..=ambient.full_mask()).collect())
    }

    /// Realizes a finite order with top, in which every principal up-set is
    /// Boolean, as a carrier inside `2^k` for `k` = number of coatoms.
    ///
    /// Element `x` goes to the set of coatoms it is *not* below. Returns the
    /// algebra and the image of each input index.
    pub fn realize_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<(Self, Vec<BElem>)> {
        if n == 0 {
            return Err(Error::NotImplicationAlgebra("empty order".into()));
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq(x, t)))
            .ok_or_else(|| Error::NotImplicationAlgebra("order has no top".into()))?;
        let coatoms: Vec<usize> =
            (0..n).filter(|&c| c != top && (0..n).all(|y| y == c || y == top || !(leq(c, y) && !leq(y, c)))).collect();
        if coatoms.len() > crate::order::MAX_ATOMS {
            return Err(Error::SizeCap {
                what: "coatoms of realized implication algebra",
                got: coatoms.len(),
                max: crate::order::MAX_ATOMS,
            });
        }
        let names = (0..coatoms.len()).map(|i| format!("k{i}")).collect();
        let ambient = BoolAlg::new(coatoms.len(), Some(names))?;
        let images: Vec<BElem> = (0..n)
            .map(|x| {
                let bits =
                    coatoms.iter().enumerate().filter(|(_, &c)| !leq(x, c)).fold(0u32, |acc, (i, _)| acc | 1 << i);
                ambient.elem_unchecked(bits)
            })
            .collect();
        for x in 0..n {
            for y in 0..n {
                let sub = images[x].bits() & !images[y].bits() == 0;
                if sub != leq(x, y) {
                    return Err(Error::NotImplicationAlgebra(format!(
                        "elements {x} and {y} are not separated by coatoms"
                    )));
                }
            }
        }
        let alg = Self::from_carrier(&ambient, &images)?;
        Ok((alg, images))
    }

    pub fn ambient(&self) -> &BoolAlg {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> Vec<BElem> {
        self.members.iter().map(|&b| self.ambient.elem_unchecked(b)).collect()
    }

    pub fn member(&self, i: usize) -> BElem {
        self.ambient.elem_unchecked(self.members[i])
    }

    pub fn index_of(&self, e: BElem) -> Option<usize> {
        if !self.ambient.contains(e) {
            return None;
        }
        match self.index[e.bits() as usize] {
            0 => None,
            i => Some(i as usize - 1),
        }
    }

    pub fn contains(&self, e: BElem) -> bool {
        self.index_of(e).is_some()
    }

    pub fn top(&self) -> BElem {
        self.ambient.top()
    }

    fn own(&self, e: BElem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else if self.ambient.contains(e) {
            Err(Error::NotAMember(self.ambient.show(e)))
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub fn leq(&self, a: BElem, b: BElem) -> Result<bool> {
        self.own(a)?;
        self.own(b)?;
        self.ambient.leq(a, b)
    }

    pub fn join(&self, a: BElem, b: BElem) -> Result<BElem> {
        self.own(a)?;
        self.own(b)?;
        self.ambient.join(a, b)
    }

    pub fn implies(&self, a: BElem, b: BElem) -> Result<BElem> {
        self.own(a)?;
        self.own(b)?;
        self.ambient.implies(a, b)
    }

    /// Greatest common lower bound of `a` and `b` among the carrier's own
    /// elements, if the set of common lower bounds has a maximum.
    pub fn imp_meet(&self, a: BElem, b: BElem) -> Result<Option<BElem>> {
        self.own(a)?;
        self.own(b)?;
        let lower: Vec<u32> =
            self.members.iter().copied().filter(|&m| m & !a.bits() == 0 && m & !b.bits() == 0).collect();
        let max = lower.iter().copied().find(|&m| lower.iter().all(|&l| l & !m == 0));
        Ok(max.map(|m| self.ambient.elem_unchecked(m)))
    }

    pub fn is_upset(&self) -> bool {
        upward_closure_witness(self).is_none()
    }

    /// Every binary meet exists.
    pub fn is_lattice(&self) -> bool {
        self.members.iter().all(|&a| {
            self.members.iter().all(|&b| {
                let m = a & b;
                self.index[m as usize] != 0
            })
        })
    }

    pub fn show(&self, e: BElem) -> String {
        self.ambient.show(e)
    }
}

fn upward_closure_witness(i: &ImpAlg) -> Option<(u32, u32)> {
    for &m in &i.members {
        for b in 0..=i.ambient.full_mask() {
            if m & !b == 0 && i.index[b as usize] == 0 {
                return Some((m, b));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Required of every implication algebra.
    Axiom,
    /// Property of how the carrier sits in its ambient.
    Representation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpCheck {
    pub name: &'static str,
    pub kind: CheckKind,
    pub witness: Option<Vec<BElem>>,
}

impl ImpCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn describe(&self, ambient: &BoolAlg) -> String {
        match &self.witness {
            None => format!("{}: pass", self.name),
            Some(w) => {
                let w: Vec<String> = w.iter().map(|&e| ambient.show(e)).collect();
                format!("{}: fail at ({})", self.name, w.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpReport {
    pub entries: Vec<ImpCheck>,
}

impl ImpReport {
    pub fn axioms_pass(&self) -> bool {
        self.entries.iter().filter(|e| e.kind == CheckKind::Axiom).all(ImpCheck::passed)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(ImpCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&ImpCheck> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Exhaustive check of closure, the implication laws `(xy)y = x ∨ y`,
/// `x(yz) = y(xz)`, contraction `(xy)x = x`, and upward closure in the
/// ambient. Operations are evaluated in the ambient so that a carrier which
/// is not closed still yields meaningful witnesses.
pub fn check_implication_axioms(i: &ImpAlg) -> ImpReport {
    let full = i.ambient.full_mask();
    let el = |b: u32| i.ambient.elem_unchecked(b);
    let imp = |a: u32, b: u32| imp_bits(a, b, full);
    let ms = &i.members;
    let inside = |b: u32| i.index[b as usize] != 0;

    let mut entries = Vec::new();
    entries.push(ImpCheck {
        name: "contains_top",
        kind: CheckKind::Axiom,
        witness: (!inside(full)).then(|| vec![el(full)]),
    });
    let pair_witness = |f: &dyn Fn(u32, u32) -> bool| {
        ms.iter()
            .flat_map(|&x| ms.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !f(x, y))
            .map(|(x, y)| vec![el(x), el(y)])
    };
    entries.push(ImpCheck {
        name: "closed_join",
        kind: CheckKind::Axiom,
        witness: pair_witness(&|x, y| inside(x | y)),
    });
    entries.push(ImpCheck {
        name: "closed_implies",
        kind: CheckKind::Axiom,
        witness: pair_witness(&|x, y| inside(imp(x, y))),
    });
    entries.push(ImpCheck {
        name: "law_e",
        kind: CheckKind::Axiom,
        witness: pair_witness(&|x, y| imp(imp(x, y), y) == x | y),
    });
    entries.push(ImpCheck {
        name: "contraction",
        kind: CheckKind::Axiom,
        witness: pair_witness(&|x, y| imp(imp(x, y), x) == x),
    });
    let mut law_f = None;
    'outer: for &x in ms {
        for &y in ms {
            for &z in ms {
                if imp(x, imp(y, z)) != imp(y, imp(x, z)) {
                    law_f = Some(vec![el(x), el(y), el(z)]);
                    break 'outer;
                }
            }
        }
    }
    entries.push(ImpCheck { name: "law_f", kind: CheckKind::Axiom, witness: law_f });
    entries.push(ImpCheck {
        name: "upward_closed",
        kind: CheckKind::Representation,
        witness: upward_closure_witness(i).map(|(m, b)| vec![el(m), el(b)]),
    });
    ImpReport { entries }
}

/// Closure of the carrier under ambient meets. The result is a lattice in
/// which the original carrier is an upper segment.
pub fn envelope_lattice(i: &ImpAlg) -> ImpAlg {
    let mut set: BTreeSet<u32> = i.members.iter().copied().collect();
    loop {
        let cur: Vec<u32> = set.iter().copied().collect();
        let before = set.len();
        for &x in &cur {
            for &y in &cur {
                set.insert(x & y);
            }
        }
        if set.len() == before {
            break;
        }
    }
    ImpAlg::build(i.ambient.clone(), set)
}

/// A map between implication algebras, stored as member-index table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpMorphism {
    source: ImpAlg,
    target: ImpAlg,
    table: Vec<usize>,
}

impl ImpMorphism {
    /// Tabulates `f`; fails if some image is not a target member.
    pub fn from_fn(source: &ImpAlg, target: &ImpAlg, f: impl Fn(BElem) -> BElem) -> Result<Self> {
        let table = source
            .members()
            .into_iter()
            .map(|x| {
                let y = f(x);
                target.index_of(y).ok_or_else(|| {
                    Error::InvalidMorphism(format!("image of {} lies outside the target", source.show(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ImpMorphism { source: source.clone(), target: target.clone(), table })
    }

    pub fn identity(i: &ImpAlg) -> Self {
        ImpMorphism { source: i.clone(), target: i.clone(), table: (0..i.len()).collect() }
    }

    /// Inclusion of `sub` into `sup`; both must share an ambient.
    pub fn inclusion(sub: &ImpAlg, sup: &ImpAlg) -> Result<Self> {
        if sub.ambient != sup.ambient {
            return Err(Error::ForeignElement);
        }
        Self::from_fn(sub, sup, |x| x)
    }

    pub fn source(&self) -> &ImpAlg {
        &self.source
    }

    pub fn target(&self) -> &ImpAlg {
        &self.target
    }

    pub fn apply(&self, x: BElem) -> Result<BElem> {
        let i = self.source.index_of(x).ok_or_else(|| Error::NotAMember(self.source.show(x)))?;
        Ok(self.target.member(self.table[i]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ImpMorphism) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::InvalidMorphism("composite of non-matching maps".into()));
        }
        Ok(ImpMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            table: self.table.iter().map(|&i| other.table[i]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    /// Exhaustive preservation check of 1, `∨`, `→` and every existing meet.
    pub fn validate(&self) -> Result<()> {
        let s = &self.source;
        let f = |x: BElem| self.apply(x).expect("source member");
        if f(s.top()) != self.target.top() {
            return Err(Error::InvalidMorphism("1 is not preserved".into()));
        }
        let ms = s.members();
        for &x in &ms {
            for &y in &ms {
                let bad = |what: &str| {
                    Error::InvalidMorphism(format!("{what} not preserved at ({}, {})", s.show(x), s.show(y)))
                };
                if f(s.join(x, y)?) != self.target.join(f(x), f(y))? {
                    return Err(bad("join"));
                }
                if f(s.implies(x, y)?) != self.target.implies(f(x), f(y))? {
                    return Err(bad("implication"));
                }
                if let Some(m) = s.imp_meet(x, y)? {
                    if self.target.imp_meet(f(x), f(y))? != Some(f(m)) {
                        return Err(bad("meet"));
                    }
                }
            }
        }
        Ok(())
    }
}
