//! Concrete models: signed-set algebras, interval algebras of Boolean
//! algebras, and the pair algebra `ℐ(I)` of an implication algebra, with
//! the canonical maps between them.

use std::collections::HashMap;

use crate::cubic::{CubicAlg, CubicMorphism};
use crate::error::{Error, Result};
use crate::implication::{ImpAlg, ImpMorphism};
use crate::order::{BElem, BoolAlg};

/// Largest base set for signed-set and interval models (`3^7 ≤ 4096`).
pub const MAX_MODEL_ATOMS: usize = 7;

const SIGNED_NAMES: [&str; 7] = ["x", "y", "z", "w", "v", "u", "t"];

fn check_model_atoms(n: usize) -> Result<()> {
    if n > MAX_MODEL_ATOMS {
        return Err(Error::SizeCap { what: "model base set", got: n, max: MAX_MODEL_ATOMS });
    }
    Ok(())
}

/// `𝒮(X)`: pairs `⟨A, B⟩` of disjoint subsets of an `n`-element set.
#[derive(Clone, Debug)]
pub struct SignedSetModel {
    pub alg: CubicAlg,
    names: Vec<String>,
    elems: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl SignedSetModel {
    pub fn new(n: usize) -> Result<Self> {
        check_model_atoms(n)?;
        let names: Vec<String> = SIGNED_NAMES[..n].iter().map(|s| s.to_string()).collect();
        let full = (1u32 << n) - 1;
        let mut elems = Vec::new();
        for a in 0..=full {
            for b in 0..=full {
                if a & b == 0 {
                    elems.push((a, b));
                }
            }
        }
        let index: HashMap<(u32, u32), usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let show = |bits: u32| {
            let s: Vec<&str> = (0..n).filter(|i| bits >> i & 1 == 1).map(|i| names[i].as_str()).collect();
            format!("{{{}}}", s.join(","))
        };
        let labels = elems.iter().map(|&(a, b)| format!("<{},{}>", show(a), show(b))).collect();
        let alg = CubicAlg::from_ops(
            labels,
            index[&(0, 0)],
            |x, y| {
                let ((a, b), (c, d)) = (elems[x], elems[y]);
                index[&(a & c, b & d)]
            },
            |x, y| {
                let ((a, b), (c, d)) = (elems[x], elems[y]);
                index[&(a | (d & !b), b | (c & !a))]
            },
        )?;
        Ok(SignedSetModel { alg, names, elems, index })
    }

    pub fn atom_names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, pos: u32, neg: u32) -> Option<usize> {
        self.index.get(&(pos, neg)).copied()
    }

    pub fn signed(&self, id: usize) -> (u32, u32) {
        self.elems[id]
    }
}

/// `ℐ(B)`: intervals `[a, b]` with `a ≤ b`.
#[derive(Clone, Debug)]
pub struct IntervalModel {
    pub alg: CubicAlg,
    base: BoolAlg,
    elems: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl IntervalModel {
    pub fn new(base: &BoolAlg) -> Result<Self> {
        check_model_atoms(base.n_atoms())?;
        let full = base.full_mask();
        let mut elems = Vec::new();
        for a in 0..=full {
            for b in 0..=full {
                if a & !b == 0 {
                    elems.push((a, b));
                }
            }
        }
        let index: HashMap<(u32, u32), usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let show = |bits| base.show(base.elem_unchecked(bits));
        let labels = elems.iter().map(|&(a, b)| format!("[{},{}]", show(a), show(b))).collect();
        let alg = CubicAlg::from_ops(
            labels,
            index[&(0, full)],
            |x, y| {
                let ((a, b), (c, d)) = (elems[x], elems[y]);
                index[&(a & c, b | d)]
            },
            |x, y| {
                let ((a, b), (c, d)) = (elems[x], elems[y]);
                index[&(a | (b & !d & full), b & (a | (!c & full)))]
            },
        )?;
        Ok(IntervalModel { alg, base: base.clone(), elems, index })
    }

    pub fn base(&self) -> &BoolAlg {
        &self.base
    }

    pub fn id(&self, lo: BElem, hi: BElem) -> Option<usize> {
        if !self.base.contains(lo) || !self.base.contains(hi) {
            return None;
        }
        self.index.get(&(lo.bits(), hi.bits())).copied()
    }

    pub fn interval(&self, id: usize) -> (BElem, BElem) {
        let (a, b) = self.elems[id];
        (self.base.elem_unchecked(a), self.base.elem_unchecked(b))
    }

    /// `ℓ([a, b]) = ¬a ∧ b`.
    pub fn length(&self, id: usize) -> BElem {
        let (a, b) = self.elems[id];
        self.base.elem_unchecked(!a & b & self.base.full_mask())
    }
}

/// `ℓ([lo, hi]) = ¬lo ∧ hi` for an interval given by its endpoints.
pub fn length(base: &BoolAlg, lo: BElem, hi: BElem) -> Result<BElem> {
    if !base.leq(lo, hi)? {
        return Err(Error::Precondition(format!("{} is not below {}", base.show(lo), base.show(hi))));
    }
    base.meet(base.complement(lo)?, hi)
}

/// `ℐ(I)`: pairs `⟨a, b⟩` of members of `I` with `a ∨ b = 1` and
/// `a ∧ b` existing in `I`.
#[derive(Clone, Debug)]
pub struct PairModel {
    pub alg: CubicAlg,
    imp: ImpAlg,
    elems: Vec<(BElem, BElem)>,
    index: HashMap<(u32, u32), usize>,
}

impl PairModel {
    pub fn new(imp: &ImpAlg) -> Result<Self> {
        let ambient = imp.ambient();
        let top = imp.top();
        let members = imp.members();
        let mut elems = Vec::new();
        for &a in &members {
            for &b in &members {
                if ambient.join(a, b)? == top && imp.imp_meet(a, b)?.is_some() {
                    elems.push((a, b));
                }
            }
        }
        let index: HashMap<(u32, u32), usize> =
            elems.iter().enumerate().map(|(i, &(a, b))| ((a.bits(), b.bits()), i)).collect();
        let labels = elems.iter().map(|&(a, b)| format!("<{},{}>", ambient.show(a), ambient.show(b))).collect();
        let full = ambient.full_mask();
        let lookup = |a: u32, b: u32| {
            index.get(&(a, b)).copied().ok_or_else(|| {
                Error::Precondition(format!(
                    "pair operation left the carrier at <{},{}>",
                    ambient.show(ambient.elem_unchecked(a)),
                    ambient.show(ambient.elem_unchecked(b))
                ))
            })
        };
        // Evaluate the tables first so that a carrier escape surfaces as an
        // error instead of a panic inside the table builder.
        let n = elems.len();
        let mut delta = vec![vec![None; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let ((a, b), (c, d)) = (elems[x], elems[y]);
                let (a, b, c, d) = (a.bits(), b.bits(), c.bits(), d.bits());
                join[x][y] = lookup(a | c, b | d)?;
                if c & !a == 0 && d & !b == 0 {
                    let imp = |u: u32, v: u32| (!u & full) | v;
                    delta[x][y] = Some(lookup(a & imp(b, d), b & imp(a, c))?);
                }
            }
        }
        let top_id = lookup(full, full)?;
        let alg = CubicAlg::from_tables(labels, top_id, join, delta)?;
        Ok(PairModel { alg, imp: imp.clone(), elems, index })
    }

    pub fn imp(&self) -> &ImpAlg {
        &self.imp
    }

    pub fn id(&self, a: BElem, b: BElem) -> Option<usize> {
        if !self.imp.contains(a) || !self.imp.contains(b) {
            return None;
        }
        self.index.get(&(a.bits(), b.bits())).copied()
    }

    pub fn pair(&self, id: usize) -> (BElem, BElem) {
        self.elems[id]
    }

    /// `ι(⟨a, b⟩) = a ∧ b`.
    pub fn iota(&self, id: usize) -> BElem {
        let (a, b) = self.elems[id];
        self.imp.imp_meet(a, b).expect("pair components are members").expect("pair meets exist by construction")
    }

    /// `e(a) = ⟨1, a⟩` for every member of `I`, by member index.
    pub fn embed_e(&self) -> Vec<usize> {
        let one = self.imp.top();
        self.imp.members().into_iter().map(|a| self.id(one, a).expect("<1, a> is always a pair")).collect()
    }

    /// Checks that `e` is injective, preserves `∨`, `→` and existing meets,
    /// and has upward-closed range.
    pub fn check_embed_e(&self) -> Result<()> {
        let e = self.embed_e();
        let l = &self.alg;
        let ms = self.imp.members();
        let bad = |what: &str, x: BElem, y: BElem| {
            Err(Error::InvalidMorphism(format!(
                "e fails to preserve {what} at ({}, {})",
                self.imp.show(x),
                self.imp.show(y)
            )))
        };
        for (i, &x) in ms.iter().enumerate() {
            for (j, &y) in ms.iter().enumerate() {
                if i != j && e[i] == e[j] {
                    return bad("distinctness", x, y);
                }
                let at = |v: BElem| e[self.imp.index_of(v).expect("closed")];
                if at(self.imp.join(x, y)?) != l.join(e[i], e[j]) {
                    return bad("join", x, y);
                }
                if at(self.imp.implies(x, y)?) != l.derived_imp(e[i], e[j]) {
                    return bad("implication", x, y);
                }
                if let Some(m) = self.imp.imp_meet(x, y)? {
                    if l.poset_meet(e[i], e[j]) != Some(at(m)) {
                        return bad("meet", x, y);
                    }
                }
            }
        }
        let range = l.bitset(&e);
        if !l.is_upward_closed(&range) {
            return Err(Error::InvalidMorphism("range of e is not upward closed".into()));
        }
        Ok(())
    }
}

/// The isomorphism `ℐ(B) as pairs → ℐ(B) as intervals`,
/// `⟨a, b⟩ ↦ [¬a, b]`, validated exhaustively.
pub fn iso_pair_interval(base: &BoolAlg) -> Result<(PairModel, IntervalModel, CubicMorphism)> {
    let pairs = PairModel::new(&ImpAlg::full(base))?;
    let ints = IntervalModel::new(base)?;
    let table = (0..pairs.alg.len())
        .map(|x| {
            let (a, b) = pairs.pair(x);
            ints.id(base.complement(a)?, b).ok_or_else(|| Error::InvalidMorphism("image is not an interval".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = CubicMorphism::from_table(&pairs.alg, &ints.alg, table)?;
    iso.validate_iso()?;
    Ok((pairs, ints, iso))
}

/// The isomorphism `𝒮(X) → ℐ(℘X)`, `⟨A, B⟩ ↦ [A, X ∖ B]`, validated
/// exhaustively. The interval model uses the signed model's atom names.
pub fn iso_signed_interval(n: usize) -> Result<(SignedSetModel, IntervalModel, CubicMorphism)> {
    let signed = SignedSetModel::new(n)?;
    let base = BoolAlg::new(n, Some(signed.atom_names().to_vec()))?;
    let ints = IntervalModel::new(&base)?;
    let full = base.full_mask();
    let table = (0..signed.alg.len())
        .map(|x| {
            let (a, b) = signed.signed(x);
            ints.id(base.elem(a)?, base.elem(full & !b)?)
                .ok_or_else(|| Error::InvalidMorphism("image is not an interval".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = CubicMorphism::from_table(&signed.alg, &ints.alg, table)?;
    iso.validate_iso()?;
    Ok((signed, ints, iso))
}

/// `ℐ(f)(⟨a, b⟩) = ⟨f(a), f(b)⟩`, validated as a cubic morphism.
pub fn functor_i_on_morphism(f: &ImpMorphism, source: &PairModel, target: &PairModel) -> Result<CubicMorphism> {
    if f.source() != source.imp() || f.target() != target.imp() {
        return Err(Error::InvalidMorphism("pair models do not match the morphism".into()));
    }
    let table = (0..source.alg.len())
        .map(|x| {
            let (a, b) = source.pair(x);
            let (fa, fb) = (f.apply(a)?, f.apply(b)?);
            target.id(fa, fb).ok_or_else(|| {
                Error::InvalidMorphism(format!(
                    "{} is sent to <{},{}>, which is not a pair",
                    source.alg.label(x),
                    target.imp().show(fa),
                    target.imp().show(fb)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = CubicMorphism::from_table(&source.alg, &target.alg, table)?;
    m.validate()?;
    Ok(m)
}
