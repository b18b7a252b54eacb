//! The implication collapse `ℒ/∼` and the maps `η`, `ι`, `κ`.

use crate::constructions::PairModel;
use crate::cubic::{CubicAlg, CubicMorphism};
use crate::error::{Error, Result};
use crate::implication::ImpAlg;
use crate::order::BElem;

/// Two representatives that disagree on a class-level meet: either one
/// caret exists and the other does not, or they land in different classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetIncoherence {
    pub classes: (usize, usize),
    pub first: (usize, usize),
    pub second: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct Collapse {
    source: CubicAlg,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    leq: Vec<bool>,
    join: Vec<usize>,
    imp: Vec<usize>,
    meet: Vec<Option<usize>>,
    incoherent_meets: Vec<MeetIncoherence>,
}

impl Collapse {
    /// Partitions the carrier by `∼` and builds the class operations
    /// `[a] ∨ [b] = [a * b]`, `[a] → [b] = [a ⇒ b]`, `[a] ∧ [b] = [a ^ b]`,
    /// with the order induced by `⪯`.
    ///
    /// Every representative pair is checked. Order, join and implication
    /// must be representative-independent or an error is returned; meet
    /// disagreements are recorded in [`Collapse::incoherent_meets`].
    pub fn new(l: &CubicAlg) -> Result<Self> {
        let n = l.len();
        let law = |msg: String| Err(Error::CollapseLaw(msg));
        for a in 0..n {
            if !l.sim(a, a) {
                return law(format!("∼ is not reflexive at {}", l.label(a)));
            }
            for b in 0..n {
                if l.sim(a, b) != l.sim(b, a) {
                    return law(format!("∼ is not symmetric at ({}, {})", l.label(a), l.label(b)));
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&b| l.sim(a, b)).collect();
            for &b in &members {
                if class_of[b] != usize::MAX {
                    return law(format!("∼ is not transitive around {}", l.label(b)));
                }
                class_of[b] = classes.len();
            }
            classes.push(members);
        }
        for a in 0..n {
            for b in 0..n {
                if (class_of[a] == class_of[b]) != l.sim(a, b) {
                    return law(format!("∼ is not transitive at ({}, {})", l.label(a), l.label(b)));
                }
            }
        }

        let k = classes.len();
        let mut leq = vec![false; k * k];
        let mut join = vec![0; k * k];
        let mut imp = vec![0; k * k];
        let mut meet = vec![None; k * k];
        let mut incoherent_meets = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let (r, s) = (classes[i][0], classes[j][0]);
                leq[i * k + j] = l.preceq(r, s);
                join[i * k + j] = class_of[l.star(r, s)];
                imp[i * k + j] = class_of[l.dimp(r, s)];
                let first = l.caret(r, s).map(|m| class_of[m]);
                meet[i * k + j] = first;
                let mut flagged = false;
                for &a in &classes[i] {
                    for &b in &classes[j] {
                        let clash = |what: &str| {
                            Error::CollapseLaw(format!(
                                "{what} depends on representatives: ({}, {}) vs ({}, {})",
                                l.label(r),
                                l.label(s),
                                l.label(a),
                                l.label(b)
                            ))
                        };
                        if l.preceq(a, b) != leq[i * k + j] {
                            return Err(clash("class order"));
                        }
                        if class_of[l.star(a, b)] != join[i * k + j] {
                            return Err(clash("class join"));
                        }
                        if class_of[l.dimp(a, b)] != imp[i * k + j] {
                            return Err(clash("class implication"));
                        }
                        if !flagged && l.caret(a, b).map(|m| class_of[m]) != first {
                            flagged = true;
                            incoherent_meets.push(MeetIncoherence { classes: (i, j), first: (r, s), second: (a, b) });
                        }
                    }
                }
            }
        }
        let c = Collapse { source: l.clone(), class_of, classes, leq, join, imp, meet, incoherent_meets };
        c.check_order()?;
        Ok(c)
    }

    fn check_order(&self) -> Result<()> {
        let k = self.len();
        let law = |msg: &str, i: usize, j: usize| {
            Err(Error::CollapseLaw(format!(
                "{msg} at classes of ({}, {})",
                self.source.label(self.classes[i][0]),
                self.source.label(self.classes[j][0])
            )))
        };
        for i in 0..k {
            if !self.leq(i, i) {
                return law("quotient order is not reflexive", i, i);
            }
            for j in 0..k {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return law("quotient order is not antisymmetric", i, j);
                }
                let m = self.join(i, j);
                if !self.leq(i, m) || !self.leq(j, m) {
                    return law("class join is not an upper bound", i, j);
                }
                for h in 0..k {
                    if self.leq(i, j) && self.leq(j, h) && !self.leq(i, h) {
                        return law("quotient order is not transitive", i, h);
                    }
                    if self.leq(i, h) && self.leq(j, h) && !self.leq(m, h) {
                        return law("class join is not least", i, j);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &CubicAlg {
        &self.source
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `η(x) = [x]`.
    pub fn eta(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn top(&self) -> usize {
        self.class_of[self.source.top()]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn imp(&self, i: usize, j: usize) -> usize {
        self.imp[i * self.len() + j]
    }

    /// Class meet from the canonical representatives.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.meet[i * self.len() + j]
    }

    pub fn incoherent_meets(&self) -> &[MeetIncoherence] {
        &self.incoherent_meets
    }

    /// Class label: the representatives joined by `~`.
    pub fn class_label(&self, i: usize) -> String {
        self.classes[i].iter().map(|&x| self.source.label(x)).collect::<Vec<_>>().join("~")
    }

    /// The quotient realized as an implication algebra inside a Boolean
    /// algebra on its coatoms, with the image of every class. The realized
    /// `∨` and `→` are checked against the class operations.
    pub fn quotient_imp(&self) -> Result<(ImpAlg, Vec<BElem>)> {
        let (alg, images) = ImpAlg::realize_order(self.len(), |i, j| self.leq(i, j))?;
        for i in 0..self.len() {
            for j in 0..self.len() {
                if alg.join(images[i], images[j])? != images[self.join(i, j)]
                    || alg.implies(images[i], images[j])? != images[self.imp(i, j)]
                {
                    return Err(Error::CollapseLaw(format!(
                        "realized quotient disagrees with class operations at ({}, {})",
                        self.class_label(i),
                        self.class_label(j)
                    )));
                }
            }
        }
        Ok((alg, images))
    }

    /// Checks that `η` restricted to `[a, 1]` is injective, an order
    /// embedding, preserves `∨` and `→`, and has upward-closed range.
    pub fn local_embedding_check(&self, a: usize) -> Result<()> {
        let l = &self.source;
        l.check_id(a)?;
        let above: Vec<usize> = l.up_set(a).ones().collect();
        let fail = |msg: &str, x: usize, y: usize| {
            Err(Error::CollapseLaw(format!(
                "local embedding above {}: {msg} at ({}, {})",
                l.label(a),
                l.label(x),
                l.label(y)
            )))
        };
        for &x in &above {
            for &y in &above {
                let (ex, ey) = (self.eta(x), self.eta(y));
                if x != y && ex == ey {
                    return fail("not injective", x, y);
                }
                if l.leq(x, y) != self.leq(ex, ey) {
                    return fail("not an order embedding", x, y);
                }
                if self.eta(l.join(x, y)) != self.join(ex, ey) {
                    return fail("join not preserved", x, y);
                }
                if self.eta(l.derived_imp(x, y)) != self.imp(ex, ey) {
                    return fail("implication not preserved", x, y);
                }
            }
        }
        let ea = self.eta(a);
        for c in 0..self.len() {
            if self.leq(ea, c) && !above.iter().any(|&x| self.eta(x) == c) {
                return Err(Error::CollapseLaw(format!(
                    "local embedding above {}: class {} is above but not hit",
                    l.label(a),
                    self.class_label(c)
                )));
            }
        }
        Ok(())
    }
}

/// `𝒞(φ)([x]) = [φ(x)]`: checks well-definedness and preservation of the
/// class order, join and implication, returning the class table.
pub fn functor_c_on_morphism(phi: &CubicMorphism, source: &Collapse, target: &Collapse) -> Result<Vec<usize>> {
    if phi.source() != source.source() || phi.target() != target.source() {
        return Err(Error::InvalidMorphism("collapses do not match the morphism".into()));
    }
    let table: Vec<usize> = source.classes().iter().map(|c| target.eta(phi.apply(c[0]))).collect();
    for (i, c) in source.classes().iter().enumerate() {
        for &x in c {
            if target.eta(phi.apply(x)) != table[i] {
                return Err(Error::InvalidMorphism(format!(
                    "class map is not well defined at {}",
                    source.source().label(x)
                )));
            }
        }
    }
    for i in 0..source.len() {
        for j in 0..source.len() {
            if table[source.join(i, j)] != target.join(table[i], table[j])
                || table[source.imp(i, j)] != target.imp(table[i], table[j])
            {
                return Err(Error::InvalidMorphism(format!(
                    "class map does not preserve operations at ({}, {})",
                    source.class_label(i),
                    source.class_label(j)
                )));
            }
        }
    }
    Ok(table)
}

/// `ι_I = η ∘ e`: the map from `I` into the collapse of its pair algebra.
#[derive(Clone, Debug)]
pub struct Iota {
    pub pairs: PairModel,
    pub collapse: Collapse,
    /// Class of `⟨1, a⟩`, by member index of `I`.
    pub table: Vec<usize>,
}

impl Iota {
    pub fn new(imp: &ImpAlg) -> Result<Self> {
        let pairs = PairModel::new(imp)?;
        let collapse = Collapse::new(&pairs.alg)?;
        let table = pairs.embed_e().into_iter().map(|x| collapse.eta(x)).collect();
        Ok(Iota { pairs, collapse, table })
    }

    /// Bijectivity, and preservation of 1, order, `∨` and `→` in both
    /// directions.
    pub fn check_iso(&self) -> Result<()> {
        let imp = self.pairs.imp();
        let c = &self.collapse;
        let fail = |msg: String| Err(Error::InvalidMorphism(msg));
        if imp.len() != c.len() {
            return fail(format!("{} elements against {} classes", imp.len(), c.len()));
        }
        let mut hit = vec![false; c.len()];
        for &t in &self.table {
            if std::mem::replace(&mut hit[t], true) {
                return fail(format!("class {} is hit twice", c.class_label(t)));
            }
        }
        if self.table[imp.index_of(imp.top()).expect("top")] != c.top() {
            return fail("1 is not preserved".into());
        }
        let ms = imp.members();
        for (i, &x) in ms.iter().enumerate() {
            for (j, &y) in ms.iter().enumerate() {
                let at = |v: BElem| self.table[imp.index_of(v).expect("closed")];
                let (ti, tj) = (self.table[i], self.table[j]);
                if imp.leq(x, y)? != c.leq(ti, tj)
                    || at(imp.join(x, y)?) != c.join(ti, tj)
                    || at(imp.implies(x, y)?) != c.imp(ti, tj)
                {
                    return fail(format!("operations differ at ({}, {})", imp.show(x), imp.show(y)));
                }
            }
        }
        Ok(())
    }
}

/// `κ_ℒ = e ∘ η`: sends `x` to `⟨1, [x]⟩` in the pair algebra of the
/// realized quotient. It is constant on classes, so it is injective only
/// when every class is a singleton.
#[derive(Clone, Debug)]
pub struct Kappa {
    pub collapse: Collapse,
    pub quotient: ImpAlg,
    pub class_image: Vec<BElem>,
    pub pairs: PairModel,
    pub table: Vec<usize>,
}

impl Kappa {
    pub fn new(l: &CubicAlg) -> Result<Self> {
        let collapse = Collapse::new(l)?;
        let (quotient, class_image) = collapse.quotient_imp()?;
        let pairs = PairModel::new(&quotient)?;
        let one = quotient.top();
        let table =
            (0..l.len()).map(|x| pairs.id(one, class_image[collapse.eta(x)]).expect("<1, a> is a pair")).collect();
        Ok(Kappa { collapse, quotient, class_image, pairs, table })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.pairs.alg.len()];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    /// Checks that `𝒞(κ)` is well defined and equals `ι` of the quotient.
    pub fn check_iota_identity(&self) -> Result<()> {
        let iota = Iota::new(&self.quotient)?;
        iota.check_iso()?;
        let target = &iota.collapse;
        for (i, class) in self.collapse.classes().iter().enumerate() {
            let via_kappa: Vec<usize> = class.iter().map(|&x| target.eta(self.table[x])).collect();
            if via_kappa.iter().any(|&c| c != via_kappa[0]) {
                return Err(Error::InvalidMorphism(format!(
                    "class map of kappa is not well defined on {}",
                    self.collapse.class_label(i)
                )));
            }
            let member = self.quotient.index_of(self.class_image[i]).expect("class image is a member");
            if iota.table[member] != via_kappa[0] {
                return Err(Error::InvalidMorphism(format!(
                    "class map of kappa differs from iota on {}",
                    self.collapse.class_label(i)
                )));
            }
        }
        Ok(())
    }
}

/// Upward-closed subalgebras of `l`: sets containing 1, closed upward and
/// under `∨` and every defined `Δ`. Enumerated by closing one element at a
/// time; `cap` bounds the carrier.
pub fn upward_closed_subalgebras(l: &CubicAlg, cap: usize) -> Result<Vec<Vec<usize>>> {
    if l.len() > cap {
        return Err(Error::SizeCap { what: "upward-closed subalgebra enumeration", got: l.len(), max: cap });
    }
    let close = |seed: &[usize]| -> Vec<usize> {
        let mut cur = seed.to_vec();
        loop {
            let sub = l.generate_subalgebra(&cur);
            let mut up = l.bitset(&sub);
            for &x in &sub {
                up.union_with(l.up_set(x));
            }
            let next: Vec<usize> = up.ones().collect();
            if next == cur {
                return next;
            }
            cur = next;
        }
    };
    let start = close(&[]);
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for x in 0..l.len() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let t = close(&seed);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Failure of the transfer property for an upward-closed subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferFailure {
    /// `∼` differs between the subalgebra and the host on this pair.
    SimDiffers(usize, usize),
    /// A host element `∼`-equivalent to a member lies outside.
    Escapes { member: usize, outside: usize },
}

/// Compares `∼` computed inside the upward-closed subalgebra `members`
/// with `∼` of the host, and checks `∼`-saturation. Ids are host ids.
pub fn transfer_check(host: &CubicAlg, members: &[usize]) -> Result<Option<TransferFailure>> {
    let (sub, old) = host.restrict(members)?;
    if !host.is_upward_closed(&host.bitset(members)) {
        return Err(Error::Precondition("subalgebra is not upward closed".into()));
    }
    for i in 0..sub.len() {
        for j in 0..sub.len() {
            if sub.sim(i, j) != host.sim(old[i], old[j]) {
                return Ok(Some(TransferFailure::SimDiffers(old[i], old[j])));
            }
        }
    }
    let set = host.bitset(members);
    for &m in &old {
        for x in 0..host.len() {
            if host.sim(m, x) && !set.contains(x) {
                return Ok(Some(TransferFailure::Escapes { member: m, outside: x }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{IntervalModel, SignedSetModel};
    use crate::order::BoolAlg;

    #[test]
    fn signed_one_collapses_to_two_classes() {
        let s = SignedSetModel::new(1).unwrap();
        let c = Collapse::new(&s.alg).unwrap();
        assert_eq!(c.len(), 2);
        let x = s.id(1, 0).unwrap();
        let nx = s.id(0, 1).unwrap();
        assert_eq!(c.eta(x), c.eta(nx));
        assert_ne!(c.eta(x), c.top());
        assert_eq!(c.classes()[c.top()], vec![s.alg.top()]);
    }

    #[test]
    fn interval_classes_are_length_fibres() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let m = IntervalModel::new(&b).unwrap();
        let c = Collapse::new(&m.alg).unwrap();
        assert_eq!(c.len(), 4);
        for x in 0..m.alg.len() {
            for y in 0..m.alg.len() {
                assert_eq!(c.eta(x) == c.eta(y), m.length(x) == m.length(y));
            }
        }
        assert!(c.incoherent_meets().is_empty());
    }

    #[test]
    fn quotient_of_interval_algebra_is_the_base() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let m = IntervalModel::new(&b).unwrap();
        let c = Collapse::new(&m.alg).unwrap();
        let (q, images) = c.quotient_imp().unwrap();
        assert_eq!(q.len(), 4);
        assert!(q.is_lattice());
        // length is a well-defined bijection classes -> B preserving order
        let len_of = |i: usize| m.length(c.classes()[i][0]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b.leq(len_of(i), len_of(j)).unwrap(), q.leq(images[i], images[j]).unwrap());
            }
        }
    }

    #[test]
    fn trivial_collapse() {
        let s = SignedSetModel::new(0).unwrap();
        let c = Collapse::new(&s.alg).unwrap();
        assert_eq!(c.len(), 1);
        c.local_embedding_check(0).unwrap();
    }

    #[test]
    fn local_embedding_everywhere() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let m = IntervalModel::new(&b).unwrap();
        let c = Collapse::new(&m.alg).unwrap();
        for a in 0..m.alg.len() {
            c.local_embedding_check(a).unwrap();
        }
        let s = SignedSetModel::new(2).unwrap();
        let c = Collapse::new(&s.alg).unwrap();
        c.local_embedding_check(s.id(1, 2).unwrap()).unwrap();
    }

    #[test]
    fn eta_is_order_preserving() {
        let s = SignedSetModel::new(2).unwrap();
        let c = Collapse::new(&s.alg).unwrap();
        for x in 0..s.alg.len() {
            for y in 0..s.alg.len() {
                if s.alg.leq(x, y) {
                    assert!(c.leq(c.eta(x), c.eta(y)));
                }
            }
        }
    }

    #[test]
    fn iota_small_cases() {
        for n in 0..=2 {
            let b = BoolAlg::new(n, None).unwrap();
            let iota = Iota::new(&ImpAlg::full(&b)).unwrap();
            iota.check_iso().unwrap();
            assert_eq!(iota.collapse.len(), 1 << n);
        }
        let b = BoolAlg::new(2, None).unwrap();
        iota_all_upsets(&b);
    }

    fn iota_all_upsets(b: &BoolAlg) {
        for u in crate::order::enumerate_upsets(b).unwrap() {
            let i = ImpAlg::from_carrier(b, &u).unwrap();
            Iota::new(&i).unwrap().check_iso().unwrap();
        }
    }

    #[test]
    fn kappa_collapses_antipodes() {
        let b = BoolAlg::with_atoms(&["p"]).unwrap();
        let m = IntervalModel::new(&b).unwrap();
        let k = Kappa::new(&m.alg).unwrap();
        assert!(!k.is_injective());
        assert_eq!(k.pairs.alg.len(), 3);
        k.check_iota_identity().unwrap();
        let z = m.id(b.bottom(), b.bottom()).unwrap();
        let o = m.id(b.top(), b.top()).unwrap();
        assert_eq!(k.table[z], k.table[o]);

        let s = SignedSetModel::new(2).unwrap();
        let k = Kappa::new(&s.alg).unwrap();
        assert_eq!(k.quotient.len(), 4);
        k.check_iota_identity().unwrap();

        let one = SignedSetModel::new(0).unwrap();
        let k = Kappa::new(&one.alg).unwrap();
        assert!(k.is_injective());
    }

    #[test]
    fn functor_c_identity_and_iso() {
        let (s, ints, iso) = crate::constructions::iso_signed_interval(1).unwrap();
        let cs = Collapse::new(&s.alg).unwrap();
        let ci = Collapse::new(&ints.alg).unwrap();
        let t = functor_c_on_morphism(&iso, &cs, &ci).unwrap();
        assert_eq!(t.len(), 2);
        assert_ne!(t[0], t[1]);
        let id = functor_c_on_morphism(&CubicMorphism::identity(&s.alg), &cs, &cs).unwrap();
        assert_eq!(id, (0..cs.len()).collect::<Vec<_>>());
        let back = functor_c_on_morphism(&iso.inverse().unwrap(), &ci, &cs).unwrap();
        let composite = functor_c_on_morphism(&iso.then(&iso.inverse().unwrap()).unwrap(), &cs, &cs).unwrap();
        assert_eq!(composite, t.iter().map(|&c| back[c]).collect::<Vec<_>>());
    }

    #[test]
    fn transfer_on_interval_subalgebras() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let m = IntervalModel::new(&b).unwrap();
        let subs = upward_closed_subalgebras(&m.alg, 16).unwrap();
        assert!(subs.len() > 2);
        assert!(subs.contains(&vec![m.alg.top()]));
        assert!(subs.contains(&(0..9).collect::<Vec<_>>()));
        for s in &subs {
            assert_eq!(transfer_check(&m.alg, s).unwrap(), None);
        }
    }
}
