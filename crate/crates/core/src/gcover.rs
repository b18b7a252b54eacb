//! g-covers: upward-closed implication subalgebras on which the collapse
//! map is an isomorphism. Detection, enumeration, the `α`/`β`
//! decomposition, reconstruction of the host as a pair algebra, and the
//! finite envelope built from a g-cover.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::collapse::Collapse;
use crate::constructions::{functor_i_on_morphism, PairModel};
use crate::cubic::{check_mr_axiom, CubicAlg, CubicMorphism, MrReport};
use crate::error::{Error, Result};
use crate::implication::{envelope_lattice, ImpAlg, ImpMorphism};
use crate::order::BElem;

/// Largest host searched exhaustively by [`find_gcovers`].
pub const MAX_GCOVER_SEARCH: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GCover {
    members: Vec<usize>,
    rep: Vec<usize>,
}

impl GCover {
    /// Member ids, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The unique member in class `c`.
    pub fn rep(&self, class: usize) -> usize {
        self.rep[class]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// The clause of the g-cover definition that a candidate set violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GCoverFailure {
    BadElement(usize),
    MissingTop,
    NotUpwardClosed { member: usize, above: usize },
    NotJoinClosed(usize, usize),
    NotImpClosed(usize, usize),
    SameClass(usize, usize),
    ClassMissed(usize),
    JoinNotPreserved(usize, usize),
    ImpNotPreserved(usize, usize),
    MeetNotAbsorbed(usize, usize),
}

impl GCoverFailure {
    pub fn describe(&self, l: &CubicAlg) -> String {
        let s = |x: &usize| l.labels().get(*x).map_or_else(|| x.to_string(), Clone::clone);
        match self {
            Self::BadElement(x) => format!("element id {x} is out of range"),
            Self::MissingTop => "1 is missing".into(),
            Self::NotUpwardClosed { member, above } => {
                format!("not upward closed: {} is above {}", s(above), s(member))
            }
            Self::NotJoinClosed(x, y) => format!("not closed under join at ({}, {})", s(x), s(y)),
            Self::NotImpClosed(x, y) => format!("not closed under implication at ({}, {})", s(x), s(y)),
            Self::SameClass(x, y) => format!("{} and {} are ∼-equivalent", s(x), s(y)),
            Self::ClassMissed(x) => format!("no member is ∼-equivalent to {}", s(x)),
            Self::JoinNotPreserved(x, y) => format!("collapse map does not preserve join at ({}, {})", s(x), s(y)),
            Self::ImpNotPreserved(x, y) => {
                format!("collapse map does not preserve implication at ({}, {})", s(x), s(y))
            }
            Self::MeetNotAbsorbed(x, y) => format!("meet of ({}, {}) lies outside", s(x), s(y)),
        }
    }
}

impl fmt::Display for GCoverFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Decides whether `members` is a g-cover of the collapse's source. On
/// success the certificate is the g-cover itself; otherwise the first
/// violated clause. Meet absorption is checked as well.
pub fn is_gcover(c: &Collapse, members: &[usize]) -> std::result::Result<GCover, GCoverFailure> {
    let l = c.source();
    if let Some(&bad) = members.iter().find(|&&x| x >= l.len()) {
        return Err(GCoverFailure::BadElement(bad));
    }
    let set = l.bitset(members);
    let ms: Vec<usize> = set.ones().collect();
    if !set.contains(l.top()) {
        return Err(GCoverFailure::MissingTop);
    }
    for &x in &ms {
        if let Some(y) = l.up_set(x).ones().find(|&y| !set.contains(y)) {
            return Err(GCoverFailure::NotUpwardClosed { member: x, above: y });
        }
    }
    for &x in &ms {
        for &y in &ms {
            if !set.contains(l.join(x, y)) {
                return Err(GCoverFailure::NotJoinClosed(x, y));
            }
            if !set.contains(l.derived_imp(x, y)) {
                return Err(GCoverFailure::NotImpClosed(x, y));
            }
        }
    }
    let mut rep = vec![usize::MAX; c.len()];
    for &x in &ms {
        let k = c.eta(x);
        if rep[k] != usize::MAX {
            return Err(GCoverFailure::SameClass(rep[k], x));
        }
        rep[k] = x;
    }
    if let Some(k) = rep.iter().position(|&r| r == usize::MAX) {
        return Err(GCoverFailure::ClassMissed(c.classes()[k][0]));
    }
    for &x in &ms {
        for &y in &ms {
            if c.eta(l.join(x, y)) != c.join(c.eta(x), c.eta(y)) {
                return Err(GCoverFailure::JoinNotPreserved(x, y));
            }
            if c.eta(l.derived_imp(x, y)) != c.imp(c.eta(x), c.eta(y)) {
                return Err(GCoverFailure::ImpNotPreserved(x, y));
            }
            if let Some(m) = l.poset_meet(x, y) {
                if !set.contains(m) {
                    return Err(GCoverFailure::MeetNotAbsorbed(x, y));
                }
            }
        }
    }
    Ok(GCover { members: ms, rep })
}

struct Search<'a> {
    c: &'a Collapse,
    order: Vec<usize>,
    limit: usize,
    found: Vec<GCover>,
}

impl Search<'_> {
    /// Adds `x` and everything it forces: upper bounds, joins and
    /// implications with current members. Fails on a class clash.
    fn propagate(&self, assign: &mut [usize], set: &mut FixedBitSet, x: usize) -> bool {
        let l = self.c.source();
        let mut queue = vec![x];
        while let Some(x) = queue.pop() {
            if set.contains(x) {
                continue;
            }
            let k = self.c.eta(x);
            if assign[k] != usize::MAX {
                return false;
            }
            assign[k] = x;
            set.insert(x);
            queue.extend(l.up_set(x).ones().filter(|&y| !set.contains(y)));
            for z in set.ones() {
                for v in [l.join(x, z), l.derived_imp(x, z), l.derived_imp(z, x)] {
                    if !set.contains(v) {
                        queue.push(v);
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, assign: Vec<usize>, set: FixedBitSet) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(&k) = self.order.iter().find(|&&k| assign[k] == usize::MAX) else {
            let members: Vec<usize> = set.ones().collect();
            if let Ok(g) = is_gcover(self.c, &members) {
                self.found.push(g);
            }
            return;
        };
        for &x in &self.c.classes()[k] {
            let (mut a, mut s) = (assign.clone(), set.clone());
            if self.propagate(&mut a, &mut s, x) {
                self.run(a, s);
            }
        }
    }
}

/// All g-covers (or the first `limit`), sorted by member list.
pub fn find_gcovers(c: &Collapse, limit: Option<usize>) -> Result<Vec<GCover>> {
    let l = c.source();
    if l.len() > MAX_GCOVER_SEARCH {
        return Err(Error::SizeCap { what: "g-cover search carrier", got: l.len(), max: MAX_GCOVER_SEARCH });
    }
    let k = c.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (0..k).filter(|&j| c.leq(i, j)).count());
    let mut search = Search { c, order, limit: limit.unwrap_or(usize::MAX), found: Vec::new() };
    let mut assign = vec![usize::MAX; k];
    let mut set = FixedBitSet::with_capacity(l.len());
    if search.propagate(&mut assign, &mut set, l.top()) {
        search.run(assign, set);
    }
    search.found.sort();
    search.found.dedup();
    Ok(search.found)
}

/// `(α, β)` with `β ∈ J`, `β ∼ x`, `α = β ∨ x` and `Δ(α, β) = x`.
pub fn alpha_beta(c: &Collapse, j: &GCover, x: usize) -> Result<(usize, usize)> {
    let l = c.source();
    l.check_id(x)?;
    let beta = j.rep(c.eta(x));
    let alpha = l.join(beta, x);
    if l.delta_opt(alpha, beta) != Some(x) {
        return Err(Error::NotGCover(format!("Δ(α, β) differs from {} for the chosen β", l.label(x))));
    }
    Ok((alpha, beta))
}

/// Every pair `(α, β)` in `J` with `β ≤ α` and `Δ(α, β) = x`, by
/// exhaustive search. Uniqueness means this has exactly one entry.
pub fn alpha_beta_candidates(l: &CubicAlg, j: &GCover, x: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &a in j.members() {
        for &b in j.members() {
            if l.delta_opt(a, b) == Some(x) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A g-cover realized as an implication algebra. `image[i]` is the
/// realization of the `i`-th member.
#[derive(Clone, Debug)]
pub struct GCoverImp {
    pub imp: ImpAlg,
    pub image: Vec<BElem>,
}

impl GCoverImp {
    pub fn new(l: &CubicAlg, j: &GCover) -> Result<Self> {
        let ms = j.members();
        let (imp, image) = ImpAlg::realize_order(ms.len(), |a, b| l.leq(ms[a], ms[b]))?;
        let out = GCoverImp { imp, image };
        for (a, &x) in ms.iter().enumerate() {
            for (b, &y) in ms.iter().enumerate() {
                let ok = out.of(j, l.join(x, y)) == Some(out.imp.join(out.image[a], out.image[b])?)
                    && out.of(j, l.derived_imp(x, y)) == Some(out.imp.implies(out.image[a], out.image[b])?);
                if !ok {
                    return Err(Error::NotGCover(format!(
                        "realized operations disagree at ({}, {})",
                        l.label(x),
                        l.label(y)
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Realization of host element `x`, if it is a member.
    pub fn of(&self, j: &GCover, x: usize) -> Option<BElem> {
        j.members().binary_search(&x).ok().map(|i| self.image[i])
    }
}

/// The isomorphism `φ(x) = ⟨α(x), Δ(1, x) ∨ β(x)⟩` from the host onto the
/// pair algebra of `J`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub realized: GCoverImp,
    pub pairs: PairModel,
    pub iso: CubicMorphism,
}

pub fn reconstruct(c: &Collapse, j: &GCover) -> Result<Reconstruction> {
    let l = c.source();
    let realized = GCoverImp::new(l, j)?;
    let pairs = PairModel::new(&realized.imp)?;
    let table = (0..l.len())
        .map(|x| {
            let (alpha, beta) = alpha_beta(c, j, x)?;
            let second = l.join(l.antipode(x), beta);
            let not_member = || Error::NotGCover(format!("component of the image of {} is not in J", l.label(x)));
            let a = realized.of(j, alpha).ok_or_else(not_member)?;
            let b = realized.of(j, second).ok_or_else(not_member)?;
            pairs.id(a, b).ok_or_else(|| Error::NotGCover(format!("image of {} is not a pair", l.label(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = CubicMorphism::from_table(l, &pairs.alg, table)?;
    iso.validate_iso()?;
    Ok(Reconstruction { realized, pairs, iso })
}

/// `L ∩ J` as a g-cover of the upward-closed subalgebra `sub` of the host.
/// Returns the restricted algebra, its collapse, the new-to-old id map and
/// the g-cover in new ids.
pub fn gcover_restrict(host: &Collapse, sub: &[usize], j: &GCover) -> Result<(Collapse, Vec<usize>, GCover)> {
    let m = host.source();
    let (alg, old) = m.restrict(sub)?;
    if !m.is_upward_closed(&m.bitset(sub)) {
        return Err(Error::Precondition("subalgebra is not upward closed".into()));
    }
    let c = Collapse::new(&alg)?;
    let members: Vec<usize> = (0..alg.len()).filter(|&i| j.contains(old[i])).collect();
    let g = is_gcover(&c, &members).map_err(|f| Error::NotGCover(f.describe(&alg)))?;
    Ok((c, old, g))
}

/// The finite envelope `ℐ(env(J))` of an algebra with g-cover `J`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub gcover: GCover,
    pub lattice: ImpAlg,
    pub pairs: PairModel,
    pub embed: CubicMorphism,
    pub mr: MrReport,
}

impl Envelope {
    /// Builds the envelope from the first g-cover found.
    pub fn new(c: &Collapse) -> Result<Self> {
        let j = find_gcovers(c, Some(1))?.into_iter().next().ok_or(Error::NoGCover)?;
        Self::from_gcover(c, &j)
    }

    pub fn from_gcover(c: &Collapse, j: &GCover) -> Result<Self> {
        let rec = reconstruct(c, j)?;
        let lattice = envelope_lattice(&rec.realized.imp);
        let pairs = PairModel::new(&lattice)?;
        let incl = ImpMorphism::inclusion(&rec.realized.imp, &lattice)?;
        let lift = functor_i_on_morphism(&incl, &rec.pairs, &pairs)?;
        let embed = rec.iso.then(&lift)?;
        embed.validate()?;
        let mr = check_mr_axiom(&pairs.alg);
        Ok(Envelope { gcover: j.clone(), lattice, pairs, embed, mr })
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r = self.embed.table().to_vec();
        r.sort_unstable();
        r.dedup();
        r
    }

    pub fn range_upward_closed(&self) -> bool {
        let env = &self.pairs.alg;
        env.is_upward_closed(&env.bitset(&self.range()))
    }

    /// Closure of the range under `∨`, `Δ` and caret.
    pub fn generated(&self) -> Vec<usize> {
        let env = &self.pairs.alg;
        let mut set = env.bitset(&self.range());
        loop {
            let cur: Vec<usize> = set.ones().collect();
            let before = cur.len();
            for &x in &cur {
                for &y in &cur {
                    set.insert(env.join(x, y));
                    if let Some(v) = env.delta_opt(x, y) {
                        set.insert(v);
                    }
                    if let Some(v) = env.caret(x, y) {
                        set.insert(v);
                    }
                }
            }
            if set.count_ones(..) == before {
                return set.ones().collect();
            }
        }
    }

    /// Every pair of images of g-cover members has a meet in the envelope.
    pub fn gcover_has_fip(&self) -> bool {
        let env = &self.pairs.alg;
        let img: Vec<usize> = self.gcover.members().iter().map(|&x| self.embed.apply(x)).collect();
        img.iter().all(|&a| img.iter().all(|&b| env.poset_meet(a, b).is_some()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{IntervalModel, SignedSetModel};
    use crate::order::BoolAlg;

    fn interval(names: &[&str]) -> (BoolAlg, IntervalModel, Collapse) {
        let b = BoolAlg::with_atoms(names).unwrap();
        let m = IntervalModel::new(&b).unwrap();
        let c = Collapse::new(&m.alg).unwrap();
        (b, m, c)
    }

    #[test]
    fn gcover_examples_one_atom() {
        let (b, m, c) = interval(&["p"]);
        let (z, o) = (b.bottom(), b.top());
        let iv = |lo, hi| m.id(lo, hi).unwrap();
        assert!(is_gcover(&c, &[iv(z, z), iv(z, o)]).is_ok());
        assert!(is_gcover(&c, &[iv(o, o), iv(z, o)]).is_ok());
        assert!(matches!(is_gcover(&c, &[iv(z, z), iv(o, o), iv(z, o)]), Err(GCoverFailure::SameClass(..))));
        assert_eq!(is_gcover(&c, &[iv(z, z)]), Err(GCoverFailure::MissingTop));
        let all = find_gcovers(&c, None).unwrap();
        assert_eq!(all.len(), 2);

        let j = is_gcover(&c, &[iv(z, z), iv(z, o)]).unwrap();
        assert_eq!(alpha_beta(&c, &j, iv(o, o)).unwrap(), (iv(z, o), iv(z, z)));
        assert_eq!(alpha_beta(&c, &j, iv(z, z)).unwrap(), (iv(z, z), iv(z, z)));
        assert_eq!(alpha_beta(&c, &j, m.alg.top()).unwrap(), (m.alg.top(), m.alg.top()));
        let r = reconstruct(&c, &j).unwrap();
        assert_eq!(r.pairs.alg.len(), 3);
    }

    #[test]
    fn signed_one_has_two_gcovers() {
        let s = SignedSetModel::new(1).unwrap();
        let c = Collapse::new(&s.alg).unwrap();
        let all = find_gcovers(&c, None).unwrap();
        let expected: Vec<Vec<usize>> = {
            let mut v = vec![
                {
                    let mut a = vec![s.id(1, 0).unwrap(), s.alg.top()];
                    a.sort();
                    a
                },
                {
                    let mut a = vec![s.id(0, 1).unwrap(), s.alg.top()];
                    a.sort();
                    a
                },
            ];
            v.sort();
            v
        };
        assert_eq!(all.iter().map(|g| g.members().to_vec()).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn trivial_algebra_has_one_gcover() {
        let s = SignedSetModel::new(0).unwrap();
        let c = Collapse::new(&s.alg).unwrap();
        let all = find_gcovers(&c, None).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].members(), &[0]);
    }

    #[test]
    fn two_atom_interval_gcovers() {
        let (b, m, c) = interval(&["p", "q"]);
        let all = find_gcovers(&c, None).unwrap();
        assert_eq!(all.len(), 4);
        let lower: Vec<usize> = b.elements().map(|x| m.id(b.bottom(), x).unwrap()).collect();
        let j = is_gcover(&c, &lower).unwrap();
        assert!(all.contains(&j));
        let r = reconstruct(&c, &j).unwrap();
        assert_eq!(r.pairs.alg.len(), 9);
        for x in 0..m.alg.len() {
            assert_eq!(alpha_beta_candidates(&m.alg, &j, x).len(), 1);
        }
        // members go to <x, 1>
        for &x in j.members() {
            let (a, bb) = r.pairs.pair(r.iso.apply(x));
            assert_eq!(a, r.realized.of(&j, x).unwrap());
            assert_eq!(bb, r.realized.imp.top());
        }
    }

    #[test]
    fn restriction_to_upward_closed_subalgebras() {
        let (_, m, c) = interval(&["p", "q"]);
        let j = find_gcovers(&c, Some(1)).unwrap().remove(0);
        let (_, _, g) = gcover_restrict(&c, &(0..9).collect::<Vec<_>>(), &j).unwrap();
        assert_eq!(g.members(), j.members());
        let (_, old, g) = gcover_restrict(&c, &[m.alg.top()], &j).unwrap();
        assert_eq!(old, vec![m.alg.top()]);
        assert_eq!(g.members(), &[0]);
        // not Δ-closed: rejected before the g-cover check
        let p = m.alg.find("[{p},{p}]").unwrap();
        let up: Vec<usize> = m.alg.up_set(p).ones().collect();
        assert!(matches!(gcover_restrict(&c, &up, &j), Err(Error::Precondition(_))));
    }

    #[test]
    fn envelope_of_mr_algebra_is_itself() {
        let (_, m, c) = interval(&["p", "q"]);
        let e = Envelope::new(&c).unwrap();
        assert_eq!(e.pairs.alg.len(), m.alg.len());
        assert!(e.embed.is_bijective());
        assert!(e.mr.mr_holds());
        assert!(e.gcover_has_fip());
    }

    #[test]
    fn envelope_adds_missing_meet() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let p = b.atom_named("p").unwrap();
        let q = b.atom_named("q").unwrap();
        let i = ImpAlg::from_carrier(&b, &[p, q, b.top()]).unwrap();
        let pm = PairModel::new(&i).unwrap();
        let c = Collapse::new(&pm.alg).unwrap();
        let e = Envelope::new(&c).unwrap();
        assert_eq!(e.lattice.len(), 4);
        assert!(e.pairs.alg.len() > pm.alg.len());
        assert!(e.mr.mr_holds());
        assert!(e.embed.is_injective());
        assert!(e.range_upward_closed());
        assert_eq!(e.generated().len(), e.pairs.alg.len());
        assert!(e.gcover_has_fip());
    }
}
