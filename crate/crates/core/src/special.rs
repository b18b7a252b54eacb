//! Special subalgebras and the algebra `ℒ_sB` they generate.
//!
//! A special subalgebra is an upward-closed implication subalgebra that is
//! pairwise compatible (`x ∨ Δ(1, y) = 1`) and absorbs every meet that
//! exists in the host. Everything here is set-extensional: a
//! [`SpecialSub`] is nothing more than its sorted member list.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::collapse::Collapse;
use crate::cubic::{check_cubic_axioms, check_mr_axiom, AxiomReport, CubicAlg, CubicMorphism, MrReport};
use crate::error::{Error, Result};
use crate::gcover::{find_gcovers, GCover};

/// Largest host on which every special subalgebra is enumerated for law
/// quantification.
pub const MAX_SPECIAL_ENUM: usize = 27;

/// Largest host for which `ℒ_sB` is materialized.
pub const MAX_LSB_HOST: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecialSub {
    members: Vec<usize>,
}

impl SpecialSub {
    /// Validates `members` against every clause of the definition.
    pub fn new(l: &CubicAlg, members: &[usize]) -> Result<Self> {
        match special_failure(l, members) {
            None => Ok(Self::canonical(members)),
            Some(f) => Err(Error::NotSpecial(f.describe(l))),
        }
    }

    pub(crate) fn canonical(members: &[usize]) -> Self {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    /// `{1}`.
    pub fn trivial(l: &CubicAlg) -> Self {
        Self { members: vec![l.top()] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &SpecialSub) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn show(&self, l: &CubicAlg) -> String {
        show_set(l, &self.members)
    }
}

/// Renders a set of elements as `{a, b, …}` using the host's labels.
pub fn show_set(l: &CubicAlg, set: &[usize]) -> String {
    let parts: Vec<&str> = set.iter().map(|&x| l.label(x)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// The clause of the definition of a special subalgebra that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialFailure {
    BadElement(usize),
    MissingTop,
    NotUpwardClosed { member: usize, above: usize },
    NotJoinClosed(usize, usize),
    NotImpClosed(usize, usize),
    Incompatible(usize, usize),
    MeetNotAbsorbed(usize, usize),
}

impl SpecialFailure {
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
            Self::Incompatible(x, y) => format!("{} ∨ Δ(1, {}) ≠ 1", s(x), s(y)),
            Self::MeetNotAbsorbed(x, y) => format!("meet of ({}, {}) lies outside", s(x), s(y)),
        }
    }
}

impl fmt::Display for SpecialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// First pair `(x, y)` with `x ∨ Δ(1, y) ≠ 1`.
pub fn incompatible_pair(l: &CubicAlg, set: &[usize]) -> Option<(usize, usize)> {
    set.iter().flat_map(|&x| set.iter().map(move |&y| (x, y))).find(|&(x, y)| l.join(x, l.antipode(y)) != l.top())
}

pub fn is_compatible(l: &CubicAlg, set: &[usize]) -> bool {
    incompatible_pair(l, set).is_none()
}

pub fn special_failure(l: &CubicAlg, members: &[usize]) -> Option<SpecialFailure> {
    if let Some(&bad) = members.iter().find(|&&x| x >= l.len()) {
        return Some(SpecialFailure::BadElement(bad));
    }
    let set = l.bitset(members);
    if !set.contains(l.top()) {
        return Some(SpecialFailure::MissingTop);
    }
    let ms: Vec<usize> = set.ones().collect();
    for &x in &ms {
        if let Some(y) = l.up_set(x).ones().find(|&y| !set.contains(y)) {
            return Some(SpecialFailure::NotUpwardClosed { member: x, above: y });
        }
    }
    for &x in &ms {
        for &y in &ms {
            if !set.contains(l.join(x, y)) {
                return Some(SpecialFailure::NotJoinClosed(x, y));
            }
            if !set.contains(l.derived_imp(x, y)) {
                return Some(SpecialFailure::NotImpClosed(x, y));
            }
        }
    }
    if let Some((x, y)) = incompatible_pair(l, &ms) {
        return Some(SpecialFailure::Incompatible(x, y));
    }
    for &x in &ms {
        for &y in &ms {
            if l.poset_meet(x, y).is_some_and(|m| !set.contains(m)) {
                return Some(SpecialFailure::MeetNotAbsorbed(x, y));
            }
        }
    }
    None
}

pub fn is_special(l: &CubicAlg, members: &[usize]) -> bool {
    special_failure(l, members).is_none()
}

fn close(l: &CubicAlg, seed: &[usize]) -> FixedBitSet {
    let mut set = l.bitset(seed);
    set.insert(l.top());
    loop {
        let ms: Vec<usize> = set.ones().collect();
        let before = ms.len();
        for &x in &ms {
            set.union_with(l.up_set(x));
            for &y in &ms {
                set.insert(l.join(x, y));
                set.insert(l.derived_imp(x, y));
                if let Some(m) = l.poset_meet(x, y) {
                    set.insert(m);
                }
            }
        }
        if set.count_ones(..) == before {
            return set;
        }
    }
}

/// The smallest special subalgebra containing the compatible set `a`.
pub fn special_closure(l: &CubicAlg, a: &[usize]) -> Result<SpecialSub> {
    for &x in a {
        l.check_id(x)?;
    }
    if let Some((x, y)) = incompatible_pair(l, a) {
        return Err(Error::Incompatible(format!("{} ∨ Δ(1, {}) ≠ 1", l.label(x), l.label(y))));
    }
    let closed: Vec<usize> = close(l, a).ones().collect();
    if let Some((x, y)) = incompatible_pair(l, &closed) {
        return Err(Error::Incompatible(format!("closure loses compatibility at ({}, {})", l.label(x), l.label(y))));
    }
    Ok(SpecialSub { members: closed })
}

/// The principal special subalgebra `[g, 1]`.
pub fn principal(l: &CubicAlg, g: usize) -> Result<SpecialSub> {
    l.check_id(g)?;
    Ok(SpecialSub { members: l.up_set(g).ones().collect() })
}

/// `I ∩ J`.
pub fn special_meet(i: &SpecialSub, j: &SpecialSub) -> SpecialSub {
    SpecialSub { members: i.members.iter().copied().filter(|&x| j.contains(x)).collect() }
}

/// `{f ∨ g | f ∈ I, g ∈ J}`.
pub fn join_set(l: &CubicAlg, i: &SpecialSub, j: &SpecialSub) -> Vec<usize> {
    sorted(i.members.iter().flat_map(|&f| j.members.iter().map(move |&g| l.join(f, g))).collect())
}

/// `{f ∧ g | f ∈ I, g ∈ J, f ∧ g exists}`.
pub fn meet_set(l: &CubicAlg, i: &SpecialSub, j: &SpecialSub) -> Vec<usize> {
    sorted(i.members.iter().flat_map(|&f| j.members.iter().filter_map(move |&g| l.poset_meet(f, g))).collect())
}

/// `I ∨ J`: the special subalgebra generated by `I ∪ J`, defined only when
/// the union is compatible.
pub fn special_join(l: &CubicAlg, i: &SpecialSub, j: &SpecialSub) -> Option<SpecialSub> {
    let union = sorted(i.members.iter().chain(&j.members).copied().collect());
    if !is_compatible(l, &union) {
        return None;
    }
    special_closure(l, &union).ok()
}

/// Join of a whole family; `{1}` for the empty family.
pub fn special_join_all<'a>(l: &CubicAlg, family: impl IntoIterator<Item = &'a SpecialSub>) -> Option<SpecialSub> {
    let union = sorted(family.into_iter().flat_map(|s| s.members.iter().copied()).collect());
    if !is_compatible(l, &union) {
        return None;
    }
    special_closure(l, &union).ok()
}

/// `Δ(1, I)` as a set.
pub fn antipode_set(l: &CubicAlg, i: &SpecialSub) -> Vec<usize> {
    sorted(i.members.iter().map(|&x| l.antipode(x)).collect())
}

/// `ℐ_g = {Δ(g ∨ f, f) | f ∈ ℐ}` as a set, without validation.
pub fn sub_g_set(l: &CubicAlg, i: &SpecialSub, g: usize) -> Vec<usize> {
    sorted(i.members.iter().map(|&f| l.delta_opt(l.join(g, f), f).expect("f ≤ g ∨ f")).collect())
}

/// `ℐ_g`, checked to be special.
pub fn sub_g(l: &CubicAlg, i: &SpecialSub, g: usize) -> Result<SpecialSub> {
    l.check_id(g)?;
    SpecialSub::new(l, &sub_g_set(l, i, g))
}

/// `g → ℐ = {g → f | f ∈ ℐ}` as a set.
pub fn imp_set(l: &CubicAlg, g: usize, i: &SpecialSub) -> Vec<usize> {
    sorted(i.members.iter().map(|&f| l.derived_imp(g, f)).collect())
}

fn require_subset(l: &CubicAlg, j: &SpecialSub, i: &SpecialSub) -> Result<()> {
    match j.members.iter().find(|&&x| !i.contains(x)) {
        None => Ok(()),
        Some(&x) => Err(Error::Precondition(format!(
            "{} is not a subset of {}: {} is missing",
            j.show(l),
            i.show(l),
            l.label(x)
        ))),
    }
}

/// `J → I = {h ∈ I | ∀g ∈ J, h ∨ g = 1}`, for `J ⊆ I`.
pub fn rel_complement(l: &CubicAlg, j: &SpecialSub, i: &SpecialSub) -> Result<SpecialSub> {
    require_subset(l, j, i)?;
    let members: Vec<usize> =
        i.members.iter().copied().filter(|&h| j.members.iter().all(|&g| l.join(h, g) == l.top())).collect();
    Ok(SpecialSub { members })
}

/// `J ⊃ I = ⋂{H | H ∨ J = I}` with `H` ranging over `specials`.
pub fn rel_complement_a(
    l: &CubicAlg,
    j: &SpecialSub,
    i: &SpecialSub,
    specials: &[SpecialSub],
) -> Result<Option<SpecialSub>> {
    require_subset(l, j, i)?;
    Ok(specials
        .iter()
        .filter(|h| special_join(l, h, j).as_ref() == Some(i))
        .cloned()
        .reduce(|a, b| special_meet(&a, &b)))
}

/// `J ⇒ I = ⋁{H ⊆ I | H ∩ J = {1}}` with `H` ranging over `specials`.
pub fn rel_complement_b(
    l: &CubicAlg,
    j: &SpecialSub,
    i: &SpecialSub,
    specials: &[SpecialSub],
) -> Result<Option<SpecialSub>> {
    require_subset(l, j, i)?;
    let one = SpecialSub::trivial(l);
    let family: Vec<&SpecialSub> = specials.iter().filter(|h| h.is_subset(i) && special_meet(h, j) == one).collect();
    Ok(special_join_all(l, family))
}

/// `Δ(J, I) = Δ(1, J → I) ∨ J`, for `J ⊆ I`.
pub fn delta_special(l: &CubicAlg, j: &SpecialSub, i: &SpecialSub) -> Result<SpecialSub> {
    let imp = rel_complement(l, j, i)?;
    let anti = SpecialSub::canonical(&antipode_set(l, &imp));
    special_join(l, &anti, j).ok_or_else(|| Error::Incompatible(format!("Δ(1, {}) ∪ {}", imp.show(l), j.show(l))))
}

/// `Q ∨ (Q → P) = P`, for `Q ⊆ P`.
pub fn is_boolean(l: &CubicAlg, q: &SpecialSub, p: &SpecialSub) -> Result<bool> {
    let comp = rel_complement(l, q, p)?;
    Ok(special_join(l, q, &comp).as_ref() == Some(p))
}

/// `(Q → P) → P = Q`, for `Q ⊆ P`.
pub fn is_weakly_boolean(l: &CubicAlg, q: &SpecialSub, p: &SpecialSub) -> Result<bool> {
    let comp = rel_complement(l, q, p)?;
    Ok(rel_complement(l, &comp, p)? == *q)
}

fn eta_image(c: &Collapse, s: &SpecialSub) -> BTreeSet<usize> {
    s.members.iter().map(|&x| c.eta(x)).collect()
}

/// `P ∼ R`, read as equality of the images under the collapse map.
pub fn sim_special(c: &Collapse, p: &SpecialSub, r: &SpecialSub) -> bool {
    eta_image(c, p) == eta_image(c, r)
}

/// `β_{PR}`: sends each `p ∈ P` to the unique `r ∈ R` with `p ∼ r`.
pub fn beta_transfer(c: &Collapse, p: &SpecialSub, r: &SpecialSub) -> Result<BTreeMap<usize, usize>> {
    let l = c.source();
    if !sim_special(c, p, r) {
        return Err(Error::Precondition(format!("{} ≁ {}", p.show(l), r.show(l))));
    }
    let mut by_class = BTreeMap::new();
    for &x in &r.members {
        if let Some(prev) = by_class.insert(c.eta(x), x) {
            return Err(Error::Precondition(format!(
                "{} and {} in {} are ∼-equivalent",
                l.label(prev),
                l.label(x),
                r.show(l)
            )));
        }
    }
    Ok(p.members.iter().map(|&x| (x, by_class[&c.eta(x)])).collect())
}

/// Every special subalgebra of `l`, sorted. Capped at
/// [`MAX_SPECIAL_ENUM`] elements.
pub fn enumerate_specials(l: &CubicAlg) -> Result<Vec<SpecialSub>> {
    enumerate_capped(l, MAX_SPECIAL_ENUM)
}

fn enumerate_capped(l: &CubicAlg, cap: usize) -> Result<Vec<SpecialSub>> {
    if l.len() > cap {
        return Err(Error::SizeCap { what: "host for special enumeration", got: l.len(), max: cap });
    }
    let start = special_closure(l, &[])?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for x in 0..l.len() {
            if t.contains(x) {
                continue;
            }
            let mut seed = t.members.clone();
            seed.push(x);
            if !is_compatible(l, &seed) {
                continue;
            }
            if let Ok(s) = special_closure(l, &seed) {
                if !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every special subalgebra `Q ⊆ P` that is `P`-Boolean.
pub fn boolean_below(l: &CubicAlg, p: &SpecialSub, specials: &[SpecialSub]) -> Result<Vec<SpecialSub>> {
    let mut out = Vec::new();
    for q in specials.iter().filter(|q| q.is_subset(p)) {
        if is_boolean(l, q, p)? {
            out.push(q.clone());
        }
    }
    Ok(out)
}

/// The algebra `ℒ_sB` of special subalgebras that are `P`-Boolean for
/// some g-cover `P`, under reverse inclusion.
#[derive(Clone, Debug)]
pub struct Lsb {
    host: CubicAlg,
    elements: Vec<SpecialSub>,
    alg: CubicAlg,
    gcovers: Vec<GCover>,
    embed: Vec<Option<usize>>,
}

/// One clause of the `ℒ_sB` theorem with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsbCheck {
    pub clause: &'static str,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LsbReport {
    pub checks: Vec<LsbCheck>,
    pub axioms: AxiomReport,
    pub mr: MrReport,
}

impl LsbReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn get(&self, clause: &str) -> Option<&LsbCheck> {
        self.checks.iter().find(|c| c.clause == clause)
    }
}

/// Materializes `ℒ_sB` for the source of `c`.
///
/// Fails with [`Error::NoGCover`] when there is nothing to build from and
/// with [`Error::NotClosed`] when the candidate set is not closed under
/// `∩` or `Δ`, since the tables cannot then be filled.
pub fn build_lsb(c: &Collapse) -> Result<Lsb> {
    let l = c.source();
    if l.len() > MAX_LSB_HOST {
        return Err(Error::SizeCap { what: "host for ℒ_sB", got: l.len(), max: MAX_LSB_HOST });
    }
    let gcovers = find_gcovers(c, None)?;
    if gcovers.is_empty() {
        return Err(Error::NoGCover);
    }
    let specials = enumerate_capped(l, MAX_LSB_HOST)?;
    let mut chosen = BTreeSet::new();
    for g in &gcovers {
        let p = SpecialSub::new(l, g.members())?;
        chosen.extend(boolean_below(l, &p, &specials)?);
    }
    let elements: Vec<SpecialSub> = chosen.into_iter().collect();
    let index: BTreeMap<&SpecialSub, usize> = elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let lookup = |s: &SpecialSub, what: &str| {
        index.get(s).copied().ok_or_else(|| Error::NotClosed(format!("{what} gives {}", s.show(l))))
    };
    let n = elements.len();
    let top = lookup(&SpecialSub::trivial(l), "{1}")?;
    let mut join = vec![vec![0; n]; n];
    let mut delta = vec![vec![None; n]; n];
    for (x, a) in elements.iter().enumerate() {
        for (y, b) in elements.iter().enumerate() {
            join[x][y] = lookup(&special_meet(a, b), &format!("{} ∩ {}", a.show(l), b.show(l)))?;
            if a.is_subset(b) {
                let d = delta_special(l, a, b)?;
                delta[x][y] = Some(lookup(&d, &format!("Δ({}, {})", a.show(l), b.show(l)))?);
            }
        }
    }
    let labels = elements.iter().map(|s| s.show(l)).collect();
    let alg = CubicAlg::from_tables(labels, top, join, delta)?;
    let embed = (0..l.len()).map(|g| principal(l, g).map(|s| index.get(&s).copied())).collect::<Result<Vec<_>>>()?;
    Ok(Lsb { host: l.clone(), elements, alg, gcovers, embed })
}

impl Lsb {
    pub fn host(&self) -> &CubicAlg {
        &self.host
    }

    pub fn elements(&self) -> &[SpecialSub] {
        &self.elements
    }

    pub fn alg(&self) -> &CubicAlg {
        &self.alg
    }

    pub fn gcovers(&self) -> &[GCover] {
        &self.gcovers
    }

    /// Index in `ℒ_sB` of `[g, 1]`, if present.
    pub fn embed(&self, g: usize) -> Option<usize> {
        self.embed.get(g).copied().flatten()
    }

    /// Minimal elements, i.e. maximal member sets.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.alg.len()).filter(|&x| self.alg.down_set(x).count_ones(..) == 1).collect()
    }

    /// `g ↦ [g, 1]` as a cubic morphism, when every principal set lies in
    /// `ℒ_sB`.
    pub fn embedding(&self) -> Result<CubicMorphism> {
        let table = (0..self.host.len())
            .map(|g| {
                self.embed(g).ok_or_else(|| Error::NotClosed(format!("[{}, 1] is not in ℒ_sB", self.host.label(g))))
            })
            .collect::<Result<Vec<_>>>()?;
        CubicMorphism::from_table(&self.host, &self.alg, table)
    }

    /// Checks clauses (a) to (d).
    pub fn check(&self) -> LsbReport {
        let l = &self.host;
        let mut checks = Vec::new();
        let has_one = self.elements.iter().any(|s| *s == SpecialSub::trivial(l));
        checks.push(LsbCheck { clause: "a", witness: (!has_one).then(|| "{1} is missing".to_string()) });

        let axioms = check_cubic_axioms(&self.alg);
        let mr = check_mr_axiom(&self.alg);
        let atoms = self.atoms();
        let unatomic = (0..self.alg.len()).find(|&x| !atoms.iter().any(|&a| self.alg.leq(a, x)));
        let b_witness = if !axioms.required_pass() {
            Some(format!("cubic axioms fail: {:?}", axioms.failures().map(|f| f.name).collect::<Vec<_>>()))
        } else if !mr.mr_holds() {
            Some(format!("MR axiom fails at {:?}", mr.mr_witness))
        } else {
            unatomic.map(|x| format!("{} is above no atom", self.alg.label(x)))
        };
        checks.push(LsbCheck { clause: "b", witness: b_witness });

        let c_witness = match self.embedding() {
            Err(e) => Some(e.to_string()),
            Ok(e) => {
                if let Err(err) = e.validate() {
                    Some(err.to_string())
                } else if !e.is_injective() {
                    Some("g ↦ [g, 1] is not injective".into())
                } else {
                    let order = (0..l.len())
                        .flat_map(|x| (0..l.len()).map(move |y| (x, y)))
                        .find(|&(x, y)| l.leq(x, y) != self.alg.leq(e.apply(x), e.apply(y)));
                    let full = self.elements.iter().find_map(|q| {
                        q.members().iter().find(|&&g| !principal(l, g).is_ok_and(|s| s.is_subset(q))).map(|&g| (g, q))
                    });
                    match (order, full) {
                        (Some((x, y)), _) => Some(format!("order not reflected at ({}, {})", l.label(x), l.label(y))),
                        (None, Some((g, q))) => Some(format!("[{}, 1] ⊄ {}", l.label(g), q.show(l))),
                        (None, None) => None,
                    }
                }
            }
        };
        checks.push(LsbCheck { clause: "c", witness: c_witness });

        let atom_sets: BTreeSet<&[usize]> = atoms.iter().map(|&a| self.elements[a].members()).collect();
        let cover_sets: BTreeSet<&[usize]> = self.gcovers.iter().map(GCover::members).collect();
        let d_witness = (atom_sets != cover_sets).then(|| {
            format!("{} atoms against {} g-covers, or differing member sets", atom_sets.len(), cover_sets.len())
        });
        checks.push(LsbCheck { clause: "d", witness: d_witness });
        LsbReport { checks, axioms, mr }
    }
}
