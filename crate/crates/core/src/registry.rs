//! The law registry: every labelled result checked by brute force on
//! finite instances, keyed by its label.
//!
//! Each [`Law`] carries a domain description, a gating flag and a checker.
//! Running a set of laws over a corpus yields a [`Report`] whose order is
//! fixed by registry order, then corpus order.

use std::cell::{Cell, OnceCell};
use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::collapse::{transfer_check, upward_closed_subalgebras, Collapse, Iota, Kappa};
use crate::constructions::{functor_i_on_morphism, iso_pair_interval, iso_signed_interval, IntervalModel, PairModel};
use crate::corpus::{Instance, Origin};
use crate::cubic::{check_cubic_axioms, check_mr_axiom, AxiomReport, CubicAlg, CubicMorphism, MrReport};
use crate::error::{Error, Result};
use crate::gcover::{
    alpha_beta_candidates, find_gcovers, gcover_restrict, is_gcover, Envelope, GCover, GCoverImp, MAX_GCOVER_SEARCH,
};
use crate::implication::{envelope_lattice, ImpAlg, ImpMorphism};
use crate::special::{
    antipode_set, beta_transfer, boolean_below, build_lsb, delta_special, enumerate_specials, imp_set, is_boolean,
    is_compatible, is_special, is_weakly_boolean, join_set, meet_set, principal, rel_complement, rel_complement_a,
    rel_complement_b, sim_special, special_failure, special_join, special_meet, sub_g_set, SpecialSub,
};

/// Hosts up to this size get a brute-force subset search as an
/// independent oracle for g-covers and special subalgebras.
const SUBSET_ORACLE_MAX: usize = 12;

/// Cap for enumerating upward-closed subalgebras.
const UPWARD_SUB_MAX: usize = 27;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Status {
    pub fn word(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail(_) => "FAIL",
            Status::Skipped(_) => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub instance: String,
    pub gating: bool,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub results: Vec<LawResult>,
}

impl Report {
    /// Some gating law failed.
    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| r.gating && matches!(r.status, Status::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| matches!(r.status, Status::Fail(_)))
    }

    pub fn get(&self, law: &str, instance: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law && r.instance == instance)
    }

    pub fn count(&self, word: &str) -> usize {
        self.results.iter().filter(|r| r.status.word() == word).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = write!(out, "{:<4} {:<22} {}", r.status.word(), r.law, r.instance);
            match &r.status {
                Status::Pass => {}
                Status::Fail(w) => {
                    let _ = write!(out, "  witness: {w}");
                }
                Status::Skipped(why) => {
                    let _ = write!(out, "  ({why})");
                }
            }
            if let Some(n) = &r.note {
                let _ = write!(out, "  [{n}]");
            }
            if !r.gating {
                out.push_str("  non-gating");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} skipped",
            self.count("pass"),
            self.count("FAIL"),
            self.count("skip")
        );
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Seed for sampled quantifiers.
    pub seed: u64,
    /// Largest tuple domain checked exhaustively; larger ones are sampled
    /// with this many draws.
    pub budget: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { seed: 0, budget: 1_000_000 }
    }
}

enum Stop {
    Skip(String),
    Fail(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fail(e.to_string())
    }
}

type Res<T = Option<String>> = std::result::Result<T, Stop>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Stop::Fail(format!($($fmt)+)));
        }
    };
}

fn skip<T>(why: impl Into<String>) -> Res<T> {
    Err(Stop::Skip(why.into()))
}

pub struct Law {
    pub id: &'static str,
    pub domain: &'static str,
    pub gating: bool,
    check: fn(&Ctx) -> Res,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).field("domain", &self.domain).field("gating", &self.gating).finish()
    }
}

/// Per-instance state shared by all laws, computed on first use.
struct Ctx<'a> {
    inst: &'a Instance,
    opts: RunOptions,
    sampled: Cell<bool>,
    axioms: OnceCell<AxiomReport>,
    mr: OnceCell<MrReport>,
    collapse: OnceCell<std::result::Result<Collapse, String>>,
    gcovers: OnceCell<std::result::Result<Vec<GCover>, String>>,
    specials: OnceCell<std::result::Result<Vec<SpecialSub>, String>>,
}

impl<'a> Ctx<'a> {
    fn new(inst: &'a Instance, opts: RunOptions) -> Self {
        Self {
            inst,
            opts,
            sampled: Cell::new(false),
            axioms: OnceCell::new(),
            mr: OnceCell::new(),
            collapse: OnceCell::new(),
            gcovers: OnceCell::new(),
            specials: OnceCell::new(),
        }
    }

    fn l(&self) -> &CubicAlg {
        &self.inst.alg
    }

    fn lab(&self, x: usize) -> &str {
        self.l().label(x)
    }

    fn show(&self, s: &SpecialSub) -> String {
        s.show(self.l())
    }

    fn axioms(&self) -> &AxiomReport {
        self.axioms.get_or_init(|| check_cubic_axioms(self.l()))
    }

    fn mr(&self) -> &MrReport {
        self.mr.get_or_init(|| check_mr_axiom(self.l()))
    }

    fn cubic(&self) -> Res<()> {
        if self.axioms().required_pass() {
            Ok(())
        } else {
            skip("not a cubic algebra")
        }
    }

    fn is_mr(&self) -> Res<bool> {
        self.cubic()?;
        Ok(self.mr().mr_holds())
    }

    fn collapse(&self) -> Res<&Collapse> {
        self.cubic()?;
        match self.collapse.get_or_init(|| Collapse::new(self.l()).map_err(|e| e.to_string())) {
            Ok(c) => Ok(c),
            Err(e) => skip(format!("collapse unavailable: {e}")),
        }
    }

    fn gcovers(&self) -> Res<&[GCover]> {
        let c = self.collapse()?;
        if self.l().len() > MAX_GCOVER_SEARCH {
            return skip("host exceeds the g-cover search cap");
        }
        match self.gcovers.get_or_init(|| find_gcovers(c, None).map_err(|e| e.to_string())) {
            Ok(g) => Ok(g),
            Err(e) => skip(e.clone()),
        }
    }

    fn some_gcover(&self) -> Res<&[GCover]> {
        let g = self.gcovers()?;
        if g.is_empty() {
            return skip("no g-cover");
        }
        Ok(g)
    }

    fn specials(&self) -> Res<&[SpecialSub]> {
        self.collapse()?;
        match self.specials.get_or_init(|| enumerate_specials(self.l()).map_err(|e| e.to_string())) {
            Ok(s) => Ok(s),
            Err(e) => skip(e.clone()),
        }
    }

    /// Pairs `(J, I)` of specials with `J ⊆ I`.
    fn nested(&self) -> Res<Vec<(&SpecialSub, &SpecialSub)>> {
        let sp = self.specials()?;
        Ok(sp.iter().flat_map(|i| sp.iter().filter(move |j| j.is_subset(i)).map(move |j| (j, i))).collect())
    }

    /// Triples `(J, H, I)` of specials with `J ⊆ H ⊆ I`.
    fn chains(&self) -> Res<Vec<[&SpecialSub; 3]>> {
        let sp = self.specials()?;
        let mut out = Vec::new();
        for i in sp {
            for h in sp.iter().filter(|h| h.is_subset(i)) {
                for j in sp.iter().filter(|j| j.is_subset(h)) {
                    out.push([j, h, i]);
                }
            }
        }
        Ok(out)
    }

    /// All `K`-tuples over `0..n`, or a seeded sample when there are more
    /// than the budget allows.
    fn tuples<const K: usize>(&self, n: usize) -> Vec<[usize; K]> {
        let total = (0..K).try_fold(1usize, |acc, _| acc.checked_mul(n));
        match total {
            Some(t) if t <= self.opts.budget => (0..t)
                .map(|mut code| {
                    let mut out = [0; K];
                    for slot in out.iter_mut().rev() {
                        *slot = code % n;
                        code /= n;
                    }
                    out
                })
                .collect(),
            _ => {
                self.sampled.set(true);
                let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
                (0..self.opts.budget).map(|_| std::array::from_fn(|_| rng.gen_range(0..n))).collect()
            }
        }
    }

    fn pair_model(&self) -> Res<(ImpAlg, PairModel)> {
        match &self.inst.origin {
            Origin::Pair(imp) => {
                let pm = PairModel::new(imp)?;
                ensure!(pm.alg == *self.l(), "instance differs from the pair model it claims to be");
                Ok((imp.clone(), pm))
            }
            _ => skip("not a pair algebra"),
        }
    }

    /// The host as a pair algebra `ℐ(I)`: the base `I`, its pair model and
    /// an isomorphism from the host onto that model.
    fn pair_view(&self) -> Res<(ImpAlg, PairModel, CubicMorphism)> {
        match &self.inst.origin {
            Origin::Pair(_) => {
                let (imp, pm) = self.pair_model()?;
                let id = CubicMorphism::identity(&pm.alg);
                Ok((imp, pm, id))
            }
            Origin::Interval(b) => {
                let (pm, im, iso) = iso_pair_interval(b)?;
                ensure!(im.alg == *self.l(), "instance differs from its interval model");
                Ok((ImpAlg::full(b), pm, iso.inverse()?))
            }
            Origin::Signed(n) => {
                let (s, ints, to_int) = iso_signed_interval(*n)?;
                ensure!(s.alg == *self.l(), "instance differs from its signed-set model");
                let (pm, _, iso) = iso_pair_interval(ints.base())?;
                Ok((ImpAlg::full(ints.base()), pm, to_int.then(&iso.inverse()?)?))
            }
            _ => skip("not a pair, interval or signed-set algebra"),
        }
    }
}

fn set_str(l: &CubicAlg, s: &[usize]) -> String {
    crate::special::show_set(l, s)
}

// ---------------------------------------------------------------- cubic and MR

fn def_cubic(c: &Ctx) -> Res {
    let r = c.axioms();
    if let Some(f) = r.failures().find(|f| !f.review) {
        let w: Vec<&str> = f.witness.iter().flatten().map(|&x| c.lab(x)).collect();
        return Err(Stop::Fail(format!("axiom {} ({}) at ({})", f.name, f.statement, w.join(", "))));
    }
    let review: Vec<&str> = r.failures().map(|f| f.name).collect();
    Ok((!review.is_empty()).then(|| format!("review entries failing: {}", review.join(", "))))
}

fn def_mr(c: &Ctx) -> Res {
    let mr = c.is_mr()?;
    match &c.inst.origin {
        Origin::Signed(_) | Origin::Interval(_) => {
            ensure!(mr, "MR axiom fails at {:?}", c.mr().mr_witness);
            Ok(None)
        }
        Origin::Pair(imp) => {
            ensure!(
                mr == imp.is_lattice(),
                "MR is {mr} but the implication algebra is{} a lattice",
                if imp.is_lattice() { "" } else { " not" }
            );
            Ok(Some(format!("MR: {mr}")))
        }
        _ => skip("no MR expectation for this origin"),
    }
}

fn lem_caret_total(c: &Ctx) -> Res {
    c.cubic()?;
    let r = c.mr();
    ensure!(r.agree(), "MR witness {:?}, caret witness {:?}", r.mr_witness, r.caret_witness);
    Ok(Some(format!("MR: {}", r.mr_holds())))
}

fn def_caret(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    for [x, y] in c.tuples::<2>(l.len()) {
        if let Some(m) = l.poset_meet(x, y) {
            let d = l.delta(l.join(x, y), y)?;
            ensure!(l.caret(x, d) == Some(m), "x ∧ y ≠ x ^ Δ(x ∨ y, y) at ({}, {})", c.lab(x), c.lab(y));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- collapse

fn rem_one(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    let col = Collapse::new(l)?;
    for [x, y] in c.tuples::<2>(l.len()) {
        ensure!(!l.leq(x, y) || l.preceq(x, y), "{} ≤ {} but not ⪯", c.lab(x), c.lab(y));
        ensure!(
            !(l.preceq(x, y) && l.preceq(y, x)) || col.eta(x) == col.eta(y),
            "⪯ is not antisymmetric modulo ∼ at ({}, {})",
            c.lab(x),
            c.lab(y)
        );
    }
    Ok(Some(format!("{} classes", col.len())))
}

fn def_sim(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    for [a, b] in c.tuples::<2>(l.len()) {
        ensure!(
            l.sim(a, b) == (l.preceq(a, b) && l.preceq(b, a)),
            "a ∼ b differs from mutual ⪯ at ({}, {})",
            c.lab(a),
            c.lab(b)
        );
    }
    Ok(None)
}

fn lem_preceq_meet(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    for [a, b] in c.tuples::<2>(l.len()) {
        let rhs = l.poset_meet(l.join(b, a), l.join(b, l.antipode(a)));
        ensure!(
            l.preceq(a, b) == (rhs == Some(b)),
            "a ⪯ b differs from b = (b ∨ a) ∧ (b ∨ Δ(1, a)) at ({}, {})",
            c.lab(a),
            c.lab(b)
        );
    }
    Ok(None)
}

fn lem_sim_above(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    for [a, x, y] in c.tuples::<3>(l.len()) {
        if l.leq(a, x) && l.leq(a, y) {
            ensure!(l.sim(x, y) == (x == y), "{} ∼ {} above {}", c.lab(x), c.lab(y), c.lab(a));
            ensure!(l.preceq(x, y) == l.leq(x, y), "⪯ and ≤ differ at ({}, {}) above {}", c.lab(x), c.lab(y), c.lab(a));
        }
    }
    Ok(None)
}

fn def_impl_coll(c: &Ctx) -> Res {
    let col = c.collapse()?;
    let (q, _) = col.quotient_imp()?;
    let mr = c.mr().mr_holds();
    ensure!(q.is_lattice() == mr, "collapse is{} a lattice but MR is {mr}", if q.is_lattice() { "" } else { " not" });
    Ok(Some(format!("{} classes, lattice: {}", q.len(), q.is_lattice())))
}

fn thm_local_embed(c: &Ctx) -> Res {
    let col = c.collapse()?;
    for a in 0..c.l().len() {
        col.local_embedding_check(a)?;
    }
    Ok(None)
}

fn thm_transfer(c: &Ctx) -> Res {
    if !c.is_mr()? {
        return skip("host is not MR");
    }
    let l = c.l();
    let subs = upward_closed_subalgebras(l, UPWARD_SUB_MAX).or_else(|e| skip(e.to_string()))?;
    for s in &subs {
        if let Some(f) = transfer_check(l, s)? {
            return Err(Stop::Fail(format!("{} in {}: {f:?}", "transfer", set_str(l, s))));
        }
    }
    Ok(Some(format!("{} upward-closed subalgebras", subs.len())))
}

fn lem_simeq(c: &Ctx) -> Res {
    let (_, pm, phi) = c.pair_view()?;
    let l = c.l();
    let base = |x: usize| pm.iota(phi.apply(x));
    for [x, y] in c.tuples::<2>(l.len()) {
        ensure!(
            l.sim(x, y) == (base(x) == base(y)),
            "a ∼ b differs from a ∧ b equality at ({}, {})",
            c.lab(x),
            c.lab(y)
        );
    }
    Ok(None)
}

fn eq_one(c: &Ctx) -> Res {
    let (imp, pm, _) = c.pair_view()?;
    for (i, &x) in pm.embed_e().iter().enumerate() {
        ensure!(pm.iota(x) == imp.member(i), "ι(e(a)) ≠ a at a = {}", imp.show(imp.member(i)));
    }
    Ok(None)
}

fn cor_len_eq(c: &Ctx) -> Res {
    let l = c.l();
    let lengths: Vec<u32> = match &c.inst.origin {
        Origin::Interval(b) => {
            let m = IntervalModel::new(b)?;
            ensure!(m.alg == *l, "instance differs from its interval model");
            (0..l.len()).map(|x| m.length(x).bits()).collect()
        }
        Origin::Signed(n) => {
            let (s, ints, iso) = iso_signed_interval(*n)?;
            ensure!(s.alg == *l, "instance differs from its signed-set model");
            (0..l.len()).map(|x| ints.length(iso.apply(x)).bits()).collect()
        }
        _ => return skip("not an interval or signed-set algebra"),
    };
    for [x, y] in c.tuples::<2>(l.len()) {
        ensure!(
            l.sim(x, y) == (lengths[x] == lengths[y]),
            "∼ differs from equal length at ({}, {})",
            c.lab(x),
            c.lab(y)
        );
    }
    Ok(None)
}

fn lem_boolean(c: &Ctx) -> Res {
    match &c.inst.origin {
        Origin::Interval(b) => {
            iso_pair_interval(b)?;
            Ok(None)
        }
        Origin::Signed(n) => {
            iso_signed_interval(*n)?;
            Ok(Some("signed sets against intervals".into()))
        }
        _ => skip("not an interval or signed-set algebra"),
    }
}

fn lem_intervals(c: &Ctx) -> Res {
    let (imp, pm, phi) = c.pair_view()?;
    let l = c.l();
    let b = imp.ambient();
    let base = |x: usize| pm.iota(phi.apply(x));
    for x in 0..l.len() {
        let above: Vec<usize> = l.up_set(x).ones().collect();
        let target: BTreeSet<u32> =
            imp.members().into_iter().filter(|&m| b.leq(base(x), m).unwrap_or(false)).map(|m| m.bits()).collect();
        let image: BTreeSet<u32> = above.iter().map(|&y| base(y).bits()).collect();
        ensure!(image == target && image.len() == above.len(), "ι does not biject [{}, 1] onto [a ∧ b, 1]", c.lab(x));
        for &y in &above {
            for &z in &above {
                ensure!(
                    l.leq(y, z) == b.leq(base(y), base(z))?,
                    "order differs above {} at ({}, {})",
                    c.lab(x),
                    c.lab(y),
                    c.lab(z)
                );
            }
        }
    }
    Ok(None)
}

fn lem_sim_hom(c: &Ctx) -> Res {
    let l = c.l();
    let phi = match &c.inst.origin {
        Origin::Pair(_) => {
            let (imp, pm) = c.pair_model()?;
            let full = ImpAlg::full(imp.ambient());
            let big = PairModel::new(&full)?;
            functor_i_on_morphism(&ImpMorphism::inclusion(&imp, &full)?, &pm, &big)?
        }
        Origin::Signed(n) => iso_signed_interval(*n)?.2,
        _ => return skip("no reference homomorphism for this origin"),
    };
    phi.validate()?;
    let t = phi.target();
    for [x, y] in c.tuples::<2>(l.len()) {
        ensure!(!l.sim(x, y) || t.sim(phi.apply(x), phi.apply(y)), "∼ not preserved at ({}, {})", c.lab(x), c.lab(y));
    }
    Ok(None)
}

fn thm_iso_iota(c: &Ctx) -> Res {
    c.collapse()?;
    let kappa = Kappa::new(c.l())?;
    kappa.check_iota_identity()?;
    let mut note = format!("κ injective: {}", kappa.is_injective());
    if let Ok((imp, _)) = c.pair_model() {
        Iota::new(&imp)?.check_iso()?;
        note.push_str("; ι checked on the base algebra");
    }
    Ok(Some(note))
}

// ---------------------------------------------------------------- g-covers

fn subsets_with_top(l: &CubicAlg) -> impl Iterator<Item = Vec<usize>> + '_ {
    let others: Vec<usize> = (0..l.len()).filter(|&x| x != l.top()).collect();
    (0u64..1 << others.len()).map(move |mask| {
        let mut s: Vec<usize> =
            others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        s.push(l.top());
        s.sort_unstable();
        s
    })
}

fn def_gcover(c: &Ctx) -> Res {
    let col = c.collapse()?;
    let found = c.gcovers()?;
    for g in found {
        if let Err(f) = is_gcover(col, g.members()) {
            return Err(Stop::Fail(format!("{}: {}", set_str(c.l(), g.members()), f.describe(c.l()))));
        }
    }
    if c.l().len() <= SUBSET_ORACLE_MAX {
        let brute: BTreeSet<Vec<usize>> = subsets_with_top(c.l()).filter(|s| is_gcover(col, s).is_ok()).collect();
        let fast: BTreeSet<Vec<usize>> = found.iter().map(|g| g.members().to_vec()).collect();
        ensure!(brute == fast, "search found {} g-covers, subset scan found {}", fast.len(), brute.len());
        return Ok(Some(format!("{} g-covers, subset scan agrees", fast.len())));
    }
    Ok(Some(format!("{} g-covers", found.len())))
}

fn lem_sim_eq_gc(c: &Ctx) -> Res {
    let l = c.l();
    for g in c.some_gcover()? {
        for &x in g.members() {
            for &y in g.members() {
                ensure!(x == y || !l.sim(x, y), "{} ∼ {} in {}", c.lab(x), c.lab(y), set_str(l, g.members()));
            }
        }
    }
    Ok(None)
}

fn lem_alpha_beta(c: &Ctx) -> Res {
    let l = c.l();
    for g in c.some_gcover()? {
        for x in 0..l.len() {
            let n = alpha_beta_candidates(l, g, x).len();
            ensure!(n == 1, "{n} pairs (α, β) for {} in {}", c.lab(x), set_str(l, g.members()));
        }
    }
    Ok(None)
}

fn meet_closed(l: &CubicAlg, members: &[usize]) -> std::result::Result<(), (usize, usize)> {
    let set = l.bitset(members);
    for &x in members {
        for &y in members {
            match l.poset_meet(x, y) {
                Some(m) if set.contains(m) => {}
                _ => return Err((x, y)),
            }
        }
    }
    Ok(())
}

fn thm_mr_gcover(c: &Ctx) -> Res {
    if !c.is_mr()? {
        return skip("host is not MR");
    }
    for g in c.some_gcover()? {
        if let Err((x, y)) = meet_closed(c.l(), g.members()) {
            return Err(Stop::Fail(format!("{} ∧ {} missing from the g-cover", c.lab(x), c.lab(y))));
        }
    }
    Ok(None)
}

fn rem_usub(c: &Ctx) -> Res {
    let l = c.l();
    for g in c.some_gcover()? {
        for &x in g.members() {
            for &y in g.members() {
                if let Some(m) = l.poset_meet(x, y) {
                    ensure!(g.contains(m), "{} ∧ {} = {} lies outside", c.lab(x), c.lab(y), c.lab(m));
                }
            }
        }
    }
    Ok(None)
}

fn thm_exists_gcovers(c: &Ctx) -> Res {
    let col = c.collapse()?;
    let found = c.gcovers()?;
    if matches!(c.inst.origin, Origin::Pair(_)) {
        ensure!(!found.is_empty(), "a pair algebra without a g-cover");
    }
    for g in found {
        crate::gcover::reconstruct(col, g)?;
    }
    Ok(Some(if found.is_empty() { "no g-cover".into() } else { format!("{} reconstructions", found.len()) }))
}

fn envelopes(c: &Ctx) -> Res<Vec<Envelope>> {
    let col = c.collapse()?;
    Ok(c.some_gcover()?.iter().map(|g| Envelope::from_gcover(col, g)).collect::<Result<Vec<_>>>()?)
}

fn thm_env_alg(c: &Ctx) -> Res {
    for e in envelopes(c)? {
        ensure!(e.mr.mr_holds(), "envelope is not MR: {:?}", e.mr.mr_witness);
        ensure!(e.range_upward_closed(), "range is not upward closed");
        ensure!(e.generated().len() == e.pairs.alg.len(), "range does not generate the envelope");
    }
    Ok(Some("clauses (a) and (b); universal property not checked".into()))
}

fn def_env_alg(c: &Ctx) -> Res {
    for e in envelopes(c)? {
        e.embed.validate()?;
        ensure!(e.embed.is_injective(), "embedding is not injective");
    }
    Ok(None)
}

fn thm_env_gcovers_iii(c: &Ctx) -> Res {
    let l = c.l();
    for e in envelopes(c)? {
        let f = &e.lattice;
        let range: BTreeSet<usize> = e.range().into_iter().collect();
        let one = f.top();
        let trace: Vec<_> =
            f.members().into_iter().filter(|&a| e.pairs.id(one, a).is_some_and(|p| range.contains(&p))).collect();
        let sub = ImpAlg::from_carrier(f.ambient(), &trace).map_err(|err| Stop::Fail(format!("F ⋒ L: {err}")))?;
        for x in 0..l.len() {
            let (a, b) = e.pairs.pair(e.embed.apply(x));
            ensure!(sub.contains(a) && sub.contains(b), "image of {} leaves ℐ(F ⋒ L)", c.lab(x));
        }
    }
    Ok(None)
}

fn thm_env_gcover_ii(c: &Ctx) -> Res {
    for e in envelopes(c)? {
        ensure!(e.gcover_has_fip(), "g-cover lacks fip in the envelope");
        let env = &e.pairs.alg;
        let mut set = env.bitset(&e.gcover.members().iter().map(|&x| e.embed.apply(x)).collect::<Vec<_>>());
        loop {
            let cur: Vec<usize> = set.ones().collect();
            for &x in &cur {
                set.union_with(env.up_set(x));
                for &y in &cur {
                    if let Some(m) = env.poset_meet(x, y) {
                        set.insert(m);
                    }
                }
            }
            if set.count_ones(..) == cur.len() {
                break;
            }
        }
        let filter: Vec<usize> = set.ones().collect();
        let ec = Collapse::new(env)?;
        if let Err(f) = is_gcover(&ec, &filter) {
            return Err(Stop::Fail(format!("generated filter: {}", f.describe(env))));
        }
        ensure!(meet_closed(env, &filter).is_ok(), "generated filter is not meet closed");
    }
    Ok(None)
}

fn upward_subs(l: &CubicAlg) -> Res<Vec<Vec<usize>>> {
    upward_closed_subalgebras(l, UPWARD_SUB_MAX).or_else(|e| skip(e.to_string()))
}

fn has_gcover(sub: &CubicAlg) -> Res<bool> {
    let col = Collapse::new(sub)?;
    Ok(!find_gcovers(&col, Some(1))?.is_empty())
}

fn cor_filter(c: &Ctx) -> Res {
    let mut n = 0;
    for e in envelopes(c)? {
        let env = &e.pairs.alg;
        ensure!(e.lattice.is_lattice(), "envelope base is not a lattice");
        for s in upward_subs(env)? {
            let (sub, _) = env.restrict(&s)?;
            ensure!(has_gcover(&sub)?, "{} has no g-cover", set_str(env, &s));
            n += 1;
        }
    }
    Ok(Some(format!("{n} upward-closed subalgebras of envelopes")))
}

fn cor_down_gc(c: &Ctx) -> Res {
    c.some_gcover()?;
    let l = c.l();
    let subs = upward_subs(l)?;
    for s in &subs {
        let (sub, _) = l.restrict(s)?;
        ensure!(has_gcover(&sub)?, "{} has no g-cover", set_str(l, s));
    }
    Ok(Some(format!("{} upward-closed subalgebras", subs.len())))
}

fn rem_gcover_down(c: &Ctx) -> Res {
    let col = c.collapse()?;
    let gs = c.some_gcover()?;
    let l = c.l();
    for s in upward_subs(l)? {
        for g in gs {
            gcover_restrict(col, &s, g).map_err(|e| Stop::Fail(format!("{} ∩ J: {e}", set_str(l, &s))))?;
        }
    }
    Ok(None)
}

fn thm_inpl_embed(c: &Ctx) -> Res {
    let mut algebras = Vec::new();
    if let Ok((imp, _)) = c.pair_model() {
        algebras.push(imp);
    }
    if let Ok(gs) = c.gcovers() {
        for g in gs {
            algebras.push(GCoverImp::new(c.l(), g)?.imp);
        }
    }
    if algebras.is_empty() {
        return skip("no implication algebra attached");
    }
    for imp in &algebras {
        let lat = envelope_lattice(imp);
        ensure!(lat.is_lattice(), "meet closure is not a lattice");
        for m in imp.members() {
            for x in lat.members() {
                ensure!(!lat.leq(m, x)? || imp.contains(x), "{} is not an upper segment", imp.show(m));
            }
        }
    }
    Ok(None)
}

fn thm_env_impl(c: &Ctx) -> Res {
    let l = c.l();
    for e in envelopes(c)? {
        Iota::new(&e.lattice)?.check_iso()?;
        let ec = Collapse::new(&e.pairs.alg)?;
        ensure!(ec.len() == e.lattice.len(), "{} classes against {} elements", ec.len(), e.lattice.len());
        for [x, y] in c.tuples::<2>(l.len()) {
            ensure!(
                l.sim(x, y) == (ec.eta(e.embed.apply(x)) == ec.eta(e.embed.apply(y))),
                "∼ differs from the envelope at ({}, {})",
                c.lab(x),
                c.lab(y)
            );
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- compatibility

fn interval_like(c: &Ctx) -> Res<()> {
    match c.inst.origin {
        Origin::Interval(_) | Origin::Signed(_) => Ok(()),
        _ => skip("not an interval or signed-set algebra"),
    }
}

fn common_lower_bound(l: &CubicAlg, xs: &[usize]) -> bool {
    let mut s = l.down_set(xs[0]).clone();
    for &x in &xs[1..] {
        s.intersect_with(l.down_set(x));
    }
    s.count_ones(..) > 0
}

fn lem_fip_pre_filter(c: &Ctx) -> Res {
    c.cubic()?;
    interval_like(c)?;
    let l = c.l();
    for t in c.tuples::<3>(l.len()) {
        let pairwise = t.iter().all(|&x| t.iter().all(|&y| l.poset_meet(x, y).is_some()));
        ensure!(
            common_lower_bound(l, &t) == pairwise,
            "fip differs from pairwise meets at ({}, {}, {})",
            c.lab(t[0]),
            c.lab(t[1]),
            c.lab(t[2])
        );
    }
    Ok(None)
}

/// Embeddings of the host into an interval algebra, by origin.
fn interval_embedding(c: &Ctx) -> Res<CubicMorphism> {
    match &c.inst.origin {
        Origin::Interval(_) => Ok(CubicMorphism::identity(c.l())),
        Origin::Signed(n) => Ok(iso_signed_interval(*n)?.2),
        Origin::Pair(_) => {
            let (imp, pm) = c.pair_model()?;
            let (full_pairs, _, iso) = iso_pair_interval(imp.ambient())?;
            let incl = functor_i_on_morphism(&ImpMorphism::inclusion(&imp, full_pairs.imp())?, &pm, &full_pairs)?;
            Ok(incl.then(&iso)?)
        }
        _ => skip("no interval embedding for this origin"),
    }
}

fn def_compatible(c: &Ctx) -> Res {
    c.cubic()?;
    let e = interval_embedding(c)?;
    e.validate()?;
    let l = c.l();
    let t = e.target();
    for [x, y] in c.tuples::<2>(l.len()) {
        let fip = common_lower_bound(t, &[e.apply(x), e.apply(y)]);
        ensure!(is_compatible(l, &[x, y]) == fip, "compatibility differs from fip at ({}, {})", c.lab(x), c.lab(y));
    }
    Ok(None)
}

fn cor_pre_filter_fip(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    let mut checked = Vec::new();
    if let Ok(e) = interval_embedding(c) {
        let t = e.target();
        for [x, y] in c.tuples::<2>(l.len()) {
            let meet = t.poset_meet(e.apply(x), e.apply(y)).is_some();
            ensure!(
                (l.join(x, l.antipode(y)) == l.top()) == meet,
                "x ∨ Δ(1, y) = 1 differs from a meet in the interval image at ({}, {})",
                c.lab(x),
                c.lab(y)
            );
        }
        checked.push("interval image");
    }
    if let Ok(envs) = envelopes(c) {
        for e in envs {
            let t = &e.pairs.alg;
            for [x, y] in c.tuples::<2>(l.len()) {
                let meet = t.poset_meet(e.embed.apply(x), e.embed.apply(y)).is_some();
                ensure!(
                    (l.join(x, l.antipode(y)) == l.top()) == meet,
                    "x ∨ Δ(1, y) = 1 differs from a meet in the envelope at ({}, {})",
                    c.lab(x),
                    c.lab(y)
                );
            }
        }
        checked.push("envelopes");
    }
    if checked.is_empty() {
        return skip("no embedding into an MR-algebra available");
    }
    Ok(Some(checked.join(", ")))
}

fn lem_comp_eq(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    for [x, y] in c.tuples::<2>(l.len()) {
        if l.preceq(x, y) && l.join(x, l.antipode(y)) == l.top() {
            ensure!(l.leq(x, y), "{} ⪯ {} and compatible, but not ≤", c.lab(x), c.lab(y));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- special subalgebras

fn def_sia(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for s in sp {
        if let Some(f) = special_failure(l, s.members()) {
            return Err(Stop::Fail(format!("{}: {}", c.show(s), f.describe(l))));
        }
    }
    if l.len() <= SUBSET_ORACLE_MAX {
        let brute: BTreeSet<Vec<usize>> = subsets_with_top(l).filter(|s| is_special(l, s)).collect();
        let fast: BTreeSet<Vec<usize>> = sp.iter().map(|s| s.members().to_vec()).collect();
        ensure!(brute == fast, "enumeration found {}, subset scan found {}", fast.len(), brute.len());
        return Ok(Some(format!("{} special subalgebras, subset scan agrees", sp.len())));
    }
    Ok(Some(format!("{} special subalgebras", sp.len())))
}

fn lem_gc_eq_comp(c: &Ctx) -> Res {
    for g in c.some_gcover()? {
        ensure!(is_special(c.l(), g.members()), "g-cover {} is not special", set_str(c.l(), g.members()));
    }
    Ok(None)
}

fn lem_intersect_spec(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for i in sp {
        for j in sp {
            let m = special_meet(i, j);
            ensure!(is_special(l, m.members()), "{} ∩ {} is not special", c.show(i), c.show(j));
        }
    }
    let all = sp.iter().cloned().reduce(|a, b| special_meet(&a, &b)).expect("{1} is special");
    ensure!(is_special(l, all.members()), "intersection of every special is not special");
    Ok(None)
}

fn lem_inter_two_fil(c: &Ctx) -> Res {
    let sp = c.specials()?;
    for i in sp {
        for j in sp {
            ensure!(special_meet(i, j).members() == join_set(c.l(), i, j), "{} ∩ {} ≠ {{f ∨ g}}", c.show(i), c.show(j));
        }
    }
    Ok(None)
}

fn def_cup(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for i in sp {
        for j in sp {
            let union: Vec<usize> = i.members().iter().chain(j.members()).copied().collect();
            let joined = special_join(l, i, j);
            ensure!(joined.is_some() == is_compatible(l, &union), "{} ∨ {} definedness is wrong", c.show(i), c.show(j));
            if let Some(k) = joined {
                ensure!(
                    is_special(l, k.members()) && i.is_subset(&k) && j.is_subset(&k),
                    "{} ∨ {} is not an upper bound",
                    c.show(i),
                    c.show(j)
                );
                for s in sp.iter().filter(|s| i.is_subset(s) && j.is_subset(s)) {
                    ensure!(k.is_subset(s), "{} ∨ {} is not least: {} is smaller", c.show(i), c.show(j), c.show(s));
                }
            }
        }
    }
    Ok(None)
}

fn lem_cup(c: &Ctx) -> Res {
    let sp = c.specials()?;
    for i in sp {
        for j in sp {
            if let Some(k) = special_join(c.l(), i, j) {
                ensure!(k.members() == meet_set(c.l(), i, j), "{} ∨ {} ≠ {{f ∧ g}}", c.show(i), c.show(j));
            }
        }
    }
    Ok(None)
}

fn lem_distrib(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    let mut printed: Option<String> = None;
    let mut printed_cases = 0usize;
    for i in sp {
        for j in sp {
            for k in sp {
                let Some(jk) = special_join(l, j, k) else { continue };
                let lhs = special_meet(i, &jk);
                let rhs = special_join(l, &special_meet(i, j), &special_meet(i, k));
                ensure!(
                    rhs.as_ref() == Some(&lhs),
                    "I ∩ (J ∨ K) ≠ (I ∩ J) ∨ (I ∩ K) at I = {}, J = {}, K = {}",
                    c.show(i),
                    c.show(j),
                    c.show(k)
                );
                if let (Some(ij), Some(ik)) = (special_join(l, i, j), special_join(l, i, k)) {
                    printed_cases += 1;
                    if printed.is_none() && special_meet(&ij, &ik) != lhs {
                        printed = Some(format!("I = {}, J = {}, K = {}", c.show(i), c.show(j), c.show(k)));
                    }
                }
            }
        }
    }
    Ok(Some(match printed {
        None => format!("printed form I ∩ (J ∨ K) = (I ∨ J) ∩ (I ∨ K) holds on {printed_cases} triples"),
        Some(w) => format!("printed form I ∩ (J ∨ K) = (I ∨ J) ∩ (I ∨ K) fails at {w}"),
    }))
}

fn lem_gff(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for i in sp {
        for g in 0..l.len() {
            let s = sub_g_set(l, i, g);
            ensure!(is_compatible(l, &s), "{}_{} is not compatible", c.show(i), c.lab(g));
            ensure!(l.is_upward_closed(&l.bitset(&s)), "{}_{} is not upward closed", c.show(i), c.lab(g));
        }
    }
    Ok(None)
}

fn lem_inter_sect(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for i in sp {
        for g in 0..l.len() {
            let ig = SpecialSub::canonical(&sub_g_set(l, i, g));
            ensure!(
                special_meet(i, &ig) == special_meet(&principal(l, g)?, i),
                "I ∩ I_g ≠ [g, 1] ∩ I at I = {}, g = {}",
                c.show(i),
                c.lab(g)
            );
        }
    }
    Ok(None)
}

fn thm_gff(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let col = c.collapse()?;
    let l = c.l();
    for i in sp {
        let gen_i = l.generate_subalgebra(i.members());
        for g in 0..l.len() {
            let s = sub_g_set(l, i, g);
            ensure!(is_special(l, &s), "{}_{} is not special", c.show(i), c.lab(g));
            ensure!(l.generate_subalgebra(&s) == gen_i, "[[I_g]] ≠ [[I]] at I = {}, g = {}", c.show(i), c.lab(g));
            ensure!(sim_special(col, i, &SpecialSub::canonical(&s)), "I_g ≁ I at I = {}, g = {}", c.show(i), c.lab(g));
        }
    }
    Ok(None)
}

fn cor_impl_ss(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for i in sp {
        for g in 0..l.len() {
            ensure!(is_special(l, &imp_set(l, g, i)), "{} → {} is not special", c.lab(g), c.show(i));
        }
    }
    Ok(None)
}

fn cor_g_filter(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for f in sp {
        for &g in f.members() {
            let fg = SpecialSub::canonical(&sub_g_set(l, f, g));
            ensure!(
                special_meet(f, &fg) == principal(l, g)?,
                "F ∩ F_g ≠ [g, 1] at F = {}, g = {}",
                c.show(f),
                c.lab(g)
            );
        }
    }
    Ok(None)
}

fn lem_g_filter(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let col = c.collapse()?;
    let l = c.l();
    let mut cases = 0;
    for i in sp {
        for j in sp {
            if !sim_special(col, i, j) {
                continue;
            }
            for g in 0..l.len() {
                if special_meet(i, j) == principal(l, g)? {
                    cases += 1;
                    ensure!(
                        j.members() == sub_g_set(l, i, g),
                        "J ≠ I_g at I = {}, J = {}, g = {}",
                        c.show(i),
                        c.show(j),
                        c.lab(g)
                    );
                }
            }
        }
    }
    Ok(Some(format!("{cases} cases; same generated algebra read as η-image equality")))
}

fn cor_idempotence(c: &Ctx) -> Res {
    let sp = c.specials()?;
    let l = c.l();
    for i in sp {
        for &g in i.members() {
            let ig = SpecialSub::canonical(&sub_g_set(l, i, g));
            ensure!(sub_g_set(l, &ig, g) == i.members(), "(I_g)_g ≠ I at I = {}, g = {}", c.show(i), c.lab(g));
            for &h in i.members() {
                ensure!(
                    sub_g_set(l, &ig, h) == sub_g_set(l, &ig, l.join(g, h)),
                    "(I_g)_h ≠ (I_g)_(g ∨ h) at I = {}, g = {}, h = {}",
                    c.show(i),
                    c.lab(g),
                    c.lab(h)
                );
            }
        }
    }
    Ok(None)
}

fn def_impl(c: &Ctx) -> Res {
    for (j, i) in c.nested()? {
        let r = rel_complement(c.l(), j, i)?;
        ensure!(is_special(c.l(), r.members()), "{} → {} is not special", c.show(j), c.show(i));
    }
    Ok(None)
}

fn lem_two_three_same(c: &Ctx) -> Res {
    let sp = c.specials()?;
    for (j, i) in c.nested()? {
        let b = rel_complement_b(c.l(), j, i, sp)?;
        ensure!(
            b.as_ref() == Some(&rel_complement(c.l(), j, i)?),
            "J ⇒ I ≠ J → I at J = {}, I = {}",
            c.show(j),
            c.show(i)
        );
    }
    Ok(None)
}

fn thm_one_three_equal(c: &Ctx) -> Res {
    let sp = c.specials()?;
    for (j, i) in c.nested()? {
        let a = rel_complement_a(c.l(), j, i, sp)?;
        ensure!(
            a.as_ref() == Some(&rel_complement(c.l(), j, i)?),
            "J ⊃ I ≠ J → I at J = {}, I = {}",
            c.show(j),
            c.show(i)
        );
    }
    Ok(None)
}

fn lem_small_h(c: &Ctx) -> Res {
    let l = c.l();
    for (j, i) in c.nested()? {
        for &g in j.members() {
            let gi = imp_set(l, g, i);
            for &h in i.members() {
                if l.join(g, h) != l.top() {
                    ensure!(
                        gi.binary_search(&h).is_err(),
                        "{} ∈ {} → I with g ∨ h < 1, I = {}",
                        c.lab(h),
                        c.lab(g),
                        c.show(i)
                    );
                }
            }
        }
    }
    Ok(None)
}

fn lem_impl_gg(c: &Ctx) -> Res {
    let l = c.l();
    for i in c.specials()? {
        for &g in i.members() {
            let rhs = rel_complement(l, &principal(l, g)?, i)?;
            ensure!(imp_set(l, g, i) == rhs.members(), "g → I ≠ [g, 1] → I at I = {}, g = {}", c.show(i), c.lab(g));
        }
    }
    Ok(None)
}

fn lem_incl_impl(c: &Ctx) -> Res {
    let l = c.l();
    for [j, h, i] in c.chains()? {
        let (jh, ji) = (rel_complement(l, j, h)?, rel_complement(l, j, i)?);
        ensure!(jh.is_subset(&ji), "J → H ⊄ J → I at J = {}, H = {}, I = {}", c.show(j), c.show(h), c.show(i));
    }
    Ok(None)
}

fn cor_incl_impl(c: &Ctx) -> Res {
    let l = c.l();
    for [j, h, i] in c.chains()? {
        let ji = rel_complement(l, j, i)?;
        if ji.is_subset(h) {
            ensure!(
                rel_complement(l, j, h)? == ji,
                "J → H ≠ J → I at J = {}, H = {}, I = {}",
                c.show(j),
                c.show(h),
                c.show(i)
            );
        }
    }
    Ok(None)
}

fn cor_con_joint(c: &Ctx) -> Res {
    let l = c.l();
    for (j, i) in c.nested()? {
        let ji = rel_complement(l, j, i)?;
        let Some(k) = special_join(l, j, &ji) else {
            return Err(Stop::Fail(format!("J ∨ (J → I) undefined at J = {}, I = {}", c.show(j), c.show(i))));
        };
        ensure!(rel_complement(l, j, &k)? == ji, "J → (J ∨ (J → I)) ≠ J → I at J = {}, I = {}", c.show(j), c.show(i));
    }
    Ok(None)
}

fn lem_incl_again(c: &Ctx) -> Res {
    let l = c.l();
    for [j, h, i] in c.chains()? {
        ensure!(
            rel_complement(l, h, i)?.is_subset(&rel_complement(l, j, i)?),
            "H → I ⊄ J → I at J = {}, H = {}, I = {}",
            c.show(j),
            c.show(h),
            c.show(i)
        );
    }
    Ok(None)
}

fn lem_delta_one(c: &Ctx) -> Res {
    let l = c.l();
    for (j, i) in c.nested()? {
        let mut s = rel_complement(l, j, i)?.members().to_vec();
        s.extend(antipode_set(l, j));
        ensure!(is_compatible(l, &s), "(J → I) ∪ Δ(1, J) incompatible at J = {}, I = {}", c.show(j), c.show(i));
    }
    Ok(None)
}

fn def_delta(c: &Ctx) -> Res {
    for (j, i) in c.nested()? {
        let d = delta_special(c.l(), j, i)?;
        ensure!(is_special(c.l(), d.members()), "Δ({}, {}) is not special", c.show(j), c.show(i));
    }
    Ok(None)
}

fn lem_delta_g_one(c: &Ctx) -> Res {
    let l = c.l();
    for i in c.specials()? {
        for &g in i.members() {
            let d = delta_special(l, &principal(l, g)?, i)?;
            ensure!(d.members() == sub_g_set(l, i, g), "Δ([g, 1], I) ≠ I_g at I = {}, g = {}", c.show(i), c.lab(g));
        }
    }
    Ok(None)
}

fn cor_delta_double_princ(c: &Ctx) -> Res {
    c.specials()?;
    let l = c.l();
    for [g, h] in c.tuples::<2>(l.len()) {
        if l.leq(h, g) {
            let d = delta_special(l, &principal(l, g)?, &principal(l, h)?)?;
            ensure!(
                d == principal(l, l.delta(g, h)?)?,
                "Δ([g, 1], [h, 1]) ≠ [Δ(g, h), 1] at g = {}, h = {}",
                c.lab(g),
                c.lab(h)
            );
        }
    }
    Ok(None)
}

fn lem_impl_in_delta(c: &Ctx) -> Res {
    let l = c.l();
    for (j, i) in c.nested()? {
        let d = delta_special(l, j, i)?;
        let lhs = rel_complement(l, j, &d)?;
        ensure!(
            lhs.members() == antipode_set(l, &rel_complement(l, j, i)?),
            "J → Δ(J, I) ≠ Δ(1, J → I) at J = {}, I = {}",
            c.show(j),
            c.show(i)
        );
    }
    Ok(None)
}

fn cor_double_delta(c: &Ctx) -> Res {
    let l = c.l();
    for (j, i) in c.nested()? {
        let dd = delta_special(l, j, &delta_special(l, j, i)?)?;
        let rhs = special_join(l, j, &rel_complement(l, j, i)?);
        ensure!(rhs.as_ref() == Some(&dd), "Δ(J, Δ(J, I)) ≠ J ∨ (J → I) at J = {}, I = {}", c.show(j), c.show(i));
    }
    Ok(None)
}

fn lem_incl_delta(c: &Ctx) -> Res {
    let l = c.l();
    for [j, h, i] in c.chains()? {
        ensure!(
            delta_special(l, j, h)?.is_subset(&delta_special(l, j, i)?),
            "Δ(J, H) ⊄ Δ(J, I) at J = {}, H = {}, I = {}",
            c.show(j),
            c.show(h),
            c.show(i)
        );
    }
    Ok(None)
}

fn lem_inter_delta(c: &Ctx) -> Res {
    let l = c.l();
    for (j, i) in c.nested()? {
        let d = delta_special(l, j, i)?;
        ensure!(special_meet(i, &d) == *j, "I ∩ Δ(J, I) ≠ J at J = {}, I = {}", c.show(j), c.show(i));
    }
    Ok(None)
}

fn def_boolean(c: &Ctx) -> Res {
    let l = c.l();
    let mut n = 0;
    for p in c.specials()? {
        ensure!(is_boolean(l, p, p)?, "{} is not {}-Boolean", c.show(p), c.show(p));
        ensure!(is_boolean(l, &SpecialSub::trivial(l), p)?, "{{1}} is not {}-Boolean", c.show(p));
        n += boolean_below(l, p, c.specials()?)?.len();
    }
    Ok(Some(format!("{n} Boolean pairs")))
}

fn lem_boolean_another_way(c: &Ctx) -> Res {
    let l = c.l();
    for (q, p) in c.nested()? {
        if is_boolean(l, q, p)? {
            ensure!(is_weakly_boolean(l, q, p)?, "{} is {}-Boolean but not weakly", c.show(q), c.show(p));
        }
    }
    Ok(None)
}

fn lem_implg_twice(c: &Ctx) -> Res {
    let l = c.l();
    for p in c.specials()? {
        for &g in p.members() {
            ensure!(is_boolean(l, &principal(l, g)?, p)?, "[{}, 1] is not {}-Boolean", c.lab(g), c.show(p));
        }
    }
    Ok(None)
}

/// Pairs of specials that are `∼`-equivalent.
fn sim_pairs<'a>(c: &'a Ctx) -> Res<Vec<(&'a SpecialSub, &'a SpecialSub)>> {
    let col = c.collapse()?;
    let sp = c.specials()?;
    Ok(sp.iter().flat_map(|p| sp.iter().filter(move |r| sim_special(col, p, r)).map(move |r| (p, r))).collect())
}

const SIM_READING: &str = "P ∼ R read as η-image equality";

fn lem_moving(c: &Ctx) -> Res {
    let col = c.collapse()?;
    let l = c.l();
    let sp = c.specials()?;
    for (p, h) in sim_pairs(c)? {
        let beta = beta_transfer(col, p, h)?;
        let image: BTreeSet<usize> = beta.values().copied().collect();
        ensure!(
            image.len() == p.len() && image.len() == h.len(),
            "β is not a bijection from {} to {}",
            c.show(p),
            c.show(h)
        );
        for (&x, &y) in &beta {
            ensure!(!h.contains(x) || x == y, "β moves {} ∈ P ∩ H", c.lab(x));
            for (&x2, &y2) in &beta {
                ensure!(
                    beta[&l.join(x, x2)] == l.join(y, y2),
                    "β does not preserve ∨ at ({}, {})",
                    c.lab(x),
                    c.lab(x2)
                );
                ensure!(
                    beta[&l.derived_imp(x, x2)] == l.derived_imp(y, y2),
                    "β does not preserve → at ({}, {})",
                    c.lab(x),
                    c.lab(x2)
                );
            }
        }
        let ph = special_meet(p, h);
        for q in sp.iter().filter(|q| q.is_subset(&ph)) {
            let moved: Vec<usize> = rel_complement(l, q, p)?.members().iter().map(|x| beta[x]).collect();
            let bq = SpecialSub::canonical(&q.members().iter().map(|x| beta[x]).collect::<Vec<_>>());
            let rhs = rel_complement(l, &bq, h)?;
            ensure!(
                SpecialSub::canonical(&moved) == rhs,
                "β[Q → P] ≠ β[Q] → H at P = {}, H = {}, Q = {}",
                c.show(p),
                c.show(h),
                c.show(q)
            );
        }
    }
    Ok(Some(SIM_READING.into()))
}

fn thm_boolean_transfer(c: &Ctx, weak: bool) -> Res {
    let l = c.l();
    let test = |q: &SpecialSub, p: &SpecialSub| if weak { is_weakly_boolean(l, q, p) } else { is_boolean(l, q, p) };
    for (p, r) in sim_pairs(c)? {
        for q in c.specials()?.iter().filter(|q| q.is_subset(p) && q.is_subset(r)) {
            if test(q, p)? {
                ensure!(test(q, r)?, "Q = {} transfers from P = {} but not to R = {}", c.show(q), c.show(p), c.show(r));
            }
        }
    }
    Ok(Some(SIM_READING.into()))
}

fn thm_boolean(c: &Ctx) -> Res {
    thm_boolean_transfer(c, false)
}

fn thm_wk_boolean(c: &Ctx) -> Res {
    thm_boolean_transfer(c, true)
}

fn lem_upwards(c: &Ctx) -> Res {
    let l = c.l();
    for [q, r, p] in c.chains()? {
        if is_boolean(l, q, p)? && is_boolean(l, r, p)? {
            ensure!(
                is_boolean(l, q, r)?,
                "Q = {} is not R = {}-Boolean inside P = {}",
                c.show(q),
                c.show(r),
                c.show(p)
            );
            let rhs = special_meet(&rel_complement(l, q, p)?, r);
            ensure!(
                rel_complement(l, q, r)? == rhs,
                "Q → R ≠ (Q → P) ∩ R at Q = {}, R = {}, P = {}",
                c.show(q),
                c.show(r),
                c.show(p)
            );
        }
    }
    Ok(None)
}

fn lem_middle(c: &Ctx) -> Res {
    let l = c.l();
    for [q, r, p] in c.chains()? {
        if is_boolean(l, q, r)? && is_boolean(l, r, p)? {
            ensure!(is_boolean(l, q, p)?, "Q = {} is not P = {}-Boolean via R = {}", c.show(q), c.show(p), c.show(r));
        }
    }
    Ok(None)
}

fn lem_lots(c: &Ctx) -> Res {
    let l = c.l();
    for (p, r) in sim_pairs(c)? {
        let pr = special_meet(p, r);
        ensure!(is_boolean(l, &pr, p)?, "P ∩ R is not P-Boolean at P = {}, R = {}", c.show(p), c.show(r));
        let anti = SpecialSub::canonical(&antipode_set(l, r));
        ensure!(
            rel_complement(l, &pr, p)? == special_meet(&anti, p),
            "(P ∩ R) → P ≠ Δ(1, R) ∩ P at P = {}, R = {}",
            c.show(p),
            c.show(r)
        );
    }
    Ok(Some(SIM_READING.into()))
}

fn cor_lots(c: &Ctx) -> Res {
    let l = c.l();
    for (p, r) in sim_pairs(c)? {
        ensure!(
            delta_special(l, &special_meet(p, r), p)? == *r,
            "Δ(P ∩ R, P) ≠ R at P = {}, R = {}",
            c.show(p),
            c.show(r)
        );
    }
    Ok(Some(SIM_READING.into()))
}

fn lem_delta_in_mr(c: &Ctx) -> Res {
    c.cubic()?;
    let l = c.l();
    for [g, h] in c.tuples::<2>(l.len()) {
        if l.join(g, h) != l.top() {
            continue;
        }
        if let Some(m) = l.poset_meet(g, h) {
            let lhs = l.delta(g, m)?;
            ensure!(
                l.poset_meet(g, l.antipode(h)) == Some(lhs),
                "Δ(g, g ∧ h) ≠ g ∧ Δ(1, h) at g = {}, h = {}",
                c.lab(g),
                c.lab(h)
            );
        }
    }
    Ok(None)
}

fn thm_lots(c: &Ctx) -> Res {
    let col = c.collapse()?;
    let l = c.l();
    let sp = c.specials()?;
    for p in sp {
        let deltas: BTreeSet<SpecialSub> =
            boolean_below(l, p, sp)?.iter().map(|q| delta_special(l, q, p)).collect::<Result<_>>()?;
        for r in sp {
            ensure!(
                sim_special(col, r, p) == deltas.contains(r),
                "R ∼ P disagrees with R = Δ(Q, P) at P = {}, R = {}",
                c.show(p),
                c.show(r)
            );
        }
    }
    Ok(Some(SIM_READING.into()))
}

/// Each special `P` with its `P`-Boolean subalgebras.
fn boolean_families<'a>(c: &'a Ctx) -> Res<Vec<(&'a SpecialSub, Vec<SpecialSub>)>> {
    let sp = c.specials()?;
    sp.iter().map(|p| Ok((p, boolean_below(c.l(), p, sp)?))).collect()
}

fn lem_inter_str_bool(c: &Ctx) -> Res {
    let l = c.l();
    for (p, fam) in boolean_families(c)? {
        for q1 in &fam {
            for q2 in &fam {
                let lhs = special_join(l, &rel_complement(l, q1, p)?, &rel_complement(l, q2, p)?);
                let rhs = rel_complement(l, &special_meet(q1, q2), p)?;
                ensure!(
                    lhs.as_ref() == Some(&rhs),
                    "(Q1 → P) ∨ (Q2 → P) ≠ (Q1 ∩ Q2) → P at Q1 = {}, Q2 = {}, P = {}",
                    c.show(q1),
                    c.show(q2),
                    c.show(p)
                );
            }
        }
    }
    Ok(None)
}

fn cor_inter_str_bool(c: &Ctx) -> Res {
    let l = c.l();
    for (p, fam) in boolean_families(c)? {
        for q1 in &fam {
            for q2 in &fam {
                ensure!(
                    is_boolean(l, &special_meet(q1, q2), p)?,
                    "Q1 ∩ Q2 is not P-Boolean at Q1 = {}, Q2 = {}, P = {}",
                    c.show(q1),
                    c.show(q2),
                    c.show(p)
                );
            }
        }
    }
    Ok(None)
}

fn cor_join_str_bool(c: &Ctx) -> Res {
    let l = c.l();
    for (p, fam) in boolean_families(c)? {
        for q1 in &fam {
            for q2 in &fam {
                let j = special_join(l, q1, q2);
                ensure!(
                    matches!(&j, Some(k) if is_boolean(l, k, p).unwrap_or(false)),
                    "Q1 ∨ Q2 is not P-Boolean at Q1 = {}, Q2 = {}, P = {}",
                    c.show(q1),
                    c.show(q2),
                    c.show(p)
                );
            }
        }
    }
    Ok(None)
}

fn thm_boolean_algebra(c: &Ctx) -> Res {
    let l = c.l();
    let one = SpecialSub::trivial(l);
    let mut sizes = BTreeSet::new();
    for (p, fam) in boolean_families(c)? {
        let members: BTreeSet<&SpecialSub> = fam.iter().collect();
        ensure!(members.contains(&one) && members.contains(p), "{{1}} or P missing for P = {}", c.show(p));
        ensure!(fam.len().is_power_of_two(), "{} P-Boolean subalgebras for P = {}", fam.len(), c.show(p));
        for q in &fam {
            let comp = rel_complement(l, q, p)?;
            ensure!(members.contains(&comp), "complement of {} missing for P = {}", c.show(q), c.show(p));
            ensure!(special_meet(q, &comp) == one, "Q ∩ (Q → P) ≠ {{1}} at Q = {}", c.show(q));
            ensure!(special_join(l, q, &comp).as_ref() == Some(p), "Q ∨ (Q → P) ≠ P at Q = {}", c.show(q));
            for r in &fam {
                let m = special_meet(q, r);
                let j = special_join(l, q, r);
                ensure!(members.contains(&m), "∩ leaves the family at ({}, {})", c.show(q), c.show(r));
                ensure!(
                    j.as_ref().is_some_and(|j| members.contains(j)),
                    "∨ leaves the family at ({}, {})",
                    c.show(q),
                    c.show(r)
                );
                for s in &fam {
                    let lhs = special_join(l, r, s).map(|rs| special_meet(q, &rs));
                    let rhs = special_join(l, &special_meet(q, r), &special_meet(q, s));
                    ensure!(lhs == rhs, "not distributive at ({}, {}, {})", c.show(q), c.show(r), c.show(s));
                }
            }
        }
        sizes.insert(fam.len());
    }
    Ok(Some(format!("family sizes {sizes:?}")))
}

fn lem_clos_intersect(c: &Ctx, into_p: bool) -> Res {
    let l = c.l();
    let sp = c.specials()?;
    for (p, r) in sim_pairs(c)? {
        let target = if into_p { p.clone() } else { special_meet(p, r) };
        for q in boolean_below(l, p, sp)? {
            for k in boolean_below(l, r, sp)? {
                let qk = special_meet(&q, &k);
                ensure!(
                    qk.is_subset(&target) && is_boolean(l, &qk, &target)?,
                    "Q ∩ K is not {}-Boolean at P = {}, R = {}, Q = {}, K = {}",
                    c.show(&target),
                    c.show(p),
                    c.show(r),
                    c.show(&q),
                    c.show(&k)
                );
            }
        }
    }
    Ok(Some(SIM_READING.into()))
}

fn lem_clos_intersect_pr(c: &Ctx) -> Res {
    lem_clos_intersect(c, false)
}

fn cor_clos_intersect(c: &Ctx) -> Res {
    lem_clos_intersect(c, true)
}

/// Chains `Q ⊆ R ⊆ P` with `Q` and `R` both `P`-Boolean.
fn boolean_chains(c: &Ctx) -> Res<Vec<[SpecialSub; 3]>> {
    let mut out = Vec::new();
    for (p, fam) in boolean_families(c)? {
        for r in &fam {
            for q in fam.iter().filter(|q| q.is_subset(r)) {
                out.push([q.clone(), r.clone(), p.clone()]);
            }
        }
    }
    Ok(out)
}

fn lem_delta_gives_str_a(c: &Ctx) -> Res {
    let l = c.l();
    for [q, r, p] in boolean_chains(c)? {
        let lhs = rel_complement(l, &delta_special(l, &q, &r)?, &delta_special(l, &q, &p)?)?;
        let rhs = antipode_set(l, &rel_complement(l, &r, &p)?);
        ensure!(
            lhs.members() == rhs,
            "Δ(Q, R) → Δ(Q, P) ≠ Δ(1, R → P) at Q = {}, R = {}, P = {}",
            c.show(&q),
            c.show(&r),
            c.show(&p)
        );
    }
    Ok(None)
}

fn lem_delta_gives_str(c: &Ctx) -> Res {
    let l = c.l();
    for [q, r, p] in boolean_chains(c)? {
        let (dr, dp) = (delta_special(l, &q, &r)?, delta_special(l, &q, &p)?);
        ensure!(
            is_boolean(l, &dr, &dp)?,
            "Δ(Q, R) is not Δ(Q, P)-Boolean at Q = {}, R = {}, P = {}",
            c.show(&q),
            c.show(&r),
            c.show(&p)
        );
    }
    Ok(None)
}

fn lem_impl_ddd(c: &Ctx) -> Res {
    let l = c.l();
    for [q, r, p] in boolean_chains(c)? {
        let lhs = rel_complement(l, &q, &delta_special(l, &r, &p)?)?;
        let anti = SpecialSub::canonical(&antipode_set(l, &rel_complement(l, &r, &p)?));
        let rhs = special_join(l, &rel_complement(l, &q, &r)?, &anti);
        ensure!(
            rhs.as_ref() == Some(&lhs),
            "Q → Δ(R, P) ≠ (Q → R) ∨ Δ(1, R → P) at Q = {}, R = {}, P = {}",
            c.show(&q),
            c.show(&r),
            c.show(&p)
        );
    }
    Ok(None)
}

fn cor_iterated_delta(c: &Ctx) -> Res {
    let l = c.l();
    for [q, r, p] in boolean_chains(c)? {
        let lhs = delta_special(l, &q, &delta_special(l, &r, &p)?)?;
        let rhs = delta_special(l, &delta_special(l, &q, &r)?, &delta_special(l, &q, &p)?)?;
        ensure!(
            lhs == rhs,
            "Δ(Q, Δ(R, P)) ≠ Δ(Δ(Q, R), Δ(Q, P)) at Q = {}, R = {}, P = {}",
            c.show(&q),
            c.show(&r),
            c.show(&p)
        );
    }
    Ok(None)
}

fn thm_mr_alg_filter(c: &Ctx) -> Res {
    let col = c.collapse()?;
    c.some_gcover()?;
    let lsb = build_lsb(col)?;
    let report = lsb.check();
    if let Some(bad) = report.checks.iter().find(|x| x.witness.is_some()) {
        return Err(Stop::Fail(format!("clause ({}): {}", bad.clause, bad.witness.as_deref().unwrap_or(""))));
    }
    Ok(Some(format!("{} elements, {} atoms", lsb.alg().len(), lsb.atoms().len())))
}

macro_rules! law {
    ($id:literal, $domain:literal, $f:ident) => {
        Law { id: $id, domain: $domain, gating: true, check: $f }
    };
}

static REGISTRY: &[Law] = &[
    law!("def:cubic", "every instance", def_cubic),
    law!("def:MR", "signed-set, interval and pair algebras", def_mr),
    law!("lem:caretTotal", "cubic algebras", lem_caret_total),
    law!("def:caret", "cubic algebras, all pairs with a meet", def_caret),
    law!("def:sim", "cubic algebras, all pairs", def_sim),
    law!("lem:preceqMeet", "cubic algebras, all pairs", lem_preceq_meet),
    law!("lem:simAbove", "cubic algebras, all triples", lem_sim_above),
    law!("rem:one", "cubic algebras", rem_one),
    law!("def:implColl", "cubic algebras with a collapse", def_impl_coll),
    law!("thm:localEmbed", "cubic algebras, every base point", thm_local_embed),
    law!("thm:envAlg", "algebras with a g-cover", thm_env_alg),
    law!("def:envAlg", "algebras with a g-cover", def_env_alg),
    law!("thm:transfer", "MR algebras, every upward-closed subalgebra", thm_transfer),
    law!("lem:simeq", "pair, interval and signed-set algebras, all pairs", lem_simeq),
    law!("eq:one", "pair, interval and signed-set algebras", eq_one),
    law!("cor:lenEq", "interval and signed-set algebras", cor_len_eq),
    law!("lem:Boolean", "interval and signed-set algebras", lem_boolean),
    law!("lem:intervals", "pair, interval and signed-set algebras, every base point", lem_intervals),
    law!("lem:simHom", "pair and signed-set algebras", lem_sim_hom),
    law!("thm:isoIota", "cubic algebras with a collapse", thm_iso_iota),
    law!("def:gCover", "cubic algebras", def_gcover),
    law!("lem:simEq", "algebras with a g-cover", lem_sim_eq_gc),
    law!("lem:AlphaBeta", "algebras with a g-cover", lem_alpha_beta),
    law!("thm:MRgCover", "MR algebras with a g-cover", thm_mr_gcover),
    law!("rem:uSub", "algebras with a g-cover", rem_usub),
    law!("thm:existsGCovers", "cubic algebras", thm_exists_gcovers),
    law!("thm:envGCoversIII", "algebras with a g-cover", thm_env_gcovers_iii),
    law!("cor:filter", "upward-closed subalgebras of envelopes", cor_filter),
    law!("thm:envGCoverII", "algebras with a g-cover", thm_env_gcover_ii),
    law!("cor:downGC", "upward-closed subalgebras of algebras with a g-cover", cor_down_gc),
    law!("rem:gCoverDown", "upward-closed subalgebras of algebras with a g-cover", rem_gcover_down),
    law!("thm:inplEmbed", "pair algebras and realized g-covers", thm_inpl_embed),
    law!("thm:envImpl", "algebras with a g-cover", thm_env_impl),
    law!("lem:fipPreFilter", "interval and signed-set algebras, all triples", lem_fip_pre_filter),
    law!("def:compatible", "algebras with an interval embedding, all pairs", def_compatible),
    law!("cor:preFilterFIP", "algebras embedded in an MR-algebra, all pairs", cor_pre_filter_fip),
    law!("lem:compEQ", "cubic algebras, all pairs", lem_comp_eq),
    law!("def:sia", "hosts up to 27 elements", def_sia),
    law!("lem:gcEQcomp", "algebras with a g-cover", lem_gc_eq_comp),
    law!("lem:intersectSpec", "special subalgebras, all pairs", lem_intersect_spec),
    law!("lem:interTwoFil", "special subalgebras, all pairs", lem_inter_two_fil),
    law!("def:cup", "special subalgebras, all pairs", def_cup),
    law!("lem:cup", "special subalgebras, all pairs", lem_cup),
    law!("lem:distrib", "special subalgebras, all triples", lem_distrib),
    law!("lem:gFF", "special subalgebras and host elements", lem_gff),
    law!("lem:interSect", "special subalgebras and host elements", lem_inter_sect),
    law!("thm:gFF", "special subalgebras and host elements", thm_gff),
    law!("cor:implSS", "special subalgebras and host elements", cor_impl_ss),
    law!("cor:gFilter", "special subalgebras and their members", cor_g_filter),
    law!("lem:gFilter", "pairs of specials and host elements", lem_g_filter),
    law!("cor:Idempotence", "special subalgebras and member pairs", cor_idempotence),
    law!("def:impl", "nested specials J ⊆ I", def_impl),
    law!("lem:twoThreeSame", "nested specials J ⊆ I", lem_two_three_same),
    law!("lem:smallH", "nested specials J ⊆ I", lem_small_h),
    law!("thm:oneThreeEqual", "nested specials J ⊆ I", thm_one_three_equal),
    law!("lem:implGG", "special subalgebras and their members", lem_impl_gg),
    law!("lem:inclImpl", "chains J ⊆ H ⊆ I", lem_incl_impl),
    law!("cor:inclImpl", "chains J ⊆ H ⊆ I", cor_incl_impl),
    law!("cor:conJoint", "nested specials J ⊆ I", cor_con_joint),
    law!("lem:inclAgain", "chains J ⊆ H ⊆ I", lem_incl_again),
    law!("lem:deltaOne", "nested specials J ⊆ I", lem_delta_one),
    law!("def:Delta", "nested specials J ⊆ I", def_delta),
    law!("lem:DeltagOne", "special subalgebras and their members", lem_delta_g_one),
    law!("cor:DeltaDoublePrinc", "host pairs h ≤ g", cor_delta_double_princ),
    law!("lem:implInDelta", "nested specials J ⊆ I", lem_impl_in_delta),
    law!("cor:doubleDelta", "nested specials J ⊆ I", cor_double_delta),
    law!("lem:inclDelta", "chains J ⊆ H ⊆ I", lem_incl_delta),
    law!("lem:interDelta", "nested specials J ⊆ I", lem_inter_delta),
    law!("def:Boolean", "special subalgebras", def_boolean),
    law!("lem:BooleanANotherWay", "nested specials Q ⊆ P", lem_boolean_another_way),
    law!("lem:implgTwice", "special subalgebras and their members", lem_implg_twice),
    law!("lem:moving", "∼-equivalent specials", lem_moving),
    law!("thm:Boolean", "∼-equivalent specials", thm_boolean),
    law!("thm:wkBoolean", "∼-equivalent specials", thm_wk_boolean),
    law!("lem:upwards", "chains Q ⊆ R ⊆ P", lem_upwards),
    law!("lem:middle", "chains Q ⊆ R ⊆ P", lem_middle),
    law!("lem:lots", "∼-equivalent specials", lem_lots),
    law!("cor:lots", "∼-equivalent specials", cor_lots),
    law!("lem:DeltaInMR", "cubic algebras, all pairs", lem_delta_in_mr),
    law!("thm:lots", "pairs of specials", thm_lots),
    law!("lem:interStrBool", "P-Boolean pairs", lem_inter_str_bool),
    law!("cor:interStrBool", "P-Boolean pairs", cor_inter_str_bool),
    law!("cor:joinStrBool", "P-Boolean pairs", cor_join_str_bool),
    law!("thm:BooleanAlgebra", "special subalgebras", thm_boolean_algebra),
    law!("lem:closIntersect", "∼-equivalent specials", lem_clos_intersect_pr),
    law!("cor:closIntersect", "∼-equivalent specials", cor_clos_intersect),
    law!("lem:deltaGivesStrA", "P-Boolean chains", lem_delta_gives_str_a),
    law!("lem:deltaGivesStr", "P-Boolean chains", lem_delta_gives_str),
    law!("lem:implDDD", "P-Boolean chains", lem_impl_ddd),
    law!("cor:iteratedDelta", "P-Boolean chains", cor_iterated_delta),
    law!("thm:MRalgFilter", "algebras with a g-cover", thm_mr_alg_filter),
];

/// Every law, in report order.
pub fn registry() -> &'static [Law] {
    REGISTRY
}

pub fn law_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|l| l.id).collect()
}

/// Resolves law ids; `"all"` selects the whole registry.
pub fn select(ids: &[String]) -> Result<Vec<&'static Law>> {
    if ids.iter().any(|i| i == "all") {
        return Ok(REGISTRY.iter().collect());
    }
    let mut out = Vec::new();
    for id in ids {
        let law = REGISTRY.iter().find(|l| l.id == id).ok_or_else(|| Error::UnknownLaw(id.clone()))?;
        if !out.iter().any(|l: &&Law| l.id == law.id) {
            out.push(law);
        }
    }
    out.sort_by_key(|l| REGISTRY.iter().position(|r| r.id == l.id));
    Ok(out)
}

fn run_instance(inst: &Instance, laws: &[&'static Law], opts: RunOptions) -> Vec<LawResult> {
    let ctx = Ctx::new(inst, opts);
    laws.iter()
        .map(|law| {
            ctx.sampled.set(false);
            let (status, mut note) = match (law.check)(&ctx) {
                Ok(note) => (Status::Pass, note),
                Err(Stop::Fail(w)) => (Status::Fail(w), None),
                Err(Stop::Skip(why)) => (Status::Skipped(why), None),
            };
            if ctx.sampled.get() {
                let s = format!("sampled {} tuples, seed {}", opts.budget, opts.seed);
                note = Some(note.map_or(s.clone(), |n| format!("{n}; {s}")));
            }
            LawResult { law: law.id, instance: inst.name.clone(), gating: law.gating, status, note }
        })
        .collect()
}

/// Runs `laws` over `corpus`. Instances are checked on separate threads;
/// the report is ordered by law, then by corpus position.
pub fn run_registry(corpus: &[Instance], laws: &[&'static Law], opts: RunOptions) -> Report {
    let per_instance: Vec<Vec<LawResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = corpus.iter().map(|inst| s.spawn(move || run_instance(inst, laws, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("law checker panicked")).collect()
    });
    let mut results = Vec::with_capacity(laws.len() * corpus.len());
    for k in 0..laws.len() {
        for rows in &per_instance {
            results.push(rows[k].clone());
        }
    }
    Report { results }
}
