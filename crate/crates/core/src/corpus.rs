//! Named test algebras: the standard models, pair algebras over every
//! implication subalgebra of `2^2`, and seeded corruptions of them.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{IntervalModel, PairModel, SignedSetModel};
use crate::cubic::CubicAlg;
use crate::error::{Error, Result};
use crate::implication::ImpAlg;
use crate::order::{enumerate_subalgebras, enumerate_upsets, BoolAlg};

/// Where an instance came from. Some laws only apply to particular
/// constructions.
#[derive(Clone, Debug)]
pub enum Origin {
    Signed(usize),
    Interval(BoolAlg),
    Pair(ImpAlg),
    /// `Δ(row, a)` and `Δ(row, b)` of `base` exchanged.
    Mutant {
        base: String,
        row: usize,
        swapped: (usize, usize),
    },
    Imported,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub alg: CubicAlg,
    pub origin: Origin,
}

impl Instance {
    pub fn new(name: impl Into<String>, alg: CubicAlg, origin: Origin) -> Self {
        Self { name: name.into(), alg, origin }
    }

    pub fn signed(n: usize) -> Result<Self> {
        let m = SignedSetModel::new(n)?;
        let name = format!("S({{{}}})", m.atom_names().join(","));
        Ok(Self::new(name, m.alg, Origin::Signed(n)))
    }

    pub fn interval(n: usize) -> Result<Self> {
        let b = BoolAlg::new(n, None)?;
        let m = IntervalModel::new(&b)?;
        Ok(Self::new(format!("I(2^{n})"), m.alg, Origin::Interval(b)))
    }

    pub fn pair(imp: &ImpAlg) -> Result<Self> {
        let m = PairModel::new(imp)?;
        let carrier: Vec<String> = imp.members().into_iter().map(|e| imp.show(e)).collect();
        let name = format!("I(<{}>)", carrier.join(","));
        Ok(Self::new(name, m.alg, Origin::Pair(imp.clone())))
    }
}

/// Atom names in the order they appear in the label of the top element,
/// which lists the whole ambient Boolean algebra for interval and pair
/// models.
fn label_atoms(l: &CubicAlg) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for tok in l.label(l.top()).split(|c: char| !(c.is_alphanumeric() || c == '_')).filter(|t| !t.is_empty()) {
        if !out.iter().any(|a| a == tok) {
            out.push(tok.to_string());
        }
    }
    out
}

/// The first brace group of a label such as `<{p},{p,q}>`, as names.
fn first_component(label: &str) -> Option<Vec<&str>> {
    let open = label.find('{')?;
    let close = open + label[open..].find('}')?;
    Some(label[open + 1..close].split(',').filter(|t| !t.is_empty()).collect())
}

/// Wraps an imported algebra, recognizing it when it equals one of the
/// standard models label for label. Origin-specific laws then apply.
pub fn recognize(name: impl Into<String>, alg: CubicAlg) -> Instance {
    let name = name.into();
    let atoms = label_atoms(&alg);
    let n = (0..=7usize).find(|&n| 3usize.pow(n as u32) == alg.len());
    if let Some(n) = n {
        if SignedSetModel::new(n).is_ok_and(|m| m.alg == alg) {
            return Instance::new(name, alg, Origin::Signed(n));
        }
        if let Ok(b) = BoolAlg::with_atoms(&atoms) {
            if IntervalModel::new(&b).is_ok_and(|m| m.alg == alg) {
                return Instance::new(name, alg, Origin::Interval(b));
            }
        }
    }
    if let Ok(b) = BoolAlg::with_atoms(&atoms) {
        let carrier: Option<Vec<_>> =
            alg.labels().iter().map(|l| first_component(l).and_then(|c| b.from_names(&c).ok())).collect();
        if let Some(imp) = carrier.and_then(|c| ImpAlg::from_carrier(&b, &c).ok()) {
            if PairModel::new(&imp).is_ok_and(|m| m.alg == alg) {
                return Instance::new(name, alg, Origin::Pair(imp));
            }
        }
    }
    Instance::new(name, alg, Origin::Imported)
}

/// Pair algebras of every implication subalgebra of `2^2`, which includes
/// every up-set.
pub fn pair_instances() -> Result<Vec<Instance>> {
    let b = BoolAlg::new(2, None)?;
    let mut carriers = enumerate_subalgebras(&b)?;
    for u in enumerate_upsets(&b)? {
        if !carriers.contains(&u) {
            carriers.push(u);
        }
    }
    carriers.iter().map(|c| Instance::pair(&ImpAlg::from_carrier(&b, c)?)).collect()
}

/// `𝒮(X)` for `|X| ≤ 2`, `ℐ(2^n)` for `n ≤ 2` and the pair algebras.
pub fn standard_corpus() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 0..=2 {
        out.push(Instance::signed(n)?);
    }
    for n in 0..=2 {
        out.push(Instance::interval(n)?);
    }
    out.extend(pair_instances()?);
    Ok(out)
}

/// `count` corruptions of `base`, each exchanging two distinct values in
/// one row of the `Δ` table. Deterministic in `seed`.
pub fn delta_swap_mutants(base: &Instance, seed: u64, count: usize) -> Result<Vec<Instance>> {
    let l = &base.alg;
    let mut candidates = Vec::new();
    for x in 0..l.len() {
        let below: Vec<usize> = l.down_set(x).ones().collect();
        for (i, &a) in below.iter().enumerate() {
            for &b in &below[i + 1..] {
                if l.delta_opt(x, a) != l.delta_opt(x, b) {
                    candidates.push((x, a, b));
                }
            }
        }
    }
    if candidates.len() < count {
        return Err(Error::Precondition(format!("{} admits only {} distinct Δ swaps", base.name, candidates.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(usize, usize, usize)> = candidates.choose_multiple(&mut rng, count).copied().collect();
    picks
        .into_iter()
        .map(|(x, a, b)| {
            let (da, db) = (l.delta(x, a)?, l.delta(x, b)?);
            let alg = l.with_delta_entry(x, a, db)?.with_delta_entry(x, b, da)?;
            let name =
                format!("{}~swap(Δ({},{})<->Δ({},{}))", base.name, l.label(x), l.label(a), l.label(x), l.label(b));
            Ok(Instance::new(name, alg, Origin::Mutant { base: base.name.clone(), row: x, swapped: (a, b) }))
        })
        .collect()
}
