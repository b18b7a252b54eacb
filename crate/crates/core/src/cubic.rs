//! Finite cubic algebras in table form.
//!
//! Every concrete model materializes into a [`CubicAlg`]: a join table, a
//! top element and a partial `Δ` table defined exactly on pairs `(x, y)`
//! with `y ≤ x`. Elements are plain indices into the carrier.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest carrier that will be materialized.
pub const MAX_CARRIER: usize = 4096;

const UNDEF: u16 = u16::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicAlg {
    labels: Vec<String>,
    top: usize,
    join: Vec<u16>,
    delta: Vec<u16>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
}

impl CubicAlg {
    /// Builds and validates an algebra from explicit tables.
    ///
    /// Checks that `join` is a semilattice operation with `top` absorbing
    /// and that `delta[x][y]` is present exactly when `y ≤ x`. The cubic
    /// axioms themselves are not checked here; see [`check_cubic_axioms`].
    pub fn from_tables(
        labels: Vec<String>,
        top: usize,
        join: Vec<Vec<usize>>,
        delta: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = labels.len();
        Self::check_size(n)?;
        if join.len() != n || join.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable("join table is not square over the carrier".into()));
        }
        if delta.len() != n || delta.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable("delta table is not square over the carrier".into()));
        }
        let in_range = |v: usize| {
            if v < n {
                Ok(v as u16)
            } else {
                Err(Error::BadElement(v))
            }
        };
        let join = join.iter().flatten().map(|&v| in_range(v)).collect::<Result<Vec<_>>>()?;
        let delta = delta.iter().flatten().map(|v| v.map_or(Ok(UNDEF), in_range)).collect::<Result<Vec<_>>>()?;
        Self::assemble(labels, top, join, delta)
    }

    /// Builds an algebra from operation closures. `delta(x, y)` is only
    /// called on pairs with `y ≤ x` under the order induced by `join`.
    pub fn from_ops(
        labels: Vec<String>,
        top: usize,
        join: impl Fn(usize, usize) -> usize,
        delta: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        Self::check_size(n)?;
        let mut jt = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = join(x, y);
                if v >= n {
                    return Err(Error::BadElement(v));
                }
                jt.push(v as u16);
            }
        }
        let mut dt = vec![UNDEF; n * n];
        for x in 0..n {
            for y in 0..n {
                if jt[x * n + y] as usize == x {
                    let v = delta(x, y);
                    if v >= n {
                        return Err(Error::BadElement(v));
                    }
                    dt[x * n + y] = v as u16;
                }
            }
        }
        Self::assemble(labels, top, jt, dt)
    }

    fn check_size(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        if n > MAX_CARRIER {
            return Err(Error::SizeCap { what: "cubic carrier", got: n, max: MAX_CARRIER });
        }
        Ok(())
    }

    fn assemble(labels: Vec<String>, top: usize, join: Vec<u16>, delta: Vec<u16>) -> Result<Self> {
        let n = labels.len();
        if top >= n {
            return Err(Error::BadElement(top));
        }
        let j = |x: usize, y: usize| join[x * n + y] as usize;
        for x in 0..n {
            if j(x, x) != x {
                return Err(Error::MalformedTable(format!("join is not idempotent at {}", labels[x])));
            }
            if j(x, top) != top {
                return Err(Error::MalformedTable(format!("top does not absorb {}", labels[x])));
            }
            for y in 0..n {
                if j(x, y) != j(y, x) {
                    return Err(Error::MalformedTable(format!(
                        "join is not commutative at ({}, {})",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, ups) in up.iter_mut().enumerate() {
            for y in (0..n).filter(|&y| j(x, y) == y) {
                ups.insert(y);
                down[y].insert(x);
            }
        }
        // Transitivity of the induced order, then the least-upper-bound
        // property; together they make `join` associative.
        for x in 0..n {
            for y in up[x].ones() {
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::MalformedTable(format!("induced order is not transitive above {}", labels[x])));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let mut common = up[x].clone();
                common.intersect_with(&up[y]);
                if up[j(x, y)] != common {
                    return Err(Error::MalformedTable(format!(
                        "join of ({}, {}) is not a least upper bound",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let defined = delta[x * n + y] != UNDEF;
                if defined != down[x].contains(y) {
                    return Err(Error::MalformedTable(format!(
                        "delta({}, {}) must be {}",
                        labels[x],
                        labels[y],
                        if defined { "undefined" } else { "defined" }
                    )));
                }
            }
        }
        Ok(CubicAlg { labels, top, join, delta, down, up })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check_id(&self, x: usize) -> Result<usize> {
        if x < self.len() {
            Ok(x)
        } else {
            Err(Error::BadElement(x))
        }
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `Δ(x, y)`, defined when `y ≤ x`.
    pub fn delta(&self, x: usize, y: usize) -> Result<usize> {
        self.delta_opt(x, y).ok_or(Error::DeltaUndefined { x, y })
    }

    pub fn delta_opt(&self, x: usize, y: usize) -> Option<usize> {
        match self.delta[x * self.len() + y] {
            UNDEF => None,
            v => Some(v as usize),
        }
    }

    fn d(&self, x: usize, y: usize) -> usize {
        self.delta[x * self.len() + y] as usize
    }

    /// `Δ(1, x)`.
    pub fn antipode(&self, x: usize) -> usize {
        self.d(self.top, x)
    }

    /// `xy = Δ(1, Δ(x ∨ y, y)) ∨ y`.
    pub fn derived_imp(&self, x: usize, y: usize) -> usize {
        let j = self.join(x, y);
        self.join(self.antipode(self.d(j, y)), y)
    }

    pub fn preceq(&self, a: usize, b: usize) -> bool {
        self.leq(self.d(self.join(a, b), a), b)
    }

    pub fn sim(&self, a: usize, b: usize) -> bool {
        self.d(self.join(a, b), a) == b
    }

    /// Elements below `x`, as a bitset over the carrier.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Elements above `x`, as a bitset over the carrier.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Greatest common lower bound, if one exists.
    pub fn poset_meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.down[x].clone();
        common.intersect_with(&self.down[y]);
        let count = common.count_ones(..);
        common.ones().max_by_key(|&m| self.down[m].count_ones(..)).filter(|&m| self.down[m].count_ones(..) == count)
    }

    /// `x ∧ Δ(x ∨ y, y)` when that meet exists.
    pub fn caret(&self, x: usize, y: usize) -> Option<usize> {
        self.poset_meet(x, self.d(self.join(x, y), y))
    }

    /// `a * b = a ∨ Δ(a ∨ b, b)`.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.join(a, self.d(self.join(a, b), b))
    }

    /// `a ⇒ b = Δ(a ∨ b, a) → b` with `→` the derived implication.
    pub fn dimp(&self, a: usize, b: usize) -> usize {
        self.derived_imp(self.d(self.join(a, b), a), b)
    }

    /// All members of `set` have all their upper bounds in `set`.
    pub fn is_upward_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.up[x].is_subset(set))
    }

    pub fn bitset(&self, members: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for &m in members {
            s.insert(m);
        }
        s
    }

    /// Closes `gens ∪ {1}` under `∨` and all defined `Δ`.
    pub fn generate_subalgebra(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = self.bitset(gens);
        set.insert(self.top);
        let mut frontier: Vec<usize> = set.ones().collect();
        while !frontier.is_empty() {
            let cur: Vec<usize> = set.ones().collect();
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &cur {
                    let mut add = |v: usize| {
                        if !set.put(v) {
                            next.push(v);
                        }
                    };
                    add(self.join(x, y));
                    if let Some(v) = self.delta_opt(x, y) {
                        add(v);
                    }
                    if let Some(v) = self.delta_opt(y, x) {
                        add(v);
                    }
                }
            }
            frontier = next;
        }
        set.ones().collect()
    }

    /// Restricts the algebra to `members`, which must contain 1 and be
    /// closed under `∨` and `Δ`. Returns the subalgebra and, for each new
    /// index, the old index.
    pub fn restrict(&self, members: &[usize]) -> Result<(CubicAlg, Vec<usize>)> {
        for &m in members {
            self.check_id(m)?;
        }
        let set = self.bitset(members);
        let old: Vec<usize> = set.ones().collect();
        if !set.contains(self.top) {
            return Err(Error::Precondition("subalgebra must contain 1".into()));
        }
        let mut new = vec![usize::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new[o] = i;
        }
        for &x in &old {
            for &y in &old {
                if !set.contains(self.join(x, y)) {
                    return Err(Error::Precondition(format!(
                        "not closed under join at ({}, {})",
                        self.label(x),
                        self.label(y)
                    )));
                }
                if let Some(v) = self.delta_opt(x, y) {
                    if !set.contains(v) {
                        return Err(Error::Precondition(format!(
                            "not closed under delta at ({}, {})",
                            self.label(x),
                            self.label(y)
                        )));
                    }
                }
            }
        }
        let labels = old.iter().map(|&o| self.labels[o].clone()).collect();
        let sub = CubicAlg::from_ops(
            labels,
            new[self.top],
            |x, y| new[self.join(old[x], old[y])],
            |x, y| new[self.d(old[x], old[y])],
        )?;
        Ok((sub, old))
    }

    /// Copy with one defined `Δ` entry overwritten. Used to build corrupted
    /// algebras for mutation testing; the order is untouched.
    pub fn with_delta_entry(&self, x: usize, y: usize, value: usize) -> Result<CubicAlg> {
        self.check_id(value)?;
        self.delta(x, y)?;
        let mut out = self.clone();
        let n = self.len();
        out.delta[x * n + y] = value as u16;
        Ok(out)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<CubicAlg> {
        if labels.len() != self.len() {
            return Err(Error::MalformedTable("label count does not match carrier".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn join_rows(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect()
    }

    pub fn delta_rows(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.len();
        (0..n).map(|x| (0..n).map(|y| self.delta_opt(x, y)).collect()).collect()
    }

    /// Cover pairs `(lower, upper)` of the order.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        crate::order::hasse_covers(self.len(), |x, y| self.leq(x, y))
    }
}

/// One entry of an axiom report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// Entries marked for review are reported but not required.
    pub review: bool,
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomCheck>,
}

impl AxiomReport {
    /// All non-review entries pass.
    pub fn required_pass(&self) -> bool {
        self.entries.iter().filter(|e| !e.review).all(AxiomCheck::passed)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

/// Exhaustive check of the cubic axioms a–f over all applicable tuples,
/// plus the contraction law `(xy)x = x` of the derived implication as a
/// review entry.
pub fn check_cubic_axioms(l: &CubicAlg) -> AxiomReport {
    let n = l.len();
    let d = |x: usize, y: usize| l.d(x, y);
    let chains =
        || (0..n).flat_map(move |z| l.down[z].ones().flat_map(move |y| l.down[y].ones().map(move |x| (x, y, z))));
    let pairs_le = || (0..n).flat_map(move |y| l.down[y].ones().map(move |x| (x, y)));
    let all_pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));

    let a = pairs_le().find(|&(x, y)| l.join(d(y, x), x) != y).map(|(x, y)| vec![x, y]);
    let b = chains()
        .find(|&(x, y, z)| {
            // Δ(z,y) ≥ Δ(z,x) needs axiom d; guard so a broken table yields a
            // witness rather than an undefined lookup.
            match l.delta_opt(d(z, y), d(z, x)) {
                Some(rhs) => d(z, d(y, x)) != rhs,
                None => true,
            }
        })
        .map(|(x, y, z)| vec![x, y, z]);
    let c = pairs_le().find(|&(x, y)| l.delta_opt(y, d(y, x)) != Some(x)).map(|(x, y)| vec![x, y]);
    let dd = chains().find(|&(x, y, z)| !l.leq(d(z, x), d(z, y))).map(|(x, y, z)| vec![x, y, z]);
    let imp = |x: usize, y: usize| l.derived_imp(x, y);
    let e = all_pairs().find(|&(x, y)| imp(imp(x, y), y) != l.join(x, y)).map(|(x, y)| vec![x, y]);
    let mut f = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if imp(x, imp(y, z)) != imp(y, imp(x, z)) {
                    f = Some(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    let contraction = all_pairs().find(|&(x, y)| imp(imp(x, y), x) != x).map(|(x, y)| vec![x, y]);

    let entry = |name, statement, witness| AxiomCheck { name, statement, review: false, witness };
    AxiomReport {
        entries: vec![
            entry("a", "x ≤ y ⇒ Δ(y,x) ∨ x = y", a),
            entry("b", "x ≤ y ≤ z ⇒ Δ(z,Δ(y,x)) = Δ(Δ(z,y),Δ(z,x))", b),
            entry("c", "x ≤ y ⇒ Δ(y,Δ(y,x)) = x", c),
            entry("d", "x ≤ y ≤ z ⇒ Δ(z,x) ≤ Δ(z,y)", dd),
            entry("e", "(xy)y = x ∨ y", e),
            entry("f", "x(yz) = y(xz)", f),
            AxiomCheck { name: "contraction", statement: "(xy)x = x", review: true, witness: contraction },
        ],
    }
}

/// Outcome of the MR check, and of its comparison with caret totality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrReport {
    /// `(x, a, b)` with `a, b < x` where `Δ(x,a) ∨ b < x` disagrees with
    /// "`a ∧ b` does not exist".
    pub mr_witness: Option<[usize; 3]>,
    /// `(x, y)` with `x ∧ Δ(x ∨ y, y)` undefined.
    pub caret_witness: Option<[usize; 2]>,
}

impl MrReport {
    pub fn mr_holds(&self) -> bool {
        self.mr_witness.is_none()
    }

    pub fn caret_total(&self) -> bool {
        self.caret_witness.is_none()
    }

    /// The MR axiom holds exactly when caret is total.
    pub fn agree(&self) -> bool {
        self.mr_holds() == self.caret_total()
    }
}

pub fn check_mr_axiom(l: &CubicAlg) -> MrReport {
    let n = l.len();
    let mut mr_witness = None;
    'outer: for x in 0..n {
        let below: Vec<usize> = l.down[x].ones().filter(|&a| a != x).collect();
        for &a in &below {
            let da = l.d(x, a);
            for &b in &below {
                let strict = l.join(da, b) != x;
                let no_meet = l.poset_meet(a, b).is_none();
                if strict != no_meet {
                    mr_witness = Some([x, a, b]);
                    break 'outer;
                }
            }
        }
    }
    let caret_witness =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| l.caret(x, y).is_none()).map(|(x, y)| [x, y]);
    MrReport { mr_witness, caret_witness }
}

/// A map between cubic algebras, stored as a table over source ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicMorphism {
    source: CubicAlg,
    target: CubicAlg,
    table: Vec<usize>,
}

impl CubicMorphism {
    pub fn from_table(source: &CubicAlg, target: &CubicAlg, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidMorphism("table length differs from source size".into()));
        }
        for &t in &table {
            target.check_id(t)?;
        }
        Ok(CubicMorphism { source: source.clone(), target: target.clone(), table })
    }

    pub fn from_fn(source: &CubicAlg, target: &CubicAlg, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_table(source, target, (0..source.len()).map(f).collect())
    }

    pub fn identity(l: &CubicAlg) -> Self {
        CubicMorphism { source: l.clone(), target: l.clone(), table: (0..l.len()).collect() }
    }

    pub fn source(&self) -> &CubicAlg {
        &self.source
    }

    pub fn target(&self) -> &CubicAlg {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CubicMorphism) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::InvalidMorphism("composite of non-matching maps".into()));
        }
        Ok(CubicMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            table: self.table.iter().map(|&i| other.table[i]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target.len());
        self.table.iter().all(|&t| !seen.put(t))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::InvalidMorphism("map is not bijective".into()));
        }
        let mut inv = vec![0; self.table.len()];
        for (s, &t) in self.table.iter().enumerate() {
            inv[t] = s;
        }
        Self::from_table(&self.target, &self.source, inv)
    }

    /// Exhaustive check that 1, `∨` and every defined `Δ` are preserved.
    pub fn validate(&self) -> Result<()> {
        let (s, t, f) = (&self.source, &self.target, &self.table);
        if f[s.top()] != t.top() {
            return Err(Error::InvalidMorphism("1 is not preserved".into()));
        }
        for x in 0..s.len() {
            for y in 0..s.len() {
                if f[s.join(x, y)] != t.join(f[x], f[y]) {
                    return Err(Error::InvalidMorphism(format!(
                        "join not preserved at ({}, {})",
                        s.label(x),
                        s.label(y)
                    )));
                }
                if let Some(v) = s.delta_opt(x, y) {
                    if t.delta_opt(f[x], f[y]) != Some(f[v]) {
                        return Err(Error::InvalidMorphism(format!(
                            "delta not preserved at ({}, {})",
                            s.label(x),
                            s.label(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Validates and additionally requires bijectivity.
    pub fn validate_iso(&self) -> Result<()> {
        self.validate()?;
        if !self.is_bijective() {
            return Err(Error::InvalidMorphism("map is not bijective".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The three-element algebra `{l, r, 1}` with `Δ(1, l) = r`.
    fn segment() -> CubicAlg {
        let labels = vec!["l".to_string(), "r".into(), "1".into()];
        let join = vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]];
        let delta = vec![vec![Some(0), None, None], vec![None, Some(1), None], vec![Some(1), Some(0), Some(2)]];
        CubicAlg::from_tables(labels, 2, join, delta).unwrap()
    }

    #[test]
    fn segment_is_cubic_and_mr() {
        let l = segment();
        assert!(check_cubic_axioms(&l).all_pass());
        let mr = check_mr_axiom(&l);
        assert!(mr.mr_holds() && mr.caret_total() && mr.agree());
        assert_eq!(l.derived_imp(0, 0), 2);
        assert_eq!(l.derived_imp(2, 1), 1);
        assert!(l.sim(0, 1));
        assert_eq!(l.poset_meet(0, 1), None);
        assert_eq!(l.caret(0, 1), Some(0));
        assert_eq!(l.star(0, 0), 0);
    }

    #[test]
    fn delta_undefined_is_an_error() {
        let l = segment();
        assert_eq!(l.delta(0, 2), Err(Error::DeltaUndefined { x: 0, y: 2 }));
        assert_eq!(l.delta(2, 0), Ok(1));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let labels = vec!["a".to_string(), "1".into()];
        // delta missing on a comparable pair
        let r = CubicAlg::from_tables(
            labels.clone(),
            1,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![Some(0), None], vec![None, Some(1)]],
        );
        assert!(matches!(r, Err(Error::MalformedTable(_))));
        // top does not absorb
        let r = CubicAlg::from_tables(
            labels.clone(),
            0,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![Some(0), None], vec![Some(0), Some(1)]],
        );
        assert!(matches!(r, Err(Error::MalformedTable(_))));
        // non-associative "join" on a 4-element carrier
        let labels4: Vec<String> = ["a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let join = [[0, 2, 2, 3], [2, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]];
        let r = CubicAlg::from_ops(labels4, 3, |x, y| join[x][y], |_, y| y);
        assert!(matches!(r, Err(Error::MalformedTable(_))));
    }

    #[test]
    fn swapped_delta_entry_breaks_an_axiom() {
        let l = segment();
        let bad = l.with_delta_entry(2, 0, 0).unwrap();
        let rep = check_cubic_axioms(&bad);
        assert!(!rep.get("a").unwrap().passed());
    }

    #[test]
    fn morphisms() {
        let l = segment();
        let id = CubicMorphism::identity(&l);
        id.validate_iso().unwrap();
        let swap = CubicMorphism::from_table(&l, &l, vec![1, 0, 2]).unwrap();
        swap.validate_iso().unwrap();
        assert_eq!(swap.then(&swap).unwrap(), id);
        assert_eq!(swap.inverse().unwrap(), swap);
        CubicMorphism::from_table(&l, &l, vec![2, 2, 2]).unwrap().validate().unwrap();
        let fold = CubicMorphism::from_table(&l, &l, vec![0, 0, 2]).unwrap();
        assert!(fold.validate().is_err());
    }

    #[test]
    fn restrict_and_generate() {
        let l = segment();
        assert_eq!(l.generate_subalgebra(&[]), vec![2]);
        assert_eq!(l.generate_subalgebra(&[0]), vec![0, 1, 2]);
        let (sub, old) = l.restrict(&[2]).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!(old, vec![2]);
        assert!(l.restrict(&[0, 2]).is_err());
    }

    #[test]
    fn hasse_of_segment() {
        assert_eq!(segment().hasse(), vec![(0, 2), (1, 2)]);
    }
}
