//! A second, deliberately naive implementation of the finite models and
//! the definitions the library decides, used as an oracle by the
//! integration tests. Everything here works on plain tables and bitmasks.

#![allow(dead_code)]

use cubal::cubic::CubicAlg;

const INTERVAL_ATOMS: [&str; 3] = ["p", "q", "r"];
const SIGNED_ATOMS: [&str; 3] = ["x", "y", "z"];

fn show(mask: u32, names: &[&str]) -> String {
    let inner: Vec<&str> = (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i]).collect();
    format!("{{{}}}", inner.join(","))
}

/// An algebra as raw tables.
#[derive(Clone, Debug)]
pub struct Tab {
    pub labels: Vec<String>,
    pub top: usize,
    pub join: Vec<Vec<usize>>,
    pub delta: Vec<Vec<Option<usize>>>,
}

impl Tab {
    pub fn from_alg(l: &CubicAlg) -> Self {
        Tab { labels: l.labels().to_vec(), top: l.top(), join: l.join_rows(), delta: l.delta_rows() }
    }

    fn from_pairs(
        elems: Vec<(u32, u32)>,
        label: impl Fn(u32, u32) -> String,
        top: (u32, u32),
        join: impl Fn((u32, u32), (u32, u32)) -> (u32, u32),
        delta: impl Fn((u32, u32), (u32, u32)) -> (u32, u32),
    ) -> Self {
        let idx = |e: (u32, u32)| elems.iter().position(|&x| x == e).expect("closed");
        let n = elems.len();
        let join: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| idx(join(elems[i], elems[j]))).collect()).collect();
        let delta = (0..n)
            .map(|x| (0..n).map(|y| (join[x][y] == x).then(|| idx(delta(elems[x], elems[y])))).collect())
            .collect();
        Tab { labels: elems.iter().map(|&(a, b)| label(a, b)).collect(), top: idx(top), join, delta }
    }

    /// Lengths `ℓ([a, b]) = ¬a ∧ b`, as bitmasks, of the elements of
    /// [`Tab::interval`] in order.
    pub fn interval_lengths(n: usize) -> Vec<u32> {
        let full = (1u32 << n) - 1;
        (0..=full).flat_map(|a| (0..=full).filter(move |&b| a & !b == 0).map(move |b| b & !a)).collect()
    }

    /// `ℐ(2^n)`: intervals `[a, b]` with `Δ([a,b],[c,d]) = [a ∨ (b ∧ ¬d), b ∧ (a ∨ ¬c)]`.
    pub fn interval(n: usize) -> Self {
        let full = (1u32 << n) - 1;
        let elems: Vec<(u32, u32)> =
            (0..=full).flat_map(|a| (0..=full).filter(move |&b| a & !b == 0).map(move |b| (a, b))).collect();
        let names = &INTERVAL_ATOMS[..n];
        Self::from_pairs(
            elems,
            |a, b| format!("[{},{}]", show(a, names), show(b, names)),
            (0, full),
            |(a, b), (c, d)| (a & c, b | d),
            |(a, b), (c, d)| (a | (b & !d & full), b & (a | (!c & full))),
        )
    }

    /// `𝒮(X)`: disjoint pairs with `Δ(⟨A,B⟩,⟨C,D⟩) = ⟨A ∪ D ∖ B, B ∪ C ∖ A⟩`.
    pub fn signed(n: usize) -> Self {
        let full = (1u32 << n) - 1;
        let elems: Vec<(u32, u32)> =
            (0..=full).flat_map(|a| (0..=full).filter(move |&b| a & b == 0).map(move |b| (a, b))).collect();
        let names = &SIGNED_ATOMS[..n];
        Self::from_pairs(
            elems,
            |a, b| format!("<{},{}>", show(a, names), show(b, names)),
            (0, 0),
            |(a, b), (c, d)| (a & c, b & d),
            |(a, b), (c, d)| ((a | d) & !b, (b | c) & !a),
        )
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Index of each of our elements in `l`, matched by label, provided the
    /// tables agree under that matching.
    pub fn matches(&self, l: &CubicAlg) -> Result<Vec<usize>, String> {
        if l.len() != self.n() {
            return Err(format!("{} elements against {}", l.len(), self.n()));
        }
        let map: Vec<usize> =
            self.labels.iter().map(|s| l.find(s).ok_or_else(|| format!("no element {s}"))).collect::<Result<_, _>>()?;
        if map[self.top] != l.top() {
            return Err("top differs".into());
        }
        for x in 0..self.n() {
            for y in 0..self.n() {
                if map[self.join[x][y]] != l.join(map[x], map[y]) {
                    return Err(format!("join differs at ({}, {})", self.labels[x], self.labels[y]));
                }
                if self.delta[x][y].map(|d| map[d]) != l.delta_opt(map[x], map[y]) {
                    return Err(format!("Δ differs at ({}, {})", self.labels[x], self.labels[y]));
                }
            }
        }
        Ok(map)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join[x][y] == y
    }

    pub fn d(&self, x: usize, y: usize) -> usize {
        self.delta[x][y].expect("Δ defined below")
    }

    pub fn anti(&self, x: usize) -> usize {
        self.d(self.top, x)
    }

    /// `xy = Δ(1, Δ(x ∨ y, y)) ∨ y`.
    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.join[self.anti(self.d(self.join[x][y], y))][y]
    }

    pub fn sim(&self, a: usize, b: usize) -> bool {
        self.d(self.join[a][b], a) == b
    }

    /// Greatest common lower bound, if there is one.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n()).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&z| self.leq(z, m)))
    }

    /// First failing axiom among a–f and contraction, with its witness.
    pub fn axiom_failure(&self) -> Option<String> {
        let n = self.n();
        let r = 0..n;
        for x in r.clone() {
            for y in r.clone() {
                if self.leq(x, y) {
                    if self.join[self.d(y, x)][x] != y {
                        return Some(format!("a at ({x}, {y})"));
                    }
                    if self.d(y, self.d(y, x)) != x {
                        return Some(format!("c at ({x}, {y})"));
                    }
                    for z in r.clone().filter(|&z| self.leq(y, z)) {
                        // b needs Δ(z,x) ≤ Δ(z,y), which is d.
                        if !self.leq(self.d(z, x), self.d(z, y)) {
                            return Some(format!("d at ({x}, {y}, {z})"));
                        }
                        if self.d(z, self.d(y, x)) != self.d(self.d(z, y), self.d(z, x)) {
                            return Some(format!("b at ({x}, {y}, {z})"));
                        }
                    }
                }
                if self.imp(self.imp(x, y), y) != self.join[x][y] {
                    return Some(format!("e at ({x}, {y})"));
                }
                if self.imp(self.imp(x, y), x) != x {
                    return Some(format!("contraction at ({x}, {y})"));
                }
                for z in r.clone() {
                    if self.imp(x, self.imp(y, z)) != self.imp(y, self.imp(x, z)) {
                        return Some(format!("f at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        None
    }

    /// For `a, b < x`: `Δ(x,a) ∨ b < x` iff `a ∧ b` does not exist.
    pub fn mr_holds(&self) -> bool {
        (0..self.n()).all(|x| {
            let below: Vec<usize> = (0..self.n()).filter(|&a| a != x && self.leq(a, x)).collect();
            below.iter().all(|&a| below.iter().all(|&b| (self.join[self.d(x, a)][b] != x) == self.meet(a, b).is_none()))
        })
    }

    /// `x ∧ Δ(x ∨ y, y)` exists for every pair.
    pub fn caret_total(&self) -> bool {
        (0..self.n()).all(|x| (0..self.n()).all(|y| self.meet(x, self.d(self.join[x][y], y)).is_some()))
    }

    /// `∼`-class number of every element.
    pub fn classes(&self) -> Vec<usize> {
        let mut cls = vec![usize::MAX; self.n()];
        let mut next = 0;
        for x in 0..self.n() {
            if cls[x] == usize::MAX {
                for (y, c) in cls.iter_mut().enumerate() {
                    if self.sim(x, y) {
                        *c = next;
                    }
                }
                next += 1;
            }
        }
        cls
    }

    pub fn subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0u64..1 << self.n()).map(|m| (0..self.n()).filter(|i| m >> i & 1 == 1).collect())
    }

    fn upward_closed(&self, s: &[usize]) -> bool {
        s.iter().all(|&x| (0..self.n()).all(|y| !self.leq(x, y) || s.contains(&y)))
    }

    /// Contains 1, upward closed, closed under `∨` and the derived
    /// implication, meets a `∼`-class exactly once each, and keeps every
    /// meet of two members that exists.
    pub fn is_gcover(&self, s: &[usize]) -> bool {
        let cls = self.classes();
        let n_cls = cls.iter().max().map_or(0, |m| m + 1);
        let mut hit: Vec<usize> = s.iter().map(|&x| cls[x]).collect();
        hit.sort_unstable();
        hit.dedup();
        s.contains(&self.top)
            && self.upward_closed(s)
            && hit.len() == s.len()
            && hit.len() == n_cls
            && s.iter().all(|&x| {
                s.iter().all(|&y| {
                    s.contains(&self.join[x][y])
                        && s.contains(&self.imp(x, y))
                        && self.meet(x, y).is_none_or(|m| s.contains(&m))
                })
            })
    }

    pub fn gcovers(&self) -> Vec<Vec<usize>> {
        self.subsets().filter(|s| self.is_gcover(s)).collect()
    }

    /// Upward-closed sets containing 1 that are closed under `∨` and under
    /// `Δ` on members.
    pub fn upward_closed_subalgebras(&self) -> Vec<Vec<usize>> {
        self.subsets()
            .filter(|s| {
                s.contains(&self.top)
                    && self.upward_closed(s)
                    && s.iter().all(|&x| {
                        s.iter()
                            .all(|&y| s.contains(&self.join[x][y]) && (!self.leq(y, x) || s.contains(&self.d(x, y))))
                    })
            })
            .collect()
    }

    /// The tables restricted to `s`, reindexed in the order of `s`.
    pub fn restrict(&self, s: &[usize]) -> Tab {
        let at = |x: usize| s.iter().position(|&m| m == x).expect("closed subset");
        Tab {
            labels: s.iter().map(|&x| self.labels[x].clone()).collect(),
            top: at(self.top),
            join: s.iter().map(|&x| s.iter().map(|&y| at(self.join[x][y])).collect()).collect(),
            delta: s.iter().map(|&x| s.iter().map(|&y| self.delta[x][y].map(at)).collect()).collect(),
        }
    }
}
