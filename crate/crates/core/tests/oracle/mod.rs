//! Brute-force set-level reference computations.
//!
//! Works only from the raw Cayley tables and shares no code with the engine
//! beyond reading those tables.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hopf_brace::SkewBrace;

pub type Set = BTreeSet<usize>;

pub struct Tables {
    pub n: usize,
    pub e: usize,
    pub dot: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
}

impl Tables {
    pub fn of(b: &SkewBrace) -> Self {
        let dot = b.dot().rows();
        let circ = b.circ().rows();
        let n = dot.len();
        let e = (0..n).find(|&x| (0..n).all(|y| dot[x][y] == y)).expect("identity");
        Tables { n, e, dot, circ }
    }

    pub fn dinv(&self, a: usize) -> usize {
        (0..self.n).find(|&x| self.dot[a][x] == self.e).unwrap()
    }

    pub fn cinv(&self, a: usize) -> usize {
        (0..self.n).find(|&x| self.circ[a][x] == self.e).unwrap()
    }

    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.dot[self.dinv(a)][self.circ[a][b]]
    }

    pub fn star(&self, a: usize, b: usize) -> usize {
        self.dot[self.lambda(a, b)][self.dinv(b)]
    }

    pub fn dcomm(&self, a: usize, b: usize) -> usize {
        let ab = self.dot[a][b];
        self.dot[ab][self.dot[self.dinv(a)][self.dinv(b)]]
    }

    pub fn ccomm(&self, a: usize, b: usize) -> usize {
        let ab = self.circ[a][b];
        self.circ[ab][self.circ[self.cinv(a)][self.cinv(b)]]
    }

    pub fn whole(&self) -> Set {
        (0..self.n).collect()
    }

    /// Closure of `gens ∪ {e}` under `·` (enough in a finite group).
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Set {
        let mut set: Set = gens.into_iter().collect();
        set.insert(self.e);
        loop {
            let mut grown = set.clone();
            for &a in &set {
                for &b in &set {
                    grown.insert(self.dot[a][b]);
                }
            }
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    pub fn normal_closure(&self, gens: impl IntoIterator<Item = usize>) -> Set {
        let mut set = self.closure(gens);
        loop {
            let conj: Vec<usize> = set
                .iter()
                .flat_map(|&s| (0..self.n).map(move |g| (s, g)))
                .map(|(s, g)| self.dot[self.dot[g][s]][self.dinv(g)])
                .collect();
            let next = self.closure(set.iter().copied().chain(conj));
            if next == set {
                return set;
            }
            set = next;
        }
    }

    pub fn center(&self) -> Set {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.dot[z][g] == self.dot[g][z]))
            .collect()
    }

    fn iterate(&self, max: usize, step: impl Fn(&Set) -> Set) -> Vec<Set> {
        let mut terms = vec![self.whole()];
        for _ in 0..max {
            let last = terms.last().unwrap();
            if last.len() == 1 {
                break;
            }
            let next = step(last);
            let repeat = &next == last;
            terms.push(next);
            if repeat {
                break;
            }
        }
        terms
    }

    pub fn left_series(&self, max: usize) -> Vec<Set> {
        self.iterate(max, |prev| {
            self.closure((0..self.n).flat_map(|a| prev.iter().map(move |&x| self.star(a, x))))
        })
    }

    pub fn right_series(&self, max: usize) -> Vec<Set> {
        self.iterate(max, |prev| {
            self.closure(prev.iter().flat_map(|&x| (0..self.n).map(move |a| self.star(x, a))))
        })
    }

    pub fn gamma_series(&self, max: usize) -> Vec<Set> {
        self.iterate(max, |prev| {
            let mut gens = Vec::new();
            for &i in prev {
                for h in 0..self.n {
                    gens.extend([self.star(i, h), self.star(h, i), self.dcomm(h, i)]);
                }
            }
            self.closure(gens)
        })
    }

    pub fn huq(&self, i: &Set) -> Set {
        let mut gens = Vec::new();
        for &x in i {
            for h in 0..self.n {
                gens.extend([self.dcomm(x, h), self.ccomm(x, h), self.star(x, h)]);
            }
        }
        self.normal_closure(gens)
    }

    pub fn relative(&self, i: &Set) -> Set {
        let mut gens = Vec::new();
        for &x in i {
            for h in 0..self.n {
                gens.push(self.star(x, h));
                let s = self.star(h, x);
                for k in 0..self.n {
                    gens.push(self.dot[self.dot[k][s]][self.dinv(k)]);
                }
            }
        }
        self.closure(gens)
    }

    pub fn soc(&self) -> Set {
        self.center()
            .into_iter()
            .filter(|&g| (0..self.n).all(|b| self.circ[g][b] == self.dot[g][b]))
            .collect()
    }

    /// Dimension of `{x ∈ k[Z] : x·y = x•y for all y}`: coefficients are
    /// constant along `h ↦ (h·y)∘ȳ`, so count orbits lying inside `Z`.
    pub fn agreement_dim(&self) -> usize {
        let mut root: Vec<usize> = (0..self.n).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while root[r] != r {
                r = root[r];
            }
            root[x] = r;
            r
        }
        for y in 0..self.n {
            for h in 0..self.n {
                let image = self.circ[self.dot[h][y]][self.cinv(y)];
                let (a, b) = (find(&mut root, h), find(&mut root, image));
                root[a] = b;
            }
        }
        let center = self.center();
        let mut orbits: BTreeMap<usize, bool> = BTreeMap::new();
        for h in 0..self.n {
            let r = find(&mut root, h);
            *orbits.entry(r).or_insert(true) &= center.contains(&h);
        }
        orbits.values().filter(|&&inside| inside).count()
    }

    pub fn ann(&self) -> Set {
        self.soc()
            .into_iter()
            .filter(|&g| (0..self.n).all(|b| self.lambda(b, g) == g))
            .collect()
    }

    pub fn dot_normal(&self, s: &Set) -> bool {
        s.iter()
            .all(|&x| (0..self.n).all(|g| s.contains(&self.dot[self.dot[g][x]][self.dinv(g)])))
    }

    /// The three defining conditions.
    pub fn normal_by_definition(&self, s: &Set) -> bool {
        let circ_sub = s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.circ[a][b])));
        let circ_normal = s
            .iter()
            .all(|&x| (0..self.n).all(|g| s.contains(&self.circ[self.circ[g][x]][self.cinv(g)])));
        let lambda = s.iter().all(|&x| (0..self.n).all(|g| s.contains(&self.lambda(g, x))));
        circ_sub && self.dot_normal(s) && circ_normal && lambda
    }

    pub fn normal_by_star(&self, s: &Set) -> bool {
        self.dot_normal(s)
            && s.iter()
                .all(|&x| (0..self.n).all(|g| s.contains(&self.star(g, x)) && s.contains(&self.star(x, g))))
    }

    pub fn strong(&self, s: &Set) -> bool {
        s.iter().all(|&x| (0..self.n).all(|g| s.contains(&self.lambda(g, x))))
    }

    /// Every subgroup, as joins of cyclic subgroups.
    pub fn all_subgroups(&self) -> BTreeSet<Set> {
        let cyclic: BTreeSet<Set> = (0..self.n).map(|g| self.closure([g])).collect();
        let mut all = cyclic.clone();
        loop {
            let mut grown = all.clone();
            for a in &all {
                for c in &cyclic {
                    if !c.is_subset(a) {
                        grown.insert(self.closure(a.iter().chain(c).copied()));
                    }
                }
            }
            if grown.len() == all.len() {
                return all;
            }
            all = grown;
        }
    }

    /// `|G / N|`.
    pub fn quotient_size(&self, normal: &Set) -> usize {
        self.n / normal.len()
    }

    /// Images of `f` on the kernel side: `i⋆h = h⋆i = e` for all kernel `i`.
    pub fn hopfcoc_central(&self, kernel: &Set) -> bool {
        kernel
            .iter()
            .all(|&i| (0..self.n).all(|h| self.star(i, h) == self.e && self.star(h, i) == self.e))
    }

    pub fn huq_central(&self, kernel: &Set) -> bool {
        kernel.iter().all(|&k| {
            (0..self.n).all(|a| {
                let p = self.dot[a][k];
                self.dot[k][a] == p && self.circ[k][a] == p && self.circ[a][k] == p
            })
        })
    }
}

pub fn sizes(terms: &[Set]) -> Vec<usize> {
    terms.iter().map(Set::len).collect()
}
