//! The finite Weyl group as permutations of the root list.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Handle to an element of the finite Weyl group of a particular datum.
///
/// Elements are numbered in the order (length, lexicographically least
/// reduced word); index 0 is the identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FiniteWeylElement(pub u32);

impl FiniteWeylElement {
    pub const IDENTITY: FiniteWeylElement = FiniteWeylElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub(crate) struct WeylEntry {
    /// image of root index `b` is `perm[b]`
    pub perm: Vec<u16>,
    pub inverse: u32,
    pub length: u32,
    /// lexicographically least reduced word, letters in `1..=rank`
    pub word: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub(crate) entries: Vec<WeylEntry>,
    index: HashMap<Vec<u16>, u32>,
    /// `left[i][w]` = index of `s_{i+1} · w`
    left: Vec<Vec<u32>>,
    /// `right[i][w]` = index of `w · s_{i+1}`
    right: Vec<Vec<u32>>,
    simple: Vec<usize>,
    num_pos: usize,
    longest: u32,
}

impl WeylGroup {
    /// Closure of the identity under left multiplication by simple
    /// reflections. `reflections[i]` is the root permutation of `s_{i+1}`;
    /// roots `0..num_pos` are positive, and the first `rank` of them simple.
    pub(crate) fn generate(reflections: &[Vec<u16>], num_pos: usize) -> WeylGroup {
        let rank = reflections.len();
        let nroots = 2 * num_pos;
        let simple: Vec<usize> = (0..rank).collect();
        let key = |p: &[u16]| -> Vec<u16> { simple.iter().map(|&s| p[s]).collect() };

        let identity: Vec<u16> = (0..nroots as u16).collect();
        let mut perms: Vec<Vec<u16>> = vec![identity.clone()];
        let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
        index.insert(key(&identity), 0);
        let mut head = 0;
        while head < perms.len() {
            let p = perms[head].clone();
            head += 1;
            for r in reflections {
                let np: Vec<u16> = p.iter().map(|&b| r[b as usize]).collect();
                let k = key(&np);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                    e.insert(perms.len() as u32);
                    perms.push(np);
                }
            }
        }

        let is_neg = |b: u16| (b as usize) >= num_pos;
        let lengths: Vec<u32> = perms
            .iter()
            .map(|p| p[..num_pos].iter().filter(|&&b| is_neg(b)).count() as u32)
            .collect();

        // inverse permutations
        let inv_perm = |p: &[u16]| -> Vec<u16> {
            let mut q = vec![0u16; p.len()];
            for (i, &b) in p.iter().enumerate() {
                q[b as usize] = i as u16;
            }
            q
        };

        // words: s_i is a left descent of w iff w^{-1}(α_i) < 0
        let mut order: Vec<usize> = (0..perms.len()).collect();
        order.sort_by_key(|&i| lengths[i]);
        let mut words: Vec<Option<Vec<u8>>> = vec![None; perms.len()];
        words[0] = Some(Vec::new());
        let compose_left = |i: usize, p: &[u16]| -> Vec<u16> {
            p.iter().map(|&b| reflections[i][b as usize]).collect()
        };
        for &w in &order {
            if w == 0 {
                continue;
            }
            let inv = inv_perm(&perms[w]);
            let d = (0..rank)
                .find(|&i| is_neg(inv[i]))
                .expect("nonidentity has a descent");
            let shorter = compose_left(d, &perms[w]);
            let sidx = index[&key(&shorter)] as usize;
            let mut word = vec![(d + 1) as u8];
            word.extend_from_slice(words[sidx].as_ref().expect("processed by length"));
            words[w] = Some(word);
        }

        // renumber by (length, word)
        let mut sorted: Vec<usize> = (0..perms.len()).collect();
        sorted.sort_by(|&a, &b| {
            (lengths[a], words[a].as_ref()).cmp(&(lengths[b], words[b].as_ref()))
        });
        let mut new_of_old = vec![0u32; perms.len()];
        for (new, &old) in sorted.iter().enumerate() {
            new_of_old[old] = new as u32;
        }
        let mut entries: Vec<WeylEntry> = sorted
            .iter()
            .map(|&old| WeylEntry {
                perm: perms[old].clone(),
                inverse: 0,
                length: lengths[old],
                word: words[old].clone().unwrap_or_default(),
            })
            .collect();
        let mut new_index = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            new_index.insert(key(&e.perm), i as u32);
        }
        for i in 0..entries.len() {
            let inv = inv_perm(&entries[i].perm);
            entries[i].inverse = new_index[&key(&inv)];
        }
        let mut left = vec![vec![0u32; entries.len()]; rank];
        let mut right = vec![vec![0u32; entries.len()]; rank];
        for (w, e) in entries.iter().enumerate() {
            for i in 0..rank {
                let l = compose_left(i, &e.perm);
                left[i][w] = new_index[&key(&l)];
                let r: Vec<u16> = reflections[i].iter().map(|&b| e.perm[b as usize]).collect();
                right[i][w] = new_index[&key(&r)];
            }
        }
        let longest = (entries.len() - 1) as u32;
        WeylGroup {
            entries,
            index: new_index,
            left,
            right,
            simple,
            num_pos,
            longest,
        }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = FiniteWeylElement> + '_ {
        (0..self.entries.len() as u32).map(FiniteWeylElement)
    }

    pub fn longest(&self) -> FiniteWeylElement {
        FiniteWeylElement(self.longest)
    }

    pub fn length(&self, w: FiniteWeylElement) -> usize {
        self.entries[w.index()].length as usize
    }

    /// Reduced word with letters in `1..=rank`.
    pub fn word(&self, w: FiniteWeylElement) -> &[u8] {
        &self.entries[w.index()].word
    }

    pub fn inverse(&self, w: FiniteWeylElement) -> FiniteWeylElement {
        FiniteWeylElement(self.entries[w.index()].inverse)
    }

    /// Image of root index `b`.
    pub fn act_root(&self, w: FiniteWeylElement, b: usize) -> usize {
        self.entries[w.index()].perm[b] as usize
    }

    pub fn is_negative_root(&self, b: usize) -> bool {
        b >= self.num_pos
    }

    /// `s_i · w` for `i` in `1..=rank`.
    pub fn left_simple(&self, i: usize, w: FiniteWeylElement) -> FiniteWeylElement {
        FiniteWeylElement(self.left[i - 1][w.index()])
    }

    /// `w · s_i` for `i` in `1..=rank`.
    pub fn right_simple(&self, w: FiniteWeylElement, i: usize) -> FiniteWeylElement {
        FiniteWeylElement(self.right[i - 1][w.index()])
    }

    pub fn compose(&self, a: FiniteWeylElement, b: FiniteWeylElement) -> FiniteWeylElement {
        let pa = &self.entries[a.index()].perm;
        let pb = &self.entries[b.index()].perm;
        let key: Vec<u16> = self.simple.iter().map(|&s| pa[pb[s] as usize]).collect();
        FiniteWeylElement(self.index[&key])
    }

    /// Element with the given action on roots, if any.
    pub fn from_root_images(&self, simple_images: &[u16]) -> Option<FiniteWeylElement> {
        self.index.get(simple_images).map(|&i| FiniteWeylElement(i))
    }

    pub fn from_word(&self, word: &[u8]) -> FiniteWeylElement {
        let mut w = FiniteWeylElement::IDENTITY;
        for &i in word.iter().rev() {
            w = self.left_simple(i as usize, w);
        }
        w
    }

    /// Whether `s_i` is a left descent of `w`.
    pub fn is_left_descent(&self, w: FiniteWeylElement, i: usize) -> bool {
        let inv = &self.entries[self.entries[w.index()].inverse as usize].perm;
        self.is_negative_root(inv[i - 1] as usize)
    }

    /// Whether `s_i` is a right descent of `w`, i.e. `w(α_i) < 0`.
    pub fn is_right_descent(&self, w: FiniteWeylElement, i: usize) -> bool {
        self.is_negative_root(self.entries[w.index()].perm[i - 1] as usize)
    }

    /// Coxeter Bruhat order `a ≤ b` by descent recursion.
    pub fn bruhat_leq(&self, a: FiniteWeylElement, b: FiniteWeylElement) -> bool {
        let (mut a, mut b) = (a, b);
        loop {
            if self.length(a) > self.length(b) {
                return false;
            }
            if self.length(b) == 0 {
                return a == b;
            }
            let s = self.word(b)[0] as usize;
            if self.is_left_descent(a, s) {
                a = self.left_simple(s, a);
            }
            b = self.left_simple(s, b);
        }
    }
}
