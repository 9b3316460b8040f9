//! Bounded abstract isomorphism test for small permutation groups.

use std::collections::HashMap;
use std::fmt;

use super::{PermGroup, Permutation};

/// Largest order the isomorphism test will decide by default.
pub const DEFAULT_ISO_BOUND: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Orders are equal but above the bound.
    Undecided,
}

impl IsoVerdict {
    pub fn is_true(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoVerdict::Isomorphic => "isomorphic",
            IsoVerdict::NotIsomorphic => "not-isomorphic",
            IsoVerdict::Undecided => "undecided",
        })
    }
}

impl std::str::FromStr for IsoVerdict {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "isomorphic" => Ok(IsoVerdict::Isomorphic),
            "not-isomorphic" => Ok(IsoVerdict::NotIsomorphic),
            "undecided" => Ok(IsoVerdict::Undecided),
            _ => Err(format!("unknown verdict {s:?}")),
        }
    }
}

/// A finite group given by its full multiplication on element indices.
struct Table {
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    orders: Vec<u64>,
}

impl Table {
    fn new(elems: Vec<Permutation>) -> Self {
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let orders = elems.iter().map(Permutation::order).collect();
        Table { elems, index, orders }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elems[a].then(&self.elems[b])]
    }

    fn identity(&self) -> usize {
        self.index[&Permutation::identity(self.elems[0].degree())]
    }

    fn order_profile(&self) -> Vec<u64> {
        let mut p = self.orders.clone();
        p.sort_unstable();
        p
    }

    /// Size of the subgroup generated by the given elements.
    fn span(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.elems.len()];
        let id = self.identity();
        seen[id] = true;
        let mut stack = vec![id];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// Greedy small generating set, preferring high-order elements.
    fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.elems.len()).collect();
        by_order.sort_by_key(|&i| (std::cmp::Reverse(self.orders[i]), i));
        let mut gens = Vec::new();
        let mut size = 1;
        for &x in &by_order {
            if size == self.elems.len() {
                break;
            }
            gens.push(x);
            let s = self.span(&gens);
            if s > size {
                size = s;
            } else {
                gens.pop();
            }
        }
        gens
    }

    /// Conjugacy class representatives (least index in each class).
    fn class_reps(&self) -> Vec<usize> {
        let n = self.elems.len();
        let inv: Vec<usize> = self.elems.iter().map(|e| self.index[&e.inverse()]).collect();
        let mut rep = vec![usize::MAX; n];
        let mut out = Vec::new();
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            out.push(x);
            for g in 0..n {
                let c = self.mul(self.mul(inv[g], x), g);
                rep[c] = x;
            }
        }
        out
    }
}

/// Decides `g1 ≅ g2` as abstract groups when their common order is at most
/// `bound`. Unequal orders are always `NotIsomorphic`.
pub fn groups_isomorphic(g1: &PermGroup, g2: &PermGroup, bound: u64) -> IsoVerdict {
    if g1.order() != g2.order() {
        return IsoVerdict::NotIsomorphic;
    }
    let (Some(e1), Some(e2)) = (g1.elements(bound), g2.elements(bound)) else {
        return IsoVerdict::Undecided;
    };
    let (t1, t2) = (Table::new(e1), Table::new(e2));
    if t1.order_profile() != t2.order_profile() {
        return IsoVerdict::NotIsomorphic;
    }
    if t1.elems.len() == 1 {
        return IsoVerdict::Isomorphic;
    }
    let gens = t1.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let pool: Vec<usize> = if i == 0 { t2.class_reps() } else { (0..t2.elems.len()).collect() };
            pool.into_iter().filter(|&y| t2.orders[y] == t1.orders[x]).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    if search(&t1, &t2, &gens, &candidates, &mut images) {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::NotIsomorphic
    }
}

fn search(t1: &Table, t2: &Table, gens: &[usize], cands: &[Vec<usize>], images: &mut Vec<usize>) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        return true;
    }
    for &y in &cands[depth] {
        images.push(y);
        if consistent(t1, t2, &gens[..=depth], images) && search(t1, t2, gens, cands, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// True iff `gens[i] -> images[i]` extends to an injective homomorphism on
/// the subgroup generated by `gens`.
fn consistent(t1: &Table, t2: &Table, gens: &[usize], images: &[usize]) -> bool {
    let mut phi = vec![usize::MAX; t1.elems.len()];
    let mut used = vec![false; t2.elems.len()];
    let (id1, id2) = (t1.identity(), t2.identity());
    phi[id1] = id2;
    used[id2] = true;
    let mut queue = vec![id1];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = t1.mul(x, g);
            let img = t2.mul(phi[x], h);
            if phi[y] == usize::MAX {
                if used[img] {
                    return false;
                }
                used[img] = true;
                phi[y] = img;
                queue.push(y);
            } else if phi[y] != img {
                return false;
            }
        }
    }
    true
}
