//! Brute-force oracles that share no code with the library: plain order
//! matrices, products given as closures or tables, definitions evaluated
//! literally.

#![allow(dead_code)]

use itertools::Itertools;
use zlat::{ElementId, MultiplicativeLattice};

/// `le[i][j]` iff `i ⩽ j`.
pub type Order = Vec<Vec<bool>>;

pub struct Raw {
    pub labels: Vec<String>,
    pub le: Order,
    pub mult: Vec<Vec<usize>>,
}

fn upper_bounds(le: &Order, a: usize, b: usize) -> Vec<usize> {
    (0..le.len()).filter(|&u| le[a][u] && le[b][u]).collect()
}

fn lower_bounds(le: &Order, a: usize, b: usize) -> Vec<usize> {
    (0..le.len()).filter(|&u| le[u][a] && le[u][b]).collect()
}

fn least(le: &Order, s: &[usize]) -> Option<usize> {
    s.iter().copied().find(|&x| s.iter().all(|&y| le[x][y]))
}

fn greatest(le: &Order, s: &[usize]) -> Option<usize> {
    s.iter().copied().find(|&x| s.iter().all(|&y| le[y][x]))
}

pub fn is_partial_order(le: &Order) -> bool {
    let n = le.len();
    (0..n).all(|i| le[i][i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(le[i][j] && le[j][i])))
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(le[i][j] && le[j][k]) || le[i][k])))
}

pub fn is_lattice(le: &Order) -> bool {
    let n = le.len();
    is_partial_order(le)
        && (0..n).all(|a| {
            (0..n).all(|b| {
                least(le, &upper_bounds(le, a, b)).is_some() && greatest(le, &lower_bounds(le, a, b)).is_some()
            })
        })
}

pub fn isomorphic(a: &Order, b: &Order) -> bool {
    let n = a.len();
    n == b.len() && (0..n).permutations(n).any(|p| (0..n).all(|i| (0..n).all(|j| a[i][j] == b[p[i]][p[j]])))
}

/// Every lattice on `n` labelled points (each pair: below, above or
/// incomparable), then one representative per isomorphism class.
pub fn naive_lattice_classes(n: usize) -> Vec<Order> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut reps: Vec<Order> = Vec::new();
    for code in 0..3usize.pow(pairs.len() as u32) {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => le[i][j] = true,
                2 => le[j][i] = true,
                _ => {}
            }
            c /= 3;
        }
        if n > 0 && is_lattice(&le) && !reps.iter().any(|r| isomorphic(r, &le)) {
            reps.push(le);
        }
    }
    reps
}

pub fn order_of(ml: &MultiplicativeLattice) -> Order {
    let n = ml.size();
    let e = ElementId::new;
    (0..n).map(|i| (0..n).map(|j| ml.leq(e(i), e(j))).collect()).collect()
}

pub fn raw_of(ml: &MultiplicativeLattice) -> Raw {
    let n = ml.size();
    let e = ElementId::new;
    Raw {
        labels: (0..n).map(|i| ml.label(e(i)).to_string()).collect(),
        le: order_of(ml),
        mult: (0..n).map(|i| (0..n).map(|j| ml.multiply(e(i), e(j)).index()).collect()).collect(),
    }
}

/// Order and multiplication both preserved by some bijection.
pub fn structures_isomorphic(a: &MultiplicativeLattice, b: &MultiplicativeLattice) -> bool {
    let (ra, rb) = (raw_of(a), raw_of(b));
    let n = ra.le.len();
    n == rb.le.len()
        && (0..n).permutations(n).any(|p| {
            (0..n).all(|i| (0..n).all(|j| ra.le[i][j] == rb.le[p[i]][p[j]] && p[ra.mult[i][j]] == rb.mult[p[i]][p[j]]))
        })
}

/// Ideals of ℤ/n as divisors, `(a) ⩽ (b)` iff `b | a`.
pub fn divisor_structure(n: usize) -> Raw {
    let ds: Vec<usize> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let pos = |d: usize| ds.iter().position(|&x| x == d).unwrap();
    Raw {
        labels: ds.iter().map(|d| format!("({d})")).collect(),
        le: ds.iter().map(|&a| ds.iter().map(|&b| a % b == 0).collect()).collect(),
        mult: ds.iter().map(|&a| ds.iter().map(|&b| pos(gcd(a * b % n, n))).collect()).collect(),
    }
}

pub fn chain_frame(labels: &[&str]) -> Raw {
    let n = labels.len();
    Raw {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        le: (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect(),
        mult: (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect(),
    }
}

/// Subsets of two atoms; `·` is intersection.
pub fn square_frame() -> Raw {
    Raw {
        labels: ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect(),
        le: (0..4).map(|i| (0..4).map(|j| i & j == i).collect()).collect(),
        mult: (0..4).map(|i| (0..4).map(|j| i & j).collect()).collect(),
    }
}

impl Raw {
    pub fn n(&self) -> usize {
        self.le.len()
    }

    pub fn top(&self) -> usize {
        (0..self.n()).find(|&t| (0..self.n()).all(|x| self.le[x][t])).unwrap()
    }

    pub fn bottom(&self) -> usize {
        (0..self.n()).find(|&b| (0..self.n()).all(|x| self.le[b][x])).unwrap()
    }

    pub fn meet_of(&self, s: &[usize]) -> usize {
        let lower: Vec<usize> = (0..self.n()).filter(|&x| s.iter().all(|&y| self.le[x][y])).collect();
        greatest(&self.le, &lower).unwrap()
    }

    pub fn maximal(&self) -> Vec<usize> {
        let t = self.top();
        (0..self.n()).filter(|&m| m != t && (0..self.n()).all(|x| !(self.le[m][x] && x != m && x != t))).collect()
    }

    pub fn cover(&self, a: usize) -> Vec<usize> {
        self.maximal().into_iter().filter(|&m| self.le[a][m]).collect()
    }

    /// `M_a ⊇ M_b` and `b ⩽ x` imply `a ⩽ x`.
    pub fn is_z(&self, x: usize) -> bool {
        (0..self.n()).all(|a| {
            (0..self.n()).all(|b| {
                let (ma, mb) = (self.cover(a), self.cover(b));
                !(mb.iter().all(|m| ma.contains(m)) && self.le[b][x]) || self.le[a][x]
            })
        })
    }

    pub fn z_set(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.is_z(x)).collect()
    }

    pub fn cz(&self, a: usize) -> usize {
        let above: Vec<usize> = self.z_set().into_iter().filter(|&z| self.le[a][z]).collect();
        self.meet_of(&above)
    }

    pub fn is_prime(&self, p: usize) -> bool {
        p != self.top()
            && (0..self.n())
                .all(|x| (0..self.n()).all(|y| !self.le[self.mult[x][y]][p] || self.le[x][p] || self.le[y][p]))
    }

    /// `p` proper z-element with `ab ⩽ p ⇒ a ⩽ p or b ⩽ p` over z-elements.
    pub fn is_z_prime(&self, p: usize) -> bool {
        let z = self.z_set();
        p != self.top()
            && z.contains(&p)
            && z.iter().all(|&a| z.iter().all(|&b| !self.le[self.mult[a][b]][p] || self.le[a][p] || self.le[b][p]))
    }

    pub fn minimal_z_primes(&self) -> Vec<usize> {
        let zp: Vec<usize> = (0..self.n()).filter(|&p| self.is_z_prime(p)).collect();
        zp.iter().copied().filter(|&p| zp.iter().all(|&q| q == p || !self.le[q][p])).collect()
    }

    pub fn jacobson(&self) -> usize {
        self.meet_of(&self.maximal())
    }

    pub fn labels_of(&self, s: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|&i| self.labels[i].clone()).collect();
        v.sort();
        v
    }
}

/// Commutative tables with `1` as identity satisfying the quantale axioms
/// literally, on a lattice given by its order matrix.
pub fn brute_multiplications(le: &Order) -> Vec<Vec<Vec<usize>>> {
    let n = le.len();
    let raw = Raw { labels: vec![String::new(); n], le: le.clone(), mult: vec![vec![0; n]; n] };
    let top = raw.top();
    let join = |a: usize, b: usize| least(le, &upper_bounds(le, a, b)).unwrap();
    let free: Vec<(usize, usize)> =
        (0..n).filter(|&i| i != top).tuple_combinations().chain((0..n).filter(|&i| i != top).map(|i| (i, i))).collect();
    let mut out = Vec::new();
    for code in 0..n.pow(free.len() as u32) {
        let mut t: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == top {
                            j
                        } else if j == top {
                            i
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut c = code;
        for &(i, j) in &free {
            t[i][j] = c % n;
            t[j][i] = c % n;
            c /= n;
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| t[t[a][b]][d] == t[a][t[b][d]])));
        let distrib = (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| t[a][join(b, d)] == join(t[a][b], t[a][d]))));
        let zero = (0..n).all(|a| t[a][raw.bottom()] == raw.bottom());
        if assoc && distrib && zero {
            out.push(t);
        }
    }
    out
}
