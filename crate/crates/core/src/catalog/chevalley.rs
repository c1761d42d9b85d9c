use std::collections::HashMap;

use super::CartanType;
use crate::lie::{LieAlgebra, StructureConstants};
use crate::linalg::{q, qf, unit_vec, MatrixQ, Rational, SubspaceBasis};
use crate::{Error, Result};

/// Gram matrix of the simple roots, scaled to integers.
fn simple_root_gram(ty: CartanType, n: usize) -> Result<Vec<Vec<i64>>> {
    if !ty.valid_rank(n) {
        return Err(Error::UnsupportedType(format!("{}{n}", ty.letter())));
    }
    let mut s = vec![vec![0i64; n]; n];
    let link = |s: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        s[i][j] = v;
        s[j][i] = v;
    };
    match ty {
        CartanType::A | CartanType::D | CartanType::E => {
            for (i, row) in s.iter_mut().enumerate() {
                row[i] = 2;
            }
            match ty {
                CartanType::A => (0..n - 1).for_each(|i| link(&mut s, i, i + 1, -1)),
                CartanType::D => {
                    (0..n - 2).for_each(|i| link(&mut s, i, i + 1, -1));
                    link(&mut s, n - 3, n - 1, -1);
                }
                _ => {
                    // Bourbaki: 1-3-4-5-6(-7-8), with 2 attached to 4
                    link(&mut s, 0, 2, -1);
                    link(&mut s, 1, 3, -1);
                    (2..n - 1).for_each(|i| link(&mut s, i, i + 1, -1));
                }
            }
        }
        CartanType::B => {
            for (i, row) in s.iter_mut().enumerate() {
                row[i] = if i == n - 1 { 1 } else { 2 };
            }
            (0..n - 1).for_each(|i| link(&mut s, i, i + 1, -1));
        }
        CartanType::C => {
            for (i, row) in s.iter_mut().enumerate() {
                row[i] = if i == n - 1 { 4 } else { 2 };
            }
            (0..n - 2).for_each(|i| link(&mut s, i, i + 1, -1));
            link(&mut s, n - 2, n - 1, -2);
        }
        CartanType::F => {
            s[0][0] = 4;
            s[1][1] = 4;
            s[2][2] = 2;
            s[3][3] = 2;
            link(&mut s, 0, 1, -2);
            link(&mut s, 1, 2, -2);
            link(&mut s, 2, 3, -1);
        }
        CartanType::G => {
            s[0][0] = 2;
            s[1][1] = 6;
            link(&mut s, 0, 1, -3);
        }
    }
    Ok(s)
}

type Root = Vec<i64>;

struct RootSystem {
    gram: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, by height then lexicographically descending.
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    fn new(gram: Vec<Vec<i64>>) -> Self {
        let n = gram.len();
        let simple: Vec<Root> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut rs = Self {
            gram,
            positive: Vec::new(),
            index: HashMap::new(),
        };
        let mut layer = simple;
        while !layer.is_empty() {
            layer.sort_by(|a, b| b.cmp(a));
            for r in &layer {
                rs.index.insert(r.clone(), rs.positive.len());
                rs.positive.push(r.clone());
            }
            let mut next: Vec<Root> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // alpha_i-string through beta: beta - p a_i, ..., beta + q a_i
                    let mut p = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if rs.index.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q_ = p - rs.cartan(beta, i);
                    let mut up = beta.clone();
                    up[i] += 1;
                    if q_ > 0 && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
            layer = next;
        }
        rs
    }

    fn rank(&self) -> usize {
        self.gram.len()
    }

    fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..a.len() {
            for j in 0..b.len() {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `<beta, alpha_i^vee> = 2 (beta, alpha_i) / (alpha_i, alpha_i)`.
    fn cartan(&self, beta: &[i64], i: usize) -> i64 {
        let num: i64 = (0..self.rank()).map(|j| beta[j] * self.gram[j][i]).sum();
        2 * num / self.gram[i][i]
    }

    fn is_root(&self, r: &[i64]) -> bool {
        if r.iter().all(|&c| c >= 0) {
            self.index.contains_key(r)
        } else {
            let neg: Root = r.iter().map(|c| -c).collect();
            self.index.contains_key(&neg)
        }
    }

    #[cfg(test)]
    fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }
}

fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Root {
    a.iter().map(|x| -x).collect()
}

fn is_positive(a: &[i64]) -> bool {
    a.iter().any(|&x| x > 0)
}

/// Structure constants `N_{x,y}` with `[e_x, e_y] = N_{x,y} e_{x+y}`, fixed by
/// choosing `N = p + 1` on extraspecial pairs.
struct Signs<'a> {
    rs: &'a RootSystem,
    pos: HashMap<(usize, usize), Rational>,
}

impl Signs<'_> {
    fn norm(&self, r: &[i64]) -> Rational {
        q(self.rs.inner(r, r))
    }

    /// `N_{x,y}` for arbitrary roots with `x + y` a nonzero root; zero otherwise.
    fn n(&self, x: &[i64], y: &[i64]) -> Rational {
        let s = add(x, y);
        if s.iter().all(|&c| c == 0) || !self.rs.is_root(&s) {
            return q(0);
        }
        match (is_positive(x), is_positive(y)) {
            (true, true) => self.pos[&(self.rs.index[x], self.rs.index[y])].clone(),
            (false, false) => -self.pos[&(self.rs.index[&neg(x)], self.rs.index[&neg(y)])].clone(),
            _ => {
                // x + y + z = 0: N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y),
                // and one of the pairs (y,z), (z,x) has equal signs.
                let z = neg(&s);
                let nz = self.norm(&z);
                if is_positive(&z) == is_positive(y) {
                    &nz / self.norm(x) * self.n(y, &z)
                } else {
                    &nz / self.norm(y) * self.n(&z, x)
                }
            }
        }
    }

    fn build(rs: &RootSystem) -> Result<HashMap<(usize, usize), Rational>> {
        let mut signs = Signs {
            rs,
            pos: HashMap::new(),
        };
        for (xi_idx, xi) in rs.positive.iter().enumerate() {
            // special pairs (a, b), a before b in the root order, a + b = xi
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for (a_idx, a) in rs.positive.iter().enumerate().take(xi_idx) {
                let b: Root = xi.iter().zip(a).map(|(x, y)| x - y).collect();
                if let Some(&b_idx) = rs.index.get(&b) {
                    if a_idx < b_idx {
                        pairs.push((a_idx, b_idx));
                    }
                }
            }
            let Some(&(al, be)) = pairs.first() else {
                continue;
            };
            let alpha = &rs.positive[al];
            let beta = &rs.positive[be];
            let n_ab = q(string_below(rs, beta, alpha) + 1);
            signs.pos.insert((al, be), n_ab.clone());
            signs.pos.insert((be, al), -n_ab.clone());
            let xi_norm = signs.norm(xi);
            for &(ga, de) in &pairs[1..] {
                let gamma = &rs.positive[ga];
                let delta = &rs.positive[de];
                let mut acc = q(0);
                let d_a = add(delta, &neg(alpha));
                if rs.is_root(&d_a) {
                    acc +=
                        signs.n(delta, &neg(alpha)) * signs.n(gamma, &neg(beta)) / signs.norm(&d_a);
                }
                let g_a = add(gamma, &neg(alpha));
                if rs.is_root(&g_a) {
                    acc +=
                        signs.n(&neg(alpha), gamma) * signs.n(delta, &neg(beta)) / signs.norm(&g_a);
                }
                let n_gd = &xi_norm / &n_ab * acc;
                let expected = q(string_below(rs, delta, gamma) + 1);
                if n_gd != expected && n_gd != -expected.clone() {
                    return Err(Error::RootData(format!(
                        "structure constant for roots {gamma:?}, {delta:?} has the wrong magnitude"
                    )));
                }
                signs.pos.insert((ga, de), n_gd.clone());
                signs.pos.insert((de, ga), -n_gd);
            }
        }
        Ok(signs.pos)
    }
}

/// Largest `p` with `beta - p alpha` a root.
fn string_below(rs: &RootSystem, beta: &[i64], alpha: &[i64]) -> i64 {
    let mut p = 0;
    loop {
        let r: Root = beta
            .iter()
            .zip(alpha)
            .map(|(b, a)| b - (p + 1) * a)
            .collect();
        if r.iter().all(|&c| c == 0) || !rs.is_root(&r) {
            return p;
        }
        p += 1;
    }
}

fn root_label(r: &[i64]) -> String {
    let parts: Vec<String> = r.iter().map(i64::to_string).collect();
    format!("x({})", parts.join(","))
}

/// Chevalley basis `h_1..h_r, e_alpha (alpha > 0), e_{-alpha}` of the split form.
pub(crate) fn split_algebra(ty: CartanType, rank: usize) -> Result<(LieAlgebra, SubspaceBasis)> {
    let rs = RootSystem::new(simple_root_gram(ty, rank)?);
    let signs = Signs {
        pos: Signs::build(&rs)?,
        rs: &rs,
    };
    let r = rank;
    let np = rs.positive.len();
    let dim = r + 2 * np;
    let roots: Vec<Root> = rs
        .positive
        .iter()
        .cloned()
        .chain(rs.positive.iter().map(|x| neg(x)))
        .collect();
    let root_index: HashMap<&Root, usize> =
        roots.iter().enumerate().map(|(i, x)| (x, r + i)).collect();

    let mut s = StructureConstants::zero(dim);
    for (ri, root) in roots.iter().enumerate() {
        for i in 0..r {
            let c = rs.cartan(root, i);
            s.set_bracket(i, r + ri, vec![(r + ri, q(c))]);
        }
    }
    for (ai, a) in roots.iter().enumerate() {
        for (bi, b) in roots.iter().enumerate().skip(ai + 1) {
            let sum = add(a, b);
            let terms = if sum.iter().all(|&c| c == 0) {
                // [e_a, e_-a] = h_a, the coroot in terms of simple coroots
                let aa = rs.inner(a, a);
                (0..r).map(|i| (i, qf(a[i] * rs.gram[i][i], aa))).collect()
            } else if let Some(&k) = root_index.get(&sum) {
                vec![(k, signs.n(a, b))]
            } else {
                Vec::new()
            };
            s.set_bracket(r + ai, r + bi, terms);
        }
    }

    let mut theta = MatrixQ::zeros(dim, dim);
    for i in 0..r {
        theta[(i, i)] = q(-1);
    }
    for k in 0..np {
        theta[(r + np + k, r + k)] = q(-1);
        theta[(r + k, r + np + k)] = q(-1);
    }
    let labels = (1..=r)
        .map(|i| format!("h{i}"))
        .chain(roots.iter().map(|x| root_label(x)))
        .collect();
    let g = LieAlgebra::new(labels, s, theta)?;
    let a = SubspaceBasis::span(dim, (0..r).map(|i| unit_vec(dim, i)));
    Ok((g, a))
}
