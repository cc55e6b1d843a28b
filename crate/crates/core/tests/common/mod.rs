//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the library routine it is checking: determinants are
//! cofactor expansions, volumes come from a brute-force facet recursion,
//! colorings are searched exhaustively and root counts come from resultants.

#![allow(dead_code, clippy::needless_range_loop)]

use crn_toric::linalg::Rational;
use crn_toric::network::{Network, Reaction};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

// ---------------------------------------------------------------- determinants

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].into();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect()
}

// --------------------------------------------------------------------- volumes

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Normal of the hyperplane through `pts` (r points in R^r), or `None` when
/// they are affinely dependent. Solved by Gaussian elimination on the
/// difference vectors.
fn normal_through(pts: &[&Vec<Rational>]) -> Option<Vec<Rational>> {
    let r = pts[0].len();
    let mut rows: Vec<Vec<Rational>> = pts[1..].iter().map(|p| sub(p, pts[0])).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let lead = rows[row][col].clone();
        rows[row].iter_mut().for_each(|x| *x /= &lead);
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[row].clone();
                rows[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != r - 1 {
        return None;
    }
    let free = (0..r).find(|c| !pivots.contains(c)).unwrap();
    let mut n = vec![Rational::zero(); r];
    n[free] = Rational::one();
    for (i, &c) in pivots.iter().enumerate() {
        n[c] = -rows[i][free].clone();
    }
    Some(n)
}

fn dedupe(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for p in points {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Volume of `conv(points)` by the recursion
/// `Vol_r(P) = (1/r) Σ_F (c_F - n_F·x0) / |n_F[j]| · Vol_{r-1}(proj_j F)`
/// over brute-force facets, where `proj_j` drops a coordinate with
/// `n_F[j] ≠ 0`.
pub fn brute_force_volume(points: &[Vec<Rational>]) -> Rational {
    let pts = dedupe(points);
    let r = pts[0].len();
    if r == 1 {
        let min = pts.iter().map(|p| p[0].clone()).min().unwrap();
        let max = pts.iter().map(|p| p[0].clone()).max().unwrap();
        return max - min;
    }
    if pts.len() < r + 1 {
        return Rational::zero();
    }
    let x0 = pts[0].clone();
    let mut seen: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut total = Rational::zero();
    for combo in combinations(pts.len(), r) {
        let chosen: Vec<&Vec<Rational>> = combo.iter().map(|&i| &pts[i]).collect();
        let Some(mut n) = normal_through(&chosen) else {
            continue;
        };
        let mut c = dot(&n, chosen[0]);
        let above = pts.iter().filter(|p| dot(&n, p) > c).count();
        let below = pts.iter().filter(|p| dot(&n, p) < c).count();
        if above > 0 && below > 0 {
            continue;
        }
        if above > 0 {
            n.iter_mut().for_each(|x| *x = -x.clone());
            c = -c;
        }
        // normalize so the first nonzero entry has absolute value 1
        let lead = n.iter().find(|x| !x.is_zero()).unwrap().abs();
        n.iter_mut().for_each(|x| *x /= &lead);
        c /= &lead;
        if seen.iter().any(|(m, d)| *m == n && *d == c) {
            continue;
        }
        seen.push((n.clone(), c.clone()));
        let height = &c - dot(&n, &x0);
        if height.is_zero() {
            continue;
        }
        let j = n.iter().position(|x| !x.is_zero()).unwrap();
        let face: Vec<Vec<Rational>> = pts
            .iter()
            .filter(|p| dot(&n, p) == c)
            .map(|p| p.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| x.clone()).collect())
            .collect();
        total += height / n[j].abs() * brute_force_volume(&face);
    }
    // no facets found means the set is flat
    total / q(r as i64)
}

pub fn to_rational_points(points: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect()
}

pub fn pointwise_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in a {
        for r in b {
            let s: Vec<i64> = p.iter().zip(r).map(|(x, y)| x + y).collect();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

// ------------------------------------------------------------------- colorings

/// Every surjective coloring of the cycle edges with `d` colors that
/// balances heads and tails, found by enumerating all `d^m` assignments.
/// `complexes` are listed in cycle order.
pub fn exhaustive_colorings(complexes: &[Vec<i64>], d: usize) -> Vec<Vec<usize>> {
    let m = complexes.len();
    let s = complexes[0].len();
    let mut found = Vec::new();
    let total = d.pow(m as u32);
    for code in 0..total {
        let mut colors = Vec::with_capacity(m);
        let mut c = code;
        for _ in 0..m {
            colors.push(c % d + 1);
            c /= d;
        }
        if (1..=d).any(|x| !colors.contains(&x)) {
            continue;
        }
        let balanced = (1..=d).all(|color| {
            if d == 1 {
                return true;
            }
            let mut diff = vec![0i64; s];
            for p in 0..m {
                let incoming = colors[(p + m - 1) % m] == color;
                let outgoing = colors[p] == color;
                let sign = match (incoming, outgoing) {
                    (false, true) => 1,
                    (true, false) => -1,
                    _ => 0,
                };
                diff.iter_mut().zip(&complexes[p]).for_each(|(a, y)| *a += sign * y);
            }
            diff.iter().all(|&x| x == 0)
        });
        if balanced {
            found.push(colors);
        }
    }
    found
}

/// Directed cycle through `complexes` in the given order with labels `k1..km`.
pub fn cycle_network(complexes: &[Vec<i64>]) -> Network {
    let s = complexes[0].len();
    let m = complexes.len();
    Network::new(
        (1..=s).map(|i| format!("S{i}")).collect(),
        complexes.to_vec(),
        (0..m)
            .map(|i| Reaction {
                source: i,
                target: (i + 1) % m,
                label: format!("k{}", i + 1),
            })
            .collect(),
    )
    .unwrap()
}

/// Nonzero vectors of length `s` with entries in `0..=max_entry` and total
/// degree at most `max_degree`, in lexicographic order.
pub fn small_vectors(s: usize, max_entry: i64, max_degree: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![0i64; s];
    loop {
        let deg: i64 = v.iter().sum();
        if deg > 0 && deg <= max_degree {
            out.push(v.clone());
        }
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] <= max_entry {
                break;
            }
            v[i] = 0;
        }
    }
}

/// Sequences of `m` distinct indices below `n` whose first entry is the
/// smallest, i.e. one representative per rotation class.
pub fn cycles_up_to_rotation(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in cur[0] + 1..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for first in 0..n {
        go(n, m, &mut vec![first], &mut out);
    }
    out
}

// ------------------------------------------------------- random binomial systems

/// A random partitionable binomial system: disjoint 0/1 grading vectors on a
/// subset of the coordinates and `s - k` binomials homogeneous for each.
pub struct BinomialSystem {
    pub s: usize,
    pub w_list: Vec<Vec<i64>>,
    pub edges: Vec<(Vec<i64>, Vec<i64>)>,
}

pub fn random_partitionable_system(rng: &mut impl Rng, s: usize) -> BinomialSystem {
    let k = rng.random_range(1..=s.min(3));
    let mut coords: Vec<usize> = (0..s).collect();
    coords.shuffle(rng);
    let used = rng.random_range(k..=s);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &c) in coords[..used].iter().enumerate() {
        let g = if i < k { i } else { rng.random_range(0..k) };
        groups[g].push(c);
    }
    let mut w_list: Vec<Vec<i64>> = groups
        .iter()
        .map(|g| {
            let mut w = vec![0; s];
            g.iter().for_each(|&i| w[i] = 1);
            w
        })
        .collect();
    w_list.sort_by_key(|w| w.iter().position(|&x| x == 1).unwrap());
    let free: Vec<usize> = coords[used..].to_vec();

    let mut edges = Vec::new();
    while edges.len() < s - k {
        let mut a = vec![0i64; s];
        let mut b = vec![0i64; s];
        for g in &groups {
            let degree = rng.random_range(0..=3i64);
            for v in [&mut a, &mut b] {
                for _ in 0..degree {
                    v[g[rng.random_range(0..g.len())]] += 1;
                }
            }
        }
        for &i in &free {
            a[i] = rng.random_range(0..=2);
            b[i] = rng.random_range(0..=2);
        }
        if a != b {
            edges.push((a, b));
        }
    }
    BinomialSystem { s, w_list, edges }
}

// ------------------------------------------------------------------- networks

/// A random network on `m` complexes drawn from small vectors, with random
/// distinct non-loop reactions.
pub fn random_network(rng: &mut impl Rng, s: usize, m: usize, reactions: usize) -> Network {
    let pool = small_vectors(s, 2, 3);
    let mut complexes: Vec<Vec<i64>> = Vec::new();
    while complexes.len() < m {
        let c = if rng.random_bool(0.1) {
            vec![0; s]
        } else {
            pool[rng.random_range(0..pool.len())].clone()
        };
        if !complexes.contains(&c) {
            complexes.push(c);
        }
    }
    let mut rs: Vec<Reaction> = Vec::new();
    let mut attempts = 0;
    while rs.len() < reactions && attempts < 1000 {
        attempts += 1;
        let (a, b) = (rng.random_range(0..m), rng.random_range(0..m));
        if a == b || rs.iter().any(|r| r.source == a && r.target == b) {
            continue;
        }
        rs.push(Reaction {
            source: a,
            target: b,
            label: format!("k{}", rs.len() + 1),
        });
    }
    Network::new((1..=s).map(|i| format!("S{i}")).collect(), complexes, rs).unwrap()
}

/// Strongly connected components by Floyd–Warshall reachability; returns the
/// number of components with no edge leaving them.
pub fn terminal_class_count(network: &Network) -> usize {
    let m = network.num_complexes();
    let mut reach = vec![vec![false; m]; m];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for r in network.reactions() {
        reach[r.source][r.target] = true;
    }
    for k in 0..m {
        for i in 0..m {
            if reach[i][k] {
                for j in 0..m {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    // i is in a terminal class iff everything reachable from i reaches back
    let terminal: Vec<bool> = (0..m).map(|i| (0..m).all(|j| !reach[i][j] || reach[j][i])).collect();
    let mut counted = vec![false; m];
    let mut count = 0;
    for i in 0..m {
        if terminal[i] && !counted[i] {
            count += 1;
            for j in 0..m {
                if reach[i][j] && reach[j][i] {
                    counted[j] = true;
                }
            }
        }
    }
    count
}

// ------------------------------------------------------------ univariate algebra

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Upoly(pub Vec<Rational>);

impl Upoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Upoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Upoly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Upoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Upoly::new(out)
    }

    /// Quotient and remainder.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.0[dd].clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.0.iter().enumerate() {
                rem[shift + i] -= &f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Upoly::new(quot), Upoly::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.0.last().unwrap().clone();
        Upoly::new(a.0.iter().map(|c| c / &lead).collect())
    }
}

/// Exact Lagrange interpolation through `(x_i, y_i)`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Upoly {
    let mut total = Upoly(Vec::new());
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Upoly::new(vec![yi.clone()]);
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                let scale = xi - xj;
                basis = basis.mul(&Upoly::new(vec![-xj / &scale, Rational::one() / &scale]));
            }
        }
        let len = total.0.len().max(basis.0.len());
        let mut sum = vec![Rational::zero(); len];
        for (k, c) in total.0.iter().enumerate() {
            sum[k] += c;
        }
        for (k, c) in basis.0.iter().enumerate() {
            sum[k] += c;
        }
        total = Upoly::new(sum);
    }
    total
}

/// Bivariate polynomial as `(coefficient, [i, j])` for `x^i y^j`.
pub type Bipoly = Vec<(i64, [i64; 2])>;

/// `f` as a polynomial in `y` with coefficients in `Q[x]`, index = power of `y`.
fn in_y(f: &Bipoly) -> Vec<Upoly> {
    let dy = f.iter().map(|(_, e)| e[1]).max().unwrap_or(0) as usize;
    let dx = f.iter().map(|(_, e)| e[0]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![vec![Rational::zero(); dx + 1]; dy + 1];
    for (c, e) in f {
        coeffs[e[1] as usize][e[0] as usize] += q(*c);
    }
    coeffs.into_iter().map(Upoly::new).collect()
}

/// Divides out the largest monomial factor; torus solutions are unchanged.
pub fn strip_monomial(f: &Bipoly) -> Bipoly {
    let mx = f.iter().map(|(_, e)| e[0]).min().unwrap_or(0);
    let my = f.iter().map(|(_, e)| e[1]).min().unwrap_or(0);
    f.iter().map(|(c, e)| (*c, [e[0] - mx, e[1] - my])).collect()
}

fn sylvester_det(f: &[Rational], g: &[Rational]) -> Rational {
    // f, g by ascending power of y, with formal degrees len - 1
    let (p, r) = (f.len() - 1, g.len() - 1);
    let n = p + r;
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..r {
        for (k, c) in f.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..p {
        for (k, c) in g.iter().rev().enumerate() {
            m[r + i][i + k] = c.clone();
        }
    }
    // plain Gaussian elimination over Q
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= &m[col][col];
        for i in col + 1..n {
            let f = &m[i][col] / &m[col][col];
            if !f.is_zero() {
                let pivot_row = m[col].clone();
                m[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
    }
    det
}

/// A lower bound for the number of solutions of `f = g = 0` in `(C*)^2`:
/// distinct nonzero `x`-roots of `Res_y(f, g)` at which some leading
/// coefficient survives and `y = 0` is not a common root. `None` when the
/// resultant vanishes identically or a polynomial is constant in `y`.
pub fn torus_root_lower_bound(f: &Bipoly, g: &Bipoly) -> Option<usize> {
    let fy = in_y(&strip_monomial(f));
    let gy = in_y(&strip_monomial(g));
    if fy.len() < 2 || gy.len() < 2 {
        return None;
    }
    let dx = |p: &[Upoly]| p.iter().map(Upoly::degree).max().unwrap();
    let bound = dx(&fy) * (gy.len() - 1) + dx(&gy) * (fy.len() - 1);
    let xs: Vec<Rational> = (0..=bound as i64 + 1).map(q).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let fe: Vec<Rational> = fy.iter().map(|c| c.eval(x)).collect();
            let ge: Vec<Rational> = gy.iter().map(|c| c.eval(x)).collect();
            sylvester_det(&fe, &ge)
        })
        .collect();
    let mut res = interpolate(&xs, &ys);
    if res.is_zero() {
        return None;
    }
    let x = Upoly::new(vec![Rational::zero(), Rational::one()]);
    let lead_gcd = fy.last().unwrap().gcd(gy.last().unwrap());
    let zero_gcd = fy[0].gcd(&gy[0]);
    for spurious in [x, lead_gcd, zero_gcd] {
        if spurious.is_zero() {
            continue;
        }
        loop {
            let g = res.gcd(&spurious);
            if g.degree() == 0 {
                break;
            }
            res = res.divmod(&g).0;
        }
    }
    let squarefree = res.divmod(&res.gcd(&res.derivative())).0;
    Some(squarefree.degree())
}

/// Distinct nonzero roots of a univariate polynomial given as `(coeff, exponent)`.
pub fn univariate_torus_roots(f: &[(i64, i64)]) -> usize {
    let deg = f.iter().map(|(_, e)| *e).max().unwrap() as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    for (a, e) in f {
        c[*e as usize] += q(*a);
    }
    let mut p = Upoly::new(c);
    while !p.is_zero() && p.0[0].is_zero() {
        p = Upoly::new(p.0[1..].to_vec());
    }
    if p.is_zero() {
        return 0;
    }
    p.divmod(&p.gcd(&p.derivative())).0.degree()
}
