use serde::Serialize;

/// One inequality `Σ c_j v_j + d·k ≥ 0` of the scaled polyhedron `k·NP(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Facet {
    pub coeffs: Vec<i128>,
    pub scale: i128,
}

/// Newton polyhedron `conv(a_1..a_s) + R^n_{≥0}` of a monomial ideal, held by an
/// inequality description obtained by Fourier-Motzkin elimination of the convex
/// weights. Everything is exact integer arithmetic.
#[derive(Clone, Debug, Serialize)]
pub struct NewtonPolyhedron {
    nvars: usize,
    generators: Vec<Vec<u32>>,
    facets: Vec<Facet>,
}

#[derive(Clone)]
struct Row {
    // λ_1..λ_{s-1}, v_1..v_n, k
    c: Vec<i128>,
    history: u128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(c: &mut [i128]) {
    let g = c.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        c.iter_mut().for_each(|x| *x /= g);
    }
}

impl NewtonPolyhedron {
    /// `generators` are exponent vectors of one length; at least one is required.
    pub fn new(generators: Vec<Vec<u32>>) -> Self {
        assert!(!generators.is_empty(), "Newton polyhedron needs a generator");
        let n = generators[0].len();
        assert!(generators.iter().all(|g| g.len() == n));
        let s = generators.len();
        let lam = s - 1;
        let width = lam + n + 1;
        let kcol = lam + n;
        let last = &generators[s - 1];

        let mut rows = Vec::new();
        let mut bit = 0u32;
        let mut push = |c: Vec<i128>, rows: &mut Vec<Row>| {
            rows.push(Row {
                c,
                history: 1u128 << bit,
            });
            bit += 1;
        };
        for i in 0..lam {
            let mut c = vec![0; width];
            c[i] = 1;
            push(c, &mut rows);
        }
        // λ_s = k - Σ λ_i ≥ 0
        let mut c = vec![0; width];
        for x in c.iter_mut().take(lam) {
            *x = -1;
        }
        c[kcol] = 1;
        push(c, &mut rows);
        for j in 0..n {
            let mut c = vec![0; width];
            for (i, g) in generators.iter().take(lam).enumerate() {
                c[i] = last[j] as i128 - g[j] as i128;
            }
            c[lam + j] = 1;
            c[kcol] = -(last[j] as i128);
            push(c, &mut rows);
        }

        for (eliminated, var) in (0..lam).enumerate() {
            let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
            for r in rows {
                match r.c[var].signum() {
                    1 => pos.push(r),
                    -1 => neg.push(r),
                    _ => keep.push(r),
                }
            }
            for p in &pos {
                for q in &neg {
                    let history = p.history | q.history;
                    // Chernikov: a combination of more than t+1 originals after t
                    // eliminations is redundant
                    if history.count_ones() as usize > eliminated + 2 {
                        continue;
                    }
                    let a = p.c[var];
                    let b = -q.c[var];
                    let mut c: Vec<i128> = p.c.iter().zip(&q.c).map(|(x, y)| b * x + a * y).collect();
                    normalize(&mut c);
                    keep.push(Row { c, history });
                }
            }
            let mut seen = std::collections::HashSet::new();
            keep.retain(|r| seen.insert(r.c.clone()));
            rows = keep;
        }

        let mut facets: Vec<Facet> = rows
            .into_iter()
            .map(|r| Facet {
                coeffs: r.c[lam..lam + n].to_vec(),
                scale: r.c[kcol],
            })
            // rows with no negative entry hold on the whole orthant
            .filter(|f| f.scale < 0 || f.coeffs.iter().any(|&c| c < 0))
            .collect();
        facets.sort_by(|a, b| (&a.coeffs, a.scale).cmp(&(&b.coeffs, b.scale)));
        facets.dedup();
        Self {
            nvars: n,
            generators,
            facets,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// `v ∈ NP(I)`.
    pub fn contains(&self, v: &[u32]) -> bool {
        self.contains_scaled(v, 1)
    }

    /// `v ∈ k·NP(I) = NP(I^k)`.
    pub fn contains_scaled(&self, v: &[u32], k: u32) -> bool {
        debug_assert_eq!(v.len(), self.nvars);
        self.facets.iter().all(|f| {
            let lhs: i128 = f.coeffs.iter().zip(v).map(|(&c, &x)| c * x as i128).sum::<i128>() + f.scale * k as i128;
            lhs >= 0
        })
    }

    /// Componentwise maximum of the generators; closure generators of `I^k` lie in
    /// the box `[0, k·max]`.
    pub fn box_bound(&self) -> Vec<u32> {
        (0..self.nvars)
            .map(|j| self.generators.iter().map(|g| g[j]).max().unwrap())
            .collect()
    }

    /// Minimal lattice points of `k·NP(I)`, found by enumerating the box
    /// `[0, k·max]`. Sorted lexicographically descending.
    pub fn minimal_points_scaled(&self, k: u32) -> Vec<Vec<u32>> {
        let bound: Vec<u32> = self.box_bound().iter().map(|b| b * k).collect();
        let mut first_coords: Vec<u32> = (0..=bound.first().copied().unwrap_or(0)).collect();
        if self.nvars == 0 {
            first_coords = vec![0];
        }
        let chunks = crate::par::map(&first_coords, |&a| {
            let mut out = Vec::new();
            let mut v = vec![0u32; self.nvars];
            if self.nvars > 0 {
                v[0] = a;
            }
            self.enumerate(1, &bound, &mut v, k, &mut out);
            out
        });
        let mut out: Vec<Vec<u32>> = chunks.into_iter().flatten().collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate(&self, j: usize, bound: &[u32], v: &mut Vec<u32>, k: u32, out: &mut Vec<Vec<u32>>) {
        if j >= self.nvars {
            if self.contains_scaled(v, k) && self.is_minimal(v, k) {
                out.push(v.clone());
            }
            return;
        }
        for a in 0..=bound[j] {
            v[j] = a;
            self.enumerate(j + 1, bound, v, k, out);
        }
        v[j] = 0;
    }

    fn is_minimal(&self, v: &[u32], k: u32) -> bool {
        let mut w = v.to_vec();
        for j in 0..v.len() {
            if v[j] == 0 {
                continue;
            }
            w[j] -= 1;
            let inside = self.contains_scaled(&w, k);
            w[j] += 1;
            if inside {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two generators in the plane: v ∈ k·NP iff some t ∈ [0,k] (rational) has
    /// v ≥ t·a + (k-t)·b. Checked on a fine rational grid of t with denominator 120.
    fn segment_oracle(a: [u32; 2], b: [u32; 2], v: [u32; 2], k: u32) -> bool {
        let den = 120i64;
        (0..=den * k as i64).any(|t| {
            (0..2).all(|j| {
                let lhs = v[j] as i64 * den;
                let rhs = t * a[j] as i64 + (k as i64 * den - t) * b[j] as i64;
                lhs >= rhs
            })
        })
    }

    #[test]
    fn square_corners() {
        let np = NewtonPolyhedron::new(vec![vec![2, 0], vec![0, 2]]);
        assert!(np.contains(&[1, 1]));
        assert!(!np.contains(&[1, 0]));
        assert!(!np.contains(&[0, 1]));
        assert_eq!(np.minimal_points_scaled(1), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert!(np.contains_scaled(&[2, 2], 2));
        assert!(!np.contains_scaled(&[2, 1], 2));
    }

    #[test]
    fn cubes() {
        let np = NewtonPolyhedron::new(vec![vec![3, 0], vec![0, 3]]);
        assert_eq!(
            np.minimal_points_scaled(1),
            vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]
        );
    }

    #[test]
    fn principal() {
        let np = NewtonPolyhedron::new(vec![vec![1, 0]]);
        assert_eq!(np.minimal_points_scaled(1), vec![vec![1, 0]]);
        assert_eq!(np.minimal_points_scaled(4), vec![vec![4, 0]]);
    }

    #[test]
    fn segments_match_grid_oracle() {
        let pts: Vec<[u32; 2]> = (0..=4).flat_map(|a| (0..=4).map(move |b| [a, b])).collect();
        for &a in &pts {
            for &b in &pts {
                let np = NewtonPolyhedron::new(vec![a.to_vec(), b.to_vec()]);
                for k in 1..=2 {
                    for x in 0..=9 {
                        for y in 0..=9 {
                            assert_eq!(
                                np.contains_scaled(&[x, y], k),
                                segment_oracle(a, b, [x, y], k),
                                "{a:?} {b:?} {x} {y} k={k}"
                            );
                        }
                    }
                }
            }
        }
    }
}
