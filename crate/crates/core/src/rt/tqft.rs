use crate::error::{Error, Result};
use crate::qgroup::fusion_coefficient;

/// A closed trivalent graph. Each vertex lists its three incident edges; a
/// loop edge appears twice at its vertex. A graph with no vertices and one
/// edge is a bare circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    pub edges: usize,
    pub vertices: Vec<[usize; 3]>,
}

impl Spine {
    pub fn new(edges: usize, vertices: Vec<[usize; 3]>) -> Result<Self> {
        let mut degree = vec![0usize; edges];
        for v in &vertices {
            for &e in v {
                if e >= edges {
                    return Err(Error::invalid(format!("edge {} out of range", e)));
                }
                degree[e] += 1;
            }
        }
        if vertices.is_empty() {
            if edges != 1 {
                return Err(Error::invalid("a spine without vertices must be a single circle"));
            }
        } else if let Some(e) = degree.iter().position(|&d| d != 2) {
            return Err(Error::invalid(format!("edge {} has {} ends", e, degree[e])));
        }
        Ok(Spine { edges, vertices })
    }

    /// The first Betti number, which is the genus of the boundary of a
    /// thickening.
    pub fn genus(&self) -> usize {
        if self.vertices.is_empty() {
            return 1;
        }
        self.edges + 1 - self.vertices.len()
    }

    /// Loops hung off a path: genus `g` with `2g - 2` vertices.
    pub fn caterpillar(g: usize) -> Result<Self> {
        match g {
            0 => Err(Error::invalid("genus 0 has no spine; its dimension is 1")),
            1 => Spine::new(1, vec![]),
            2 => Spine::new(3, vec![[0, 0, 2], [1, 1, 2]]),
            _ => {
                // loops 0..g, stems g..2g, interior path edges after that
                let stem = |i: usize| g + i;
                let path = |i: usize| 2 * g + i;
                let mut vertices: Vec<[usize; 3]> = (0..g).map(|i| [i, i, stem(i)]).collect();
                for i in 1..g - 1 {
                    let left = if i == 1 { stem(0) } else { path(i - 2) };
                    let right = if i == g - 2 { stem(g - 1) } else { path(i - 1) };
                    vertices.push([left, stem(i), right]);
                }
                Spine::new(3 * g - 3, vertices)
            }
        }
    }

    /// A cycle of `g - 1` vertices, each carrying a loop on a stem.
    pub fn necklace(g: usize) -> Result<Self> {
        if g < 2 {
            return Spine::caterpillar(g);
        }
        let n = g - 1;
        // cycle edges 0..n, stems n..2n, loops 2n..3n
        let mut vertices = Vec::new();
        for i in 0..n {
            vertices.push([(i + n - 1) % n, i, n + i]);
            vertices.push([2 * n + i, 2 * n + i, n + i]);
        }
        Spine::new(3 * n, vertices)
    }

    /// Two vertices joined by three edges.
    pub fn theta() -> Self {
        Spine::new(3, vec![[0, 1, 2], [0, 1, 2]]).expect("static spine")
    }

    /// The complete graph on four vertices.
    pub fn tetrahedron() -> Self {
        Spine::new(6, vec![[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]]).expect("static spine")
    }

    /// The number of admissible labelings by `1..l-1`, where each vertex
    /// contributes the fusion multiplicity of its three labels.
    pub fn count_labelings(&self, l: usize, max_cost: u64) -> Result<u64> {
        if l < 2 {
            return Err(Error::invalid("the truncation order l must be at least 2"));
        }
        let labels = (l - 1) as u64;
        let cost = labels.checked_pow(self.edges as u32).filter(|&c| c <= max_cost);
        let cost = cost.ok_or_else(|| {
            Error::Refused(format!(
                "{} edges at l = {} exceed the limit of {} labelings",
                self.edges, l, max_cost
            ))
        })?;
        let mut total = 0u64;
        let mut lab = vec![1usize; self.edges];
        for mut code in 0..cost {
            for x in lab.iter_mut() {
                *x = (code % labels) as usize + 1;
                code /= labels;
            }
            let weight = self.vertices.iter().try_fold(1u64, |acc, v| {
                let n = fusion_coefficient(lab[v[0]], lab[v[1]], lab[v[2]], l) as u64;
                (n > 0).then_some(acc * n)
            });
            total += weight.unwrap_or(0);
        }
        Ok(total)
    }
}

/// The dimension of the vector space assigned to a closed surface of genus
/// `g`, counted on a caterpillar spine.
pub fn tqft_dim(g: usize, l: usize) -> Result<u64> {
    if g == 0 {
        return Ok(1);
    }
    Spine::caterpillar(g)?.count_labelings(l, super::DEFAULT_MAX_COST)
}

/// `Σ_j S_{1j}^{2-2g}` with `S_{ij} = √(2/l) sin(π i j / l)`, in floating
/// point.
pub fn verlinde_numeric(g: usize, l: usize) -> f64 {
    let lf = l as f64;
    (1..l)
        .map(|j| {
            let s = (2.0 / lf).sqrt() * (std::f64::consts::PI * j as f64 / lf).sin();
            s.powi(2 - 2 * g as i32)
        })
        .sum()
}
