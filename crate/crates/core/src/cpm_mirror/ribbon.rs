use serde::{Deserialize, Serialize};

use crate::Error;

/// A half-edge: the vertex it leaves and the edge it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub vertex: usize,
    pub edge: usize,
}

/// A graph with a cyclic order on the half-edges at each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonGraph {
    pub vertices: usize,
    pub half_edges: Vec<HalfEdge>,
    /// The two half-edges of each edge.
    pub edges: Vec<[usize; 2]>,
    /// Half-edges around each vertex, counterclockwise.
    pub cyclic_order: Vec<Vec<usize>>,
}

impl RibbonGraph {
    /// Checks that every edge has two half-edges pointing back at it and that
    /// each cyclic order is a permutation of the half-edges at its vertex.
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::Shape(m));
        for (e, pair) in self.edges.iter().enumerate() {
            if pair[0] == pair[1] || pair.iter().any(|&h| h >= self.half_edges.len() || self.half_edges[h].edge != e) {
                return bad(format!("edge {e} does not have two half-edges"));
            }
        }
        if self.half_edges.len() != 2 * self.edges.len() || self.cyclic_order.len() != self.vertices {
            return bad("half-edge count does not match edges".into());
        }
        for (v, order) in self.cyclic_order.iter().enumerate() {
            let mut at: Vec<usize> = (0..self.half_edges.len()).filter(|&h| self.half_edges[h].vertex == v).collect();
            let mut seen = order.clone();
            at.sort_unstable();
            seen.sort_unstable();
            if at != seen {
                return bad(format!("cyclic order at vertex {v} is not a permutation of its half-edges"));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64
    }

    fn opposite(&self, h: usize) -> usize {
        let [a, b] = self.edges[self.half_edges[h].edge];
        if a == h {
            b
        } else {
            a
        }
    }

    fn next_at_vertex(&self, h: usize) -> usize {
        let order = &self.cyclic_order[self.half_edges[h].vertex];
        let i = order.iter().position(|&x| x == h).expect("half-edge in cyclic order");
        order[(i + 1) % order.len()]
    }

    /// Boundary cycles of the thickened surface, i.e. punctures.
    pub fn boundary_cycles(&self) -> usize {
        let mut seen = vec![false; self.half_edges.len()];
        let mut count = 0;
        for start in 0..self.half_edges.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.next_at_vertex(self.opposite(h));
            }
        }
        count
    }

    /// Genus of the surface the graph is a skeleton of.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic() - self.boundary_cycles() as i64) / 2
    }
}

/// The skeleton `Γ_n` of the `n`-punctured torus: `n` wheels, each a loop
/// through its vertex, with the ray `R⁺_i` joined to `R⁻_{i+1}`.
///
/// At vertex `i` the cyclic order is loop start, `R⁺`, loop end, `R⁻`.
/// Edge `2i` is the loop of wheel `i`; edge `2i + 1` joins `R⁺_i` to
/// `R⁻_{i+1}`.
pub fn build_gamma(n: usize) -> Result<RibbonGraph, Error> {
    if n == 0 {
        return Err(Error::Shape("Γ_n needs at least one wheel".into()));
    }
    // Half-edges at vertex i: 4i loop start, 4i+1 plus, 4i+2 loop end, 4i+3 minus.
    let mut half_edges = Vec::with_capacity(4 * n);
    for i in 0..n {
        half_edges.push(HalfEdge { vertex: i, edge: 2 * i });
        half_edges.push(HalfEdge { vertex: i, edge: 2 * i + 1 });
        half_edges.push(HalfEdge { vertex: i, edge: 2 * i });
        half_edges.push(HalfEdge {
            vertex: i,
            edge: 2 * ((i + n - 1) % n) + 1,
        });
    }
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        edges.push([4 * i, 4 * i + 2]);
        edges.push([4 * i + 1, 4 * ((i + 1) % n) + 3]);
    }
    let cyclic_order = (0..n).map(|i| (4 * i..4 * i + 4).collect()).collect();
    let g = RibbonGraph {
        vertices: n,
        half_edges,
        edges,
        cyclic_order,
    };
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let g1 = build_gamma(1).unwrap();
        assert_eq!((g1.vertices, g1.edges.len(), g1.half_edges.len()), (1, 2, 4));
        assert!(g1.edges.iter().all(|[a, b]| g1.half_edges[*a].vertex == g1.half_edges[*b].vertex));
        let g2 = build_gamma(2).unwrap();
        assert_eq!((g2.vertices, g2.edges.len()), (2, 4));
        assert!(build_gamma(0).is_err());
    }

    #[test]
    fn punctured_torus() {
        for n in 1..=6 {
            let g = build_gamma(n).unwrap();
            assert_eq!(g.euler_characteristic(), -(n as i64));
            assert_eq!(g.boundary_cycles(), n);
            assert_eq!(g.genus(), 1);
        }
    }

    #[test]
    fn broken_order_is_rejected() {
        let mut g = build_gamma(2).unwrap();
        g.cyclic_order[0][1] = 5;
        assert!(g.validate().is_err());
    }
}
