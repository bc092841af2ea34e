use serde::{Deserialize, Serialize};

/// One of the two coordinate points of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pole {
    /// `0 = [0:1]`
    Zero,
    /// `∞ = [1:0]`
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodePreimage {
    pub component: usize,
    pub pole: Pole,
}

/// The cycle `X_n` of `n` projective lines. Component `i` carries
/// coordinates `[x0:x1]`; node `j` glues `∞` on component `j` to `0` on
/// component `j + 1 (mod n)`. The marked point `x_i` is `[1:1]` on component
/// `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleGeometry {
    pub n: usize,
}

impl CycleGeometry {
    pub fn new(n: usize) -> Result<CycleGeometry, crate::Error> {
        if n == 0 {
            return Err(crate::Error::Shape("a cycle needs at least one component".into()));
        }
        Ok(CycleGeometry { n })
    }

    pub fn sigma(&self, j: usize) -> NodePreimage {
        NodePreimage {
            component: j % self.n,
            pole: Pole::Infinity,
        }
    }

    pub fn tau(&self, j: usize) -> NodePreimage {
        NodePreimage {
            component: (j + 1) % self.n,
            pole: Pole::Zero,
        }
    }

    /// The marked smooth point on component `i`, as homogeneous coordinates.
    pub fn marked_point(&self, i: usize) -> [i64; 2] {
        assert!(i < self.n, "component {i} out of range");
        [1, 1]
    }

    /// Whether the node preimages are pairwise distinct and each component
    /// carries exactly two of them.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut count = vec![0; self.n];
        for j in 0..self.n {
            for p in [self.sigma(j), self.tau(j)] {
                if !seen.insert(p) {
                    return false;
                }
                count[p.component] += 1;
            }
        }
        count.iter().all(|&c| c == 2)
    }
}
