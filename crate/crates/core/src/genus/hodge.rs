use crate::error::{Error, Result};

/// Hodge numbers `h^{p,q}` of an `n`-dimensional compact Kähler manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    h: Vec<Vec<u64>>,
}

impl HodgeDiamond {
    /// Validates squareness, Hodge symmetry and Serre duality.
    pub fn new(h: Vec<Vec<u64>>) -> Result<Self> {
        let size = h.len();
        if size == 0 {
            return Err(Error::Parse("empty Hodge diamond".into()));
        }
        if let Some(row) = h.iter().find(|r| r.len() != size) {
            return Err(Error::Parse(format!(
                "Hodge diamond must be {size}x{size}, found a row of length {}",
                row.len()
            )));
        }
        let n = size - 1;
        for p in 0..=n {
            for q in 0..=n {
                if h[p][q] != h[q][p] {
                    return Err(Error::HodgeSymmetry {
                        rule: "h^{p,q} = h^{q,p}",
                        p,
                        q,
                    });
                }
                if h[p][q] != h[n - p][n - q] {
                    return Err(Error::HodgeSymmetry {
                        rule: "h^{p,q} = h^{n-p,n-q}",
                        p,
                        q,
                    });
                }
            }
        }
        Ok(Self { h })
    }

    /// Parses whitespace-separated non-negative integers, one row `p` per
    /// line (column index `q`). Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|line| !line.is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<u64>().map_err(|_| {
                            Error::Parse(format!("not a non-negative integer: {tok:?}"))
                        })
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// `h^{p,p} = 1`, all other entries zero.
    pub fn projective_space(n: usize) -> Self {
        let h = (0..=n)
            .map(|p| (0..=n).map(|q| u64::from(p == q)).collect())
            .collect();
        Self { h }
    }

    pub fn dim(&self) -> usize {
        self.h.len() - 1
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.h[p][q]
    }
}
