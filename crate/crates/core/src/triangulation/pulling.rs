use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::config::{AffineFn, Config};
use super::{CertifiedTriangulation, HeightFunction, Subdivision, Triangulation};
use crate::error::{Error, Result};
use crate::lattice::matrix::dot;
use crate::lattice::IntVector;
use crate::polytope::enumerate_facets;

struct CellFacet {
    normal: IntVector,
    rhs: BigInt,
    vertices: Vec<usize>,
}

struct Cell {
    vertices: Vec<usize>,
    facets: Vec<CellFacet>,
    phi: Option<AffineFn>,
}

impl Cell {
    fn new(cfg: &Config, mut vertices: Vec<usize>, heights: Option<&[BigRational]>) -> Result<Cell> {
        vertices.sort_unstable();
        vertices.dedup();
        let k = cfg.dim();
        let pts: Vec<IntVector> = vertices.iter().map(|&i| cfg.local[i].clone()).collect();
        let facets = enumerate_facets(&pts, k)
            .into_iter()
            .map(|(normal, rhs, tight)| CellFacet { normal, rhs, vertices: tight.iter().map(|&t| vertices[t]).collect() })
            .collect();
        let phi = match heights {
            None => None,
            Some(h) => {
                let ps: Vec<&IntVector> = vertices.iter().map(|&i| &cfg.local[i]).collect();
                let hs: Vec<&BigRational> = vertices.iter().map(|&i| &h[i]).collect();
                Some(AffineFn::interpolate(&ps, &hs, k).ok_or_else(|| {
                    Error::Invalid(format!("heights are not affine on cell {vertices:?}"))
                })?)
            }
        };
        Ok(Cell { vertices, facets, phi })
    }

    fn contains(&self, c: &[BigInt]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, c) <= f.rhs)
    }
}

/// Incremental pulling refinement of a subdivision, optionally carrying a
/// height function that certifies coherence at every step.
pub(crate) struct Engine<'a> {
    cfg: &'a Config,
    heights: Option<Vec<BigRational>>,
    cells: Vec<Cell>,
}

impl<'a> Engine<'a> {
    pub fn new(cfg: &'a Config, cells: &[Vec<usize>], heights: Option<Vec<BigRational>>) -> Result<Self> {
        if let Some(h) = &heights {
            if h.len() != cfg.len() {
                return Err(Error::DimensionMismatch { expected: cfg.len(), found: h.len() });
            }
        }
        let mut out = Vec::with_capacity(cells.len());
        for c in cells {
            for &v in c {
                cfg.check_index(v)?;
            }
            out.push(Cell::new(cfg, c.clone(), heights.as_deref())?);
        }
        Ok(Engine { cfg, heights, cells: out })
    }

    /// The new height of `v` that makes the pulled subdivision regular:
    /// `t0 - eps` with `t0` the current envelope value at `v` and `eps` half
    /// the smallest gap to a cell not containing `v` (1 if there is none).
    pub fn pulled_height(&self, v: usize) -> BigRational {
        let c = &self.cfg.local[v];
        let mut t0: Option<BigRational> = None;
        let mut others = Vec::new();
        for cell in &self.cells {
            let val = cell.phi.as_ref().expect("engine carries heights").eval(c);
            if cell.contains(c) {
                if t0.as_ref().is_none_or(|t| &val > t) {
                    t0 = Some(val);
                }
            } else {
                others.push(val);
            }
        }
        let t0 = t0.expect("every point lies in some cell");
        let gap = others.iter().map(|val| &t0 - val).filter(|g| g.is_positive()).min();
        let eps = match gap {
            Some(g) => g / BigRational::from_integer(BigInt::from(2)),
            None => BigRational::one(),
        };
        t0 - eps
    }

    pub fn pull(&mut self, v: usize) -> Result<()> {
        self.cfg.check_index(v)?;
        if let Some(new) = self.heights.as_ref().map(|_| self.pulled_height(v)) {
            self.heights.as_mut().expect("checked")[v] = new;
        }
        let c = self.cfg.local[v].clone();
        let cells = std::mem::take(&mut self.cells);
        let mut next = Vec::with_capacity(cells.len() + 8);
        for cell in cells {
            if !cell.contains(&c) {
                next.push(cell);
                continue;
            }
            if self.cfg.dim() == 0 {
                // a single point has no facets to cone over
                next.push(Cell::new(self.cfg, cell.vertices, self.heights.as_deref())?);
                continue;
            }
            for f in &cell.facets {
                if dot(&f.normal, &c) < f.rhs {
                    let mut vs = f.vertices.clone();
                    vs.push(v);
                    next.push(Cell::new(self.cfg, vs, self.heights.as_deref())?);
                }
            }
        }
        self.cells = next;
        Ok(())
    }

    pub fn heights(&self) -> Option<&[BigRational]> {
        self.heights.as_deref()
    }

    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cs: Vec<Vec<usize>> = self.cells.iter().map(|c| c.vertices.clone()).collect();
        cs.sort();
        cs
    }
}

/// Replaces every cell containing point `v` by the pyramids with apex `v`
/// over its facets that avoid `v`.
pub fn pull(s: &Subdivision, v: usize) -> Result<Subdivision> {
    let cfg = Config::new(&s.points)?;
    let mut e = Engine::new(&cfg, &s.cells, None)?;
    e.pull(v)?;
    Ok(Subdivision { points: s.points.clone(), cells: e.cells() })
}

/// Heights whose regular subdivision is `pull(s, v)`, given that `s` is the
/// regular subdivision of `heights`.
pub fn pull_heights(s: &Subdivision, heights: &[BigRational], v: usize) -> Result<HeightFunction> {
    let cfg = Config::new(&s.points)?;
    cfg.check_index(v)?;
    let e = Engine::new(&cfg, &s.cells, Some(heights.to_vec()))?;
    let mut out = heights.to_vec();
    out[v] = e.pulled_height(v);
    Ok(out)
}

/// Pulls every point in `order` (a permutation of the point indices),
/// updating the heights along the way, and certifies the result.
pub fn pull_all(s: &Subdivision, heights: &[BigRational], order: &[usize]) -> Result<CertifiedTriangulation> {
    let cfg = Config::new(&s.points)?;
    let t = pull_all_in(&cfg, &s.cells, heights, order)?;
    Ok(CertifiedTriangulation::certify(t.0, t.1))
}

pub(crate) fn pull_all_in(
    cfg: &Config,
    cells: &[Vec<usize>],
    heights: &[BigRational],
    order: &[usize],
) -> Result<(Triangulation, HeightFunction)> {
    let mut e = Engine::new(cfg, cells, Some(heights.to_vec()))?;
    for &v in order {
        e.pull(v)?;
    }
    let simplices = e.cells();
    let k = cfg.dim();
    if let Some(bad) = simplices.iter().find(|c| c.len() != k + 1) {
        return Err(Error::NotSimplex(format!("cell {bad:?} after pulling")));
    }
    let heights = e.heights().expect("engine carries heights").to_vec();
    Ok((Triangulation { points: cfg.points.clone(), simplices }, heights))
}
