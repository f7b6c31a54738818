//! Face lattices of pointed cones given by generators, and deterministic
//! pulling triangulations built on top of them.
//!
//! Faces are represented by the sets of generator indices lying on them
//! (including non-extreme generators). Facets come from the dual cone's
//! extreme rays; the full lattice is the closure of the facet incidence sets
//! under intersection.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use once_cell::race::OnceBox;

use crate::arith::{rank_int, BitSet};
use crate::polyhedra::dd::double_description;
use crate::Int;

#[derive(Debug)]
pub struct FaceLattice {
    ngen: usize,
    gens: Vec<Vec<Int>>,
    /// All nonempty faces as sorted generator-index lists; sorted by
    /// (dimension, members). The last entry is the whole cone.
    faces: Vec<Vec<u32>>,
    dims: Vec<usize>,
    /// Indices of extreme generators.
    extreme: Vec<usize>,
    cells: OnceBox<Vec<Vec<u32>>>,
}

/// Builds the face lattice of `cone(gens)`. The cone must be pointed.
pub fn face_lattice(n: usize, gens: &[Vec<Int>]) -> FaceLattice {
    let ngen = gens.len();
    let dual = double_description(gens, n);
    let facet_tights: Vec<BitSet> = dual.tight;
    let mut all = BitSet::new(ngen);
    for i in 0..ngen {
        all.insert(i);
    }
    let mut seen: BTreeSet<BitSet> = BTreeSet::new();
    seen.insert(all.clone());
    let mut queue = alloc::vec![all];
    while let Some(face) = queue.pop() {
        for t in &facet_tights {
            let s = face.intersection(t);
            if s.count() == 0 || seen.contains(&s) {
                continue;
            }
            seen.insert(s.clone());
            queue.push(s);
        }
    }
    let mut faces: Vec<Vec<u32>> = seen
        .into_iter()
        .map(|s| s.iter_ones().map(|i| i as u32).collect())
        .collect();
    let dim_of = |members: &[u32]| -> usize {
        let rows: Vec<Vec<Int>> = members.iter().map(|&i| gens[i as usize].clone()).collect();
        rank_int(&rows)
    };
    let mut keyed: Vec<(usize, Vec<u32>)> = faces.drain(..).map(|f| (dim_of(&f), f)).collect();
    keyed.sort();
    let (dims, faces): (Vec<usize>, Vec<Vec<u32>>) = keyed.into_iter().unzip();

    // A generator is extreme iff its minimal face is one-dimensional.
    let mut extreme = Vec::new();
    for g in 0..ngen {
        let mut mf = BitSet::new(ngen);
        for i in 0..ngen {
            mf.insert(i);
        }
        for t in &facet_tights {
            if t.contains(g) {
                mf = mf.intersection(t);
            }
        }
        let members: Vec<u32> = mf.iter_ones().map(|i| i as u32).collect();
        if dim_of(&members) == 1 {
            extreme.push(g);
        }
    }

    FaceLattice {
        ngen,
        gens: gens.to_vec(),
        faces,
        dims,
        extreme,
        cells: OnceBox::new(),
    }
}

impl FaceLattice {
    pub fn generator_count(&self) -> usize {
        self.ngen
    }

    /// All nonempty faces, ordered by (dimension, members); the final face is
    /// the cone itself.
    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn extreme(&self) -> &[usize] {
        &self.extreme
    }

    pub fn top_dim(&self) -> usize {
        *self.dims.last().unwrap_or(&0)
    }

    /// Cells of the pulling triangulation of the whole cone: each cell is an
    /// independent set of extreme generator indices spanning a cone of full
    /// dimension. Deterministic: recursively pulls at the smallest-index
    /// extreme generator.
    pub fn pulling_cells(&self) -> &[Vec<u32>] {
        self.cells.get_or_init(|| {
            let mut memo: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
            let top = self.faces.len() - 1;
            Box::new(self.pull(top, &mut memo))
        })
    }

    fn pull(&self, face: usize, memo: &mut BTreeMap<Vec<u32>, Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
        let members = &self.faces[face];
        if let Some(hit) = memo.get(members) {
            return hit.clone();
        }
        let ext: Vec<u32> = members
            .iter()
            .copied()
            .filter(|&i| self.extreme.binary_search(&(i as usize)).is_ok())
            .collect();
        let dim = self.dims[face];
        let result = if ext.len() == dim {
            alloc::vec![ext]
        } else {
            let v = ext[0];
            let mut cells = Vec::new();
            for (gi, g) in self.faces.iter().enumerate() {
                if self.dims[gi] + 1 != dim || g.contains(&v) || !is_subset(g, members) {
                    continue;
                }
                for sub in self.pull(gi, memo) {
                    let mut cell = sub;
                    let pos = cell.binary_search(&v).unwrap_err();
                    cell.insert(pos, v);
                    cells.push(cell);
                }
            }
            cells.sort();
            cells
        };
        memo.insert(members.clone(), result.clone());
        result
    }

    /// Generator vectors for a cell returned by `pulling_cells`.
    pub fn cell_rays(&self, cell: &[u32]) -> Vec<Vec<Int>> {
        cell.iter().map(|&i| self.gens[i as usize].clone()).collect()
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                core::cmp::Ordering::Equal => continue 'outer,
                core::cmp::Ordering::Greater => return false,
                core::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}
