//! Exhaustive enumeration of Wick pairings on labeled vertices.
//!
//! Faces are the cycles of `φ = σ∘α′` and strands the cycles of `ψ = τ∘α′`,
//! where `α′` is the partial matching with unmatched darts as fixed points.
//! Gluing `x` to `y` right-multiplies both by the transposition `(x y)`,
//! which splits a cycle when `x` and `y` share it and merges two otherwise.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::layout::{same_cycle, Layout, RollbackUnionFind};

const OPEN: usize = usize::MAX;

/// `(faces, ψ-cycles, components)` of a complete gluing.
pub(crate) type RawCell = (usize, usize, usize);

struct Search<'a> {
    layout: &'a Layout,
    partner: Vec<usize>,
    phi: Vec<usize>,
    psi: Vec<usize>,
    faces: usize,
    psi_cycles: usize,
    uf: RollbackUnionFind,
    phi_marks: Vec<u64>,
    psi_marks: Vec<u64>,
    stamp: u64,
    planar_only: bool,
    tally: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(layout: &'a Layout, planar_only: bool) -> Self {
        let n = layout.darts();
        let depth = n / 2 + 1;
        let faces = crate::oracle::layout::count_cycles(&layout.sigma);
        let psi_cycles = crate::oracle::layout::count_cycles(&layout.tau);
        Search {
            layout,
            partner: vec![OPEN; n],
            phi: layout.sigma.clone(),
            psi: layout.tau.clone(),
            faces,
            psi_cycles,
            uf: RollbackUnionFind::new(layout.num_vertices),
            phi_marks: vec![0; depth * n],
            psi_marks: vec![0; depth * n],
            stamp: 0,
            planar_only,
            tally: vec![0; (n + 1) * (n + 1) * (layout.num_vertices + 1)],
        }
    }

    fn index(&self, cell: RawCell) -> usize {
        let n = self.layout.darts();
        (cell.0 * (n + 1) + cell.1) * (self.layout.num_vertices + 1) + cell.2
    }

    fn allowed(&self, x: usize, y: usize, phi_same: bool) -> bool {
        !self.planar_only
            || phi_same
            || self.uf.find(self.layout.vertex[x]) != self.uf.find(self.layout.vertex[y])
    }

    fn glue(&mut self, x: usize, y: usize, phi_same: bool, psi_same: bool) {
        self.partner[x] = y;
        self.partner[y] = x;
        self.phi.swap(x, y);
        self.psi.swap(x, y);
        if phi_same {
            self.faces += 1;
        } else {
            self.faces -= 1;
        }
        if psi_same {
            self.psi_cycles += 1;
        } else {
            self.psi_cycles -= 1;
        }
        self.uf.union(self.layout.vertex[x], self.layout.vertex[y]);
    }

    fn unglue(&mut self, x: usize, y: usize, phi_same: bool, psi_same: bool) {
        self.uf.undo();
        if psi_same {
            self.psi_cycles -= 1;
        } else {
            self.psi_cycles += 1;
        }
        if phi_same {
            self.faces -= 1;
        } else {
            self.faces += 1;
        }
        self.psi.swap(x, y);
        self.phi.swap(x, y);
        self.partner[x] = OPEN;
        self.partner[y] = OPEN;
    }

    /// Glues without precomputed cycle marks; used to replay a prefix.
    fn glue_walk(&mut self, x: usize, y: usize) -> bool {
        let phi_same = same_cycle(&self.phi, x, y);
        if !self.allowed(x, y, phi_same) {
            return false;
        }
        let psi_same = same_cycle(&self.psi, x, y);
        self.glue(x, y, phi_same, psi_same);
        true
    }

    fn first_open(&self, from: usize) -> Option<usize> {
        (from..self.partner.len()).find(|&d| self.partner[d] == OPEN)
    }

    fn run(&mut self, from: usize, depth: usize) {
        let Some(x) = self.first_open(from) else {
            let i = self.index((self.faces, self.psi_cycles, self.uf.components));
            self.tally[i] += 1;
            return;
        };
        let n = self.partner.len();
        self.stamp += 1;
        let s = self.stamp;
        let row = depth * n;
        let mut z = x;
        loop {
            self.phi_marks[row + z] = s;
            z = self.phi[z];
            if z == x {
                break;
            }
        }
        loop {
            self.psi_marks[row + z] = s;
            z = self.psi[z];
            if z == x {
                break;
            }
        }
        for y in x + 1..n {
            if self.partner[y] != OPEN {
                continue;
            }
            let phi_same = self.phi_marks[row + y] == s;
            if !self.allowed(x, y, phi_same) {
                continue;
            }
            let psi_same = self.psi_marks[row + y] == s;
            self.glue(x, y, phi_same, psi_same);
            self.run(x + 1, depth + 1);
            self.unglue(x, y, phi_same, psi_same);
        }
    }

    /// Admissible gluing sequences of length `levels`, lowest open dart
    /// first, each with the number of gluings it stands for. When dart 0 is
    /// a leg of internal vertex 0, its partners are taken up to the symmetry
    /// fixing vertex 0, which maps completions bijectively and preserves
    /// every cell.
    fn prefixes(&mut self, levels: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<(Vec<(usize, usize)>, u64)>) {
        let x = match self.first_open(0) {
            Some(x) if levels > 0 => x,
            _ => {
                out.push((path.clone(), 1));
                return;
            }
        };
        let mut weight: BTreeMap<(usize, usize), (usize, u64)> = BTreeMap::new();
        for y in x + 1..self.partner.len() {
            if self.partner[y] != OPEN {
                continue;
            }
            let key = if path.is_empty() && x == 0 && !self.layout.kinds.is_empty() {
                self.layout.orbit_key(y)
            } else {
                (usize::MAX, y)
            };
            weight.entry(key).or_insert((y, 0)).1 += 1;
        }
        let mut reps: Vec<(usize, u64)> = weight.into_values().collect();
        reps.sort();
        for (y, w) in reps {
            let phi_same = same_cycle(&self.phi, x, y);
            if !self.allowed(x, y, phi_same) {
                continue;
            }
            let psi_same = same_cycle(&self.psi, x, y);
            self.glue(x, y, phi_same, psi_same);
            path.push((x, y));
            let start = out.len();
            self.prefixes(levels - 1, path, out);
            for entry in &mut out[start..] {
                entry.1 *= w;
            }
            path.pop();
            self.unglue(x, y, phi_same, psi_same);
        }
    }

    fn into_cells(self) -> Vec<u64> {
        self.tally
    }
}

/// Counts every complete gluing of `layout` by `(faces, ψ-cycles, components)`.
/// With `planar_only`, gluings that would raise the genus of a partial map
/// are cut; genus never decreases as edges are added, so exactly the
/// genus-zero gluings survive.
pub(crate) fn enumerate(layout: &Layout, planar_only: bool, pool: &rayon::ThreadPool) -> BTreeMap<RawCell, u128> {
    let n = layout.darts();
    let levels = match n / 2 {
        0..=8 => 1,
        _ => 2,
    };
    let mut root = Search::new(layout, planar_only);
    let mut prefixes = Vec::new();
    root.prefixes(levels, &mut Vec::new(), &mut prefixes);

    let tally = pool.install(|| {
        prefixes
            .par_iter()
            .map(|(prefix, weight)| {
                let mut search = Search::new(layout, planar_only);
                for &(x, y) in prefix {
                    let ok = search.glue_walk(x, y);
                    debug_assert!(ok);
                }
                search.run(0, prefix.len());
                search
                    .into_cells()
                    .into_iter()
                    .map(|c| u128::from(c) * u128::from(*weight))
                    .collect::<Vec<_>>()
            })
            .reduce(
                || vec![0u128; (n + 1) * (n + 1) * (layout.num_vertices + 1)],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    });

    let probe = Search::new(layout, planar_only);
    let mut out = BTreeMap::new();
    for f in 0..=n {
        for p in 0..=n {
            for c in 0..=layout.num_vertices {
                let v = tally[probe.index((f, p, c))];
                if v > 0 {
                    out.insert((f, p, c), v);
                }
            }
        }
    }
    out
}
