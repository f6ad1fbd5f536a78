//! Canonical rooted generation of connected planar gluings.
//!
//! Starting from a root dart, the first open dart in discovery order is
//! glued either to a leg of a fresh vertex (which takes the next label, its
//! entry leg normalized modulo the vertex's rotation symmetry) or to an open
//! dart on the same face, which is exactly the condition for the map to stay
//! planar. Every rooted connected planar map arises once.

use std::collections::BTreeMap;

use super::layout::same_cycle;
use super::{Boundary, VertexType};

const OPEN: usize = usize::MAX;

struct Generator<'a> {
    types: &'a [VertexType],
    remaining: Vec<usize>,
    boundary_legs: usize,
    order: Vec<usize>,
    partner: Vec<usize>,
    phi: Vec<usize>,
    psi: Vec<usize>,
    added: usize,
    psi_cycles: usize,
    tally: BTreeMap<usize, u128>,
}

impl<'a> Generator<'a> {
    fn base(&self, i: usize) -> usize {
        self.boundary_legs + 4 * i
    }

    /// Appends internal vertex of kind `t`, discovering its legs from `entry`.
    fn add_vertex(&mut self, t: usize, entry: usize) -> usize {
        let base = self.base(self.added);
        let kind = self.types[t];
        for j in 0..4 {
            self.phi[base + j] = base + (j + 1) % 4;
            self.psi[base + j] = base + kind.transition(j);
        }
        for k in 1..4 {
            self.order.push(base + (entry + k) % 4);
        }
        self.psi_cycles += 2;
        self.remaining[t] -= 1;
        self.added += 1;
        base + entry
    }

    fn remove_vertex(&mut self, t: usize) {
        self.added -= 1;
        self.remaining[t] += 1;
        self.psi_cycles -= 2;
        self.order.truncate(self.order.len() - 3);
    }

    fn glue(&mut self, x: usize, y: usize) -> bool {
        let psi_same = same_cycle(&self.psi, x, y);
        self.partner[x] = y;
        self.partner[y] = x;
        self.phi.swap(x, y);
        self.psi.swap(x, y);
        if psi_same {
            self.psi_cycles += 1;
        } else {
            self.psi_cycles -= 1;
        }
        psi_same
    }

    fn unglue(&mut self, x: usize, y: usize, psi_same: bool) {
        if psi_same {
            self.psi_cycles -= 1;
        } else {
            self.psi_cycles += 1;
        }
        self.psi.swap(x, y);
        self.phi.swap(x, y);
        self.partner[x] = OPEN;
        self.partner[y] = OPEN;
    }

    fn run(&mut self) {
        let Some(x) = self.order.iter().copied().find(|&d| self.partner[d] == OPEN) else {
            if self.remaining.iter().all(|&r| r == 0) {
                *self.tally.entry(self.psi_cycles).or_default() += 1;
            }
            return;
        };
        for t in 0..self.types.len() {
            if self.remaining[t] == 0 {
                continue;
            }
            for &entry in self.types[t].entry_legs() {
                let e = self.add_vertex(t, entry);
                let psi_same = self.glue(x, e);
                self.run();
                self.unglue(x, e, psi_same);
                self.remove_vertex(t);
            }
        }
        let mut candidates = Vec::new();
        let mut z = self.phi[x];
        while z != x {
            if self.partner[z] == OPEN {
                candidates.push(z);
            }
            z = self.phi[z];
        }
        for y in candidates {
            let psi_same = self.glue(x, y);
            self.run();
            self.unglue(x, y, psi_same);
        }
    }
}

/// Canonical counts of connected planar gluings, keyed by the number of
/// `ψ`-cycles (twice the number of strands). Without a boundary the root is
/// leg 0 of a vertex of the first kind with nonzero count.
pub(crate) fn generate(
    types: &[VertexType],
    counts: &[usize],
    boundary: Boundary,
) -> BTreeMap<usize, u128> {
    let b = boundary.legs();
    let total: usize = counts.iter().sum();
    let n = b + 4 * total;
    let mut gen = Generator {
        types,
        remaining: counts.to_vec(),
        boundary_legs: b,
        order: Vec::with_capacity(n),
        partner: vec![OPEN; n],
        phi: vec![0; n],
        psi: vec![0; n],
        added: 0,
        psi_cycles: 0,
        tally: BTreeMap::new(),
    };
    if b > 0 {
        for j in 0..b {
            gen.phi[j] = (j + 1) % b;
            gen.psi[j] = boundary.transition(j);
            gen.order.push(j);
        }
        gen.psi_cycles = b / 2;
    } else {
        let Some(t0) = counts.iter().position(|&c| c > 0) else {
            return gen.tally;
        };
        let base = gen.add_vertex(t0, 0);
        gen.order.insert(0, base);
    }
    gen.run();
    gen.tally
}
