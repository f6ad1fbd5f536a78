use super::{Boundary, VertexType};

/// Half-edge layout of a fat graph: leg `j` of internal vertex `v` is dart
/// `4v + j`; the legs of the marked boundary vertex, if any, follow the
/// internal darts.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub vertex: Vec<usize>,
    pub kinds: Vec<VertexType>,
    pub num_vertices: usize,
}

impl Layout {
    pub fn new(types: &[VertexType], boundary: Boundary) -> Self {
        let internal = 4 * types.len();
        let b = boundary.legs();
        let n = internal + b;
        let mut sigma = vec![0; n];
        let mut tau = vec![0; n];
        let mut vertex = vec![0; n];
        for (v, t) in types.iter().enumerate() {
            for j in 0..4 {
                sigma[4 * v + j] = 4 * v + (j + 1) % 4;
                tau[4 * v + j] = 4 * v + t.transition(j);
                vertex[4 * v + j] = v;
            }
        }
        for j in 0..b {
            sigma[internal + j] = internal + (j + 1) % b;
            tau[internal + j] = internal + boundary.transition(j);
            vertex[internal + j] = types.len();
        }
        Layout {
            sigma,
            tau,
            vertex,
            kinds: types.to_vec(),
            num_vertices: types.len() + usize::from(b > 0),
        }
    }

    pub fn darts(&self) -> usize {
        self.sigma.len()
    }

    /// Orbit of dart `y` under relabelings and pattern-preserving rotations
    /// of the internal vertices other than vertex 0. Darts of vertex 0 and of
    /// the boundary are singletons.
    pub fn orbit_key(&self, y: usize) -> (usize, usize) {
        let v = self.vertex[y];
        if v == 0 || v >= self.kinds.len() {
            return (usize::MAX, y);
        }
        let t = self.kinds[v];
        (t as usize, (y % 4) % (4 / t.symmetry() as usize))
    }
}

/// Union–find over vertices with undo, for connectivity of partial gluings.
#[derive(Debug, Clone)]
pub(crate) struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
    pub components: usize,
}

impl RollbackUnionFind {
    pub fn new(n: usize) -> Self {
        RollbackUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::with_capacity(n),
            components: n,
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        self.history.push(Some((ra, rb)));
    }

    pub fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
            self.components += 1;
        }
    }
}

/// Number of cycles of a permutation.
pub(crate) fn count_cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

pub(crate) fn same_cycle(perm: &[usize], x: usize, y: usize) -> bool {
    let mut z = perm[x];
    loop {
        if z == y {
            return true;
        }
        if z == x {
            return false;
        }
        z = perm[z];
    }
}
