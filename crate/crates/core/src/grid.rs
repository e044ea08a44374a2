//! Uniform grids with sorted buckets.

use alloc::vec::Vec;

use crate::geom::Site;

pub type CellKey = (i64, i64);

/// Sites bucketed by the cell of side `side` containing them, for a grid
/// with a vertex at `(ox, oy)`. Members are indices into the site slice
/// the grid was built from.
#[derive(Clone, Debug)]
pub struct Grid {
    pub side: f64,
    pub ox: f64,
    pub oy: f64,
    keys: Vec<CellKey>,
    start: Vec<usize>,
    items: Vec<usize>,
}

impl Grid {
    pub fn build(sites: &[Site], members: impl IntoIterator<Item = usize>, side: f64, ox: f64, oy: f64) -> Grid {
        let mut tagged: Vec<(CellKey, usize)> = members
            .into_iter()
            .map(|i| (key_of(sites[i].x, sites[i].y, side, ox, oy), i))
            .collect();
        tagged.sort_unstable();
        let mut keys = Vec::new();
        let mut start = Vec::new();
        let mut items = Vec::with_capacity(tagged.len());
        for (k, i) in tagged {
            if keys.last() != Some(&k) {
                keys.push(k);
                start.push(items.len());
            }
            items.push(i);
        }
        start.push(items.len());
        Grid {
            side,
            ox,
            oy,
            keys,
            start,
            items,
        }
    }

    pub fn key(&self, x: f64, y: f64) -> CellKey {
        key_of(x, y, self.side, self.ox, self.oy)
    }

    pub fn cell_count(&self) -> usize {
        self.keys.len()
    }

    /// The `i`-th nonempty cell (cells are sorted by key).
    pub fn cell(&self, i: usize) -> (CellKey, &[usize]) {
        (self.keys[i], &self.items[self.start[i]..self.start[i + 1]])
    }

    pub fn get(&self, k: CellKey) -> &[usize] {
        match self.keys.binary_search(&k) {
            Ok(i) => &self.items[self.start[i]..self.start[i + 1]],
            Err(_) => &[],
        }
    }

    /// Members of the `(2 rad + 1)^2` block of cells centered at `k`.
    pub fn block(&self, k: CellKey, rad: i64) -> impl Iterator<Item = usize> + '_ {
        (-rad..=rad).flat_map(move |dx| {
            (-rad..=rad).flat_map(move |dy| {
                self.get((k.0.saturating_add(dx), k.1.saturating_add(dy)))
                    .iter()
                    .copied()
            })
        })
    }
}

#[inline]
pub fn key_of(x: f64, y: f64, side: f64, ox: f64, oy: f64) -> CellKey {
    (
        libm::floor((x - ox) / side) as i64,
        libm::floor((y - oy) / side) as i64,
    )
}

/// The four grids of side `l` shifted by `l/2` in x, y and both.
pub fn shifted_grids(sites: &[Site], members: &[usize], l: f64) -> [Grid; 4] {
    let h = l / 2.0;
    [(0.0, 0.0), (h, 0.0), (0.0, h), (h, h)].map(|(ox, oy)| Grid::build(sites, members.iter().copied(), l, ox, oy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buckets_and_blocks() {
        let s: Vec<Site> = [(0.1, 0.1), (0.9, 0.2), (1.5, 0.5), (-0.5, -0.5), (2.5, 2.5)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Site::new(i, x, y, 0.1))
            .collect();
        let g = Grid::build(&s, 0..s.len(), 1.0, 0.0, 0.0);
        assert_eq!(g.get((0, 0)), &[0, 1]);
        assert_eq!(g.get((-1, -1)), &[3]);
        assert_eq!(g.get((5, 5)), &[] as &[usize]);
        let mut b: Vec<usize> = g.block((0, 0), 1).collect();
        b.sort();
        assert_eq!(b, vec![0, 1, 2, 3]);
        assert_eq!(g.cell_count(), 4);
    }
}
