//! Oriented cells: lattice cubes and simplices.
//!
//! A cube is the box `anchor + [0,1]^axes` in lattice units, oriented by
//! increasing axis order. A simplex is a strictly increasing list of vertex
//! ids, oriented by that order.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    pub anchor: Vec<i64>,
    pub axes: Vec<usize>,
}

impl Cube {
    pub fn new(anchor: Vec<i64>, mut axes: Vec<usize>) -> Result<Self> {
        axes.sort_unstable();
        if axes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DimensionMismatch(format!("repeated axis in {axes:?}")));
        }
        if axes.iter().any(|&a| a >= anchor.len()) {
            return Err(Error::DimensionMismatch(format!(
                "axis out of range for ambient dimension {}",
                anchor.len()
            )));
        }
        Ok(Cube { anchor, axes })
    }

    pub fn vertex(anchor: Vec<i64>) -> Self {
        Cube { anchor, axes: vec![] }
    }

    /// Top-dimensional cube anchored at `anchor`.
    pub fn top(anchor: Vec<i64>) -> Self {
        let axes = (0..anchor.len()).collect();
        Cube { anchor, axes }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn ambient(&self) -> usize {
        self.anchor.len()
    }

    pub fn spans(&self, axis: usize) -> bool {
        self.axes.binary_search(&axis).is_ok()
    }

    /// Codimension-one faces with incidence signs. For the axis in position
    /// `j` the front face carries `(-1)^j` and the back face `-(-1)^j`.
    pub fn faces(&self) -> Vec<(Cube, i64)> {
        let mut out = Vec::with_capacity(2 * self.axes.len());
        for (j, &axis) in self.axes.iter().enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let mut axes = self.axes.clone();
            axes.remove(j);
            let mut front = self.anchor.clone();
            front[axis] += 1;
            out.push((Cube { anchor: front, axes: axes.clone() }, sign));
            out.push((Cube { anchor: self.anchor.clone(), axes }, -sign));
        }
        out
    }

    /// All lattice vertices of the closed cube.
    pub fn vertices(&self) -> Vec<Vec<i64>> {
        let k = self.axes.len();
        (0..1usize << k)
            .map(|mask| {
                let mut v = self.anchor.clone();
                for (j, &axis) in self.axes.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        v[axis] += 1;
                    }
                }
                v
            })
            .collect()
    }

    /// All faces of every dimension, including the cube itself.
    pub fn closure(&self) -> Vec<Cube> {
        let k = self.axes.len();
        let mut out = Vec::with_capacity(3usize.pow(k as u32));
        // each spanned axis is kept, pinned low, or pinned high
        let total = 3usize.pow(k as u32);
        for mut code in 0..total {
            let mut anchor = self.anchor.clone();
            let mut axes = Vec::with_capacity(k);
            for &axis in &self.axes {
                match code % 3 {
                    0 => axes.push(axis),
                    1 => {}
                    _ => anchor[axis] += 1,
                }
                code /= 3;
            }
            out.push(Cube { anchor, axes });
        }
        out
    }

    /// Lattice-unit center, doubled so that it stays integral.
    pub fn doubled_center(&self) -> Vec<i64> {
        let mut c: Vec<i64> = self.anchor.iter().map(|a| 2 * a).collect();
        for &axis in &self.axes {
            c[axis] += 1;
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub vertices: Vec<usize>,
}

impl Simplex {
    /// Builds a simplex from vertex ids in any order; returns the sorted
    /// simplex and the sign of the sorting permutation, or `None` when a
    /// vertex repeats.
    pub fn oriented(mut vertices: Vec<usize>) -> Option<(Simplex, i64)> {
        let sign = permutation_sign(&mut vertices);
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex { vertices }, sign))
    }

    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        Simplex::oriented(vertices.clone())
            .map(|(s, _)| s)
            .ok_or_else(|| Error::DimensionMismatch(format!("repeated vertex in {vertices:?}")))
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Faces `(-1)^i [v_0 .. v̂_i .. v_k]`.
    pub fn faces(&self) -> Vec<(Simplex, i64)> {
        if self.vertices.len() < 2 {
            return vec![];
        }
        (0..self.vertices.len())
            .map(|i| {
                let mut v = self.vertices.clone();
                v.remove(i);
                (Simplex { vertices: v }, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// All nonempty faces including itself.
    pub fn closure(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        (1..1usize << n)
            .map(|mask| Simplex {
                vertices: (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.vertices[i])
                    .collect(),
            })
            .collect()
    }
}

/// Sorts in place (insertion sort) and returns the parity sign.
pub(crate) fn permutation_sign<T: Ord>(v: &mut [T]) -> i64 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Cube(Cube),
    Simplex(Simplex),
}

impl Cell {
    pub fn cube(anchor: Vec<i64>, axes: Vec<usize>) -> Cell {
        Cell::Cube(Cube::new(anchor, axes).expect("well-formed cube"))
    }

    pub fn simplex(vertices: Vec<usize>) -> Cell {
        Cell::Simplex(Simplex::new(vertices).expect("well-formed simplex"))
    }

    pub fn dim(&self) -> usize {
        match self {
            Cell::Cube(c) => c.dim(),
            Cell::Simplex(s) => s.dim(),
        }
    }

    /// Codimension-one faces with incidence signs (no periodic wrapping).
    pub fn faces(&self) -> Vec<(Cell, i64)> {
        match self {
            Cell::Cube(c) => c.faces().into_iter().map(|(f, s)| (Cell::Cube(f), s)).collect(),
            Cell::Simplex(x) => x.faces().into_iter().map(|(f, s)| (Cell::Simplex(f), s)).collect(),
        }
    }

    pub fn closure(&self) -> Vec<Cell> {
        match self {
            Cell::Cube(c) => c.closure().into_iter().map(Cell::Cube).collect(),
            Cell::Simplex(s) => s.closure().into_iter().map(Cell::Simplex).collect(),
        }
    }

    pub fn as_cube(&self) -> Option<&Cube> {
        match self {
            Cell::Cube(c) => Some(c),
            Cell::Simplex(_) => None,
        }
    }

    pub fn as_simplex(&self) -> Option<&Simplex> {
        match self {
            Cell::Simplex(s) => Some(s),
            Cell::Cube(_) => None,
        }
    }

    /// Text key used by the chain and complex file formats:
    /// `a0 a1 ..|x0 x1 ..` for cubes, `v0 v1 ..` for simplices.
    pub fn key(&self) -> String {
        self.to_string()
    }

    pub fn parse_key(s: &str) -> Result<Cell> {
        let bad = |m: &str| Error::parse(0, format!("bad cell key `{s}`: {m}"));
        let nums = |t: &str| -> Result<Vec<i64>> {
            t.split_whitespace()
                .map(|w| w.parse::<i64>().map_err(|_| bad("not an integer")))
                .collect()
        };
        if let Some((anchor, axes)) = s.split_once('|') {
            let anchor = nums(anchor)?;
            let axes = nums(axes)?;
            if anchor.is_empty() || axes.iter().any(|&a| a < 0) {
                return Err(bad("empty anchor or negative axis"));
            }
            let axes: Vec<usize> = axes.iter().map(|&a| a as usize).collect();
            if axes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("axes must be strictly increasing"));
            }
            let cube = Cube::new(anchor, axes).map_err(|e| bad(&e.to_string()))?;
            Ok(Cell::Cube(cube))
        } else {
            let v = nums(s)?;
            if v.is_empty() || v.iter().any(|&x| x < 0) {
                return Err(bad("empty or negative vertex list"));
            }
            let v: Vec<usize> = v.into_iter().map(|x| x as usize).collect();
            if v.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("vertex ids must be strictly increasing"));
            }
            Ok(Cell::Simplex(Simplex { vertices: v }))
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
        match self {
            Cell::Cube(c) => write!(
                f,
                "{}|{}",
                join(&mut c.anchor.iter().map(|x| x.to_string())),
                join(&mut c.axes.iter().map(|x| x.to_string()))
            ),
            Cell::Simplex(s) => write!(f, "{}", join(&mut s.vertices.iter().map(|x| x.to_string()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_faces_of_square_form_loop() {
        let sq = Cube::top(vec![0, 0]);
        let faces = sq.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.contains(&(Cube { anchor: vec![1, 0], axes: vec![1] }, 1)));
        assert!(faces.contains(&(Cube { anchor: vec![0, 0], axes: vec![1] }, -1)));
        assert!(faces.contains(&(Cube { anchor: vec![0, 1], axes: vec![0] }, -1)));
        assert!(faces.contains(&(Cube { anchor: vec![0, 0], axes: vec![0] }, 1)));
    }

    #[test]
    fn closure_counts() {
        assert_eq!(Cube::top(vec![0, 0, 0]).closure().len(), 27);
        assert_eq!(Simplex { vertices: vec![0, 1, 2] }.closure().len(), 7);
    }

    #[test]
    fn orientation_sign() {
        let (s, sign) = Simplex::oriented(vec![2, 0, 1]).unwrap();
        assert_eq!(s.vertices, vec![0, 1, 2]);
        assert_eq!(sign, 1);
        assert_eq!(Simplex::oriented(vec![1, 0]).unwrap().1, -1);
        assert!(Simplex::oriented(vec![1, 1]).is_none());
    }

    #[test]
    fn key_round_trip() {
        for c in [Cell::cube(vec![0, -3], vec![1]), Cell::cube(vec![2, 2], vec![]), Cell::simplex(vec![0, 4, 9])] {
            assert_eq!(Cell::parse_key(&c.key()).unwrap(), c);
        }
        assert!(Cell::parse_key("3 1 2").is_err());
        assert!(Cell::parse_key("0 0|1 1").is_err());
    }
}
