//! Plain-text complex (`.cx`) and chain (`.chain`) files.
//!
//! Both formats are line based; `#` starts a comment. Writers emit every cell
//! in canonical order; readers take the face closure of whatever is listed.
//!
//! ```text
//! complex cubical n=2 edge=1/4 offset=0,0 lo=-5,-5 hi=5,5
//! cell k=2 0 0|0 1
//! cell k=1 0 0|0
//!
//! complex simplicial weights=unit
//! vertex 0 0
//! vertex 1 0
//! cell 0 1
//! ```
//!
//! A periodic grid adds `period=3,-` (`-` for a non-periodic axis). A chain
//! file is `chain k=<dim>` followed by `<coefficient> <cell-key>` lines.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::cell::{Cell, Cube, Simplex};
use crate::chain::Chain;
use crate::complex::{CellComplex, Geometry, SimplexWeights};
use crate::error::{Error, Result};
use crate::grid::CubicalGrid;
use crate::rational::{self, Q};

fn csv<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_complex(x: &CellComplex) -> String {
    let mut out = String::new();
    match x.geometry() {
        Geometry::Cubical(g) => {
            let offset: Vec<String> = g.offset.iter().map(rational::fmt).collect();
            out.push_str(&format!(
                "complex cubical n={} edge={} offset={} lo={} hi={}",
                g.dim(),
                rational::fmt(&g.edge),
                offset.join(","),
                csv(&g.lo),
                csv(&g.hi)
            ));
            if g.is_periodic() {
                let p: Vec<String> = g.period.iter().map(|p| p.map_or("-".to_string(), |v| v.to_string())).collect();
                out.push_str(&format!(" period={}", p.join(",")));
            }
            out.push('\n');
        }
        Geometry::Simplicial(coords) => {
            let w = match x.weight_scheme() {
                SimplexWeights::Unit => "unit",
                SimplexWeights::Euclidean => "euclidean",
            };
            out.push_str(&format!("complex simplicial weights={w}\n"));
            for p in coords {
                out.push_str(&format!("vertex {}\n", p.iter().map(rational::fmt).collect::<Vec<_>>().join(" ")));
            }
        }
    }
    for c in x.all_cells() {
        match c {
            Cell::Cube(_) => out.push_str(&format!("cell k={} {}\n", c.dim(), c.key())),
            Cell::Simplex(_) => out.push_str(&format!("cell {}\n", c.key())),
        }
    }
    out
}

fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn rats(line: usize, s: &str) -> Result<Vec<Q>> {
    s.split_whitespace()
        .map(|w| rational::parse(w).ok_or_else(|| Error::parse(line, format!("expected a rational, got `{w}`"))))
        .collect()
}

fn cell_at(line: usize, s: &str) -> Result<Cell> {
    Cell::parse_key(s).map_err(|e| match e {
        Error::Parse { msg, .. } => Error::parse(line, msg),
        e => e,
    })
}

/// `key=value` fields of a header line.
fn fields(line: usize, s: &str) -> Result<Vec<(&str, &str)>> {
    s.split_whitespace().map(|w| w.split_once('=').ok_or_else(|| Error::parse(line, format!("expected key=value, got `{w}`")))).collect()
}

fn list<T>(line: usize, s: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    s.split(',').map(|w| f(w.trim()).ok_or_else(|| Error::parse(line, format!("bad list entry `{w}`")))).collect()
}

/// A cell line body: `k=<dim> <key>` for cubes, `<v0 .. vk>` for simplices.
fn cell_line(line: usize, rest: &str) -> Result<Cell> {
    let rest = rest.trim();
    match rest.strip_prefix("k=") {
        Some(r) => {
            let (k, key) = r.split_once(char::is_whitespace).ok_or_else(|| Error::parse(line, "expected `k=<dim> <cell>`"))?;
            let k: usize = k.parse().map_err(|_| Error::parse(line, format!("bad dimension `{k}`")))?;
            let c = cell_at(line, key.trim())?;
            if c.dim() != k {
                return Err(Error::parse(line, format!("cell {c} is not {k}-dimensional")));
            }
            Ok(c)
        }
        None => cell_at(line, rest),
    }
}

pub fn parse_complex(src: &str) -> Result<CellComplex> {
    let mut it = lines(src);
    let (l0, head) = it.next().ok_or_else(|| Error::parse(1, "empty complex file"))?;
    let mut words = head.splitn(3, char::is_whitespace);
    if words.next() != Some("complex") {
        return Err(Error::parse(l0, "expected `complex cubical ...` or `complex simplicial ...`"));
    }
    let kind = words.next().unwrap_or("");
    let header = fields(l0, words.next().unwrap_or(""))?;
    let mut coords: Vec<Vec<Q>> = vec![];
    let mut cells: Vec<(usize, Cell)> = vec![];
    for (ln, l) in it {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match key {
            "cell" => cells.push((ln, cell_line(ln, rest)?)),
            "vertex" if kind == "simplicial" => coords.push(rats(ln, rest)?),
            _ => return Err(Error::parse(ln, format!("unexpected `{key}` in a {kind} complex"))),
        }
    }
    match kind {
        "cubical" => {
            let (mut n, mut edge, mut offset, mut lo, mut hi, mut period) = (None, None, None, None, None, None);
            for (k, v) in header {
                match k {
                    "n" => n = Some(v.parse::<usize>().map_err(|_| Error::parse(l0, format!("bad n `{v}`")))?),
                    "edge" => edge = Some(rational::parse(v).ok_or_else(|| Error::parse(l0, format!("bad edge `{v}`")))?),
                    "offset" => offset = Some(list(l0, v, rational::parse)?),
                    "lo" => lo = Some(list(l0, v, |w| w.parse().ok())?),
                    "hi" => hi = Some(list(l0, v, |w| w.parse().ok())?),
                    "period" => period = Some(list(l0, v, |w| if w == "-" { Some(None) } else { w.parse().ok().map(Some) })?),
                    _ => return Err(Error::parse(l0, format!("unknown header field `{k}`"))),
                }
            }
            let miss = |f: &str| Error::parse(l0, format!("cubical complex is missing `{f}`"));
            let n = n.ok_or_else(|| miss("n"))?;
            let offset = offset.unwrap_or_else(|| vec![rational::int(0); n]);
            let (lo, hi): (Vec<i64>, Vec<i64>) = match (lo, hi) {
                (Some(lo), Some(hi)) => (lo, hi),
                (None, None) => bounding_box(n, &cells).ok_or_else(|| miss("lo/hi"))?,
                _ => return Err(miss("lo/hi")),
            };
            if [offset.len(), lo.len(), hi.len()].iter().any(|&l| l != n) {
                return Err(Error::parse(l0, format!("header vectors must have length n={n}")));
            }
            let mut g = CubicalGrid::new(edge.ok_or_else(|| miss("edge"))?, offset, lo, hi)?;
            if let Some(p) = period {
                if p.len() != n {
                    return Err(Error::parse(l0, "period has the wrong length"));
                }
                g.period = p;
            }
            let cubes = cells
                .into_iter()
                .map(|(ln, c)| match c {
                    Cell::Cube(c) if c.ambient() == n => Ok(c),
                    _ => Err(Error::parse(ln, format!("expected a cube in R^{n}"))),
                })
                .collect::<Result<Vec<Cube>>>()?;
            CellComplex::cubical_closure(g, cubes)
        }
        "simplicial" => {
            let mut weights = SimplexWeights::Unit;
            for (k, v) in header {
                weights = match (k, v) {
                    ("weights", "unit") => SimplexWeights::Unit,
                    ("weights", "euclidean") => SimplexWeights::Euclidean,
                    _ => return Err(Error::parse(l0, format!("unknown header field `{k}={v}`"))),
                };
            }
            let simplices = cells
                .into_iter()
                .map(|(ln, c)| match c {
                    Cell::Simplex(s) => Ok(s),
                    _ => Err(Error::parse(ln, "expected a simplex")),
                })
                .collect::<Result<Vec<Simplex>>>()?;
            CellComplex::simplicial(coords, simplices, weights)
        }
        other => Err(Error::parse(l0, format!("unknown complex kind `{other}`"))),
    }
}

/// Smallest lattice box containing the listed cubes.
fn bounding_box(n: usize, cells: &[(usize, Cell)]) -> Option<(Vec<i64>, Vec<i64>)> {
    let cubes: Vec<&Cube> = cells.iter().filter_map(|(_, c)| c.as_cube()).filter(|c| c.ambient() == n).collect();
    if cubes.is_empty() {
        return None;
    }
    let lo: Vec<i64> = (0..n).map(|i| cubes.iter().map(|c| c.anchor[i]).min().unwrap()).collect();
    let hi = (0..n).map(|i| cubes.iter().map(|c| c.anchor[i] + 1).max().unwrap().max(lo[i] + 1)).collect();
    Some((lo, hi))
}

pub fn write_chain(c: &Chain) -> String {
    let mut out = format!("chain k={}\n", c.dim());
    for (cell, k) in c.iter() {
        out.push_str(&format!("{k} {}\n", cell.key()));
    }
    out
}

pub fn parse_chain(src: &str) -> Result<Chain> {
    let mut it = lines(src);
    let (l0, head) = it.next().ok_or_else(|| Error::parse(1, "empty chain file"))?;
    let dim: usize = head
        .strip_prefix("chain")
        .map(str::trim)
        .and_then(|d| d.strip_prefix("k=").unwrap_or(d).parse().ok())
        .ok_or_else(|| Error::parse(l0, "expected `chain k=<dimension>`"))?;
    let mut terms = vec![];
    for (ln, l) in it {
        let (k, key) = l.split_once(char::is_whitespace).ok_or_else(|| Error::parse(ln, "expected `coefficient cell`"))?;
        let k: i64 = k.parse().map_err(|_| Error::parse(ln, format!("bad coefficient `{k}`")))?;
        let cell = cell_at(ln, key.trim())?;
        if cell.dim() != dim {
            return Err(Error::parse(ln, format!("cell {cell} is not {dim}-dimensional")));
        }
        terms.push((cell, k));
    }
    Chain::from_terms(dim, terms)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::parse(0, format!("{}: {e}", path.display())))
}

pub fn read_complex(path: &Path) -> Result<CellComplex> {
    parse_complex(&read(path)?)
}

pub fn read_chain(path: &Path) -> Result<Chain> {
    parse_chain(&read(path)?)
}

/// Writes `contents` to a sibling temporary file and renames it into place,
/// so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn complexes_round_trip() {
        let mut all: Vec<CellComplex> = corpus::homology_corpus().into_iter().map(|(_, x, _)| x).collect();
        all.push(corpus::torus(3));
        for x in all {
            let text = write_complex(&x);
            let back = parse_complex(&text).unwrap();
            assert_eq!(back, x, "{text}");
            assert_eq!(write_complex(&back), text);
        }
    }

    #[test]
    fn chains_round_trip() {
        let x = corpus::holed_box(4, 1, 2);
        let c = x.boundary(&x.full_chain(2)).unwrap().scale(-3);
        let text = write_chain(&c);
        assert!(text.starts_with("chain k=1\n"));
        assert_eq!(parse_chain(&text).unwrap(), c);
        assert_eq!(parse_chain("chain k=0\n").unwrap(), Chain::zero(0));
        assert_eq!(parse_chain("chain 0\n").unwrap(), Chain::zero(0));
        let x = parse_complex("complex cubical n=2 edge=1/2\ncell k=2 1 1|0 1\n").unwrap();
        assert_eq!((x.count(0), x.count(2)), (4, 1));
        assert_eq!(x.grid().unwrap().lo, vec![1, 1]);
        let s = parse_chain("# a path\nchain k=1\n2 0 1\n-1 1 2 # tail\n").unwrap();
        assert_eq!(s.coeff(&Cell::simplex(vec![1, 2])), -1);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_chain("chain k=1\n1 0 1\nx 1 2\n").unwrap_err();
        assert_eq!(e, Error::parse(3, "bad coefficient `x`"));
        let e = parse_chain("chain k=1\n1 0 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_complex("complex cubical n=1 edge=1 lo=0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        let e = parse_complex("complex simplicial\nvertex 0 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn atomic_write() {
        let dir = std::env::temp_dir().join(format!("semichain-io-{}", std::process::id()));
        let p = dir.join("a.chain");
        write_atomic(&p, "chain k=0\n").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "chain k=0\n");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
