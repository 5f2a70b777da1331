//! Matrix files, classification reports and mesh export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classes::{
    decompose, is_full_dimensional, is_isocanted, is_ni, is_normal, is_sni, is_vni, IsocantedSpec, Placement,
};
use crate::combinatorics::{build_face_lattice, VertexLabel};
use crate::error::{Error, Result};
use crate::geometry::{isocanted_vertex_placed, RationalPoint};
use crate::rational::{format_decimal, format_rational, parse_rational, Rational};
use crate::tropical::{TropMatrix, TropScalar};

/// Default significant digits for decimals in mesh files.
pub const DEFAULT_PRECISION: usize = 12;

/// `{"size": n, "entries": [[...]]}` with entries as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub size: usize,
    pub entries: Vec<Vec<String>>,
}

fn parse_entry(v: &Value) -> Result<TropScalar> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(TropScalar::Finite(Rational::from_integer(i.into()))),
            None => Err(Error::Parse(format!("entry {n} is not an integer; use \"p/q\""))),
        },
        Value::String(s) => {
            let t = s.trim();
            match t {
                "-inf" => Ok(TropScalar::NegInf),
                "inf" | "+inf" => Err(Error::PositiveInfinity),
                _ => parse_rational(t).map(TropScalar::Finite),
            }
        }
        other => Err(Error::Parse(format!("unsupported entry {other}"))),
    }
}

fn format_entry(x: &TropScalar) -> String {
    match x {
        TropScalar::NegInf => "-inf".to_string(),
        TropScalar::Finite(r) => format_rational(r),
    }
}

/// Parses a matrix file. Entries may be JSON integers, `"p/q"` strings or
/// `"-inf"`.
pub fn parse_matrix_json(text: &str) -> Result<TropMatrix> {
    let root: Value = serde_json::from_str(text)?;
    let size =
        root.get("size").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing or invalid \"size\"".into()))?
            as usize;
    let rows = root
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"entries\" array".into()))?;
    if rows.len() != size {
        return Err(Error::NotSquare { rows: rows.len(), cols: size });
    }
    let parsed = rows
        .iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| Error::Parse("each row must be an array".into()))?;
            if row.len() != size {
                return Err(Error::NotSquare { rows: size, cols: row.len() });
            }
            row.iter().map(parse_entry).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TropMatrix::from_rows(parsed)
}

pub fn matrix_file(a: &TropMatrix) -> MatrixFile {
    MatrixFile { size: a.n(), entries: a.rows().map(|row| row.iter().map(format_entry).collect()).collect() }
}

pub fn matrix_to_json(a: &TropMatrix) -> String {
    serde_json::to_string_pretty(&matrix_file(a)).expect("plain data serializes")
}

fn string_rows(a: &TropMatrix) -> Vec<Vec<String>> {
    matrix_file(a).entries
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub lengths: Vec<String>,
    pub shift: Vec<String>,
    pub box_matrix: Vec<Vec<String>>,
    pub perturbation: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub size: usize,
    pub normal: bool,
    pub ni: bool,
    pub vni: bool,
    pub sni: bool,
    pub full_dimensional: bool,
    pub decomposition: Option<DecompositionReport>,
    pub decomposition_error: Option<String>,
    /// The cant `a` when the polytope is isocanted.
    pub isocanted: Option<String>,
}

pub fn classify(a: &TropMatrix) -> ClassifyReport {
    let (decomposition, decomposition_error) = match decompose(a) {
        Ok(dec) => (
            Some(DecompositionReport {
                lengths: dec.lengths.iter().map(format_rational).collect(),
                shift: dec.shift.iter().map(format_rational).collect(),
                box_matrix: string_rows(&dec.box_matrix),
                perturbation: dec.perturbation.rows().map(|r| r.iter().map(format_rational).collect()).collect(),
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let isocanted = is_isocanted(a).ok().flatten().map(|c| format_rational(&c));
    ClassifyReport {
        size: a.n(),
        normal: is_normal(a),
        ni: is_ni(a),
        vni: is_vni(a),
        sni: is_sni(a),
        full_dimensional: is_full_dimensional(a),
        decomposition,
        decomposition_error,
        isocanted,
    }
}

impl ClassifyReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "size              {}", self.size);
        let _ = writeln!(out, "normal            {}", yn(self.normal));
        let _ = writeln!(out, "NI                {}", yn(self.ni));
        let _ = writeln!(out, "VNI               {}", yn(self.vni));
        let _ = writeln!(out, "SNI               {}", yn(self.sni));
        let _ = writeln!(out, "full-dimensional  {}", yn(self.full_dimensional));
        match &self.decomposition {
            Some(dec) => {
                let _ = writeln!(out, "box lengths       {}", dec.lengths.join(" "));
                let _ = writeln!(out, "box shift         {}", dec.shift.join(" "));
            }
            None => {
                let _ = writeln!(out, "decomposition     {}", self.decomposition_error.as_deref().unwrap_or("-"));
            }
        }
        let _ = writeln!(
            out,
            "isocanted         {}",
            self.isocanted.as_ref().map_or("none".to_string(), |a| format!("a={a}"))
        );
        out
    }
}

/// RGBA by label length: generators blue, then yellow, magenta, green.
pub fn length_color(len: usize) -> [f32; 4] {
    match len {
        1 => [0.0, 0.0, 1.0, 1.0],
        2 => [1.0, 1.0, 0.0, 1.0],
        3 => [1.0, 0.0, 1.0, 1.0],
        4 => [0.0, 1.0, 0.0, 1.0],
        _ => [0.5, 0.5, 0.5, 1.0],
    }
}

pub fn color_name(len: usize) -> &'static str {
    match len {
        1 => "blue",
        2 => "yellow",
        3 => "magenta",
        4 => "green",
        _ => "grey",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeshVertex {
    pub label: VertexLabel,
    pub point: RationalPoint,
}

/// Vertices and outward-oriented quadrilateral faces of an isocanted
/// 3-polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeshExport {
    pub precision: usize,
    pub vertices: Vec<MeshVertex>,
    pub faces: Vec<[usize; 4]>,
}

fn cross(u: &[Rational], v: &[Rational]) -> [Rational; 3] {
    [&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn build_mesh(spec: &IsocantedSpec, placement: Placement, precision: usize) -> Result<MeshExport> {
    if spec.d() != 3 {
        return Err(Error::WrongDimension { d: spec.d(), expected: 3 });
    }
    if precision == 0 {
        return Err(Error::Parse("precision must be positive".into()));
    }
    let labels = VertexLabel::all(3)?;
    let vertices: Vec<MeshVertex> = labels
        .iter()
        .map(|w| Ok(MeshVertex { label: *w, point: isocanted_vertex_placed(spec, w, placement)? }))
        .collect::<Result<_>>()?;
    let index: BTreeMap<VertexLabel, usize> = labels.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let n = Rational::from_integer((vertices.len() as i64).into());
    let centre: Vec<Rational> =
        (0..3).map(|k| vertices.iter().map(|v| v.point.coords()[k].clone()).sum::<Rational>() / &n).collect();

    let lattice = build_face_lattice(3)?;
    let mut faces = Vec::new();
    for f in lattice.facets() {
        let x = f.bottom().bits();
        let free: Vec<u64> = (0..4).map(|k| 1u64 << k).filter(|b| f.top().bits() & b != 0 && x & b == 0).collect();
        let (p, q) = (free[0], free[1]);
        let cycle = [x, x | p, x | p | q, x | q];
        let mut quad = cycle.map(|bits| index[&VertexLabel::from_bits(3, bits).expect("interval member")]);
        let pts: Vec<&[Rational]> = quad.iter().map(|&i| vertices[i].point.coords()).collect();
        let e1: Vec<Rational> = (0..3).map(|k| &pts[1][k] - &pts[0][k]).collect();
        let e2: Vec<Rational> = (0..3).map(|k| &pts[2][k] - &pts[0][k]).collect();
        let normal = cross(&e1, &e2);
        let outward: Vec<Rational> = (0..3).map(|k| &pts[0][k] - &centre[k]).collect();
        if dot(&normal, &outward).is_negative() {
            quad.reverse();
        }
        faces.push(quad);
    }
    Ok(MeshExport { precision, vertices, faces })
}

impl MeshExport {
    fn coords(&self, v: &MeshVertex) -> Vec<String> {
        v.point.coords().iter().map(|c| format_decimal(c, self.precision)).collect()
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = std::collections::BTreeSet::new();
        for f in &self.faces {
            for k in 0..4 {
                let (a, b) = (f[k], f[(k + 1) % 4]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// Number of vertices of each label length.
    pub fn color_classes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(v.label.len()).or_insert(0) += 1;
        }
        out
    }

    /// COFF: `x y z r g b a` per vertex, `4 i j k l` per face.
    pub fn to_off(&self) -> String {
        let mut out = String::from("COFF\n");
        let _ = writeln!(out, "{} {} {}", self.vertices.len(), self.faces.len(), self.edge_count());
        for v in &self.vertices {
            let c = length_color(v.label.len());
            let _ = writeln!(out, "{} {} {} {} {}", self.coords(v).join(" "), c[0], c[1], c[2], c[3]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "4 {} {} {} {}", f[0], f[1], f[2], f[3]);
        }
        out
    }

    /// OBJ with the label and colour of each vertex in a comment.
    pub fn to_obj(&self) -> String {
        let mut out = String::from("# isocanted 3-polytope\n");
        for v in &self.vertices {
            let _ = writeln!(out, "# vertex {} length {} color {}", v.label, v.label.len(), color_name(v.label.len()));
            let _ = writeln!(out, "v {}", self.coords(v).join(" "));
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
        }
        out
    }
}

/// Contents of an OFF/COFF file as read back.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedOff {
    pub coords: Vec<Vec<String>>,
    pub colors: Vec<Vec<f32>>,
    pub faces: Vec<Vec<usize>>,
    pub edges: usize,
}

impl ParsedOff {
    /// Vertex counts per distinct colour.
    pub fn color_class_sizes(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for c in &self.colors {
            let key = c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }
}

pub fn parse_off(text: &str) -> Result<ParsedOff> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty OFF file".into()))?;
    let colored = match header {
        "COFF" => true,
        "OFF" => false,
        other => return Err(Error::Parse(format!("bad OFF header {other:?}"))),
    };
    let counts: Vec<usize> = lines
        .next()
        .ok_or_else(|| Error::Parse("missing counts line".into()))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad count {t:?}"))))
        .collect::<Result<_>>()?;
    let [nv, nf, ne] = counts[..] else {
        return Err(Error::Parse("counts line needs three numbers".into()));
    };
    let mut coords = Vec::with_capacity(nv);
    let mut colors = Vec::with_capacity(nv);
    for _ in 0..nv {
        let line = lines.next().ok_or_else(|| Error::Parse("missing vertex line".into()))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let want = if colored { 7 } else { 3 };
        if tokens.len() != want {
            return Err(Error::Parse(format!("vertex line {line:?} has {} fields, expected {want}", tokens.len())));
        }
        for t in &tokens[..3] {
            t.parse::<f64>().map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))?;
        }
        coords.push(tokens[..3].iter().map(|t| t.to_string()).collect());
        if colored {
            colors.push(
                tokens[3..]
                    .iter()
                    .map(|t| t.parse::<f32>().map_err(|_| Error::Parse(format!("bad colour {t:?}"))))
                    .collect::<Result<_>>()?,
            );
        }
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let line = lines.next().ok_or_else(|| Error::Parse("missing face line".into()))?;
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad face index {t:?}"))))
            .collect::<Result<_>>()?;
        let (&k, idx) = nums.split_first().ok_or_else(|| Error::Parse("empty face line".into()))?;
        if idx.len() != k || idx.iter().any(|&i| i >= nv) {
            return Err(Error::Parse(format!("bad face line {line:?}")));
        }
        faces.push(idx.to_vec());
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing data after faces".into()));
    }
    Ok(ParsedOff { coords, colors, faces, edges: ne })
}

/// Exact value of a decimal string such as `-1.25`.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() || !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad decimal {s:?}")));
    }
    let digits = format!("{int_part}{frac}");
    let numer: num_bigint::BigInt = if digits.is_empty() { Zero::zero() } else { digits.parse().expect("digits") };
    let denom = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}
