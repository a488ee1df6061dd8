//! PLY reader/writer supporting ASCII and binary-little-endian payloads.
//!
//! The vertex element carries positions, optional normals, an optional
//! per-vertex scalar `quality` (used for curvature values), and optional
//! 8-bit RGB. Unknown properties and elements are skipped with a warning
//! count rather than an error.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::Vec3;

/// In-memory PLY contents.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlyPayload {
    pub positions: Vec<Vec3>,
    pub normals: Option<Vec<Vec3>>,
    /// Per-vertex scalar, stored in the conventional `quality` property.
    pub quality: Option<Vec<f64>>,
    pub colors: Option<Vec<[u8; 3]>>,
    pub faces: Option<Vec<[usize; 3]>>,
    /// Elements/properties present in the file but not understood.
    pub skipped: usize,
}

/// On-disk encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlyFormat {
    Ascii,
    BinaryLittleEndian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scalar {
    I8,
    U8,
    I16,
    U16,
    I32,
    U32,
    F32,
    F64,
}

impl Scalar {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "char" | "int8" => Scalar::I8,
            "uchar" | "uint8" => Scalar::U8,
            "short" | "int16" => Scalar::I16,
            "ushort" | "uint16" => Scalar::U16,
            "int" | "int32" => Scalar::I32,
            "uint" | "uint32" => Scalar::U32,
            "float" | "float32" => Scalar::F32,
            "double" | "float64" => Scalar::F64,
            _ => return None,
        })
    }

    fn size(self) -> usize {
        match self {
            Scalar::I8 | Scalar::U8 => 1,
            Scalar::I16 | Scalar::U16 => 2,
            Scalar::I32 | Scalar::U32 | Scalar::F32 => 4,
            Scalar::F64 => 8,
        }
    }

    fn read_binary(self, r: &mut impl Read) -> std::io::Result<f64> {
        let mut buf = [0u8; 8];
        let n = self.size();
        r.read_exact(&mut buf[..n])?;
        Ok(match self {
            Scalar::I8 => buf[0] as i8 as f64,
            Scalar::U8 => buf[0] as f64,
            Scalar::I16 => i16::from_le_bytes([buf[0], buf[1]]) as f64,
            Scalar::U16 => u16::from_le_bytes([buf[0], buf[1]]) as f64,
            Scalar::I32 => i32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]) as f64,
            Scalar::U32 => u32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]) as f64,
            Scalar::F32 => f32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]) as f64,
            Scalar::F64 => f64::from_le_bytes(buf),
        })
    }
}

#[derive(Debug, Clone)]
enum Property {
    Scalar {
        kind: Scalar,
        name: String,
    },
    List {
        count: Scalar,
        item: Scalar,
        name: String,
    },
}

#[derive(Debug, Clone)]
struct ElementDecl {
    name: String,
    count: usize,
    properties: Vec<Property>,
}

pub fn read_ply(path: impl AsRef<Path>) -> Result<PlyPayload> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);

    // --- header ---
    let mut line = String::new();
    let mut line_no = 0usize;
    let mut read_line = |reader: &mut BufReader<File>, line: &mut String| -> Result<usize> {
        line.clear();
        line_no += 1;
        let n = reader.read_line(line)?;
        Ok(n)
    };
    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    read_line(&mut reader, &mut line)?;
    if line.trim() != "ply" {
        return Err(parse_err(1, "missing 'ply' magic".into()));
    }
    let mut format = None;
    let mut elements: Vec<ElementDecl> = Vec::new();
    loop {
        if read_line(&mut reader, &mut line)? == 0 {
            return Err(parse_err(0, "unexpected end of header".into()));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["comment", ..] | [] => {}
            ["format", kind, _version] => {
                format = Some(match *kind {
                    "ascii" => PlyFormat::Ascii,
                    "binary_little_endian" => PlyFormat::BinaryLittleEndian,
                    other => {
                        return Err(parse_err(0, format!("unsupported format '{other}'")));
                    }
                });
            }
            ["element", name, count] => {
                let count: usize = count
                    .parse()
                    .map_err(|e| parse_err(0, format!("bad element count: {e}")))?;
                elements.push(ElementDecl {
                    name: (*name).into(),
                    count,
                    properties: Vec::new(),
                });
            }
            ["property", "list", count, item, name] => {
                let decl = elements
                    .last_mut()
                    .ok_or_else(|| parse_err(0, "property before element".into()))?;
                let count = Scalar::parse(count)
                    .ok_or_else(|| parse_err(0, format!("unknown type '{count}'")))?;
                let item = Scalar::parse(item)
                    .ok_or_else(|| parse_err(0, format!("unknown type '{item}'")))?;
                decl.properties.push(Property::List {
                    count,
                    item,
                    name: (*name).into(),
                });
            }
            ["property", kind, name] => {
                let decl = elements
                    .last_mut()
                    .ok_or_else(|| parse_err(0, "property before element".into()))?;
                let kind = Scalar::parse(kind)
                    .ok_or_else(|| parse_err(0, format!("unknown type '{kind}'")))?;
                decl.properties.push(Property::Scalar {
                    kind,
                    name: (*name).into(),
                });
            }
            ["end_header"] => break,
            other => {
                return Err(parse_err(0, format!("unrecognized header line {other:?}")));
            }
        }
    }
    let format = format.ok_or_else(|| parse_err(0, "header missing 'format'".into()))?;

    // --- body ---
    let mut payload = PlyPayload::default();
    for decl in &elements {
        match decl.name.as_str() {
            "vertex" => read_vertices(&mut reader, format, decl, &mut payload)?,
            "face" => read_faces(&mut reader, format, decl, &mut payload)?,
            _ => {
                payload.skipped += 1;
                skip_element(&mut reader, format, decl)?;
            }
        }
    }
    Ok(payload)
}

fn ascii_row(reader: &mut impl BufRead) -> Result<Vec<String>> {
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Err(Error::Parse {
                line: 0,
                message: "unexpected end of data".into(),
            });
        }
        if !line.trim().is_empty() {
            return Ok(line.split_whitespace().map(str::to_string).collect());
        }
    }
}

fn read_vertices(
    reader: &mut BufReader<File>,
    format: PlyFormat,
    decl: &ElementDecl,
    payload: &mut PlyPayload,
) -> Result<()> {
    let index_of = |name: &str| -> Option<usize> {
        decl.properties.iter().position(|p| match p {
            Property::Scalar { name: n, .. } => n == name,
            Property::List { .. } => false,
        })
    };
    let ix = index_of("x");
    let iy = index_of("y");
    let iz = index_of("z");
    let (ix, iy, iz) = match (ix, iy, iz) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::Parse {
                line: 0,
                message: "vertex element lacks x/y/z".into(),
            })
        }
    };
    let inx = index_of("nx").zip(index_of("ny")).zip(index_of("nz"));
    let iq = index_of("quality");
    let irgb = index_of("red").zip(index_of("green")).zip(index_of("blue"));

    let has_unknown = decl.properties.iter().any(|p| match p {
        Property::Scalar { name, .. } => !matches!(
            name.as_str(),
            "x" | "y" | "z" | "nx" | "ny" | "nz" | "quality" | "red" | "green" | "blue"
        ),
        Property::List { .. } => true,
    });
    if has_unknown {
        payload.skipped += 1;
    }

    let mut positions = Vec::with_capacity(decl.count);
    let mut normals = inx.map(|_| Vec::with_capacity(decl.count));
    let mut quality = iq.map(|_| Vec::with_capacity(decl.count));
    let mut colors = irgb.map(|_| Vec::with_capacity(decl.count));

    for _ in 0..decl.count {
        let values = read_row(reader, format, decl)?;
        positions.push(Vec3::new(values[ix], values[iy], values[iz]));
        if let (Some(((a, b), c)), Some(out)) = (inx, normals.as_mut()) {
            out.push(Vec3::new(values[a], values[b], values[c]));
        }
        if let (Some(i), Some(out)) = (iq, quality.as_mut()) {
            out.push(values[i]);
        }
        if let (Some(((r, g), b)), Some(out)) = (irgb, colors.as_mut()) {
            out.push([values[r] as u8, values[g] as u8, values[b] as u8]);
        }
    }
    payload.positions = positions;
    payload.normals = normals;
    payload.quality = quality;
    payload.colors = colors;
    Ok(())
}

/// Read one element row's scalar property values (lists unsupported here).
fn read_row(
    reader: &mut BufReader<File>,
    format: PlyFormat,
    decl: &ElementDecl,
) -> Result<Vec<f64>> {
    let mut values = vec![0.0; decl.properties.len()];
    match format {
        PlyFormat::Ascii => {
            let tokens = ascii_row(reader)?;
            let mut cursor = 0usize;
            for (slot, prop) in values.iter_mut().zip(&decl.properties) {
                match prop {
                    Property::Scalar { .. } => {
                        let token = tokens.get(cursor).ok_or_else(|| Error::Parse {
                            line: 0,
                            message: "row has too few values".into(),
                        })?;
                        *slot = token.parse().map_err(|e| Error::Parse {
                            line: 0,
                            message: format!("bad value '{token}': {e}"),
                        })?;
                        cursor += 1;
                    }
                    Property::List { .. } => {
                        // consume the list without storing it
                        let n: usize =
                            tokens
                                .get(cursor)
                                .and_then(|t| t.parse().ok())
                                .ok_or_else(|| Error::Parse {
                                    line: 0,
                                    message: "bad list count".into(),
                                })?;
                        cursor += 1 + n;
                    }
                }
            }
            Ok(values)
        }
        PlyFormat::BinaryLittleEndian => {
            for (slot, prop) in values.iter_mut().zip(&decl.properties) {
                match prop {
                    Property::Scalar { kind, .. } => *slot = kind.read_binary(reader)?,
                    Property::List { count, item, .. } => {
                        let n = count.read_binary(reader)? as usize;
                        for _ in 0..n {
                            item.read_binary(reader)?;
                        }
                    }
                }
            }
            Ok(values)
        }
    }
}

fn read_faces(
    reader: &mut BufReader<File>,
    format: PlyFormat,
    decl: &ElementDecl,
    payload: &mut PlyPayload,
) -> Result<()> {
    let list_pos = decl.properties.iter().position(|p| {
        matches!(p, Property::List { name, .. } if name == "vertex_indices" || name == "vertex_index")
    });
    let Some(list_pos) = list_pos else {
        payload.skipped += 1;
        skip_element(reader, format, decl)?;
        return Ok(());
    };
    let mut faces = Vec::with_capacity(decl.count);
    for _ in 0..decl.count {
        let corners = match format {
            PlyFormat::Ascii => {
                let tokens = ascii_row(reader)?;
                let mut cursor = 0usize;
                let mut corners = Vec::new();
                for (i, prop) in decl.properties.iter().enumerate() {
                    match prop {
                        Property::Scalar { .. } => cursor += 1,
                        Property::List { .. } => {
                            let n: usize = tokens
                                .get(cursor)
                                .and_then(|t| t.parse().ok())
                                .ok_or_else(|| Error::Parse {
                                    line: 0,
                                    message: "bad face list count".into(),
                                })?;
                            if i == list_pos {
                                for t in &tokens[cursor + 1..cursor + 1 + n] {
                                    corners.push(t.parse::<usize>().map_err(|e| Error::Parse {
                                        line: 0,
                                        message: format!("bad face index: {e}"),
                                    })?);
                                }
                            }
                            cursor += 1 + n;
                        }
                    }
                }
                corners
            }
            PlyFormat::BinaryLittleEndian => {
                let mut corners = Vec::new();
                for (i, prop) in decl.properties.iter().enumerate() {
                    match prop {
                        Property::Scalar { kind, .. } => {
                            kind.read_binary(reader)?;
                        }
                        Property::List { count, item, .. } => {
                            let n = count.read_binary(reader)? as usize;
                            for _ in 0..n {
                                let v = item.read_binary(reader)?;
                                if i == list_pos {
                                    corners.push(v as usize);
                                }
                            }
                        }
                    }
                }
                corners
            }
        };
        if corners.len() < 3 {
            return Err(Error::Parse {
                line: 0,
                message: format!("face with {} corners", corners.len()),
            });
        }
        for k in 1..corners.len() - 1 {
            faces.push([corners[0], corners[k], corners[k + 1]]);
        }
    }
    payload.faces = Some(faces);
    Ok(())
}

fn skip_element(reader: &mut BufReader<File>, format: PlyFormat, decl: &ElementDecl) -> Result<()> {
    for _ in 0..decl.count {
        read_row(reader, format, decl)?;
    }
    Ok(())
}

pub fn write_ply(path: impl AsRef<Path>, payload: &PlyPayload, format: PlyFormat) -> Result<()> {
    let n = payload.positions.len();
    for (what, len) in [
        ("normals", payload.normals.as_ref().map(Vec::len)),
        ("quality", payload.quality.as_ref().map(Vec::len)),
        ("colors", payload.colors.as_ref().map(Vec::len)),
    ] {
        if let Some(len) = len {
            if len != n {
                return Err(Error::SizeMismatch {
                    what: match what {
                        "normals" => "ply normals",
                        "quality" => "ply quality",
                        _ => "ply colors",
                    },
                    expected: n,
                    actual: len,
                });
            }
        }
    }

    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(w, "ply")?;
    writeln!(
        w,
        "format {} 1.0",
        match format {
            PlyFormat::Ascii => "ascii",
            PlyFormat::BinaryLittleEndian => "binary_little_endian",
        }
    )?;
    writeln!(w, "element vertex {n}")?;
    writeln!(w, "property double x")?;
    writeln!(w, "property double y")?;
    writeln!(w, "property double z")?;
    if payload.normals.is_some() {
        writeln!(w, "property double nx")?;
        writeln!(w, "property double ny")?;
        writeln!(w, "property double nz")?;
    }
    if payload.quality.is_some() {
        writeln!(w, "property double quality")?;
    }
    if payload.colors.is_some() {
        writeln!(w, "property uchar red")?;
        writeln!(w, "property uchar green")?;
        writeln!(w, "property uchar blue")?;
    }
    if let Some(faces) = &payload.faces {
        writeln!(w, "element face {}", faces.len())?;
        writeln!(w, "property list uchar uint vertex_indices")?;
    }
    writeln!(w, "end_header")?;

    match format {
        PlyFormat::Ascii => {
            for i in 0..n {
                let p = payload.positions[i];
                write!(w, "{:?} {:?} {:?}", p.x, p.y, p.z)?;
                if let Some(normals) = &payload.normals {
                    let m = normals[i];
                    write!(w, " {:?} {:?} {:?}", m.x, m.y, m.z)?;
                }
                if let Some(q) = &payload.quality {
                    write!(w, " {:?}", q[i])?;
                }
                if let Some(c) = &payload.colors {
                    write!(w, " {} {} {}", c[i][0], c[i][1], c[i][2])?;
                }
                writeln!(w)?;
            }
            if let Some(faces) = &payload.faces {
                for &[a, b, c] in faces {
                    writeln!(w, "3 {a} {b} {c}")?;
                }
            }
        }
        PlyFormat::BinaryLittleEndian => {
            for i in 0..n {
                let p = payload.positions[i];
                for v in [p.x, p.y, p.z] {
                    w.write_all(&v.to_le_bytes())?;
                }
                if let Some(normals) = &payload.normals {
                    let m = normals[i];
                    for v in [m.x, m.y, m.z] {
                        w.write_all(&v.to_le_bytes())?;
                    }
                }
                if let Some(q) = &payload.quality {
                    w.write_all(&q[i].to_le_bytes())?;
                }
                if let Some(c) = &payload.colors {
                    w.write_all(&c[i])?;
                }
            }
            if let Some(faces) = &payload.faces {
                for &[a, b, c] in faces {
                    w.write_all(&[3u8])?;
                    for v in [a, b, c] {
                        w.write_all(&(v as u32).to_le_bytes())?;
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}
