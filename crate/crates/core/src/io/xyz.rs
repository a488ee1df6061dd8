//! XYZ text format: `x y z [nx ny nz]` per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::PointCloud;
use crate::Vec3;

pub fn read_xyz(path: impl AsRef<Path>) -> Result<PointCloud> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut points = Vec::new();
    let mut normals = Vec::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let values: std::result::Result<Vec<f64>, _> =
            trimmed.split_whitespace().map(str::parse).collect();
        let values = values.map_err(|e| Error::Parse {
            line: line_no + 1,
            message: format!("bad number: {e}"),
        })?;
        match values.len() {
            3 => points.push(Vec3::new(values[0], values[1], values[2])),
            6 => {
                points.push(Vec3::new(values[0], values[1], values[2]));
                normals.push(Vec3::new(values[3], values[4], values[5]));
            }
            n => {
                return Err(Error::Parse {
                    line: line_no + 1,
                    message: format!("expected 3 or 6 values, got {n}"),
                })
            }
        }
    }
    if !normals.is_empty() && normals.len() != points.len() {
        return Err(Error::SizeMismatch {
            what: "xyz normals",
            expected: points.len(),
            actual: normals.len(),
        });
    }
    Ok(PointCloud {
        points,
        normals: if normals.is_empty() {
            None
        } else {
            Some(normals)
        },
    })
}

pub fn write_xyz(path: impl AsRef<Path>, cloud: &PointCloud) -> Result<()> {
    cloud.validate()?;
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    match &cloud.normals {
        Some(normals) => {
            for (p, n) in cloud.points.iter().zip(normals) {
                writeln!(
                    w,
                    "{:.9} {:.9} {:.9} {:.9} {:.9} {:.9}",
                    p.x, p.y, p.z, n.x, n.y, n.z
                )?;
            }
        }
        None => {
            for p in &cloud.points {
                writeln!(w, "{:.9} {:.9} {:.9}", p.x, p.y, p.z)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
