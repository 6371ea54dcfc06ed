//! Configuration files, JSON-lines trajectories and OBJ frames.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use simplexflows_core::{ComplexKind, Configuration, Point, Trajectory};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {source}")]
    Line { line: usize, source: serde_json::Error },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigFile {
    pub kind: String,
    pub n: usize,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Record {
    pub t: f64,
    pub points: Vec<Vec<f64>>,
}

fn to_rows(points: &[Point]) -> Vec<Vec<f64>> {
    points.iter().map(|p| p.iter().copied().collect()).collect()
}

fn from_rows(rows: &[Vec<f64>]) -> Vec<Point> {
    rows.iter().map(|r| DVector::from_column_slice(r)).collect()
}

impl ConfigFile {
    pub fn from_config(c: &Configuration) -> Self {
        let kind = match c.kind {
            ComplexKind::K => "K",
            ComplexKind::L => "L",
        };
        ConfigFile { kind: kind.into(), n: c.dim(), points: to_rows(&c.points) }
    }

    pub fn into_config(self) -> Result<Configuration, IoError> {
        let kind = match self.kind.as_str() {
            "K" => ComplexKind::K,
            "L" => ComplexKind::L,
            other => return Err(IoError::Invalid(format!("unknown kind {other:?}"))),
        };
        if let Some(bad) = self.points.iter().find(|p| p.len() != self.n) {
            return Err(IoError::Invalid(format!("point {bad:?} does not have {} coordinates", self.n)));
        }
        Configuration::new(kind, from_rows(&self.points)).map_err(|e| IoError::Invalid(e.to_string()))
    }
}

pub fn parse_config(text: &str) -> Result<Configuration, IoError> {
    serde_json::from_str::<ConfigFile>(text)?.into_config()
}

pub fn read_config(path: &Path) -> Result<Configuration, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })?;
    parse_config(&text)
}

pub fn config_to_string(c: &Configuration) -> String {
    serde_json::to_string(&ConfigFile::from_config(c)).expect("plain data serializes")
}

pub fn write_config(path: &Path, c: &Configuration) -> Result<(), IoError> {
    fs::write(path, config_to_string(c) + "\n").map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn write_jsonl(mut w: impl Write, traj: &Trajectory) -> Result<(), IoError> {
    for s in &traj.samples {
        let rec = Record { t: s.t, points: to_rows(&s.points) };
        serde_json::to_writer(&mut w, &rec)?;
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl(r: impl BufRead) -> Result<Trajectory, IoError> {
    let mut traj = Trajectory::new();
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line).map_err(|source| IoError::Line { line: k + 1, source })?;
        traj.push(rec.t, from_rows(&rec.points));
    }
    Ok(traj)
}

pub fn read_jsonl_file(path: &Path) -> Result<Trajectory, IoError> {
    let f = File::open(path).map_err(|source| IoError::File { path: path.display().to_string(), source })?;
    read_jsonl(BufReader::new(f))
}

/// Writes `frame_0000.obj`, ... into `dir`: vertices and every edge of the
/// complete graph on them. Only for `n = 3`.
pub fn write_obj_frames(dir: &Path, traj: &Trajectory) -> Result<usize, IoError> {
    fs::create_dir_all(dir)?;
    for (k, s) in traj.samples.iter().enumerate() {
        if s.points.first().map(|p| p.len()) != Some(3) {
            return Err(IoError::Invalid("OBJ frames need points in R^3".into()));
        }
        let path = dir.join(format!("frame_{k:04}.obj"));
        let mut w = BufWriter::new(File::create(&path)?);
        writeln!(w, "# t = {}", s.t)?;
        for p in &s.points {
            writeln!(w, "v {} {} {}", p[0], p[1], p[2])?;
        }
        for i in 1..=s.points.len() {
            for j in i + 1..=s.points.len() {
                writeln!(w, "l {i} {j}")?;
            }
        }
        w.flush()?;
    }
    Ok(traj.samples.len())
}
