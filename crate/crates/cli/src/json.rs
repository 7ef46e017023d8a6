//! JSON input parsing and report serialization.

use std::io;

use isoptic::{Point64, Quadrilateral64};
use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use crate::error::{CliError, CliResult};

/// Input file: `{"vertices": [[x, y], [x, y], [x, y], [x, y]]}` in the order
/// `A, B, C, D`. Unknown keys are ignored so reconstruct output can be fed
/// back in.
#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct QuadFile {
    pub vertices: Vec<[f64; 2]>,
}

impl QuadFile {
    pub fn from_points(p: &[Point64; 4]) -> Self {
        Self { vertices: p.iter().map(|p| [p.x, p.y]).collect() }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        file.points()?;
        Ok(file)
    }

    pub fn points(&self) -> CliResult<[Point64; 4]> {
        let v: &[[f64; 2]; 4] = self
            .vertices
            .as_slice()
            .try_into()
            .map_err(|_| CliError::Parse(format!("expected exactly 4 vertices, got {}", self.vertices.len())))?;
        if v.iter().flatten().any(|c| !c.is_finite()) {
            return Err(CliError::Parse("vertex coordinates must be finite".into()));
        }
        Ok(v.map(|[x, y]| Point64::new(x, y)))
    }

    pub fn quadrilateral(&self, tol: f64) -> CliResult<Quadrilateral64> {
        Ok(Quadrilateral64::with_tol(self.points()?, tol)?)
    }
}

/// Pretty printer writing every float with 17 significant digits, which is
/// enough for any `f64` to read back bit-exactly.
struct ExactFloats(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for ExactFloats {
    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );

    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// Indented JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_json(&vec![0.1, -2.5e-300, 1.0 / 3.0]);
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("-2.5000000000000000e-300"));
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.1, -2.5e-300, 1.0 / 3.0]);
    }

    #[test]
    fn quad_file_validation() {
        assert!(QuadFile::parse(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).is_ok());
        assert!(QuadFile::parse(r#"{"vertices": [[0,0],[1,0],[1,1]]}"#).is_err());
        assert!(QuadFile::parse(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1e999]]}"#).is_err());
        assert!(QuadFile::parse(r#"{"vertices": [[0,0],[1,0],[1,1],[0,NaN]]}"#).is_err());
        assert!(QuadFile::parse(r#"{"points": []}"#).is_err());
    }
}
