//! Group definition files.
//!
//! A flat TOML document with one `[[generator]]` block per generator.
//! Rationals are written as `"p/q"` strings; `gram` defaults to the identity.
//!
//! ```toml
//! name = "klein_bottle"
//! dimension = 2
//!
//! [[generator]]
//! matrix = [
//!   [-1, 0],
//!   [0, 1],
//! ]
//! translation = ["0", "1/2"]
//! ```

use std::fmt::Write as _;

use serde::Deserialize;

use crate::bieberbach::{close_group, torsion_free_check, AffineElement, BieberbachGroup};
use crate::error::{Error, Result};
use crate::exact::rational::parse_rational;
use crate::exact::{IntMatrix, RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: String,
    pub dimension: usize,
    /// `None` means the identity.
    pub gram: Option<RatMatrix>,
    pub generators: Vec<AffineElement>,
    pub description: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_rational(&self, field: &str) -> Result<Rational> {
        match self {
            Scalar::Int(i) => Ok(Rational::from_integer(*i as i128)),
            Scalar::Text(t) => parse_rational(t).map_err(|e| Error::field(field, e.to_string())),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    dimension: usize,
    description: Option<String>,
    gram: Option<Vec<Vec<Scalar>>>,
    #[serde(default)]
    generator: Vec<RawGenerator>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    matrix: Vec<Vec<i64>>,
    translation: Vec<Scalar>,
}

impl GroupDefinition {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| text[..s.start].matches('\n').count() + 1);
            Error::Parse {
                line,
                field: None,
                message: e.message().to_string(),
            }
        })?;
        let n = raw.dimension;
        let gram = match raw.gram {
            None => None,
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::field("gram", format!("expected a {n}x{n} matrix")));
                }
                let parsed: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_rational("gram")).collect::<Result<_>>())
                    .collect::<Result<_>>()?;
                Some(RatMatrix::from_rows(parsed))
            }
        };
        let mut generators = Vec::new();
        for (i, g) in raw.generator.iter().enumerate() {
            let field = format!("generator[{i}]");
            if g.matrix.len() != n || g.matrix.iter().any(|r| r.len() != n) {
                return Err(Error::field(&format!("{field}.matrix"), format!("expected a {n}x{n} matrix")));
            }
            if g.translation.len() != n {
                return Err(Error::field(
                    &format!("{field}.translation"),
                    format!("expected {n} entries"),
                ));
            }
            let t = g
                .translation
                .iter()
                .map(|x| x.to_rational(&format!("{field}.translation")))
                .collect::<Result<Vec<_>>>()?;
            generators.push(AffineElement::new(IntMatrix::from_rows(g.matrix.clone()), t));
        }
        Ok(GroupDefinition {
            name: raw.name,
            dimension: n,
            gram,
            generators,
            description: raw.description,
        })
    }

    /// Canonical text form; `parse(emit(x)) == x` and emission is deterministic.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name = {}", toml_string(&self.name)).unwrap();
        writeln!(out, "dimension = {}", self.dimension).unwrap();
        if let Some(d) = &self.description {
            writeln!(out, "description = {}", toml_string(d)).unwrap();
        }
        if let Some(g) = &self.gram {
            out.push_str("gram = [\n");
            for r in 0..g.rows() {
                let cells: Vec<String> = g.row(r).iter().map(|x| format!("\"{x}\"")).collect();
                writeln!(out, "  [{}],", cells.join(", ")).unwrap();
            }
            out.push_str("]\n");
        }
        for g in &self.generators {
            out.push_str("\n[[generator]]\nmatrix = [\n");
            for r in 0..g.point.rows() {
                let cells: Vec<String> = g.point.row(r).iter().map(|x| x.to_string()).collect();
                writeln!(out, "  [{}],", cells.join(", ")).unwrap();
            }
            out.push_str("]\n");
            let t: Vec<String> = g.translation.iter().map(|x| format!("\"{x}\"")).collect();
            writeln!(out, "translation = [{}]", t.join(", ")).unwrap();
        }
        out
    }

    pub fn gram_or_identity(&self) -> RatMatrix {
        self.gram.clone().unwrap_or_else(|| RatMatrix::identity(self.dimension))
    }

    /// Closes the group; does not check torsion-freeness.
    pub fn build(&self) -> Result<BieberbachGroup> {
        close_group(&self.generators, &self.gram_or_identity())
    }

    /// Closes the group and rejects groups with torsion.
    pub fn build_bieberbach(&self) -> Result<BieberbachGroup> {
        let g = self.build()?;
        torsion_free_check(&g).map_err(|v| {
            Error::InvalidArgument(format!(
                "`{}` has torsion: coset {} contains an element with a fixed point",
                self.name, v.coset
            ))
        })?;
        Ok(g)
    }
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    const KLEIN: &str = "name = \"klein\"\ndimension = 2\n\n[[generator]]\nmatrix = [\n  [-1, 0],\n  [0, 1],\n]\ntranslation = [\"0\", \"1/2\"]\n";

    #[test]
    fn parse_and_emit_round_trip() {
        let g = GroupDefinition::parse(KLEIN).unwrap();
        assert_eq!(g.generators[0].translation, vec![int(0), rat(1, 2)]);
        assert_eq!(g.emit(), KLEIN);
        let with_gram = GroupDefinition {
            gram: Some(RatMatrix::diagonal(&[int(1), rat(9, 4)])),
            description: Some("scaled \"torus\"".into()),
            ..g
        };
        let text = with_gram.emit();
        assert_eq!(GroupDefinition::parse(&text).unwrap(), with_gram);
        assert_eq!(GroupDefinition::parse(&text).unwrap().emit(), text);
    }

    #[test]
    fn errors_name_line_or_field() {
        let bad = KLEIN.replace("[\"0\", \"1/2\"]", "[\"0\"]");
        let err = GroupDefinition::parse(&bad).unwrap_err();
        assert!(matches!(err, Error::Parse { field: Some(ref f), .. } if f == "generator[0].translation"));
        let bad = KLEIN.replace("\"1/2\"", "\"1/0\"");
        assert!(GroupDefinition::parse(&bad).is_err());
        let err = GroupDefinition::parse("name = \"x\"\ndimension = \n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: Some(2), .. }));
    }
}
