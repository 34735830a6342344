//! Map files for piecewise affine maps.
//!
//! ```json
//! {
//!   "source": "Z",
//!   "target": "Z^2",
//!   "pieces": [
//!     { "coset": "coset(2; 0)", "matrix": [[1], [3]], "offset": [0, 1] },
//!     { "coset": "coset(2; 1)", "domain": "coset(2; 1) \\ {1}", "table": [[[1], [0, 0]], [[3], [1, 0]]] }
//!   ]
//! }
//! ```
//!
//! A piece names a coset of the source and either a matrix with one row per
//! target coordinate plus an optional offset, or a table of sample values
//! that includes the coset offset and the offset plus each basis row of the
//! coset's subgroup. `domain` defaults to the whole coset.

use serde::Deserialize;

use cosetcalc_core::{canonicalize, AffinePiece, CanonicalCosetSet, CosetExpr, GroupDescriptor, PiecewiseAffineMap};

use crate::cli::CliError;
use crate::parse::{parse_expr, parse_group};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub pieces: Vec<PieceFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub coset: String,
    #[serde(default)]
    pub domain: Option<String>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub offset: Option<Vec<i64>>,
    #[serde(default)]
    pub table: Option<Vec<(Vec<i64>, Vec<i64>)>>,
}

/// Reads `arg` as inline JSON when it starts with `{`, otherwise as a path.
pub fn load(arg: &str) -> Result<PiecewiseAffineMap, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    let file: MapFile = serde_json::from_str(&text).map_err(|e| CliError::Map(e.to_string()))?;
    build(&file)
}

pub fn build(file: &MapFile) -> Result<PiecewiseAffineMap, CliError> {
    let field = |what: String| move |e: crate::parse::ParseError| CliError::Map(format!("{what}: {e}"));
    let source = parse_group(&file.source).map_err(field("source".into()))?;
    let target = parse_group(&file.target).map_err(field("target".into()))?;
    let mut pieces = Vec::with_capacity(file.pieces.len());
    for (i, p) in file.pieces.iter().enumerate() {
        let coset = match parse_expr(&p.coset)
            .map_err(field(format!("piece {i} coset")))?
            .expr
            .lower(&source.discrete_part())
            .map_err(field(format!("piece {i} coset")))?
        {
            CosetExpr::Coset(c) => c,
            _ => return Err(CliError::Map(format!("piece {i}: 'coset' must be a single coset(..)"))),
        };
        let domain = match &p.domain {
            Some(text) => {
                let e = parse_expr(text)
                    .map_err(field(format!("piece {i} domain")))?
                    .expr
                    .lower(&source.discrete_part())
                    .map_err(field(format!("piece {i} domain")))?;
                canonicalize(&source, &e)?
            }
            None => CanonicalCosetSet::from_coset(&source, &coset)?,
        };
        let piece = match (&p.matrix, &p.table) {
            (Some(a), None) => {
                let b = p.offset.clone().unwrap_or_else(|| vec![0; target.dim()]);
                AffinePiece::linear(&source, &target, domain, coset, a, &b)?
            }
            (None, Some(table)) if p.offset.is_none() => {
                AffinePiece::from_table(&source, &target, domain, coset, table)?
            }
            _ => {
                return Err(CliError::Map(format!(
                    "piece {i}: give either 'matrix' with an optional 'offset', or 'table'"
                )))
            }
        };
        pieces.push(piece);
    }
    Ok(PiecewiseAffineMap::new(&source, &target, pieces)?)
}

/// The groups named in a map file, for error messages and output.
pub fn groups(map: &PiecewiseAffineMap) -> (GroupDescriptor, GroupDescriptor) {
    (map.source().discrete_part(), map.target().discrete_part())
}
