//! Reference polynomials shipped with the crate.
//!
//! Text files are hand transcriptions in the parser's notation. JSON files
//! use the series schema of [`crate::series::series_to_json`]. All of them
//! are embedded at build time and can be replaced by a directory at run
//! time.

use std::path::Path;

use crate::error::{Error, Result};
use crate::poly::{parse_polyx, PolyX};
use crate::series::{series_from_json, SeriesRat};

pub const R2: &str = "r2.txt";
pub const R3_DET: &str = "r3_det.txt";
pub const R4_DET_Q1: &str = "r4_det_q1.txt";
pub const R4_DET_Q1_CHECKED: &str = "r4_det_q1_checked.txt";
pub const R2_JSON: &str = "r2.json";
pub const R3_DET_JSON: &str = "r3_det.json";
pub const R4_DET_Q1_JSON: &str = "r4_det_q1.json";
pub const R5_DET_Q1_JSON: &str = "r5_det_q1.json";
pub const SERIES_R4_DET_Q1_OUT: &str = "series_r4_det_q1.out";

const EMBEDDED: &[(&str, &str)] = &[
    (R2, include_str!("../golden/r2.txt")),
    (R3_DET, include_str!("../golden/r3_det.txt")),
    (R4_DET_Q1, include_str!("../golden/r4_det_q1.txt")),
    (R4_DET_Q1_CHECKED, include_str!("../golden/r4_det_q1_checked.txt")),
    (R2_JSON, include_str!("../golden/r2.json")),
    (R3_DET_JSON, include_str!("../golden/r3_det.json")),
    (R4_DET_Q1_JSON, include_str!("../golden/r4_det_q1.json")),
    (R5_DET_Q1_JSON, include_str!("../golden/r5_det_q1.json")),
    (SERIES_R4_DET_Q1_OUT, include_str!("../golden/series_r4_det_q1.out")),
];

/// A full set of reference files.
#[derive(Clone, Debug)]
pub struct GoldenSet {
    files: Vec<(&'static str, String)>,
}

impl GoldenSet {
    pub fn embedded() -> Self {
        GoldenSet {
            files: EMBEDDED.iter().map(|(n, s)| (*n, s.to_string())).collect(),
        }
    }

    /// Reads every file from `dir`; a missing file keeps its embedded copy.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut set = GoldenSet::embedded();
        for (name, text) in set.files.iter_mut() {
            let path = dir.join(name);
            if path.exists() {
                *text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e)))?;
            }
        }
        Ok(set)
    }

    pub fn text(&self, name: &str) -> &str {
        self.files
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.as_str())
            .unwrap_or_else(|| panic!("unknown golden file {}", name))
    }

    pub fn poly(&self, name: &str, rank: usize) -> Result<PolyX> {
        parse_polyx(self.text(name), rank).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos,
                msg: format!("{}: {}", name, msg),
            },
            other => other,
        })
    }

    pub fn series(&self, name: &str) -> Result<SeriesRat> {
        let v: serde_json::Value = serde_json::from_str(self.text(name))
            .map_err(|e| Error::InvalidInput(format!("{}: {}", name, e)))?;
        series_from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{render_polyx, XNames};
    use crate::series::{build_b, specialize_det, QSpec};

    #[test]
    fn transcriptions_parse() {
        let g = GoldenSet::embedded();
        assert_eq!(g.poly(R2, 2).unwrap().len(), 3);
        assert_eq!(g.poly(R3_DET, 1).unwrap().len(), 10);
        assert_eq!(g.poly(R4_DET_Q1, 1).unwrap().len(), 26);
        assert_eq!(g.poly(R4_DET_Q1_CHECKED, 1).unwrap().len(), 26);
    }

    /// The JSON files carry the same numerators as the text files, over
    /// the matching specialisation of B.
    #[test]
    fn json_matches_text() {
        let g = GoldenSet::embedded();
        let r2 = g.series(R2_JSON).unwrap();
        assert_eq!(r2.num().to_polyx().unwrap(), g.poly(R2, 2).unwrap());
        assert_eq!(r2.den_factors(), build_b(2));
        let b3 = crate::series::SeriesRat::new(PolyX::one(3).into(), &build_b(3));
        let r3 = g.series(R3_DET_JSON).unwrap();
        assert_eq!(r3.num().to_polyx().unwrap(), g.poly(R3_DET, 1).unwrap());
        assert_eq!(r3.den_factors(), specialize_det(&b3, QSpec::Formal).unwrap().to_series().den_factors());
        let b4 = crate::series::SeriesRat::new(PolyX::one(4).into(), &build_b(4));
        let r4 = g.series(R4_DET_Q1_JSON).unwrap();
        assert_eq!(r4.num().to_polyx().unwrap(), g.poly(R4_DET_Q1_CHECKED, 1).unwrap());
        assert_eq!(r4.den_factors(), specialize_det(&b4, QSpec::One).unwrap().to_series().den_factors());
    }

    /// The expected CLI output renders the hand transcription, not the
    /// engine's own result.
    #[test]
    fn cli_text_renders_transcription() {
        let g = GoldenSet::embedded();
        let rendered = render_polyx(&g.poly(R4_DET_Q1_CHECKED, 1).unwrap(), XNames::Single);
        let first = g.text(SERIES_R4_DET_Q1_OUT).lines().next().unwrap();
        assert_eq!(first, format!("numerator: {}", rendered));
    }

    #[test]
    fn directory_override() {
        let dir = std::env::temp_dir().join(format!("abzeta-golden-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join(R2), "1 + q*X1").unwrap();
        let g = GoldenSet::from_dir(&dir).unwrap();
        assert_eq!(g.poly(R2, 2).unwrap().len(), 2);
        assert_eq!(g.text(R3_DET), GoldenSet::embedded().text(R3_DET));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
