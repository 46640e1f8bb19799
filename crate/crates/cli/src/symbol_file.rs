//! JSON symbol files: pieces given in degrees with Fourier coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;
use toeplitz_pc::{CoefficientSequence, PiecewiseSymbol};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolFile {
    pub pieces: Vec<PieceEntry>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceEntry {
    pub start_deg: f64,
    pub end_deg: f64,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub k: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Raised for anything that makes a file unusable as a symbol.
#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl SymbolFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file: SymbolFile = serde_json::from_str(text).map_err(|e| ParseError(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), ParseError> {
        if self.pieces.is_empty() {
            return Err(ParseError("no pieces".into()));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            for d in [p.start_deg, p.end_deg] {
                if !(0.0..=360.0).contains(&d) {
                    return Err(ParseError(format!("piece {i}: angle {d} outside [0, 360]")));
                }
            }
            if p.coeffs.is_empty() {
                return Err(ParseError(format!("piece {i}: empty coefficient list")));
            }
            if p.coeffs
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
            {
                return Err(ParseError(format!("piece {i}: non-finite coefficient")));
            }
        }
        self.to_symbol().map(|_| ())
    }

    /// Pieces with `start ∈ [0, 360)`, `end ∈ (0, 360]`, wrapping pieces
    /// split at 0, sorted by start; coefficients sorted by `k` with
    /// duplicates summed. Applying it twice changes nothing.
    pub fn normalized(&self) -> SymbolFile {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let start = clean(p.start_deg.rem_euclid(360.0));
            let mut end = clean(p.end_deg.rem_euclid(360.0));
            if end == 0.0 {
                end = 360.0;
            }
            let coeffs = merged(&p.coeffs);
            if end > start {
                pieces.push(PieceEntry {
                    start_deg: start,
                    end_deg: end,
                    coeffs,
                });
            } else {
                pieces.push(PieceEntry {
                    start_deg: start,
                    end_deg: 360.0,
                    coeffs: coeffs.clone(),
                });
                pieces.push(PieceEntry {
                    start_deg: 0.0,
                    end_deg: end,
                    coeffs,
                });
            }
        }
        pieces.sort_by(|a, b| a.start_deg.total_cmp(&b.start_deg));
        SymbolFile { pieces }
    }

    pub fn to_symbol(&self) -> Result<PiecewiseSymbol, ParseError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let pairs: Vec<(i64, Complex64)> = p
                    .coeffs
                    .iter()
                    .map(|c| (c.k, Complex64::new(c.re, c.im)))
                    .collect();
                (
                    p.start_deg.to_radians(),
                    p.end_deg.to_radians(),
                    CoefficientSequence::from_pairs(&pairs),
                )
            })
            .collect();
        PiecewiseSymbol::new(pieces).map_err(|e| ParseError(e.to_string()))
    }

    /// Pretty JSON with every number at 17 significant digits.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"pieces\": [\n");
        for (i, p) in self.pieces.iter().enumerate() {
            let _ = writeln!(out, "    {{");
            let _ = writeln!(out, "      \"start_deg\": {},", number(p.start_deg));
            let _ = writeln!(out, "      \"end_deg\": {},", number(p.end_deg));
            let _ = writeln!(out, "      \"coeffs\": [");
            for (j, c) in p.coeffs.iter().enumerate() {
                let sep = if j + 1 == p.coeffs.len() { "" } else { "," };
                let _ = writeln!(
                    out,
                    "        {{\"k\": {}, \"re\": {}, \"im\": {}}}{sep}",
                    c.k,
                    number(c.re),
                    number(c.im)
                );
            }
            let _ = writeln!(out, "      ]");
            let sep = if i + 1 == self.pieces.len() { "" } else { "," };
            let _ = writeln!(out, "    }}{sep}");
        }
        out.push_str("  ]\n}\n");
        out
    }
}

fn clean(x: f64) -> f64 {
    // Drops negative zero.
    x + 0.0
}

fn merged(coeffs: &[CoeffEntry]) -> Vec<CoeffEntry> {
    let mut by_k: BTreeMap<i64, (f64, f64)> = BTreeMap::new();
    for c in coeffs {
        let e = by_k.entry(c.k).or_insert((0.0, 0.0));
        e.0 += c.re;
        e.1 += c.im;
    }
    by_k.into_iter()
        .map(|(k, (re, im))| CoeffEntry {
            k,
            re: clean(re),
            im: clean(im),
        })
        .collect()
}

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGN: &str = r#"{"pieces":[
        {"start_deg":0,"end_deg":180,"coeffs":[{"k":0,"re":1,"im":0}]},
        {"start_deg":180,"end_deg":360,"coeffs":[{"k":0,"re":-1,"im":0}]}]}"#;

    #[test]
    fn parses_and_builds_sign() {
        let f = SymbolFile::parse(SIGN).unwrap();
        let s = f.to_symbol().unwrap();
        assert_eq!(s.jumps().len(), 2);
    }

    #[test]
    fn wrapping_piece_is_split_once() {
        let text = r#"{"pieces":[
            {"start_deg":270,"end_deg":90,"coeffs":[{"k":0,"re":1,"im":0}]},
            {"start_deg":90,"end_deg":270,"coeffs":[{"k":1,"re":1,"im":0},{"k":1,"re":1,"im":0}]}]}"#;
        let n = SymbolFile::parse(text).unwrap().normalized();
        assert_eq!(n.pieces.len(), 3);
        assert_eq!(n.pieces[0].start_deg, 0.0);
        assert_eq!(
            n.pieces[1].coeffs,
            vec![CoeffEntry {
                k: 1,
                re: 2.0,
                im: 0.0
            }]
        );
        assert_eq!(n.normalized(), n);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let n = SymbolFile::parse(SIGN).unwrap().normalized();
        let again = SymbolFile::parse(&n.to_json()).unwrap().normalized();
        assert_eq!(again, n);
        assert_eq!(again.to_json(), n.to_json());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(SymbolFile::parse("{").is_err());
        assert!(SymbolFile::parse(r#"{"pieces":[]}"#).is_err());
        let gap = r#"{"pieces":[{"start_deg":0,"end_deg":90,"coeffs":[{"k":0,"re":1,"im":0}]}]}"#;
        assert!(SymbolFile::parse(gap).is_err());
        let empty = r#"{"pieces":[{"start_deg":0,"end_deg":360,"coeffs":[]}]}"#;
        assert!(SymbolFile::parse(empty).is_err());
        let out = r#"{"pieces":[{"start_deg":0,"end_deg":400,"coeffs":[{"k":0,"re":1,"im":0}]}]}"#;
        assert!(SymbolFile::parse(out).is_err());
    }
}
