//! JSON form of a [`SeriesRat`].
//!
//! ```json
//! {"rank": 2,
//!  "numerator": [{"exps": [1, 0], "coeff_num": "q", "coeff_den": "1"}],
//!  "denominator": [{"u": 0, "v": 1, "k": 1}]}
//! ```
//!
//! Coefficients are polynomial strings in the text format. A factor may
//! carry `"pow"` for `X_k^pow`; it is omitted when 1.

use serde::{Deserialize, Serialize};

use super::{DenFactor, SeriesRat};
use crate::error::{Error, Result};
use crate::poly::{parse_pq, render_pq, RatPQ, XPoly};

#[derive(Serialize, Deserialize)]
struct Term {
    exps: Vec<u32>,
    coeff_num: String,
    coeff_den: String,
}

fn is_one(x: &u32) -> bool {
    *x == 1
}

fn one() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct Factor {
    u: i32,
    v: u32,
    k: usize,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pow: u32,
}

#[derive(Serialize, Deserialize)]
struct Doc {
    rank: usize,
    numerator: Vec<Term>,
    denominator: Vec<Factor>,
}

pub fn series_to_json(s: &SeriesRat) -> serde_json::Value {
    let numerator = s
        .num()
        .terms()
        .map(|(e, c)| Term {
            exps: e.clone(),
            coeff_num: render_pq(c.num(), false),
            coeff_den: render_pq(c.den(), false),
        })
        .collect();
    let denominator = s
        .den_factors()
        .iter()
        .map(|f| Factor {
            u: f.u,
            v: f.v,
            k: f.k,
            pow: f.pow,
        })
        .collect();
    serde_json::to_value(Doc {
        rank: s.rank(),
        numerator,
        denominator,
    })
    .expect("serialisable")
}

pub fn series_from_json(v: &serde_json::Value) -> Result<SeriesRat> {
    let doc: Doc = serde_json::from_value(v.clone())
        .map_err(|e| Error::InvalidInput(format!("series json: {}", e)))?;
    let mut num = XPoly::zero(doc.rank);
    for t in doc.numerator {
        if t.exps.len() != doc.rank {
            return Err(Error::InvalidInput(format!("exponent vector {:?} for rank {}", t.exps, doc.rank)));
        }
        num.add_term(t.exps, RatPQ::new(parse_pq(&t.coeff_num)?, parse_pq(&t.coeff_den)?)?);
    }
    let mut den = Vec::new();
    for f in doc.denominator {
        if f.k == 0 || f.k > doc.rank {
            return Err(Error::InvalidInput(format!("factor index {} for rank {}", f.k, doc.rank)));
        }
        den.push(DenFactor::with_pow(f.u, f.v, f.k, f.pow));
    }
    Ok(SeriesRat::new(num, &den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{q_series_direct, q_series_recursive};

    #[test]
    fn round_trip() {
        for s in [q_series_recursive(2).unwrap(), q_series_direct(2).unwrap()] {
            let v = series_to_json(&s);
            let back = series_from_json(&v).unwrap();
            assert!(back.equals(&s));
            assert_eq!(series_to_json(&back), v);
        }
        let v: serde_json::Value = serde_json::from_str(
            r#"{"rank":1,"numerator":[{"exps":[0],"coeff_num":"1","coeff_den":"1"}],
                "denominator":[{"u":0,"v":0,"k":1,"pow":3}]}"#,
        )
        .unwrap();
        assert_eq!(series_from_json(&v).unwrap().den_factors()[0].pow, 3);
        let bad: serde_json::Value =
            serde_json::from_str(r#"{"rank":1,"numerator":[],"denominator":[{"u":0,"v":0,"k":2}]}"#).unwrap();
        assert!(series_from_json(&bad).is_err());
    }
}
