//! Serializable forms of coefficient tables and cup products.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::rational::Rational;
use crate::{Error, Result};

use super::matrix::RationalMatrix;
use super::table::Level;

pub const TABLE_VERSION: u32 = 1;

/// `b` and `a` over the partitions of one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub version: u32,
    pub weight: u32,
    pub order: Vec<Partition>,
    pub b: Vec<Vec<Rational>>,
    pub a: Vec<Vec<Rational>>,
}

impl TableDocument {
    pub fn from_level(level: &Level) -> Self {
        TableDocument {
            version: TABLE_VERSION,
            weight: level.weight(),
            order: level.order().to_vec(),
            b: level.b_matrix().to_rows(),
            a: level.a_matrix().to_rows(),
        }
    }

    /// Shape checks plus `B A = I`.
    pub fn validate(&self) -> Result<()> {
        if self.version != TABLE_VERSION {
            return Err(Error::Parse(format!("unsupported table version {}", self.version)));
        }
        if let Some(p) = self.order.iter().find(|p| p.weight() != self.weight) {
            return Err(Error::Parse(format!("partition {p} does not have weight {}", self.weight)));
        }
        let n = self.order.len();
        for rows in [&self.b, &self.a] {
            if rows.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: rows.len(),
                });
            }
        }
        let b = RationalMatrix::from_rows(self.b.clone())?;
        let a = RationalMatrix::from_rows(self.a.clone())?;
        if b.cols() != n || a.cols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: b.cols().min(a.cols()),
            });
        }
        if !b.mul(&a)?.is_identity() {
            return Err(Error::domain("table matrices are not mutually inverse"));
        }
        Ok(())
    }
}

/// Cup-product coefficients keyed by comma-joined descending parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupDocument {
    pub lambda: Partition,
    pub mu: Partition,
    pub terms: BTreeMap<String, Rational>,
}

impl CupDocument {
    pub fn new(lambda: Partition, mu: Partition, terms: &BTreeMap<Partition, Rational>) -> Self {
        CupDocument {
            lambda,
            mu,
            terms: terms.iter().map(|(p, v)| (p.key(), v.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffTable;

    #[test]
    fn table_round_trip() {
        let t = CoeffTable::with_scope(2).unwrap();
        let doc = TableDocument::from_level(t.level(2).unwrap());
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            json,
            r#"{"version":1,"weight":2,"order":[[2],[1,1]],"b":[["-1/120","0"],["29/720","1/72"]],"a":[["-120","0"],["348","72"]]}"#
        );
        let back: TableDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        back.validate().unwrap();
    }

    #[test]
    fn tampered_table_is_rejected() {
        let t = CoeffTable::with_scope(2).unwrap();
        let mut doc = TableDocument::from_level(t.level(2).unwrap());
        doc.a[1][0] = Rational::from(349);
        assert!(doc.validate().is_err());
    }

    #[test]
    fn cup_keys() {
        let t = CoeffTable::with_scope(2).unwrap();
        let one = Partition::single(1).unwrap();
        let doc = CupDocument::new(one.clone(), one.clone(), &t.cup_coeff(&one, &one).unwrap());
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"lambda":[1],"mu":[1],"terms":{"1,1":"2","2":"29/5"}}"#);
    }
}
