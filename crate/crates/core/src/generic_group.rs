//! The class-set bound for an arbitrary finite group described by its class
//! sizes and, optionally, an exact character table.
//!
//! For a set Ω of classes, Q is the fraction of the group covered by Ω and R
//! the fraction of classes in Ω; the probability P(G) that a random character
//! vanishes at a random element satisfies `1 ≥ P(G) ≥ Q − R`.

use std::io::Read;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::exact::{self, from_uints, FractionJson};
use crate::partitions::class_size;
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub size: BigUint,
}

/// Validated description of a finite group's classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassData {
    pub group: String,
    pub order: BigUint,
    pub classes: Vec<ClassInfo>,
    /// Rows are characters, columns classes.
    pub table: Option<Vec<Vec<BigRational>>>,
    /// Failed advisory checks (column orthogonality).
    pub warnings: Vec<String>,
}

/// Table entry on the wire: a decimal string or a fraction object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Integer(String),
    Fraction(FractionJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub name: String,
    pub size: String,
}

/// File format for [`ClassData`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDataJson {
    pub group: String,
    pub order: String,
    pub classes: Vec<ClassJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<EntryJson>>>,
}

fn parse_uint(what: &str, s: &str) -> Result<BigUint> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what} {s:?} is not a nonnegative decimal integer")))
}

fn parse_entry(row: usize, col: usize, entry: &EntryJson) -> Result<BigRational> {
    match entry {
        EntryJson::Integer(s) => s
            .trim()
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| {
                Error::Parse(format!(
                    "table entry [{row}][{col}] = {s:?} is not an exact integer or rational \
                     (irrational and complex values are not supported)"
                ))
            }),
        EntryJson::Fraction(f) => f
            .to_rational()
            .map_err(|e| Error::Parse(format!("table entry [{row}][{col}]: {e}"))),
    }
}

impl ClassData {
    pub fn from_json(raw: ClassDataJson) -> Result<Self> {
        let order = parse_uint("group order", &raw.order)?;
        let classes = raw
            .classes
            .iter()
            .map(|c| {
                Ok(ClassInfo {
                    name: c.name.clone(),
                    size: parse_uint(&format!("size of class {:?}", c.name), &c.size)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let table = raw
            .table
            .as_ref()
            .map(|rows| {
                rows.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, e)| parse_entry(i, j, e))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let mut data = ClassData {
            group: raw.group,
            order,
            classes,
            table,
            warnings: Vec::new(),
        };
        data.validate()?;
        Ok(data)
    }

    /// Runs the load-time checks; orthogonality failures become warnings.
    pub fn validate(&mut self) -> Result<()> {
        if self.order.is_zero() {
            return Err(Error::InvariantViolation("group order must be positive".into()));
        }
        if self.classes.is_empty() {
            return Err(Error::InvariantViolation("at least one class is required".into()));
        }
        let mut total = BigUint::zero();
        for c in &self.classes {
            if c.size.is_zero() {
                return Err(Error::InvariantViolation(format!("class {:?} has size 0", c.name)));
            }
            if !self.order.is_multiple_of(&c.size) {
                return Err(Error::InvariantViolation(format!(
                    "size {} of class {:?} does not divide the group order {}",
                    c.size, c.name, self.order
                )));
            }
            total += &c.size;
        }
        if total != self.order {
            return Err(Error::InvariantViolation(format!(
                "class sizes sum to {total}, not the group order {}",
                self.order
            )));
        }
        self.warnings.clear();
        if let Some(table) = &self.table {
            let k = self.classes.len();
            if table.len() != k || table.iter().any(|row| row.len() != k) {
                return Err(Error::InvariantViolation(format!(
                    "character table must be {k}x{k} to match the class list"
                )));
            }
            for (j, class) in self.classes.iter().enumerate() {
                let sum: BigRational = table.iter().map(|row| &row[j] * &row[j]).sum();
                let centralizer = from_uints(&(&self.order / &class.size), &BigUint::one());
                if sum != centralizer {
                    self.warnings.push(format!(
                        "column {:?}: sum of squares {} differs from centralizer order {}",
                        class.name,
                        exact::fraction_string(&sum),
                        exact::fraction_string(&centralizer)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ClassDataJson {
        ClassDataJson {
            group: self.group.clone(),
            order: self.order.to_string(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    name: c.name.clone(),
                    size: c.size.to_string(),
                })
                .collect(),
            table: self.table.as_ref().map(|rows| {
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| {
                                if v.denom().is_one() {
                                    EntryJson::Integer(v.numer().to_string())
                                } else {
                                    EntryJson::Fraction(FractionJson::from(v))
                                }
                            })
                            .collect()
                    })
                    .collect()
            }),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class data of 𝔖ₙ with its full character table.
    pub fn from_symmetric_table(table: &CharacterTable) -> Result<Self> {
        let n = table.n();
        let classes = table
            .partitions()
            .iter()
            .map(|mu| {
                Ok(ClassInfo {
                    name: mu.label(),
                    size: class_size(mu)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let values = table
            .rows()
            .iter()
            .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let mut data = ClassData {
            group: format!("S{n}"),
            order: crate::partitions::factorial(n),
            classes,
            table: Some(values),
            warnings: Vec::new(),
        };
        data.validate()?;
        Ok(data)
    }
}

/// Parses and validates class data from a JSON byte stream.
pub fn load_class_data<R: Read>(source: R) -> Result<ClassData> {
    let raw: ClassDataJson =
        serde_json::from_reader(source).map_err(|e| Error::Parse(e.to_string()))?;
    ClassData::from_json(raw)
}

/// Classes at least as large as average, i.e. `k·|K| ≥ |G|` (equivalently the
/// centralizer order is at most the number of classes).
pub fn default_omega(data: &ClassData) -> Vec<usize> {
    let k = BigUint::from(data.num_classes());
    data.classes
        .iter()
        .enumerate()
        .filter(|(_, c)| &k * &c.size >= data.order)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropositionReport {
    #[serde(with = "exact::ratio_json")]
    pub q: BigRational,
    #[serde(with = "exact::ratio_json")]
    pub r: BigRational,
    #[serde(with = "exact::ratio_json")]
    pub lower_bound: BigRational,
    #[serde(with = "exact::opt_ratio_json")]
    pub exact_p: Option<BigRational>,
    pub omega_names: Vec<String>,
}

impl PropositionReport {
    pub fn inequality_holds(&self) -> Option<bool> {
        self.exact_p
            .as_ref()
            .map(|p| p <= &BigRational::one() && p >= &self.lower_bound)
    }
}

/// Exact P(G) = Σ_K |K|·#{χ : χ(K) = 0} / (k·|G|).
pub fn exact_pzero(data: &ClassData) -> Option<BigRational> {
    let table = data.table.as_ref()?;
    let mut weighted = BigUint::zero();
    for (j, class) in data.classes.iter().enumerate() {
        let zeros = table.iter().filter(|row| row[j].is_zero()).count();
        weighted += &class.size * BigUint::from(zeros);
    }
    Some(from_uints(&weighted, &(&data.order * BigUint::from(data.num_classes()))))
}

pub fn proposition_bound(data: &ClassData, omega: &[usize]) -> Result<PropositionReport> {
    let k = data.num_classes();
    let mut seen = vec![false; k];
    for &i in omega {
        if i >= k {
            return Err(Error::invalid(format!("class index {i} out of range (k = {k})")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::invalid(format!("class index {i} listed twice")));
        }
    }
    let covered: BigUint = omega.iter().map(|&i| &data.classes[i].size).sum();
    let q = from_uints(&covered, &data.order);
    let r = exact::ratio(omega.len(), k);
    let report = PropositionReport {
        lower_bound: &q - &r,
        q,
        r,
        exact_p: exact_pzero(data),
        omega_names: omega.iter().map(|&i| data.classes[i].name.clone()).collect(),
    };
    if report.inequality_holds() == Some(false) {
        return Err(Error::InvariantViolation(format!(
            "1 >= P(G) >= Q - R fails for {}; the character table is inconsistent",
            data.group
        )));
    }
    Ok(report)
}

/// Outcome of searching all class subsets for the largest Q − R.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaCheck {
    #[serde(with = "exact::ratio_json")]
    pub max_value: BigRational,
    #[serde(with = "exact::ratio_json")]
    pub default_value: BigRational,
    pub default_attains_max: bool,
    /// False when subsets were sampled instead of enumerated.
    pub exhaustive: bool,
    pub subsets_checked: u64,
}

/// Largest class count searched exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 20;
/// Random subsets tried when the class count is above the limit.
pub const SAMPLED_SUBSETS: u64 = 1 << 16;

/// Compares the default Ω against every subset of classes (or a seeded random
/// sample of subsets when there are more than [`EXHAUSTIVE_LIMIT`] classes).
pub fn best_omega_check(data: &ClassData, seed: u64) -> OmegaCheck {
    let k = data.num_classes();
    let denom = &data.order * BigUint::from(k);
    // Q − R of a subset is Σ (k·|K| − |G|) / (k·|G|) over its classes.
    let kb = BigInt::from(k);
    let order = BigInt::from_biguint(Sign::Plus, data.order.clone());
    let gains: Vec<BigInt> = data
        .classes
        .iter()
        .map(|c| &kb * BigInt::from_biguint(Sign::Plus, c.size.clone()) - &order)
        .collect();
    let to_ratio = |num: BigInt| {
        BigRational::new(num, BigInt::from_biguint(Sign::Plus, denom.clone()))
    };
    let default_num: BigInt = default_omega(data).iter().map(|&i| &gains[i]).sum();

    let (best, checked, exhaustive) = if k <= EXHAUSTIVE_LIMIT {
        // Gray-code walk: consecutive subsets differ in one class.
        let mut current = BigInt::zero();
        let mut best = BigInt::zero();
        let mut members = vec![false; k];
        let total = 1u64 << k;
        for step in 1..total {
            let bit = step.trailing_zeros() as usize;
            members[bit] = !members[bit];
            if members[bit] {
                current += &gains[bit];
            } else {
                current -= &gains[bit];
            }
            if current > best {
                best = current.clone();
            }
        }
        (best, total, true)
    } else {
        let sums = sampling::par_samples(SAMPLED_SUBSETS, seed, |rng| {
            gains
                .iter()
                .filter(|_| sampling::uniform_u64_below(2, rng) == 1)
                .sum::<BigInt>()
        });
        let best = sums.into_iter().max().unwrap_or_default().max(BigInt::zero());
        (best, SAMPLED_SUBSETS + 1, false)
    };
    OmegaCheck {
        default_attains_max: default_num >= best,
        max_value: to_ratio(best.max(default_num.clone())),
        default_value: to_ratio(default_num),
        exhaustive,
        subsets_checked: checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_table;
    use crate::exact::ratio;
    use crate::limits::Limits;

    fn s_n(n: usize) -> ClassData {
        ClassData::from_symmetric_table(&character_table(n, &Limits::default()).unwrap()).unwrap()
    }

    fn classes_only(order: u32, sizes: &[u32]) -> ClassDataJson {
        ClassDataJson {
            group: "G".into(),
            order: order.to_string(),
            classes: sizes
                .iter()
                .enumerate()
                .map(|(i, s)| ClassJson { name: format!("c{i}"), size: s.to_string() })
                .collect(),
            table: None,
        }
    }

    #[test]
    fn loads_s3() {
        let json = serde_json::to_string(&s_n(3).to_json()).unwrap();
        let data = load_class_data(json.as_bytes()).unwrap();
        assert_eq!(data.order, BigUint::from(6u32));
        assert!(data.warnings.is_empty());
        assert_eq!(data, s_n(3));
    }

    #[test]
    fn rejects_bad_sizes() {
        let err = ClassData::from_json(classes_only(6, &[1, 3, 1])).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)), "{err}");
        let err = ClassData::from_json(classes_only(6, &[1, 4, 1])).unwrap_err();
        assert!(err.to_string().contains("c1"), "{err}");
        assert!(ClassData::from_json(classes_only(1, &[1])).is_ok());
        assert!(load_class_data("{not json".as_bytes()).is_err());
    }

    #[test]
    fn rejects_irrational_entries() {
        let mut raw = classes_only(3, &[1, 1, 1]);
        let e = |s: &str| EntryJson::Integer(s.into());
        raw.table = Some(vec![
            vec![e("1"), e("1"), e("1")],
            vec![e("1"), e("E(3)"), e("E(3)^2")],
            vec![e("1"), e("E(3)^2"), e("E(3)")],
        ]);
        let err = ClassData::from_json(raw).unwrap_err();
        assert!(err.to_string().contains("not an exact"), "{err}");
    }

    #[test]
    fn orthogonality_is_advisory() {
        let mut raw = s_n(3).to_json();
        if let Some(t) = raw.table.as_mut() {
            t[0][0] = EntryJson::Fraction(FractionJson { num: "3".into(), den: "2".into() });
        }
        let data = ClassData::from_json(raw).unwrap();
        assert_eq!(data.warnings.len(), 1);
    }

    #[test]
    fn default_omega_examples() {
        let s3 = s_n(3);
        let names: Vec<_> = default_omega(&s3).iter().map(|&i| s3.classes[i].name.clone()).collect();
        assert_eq!(names, vec!["3", "2-1"]);
        let trivial = ClassData::from_json(classes_only(1, &[1])).unwrap();
        assert_eq!(default_omega(&trivial), vec![0]);
        let s4 = s_n(4);
        let names: Vec<_> = default_omega(&s4).iter().map(|&i| s4.classes[i].name.clone()).collect();
        assert_eq!(names, vec!["4", "3-1", "2-1-1"]);
    }

    #[test]
    fn proposition_examples() {
        let s3 = s_n(3);
        let empty = proposition_bound(&s3, &[]).unwrap();
        assert_eq!((empty.q.clone(), empty.r.clone()), (BigRational::zero(), BigRational::zero()));
        let all = proposition_bound(&s3, &[0, 1, 2]).unwrap();
        assert_eq!(all.lower_bound, BigRational::zero());
        let rep = proposition_bound(&s3, &default_omega(&s3)).unwrap();
        assert_eq!(rep.q, ratio(5, 6));
        assert_eq!(rep.r, ratio(2, 3));
        assert_eq!(rep.lower_bound, ratio(1, 6));
        assert_eq!(rep.exact_p, Some(ratio(1, 6)));
        assert!(proposition_bound(&s3, &[3]).is_err());
        assert!(proposition_bound(&s3, &[1, 1]).is_err());
    }

    #[test]
    fn best_omega_small_groups() {
        let check = best_omega_check(&s_n(3), 0);
        assert_eq!(check.max_value, ratio(1, 6));
        assert!(check.default_attains_max && check.exhaustive);
        assert_eq!(check.subsets_checked, 8);
        let trivial = ClassData::from_json(classes_only(1, &[1])).unwrap();
        assert_eq!(best_omega_check(&trivial, 0).max_value, BigRational::zero());
        let check = best_omega_check(&s_n(4), 0);
        assert!(check.default_attains_max);
        assert_eq!(check.subsets_checked, 32);
    }

    #[test]
    fn best_omega_sampled_above_limit() {
        // Elementary abelian group of order 2^5 has 32 singleton classes.
        let data = ClassData::from_json(classes_only(32, &[1; 32])).unwrap();
        let check = best_omega_check(&data, 3);
        assert!(!check.exhaustive);
        assert!(check.default_attains_max);
        assert_eq!(check.default_value, BigRational::zero());
    }
}
