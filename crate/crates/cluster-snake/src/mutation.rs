//! Seed mutation with geometric coefficients, used as an independent oracle.
//!
//! A seed stores an extended exchange matrix whose top `n` rows are the
//! exchange matrix and whose bottom rows hold the exponents of the frozen
//! variables. Coefficients are always read off the bottom rows.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Laurent, Monomial, PolyError, Var, VarKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
    #[error("exchange matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("matrix shape does not match the cluster")]
    Shape,
    #[error("exchange polynomial is not divisible by the old variable")]
    DivisionFailed,
    #[error("tropical evaluation of the F-polynomial failed: {0}")]
    NonMonomialDenominator(String),
    #[error("seed file: {0}")]
    Parse(String),
}

/// A seed: extended exchange matrix, cluster and frozen variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: Vec<Vec<i64>>,
    cluster: Vec<Laurent>,
    frozen: Vec<Var>,
}

impl Seed {
    /// A seed in the initial variables `x_i` with frozen variables of the
    /// given names for the bottom rows.
    pub fn new(labels: &[String], matrix: Vec<Vec<i64>>, frozen: Vec<Var>) -> Result<Seed, MutationError> {
        let n = labels.len();
        if matrix.len() != n + frozen.len() || matrix.iter().any(|r| r.len() != n) {
            return Err(MutationError::Shape);
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[i][j] != -matrix[j][i] {
                    return Err(MutationError::NotSkewSymmetric);
                }
            }
        }
        Ok(Seed {
            matrix,
            cluster: labels.iter().map(|l| Laurent::var(Var::x(l))).collect(),
            frozen,
        })
    }

    /// Principal coefficients: the matrix `[B; I]` with frozen variables `y_i`.
    pub fn principal(labels: &[String], b: &[Vec<i64>]) -> Result<Seed, MutationError> {
        let ext = crate::surface::extended_principal(b);
        Seed::new(labels, ext, labels.iter().map(|l| Var::y(l)).collect())
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn cluster(&self) -> &[Laurent] {
        &self.cluster
    }

    pub fn frozen(&self) -> &[Var] {
        &self.frozen
    }

    /// The coefficient tuple `y_k = ∏ u_i^{b_{n+i,k}}`.
    pub fn coefficients(&self) -> Vec<Monomial> {
        let n = self.rank();
        (0..n)
            .map(|k| {
                Monomial::from_pairs(
                    self.frozen
                        .iter()
                        .enumerate()
                        .map(|(i, u)| (u.clone(), self.matrix[n + i][k])),
                )
            })
            .collect()
    }

    /// Mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed, MutationError> {
        let n = self.rank();
        if k >= n {
            return Err(MutationError::IndexOutOfRange(k, n));
        }
        let mut plus = Laurent::one();
        let mut minus = Laurent::one();
        for i in 0..n {
            let b = self.matrix[i][k];
            if b > 0 {
                plus = &plus * &self.cluster[i].pow(b as u32);
            } else if b < 0 {
                minus = &minus * &self.cluster[i].pow((-b) as u32);
            }
        }
        let mut up = Monomial::one();
        let mut down = Monomial::one();
        for (i, u) in self.frozen.iter().enumerate() {
            let b = self.matrix[n + i][k];
            if b > 0 {
                up = up.mul(&Monomial::power(u.clone(), b));
            } else if b < 0 {
                down = down.mul(&Monomial::power(u.clone(), -b));
            }
        }
        let exchange = &plus.mul_monomial(&up) + &minus.mul_monomial(&down);
        let new = exchange.div_exact(&self.cluster[k]).map_err(|e| match e {
            PolyError::NotDivisible | PolyError::DivisionByZero => MutationError::DivisionFailed,
            other => MutationError::NonMonomialDenominator(other.to_string()),
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed {
            matrix: mutate_matrix(&self.matrix, k),
            cluster,
            frozen: self.frozen.clone(),
        })
    }
}

/// Matrix mutation of an extended exchange matrix in column `k`.
pub fn mutate_matrix(m: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..m.len())
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i == k || j == k {
                        -m[i][j]
                    } else {
                        m[i][j] + (m[i][k].abs() * m[k][j] + m[i][k] * m[k][j].abs()) / 2
                    }
                })
                .collect()
        })
        .collect()
}

/// Applies mutations left to right.
pub fn run_sequence(s: &Seed, ks: &[usize]) -> Result<Seed, MutationError> {
    let mut cur = s.clone();
    for &k in ks {
        cur = cur.mutate(k)?;
    }
    Ok(cur)
}

/// Sets every `x` variable to 1.
pub fn f_from_x(x: &Laurent) -> Laurent {
    x.set_kind_to_one(VarKind::X)
}

/// Expresses a principal-coefficient variable over another coefficient
/// system: `X(x; y*) / F|_P(y*)`, where `y*_k` is the coefficient tuple and
/// the denominator is evaluated tropically.
pub fn specialize_geometric(
    x: &Laurent,
    f: &Laurent,
    labels: &[String],
    ystar: &[Monomial],
) -> Result<Laurent, MutationError> {
    if labels.len() != ystar.len() {
        return Err(MutationError::Shape);
    }
    let mut bindings = std::collections::BTreeMap::new();
    for (l, y) in labels.iter().zip(ystar) {
        bindings.insert(Var::y(l), Laurent::monomial(y.clone()));
    }
    let mut trop: Option<std::collections::BTreeMap<Var, i64>> = None;
    for (m, c) in f.terms() {
        if !c.is_positive() {
            return Err(MutationError::NonMonomialDenominator("F has a non-positive coefficient".into()));
        }
        if m.factors().iter().any(|(v, _)| v.kind() != VarKind::Y) {
            return Err(MutationError::NonMonomialDenominator("F involves non-coefficient variables".into()));
        }
        let image = m
            .factors()
            .iter()
            .try_fold(Monomial::one(), |acc, (v, e)| match bindings.get(v).and_then(|p| p.as_term()) {
                Some((mm, c)) if c.is_one() => Ok(acc.mul(&mm.pow(*e))),
                _ => Err(MutationError::NonMonomialDenominator(format!("no tropical value for {v}"))),
            })?;
        let exps: std::collections::BTreeMap<Var, i64> = image.factors().iter().cloned().collect();
        trop = Some(match trop {
            None => exps,
            Some(prev) => {
                let mut keys: Vec<Var> = prev.keys().chain(exps.keys()).cloned().collect();
                keys.sort();
                keys.dedup();
                keys.into_iter()
                    .map(|v| {
                        let a = prev.get(&v).copied().unwrap_or(0);
                        let b = exps.get(&v).copied().unwrap_or(0);
                        (v, a.min(b))
                    })
                    .collect()
            }
        });
    }
    let den = Monomial::from_pairs(trop.ok_or_else(|| MutationError::NonMonomialDenominator("F is zero".into()))?);
    let num = x
        .substitute(&bindings)
        .map_err(|e| MutationError::NonMonomialDenominator(e.to_string()))?;
    Ok(num.mul_monomial(&den.inv()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedFile {
    version: u32,
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
    #[serde(default)]
    frozen: Option<Vec<String>>,
}

/// Reads a seed file: labels, the extended matrix and optional frozen names
/// (default: `y_i` for principal coefficients).
pub fn parse_seed(text: &str) -> Result<(Vec<String>, Seed), MutationError> {
    let f: SeedFile = serde_json::from_str(text)
        .map_err(|e| MutationError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    if f.version != crate::cli::FORMAT_VERSION {
        return Err(MutationError::Parse(format!("unsupported version {}", f.version)));
    }
    let frozen = match f.frozen {
        Some(names) => names.iter().map(|n| Var::x(n)).collect(),
        None => f.labels.iter().map(|l| Var::y(l)).collect(),
    };
    let s = Seed::new(&f.labels, f.matrix, frozen)?;
    Ok((f.labels, s))
}

/// Seed file text for a seed in the initial variables.
pub fn render_seed(labels: &[String], s: &Seed) -> String {
    let principal = s.frozen.iter().map(|v| v.name()).eq(labels.iter().map(|l| l.as_str()))
        && s.frozen.iter().all(|v| v.kind() == VarKind::Y);
    let f = SeedFile {
        version: crate::cli::FORMAT_VERSION,
        labels: labels.to_vec(),
        matrix: s.matrix.clone(),
        frozen: if principal {
            None
        } else {
            Some(s.frozen.iter().map(|v| v.name().to_string()).collect())
        },
    };
    serde_json::to_string_pretty(&f).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_step_exchange() {
        let s = Seed::principal(&labels(&["d"]), &[vec![0]]).unwrap();
        let m = s.mutate(0).unwrap();
        assert_eq!(m.cluster()[0].canonical_text(), "x_d^-1 + y_d*x_d^-1");
        assert_eq!(m.mutate(0).unwrap(), s);
        assert_eq!(f_from_x(&m.cluster()[0]).canonical_text(), "1 + y_d");
    }

    #[test]
    fn rank_two_periodicity() {
        let l = labels(&["1", "2"]);
        let s = Seed::principal(&l, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let e = run_sequence(&s, &[0, 1, 0, 1, 0]).unwrap();
        assert_eq!(e.cluster()[0], s.cluster()[1]);
        assert_eq!(e.cluster()[1], s.cluster()[0]);
    }

    #[test]
    fn empty_sequence_and_reverse() {
        let l = labels(&["1", "2", "3"]);
        let b = vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]];
        let s = Seed::principal(&l, &b).unwrap();
        assert_eq!(run_sequence(&s, &[]).unwrap(), s);
        let seq = [0, 2, 1, 0];
        let there = run_sequence(&s, &seq).unwrap();
        let back: Vec<usize> = seq.iter().rev().copied().collect();
        assert_eq!(run_sequence(&there, &back).unwrap(), s);
    }

    #[test]
    fn out_of_range() {
        let s = Seed::principal(&labels(&["d"]), &[vec![0]]).unwrap();
        assert_eq!(s.mutate(1), Err(MutationError::IndexOutOfRange(1, 1)));
    }

    #[test]
    fn all_ones_gives_coefficient_free() {
        let s = Seed::principal(&labels(&["d"]), &[vec![0]]).unwrap();
        let x = s.mutate(0).unwrap().cluster()[0].clone();
        let f = f_from_x(&x);
        let free = specialize_geometric(&x, &f, &labels(&["d"]), &[Monomial::one()]).unwrap();
        assert_eq!(free.canonical_text(), "2*x_d^-1");
        let same = specialize_geometric(&x, &f, &labels(&["d"]), &[Monomial::var(Var::y("d"))]).unwrap();
        assert_eq!(same, x);
    }
}
