//! Monoid ideals in `N^r`: Dickson-minimal generators, membership, powers,
//! localization at a vector and log strata.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("zero vector among the generators")]
    ZeroGenerator,
    #[error("no generators")]
    Empty,
    #[error("vector of length {got} in rank {expected}")]
    Dimension { expected: usize, got: usize },
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Dickson-minimal antichain, sorted lexicographically.
fn minimalize(mut vs: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    vs.sort();
    vs.dedup();
    let keep: Vec<bool> = (0..vs.len())
        .map(|i| !(0..vs.len()).any(|j| j != i && dominates(&vs[i], &vs[j])))
        .collect();
    vs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect()
}

/// A proper monoid ideal of `N^r` given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidIdeal {
    r: usize,
    generators: Vec<Vec<u32>>,
}

impl MonoidIdeal {
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        membership(self, v)
    }
}

impl fmt::Display for MonoidIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{g:?}")).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

pub fn minimal_generators(r: usize, vs: &[Vec<u32>]) -> Result<MonoidIdeal, MonoidError> {
    if vs.is_empty() {
        return Err(MonoidError::Empty);
    }
    for v in vs {
        if v.len() != r {
            return Err(MonoidError::Dimension { expected: r, got: v.len() });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(MonoidError::ZeroGenerator);
        }
    }
    Ok(MonoidIdeal { r, generators: minimalize(vs.to_vec()) })
}

pub fn membership(k: &MonoidIdeal, v: &[u32]) -> bool {
    v.len() == k.r && k.generators.iter().any(|g| dominates(v, g))
}

/// `K^j`: all sums of `j` generators, minimalized.
pub fn power(k: &MonoidIdeal, j: u32) -> MonoidIdeal {
    assert!(j >= 1, "power of a monoid ideal needs j >= 1");
    let mut acc = k.generators.clone();
    for _ in 1..j {
        let mut next = Vec::with_capacity(acc.len() * k.generators.len());
        for a in &acc {
            for g in &k.generators {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        acc = minimalize(next);
    }
    MonoidIdeal { r: k.r, generators: acc }
}

/// `<j·v_1, …, j·v_p>`: each generator scaled, as in the nearby-cycle levels.
pub fn scaled(k: &MonoidIdeal, j: u32) -> MonoidIdeal {
    let gens = k.generators.iter().map(|g| g.iter().map(|x| x * j).collect()).collect();
    MonoidIdeal { r: k.r, generators: minimalize(gens) }
}

/// `K_m`: coordinates in `supp(m)` are inverted and dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalizedIdeal {
    r: usize,
    /// Inverted coordinates, ascending.
    support: Vec<usize>,
    /// Dickson-minimal generators in the complementary coordinates; a
    /// single zero vector marks the unit ideal.
    generators: Vec<Vec<u32>>,
}

impl LocalizedIdeal {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Coordinates kept, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.r).filter(|i| !self.support.contains(i)).collect()
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.generators.iter().any(|g| dominates(v, g))
    }
}

pub fn localize(k: &MonoidIdeal, m: &[u32]) -> LocalizedIdeal {
    assert_eq!(m.len(), k.r);
    let support: Vec<usize> = (0..k.r).filter(|&i| m[i] > 0).collect();
    let keep: Vec<usize> = (0..k.r).filter(|i| !support.contains(i)).collect();
    let projected = k.generators.iter().map(|g| keep.iter().map(|&i| g[i]).collect()).collect();
    LocalizedIdeal { r: k.r, support, generators: minimalize(projected) }
}

/// Localizes an already localized ideal further.
pub fn localize_again(k: &LocalizedIdeal, m: &[u32]) -> LocalizedIdeal {
    assert_eq!(m.len(), k.r);
    let comp = k.complement();
    let mut support = k.support.clone();
    support.extend((0..k.r).filter(|&i| m[i] > 0 && !k.support.contains(&i)));
    support.sort_unstable();
    let keep: Vec<usize> = (0..comp.len()).filter(|&j| !support.contains(&comp[j])).collect();
    let projected = k.generators.iter().map(|g| keep.iter().map(|&j| g[j]).collect()).collect();
    LocalizedIdeal { r: k.r, support, generators: minimalize(projected) }
}

/// The stratum of `X × A^r` where exactly the coordinates in `I` vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogStratum {
    pub vanishing: Vec<usize>,
    /// Closure `X × {t_i = 0, i ∈ I}`, described by its equations.
    pub closure: String,
    /// Induced divisor on the closure: the remaining `t_j = 0`.
    pub divisor: String,
    pub rank: usize,
}

pub fn log_stratum(r: usize, vanishing: &[usize]) -> LogStratum {
    let mut v = vanishing.to_vec();
    v.sort_unstable();
    v.dedup();
    let t = |i: usize| if r == 1 { "t".to_string() } else { format!("t{}", i + 1) };
    let closure = if v.is_empty() {
        "X × A^r".to_string()
    } else {
        format!("X × {{{}}}", v.iter().map(|&i| format!("{} = 0", t(i))).collect::<Vec<_>>().join(", "))
    };
    let rest: Vec<String> = (0..r).filter(|i| !v.contains(i)).map(|i| format!("{} = 0", t(i))).collect();
    let divisor = if rest.is_empty() { "empty".to_string() } else { rest.join(" ∪ ") };
    LogStratum { rank: v.len(), vanishing: v, closure, divisor }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_generator_examples() {
        let k = minimal_generators(2, &[vec![1, 1], vec![2, 1]]).unwrap();
        assert_eq!(k.generators(), &[vec![1, 1]]);
        let k = minimal_generators(2, &[vec![2, 0], vec![0, 3], vec![1, 1]]).unwrap();
        assert_eq!(k.generators().len(), 3);
        let k = minimal_generators(2, &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(k.generators(), &[vec![1, 0]]);
        assert_eq!(minimal_generators(2, &[vec![0, 0]]), Err(MonoidError::ZeroGenerator));
    }

    #[test]
    fn membership_examples() {
        let k = minimal_generators(2, &[vec![1, 1]]).unwrap();
        assert!(membership(&k, &[2, 1]));
        assert!(!membership(&k, &[1, 0]));
        assert!(membership(&k, &[1, 1]));
    }

    #[test]
    fn power_examples() {
        let k = minimal_generators(2, &[vec![1, 1]]).unwrap();
        assert_eq!(power(&k, 2).generators(), &[vec![2, 2]]);
        let k = minimal_generators(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(power(&k, 2).generators(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(power(&k, 1), k);
    }

    #[test]
    fn localize_examples() {
        let k = minimal_generators(2, &[vec![2, 1], vec![0, 3]]).unwrap();
        let l = localize(&k, &[1, 0]);
        assert_eq!(l.support(), &[0]);
        assert_eq!(l.generators(), &[vec![1]]);
        let l0 = localize(&k, &[0, 0]);
        assert_eq!(l0.generators(), k.generators());
        let k = minimal_generators(2, &[vec![1, 0]]).unwrap();
        assert!(localize(&k, &[1, 0]).is_unit());
    }

    #[test]
    fn strata() {
        assert_eq!(log_stratum(2, &[]).rank, 0);
        assert_eq!(log_stratum(2, &[0, 1]).rank, 2);
        assert_eq!(log_stratum(2, &[1]).rank, 1);
        assert_eq!(log_stratum(2, &[0, 1]).divisor, "empty");
    }
}
