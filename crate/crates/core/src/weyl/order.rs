use super::profile::AlgebraProfile;
use crate::arith::Mono;
use std::cmp::Ordering;
use std::fmt;

/// A multiplicative monomial order: integer weight rows compared first, then
/// a sequence of blocks, each compared by graded reverse lex on its slots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    weights: Vec<Vec<i64>>,
    blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    DegRevLex,
    Elimination { eliminated: Vec<usize> },
    Weighted { weight: Vec<i64> },
    HomogenizedWeight { weight: Vec<i64> },
}

impl TermOrder {
    pub fn degrevlex(profile: &AlgebraProfile) -> Self {
        TermOrder {
            kind: OrderKind::DegRevLex,
            weights: Vec::new(),
            blocks: vec![(0..profile.nvars()).collect()],
        }
    }

    /// Block order: the `eliminated` slots form the first block, every other
    /// slot the second; each block is graded reverse lex.
    pub fn elimination(profile: &AlgebraProfile, eliminated: &[usize]) -> Self {
        let mut first: Vec<usize> = eliminated.to_vec();
        first.sort_unstable();
        first.dedup();
        let rest: Vec<usize> = (0..profile.nvars()).filter(|i| !first.contains(i)).collect();
        TermOrder {
            kind: OrderKind::Elimination { eliminated: first.clone() },
            weights: Vec::new(),
            blocks: vec![first, rest],
        }
    }

    /// Weight vector refined by graded reverse lex. Only a well-order when
    /// the weights are non-negative.
    pub fn weighted(profile: &AlgebraProfile, weight: Vec<i64>) -> Self {
        assert_eq!(weight.len(), profile.nvars());
        TermOrder {
            kind: OrderKind::Weighted { weight: weight.clone() },
            weights: vec![weight],
            blocks: vec![(0..profile.nvars()).collect()],
        }
    }

    /// Order on the homogenized algebra: total degree (h included), then the
    /// weight, then graded reverse lex with `h` as the last variable.
    pub fn homogenized_weight(profile: &AlgebraProfile, weight: Vec<i64>) -> Self {
        assert!(profile.is_homogenized());
        let n = profile.nvars();
        let mut w = weight.clone();
        if w.len() + 1 == n {
            w.push(0);
        }
        assert_eq!(w.len(), n);
        TermOrder {
            kind: OrderKind::HomogenizedWeight { weight },
            weights: vec![vec![1; n], w],
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for w in &self.weights {
            let wa: i64 = w.iter().zip(a.exps()).map(|(x, &e)| x * e as i64).sum();
            let wb: i64 = w.iter().zip(b.exps()).map(|(x, &e)| x * e as i64).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for block in &self.blocks {
            let da = a.deg_in(block);
            let db = b.deg_in(block);
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for &i in block.iter().rev() {
                let (x, y) = (a.get(i), b.get(i));
                if x != y {
                    return y.cmp(&x);
                }
            }
        }
        Ordering::Equal
    }

    /// Stable textual descriptor, used in cache keys and reports.
    pub fn descriptor(&self) -> String {
        match &self.kind {
            OrderKind::DegRevLex => "degrevlex".to_string(),
            OrderKind::Elimination { eliminated } => format!("elim{eliminated:?}"),
            OrderKind::Weighted { weight } => format!("weight{weight:?}"),
            OrderKind::HomogenizedWeight { weight } => format!("hweight{weight:?}"),
        }
    }

    /// True when every weight row is non-negative, so the order is a
    /// well-order usable without homogenization.
    pub fn is_well_order(&self) -> bool {
        self.weights.iter().all(|w| w.iter().all(|&x| x >= 0))
    }
}

impl fmt::Debug for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

/// Weight admissibility for the Weyl relations: `w(x_i) + w(dx_i) >= 0`.
pub fn weight_admissible(profile: &AlgebraProfile, w: &[i64]) -> bool {
    (0..profile.npairs()).all(|i| w[i] + w[profile.npairs() + i] >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_block_dominates() {
        let p = AlgebraProfile::dns(vec!["x".into()], 1);
        // slots: x, dx, s
        let o = TermOrder::elimination(&p, &[0, 1]);
        let x = Mono::from_slice(&[1, 0, 0]);
        let s3 = Mono::from_slice(&[0, 0, 3]);
        assert_eq!(o.cmp(&x, &s3), Ordering::Greater);
        let d = TermOrder::degrevlex(&p);
        assert_eq!(d.cmp(&x, &s3), Ordering::Less);
    }

    #[test]
    fn homogenized_weight_puts_h_last() {
        let p = AlgebraProfile::new(vec!["x".into()], 0, 0).homogenized();
        // slots: x, dx, h
        let o = TermOrder::homogenized_weight(&p, vec![0, 0]);
        let xd = Mono::from_slice(&[1, 1, 0]);
        let h2 = Mono::from_slice(&[0, 0, 2]);
        assert_eq!(o.cmp(&xd, &h2), Ordering::Greater);
    }
}
