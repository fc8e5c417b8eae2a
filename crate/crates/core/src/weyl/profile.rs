use std::fmt;
use std::sync::Arc;

/// Variable layout of an extended Weyl algebra.
///
/// Exponent slots are laid out in normal order:
/// `x_1..x_n, t_1..t_r, dx_1..dx_n, dt_1..dt_r, s_1..s_k, extra.., h`.
/// Positions `x, t` pair with derivations `dx, dt`; `s`, the extra block and
/// `h` are central.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraProfile {
    xs: Vec<String>,
    nt: usize,
    ns: usize,
    extra: Vec<String>,
    homogenized: bool,
}

fn indexed(base: &str, count: usize, i: usize) -> String {
    if count == 1 {
        base.to_string()
    } else {
        format!("{base}{}", i + 1)
    }
}

impl AlgebraProfile {
    pub fn new(xs: Vec<String>, nt: usize, ns: usize) -> Arc<Self> {
        Arc::new(AlgebraProfile { xs, nt, ns, extra: Vec::new(), homogenized: false })
    }

    pub fn with_extra(xs: Vec<String>, nt: usize, ns: usize, extra: Vec<String>) -> Arc<Self> {
        Arc::new(AlgebraProfile { xs, nt, ns, extra, homogenized: false })
    }

    /// A purely commutative polynomial ring on the given names.
    pub fn commutative(names: Vec<String>) -> Arc<Self> {
        Arc::new(AlgebraProfile { xs: Vec::new(), nt: 0, ns: 0, extra: names, homogenized: false })
    }

    /// The D_n[s_1..s_r] profile used for annihilators and Bernstein-Sato ideals.
    pub fn dns(xs: Vec<String>, r: usize) -> Arc<Self> {
        AlgebraProfile::new(xs, 0, r)
    }

    pub fn homogenized(&self) -> Arc<Self> {
        let mut p = self.clone();
        p.homogenized = true;
        Arc::new(p)
    }

    pub fn dehomogenized(&self) -> Arc<Self> {
        let mut p = self.clone();
        p.homogenized = false;
        Arc::new(p)
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn ns(&self) -> usize {
        self.ns
    }

    pub fn nextra(&self) -> usize {
        self.extra.len()
    }

    pub fn is_homogenized(&self) -> bool {
        self.homogenized
    }

    pub fn x_names(&self) -> &[String] {
        &self.xs
    }

    /// Number of (position, derivation) pairs.
    #[inline]
    pub fn npairs(&self) -> usize {
        self.xs.len() + self.nt
    }

    pub fn nvars(&self) -> usize {
        2 * self.npairs() + self.ns + self.extra.len() + usize::from(self.homogenized)
    }

    #[inline]
    pub fn x(&self, i: usize) -> usize {
        i
    }

    #[inline]
    pub fn t(&self, i: usize) -> usize {
        self.xs.len() + i
    }

    #[inline]
    pub fn dx(&self, i: usize) -> usize {
        self.npairs() + i
    }

    #[inline]
    pub fn dt(&self, i: usize) -> usize {
        self.npairs() + self.xs.len() + i
    }

    #[inline]
    pub fn s(&self, i: usize) -> usize {
        2 * self.npairs() + i
    }

    #[inline]
    pub fn extra(&self, i: usize) -> usize {
        2 * self.npairs() + self.ns + i
    }

    pub fn h(&self) -> Option<usize> {
        self.homogenized.then(|| self.nvars() - 1)
    }

    /// First slot of the central block.
    #[inline]
    pub fn central_start(&self) -> usize {
        2 * self.npairs()
    }

    pub fn x_slots(&self) -> Vec<usize> {
        (0..self.n()).flat_map(|i| [self.x(i), self.dx(i)]).collect()
    }

    pub fn t_slots(&self) -> Vec<usize> {
        (0..self.nt).flat_map(|i| [self.t(i), self.dt(i)]).collect()
    }

    pub fn s_slots(&self) -> Vec<usize> {
        (0..self.ns).map(|i| self.s(i)).collect()
    }

    pub fn extra_slots(&self) -> Vec<usize> {
        (0..self.extra.len()).map(|i| self.extra(i)).collect()
    }

    pub fn s_name(&self, i: usize) -> String {
        indexed("s", self.ns, i)
    }

    pub fn s_names(&self) -> Vec<String> {
        (0..self.ns).map(|i| self.s_name(i)).collect()
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut v = Vec::with_capacity(self.nvars());
        v.extend(self.xs.iter().cloned());
        v.extend((0..self.nt).map(|i| indexed("t", self.nt, i)));
        v.extend(self.xs.iter().map(|x| format!("d{x}")));
        v.extend((0..self.nt).map(|i| format!("d{}", indexed("t", self.nt, i))));
        v.extend(self.s_names());
        v.extend(self.extra.iter().cloned());
        if self.homogenized {
            v.push("h".to_string());
        }
        v
    }

    pub fn slot_of(&self, name: &str) -> Option<usize> {
        self.var_names().iter().position(|v| v == name)
    }
}

impl fmt::Debug for AlgebraProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile{:?}", self.var_names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_follows_normal_order() {
        let p = AlgebraProfile::new(vec!["x".into(), "y".into()], 1, 1).homogenized();
        assert_eq!(p.var_names(), ["x", "y", "t", "dx", "dy", "dt", "s", "h"]);
        assert_eq!(p.dx(1), 4);
        assert_eq!(p.dt(0), 5);
        assert_eq!(p.h(), Some(7));
        let q = AlgebraProfile::new(vec!["x".into()], 2, 2);
        assert_eq!(q.var_names(), ["x", "t1", "t2", "dx", "dt1", "dt2", "s1", "s2"]);
    }
}
