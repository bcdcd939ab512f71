//! The action φ of `S_n × S_{k−1}` on S(n,k).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{KPerm, PairGroup, Perm, PermGroup};

/// A pair `(μ, ν)` with `μ ∈ S_n` and `ν` permuting only `{2, …, k}`.
///
/// It acts on vertices by `[a₁,…,a_k] ↦ [μ(a_{ν⁻¹(1)}), …, μ(a_{ν⁻¹(k)})]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutPair {
    pub mu: Perm,
    pub nu: Perm,
    k: usize,
}

impl AutPair {
    pub fn new(mu: Perm, nu: Perm, k: usize) -> Result<AutPair> {
        let n = mu.degree();
        if nu.degree() != n {
            return Err(Error::DegreeMismatch(n, nu.degree()));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameters(format!("k = {k} for n = {n}")));
        }
        let outside_support = std::iter::once(1).chain(k + 1..=n);
        if let Some(x) = outside_support.into_iter().find(|&x| nu.apply(x) != x) {
            return Err(Error::NotInStabilizerFactor(format!("{nu} moves {x}")));
        }
        Ok(AutPair { mu, nu, k })
    }

    pub fn identity(n: usize, k: usize) -> AutPair {
        AutPair {
            mu: Perm::identity(n),
            nu: Perm::identity(n),
            k,
        }
    }

    pub fn n(&self) -> usize {
        self.mu.degree()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_identity(&self) -> bool {
        self.mu.is_identity() && self.nu.is_identity()
    }

    /// Componentwise product; `self.compose(g)` acts as `g` first.
    pub fn compose(&self, other: &AutPair) -> Result<AutPair> {
        if self.k != other.k {
            return Err(Error::InvalidParameters("pairs for different k".into()));
        }
        Ok(AutPair {
            mu: self.mu.compose(&other.mu)?,
            nu: self.nu.compose(&other.nu)?,
            k: self.k,
        })
    }

    pub fn inverse(&self) -> AutPair {
        AutPair {
            mu: self.mu.inverse(),
            nu: self.nu.inverse(),
            k: self.k,
        }
    }

    /// Image of a vertex, 0-based entries in and out; the hot path for certificates.
    #[inline]
    pub(crate) fn act_raw(mu: &Perm, nu_inv: &Perm, a: &[u8], out: &mut [u8]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = mu.apply0(a[nu_inv.apply0(i)] as usize) as u8;
        }
    }

    /// The pair as one permutation of `2n` points: `μ` on the first `n`, `ν` shifted
    /// onto the last `n`. Group closure of embedded pairs is closure of pairs.
    pub(crate) fn embed(&self) -> Perm {
        let n = self.n();
        let mut images = Vec::with_capacity(2 * n);
        images.extend((0..n).map(|i| self.mu.apply0(i) as u8));
        images.extend((0..n).map(|i| (n + self.nu.apply0(i)) as u8));
        Perm::from_raw(images)
    }

    pub(crate) fn from_embedded(p: &Perm, k: usize) -> AutPair {
        let n = p.degree() / 2;
        let raw = p.raw();
        AutPair {
            mu: Perm::from_raw(raw[..n].to_vec()),
            nu: Perm::from_raw(raw[n..].iter().map(|&x| x - n as u8).collect()),
            k,
        }
    }

    /// Whether the pair fixes at least one vertex of S(n,k).
    ///
    /// `(μ,ν)` fixes `a` iff `a_{ν(j)} = μ(a_j)` for every position `j`, so each ν-cycle
    /// on positions `1..k` of length `L` must be carried by its own μ-cycle of length
    /// exactly `L`. A fixed vertex exists iff, for every `L`, μ has at least as many
    /// `L`-cycles as ν has on positions.
    pub fn fixes_some_vertex(&self) -> bool {
        let mut mu_cycles = vec![0usize; self.n() + 1];
        for c in self.mu.cycles() {
            mu_cycles[c.len()] += 1;
        }
        let mut nu_cycles = vec![0usize; self.n() + 1];
        for c in self.nu.cycles().into_iter().filter(|c| c[0] <= self.k) {
            nu_cycles[c.len()] += 1;
        }
        (1..=self.n()).all(|l| mu_cycles[l] >= nu_cycles[l])
    }
}

/// `φ(μ,ν)(v)`.
pub fn apply_automorphism(f: &AutPair, v: &KPerm) -> Result<KPerm> {
    if v.n() != f.n() || v.k() != f.k() {
        return Err(Error::InvalidParameters(format!(
            "{v} is not a vertex of S({},{})",
            f.n(),
            f.k()
        )));
    }
    let nu_inv = f.nu.inverse();
    let a = v.entries();
    let image = (1..=f.k())
        .map(|i| f.mu.apply(a[nu_inv.apply(i) - 1] as usize) as u32)
        .collect();
    Ok(KPerm::from_entries_unchecked(image, f.n()))
}

/// `S_n × S_{k−1}`, the full automorphism group of S(n,k) for `k ≥ 2`, `n ≥ k + 2`.
///
/// Factors are enumerated when they fit under `cap`; otherwise they are carried as
/// generators with known order.
pub fn aut_product(n: usize, k: usize, cap: usize) -> Result<PairGroup> {
    if k < 2 || n < k + 2 {
        return Err(Error::InvalidParameters(format!(
            "aut_product needs k >= 2 and n >= k + 2, got ({n},{k})"
        )));
    }
    let left = PermGroup::symmetric(n, cap)?;
    let positions: Vec<usize> = (2..=k).collect();
    let right = PermGroup::symmetric_on(n, &positions, cap)?;
    PairGroup::product(left, right, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ELEMENT_CAP;
    use crate::star::{edge_kind, unrank, StarGraph};

    fn pair(mu: &[usize], nu: &[usize], k: usize) -> AutPair {
        AutPair::new(
            Perm::from_images(mu).unwrap(),
            Perm::from_images(nu).unwrap(),
            k,
        )
        .unwrap()
    }

    #[test]
    fn identity_pair_fixes_everything() {
        let id = AutPair::identity(5, 3);
        for i in 0..60 {
            let v = unrank(i, 5, 3).unwrap();
            assert_eq!(apply_automorphism(&id, &v).unwrap(), v);
        }
    }

    #[test]
    fn representative_sends_base_vertex_to_its_class() {
        let a = Perm::from_images(&[4, 1, 5, 2, 3]).unwrap();
        let f = AutPair::new(a, Perm::identity(5), 3).unwrap();
        let image = apply_automorphism(&f, &KPerm::base(5, 3)).unwrap();
        assert_eq!(image.entries(), &[4, 1, 5]);
    }

    #[test]
    fn explicit_formula() {
        // ν = (2 3), so ν⁻¹ = (2 3): [a1,a2,a3] -> [μ(a1), μ(a3), μ(a2)].
        let f = pair(&[2, 3, 4, 5, 1], &[1, 3, 2, 4, 5], 3);
        let v = KPerm::new(vec![1, 4, 2], 5).unwrap();
        assert_eq!(apply_automorphism(&f, &v).unwrap().entries(), &[2, 3, 5]);
    }

    #[test]
    fn nu_outside_factor_is_rejected() {
        let bad = AutPair::new(
            Perm::identity(5),
            Perm::from_cycles(5, &[&[1, 2]]).unwrap(),
            3,
        );
        assert!(matches!(bad, Err(Error::NotInStabilizerFactor(_))));
        let bad = AutPair::new(
            Perm::identity(5),
            Perm::from_cycles(5, &[&[3, 4]]).unwrap(),
            3,
        );
        assert!(matches!(bad, Err(Error::NotInStabilizerFactor(_))));
    }

    #[test]
    fn aut_product_orders() {
        assert_eq!(aut_product(4, 2, DEFAULT_ELEMENT_CAP).unwrap().order(), 24);
        assert_eq!(aut_product(5, 3, DEFAULT_ELEMENT_CAP).unwrap().order(), 240);
        assert_eq!(
            aut_product(9, 4, DEFAULT_ELEMENT_CAP).unwrap().order(),
            2_177_280
        );
        assert!(aut_product(4, 3, DEFAULT_ELEMENT_CAP).is_err());
    }

    #[test]
    fn every_pair_preserves_edges_with_kind_on_5_3() {
        let g = StarGraph::build(5, 3).unwrap();
        let aut = aut_product(5, 3, DEFAULT_ELEMENT_CAP).unwrap();
        for f in aut.pairs().unwrap() {
            for (u, v, kind) in g.edges() {
                let fu = apply_automorphism(&f, &g.vertex(u)).unwrap();
                let fv = apply_automorphism(&f, &g.vertex(v)).unwrap();
                assert_eq!(edge_kind(&fu, &fv).unwrap(), Some(kind));
            }
        }
    }

    #[test]
    fn embedding_round_trips() {
        let f = pair(&[2, 3, 1, 5, 4], &[1, 3, 2, 4, 5], 3);
        assert_eq!(AutPair::from_embedded(&f.embed(), 3), f);
    }

    #[test]
    fn fixed_vertex_criterion_matches_brute_force() {
        let aut = aut_product(5, 3, DEFAULT_ELEMENT_CAP).unwrap();
        for f in aut.pairs().unwrap() {
            let brute = (0..60).any(|i| {
                let v = unrank(i, 5, 3).unwrap();
                apply_automorphism(&f, &v).unwrap() == v
            });
            assert_eq!(f.fixes_some_vertex(), brute, "{f:?}");
        }
    }
}
