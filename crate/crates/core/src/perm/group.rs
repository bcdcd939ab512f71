use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use super::Perm;
use crate::error::{Error, Result};
use crate::util::{binomial_u128, factorial_u128, falling_u128};

/// Enumeration cap shared by group closure and graph materialization.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// A finitely generated permutation group.
///
/// The element set is present only when closure finished under its cap. Groups that
/// are too large to enumerate (e.g. big symmetric groups) carry their generators and
/// a known order, which is enough for the orbit-based predicates.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    name: Option<String>,
    generators: Vec<Perm>,
    elements: Option<IndexSet<Perm>>,
    order: u128,
}

/// Serialized form: `{degree, name, generators}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub name: Option<String>,
    pub generators: Vec<Perm>,
}

/// Generates the group spanned by `generators`, enumerating every element.
pub fn closure(generators: &[Perm], cap: usize) -> Result<PermGroup> {
    let elements =
        closure_filtered(generators, cap, |_| true)?.expect("accept-all filter never rejects");
    let degree = generators[0].degree();
    Ok(PermGroup {
        degree,
        name: None,
        generators: generators.to_vec(),
        order: elements.len() as u128,
        elements: Some(elements),
    })
}

/// Breadth-first closure that aborts as soon as an element fails `accept`.
///
/// Returns `Ok(None)` on rejection and `Err(CapExceeded)` once more than `cap`
/// elements have been found.
pub fn closure_filtered(
    generators: &[Perm],
    cap: usize,
    accept: impl Fn(&Perm) -> bool,
) -> Result<Option<IndexSet<Perm>>> {
    let first = generators.first().ok_or(Error::NoGenerators)?;
    let n = first.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    if cap == 0 {
        return Err(Error::InvalidParameters("cap must be at least 1".into()));
    }
    let gens: Vec<&Perm> = generators.iter().filter(|g| !g.is_identity()).collect();
    let mut elements = IndexSet::new();
    elements.insert(Perm::identity(n));
    let mut cursor = 0;
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        cursor += 1;
        for g in &gens {
            let next = current.mul(g);
            if elements.contains(&next) {
                continue;
            }
            if !accept(&next) {
                return Ok(None);
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            elements.insert(next);
        }
    }
    Ok(Some(elements))
}

/// Size of the orbit of `start` under the group generated by `gens`, stopping early once
/// it exceeds `limit`.
pub(crate) fn orbit_size<T, F>(start: T, gens: &[Perm], limit: u128, act: F) -> u128
where
    T: Hash + Eq + Clone,
    F: Fn(&Perm, &T) -> T,
{
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = act(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() as u128 > limit {
                    return seen.len() as u128;
                }
                queue.push_back(y);
            }
        }
    }
    seen.len() as u128
}

impl PermGroup {
    pub fn generate(name: impl Into<String>, generators: &[Perm], cap: usize) -> Result<PermGroup> {
        Ok(closure(generators, cap)?.with_name(name))
    }

    pub fn trivial(degree: usize) -> PermGroup {
        let id = Perm::identity(degree);
        PermGroup {
            degree,
            name: Some("1".into()),
            generators: vec![id.clone()],
            elements: Some(std::iter::once(id).collect()),
            order: 1,
        }
    }

    /// The full symmetric group on `{1..n}`.
    pub fn symmetric(n: usize, cap: usize) -> Result<PermGroup> {
        let points: Vec<usize> = (1..=n).collect();
        Ok(PermGroup::symmetric_on(n, &points, cap)?.with_name(format!("S_{n}")))
    }

    /// Symmetric group on the given 1-based `points`, fixing the rest of `{1..degree}`.
    /// Enumerated when its order fits under `cap`.
    pub fn symmetric_on(degree: usize, points: &[usize], cap: usize) -> Result<PermGroup> {
        let m = points.len();
        if m <= 1 {
            return Ok(PermGroup::trivial(degree).with_name("S_1"));
        }
        let mut generators = vec![Perm::transposition(degree, points[0], points[1])?];
        if m > 2 {
            generators.push(Perm::from_cycles(degree, &[points])?);
        }
        let order = factorial_u128(m as u64)
            .ok_or_else(|| Error::InvalidParameters(format!("S_{m} order overflows")))?;
        let name = format!("S_{m}");
        if order <= cap as u128 {
            Ok(closure(&generators, cap)?.with_name(name))
        } else {
            Ok(PermGroup {
                degree,
                name: Some(name),
                generators,
                elements: None,
                order,
            })
        }
    }

    /// The alternating group on `{1..n}`, `n ≥ 3`.
    pub fn alternating(n: usize, cap: usize) -> Result<PermGroup> {
        if n < 3 {
            return Ok(PermGroup::trivial(n).with_name(format!("A_{n}")));
        }
        let mut generators = vec![Perm::from_cycles(n, &[&[1, 2, 3]])?];
        if n > 3 {
            let long: Vec<usize> = if n % 2 == 1 {
                (1..=n).collect()
            } else {
                (2..=n).collect()
            };
            generators.push(Perm::from_cycles(n, &[&long])?);
        }
        let order = factorial_u128(n as u64)
            .ok_or_else(|| Error::InvalidParameters(format!("A_{n} order overflows")))?
            / 2;
        let name = format!("A_{n}");
        if order <= cap as u128 {
            Ok(closure(&generators, cap)?.with_name(name))
        } else {
            Ok(PermGroup {
                degree: n,
                name: Some(name),
                generators,
                elements: None,
                order,
            })
        }
    }

    /// Cyclic group generated by `(1 2 … n)`.
    pub fn cyclic(n: usize) -> Result<PermGroup> {
        if n <= 1 {
            return Ok(PermGroup::trivial(n.max(1)).with_name("C_1"));
        }
        let points: Vec<usize> = (1..=n).collect();
        let g = Perm::from_cycles(n, &[&points])?;
        Ok(closure(&[g], n)?.with_name(format!("C_{n}")))
    }

    pub(crate) fn from_parts(
        name: Option<String>,
        generators: Vec<Perm>,
        elements: IndexSet<Perm>,
    ) -> PermGroup {
        let degree = elements[0].degree();
        PermGroup {
            degree,
            name,
            generators,
            order: elements.len() as u128,
            elements: Some(elements),
        }
    }

    pub fn from_spec(spec: &GroupSpec, cap: usize) -> Result<PermGroup> {
        if let Some(g) = spec.generators.iter().find(|g| g.degree() != spec.degree) {
            return Err(Error::DegreeMismatch(spec.degree, g.degree()));
        }
        let group = closure(&spec.generators, cap)?;
        Ok(match &spec.name {
            Some(name) => group.with_name(name.clone()),
            None => group,
        })
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            name: self.name.clone(),
            generators: self.generators.clone(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PermGroup {
        self.name = Some(name.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub fn elements(&self) -> Result<&IndexSet<Perm>> {
        self.elements.as_ref().ok_or(Error::NotEnumerated)
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        Ok(self.elements()?.contains(p))
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.degree {
            return Err(Error::InvalidParameters(format!(
                "k = {k} outside 1..={}",
                self.degree
            )));
        }
        Ok(())
    }

    /// Size of the orbit of the ordered tuple `(1, …, k)`.
    pub fn tuple_orbit_size(&self, k: usize) -> Result<u128> {
        self.check_k(k)?;
        let start: Vec<u8> = (0..k as u8).collect();
        Ok(orbit_size(start, &self.generators, self.order, |g, t| {
            t.iter().map(|&x| g.apply0(x as usize) as u8).collect()
        }))
    }

    /// Size of the orbit of the set `{1, …, k}` under the induced set action.
    pub fn set_orbit_size(&self, k: usize) -> Result<u128> {
        self.check_k(k)?;
        let start: Vec<u8> = (0..k as u8).collect();
        Ok(orbit_size(start, &self.generators, self.order, |g, s| {
            let mut img: Vec<u8> = s.iter().map(|&x| g.apply0(x as usize) as u8).collect();
            img.sort_unstable();
            img
        }))
    }

    /// Transitive on ordered k-tuples of distinct points.
    ///
    /// One orbit representative suffices: the orbit of `(1..k)` has size `P(n,k)`
    /// exactly when it is the whole set.
    pub fn is_k_transitive(&self, k: usize) -> Result<bool> {
        let orbit = self.tuple_orbit_size(k)?;
        Ok(falling_u128(self.degree as u64, k as u64) == Some(orbit))
    }

    /// Transitive on k-subsets.
    pub fn is_k_homogeneous(&self, k: usize) -> Result<bool> {
        let orbit = self.set_orbit_size(k)?;
        Ok(binomial_u128(self.degree as u64, k as u64) == Some(orbit))
    }

    /// Regular on ordered k-tuples: k-transitive with `|G| = P(n,k)`.
    pub fn is_sharply_k_transitive(&self, k: usize) -> Result<bool> {
        self.check_k(k)?;
        if falling_u128(self.degree as u64, k as u64) != Some(self.order) {
            return Ok(false);
        }
        self.is_k_transitive(k)
    }

    pub fn is_transitive(&self) -> bool {
        self.is_k_transitive(1).unwrap_or(false)
    }

    /// Lagrange against the full symmetric group: `|G|` divides `n!`.
    pub fn order_divides_degree_factorial(&self) -> bool {
        factorial_u128(self.degree as u64).is_some_and(|f| f % self.order == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        closure(
            &[
                Perm::from_cycles(3, &[&[1, 2]]).unwrap(),
                Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap(),
            ],
            100,
        )
        .unwrap()
    }

    #[test]
    fn s3_has_order_six() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.elements().unwrap().len(), 6);
        assert!(g.is_k_transitive(3).unwrap());
        assert!(g.is_sharply_k_transitive(3).unwrap());
    }

    #[test]
    fn closure_contains_identity_and_is_closed() {
        let g = s3();
        let els = g.elements().unwrap();
        assert!(els.contains(&Perm::identity(3)));
        for a in els {
            assert!(els.contains(&a.inverse()));
            for b in els {
                assert!(els.contains(&a.compose(b).unwrap()));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            Perm::from_cycles(5, &[&[1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap(),
        ];
        assert_eq!(
            closure(&gens, 100).unwrap_err(),
            Error::CapExceeded { cap: 100 }
        );
        assert_eq!(closure(&gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn closure_rejects_bad_input() {
        assert_eq!(closure(&[], 10).unwrap_err(), Error::NoGenerators);
        let mixed = [Perm::identity(3), Perm::identity(4)];
        assert!(matches!(
            closure(&mixed, 10),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn s4_is_not_sharply_2_transitive() {
        let s4 = PermGroup::symmetric(4, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(s4.is_k_transitive(2).unwrap());
        assert!(!s4.is_sharply_k_transitive(2).unwrap());
    }

    #[test]
    fn transitive_groups_are_1_homogeneous() {
        for n in 2..8 {
            let c = PermGroup::cyclic(n).unwrap();
            assert!(c.is_k_homogeneous(1).unwrap());
            assert!(c.is_sharply_k_transitive(1).unwrap());
        }
    }

    #[test]
    fn large_symmetric_groups_stay_unenumerated() {
        let s12 = PermGroup::symmetric(12, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(!s12.is_enumerated());
        assert_eq!(s12.order(), 479_001_600);
        assert!(s12.is_k_transitive(3).unwrap());
        assert!(!s12.is_sharply_k_transitive(3).unwrap());
    }

    #[test]
    fn alternating_is_sharply_n_minus_2_transitive() {
        for n in 3..=7 {
            let a = PermGroup::alternating(n, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(a.order() * 2, factorial_u128(n as u64).unwrap());
            assert!(a.is_sharply_k_transitive(n - 2).unwrap(), "A_{n}");
        }
    }

    #[test]
    fn k_out_of_range_is_an_error() {
        let g = s3();
        assert!(g.is_k_transitive(0).is_err());
        assert!(g.is_k_homogeneous(4).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let g = s3().with_name("S_3");
        let json = serde_json::to_string(&g.spec()).unwrap();
        assert_eq!(
            json,
            r#"{"degree":3,"name":"S_3","generators":[[2,1,3],[2,3,1]]}"#
        );
        let back = PermGroup::from_spec(&serde_json::from_str(&json).unwrap(), 100).unwrap();
        assert_eq!(back.order(), 6);
        assert_eq!(back.name(), Some("S_3"));
    }
}
