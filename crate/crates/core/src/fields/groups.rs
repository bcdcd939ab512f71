//! The explicit permutation groups used as witnesses and as classification data.

use super::{proj_line, Field, ProjPoint, SemilinearMap};
use crate::error::{Error, Result};
use crate::perm::{Flag, Perm, PermGroup, DEFAULT_ELEMENT_CAP};

/// Additive basis `1, z, …, z^{m−1}` as encodings.
fn basis(f: &Field) -> Vec<u32> {
    (0..f.m()).map(|i| f.p().pow(i)).collect()
}

fn translations(f: &Field) -> Vec<SemilinearMap> {
    basis(f)
        .into_iter()
        .map(|b| SemilinearMap::new(f, 1, b, 0, 1, 0).expect("unipotent"))
        .collect()
}

fn scaling(f: &Field) -> SemilinearMap {
    SemilinearMap::new(f, f.primitive(), 0, 0, 1, 0).expect("diagonal")
}

fn frobenius(f: &Field) -> SemilinearMap {
    SemilinearMap::new(f, 1, 0, 0, 1, 1).expect("identity matrix")
}

fn on_line(f: &Field, maps: &[SemilinearMap]) -> Vec<Perm> {
    maps.iter().map(|g| g.to_perm(f)).collect()
}

/// Restriction of maps fixing `∞` to the `q` finite points.
fn on_affine_line(f: &Field, maps: &[SemilinearMap]) -> Vec<Perm> {
    maps.iter()
        .map(|g| {
            let images: Vec<usize> = (0..f.order())
                .map(|x| match g.apply(f, ProjPoint::Finite(x)) {
                    ProjPoint::Finite(y) => y as usize + 1,
                    ProjPoint::Infinity => unreachable!("affine maps fix infinity"),
                })
                .collect();
            Perm::from_images(&images).expect("affine maps are bijective")
        })
        .collect()
}

fn field_of(q: u64) -> Result<Field> {
    Field::of_order(q)
}

/// PSL(2,q) on the `q + 1` points of the projective line, generated by the upper and
/// lower unipotent subgroups. For even `q` this is the whole of PGL(2,q).
pub fn psl2(q: u64) -> Result<PermGroup> {
    let f = field_of(q)?;
    let mut maps = translations(&f);
    maps.extend(
        basis(&f)
            .into_iter()
            .map(|c| SemilinearMap::new(&f, 1, 0, c, 1, 0).expect("unipotent")),
    );
    PermGroup::generate(
        format!("PSL(2,{q})"),
        &on_line(&f, &maps),
        DEFAULT_ELEMENT_CAP,
    )
}

/// PGL(2,q): translations, `x ↦ ωx` and `x ↦ 1/x`.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    let f = field_of(q)?;
    PermGroup::generate(
        format!("PGL(2,{q})"),
        &on_line(&f, &pgl_maps(&f)),
        DEFAULT_ELEMENT_CAP,
    )
}

fn pgl_maps(f: &Field) -> Vec<SemilinearMap> {
    let mut maps = translations(f);
    maps.push(scaling(f));
    maps.push(SemilinearMap::new(f, 0, 1, 1, 0, 0).expect("inversion"));
    maps
}

/// PΓL(2,q): PGL(2,q) extended by the Frobenius automorphism.
pub fn pgammal2(q: u64) -> Result<PermGroup> {
    let f = field_of(q)?;
    let mut maps = pgl_maps(&f);
    maps.push(frobenius(&f));
    PermGroup::generate(
        format!("PGammaL(2,{q})"),
        &on_line(&f, &maps),
        DEFAULT_ELEMENT_CAP,
    )
}

/// AGL(1,q): `x ↦ ax + b` on the field elements, point `x` labelled `x + 1`.
pub fn agl1(q: u64) -> Result<PermGroup> {
    let f = field_of(q)?;
    let mut maps = translations(&f);
    maps.push(scaling(&f));
    PermGroup::generate(
        format!("AGL(1,{q})"),
        &on_affine_line(&f, &maps),
        DEFAULT_ELEMENT_CAP,
    )
}

/// AΓL(1,q): AGL(1,q) extended by the Frobenius automorphism.
pub fn agammal1(q: u64) -> Result<PermGroup> {
    let f = field_of(q)?;
    let mut maps = translations(&f);
    maps.push(scaling(&f));
    maps.push(frobenius(&f));
    PermGroup::generate(
        format!("AGammaL(1,{q})"),
        &on_affine_line(&f, &maps),
        DEFAULT_ELEMENT_CAP,
    )
}

/// AGL(d,2) on `2^d` points; the vector with binary encoding `v` is point `v + 1`.
/// Generated by the unit translations and the elementary transvections.
pub fn agl(d: u32, two: u32) -> Result<PermGroup> {
    if two != 2 {
        return Err(Error::InvalidParameters(format!(
            "AGL(d,{two}) is only built over GF(2)"
        )));
    }
    if d == 0 || d > 7 {
        return Err(Error::InvalidParameters(format!(
            "AGL({d},2) needs 1 <= d <= 7"
        )));
    }
    let size = 1usize << d;
    let perm = |map: &dyn Fn(usize) -> usize| {
        Perm::from_images(&(0..size).map(|v| map(v) + 1).collect::<Vec<_>>()).expect("bijective")
    };
    let mut gens: Vec<Perm> = (0..d).map(|i| perm(&|v| v ^ (1 << i))).collect();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                gens.push(perm(&|v| if v >> j & 1 == 1 { v ^ (1 << i) } else { v }));
            }
        }
    }
    PermGroup::generate(format!("AGL({d},2)"), &gens, DEFAULT_ELEMENT_CAP)
}

fn verified(name: &str, gens: &[Perm], order: u128, k: usize) -> Result<PermGroup> {
    let g = PermGroup::generate(name, gens, DEFAULT_ELEMENT_CAP)?;
    if g.order() != order || !g.is_sharply_k_transitive(k)? {
        return Err(Error::Verification(format!(
            "{name}: order {} and sharp {k}-transitivity check failed",
            g.order()
        )));
    }
    Ok(g)
}

fn m11_generators() -> Vec<Perm> {
    vec![
        Perm::from_cycles(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]).expect("literal"),
        Perm::from_cycles(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]).expect("literal"),
    ]
}

/// M₁₁ on 11 points; order and sharp 4-transitivity are checked before returning.
pub fn mathieu11() -> Result<PermGroup> {
    verified("M11", &m11_generators(), 7920, 4)
}

/// M₁₂ on 12 points; order and sharp 5-transitivity are checked before returning.
pub fn mathieu12() -> Result<PermGroup> {
    let mut gens: Vec<Perm> = m11_generators()
        .iter()
        .map(|g| {
            let mut images = g.images();
            images.push(12);
            Perm::from_images(&images).expect("extension")
        })
        .collect();
    gens.push(
        Perm::from_cycles(
            12,
            &[&[1, 12], &[2, 11], &[3, 6], &[4, 8], &[5, 9], &[7, 10]],
        )
        .expect("literal"),
    );
    verified("M12", &gens, 95040, 5)
}

/// The flag `(rest, {0, 1, z}, {∞})` on the projective line of `f`, in point labels.
pub fn zero_one_z_flag(f: &Field) -> Result<Flag> {
    let line = proj_line(f);
    let triple: Vec<usize> = [0, 1, f.z()]
        .into_iter()
        .map(|x| ProjPoint::Finite(x).label(f))
        .collect();
    let inf = ProjPoint::Infinity.label(f);
    let rest: Vec<usize> = line
        .iter()
        .map(|pt| pt.label(f))
        .filter(|l| !triple.contains(l) && *l != inf)
        .collect();
    Flag::new(line.len(), vec![rest, triple, vec![inf]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Lambda;

    #[test]
    fn projective_group_orders() {
        assert_eq!(psl2(8).unwrap().order(), 504);
        assert_eq!(pgl2(8).unwrap().order(), 504);
        assert_eq!(psl2(5).unwrap().order(), 60);
        assert_eq!(psl2(7).unwrap().order(), 168);
        assert_eq!(pgammal2(8).unwrap().order(), 1512);
        for q in [4u128, 5, 7, 8, 9] {
            assert_eq!(pgl2(q as u64).unwrap().order(), (q + 1) * q * (q - 1));
        }
    }

    #[test]
    fn pgl_is_sharply_3_transitive() {
        for q in [4u64, 5, 7, 8] {
            assert!(
                pgl2(q).unwrap().is_sharply_k_transitive(3).unwrap(),
                "q = {q}"
            );
        }
    }

    #[test]
    fn affine_groups() {
        assert_eq!(agl1(8).unwrap().order(), 56);
        assert_eq!(agammal1(8).unwrap().order(), 168);
        assert_eq!(agammal1(32).unwrap().order(), 32 * 31 * 5);
        for q in [3u64, 4, 5, 7, 9] {
            let g = agl1(q).unwrap();
            assert_eq!(g.order(), (q * (q - 1)) as u128);
            assert!(g.is_sharply_k_transitive(2).unwrap());
        }
        assert!(agl1(6).is_err());
    }

    #[test]
    fn agl_over_gf2() {
        assert_eq!(agl(1, 2).unwrap().order(), 2);
        assert_eq!(agl(3, 2).unwrap().order(), 1344);
        assert_eq!(agl(4, 2).unwrap().order(), 16 * 15 * 14 * 12 * 8);
        assert!(agl(3, 2).unwrap().is_k_transitive(3).unwrap());
        assert!(agl(4, 2).unwrap().is_k_transitive(3).unwrap());
        assert!(!agl(3, 2).unwrap().is_k_transitive(4).unwrap());
    }

    #[test]
    fn mathieu_groups_verify() {
        assert_eq!(mathieu11().unwrap().order(), 7920);
        assert_eq!(mathieu12().unwrap().order(), 95040);
    }

    #[test]
    fn zero_one_z_flag_stabilizer_in_psl28_is_trivial() {
        let f = Field::of_order(8).unwrap();
        let flag = zero_one_z_flag(&f).unwrap();
        assert_eq!(flag.lambda(), Lambda::new(vec![5, 3, 1]).unwrap());
        assert_eq!(flag.blocks()[1], vec![1, 2, 3]);
        assert_eq!(flag.blocks()[2], vec![9]);
        let g = psl2(8).unwrap();
        assert_eq!(g.flag_stabilizer(&flag).unwrap().order(), 1);
    }
}
