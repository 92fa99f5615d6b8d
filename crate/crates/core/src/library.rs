//! Named presentations and circle extensions used throughout the tests, the
//! benches and the command line.
//!
//! | name | presentation |
//! |------|--------------|
//! | `lS<n>` | Sullivan model of the `n`-sphere |
//! | `bu1`, `b<n>u1` | `R[x_{n+1}]`, `d = 0` |
//! | `btfold` | `R[x2c, x2t, y3]`, `dy3 = x2c x2t` |
//! | `p1`, `p2` | `btfold` extended by `x2c` (fiber `y1c`) or `x2t` (fiber `y1t`) |
//! | `tfold_fp` | fiber product of `p1` and `p2` over `btfold` |
//! | `cyc_b2u1` | `R[x3, y2, z2]`, `dx3 = z2 y2` |
//! | `cyc_lS4` | `R[x2, y3, z4, y6, z7]` with `dz4 = y3 x2`, `dy6 = -2 y3 z4`, `dz7 = z4^2 + x2 y6` |
//! | `cyc_lS4_f` | the same algebra in the variables `f2 = x2`, `h3 = y3`, `f4 = z4`, `f6 = -y6/2`, `h7 = z7` |
//! | `contractible` | `R[y1, x2]`, `dy1 = x2` |
//! | `torus2`, `heis3` | `R[e1, e2]` and its extension by `e1 e2` |
//! | `sm81`, `sm9A`, `sm9B` | super-Minkowski `R^{8,1|16+16}` and its IIA / IIB extensions |

use std::sync::OnceLock;

use thiserror::Error;

use crate::constructions::{central_extension, extension_fiber_product, CentralExtension};
use crate::dgca::Presentation;
use crate::field::FieldKind;
use crate::gca::Generator;
use crate::superminkowski::{build_superminkowski, SuperMinkowski};
use crate::tduality::{btfold, sphere_model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error("unknown library entry {0:?}")]
    Unknown(String),
    #[error("failed to build {name}: {message}")]
    Build { name: String, message: String },
}

const FIXED: &[&str] = &[
    "bu1",
    "btfold",
    "p1",
    "p2",
    "tfold_fp",
    "cyc_b2u1",
    "cyc_lS4",
    "cyc_lS4_f",
    "contractible",
    "torus2",
    "heis3",
    "sm81",
    "sm9A",
    "sm9B",
];

/// The names listed by `library list`: the fixed entries plus `lS1..lS7`
/// and `b2u1..b4u1`. Any `lS<n>` or `b<n>u1` resolves in [`get`].
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = (1..=7).map(|n| format!("lS{n}")).collect();
    out.push("bu1".into());
    out.extend((2..=4).map(|n| format!("b{n}u1")));
    out.extend(FIXED.iter().filter(|n| **n != "bu1").map(|n| n.to_string()));
    out
}

fn parse(gens: Vec<Generator>, d: &[(&str, &str)]) -> Presentation {
    Presentation::parse(FieldKind::Rational, gens, d).expect("library presentation")
}

fn super_minkowski() -> Result<&'static SuperMinkowski, LibraryError> {
    static SM: OnceLock<Result<SuperMinkowski, String>> = OnceLock::new();
    SM.get_or_init(|| build_superminkowski().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|m| LibraryError::Build { name: "sm81".into(), message: m.clone() })
}

fn higher_u1(n: u32) -> Presentation {
    parse(vec![Generator::even(format!("x{}", n + 1), n + 1)], &[])
}

fn ext(base: &Presentation, cocycle: &str, name: &str) -> CentralExtension {
    central_extension(base, &base.element(cocycle).expect("library cocycle"), name).expect("library extension")
}

pub fn get(name: &str) -> Result<Presentation, LibraryError> {
    let numbered = |prefix: &str, suffix: &str| -> Option<u32> {
        name.strip_prefix(prefix)?.strip_suffix(suffix)?.parse().ok().filter(|&n: &u32| (1..=64).contains(&n))
    };
    if let Some(n) = numbered("lS", "") {
        return sphere_model(n).map_err(|e| LibraryError::Build { name: name.into(), message: e.to_string() });
    }
    if let Some(n) = numbered("b", "u1") {
        return Ok(higher_u1(n));
    }
    Ok(match name {
        "bu1" => higher_u1(1),
        "btfold" => btfold(),
        "p1" => ext(&btfold(), "x2c", "y1c").total().clone(),
        "p2" => ext(&btfold(), "x2t", "y1t").total().clone(),
        "tfold_fp" => {
            let g = btfold();
            extension_fiber_product(&g, &g.gen("x2c").expect("x2c"), &g.gen("x2t").expect("x2t"), ("y1c", "y1t"))
                .expect("fiber product")
                .total()
                .clone()
        }
        "cyc_b2u1" => parse(
            vec![Generator::even("x3", 3), Generator::even("y2", 2), Generator::even("z2", 2)],
            &[("x3", "z2*y2")],
        ),
        "cyc_lS4" => parse(
            vec![
                Generator::even("x2", 2),
                Generator::even("y3", 3),
                Generator::even("z4", 4),
                Generator::even("y6", 6),
                Generator::even("z7", 7),
            ],
            &[("z4", "y3*x2"), ("y6", "-2*y3*z4"), ("z7", "z4^2 + x2*y6")],
        ),
        "cyc_lS4_f" => parse(
            vec![
                Generator::even("f2", 2),
                Generator::even("h3", 3),
                Generator::even("f4", 4),
                Generator::even("f6", 6),
                Generator::even("h7", 7),
            ],
            &[("f4", "h3*f2"), ("f6", "h3*f4"), ("h7", "f4^2 - 2*f2*f6")],
        ),
        "contractible" => parse(vec![Generator::even("y1", 1), Generator::even("x2", 2)], &[("y1", "x2")]),
        "torus2" => parse(vec![Generator::even("e1", 1), Generator::even("e2", 1)], &[]),
        "heis3" => ext(&get("torus2")?, "e1*e2", "e3").total().clone(),
        "sm81" => super_minkowski()?.base().clone(),
        "sm9A" => super_minkowski()?.iia().total().clone(),
        "sm9B" => super_minkowski()?.iib().total().clone(),
        _ => return Err(LibraryError::Unknown(name.into())),
    })
}

/// Circle extensions over library presentations, by name.
pub fn extensions(include_super: bool) -> Result<Vec<(&'static str, CentralExtension)>, LibraryError> {
    let g = btfold();
    let mut out = vec![
        ("p1", ext(&g, "x2c", "y1c")),
        ("p2", ext(&g, "x2t", "y1t")),
        ("contractible", ext(&get("bu1")?, "x2", "y1")),
        ("hopf", ext(&get("lS2")?, "x2", "y1")),
        ("lS4_hofib", ext(&get("lS4")?, "x4", "y3")),
        ("heis3", ext(&get("torus2")?, "e1*e2", "e3")),
        ("cyc_b2u1_over_z2", ext(&get("cyc_b2u1")?, "z2", "w1")),
    ];
    if include_super {
        let sm = super_minkowski()?;
        out.push(("sm9A", sm.iia().clone()));
        out.push(("sm9B", sm.iib().clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgca::Morphism;

    #[test]
    fn every_entry_is_verified() {
        for name in names() {
            let p = get(&name).unwrap();
            assert!(p.verify_d_squared().is_ok(), "{name}");
        }
        assert!(matches!(get("nope"), Err(LibraryError::Unknown(_))));
        assert!(get("lS0").is_err());
        assert_eq!(get("b7u1").unwrap().generators(), &[Generator::even("x8", 8)]);
    }

    #[test]
    fn sphere_cohomology() {
        for n in 2..=7u32 {
            let dims = get(&format!("lS{n}")).unwrap().cohomology(3 * n).dims;
            for (k, d) in dims.iter().enumerate() {
                assert_eq!(*d, usize::from(k == 0 || k == n as usize), "lS{n} degree {k}");
            }
        }
    }

    #[test]
    fn cyc_ls4_variables_agree() {
        let x = get("cyc_lS4").unwrap();
        let f = get("cyc_lS4_f").unwrap();
        let to_f = Morphism::parse(&x, &f, &[("x2", "f2"), ("y3", "h3"), ("z4", "f4"), ("y6", "-2*f6"), ("z7", "h7")])
            .unwrap();
        let to_x =
            Morphism::parse(&f, &x, &[("f2", "x2"), ("h3", "y3"), ("f4", "z4"), ("f6", "-1/2*y6"), ("h7", "z7")])
                .unwrap();
        to_f.verify().unwrap();
        to_x.verify().unwrap();
        assert_eq!(to_f.then(&to_x).unwrap(), Morphism::identity(&x));
    }

    #[test]
    fn extensions_have_square_zero_fibers() {
        for (name, e) in extensions(false).unwrap() {
            assert!(e.total().generators()[e.fiber()].is_square_zero(), "{name}");
        }
    }
}
