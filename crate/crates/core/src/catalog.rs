//! A named catalog of concrete realizations used throughout the test
//! suites and the command line: small projective configurations, graph
//! configurations, uniform matroids, wheels, and whirls.

use crate::config::Realization;
use crate::error::{Error, Result};
use crate::families;
use crate::field::FieldSpec;

/// Which fields an entry can be built over.
#[derive(Clone, Copy, Debug)]
enum FieldRule {
    /// Any field; the matroid does not depend on the characteristic.
    Any,
    /// Any field whose characteristic is not listed.
    CharNot(&'static [u64]),
    /// Exactly this field.
    Exactly(FieldSpec),
}

impl FieldRule {
    fn admit(self, field: FieldSpec, name: &str) -> Result<()> {
        match self {
            FieldRule::Any => Ok(()),
            FieldRule::CharNot(bad) => {
                if bad.contains(&field.characteristic()) {
                    Err(Error::BadParameter(format!(
                        "{name} degenerates in characteristic {}",
                        field.characteristic()
                    )))
                } else {
                    Ok(())
                }
            }
            FieldRule::Exactly(f) => {
                if field == f {
                    Ok(())
                } else {
                    Err(Error::BadParameter(format!("{name} is only defined over {f}")))
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// The field the instance is built over when none is requested.
    pub default_field: FieldSpec,
}

const F2: FieldSpec = FieldSpec::Fp(2);
const F3: FieldSpec = FieldSpec::Fp(3);
const F5: FieldSpec = FieldSpec::Fp(5);
const F7: FieldSpec = FieldSpec::Fp(7);
const F11: FieldSpec = FieldSpec::Fp(11);
const F13: FieldSpec = FieldSpec::Fp(13);
const F101: FieldSpec = FieldSpec::Fp(101);

struct Spec {
    name: &'static str,
    summary: &'static str,
    default_field: FieldSpec,
    rule: FieldRule,
    build: fn(FieldSpec) -> Result<Realization>,
}

fn graph_of(g: families::Graph, field: FieldSpec) -> Result<Realization> {
    families::graph_configuration(field, &g)
}

const SPECS: &[Spec] = &[
    Spec {
        name: "triangle",
        summary: "three generic points on a projective line (U(2,3))",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| Realization::from_i64_x(f, &[&[1, 0, 1], &[0, 1, 1]]),
    },
    Spec {
        name: "prism",
        summary: "the triangular prism matroid: three disjoint 4-circuits",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| {
            Realization::from_i64_x(
                f,
                &[
                    &[1, 1, 0, 0, 0, 0],
                    &[0, 0, 1, 1, 0, 0],
                    &[0, 0, 0, 0, 1, 1],
                    &[1, 0, 1, 0, 1, 0],
                ],
            )
        },
    },
    Spec {
        name: "theta",
        summary: "the theta graph: the prism matroid from a graph",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| graph_of(families::theta_graph(), f),
    },
    Spec {
        name: "u24",
        summary: "four generic points on a projective line",
        default_field: FieldSpec::Q,
        rule: FieldRule::CharNot(&[2]),
        build: |f| Realization::from_i64_x(f, &[&[1, 0, 1, 1], &[0, 1, 1, -1]]),
    },
    Spec {
        name: "u25",
        summary: "five generic points on a projective line",
        default_field: F7,
        rule: FieldRule::CharNot(&[2, 3]),
        build: |f| Realization::from_i64_x(f, &[&[1, 0, 1, 1, 1], &[0, 1, 1, 2, 3]]),
    },
    Spec {
        name: "u26",
        summary: "six generic points on a projective line",
        default_field: F11,
        rule: FieldRule::CharNot(&[2, 3]),
        build: |f| Realization::from_i64_x(f, &[&[1, 0, 1, 1, 1, 1], &[0, 1, 1, 2, 3, 4]]),
    },
    Spec {
        name: "u36",
        summary: "six generic points in the projective plane",
        default_field: FieldSpec::Q,
        rule: FieldRule::CharNot(&[2, 3]),
        build: |f| {
            Realization::from_i64_x(
                f,
                &[&[1, 0, 0, 1, 2, 3], &[0, 1, 0, 2, 3, 4], &[0, 0, 1, 2, 6, 12]],
            )
        },
    },
    Spec {
        name: "sixpoint",
        summary: "a rank-4 ternary configuration with handles of mixed sizes",
        default_field: F3,
        rule: FieldRule::Exactly(F3),
        build: |f| {
            Realization::from_i64(
                f,
                &[
                    &[1, 0, 0, 0, 1, 1],
                    &[0, 1, 0, 0, 1, 1],
                    &[0, 0, 1, 0, 1, 2],
                    &[0, 0, 0, 1, 1, 2],
                ],
                &["1", "2", "3", "4", "5", "6"],
            )
        },
    },
    Spec {
        name: "fano",
        summary: "the seven points of the binary projective plane",
        default_field: F2,
        rule: FieldRule::Exactly(F2),
        build: |f| {
            Realization::from_i64_x(
                f,
                &[
                    &[1, 0, 0, 0, 1, 1, 1],
                    &[0, 1, 0, 1, 0, 1, 1],
                    &[0, 0, 1, 1, 1, 0, 1],
                ],
            )
        },
    },
    Spec {
        name: "cycle4",
        summary: "the 4-cycle graph (U(3,4))",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| graph_of(families::cycle_graph(4)?, f),
    },
    Spec {
        name: "cycle5",
        summary: "the 5-cycle graph (U(4,5))",
        default_field: F5,
        rule: FieldRule::Any,
        build: |f| graph_of(families::cycle_graph(5)?, f),
    },
    Spec {
        name: "cycle6",
        summary: "the 6-cycle graph (U(5,6))",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| graph_of(families::cycle_graph(6)?, f),
    },
    Spec {
        name: "banana2",
        summary: "two parallel edges (U(1,2))",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| graph_of(families::banana_graph(2)?, f),
    },
    Spec {
        name: "banana3",
        summary: "three parallel edges (U(1,3))",
        default_field: F2,
        rule: FieldRule::Any,
        build: |f| graph_of(families::banana_graph(3)?, f),
    },
    Spec {
        name: "banana4",
        summary: "four parallel edges (U(1,4))",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| graph_of(families::banana_graph(4)?, f),
    },
    Spec {
        name: "k4",
        summary: "the complete graph on four vertices",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| graph_of(families::complete_graph(4)?, f),
    },
    Spec {
        name: "k5",
        summary: "the complete graph on five vertices",
        default_field: F101,
        rule: FieldRule::Any,
        build: |f| graph_of(families::complete_graph(5)?, f),
    },
    Spec {
        name: "wheel3",
        summary: "the rank-3 wheel in spoke/rim coordinates (= K4)",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| families::wheel_whirl_realization(f, 3, &f.one()),
    },
    Spec {
        name: "wheel4",
        summary: "the rank-4 wheel in spoke/rim coordinates",
        default_field: F13,
        rule: FieldRule::Any,
        build: |f| families::wheel_whirl_realization(f, 4, &f.one()),
    },
    Spec {
        name: "wheel5",
        summary: "the rank-5 wheel in spoke/rim coordinates",
        default_field: FieldSpec::Q,
        rule: FieldRule::Any,
        build: |f| families::wheel_whirl_realization(f, 5, &f.one()),
    },
    Spec {
        name: "whirl2",
        summary: "the rank-2 whirl with twist parameter 2",
        default_field: F5,
        rule: FieldRule::CharNot(&[2]),
        build: |f| families::wheel_whirl_realization(f, 2, &f.from_i64(2)),
    },
    Spec {
        name: "whirl3",
        summary: "the rank-3 whirl with twist parameter 2",
        default_field: FieldSpec::Q,
        rule: FieldRule::CharNot(&[2]),
        build: |f| families::wheel_whirl_realization(f, 3, &f.from_i64(2)),
    },
    Spec {
        name: "whirl4",
        summary: "the rank-4 whirl with twist parameter 2",
        default_field: F7,
        rule: FieldRule::CharNot(&[2]),
        build: |f| families::wheel_whirl_realization(f, 4, &f.from_i64(2)),
    },
];

pub fn entries() -> Vec<CatalogEntry> {
    SPECS
        .iter()
        .map(|s| CatalogEntry {
            name: s.name,
            summary: s.summary,
            default_field: s.default_field,
        })
        .collect()
}

pub fn names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}

fn spec_of(name: &str) -> Result<&'static Spec> {
    SPECS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownLabel(name.to_string()))
}

/// Builds a catalog instance over its natural field.
pub fn build(name: &str) -> Result<Realization> {
    let spec = spec_of(name)?;
    (spec.build)(spec.default_field)
}

/// Builds a catalog instance over an explicit field, rejecting fields the
/// instance degenerates over.
pub fn build_over(name: &str, field: FieldSpec) -> Result<Realization> {
    let spec = spec_of(name)?;
    spec.rule.admit(field, name)?;
    (spec.build)(field)
}

/// Every catalog instance over its natural field.  All of them carry
/// connected matroids, so this doubles as the sweep set for handle and
/// connectivity checks.
pub fn all_instances() -> Vec<(&'static str, Realization)> {
    SPECS
        .iter()
        .map(|s| (s.name, (s.build)(s.default_field).expect("catalog entries build")))
        .collect()
}
