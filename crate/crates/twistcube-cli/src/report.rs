//! Report rendering: every command produces one JSON document whose body is
//! byte-stable for identical inputs, with the elapsed time as the only
//! volatile field.

use serde::Serialize;
use twistcube::character::{demazure_character, signed_character, FormalCharacter};
use twistcube::cube::CubeSpec;
use twistcube::rep::necessary_conditions;
use twistcube::toric::all_cartier_points;
use twistcube::untwist::{grid_convexity, is_untwisted, GridConvexity};
use twistcube::{Limits, Result};

use crate::config::{CartanInput, CommandKind, ResolvedJob};

#[derive(Serialize)]
struct Report<'a> {
    version: &'static str,
    command: &'static str,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<RepEcho<'a>>,
    spec: SpecEcho,
    result: Payload,
    timing_ms: u64,
}

#[derive(Serialize)]
struct RepEcho<'a> {
    cartan: &'a CartanInput,
    lambda: &'a [i64],
    word: &'a [usize],
}

#[derive(Serialize)]
struct SpecEcho {
    n: usize,
    c: Vec<[i64; 3]>,
    ell: Vec<i64>,
}

impl SpecEcho {
    fn new(spec: &CubeSpec) -> SpecEcho {
        SpecEcho {
            n: spec.n(),
            c: spec
                .c_triples()
                .into_iter()
                .map(|(i, j, value)| [i as i64, j as i64, value])
                .collect(),
            ell: spec.ell().to_vec(),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Payload {
    Check(CheckPayload),
    Cartier(CartierPayload),
    Lattice(LatticePayload),
    Character(CharacterPayload),
    Demazure(DemazurePayload),
    Necessary(NecessaryPayload),
}

#[derive(Serialize)]
pub struct CheckPayload {
    verdict: bool,
    conditions: ConditionsEcho,
    ell_nonneg: bool,
    witness: Option<WitnessEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    convexity: Option<ConvexityEcho>,
}

#[derive(Serialize)]
struct ConditionsEcho {
    cartier_in_cube: bool,
    cartier_nonnegative: bool,
    recursive_positivity: bool,
    cube_equals_polytope: bool,
    basepoint_free: bool,
}

#[derive(Serialize)]
struct WitnessEcho {
    sigma: String,
    m: Vec<i64>,
    coordinate: usize,
    bound: String,
}

#[derive(Serialize)]
struct ConvexityEcho {
    denominator: u32,
    convex_on_grid: bool,
    violation: Option<ViolationEcho>,
}

/// Scaled-integer witness pair: the points are `p_scaled / denominator` and
/// `q_scaled / denominator`, and their midpoint `midpoint_scaled / (2 *
/// denominator)` falls outside the cube.
#[derive(Serialize)]
struct ViolationEcho {
    p_scaled: Vec<i64>,
    q_scaled: Vec<i64>,
    midpoint_scaled: Vec<i64>,
}

impl ConvexityEcho {
    fn new(evidence: GridConvexity) -> ConvexityEcho {
        ConvexityEcho {
            denominator: evidence.denominator,
            convex_on_grid: evidence.convex_on_grid,
            violation: evidence.violation.map(|v| ViolationEcho {
                midpoint_scaled: v
                    .p_scaled
                    .iter()
                    .zip(&v.q_scaled)
                    .map(|(&p, &q)| p + q)
                    .collect(),
                p_scaled: v.p_scaled,
                q_scaled: v.q_scaled,
            }),
        }
    }
}

#[derive(Serialize)]
pub struct CartierPayload {
    cones: Vec<ConeEcho>,
}

#[derive(Serialize)]
struct ConeEcho {
    sigma: String,
    m: Vec<i64>,
}

#[derive(Serialize)]
pub struct LatticePayload {
    count: usize,
    positive: usize,
    negative: usize,
    points: Vec<PointEcho>,
}

#[derive(Serialize)]
struct PointEcho {
    coords: Vec<i64>,
    sign: i8,
}

#[derive(Serialize)]
pub struct CharacterPayload {
    terms: Vec<TermEcho>,
    term_count: usize,
    total_multiplicity: i64,
    agrees_with_demazure: bool,
}

#[derive(Serialize)]
pub struct DemazurePayload {
    terms: Vec<TermEcho>,
    term_count: usize,
    total_multiplicity: i64,
}

#[derive(Serialize)]
struct TermEcho {
    weight: Vec<i64>,
    multiplicity: i64,
}

fn term_echoes(character: &FormalCharacter) -> Vec<TermEcho> {
    character
        .terms()
        .map(|(weight, multiplicity)| TermEcho {
            weight: weight.to_vec(),
            multiplicity,
        })
        .collect()
}

#[derive(Serialize)]
pub struct NecessaryPayload {
    support_dominant: bool,
    repeats_vanish: bool,
    both_hold: bool,
    support_violations: Vec<usize>,
    repeat_violations: Vec<usize>,
}

pub fn execute(
    job: &ResolvedJob,
    command: CommandKind,
    grid_denom: Option<u32>,
    limits: &Limits,
) -> Result<Payload> {
    match command {
        CommandKind::Check => {
            let report = is_untwisted(&job.spec, limits)?;
            let convexity = match grid_denom {
                Some(denominator) => Some(ConvexityEcho::new(grid_convexity(
                    &job.spec,
                    denominator,
                    limits,
                )?)),
                None => None,
            };
            Ok(Payload::Check(CheckPayload {
                verdict: report.untwisted,
                conditions: ConditionsEcho {
                    cartier_in_cube: report.cartier_in_cube,
                    cartier_nonnegative: report.cartier_nonnegative,
                    recursive_positivity: report.recursive_positivity,
                    cube_equals_polytope: report.cube_equals_polytope,
                    basepoint_free: report.basepoint_free,
                },
                ell_nonneg: report.ell_nonneg,
                witness: report.witness.map(|w| WitnessEcho {
                    sigma: w.sigma.to_string(),
                    m: w.m,
                    coordinate: w.coordinate,
                    bound: w.bound.to_string(),
                }),
                convexity,
            }))
        }
        CommandKind::Cartier => {
            let cones = all_cartier_points(&job.spec, limits)?
                .into_iter()
                .map(|point| ConeEcho {
                    sigma: point.sigma.to_string(),
                    m: point.m,
                })
                .collect();
            Ok(Payload::Cartier(CartierPayload { cones }))
        }
        CommandKind::Lattice => {
            let set = job.spec.lattice_points(limits)?;
            Ok(Payload::Lattice(LatticePayload {
                count: set.len(),
                positive: set.positive_count(),
                negative: set.negative_count(),
                points: set
                    .points()
                    .iter()
                    .map(|p| PointEcho {
                        coords: p.coords.clone(),
                        sign: p.sign,
                    })
                    .collect(),
            }))
        }
        CommandKind::Character => {
            let rep = job.rep.as_ref().expect("rep mode enforced during resolve");
            let signed = signed_character(&job.spec, &rep.cartan, &rep.lambda, &rep.word, limits)?;
            let demazure = demazure_character(&rep.cartan, &rep.lambda, &rep.word)?;
            let agrees_with_demazure = signed.checked_sub(&demazure)?.is_zero();
            Ok(Payload::Character(CharacterPayload {
                terms: term_echoes(&signed),
                term_count: signed.term_count(),
                total_multiplicity: signed.total_multiplicity()?,
                agrees_with_demazure,
            }))
        }
        CommandKind::Demazure => {
            let rep = job.rep.as_ref().expect("rep mode enforced during resolve");
            let character = demazure_character(&rep.cartan, &rep.lambda, &rep.word)?;
            Ok(Payload::Demazure(DemazurePayload {
                terms: term_echoes(&character),
                term_count: character.term_count(),
                total_multiplicity: character.total_multiplicity()?,
            }))
        }
        CommandKind::Necessary => {
            let rep = job.rep.as_ref().expect("rep mode enforced during resolve");
            let report = necessary_conditions(&rep.cartan, &rep.lambda, &rep.word)?;
            Ok(Payload::Necessary(NecessaryPayload {
                support_dominant: report.support_dominant,
                repeats_vanish: report.repeats_vanish,
                both_hold: report.both_hold(),
                support_violations: report.support_violations,
                repeat_violations: report.repeat_violations,
            }))
        }
    }
}

pub fn render(job: &ResolvedJob, command: CommandKind, result: Payload, timing_ms: u64) -> String {
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: command.as_str(),
        mode: job.mode.as_str(),
        input: job.rep.as_ref().map(|rep| RepEcho {
            cartan: &rep.input,
            lambda: &rep.lambda,
            word: &rep.word,
        }),
        spec: SpecEcho::new(&job.spec),
        result,
        timing_ms,
    };
    let mut rendered = serde_json::to_string_pretty(&report).expect("report serialization");
    rendered.push('\n');
    rendered
}
