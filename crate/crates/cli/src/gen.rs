//! Instance generation from reduction sources or at random.

use std::path::PathBuf;

use clap::ValueEnum;
use reload_core::generators::*;
use reload_core::{serialize_instance, Cost, Instance};
use serde_json::{json, Value};

use crate::error::{read, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    #[value(name = "3sat-outerplanar")]
    SatOuterplanar,
    #[value(name = "3sat-deg3")]
    SatDegree3,
    Partition,
    Ubp,
    RandomCactus,
    RandomGraph,
}

#[derive(Debug, Clone)]
pub struct RandomParams {
    pub n: usize,
    pub seed: u64,
    pub colors: usize,
    pub max_cost: Cost,
    pub cycle_prob: f64,
    pub m: usize,
    pub max_degree: usize,
}

/// Builds the instance for `reduction`, reading `source` when it needs one.
pub fn generate(
    reduction: Reduction,
    source: Option<&PathBuf>,
    normalize: bool,
    random: &RandomParams,
) -> Result<Instance, CliError> {
    let text = |p: Option<&PathBuf>| -> Result<(String, String), CliError> {
        let p = p.ok_or_else(|| CliError::Mismatch(format!("{reduction:?} needs a source file")))?;
        Ok((read(p)?, p.display().to_string()))
    };
    match reduction {
        Reduction::SatOuterplanar | Reduction::SatDegree3 => {
            let (src, name) = text(source)?;
            let mut f = parse_dimacs(&src).map_err(|e| CliError::core(&name, e))?;
            if reduction == Reduction::SatOuterplanar {
                return gen_outerplanar_from_3sat(&f).map_err(|e| CliError::core(&name, e));
            }
            if normalize {
                f = normalize_3sat_three_occurrences(&f).map_err(|e| CliError::core(&name, e))?;
            }
            gen_degree3_from_3sat(&f).map_err(|e| {
                let bad = f.occurrences().iter().position(|&(p, n)| p + n != 3 || p == 0 || n == 0);
                match bad.and_then(|v| last_line_with_var(&src, v as i64 + 1)) {
                    Some(line) => CliError::core(format!("{name}:{line}"), e),
                    None => CliError::core(&name, e),
                }
            })
        }
        Reduction::Partition => {
            let (src, name) = text(source)?;
            let p = parse_partition(&src).map_err(|e| CliError::core(&name, e))?;
            gen_planar_from_partition(&p).map_err(|e| CliError::core(&name, e))
        }
        Reduction::Ubp => {
            let (src, name) = text(source)?;
            let p = parse_binpacking(&src).map_err(|e| CliError::core(&name, e))?;
            gen_from_unary_binpacking(&p).map_err(|e| CliError::core(&name, e))
        }
        Reduction::RandomCactus => {
            if random.colors == 0 && random.n > 1 {
                return Err(CliError::Mismatch("--colors must be positive".into()));
            }
            let g = gen_random_cactus(random.n, random.cycle_prob, random.colors, random.seed);
            let c = gen_random_costs(random.colors.max(1), random.max_cost, random.seed);
            Instance::new(g, c, None).map_err(|e| CliError::core("random-cactus", e))
        }
        Reduction::RandomGraph => {
            if random.colors == 0 || random.max_degree < 2 {
                return Err(CliError::Mismatch("--colors must be positive and --max-degree at least 2".into()));
            }
            let g = gen_random_connected(random.n, random.m, random.max_degree, random.colors, random.seed);
            let c = gen_random_costs(random.colors, random.max_cost, random.seed);
            Instance::new(g, c, None).map_err(|e| CliError::core("random-graph", e))
        }
    }
}

/// Line of the last clause line mentioning DIMACS variable `var`.
fn last_line_with_var(src: &str, var: i64) -> Option<usize> {
    src.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.starts_with('c') && !t.starts_with('p')
        })
        .filter(|(_, l)| l.split_whitespace().any(|t| t.parse::<i64>().is_ok_and(|x| x.abs() == var)))
        .map(|(i, _)| i + 1)
        .last()
}

pub fn text(inst: &Instance) -> String {
    serialize_instance(inst)
}

pub fn summary(reduction: Reduction, inst: &Instance) -> Value {
    json!({
        "reduction": reduction.to_possible_value().map(|v| v.get_name().to_string()),
        "n": inst.graph.n(),
        "m": inst.graph.m(),
        "colors": inst.costs.num_colors(),
        "max_degree": inst.graph.max_degree(),
        "budget": inst.budget,
    })
}
