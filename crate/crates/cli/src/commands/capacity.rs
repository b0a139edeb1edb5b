//! `purecc capacity` — congestion analysis of a repeater graph file:
//! shortest-path routing, the randomized improvement heuristic, and (when
//! the instance is small enough) the exhaustive optimum.

use crate::config::{self, CliError};
use crate::output::{emit, Format};
use clap::Args;
use purecc::network::{
    brute_force_min_capacity, complete_path_set, induced_capacity, minimize_induced_capacity,
    validate_graph, BruteForceLimits, NetworkError, NetworkGraph,
};
use serde::Deserialize;
use serde_json::json;
use std::path::PathBuf;

#[derive(Args)]
pub struct CapacityArgs {
    /// JSON config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graph file (vertices/edges text format)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Heuristic restarts
    #[arg(long)]
    effort: Option<u32>,
    /// Heuristic seed
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the exhaustive optimum even on small instances
    #[arg(long)]
    no_brute_force: bool,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct CapacityConfig {
    graph: Option<PathBuf>,
    effort: u32,
    seed: u64,
    no_brute_force: bool,
    out: Option<PathBuf>,
    format: Format,
}

impl Default for CapacityConfig {
    fn default() -> Self {
        CapacityConfig {
            graph: None,
            effort: 64,
            seed: 0,
            no_brute_force: false,
            out: None,
            format: Format::Csv,
        }
    }
}

pub fn run(args: CapacityArgs) -> Result<(), CliError> {
    let mut map = config::load_config_map(args.config.as_deref(), "capacity")?;
    config::override_key(&mut map, "graph", &args.graph);
    config::override_key(&mut map, "effort", &args.effort);
    config::override_key(&mut map, "seed", &args.seed);
    let no_brute_flag = args.no_brute_force.then_some(true);
    config::override_key(&mut map, "no_brute_force", &no_brute_flag);
    config::override_key(&mut map, "out", &args.out);
    config::override_key(&mut map, "format", &args.format);
    let cfg: CapacityConfig = config::finish(map)?;

    let Some(graph_path) = cfg.graph else {
        return Err(CliError::Config(
            "a graph file is required (--graph or config key \"graph\")".to_string(),
        ));
    };
    let text = std::fs::read_to_string(&graph_path).map_err(|e| {
        CliError::Config(format!("cannot read graph {}: {e}", graph_path.display()))
    })?;
    let graph = NetworkGraph::parse(&text).map_err(|e| {
        CliError::Config(format!("graph {}: {e}", graph_path.display()))
    })?;
    let report = validate_graph(&graph);
    if !report.is_valid() {
        let details: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Config(format!(
            "graph {} violates the network constraints: {}",
            graph_path.display(),
            details.join("; ")
        )));
    }

    let compute = |e: NetworkError| CliError::Compute(e.to_string());
    let shortest = induced_capacity(&graph, &complete_path_set(&graph).map_err(compute)?);
    let tuned_paths =
        minimize_induced_capacity(&graph, cfg.effort, cfg.seed).map_err(compute)?;
    let tuned = induced_capacity(&graph, &tuned_paths);
    let brute = if cfg.no_brute_force {
        Err("disabled".to_string())
    } else {
        match brute_force_min_capacity(&graph, BruteForceLimits::default()) {
            Ok((_, optimum)) => Ok(optimum),
            Err(NetworkError::InstanceTooLarge(detail)) => Err(detail),
            Err(other) => return Err(compute(other)),
        }
    };

    let content = match cfg.format {
        Format::Csv => {
            let mut text = format!(
                "vertices {}, edges {}, terminals {}\n\
                 shortest-path capacity {shortest}\n\
                 heuristic capacity {tuned} (effort {}, seed {})\n",
                graph.vertex_count(),
                graph.edge_count(),
                graph.terminals().len(),
                cfg.effort,
                cfg.seed,
            );
            match &brute {
                Ok(optimum) => text.push_str(&format!("brute-force capacity {optimum}\n")),
                Err(reason) => {
                    text.push_str(&format!("brute-force capacity skipped: {reason}\n"))
                }
            }
            text
        }
        Format::Json => {
            let mut value = json!({
                "vertices": graph.vertex_count(),
                "edges": graph.edge_count(),
                "terminals": graph.terminals().len(),
                "shortest_path": shortest,
                "heuristic": tuned,
                "effort": cfg.effort,
                "seed": cfg.seed,
                "brute_force": Option::<u32>::None,
            });
            match &brute {
                Ok(optimum) => value["brute_force"] = json!(optimum),
                Err(reason) => value["brute_force_skipped"] = json!(reason),
            }
            let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
            text.push('\n');
            text
        }
    };
    emit(cfg.out.as_deref(), &content)
}
