mod render;

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kconvex::exactgeom::{parse_rational, Direction, Line, Point, Polygon};
use kconvex::fixtures::{generate, Fixture, FixtureName, FixtureSpec};
use kconvex::hardness::{decide_3sum_geometric, reduce, three_sum_brute, HardnessError};
use kconvex::io::{line_json, parse_point, polygon_from_value, polygon_to_value};
use kconvex::regions::{empirical_degree, helly_check, RegionExpr};
use kconvex::shape::{convex_chains, convex_partition, largest_convex_subset, partition_bound, pocket_chains, subset_bound};
use kconvex::stabbing::stabbing_number;
use kconvex::sweep::{triangulate_with, validate_triangulation, SortMethod};
use kconvex::transversals::{enumerate_ggp_with_witnesses, ggp_cell_bound, label_family, Family};
use kconvex::twoconvex::{recognize_2convex, recognize_2convex_oracle, DecisionPath};

use render::{color, render, RenderSpec};

#[derive(Parser)]
#[command(name = "kconvex", version, about = "Exact k-convexity analysis of simple polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SortArg {
    Scan,
    Finger,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact stabbing number with a witness line
    Stab {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Whether no line meets the polygon in more than k pieces
    Kconvex {
        input: String,
        #[arg(long)]
        k: usize,
        /// exit 1 when the answer is negative
        #[arg(long)]
        expect: bool,
    },
    /// 2-convexity test with a witness
    Recognize2 {
        input: String,
        /// decide through the stabbing number instead
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        expect: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Plane-sweep triangulation
    Triangulate {
        input: String,
        #[arg(long, value_enum, default_value = "finger")]
        sort: SortArg,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Pockets and convex chains of a 2-convex polygon
    Chains {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Large subset of vertices in convex position
    ConvexSubset {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Partition of the vertices into convex-position subsets
    Partition {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build the slotted-cubic polygons for a list of integers
    Reduce3sum {
        /// comma separated integers, e.g. "1,2,-3"
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        emit_polygon: Option<PathBuf>,
        #[arg(long)]
        decide: bool,
    },
    /// Largest number of pieces of a union/intersection on a line
    RegionDegree {
        input: String,
        #[arg(long, default_value_t = 1000)]
        random_lines: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the 2-convex family with no common point whose proper subfamilies meet
    Helly {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        expect: bool,
    },
    /// Generalized geometric permutations of a family
    Ggp {
        input: String,
        #[arg(long)]
        render: Option<PathBuf>,
    },
    /// Generate a fixture
    Gen {
        name: String,
        /// e.g. k=4,n=32
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<String>,
    },
    /// Draw polygons, families and overlay lines as SVG
    Render {
        input: String,
        #[arg(short = 'o', long = "output", default_value = "-")]
        output: String,
    },
}

enum Fail {
    /// bad input: exit 2
    Input(String),
    /// analysis came out negative: exit 1
    Negative(String),
}

fn input_err(e: impl std::fmt::Display) -> Fail {
    Fail::Input(e.to_string())
}

/// JSON to print and whether the run counts as a success.
type Outcome = Result<(Value, bool), Fail>;

fn read_text(path: &str) -> Result<String, Fail> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Fail::Input(format!("{path}: {e}")))
    }
}

fn read_json(path: &str) -> Result<Value, Fail> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Fail::Input(format!("{path}: {e}")))
}

fn read_polygon(path: &str) -> Result<Polygon, Fail> {
    polygon_from_value(&read_json(path)?).map_err(input_err)
}

/// `{"polygons": [..]}` (named A, B, ..) or `{"polygons": {"id": ..}}`.
fn family_from(v: &Value) -> Result<Family, Fail> {
    match v.get("polygons") {
        Some(Value::Array(a)) => {
            Ok(label_family(a.iter().map(polygon_from_value).collect::<Result<_, _>>().map_err(input_err)?))
        }
        Some(Value::Object(m)) => m
            .iter()
            .map(|(k, p)| Ok((k.clone(), polygon_from_value(p).map_err(input_err)?)))
            .collect::<Result<BTreeMap<_, _>, _>>(),
        _ => Err(Fail::Input("expected a \"polygons\" list or map".into())),
    }
}

fn write_out(path: &str, body: &str) -> Result<(), Fail> {
    if path == "-" {
        let _ = std::io::stdout().lock().write_all(body.as_bytes());
        Ok(())
    } else {
        std::fs::write(path, body).map_err(|e| Fail::Input(format!("{path}: {e}")))
    }
}

fn write_svg(path: &Option<PathBuf>, spec: &RenderSpec) -> Result<(), Fail> {
    match path {
        Some(p) => write_out(&p.to_string_lossy(), &render(spec)),
        None => Ok(()),
    }
}

fn chain_path(p: &Polygon, idx: &[usize]) -> Vec<Point> {
    idx.iter().map(|&i| p.vertex(i).clone()).collect()
}

fn parse_params(s: &str) -> Result<BTreeMap<String, i64>, Fail> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (k, v) = t.split_once('=').ok_or_else(|| Fail::Input(format!("bad parameter {t:?}")))?;
            let v = v.trim().parse::<i64>().map_err(|_| Fail::Input(format!("bad value in {t:?}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn parse_line(v: &Value) -> Result<Line, Fail> {
    let anchor: [String; 2] = serde_json::from_value(v.get("anchor").cloned().unwrap_or(Value::Null)).map_err(input_err)?;
    let dir: [String; 2] = serde_json::from_value(v.get("dir").cloned().unwrap_or(Value::Null)).map_err(input_err)?;
    let d = Direction::new(parse_rational(&dir[0]).map_err(input_err)?, parse_rational(&dir[1]).map_err(input_err)?)
        .map_err(input_err)?;
    Ok(Line::new(parse_point(&anchor).map_err(input_err)?, d))
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Stab { input, svg } => {
            let p = read_polygon(&input)?;
            let c = stabbing_number(&p);
            let mut spec = RenderSpec::polygons(std::slice::from_ref(&p));
            spec.lines.push((c.witness.clone(), "#000000".into()));
            write_svg(&svg, &spec)?;
            Ok((json!({"stabbing_number": c.value, "witness": line_json(&c.witness)}), true))
        }
        Cmd::Kconvex { input, k, expect } => {
            let p = read_polygon(&input)?;
            let c = stabbing_number(&p);
            let ok = c.value <= 2 * k;
            let out = if ok {
                json!({"k_convex": true})
            } else {
                json!({"k_convex": false, "stabbing_number": c.value, "witness": line_json(&c.witness)})
            };
            Ok((out, ok || !expect))
        }
        Cmd::Recognize2 { input, oracle, expect, svg } => {
            let p = read_polygon(&input)?;
            let v = if oracle { recognize_2convex_oracle(&p, DecisionPath::Oracle) } else { recognize_2convex(&p) };
            let mut spec = RenderSpec::polygons(std::slice::from_ref(&p));
            if let Some(l) = &v.confirming_line {
                spec.lines.push((l.clone(), "#000000".into()));
            }
            write_svg(&svg, &spec)?;
            Ok((v.to_json(), v.is_two_convex || !expect))
        }
        Cmd::Triangulate { input, sort, stats, svg } => {
            let p = read_polygon(&input)?;
            let method = match sort {
                SortArg::Scan => SortMethod::Scan,
                SortArg::Finger => SortMethod::Finger,
            };
            let (t, st) = triangulate_with(&p, method);
            let check = validate_triangulation(&p, &t);
            let mut out = json!({"triangles": t.triangles, "valid": check.is_ok()});
            if let Err(e) = &check {
                out["error"] = json!(e.to_string());
            }
            if stats {
                out["stats"] = serde_json::to_value(st).expect("serializable");
            }
            let mut spec = RenderSpec::polygons(std::slice::from_ref(&p));
            for tri in &t.triangles {
                spec.paths.push((chain_path(&p, &[tri[0], tri[1], tri[2], tri[0]]), "#555555".into()));
            }
            write_svg(&svg, &spec)?;
            Ok((out, check.is_ok()))
        }
        Cmd::Chains { input, svg } => {
            let p = read_polygon(&input)?;
            let n = p.len();
            let pockets = pocket_chains(&p).map_err(|e| Fail::Negative(e.to_string()))?;
            let chains = convex_chains(&p).map_err(|e| Fail::Negative(e.to_string()))?;
            let lists: Vec<Vec<usize>> = chains.chains.iter().map(|r| r.indices(n)).collect();
            let pk: Vec<Value> = pockets
                .pockets
                .iter()
                .map(|q| json!({"c1": q.c1.indices(n), "c2": q.c2.indices(n), "c3": q.c3.indices(n)}))
                .collect();
            let mut spec = RenderSpec::polygons(std::slice::from_ref(&p));
            for (i, c) in lists.iter().enumerate() {
                spec.paths.push((chain_path(&p, c), color(i + 1).into()));
            }
            write_svg(&svg, &spec)?;
            Ok((json!({"pockets": pk, "chains": lists}), true))
        }
        Cmd::ConvexSubset { input, svg } => {
            let p = read_polygon(&input)?;
            let s = largest_convex_subset(&p).map_err(|e| Fail::Negative(e.to_string()))?;
            let mut spec = RenderSpec::polygons(std::slice::from_ref(&p));
            spec.points = s.iter().map(|&i| (p.vertex(i).clone(), "#d62728".to_string())).collect();
            write_svg(&svg, &spec)?;
            Ok((json!({"indices": s, "size": s.len(), "bound": subset_bound(p.len())}), true))
        }
        Cmd::Partition { input, svg } => {
            let p = read_polygon(&input)?;
            let parts = convex_partition(&p).map_err(|e| Fail::Negative(e.to_string()))?;
            let mut spec = RenderSpec::polygons(std::slice::from_ref(&p));
            for (i, part) in parts.iter().enumerate() {
                spec.points.extend(part.iter().map(|&v| (p.vertex(v).clone(), color(i + 1).to_string())));
            }
            write_svg(&svg, &spec)?;
            Ok((json!({"parts": parts, "count": parts.len(), "bound": partition_bound(p.len())}), true))
        }
        Cmd::Reduce3sum { input, emit_polygon, decide } => {
            let xs: Vec<i64> = input
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>().map_err(|_| Fail::Input(format!("bad integer {t:?}"))))
                .collect::<Result<_, _>>()?;
            let brute = three_sum_brute(&xs);
            let inst = match reduce(&xs) {
                Ok(inst) => inst,
                Err(HardnessError::EarlyExit(why)) => {
                    return Ok((json!({"input": xs, "early_exit": why, "decision": true, "brute": brute}), true))
                }
                Err(HardnessError::EmptyInput) => return Err(Fail::Input("empty input".into())),
                Err(e) => return Err(input_err(e)),
            };
            if let Some(path) = &emit_polygon {
                let body = serde_json::to_string_pretty(&polygon_to_value(&inst.p2)).expect("serializable");
                write_out(&path.to_string_lossy(), &(body + "\n"))?;
            }
            let mut out = serde_json::to_value(&inst).expect("serializable");
            out["p1_valid"] = json!(inst.p1.is_some());
            out["p2_vertices"] = json!(inst.p2.len());
            out["brute"] = json!(brute);
            let mut ok = true;
            if decide {
                out["stabbing_number"] = json!(stabbing_number(&inst.p2).value);
                match decide_3sum_geometric(&xs) {
                    Ok(d) => {
                        out["decision"] = json!(d);
                        ok = d == brute;
                    }
                    Err(e) => {
                        out["decision"] = Value::Null;
                        out["error"] = json!(e.to_string());
                        ok = false;
                    }
                }
            }
            Ok((out, ok))
        }
        Cmd::RegionDegree { input, random_lines, seed } => {
            let v = read_json(&input)?;
            let env = family_from(&v)?;
            let e = v
                .get("expr")
                .and_then(RegionExpr::from_json)
                .ok_or_else(|| Fail::Input("missing or malformed \"expr\"".into()))?;
            let r = empirical_degree(&e, &env, random_lines, seed).map_err(input_err)?;
            Ok((serde_json::to_value(&r).expect("serializable"), true))
        }
        Cmd::Helly { m, expect } => {
            let r = helly_check(m).map_err(input_err)?;
            let ok = r.passed || !expect;
            Ok((serde_json::to_value(&r).expect("serializable"), ok))
        }
        Cmd::Ggp { input, render: svg } => {
            let fam = family_from(&read_json(&input)?)?;
            let all = enumerate_ggp_with_witnesses(&fam).map_err(|e| Fail::Negative(e.to_string()))?;
            let polys: Vec<Polygon> = fam.values().cloned().collect();
            let mut spec = RenderSpec::polygons(&polys);
            spec.lines = all.values().map(|l| (l.clone(), "#000000".to_string())).collect();
            write_svg(&svg, &spec)?;
            let seqs: Vec<&[String]> = all.keys().map(|g| g.ids()).collect();
            Ok((json!({"ggps": seqs, "count": all.len(), "bound": ggp_cell_bound(&fam)}), true))
        }
        Cmd::Gen { name, params, seed, output } => {
            let name = FixtureName::parse(&name).ok_or_else(|| Fail::Input(format!("unknown fixture {name:?}")))?;
            let spec = FixtureSpec { name, params: parse_params(&params)?, seed };
            let out = match generate(&spec).map_err(input_err)? {
                Fixture::Single(p) => polygon_to_value(&p),
                Fixture::Family(ps) => json!({"polygons": ps.iter().map(polygon_to_value).collect::<Vec<_>>()}),
            };
            match output {
                Some(path) if path != "-" => {
                    write_out(&path, &(serde_json::to_string_pretty(&out).expect("serializable") + "\n"))?;
                    Ok((json!({"written": path}), true))
                }
                _ => Ok((out, true)),
            }
        }
        Cmd::Render { input, output } => {
            let v = read_json(&input)?;
            let polys: Vec<Polygon> = if v.get("polygons").is_some() {
                family_from(&v)?.into_values().collect()
            } else {
                vec![polygon_from_value(&v).map_err(input_err)?]
            };
            let mut spec = RenderSpec::polygons(&polys);
            for l in v.get("lines").and_then(Value::as_array).into_iter().flatten() {
                spec.lines.push((parse_line(l)?, "#000000".into()));
            }
            for p in v.get("points").and_then(Value::as_array).into_iter().flatten() {
                let c: [String; 2] = serde_json::from_value(p.clone()).map_err(input_err)?;
                spec.points.push((parse_point(&c).map_err(input_err)?, "#d62728".into()));
            }
            let svg = render(&spec);
            if output == "-" {
                let _ = std::io::stdout().lock().write_all(svg.as_bytes());
                return Ok((Value::Null, true));
            }
            write_out(&output, &svg)?;
            Ok((json!({"written": output, "polygons": polys.len()}), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((v, ok)) => {
            if !v.is_null() {
                // a closed pipe downstream is not our error
                let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Negative(m)) => {
            eprintln!("negative: {m}");
            ExitCode::from(1)
        }
    }
}
