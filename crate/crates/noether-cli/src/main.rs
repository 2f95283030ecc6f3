use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use noether::axioms::axiom_suite;
use noether::form::{dualize, FiniteForm, Form};
use noether::gen::Pool;
use noether::lemma::library::NAMES;
use noether::lemma::{
    generalized_snail, goursat, salamander, snake, template, verify_generic, verify_lemma, Diagram,
    SampleOptions, SequenceOutcome,
};
use noether::pyramid::{build_pyramid, Apex, BuildOptions, BuildOrder};
use noether::report::Report;
use noether::slominski::{Algebra, SlominskiForm};
use noether::table::TableForm;
use noether::text::{BoundDiagram, BoundZigzag, Kind, Named, Workspace};
use noether::zigzag::{
    chase_backward_traced, chase_forward_traced, decide_induction, induced_relation, Induction, Obstruction,
    Zigzag,
};

#[derive(Parser)]
#[command(name = "noether", version, about = "Subobject chasing in noetherian forms")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Layered,
    Diagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApexArg {
    Quotient,
    Image,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the form axioms on every form the files declare.
    CheckAxioms {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Only this table form.
        #[arg(long)]
        form: Option<String>,
        /// Also check the stronger Axiom 6.
        #[arg(long)]
        with_axiom6: bool,
        /// Also check the dual of each form.
        #[arg(long)]
        dual: bool,
    },
    /// Chase a subobject along a zigzag.
    Chase {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        zigzag: Option<String>,
        /// `top`, `bot`, a key of a table object, or `{e,b}` / `{0,4}`.
        #[arg(long)]
        subobject: String,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Direction,
        /// Print the subobject reached at every node.
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether a zigzag induces a morphism.
    Induce {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        zigzag: Option<String>,
    },
    /// Build the pyramid over a zigzag and check its invariants.
    Pyramid {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        zigzag: Option<String>,
        #[arg(long, value_enum, default_value = "layered")]
        order: Order,
        #[arg(long, value_enum, default_value = "quotient")]
        apex: ApexArg,
        /// Write Graphviz output here; `-` for stdout.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Check a diagram against a lemma, or against its own conclusions.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        lemma: Option<String>,
    },
    /// The snake sequence of a diagram.
    Snake {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Write a random instance of a lemma over small groups.
    Sample {
        lemma: String,
        #[arg(long)]
        part: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the files back in canonical form.
    Fmt {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// List the built-in lemmas, or print one.
    Lemmas { name: Option<String> },
}

type Outcome = Result<bool, String>;

fn load(files: &[PathBuf]) -> Result<Workspace, String> {
    Workspace::load(files).map_err(|e| e.to_string())
}

fn pick(ws: &Workspace, kind: Kind, name: Option<String>) -> Result<String, String> {
    name.or_else(|| ws.only(kind)).ok_or_else(|| format!("name a {kind} with --{kind}; the files do not declare exactly one"))
}

fn print_report(r: &Report) -> bool {
    print!("{r}");
    r.passed()
}

/// Runs `$body` with `$form` and `$z` bound to whichever form the zigzag
/// lives in.
macro_rules! on_zigzag {
    ($bound:expr, |$form:ident, $z:ident| $body:expr) => {
        match $bound {
            BoundZigzag::Table(f, $z) => {
                let $form: &TableForm = f;
                $body
            }
            BoundZigzag::Slominski($z) => {
                let open = SlominskiForm::open();
                let $form = &open;
                $body
            }
        }
    };
}

macro_rules! on_diagram {
    ($bound:expr, |$form:ident, $d:ident| $body:expr) => {
        match $bound {
            BoundDiagram::Table(f, $d) => {
                let $form: &TableForm = f;
                $body
            }
            BoundDiagram::Slominski($d) => {
                let open = SlominskiForm::open();
                let $form = &open;
                $body
            }
        }
    };
}

fn axioms_on<F: FiniteForm>(name: &str, form: &F, with6: bool, dual: bool) -> bool {
    println!("== {name}");
    let mut ok = print_report(&axiom_suite(form, with6));
    if dual {
        println!("== dual {name}");
        ok &= print_report(&axiom_suite(&dualize(form), with6));
    }
    ok
}

fn check_axioms(files: &[PathBuf], only: Option<String>, with6: bool, dual: bool) -> Outcome {
    let ws = load(files)?;
    if let Some(n) = only {
        let f = ws.forms.get(&n).ok_or_else(|| format!("no form named `{n}`"))?;
        return Ok(axioms_on(&n, f, with6, dual));
    }
    if ws.forms.is_empty() && ws.algebras.is_empty() {
        return Err("the files declare no form and no algebra".into());
    }
    let mut ok = true;
    for (n, f) in &ws.forms {
        ok &= axioms_on(n, f, with6, dual);
    }
    if !ws.algebras.is_empty() {
        let algebras: Vec<_> = ws.algebras.values().cloned().collect();
        // Declared homs pick out a subcategory; without any, take every hom.
        let form = if ws.homs.is_empty() {
            SlominskiForm::full(algebras)
        } else {
            SlominskiForm::closure(algebras, ws.homs.values().cloned().collect()).map_err(|e| e.to_string())?
        };
        ok &= axioms_on("algebras", &form, with6, dual);
    }
    Ok(ok)
}

fn chase<F: Named>(
    ws: &Workspace,
    form: &F,
    z: &Zigzag<F::Obj, F::Mor>,
    key: &str,
    dir: Direction,
    trace: bool,
) -> Outcome {
    let nodes = z.nodes();
    let (at, trail) = match dir {
        Direction::Forward => {
            let s = form.parse_sub(ws, z.start(), key).ok_or_else(|| no_sub(form, z.start(), key))?;
            (nodes.len() - 1, chase_forward_traced(form, z, s))
        }
        Direction::Backward => {
            let s = form.parse_sub(ws, z.end(), key).ok_or_else(|| no_sub(form, z.end(), key))?;
            (0, chase_backward_traced(form, z, s))
        }
    };
    if trace {
        for (i, (x, &s)) in nodes.iter().zip(&trail).enumerate() {
            println!("{i} {}: {}", form.obj_name(x), form.show_sub(ws, x, s));
        }
    }
    println!("{}", form.show_sub(ws, &nodes[at], trail[at]));
    Ok(true)
}

fn no_sub<F: Form>(form: &F, x: &F::Obj, key: &str) -> String {
    format!("`{key}` is not a subobject of {}", form.obj_name(x))
}

fn induce<F: Named>(ws: &Workspace, form: &F, z: &Zigzag<F::Obj, F::Mor>) -> bool {
    match decide_induction(form, z) {
        Induction::Fails(e) => {
            let x = &z.nodes()[e.node];
            let what = match e.obstruction {
                Obstruction::BottomGrows => "bottom grows",
                Obstruction::TopShrinks => "top shrinks",
            };
            println!(
                "no morphism: {what} at node {} ({}) to {}",
                e.node,
                form.obj_name(x),
                form.show_sub(ws, x, e.found)
            );
            false
        }
        Induction::Induced(m) => {
            println!("induces {} -> {}", form.obj_name(&m.dom), form.obj_name(&m.cod));
            for (a, &b) in m.dimg.iter().enumerate() {
                println!("  dimg {} -> {}", form.show_sub(ws, &m.dom, a), form.show_sub(ws, &m.cod, b));
            }
            for (b, &a) in m.iimg.iter().enumerate() {
                println!("  iimg {} -> {}", form.show_sub(ws, &m.cod, b), form.show_sub(ws, &m.dom, a));
            }
            true
        }
    }
}

fn pyramid<F: Form>(form: &F, z: &Zigzag<F::Obj, F::Mor>, opts: BuildOptions, dot: Option<&str>) -> Outcome {
    let p = build_pyramid(form, z, opts).map_err(|e| e.to_string())?;
    let report = p.check_invariants(form);
    match dot {
        Some("-") => {
            print!("{}", p.to_dot(form));
            eprint!("{report}");
            return Ok(report.passed());
        }
        Some(path) => std::fs::write(path, p.to_dot(form)).map_err(|e| format!("{path}: {e}"))?,
        None => {}
    }
    Ok(print_report(&report))
}

fn sequence<F: Named>(form: &F, s: &SequenceOutcome<F::Obj, F::Mor>) -> bool {
    if let Some(seq) = &s.sequence {
        for (n, node) in s.names.iter().zip(&seq.nodes) {
            println!("{n}: {}", form.size(&node.object(form)));
        }
    }
    print_report(&s.report) && s.passed()
}

fn verify<F: Named>(form: &F, d: &Diagram<F::Obj, F::Mor>, lemma: Option<&str>, conclusions: bool) -> Outcome {
    let lemma = match lemma {
        Some(l) => l.to_string(),
        None if conclusions => {
            let c = d.conclusions.clone();
            let out = verify_generic(form, d, &c).map_err(|e| e.to_string())?;
            return Ok(print_report(&out.report));
        }
        None if template(&d.name).is_some() => d.name.clone(),
        None => return Err(format!("diagram {} has no conclusions; name a lemma with --lemma", d.name)),
    };
    let e = |e: noether::lemma::ShapeError| e.to_string();
    match lemma.as_str() {
        "snake" => Ok(sequence(form, &snake(form, d).map_err(e)?)),
        "generalized-snail" => Ok(sequence(form, &generalized_snail(form, d).map_err(e)?)),
        "double-complex" | "salamander" => Ok(sequence(form, &salamander(form, d).map_err(e)?)),
        "goursat" => {
            let g = goursat(form, d).map_err(e)?;
            if let Some(q) = g.iso.as_ref().and_then(|q| q.iso.as_ref()) {
                println!("iso: {} -> {}", form.size(&q.dom), form.size(&q.cod));
            }
            Ok(print_report(&g.report))
        }
        name => {
            let t = template(name).ok_or_else(|| format!("no lemma named `{name}`"))?;
            let out = verify_lemma(form, &t, d).map_err(e)?;
            let verdict = if out.refuted() {
                "REFUTED"
            } else if !out.hypotheses {
                "hypotheses unmet"
            } else {
                "holds"
            };
            let ok = print_report(&out.report);
            println!("verdict: {verdict}");
            Ok(ok)
        }
    }
}

fn sample(lemma: &str, part: Option<&str>, seed: u64, out: Option<&PathBuf>) -> Outcome {
    let t = template(lemma).ok_or_else(|| format!("no lemma named `{lemma}`"))?;
    if let Some(p) = part {
        t.part(p).ok_or_else(|| format!("{lemma} has no part `{p}`"))?;
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pool = Pool::lemma_pool();
    let d = noether::lemma::sample_instance(&mut rng, &mut pool, &t, part, SampleOptions::default())
        .ok_or_else(|| format!("no instance of {lemma} found"))?;
    let name: String = lemma.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let mut ws = Workspace::default();
    ws.insert_instance(&name, &d)?;
    let text = ws.to_text();
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::CheckAxioms { files, form, with_axiom6, dual } => check_axioms(&files, form, with_axiom6, dual),
        Cmd::Chase { files, zigzag, subobject, direction, trace } => {
            let ws = load(&files)?;
            let name = pick(&ws, Kind::Zigzag, zigzag)?;
            let b = ws.zigzag(&name).map_err(|e| e.to_string())?;
            on_zigzag!(b, |form, z| chase(&ws, form, &z, &subobject, direction, trace))
        }
        Cmd::Induce { files, zigzag } => {
            let ws = load(&files)?;
            let name = pick(&ws, Kind::Zigzag, zigzag)?;
            match ws.zigzag(&name).map_err(|e| e.to_string())? {
                BoundZigzag::Table(f, z) => Ok(induce(&ws, f, &z)),
                BoundZigzag::Slominski(z) => {
                    let ok = induce(&ws, &SlominskiForm::open(), &z);
                    if let Some(map) = induced_relation(&z).as_map() {
                        let (a, b) = (z.start(), z.end());
                        let el = |x: &Algebra, i: usize| match ws.elements.get(x.name()) {
                            Some(n) => n[i].clone(),
                            None => i.to_string(),
                        };
                        let pairs: Vec<String> =
                            map.iter().enumerate().map(|(i, &j)| format!("{}->{}", el(a, i), el(b, j))).collect();
                        println!("map {}", pairs.join(" "));
                    }
                    Ok(ok)
                }
            }
        }
        Cmd::Pyramid { files, zigzag, order, apex, dot } => {
            let ws = load(&files)?;
            let name = pick(&ws, Kind::Zigzag, zigzag)?;
            let opts = BuildOptions {
                order: match order {
                    Order::Layered => BuildOrder::Layered,
                    Order::Diagonal => BuildOrder::Diagonal,
                },
                apex: match apex {
                    ApexArg::Quotient => Apex::Quotient,
                    ApexArg::Image => Apex::Image,
                },
            };
            let b = ws.zigzag(&name).map_err(|e| e.to_string())?;
            on_zigzag!(b, |form, z| pyramid(form, &z, opts, dot.as_deref()))
        }
        Cmd::Verify { files, diagram, lemma } => {
            let ws = load(&files)?;
            let name = pick(&ws, Kind::Diagram, diagram)?;
            let conclusions = !ws.diagrams[&name].conclusions.is_empty();
            let b = ws.diagram(&name).map_err(|e| e.to_string())?;
            on_diagram!(b, |form, d| verify(form, &d, lemma.as_deref(), conclusions))
        }
        Cmd::Snake { files, diagram } => {
            let ws = load(&files)?;
            let name = pick(&ws, Kind::Diagram, diagram)?;
            let b = ws.diagram(&name).map_err(|e| e.to_string())?;
            on_diagram!(b, |form, d| verify(form, &d, Some("snake"), false))
        }
        Cmd::Sample { lemma, part, seed, out } => sample(&lemma, part.as_deref(), seed, out.as_ref()),
        Cmd::Fmt { files } => {
            print!("{}", load(&files)?.to_text());
            Ok(true)
        }
        Cmd::Lemmas { name: None } => {
            for n in NAMES {
                println!("{n}");
            }
            Ok(true)
        }
        Cmd::Lemmas { name: Some(n) } => {
            let t = template(&n).ok_or_else(|| format!("no lemma named `{n}`"))?;
            print!("{t}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
