use std::process::ExitCode;

use clap::Parser;
use sigmorse_links::LinkDescriptor;
use sigmorse_morse::{bundled_scenarios, cormain_bound, cusp_max, ScenarioFile};
use sigmorse_seifert::{classical_signature, seifert_from_positive_braid, signature_nullity_star, torus_braid, BraidWord};
use sigmorse_spectra::{
    cable_signature_tl, signature_profile_torus, torus_signature, torus_signature_tl, CableChain, Rational,
};

mod args;
mod fail;
mod scenarios;
mod trace;

use args::{BoundKind, Cli, Command, TorusOnly, TorusProfile};
use fail::Failure;

/// What a command prints, and whether every verdict came out as wanted.
struct Done {
    text: String,
    ok: bool,
}

impl Done {
    fn ok(text: impl Into<String>) -> Self {
        Done { text: text.into(), ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(d) => {
            print!("{}", d.text);
            if !d.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(if d.ok { 0 } else { fail::VERDICT_FAILED })
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

fn half() -> Rational {
    Rational::new(1, 2).expect("1/2")
}

fn run(cmd: Command) -> Result<Done, Failure> {
    match cmd {
        Command::Signature { link: TorusOnly::Torus { p, q, x } } => {
            let s = match x {
                None => torus_signature(p, q),
                Some(x) => torus_signature_tl(p, q, x),
            }
            .map_err(fail::spectra)?;
            Ok(Done::ok(s.to_string()))
        }
        Command::Profile { link: TorusProfile::Torus { p, q, csv } } => {
            let text = signature_profile_torus(p, q).map_err(fail::spectra)?.to_csv();
            match csv {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                    Ok(Done::ok(format!("wrote {}", path.display())))
                }
                None => Ok(Done::ok(text)),
            }
        }
        Command::Cable { stages, x } => {
            let chain = CableChain::new(parse_stages(&stages)?).map_err(fail::spectra)?;
            let s = cable_signature_tl(&chain, x.unwrap_or_else(half)).map_err(fail::spectra)?;
            Ok(Done::ok(s.to_string()))
        }
        Command::Braid { word, strands, x } => braid(&word, strands, x),
        Command::Check { path, bundled, x } => check(path, bundled, x),
        Command::Bound { which } => {
            let v = match which {
                BoundKind::A2k { p, q } => cormain_bound(p, q),
                BoundKind::Cusps { degree } => cusp_max(degree),
            }
            .map_err(fail::morse)?;
            Ok(Done::ok(v.to_string()))
        }
        Command::Trace(a) => trace::run(&a).map(Done::ok),
        Command::Report => report(),
        Command::Selftest { criterion } => selftest(criterion),
    }
}

fn parse_stages(s: &str) -> Result<Vec<(i64, i64)>, Failure> {
    s.split(',')
        .map(|st| {
            let bad = || Failure::input(format!("stage {st:?} is not of the form p:q"));
            let (a, b) = st.trim().split_once(':').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn braid(word: &str, strands: usize, x: Option<Rational>) -> Result<Done, Failure> {
    let letters = word
        .split(',')
        .map(|l| l.trim().parse::<i64>().map_err(|_| Failure::input(format!("bad letter {l:?} in --word"))))
        .collect::<Result<Vec<_>, _>>()?;
    let b = BraidWord::new(strands, &letters).map_err(fail::seifert)?;
    let v = seifert_from_positive_braid(&b);
    let text = match x {
        None => {
            let r = classical_signature(&v);
            format!("sigma {}\nnullity {}\nn {}\ncomponents {}", r.sigma, r.nullity, r.n_link, b.components())
        }
        Some(x) => {
            let (s, n) = signature_nullity_star(&v, x.to_f64()).map_err(fail::seifert)?;
            format!("x {x}\nsigma* {s}\nn* {n}\ncomponents {}", b.components())
        }
    };
    Ok(Done::ok(text))
}

fn check(path: Option<std::path::PathBuf>, bundled: bool, x: Rational) -> Result<Done, Failure> {
    let files: Vec<(String, ScenarioFile)> = if bundled {
        bundled_scenarios().into_iter().map(|(n, f)| (n.to_string(), f)).collect()
    } else {
        let path = path.expect("clap requires a path");
        let text = std::fs::read_to_string(&path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let f = ScenarioFile::parse(&text).map_err(|e| fail::json_error(&path, &e))?;
        let name = if f.scenario.name.is_empty() { path.display().to_string() } else { f.scenario.name.clone() };
        vec![(name, f)]
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, f) in &files {
        let out = scenarios::evaluate(f, x);
        ok &= !out.iter().any(|o| o.bad());
        lines.extend(scenarios::lines(name, &out));
    }
    Ok(Done { text: lines.join("\n"), ok })
}

fn report() -> Result<Done, Failure> {
    let scen: Vec<serde_json::Value> = bundled_scenarios()
        .iter()
        .map(|(n, f)| serde_json::json!({ "name": n, "verdicts": scenarios::json(&scenarios::evaluate(f, half())) }))
        .collect();
    let mut torus = Vec::new();
    for p in 2..=6i64 {
        for q in p..=6i64 {
            let g = sigmorse_links::descriptor_invariants(&LinkDescriptor::torus(p, q).map_err(|e| Failure::input(e))?, half())
                .map_err(|e| Failure::input(e))?;
            let b = torus_braid(p, q).map_err(fail::seifert)?;
            let r = classical_signature(&seifert_from_positive_braid(&b));
            torus.push(serde_json::json!({
                "p": p, "q": q, "c": g.c, "sigma": r.sigma, "nullity": r.nullity, "n": r.n_link, "n_star": g.n_star,
            }));
        }
    }
    let v = serde_json::json!({ "schema": sigmorse_morse::SCHEMA, "scenarios": scen, "torus_links": torus });
    Ok(Done::ok(serde_json::to_string_pretty(&v).expect("json")))
}

fn selftest(criterion: Option<u8>) -> Result<Done, Failure> {
    let results = match criterion {
        None => sigmorse_acceptance::run_all(),
        Some(id) => vec![sigmorse_acceptance::run_one(id)
            .ok_or_else(|| Failure::input(format!("no criterion {id}; choose 1 to 9")))?],
    };
    let ok = results.iter().all(|r| !r.blocking || r.pass());
    let text = results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Ok(Done { text, ok })
}
