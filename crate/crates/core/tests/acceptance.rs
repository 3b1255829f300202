//! One PASS/FAIL line per acceptance criterion. All comparisons are exact
//! integer equalities (tolerance 0). Exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;

use segre::analyze::{
    analyze_family, expansion_check, homogeneous_relation_check, hyperplane_from_form,
    limiting_hyperplane_test, rees_test, slice_check, tangent_cone_analysis, ReesVerdict,
};
use segre::cli::{self, Command, Invocation};
use segre::ideal::Ideal;
use segre::mult::samuel_multiplicity;
use segre::ring::{parse_polynomial, Polynomial};
use segre::segre::{reduction_invariance_check, segre_polar_profile, SegreOptions};
use segre::Error;

type Outcome = Result<String, String>;

fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
    let r = common::qq_ring(vars);
    Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect())
}

fn poly(vars: &[&str], f: &str) -> Polynomial {
    parse_polynomial(f, &common::qq_ring(vars)).unwrap()
}

fn whole(i: &Ideal) -> Ideal {
    Ideal::zero(i.ring())
}

fn opts(trials: usize, seed: u64) -> SegreOptions {
    SegreOptions {
        trials,
        seed,
        ..SegreOptions::default()
    }
}

fn check(cond: bool, what: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what)
    }
}

const XYZ: [&str; 3] = ["x", "y", "z"];
const XY: [&str; 2] = ["x", "y"];

fn segre_fixtures() -> Outcome {
    let cases: [(&[&str], &[&str], &[u64], &[u64]); 4] = [
        (&XYZ, &["y*z", "x*z", "x*y"], &[0, 3, 2], &[1, 2, 1]),
        (&XYZ, &["x*y", "x*z"], &[1, 2, 0], &[1, 1, 0]),
        (&XY, &["x^2 - y^3"], &[2, 0], &[1, 0]),
        (&XY, &["x", "y"], &[0, 1], &[1, 1]),
    ];
    let mut runs = 0;
    for (vars, gens, e, m) in cases {
        let i = ideal(vars, gens);
        for base in [0u64, 1000, 987_654] {
            let run = segre_polar_profile(&i, &whole(&i), &opts(5, base)).map_err(|e| e.to_string())?;
            let p = &run.profile;
            check(
                p.e == e && p.m == m && p.agreement && p.seeds.len() == 5,
                format!("{gens:?} seed base {base}: e={:?} m={:?}", p.e, p.m),
            )?;
            runs += 1;
        }
    }
    Ok(format!("4 fixtures x 3 seed bases x 5 unanimous trials ({runs} runs)"))
}

fn expansion_formulas() -> Outcome {
    let cases: [(&[&str], &[&str]); 5] = [
        (&XY, &["x", "y"]),
        (&XY, &["x^2 - y^3"]),
        (&XYZ, &["x*y", "x*z"]),
        (&XYZ, &["y*z", "x*z", "x*y"]),
        (&XY, &["x^2", "y^3"]),
    ];
    let mut rows = 0;
    for (vars, gens) in cases {
        let i = ideal(vars, gens);
        let rep = expansion_check(&i, &whole(&i), &opts(3, 0)).map_err(|e| e.to_string())?;
        check(rep.all_hold, format!("{gens:?}: {:?}", rep.rows))?;
        rows += rep.rows.len();
    }
    Ok(format!("5 ideals, {rows} identity rows exact"))
}

fn slicing_formulas() -> Outcome {
    let mut detail = Vec::new();
    for (gens, slice_top) in [(&["y*z", "x*z", "x*y"][..], 4u64), (&["x*y", "x*z"][..], 2)] {
        let i = ideal(&XYZ, gens);
        let rep = slice_check(&i, &whole(&i), 2, &opts(3, 0)).map_err(|e| e.to_string())?;
        let last = rep.rows.last().unwrap();
        check(
            rep.all_hold && rep.slice_profile.e[1] == slice_top,
            format!("{gens:?}: {:?}", rep.rows),
        )?;
        detail.push(format!("{} = {}", last.lhs, last.rhs));
    }
    Ok(format!("k = 2: J(xyz) {}, (xy,xz) {}", detail[0], detail[1]))
}

fn top_segre_is_samuel() -> Outcome {
    let cases: [(&[&str], u64); 5] = [
        (&["x", "y"], 1),
        (&["x^2", "y^3"], 6),
        (&["x^2", "x*y", "y^2"], 4),
        (&["(x+y)^2", "(x+y)*(x-y)", "(x-y)^2"], 4),
        (&["x^3", "x^2*y", "x*y^2", "y^3"], 9),
    ];
    let mut seen = Vec::new();
    for (gens, expected) in cases {
        let i = ideal(&XY, gens);
        let top = *segre_polar_profile(&i, &whole(&i), &opts(3, 0))
            .map_err(|e| e.to_string())?
            .profile
            .e
            .last()
            .unwrap();
        let samuel = samuel_multiplicity(&i, 3, 0).map_err(|e| e.to_string())?.multiplicity;
        check(
            top == samuel && top == expected,
            format!("{gens:?}: e_top {top}, samuel {samuel}, expected {expected}"),
        )?;
        seen.push(top.to_string());
    }
    Ok(format!("e_n = e(I) = {}", seen.join(", ")))
}

fn rees_criterion() -> Outcome {
    let o = opts(3, 0);
    let i = ideal(&XY, &["x^2", "y^2"]);
    let z = whole(&i);
    let eq = rees_test(&i, &ideal(&XY, &["x^2", "x*y", "y^2"]), &z, &o).map_err(|e| e.to_string())?;
    check(eq.verdict == ReesVerdict::ClosureEqual, "(x2,y2) vs (x2,xy,y2)".into())?;
    let ne = rees_test(&i, &ideal(&XY, &["x", "y"]), &z, &o).map_err(|e| e.to_string())?;
    check(ne.verdict == ReesVerdict::ClosureNotEqual, "(x2,y2) vs (x,y)".into())?;
    let fixtures: [(&[&str], &[&str]); 5] = [
        (&XY, &["x", "y"]),
        (&XY, &["x^2 - y^3"]),
        (&XYZ, &["x*y", "x*z"]),
        (&XYZ, &["y*z", "x*z", "x*y"]),
        (&XY, &["x^2", "y^3"]),
    ];
    for (vars, gens) in fixtures {
        let i = ideal(vars, gens);
        let r = rees_test(&i, &i, &whole(&i), &o).map_err(|e| e.to_string())?;
        check(r.verdict == ReesVerdict::ClosureEqual, format!("reflexivity {gens:?}"))?;
    }
    Ok("equal, not equal, 5/5 reflexive".into())
}

fn limiting_hyperplanes() -> Outcome {
    let o = opts(3, 0);
    let mut out = Vec::new();
    for (f, h, limiting) in [("x^2 - y^3", "x", true), ("x^2 - y^3", "y", false), ("x^2 + y^2", "y", false)] {
        let f = poly(&XY, f);
        let hv = hyperplane_from_form(&poly(&XY, h)).map_err(|e| e.to_string())?;
        let rep = limiting_hyperplane_test(&f, &hv, &o).map_err(|e| e.to_string())?;
        let (a, b) = (rep.restricted_profile.e[0], rep.jacobian_profile.e[0]);
        check(
            rep.limiting == limiting && (a != b) == limiting,
            format!("{f}, {{{h}=0}}: {a} vs {b}"),
        )?;
        out.push(format!("{f} {{{h}=0}} {a}{}{b}", if a == b { "=" } else { "!=" }));
    }
    Ok(out.join("; "))
}

fn homogeneous_relation() -> Outcome {
    let cases: [(&[&str], &str); 5] = [
        (&XY, "x^3 + y^3"),
        (&XY, "x*y"),
        (&XYZ, "x*y*z"),
        (&XY, "x^4 + y^4"),
        (&XYZ, "x^4 + y^4 + z^4 - x*y*z^2"),
    ];
    let mut out = Vec::new();
    for (vars, f) in cases {
        let rep = homogeneous_relation_check(&poly(vars, f), &opts(3, 0)).map_err(|e| e.to_string())?;
        check(rep.holds, format!("{f}: {} vs {}", rep.lhs, rep.rhs))?;
        out.push(format!("{}", rep.rhs));
    }
    Ok(format!("5/5 exact, (d-1)^N = {}", out.join(", ")))
}

fn tangent_cone_relations() -> Outcome {
    let o = opts(3, 0);
    let xyz = tangent_cone_analysis(&poly(&XYZ, "x*y*z"), &o).map_err(|e| e.to_string())?;
    let rows: Vec<(i64, i64)> = xyz.relations.iter().map(|r| (r.lhs, r.rhs)).collect();
    check(
        xyz.relations_hold && rows[..2] == [(3, 3), (8, 8)],
        format!("xyz relations {rows:?}"),
    )?;
    let (m1, m2, l2, l3) = (xyz.le.polar(1), xyz.le.polar(2), xyz.le.lambda_at(2), xyz.le.lambda_at(3));
    check(
        (m1, m2, l2, l3) == (2, 1, 3, 2),
        format!("xyz data m1={m1} m2={m2} l2={l2} l3={l3}"),
    )?;
    let cubic = tangent_cone_analysis(&poly(&XY, "x^3 + y^3"), &o).map_err(|e| e.to_string())?;
    let c = &cubic.relations[0];
    check(cubic.relations_hold && (c.lhs, c.rhs) == (4, 4), format!("x3+y3 {:?}", cubic.relations))?;
    let cusp = tangent_cone_analysis(&poly(&XY, "x^2 - y^3"), &o);
    check(
        matches!(cusp, Err(Error::NonReducedTangentCone(_))),
        format!("cusp gave {cusp:?}"),
    )?;
    Ok(format!(
        "xyz {}-{}={} and {}-0={}+{}; x3+y3 4-0=4; cusp rejected",
        m1 * m1,
        m2,
        l2,
        m1 * m1 * m1,
        m1 * l2,
        l3
    ))
}

fn family_analyzer() -> Outcome {
    let r = segre::ring::PolyRing::with_params(&XY, &["t"], segre::ring::FieldSpec::Rationals).unwrap();
    let f = |s: &str| parse_polynomial(s, &r).unwrap();
    let samples = |v: &[i64]| -> Vec<Vec<segre::ring::Coeff>> {
        v.iter().map(|&t| vec![r.field().from_i64(t)]).collect()
    };
    let o = opts(3, 0);
    let jump = analyze_family(&f("x^3 + y^3 + t*x*y"), &samples(&[0, 1]), &o).map_err(|e| e.to_string())?;
    let l0 = jump.samples[0].le.lambda_at(2);
    let l1 = jump.samples[1].le.lambda_at(2);
    check(
        (l0, l1) == (4, 1)
            && !jump.lambda_constant
            && jump.semicontinuity_holds
            && !jump.verdicts.af
            && !jump.verdicts.wf
            && jump.verdicts.necessary_condition_violated,
        format!("jumping family {:?}", jump.verdicts),
    )?;
    let flat = analyze_family(&f("x^2 - y^3"), &samples(&[0, 1, 2]), &o).map_err(|e| e.to_string())?;
    check(
        flat.verdicts.af && flat.verdicts.wf && !flat.verdicts.necessary_condition_violated,
        format!("constant family {:?}", flat.verdicts),
    )?;
    Ok(format!("lambda_2 {l0} vs {l1}, {l0} >= {l1}; constant family af and W_f"))
}

fn reduction_invariance() -> Outcome {
    for (vars, gens) in [(&XYZ[..], &["y*z", "x*z", "x*y"][..]), (&XY[..], &["x^2", "x*y", "y^2"][..])] {
        let i = ideal(vars, gens);
        for seed in [0u64, 41] {
            let rep = reduction_invariance_check(&i, &whole(&i), &opts(3, seed)).map_err(|e| e.to_string())?;
            check(
                rep.equal,
                format!("{gens:?}: {:?} vs {:?}", rep.original.e, rep.reduced.e),
            )?;
        }
    }
    Ok("J(xyz) and (x2,xy,y2) at 2 seeds each".into())
}

const DETERMINISM_JOBS: [(&str, &str); 3] = [
    ("segre", "ring Q[x,y,z]\nlet I = <y*z, x*z, x*y>\n"),
    ("le", "ring Q[x,y,z]\nlet f = x*y*z\n"),
    ("family", "ring Q[x,y] params[t]\nlet f = x^3 + y^3 + t*x*y\nset samples t=0;t=1\n"),
];

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("segre-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_segre");
    let mut bytes = 0;
    for (k, (cmd, text)) in DETERMINISM_JOBS.iter().enumerate() {
        let path = dir.join(format!("job{k}.txt"));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let run = || {
            Process::new(bin)
                .args([*cmd, path.to_str().unwrap(), "--seed", "17", "--verbose-trace"])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        check(!a.stdout.is_empty(), format!("{cmd}: empty output, stderr {}", String::from_utf8_lossy(&a.stderr)))?;
        check(a.stdout == b.stdout && a.status == b.status, format!("{cmd}: outputs differ"))?;
        // Single-threaded trials must produce the same bytes.
        let seq = Process::new(bin)
            .args([*cmd, path.to_str().unwrap(), "--seed", "17", "--verbose-trace", "--sequential"])
            .output()
            .map_err(|e| e.to_string())?;
        check(seq.stdout == a.stdout, format!("{cmd}: sequential run differs"))?;
        let lib = cli::run(
            text,
            &Invocation {
                command: Some(cmd.parse::<Command>().map_err(|e| e.to_string())?),
                settings: cli::Settings {
                    seed: Some(17),
                    ..cli::Settings::default()
                },
                verbose_trace: true,
                json_indent: 2,
                ..Invocation::default()
            },
        )
        .map_err(|e| e.to_string())?;
        check(lib.json.as_bytes() == a.stdout.as_slice(), format!("{cmd}: library and binary differ"))?;
        bytes += a.stdout.len();
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("3 jobs x (2 runs + sequential + library), {bytes} bytes identical"))
}

fn engine_oracles() -> Outcome {
    let s = common::engine_oracle_summary();
    check(s.s_pairs_nonzero == 0, format!("{} of {} S-polynomials do not reduce to 0", s.s_pairs_nonzero, s.s_pairs_checked))?;
    check(s.membership_mismatches.is_empty(), format!("{:?}", s.membership_mismatches))?;
    Ok(format!(
        "{} ideals, {} S-pairs reduce to 0, {} membership verdicts match the degree-{} cofactor solve",
        s.ideals,
        s.s_pairs_checked,
        s.membership_checked,
        common::ORACLE_DEGREE
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Segre profile fixtures", segre_fixtures),
        ("expansion formulas", expansion_formulas),
        ("slicing formulas", slicing_formulas),
        ("top Segre number equals Samuel multiplicity", top_segre_is_samuel),
        ("Rees integral-closure test", rees_criterion),
        ("limiting tangent hyperplanes", limiting_hyperplanes),
        ("homogeneous Lê relation", homogeneous_relation),
        ("tangent-cone relations", tangent_cone_relations),
        ("family analyzer", family_analyzer),
        ("reduction invariance", reduction_invariance),
        ("byte-identical reports", determinism),
        ("engine oracles", engine_oracles),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [tolerance: exact] {detail} ({secs:.2}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [tolerance: exact] {detail} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
