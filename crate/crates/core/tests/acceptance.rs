//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines are always printed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use negtrans::formula::{collapse_triple_negation, is_nf, parse, Formula};
use negtrans::harness::{run_check, CheckName, CheckStatus, GenConfig, Generator};
use negtrans::kripke::{
    chain_forces_bruteforce, chain_threshold, forces_finite, forces_grafted, presets,
    OmegaChainModel, Threshold,
};
use negtrans::prove::{decide, is_provable, Logic};
use negtrans::translate::{translate, TranslationKind};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict, u64);

fn cfg(seed: u64, samples: usize) -> GenConfig {
    GenConfig {
        seed,
        samples,
        ..GenConfig::default()
    }
}

fn check(name: CheckName, cfg: &GenConfig, want: usize) -> Verdict {
    let r = run_check(name, cfg).map_err(|e| e.to_string())?;
    if r.status != CheckStatus::Pass {
        return Err(format!(
            "{name}: {:?} {}",
            r.status,
            r.counterexample.unwrap_or_default()
        ));
    }
    if r.samples < want {
        return Err(format!("{name}: only {} of {want} samples", r.samples));
    }
    Ok(format!("{name} {} samples", r.samples))
}

fn criterion_1() -> Verdict {
    check(CheckName::UsualEquivIl, &cfg(7, 100), 100)
}

fn criterion_2() -> Verdict {
    let mut quantified = cfg(2, 500);
    quantified.allow_quantifiers = true;
    let mut g = Generator::new(&quantified, 100).map_err(|e| e.to_string())?;
    let mut with_quantifiers = 0;
    for _ in 0..500 {
        let a = g.formula();
        with_quantifiers += a.has_quantifiers() as usize;
        let image = translate(&TranslationKind::GoedelGentzen, &a);
        if !is_nf(&image) {
            return Err(format!("G({a}) = {image} not in NF"));
        }
    }
    for _ in 0..200 {
        let a = g.nf_formula();
        let lhs = collapse_triple_negation(&translate(&TranslationKind::GoedelGentzen, &a));
        if lhs != collapse_triple_negation(&a) {
            return Err(format!("NF {a}: G A differs modulo triple negation"));
        }
    }
    Ok(format!(
        "500 formulas ({with_quantifiers} quantified) into NF, 200 NF fixed"
    ))
}

fn criterion_3() -> Verdict {
    let mut lines = vec![check(CheckName::Thm1SoundnessN1N2, &cfg(3, 50), 50)?];
    lines.push(check(
        CheckName::Thm1CharacterisationIff,
        &cfg(3, 100),
        100,
    )?);
    lines.push(check(CheckName::Thm1EquivalenceIff, &cfg(3, 100), 100)?);
    // the pinned negative witnesses, directly
    let q = Formula::atom("Q");
    for k in [
        TranslationKind::N1(q.clone()),
        TranslationKind::N2(q.clone()),
    ] {
        let image = translate(&k, &Formula::Bot);
        let cl = Formula::iff(image.clone(), Formula::Bot);
        let il = Formula::iff(
            image,
            translate(&TranslationKind::GoedelGentzen, &Formula::Bot),
        );
        if is_provable(Logic::Cpc, &cl).map_err(|e| e.to_string())? {
            return Err(format!("CPC proves {cl}"));
        }
        let d = decide(Logic::Ipc, &il).map_err(|e| e.to_string())?;
        let m = d.countermodel.ok_or_else(|| format!("IPC proves {il}"))?;
        if forces_finite(&m, m.root, &il) != Ok(false) {
            return Err(format!("countermodel for {il} does not refute it"));
        }
    }
    Ok(lines.join(", "))
}

fn criterion_4() -> Verdict {
    let f = parse("~(forall x. P(x)) & (forall x. ~~P(x))").unwrap();
    let with_f = |s: &str| parse(&s.replace('F', &format!("({f})"))).unwrap();
    let t = chain_threshold(&presets::fig3(), &f).map_err(|e| e.to_string())?;
    if t != Threshold::At(0) {
        return Err(format!("fig3 threshold {t}"));
    }
    let fig4 = presets::fig4();
    if forces_finite(&fig4, fig4.root, &Formula::not(f.clone())) != Ok(true) {
        return Err("fig4 does not force ~F".into());
    }
    let fig5 = presets::fig5();
    for (text, want) in [
        ("((Q -> F) -> F) -> ~~Q | F", false),
        ("(Q -> F) -> F", true),
        ("~~Q", false),
        ("F", false),
    ] {
        let got = forces_grafted(&fig5, &with_f(text)).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("fig5 forces {text}: {got}"));
        }
    }
    Ok("threshold 0, fig4 forces ~F, fig5 refutes (*) with sub-verdicts true/false/false".into())
}

fn criterion_5() -> Verdict {
    Ok(format!(
        "{}, {}",
        check(CheckName::Factorisation2, &cfg(5, 500), 500)?,
        check(CheckName::Factorisation1, &cfg(5, 100), 100)?
    ))
}

fn criterion_6() -> Verdict {
    Ok(format!(
        "{}, {}",
        check(CheckName::Thm2Instances, &cfg(6, 100), 100)?,
        check(CheckName::Idempotence, &cfg(6, 100), 100)?
    ))
}

fn criterion_7() -> Verdict {
    let gen_cfg = GenConfig {
        atom_count: 3,
        ..cfg(7, 300)
    };
    let mut g = Generator::new(&gen_cfg, 7).map_err(|e| e.to_string())?;
    let mut countermodels = 0;
    for _ in 0..300 {
        let a = g.formula();
        let verdicts: Vec<_> = Logic::ALL
            .iter()
            .map(|&l| decide(l, &a).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let (cpc, ipc, mpc) = (&verdicts[0], &verdicts[1], &verdicts[2]);
        if (mpc.is_provable() && !ipc.is_provable()) || (ipc.is_provable() && !cpc.is_provable()) {
            return Err(format!("hierarchy fails on {a}"));
        }
        if cpc.is_provable() != common::tautology(&a) {
            return Err(format!("CPC disagrees with truth tables on {a}"));
        }
        let glivenko =
            is_provable(Logic::Ipc, &Formula::not_not(a.clone())).map_err(|e| e.to_string())?;
        if glivenko != cpc.is_provable() {
            return Err(format!("Glivenko fails on {a}"));
        }
        for d in [ipc, mpc] {
            if let Some(m) = &d.countermodel {
                countermodels += 1;
                if !m.validate().is_empty() || forces_finite(m, m.root, &d.subject) != Ok(false) {
                    return Err(format!("bad {} countermodel for {a}", d.logic));
                }
            }
        }
        let atoms: Vec<String> = a.predicates().into_iter().collect();
        let small_refutation = common::small_models(&atoms)
            .into_iter()
            .any(|m| forces_finite(&m, 0, &a) == Ok(false));
        if small_refutation && ipc.is_provable() {
            return Err(format!("IPC proves {a} but a 3-node model refutes it"));
        }
    }
    Ok(format!(
        "300 formulas, {countermodels} countermodels validated"
    ))
}

fn criterion_8() -> Verdict {
    let gen_cfg = cfg(8, 200);
    let mut g = Generator::new(&gen_cfg, 8).map_err(|e| e.to_string())?;
    let mut nodes = 0;
    for _ in 0..200 {
        let a = g.formula();
        let mut m = OmegaChainModel::default();
        let mut stabilization = 0;
        for i in 0..4 {
            let t = match g.below(6) {
                0 => Threshold::Never,
                _ => Threshold::At(g.below(6) as u64),
            };
            if let Threshold::At(k) = t {
                stabilization = stabilization.max(k);
            }
            m.nullary.insert(format!("P{i}"), t);
        }
        let t = chain_threshold(&m, &a).map_err(|e| e.to_string())?;
        for k in 0..=stabilization + 3 {
            let brute = chain_forces_bruteforce(&m, &a, k).map_err(|e| e.to_string())?;
            if brute != t.forced_at(k) {
                return Err(format!(
                    "{a} at node {k}: threshold {t}, brute force {brute}"
                ));
            }
            nodes += 1;
        }
    }
    Ok(format!("200 formulas, {nodes} node comparisons"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("usual-translation equivalence", criterion_1, 60),
        ("G strengthenings", criterion_2, 5),
        ("first theorem at desk scale", criterion_3, 60),
        ("paper certificates", criterion_4, 1),
        ("factorisations", criterion_5, 60),
        ("second theorem and idempotence", criterion_6, 120),
        ("decider cross-validation", criterion_7, 120),
        ("chain-oracle agreement", criterion_8, 10),
    ];
    let mut failed = 0;
    for (i, (label, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let ok = verdict.is_ok() && in_time;
        failed += !ok as usize;
        let detail = match verdict {
            Ok(s) | Err(s) => s,
        };
        println!(
            "criterion {} [{}] {label}: {} in {:.2}s (limit {limit}s) - {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            if in_time { "on time" } else { "too slow" },
            elapsed.as_secs_f64(),
        );
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
