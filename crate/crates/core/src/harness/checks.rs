use super::{CheckName, GenConfig, Generator, HarnessError};
use crate::formula::{collapse_triple_negation, is_nf, parse, Formula};
use crate::kripke::{chain_threshold, forces_finite, forces_grafted, presets, Threshold};
use crate::prove::{decide, is_provable, Logic};
use crate::translate::{translate, unfold_n2_clauses, TranslationKind};

pub(super) struct Outcome {
    pub samples: usize,
    pub failure: Option<String>,
    pub skipped: bool,
}

type Step = Result<(), String>;

/// `¬∀x P(x) ∧ ∀x ¬¬P(x)`, the parameter of the first-order certificates.
pub(crate) fn first_order_f() -> Formula {
    parse("~(forall x. P(x)) & (forall x. ~~P(x))").expect("fixed formula parses")
}

/// `Q ∧ ¬Q`: classically and intuitionistically refutable.
fn contradiction() -> Formula {
    parse("Q & ~Q").expect("fixed formula parses")
}

const TAUTOLOGIES: [&str; 3] = ["((P0 -> P1) -> P0) -> P0", "P0 | ~P0", "~~P0 -> P0"];

pub(super) fn is_randomized(name: CheckName) -> bool {
    !matches!(
        name,
        CheckName::PaperCertificates
            | CheckName::Prop3Instances
            | CheckName::NonStrengtheningWitnesses
    )
}

pub(super) fn run(name: CheckName, cfg: &GenConfig, stream: u64) -> Result<Outcome, HarnessError> {
    let quantified = matches!(name, CheckName::GIntoNf | CheckName::Factorisation2);
    let local = GenConfig {
        allow_quantifiers: quantified,
        ..cfg.clone()
    };
    let mut g = Generator::new(&local, stream)?;
    let n = cfg.samples;
    let mut samples = 0usize;
    let result = match name {
        CheckName::UsualEquivIl => usual_equiv_il(&mut g, n, &mut samples),
        CheckName::GIntoNf => g_into_nf(&mut g, n, &mut samples),
        CheckName::GIdentityNf => g_identity_nf(&mut g, n, &mut samples),
        CheckName::SoundnessGMl => soundness_g_ml(&mut g, n, &mut samples),
        CheckName::CharacterisationUsual => characterisation_usual(&mut g, n, &mut samples),
        CheckName::Thm1SoundnessN1N2 => thm1_soundness(&mut g, n, &mut samples),
        CheckName::Thm1CharacterisationIff => thm1_iff(&mut g, n, &mut samples, Logic::Cpc),
        CheckName::Thm1EquivalenceIff => thm1_iff(&mut g, n, &mut samples, Logic::Ipc),
        CheckName::PaperCertificates => paper_certificates(&mut samples),
        CheckName::Prop3Instances => prop3_instances(&mut samples),
        CheckName::Factorisation1 => factorisation_1(&mut g, n, &mut samples),
        CheckName::Factorisation2 => factorisation_2(&mut g, n, &mut samples),
        CheckName::Thm2Instances => thm2_instances(&mut g, n, &mut samples),
        CheckName::Idempotence => idempotence(&mut g, n, &mut samples),
        CheckName::NonStrengtheningWitnesses => non_strengthening(&mut samples),
    };
    Ok(Outcome {
        samples,
        failure: result.err(),
        skipped: false,
    })
}

fn provable(logic: Logic, f: &Formula) -> Result<bool, String> {
    is_provable(logic, f).map_err(|e| format!("{e} on {f}"))
}

fn require(logic: Logic, f: &Formula, context: impl FnOnce() -> String) -> Step {
    if provable(logic, f)? {
        Ok(())
    } else {
        Err(format!(
            "{}: {} ⊬ {f}",
            context(),
            logic.as_str().to_uppercase()
        ))
    }
}

fn iff(a: &Formula, b: &Formula) -> Formula {
    Formula::iff(a.clone(), b.clone())
}

fn g(a: &Formula) -> Formula {
    translate(&TranslationKind::GoedelGentzen, a)
}

/// A CPC-provable formula: the fixed list first, then rejection sampling.
fn tautology(gen: &mut Generator, i: usize) -> Result<Formula, String> {
    if i < TAUTOLOGIES.len() {
        return Ok(parse(TAUTOLOGIES[i]).expect("fixed formula parses"));
    }
    for _ in 0..2000 {
        let a = gen.formula();
        if provable(Logic::Cpc, &a)? {
            return Ok(a);
        }
    }
    Ok(parse(TAUTOLOGIES[i % TAUTOLOGIES.len()]).expect("fixed formula parses"))
}

fn usual_equiv_il(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    let kinds = TranslationKind::usual();
    for _ in 0..n {
        let a = gen.formula();
        let images: Vec<Formula> = kinds.iter().map(|k| translate(k, &a)).collect();
        if images[3] != Formula::not_not(a.clone()) {
            return Err(format!("A = {a}: Ku A is not ~~A"));
        }
        for i in 0..kinds.len() {
            for j in i + 1..kinds.len() {
                require(Logic::Ipc, &iff(&images[i], &images[j]), || {
                    format!("A = {a}, {} vs {}", kinds[i], kinds[j])
                })?;
            }
        }
        *samples += 1;
    }
    Ok(())
}

fn g_into_nf(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for _ in 0..n {
        let a = gen.formula();
        if !is_nf(&g(&a)) {
            return Err(format!("A = {a}: G A = {} is not in NF", g(&a)));
        }
        *samples += 1;
    }
    Ok(())
}

fn g_identity_nf(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for _ in 0..n {
        let a = gen.nf_formula();
        let lhs = collapse_triple_negation(&g(&a));
        let rhs = collapse_triple_negation(&a);
        if lhs != rhs {
            return Err(format!("A = {a}: collapsed G A = {lhs} differs from {rhs}"));
        }
        *samples += 1;
    }
    Ok(())
}

fn soundness_g_ml(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for i in 0..n {
        let a = tautology(gen, i)?;
        require(Logic::Mpc, &g(&a), || format!("A = {a}, G A"))?;

        let (a1, a2) = (gen.formula(), gen.formula());
        let premises = Formula::and(a1.clone(), a2.clone());
        let mut goal = None;
        for _ in 0..200 {
            let c = gen.formula();
            if provable(Logic::Cpc, &Formula::imp(premises.clone(), c.clone()))? {
                goal = Some(c);
                break;
            }
        }
        let c = goal.unwrap_or_else(|| Formula::or(a1.clone(), gen.formula()));
        let translated = Formula::imp(Formula::and(g(&a1), g(&a2)), g(&c));
        require(Logic::Mpc, &translated, || {
            format!("Γ = {{{a1}, {a2}}}, A = {c}, G Γ → G A")
        })?;
        *samples += 1;
    }
    Ok(())
}

fn characterisation_usual(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for _ in 0..n {
        let a = gen.formula();
        for k in TranslationKind::usual() {
            require(Logic::Cpc, &iff(&translate(&k, &a), &a), || {
                format!("A = {a}, {k} A ↔ A")
            })?;
        }
        *samples += 1;
    }
    Ok(())
}

fn thm1_soundness(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for i in 0..n {
        let a = tautology(gen, i)?;
        for _ in 0..5 {
            let f = gen.parameter();
            for k in [
                TranslationKind::N1(f.clone()),
                TranslationKind::N2(f.clone()),
            ] {
                require(Logic::Mpc, &translate(&k, &a), || {
                    format!("A = {a}, F = {f}, {k} A")
                })?;
            }
        }
        *samples += 1;
    }
    Ok(())
}

/// Characterisation (CPC, against `A`) or IL-equivalence (IPC, against
/// `G A`) for N1/N2: holds for a refutable parameter, fails at `A = ⊥` for
/// `F = Q`.
fn thm1_iff(gen: &mut Generator, n: usize, samples: &mut usize, logic: Logic) -> Step {
    let target = |a: &Formula| match logic {
        Logic::Cpc => a.clone(),
        _ => g(a),
    };
    let refutable = contradiction();
    let plain = Formula::atom("Q");
    require(logic, &Formula::not(refutable.clone()), || {
        "premise for F = Q & ~Q".into()
    })?;
    if provable(Logic::Cpc, &Formula::not(plain.clone()))? {
        return Err("premise: CPC proves ~Q".into());
    }

    for _ in 0..n {
        let a = gen.formula();
        for k in [
            TranslationKind::N1(refutable.clone()),
            TranslationKind::N2(refutable.clone()),
        ] {
            require(logic, &iff(&translate(&k, &a), &target(&a)), || {
                format!("A = {a}, F = {refutable}, {k} A")
            })?;
        }
        *samples += 1;
    }

    let witness = Formula::Bot;
    for k in [
        TranslationKind::N1(plain.clone()),
        TranslationKind::N2(plain.clone()),
    ] {
        let claim = iff(&translate(&k, &witness), &target(&witness));
        let d = decide(logic, &claim).map_err(|e| e.to_string())?;
        if d.is_provable() {
            return Err(format!(
                "A = ⊥, F = Q: {} unexpectedly proves {claim}",
                logic.as_str()
            ));
        }
        if let Some(m) = &d.countermodel {
            if forces_finite(m, m.root, &d.subject) != Ok(false) {
                return Err(format!(
                    "A = ⊥, F = Q: countermodel for {claim} does not refute it"
                ));
            }
        }
    }
    *samples += 1;
    Ok(())
}

fn paper_certificates(samples: &mut usize) -> Step {
    let f = first_order_f();
    let text = |s: &str| parse(&s.replace('F', &format!("({f})"))).expect("fixed formula parses");
    let threshold = chain_threshold(&presets::fig3(), &f).map_err(|e| e.to_string())?;
    if threshold != Threshold::At(0) {
        return Err(format!("fig3: threshold of F is {threshold}, expected 0"));
    }
    *samples += 1;
    let fig4 = presets::fig4();
    if !forces_finite(&fig4, fig4.root, &Formula::not(f.clone())).map_err(|e| e.to_string())? {
        return Err("fig4: root does not force ~F".into());
    }
    *samples += 1;
    let fig5 = presets::fig5();
    let expected = [
        ("((Q -> F) -> F) -> ~~Q | F", false),
        ("(Q -> F) -> F", true),
        ("~~Q", false),
        ("F", false),
    ];
    for (formula, verdict) in expected {
        let got = forces_grafted(&fig5, &text(formula)).map_err(|e| e.to_string())?;
        if got != verdict {
            return Err(format!(
                "fig5: root forcing of {formula} is {got}, expected {verdict}"
            ));
        }
        *samples += 1;
    }
    Ok(())
}

fn prop3_instances(samples: &mut usize) -> Step {
    let f = first_order_f();
    let chain = presets::fig3();
    let n1_bot = translate(&TranslationKind::N1(f.clone()), &Formula::Bot);
    if n1_bot != Formula::or(Formula::Bot, f.clone()) {
        return Err(format!("N1 ⊥ is {n1_bot}, expected bot | F"));
    }
    let n2_bot = translate(&TranslationKind::N2(f.clone()), &Formula::Bot);
    if n2_bot != f {
        return Err(format!("N2 ⊥ is {n2_bot}, expected F"));
    }
    for image in [n1_bot, n2_bot] {
        let forced = chain_threshold(&chain, &image).map_err(|e| e.to_string())?;
        let negated =
            chain_threshold(&chain, &Formula::not(image.clone())).map_err(|e| e.to_string())?;
        if forced != Threshold::At(0) || negated != Threshold::Never {
            return Err(format!(
                "fig3: {image} has threshold {forced} and its negation {negated}; expected 0 and inf"
            ));
        }
        *samples += 1;
    }
    Ok(())
}

fn factorisation_1(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for _ in 0..n {
        let a = gen.formula();
        let f = gen.parameter();
        let n2 = translate(&TranslationKind::N2(f.clone()), &a);
        let fd = translate(&TranslationKind::FD(f.clone()), &g(&a));
        require(Logic::Mpc, &iff(&n2, &fd), || {
            format!("A = {a}, F = {f}, N2 A ↔ FD(G A)")
        })?;
        *samples += 1;
    }
    Ok(())
}

fn factorisation_2(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for _ in 0..n {
        let a = gen.formula();
        let f = gen.parameter();
        let n2 = translate(&TranslationKind::N2(f.clone()), &a);
        let rfd = translate(&TranslationKind::RFD(f.clone()), &g(&a));
        if n2 != rfd {
            return Err(format!(
                "A = {a}, F = {f}: N2 A = {n2} but rFD(G A) = {rfd}"
            ));
        }
        let unfolded = unfold_n2_clauses(&a, &f);
        if n2 != unfolded {
            return Err(format!(
                "A = {a}, F = {f}: N2 A = {n2} but the clause table gives {unfolded}"
            ));
        }
        *samples += 1;
    }
    Ok(())
}

fn thm2_instances(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    for _ in 0..n {
        let a = gen.nf_formula();
        for k in TranslationKind::usual() {
            require(Logic::Ipc, &iff(&translate(&k, &a), &a), || {
                format!("NF A = {a}, {k} A ↔ A")
            })?;
        }
        let b = gen.formula();
        if !is_nf(&g(&b)) {
            return Err(format!("A = {b}: G A is not in NF"));
        }
        *samples += 1;
    }
    Ok(())
}

fn idempotence(gen: &mut Generator, n: usize, samples: &mut usize) -> Step {
    let mut kinds = TranslationKind::usual().to_vec();
    kinds.push(TranslationKind::N1(contradiction()));
    kinds.push(TranslationKind::N2(contradiction()));
    for _ in 0..n {
        let a = gen.formula();
        for k in &kinds {
            let once = translate(k, &a);
            let twice = translate(k, &once);
            require(Logic::Ipc, &iff(&twice, &once), || {
                format!("A = {a}, {k}({k} A) ↔ {k} A")
            })?;
        }
        *samples += 1;
    }
    Ok(())
}

fn non_strengthening(samples: &mut usize) -> Step {
    let p_or_q = parse("P | Q").expect("fixed formula parses");
    let p_and_q = parse("P & Q").expect("fixed formula parses");
    let outside_nf = [
        (TranslationKind::Kuroda, &p_or_q),
        (TranslationKind::Kolmogorov, &p_or_q),
        (TranslationKind::Krivine, &p_and_q),
    ];
    for (k, a) in outside_nf {
        let image = translate(&k, a);
        if is_nf(&image) {
            return Err(format!("{k}({a}) = {image} is in NF"));
        }
        *samples += 1;
    }
    // identity on NF fails syntactically even modulo triple negations
    let nf = parse("bot -> bot").expect("fixed formula parses");
    for k in [
        TranslationKind::Kolmogorov,
        TranslationKind::Kuroda,
        TranslationKind::Krivine,
    ] {
        let image = collapse_triple_negation(&translate(&k, &nf));
        if image == nf {
            return Err(format!("{k} acts as the identity on {nf}"));
        }
        *samples += 1;
    }
    Ok(())
}
