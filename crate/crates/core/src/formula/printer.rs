use super::{Formula, Term, BOT_TOKEN};

// Binding strength, loosest first.
const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

/// Canonical text form. `A → ⊥` prints as `~A` and `(A → B) ∧ (B → A)` as
/// `A <-> B`; parentheses are emitted only where the grammar needs them.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, QUANT, &mut out);
    out
}

fn write(f: &Formula, ctx: u8, out: &mut String) {
    let prec = precedence(f);
    let paren = prec < ctx;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Bot => out.push_str(BOT_TOKEN),
        Formula::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    match t {
                        Term::Var(v) => out.push_str(v),
                        Term::Elem(d) => out.push_str(&d.to_string()),
                    }
                }
                out.push(')');
            }
        }
        Formula::And(l, r) => {
            if let Some((a, b)) = f.as_iff() {
                binary(a, " <-> ", b, IMP + 1, IMP, out);
            } else {
                binary(l, " & ", r, AND, AND + 1, out);
            }
        }
        Formula::Or(l, r) => binary(l, " | ", r, OR, OR + 1, out),
        Formula::Imp(l, r) => {
            if let Some(a) = f.as_negation() {
                out.push('~');
                write(a, NOT, out);
            } else {
                binary(l, " -> ", r, IMP + 1, IMP, out);
            }
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(x);
            out.push_str(". ");
            write(a, QUANT, out);
        }
    }
    if paren {
        out.push(')');
    }
}

fn binary(l: &Formula, op: &str, r: &Formula, lctx: u8, rctx: u8, out: &mut String) {
    write(l, lctx, out);
    out.push_str(op);
    write(r, rctx, out);
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Bot | Formula::Atom(..) => ATOM,
        Formula::And(..) if f.as_iff().is_some() => IMP,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Imp(..) if f.as_negation().is_some() => NOT,
        Formula::Imp(..) => IMP,
        Formula::Forall(..) | Formula::Exists(..) => QUANT,
    }
}
