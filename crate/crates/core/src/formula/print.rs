use std::collections::BTreeSet;

use super::{Formula, Term, LESS};

const PREC_IFF: u8 = 1;
const PREC_IMP: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;

struct Printer {
    /// Names that a binder must never take: free variables and constants of
    /// the whole formula.
    reserved: BTreeSet<String>,
    /// (source name, printed name) for every enclosing binder.
    env: Vec<(String, String)>,
}

/// Renders a formula in the surface syntax. Bound variables are renamed
/// (by appending `'`) whenever they would shadow an enclosing binder or
/// collide with a free variable or constant, so the output always re-parses
/// to an alpha-equivalent formula.
pub fn print_formula(f: &Formula) -> String {
    let mut reserved: BTreeSet<String> = f.free_vars().into_iter().collect();
    reserved.extend(f.constants());
    let mut p = Printer { reserved, env: Vec::new() };
    let mut out = String::new();
    p.formula(f, 0, true, &mut out);
    out
}

impl Printer {
    fn var_name<'a>(&'a self, v: &'a str) -> &'a str {
        self.env
            .iter()
            .rev()
            .find(|(src, _)| src == v)
            .map(|(_, printed)| printed.as_str())
            .unwrap_or(v)
    }

    fn bind(&mut self, v: &str) -> String {
        let taken = |name: &str, p: &Printer| {
            p.reserved.contains(name) || p.env.iter().any(|(_, printed)| printed == name)
        };
        let mut name = v.to_string();
        while taken(&name, self) {
            name.push('\'');
        }
        self.env.push((v.to_string(), name.clone()));
        name
    }

    fn term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Var(v) => out.push_str(self.var_name(v)),
            Term::Const(c) => out.push_str(c),
            Term::App(name, args) => {
                out.push_str(name);
                self.args(args, out);
            }
        }
    }

    fn args(&self, args: &[Term], out: &mut String) {
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.term(a, out);
        }
        out.push(')');
    }

    fn formula(&mut self, f: &Formula, min_prec: u8, rightmost: bool, out: &mut String) {
        match f {
            Formula::Atom(rel, args) if rel == LESS && args.len() == 2 => {
                self.term(&args[0], out);
                out.push_str(" < ");
                self.term(&args[1], out);
            }
            Formula::Atom(rel, args) => {
                out.push_str(rel);
                self.args(args, out);
            }
            Formula::Weak(tpl, args) => {
                out.push_str("R[");
                out.push_str(tpl.key());
                out.push(']');
                if !args.is_empty() {
                    self.args(args, out);
                }
            }
            Formula::Eq(a, b) => {
                self.term(a, out);
                out.push_str(" = ");
                self.term(b, out);
            }
            Formula::Not(a) => {
                out.push_str("~(");
                self.formula(a, 0, true, out);
                out.push(')');
            }
            Formula::And(a, b) => self.binary(a, b, " & ", PREC_AND, true, min_prec, rightmost, out),
            Formula::Or(a, b) => self.binary(a, b, " | ", PREC_OR, true, min_prec, rightmost, out),
            Formula::Implies(a, b) => {
                self.binary(a, b, " -> ", PREC_IMP, false, min_prec, rightmost, out)
            }
            Formula::Iff(a, b) => {
                self.binary(a, b, " <-> ", PREC_IFF, true, min_prec, rightmost, out)
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let kw = if matches!(f, Formula::Exists(..)) { "exists " } else { "forall " };
                self.wrap(!rightmost, out, |p, out| {
                    out.push_str(kw);
                    let name = p.bind(v);
                    out.push_str(&name);
                    out.push_str(". ");
                    p.formula(body, 0, true, out);
                    p.env.pop();
                });
            }
            Formula::Qcf(x, y, body) => {
                self.wrap(!rightmost, out, |p, out| {
                    out.push_str("Qcf ");
                    let xn = p.bind(x);
                    let yn = p.bind(y);
                    out.push_str(&xn);
                    out.push(' ');
                    out.push_str(&yn);
                    out.push_str(". ");
                    p.formula(body, 0, true, out);
                    p.env.pop();
                    p.env.pop();
                });
            }
        }
    }

    fn wrap(&mut self, parens: bool, out: &mut String, inner: impl FnOnce(&mut Printer, &mut String)) {
        if parens {
            out.push('(');
        }
        inner(self, out);
        if parens {
            out.push(')');
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn binary(
        &mut self,
        a: &Formula,
        b: &Formula,
        op: &str,
        prec: u8,
        left_assoc: bool,
        min_prec: u8,
        rightmost: bool,
        out: &mut String,
    ) {
        let parens = prec < min_prec;
        let rightmost = parens || rightmost;
        let (lp, rp) = if left_assoc { (prec, prec + 1) } else { (prec + 1, prec) };
        self.wrap(parens, out, |p, out| {
            p.formula(a, lp, false, out);
            out.push_str(op);
            p.formula(b, rp, rightmost, out);
        });
    }
}
