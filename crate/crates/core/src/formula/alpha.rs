use super::{Formula, Term};

/// Binding depth of `v` in a scope stack, counted from the innermost binder.
fn index_of(scope: &[&str], v: &str) -> Option<usize> {
    scope.iter().rev().position(|b| *b == v)
}

fn term_eq(a: &Term, b: &Term, sa: &[&str], sb: &[&str]) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (index_of(sa, x), index_of(sb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, sa, sb))
        }
        _ => false,
    }
}

fn terms_eq(xs: &[Term], ys: &[Term], sa: &[&str], sb: &[&str]) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, sa, sb))
}

fn go<'a>(a: &'a Formula, b: &'a Formula, sa: &mut Vec<&'a str>, sb: &mut Vec<&'a str>) -> bool {
    use Formula::*;
    match (a, b) {
        (Atom(r, xs), Atom(s, ys)) => r == s && terms_eq(xs, ys, sa, sb),
        (Weak(t, xs), Weak(u, ys)) => t == u && terms_eq(xs, ys, sa, sb),
        (Eq(a1, a2), Eq(b1, b2)) => term_eq(a1, b1, sa, sb) && term_eq(a2, b2, sa, sb),
        (Not(x), Not(y)) => go(x, y, sa, sb),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Implies(a1, a2), Implies(b1, b2))
        | (Iff(a1, a2), Iff(b1, b2)) => go(a1, b1, sa, sb) && go(a2, b2, sa, sb),
        (Exists(u, x), Exists(v, y)) | (Forall(u, x), Forall(v, y)) => {
            sa.push(u);
            sb.push(v);
            let r = go(x, y, sa, sb);
            sa.pop();
            sb.pop();
            r
        }
        (Qcf(x1, y1, p), Qcf(x2, y2, q)) => {
            sa.extend([x1.as_str(), y1.as_str()]);
            sb.extend([x2.as_str(), y2.as_str()]);
            let r = go(p, q, sa, sb);
            sa.truncate(sa.len() - 2);
            sb.truncate(sb.len() - 2);
            r
        }
        _ => false,
    }
}

/// Structural equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    go(a, b, &mut Vec::new(), &mut Vec::new())
}
