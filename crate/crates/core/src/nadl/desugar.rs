use super::ast::Formula;

/// Rewrites every `c -> t, e` into `(c /\ t) \/ (~c /\ e)`, outermost first.
pub fn desugar_ite(f: &Formula) -> Formula {
    match f {
        Formula::Const(_) | Formula::Prop(_) | Formula::Rel(..) => f.clone(),
        Formula::Not(a) => !desugar_ite(a),
        Formula::Bin(c, a, b) => {
            Formula::Bin(*c, Box::new(desugar_ite(a)), Box::new(desugar_ite(b)))
        }
        Formula::Ite(c, t, e) => {
            let c = desugar_ite(c);
            Formula::or(
                Formula::and(c.clone(), desugar_ite(t)),
                Formula::and(!c, desugar_ite(e)),
            )
        }
    }
}

/// True if `f` contains no if-then-else node.
pub fn is_ite_free(f: &Formula) -> bool {
    match f {
        Formula::Const(_) | Formula::Prop(_) | Formula::Rel(..) => true,
        Formula::Not(a) => is_ite_free(a),
        Formula::Bin(_, a, b) => is_ite_free(a) && is_ite_free(b),
        Formula::Ite(..) => false,
    }
}
