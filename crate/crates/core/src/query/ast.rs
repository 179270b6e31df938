use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Projection {
    All,
    Names(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    /// `=`, equality at level k.
    EqK,
    /// `>=`, ordering at level k.
    GeK,
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareOp::EqK => "=",
            CompareOp::GeK => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Term(String),
    Number(f64),
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Term(t) => write!(f, "{t:?}"),
            Operand::Number(x) => f.write_str(&crate::display::format_number(*x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttrPredicate {
    pub attribute: String,
    pub op: CompareOp,
    pub rhs: Operand,
    /// Character offset of the attribute name in the query text.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodPredicate {
    pub method: String,
    pub term: String,
    pub position: usize,
}

/// A where-clause tree. `And`/`Or` nodes always hold at least two children.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    And(Vec<Condition>),
    Or(Vec<Condition>),
    Attr(AttrPredicate),
    Method(MethodPredicate),
}

impl Condition {
    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Condition> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Condition>) {
        match self {
            Condition::And(cs) | Condition::Or(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
            leaf => out.push(leaf),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // "and" binds tighter, so only an "or" under an "and" needs parentheses.
        let join = |f: &mut fmt::Formatter<'_>, cs: &[Condition], sep: &str| {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                match c {
                    Condition::Or(_) if sep == "and" => write!(f, "({c})")?,
                    _ => write!(f, "{c}")?,
                }
            }
            Ok(())
        };
        match self {
            Condition::And(cs) => join(f, cs, "and"),
            Condition::Or(cs) => join(f, cs, "or"),
            Condition::Attr(p) => write!(f, "{} {} {}", p.attribute, p.op, p.rhs),
            Condition::Method(m) => write!(f, "{}() = {:?}", m.method, m.term),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryAst {
    pub projection: Projection,
    pub class: String,
    pub condition: Condition,
}
