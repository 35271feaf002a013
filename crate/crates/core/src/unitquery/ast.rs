use std::fmt;

/// Field tag introducing a scoped sub-query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// Address (affiliation) lines.
    Ad,
    /// Publication year.
    Py,
}

impl Field {
    pub fn tag(self) -> &'static str {
        match self {
            Field::Ad => "ad",
            Field::Py => "py",
        }
    }
}

/// Parsed address query.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Query {
    Scope { field: Field, expr: Box<Query> },
    /// Consecutive lowercase tokens.
    Phrase(Vec<String>),
    /// Both operands satisfied by one and the same address line.
    Same(Box<Query>, Box<Query>),
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
    /// Set difference: left and not right.
    Not(Box<Query>, Box<Query>),
    YearEquals(i32),
}

impl Query {
    pub fn scope(field: Field, expr: Query) -> Self {
        Query::Scope { field, expr: Box::new(expr) }
    }

    pub fn phrase<S: AsRef<str>>(tokens: &[S]) -> Self {
        Query::Phrase(tokens.iter().map(|t| t.as_ref().to_string()).collect())
    }

    pub fn same(l: Query, r: Query) -> Self {
        Query::Same(Box::new(l), Box::new(r))
    }

    pub fn and(l: Query, r: Query) -> Self {
        Query::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Query, r: Query) -> Self {
        Query::Or(Box::new(l), Box::new(r))
    }

    pub fn not(l: Query, r: Query) -> Self {
        Query::Not(Box::new(l), Box::new(r))
    }
}

/// Fully parenthesized rendering that reparses to the same tree.
impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, None)
    }
}

impl Query {
    fn render(&self, f: &mut fmt::Formatter<'_>, scope: Option<Field>) -> fmt::Result {
        let pair = |f: &mut fmt::Formatter<'_>, l: &Query, op: &str, r: &Query| {
            f.write_str("(")?;
            l.render(f, scope)?;
            write!(f, " {op} ")?;
            r.render(f, scope)?;
            f.write_str(")")
        };
        match self {
            Query::Scope { field, expr } => {
                write!(f, "{}=(", field.tag())?;
                expr.render(f, Some(*field))?;
                f.write_str(")")
            }
            Query::Phrase(tokens) => f.write_str(&tokens.join(" ")),
            Query::Same(l, r) => pair(f, l, "same", r),
            Query::And(l, r) => pair(f, l, "and", r),
            Query::Or(l, r) => pair(f, l, "or", r),
            Query::Not(l, r) => pair(f, l, "not", r),
            // inside py=( ... ) years stand alone
            Query::YearEquals(y) if scope == Some(Field::Py) => write!(f, "{y}"),
            Query::YearEquals(y) => write!(f, "py={y}"),
        }
    }
}
