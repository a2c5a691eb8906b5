//! Relations between two symbolic orders, with exact shortcuts where the
//! construction permits and bounded three-valued search elsewhere.
//!
//! Exact descriptions used throughout:
//! * a row `G(x, .)` described as the upset `{y | y >= t}`, or empty;
//! * a column `G(., y)` described as the downset `{x | x < e}`, or all of X.

use std::fmt;
use std::ops::Not;
use std::sync::Arc;

use super::expr::{Cardinal, CofinalityResult, NormalOrder, OrderElement, OrderError};

/// Kleene truth values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn is_known(self) -> bool {
        self != Tri::Unknown
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Unknown => None,
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

impl Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::True => "TRUE",
            Tri::False => "FALSE",
            Tri::Unknown => "UNKNOWN",
        })
    }
}

/// `exists` over a searched set; `complete` says the set was exhausted.
pub fn exists_tri(items: impl IntoIterator<Item = Tri>, complete: bool) -> Tri {
    let mut unknown = false;
    for t in items {
        match t {
            Tri::True => return Tri::True,
            Tri::Unknown => unknown = true,
            Tri::False => {}
        }
    }
    if complete && !unknown {
        Tri::False
    } else {
        Tri::Unknown
    }
}

/// `forall` over a searched set; `complete` says the set was exhausted.
pub fn forall_tri(items: impl IntoIterator<Item = Tri>, complete: bool) -> Tri {
    exists_tri(items.into_iter().map(Tri::not), complete).not()
}

/// Monotonicity flags; when set they are honored by membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Monotonicity {
    /// `G(x, y)` and `x' <= x` imply `G(x', y)`.
    pub antitone_x: bool,
    /// `G(x, y)` and `y <= y'` imply `G(x, y')`.
    pub monotone_y: bool,
}

type Predicate = Arc<dyn Fn(&OrderElement, &OrderElement) -> bool + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Connection,
    Sparse,
    SelfLeq,
    Full,
    Empty,
    InverseNeg(Arc<LazyRelation>),
    Compose(Arc<LazyRelation>, Arc<LazyRelation>),
    AntitoneClosure(Arc<LazyRelation>),
    NormalizeDirect(Arc<LazyRelation>),
    MonotoneLower(Arc<LazyRelation>),
    Custom(String, Predicate),
}

/// A membership-testable relation `G` between orders X and Y.
#[derive(Clone)]
pub struct LazyRelation {
    x: NormalOrder,
    y: NormalOrder,
    kind: Kind,
    flags: Monotonicity,
    /// Prefix length for the searches of bounded combinators.
    bound: usize,
}

impl fmt::Debug for LazyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyRelation({} on {} x {})", self.describe(), self.x, self.y)
    }
}

fn require_omega(o: &NormalOrder) -> Result<(), OrderError> {
    o.check_representable()?;
    match o.cofinality() {
        CofinalityResult::Cof(Cardinal::Omega) => Ok(()),
        c => Err(OrderError::NotOmega(c)),
    }
}

fn last_block(o: &NormalOrder) -> usize {
    o.blocks().len() - 1
}

impl LazyRelation {
    fn base(x: &NormalOrder, y: &NormalOrder, kind: Kind, flags: Monotonicity) -> LazyRelation {
        LazyRelation { x: x.clone(), y: y.clone(), kind, flags, bound: 0 }
    }

    fn wrap(x: NormalOrder, y: NormalOrder, kind: Kind, flags: Monotonicity, bound: usize) -> LazyRelation {
        LazyRelation { x, y, kind, flags, bound }
    }

    /// `G = {(x, y) | exists n (x <= x_n & y_n <= y)}` from the fundamental
    /// sequences; since both are increasing this is `y_{n0(x)} <= y` with
    /// `n0(x)` the least `n` such that `x <= x_n`.
    pub fn connection(x: &NormalOrder, y: &NormalOrder) -> Result<LazyRelation, OrderError> {
        require_omega(x)?;
        require_omega(y)?;
        Ok(Self::base(x, y, Kind::Connection, Monotonicity { antitone_x: true, monotone_y: true }))
    }

    /// `G = {(x_n, y) | y_n <= y}`.
    pub fn sparse(x: &NormalOrder, y: &NormalOrder) -> Result<LazyRelation, OrderError> {
        require_omega(x)?;
        require_omega(y)?;
        let antitone_x = x.blocks().len() == 1;
        Ok(Self::base(x, y, Kind::Sparse, Monotonicity { antitone_x, monotone_y: true }))
    }

    /// `x <= y` on X itself.
    pub fn self_connection(x: &NormalOrder) -> Result<LazyRelation, OrderError> {
        x.check_representable()?;
        match x.cofinality() {
            CofinalityResult::Cof(_) => {}
            c => return Err(OrderError::NoCofinality(c)),
        }
        Ok(Self::base(x, x, Kind::SelfLeq, Monotonicity { antitone_x: true, monotone_y: true }))
    }

    pub fn full(x: &NormalOrder, y: &NormalOrder) -> Result<LazyRelation, OrderError> {
        x.check_representable()?;
        y.check_representable()?;
        Ok(Self::base(x, y, Kind::Full, Monotonicity { antitone_x: true, monotone_y: true }))
    }

    pub fn empty(x: &NormalOrder, y: &NormalOrder) -> Result<LazyRelation, OrderError> {
        x.check_representable()?;
        y.check_representable()?;
        Ok(Self::base(x, y, Kind::Empty, Monotonicity { antitone_x: true, monotone_y: true }))
    }

    /// An arbitrary predicate. The flags are trusted; callers can audit them
    /// with [`LazyRelation::audit_flags`].
    pub fn custom(
        name: impl Into<String>,
        x: &NormalOrder,
        y: &NormalOrder,
        flags: Monotonicity,
        f: impl Fn(&OrderElement, &OrderElement) -> bool + Send + Sync + 'static,
    ) -> Result<LazyRelation, OrderError> {
        x.check_representable()?;
        y.check_representable()?;
        Ok(Self::base(x, y, Kind::Custom(name.into(), Arc::new(f)), flags))
    }

    /// `{(y, x) | not G(x, y)}`, a relation between Y and X.
    pub fn inverse_neg(&self) -> LazyRelation {
        let flags = Monotonicity { antitone_x: self.flags.monotone_y, monotone_y: self.flags.antitone_x };
        Self::wrap(self.y.clone(), self.x.clone(), Kind::InverseNeg(Arc::new(self.clone())), flags, self.bound)
    }

    /// `K = {(x, z) | exists y' (forall y (y' <= y -> G(x, y)) & H(y', z))}`.
    pub fn compose(&self, h: &LazyRelation, bound: usize) -> Result<LazyRelation, OrderError> {
        if self.y != h.x {
            return Err(OrderError::OrderMismatch);
        }
        let flags = Monotonicity { antitone_x: self.flags.antitone_x, monotone_y: h.flags.monotone_y };
        Ok(Self::wrap(
            self.x.clone(),
            h.y.clone(),
            Kind::Compose(Arc::new(self.clone()), Arc::new(h.clone())),
            flags,
            bound,
        ))
    }

    /// `{(x, y) | exists x' (x <= x' & G(x', y))}`.
    pub fn antitone_closure(&self, bound: usize) -> LazyRelation {
        let flags = Monotonicity { antitone_x: true, monotone_y: self.flags.monotone_y };
        Self::wrap(self.x.clone(), self.y.clone(), Kind::AntitoneClosure(Arc::new(self.clone())), flags, bound)
    }

    /// `{(x, y) | exists x' (x <= x' & forall y' (y <= y' -> G(x', y')))}`.
    pub fn normalize_monotone(&self, bound: usize) -> LazyRelation {
        let flags = Monotonicity { antitone_x: true, monotone_y: true };
        Self::wrap(self.x.clone(), self.y.clone(), Kind::NormalizeDirect(Arc::new(self.clone())), flags, bound)
    }

    /// The same relation as [`normalize_monotone`](Self::normalize_monotone)
    /// built from the combinators: `(not ((not G^-1)^anti)^-1)^anti`.
    pub fn normalize_monotone_factored(&self, bound: usize) -> LazyRelation {
        self.inverse_neg().antitone_closure(bound).inverse_neg().antitone_closure(bound)
    }

    /// `{(x, y) | exists y' (y' <= y & G(x, y'))}`.
    pub fn monotone_lower(&self, bound: usize) -> LazyRelation {
        let flags = Monotonicity { antitone_x: self.flags.antitone_x, monotone_y: true };
        Self::wrap(self.x.clone(), self.y.clone(), Kind::MonotoneLower(Arc::new(self.clone())), flags, bound)
    }

    pub fn x_order(&self) -> &NormalOrder {
        &self.x
    }

    pub fn y_order(&self) -> &NormalOrder {
        &self.y
    }

    pub fn flags(&self) -> Monotonicity {
        self.flags
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Connection => "connection".into(),
            Kind::Sparse => "sparse".into(),
            Kind::SelfLeq => "self".into(),
            Kind::Full => "full".into(),
            Kind::Empty => "empty".into(),
            Kind::InverseNeg(g) => format!("inverse-neg({})", g.describe()),
            Kind::Compose(g, h) => format!("compose({}, {})", g.describe(), h.describe()),
            Kind::AntitoneClosure(g) => format!("anti({})", g.describe()),
            Kind::NormalizeDirect(g) => format!("normalize({})", g.describe()),
            Kind::MonotoneLower(g) => format!("lower({})", g.describe()),
            Kind::Custom(name, _) => name.clone(),
        }
    }

    /// Combinators that are the identity on their argument.
    fn passthrough(&self) -> Option<&LazyRelation> {
        match &self.kind {
            Kind::AntitoneClosure(g) if g.flags.antitone_x => Some(g),
            Kind::MonotoneLower(g) if g.flags.monotone_y => Some(g),
            _ => None,
        }
    }

    /// Exact row: `Some(Some(t))` when `G(x, .)` is `{y | y >= t}`,
    /// `Some(None)` when it is empty, `None` when not known.
    pub fn row(&self, x: &OrderElement) -> Option<Option<OrderElement>> {
        if let Some(g) = self.passthrough() {
            return g.row(x);
        }
        match &self.kind {
            Kind::Connection => {
                let n = self.x.fundamental_index(x).ok()?;
                Some(Some(self.y.fundamental(n).ok()?))
            }
            Kind::Sparse => {
                if x.block == last_block(&self.x) {
                    Some(Some(self.y.fundamental(x.index).ok()?))
                } else {
                    Some(None)
                }
            }
            Kind::SelfLeq => Some(Some(*x)),
            Kind::Full => Some(self.y.first()),
            Kind::Empty => Some(None),
            Kind::InverseNeg(g) => g.col(x),
            Kind::Compose(g, h) => match g.row(x)? {
                None => Some(None),
                Some(t) => h.row_inf(&t),
            },
            Kind::AntitoneClosure(g) | Kind::NormalizeDirect(g) => g.row_inf(x),
            Kind::MonotoneLower(_) | Kind::Custom(..) => None,
        }
    }

    /// Exact column: `Some(Some(e))` when `G(., y)` is `{x | x < e}`,
    /// `Some(None)` when it is all of X, `None` when not known.
    pub fn col(&self, y: &OrderElement) -> Option<Option<OrderElement>> {
        if let Some(g) = self.passthrough() {
            return g.col(y);
        }
        match &self.kind {
            Kind::Connection => Some(self.connection_escape(y)),
            Kind::Sparse if self.x.blocks().len() == 1 => Some(self.connection_escape(y)),
            Kind::SelfLeq => Some(self.x.succ(y)),
            Kind::Full => Some(None),
            Kind::Empty => Some(self.x.first()),
            Kind::InverseNeg(g) => g.row(y),
            _ => None,
        }
    }

    /// Least `x` with `n0(x) > m` where `y` sits at or below `y_m`.
    fn connection_escape(&self, y: &OrderElement) -> Option<OrderElement> {
        let lx = last_block(&self.x);
        if y.block < last_block(&self.y) {
            self.x.first()
        } else {
            Some(OrderElement::new(lx, y.index + 1))
        }
    }

    /// Least threshold over the rows at and above `x`: `G(x', y)` for some
    /// `x' >= x` iff `y >= row_inf(x)`. Only meaningful for upset rows.
    pub fn row_inf(&self, x: &OrderElement) -> Option<Option<OrderElement>> {
        if let Some(g) = self.passthrough() {
            return g.row_inf(x);
        }
        match &self.kind {
            Kind::Sparse => {
                let n = self.x.fundamental_index(x).ok()?;
                Some(Some(self.y.fundamental(n).ok()?))
            }
            _ if self.flags.antitone_x => self.row(x),
            _ => None,
        }
    }

    /// Whether `{x | for all sufficiently large y, G(x, y)}` is cofinal in X.
    pub fn rows_cofinal(&self) -> Option<bool> {
        if let Some(g) = self.passthrough() {
            return g.rows_cofinal();
        }
        match &self.kind {
            Kind::Connection | Kind::Sparse | Kind::SelfLeq => Some(true),
            Kind::Full => Some(!self.y.is_empty()),
            Kind::Empty => Some(false),
            Kind::InverseNeg(g) => g.cols_cofinal(),
            Kind::AntitoneClosure(g) | Kind::NormalizeDirect(g) | Kind::MonotoneLower(g) => {
                g.rows_cofinal().filter(|c| *c)
            }
            Kind::Compose(..) | Kind::Custom(..) => None,
        }
    }

    /// Whether `{y | for all sufficiently large x, not G(x, y)}` is cofinal
    /// in Y.
    pub fn cols_cofinal(&self) -> Option<bool> {
        if let Some(g) = self.passthrough() {
            return g.cols_cofinal();
        }
        match &self.kind {
            Kind::Connection | Kind::Sparse | Kind::Empty => Some(true),
            Kind::SelfLeq => Some(self.x.last().is_none()),
            Kind::Full => Some(self.x.is_empty()),
            Kind::InverseNeg(g) => g.rows_cofinal(),
            Kind::AntitoneClosure(g) => g.cols_cofinal(),
            Kind::MonotoneLower(g) => g.cols_cofinal().filter(|c| !*c),
            Kind::NormalizeDirect(_) | Kind::Compose(..) | Kind::Custom(..) => None,
        }
    }

    /// Whether condition (4) holds: for every `y'`, for all sufficiently
    /// large `x`, `not G(x, y)` for every `y <= y'`.
    pub fn rows_escape(&self) -> Option<bool> {
        if let Some(g) = self.passthrough() {
            return g.rows_escape();
        }
        match &self.kind {
            Kind::Connection | Kind::Sparse | Kind::Empty => Some(true),
            Kind::SelfLeq => Some(self.x.last().is_none()),
            Kind::Full => Some(self.x.is_empty() || self.y.is_empty()),
            _ => None,
        }
    }

    /// Membership without range checks.
    pub fn contains(&self, x: &OrderElement, y: &OrderElement) -> Tri {
        if let Some(r) = self.row(x) {
            return Tri::from_bool(r.is_some_and(|t| *y >= t));
        }
        if let Some(c) = self.col(y) {
            return Tri::from_bool(c.is_none_or(|e| *x < e));
        }
        match &self.kind {
            Kind::InverseNeg(g) => g.contains(y, x).not(),
            Kind::Custom(_, f) => Tri::from_bool(f(x, y)),
            Kind::AntitoneClosure(g) => match self.x.upset_within(x, self.bound) {
                Ok((up, complete)) => exists_tri(up.iter().map(|x2| g.contains(x2, y)), complete),
                Err(_) => Tri::Unknown,
            },
            Kind::MonotoneLower(g) => match self.y.downset_within(y, self.bound) {
                Ok((down, complete)) => exists_tri(down.iter().map(|y2| g.contains(x, y2)), complete),
                Err(_) => Tri::Unknown,
            },
            Kind::NormalizeDirect(g) => {
                let Ok((up, up_complete)) = self.x.upset_within(x, self.bound) else {
                    return Tri::Unknown;
                };
                let Ok((yup, y_complete)) = self.y.upset_within(y, self.bound) else {
                    return Tri::Unknown;
                };
                exists_tri(
                    up.iter().map(|x2| forall_tri(yup.iter().map(|y2| g.contains(x2, y2)), y_complete)),
                    up_complete,
                )
            }
            Kind::Compose(g, h) => {
                let z = y;
                match g.row(x) {
                    Some(None) => Tri::False,
                    Some(Some(t)) => match g.y.upset_within(&t, self.bound) {
                        Ok((cands, complete)) => exists_tri(cands.iter().map(|y2| h.contains(y2, z)), complete),
                        Err(_) => Tri::Unknown,
                    },
                    None => {
                        let Ok(ys) = g.y.prefix(self.bound) else {
                            return Tri::Unknown;
                        };
                        let complete = g.y.len().is_some_and(|n| n <= ys.len());
                        exists_tri(
                            ys.iter().map(|y1| {
                                let (above, c) = g.y.upset_within(y1, self.bound).unwrap_or_default();
                                forall_tri(above.iter().map(|y2| g.contains(x, y2)), c).and(h.contains(y1, z))
                            }),
                            complete,
                        )
                    }
                }
            }
            Kind::Connection | Kind::Sparse | Kind::SelfLeq | Kind::Full | Kind::Empty => {
                unreachable!("base relations have exact rows")
            }
        }
    }

    /// Membership with range checks.
    pub fn check(&self, x: &OrderElement, y: &OrderElement) -> Result<Tri, OrderError> {
        self.x.check_element(x)?;
        self.y.check_element(y)?;
        Ok(self.contains(x, y))
    }

    /// Looks for a violation of the monotonicity flags among the pairs
    /// drawn from the first `bound` elements of each order. Returns the
    /// offending quadruple `(x, x', y, y')`.
    pub fn audit_flags(&self, bound: usize) -> Result<Option<[OrderElement; 4]>, OrderError> {
        let xs = self.x.prefix(bound)?;
        let ys = self.y.prefix(bound)?;
        for a in &xs {
            for b in &ys {
                if self.contains(a, b) != Tri::True {
                    continue;
                }
                if self.flags.antitone_x {
                    for a2 in xs.iter().filter(|a2| *a2 <= a) {
                        if self.contains(a2, b) == Tri::False {
                            return Ok(Some([*a2, *a, *b, *b]));
                        }
                    }
                }
                if self.flags.monotone_y {
                    for b2 in ys.iter().filter(|b2| *b2 >= b) {
                        if self.contains(a, b2) == Tri::False {
                            return Ok(Some([*a, *a, *b, *b2]));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}
