use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderExpr {
    Fin(usize),
    Omega,
    /// A declared uncountable regular cardinal, viewed as an order type.
    Reg(String),
    Sum(Box<OrderExpr>, Box<OrderExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order expression, column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("`{0}` is not a declared regular cardinal")]
    UndeclaredRegular(String),
    #[error("order contains reg({0}), whose elements cannot be represented")]
    NotRepresentable(String),
    #[error("order has cofinality {0}, expected a cofinality")]
    NoCofinality(CofinalityResult),
    #[error("order has cofinality {0}, expected omega")]
    NotOmega(CofinalityResult),
    #[error("element {0} is not in the order")]
    NotAnElement(OrderElement),
    #[error("the relation is between different orders than the ones supplied")]
    OrderMismatch,
}

/// An infinite regular cardinal: `omega` or a declared uncountable name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Omega,
    Named(String),
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Omega => f.write_str("omega"),
            Cardinal::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CofinalityResult {
    Empty,
    HasLast,
    Cof(Cardinal),
}

impl fmt::Display for CofinalityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CofinalityResult::Empty => f.write_str("EMPTY"),
            CofinalityResult::HasLast => f.write_str("HAS_LAST"),
            CofinalityResult::Cof(c) => write!(f, "COF({c})"),
        }
    }
}

/// A finite, ranked set of names of uncountable regular cardinals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Regulars {
    names: Vec<String>,
}

impl Regulars {
    /// Names in increasing order of size.
    pub fn new<I, S>(names: I) -> Regulars
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !out.contains(&n) {
                out.push(n);
            }
        }
        Regulars { names: out }
    }

    pub fn rank(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl OrderExpr {
    pub fn sum(a: OrderExpr, b: OrderExpr) -> OrderExpr {
        OrderExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn reg(name: impl Into<String>) -> OrderExpr {
        OrderExpr::Reg(name.into())
    }

    /// `fin(n)`, `omega`, `reg(NAME)`, `A + B` (left-associative) and
    /// parentheses.
    pub fn parse(text: &str) -> Result<OrderExpr, OrderError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn check_regulars(&self, regs: &Regulars) -> Result<(), OrderError> {
        match self {
            OrderExpr::Reg(n) if regs.rank(n).is_none() => Err(OrderError::UndeclaredRegular(n.clone())),
            OrderExpr::Sum(a, b) => {
                a.check_regulars(regs)?;
                b.check_regulars(regs)
            }
            _ => Ok(()),
        }
    }

    pub fn normalize(&self) -> NormalOrder {
        let mut blocks = Vec::new();
        self.flatten(&mut blocks);
        NormalOrder { blocks }
    }

    fn flatten(&self, out: &mut Vec<Block>) {
        match self {
            OrderExpr::Fin(0) => {}
            OrderExpr::Fin(n) => match out.last_mut() {
                Some(Block::Fin(m)) => *m += n,
                _ => out.push(Block::Fin(*n)),
            },
            OrderExpr::Omega => out.push(Block::Omega),
            OrderExpr::Reg(k) => out.push(Block::Reg(k.clone())),
            OrderExpr::Sum(a, b) => {
                a.flatten(out);
                b.flatten(out);
            }
        }
    }
}

impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderExpr::Fin(n) => write!(f, "fin({n})"),
            OrderExpr::Omega => f.write_str("omega"),
            OrderExpr::Reg(k) => write!(f, "reg({k})"),
            OrderExpr::Sum(a, b) => match **b {
                OrderExpr::Sum(..) => write!(f, "{a} + ({b})"),
                _ => write!(f, "{a} + {b}"),
            },
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> OrderError {
        OrderError::Syntax { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), OrderError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    fn sum(&mut self) -> Result<OrderExpr, OrderError> {
        let mut e = self.atom()?;
        while self.eat(b'+') {
            e = OrderExpr::sum(e, self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<OrderExpr, OrderError> {
        if self.eat(b'(') {
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let start = self.pos;
        match self.word() {
            "omega" => Ok(OrderExpr::Omega),
            "fin" => {
                self.expect(b'(')?;
                let digits = self.word().to_string();
                let n = digits.parse::<usize>().map_err(|_| self.err("expected a natural number"))?;
                self.expect(b')')?;
                Ok(OrderExpr::Fin(n))
            }
            "reg" => {
                self.expect(b'(')?;
                let name = self.word().to_string();
                if name.is_empty() || name.as_bytes()[0].is_ascii_digit() {
                    return Err(self.err("expected a cardinal name"));
                }
                self.expect(b')')?;
                Ok(OrderExpr::Reg(name))
            }
            _ => {
                self.pos = start;
                self.skip_ws();
                Err(self.err("expected `fin(n)`, `omega`, `reg(NAME)` or `(`"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Block {
    /// Non-empty finite block.
    Fin(usize),
    Omega,
    Reg(String),
}

/// A flattened sum of blocks: no empty blocks, no adjacent finite blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalOrder {
    blocks: Vec<Block>,
}

/// Element `index` of block `block`. The derived ordering is the order of
/// the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderElement {
    pub block: usize,
    pub index: usize,
}

impl OrderElement {
    pub fn new(block: usize, index: usize) -> OrderElement {
        OrderElement { block, index }
    }

    /// Reads the `b:i` form.
    pub fn parse(text: &str) -> Option<OrderElement> {
        let (b, i) = text.trim().split_once(':')?;
        Some(OrderElement { block: b.parse().ok()?, index: i.parse().ok()? })
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.block, self.index)
    }
}

impl From<&OrderExpr> for NormalOrder {
    fn from(e: &OrderExpr) -> NormalOrder {
        e.normalize()
    }
}

impl fmt::Display for NormalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("fin(0)");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match b {
                Block::Fin(n) => write!(f, "fin({n})")?,
                Block::Omega => f.write_str("omega")?,
                Block::Reg(k) => write!(f, "reg({k})")?,
            }
        }
        Ok(())
    }
}

pub fn cofinality(o: &OrderExpr) -> CofinalityResult {
    match o {
        OrderExpr::Fin(0) => CofinalityResult::Empty,
        OrderExpr::Fin(_) => CofinalityResult::HasLast,
        OrderExpr::Omega => CofinalityResult::Cof(Cardinal::Omega),
        OrderExpr::Reg(k) => CofinalityResult::Cof(Cardinal::Named(k.clone())),
        OrderExpr::Sum(a, b) => match cofinality(b) {
            CofinalityResult::Empty => cofinality(a),
            c => c,
        },
    }
}

/// Two orders without last element are connected iff their cofinalities
/// agree.
pub fn connected_decision(x: &OrderExpr, y: &OrderExpr) -> Result<bool, OrderError> {
    let cx = cofinality(x);
    let cy = cofinality(y);
    for c in [&cx, &cy] {
        if !matches!(c, CofinalityResult::Cof(_)) {
            return Err(OrderError::NoCofinality(c.clone()));
        }
    }
    Ok(cx == cy)
}

impl NormalOrder {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn cofinality(&self) -> CofinalityResult {
        match self.blocks.last() {
            None => CofinalityResult::Empty,
            Some(Block::Fin(_)) => CofinalityResult::HasLast,
            Some(Block::Omega) => CofinalityResult::Cof(Cardinal::Omega),
            Some(Block::Reg(k)) => CofinalityResult::Cof(Cardinal::Named(k.clone())),
        }
    }

    /// Fails on orders with a `reg` block.
    pub fn check_representable(&self) -> Result<(), OrderError> {
        match self.blocks.iter().find_map(|b| match b {
            Block::Reg(k) => Some(k.clone()),
            _ => None,
        }) {
            Some(k) => Err(OrderError::NotRepresentable(k)),
            None => Ok(()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, Block::Fin(_)))
    }

    /// Number of elements, when finite.
    pub fn len(&self) -> Option<usize> {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Fin(n) => Some(*n),
                _ => None,
            })
            .sum()
    }

    pub fn contains(&self, e: &OrderElement) -> bool {
        match self.blocks.get(e.block) {
            Some(Block::Fin(n)) => e.index < *n,
            Some(Block::Omega) => true,
            _ => false,
        }
    }

    pub fn check_element(&self, e: &OrderElement) -> Result<(), OrderError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(OrderError::NotAnElement(*e))
        }
    }

    pub fn compare(&self, a: &OrderElement, b: &OrderElement) -> Ordering {
        a.cmp(b)
    }

    pub fn first(&self) -> Option<OrderElement> {
        match self.blocks.first() {
            Some(Block::Fin(_)) | Some(Block::Omega) => Some(OrderElement::new(0, 0)),
            _ => None,
        }
    }

    pub fn last(&self) -> Option<OrderElement> {
        match self.blocks.last() {
            Some(Block::Fin(n)) => Some(OrderElement::new(self.blocks.len() - 1, n - 1)),
            _ => None,
        }
    }

    /// The immediate successor, if any.
    pub fn succ(&self, e: &OrderElement) -> Option<OrderElement> {
        let within = match self.blocks.get(e.block)? {
            Block::Fin(n) => e.index + 1 < *n,
            Block::Omega => true,
            Block::Reg(_) => return None,
        };
        if within {
            return Some(OrderElement::new(e.block, e.index + 1));
        }
        match self.blocks.get(e.block + 1)? {
            Block::Reg(_) => None,
            _ => Some(OrderElement::new(e.block + 1, 0)),
        }
    }

    /// Structural enumeration: every round emits each finite block whole on
    /// first reach and the next element of every `omega` block.
    pub fn enumerate(&self) -> Result<Enumeration<'_>, OrderError> {
        self.check_representable()?;
        Ok(Enumeration { order: self, round: 0, block: 0, index: 0, done: self.blocks.is_empty() })
    }

    pub fn prefix(&self, bound: usize) -> Result<Vec<OrderElement>, OrderError> {
        Ok(self.enumerate()?.take(bound).collect())
    }

    /// `x_n`, the canonical increasing cofinal sequence of an order with
    /// cofinality omega: the `n`-th element of the last block.
    pub fn fundamental(&self, n: usize) -> Result<OrderElement, OrderError> {
        match self.cofinality() {
            CofinalityResult::Cof(Cardinal::Omega) => Ok(OrderElement::new(self.blocks.len() - 1, n)),
            c => Err(OrderError::NotOmega(c)),
        }
    }

    /// Least `n` with `x <= x_n`.
    pub fn fundamental_index(&self, x: &OrderElement) -> Result<usize, OrderError> {
        let last = self.fundamental(0)?.block;
        Ok(if x.block < last { 0 } else { x.index })
    }

    /// Whether `{z | z >= x}` is finite.
    pub fn upset_is_finite(&self, x: &OrderElement) -> bool {
        self.blocks[x.block..].iter().all(|b| matches!(b, Block::Fin(_)))
    }

    /// Whether `{z | z <= y}` is finite.
    pub fn downset_is_finite(&self, y: &OrderElement) -> bool {
        self.blocks[..y.block].iter().all(|b| matches!(b, Block::Fin(_)))
    }

    /// Elements `>= x` among the first `bound` enumerated, or all of them
    /// when finite. The flag says whether the list is complete.
    pub fn upset_within(&self, x: &OrderElement, bound: usize) -> Result<(Vec<OrderElement>, bool), OrderError> {
        if self.upset_is_finite(x) {
            let mut out = Vec::new();
            let mut cur = Some(*x);
            while let Some(e) = cur {
                out.push(e);
                cur = self.succ(&e);
            }
            return Ok((out, true));
        }
        Ok((self.prefix(bound)?.into_iter().filter(|e| e >= x).collect(), false))
    }

    /// Elements `<= y` among the first `bound` enumerated, or all of them
    /// when finite.
    pub fn downset_within(&self, y: &OrderElement, bound: usize) -> Result<(Vec<OrderElement>, bool), OrderError> {
        if self.downset_is_finite(y) {
            let mut out = Vec::new();
            for (b, block) in self.blocks.iter().enumerate().take(y.block + 1) {
                let n = match block {
                    Block::Fin(n) if b < y.block => *n,
                    _ => y.index + 1,
                };
                out.extend((0..n).map(|i| OrderElement::new(b, i)));
            }
            return Ok((out, true));
        }
        Ok((self.prefix(bound)?.into_iter().filter(|e| e <= y).collect(), false))
    }
}

pub struct Enumeration<'a> {
    order: &'a NormalOrder,
    round: usize,
    block: usize,
    index: usize,
    done: bool,
}

impl Iterator for Enumeration<'_> {
    type Item = OrderElement;

    fn next(&mut self) -> Option<OrderElement> {
        let blocks = &self.order.blocks;
        while !self.done {
            if self.block == blocks.len() {
                self.round += 1;
                self.block = 0;
                self.index = 0;
                if !blocks.iter().any(|b| matches!(b, Block::Omega)) {
                    self.done = true;
                }
                continue;
            }
            match &blocks[self.block] {
                Block::Fin(n) if self.round == 0 && self.index < *n => {
                    self.index += 1;
                    return Some(OrderElement::new(self.block, self.index - 1));
                }
                Block::Omega if self.index == 0 => {
                    self.index = 1;
                    return Some(OrderElement::new(self.block, self.round));
                }
                _ => {
                    self.block += 1;
                    self.index = 0;
                }
            }
        }
        None
    }
}
