//! A small expression language for Chow classes.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' nat)?
//! atom   := nat | sigma[parts] | e<i> | h<i> | c<i> | ct<i>
//!         | cT<i> | sT<i> | H | push(expr) | '(' expr ')'
//! ```
//!
//! `e<i> = ct<i> = σ_(1^i)`, `h<i> = σ_(i)` and `c<i> = (−1)^i σ_(i)` live on
//! the Grassmannian. `cT<i>` and `sT<i>` are `c_i(T)` and `c_i(−T)`, `H` is
//! `h = c₁(T₁)` and `push` is the pushforward to the Grassmannian; these four
//! need the product ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::chowprod::{format_prod_term, ProdRing};
use crate::error::{Error, Result};
use crate::gflin::PrimeField;
use crate::schur::{write_signed_sum, GrassClass, GrassRing, Partition, Strip};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Sigma(Partition),
    E(u32),
    H(u32),
    C(u32),
    Ct(u32),
    ChernT(u32),
    SegreT(u32),
    Hyperplane,
    Push(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Whether the expression uses atoms that need the product ring.
    pub fn needs_product(&self) -> bool {
        match self {
            Expr::ChernT(_) | Expr::SegreT(_) | Expr::Hyperplane | Expr::Push(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.needs_product(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.needs_product() || b.needs_product()
            }
            _ => false,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sigma(l) => write!(f, "sigma{l}"),
            Expr::E(i) => write!(f, "e{i}"),
            Expr::H(i) => write!(f, "h{i}"),
            Expr::C(i) => write!(f, "c{i}"),
            Expr::Ct(i) => write!(f, "ct{i}"),
            Expr::ChernT(i) => write!(f, "cT{i}"),
            Expr::SegreT(i) => write!(f, "sT{i}"),
            Expr::Hyperplane => write!(f, "H"),
            Expr::Push(a) => write!(f, "push({a})"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(
                    f,
                    " {} ",
                    if matches!(self, Expr::Add(..)) {
                        '+'
                    } else {
                        '-'
                    }
                )?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Expr::Pow(a, n) => {
                write_child(f, a, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let n = self.nat()?;
            let n = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a nonnegative integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "integer out of range".into(),
            })
    }

    fn index(&mut self) -> Result<u32> {
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            return Err(self.error("expected an index"));
        }
        let n = self.nat()?;
        u32::try_from(n).map_err(|_| self.error("index too large"))
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c.is_ascii_digit() {
            return Ok(Expr::Int(self.nat()?));
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.error(&format!("unexpected character '{}'", c as char)));
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match word {
            "sigma" => {
                self.expect(b'[')?;
                let mut parts = Vec::new();
                if !self.eat(b']') {
                    loop {
                        let part = self.nat()?;
                        parts.push(u32::try_from(part).map_err(|_| self.error("part too large"))?);
                        if self.eat(b']') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                let lambda = Partition::new(parts).map_err(|e| Error::Parse {
                    position: start,
                    message: e.to_string(),
                })?;
                Ok(Expr::Sigma(lambda))
            }
            "push" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Push(Box::new(e)))
            }
            "H" => Ok(Expr::Hyperplane),
            "e" => Ok(Expr::E(self.index()?)),
            "h" => Ok(Expr::H(self.index()?)),
            "c" => Ok(Expr::C(self.index()?)),
            "ct" => Ok(Expr::Ct(self.index()?)),
            "cT" => Ok(Expr::ChernT(self.index()?)),
            "sT" => Ok(Expr::SegreT(self.index()?)),
            _ => Err(Error::Parse {
                position: start,
                message: format!("unknown atom '{word}'"),
            }),
        }
    }
}

/// The ring an expression is evaluated in.
#[derive(Clone, Debug)]
pub enum Mode {
    Grassmann(GrassRing),
    Product(ProdRing),
}

impl Mode {
    fn grass(&self) -> &GrassRing {
        match self {
            Mode::Grassmann(g) => g,
            Mode::Product(r) => r.grass(),
        }
    }
}

/// Result of an evaluation: a possibly inhomogeneous class on the
/// Grassmannian or on the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Grass(BTreeMap<u32, u32>),
    Prod(BTreeMap<(u32, u32), u32>),
}

/// A value together with the ring needed to print it.
pub struct Evaluated<'a> {
    pub value: Value,
    mode: &'a Mode,
}

impl Evaluated<'_> {
    /// Homogeneous components on the Grassmannian (`Value::Grass` only).
    pub fn grass_components(&self) -> Option<BTreeMap<u32, GrassClass>> {
        match &self.value {
            Value::Grass(t) => Some(grass_components(self.mode.grass(), t)),
            Value::Prod(_) => None,
        }
    }
}

impl fmt::Display for Evaluated<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.mode.grass();
        let field = g.field();
        let basis = g.basis();
        match &self.value {
            Value::Grass(t) => write_signed_sum(
                f,
                t.iter()
                    .map(|(&i, &c)| (field.signed(c), format!("sigma{}", basis.partition(i)))),
            ),
            Value::Prod(t) => {
                let mut keys: Vec<_> = t.iter().collect();
                keys.sort_by_key(|(&(a, i), _)| (a + basis.partition(i).size(), a, i));
                write_signed_sum(
                    f,
                    keys.into_iter().map(|(&(a, i), &c)| {
                        (field.signed(c), format_prod_term(a, basis.partition(i)))
                    }),
                )
            }
        }
    }
}

fn grass_components(g: &GrassRing, t: &BTreeMap<u32, u32>) -> BTreeMap<u32, GrassClass> {
    let mut parts: BTreeMap<u32, BTreeMap<u32, u32>> = BTreeMap::new();
    for (&i, &c) in t {
        parts
            .entry(g.basis().partition(i).size())
            .or_default()
            .insert(i, c);
    }
    parts
        .into_iter()
        .map(|(deg, terms)| (deg, g.class_from_terms(deg, terms)))
        .collect()
}

fn add_into<K: Ord + Copy>(
    acc: &mut BTreeMap<K, u32>,
    f: PrimeField,
    other: &BTreeMap<K, u32>,
    s: u32,
) {
    for (&k, &c) in other {
        let e = acc.entry(k).or_insert(0);
        *e = f.add(*e, f.mul(c, s));
        if *e == 0 {
            acc.remove(&k);
        }
    }
}

fn lift(t: &BTreeMap<u32, u32>) -> BTreeMap<(u32, u32), u32> {
    t.iter().map(|(&i, &c)| ((0, i), c)).collect()
}

pub fn evaluate<'m>(expr: &Expr, mode: &'m Mode) -> Result<Evaluated<'m>> {
    Ok(Evaluated {
        value: eval(expr, mode)?,
        mode,
    })
}

/// Parses and evaluates in one step.
pub fn eval_str<'m>(src: &str, mode: &'m Mode) -> Result<Evaluated<'m>> {
    evaluate(&parse(src)?, mode)
}

fn product_ring<'m>(mode: &'m Mode, what: &str) -> Result<&'m ProdRing> {
    match mode {
        Mode::Product(r) => Ok(r),
        Mode::Grassmann(_) => Err(Error::Eval(format!(
            "{what} is only available in product-ring mode"
        ))),
    }
}

fn eval(expr: &Expr, mode: &Mode) -> Result<Value> {
    let g = mode.grass();
    let f = g.field();
    let grass = |c: GrassClass| Value::Grass(c.index_terms().clone());
    Ok(match expr {
        Expr::Int(n) => grass(g.scale(&g.one(), (*n % f.p() as u64) as i64)),
        Expr::Sigma(l) => grass(g.monomial(l, 1)),
        Expr::E(i) | Expr::Ct(i) => grass(g.e(*i)),
        Expr::H(i) => grass(g.h(*i)),
        Expr::C(i) => grass(g.scale(&g.h(*i), if i % 2 == 0 { 1 } else { -1 })),
        Expr::ChernT(i) => {
            let r = product_ring(mode, "cT")?;
            if *i > r.spec().r() {
                Value::Prod(BTreeMap::new())
            } else {
                Value::Prod(r.chern_t(*i as i64)?.index_terms().clone())
            }
        }
        Expr::SegreT(i) => {
            let r = product_ring(mode, "sT")?;
            Value::Prod(r.inverse_chern_t(*i).pop().unwrap().index_terms().clone())
        }
        Expr::Hyperplane => {
            let r = product_ring(mode, "H")?;
            Value::Prod(r.h_power(1).index_terms().clone())
        }
        Expr::Push(a) => {
            let r = product_ring(mode, "push")?;
            let inner = match eval(a, mode)? {
                Value::Prod(t) => t,
                Value::Grass(t) => lift(&t),
            };
            let d = r.spec().d();
            let sign = f.sign(d as u64);
            let pushed = inner
                .iter()
                .filter(|(&(a, _), _)| a == d)
                .map(|(&(_, i), &c)| (i, f.mul(c, sign)))
                .collect();
            Value::Grass(pushed)
        }
        Expr::Neg(a) => scale(eval(a, mode)?, f.neg(1), f),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let s = if matches!(expr, Expr::Add(..)) {
                1
            } else {
                f.neg(1)
            };
            match (eval(a, mode)?, eval(b, mode)?) {
                (Value::Grass(mut x), Value::Grass(y)) => {
                    add_into(&mut x, f, &y, s);
                    Value::Grass(x)
                }
                (x, y) => {
                    let mut x = as_prod(x);
                    add_into(&mut x, f, &as_prod(y), s);
                    Value::Prod(x)
                }
            }
        }
        Expr::Mul(a, b) => multiply(eval(a, mode)?, eval(b, mode)?, mode)?,
        Expr::Pow(a, n) => {
            let base = eval(a, mode)?;
            let mut acc = Value::Grass(g.one().index_terms().clone());
            for _ in 0..*n {
                acc = multiply(acc, base.clone(), mode)?;
            }
            acc
        }
    })
}

fn as_prod(v: Value) -> BTreeMap<(u32, u32), u32> {
    match v {
        Value::Grass(t) => lift(&t),
        Value::Prod(t) => t,
    }
}

fn scale(v: Value, s: u32, f: PrimeField) -> Value {
    match v {
        Value::Grass(t) => Value::Grass(t.into_iter().map(|(k, c)| (k, f.mul(c, s))).collect()),
        Value::Prod(t) => Value::Prod(t.into_iter().map(|(k, c)| (k, f.mul(c, s))).collect()),
    }
}

fn multiply(x: Value, y: Value, mode: &Mode) -> Result<Value> {
    let g = mode.grass();
    let f = g.field();
    match (x, y) {
        (Value::Grass(a), Value::Grass(b)) => {
            let mut out = BTreeMap::new();
            for ca in grass_components(g, &a).values() {
                for cb in grass_components(g, &b).values() {
                    let prod = if cb.len() == 1 && is_special(cb) {
                        mul_by_special(g, ca, cb)
                    } else {
                        g.multiply(ca, cb)?
                    };
                    add_into(&mut out, f, prod.index_terms(), 1);
                }
            }
            Ok(Value::Grass(out))
        }
        (a, b) => {
            let r = product_ring(mode, "a product-ring factor")?;
            let split = |t: &BTreeMap<(u32, u32), u32>| {
                let mut by_deg: BTreeMap<u32, BTreeMap<(u32, u32), u32>> = BTreeMap::new();
                for (&(h, i), &c) in t {
                    let deg = h + g.basis().partition(i).size();
                    by_deg.entry(deg).or_default().insert((h, i), c);
                }
                by_deg
                    .into_iter()
                    .map(|(deg, terms)| r.class_from_terms(deg, terms))
                    .collect::<Vec<_>>()
            };
            let (a, b) = (split(&as_prod(a)), split(&as_prod(b)));
            let mut out = BTreeMap::new();
            for u in &a {
                for v in &b {
                    add_into(&mut out, f, r.multiply(u, v)?.index_terms(), 1);
                }
            }
            Ok(Value::Prod(out))
        }
    }
}

fn is_special(c: &GrassClass) -> bool {
    c.terms()
        .next()
        .is_some_and(|(l, _)| l.len() <= 1 || l.part(0) == 1)
}

fn mul_by_special(g: &GrassRing, a: &GrassClass, special: &GrassClass) -> GrassClass {
    let (l, c) = special.terms().next().unwrap();
    let prod = if l.len() <= 1 {
        g.mul_special(a, l.size(), Strip::Row)
    } else {
        g.mul_special(a, l.size(), Strip::Column)
    };
    g.scale(&prod, c as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowprod::GeometrySpec;

    fn grass(k: u32, n: u32, p: u32) -> Mode {
        Mode::Grassmann(GrassRing::grassmannian(k, n, p).unwrap())
    }

    fn prod(p: u32, n: u32, m: u32) -> Mode {
        Mode::Product(ProdRing::new(GeometrySpec::new(p, n, m).unwrap()))
    }

    fn show(src: &str, mode: &Mode) -> String {
        eval_str(src, mode).unwrap().to_string()
    }

    #[test]
    fn parses_and_prints() {
        let e = parse("-e1^7 + e1^4*e3 - e1^3*e2^2 + e1*e2^3").unwrap();
        assert_eq!(e.to_string(), "-e1^7 + e1^4*e3 - e1^3*e2^2 + e1*e2^3");
        let e = parse("push(cT6*cT2*(cT2 - H)^2)").unwrap();
        assert_eq!(e.to_string(), "push(cT6*cT2*(cT2 - H)^2)");
        assert_eq!(
            parse(" sigma[ 2 , 1 ] ").unwrap(),
            Expr::Sigma(Partition::new(vec![2, 1]).unwrap())
        );
        assert_eq!(parse("sigma[]").unwrap(), Expr::Sigma(Partition::empty()));
    }

    #[test]
    fn parse_errors_carry_positions() {
        for (src, pos) in [
            ("e1 +", 4),
            ("e1 * * e2", 5),
            ("foo3", 0),
            ("sigma[1,2]", 0),
            ("e", 1),
            ("(e1", 3),
        ] {
            match parse(src) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn grassmann_evaluation() {
        let m = grass(2, 4, 2);
        assert_eq!(show("sigma[1]*sigma[1]", &m), "sigma[2] + sigma[1,1]");
        let m = grass(3, 27, 3);
        assert_eq!(
            show("-e1^7 + e1^4*e3 - e1^3*e2^2 + e1*e2^3", &m),
            "-sigma[7]"
        );
        assert_eq!(show("c7", &m), "-sigma[7]");
        assert_eq!(show("c1 + ct1", &m), "0");
        assert_eq!(show("2 + e1", &m), "-sigma[] + sigma[1]");
    }

    #[test]
    fn product_atoms_need_product_mode() {
        let m = grass(2, 4, 2);
        assert!(matches!(eval_str("cT1", &m), Err(Error::Eval(_))));
        assert!(matches!(eval_str("push(e1)", &m), Err(Error::Eval(_))));
    }

    #[test]
    fn product_evaluation() {
        let m = prod(3, 2, 1);
        assert_eq!(show("push(cT6*cT2*cT2*cT1^0)", &m), "sigma[2] + sigma[1,1]");
        assert_eq!(show("H^9", &m), "0");
        assert_eq!(show("cT2", &m), "sigma[2] + H*sigma[1]");
        let m = prod(3, 3, 1);
        assert_eq!(show("sT2", &m), "sigma[1,1] - H*sigma[1]");
        assert_eq!(show("sT2 - (-H*ct1 + ct2)", &m), "0");
        assert_eq!(show("sT3 - (H^3 + H^2*ct1 + H*ct2 + ct3)", &m), "0");
    }
}
