//! Canonical one-line text formats for the four families, with JSON
//! mirrors. `parse(format(x)) = x` and the formats are the wire protocol of
//! the command line tool, so generated families can be streamed and diffed
//! as plain text.
//!
//! Grammars (whitespace-insensitive around separators):
//!
//! ```text
//! nct <n>: i-j,i-j,...          edges i<j in sorted order; `nct 1:` alone
//! qd <n>: a-b,a-b,...           diagonals a<b sorted; `qd 2:` the square
//! (<L> <M> <R>) | *             ternary trees as S-expressions
//! pcdd <m>: darts=u>v,... chains=[v0 v1 ...];[...] flag=<index>
//! ```

use crate::error::{Error, Result};
use crate::model::{NctLabeledTree, Pcdd, QuadDissection, TernaryTree};
use serde_json::{json, Value};

/// Any of the four family members, as read from a line of input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Nct(NctLabeledTree),
    Qd(QuadDissection),
    Ternary(TernaryTree),
    Pcdd(Pcdd),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Nct(_) => "nct",
            Object::Qd(_) => "qd",
            Object::Ternary(_) => "ternary",
            Object::Pcdd(_) => "pcdd",
        }
    }
}

pub fn format_nct(t: &NctLabeledTree) -> String {
    let edges: Vec<String> = t.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    if edges.is_empty() {
        format!("nct {}:", t.n())
    } else {
        format!("nct {}: {}", t.n(), edges.join(","))
    }
}

pub fn format_qd(q: &QuadDissection) -> String {
    let diags: Vec<String> = q
        .diagonals()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    if diags.is_empty() {
        format!("qd {}:", q.n())
    } else {
        format!("qd {}: {}", q.n(), diags.join(","))
    }
}

pub fn format_ternary(t: &TernaryTree) -> String {
    match t {
        TernaryTree::Leaf => "*".into(),
        TernaryTree::Node(l, m, r) => format!(
            "({} {} {})",
            format_ternary(l),
            format_ternary(m),
            format_ternary(r)
        ),
    }
}

pub fn format_pcdd(p: &Pcdd) -> String {
    if p.is_empty() {
        return "pcdd 0:".into();
    }
    let mut out = format!("pcdd {}:", p.m());
    if !p.darts().is_empty() {
        let darts: Vec<String> = p.darts().iter().map(|(u, v)| format!("{u}>{v}")).collect();
        out.push_str(&format!(" darts={}", darts.join(",")));
    }
    let chains: Vec<String> = p
        .chains()
        .iter()
        .map(|c| {
            let vs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("[{}]", vs.join(" "))
        })
        .collect();
    out.push_str(&format!(" chains={} flag={}", chains.join(";"), p.flag()));
    out
}

pub fn format_object(obj: &Object) -> String {
    match obj {
        Object::Nct(t) => format_nct(t),
        Object::Qd(q) => format_qd(q),
        Object::Ternary(t) => format_ternary(t),
        Object::Pcdd(p) => format_pcdd(p),
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn try_eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(self.error("expected a number".into()));
        }
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| self.error("number out of range".into()))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }
}

fn parse_pair_list(cur: &mut Cursor, sep: char) -> Result<Vec<(u32, u32)>> {
    let mut pairs = Vec::new();
    if cur.at_end() {
        return Ok(pairs);
    }
    loop {
        let a = cur.number()? as u32;
        cur.eat(&sep.to_string())?;
        let b = cur.number()? as u32;
        pairs.push((a, b));
        if !cur.try_eat(",") {
            break;
        }
    }
    Ok(pairs)
}

pub fn parse_nct(line: &str) -> Result<NctLabeledTree> {
    let mut cur = Cursor::new(line);
    cur.eat("nct")?;
    let n = cur.number()? as u32;
    cur.eat(":")?;
    let edges = parse_pair_list(&mut cur, '-')?;
    if !cur.at_end() {
        return Err(cur.error("trailing input".into()));
    }
    NctLabeledTree::new(n, edges)
}

pub fn parse_qd(line: &str) -> Result<QuadDissection> {
    let mut cur = Cursor::new(line);
    cur.eat("qd")?;
    let n = cur.number()? as u32;
    cur.eat(":")?;
    let diags = parse_pair_list(&mut cur, '-')?;
    if !cur.at_end() {
        return Err(cur.error("trailing input".into()));
    }
    QuadDissection::new(n, diags)
}

pub fn parse_ternary(line: &str) -> Result<TernaryTree> {
    let mut cur = Cursor::new(line);
    let t = parse_ternary_at(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input".into()));
    }
    Ok(t)
}

fn parse_ternary_at(cur: &mut Cursor) -> Result<TernaryTree> {
    cur.skip_ws();
    if cur.try_eat("*") {
        return Ok(TernaryTree::Leaf);
    }
    cur.eat("(")?;
    let l = parse_ternary_at(cur)?;
    let m = parse_ternary_at(cur)?;
    let r = parse_ternary_at(cur)?;
    cur.eat(")")?;
    Ok(TernaryTree::node(l, m, r))
}

pub fn parse_pcdd(line: &str) -> Result<Pcdd> {
    let mut cur = Cursor::new(line);
    cur.eat("pcdd")?;
    let m = cur.number()? as usize;
    cur.eat(":")?;
    if m == 0 {
        if !cur.at_end() {
            return Err(cur.error("the empty structure takes no sections".into()));
        }
        return Ok(Pcdd::empty());
    }
    let mut darts = Vec::new();
    if cur.try_eat("darts=") {
        darts = parse_pair_list(&mut cur, '>')?
            .into_iter()
            .map(|(u, v)| (u as usize, v as usize))
            .collect();
    }
    cur.eat("chains=")?;
    let mut chains: Vec<Vec<usize>> = Vec::new();
    loop {
        cur.eat("[")?;
        let mut chain = Vec::new();
        loop {
            cur.skip_ws();
            if cur.try_eat("]") {
                break;
            }
            chain.push(cur.number()? as usize);
        }
        chains.push(chain);
        if !cur.try_eat(";") {
            break;
        }
    }
    cur.eat("flag=")?;
    let flag = cur.number()? as usize;
    if !cur.at_end() {
        return Err(cur.error("trailing input".into()));
    }
    Pcdd::from_parts(m, darts, chains, flag)
}

/// Parses one line in any of the four canonical formats, dispatching on its
/// leading token.
pub fn parse_line(line: &str) -> Result<Object> {
    let trimmed = line.trim_start();
    if trimmed.starts_with("nct") {
        parse_nct(line).map(Object::Nct)
    } else if trimmed.starts_with("qd") {
        parse_qd(line).map(Object::Qd)
    } else if trimmed.starts_with("pcdd") {
        parse_pcdd(line).map(Object::Pcdd)
    } else if trimmed.starts_with('(') || trimmed.starts_with('*') {
        parse_ternary(line).map(Object::Ternary)
    } else if trimmed.starts_with('{') {
        parse_json(line)
    } else {
        Err(Error::Parse {
            pos: 0,
            msg: "unrecognized object; expected nct, qd, pcdd, an S-expression or JSON".into(),
        })
    }
}

pub fn to_json(obj: &Object) -> Value {
    match obj {
        Object::Nct(t) => json!({
            "kind": "nct",
            "n": t.n(),
            "edges": t.edges().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        }),
        Object::Qd(q) => json!({
            "kind": "qd",
            "n": q.n(),
            "diagonals": q.diagonals().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        }),
        Object::Ternary(t) => json!({
            "kind": "ternary",
            "sexp": format_ternary(t),
        }),
        Object::Pcdd(p) => json!({
            "kind": "pcdd",
            "m": p.m(),
            "darts": p.darts().iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
            "chains": p.chains(),
            "flag": p.flag(),
        }),
    }
}

pub fn parse_json(text: &str) -> Result<Object> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column().saturating_sub(1),
        msg: e.to_string(),
    })?;
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: msg.into(),
    };
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing kind"))?;
    let pairs = |key: &str| -> Result<Vec<(u32, u32)>> {
        value
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(&format!("missing {key}")))?
            .iter()
            .map(|p| {
                let arr = p.as_array().filter(|a| a.len() == 2);
                match arr {
                    Some(a) => Ok((
                        a[0].as_u64().ok_or_else(|| bad("bad pair"))? as u32,
                        a[1].as_u64().ok_or_else(|| bad("bad pair"))? as u32,
                    )),
                    None => Err(bad("pairs must be two-element arrays")),
                }
            })
            .collect()
    };
    match kind {
        "nct" => {
            let n = value
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing n"))?;
            Ok(Object::Nct(NctLabeledTree::new(n as u32, pairs("edges")?)?))
        }
        "qd" => {
            let n = value
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing n"))?;
            Ok(Object::Qd(QuadDissection::new(
                n as u32,
                pairs("diagonals")?,
            )?))
        }
        "ternary" => {
            let sexp = value
                .get("sexp")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("missing sexp"))?;
            Ok(Object::Ternary(parse_ternary(sexp)?))
        }
        "pcdd" => {
            let m = value
                .get("m")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing m"))?;
            let darts: Vec<(usize, usize)> = pairs("darts")?
                .into_iter()
                .map(|(u, v)| (u as usize, v as usize))
                .collect();
            let chains: Vec<Vec<usize>> = value
                .get("chains")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing chains"))?
                .iter()
                .map(|c| {
                    c.as_array()
                        .ok_or_else(|| bad("chains must be arrays"))?
                        .iter()
                        .map(|v| {
                            v.as_u64()
                                .map(|x| x as usize)
                                .ok_or_else(|| bad("bad chain"))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let flag = value
                .get("flag")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing flag"))? as usize;
            Ok(Object::Pcdd(Pcdd::from_parts(
                m as usize, darts, chains, flag,
            )?))
        }
        other => Err(bad(&format!("unknown kind {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_figure_tree() {
        let t = NctLabeledTree::new(5, [(1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(format_nct(&t), "nct 5: 1-2,1-3,3-4,3-5");
        assert_eq!(format_nct(&NctLabeledTree::single()), "nct 1:");
    }

    #[test]
    fn parse_qd_example() {
        assert_eq!(
            parse_qd("qd 3: 1-4").unwrap(),
            QuadDissection::new(3, [(1, 4)]).unwrap()
        );
        assert_eq!(
            parse_qd("qd 2:").unwrap(),
            QuadDissection::new(2, []).unwrap()
        );
        assert_eq!(
            parse_qd(" qd 5:  1-4 , 5-8,5-10 ").unwrap(),
            QuadDissection::new(5, [(1, 4), (5, 8), (5, 10)]).unwrap()
        );
    }

    #[test]
    fn parse_error_positions() {
        let err = parse_qd("qd 3: 1x4").unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_qd("qd 3: 1-3").is_err()); // validation after parse
    }

    #[test]
    fn ternary_round_trip() {
        for s in ["*", "(* * *)", "((* (* * (* * *)) *) * *)"] {
            let t = parse_ternary(s).unwrap();
            assert_eq!(format_ternary(&t), s);
        }
    }

    #[test]
    fn pcdd_round_trip() {
        let p = crate::bijections::medial(&NctLabeledTree::new(3, [(1, 2), (2, 3)]).unwrap());
        let line = format_pcdd(&p);
        assert_eq!(line, "pcdd 2: darts=1>0 chains=[0];[1];[1 0] flag=0");
        assert_eq!(parse_pcdd(&line).unwrap(), p);
        assert_eq!(format_pcdd(&Pcdd::empty()), "pcdd 0:");
        assert_eq!(parse_pcdd("pcdd 0:").unwrap(), Pcdd::empty());
        let point = format_pcdd(&Pcdd::point());
        assert_eq!(point, "pcdd 1: chains=[0];[0] flag=0");
        assert_eq!(parse_pcdd(&point).unwrap(), Pcdd::point());
    }

    #[test]
    fn round_trip_over_generated_families() {
        for t in crate::generators::gen_ncts(5) {
            let line = format_nct(&t);
            assert_eq!(parse_nct(&line).unwrap(), t);
            match parse_line(&line).unwrap() {
                Object::Nct(back) => assert_eq!(back, t),
                other => panic!("wrong kind {other:?}"),
            }
        }
        for q in crate::generators::gen_dissections(4) {
            assert_eq!(parse_qd(&format_qd(&q)).unwrap(), q);
        }
        for p in crate::generators::gen_pcdds(4) {
            assert_eq!(parse_pcdd(&format_pcdd(&p)).unwrap(), p);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = NctLabeledTree::new(5, [(1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let obj = Object::Nct(t);
        let json = to_json(&obj).to_string();
        assert!(json.contains("\"kind\":\"nct\""));
        assert_eq!(parse_json(&json).unwrap(), obj);
        for p in crate::generators::gen_pcdds(3) {
            let obj = Object::Pcdd(p);
            assert_eq!(parse_json(&to_json(&obj).to_string()).unwrap(), obj);
        }
    }
}
