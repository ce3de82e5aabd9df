//! Command-line syntax for elements, read against their expected object.
//!
//! Carrier elements are ordinals (`1`), states list every index
//! (`{i:0,j:2}`), exceptions are tagged pairs (`(j,2)`), products are
//! `(x, y)`, and sums are `normal(..)` / `exceptional(..)` (or `inl(..)` /
//! `inr(..)`).

use effdual_core::{Elem, FamilySignature, Obj, Value};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> Result<(), String> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(format!(
                "expected `{c}` at offset {}, found `{d}`",
                self.pos
            )),
            None => Err(format!("expected `{c}`, found end of input")),
        }
    }

    fn word(&mut self) -> Result<&'a str, String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(format!("expected a word at offset {}", self.pos));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn ordinal(&mut self) -> Result<usize, String> {
        let w = self.word()?;
        w.parse()
            .map_err(|_| format!("expected an ordinal, found `{w}`"))
    }
}

fn value(sig: &FamilySignature, obj: &Obj, cur: &mut Cursor<'_>) -> Result<Value, String> {
    let v = match obj {
        Obj::Carrier { .. } => Value::Elem(Elem(cur.ordinal()?)),
        Obj::St => {
            cur.eat('{')?;
            let mut elems: Vec<Option<Elem>> = vec![None; sig.len()];
            loop {
                let name = cur.word()?;
                let ix = sig.ix(name).map_err(|e| e.to_string())?;
                cur.eat(':')?;
                let a = Elem(cur.ordinal()?);
                if elems[ix.position()].replace(a).is_some() {
                    return Err(format!("index `{name}` given twice"));
                }
                if cur.peek() == Some(',') {
                    cur.eat(',')?;
                } else {
                    break;
                }
            }
            cur.eat('}')?;
            let elems: Option<Vec<Elem>> = elems.into_iter().collect();
            let elems = elems.ok_or("a state must give every index a value")?;
            Value::State(sig.state(elems).map_err(|e| e.to_string())?)
        }
        Obj::Exc => {
            cur.eat('(')?;
            let name = cur.word()?;
            let ix = sig.ix(name).map_err(|e| e.to_string())?;
            cur.eat(',')?;
            let a = Elem(cur.ordinal()?);
            cur.eat(')')?;
            Value::Exc(sig.exc(ix, a).map_err(|e| e.to_string())?)
        }
        Obj::Prod(a, b) => {
            cur.eat('(')?;
            let x = value(sig, a, cur)?;
            cur.eat(',')?;
            let y = value(sig, b, cur)?;
            cur.eat(')')?;
            Value::pair(x, y)
        }
        Obj::Sum(a, b) => {
            let tag = cur.word()?;
            cur.eat('(')?;
            let v = match tag {
                "normal" | "inl" => Value::Inl(Box::new(value(sig, a, cur)?)),
                "exceptional" | "inr" => Value::Inr(Box::new(value(sig, b, cur)?)),
                other => {
                    return Err(format!(
                        "expected normal(..) or exceptional(..), found `{other}`"
                    ))
                }
            };
            cur.eat(')')?;
            v
        }
    };
    Ok(v)
}

/// Parses `src` as an element of `obj`.
pub fn parse_value(sig: &FamilySignature, obj: &Obj, src: &str) -> Result<Value, String> {
    let mut cur = Cursor { src, pos: 0 };
    let v = value(sig, obj, &mut cur)?;
    if cur.peek().is_some() {
        return Err(format!("trailing input at offset {}", cur.pos));
    }
    obj.check(sig, &v).map_err(|e| e.to_string())?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig23() -> FamilySignature {
        FamilySignature::new([("i", 2), ("j", 3)]).unwrap()
    }

    #[test]
    fn states_and_exceptions() {
        let sig = sig23();
        let s = parse_value(&sig, &Obj::St, "{i:0, j:2}").unwrap();
        assert_eq!(s, Value::State(sig.state([Elem(0), Elem(2)]).unwrap()));
        let s2 = parse_value(&sig, &Obj::St, "{j:2,i:0}").unwrap();
        assert_eq!(s, s2);
        let e = parse_value(&sig, &Obj::Exc, "(j,2)").unwrap();
        assert_eq!(
            e,
            Value::Exc(sig.exc(sig.ix("j").unwrap(), Elem(2)).unwrap())
        );
    }

    #[test]
    fn sums_and_products() {
        let sig = sig23();
        let obj = Obj::with_exc(Obj::par("i"));
        assert_eq!(
            parse_value(&sig, &obj, "normal(1)").unwrap(),
            Value::normal(Value::Elem(Elem(1)))
        );
        let e = sig.exc(sig.ix("j").unwrap(), Elem(0)).unwrap();
        assert_eq!(
            parse_value(&sig, &obj, "exceptional((j,0))").unwrap(),
            Value::exceptional(e)
        );
        let p = Obj::prod(Obj::val("i"), Obj::St);
        assert!(parse_value(&sig, &p, "(1, {i:0,j:2})").is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        let sig = sig23();
        for (obj, src) in [
            (Obj::St, "{i:0}"),
            (Obj::St, "{i:0,i:1,j:0}"),
            (Obj::St, "{i:2,j:0}"),
            (Obj::St, "{k:0,j:0}"),
            (Obj::Exc, "(i,2)"),
            (Obj::val("i"), "x"),
            (Obj::val("i"), "1 2"),
            (Obj::with_exc(Obj::par("i")), "maybe(1)"),
        ] {
            assert!(parse_value(&sig, &obj, src).is_err(), "{src}");
        }
    }
}
