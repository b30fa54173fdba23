use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::exactalg::{parse_rational, Matrix, Rational};
use crate::typecore::{labels, RelationElement, TypePresentation};
use crate::Error;

const KEYWORDS: &[&str] = &["type", "generators", "star", "aux", "relations", "none"];

fn dsl_name(name: &str) -> String {
    let mut chars = name.chars();
    let plain = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || "_^'".contains(c))
        && !KEYWORDS.contains(&name);
    if plain {
        name.to_string()
    } else {
        format!("\"{name}\"")
    }
}

/// Appends `± |c|*item` to `out`, omitting unit coefficients.
fn push_term(out: &mut String, c: &Rational, item: &str, first: bool) {
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    let mag = c.abs();
    if !mag.is_one() {
        out.push_str(&format!("{mag}*"));
    }
    out.push_str(item);
}

fn lincomb_text(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, n) in v.iter().zip(names) {
        if !c.is_zero() {
            let first = out.is_empty();
            push_term(&mut out, c, &dsl_name(n), first);
        }
    }
    if out.is_empty() {
        out.push_str("0*");
        out.push_str(&dsl_name(&names[0]));
    }
    out
}

fn side_text(side: &Matrix<Rational>, names: &[String]) -> String {
    let mut out = String::new();
    let m = names.len();
    for i in 0..m {
        for j in 0..m {
            let c = side.get(i, j);
            if !c.is_zero() {
                let item = format!("{}.{}", dsl_name(&names[i]), dsl_name(&names[j]));
                let first = out.is_empty();
                push_term(&mut out, c, &item, first);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// DSL text that parses back to an identical presentation.
pub fn to_dsl(t: &TypePresentation) -> String {
    let names = t.generators();
    let mut out = format!("type {} {{\n", dsl_name(t.name()));
    let gens: Vec<String> = names.iter().map(|g| dsl_name(g)).collect();
    out.push_str(&format!("  generators: {};\n", gens.join(", ")));
    match t.star() {
        Some(s) => out.push_str(&format!("  star: {};\n", lincomb_text(s, names))),
        None => out.push_str("  star: none;\n"),
    }
    if !t.aux().is_empty() {
        let defs: Vec<String> = t
            .aux()
            .iter()
            .map(|(a, v)| format!("{} = {}", dsl_name(a), lincomb_text(v, names)))
            .collect();
        out.push_str(&format!("  aux: {};\n", defs.join(", ")));
    }
    if !t.relations().is_empty() {
        out.push_str("  relations:\n");
        for r in t.relations() {
            out.push_str(&format!(
                "    ({} | {})\n",
                side_text(&r.left, names),
                side_text(&r.right, names)
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn rat_strings(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(q.to_string())).collect())
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    Value::Array(m.row_iter().map(rat_strings).collect())
}

pub fn to_json_value(t: &TypePresentation) -> Value {
    let mut aux = Map::new();
    for (a, v) in t.aux() {
        aux.insert(a.clone(), rat_strings(v));
    }
    json!({
        "name": t.name(),
        "generators": t.generators(),
        "star": t.star().map_or(Value::Null, rat_strings),
        "aux": aux,
        "relations": t.relations().iter().map(|r| json!({
            "L": matrix_json(&r.left),
            "R": matrix_json(&r.right),
        })).collect::<Vec<_>>(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(t: &TypePresentation) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(t)).expect("json values serialize");
    s.push('\n');
    s
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Structure(format!("json: {}", msg.into()))
}

fn rat_vec(v: &Value) -> Result<Vec<Rational>, Error> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of rationals"))?
        .iter()
        .map(|x| {
            let s = x.as_str().ok_or_else(|| bad("rationals must be strings"))?;
            Ok(parse_rational(s)?)
        })
        .collect()
}

fn matrix_from_json(v: &Value, m: usize) -> Result<Matrix<Rational>, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("expected a matrix"))?
        .iter()
        .map(rat_vec)
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != m {
        return Err(bad(format!("matrix has {} rows, expected {m}", rows.len())));
    }
    Ok(Matrix::from_rows(m, rows)?)
}

pub fn from_json_value(v: &Value) -> Result<TypePresentation, Error> {
    let name = v["name"].as_str().ok_or_else(|| bad("missing name"))?;
    let generators: Vec<String> = v["generators"]
        .as_array()
        .ok_or_else(|| bad("missing generators"))?
        .iter()
        .map(|g| {
            g.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("generator names must be strings"))
        })
        .collect::<Result<_, _>>()?;
    let m = generators.len();
    let star = match &v["star"] {
        Value::Null => None,
        s => Some(rat_vec(s)?),
    };
    let aux = match &v["aux"] {
        Value::Null => Vec::new(),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| Ok((k.clone(), rat_vec(x)?)))
            .collect::<Result<_, Error>>()?,
        _ => return Err(bad("aux must be an object")),
    };
    let relations = v["relations"]
        .as_array()
        .ok_or_else(|| bad("missing relations"))?
        .iter()
        .map(|r| {
            Ok(RelationElement {
                left: matrix_from_json(&r["L"], m)?,
                right: matrix_from_json(&r["R"], m)?,
            })
        })
        .collect::<Result<_, Error>>()?;
    TypePresentation::new(name, generators, star, relations, aux)
}

pub fn from_json(text: &str) -> Result<TypePresentation, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    from_json_value(&v)
}

fn latex_symbol(name: &str) -> String {
    let comps = labels::tuple_components(name);
    if comps.len() > 1 {
        let inner: Vec<String> = comps.iter().map(|c| latex_symbol(c)).collect();
        return format!(
            "\\left(\\begin{{smallmatrix}}{}\\end{{smallmatrix}}\\right)",
            inner.join(" \\\\ ")
        );
    }
    let (base, dual) = match name.strip_suffix('^') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let sym = match base {
        "lt" => "\\prec".to_string(),
        "gt" => "\\succ".to_string(),
        "cir" => "\\circ".to_string(),
        "bul" => "\\bullet".to_string(),
        "lv" => "\\dashv".to_string(),
        "rv" => "\\vdash".to_string(),
        "st" => "\\star".to_string(),
        "perp" => "\\perp".to_string(),
        "dot" => "\\cdot".to_string(),
        "nw" => "\\nwarrow".to_string(),
        "ne" => "\\nearrow".to_string(),
        "sw" => "\\swarrow".to_string(),
        "se" => "\\searrow".to_string(),
        "up" => "\\uparrow".to_string(),
        "dn" => "\\downarrow".to_string(),
        "wedge" => "\\wedge".to_string(),
        "vee" => "\\vee".to_string(),
        other => format!("\\mathrm{{{}}}", other.replace('_', "\\_")),
    };
    if dual {
        format!("\\check{{{sym}}}")
    } else {
        sym
    }
}

fn latex_side(side: &Matrix<Rational>, names: &[String], left_assoc: bool) -> String {
    let mut out = String::new();
    let m = names.len();
    for i in 0..m {
        for j in 0..m {
            let c = side.get(i, j);
            if c.is_zero() {
                continue;
            }
            let (a, b) = (latex_symbol(&names[i]), latex_symbol(&names[j]));
            let item = if left_assoc {
                format!("(x {a} y) {b} z")
            } else {
                format!("x {a} (y {b} z)")
            };
            if c.is_negative() {
                out.push_str(if out.is_empty() { "-" } else { " - " });
            } else if !out.is_empty() {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if !mag.is_one() {
                if mag.is_integer() {
                    out.push_str(&format!("{mag}"));
                } else {
                    out.push_str(&format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom()));
                }
            }
            out.push_str(&item);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One identity row `(x α y) β z = x γ (y δ z)` per basis relation.
pub fn to_latex(t: &TypePresentation) -> String {
    let names = t.generators();
    let mut out = format!(
        "% {}: {} relations\n\\begin{{array}}{{l}}\n",
        t.name(),
        t.relations().len()
    );
    let rows: Vec<String> = t
        .relations()
        .iter()
        .map(|r| {
            format!(
                "{} = {}",
                latex_side(&r.left, names, true),
                latex_side(&r.right, names, false)
            )
        })
        .collect();
    out.push_str(&rows.join(" \\\\\n"));
    out.push_str("\n\\end{array}\n");
    out
}
