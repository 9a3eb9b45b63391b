//! JSON shapes for rings, words, certificates and group elements.
//!
//! Ring values travel as decimal strings (`"t": "-1"` is accepted and
//! reduced); roots as coordinate vectors in the simple-root basis.

use chevalley_core::chevalley::Letter;
use chevalley_core::ring::RingDescriptor;
use chevalley_core::{
    CartanType, Certificate, Chevalley, Generator, GroupElement, GroupWord, Matrix,
    RootSystem, Zmod,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingJson {
    Int,
    Mod { n: u32 },
    Gf { p: u32 },
    Polyquot { vars: Vec<String>, relations: Vec<String> },
}

impl From<&RingDescriptor> for RingJson {
    fn from(d: &RingDescriptor) -> Self {
        match d {
            RingDescriptor::Integers => RingJson::Int,
            RingDescriptor::IntegersMod(n) => RingJson::Mod { n: *n },
            RingDescriptor::PrimeField(p) => RingJson::Gf { p: *p },
            RingDescriptor::PolyQuot { vars, relations } => {
                RingJson::Polyquot { vars: vars.clone(), relations: relations.clone() }
            }
        }
    }
}

impl RingJson {
    pub fn descriptor(&self) -> Result<RingDescriptor> {
        let d = match self {
            RingJson::Int => RingDescriptor::Integers,
            RingJson::Mod { n } => RingDescriptor::parse(&format!("mod:{n}")).map_err(usage)?,
            RingJson::Gf { p } => RingDescriptor::parse(&format!("gf:{p}")).map_err(usage)?,
            RingJson::Polyquot { vars, relations } => {
                RingDescriptor::PolyQuot { vars: vars.clone(), relations: relations.clone() }
            }
        };
        Ok(d)
    }
}

fn usage(e: chevalley_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// `gf:5`, `mod:9` or the JSON form, restricted to finite residue rings.
pub fn parse_finite_ring(s: &str) -> Result<Zmod> {
    let d = if s.trim_start().starts_with('{') {
        serde_json::from_str::<RingJson>(s)?.descriptor()?
    } else {
        RingDescriptor::parse(s).map_err(usage)?
    };
    d.zmod().map_err(usage)
}

pub fn parse_type(s: &str) -> Result<CartanType> {
    let ty = CartanType::parse(s).map_err(usage)?;
    RootSystem::build(ty).map_err(usage)?;
    Ok(ty)
}

pub fn group(ty: CartanType, ring: Zmod) -> Result<Chevalley<Zmod>> {
    Chevalley::for_type(ty, ring).map_err(usage)
}

pub fn parse_value(ring: &Zmod, s: &str) -> Result<u32> {
    let v: i128 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Format(format!("`{s}` is not an integer")))?;
    Ok(ring.reduce(v))
}

pub fn root_index(rs: &RootSystem, coords: &[i32]) -> Result<usize> {
    rs.index_of(coords)
        .ok_or_else(|| CliError::Format(format!("{coords:?} is not a root")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterJson {
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    /// Torus values on the simple roots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub inv: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

pub type WordJson = Vec<LetterJson>;

pub fn word_from_json(g: &Chevalley<Zmod>, w: &[LetterJson]) -> Result<GroupWord<u32>> {
    let rs = g.rs();
    let mut letters = Vec::with_capacity(w.len());
    for l in w {
        let root = || -> Result<usize> {
            let c = l
                .root
                .as_ref()
                .ok_or_else(|| CliError::Format(format!("generator `{}` needs a root", l.g)))?;
            root_index(rs, c)
        };
        let val = |v: &Option<String>, name: &str| -> Result<u32> {
            let s = v
                .as_ref()
                .ok_or_else(|| CliError::Format(format!("generator `{}` needs `{name}`", l.g)))?;
            parse_value(&g.ring, s)
        };
        let gen = match l.g.as_str() {
            "x" => Generator::X { root: root()?, t: val(&l.t, "t")? },
            "w" => Generator::W { root: root()?, eps: val(&l.eps, "eps")? },
            "h" => Generator::H { root: root()?, eps: val(&l.eps, "eps")? },
            "t" => {
                let chars = l
                    .chars
                    .as_ref()
                    .ok_or_else(|| CliError::Format("torus generator needs `chars`".into()))?;
                if chars.len() != rs.rank() {
                    return Err(CliError::Format(format!("torus needs {} values", rs.rank())));
                }
                let chars = chars.iter().map(|c| parse_value(&g.ring, c)).collect::<Result<_>>()?;
                Generator::Torus { chars }
            }
            other => return Err(CliError::Format(format!("unknown generator `{other}`"))),
        };
        letters.push(Letter { gen, inverse: l.inv });
    }
    Ok(GroupWord { letters })
}

pub fn word_to_json(rs: &RootSystem, w: &GroupWord<u32>) -> WordJson {
    w.letters
        .iter()
        .map(|l| {
            let mut out = LetterJson {
                g: String::new(),
                root: None,
                t: None,
                eps: None,
                chars: None,
                inv: l.inverse,
            };
            match &l.gen {
                Generator::X { root, t } => {
                    out.g = "x".into();
                    out.root = Some(rs.coords(*root).to_vec());
                    out.t = Some(t.to_string());
                }
                Generator::W { root, eps } | Generator::H { root, eps } => {
                    out.g = if matches!(l.gen, Generator::W { .. }) { "w" } else { "h" }.into();
                    out.root = Some(rs.coords(*root).to_vec());
                    out.eps = Some(eps.to_string());
                }
                Generator::Torus { chars } => {
                    out.g = "t".into();
                    out.chars = Some(chars.iter().map(|c| c.to_string()).collect());
                }
            }
            out
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum CertJson {
    Seed,
    Elem { word: WordJson },
    Prod { items: Vec<CertJson> },
    Inv { of: Box<CertJson> },
    Conj { body: Box<CertJson>, by: Box<CertJson> },
    Comm { left: Box<CertJson>, right: Box<CertJson> },
}

pub fn cert_to_json(rs: &RootSystem, c: &Certificate<u32>) -> CertJson {
    match c {
        Certificate::Seed => CertJson::Seed,
        Certificate::Elementary(w) => CertJson::Elem { word: word_to_json(rs, w) },
        Certificate::Product(v) => CertJson::Prod { items: v.iter().map(|c| cert_to_json(rs, c)).collect() },
        Certificate::Inverse(c) => CertJson::Inv { of: Box::new(cert_to_json(rs, c)) },
        Certificate::Conjugate { body, by } => CertJson::Conj {
            body: Box::new(cert_to_json(rs, body)),
            by: Box::new(cert_to_json(rs, by)),
        },
        Certificate::Commutator(a, b) => CertJson::Comm {
            left: Box::new(cert_to_json(rs, a)),
            right: Box::new(cert_to_json(rs, b)),
        },
    }
}

pub fn cert_from_json(g: &Chevalley<Zmod>, c: &CertJson) -> Result<Certificate<u32>> {
    let b = |c: &CertJson| cert_from_json(g, c).map(Box::new);
    Ok(match c {
        CertJson::Seed => Certificate::Seed,
        CertJson::Elem { word } => Certificate::Elementary(word_from_json(g, word)?),
        CertJson::Prod { items } => {
            Certificate::Product(items.iter().map(|c| cert_from_json(g, c)).collect::<Result<_>>()?)
        }
        CertJson::Inv { of } => Certificate::Inverse(b(of)?),
        CertJson::Conj { body, by } => Certificate::Conjugate { body: b(body)?, by: b(by)? },
        CertJson::Comm { left, right } => Certificate::Commutator(b(left)?, b(right)?),
    })
}

/// A group element as a row-major entry list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub ring: RingJson,
    pub dim: usize,
    pub entries: Vec<u32>,
}

pub fn element_to_json(g: &Chevalley<Zmod>, m: &GroupElement<Zmod>) -> ElementJson {
    ElementJson {
        ty: g.rs().cartan_type.to_string(),
        ring: RingJson::from(&g.ring.descriptor()),
        dim: m.dim(),
        entries: m.entries().to_vec(),
    }
}

pub fn element_from_json(e: &ElementJson) -> Result<(Chevalley<Zmod>, GroupElement<Zmod>)> {
    let ring = e.ring.descriptor()?.zmod().map_err(usage)?;
    let g = group(parse_type(&e.ty)?, ring)?;
    if e.dim != g.dim() || e.entries.len() != e.dim * e.dim {
        return Err(CliError::Format(format!("expected a {0}×{0} matrix", g.dim())));
    }
    let entries = e.entries.iter().map(|&v| ring.reduce(v as i128)).collect();
    Ok((g, Matrix::from_vec(e.dim, entries)))
}

/// `(root coords, value)` pairs, as used for unipotent parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootParam {
    pub root: Vec<i32>,
    pub t: String,
}

pub fn root_params<E: ToString>(rs: &RootSystem, params: &[(usize, E)]) -> Vec<RootParam> {
    params
        .iter()
        .map(|(r, t)| RootParam { root: rs.coords(*r).to_vec(), t: t.to_string() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(n: u32) -> Chevalley<Zmod> {
        group(CartanType::A(2), Zmod::new(n).unwrap()).unwrap()
    }

    #[test]
    fn ring_json_shapes() {
        let r: RingJson = serde_json::from_str(r#"{"kind":"mod","n":9}"#).unwrap();
        assert_eq!(r, RingJson::Mod { n: 9 });
        assert_eq!(serde_json::to_string(&RingJson::Gf { p: 5 }).unwrap(), r#"{"kind":"gf","p":5}"#);
        assert_eq!(parse_finite_ring(r#"{"kind":"gf","p":7}"#).unwrap().modulus(), 7);
        assert!(parse_finite_ring("gf:6").is_err());
        assert!(parse_finite_ring("int").is_err());
    }

    #[test]
    fn word_round_trip() {
        let g = a2(9);
        let text = r#"[{"g":"x","root":[1,0],"t":"2"},{"g":"w","root":[0,1],"eps":"1"},
                       {"g":"h","root":[1,1],"eps":"-1","inv":true},{"g":"t","chars":["2","5"]}]"#;
        let parsed: WordJson = serde_json::from_str(text).unwrap();
        let w = word_from_json(&g, &parsed).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.letters[2].gen, Generator::H { root: g.rs().root(&[1, 1]).unwrap(), eps: 8 });
        let back = word_from_json(&g, &word_to_json(g.rs(), &w)).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn bad_words() {
        let g = a2(4);
        let bad = |s: &str| word_from_json(&g, &serde_json::from_str::<WordJson>(s).unwrap()).is_err();
        assert!(bad(r#"[{"g":"x","root":[1,-1],"t":"1"}]"#));
        assert!(bad(r#"[{"g":"x","root":[1,0]}]"#));
        assert!(bad(r#"[{"g":"q","root":[1,0],"t":"1"}]"#));
        assert!(bad(r#"[{"g":"t","chars":["1"]}]"#));
    }

    #[test]
    fn certificate_round_trip() {
        let g = a2(4);
        let x = Certificate::elem(GroupWord::x(0, 1u32));
        let c = Certificate::product(vec![
            Certificate::comm(Certificate::Seed, x.clone()),
            Certificate::Seed.conj(x).inverse(),
        ]);
        let j = cert_to_json(g.rs(), &c);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"tag":"prod","items":[{"tag":"comm""#));
        let back: CertJson = serde_json::from_str(&text).unwrap();
        assert_eq!(cert_from_json(&g, &back).unwrap(), c);
    }

    #[test]
    fn element_round_trip() {
        let g = a2(4);
        let m = g.x_elem(1, &3);
        let (g2, m2) = element_from_json(&element_to_json(&g, &m)).unwrap();
        assert_eq!(g2.ring, g.ring);
        assert_eq!(m2, m);
    }
}
