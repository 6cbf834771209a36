//! Finite sets with nested pairing as a non-strict monoidal category.
//!
//! `Pair(Pair(a, b), c)` and `Pair(a, Pair(b, c))` are different elements, so
//! associators and unitors act as genuine rebracketings.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::strict::{typecheck_d, MorD, ObjD};
use crate::terms::{typecheck_c, MorC, ObjC, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Unit,
    Atom(u32),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }
}

/// A function given by its graph, in the enumeration order of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table<T> {
    pub rows: Vec<(T, T)>,
}

impl<T: PartialEq> Table<T> {
    pub fn domain(&self) -> impl Iterator<Item = &T> {
        self.rows.iter().map(|(x, _)| x)
    }

    pub fn get(&self, x: &T) -> Option<&T> {
        self.rows.iter().find(|(k, _)| k == x).map(|(_, v)| v)
    }

    pub fn is_injective(&self) -> bool
    where
        T: Ord,
    {
        let mut outs: Vec<&T> = self.rows.iter().map(|(_, y)| y).collect();
        outs.sort();
        outs.windows(2).all(|w| w[0] != w[1])
    }
}

/// Pointwise comparison of two tables over the same domain.
pub fn extensional_equal<T: PartialEq>(x: &Table<T>, y: &Table<T>) -> Result<bool> {
    if !x.domain().eq(y.domain()) {
        return Err(Error::DomainMismatch(
            "tables are defined on different carriers".into(),
        ));
    }
    Ok(x.rows.iter().zip(&y.rows).all(|((_, a), (_, b))| a == b))
}

/// Carrier sizes and seed for building a [`FinModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub seed: u64,
    pub default_size: u32,
    pub sizes: BTreeMap<String, u32>,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            seed: 0,
            default_size: 2,
            sizes: BTreeMap::new(),
        }
    }
}

impl ModelConfig {
    /// Parses `key = value` lines with keys `seed`, `default_size` and
    /// `size.<base>`. Text after `#` is ignored.
    pub fn parse(src: &str) -> Result<Self> {
        let mut cfg = ModelConfig::default();
        for (idx, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| Error::Parse {
                line: idx + 1,
                column,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(1, "expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let col = raw.find('=').map_or(1, |p| p + 2);
            let number = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| err(col, format!("`{v}` is not a non-negative integer")))
            };
            match key {
                "seed" => cfg.seed = number(value)?,
                "default_size" => cfg.default_size = number(value)? as u32,
                _ => match key.strip_prefix("size.") {
                    Some(name) if !name.is_empty() => {
                        cfg.sizes.insert(name.to_string(), number(value)? as u32);
                    }
                    _ => return Err(err(1, format!("unknown key `{key}`"))),
                },
            }
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug)]
pub struct FinModel {
    sig: Signature,
    carrier: BTreeMap<String, u32>,
    tables: BTreeMap<String, Table<Element>>,
    seed: u64,
}

impl FinModel {
    /// Every base gets `size` elements; generator tables are drawn from the
    /// seed.
    pub fn uniform(sig: &Signature, size: u32, seed: u64) -> Result<Self> {
        FinModel::new(
            sig,
            &ModelConfig {
                seed,
                default_size: size,
                sizes: BTreeMap::new(),
            },
        )
    }

    pub fn new(sig: &Signature, cfg: &ModelConfig) -> Result<Self> {
        for name in cfg.sizes.keys() {
            if !sig.has_base(name) {
                return Err(Error::UnknownName(name.clone()));
            }
        }
        let mut carrier = BTreeMap::new();
        for b in sig.base_objects() {
            let n = cfg.sizes.get(b).copied().unwrap_or(cfg.default_size);
            if n == 0 {
                return Err(Error::Precondition(format!("carrier of `{b}` is empty")));
            }
            carrier.insert(b.to_string(), n);
        }
        let mut model = FinModel {
            sig: sig.clone(),
            carrier,
            tables: BTreeMap::new(),
            seed: cfg.seed,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let gens: Vec<(String, ObjC, ObjC)> = sig
            .generators()
            .map(|(n, d, c)| (n.to_string(), d.clone(), c.clone()))
            .collect();
        for (name, dom, cod) in gens {
            let targets = model.eval_obj(&cod)?;
            let rows = model
                .eval_obj(&dom)?
                .into_iter()
                .map(|x| (x, targets[rng.gen_range(0..targets.len())].clone()))
                .collect();
            model.tables.insert(name, Table { rows });
        }
        Ok(model)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier_size(&self, base: &str) -> Option<u32> {
        self.carrier.get(base).copied()
    }

    pub fn generator_table(&self, name: &str) -> Option<&Table<Element>> {
        self.tables.get(name)
    }

    /// Enumerates the carrier; tensors in lexicographic order.
    pub fn eval_obj(&self, a: &ObjC) -> Result<Vec<Element>> {
        Ok(match a {
            ObjC::Unit => vec![Element::Unit],
            ObjC::Base(n) => {
                let size = self
                    .carrier
                    .get(n)
                    .ok_or_else(|| Error::UnknownName(n.clone()))?;
                (0..*size).map(Element::Atom).collect()
            }
            ObjC::Tensor(l, r) => {
                let ls = self.eval_obj(l)?;
                let rs = self.eval_obj(r)?;
                let mut out = Vec::with_capacity(ls.len() * rs.len());
                for x in &ls {
                    for y in &rs {
                        out.push(Element::pair(x.clone(), y.clone()));
                    }
                }
                out
            }
        })
    }

    /// Enumerates the ordered product of the wire carriers.
    pub fn eval_obj_d(&self, x: &ObjD) -> Result<Vec<Vec<Element>>> {
        let mut out = vec![Vec::new()];
        for w in x.wires() {
            let elems = self.eval_obj(w)?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    elems.iter().map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e.clone());
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }

    pub fn eval_mor(&self, f: &MorC) -> Result<Table<Element>> {
        let (dom, _) = typecheck_c(f, &self.sig)?;
        let rows = self
            .eval_obj(&dom)?
            .into_iter()
            .map(|x| {
                let y = self.apply(f, &x)?;
                Ok((x, y))
            })
            .collect::<Result<_>>()?;
        Ok(Table { rows })
    }

    pub fn eval_mor_d(&self, t: &MorD) -> Result<Table<Vec<Element>>> {
        let (dom, _) = typecheck_d(t, &self.sig)?;
        let rows = self
            .eval_obj_d(&dom)?
            .into_iter()
            .map(|x| {
                let y = self.apply_d(t, &x)?;
                Ok((x, y))
            })
            .collect::<Result<_>>()?;
        Ok(Table { rows })
    }

    /// Applies a well-typed morphism to one element.
    pub fn apply(&self, f: &MorC, x: &Element) -> Result<Element> {
        use Element::{Pair, Unit};
        let shape = || Error::mismatch(format!("evaluating `{f}`"), "a matching element", format!("{x:?}"));
        Ok(match (f, x) {
            (MorC::Id(_), _) => x.clone(),
            (MorC::Gen(n), _) => self
                .tables
                .get(n)
                .ok_or_else(|| Error::UnknownName(n.clone()))?
                .get(x)
                .cloned()
                .ok_or_else(shape)?,
            (MorC::Comp(g, h), _) => self.apply(h, &self.apply(g, x)?)?,
            (MorC::Tensor(g, h), Pair(a, b)) => Element::pair(self.apply(g, a)?, self.apply(h, b)?),
            (MorC::Assoc(..), Pair(a, bc)) => match &**bc {
                Pair(b, c) => Element::pair(Element::pair((**a).clone(), (**b).clone()), (**c).clone()),
                _ => return Err(shape()),
            },
            (MorC::AssocInv(..), Pair(ab, c)) => match &**ab {
                Pair(a, b) => Element::pair((**a).clone(), Element::pair((**b).clone(), (**c).clone())),
                _ => return Err(shape()),
            },
            (MorC::UnitL(_), Pair(u, a)) if **u == Unit => (**a).clone(),
            (MorC::UnitR(_), Pair(a, u)) if **u == Unit => (**a).clone(),
            (MorC::UnitLInv(_), _) => Element::pair(Unit, x.clone()),
            (MorC::UnitRInv(_), _) => Element::pair(x.clone(), Unit),
            _ => return Err(shape()),
        })
    }

    /// Applies a well-typed strict morphism to one tuple. Evaluation follows
    /// the term tree, independently of any slicing.
    pub fn apply_d(&self, t: &MorD, xs: &[Element]) -> Result<Vec<Element>> {
        let shape = || {
            Error::mismatch(
                format!("evaluating `{t}`"),
                format!("{} wires", dom_len(t)),
                format!("{xs:?}"),
            )
        };
        if xs.len() != dom_len(t) {
            return Err(shape());
        }
        Ok(match t {
            MorD::Id(_) => xs.to_vec(),
            MorD::Lift(f) => vec![self.apply(f, &xs[0])?],
            MorD::Pack(..) => vec![Element::pair(xs[0].clone(), xs[1].clone())],
            MorD::Unpack(..) => match &xs[0] {
                Element::Pair(a, b) => vec![(**a).clone(), (**b).clone()],
                _ => return Err(shape()),
            },
            MorD::UnitIntro => vec![Element::Unit],
            MorD::UnitElim => {
                if xs[0] != Element::Unit {
                    return Err(shape());
                }
                Vec::new()
            }
            MorD::Comp(f, g) => self.apply_d(g, &self.apply_d(f, xs)?)?,
            MorD::Tensor(f, g) => {
                let k = dom_len(f);
                let mut out = self.apply_d(f, &xs[..k])?;
                out.extend(self.apply_d(g, &xs[k..])?);
                out
            }
        })
    }
}

/// Number of domain wires, read off the term shape.
fn dom_len(t: &MorD) -> usize {
    match t {
        MorD::Id(x) => x.len(),
        MorD::Lift(_) | MorD::Unpack(..) | MorD::UnitElim => 1,
        MorD::Pack(..) => 2,
        MorD::UnitIntro => 0,
        MorD::Comp(f, _) => dom_len(f),
        MorD::Tensor(f, g) => dom_len(f) + dom_len(g),
    }
}
