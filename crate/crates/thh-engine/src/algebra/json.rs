use serde::{Deserialize, Serialize};

use super::{Algebra, GenKind, Generator, Presentation};
use crate::error::{invalid, Result};
use crate::fp::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: u32,
    #[serde(default)]
    pub filtration: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
}

/// Wire format for presentations, optionally carrying Poincaré dims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub p: u32,
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
}

impl PresentationJson {
    pub fn from_presentation(pres: &Presentation, with_dims: Option<u32>) -> Result<Self> {
        let generators = pres
            .generators()
            .iter()
            .map(|g| {
                let (kind, height) = match g.kind {
                    GenKind::Polynomial => ("polynomial", None),
                    GenKind::Exterior => ("exterior", None),
                    GenKind::DividedPower => ("divided_power", None),
                    GenKind::Truncated(h) => ("truncated", Some(h)),
                };
                GeneratorJson {
                    name: g.name.clone(),
                    degree: g.internal_degree,
                    filtration: g.filtration_degree,
                    kind: kind.to_string(),
                    height,
                }
            })
            .collect();
        let relations = pres.relations().iter().map(|r| pres.format_element(r)).collect();
        let dims = match with_dims {
            None => None,
            Some(d) => Some(Algebra::new(pres.clone(), d)?.poincare().dims),
        };
        Ok(PresentationJson { p: pres.field().p(), generators, relations, dims })
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let mut b = Presentation::builder(PrimeField::new(self.p)?);
        for g in &self.generators {
            let kind = match (g.kind.as_str(), g.height) {
                ("polynomial", _) => GenKind::Polynomial,
                ("exterior", _) => GenKind::Exterior,
                ("divided_power", _) => GenKind::DividedPower,
                ("truncated", Some(h)) => GenKind::Truncated(h),
                ("truncated", None) => return Err(invalid(format!("truncated generator {:?} needs a height", g.name))),
                (other, _) => return Err(invalid(format!("unknown generator kind {other:?}"))),
            };
            b = b.generator(Generator::new(g.name.clone(), g.degree, kind).with_filtration(g.filtration));
        }
        for r in &self.relations {
            b = b.relation(r);
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let pres = Presentation::builder(PrimeField::new(5).unwrap())
            .ext("x", 3)
            .truncated("y", 4, 2)
            .divided("b", 40)
            .relation("x*y")
            .build()
            .unwrap();
        let json = PresentationJson::from_presentation(&pres, Some(10)).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let back: PresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_presentation().unwrap(), pres);
        assert_eq!(back.dims.unwrap(), vec![1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0]);
    }
}
