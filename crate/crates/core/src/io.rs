//! JSON forms of every artifact. Keys are emitted in sorted order.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::category::{build_ideal_category, CategorySpec, Functor, MorId, ObjId, SubobjectCategory};
use crate::cone::{Cone, ConeId, ConeMode, ConeSemigroup};
use crate::cross::{ConeSide, CrossConnection, CrossError, SOmega};
use crate::dual::DualCategory;
use crate::icc::{Icc, IccMorphism};
use crate::semigroup::{validate_table, Elem, FiniteSemigroup, Side};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semigroup(#[from] crate::semigroup::SemigroupError),
    #[error(transparent)]
    Category(#[from] crate::category::CategoryError),
    #[error(transparent)]
    Cone(#[from] crate::cone::ConeError),
    #[error(transparent)]
    Cross(#[from] CrossError),
    #[error("inconsistent artifact: {0}")]
    Mismatch(String),
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("artifacts serialise");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialise");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(s)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub order: usize,
    pub table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    /// Index of an adjoined identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
}

impl SemigroupJson {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        SemigroupJson {
            order: s.order(),
            table: s.rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect(),
            names: s.names().map(<[String]>::to_vec),
            one: s.has_adjoined_identity().then(|| s.order() - 1),
        }
    }

    pub fn to_semigroup(&self) -> Result<FiniteSemigroup, IoError> {
        if self.order != self.table.len() {
            return Err(IoError::Mismatch(format!("order {} but {} rows", self.order, self.table.len())));
        }
        let mut s = validate_table(&self.table)?;
        if let Some(n) = &self.names {
            s = s.with_names(n.clone())?;
        }
        if let Some(one) = self.one {
            s = s.mark_adjoined_identity(one)?;
        }
        Ok(s)
    }
}

pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup, IoError> {
    from_json::<SemigroupJson>(text)?.to_semigroup()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
    pub inclusion: bool,
}

/// A category with subobjects. When `semigroup` and `side` are present the
/// category is rebuilt as the ideal category and checked against the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub morphisms: Vec<MorphismJson>,
    /// `[f, g, f·g]` for every composable pair.
    pub compose: Vec<[MorId; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semigroup: Option<SemigroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

impl CategoryJson {
    pub fn from_category(cat: &SubobjectCategory) -> Self {
        let spec = cat.to_spec();
        let names = cat.morphism_names();
        let (semigroup, side) = match cat.backing() {
            Some(b) => {
                // the backing holds S^op for ℝ(S); store S itself
                let s = match b.side {
                    Side::Left => b.semigroup.clone(),
                    Side::Right => b.semigroup.opposite(),
                };
                (Some(SemigroupJson::from_semigroup(&s)), Some(b.side))
            }
            None => (None, None),
        };
        CategoryJson {
            objects: cat.object_names().to_vec(),
            leq: spec.leq,
            morphisms: spec
                .morphisms
                .iter()
                .zip(names)
                .map(|(&(dom, cod, inclusion), name)| MorphismJson { name: name.clone(), dom, cod, inclusion })
                .collect(),
            compose: spec.compose.iter().map(|&(f, g, h)| [f, g, h]).collect(),
            semigroup,
            side,
        }
    }

    fn spec(&self) -> CategorySpec {
        CategorySpec {
            leq: self.leq.clone(),
            morphisms: self.morphisms.iter().map(|m| (m.dom, m.cod, m.inclusion)).collect(),
            compose: self.compose.iter().map(|&[f, g, h]| (f, g, h)).collect(),
            object_names: Some(self.objects.clone()),
            morphism_names: Some(self.morphisms.iter().map(|m| m.name.clone()).collect()),
        }
    }

    pub fn to_category(&self) -> Result<SubobjectCategory, IoError> {
        match (&self.semigroup, self.side) {
            (Some(s), Some(side)) => {
                let cat = build_ideal_category(&s.to_semigroup()?, side);
                if cat.to_spec() != self.spec() {
                    return Err(IoError::Mismatch("category tables differ from the ideal category of the semigroup".into()));
                }
                Ok(cat)
            }
            (None, None) => Ok(SubobjectCategory::from_spec(self.spec())?),
            _ => Err(IoError::Mismatch("`semigroup` and `side` must be given together".into())),
        }
    }
}

pub fn parse_category(text: &str) -> Result<SubobjectCategory, IoError> {
    from_json::<CategoryJson>(text)?.to_category()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSetJson {
    pub mode: ConeMode,
    pub cones: Vec<Cone>,
    /// a ↦ index of ρ^a, for principal-cone sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<Vec<ConeId>>,
}

impl ConeSetJson {
    pub fn from_cones(cs: &ConeSemigroup) -> Self {
        ConeSetJson { mode: cs.mode, cones: cs.cones().to_vec(), principal: cs.principal().map(<[ConeId]>::to_vec) }
    }

    pub fn to_cones(&self, cat: &SubobjectCategory) -> Result<ConeSemigroup, IoError> {
        let cs = ConeSemigroup::from_cones(cat, self.mode, self.cones.clone(), self.principal.clone(), &Budget::unlimited())?;
        if cs.cones() != self.cones.as_slice() {
            return Err(IoError::Mismatch("cone list is not sorted and closed under products".into()));
        }
        Ok(cs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSideJson {
    pub category: CategoryJson,
    pub cones: ConeSetJson,
}

/// Ω = (C, D; Γ, Δ). Γ and Δ index the dual categories rebuilt from the cones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaJson {
    pub c: ConeSideJson,
    pub d: ConeSideJson,
    pub gamma: Functor,
    pub delta: Functor,
    pub e_omega: Vec<(ObjId, ObjId)>,
}

impl OmegaJson {
    pub fn from_omega(om: &CrossConnection) -> Self {
        let side = |s: &ConeSide| ConeSideJson {
            category: CategoryJson::from_category(&s.category),
            cones: ConeSetJson::from_cones(&s.cones),
        };
        OmegaJson {
            c: side(&om.c),
            d: side(&om.d),
            gamma: om.gamma.clone(),
            delta: om.delta.clone(),
            e_omega: om.e_omega().to_vec(),
        }
    }

    pub fn to_omega(&self) -> Result<CrossConnection, IoError> {
        let side = |s: &ConeSideJson| -> Result<ConeSide, IoError> {
            let category = s.category.to_category()?;
            let cones = s.cones.to_cones(&category)?;
            let dual = DualCategory::build(&category, &cones)?;
            Ok(ConeSide { category, cones, dual })
        };
        let om = CrossConnection::new(side(&self.c)?, side(&self.d)?, self.gamma.clone(), self.delta.clone())?;
        if om.e_omega() != self.e_omega.as_slice() {
            return Err(IoError::Mismatch("E_Ω differs from the recomputed one".into()));
        }
        Ok(om)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentJson {
    pub c: ObjId,
    pub d: ObjId,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SOmegaJson {
    pub pairs: Vec<(ConeId, ConeId)>,
    pub anchors: Vec<(ObjId, ObjId)>,
    pub semigroup: SemigroupJson,
    pub idempotents: Vec<IdempotentJson>,
}

impl SOmegaJson {
    pub fn from_somega(s: &SOmega) -> Self {
        SOmegaJson {
            pairs: s.pairs.clone(),
            anchors: s.anchors.clone(),
            semigroup: SemigroupJson::from_semigroup(&s.semigroup),
            idempotents: s.idempotent_of.iter().map(|(&(c, d), &element)| IdempotentJson { c, d, element }).collect(),
        }
    }

    /// Check against the linked semigroup recomputed from Ω.
    pub fn verify(&self, om: &CrossConnection) -> Result<SOmega, IoError> {
        let s = om.linked_semigroup()?;
        if SOmegaJson::from_somega(&s) != *self {
            return Err(IoError::Mismatch("linked pairs differ from those of Ω".into()));
        }
        self.semigroup.to_semigroup()?;
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiJson {
    /// a ↦ element of 𝕊Ω.
    pub phi: Vec<usize>,
    pub inverse: Vec<Elem>,
    pub isomorphism: bool,
    pub gamma_factorisation: bool,
    pub f_omega_iso: bool,
    pub g_omega_iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishedJson {
    pub e: usize,
    pub f: usize,
    pub morphism: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IccJson {
    pub objects: Vec<(ObjId, ObjId)>,
    pub idempotents: Vec<usize>,
    pub morphisms: Vec<IccMorphism>,
    pub order: Vec<(usize, usize)>,
    pub distinguished: Vec<DistinguishedJson>,
}

impl IccJson {
    pub fn from_icc(icc: &Icc) -> Self {
        IccJson {
            objects: icc.objects.clone(),
            idempotents: icc.idempotent.clone(),
            morphisms: icc.morphisms.clone(),
            order: icc.order.iter().copied().collect(),
            distinguished: icc
                .distinguished
                .iter()
                .map(|(&(e, f), &morphism)| DistinguishedJson { e, f, morphism })
                .collect(),
        }
    }

    /// Check against 𝓘(Ω) rebuilt from Ω and its linked semigroup.
    pub fn verify(&self, om: &CrossConnection, s: &SOmega) -> Result<Icc, IoError> {
        let icc = Icc::build(om, s)?;
        if IccJson::from_icc(&icc) != *self {
            return Err(IoError::Mismatch("𝓘(Ω) differs from the recomputed one".into()));
        }
        Ok(icc)
    }
}
