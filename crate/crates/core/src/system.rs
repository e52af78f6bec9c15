use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::mpoly::{EvalSet, MultiPoly};

/// An instance: generators `P_1..P_m`, target `Q` and evaluation set `X`.
///
/// Optional per-generator value sets (`images`) allow construction over
/// domains that are not enumerated; `X` then serves as a verification sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    field: FieldDesc,
    nvars: usize,
    generators: Vec<MultiPoly>,
    target: MultiPoly,
    domain: EvalSet,
    images: Option<Vec<Vec<FieldElem>>>,
}

impl PolySystem {
    pub fn new(
        field: &FieldDesc,
        nvars: usize,
        generators: Vec<MultiPoly>,
        target: MultiPoly,
        domain: EvalSet,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for p in generators.iter().chain(core::iter::once(&target)) {
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
            if p.nvars() != nvars {
                return Err(Error::NvarsMismatch(p.nvars(), nvars));
            }
        }
        if generators.iter().all(MultiPoly::is_zero) && target.is_zero() {
            return Err(Error::ZeroSystem);
        }
        if let EvalSet::Points(pts) = &domain {
            EvalSet::explicit(field, nvars, pts.clone())?;
        }
        Ok(PolySystem { field: field.clone(), nvars, generators, target, domain, images: None })
    }

    /// Attaches user-supplied value sets, one per generator. Each is
    /// deduplicated and sorted canonically.
    pub fn with_images(mut self, images: Vec<Vec<FieldElem>>) -> Result<Self> {
        if images.len() != self.generators.len() {
            return Err(Error::ImageCount { expected: self.generators.len(), got: images.len() });
        }
        let mut clean = Vec::with_capacity(images.len());
        for mut set in images {
            if set.is_empty() {
                return Err(Error::EmptyValueSet);
            }
            if set.iter().any(|v| !self.field.contains(v)) {
                return Err(Error::FieldMismatch);
            }
            set.sort();
            set.dedup();
            clean.push(set);
        }
        self.images = Some(clean);
        Ok(self)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn m(&self) -> usize {
        self.generators.len()
    }

    pub fn target(&self) -> &MultiPoly {
        &self.target
    }

    pub fn domain(&self) -> &EvalSet {
        &self.domain
    }

    pub fn images(&self) -> Option<&[Vec<FieldElem>]> {
        self.images.as_deref()
    }

    /// `d`: the largest total degree among the generators and the target.
    pub fn d(&self) -> u64 {
        self.generators
            .iter()
            .chain(core::iter::once(&self.target))
            .filter_map(|p| p.total_degree().finite())
            .max()
            .expect("nonzero system")
    }
}
