//! Enumeration of the moduli space `P¹ ∖ ({1, 2, ∞} ∪ Z)` over 𝔽p, census
//! tables across λ, and universal-family fibers.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::freykani::{
    build_cover_map, derive_params, record_json, verify_all, z_quartic, CheckReport, CoverError,
    CoverParams, Genus2Cover, LegendreCurve, Membership, RamificationPattern, Sign,
};

#[derive(Debug, Error)]
pub enum ModuliError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("enumeration needs a prime field")]
    RationalsUnsupported,
    #[error("membership criteria disagree at p1 = {0}")]
    CriterionMismatch(String),
    #[error("count invariant violated for lambda = {0}")]
    CountInvariant(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub field: Field,
    pub lambda: FieldElement,
    /// Roots of the Z quartic in 𝔽p, ascending.
    pub z_roots: Vec<FieldElement>,
    /// Admissible p₁, ascending.
    pub admissible: Vec<FieldElement>,
    /// Admissible p₁ among {0, 3, 3/2}.
    pub degenerate: Vec<FieldElement>,
}

impl ModuliReport {
    pub fn count(&self) -> usize {
        self.admissible.len()
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus().expect("prime field")
    }

    fn residues(v: &[FieldElement]) -> Vec<u64> {
        v.iter().map(|e| e.residue_value().unwrap()).collect()
    }

    /// Residues are written as plain integers; `p` fixes the field.
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.prime(),
            "lambda": self.lambda.residue_value().unwrap(),
            "count": self.count(),
            "z_roots": Self::residues(&self.z_roots),
            "admissible": Self::residues(&self.admissible),
            "degenerate": Self::residues(&self.degenerate),
        })
    }

    fn csv_row(&self) -> [String; 5] {
        let join = |v: &[FieldElement]| {
            Self::residues(v)
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        [
            self.lambda.to_string(),
            self.prime().to_string(),
            self.count().to_string(),
            join(&self.z_roots),
            join(&self.degenerate),
        ]
    }
}

/// Exhaustive scan of 𝔽p for one λ.
///
/// Each residue is classified twice, by the Z quartic and by squarefreeness
/// of `g(1, x)`; any disagreement is reported as an error.
pub fn enumerate(lambda: &FieldElement) -> Result<ModuliReport, ModuliError> {
    let curve = LegendreCurve::new(lambda.clone())?;
    let field = curve.field();
    let p = field.modulus().ok_or(ModuliError::RationalsUnsupported)?;
    let q = z_quartic(lambda);
    let one = field.one();
    let two = field.int(2);
    if q.eval(&one) != -lambda || q.eval(&two) != lambda - &one {
        return Err(ModuliError::CountInvariant(lambda.to_string()));
    }
    let degenerate_candidates = [field.zero(), field.int(3), field.ratio(3, 2).map_err(CoverError::from)?];

    let mut z_roots = Vec::new();
    let mut admissible = Vec::new();
    for t in field.elements().unwrap() {
        let in_z = q.eval(&t).is_zero();
        if in_z {
            z_roots.push(t.clone());
        }
        if t == one || t == two {
            continue;
        }
        let g = derive_params(lambda, &t)?.g();
        let g_ok = g.degree() == Some(3) && g.is_squarefree().map_err(CoverError::from)?;
        if g_ok == in_z {
            return Err(ModuliError::CriterionMismatch(t.to_string()));
        }
        if !in_z {
            admissible.push(t);
        }
    }
    if admissible.len() as u64 != p - 2 - z_roots.len() as u64 {
        return Err(ModuliError::CountInvariant(lambda.to_string()));
    }
    let mut degenerate: Vec<FieldElement> = degenerate_candidates
        .into_iter()
        .filter(|t| admissible.contains(t))
        .collect();
    degenerate.sort();
    degenerate.dedup();
    Ok(ModuliReport {
        field,
        lambda: lambda.clone(),
        z_roots,
        admissible,
        degenerate,
    })
}

#[derive(Debug, Clone)]
pub enum Lambdas {
    All,
    List(Vec<FieldElement>),
}

/// One report per λ, ordered by λ.
pub fn census(field: Field, lambdas: &Lambdas) -> Result<Vec<ModuliReport>, ModuliError> {
    if field.is_rationals() {
        return Err(ModuliError::RationalsUnsupported);
    }
    let mut ls: Vec<FieldElement> = match lambdas {
        Lambdas::All => field
            .elements()
            .unwrap()
            .filter(|l| !l.is_zero() && !l.is_one())
            .collect(),
        Lambdas::List(v) => v.clone(),
    };
    ls.sort();
    ls.dedup();
    ls.iter().map(enumerate).collect()
}

/// A fiber of the universal family with every verifier's verdict.
#[derive(Debug, Clone)]
pub struct FamilyFiber {
    pub params: CoverParams,
    pub cover: Genus2Cover,
    pub checks: CheckReport,
    pub pattern: RamificationPattern,
}

impl FamilyFiber {
    pub fn all_passed(&self) -> bool {
        self.checks.all_passed()
    }

    pub fn to_json(&self) -> Value {
        let mut rec = record_json(&self.params, Some(&self.cover), &self.checks);
        rec.as_object_mut().unwrap().insert(
            "degenerate".into(),
            if self.pattern.is_degenerate() {
                json!(self.pattern.as_str())
            } else {
                Value::Null
            },
        );
        rec
    }
}

pub fn family_fiber(lambda: &FieldElement, p1: &FieldElement) -> Result<FamilyFiber, ModuliError> {
    let params = derive_params(lambda, p1)?;
    if params.membership != Membership::InModuli {
        return Err(CoverError::NotInModuli(params.membership).into());
    }
    let cover = build_cover_map(&params, Sign::Plus)?;
    let (checks, pattern) = verify_all(&params, Sign::Plus)?;
    Ok(FamilyFiber {
        params,
        cover,
        checks,
        pattern,
    })
}

/// Fibers over every admissible p₁ in 𝔽p.
pub fn family(lambda: &FieldElement) -> Result<Vec<FamilyFiber>, ModuliError> {
    enumerate(lambda)?
        .admissible
        .iter()
        .map(|t| family_fiber(lambda, t))
        .collect()
}

pub fn render(reports: &[ModuliReport], format: ExportFormat) -> Result<String, ModuliError> {
    match format {
        ExportFormat::Json => {
            let v = match reports {
                [one] => one.to_json(),
                many => Value::Array(many.iter().map(ModuliReport::to_json).collect()),
            };
            Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
        }
        ExportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["lambda", "p", "count", "z_roots", "degenerate"])?;
            for r in reports {
                w.write_record(r.csv_row())?;
            }
            let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("ascii"))
        }
    }
}

pub fn export(reports: &[ModuliReport], format: ExportFormat, path: &Path) -> Result<(), ModuliError> {
    let text = render(reports, format)?;
    fs::write(path, text).map_err(|source| ModuliError::Io {
        path: path.display().to_string(),
        source,
    })
}
