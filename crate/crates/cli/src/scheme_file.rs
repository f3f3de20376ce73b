//! Versioned TOML scheme files.
//!
//! ```toml
//! format_version = 1
//! generator = [[1, 0, 1, 1], [0, 1, 1, 2]]
//!
//! [domain]
//! kind = "field"
//! order = 3
//! characteristic = 3
//! degree = 1
//!
//! [provenance]
//! kind = "user_supplied"
//! ```
//!
//! A CRT scheme stores `[crt]` instead of `generator`. Elements are canonical
//! integer codes; extension-field elements are base-p digit integers with the
//! defining polynomial in `domain.modulus`, constant term first.

use crate::error::{domain, io, CliError};
use codedcache::caching::SchemeParams;
use codedcache::codes::{build_crt_cyclic, check_ccp, check_ccp_cyclic_shortcut, CcpCertificate, CheckMethod, CrtCyclicCode, GeneratorMatrix, Provenance};
use codedcache::design::CodewordMatrix;
use codedcache::gf::{DomainKind, Matrix, ScalarDomain};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

/// Codes with at most this many codewords get a design digest.
const DIGEST_MAX_POINTS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub order: u32,
    pub characteristic: u32,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtComponent {
    pub modulus: u32,
    pub gen_poly: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtSpec {
    pub n: usize,
    pub components: Vec<CrtComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digests {
    /// SHA-256 of the codeword array, row by row, each entry as little-endian `u32`.
    pub design_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<u32>>>,
    pub domain: DomainSpec,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crt: Option<CrtSpec>,
    /// Window certificate of a linear code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CcpCertificate>,
    /// One certificate per CRT component, all at the same `alpha`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub component_certificates: Vec<CcpCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digests: Option<Digests>,
}

/// A loaded code: either a generator matrix or a CRT codeword source.
#[derive(Debug, Clone)]
pub enum Code {
    Linear(GeneratorMatrix),
    Crt(CrtCyclicCode),
}

impl Code {
    pub fn n(&self) -> usize {
        match self {
            Code::Linear(g) => g.n(),
            Code::Crt(c) => c.n(),
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            Code::Linear(g) => g.q(),
            Code::Crt(c) => c.modulus(),
        }
    }

    pub fn num_points(&self) -> BigUint {
        match self {
            Code::Linear(g) => BigUint::from(g.q()).pow(g.k() as u32),
            Code::Crt(c) => BigUint::from(c.num_codewords()),
        }
    }

    pub fn provenance(&self) -> Provenance {
        match self {
            Code::Linear(g) => g.provenance().clone(),
            Code::Crt(c) => c.provenance(),
        }
    }

    /// `k` for a Kronecker product with an identity, `k + 1` for other
    /// linear codes, `k_min` for a CRT code.
    pub fn default_alpha(&self) -> usize {
        match self {
            Code::Linear(g) if matches!(g.provenance(), Provenance::KronIdentity { .. }) => g.k(),
            Code::Linear(g) => g.k() + 1,
            Code::Crt(c) => c.k_min(),
        }
    }

    pub fn params(&self, alpha: usize) -> SchemeParams {
        SchemeParams::new(self.n(), self.q() as usize, alpha, self.num_points())
    }

    pub fn codeword_matrix(&self) -> Result<CodewordMatrix, CliError> {
        match self {
            Code::Linear(g) => CodewordMatrix::from_generator(g),
            Code::Crt(c) => CodewordMatrix::from_crt(c),
        }
        .map_err(domain)
    }

    pub fn describe(&self) -> String {
        let alphabet = match self {
            Code::Linear(g) if g.domain().is_field() => format!("GF({})", g.q()),
            _ => format!("Z/{}Z", self.q()),
        };
        match self {
            Code::Linear(g) => format!("({}, {}) code over {alphabet}", g.n(), g.k()),
            Code::Crt(c) => format!(
                "length-{} CRT code over {alphabet} with component dimensions {:?}",
                c.n(),
                c.components().iter().map(GeneratorMatrix::k).collect::<Vec<_>>()
            ),
        }
    }

    /// Exhaustive certificates at `alpha`: one for a linear code, one per component for a CRT code.
    pub fn certify(&self, alpha: usize) -> Result<Vec<CcpCertificate>, CliError> {
        match self {
            Code::Linear(g) => Ok(vec![check_ccp(g, alpha).map_err(domain)?]),
            Code::Crt(c) => c.components().iter().map(|g| check_ccp(g, alpha).map_err(domain)).collect(),
        }
    }
}

pub fn domain_spec(d: &ScalarDomain) -> DomainSpec {
    DomainSpec {
        kind: d.kind(),
        order: d.order(),
        characteristic: d.characteristic(),
        degree: d.degree(),
        modulus: if d.degree() > 1 { d.modulus().to_vec() } else { Vec::new() },
    }
}

fn load_domain(spec: &DomainSpec) -> Result<ScalarDomain, CliError> {
    let d = match spec.kind {
        DomainKind::Ring => ScalarDomain::ring(spec.order),
        DomainKind::Field if spec.degree > 1 => ScalarDomain::extension(spec.characteristic, spec.degree, spec.modulus.clone()),
        DomainKind::Field => ScalarDomain::field(spec.order),
    }
    .map_err(domain)?;
    if domain_spec(&d) != *spec {
        return Err(CliError::domain("InconsistentDomain", format!("domain descriptor {spec:?} is inconsistent")));
    }
    Ok(d)
}

fn design_digest(code: &Code) -> Result<Option<Digests>, CliError> {
    let small = code.num_points() <= BigUint::from(DIGEST_MAX_POINTS);
    if !small {
        return Ok(None);
    }
    let t = code.codeword_matrix()?;
    let mut h = Sha256::new();
    for row in t.to_rows() {
        for v in row {
            h.update(v.to_le_bytes());
        }
    }
    Ok(Some(Digests { design_sha256: hex::encode(h.finalize()) }))
}

/// Recomputes `cert` with the method it records.
fn replay(g: &GeneratorMatrix, cert: &CcpCertificate) -> Result<CcpCertificate, CliError> {
    match cert.method {
        CheckMethod::Exhaustive => check_ccp(g, cert.alpha),
        CheckMethod::CyclicShortcut => check_ccp_cyclic_shortcut(g),
    }
    .map_err(domain)
}

impl SchemeFile {
    /// File contents for `code` with certificates `certs` (see [`Code::certify`]).
    pub fn new(code: &Code, certs: Vec<CcpCertificate>) -> Result<Self, CliError> {
        let digests = design_digest(code)?;
        Ok(match code {
            Code::Linear(g) => SchemeFile {
                format_version: FORMAT_VERSION,
                generator: Some(g.matrix().to_rows()),
                domain: domain_spec(g.domain()),
                provenance: g.provenance().clone(),
                crt: None,
                certificate: certs.into_iter().next(),
                component_certificates: Vec::new(),
                digests,
            },
            Code::Crt(c) => SchemeFile {
                format_version: FORMAT_VERSION,
                generator: None,
                domain: domain_spec(&ScalarDomain::ring(c.modulus()).map_err(domain)?),
                provenance: c.provenance(),
                crt: Some(CrtSpec {
                    n: c.n(),
                    components: c
                        .components()
                        .iter()
                        .map(|g| CrtComponent {
                            modulus: g.q(),
                            gen_poly: match g.provenance() {
                                Provenance::Cyclic { gen_poly } => gen_poly.clone(),
                                _ => unreachable!("CRT components are cyclic"),
                            },
                        })
                        .collect(),
                }),
                certificate: None,
                component_certificates: certs,
                digests,
            },
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scheme files serialize")
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_toml()).map_err(|e| io(path, e))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let f: SchemeFile = toml::from_str(text).map_err(|e| CliError::domain("Parse", e.to_string()))?;
        if f.format_version != FORMAT_VERSION {
            return Err(CliError::domain("Parse", format!("unsupported format_version {}", f.format_version)));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<(Self, Code), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io(path, e))?;
        let f = Self::parse(&text).map_err(|e| CliError::domain("Parse", format!("{}: {e}", path.display())))?;
        let code = f.code()?;
        Ok((f, code))
    }

    /// Rebuilds the code and checks every stored certificate and digest against it.
    pub fn code(&self) -> Result<Code, CliError> {
        let d = load_domain(&self.domain)?;
        let code = match (&self.generator, &self.crt) {
            (Some(rows), None) => {
                let m = Matrix::from_rows(&d, rows).map_err(|e| CliError::domain("Parse", format!("generator: {e}")))?;
                Code::Linear(GeneratorMatrix::new(m, self.provenance.clone()).map_err(domain)?)
            }
            (None, Some(spec)) => {
                let comps: Vec<(Vec<u32>, u32)> = spec.components.iter().map(|c| (c.gen_poly.clone(), c.modulus)).collect();
                let c = build_crt_cyclic(&comps, spec.n).map_err(domain)?;
                if c.modulus() != self.domain.order {
                    return Err(CliError::domain("Parse", "CRT moduli do not multiply to the domain order"));
                }
                Code::Crt(c)
            }
            _ => return Err(CliError::domain("Parse", "exactly one of `generator` and `crt` must be present")),
        };
        if let (Code::Linear(g), Some(cert)) = (&code, &self.certificate) {
            if replay(g, cert)? != *cert {
                return Err(CliError::domain("CertificateMismatch", "stored certificate does not replay against the generator"));
            }
        }
        if let Code::Crt(c) = &code {
            if !self.component_certificates.is_empty() {
                let ok = self.component_certificates.len() == c.components().len()
                    && c.components().iter().zip(&self.component_certificates).all(|(g, cert)| replay(g, cert).ok().as_ref() == Some(cert));
                if !ok {
                    return Err(CliError::domain("CertificateMismatch", "stored component certificates do not replay"));
                }
            }
        }
        if let Some(stored) = &self.digests {
            if design_digest(&code)?.as_ref() != Some(stored) {
                return Err(CliError::domain("DigestMismatch", "stored design digest does not match the code"));
            }
        }
        Ok(code)
    }
}
