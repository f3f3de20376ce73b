use super::{describe_point, parse_list};
use crate::error::{domain, CliError};
use crate::scheme_file::{Code, SchemeFile};
use codedcache::codes::{
    build_block_vandermonde, build_crt_cyclic, build_cyclic, build_identity_band, build_mds, build_ring_band, build_spc, extend_ccp,
    extend_ccp_alpha, kron_identity, window_multiplier, GeneratorMatrix, Provenance,
};
use codedcache::gf::{Matrix, ScalarDomain};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[command(subcommand)]
    pub code: CodeSpec,
    /// Window width to certify (default: k + 1; k for a Kronecker product; k_min for a CRT code).
    #[arg(long, global = true)]
    pub alpha: Option<usize>,
    /// Scheme file to write; `-` writes it to stdout instead of the summary.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Subcommand)]
pub enum CodeSpec {
    /// Vandermonde (n, k) code on the first n field elements.
    Mds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
    },
    /// Cyclic code from a generator polynomial dividing X^n - 1.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Coefficients, constant term first.
        #[arg(long)]
        g: String,
    },
    /// Single parity check code [I_k | 1].
    Spc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
    },
    /// Vandermonde blocks of width alpha-cols, for alpha > z + 1.
    BlockVandermonde {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        alpha_cols: usize,
        #[arg(long)]
        q: u32,
    },
    /// Identity band for alpha = z + 1 over a field.
    IdentityBand {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        q: u32,
    },
    /// Identity band with z = 2 over Z/qZ.
    RingBand {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        q: u32,
    },
    /// Kronecker product of a stored code with I_t.
    Kron {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Prepend s copies of the leading columns of a stored code.
    Extend {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        s: usize,
        /// Number of leading columns copied (default: k + 1).
        #[arg(long)]
        width: Option<usize>,
    },
    /// CRT lift of cyclic codes over distinct prime fields to Z/qZ.
    Crt {
        #[arg(long)]
        n: usize,
        /// `p:g0,g1,...` per prime p; repeat for each component.
        #[arg(long = "component", required = true)]
        components: Vec<String>,
    },
    /// Explicit generator matrix.
    Matrix {
        #[arg(long)]
        q: u32,
        /// Rows separated by `;`, entries by `,`, e.g. `1,0,1,1;0,1,1,2`.
        #[arg(long)]
        rows: String,
    },
}

fn domain_of(q: u32) -> Result<ScalarDomain, CliError> {
    ScalarDomain::for_order(q).map_err(domain)
}

fn load_linear(path: &Path) -> Result<GeneratorMatrix, CliError> {
    match SchemeFile::load(path)?.1 {
        Code::Linear(g) => Ok(g),
        Code::Crt(_) => Err(CliError::domain("RequiresLinear", format!("{} holds a CRT code, not a generator matrix", path.display()))),
    }
}

pub fn build(spec: &CodeSpec) -> Result<Code, CliError> {
    let g = match spec {
        CodeSpec::Mds { n, k, q } => build_mds(*n, *k, &domain_of(*q)?),
        CodeSpec::Cyclic { n, q, g } => build_cyclic(*n, &parse_list(g, "--g")?, &domain_of(*q)?),
        CodeSpec::Spc { k, q } => build_spc(*k, &domain_of(*q)?),
        CodeSpec::BlockVandermonde { t, z, alpha_cols, q } => build_block_vandermonde(*t, *z, *alpha_cols, &domain_of(*q)?),
        CodeSpec::IdentityBand { t, z, q } => build_identity_band(*t, *z, &domain_of(*q)?),
        CodeSpec::RingBand { t, q } => build_ring_band(*t, &domain_of(*q)?),
        CodeSpec::Kron { base, t } => kron_identity(&load_linear(base)?, *t),
        CodeSpec::Extend { base, s, width } => {
            let base = load_linear(base)?;
            match width {
                Some(w) => extend_ccp_alpha(&base, *s, *w),
                None => extend_ccp(&base, *s),
            }
        }
        CodeSpec::Crt { n, components } => {
            let comps = components
                .iter()
                .map(|c| {
                    let (p, g) = c.split_once(':').ok_or_else(|| CliError::Usage(format!("--component `{c}` is not of the form p:g0,g1,...")))?;
                    let p = p.trim().parse().map_err(|_| CliError::Usage(format!("--component `{c}`: bad prime")))?;
                    Ok((parse_list(g, "--component")?, p))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            return Ok(Code::Crt(build_crt_cyclic(&comps, *n).map_err(domain)?));
        }
        CodeSpec::Matrix { q, rows } => {
            let d = domain_of(*q)?;
            let rows = rows.split(';').map(|r| parse_list(r, "--rows")).collect::<Result<Vec<Vec<u32>>, _>>()?;
            let m = Matrix::from_rows(&d, &rows).map_err(domain)?;
            GeneratorMatrix::new(m, Provenance::UserSupplied)
        }
    };
    Ok(Code::Linear(g.map_err(domain)?))
}

pub fn run(args: Args) -> Result<(), CliError> {
    let code = build(&args.code)?;
    let alpha = args.alpha.unwrap_or_else(|| code.default_alpha());
    let certs = code.certify(alpha)?;
    let satisfied = certs.iter().all(|c| c.satisfied);
    let file = SchemeFile::new(&code, certs)?;

    let params = code.params(alpha);
    let mut summary = String::new();
    summary += &format!("code: {}\n", code.describe());
    summary += &format!("provenance: {}\n", serde_json::to_string(&code.provenance()).expect("provenance serializes"));
    summary += &format!("alpha: {alpha} (z = {})\n", window_multiplier(code.n(), alpha));
    summary += &format!("certificate: {}\n", if satisfied { "satisfied" } else { "NOT satisfied" });
    summary += &format!("base point: {}\n", describe_point(&params.base_point()));
    summary += &format!("transposed point: {}\n", describe_point(&params.transposed_point()));

    match &args.out {
        Some(p) if p.as_os_str() == "-" => {
            std::io::stdout().write_all(file.to_toml().as_bytes()).map_err(|e| CliError::domain("Io", e.to_string()))?;
            eprint!("{summary}");
        }
        Some(p) => {
            file.save(p)?;
            println!("{summary}wrote {}", p.display());
        }
        None => print!("{summary}"),
    }
    if satisfied {
        Ok(())
    } else {
        Err(CliError::Failed(format!("the code does not have the window property at alpha = {alpha}")))
    }
}
