use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use onb_core::exact::{
    gram_schmidt_oracle, ortho_double_sum, sturm_residual, SturmLiouvilleData, EXACT_MAX_DEGREE,
};
use onb_core::{onb_coeffs, Error};
use serde::Serialize;

use crate::args::{Identity, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::output::Sink;

#[derive(Serialize)]
struct Check {
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    j: usize,
    #[serde(flatten)]
    detail: Detail,
    pass: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Detail {
    Ortho { value: String, expected: String },
    Sturm { lambda: String, residual: String },
    Gram { ratio: String, sq_norm: String },
}

#[derive(Serialize)]
struct Verdict {
    identity: &'static str,
    n: usize,
    pass: bool,
    failures: usize,
    checks: Vec<Check>,
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let n = args.n;
    if n > EXACT_MAX_DEGREE {
        return Err(Error::Capability(format!(
            "degree {n} exceeds the exact-verification limit {EXACT_MAX_DEGREE}"
        ))
        .into());
    }
    let (identity, checks) = match args.identity {
        Identity::Ortho => ("orthonormality", ortho(n)?),
        Identity::Sturm => ("sturm-liouville", sturm(n)?),
        Identity::Gram => ("gram-schmidt", gram(n)?),
    };
    let failures = checks.iter().filter(|c| !c.pass).count();
    let verdict = Verdict {
        identity,
        n,
        pass: failures == 0,
        failures,
        checks,
    };
    Sink::open(args.output.as_deref())?.write_json(&verdict)?;
    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} {identity} checks failed for n={n}"
        )));
    }
    Ok(())
}

fn ortho(n: usize) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let value = ortho_double_sum(n, i, j)?;
            let expected = if i == j {
                BigRational::new(1.into(), BigInt::from(2 * (n - i) + 1))
            } else {
                BigRational::zero()
            };
            out.push(Check {
                i: Some(i),
                j,
                pass: value == expected,
                detail: Detail::Ortho {
                    value: value.to_string(),
                    expected: expected.to_string(),
                },
            });
        }
    }
    Ok(out)
}

fn sturm(n: usize) -> CliResult<Vec<Check>> {
    (0..=n)
        .map(|j| {
            let residual = sturm_residual(n, j)?;
            let lambda = SturmLiouvilleData::new(n, j)?.lambda;
            Ok(Check {
                i: None,
                j,
                pass: residual.is_zero(),
                detail: Detail::Sturm {
                    lambda: lambda.to_string(),
                    residual: residual.to_string(),
                },
            })
        })
        .collect()
}

/// Each Gram–Schmidt polynomial must be a positive multiple `c` of the closed
/// form with `c^2 = |v_j|^2 (2(n-j)+1)`.
fn gram(n: usize) -> CliResult<Vec<Check>> {
    let gs = gram_schmidt_oracle(n)?;
    (0..=n)
        .map(|j| {
            let closed = onb_coeffs(n, j)?.power;
            let norm = &gs.sq_norms[j];
            let ratio = gs.polys[j].ratio_to(&closed);
            let pass = ratio.as_ref().is_some_and(|c| {
                c.is_positive()
                    && c * c == norm * BigRational::from_integer(BigInt::from(2 * (n - j) + 1))
            });
            Ok(Check {
                i: None,
                j,
                pass,
                detail: Detail::Gram {
                    ratio: ratio.map_or_else(|| "none".into(), |c| c.to_string()),
                    sq_norm: norm.to_string(),
                },
            })
        })
        .collect()
}
