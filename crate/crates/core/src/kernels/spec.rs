use super::{make_kernel, KernelId, Modulation, WeightKernel};
use crate::error::{domain, Error, Result};

fn number(key: &str, value: &str) -> Result<f64> {
    value.trim().parse::<f64>().map_err(|_| domain(format!("{key}: cannot parse `{value}` as a number")))
}

/// Parses a kernel spec such as `jacobi:alpha=1,beta=2` or
/// `tent:cosh=0.5:pow=2`.
///
/// Segments are separated by `:`. The first names the kernel, later ones
/// hold comma-separated `key=value` pairs. Parameter keys are `alpha`,
/// `beta` and `lambda`; `cosh`, `sinh` and `pow` append modulations in the
/// order given.
pub fn parse_kernel(spec: &str) -> Result<WeightKernel> {
    let mut segments = spec.trim().split(':');
    let name = segments.next().unwrap_or("").trim().to_ascii_lowercase();
    let mut alpha = None;
    let mut beta = None;
    let mut lambda = None;
    let mut mods = Vec::new();
    for seg in segments {
        for pair in seg.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| domain(format!("expected key=value in `{pair}`")))?;
            let key = key.trim().to_ascii_lowercase();
            match key.as_str() {
                "alpha" | "a" => alpha = Some(number(&key, value)?),
                "beta" | "b" => beta = Some(number(&key, value)?),
                "lambda" | "l" => lambda = Some(number(&key, value)?),
                "cosh" => mods.push(Modulation::Cosh(number(&key, value)?)),
                "sinh" => mods.push(Modulation::Sinh(number(&key, value)?)),
                "pow" => {
                    let k = value
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| domain(format!("pow must be a nonnegative integer, got `{value}`")))?;
                    mods.push(Modulation::Power(k));
                }
                _ => return Err(domain(format!("unknown kernel parameter `{key}`"))),
            }
        }
    }
    let need = |v: Option<f64>, key: &str| v.ok_or_else(|| domain(format!("kernel `{name}` needs `{key}`")));
    let unexpected = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(domain(format!("kernel `{name}` got an unexpected parameter")))
        }
    };
    let id = match name.as_str() {
        "gaussian" => {
            unexpected(alpha.is_none() && beta.is_none() && lambda.is_none())?;
            KernelId::Gaussian
        }
        "laguerre" => {
            unexpected(beta.is_none() && lambda.is_none())?;
            KernelId::Laguerre { alpha: alpha.unwrap_or(0.0) }
        }
        "jacobi" => {
            unexpected(lambda.is_none())?;
            KernelId::Jacobi { alpha: need(alpha, "alpha")?, beta: need(beta, "beta")? }
        }
        "gegenbauer" => {
            unexpected(alpha.is_none() && beta.is_none())?;
            KernelId::Gegenbauer { lambda: need(lambda, "lambda")? }
        }
        "box" | "unitbox" | "tent" | "riemann-phi" | "phi" => {
            unexpected(alpha.is_none() && beta.is_none() && lambda.is_none())?;
            match name.as_str() {
                "box" => KernelId::Box,
                "unitbox" => KernelId::UnitBox,
                "tent" => KernelId::Tent,
                _ => KernelId::RiemannPhi,
            }
        }
        "ujacobi" => {
            unexpected(lambda.is_none())?;
            KernelId::UJacobi { alpha: need(alpha, "alpha")?, beta: need(beta, "beta")? }
        }
        _ => return Err(Error::UnknownKernel(name)),
    };
    let mut k = make_kernel(id)?;
    for m in mods {
        k = k.modulate(m)?;
    }
    Ok(k)
}
