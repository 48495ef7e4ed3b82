//! Per-sample CSV trace of the drive, spectrum and phase density.

use std::io::{self, Write};

use berrylab::{connection_decomposition, eigenvalues, Branch, FieldSpec, TwoLevelParams};

/// Column header of the trace table.
pub const HEADER: &str =
    "t,re_d,im_d,abs_d,phase,lambda_plus,lambda_minus,integrand_upper,integrand_lower";

/// Write `samples` uniform rows over one period: time, drive value, modulus,
/// polar phase (empty where undefined), both eigenvalues and the geometric
/// integrand `Im(D̄Ḋ)/F_l` of each branch. Floats carry 17 significant
/// digits so rows diff cleanly and round-trip bit-exactly.
pub fn write_trace<W: Write>(
    writer: &mut W,
    spec: &FieldSpec,
    params: &TwoLevelParams,
    samples: usize,
) -> io::Result<()> {
    writeln!(writer, "{HEADER}")?;
    let period = spec.period();
    let h = period / samples as f64;
    for k in 0..samples {
        let t = k as f64 * h;
        let s = spec.drive(params, t);
        let (lambda_minus, lambda_plus) = eigenvalues(params, s.value);
        let upper = connection_decomposition(spec, params, Branch::Upper, t).geometric_part;
        let lower = connection_decomposition(spec, params, Branch::Lower, t).geometric_part;
        let phase = s
            .phase
            .map(|p| format!("{p:.17e}"))
            .unwrap_or_default();
        writeln!(
            writer,
            "{t:.17e},{:.17e},{:.17e},{:.17e},{phase},{lambda_plus:.17e},{lambda_minus:.17e},{upper:.17e},{lower:.17e}",
            s.value.re, s.value.im, s.modulus
        )?;
    }
    Ok(())
}
