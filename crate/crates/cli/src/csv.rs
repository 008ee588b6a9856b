//! CSV output: `t,re_amp,im_amp,occupation[,re_ref,im_ref]`, LF endings,
//! 17 significant digits.

use std::fmt::Write as _;

use mirrorlab::{Complex64, TimeSeries};

fn number(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").expect("writing to a String cannot fail");
}

/// Renders the first trace of `series`, with an optional reference column
/// pair sampled on the same grid.
pub fn render(series: &TimeSeries, reference: Option<&[Complex64]>) -> String {
    let mut out = String::from("t,re_amp,im_amp,occupation");
    if reference.is_some() {
        out.push_str(",re_ref,im_ref");
    }
    out.push('\n');
    for (i, (t, a)) in series.times().into_iter().zip(series.amplitude()).enumerate() {
        number(&mut out, t);
        for x in [a.re, a.im, a.norm_sqr()] {
            out.push(',');
            number(&mut out, x);
        }
        if let Some(r) = reference {
            out.push(',');
            number(&mut out, r[i].re);
            out.push(',');
            number(&mut out, r[i].im);
        }
        out.push('\n');
    }
    out
}
