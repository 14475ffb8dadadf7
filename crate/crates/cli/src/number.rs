/// `value` rounded to six significant digits, trailing zeros dropped.
pub fn sig6(value: f64) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    if (-5..6).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        trim(format!("{value:.decimals$}"))
    } else {
        let s = format!("{value:.5e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
