use serde_json::{Number, Value};

/// Significant digits in every floating-point output.
pub const SIG_DIGITS: usize = 12;

/// `x` with 12 significant digits, ties to even. Plain notation for
/// exponents in `[-5, 12)`, scientific otherwise; zero is `0.000000000000`.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("0.{}", "0".repeat(SIG_DIGITS));
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    let body = if (0..SIG_DIGITS as i32).contains(&exp) {
        let split = exp as usize + 1;
        if split == digits.len() {
            digits
        } else {
            format!("{}.{}", &digits[..split], &digits[split..])
        }
    } else if (-5..0).contains(&exp) {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        format!("{}.{}e{}", &digits[..1], &digits[1..], exp)
    };
    format!("{sign}{body}")
}

/// JSON value for a float: a number carrying exactly the [`sig`] text, or a
/// string for non-finite values.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(sig(x));
    }
    Value::Number(sig(x).parse::<Number>().expect("sig output is a valid JSON number"))
}

pub fn num_opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}
