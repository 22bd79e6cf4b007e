//! Σ-notation rendering, terms in residue order.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{FactorialSeries, Formula, SeriesForm};
use crate::scalar::{format_gaussian, format_rational, GaussianRational, Rational};
use crate::tag::ConstantTag;

trait Coeff {
    fn is_zero_c(&self) -> bool;
    fn is_one_c(&self) -> bool;
    /// Text and whether it needs a leading sign of its own.
    fn term(&self) -> (bool, String);
    fn plain(&self) -> String;
}

impl Coeff for Rational {
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn is_one_c(&self) -> bool {
        self.is_one()
    }
    fn term(&self) -> (bool, String) {
        let a = self.abs();
        let s = if a.is_integer() { format_rational(&a) } else { format!("({})", format_rational(&a)) };
        (self.is_negative(), s)
    }
    fn plain(&self) -> String {
        format_rational(self)
    }
}

impl Coeff for GaussianRational {
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn is_one_c(&self) -> bool {
        self.is_one()
    }
    fn term(&self) -> (bool, String) {
        if self.im.is_zero() {
            return self.re.term();
        }
        (false, format!("({})", format_gaussian(self)))
    }
    fn plain(&self) -> String {
        format_gaussian(self)
    }
}

fn lhs(re: &ConstantTag, im: &ConstantTag) -> String {
    if im.is_zero() {
        re.to_string()
    } else {
        format!("({}) + i·({})", re, im)
    }
}

fn denominator(period: usize, shift: usize) -> String {
    match (period, shift) {
        (1, 0) => "k".into(),
        (1, s) => format!("k+{s}"),
        (m, 0) => format!("{m}k"),
        (m, s) => format!("{m}k+{s}"),
    }
}

fn render<T: Coeff>(f: &Formula<T>, r0: &T, r1: &T) -> String {
    let mut out = format!("{} = ", lhs(&f.target, &f.imag_target));
    let mut lead = false;
    if !r0.is_zero_c() {
        out += &r0.plain();
        lead = true;
    }
    let (neg1, s1) = r1.term();
    let op = match (lead, neg1) {
        (true, true) => " - ",
        (true, false) => " + ",
        (false, true) => "-",
        (false, false) => "",
    };
    out += op;
    if !r1.is_one_c() {
        out += &s1;
        out += "·";
    }
    let power = if f.base.is_one() {
        String::new()
    } else if (-&f.base).is_one() {
        "(-1)^k ".to_string()
    } else if f.base.is_negative() {
        format!("({})^(-k) ", f.base)
    } else {
        format!("{}^(-k) ", f.base)
    };
    out += &format!("Σ_{{k≥{}}} {power}(", f.start);
    let mut first = true;
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero_c() {
            continue;
        }
        let (neg, s) = c.term();
        let sign = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out += &format!("{sign}{s}/({})", denominator(f.period, f.offset as usize + i));
        first = false;
    }
    if first {
        out += "0";
    }
    out + ")"
}

impl fmt::Display for Formula<Rational> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(&render(self, &self.r0, &self.r1))
    }
}

impl fmt::Display for Formula<GaussianRational> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(&render(self, &self.r0, &self.r1))
    }
}

impl fmt::Display for FactorialSeries {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, alternating) = self.display_factor();
        write!(fm, "{} = ", self.target)?;
        let mut lead = false;
        if !self.r0.is_zero() {
            write!(fm, "{}", format_rational(&self.r0))?;
            lead = true;
        }
        let (neg, s) = c.term();
        match (lead, neg) {
            (true, true) => write!(fm, " - ")?,
            (true, false) => write!(fm, " + ")?,
            (false, true) => write!(fm, "-")?,
            (false, false) => {}
        }
        if !c.abs().is_one() {
            write!(fm, "{s}·")?;
        }
        let q = self.ratio.abs().recip();
        let num = if alternating { "(-1)^(j+1)" } else { "1" };
        let power = if q.is_one() { String::new() } else { format!("{}^j·", format_rational(&q)) };
        let prod: Vec<String> = (0..self.order).map(|i| if i == 0 { "j".to_string() } else { format!("(j+{i})") }).collect();
        write!(fm, "Σ_{{j≥1}} {num}/({power}{})", prod.join(""))
    }
}

impl fmt::Display for SeriesForm {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = GaussianRational::one() - self.s.clone();
        let (neg, r1) = self.r1.term();
        write!(
            fm,
            "{} = {} {} {}·Σ_{{j≥0}} ({})^(j+{n}) / ((j+1)…(j+{n}))",
            lhs(&self.target, &self.imag_target),
            format_gaussian(&self.r0),
            if neg { "-" } else { "+" },
            r1,
            format_gaussian(&x),
            n = self.n
        )?;
        if self.conditional {
            write!(fm, "  [conditionally convergent]")?;
        }
        Ok(())
    }
}
