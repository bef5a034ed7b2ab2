use crate::chargeom::{Char, Sextuple};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

use super::expr::{big_f, big_theta, f, theta, y, Expr, Form};
use super::registry::{f_index, FormRegistry};

/// An identity `lhs = rhs` between modular forms.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub label: String,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Evaluate in `W = 2Z`, where the truncation reaches twice as far.
    pub in_2z: bool,
}

impl Relation {
    fn new(id: &str, label: &str, lhs: Expr, rhs: Expr) -> Self {
        Relation { id: id.into(), label: label.into(), lhs, rhs, in_2z: false }
    }

    /// Both sides are homogeneous of the same weight.
    pub fn is_weight_balanced(&self) -> bool {
        matches!((self.lhs.half_weight(), self.rhs.half_weight()), (Some(a), Some(b)) if a == b)
    }

    pub fn residual(&self, reg: &FormRegistry) -> QSeries {
        if self.in_2z {
            let l = reg.eval_in_2z(&self.lhs).expect("relation in second-kind thetas");
            let r = reg.eval_in_2z(&self.rhs).expect("relation in second-kind thetas");
            return l - r;
        }
        reg.eval(&self.lhs) - reg.eval(&self.rhs)
    }
}

fn y_sum() -> Expr {
    Expr::sum((0..5).map(y))
}

fn y_quadratic(sign34: i64) -> Expr {
    y(0) * y(1) + y(0) * y(2) + y(1) * y(2) + sign34 * (y(3) * y(4))
}

fn igusa_quartic(coeff: i64) -> Relation {
    Relation::new(
        "igusa_quartic",
        "Igusa quartic in y0..y4",
        y_quadratic(-1).pow(2),
        coeff * (y(0) * y(1) * y(2) * y_sum()),
    )
}

fn product_relation(coeff: i64) -> Relation {
    let lhs = coeff * Expr::product(["0001", "0000", "0010", "0011"].map(|c| theta(c).pow(2)));
    Relation::new("theta_product", "product of the a=0 theta squares", lhs, y_quadratic(-1))
}

fn y5_quartic(coeff: i64) -> Relation {
    Relation::new("y5_quartic", "quartic relation with y5", coeff * y(5).pow(4), y(0) * y(1) * y(2) * y_sum())
}

fn y5_quadric(sign34: i64) -> Relation {
    Relation::new("y5_quadric", "quadric relation with y5", 2 * y(5).pow(2), y_quadratic(sign34))
}

/// `θ[a;b]² = Σ_x (−1)^{b·x} f_{a+x} f_x`, with one sign optionally flipped.
fn classical(m: Char, flip: Option<usize>) -> Relation {
    let a = m.a();
    let b = m.b();
    let mut terms = Vec::new();
    for (i, x) in [[0u8, 0], [1, 0], [0, 1], [1, 1]].into_iter().enumerate() {
        let ax = [a[0] ^ x[0], a[1] ^ x[1]];
        let mut sign = if (b[0] * x[0] + b[1] * x[1]) % 2 == 0 { 1 } else { -1 };
        if flip == Some(i) {
            sign = -sign;
        }
        terms.push(sign * (f(f_index(ax) + 1) * f(f_index(x) + 1)));
    }
    let [a1, a2, b1, b2] = m.bits();
    Relation::new(
        &format!("classical_{a1}{a2}{b1}{b2}"),
        "theta square through second-kind thetas",
        Expr::Form(Form::Theta(m)).pow(2),
        Expr::sum(terms),
    )
}

fn runge_quartic(coeff: i64) -> Relation {
    let (f1, f2, f3, f4, f5) = (big_f(1), big_f(2), big_f(3), big_f(4), big_f(5));
    let sq = |e: &Expr| e.clone().pow(2);
    let rhs = Expr::sum([
        -(sq(&f1) * sq(&f5)),
        f1.clone() * f2.clone() * f3.clone() * f4.clone(),
        -(sq(&f2) * sq(&f3)),
        -(sq(&f2) * sq(&f4)),
        4 * (sq(&f2) * sq(&f5)),
        -(sq(&f3) * sq(&f4)),
        4 * (sq(&f3) * sq(&f5)),
        4 * (sq(&f4) * sq(&f5)),
    ]);
    let mut r = Relation::new("runge_quartic", "Runge relation in F1..F5", coeff * f5.pow(4), rhs);
    // Every term has Z-degree at least 16, so it is checked in 2Z.
    r.in_2z = true;
    r
}

fn f6_quadric(coeff: i64) -> Relation {
    let sq = |i| big_f(i).pow(2);
    let rhs = Expr::sum([sq(1), -4 * sq(2), -4 * sq(3), -4 * sq(4), coeff * sq(5)]);
    Relation::new("f6_quadric", "quadric relation with F6", big_f(6).pow(2), rhs)
}

fn chi5(coeff: i64) -> Relation {
    Relation::new(
        "chi5_product",
        "chi5 as sextuple form times Theta",
        coeff * Expr::Form(Form::Chi5),
        Expr::Form(Form::T(Sextuple::standard())) * big_theta(),
    )
}

/// The ten-theta product agrees with the registry's `χ₅`.
fn chi5_ten_thetas() -> Relation {
    Relation::new(
        "chi5_ten_thetas",
        "chi5 as product of the ten even thetas",
        Expr::Form(Form::Chi5),
        Expr::product(crate::chargeom::enumerate_even().into_iter().map(|m| Expr::Form(Form::Theta(m)))),
    )
}

/// Every relation of the suite, in a fixed order.
pub fn relations() -> Vec<Relation> {
    let mut v = vec![igusa_quartic(4), product_relation(2), y5_quartic(1), y5_quadric(-1)];
    v.extend(Char::all().map(|m| classical(m, None)));
    v.extend([runge_quartic(16), f6_quadric(32), chi5(1), chi5_ten_thetas()]);
    v
}

pub fn relation(id: &str) -> Result<Relation> {
    relations().into_iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownRelation(id.into()))
}

/// Falsification controls: each is a relation with one coefficient or sign perturbed.
pub fn mutations() -> Vec<Relation> {
    let rename = |mut r: Relation, id: &str| {
        r.id = id.into();
        r
    };
    vec![
        rename(igusa_quartic(5), "mutant_igusa_quartic_4_to_5"),
        rename(product_relation(3), "mutant_theta_product_2_to_3"),
        rename(y5_quartic(2), "mutant_y5_quartic_doubled"),
        rename(y5_quadric(1), "mutant_y5_quadric_sign_y3y4"),
        rename(classical(Char::new(1, 0, 0, 1), Some(2)), "mutant_classical_sign"),
        rename(runge_quartic(15), "mutant_runge_quartic_16_to_15"),
        rename(f6_quadric(31), "mutant_f6_quadric_32_to_31"),
        rename(chi5(2), "mutant_chi5_doubled"),
    ]
}

/// Residual of a named relation at truncation `n`.
pub fn verify_identity(id: &str, n: u32) -> Result<QSeries> {
    let r = relation(id)?;
    if n < 2 {
        return Err(Error::Precondition(format!("truncation {n} is below 2")));
    }
    let reg = FormRegistry::build(n.max(4))?;
    Ok(r.residual(&reg).truncate(n))
}
