//! Identity suite run over a completed record: every check is an exact
//! polynomial statement, reported pass/fail with a detail string.

use crate::error::Result;
use crate::mop::MopRecord;
use crate::partner::{
    partner_ode_reduced, partner_ode_residual, second_order_residual, third_order,
    third_order_residual, OdePair,
};
use crate::poly::wronskian;
use crate::weights::SemiclassicalWeight;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub items: Vec<VerifyItem>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn first_failure(&self) -> Option<&VerifyItem> {
        self.items.iter().find(|i| !i.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.items.push(VerifyItem {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

/// Run every identity the record's filled slots support.
pub fn verify_record(rec: &MopRecord, weights: &[&SemiclassicalWeight]) -> Result<VerificationReport> {
    let mut rep = VerificationReport { items: vec![] };
    let p = &rec.poly;
    let total = p.degree().unwrap_or(0);

    for (ci, (ch, w)) in rec.channels.iter().zip(weights).enumerate() {
        let Some(bundle) = &ch.partner else { continue };
        // second-order equation at y = P
        if let Some(c) = &ch.vanvleck {
            let pair = OdePair { s: bundle.s.clone(), c: c.clone() };
            let res = second_order_residual(p, &pair, w);
            rep.push(
                &format!("second_order_ode_{}", ci + 1),
                res.is_zero(),
                format!("residual degree {:?}", res.degree()),
            );
            // degree bound deg C <= N - n + 2 sigma
            let bound = total - ch.orth_conditions + 2 * w.sigma;
            let ok = c.degree().map_or(true, |d| d <= bound);
            rep.push(
                &format!("vanvleck_degree_{}", ci + 1),
                ok,
                format!("deg C = {:?}, bound {}", c.degree(), bound),
            );
        }
        // partner degree bound deg S <= N - n + sigma
        let bound = total - ch.orth_conditions + w.sigma;
        let ok = bundle.s.degree().map_or(true, |d| d <= bound);
        rep.push(
            &format!("partner_degree_{}", ci + 1),
            ok,
            format!("deg S = {:?}, bound {}", bundle.s.degree(), bound),
        );
        // leading coefficient per the quasi-orthogonality expansion
        let lead = crate::partner::leading_check(bundle, &ch.m_n_rat(), total, ch.orth_conditions, w);
        rep.push(
            &format!("leading_coefficient_{}", ci + 1),
            lead,
            String::new(),
        );
    }

    if rec.channels.len() == 2 {
        let (w1, w2) = (weights[0], weights[1]);
        if let (Some(r), Some(s1), Some(s2), Some(c1), Some(c2)) = (
            rec.r_poly.as_ref(),
            rec.channels[0].partner.as_ref(),
            rec.channels[1].partner.as_ref(),
            rec.channels[0].vanvleck.as_ref(),
            rec.channels[1].vanvleck.as_ref(),
        ) {
            // coupling identity: R P = -W(A1,A2) S1 S2 + A1 A2 W(S1,S2) + (A2 B1 - A1 B2) S1 S2
            let s1s2 = &s1.s * &s2.s;
            let mut rhs = &(&w1.a * &w2.a) * &wronskian(&s1.s, &s2.s);
            rhs = &rhs - &(&wronskian(&w1.a, &w2.a) * &s1s2);
            rhs = &rhs + &(&(&(&w2.a * &w1.b) - &(&w1.a * &w2.b)) * &s1s2);
            let lhs = r * p;
            rep.push("coupling_identity", lhs == rhs, String::new());
            // alternate route: R P' = A1 S1 C2 - A2 S2 C1
            let lhs2 = r * &p.derivative();
            let rhs2 = &(&(&w1.a * &s1.s) * c2) - &(&(&w2.a * &s2.s) * c1);
            rep.push("coupling_vanvleck_route", lhs2 == rhs2, String::new());
            // degree bound
            let bound = 2 * w1.sigma + 2 * w2.sigma + 3;
            rep.push(
                "coupling_degree",
                r.degree().map_or(true, |d| d <= bound),
                format!("deg R = {:?}, bound {}", r.degree(), bound),
            );
            if !r.is_zero() {
                // third-order: symmetry of the two routes plus residual at y = P
                match third_order(rec, w1, w2) {
                    Ok((e, f)) => {
                        let sym = rec.e_poly.as_ref() == Some(&e) && rec.f_poly.as_ref() == Some(&f);
                        rep.push("third_order_symmetry", sym, String::new());
                        let res = third_order_residual(p, r, &e, &f, w1, w2);
                        rep.push(
                            "third_order_ode",
                            res.is_zero(),
                            format!("residual degree {:?}", res.degree()),
                        );
                        let fbound = w1.sigma + w2.sigma + r.degree().unwrap() + 1;
                        rep.push(
                            "third_order_degree",
                            f.degree().map_or(true, |d| d <= fbound),
                            format!("deg F = {:?}, bound {}", f.degree(), fbound),
                        );
                    }
                    Err(e) => rep.push("third_order_ode", false, e.to_string()),
                }
                // partner equations at y = S_i
                for which in [1usize, 2] {
                    if let Some(d) = &rec.channels[which - 1].d_poly {
                        let s = &rec.channels[which - 1].partner.as_ref().unwrap().s;
                        let res = partner_ode_residual(s, d, rec, w1, w2, which);
                        rep.push(
                            &format!("partner_ode_{which}"),
                            res.is_zero(),
                            format!("residual degree {:?}", res.degree()),
                        );
                    }
                }
            } else {
                rep.push(
                    "independence",
                    false,
                    "coupling polynomial identically zero".into(),
                );
            }
            // equal-weight reduction
            if rec.r_star.is_some() {
                match partner_ode_reduced(rec) {
                    Ok(_) => rep.push("equal_weight_wronskian", true, String::new()),
                    Err(e) => rep.push("equal_weight_wronskian", false, e.to_string()),
                }
            }
        }
    }
    Ok(rep)
}
