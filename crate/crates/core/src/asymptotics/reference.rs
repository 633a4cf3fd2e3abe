//! Published growth constants and amplitudes, as decimal strings.
//!
//! Most amplitudes follow c_n ~ C n! kappa^n, but five of the length-4 ones
//! are normalized as c_n ~ C n! kappa^(n+1) and so equal kappa times that C.
//! `kappa_shift` records which normalization each entry uses; it was
//! determined by comparing with b_N / kappa^N at N = 120.

use crate::analytic::hp::{self, Real};
use crate::perm::ClassId;

const LENGTH_4: [(&str, &str, u32); 7] = [
    ("0.9630055289154941756", "1.076344539715227", 1),
    ("0.9577180134976572362", "1.137593123292952", 0),
    ("0.9561742431150784277", "1.146540529900785", 0),
    ("0.9558503134742499890", "1.100226245067883", 1),
    ("0.9548260509498783340", "1.104489004860327", 1),
    ("0.9546118344740519438", "1.103720832998758", 1),
    ("0.9528914233250531974", "1.114556873900595", 1),
];

const LENGTH_5: [(&str, &str); 25] = [
    ("0.9913880716699268181", "1.0359338947290985"),
    ("0.9914185408600983479", "1.0356740409503498"),
    ("0.9914215726255505158", "1.0356482525747201"),
    ("0.9914637023566386736", "1.0352912840051055"),
    ("0.9914787346349870644", "1.0351640090771068"),
    ("0.9914031046134865367", "1.0358339838201155"),
    ("0.9914152799149738845", "1.0357301469691008"),
    ("0.9914455405535310693", "1.0354727912203914"),
    ("0.9914486888810151958", "1.0354456527948576"),
    ("0.9914905951981662739", "1.0350913714694614"),
    ("0.9914573454495660358", "1.0354283564589345"),
    ("0.9914991759877895239", "1.0350742999782649"),
    ("0.9915021807789432127", "1.0350488441916296"),
    ("0.9915430268589110657", "1.0347070291236631"),
    ("0.9914961218699849309", "1.0351275914657668"),
    ("0.9914962152197285242", "1.0351265076491731"),
    ("0.9915702712612490911", "1.0345028067355504"),
    ("0.9915374435675450185", "1.0348337036858431"),
    ("0.9915491202315941687", "1.0347354953793692"),
    ("0.9915807073163505786", "1.0344726469008412"),
    ("0.9916208625283576837", "1.0341385793668625"),
    ("0.9916009188510841597", "1.0345693190404323"),
    ("0.9916298962721992117", "1.0343256965190087"),
    ("0.9918325187738895504", "1.0330524632572689"),
    ("0.9928637443921790385", "1.0280679375675015"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reference {
    pub kappa: &'static str,
    pub amplitude: &'static str,
    /// The published amplitude is C kappa^kappa_shift for c_n ~ C n! kappa^n.
    pub kappa_shift: u32,
}

impl Reference {
    /// An amplitude C (for c_n ~ C n! kappa^n) in the published normalization.
    pub fn published_amplitude(&self, c: &Real, kappa: &Real) -> Real {
        let mut v = c.clone();
        for _ in 0..self.kappa_shift {
            v = &v * kappa;
        }
        v
    }

    pub fn kappa_real(&self, bits: usize) -> Real {
        hp::real_rational(&hp::parse_decimal(self.kappa).expect("valid literal"), bits)
    }

    pub fn amplitude_real(&self, bits: usize) -> Real {
        hp::real_rational(&hp::parse_decimal(self.amplitude).expect("valid literal"), bits)
    }

    /// Significant digits given in the published growth constant.
    pub fn kappa_digits(&self) -> usize {
        significant(self.kappa)
    }

    pub fn amplitude_digits(&self) -> usize {
        significant(self.amplitude)
    }
}

fn significant(s: &str) -> usize {
    s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count()
}

/// Published values for a class.
pub fn reference_values(class: ClassId) -> Reference {
    let (kappa, amplitude, kappa_shift) = match class.length() {
        4 => LENGTH_4[class.index() - 1],
        _ => {
            let (k, a) = LENGTH_5[class.index() - 1];
            (k, a, 0)
        }
    };
    Reference { kappa, amplitude, kappa_shift }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_order_matches_bounds() {
        let k = |c: ClassId| reference_values(c).kappa.parse::<f64>().unwrap();
        for len in [4u8, 5] {
            let all = ClassId::all_of_length(len);
            let first = all[0];
            let last = *all.last().unwrap();
            let (hi, lo) = if len == 4 { (first, last) } else { (last, first) };
            assert!(all.iter().all(|&c| k(c) <= k(hi) && k(c) >= k(lo)));
        }
        let r = reference_values(ClassId::all()[0]);
        assert_eq!((r.kappa_digits(), r.amplitude_digits()), (19, 16));
    }
}
