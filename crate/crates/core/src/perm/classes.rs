//! The c-Wilf classes of length 4 and 5, transcribed verbatim from the
//! published lists (including the pattern 45213 listed under both 5.IV
//! and 5.X).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pattern::Pattern;
use crate::error::{Error, Result};

const LENGTH4: [&[&str]; 7] = [
    &["1234", "4321"],
    &["2413", "3142"],
    &["2143", "3412"],
    &["1324", "4231"],
    &["1423", "3241", "4132", "2314"],
    &["1342", "4213", "4123", "2431", "3124", "1432", "2341", "3214"],
    &["1243", "3421", "4312", "2134"],
];

const LENGTH5: [&[&str]; 25] = [
    &["12354", "21345", "45321", "54312"],
    &["12453", "12543", "31245", "32145", "34521", "35421", "54123", "54213"],
    &["21534", "23154", "43512", "45132"],
    &["24153", "25143", "31524", "32514", "34152", "35142", "41523", "45213"],
    &[
        "13452", "13542", "14352", "14532", "15342", "15432", "23451", "23541", "24351", "24531",
        "25341", "25431", "41235", "41325", "42135", "42315", "43125", "43215", "51234", "51324",
        "52134", "52314", "53124", "53214",
    ],
    &["12435", "13245", "53421", "54231"],
    &["15234", "23415", "43251", "51432"],
    &["15423", "32451", "34215", "51243"],
    &["21354", "45312"],
    &["21453", "31254", "35412", "45213"],
    &["13425", "14235", "52431", "53241"],
    &["14523", "32541", "34125", "52143"],
    &["23514", "25134", "41532", "43152"],
    &["25413", "31452", "35214", "41253"],
    &["15324", "24315", "42351", "51342"],
    &["12534", "23145", "43521", "54132"],
    &["21543", "32154", "34512", "45123"],
    &["14325", "52341"],
    &["13524", "24135", "42531", "53142"],
    &["25314", "41352"],
    &["24513", "31542", "35124", "42153"],
    &["13254", "21435", "45231", "53412"],
    &["15243", "32415", "34251", "51423"],
    &["14253", "31425", "35241", "52413"],
    &["12345", "54321"],
];

const ROMAN: [&str; 25] = [
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV", "XV",
    "XVI", "XVII", "XVIII", "XIX", "XX", "XXI", "XXII", "XXIII", "XXIV", "XXV",
];

/// A c-Wilf class label such as `4.V` or `5.XXIII`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ClassId {
    length: u8,
    /// 1-based position in the published list.
    index: u8,
}

impl ClassId {
    pub fn new(length: u8, index: u8) -> Result<Self> {
        let count = Self::class_count(length)
            .ok_or_else(|| Error::InvalidClass(format!("{length}.{index}")))?;
        if index == 0 || index as usize > count {
            return Err(Error::InvalidClass(format!("{length}.#{index}")));
        }
        Ok(ClassId { length, index })
    }

    fn class_count(length: u8) -> Option<usize> {
        match length {
            4 => Some(LENGTH4.len()),
            5 => Some(LENGTH5.len()),
            _ => None,
        }
    }

    pub fn length(self) -> usize {
        self.length as usize
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn label(self) -> &'static str {
        ROMAN[self.index as usize - 1]
    }

    /// All classes of the given length in published order.
    pub fn all_of_length(length: u8) -> Vec<ClassId> {
        let count = Self::class_count(length).unwrap_or(0);
        (1..=count as u8).map(|index| ClassId { length, index }).collect()
    }

    /// The 32 classes of lengths 4 and 5.
    pub fn all() -> Vec<ClassId> {
        let mut v = Self::all_of_length(4);
        v.extend(Self::all_of_length(5));
        v
    }

    fn raw(self) -> &'static [&'static str] {
        match self.length {
            4 => LENGTH4[self.index as usize - 1],
            _ => LENGTH5[self.index as usize - 1],
        }
    }

    /// Lexicographically least member.
    pub fn canonical(self) -> Pattern {
        class_patterns(self).swap_remove(0)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.length, self.label())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidClass(s.to_string());
        let (len, label) = s.trim().split_once('.').ok_or_else(bad)?;
        let length: u8 = len.parse().map_err(|_| bad())?;
        let count = Self::class_count(length).ok_or_else(bad)?;
        let label = label.to_ascii_uppercase();
        let pos = ROMAN[..count].iter().position(|r| *r == label).ok_or_else(bad)?;
        Ok(ClassId { length, index: pos as u8 + 1 })
    }
}

impl TryFrom<String> for ClassId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ClassId> for String {
    fn from(c: ClassId) -> String {
        c.to_string()
    }
}

/// Members of a class; the canonical (lexicographically least) pattern comes
/// first, the rest follow in published order.
pub fn class_patterns(id: ClassId) -> Vec<Pattern> {
    let mut pats: Vec<Pattern> = id
        .raw()
        .iter()
        .map(|s| s.parse().expect("registry entries are valid patterns"))
        .collect();
    let least = (0..pats.len()).min_by(|&a, &b| pats[a].cmp(&pats[b])).unwrap();
    let first = pats.remove(least);
    pats.insert(0, first);
    pats
}

/// Every class whose published list contains `pat`.
pub fn classes_containing(pat: &Pattern) -> Vec<ClassId> {
    let text = pat.to_string();
    ClassId::all()
        .into_iter()
        .filter(|id| id.raw().contains(&text.as_str()))
        .collect()
}

/// Patterns that appear in more than one published class list.
pub fn duplicate_listings() -> Vec<(Pattern, Vec<ClassId>)> {
    let mut seen: Vec<(Pattern, Vec<ClassId>)> = Vec::new();
    for id in ClassId::all() {
        for p in class_patterns(id) {
            match seen.iter_mut().find(|(q, _)| *q == p) {
                Some((_, ids)) => ids.push(id),
                None => seen.push((p, vec![id])),
            }
        }
    }
    seen.retain(|(_, ids)| ids.len() > 1);
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pats(list: &[&str]) -> Vec<Pattern> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn lookup_examples() {
        let v: ClassId = "4.V".parse().unwrap();
        assert_eq!(class_patterns(v), pats(&["1423", "3241", "4132", "2314"]));
        let xxv: ClassId = "5.XXV".parse().unwrap();
        assert_eq!(class_patterns(xxv), pats(&["12345", "54321"]));
        assert!(matches!("4.IX".parse::<ClassId>(), Err(Error::InvalidClass(_))));
        assert!("6.I".parse::<ClassId>().is_err());
        assert!("5.XXVI".parse::<ClassId>().is_err());
        assert!(ClassId::new(4, 8).is_err());
    }

    #[test]
    fn registry_shape() {
        assert_eq!(ClassId::all().len(), 32);
        let n4: usize = ClassId::all_of_length(4).iter().map(|&c| class_patterns(c).len()).sum();
        assert_eq!(n4, 24);
        // 120 entries, but 45213 is listed twice and 42513 never.
        let n5: usize = ClassId::all_of_length(5).iter().map(|&c| class_patterns(c).len()).sum();
        assert_eq!(n5, 120);
        assert!(classes_containing(&"42513".parse().unwrap()).is_empty());
        let dups = duplicate_listings();
        assert_eq!(dups.len(), 1);
        assert_eq!(dups[0].0.to_string(), "45213");
        assert_eq!(dups[0].1.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["5.IV", "5.X"]);
    }

    #[test]
    fn canonical_representatives() {
        let reps: Vec<String> = ClassId::all().iter().map(|c| c.canonical().to_string()).collect();
        assert_eq!(reps[..7], ["1234", "2413", "2143", "1324", "1423", "1342", "1243"]);
        assert_eq!(reps[7 + 10], "13425");
        assert_eq!(reps[7 + 22], "15243");
        for id in ClassId::all() {
            let members = class_patterns(id);
            assert!(members.iter().all(|p| *p >= members[0]));
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for id in ClassId::all() {
            assert_eq!(id.to_string().parse::<ClassId>().unwrap(), id);
        }
        assert_eq!("5.xxiii".parse::<ClassId>().unwrap().to_string(), "5.XXIII");
    }

    #[test]
    fn symmetry_pairs_share_a_class() {
        let c: ClassId = "4.VII".parse().unwrap();
        let p: Pattern = "1243".parse().unwrap();
        assert!(class_patterns(c).contains(&p.reverse().complement()));
    }
}
