//! The shipped golden corpus. Each entry is regenerated from library
//! constructors; the files under `golden/` are its `to_text` output.

use crate::braid::BraidWord;
use crate::link::LinkRepr;
use crate::operators::{
    bing_double, borromean_braid, braid_commutator_link, twisted_whitehead, whitehead,
    DoublingSpec,
};
use crate::pd::PdCode;

/// Hopf link with linking number `+1`, as the closure of `s1^2`.
pub fn hopf() -> PdCode {
    PdCode::braid_closure(&BraidWord::parse(2, "s1 s1").expect("valid braid"))
}

/// `(file name, link)` for every golden file, in a fixed order.
pub fn golden_links() -> Vec<(&'static str, LinkRepr)> {
    let br = borromean_braid();
    let br_pd = PdCode::braid_closure(&br);
    let bd = |pd: &PdCode| bing_double(pd, &DoublingSpec::default()).expect("valid diagram");
    vec![
        ("hopf.pd", LinkRepr::Pd(hopf())),
        ("unlink2.pd", LinkRepr::Pd(PdCode::unlink(2))),
        ("unlink3.pd", LinkRepr::Pd(PdCode::unlink(3))),
        ("br.braid", LinkRepr::Braid(br)),
        ("br.pd", LinkRepr::Pd(br_pd.clone())),
        ("whitehead.pd", LinkRepr::Pd(whitehead())),
        ("twisted-whitehead-2.pd", LinkRepr::Pd(twisted_whitehead(2))),
        ("twisted-whitehead-4.pd", LinkRepr::Pd(twisted_whitehead(4))),
        ("twisted-whitehead-6.pd", LinkRepr::Pd(twisted_whitehead(6))),
        ("commutator.braid", LinkRepr::Braid(braid_commutator_link())),
        ("bd-hopf.pd", LinkRepr::Pd(bd(&hopf()))),
        ("bd-br.pd", LinkRepr::Pd(bd(&br_pd))),
    ]
}
