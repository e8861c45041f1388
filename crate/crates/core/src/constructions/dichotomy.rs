use crate::algebra::Residue;
use crate::spectrum::{prime_maximal_test, FiniteIdeal, FiniteRing};
use crate::{Error, Result};

/// Which statement of the dichotomy holds for a maximal ideal `Q` of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// `R(E, M) ∩ T ⊆ Q`.
    Contains,
    /// `f ∈ Q` with `f ≡ 1` mod `M` everywhere, from `1 = h·g + f` with
    /// `g ∈ R(E, M) ∩ T` outside `Q`. All three are element indices of `T`.
    Witness { f: usize, g: usize, h: usize },
}

/// Decides the dichotomy for a maximal ideal `q` of a finite ring of
/// functions `t` whose coordinates live in `residue.base()`.
///
/// When `R(E, M) ∩ T` is not inside `Q`, the first `g` (in element order)
/// outside `Q` is taken and `h` is searched over `T` in element order.
pub fn dichotomy_witness(t: &FiniteRing, q: &FiniteIdeal, residue: &Residue) -> Result<Dichotomy> {
    if t.uniform_coord() != Some(residue.base()) {
        return Err(Error::ParentMismatch);
    }
    residue.require_maximal()?;
    if !prime_maximal_test(t, q).maximal {
        return Err(Error::NotMaximal);
    }
    let kernel = t.m_valued_ideal(residue);
    let Some(g) = kernel.members().find(|&g| !q.contains(g)) else {
        return Ok(Dichotomy::Contains);
    };
    let one = t.one();
    for h in 0..t.len() {
        let f = t.sub(one, t.mul(h, g));
        if q.contains(f) {
            let coord = residue.base();
            let field = residue.quotient();
            if t.element(f).iter().any(|&c| residue.reduce(&coord.from_code(c)) != field.one()) {
                return Err(Error::CheckFailed(alloc::format!("witness {:?} is not 1 mod M", t.element(f))));
            }
            return Ok(Dichotomy::Witness { f, g, h });
        }
    }
    Err(Error::CheckFailed(alloc::string::String::from("Q + gT is proper although Q is maximal")))
}
