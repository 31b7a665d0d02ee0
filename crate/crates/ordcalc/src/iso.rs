//! Domain transformations between the two systems and the induced order
//! isomorphism.

use std::cmp::Ordering;

use crate::bar::{in_dom, valid_bar};
use crate::error::{OrdError, Result};
use crate::order::{cmp_terms, localize, valid_t};
use crate::term::{split_high, OrdTerm, SystemTag};

const T: SystemTag = SystemTag::Stepwise;
const B: SystemTag = SystemTag::Simultaneous;

fn level(c: &OrdTerm) -> u32 {
    c.level().expect("principal")
}

/// Transforms a stepwise argument below `Omega_{m+2}` into the domain of
/// `b_m`.
pub fn it(m: u32, a: &OrdTerm) -> Result<OrdTerm> {
    if a.system().is_some_and(|s| s != T) || !valid_t(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    if a.components().iter().any(|c| level(c) > m + 1) {
        return Err(OrdError::Domain(format!("{a} is not below Omega_{}", m + 2)));
    }
    Ok(it_raw(m, a))
}

pub(crate) fn it_raw(m: u32, a: &OrdTerm) -> OrdTerm {
    let (delta, eta) = split_high(a, m);
    let eta = f_raw(&eta);
    let ds = delta.components();
    if ds.is_empty() {
        return eta;
    }
    let first = &ds[0];
    let xi = if *first == OrdTerm::omega(T, m + 1) {
        OrdTerm::Zero
    } else {
        let head = &localize(first)[1];
        split_high(&head.as_theta().expect("principal").arg, m + 1).0
    };
    let mut out = if xi.is_zero() { OrdTerm::Zero } else { it_raw(m + 1, &xi) };
    let skip_first = !xi.is_zero()
        && cmp_terms(&OrdTerm::theta(T, m + 1, xi.clone()), first) != Ordering::Less;
    for d in &ds[usize::from(skip_first)..] {
        let arg = &d.as_theta().expect("principal").arg;
        out = out.add(&OrdTerm::theta(B, m + 1, it_raw(m + 1, arg)));
    }
    out.add(&eta)
}

/// Inverse of [`it`].
pub fn rt(m: u32, a: &OrdTerm) -> Result<OrdTerm> {
    if a.system().is_some_and(|s| s != B) || !valid_bar(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    if !in_dom(a, m) {
        return Err(OrdError::Domain(format!("{a} is not in the domain of b{m}")));
    }
    Ok(rt_raw(m, a))
}

pub(crate) fn rt_raw(m: u32, a: &OrdTerm) -> OrdTerm {
    let parts = a.components();
    let nx = parts.iter().take_while(|c| level(c) >= m + 2).count();
    let nd = nx + parts[nx..].iter().take_while(|c| level(c) == m + 1).count();
    let mut out = OrdTerm::Zero;
    if nx > 0 {
        let xi = OrdTerm::from_components(parts[..nx].to_vec());
        out = OrdTerm::theta(T, m + 1, rt_raw(m + 1, &xi));
    }
    for d in &parts[nx..nd] {
        let arg = &d.as_theta().expect("principal").arg;
        out = out.add(&OrdTerm::theta(T, m + 1, rt_raw(m + 1, arg)));
    }
    out.add(&g_raw(&OrdTerm::from_components(parts[nd..].to_vec())))
}

pub(crate) fn f_raw(a: &OrdTerm) -> OrdTerm {
    let parts: Vec<OrdTerm> = a
        .components()
        .iter()
        .map(|c| {
            let t = c.as_theta().expect("principal");
            OrdTerm::theta(B, t.level, it_raw(t.level, &t.arg))
        })
        .collect();
    OrdTerm::from_components(parts)
}

pub(crate) fn g_raw(a: &OrdTerm) -> OrdTerm {
    let parts: Vec<OrdTerm> = a
        .components()
        .iter()
        .map(|c| {
            let t = c.as_theta().expect("principal");
            OrdTerm::theta(T, t.level, rt_raw(t.level, &t.arg))
        })
        .collect();
    OrdTerm::from_components(parts)
}

/// Order isomorphism from the stepwise to the simultaneous system.
pub fn f(a: &OrdTerm) -> Result<OrdTerm> {
    if a.system().is_some_and(|s| s != T) || !valid_t(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    Ok(f_raw(a))
}

/// Inverse of [`f`].
pub fn g(a: &OrdTerm) -> Result<OrdTerm> {
    if a.system().is_some_and(|s| s != B) || !valid_bar(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    Ok(g_raw(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_any;

    fn p(s: &str) -> OrdTerm {
        parse_any(s).unwrap()
    }

    #[test]
    fn transformations() {
        assert_eq!(it(0, &OrdTerm::Zero).unwrap(), OrdTerm::Zero);
        assert_eq!(it(0, &p("t1(0)")).unwrap(), p("b1(0)"));
        assert_eq!(it(0, &p("t1(t2(0)+t0(0))")).unwrap(), p("b2(0)+b1(b2(0)+b0(0))"));
        assert_eq!(rt(0, &p("b1(0)")).unwrap(), p("t1(0)"));
        assert_eq!(rt(1, &p("b2(0)")).unwrap(), p("t2(0)"));
        assert_eq!(rt(0, &p("b2(0)")).unwrap(), p("t1(t2(0))"));
        assert!(it(0, &p("t2(0)")).is_err());
    }

    #[test]
    fn isomorphism() {
        let a = p("t0(t1(t2(0)+t0(0)))");
        let b = p("b0(b2(0)+b1(b2(0)+b0(0)))");
        assert_eq!(f(&a).unwrap(), b);
        assert_eq!(g(&b).unwrap(), a);
        for i in 0..4 {
            assert_eq!(f(&OrdTerm::omega(T, i)).unwrap(), OrdTerm::omega(B, i));
        }
        assert_eq!(g(&p("b0(b2(0))")).unwrap(), p("t0(t1(t2(0)))"));
    }
}
