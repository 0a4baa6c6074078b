//! Monoids and T-monoids among matrices over a posetal quantale: preorders and their
//! list-indexed generalizations.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Result;
use crate::finset::{Elem, SetExpr};
use crate::kleisli::mat::{kl_compose_n, kl_identity};
use crate::quantale::{mat_compose_n, mat_identity, MatVector, Quantale};
use crate::verdict::Verdict;

fn below(name: &str, lhs: &MatVector, rhs: &MatVector, bound: usize) -> Result<Verdict> {
    let (ok, w, cov) = lhs.leq(rhs, bound)?;
    Ok(match (ok, w) {
        (true, _) => Verdict::pass(name, cov),
        (false, Some((x, y))) => {
            let q = &lhs.quantale;
            Verdict::fail(name, cov, format!("entry ({x}, {y}): {} vs {}", q.label(lhs.entry(&x, &y)), q.label(rhs.entry(&x, &y))))
        }
        (false, None) => Verdict::fail(name, cov, "no witness".into()),
    })
}

/// Over a posetal quantale a monoid is a matrix `a: x ⇸ x` with `i ≤ a` and `a·a ≤ a`; the
/// axioms on cells hold automatically.
pub fn check_mat_monoid(a: &MatVector, bound: usize) -> Result<Vec<Verdict>> {
    let id = mat_identity(&a.quantale, &a.source);
    let aa = mat_compose_n(&[a.clone(), a.clone()])?;
    Ok(alloc::vec![below("unit: i ≤ a", &id, a, bound)?, below("multiplication: a·a ≤ a", &aa, a, bound)?])
}

/// A `(T, V)`-category: `a: x ⇸ Tx` with `e ≤ a` and `K(a, a) ≤ a` up to `bound`.
pub fn check_mat_tmonoid(a: &MatVector, bound: usize) -> Result<Vec<Verdict>> {
    let x = &a.source;
    let a = a.with_bound(bound);
    let id = kl_identity(&a.quantale, x);
    let aa = kl_compose_n(x, &[a.clone(), a.clone()], bound)?;
    Ok(alloc::vec![below("unit: e ≤ a", &id, &a, bound)?, below("multiplication: K(a, a) ≤ a", &aa, &a, bound)?])
}

/// The multi-preorder of a finite total order on `names`: `r(x, ℓ)` iff every entry of `ℓ` is
/// below `x`.
pub fn multi_preorder(q: &Arc<Quantale>, names: &[&str]) -> MatVector {
    let x = SetExpr::atoms(names);
    let order: Vec<Elem> = names.iter().map(|n| Elem::atom(n)).collect();
    let rank = move |e: &Elem| order.iter().position(|o| o == e);
    let (top, bot) = (q.unit(), q.bottom());
    MatVector::pred(q, &x, &SetExpr::fm(x.clone()), None, move |t, l| {
        let ok = l.as_nest().is_some_and(|v| v.iter().all(|y| matches!((rank(y), rank(t)), (Some(i), Some(j)) if i <= j)));
        if ok {
            top
        } else {
            bot
        }
    })
}
