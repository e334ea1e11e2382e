//! Engine results against the brute-force oracle on every catalog brace.

mod oracle;

use hopf_brace::catalog::builtin_catalog;
use hopf_brace::series::{
    abelianize_ab, abelianize_f, gamma_series, hopf_center, huq_commutator, left_series, relative_commutator,
    right_series, soc_ann,
};
use hopf_brace::subobjects::{all_subbraces, quotient, Subbrace};
use hopf_brace::HopfBrace;

use oracle::{Set, Tables};

fn set_of(sub: &Subbrace) -> Set {
    sub.carrier().members().iter().copied().collect()
}

fn each_brace(mut f: impl FnMut(&str, &HopfBrace, &Tables)) {
    for entry in builtin_catalog() {
        let h = HopfBrace::new(entry.brace.clone());
        let t = Tables::of(&entry.brace);
        f(&entry.descriptor.name, &h, &t);
    }
}

#[test]
fn set_level_products_match() {
    each_brace(|name, h, t| {
        let b = h.base();
        for x in 0..t.n {
            for y in 0..t.n {
                assert_eq!(b.lambda(x, y), t.lambda(x, y), "{name}");
                assert_eq!(b.star(x, y), t.star(x, y), "{name}");
            }
        }
    });
}

#[test]
fn series_match() {
    each_brace(|name, h, t| {
        let engine = [left_series(h, 10), right_series(h, 10), gamma_series(h, 10)];
        let reference = [t.left_series(10), t.right_series(10), t.gamma_series(10)];
        for (e, r) in engine.into_iter().zip(reference) {
            let e: Vec<Set> = e.unwrap().terms.iter().map(set_of).collect();
            assert_eq!(e, r, "{name}");
        }
    });
}

#[test]
fn center_socle_annihilator_match() {
    each_brace(|name, h, t| {
        assert_eq!(set_of(&hopf_center(h)), t.center(), "{name}");
        let sa = soc_ann(h).unwrap();
        assert_eq!(set_of(&sa.soc), t.soc(), "{name}");
        assert_eq!(set_of(&sa.ann), t.ann(), "{name}");
        assert_eq!(sa.agree_space.dimension(), t.agreement_dim(), "{name}");
    });
}

#[test]
fn subgroup_lattice_and_predicates_match() {
    each_brace(|name, h, t| {
        let subs = all_subbraces(h);
        let reference = t.all_subgroups();
        assert_eq!(subs.len(), reference.len(), "{name}");
        for sub in &subs {
            let s = set_of(sub);
            assert!(reference.contains(&s), "{name}: {s:?}");
            assert_eq!(sub.is_strong(), t.strong(&s), "{name}: {s:?}");
            assert_eq!(sub.is_normal(), t.normal_by_definition(&s), "{name}: {s:?}");
            assert_eq!(sub.is_normal_via_star(), t.normal_by_star(&s), "{name}: {s:?}");
        }
    });
}

#[test]
fn commutators_and_quotients_match() {
    each_brace(|name, h, t| {
        for sub in all_subbraces(h).into_iter().filter(Subbrace::is_normal) {
            let s = set_of(&sub);
            assert_eq!(
                set_of(&relative_commutator(&sub, h).unwrap()),
                t.relative(&s),
                "{name}: {s:?}"
            );
            assert_eq!(set_of(&huq_commutator(&sub, h).unwrap()), t.huq(&s), "{name}: {s:?}");
            assert_eq!(quotient(h, &sub).unwrap().0.dim(), t.quotient_size(&s), "{name}: {s:?}");
        }
    });
}

#[test]
fn abelianisations_match() {
    each_brace(|name, h, t| {
        let stars: Vec<usize> = (0..t.n)
            .flat_map(|a| (0..t.n).map(move |b| (a, b)))
            .map(|(a, b)| t.star(a, b))
            .collect();
        let commutators: Vec<usize> = (0..t.n)
            .flat_map(|a| (0..t.n).map(move |b| (a, b)))
            .map(|(a, b)| t.dcomm(a, b))
            .collect();
        let f_kernel = t.normal_closure(stars.iter().copied());
        let ab_kernel = t.normal_closure(stars.iter().chain(&commutators).copied());
        let (f, _) = abelianize_f(h).unwrap();
        let (ab, _) = abelianize_ab(h).unwrap();
        assert_eq!(f.dim(), t.quotient_size(&f_kernel), "{name}");
        assert_eq!(ab.dim(), t.quotient_size(&ab_kernel), "{name}");
        assert!(f.base().is_trivial(), "{name}");
        assert!(ab.base().is_trivial() && ab.base().dot().is_abelian(), "{name}");
        // The star image alone already generates a normal subgroup.
        assert_eq!(t.closure(stars.iter().copied()), f_kernel, "{name}");
    });
}
