//! Coset actions, homomorphisms given by them, and quotient groups.

use std::sync::Arc;

use super::group::Group;
use super::permutation::Permutation;
use super::subgroup::SubgroupHandle;
use super::table::{ElemSet, ElemSubgroup};
use crate::error::{Error, Result};

/// A homomorphism out of a tabled group, stored as an element map.
#[derive(Clone)]
pub struct Homomorphism {
    domain: Group,
    codomain: Group,
    gen_images: Vec<Permutation>,
    kernel: SubgroupHandle,
    elem_map: Arc<Vec<u32>>,
}

impl Homomorphism {
    /// The action of `g` on the disjoint union of the right coset spaces of
    /// the given subgroups. Its kernel is the intersection of their cores.
    pub fn on_cosets(g: &Group, subgroups: &[&ElemSubgroup]) -> Result<Homomorphism> {
        let t = g.table()?;
        let mut spaces = Vec::new();
        let mut degree = 0usize;
        for h in subgroups {
            let (which, reps) = t.right_cosets(h);
            degree += reps.len();
            spaces.push((which, reps));
        }
        let image_of = |x: u32| -> Permutation {
            let mut img = Vec::with_capacity(degree);
            let mut offset = 0;
            for (which, reps) in &spaces {
                for &r in reps {
                    img.push(offset + which[t.mul(r, x) as usize] as usize);
                }
                offset += reps.len();
            }
            Permutation::from_images(img).expect("coset action is a permutation")
        };
        let gen_images: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|p| image_of(t.index_of(p).expect("generator is a member")))
            .collect();
        let codomain = Group::new(gen_images.clone())?;
        let ct = codomain.table()?;
        let elem_map: Vec<u32> = (0..t.order() as u32)
            .map(|x| ct.index_of(&image_of(x)).expect("image lies in the codomain"))
            .collect();
        let kernel_set = ElemSet::from_indices(t.order(), (0..t.order() as u32).filter(|&x| elem_map[x as usize] == 0));
        let kernel = SubgroupHandle::from_parts(g.clone(), t.clone(), t.generate_set(&kernel_set));
        Ok(Homomorphism {
            domain: g.clone(),
            codomain,
            gen_images,
            kernel,
            elem_map: Arc::new(elem_map),
        })
    }

    /// The identity map of `g`.
    pub fn identity(g: &Group) -> Result<Homomorphism> {
        let t = g.table()?;
        Ok(Homomorphism {
            domain: g.clone(),
            codomain: g.clone(),
            gen_images: g.generators().to_vec(),
            kernel: SubgroupHandle::trivial(g)?,
            elem_map: Arc::new((0..t.order() as u32).collect()),
        })
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    pub fn kernel(&self) -> &SubgroupHandle {
        &self.kernel
    }

    /// Codomain table index of the image of a domain table index.
    pub fn map_index(&self, x: u32) -> u32 {
        self.elem_map[x as usize]
    }

    pub fn image(&self, x: &Permutation) -> Result<Permutation> {
        let t = self.domain.table()?;
        let i = t.index_of(x).ok_or(Error::NotSubgroup)?;
        Ok(self.codomain.table()?.element(self.map_index(i)).clone())
    }

    pub fn image_subgroup(&self, h: &SubgroupHandle) -> Result<SubgroupHandle> {
        if !h.ambient().same_as(&self.domain) {
            return Err(Error::MixedAmbient);
        }
        let ct = self.codomain.table()?;
        let set = ElemSet::from_indices(ct.order(), h.set().iter().map(|x| self.map_index(x)));
        let gens: Vec<u32> = h.elem().gens.iter().map(|&x| self.map_index(x)).collect();
        let sub = ct.closure(&gens);
        debug_assert_eq!(sub.set, set);
        Ok(SubgroupHandle::from_parts(self.codomain.clone(), ct, sub))
    }

    pub fn preimage(&self, k: &SubgroupHandle) -> Result<SubgroupHandle> {
        if !k.ambient().same_as(&self.codomain) {
            return Err(Error::MixedAmbient);
        }
        let t = self.domain.table()?;
        let set = ElemSet::from_indices(
            t.order(),
            (0..t.order() as u32).filter(|&x| k.set().contains(self.map_index(x))),
        );
        Ok(SubgroupHandle::from_parts(
            self.domain.clone(),
            t.clone(),
            t.generate_set(&set),
        ))
    }
}

/// The action of `g` on the right cosets of `h`, and its kernel (the core of `h`).
pub fn coset_action(g: &Group, h: &SubgroupHandle) -> Result<(Homomorphism, SubgroupHandle)> {
    if !h.ambient().same_as(g) {
        return Err(Error::NotSubgroup);
    }
    let hom = Homomorphism::on_cosets(g, &[h.elem()])?;
    let k = hom.kernel().clone();
    Ok((hom, k))
}

/// `g/n` as the permutation group induced on the cosets of `n`.
pub fn quotient_group(g: &Group, n: &SubgroupHandle) -> Result<(Group, Homomorphism)> {
    if !n.ambient().same_as(g) {
        return Err(Error::MixedAmbient);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let hom = if n.is_trivial() {
        Homomorphism::identity(g)?
    } else {
        Homomorphism::on_cosets(g, &[n.elem()])?
    };
    Ok((hom.codomain().clone(), hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn action_of_s5_on_cosets_of_a5() {
        let s5 = Group::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
        let a5 = SubgroupHandle::new(&s5, &[p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        let (hom, ker) = coset_action(&s5, &a5).unwrap();
        assert_eq!(hom.codomain().degree(), 2);
        assert_eq!(ker, a5);
        let (q, _) = quotient_group(&s5, &a5).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn quotient_of_a4_by_klein() {
        let a4 = Group::from_cycle_strings(4, &["(1 2 3)", "(2 3 4)"]).unwrap();
        let v4 = SubgroupHandle::new(&a4, &[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        let (q, hom) = quotient_group(&a4, &v4).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(hom.kernel(), &v4);
        let whole = SubgroupHandle::whole(&a4).unwrap();
        assert_eq!(hom.image_subgroup(&whole).unwrap().order(), 3);
        let triv_q = SubgroupHandle::trivial(&q).unwrap();
        assert_eq!(hom.preimage(&triv_q).unwrap(), v4);
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let s4 = Group::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let h = SubgroupHandle::new(&s4, &[p("(1 2)", 4)]).unwrap();
        assert!(matches!(quotient_group(&s4, &h), Err(Error::NotNormal)));
    }
}
