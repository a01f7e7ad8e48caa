//! Seeded random objects for the property suites: graded modules as
//! random quotients of frees, CDG-modules via G⁺/cones/twists, and random
//! (closed) morphisms. Everything is deterministic given the seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdg::{g_plus, CdgRing};
use crate::dg::{closed_hom_basis, cone, DgObject};
use crate::graded::{cokernel, generated_submodule, GradedMap, GradedModule};
use crate::grading::Degree;
use crate::scalar::Scalar;


pub struct Gen<S: Scalar> {
    pub rng: ChaCha8Rng,
    pub ctx: S::Ctx,
}

impl<S: Scalar> Gen<S> {
    pub fn new(seed: u64, ctx: S::Ctx) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            ctx,
        }
    }

    pub fn scalar(&mut self) -> S {
        // small integers parsed in context keep Fp values bound to the field
        let v: i64 = self.rng.gen_range(-2..=2);
        let bound = S::parse_token("1", &self.ctx).unwrap_or_else(|_| num_traits::One::one());
        bound * S::from_integer(v)
    }

    pub fn pick<T: Clone>(&mut self, items: &[T]) -> Option<T> {
        if items.is_empty() {
            return None;
        }
        let i = self.rng.gen_range(0..items.len());
        Some(items[i].clone())
    }

    /// Generator degrees that keep a shifted copy of the algebra inside
    /// the window, restricted to a small band around 0 so that random
    /// objects overlap in degree.
    pub fn safe_generator_degrees(&self, ring: &Arc<CdgRing<S>>) -> Vec<Degree> {
        let datum = ring.datum();
        let alg = &ring.base;
        datum
            .all_degrees()
            .into_iter()
            .filter(|&g| match datum.kind {
                crate::grading::GroupKind::IntWindow { .. } => g.0.abs() <= 2,
                crate::grading::GroupKind::Mod2p { .. } => true,
            })
            .filter(|&g| {
                alg.support().iter().all(|&a| {
                    let d = datum.add(a, g);
                    // leave headroom for G⁺ and cones on top of the module
                    datum.component_ok(d)
                        && datum.component_ok(datum.add(d, ring.one()))
                        && datum.component_ok(datum.sub(d, ring.one()))
                })
            })
            .collect()
    }

    /// Random graded module: a quotient of a free module on 1–2 random
    /// generators by a randomly generated submodule.
    pub fn graded_module(&mut self, ring: &Arc<CdgRing<S>>) -> Arc<GradedModule<S>> {
        let alg = &ring.base;
        let safe = self.safe_generator_degrees(ring);
        if safe.is_empty() {
            return Arc::new(GradedModule::zero_module(alg.clone()));
        }
        let n_gens = self.rng.gen_range(1..=2usize);
        let gens: Vec<Degree> = (0..n_gens)
            .filter_map(|_| self.pick(&safe))
            .collect();
        let free = Arc::new(GradedModule::free(alg, &gens).expect("safe generators"));
        // random seed vectors for the submodule
        let n_seeds = self.rng.gen_range(0..=2usize);
        let mut seeds = Vec::new();
        for _ in 0..n_seeds {
            let degs = free.support();
            if let Some(d) = self.pick(&degs) {
                let v: Vec<S> = (0..free.dim_at(d)).map(|_| self.scalar()).collect();
                if v.iter().any(|x| !x.is_zero()) {
                    seeds.push((d, v));
                }
            }
        }
        if seeds.is_empty() {
            return free;
        }
        let (_, incl) = generated_submodule(&free, &seeds);
        let (q, _) = cokernel(&incl);
        q
    }

    /// Random CDG-module built from library constructors (G⁺ of a random
    /// graded module, direct sums, cones of random closed morphisms).
    pub fn cdg_module(&mut self, ring: &Arc<CdgRing<S>>, instance: crate::dg::Instance) -> DgObject<S> {
        let m = self.graded_module(ring);
        let g = match g_plus(ring, &m) {
            Ok(g) => g,
            Err(_) => {
                return DgObject {
                    instance,
                    module: crate::cdg::CdgModule::zero(ring.clone()),
                }
            }
        };
        let x = DgObject {
            instance,
            module: g.module,
        };
        match self.rng.gen_range(0..3u8) {
            0 => x,
            1 => {
                let m2 = self.graded_module(ring);
                match g_plus(ring, &m2) {
                    Ok(g2) => x.direct_sum(&DgObject {
                        instance,
                        module: g2.module,
                    }),
                    Err(_) => x,
                }
            }
            _ => {
                let m2 = self.graded_module(ring);
                match g_plus(ring, &m2) {
                    Ok(g2) => {
                        let y = DgObject {
                            instance,
                            module: g2.module,
                        };
                        match self.closed_map(&x, &y) {
                            Some(f) => match cone(&x, &y, &f) {
                                Ok(c) => c.object,
                                Err(_) => x,
                            },
                            None => x,
                        }
                    }
                    Err(_) => x,
                }
            }
        }
    }

    /// Random element of the closed degree-0 morphisms, when any exist.
    pub fn closed_map(&mut self, x: &DgObject<S>, y: &DgObject<S>) -> Option<GradedMap<S>> {
        let basis = closed_hom_basis(x, y, Degree(0));
        if basis.is_empty() {
            return None;
        }
        let mut acc = GradedMap::zero(x.base().clone(), y.base().clone(), Degree(0));
        for f in &basis {
            acc = acc.add(&f.scale(&self.scalar()));
        }
        Some(acc)
    }

    /// Random homogeneous module map of the given degree.
    pub fn hom_map(
        &mut self,
        x: &Arc<GradedModule<S>>,
        y: &Arc<GradedModule<S>>,
        degree: Degree,
    ) -> GradedMap<S> {
        let basis = crate::graded::hom_graded(x, y, degree);
        let mut acc = GradedMap::zero(x.clone(), y.clone(), degree);
        for f in &basis {
            acc = acc.add(&f.scale(&self.scalar()));
        }
        acc
    }
}
