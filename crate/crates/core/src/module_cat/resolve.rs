//! Minimal projective resolutions, chain-map lifting, and derived tensor product with a
//! bimodule via the perturbation of the resolution double complex.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::alg::Alg;
use super::complex::{ProjComplex, Summand};
use super::module::{indices_by_degree, GradedModule, GradedSubspace};
use crate::coeff_poly::Field;
use crate::linalg::Matrix;

/// A direct sum of shifted projectives as a module, with per-summand offsets.
#[derive(Clone, Debug)]
pub struct FreeModule<F: Field> {
    pub summands: Vec<Summand>,
    pub module: GradedModule<F>,
    /// offsets[t][z]: start of summand z inside e_t F.
    pub offsets: Vec<Vec<usize>>,
}

impl<F: Field> FreeModule<F> {
    pub fn new(alg: &Alg<F>, summands: Vec<Summand>) -> Self {
        let parts: Vec<GradedModule<F>> =
            summands.iter().map(|s| GradedModule::projective(alg, s.idem, s.shift)).collect();
        let module = GradedModule::direct_sum(&parts, alg);
        let offsets = (0..alg.n_idem())
            .map(|t| {
                let mut acc = 0;
                summands
                    .iter()
                    .map(|s| {
                        let o = acc;
                        acc += alg.block(t, s.idem).len();
                        o
                    })
                    .collect()
            })
            .collect();
        FreeModule { summands, module, offsets }
    }

    /// The generator of summand z as a vector in e_{idem} F.
    pub fn generator(&self, z: usize) -> Vec<F> {
        let i = self.summands[z].idem;
        let mut v = vec![F::zero(); self.module.dim(i)];
        v[self.offsets[i][z]] = F::one();
        v
    }

    /// Vector in e_t F from algebra elements per summand.
    pub fn from_elems(&self, alg: &Alg<F>, t: usize, elems: &BTreeMap<usize, Matrix<F>>) -> Vec<F> {
        let mut v = vec![F::zero(); self.module.dim(t)];
        for (&z, x) in elems {
            let c = alg.coords(t, self.summands[z].idem, x);
            for (j, y) in c.into_iter().enumerate() {
                v[self.offsets[t][z] + j] = y;
            }
        }
        v
    }

    /// Algebra elements per summand from a vector in e_t F.
    pub fn to_elems(&self, alg: &Alg<F>, t: usize, v: &[F]) -> BTreeMap<usize, Matrix<F>> {
        let mut out = BTreeMap::new();
        for (z, s) in self.summands.iter().enumerate() {
            let n = alg.block(t, s.idem).len();
            let o = self.offsets[t][z];
            let c = &v[o..o + n];
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            out.insert(z, alg.from_coords(t, s.idem, c));
        }
        out
    }

    /// Module map F -> N sending generator z to images[z] ∈ e_{idem z} N.
    pub fn map_to(&self, alg: &Alg<F>, target: &GradedModule<F>, images: &[Vec<F>]) -> Vec<Matrix<F>> {
        let n = alg.n_idem();
        let mut maps: Vec<Matrix<F>> = (0..n).map(|t| Matrix::zeros(target.dim(t), self.module.dim(t))).collect();
        for (z, s) in self.summands.iter().enumerate() {
            if images[z].iter().all(|x| x.is_zero()) {
                continue;
            }
            let imgs = target.word_images(alg, s.idem, &images[z]);
            for (b, e) in alg.cols[s.idem].iter().enumerate() {
                let c = self.offsets[e.tgt][z] + alg.local_index(s.idem, b);
                for (r, x) in imgs[b].iter().enumerate() {
                    if !x.is_zero() {
                        maps[e.tgt].set(r, c, x.clone());
                    }
                }
            }
        }
        maps
    }
}

/// Solves map(x) = y for x of internal degree `deg` in e_t of a free module.
fn solve_in_degree<F: Field>(
    src: &GradedModule<F>,
    map: &Matrix<F>,
    t: usize,
    deg: i64,
    y: &[F],
) -> Option<Vec<F>> {
    let cols: Vec<usize> = (0..src.dim(t)).filter(|&j| src.degs[t][j] == deg).collect();
    let rows: Vec<usize> = (0..map.rows()).collect();
    let sub = map.submatrix(&rows, &cols);
    let x = sub.solve(y)?;
    let mut out = vec![F::zero(); src.dim(t)];
    for (v, &j) in x.into_iter().zip(&cols) {
        out[j] = v;
    }
    Some(out)
}

/// Minimal projective resolution of a module, levels indexed by depth (level n sits in
/// homological degree -n).
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub levels: Vec<FreeModule<F>>,
    /// maps[n]: level n -> level n-1 per idempotent (maps[0] is the augmentation onto M).
    pub maps: Vec<Vec<Matrix<F>>>,
    /// Images of the level-0 generators in M.
    pub gens: Vec<Vec<F>>,
    pub target: GradedModule<F>,
    /// The resolution stopped because the kernel vanished.
    pub complete: bool,
}

/// Generators of the top of a module: complements of the radical at basic idempotents.
pub fn top_generators<F: Field>(alg: &Alg<F>, m: &GradedModule<F>) -> Vec<(Summand, Vec<F>)> {
    let mut rad = Vec::new();
    for j in 0..alg.n_idem() {
        if !alg.basic[j] {
            continue;
        }
        for c in 0..m.dim(j) {
            let mut v = vec![F::zero(); m.dim(j)];
            v[c] = F::one();
            for (b, img) in m.word_images(alg, j, &v).into_iter().enumerate().skip(1) {
                if alg.basic[alg.cols[j][b].tgt] {
                    rad.push((alg.cols[j][b].tgt, img));
                }
            }
        }
    }
    let sub = GradedSubspace::span(&m.degs, &rad);
    let mut out = Vec::new();
    for t in 0..alg.n_idem() {
        if !alg.basic[t] {
            continue;
        }
        for j in sub.complement(t) {
            let mut v = vec![F::zero(); m.dim(t)];
            v[j] = F::one();
            out.push((Summand { idem: t, shift: m.degs[t][j] }, v));
        }
    }
    out
}

impl<F: Field> Resolution<F> {
    pub fn new(alg: &Alg<F>, m: &GradedModule<F>, max_depth: usize) -> Self {
        let mut levels = Vec::new();
        let mut maps = Vec::new();
        let mut gens = Vec::new();
        let mut cur = m.clone();
        let mut incl: Option<Vec<Matrix<F>>> = None;
        let mut complete = false;
        for n in 0..=max_depth {
            if cur.is_zero() {
                complete = true;
                break;
            }
            let top = top_generators(alg, &cur);
            let summands: Vec<Summand> = top.iter().map(|x| x.0).collect();
            let free = FreeModule::new(alg, summands);
            let images: Vec<Vec<F>> = top.iter().map(|x| x.1.clone()).collect();
            let pi = free.map_to(alg, &cur, &images);
            for t in 0..alg.n_idem() {
                assert_eq!(pi[t].rank(), cur.dim(t), "basic idempotents fail to generate");
            }
            let ker = free.module.kernel_of(&pi, &cur.degs);
            let (kmod, kincl) = free.module.submodule(alg, &ker);
            let down = match &incl {
                None => {
                    gens = images;
                    pi
                }
                Some(inc) => (0..alg.n_idem()).map(|t| inc[t].mul(&pi[t])).collect(),
            };
            levels.push(free);
            maps.push(down);
            cur = kmod;
            incl = Some(kincl);
            if n == max_depth && cur.is_zero() {
                complete = true;
            }
        }
        Resolution { levels, maps, gens, target: m.clone(), complete }
    }

    pub fn length(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// The resolution as a complex (level n in homological degree -n), shifted internally.
    pub fn to_complex(&self, alg: &Alg<F>, shift: i64) -> ProjComplex<F> {
        let mut c = ProjComplex::zero();
        for (n, lv) in self.levels.iter().enumerate() {
            c.terms.insert(
                -(n as i64),
                lv.summands.iter().map(|s| Summand { idem: s.idem, shift: s.shift + shift }).collect(),
            );
        }
        for n in 1..self.levels.len() {
            for (z, s) in self.levels[n].summands.iter().enumerate() {
                let g = self.levels[n].generator(z);
                let img = self.maps[n][s.idem].mul_vec(&g);
                for (w, x) in self.levels[n - 1].to_elems(alg, s.idem, &img) {
                    c.set_entry(-(n as i64), z, w, x);
                }
            }
        }
        c
    }

    /// Solves maps[n](x) = y in e_t of level n, with x of degree `deg` (before any shift).
    pub fn solve(&self, n: usize, t: usize, deg: i64, y: &[F]) -> Option<Vec<F>> {
        if n >= self.levels.len() {
            return if y.iter().all(|v| v.is_zero()) { Some(Vec::new()) } else { None };
        }
        solve_in_degree(&self.levels[n].module, &self.maps[n][t], t, deg, y)
    }
}

/// A B–A bimodule: left B-modules X e_i for each idempotent i of A, with right action
/// of each generator g of A as maps X e_{g.tgt} -> X e_{g.src} per B-idempotent.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub cols: Vec<GradedModule<F>>,
    pub right: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> Bimodule<F> {
    /// A as an A–A bimodule.
    pub fn regular(alg: &Alg<F>) -> Self {
        let n = alg.n_idem();
        let cols = (0..n).map(|s| GradedModule::projective(alg, s, 0)).collect();
        let right = alg
            .gens
            .iter()
            .map(|g| {
                (0..n)
                    .map(|t| {
                        let src = alg.block(t, g.tgt);
                        let tgt = alg.block(t, g.src);
                        let mut m = Matrix::zeros(tgt.len(), src.len());
                        for (c, &b) in src.iter().enumerate() {
                            let p = alg.cols[g.tgt][b].mat.mul(&g.mat);
                            for (r, x) in alg.coords(t, g.src, &p).into_iter().enumerate() {
                                if !x.is_zero() {
                                    m.set(r, c, x);
                                }
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Bimodule { cols, right }
    }

    /// Right action of every basis element of A e_j, indexed like `alg.cols[j]`; each is a
    /// map X e_{tgt} -> X e_j per left idempotent.
    pub fn right_basis(&self, left: &Alg<F>, alg: &Alg<F>, j: usize) -> Vec<Vec<Matrix<F>>> {
        let nb = left.n_idem();
        let mut out: Vec<Vec<Matrix<F>>> = Vec::new();
        for e in &alg.cols[j] {
            let m = match e.parent {
                None => (0..nb).map(|t| Matrix::identity(self.cols[j].dim(t))).collect(),
                Some((g, p)) => (0..nb).map(|t| out[p][t].mul(&self.right[g][t])).collect(),
            };
            out.push(m);
        }
        out
    }

    /// Right action of a ∈ e_i A e_j: X e_i -> X e_j per left idempotent.
    pub fn right_elem(
        &self,
        left: &Alg<F>,
        alg: &Alg<F>,
        i: usize,
        j: usize,
        a: &Matrix<F>,
        cache: &mut BTreeMap<usize, Vec<Vec<Matrix<F>>>>,
    ) -> Vec<Matrix<F>> {
        let rb = cache.entry(j).or_insert_with(|| self.right_basis(left, alg, j));
        let c = alg.coords(i, j, a);
        (0..left.n_idem())
            .map(|t| {
                let mut m = Matrix::zeros(self.cols[j].dim(t), self.cols[i].dim(t));
                for (x, &b) in c.iter().zip(alg.block(i, j)) {
                    if !x.is_zero() {
                        m.add_assign(&rb[b][t].scale(x));
                    }
                }
                m
            })
            .collect()
    }

    /// Left module structure, right maps being left-linear, and the right relations.
    pub fn is_bimodule(&self, left: &Alg<F>, alg: &Alg<F>) -> bool {
        if !self.cols.iter().all(|c| c.is_module(left)) {
            return false;
        }
        for (gi, g) in alg.gens.iter().enumerate() {
            if !self.cols[g.tgt].is_module_map(left, &self.cols[g.src], &self.right[gi]) {
                return false;
            }
        }
        for j in 0..alg.n_idem() {
            let rb = self.right_basis(left, alg, j);
            for (b, e) in alg.cols[j].iter().enumerate() {
                for &gi in alg.gens_from(e.tgt) {
                    let g = &alg.gens[gi];
                    let prod = g.mat.mul(&e.mat);
                    let c = alg.coords(g.tgt, j, &prod);
                    for t in 0..left.n_idem() {
                        let mut lhs = Matrix::zeros(self.cols[j].dim(t), self.cols[g.tgt].dim(t));
                        for (x, &bb) in c.iter().zip(alg.block(g.tgt, j)) {
                            if !x.is_zero() {
                                lhs.add_assign(&rb[bb][t].scale(x));
                            }
                        }
                        if lhs != rb[b][t].mul(&self.right[gi][t]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Derived tensor product X ⊗^L C of a B–A bimodule with a complex of A-projectives,
/// followed by Gaussian elimination. Resolutions of the columns X e_i are truncated at
/// `max_depth`. Where a truncated resolution leaves a homotopy unliftable, every term at
/// or below that homological degree is dropped, so the result is a complex and is exact
/// in the degrees it keeps.
pub fn apply_bimodule<F: Field>(
    left: &Alg<F>,
    alg: &Alg<F>,
    x: &Bimodule<F>,
    c: &ProjComplex<F>,
    max_depth: usize,
) -> ProjComplex<F> {
    let mut res: BTreeMap<usize, Resolution<F>> = BTreeMap::new();
    for v in c.terms.values() {
        for s in v {
            res.entry(s.idem).or_insert_with(|| Resolution::new(left, &x.cols[s.idem], max_depth));
        }
    }
    let mut rcache = BTreeMap::new();
    // summands α = (h, index)
    let alphas: Vec<(i64, usize)> =
        c.terms.iter().flat_map(|(&h, v)| (0..v.len()).map(move |a| (h, a))).collect();
    let summ = |al: (i64, usize)| c.terms[&al.0][al.1];
    // D[(α, γ)][n]: per-idempotent maps from level n of Res_α to level n+r-1 of Res_γ
    let mut dmaps: BTreeMap<((i64, usize), (i64, usize)), Vec<Vec<Matrix<F>>>> = BTreeMap::new();
    // highest source degree whose component into a truncated resolution was skipped
    let mut floor: Option<i64> = None;

    let hs: Vec<i64> = c.terms.keys().copied().collect();
    let hspan = match (hs.first(), hs.last()) {
        (Some(a), Some(b)) => b - a,
        _ => 0,
    };
    for r in 1..=hspan {
        for &al in &alphas {
            let ga: Vec<(i64, usize)> = (0..c.term(al.0 + r).len()).map(|g| (al.0 + r, g)).collect();
            for gm in ga {
                if r == 1 && c.entry(al.0, al.1, gm.1).is_none() {
                    continue;
                }
                let sa = summ(al);
                let sg = summ(gm);
                let ra = &res[&sa.idem];
                let rg = &res[&sg.idem];
                let sign_g = if (gm.0 + 1).rem_euclid(2) == 0 { F::one() } else { F::one().neg() };
                let sign_a = if al.0.rem_euclid(2) == 0 { F::one() } else { F::one().neg() };
                let mut levels: Vec<Vec<Matrix<F>>> = Vec::new();
                let mut any = false;
                for n in 0..ra.levels.len() {
                    let tgt_level = n + r as usize - 1;
                    let src_free = &ra.levels[n];
                    let mut images: Vec<Vec<F>> = Vec::new();
                    let tgt_exists = tgt_level < rg.levels.len();
                    for (z, s) in src_free.summands.iter().enumerate() {
                        let t = s.idem;
                        if !tgt_exists {
                            if !rg.complete {
                                let h = al.0 - n as i64;
                                floor = Some(floor.map_or(h, |f: i64| f.max(h)));
                            }
                            images.push(Vec::new());
                            continue;
                        }
                        let gen = src_free.generator(z);
                        let deg = s.shift + sa.shift - sg.shift;
                        let sol = if r == 1 {
                            let a = c.entry(al.0, al.1, gm.1).unwrap();
                            if n == 0 {
                                let ra_map = x.right_elem(left, alg, sa.idem, sg.idem, a, &mut rcache);
                                Some(ra_map[t].mul_vec(&ra.gens[z]))
                            } else if levels[n - 1].is_empty() {
                                None
                            } else {
                                let u = ra.maps[n][t].mul_vec(&gen);
                                Some(levels[n - 1][t].mul_vec(&u))
                            }
                        } else {
                            // Φ + D_r^{(n-1)} δ'_α, target level n+r-2
                            let tl = n + r as usize - 2;
                            let mut rhs = vec![F::zero(); rg.levels[tl].module.dim(t)];
                            if n > 0 && !levels[n - 1].is_empty() {
                                let u = ra.maps[n][t].mul_vec(&gen);
                                let w = levels[n - 1][t].mul_vec(&u);
                                for (o, y) in rhs.iter_mut().zip(&w) {
                                    o.add_assign(&y.mul(&sign_a));
                                }
                            }
                            for a in 1..r {
                                let hb = al.0 + a;
                                for bi in 0..c.term(hb).len() {
                                    let be = (hb, bi);
                                    let (Some(d1), Some(d2)) = (dmaps.get(&(al, be)), dmaps.get(&(be, gm))) else {
                                        continue;
                                    };
                                    let l1 = n + a as usize - 1;
                                    if d1.len() <= n || d1[n].is_empty() || d2.len() <= l1 || d2[l1].is_empty() {
                                        continue;
                                    }
                                    let w = d2[l1][t].mul_vec(&d1[n][t].mul_vec(&gen));
                                    for (o, y) in rhs.iter_mut().zip(&w) {
                                        o.add_assign(y);
                                    }
                                }
                            }
                            Some(rhs.into_iter().map(|v| v.mul(&sign_g)).collect())
                        };
                        match sol {
                            None => images.push(vec![F::zero(); rg.levels[tgt_level].module.dim(t)]),
                            Some(rhs) => {
                                if rhs.iter().all(|v| v.is_zero()) {
                                    images.push(vec![F::zero(); rg.levels[tgt_level].module.dim(t)]);
                                    continue;
                                }
                                let xsol = rg.solve(tgt_level, t, deg, &rhs).expect("lifting failed");
                                any = true;
                                images.push(xsol);
                            }
                        }
                    }
                    if tgt_exists && images.iter().any(|v| v.iter().any(|y| !y.is_zero())) {
                        levels.push(src_free.map_to(left, &rg.levels[tgt_level].module, &images));
                    } else {
                        levels.push(Vec::new());
                    }
                }
                if any {
                    dmaps.insert((al, gm), levels);
                }
            }
        }
    }

    // assemble the total complex
    let mut out = ProjComplex::zero();
    let mut index: BTreeMap<((i64, usize), usize, usize), (i64, usize)> = BTreeMap::new();
    for &al in &alphas {
        let sa = summ(al);
        let ra = &res[&sa.idem];
        for (n, lv) in ra.levels.iter().enumerate() {
            let h = al.0 - n as i64;
            for (z, s) in lv.summands.iter().enumerate() {
                let v = out.terms.entry(h).or_default();
                index.insert((al, n, z), (h, v.len()));
                v.push(Summand { idem: s.idem, shift: s.shift + sa.shift });
            }
        }
    }
    for &al in &alphas {
        let sa = summ(al);
        let ra = &res[&sa.idem];
        let sign = if al.0.rem_euclid(2) == 0 { F::one() } else { F::one().neg() };
        for n in 1..ra.levels.len() {
            for (z, s) in ra.levels[n].summands.iter().enumerate() {
                let img = ra.maps[n][s.idem].mul_vec(&ra.levels[n].generator(z));
                let (h, i) = index[&(al, n, z)];
                for (w, e) in ra.levels[n - 1].to_elems(left, s.idem, &img) {
                    let (_, j) = index[&(al, n - 1, w)];
                    out.set_entry(h, i, j, e.scale(&sign));
                }
            }
        }
    }
    for (&(al, gm), levels) in &dmaps {
        let sa = summ(al);
        let sg = summ(gm);
        let ra = &res[&sa.idem];
        let rg = &res[&sg.idem];
        let r = (gm.0 - al.0) as usize;
        for (n, m) in levels.iter().enumerate() {
            if m.is_empty() {
                continue;
            }
            let tl = n + r - 1;
            for (z, s) in ra.levels[n].summands.iter().enumerate() {
                let img = m[s.idem].mul_vec(&ra.levels[n].generator(z));
                let (h, i) = index[&(al, n, z)];
                for (w, e) in rg.levels[tl].to_elems(left, s.idem, &img) {
                    let (_, j) = index[&(gm, tl, w)];
                    out.set_entry(h, i, j, e);
                }
            }
        }
    }
    if let Some(f) = floor {
        out = out.truncate_below(f + 1);
    }
    debug_assert!(out.is_complex(left));
    out.gaussian_eliminate(left)
}

/// Graded dimensions of a module's pieces, flattened to (idempotent, degree) -> dim.
pub fn module_profile<F: Field>(m: &GradedModule<F>) -> BTreeMap<(usize, i64), usize> {
    let mut out = BTreeMap::new();
    for (i, d) in m.degs.iter().enumerate() {
        for (q, ix) in indices_by_degree(d) {
            out.insert((i, q), ix.len());
        }
    }
    out
}
