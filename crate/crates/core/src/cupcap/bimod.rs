//! Bimodule constructions: tensor products over a middle algebra, spaces of bimodule
//! maps, kernels and cokernels.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff_poly::Field;
use crate::linalg::Matrix;
use crate::module_cat::basic::act_matrix;
use crate::module_cat::{Alg, Bimodule, GradedModule, GradedSubspace, Resolution};

/// A bimodule map X -> Y: maps[c][t] from (X e_c)_t to (Y e_c)_t.
pub type BimoduleMap<F> = Vec<Vec<Matrix<F>>>;

/// M ⊗_A N for a C–A bimodule M and an A–D bimodule N.
pub fn tensor_bimodules<F: Field>(
    c_alg: &Alg<F>,
    a_alg: &Alg<F>,
    d_alg: &Alg<F>,
    m: &Bimodule<F>,
    n: &Bimodule<F>,
) -> Bimodule<F> {
    let na = a_alg.n_idem();
    let nc = c_alg.n_idem();
    let mut cols = Vec::new();
    let mut keeps = Vec::new();
    let mut projs = Vec::new();
    let mut offs = Vec::new();
    for delta in 0..d_alg.n_idem() {
        let ncol = &n.cols[delta];
        // offsets[t][κ]: start of (M e_κ)_t ⊗ (N e_δ)_κ inside W_t
        let offsets: Vec<Vec<usize>> = (0..nc)
            .map(|t| {
                let mut acc = 0;
                (0..na)
                    .map(|kappa| {
                        let o = acc;
                        acc += m.cols[kappa].dim(t) * ncol.dim(kappa);
                        o
                    })
                    .collect()
            })
            .collect();
        let wdim = |t: usize| (0..na).map(|kappa| m.cols[kappa].dim(t) * ncol.dim(kappa)).sum::<usize>();
        let degs: Vec<Vec<i64>> = (0..nc)
            .map(|t| {
                let mut d = Vec::with_capacity(wdim(t));
                for kappa in 0..na {
                    for &dm in &m.cols[kappa].degs[t] {
                        for &dn in &ncol.degs[kappa] {
                            d.push(dm + dn);
                        }
                    }
                }
                d
            })
            .collect();
        let act = c_alg
            .gens
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                let mut out = Matrix::zeros(wdim(g.tgt), wdim(g.src));
                for kappa in 0..na {
                    let a = &m.cols[kappa].act[gi];
                    let nn = ncol.dim(kappa);
                    for r in 0..a.rows() {
                        for c in 0..a.cols() {
                            let x = a.get(r, c);
                            if x.is_zero() {
                                continue;
                            }
                            for j in 0..nn {
                                out.set(offsets[g.tgt][kappa] + r * nn + j, offsets[g.src][kappa] + c * nn + j, x.clone());
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let w = GradedModule { degs, act };
        // m·g ⊗ n − m ⊗ g·n for m ∈ (M e_{g.tgt})_t, n ∈ (N e_δ)_{g.src}
        let mut rels = Vec::new();
        for (gi, g) in a_alg.gens.iter().enumerate() {
            let na_src = ncol.dim(g.src);
            let ng = &ncol.act[gi];
            for t in 0..nc {
                let rm = &m.right[gi][t];
                for i in 0..m.cols[g.tgt].dim(t) {
                    for j in 0..na_src {
                        let mut v = vec![F::zero(); wdim(t)];
                        let nsrc = ncol.dim(g.src);
                        for r in 0..rm.rows() {
                            let x = rm.get(r, i);
                            if !x.is_zero() {
                                v[offsets[t][g.src] + r * nsrc + j].add_assign(x);
                            }
                        }
                        let ntgt = ncol.dim(g.tgt);
                        for r in 0..ng.rows() {
                            let x = ng.get(r, j);
                            if !x.is_zero() {
                                let p = offsets[t][g.tgt] + i * ntgt + r;
                                v[p] = v[p].sub(x);
                            }
                        }
                        if v.iter().any(|x| !x.is_zero()) {
                            rels.push((t, v));
                        }
                    }
                }
            }
        }
        let sub = GradedSubspace::span(&w.degs, &rels);
        debug_assert!(w.is_submodule(c_alg, &sub));
        let (q, proj) = w.quotient(c_alg, &sub);
        keeps.push((0..nc).map(|t| sub.complement(t)).collect::<Vec<_>>());
        projs.push(proj);
        offs.push(offsets);
        cols.push(q);
    }
    let right = d_alg
        .gens
        .iter()
        .enumerate()
        .map(|(hi, h)| {
            (0..nc)
                .map(|t| {
                    let keep = &keeps[h.tgt][t];
                    let mut out = Matrix::zeros(cols[h.src].dim(t), keep.len());
                    for (c, &p) in keep.iter().enumerate() {
                        // locate p = offset + i*nn + j in block κ
                        let kappa = (0..na).rev().find(|&kk| offs[h.tgt][t][kk] <= p && m.cols[kk].dim(t) * n.cols[h.tgt].dim(kk) > 0 && p < offs[h.tgt][t][kk] + m.cols[kk].dim(t) * n.cols[h.tgt].dim(kk)).unwrap();
                        let nn = n.cols[h.tgt].dim(kappa);
                        let rel = p - offs[h.tgt][t][kappa];
                        let (i, j) = (rel / nn, rel % nn);
                        let img_n = n.right[hi][kappa].col(j);
                        let ns = n.cols[h.src].dim(kappa);
                        let mut v = vec![F::zero(); projs[h.src][t].cols()];
                        for (r, y) in img_n.into_iter().enumerate() {
                            if !y.is_zero() {
                                v[offs[h.src][t][kappa] + i * ns + r] = y;
                            }
                        }
                        for (r, y) in projs[h.src][t].mul_vec(&v).into_iter().enumerate() {
                            if !y.is_zero() {
                                out.set(r, c, y);
                            }
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    Bimodule { cols, right }
}

/// A basis of the degree-`deg` bimodule maps X -> Y between B–A bimodules.
pub fn bimodule_homs<F: Field>(
    left: &Alg<F>,
    right: &Alg<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    deg: i64,
) -> Vec<BimoduleMap<F>> {
    let na = right.n_idem();
    let res: Vec<Resolution<F>> = (0..na).map(|c| Resolution::new(left, &x.cols[c], 1)).collect();
    // unknowns: for generator z of column c, coefficients on the allowed basis of (Y e_c)_{t_z}
    let mut var: BTreeMap<(usize, usize), (usize, Vec<usize>)> = BTreeMap::new();
    let mut nvar = 0;
    for c in 0..na {
        if res[c].levels.is_empty() {
            continue;
        }
        for (z, s) in res[c].levels[0].summands.iter().enumerate() {
            let allowed: Vec<usize> =
                (0..y.cols[c].dim(s.idem)).filter(|&j| y.cols[c].degs[s.idem][j] == s.shift + deg).collect();
            let n = allowed.len();
            var.insert((c, z), (nvar, allowed));
            nvar += n;
        }
    }
    if nvar == 0 {
        return Vec::new();
    }
    let mut caches: Vec<BTreeMap<usize, Vec<Matrix<F>>>> = vec![BTreeMap::new(); na];
    let mut rows: Vec<Vec<F>> = Vec::new();
    // Σ_z b_z · y_z in (Y e_c)_t as a block of constraint rows
    let push_combination = |rows: &mut Vec<Vec<F>>,
                                caches: &mut Vec<BTreeMap<usize, Vec<Matrix<F>>>>,
                                c: usize,
                                t: usize,
                                terms: &[(usize, Matrix<F>)],
                                extra: Option<(usize, usize, Matrix<F>)>| {
        let dim = y.cols[c].dim(t);
        let mut block = vec![vec![F::zero(); nvar]; dim];
        for (z, b) in terms {
            let (off, allowed) = &var[&(c, *z)];
            let tz = res[c].levels[0].summands[*z].idem;
            let am = act_matrix(left, &y.cols[c], t, tz, b, &mut caches[c]);
            for (k, &j) in allowed.iter().enumerate() {
                for r in 0..dim {
                    let v = am.get(r, j);
                    if !v.is_zero() {
                        block[r][off + k].add_assign(v);
                    }
                }
            }
        }
        if let Some((c2, z2, m)) = extra {
            let (off, allowed) = &var[&(c2, z2)];
            for (k, &j) in allowed.iter().enumerate() {
                for r in 0..dim {
                    let v = m.get(r, j);
                    if !v.is_zero() {
                        block[r][off + k] = block[r][off + k].sub(v);
                    }
                }
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())));
    };
    for c in 0..na {
        let r = &res[c];
        if r.levels.len() < 2 {
            continue;
        }
        for (w, s) in r.levels[1].summands.iter().enumerate() {
            let img = r.maps[1][s.idem].mul_vec(&r.levels[1].generator(w));
            let terms: Vec<(usize, Matrix<F>)> = r.levels[0].to_elems(left, s.idem, &img).into_iter().collect();
            push_combination(&mut rows, &mut caches, c, s.idem, &terms, None);
        }
    }
    for (hi, h) in right.gens.iter().enumerate() {
        let (src, tgt) = (h.src, h.tgt);
        if res[tgt].levels.is_empty() {
            continue;
        }
        for (z, s) in res[tgt].levels[0].summands.iter().enumerate() {
            let t = s.idem;
            let v = x.right[hi][t].mul_vec(&res[tgt].gens[z]);
            let terms: Vec<(usize, Matrix<F>)> = if v.iter().all(|a| a.is_zero()) {
                Vec::new()
            } else {
                let u = res[src].maps[0][t].solve(&v).expect("generators span");
                res[src].levels[0].to_elems(left, t, &u).into_iter().collect()
            };
            push_combination(&mut rows, &mut caches, src, t, &terms, Some((tgt, z, y.right[hi][t].clone())));
        }
    }
    let sols = if rows.is_empty() {
        (0..nvar)
            .map(|i| {
                let mut v = vec![F::zero(); nvar];
                v[i] = F::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows.len(), nvar, rows).kernel()
    };
    sols.into_iter()
        .map(|lam| {
            (0..na)
                .map(|c| {
                    let r = &res[c];
                    if r.levels.is_empty() {
                        return (0..left.n_idem()).map(|t| Matrix::zeros(y.cols[c].dim(t), 0)).collect();
                    }
                    let images: Vec<Vec<F>> = r.levels[0]
                        .summands
                        .iter()
                        .enumerate()
                        .map(|(z, s)| {
                            let (off, allowed) = &var[&(c, z)];
                            let mut v = vec![F::zero(); y.cols[c].dim(s.idem)];
                            for (k, &j) in allowed.iter().enumerate() {
                                v[j] = lam[off + k].clone();
                            }
                            v
                        })
                        .collect();
                    let fmap = r.levels[0].map_to(left, &y.cols[c], &images);
                    (0..left.n_idem())
                        .map(|t| {
                            let a = &r.maps[0][t];
                            if a.cols() == 0 || a.rows() == 0 {
                                return Matrix::zeros(y.cols[c].dim(t), x.cols[c].dim(t));
                            }
                            let sec = a.solve_matrix(&Matrix::identity(a.rows())).expect("surjective");
                            fmap[t].mul(&sec)
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Checks that per-column maps form a bimodule map of the given degree.
pub fn is_bimodule_map<F: Field>(
    left: &Alg<F>,
    right: &Alg<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    f: &BimoduleMap<F>,
) -> bool {
    for c in 0..right.n_idem() {
        if !x.cols[c].is_module_map(left, &y.cols[c], &f[c]) {
            return false;
        }
    }
    right.gens.iter().enumerate().all(|(hi, h)| {
        (0..left.n_idem()).all(|t| f[h.src][t].mul(&x.right[hi][t]) == y.right[hi][t].mul(&f[h.tgt][t]))
    })
}

/// The sub-bimodule cut out by right-stable subspaces of each column.
pub fn sub_bimodule<F: Field>(
    left: &Alg<F>,
    right: &Alg<F>,
    x: &Bimodule<F>,
    subs: &[GradedSubspace<F>],
) -> Bimodule<F> {
    let cols = (0..right.n_idem()).map(|c| x.cols[c].submodule(left, &subs[c]).0).collect();
    let rmaps = right
        .gens
        .iter()
        .enumerate()
        .map(|(hi, h)| {
            (0..left.n_idem())
                .map(|t| {
                    let basis = subs[h.tgt].basis(t);
                    let colsv: Vec<Vec<F>> =
                        basis.iter().map(|(_, v)| subs[h.src].coords(t, &x.right[hi][t].mul_vec(v))).collect();
                    Matrix::from_cols(subs[h.src].dim(t), &colsv)
                })
                .collect()
        })
        .collect();
    Bimodule { cols, right: rmaps }
}

/// The kernel of a bimodule map of degree `deg`.
pub fn kernel_bimodule<F: Field>(
    left: &Alg<F>,
    right: &Alg<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    f: &BimoduleMap<F>,
    deg: i64,
) -> Bimodule<F> {
    let subs: Vec<GradedSubspace<F>> = (0..right.n_idem())
        .map(|c| {
            let tdegs: Vec<Vec<i64>> = y.cols[c].degs.iter().map(|d| d.iter().map(|v| v - deg).collect()).collect();
            x.cols[c].kernel_of(&f[c], &tdegs)
        })
        .collect();
    sub_bimodule(left, right, x, &subs)
}

/// The cokernel of a bimodule map of degree `deg`, in the grading of Y.
pub fn cokernel_bimodule<F: Field>(
    left: &Alg<F>,
    right: &Alg<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    f: &BimoduleMap<F>,
) -> Bimodule<F> {
    let mut cols = Vec::new();
    let mut keeps = Vec::new();
    let mut projs = Vec::new();
    for c in 0..right.n_idem() {
        let mut vecs = Vec::new();
        for t in 0..left.n_idem() {
            for j in 0..x.cols[c].dim(t) {
                let v = f[c][t].col(j);
                if v.iter().any(|a| !a.is_zero()) {
                    vecs.push((t, v));
                }
            }
        }
        let sub = GradedSubspace::span(&y.cols[c].degs, &vecs);
        let (q, proj) = y.cols[c].quotient(left, &sub);
        keeps.push((0..left.n_idem()).map(|t| sub.complement(t)).collect::<Vec<_>>());
        projs.push(proj);
        cols.push(q);
    }
    let rmaps = right
        .gens
        .iter()
        .enumerate()
        .map(|(hi, h)| {
            (0..left.n_idem())
                .map(|t| {
                    let keep = &keeps[h.tgt][t];
                    let mut out = Matrix::zeros(cols[h.src].dim(t), keep.len());
                    for (c, &j) in keep.iter().enumerate() {
                        let img = projs[h.src][t].mul_vec(&y.right[hi][t].col(j));
                        for (r, v) in img.into_iter().enumerate() {
                            if !v.is_zero() {
                                out.set(r, c, v);
                            }
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    Bimodule { cols, right: rmaps }
}

/// Total graded dimension of a bimodule.
pub fn total_dim<F: Field>(x: &Bimodule<F>) -> usize {
    x.cols.iter().map(|c| c.total_dim()).sum()
}

/// Whether every map in a bimodule map is injective.
pub fn is_injective<F: Field>(x: &Bimodule<F>, f: &BimoduleMap<F>) -> bool {
    f.iter().zip(&x.cols).all(|(fc, col)| fc.iter().enumerate().all(|(t, m)| m.rank() == col.dim(t)))
}

/// Whether every map in a bimodule map is surjective.
pub fn is_surjective<F: Field>(y: &Bimodule<F>, f: &BimoduleMap<F>) -> bool {
    f.iter().zip(&y.cols).all(|(fc, col)| fc.iter().enumerate().all(|(t, m)| m.rank() == col.dim(t)))
}

/// A B–A bimodule X read as an A^op–B^op bimodule, the generators of each opposite
/// algebra indexed as in the original.
pub fn opposite_bimodule<F: Field>(left: &Alg<F>, right: &Alg<F>, x: &Bimodule<F>) -> Bimodule<F> {
    let cols = (0..left.n_idem())
        .map(|mu| GradedModule {
            degs: (0..right.n_idem()).map(|kappa| x.cols[kappa].degs[mu].clone()).collect(),
            act: (0..right.gens.len()).map(|g| x.right[g][mu].clone()).collect(),
        })
        .collect();
    let rmaps = (0..left.gens.len())
        .map(|g| (0..right.n_idem()).map(|kappa| x.cols[kappa].act[g].clone()).collect())
        .collect();
    Bimodule { cols, right: rmaps }
}
