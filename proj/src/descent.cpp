#include "descent_forge/descent.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace descent {

std::vector<std::string> validate_subbimodule(const SubBimodule& I) {
    std::vector<std::string> defects;
    const FiniteAlgebra& b = I.base.source();
    const FiniteAlgebra& s = I.base.target();
    if (I.space.ambient_dim() != s.dim()) {
        defects.push_back("subspace ambient dimension does not match the extension");
        return defects;
    }
    for (u32 t = 0; t < b.dim(); ++t) {
        Vec ib = I.base.apply(unit_vec(b.dim(), t));
        for (u32 k = 0; k < I.space.dim(); ++k) {
            Vec v = I.space.basis().row(k);
            if (!I.space.contains(s.mul(ib, v)))
                defects.push_back("left multiple of basis vector " + std::to_string(k) +
                                  " by base element " + std::to_string(t) + " escapes");
            if (!I.space.contains(s.mul(v, ib)))
                defects.push_back("right multiple of basis vector " + std::to_string(k) +
                                  " by base element " + std::to_string(t) + " escapes");
        }
    }
    return defects;
}

SubBimodule unit_subbimodule(const Extension& i) { return SubBimodule{i, i.image()}; }

Bimodule subbimodule_as_bimodule(const SubBimodule& I) {
    const FiniteAlgebra& b = I.base.source();
    const FiniteAlgebra& s = I.base.target();
    u32 d = I.space.dim();
    std::vector<Matrix> lact(b.dim()), ract(b.dim());
    for (u32 t = 0; t < b.dim(); ++t) {
        Vec ib = I.base.apply(unit_vec(b.dim(), t));
        Matrix l(d, d, s.field()), r(d, d, s.field());
        for (u32 k = 0; k < d; ++k) {
            Vec v = I.space.basis().row(k);
            l.set_col(k, I.space.coords(s.mul(ib, v)));
            r.set_col(k, I.space.coords(s.mul(v, ib)));
        }
        lact[t] = l;
        ract[t] = r;
    }
    return Bimodule(b, b, d, lact, ract);
}

std::vector<SubBimodule> enumerate_subbimodules(const Extension& i, u64 budget) {
    if (!i.injective()) throw Error("enumerate_subbimodules: extension is not injective");
    const FiniteAlgebra& b = i.source();
    const FiniteAlgebra& s = i.target();
    std::vector<Vec> ib(b.dim());
    for (u32 t = 0; t < b.dim(); ++t) ib[t] = i.apply(unit_vec(b.dim(), t));
    std::vector<SubBimodule> out;
    for_each_subspace(s.dim(), s.field(), budget, [&](const Subspace& sub) {
        for (u32 k = 0; k < sub.dim(); ++k) {
            Vec v = sub.basis().row(k);
            for (u32 t = 0; t < b.dim(); ++t)
                if (!sub.contains(s.mul(ib[t], v)) || !sub.contains(s.mul(v, ib[t]))) return;
        }
        out.push_back(SubBimodule{i, sub});
    });
    std::sort(out.begin(), out.end(),
              [](const SubBimodule& x, const SubBimodule& y) { return x.space < y.space; });
    return out;
}

SubBimodule subbimodule_product(const SubBimodule& a, const SubBimodule& b) {
    if (!(a.base == b.base)) throw Error("subbimodule_product: different extensions");
    const FiniteAlgebra& s = a.base.target();
    std::vector<Vec> prods;
    for (u32 r = 0; r < a.space.dim(); ++r)
        for (u32 t = 0; t < b.space.dim(); ++t)
            prods.push_back(s.mul(a.space.basis().row(r), b.space.basis().row(t)));
    SubBimodule out{a.base, Subspace::span_of_vecs(prods, s.dim(), s.field())};
    if (!validate_subbimodule(out).empty())
        throw InternalError("product of subbimodules is not closed under the actions");
    return out;
}

MMaps m_maps(const SubBimodule& I) {
    const FiniteAlgebra& s = I.base.target();
    const PrimeField& f = s.field();
    u32 ns = s.dim(), d = I.space.dim();
    Bimodule ibb = subbimodule_as_bimodule(I);
    MMaps out;
    out.si = tensor_over(extension_bimodule_sb(I.base), ibb);
    out.is = tensor_over(ibb, extension_bimodule_bs(I.base));
    Matrix fl(ns, out.si.full_dim(), f);
    Matrix fr(ns, out.is.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 k = 0; k < d; ++k) {
            Vec v = I.space.basis().row(k);
            fl.set_col(a * d + k, s.mul(unit_vec(ns, a), v));
            fr.set_col(k * ns + a, s.mul(v, unit_vec(ns, a)));
        }
    out.left = induced_map_to_space(out.si, fl);
    out.right = induced_map_to_space(out.is, fr);
    out.left_invertible = out.si.dim() == ns && out.left.rank() == ns;
    out.right_invertible = out.is.dim() == ns && out.right.rank() == ns;
    return out;
}

SubBimoduleMonoid subbimodule_monoid(const Extension& i, u64 budget) {
    SubBimoduleMonoid m;
    m.elements = enumerate_subbimodules(i, budget);
    std::map<Subspace, u32> index;
    for (u32 k = 0; k < m.elements.size(); ++k) index.emplace(m.elements[k].space, k);
    auto find = [&](const Subspace& s) -> u32 {
        auto it = index.find(s);
        if (it == index.end())
            throw InternalError("subbimodule product escaped the enumerated monoid");
        return it->second;
    };
    u32 n = static_cast<u32>(m.elements.size());
    m.table.size = n;
    m.table.identity = find(i.image());
    m.table.table.assign(size_t(n) * n, 0);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            m.table.table[size_t(a) * n + b] =
                find(subbimodule_product(m.elements[a], m.elements[b]).space);
    auto defects = validate_monoid(m.table);
    if (!defects.empty()) throw InternalError("subbimodule products: " + defects.front());
    for (u32 k = 0; k < n; ++k) {
        MMaps mm = m_maps(m.elements[k]);
        if (mm.left_invertible) m.left.push_back(k);
        if (mm.right_invertible) m.right.push_back(k);
    }
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            if (m.table.at(a, b) == m.table.identity && m.table.at(b, a) == m.table.identity) {
                m.invertible.push_back(a);
                break;
            }
    return m;
}

namespace {

Matrix checked_gamma_result(const Coring& coring, const Matrix& g, const char* what) {
    auto defects = validate_coring_morphism(coring, g);
    if (!defects.empty())
        throw InternalError(std::string(what) + " is not a coring morphism: " + defects.front());
    return g;
}

}  // namespace

Matrix gamma(const SweedlerCoring& sc, const SubBimodule& I) {
    if (!(I.base == sc.base)) throw Error("gamma: subbimodule belongs to a different extension");
    MMaps mm = m_maps(I);
    if (!mm.left_invertible) throw Error("gamma: m^l of the subbimodule is not bijective");
    const FiniteAlgebra& s = sc.base.target();
    const PrimeField& f = s.field();
    u32 ns = s.dim(), d = I.space.dim();
    Bimodule ibb = subbimodule_as_bimodule(I);
    TensorQuotient mid =
        tensor_chain({extension_bimodule_sb(sc.base), ibb, extension_bimodule_bs(sc.base)});
    Matrix minv = *mm.left.inverse();
    // (m^l)^{-1} (x) 1 : S (x)_B S -> S (x)_B I (x)_B S.
    Matrix f1(mid.dim(), size_t(ns) * ns, f);
    for (u32 a = 0; a < ns; ++a) {
        Vec lift = mm.si.section().apply(minv.apply(unit_vec(ns, a)));
        for (u32 b = 0; b < ns; ++b) {
            Vec w(size_t(mid.full_dim()), 0);
            for (u32 l = 0; l < ns * d; ++l)
                if (lift[l] != 0) w[size_t(l) * ns + b] = lift[l];
            f1.set_col(a * ns + b, mid.project().apply(w));
        }
    }
    Matrix g1 = induced_map_to_space(sc.t2, f1);
    // 1 (x) m^r : S (x)_B I (x)_B S -> S (x)_B S.
    Matrix f2(sc.t2.dim(), mid.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 k = 0; k < d; ++k) {
            Vec v = I.space.basis().row(k);
            for (u32 u = 0; u < ns; ++u)
                f2.set_col((a * d + k) * ns + u,
                           sc.t2.pure2(unit_vec(ns, a), s.mul(v, unit_vec(ns, u))));
        }
    Matrix g = induced_map_to_space(mid, f2) * g1;
    return checked_gamma_result(sc.coring, g, "gamma");
}

Matrix gamma_prime(const SweedlerCoring& sc, const SubBimodule& I) {
    if (!(I.base == sc.base))
        throw Error("gamma_prime: subbimodule belongs to a different extension");
    MMaps mm = m_maps(I);
    if (!mm.right_invertible) throw Error("gamma_prime: m^r of the subbimodule is not bijective");
    const FiniteAlgebra& s = sc.base.target();
    const PrimeField& f = s.field();
    u32 ns = s.dim(), d = I.space.dim();
    Bimodule ibb = subbimodule_as_bimodule(I);
    TensorQuotient mid =
        tensor_chain({extension_bimodule_sb(sc.base), ibb, extension_bimodule_bs(sc.base)});
    Matrix rinv = *mm.right.inverse();
    // 1 (x) (m^r)^{-1} : S (x)_B S -> S (x)_B I (x)_B S.
    Matrix f1(mid.dim(), size_t(ns) * ns, f);
    for (u32 b = 0; b < ns; ++b) {
        Vec lift = mm.is.section().apply(rinv.apply(unit_vec(ns, b)));
        for (u32 a = 0; a < ns; ++a) {
            Vec w(size_t(mid.full_dim()), 0);
            for (u32 l = 0; l < d * ns; ++l)
                if (lift[l] != 0) w[size_t(a) * d * ns + l] = lift[l];
            f1.set_col(a * ns + b, mid.project().apply(w));
        }
    }
    Matrix g1 = induced_map_to_space(sc.t2, f1);
    // m^l (x) 1 : S (x)_B I (x)_B S -> S (x)_B S.
    Matrix f2(sc.t2.dim(), mid.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 k = 0; k < d; ++k) {
            Vec av = s.mul(unit_vec(ns, a), I.space.basis().row(k));
            for (u32 u = 0; u < ns; ++u)
                f2.set_col((a * d + k) * ns + u, sc.t2.pure2(av, unit_vec(ns, u)));
        }
    Matrix g = induced_map_to_space(mid, f2) * g1;
    return checked_gamma_result(sc.coring, g, "gamma_prime");
}

SubBimodule j_of(const SweedlerCoring& sc, const Matrix& g, Side side) {
    const FiniteAlgebra& s = sc.base.target();
    u32 ns = s.dim();
    const Vec& one = s.unit();
    Matrix a(sc.t2.dim(), ns, s.field());
    for (u32 k = 0; k < ns; ++k) {
        Vec e = unit_vec(ns, k);
        Vec col = side == Side::left
                      ? sub_vec(s.field(), g.apply(sc.t2.pure2(e, one)), sc.t2.pure2(one, e))
                      : sub_vec(s.field(), sc.t2.pure2(e, one), g.apply(sc.t2.pure2(one, e)));
        a.set_col(k, col);
    }
    SubBimodule j{sc.base, Subspace::span_of(a.kernel())};
    auto defects = validate_subbimodule(j);
    if (!defects.empty())
        throw InternalError("invariants of a coring endomorphism are not a subbimodule: " +
                            defects.front());
    return j;
}

DescentConditions descent_conditions(const SweedlerCoring& sc, const Matrix& g) {
    DescentConditions r{.j = j_of(sc, g, Side::left)};
    const FiniteAlgebra& s = sc.base.target();
    const PrimeField& f = s.field();
    u32 ns = s.dim();
    const Vec& one = s.unit();
    MMaps mm = m_maps(r.j);
    r.j_left_invertible = mm.left_invertible;

    // Evaluation of the twisted comodule on its invariants.
    Comodule twist = twist_comodule(sc, g);
    Subspace eq = comodule_equalizer(twist);
    Bimodule eqmod = equalizer_module(twist, eq);
    TensorQuotient se = tensor_over(extension_bimodule_sb(sc.base), eqmod);
    Matrix fe(ns, se.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 k = 0; k < eq.dim(); ++k)
            fe.set_col(a * eq.dim() + k, s.mul(unit_vec(ns, a), eq.basis().row(k)));
    Matrix eps = induced_map_to_space(se, fe);
    r.counit_component_bijective = se.dim() == ns && eps.rank() == ns;
    r.twist_equalizer_equals_j = eq == r.j.space;
    r.counit_is_left_multiplication = r.twist_equalizer_equals_j && eps == mm.left;

    // Injectivity of the tensored inclusion S (x)_B J -> S (x)_B S.
    u32 d = r.j.space.dim();
    Matrix fi(size_t(ns) * ns, mm.si.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 k = 0; k < d; ++k) {
            Vec v = r.j.space.basis().row(k);
            Vec w(size_t(ns) * ns, 0);
            for (u32 m = 0; m < ns; ++m) w[size_t(a) * ns + m] = v[m];
            fi.set_col(a * d + k, w);
        }
    Matrix incl = induced_map(mm.si, fi, sc.t2);
    r.tensored_inclusion_injective = incl.rank() == mm.si.dim();

    // The tensored pair s (x) t -> s (x) 1 (x) t and s (x) t -> s (x) g(t (x) 1):
    // preservation means the image of the tensored inclusion is exactly the
    // equalizer of the pair and the inclusion stays injective.
    Matrix feta(size_t(ns) * ns * ns, size_t(ns) * ns, f);
    Matrix fth(size_t(ns) * ns * ns, size_t(ns) * ns, f);
    for (u32 b = 0; b < ns; ++b) {
        Vec th = sc.t2.section().apply(g.apply(sc.t2.pure2(unit_vec(ns, b), one)));
        for (u32 a = 0; a < ns; ++a) {
            Vec we(size_t(ns) * ns * ns, 0), wt(size_t(ns) * ns * ns, 0);
            for (u32 m = 0; m < ns; ++m) {
                if (one[m] != 0) we[(size_t(a) * ns + m) * ns + b] = one[m];
                for (u32 u = 0; u < ns; ++u)
                    if (th[m * ns + u] != 0) wt[(size_t(a) * ns + m) * ns + u] = th[m * ns + u];
            }
            feta.set_col(a * ns + b, we);
            fth.set_col(a * ns + b, wt);
        }
    }
    Matrix meta = induced_map(sc.t2, feta, sc.t3);
    Matrix mth = induced_map(sc.t2, fth, sc.t3);
    Subspace eqt = Subspace::span_of((meta - mth).kernel());
    Subspace image = Subspace::span_of(incl.transpose());
    r.equalizer_preserved = r.tensored_inclusion_injective && image == eqt;

    bool x = r.j_left_invertible;
    r.agree = x == r.counit_component_bijective && x == r.equalizer_preserved &&
              x == r.tensored_inclusion_injective;
    return r;
}

GammaWitness verify_gamma_iso(const SweedlerCoring& sc, const SubBimoduleMonoid& monoid,
                              const std::vector<Matrix>& endos, Side side) {
    GammaWitness w;
    w.side = side;
    w.monoid = monoid;
    w.domain = side == Side::left ? monoid.left : monoid.right;
    w.endos = endos;
    w.endo_table = composition_table(endos);
    const char* side_name = side == Side::left ? "left" : "right";

    auto endo_index = [&](const Matrix& g) -> u32 {
        for (u32 k = 0; k < endos.size(); ++k)
            if (endos[k] == g) return k;
        throw InternalError("gamma image is missing from the endomorphism list");
    };
    std::map<Subspace, u32> domain_pos;
    for (u32 k = 0; k < w.domain.size(); ++k)
        domain_pos.emplace(monoid.elements[w.domain[k]].space, k);

    for (u32 k = 0; k < w.domain.size(); ++k) {
        const SubBimodule& el = monoid.elements[w.domain[k]];
        w.forward.push_back(endo_index(side == Side::left ? gamma(sc, el) : gamma_prime(sc, el)));
    }
    for (u32 e = 0; e < endos.size(); ++e) {
        SubBimodule j = j_of(sc, endos[e], side);
        auto it = domain_pos.find(j.space);
        if (it == domain_pos.end()) {
            w.backward.push_back(no_index);
            w.counterexamples.push_back("invariants of endomorphism " + std::to_string(e) +
                                        " are not " + side_name + "-invertible");
        } else {
            w.backward.push_back(it->second);
        }
    }

    auto unit_it = std::find(w.domain.begin(), w.domain.end(), monoid.table.identity);
    if (unit_it == w.domain.end())
        throw InternalError("the unit subbimodule has a non-bijective multiplication map");
    u32 unit_pos = static_cast<u32>(unit_it - w.domain.begin());
    w.unit_to_identity = w.forward[unit_pos] == w.endo_table.identity;

    bool law = true;
    for (u32 a = 0; a < w.domain.size(); ++a)
        for (u32 b = 0; b < w.domain.size(); ++b) {
            u32 prod = monoid.table.at(w.domain[a], w.domain[b]);
            auto it = domain_pos.find(monoid.elements[prod].space);
            if (it == domain_pos.end()) {
                law = false;
                w.counterexamples.push_back("product of domain elements " + std::to_string(a) +
                                            " and " + std::to_string(b) + " leaves the domain");
                continue;
            }
            u32 expect = side == Side::left ? w.endo_table.at(w.forward[a], w.forward[b])
                                            : w.endo_table.at(w.forward[b], w.forward[a]);
            if (w.forward[it->second] != expect) {
                law = false;
                w.counterexamples.push_back("image of the product of domain elements " +
                                            std::to_string(a) + " and " + std::to_string(b) +
                                            " is not the composite of the images");
            }
        }
    w.respects_products = law && w.unit_to_identity;

    std::vector<bool> hit(endos.size(), false);
    bool injective = true;
    for (u32 k : w.forward) {
        if (hit[k]) injective = false;
        hit[k] = true;
    }
    bool onto = std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    bool back = true;
    for (u32 k = 0; k < w.domain.size(); ++k)
        if (w.backward[w.forward[k]] != k) back = false;
    w.bijective = injective && onto && back && w.domain.size() == endos.size();

    // Strict inclusions of subbimodules must not become bijective after
    // tensoring with S on the side under test.
    const PrimeField& f = sc.base.target().field();
    u32 ns = sc.base.target().dim();
    Bimodule sb = extension_bimodule_sb(sc.base);
    Bimodule bs = extension_bimodule_bs(sc.base);
    u32 n = static_cast<u32>(monoid.elements.size());
    std::vector<TensorQuotient> q(n);
    for (u32 k = 0; k < n; ++k) {
        Bimodule ibb = subbimodule_as_bimodule(monoid.elements[k]);
        q[k] = side == Side::left ? tensor_over(sb, ibb) : tensor_over(ibb, bs);
    }
    bool reflects = true;
    for (u32 a = 0; a < n; ++a)
        for (u32 c = 0; c < n; ++c) {
            const Subspace& small = monoid.elements[a].space;
            const Subspace& big = monoid.elements[c].space;
            if (small.dim() >= big.dim() || !big.contains(small)) continue;
            u32 da = small.dim(), dc = big.dim();
            Matrix fm(q[c].full_dim(), q[a].full_dim(), f);
            for (u32 k = 0; k < da; ++k) {
                Vec coords = big.coords(small.basis().row(k));
                for (u32 t = 0; t < ns; ++t) {
                    Vec w2(q[c].full_dim(), 0);
                    for (u32 m = 0; m < dc; ++m) {
                        if (coords[m] == 0) continue;
                        if (side == Side::left)
                            w2[size_t(t) * dc + m] = coords[m];
                        else
                            w2[size_t(m) * ns + t] = coords[m];
                    }
                    fm.set_col(side == Side::left ? t * da + k : k * ns + t, w2);
                }
            }
            Matrix ind = induced_map(q[a], fm, q[c]);
            if (q[a].dim() == q[c].dim() && ind.rank() == q[c].dim()) {
                reflects = false;
                w.counterexamples.push_back("strict inclusion of element " + std::to_string(a) +
                                            " in element " + std::to_string(c) +
                                            " becomes bijective after tensoring");
            }
        }
    w.tensor_reflects_inclusions = reflects;
    return w;
}

GammaWitness verify_gamma_iso(const Extension& i, u64 subspace_budget, u64 endo_budget,
                              Side side) {
    SweedlerCoring sc = build_sweedler(i);
    return verify_gamma_iso(sc, subbimodule_monoid(i, subspace_budget),
                            coring_endomorphisms(sc.coring, endo_budget), side);
}

InvWitness inv_group(const SweedlerCoring& sc, const SubBimoduleMonoid& monoid,
                     const std::vector<Matrix>& endos) {
    InvWitness w;
    w.inv = monoid.invertible;
    u32 n = static_cast<u32>(w.inv.size());
    std::map<u32, u32> pos;
    for (u32 k = 0; k < n; ++k) pos.emplace(w.inv[k], k);
    if (!pos.count(monoid.table.identity))
        throw InternalError("the unit subbimodule is not among the invertibles");
    w.group.size = n;
    w.group.identity = pos.at(monoid.table.identity);
    w.group.table.assign(size_t(n) * n, 0);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            auto it = pos.find(monoid.table.at(w.inv[a], w.inv[b]));
            if (it == pos.end())
                throw InternalError("product of invertible subbimodules is not invertible");
            w.group.table[size_t(a) * n + b] = it->second;
        }
    auto defects = validate_monoid(w.group);
    if (!defects.empty()) throw InternalError("invertible subbimodules: " + defects.front());
    w.inverse_of.assign(n, no_index);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            if (w.group.at(a, b) == w.group.identity && w.group.at(b, a) == w.group.identity) {
                w.inverse_of[a] = b;
                break;
            }
    if (std::find(w.inverse_of.begin(), w.inverse_of.end(), no_index) != w.inverse_of.end())
        throw InternalError("an invertible subbimodule lost its inverse in the group table");

    std::set<u32> li(monoid.left.begin(), monoid.left.end());
    std::set<u32> ri(monoid.right.begin(), monoid.right.end());
    std::set<u32> cap;
    for (u32 k : li)
        if (ri.count(k)) cap.insert(k);
    w.matches_left_cap_right = cap == std::set<u32>(w.inv.begin(), w.inv.end());

    MonoidTable endo_table = composition_table(endos);
    w.automorphisms = invertible_elements(endo_table);
    std::set<u32> aut(w.automorphisms.begin(), w.automorphisms.end());
    for (u32 k = 0; k < n; ++k) {
        if (!li.count(w.inv[k])) {
            w.forward.push_back(no_index);
            w.counterexamples.push_back("invertible element " + std::to_string(w.inv[k]) +
                                        " is not left-invertible");
            continue;
        }
        Matrix g = gamma(sc, monoid.elements[w.inv[k]]);
        u32 idx = no_index;
        for (u32 e = 0; e < endos.size(); ++e)
            if (endos[e] == g) {
                idx = e;
                break;
            }
        if (idx == no_index)
            throw InternalError("gamma image is missing from the endomorphism list");
        w.forward.push_back(idx);
    }
    bool into = true, injective = true;
    std::set<u32> seen;
    for (u32 v : w.forward) {
        if (v == no_index || !aut.count(v)) into = false;
        if (v != no_index && !seen.insert(v).second) injective = false;
    }
    w.into_automorphisms = into;
    w.bijective = into && injective && w.forward.size() == w.automorphisms.size();
    return w;
}

InvWitness inv_group(const Extension& i, u64 subspace_budget, u64 endo_budget) {
    SweedlerCoring sc = build_sweedler(i);
    return inv_group(sc, subbimodule_monoid(i, subspace_budget),
                     coring_endomorphisms(sc.coring, endo_budget));
}

Matrix gamma0(const ComatrixCoring& cc, const SubBimodule& I, Side side) {
    const Extension& i = cc.end.unit_map;
    if (!(I.base == i)) throw Error("gamma0: subbimodule belongs to a different extension");
    if (!i.injective())
        throw Error("gamma0: base ring does not embed into the endomorphism algebra");
    const FiniteAlgebra& s = i.target();
    const PrimeField& f = s.field();
    u32 ns = s.dim(), d = I.space.dim();
    u32 nm = cc.module.dim(), nd = cc.end.dual.module.dim();
    MMaps mm = m_maps(I);
    Matrix full(cc.mstar_m.dim(), size_t(nd) * nm, f);
    if (side == Side::left) {
        if (!mm.left_invertible) throw Error("gamma0: m^l of the subbimodule is not bijective");
        Vec lift = mm.si.section().apply(mm.left.inverse()->apply(s.unit()));
        // lift[a*d + k] is the coefficient of e_a (x) basis_k in the
        // decomposition of 1; f (x) m maps to sum (f o e_a) (x) basis_k(m).
        std::vector<Matrix> act(d);
        for (u32 k = 0; k < d; ++k) act[k] = cc.end.endo(I.space.basis().row(k));
        for (u32 ft = 0; ft < nd; ++ft)
            for (u32 mi = 0; mi < nm; ++mi) {
                Vec acc(cc.mstar_m.dim(), 0);
                for (u32 a = 0; a < ns; ++a)
                    for (u32 k = 0; k < d; ++k) {
                        u32 c = lift[a * d + k];
                        if (c == 0) continue;
                        Vec fs = cc.end.dual_right_s[a].apply(unit_vec(nd, ft));
                        Vec ym = act[k].apply(unit_vec(nm, mi));
                        acc = add_vec(f, acc, scale_vec(f, c, cc.mstar_m.pure2(fs, ym)));
                    }
                full.set_col(ft * nm + mi, acc);
            }
    } else {
        if (!mm.right_invertible) throw Error("gamma0: m^r of the subbimodule is not bijective");
        Vec lift = mm.is.section().apply(mm.right.inverse()->apply(s.unit()));
        // lift[k*ns + a]: coefficient of basis_k (x) e_a; f (x) m maps to
        // sum (f o basis_k) (x) e_a(m).
        std::vector<Matrix> dual_act(d);
        for (u32 k = 0; k < d; ++k) {
            Vec v = I.space.basis().row(k);
            Matrix m(nd, nd, f);
            for (u32 t = 0; t < ns; ++t)
                if (v[t] != 0) m = m + cc.end.dual_right_s[t].scaled(v[t]);
            dual_act[k] = m;
        }
        for (u32 ft = 0; ft < nd; ++ft)
            for (u32 mi = 0; mi < nm; ++mi) {
                Vec acc(cc.mstar_m.dim(), 0);
                for (u32 k = 0; k < d; ++k)
                    for (u32 a = 0; a < ns; ++a) {
                        u32 c = lift[k * ns + a];
                        if (c == 0) continue;
                        Vec fs = dual_act[k].apply(unit_vec(nd, ft));
                        Vec xm = cc.end.rep[a].apply(unit_vec(nm, mi));
                        acc = add_vec(f, acc, scale_vec(f, c, cc.mstar_m.pure2(fs, xm)));
                    }
                full.set_col(ft * nm + mi, acc);
            }
    }
    Matrix g = induced_map_to_space(cc.mstar_m, full);
    return checked_gamma_result(cc.coring, g, "gamma0");
}

Matrix hat_map(const SweedlerCoring& sc, const ComatrixCoring& cc, const Matrix& g) {
    if (!(sc.base == cc.end.unit_map))
        throw Error("hat_map: coring and comatrix data disagree on the extension");
    const PrimeField& f = sc.base.target().field();
    u32 ns = sc.base.target().dim();
    u32 nm = cc.module.dim(), nd = cc.end.dual.module.dim();
    if (g.rows() != cc.mstar_m.dim() || g.cols() != cc.mstar_m.dim())
        throw Error("hat_map: endomorphism has the wrong shape");
    TensorQuotient c4 =
        tensor_chain({cc.module, cc.end.dual.module, cc.module, cc.end.dual.module});
    Matrix fin(c4.dim(), size_t(ns) * ns, f);
    std::vector<Vec> lifts(ns);
    for (u32 a = 0; a < ns; ++a)
        lifts[a] = cc.end.m_mstar.section().apply(cc.end.xi_inv.apply(unit_vec(ns, a)));
    for (u32 a = 0; a < ns; ++a)
        for (u32 b = 0; b < ns; ++b)
            fin.set_col(a * ns + b, c4.project().apply(kron_vec(f, lifts[a], lifts[b])));
    Matrix min = induced_map_to_space(sc.t2, fin);
    Matrix gm = cc.mstar_m.section() * g * cc.mstar_m.project();
    Matrix fmid = Matrix::kron(Matrix::identity(nm, f), Matrix::kron(gm, Matrix::identity(nd, f)));
    Matrix mmid = induced_map(c4, fmid, c4);
    Matrix fout(sc.t2.dim(), c4.full_dim(), f);
    for (u32 mi = 0; mi < nm; ++mi)
        for (u32 ft = 0; ft < nd; ++ft) {
            Vec s1 = cc.end.xi.apply(cc.end.m_mstar.pure2(unit_vec(nm, mi), unit_vec(nd, ft)));
            for (u32 mj = 0; mj < nm; ++mj)
                for (u32 fu = 0; fu < nd; ++fu) {
                    Vec s2 =
                        cc.end.xi.apply(cc.end.m_mstar.pure2(unit_vec(nm, mj), unit_vec(nd, fu)));
                    fout.set_col(((mi * nd + ft) * nm + mj) * nd + fu, sc.t2.pure2(s1, s2));
                }
        }
    Matrix h = induced_map_to_space(c4, fout) * (mmid * min);
    return checked_gamma_result(sc.coring, h, "hat_map");
}

TriangleReport triangle_check(const SweedlerCoring& sc, const ComatrixCoring& cc, u64 budget) {
    if (!(sc.base == cc.end.unit_map))
        throw Error("triangle_check: coring and comatrix data disagree on the extension");
    TriangleReport rep;
    SubBimoduleMonoid monoid = subbimodule_monoid(sc.base, budget);
    for (u32 idx : monoid.left) {
        const SubBimodule& el = monoid.elements[idx];
        Matrix lhs = gamma(sc, el);
        Matrix rhs = hat_map(sc, cc, gamma0(cc, el, Side::left));
        ++rep.checked;
        if (lhs != rhs)
            rep.violations.push_back("element " + std::to_string(idx) +
                                     ": gamma differs from the transported endomorphism");
    }
    return rep;
}

}  // namespace descent
