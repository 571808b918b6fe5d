#include "descent_forge/report.hpp"

#include <chrono>

#include "descent_forge/descent.hpp"

namespace descent {

namespace {

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (u32 r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (u32 c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json table_json(const MonoidTable& t) {
    Json rows = Json::array();
    for (u32 i = 0; i < t.size; ++i) {
        Json row = Json::array();
        for (u32 j = 0; j < t.size; ++j) row.push_back(t.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json indices_json(const std::vector<u32>& v) {
    Json a = Json::array();
    for (u32 x : v) a.push_back(x);
    return a;
}

Json nullable_indices_json(const std::vector<u32>& v) {
    Json a = Json::array();
    for (u32 x : v) {
        if (x == no_index)
            a.push_back(nullptr);
        else
            a.push_back(x);
    }
    return a;
}

Json strings_json(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const std::string& s : v) a.push_back(s);
    return a;
}

Json witness_json(const GammaWitness& w) {
    Json j;
    j["side"] = w.side == Side::left ? "left" : "right";
    j["domain"] = indices_json(w.domain);
    j["forward"] = nullable_indices_json(w.forward);
    j["backward"] = nullable_indices_json(w.backward);
    j["unit_to_identity"] = w.unit_to_identity;
    j["respects_products"] = w.respects_products;
    j["bijective"] = w.bijective;
    j["tensor_reflects_inclusions"] = w.tensor_reflects_inclusions;
    j["counterexamples"] = strings_json(w.counterexamples);
    return j;
}

Json inv_json(const InvWitness& w) {
    Json j;
    j["invertibles"] = indices_json(w.inv);
    j["table"] = table_json(w.group);
    j["inverse_of"] = indices_json(w.inverse_of);
    j["matches_left_cap_right"] = w.matches_left_cap_right;
    j["automorphisms"] = indices_json(w.automorphisms);
    j["forward"] = nullable_indices_json(w.forward);
    j["into_automorphisms"] = w.into_automorphisms;
    j["bijective"] = w.bijective;
    j["counterexamples"] = strings_json(w.counterexamples);
    return j;
}

u32 find_matrix(const std::vector<Matrix>& set, const Matrix& m) {
    for (u32 k = 0; k < set.size(); ++k)
        if (set[k] == m) return k;
    return no_index;
}

// Transport of one-sidedly invertible subbimodules into the endomorphism
// monoid of the comatrix coring, with the morphism laws checked on the
// product tables (order reversed on the right side).
struct TransportWitness {
    std::vector<u32> domain;   // monoid element indices
    std::vector<u32> forward;  // per domain element: index into endos0
    bool unit_to_identity = false;
    bool respects_products = false;
    bool bijective = false;
    std::vector<std::string> counterexamples;
};

TransportWitness transport_witness(const ComatrixCoring& cc, const SubBimoduleMonoid& monoid,
                                   const std::vector<Matrix>& endos0,
                                   const MonoidTable& table0, Side side) {
    TransportWitness w;
    w.domain = side == Side::left ? monoid.left : monoid.right;
    std::vector<u32> endo_of(monoid.elements.size(), no_index);
    for (u32 idx : w.domain) {
        u32 e = find_matrix(endos0, gamma0(cc, monoid.elements[idx], side));
        if (e == no_index)
            throw InternalError("transported subbimodule is not a coring endomorphism");
        w.forward.push_back(e);
        endo_of[idx] = e;
    }
    w.unit_to_identity = endo_of[monoid.table.identity] == table0.identity;
    w.respects_products = true;
    for (u32 a : w.domain)
        for (u32 b : w.domain) {
            u32 c = monoid.table.at(a, b);
            u32 expect = side == Side::left ? table0.at(endo_of[a], endo_of[b])
                                            : table0.at(endo_of[b], endo_of[a]);
            if (endo_of[c] != expect) {
                w.respects_products = false;
                w.counterexamples.push_back("product of elements " + std::to_string(a) +
                                            " and " + std::to_string(b) +
                                            " transports incorrectly");
            }
        }
    std::vector<u32> hits(endos0.size(), 0);
    for (u32 e : w.forward) ++hits[e];
    w.bijective = w.domain.size() == endos0.size();
    for (u32 h : hits)
        if (h != 1) w.bijective = false;
    return w;
}

struct TransportGroup {
    std::vector<u32> invertibles;    // monoid element indices
    std::vector<u32> forward;        // per invertible: index into endos0
    std::vector<u32> automorphisms;  // invertible endo indices
    bool into_automorphisms = false;
    bool bijective = false;
};

TransportGroup transport_group(const ComatrixCoring& cc, const SubBimoduleMonoid& monoid,
                               const std::vector<Matrix>& endos0, const MonoidTable& table0) {
    TransportGroup g;
    g.invertibles = monoid.invertible;
    g.automorphisms = invertible_elements(table0);
    for (u32 idx : g.invertibles)
        g.forward.push_back(find_matrix(endos0, gamma0(cc, monoid.elements[idx], Side::left)));
    g.into_automorphisms = true;
    std::vector<u32> hits(endos0.size(), 0);
    for (u32 e : g.forward) {
        bool is_aut = e != no_index &&
                      std::find(g.automorphisms.begin(), g.automorphisms.end(), e) !=
                          g.automorphisms.end();
        if (!is_aut) g.into_automorphisms = false;
        if (e != no_index) ++hits[e];
    }
    g.bijective = g.into_automorphisms && g.invertibles.size() == g.automorphisms.size();
    for (u32 a : g.automorphisms)
        if (hits[a] != 1) g.bijective = false;
    return g;
}

struct HatCheck {
    bool injective = false;
    bool multiplicative = false;
};

HatCheck hat_check(const SweedlerCoring& sc, const ComatrixCoring& cc,
                   const std::vector<Matrix>& endos0, const MonoidTable& table0) {
    std::vector<Matrix> images;
    for (const Matrix& g : endos0) images.push_back(hat_map(sc, cc, g));
    HatCheck h;
    h.injective = true;
    for (u32 a = 0; a < images.size(); ++a)
        for (u32 b = a + 1; b < images.size(); ++b)
            if (images[a] == images[b]) h.injective = false;
    h.multiplicative = true;
    for (u32 a = 0; a < images.size(); ++a)
        for (u32 b = 0; b < images.size(); ++b)
            if (images[table0.at(a, b)] != images[a] * images[b]) h.multiplicative = false;
    return h;
}

Json verdict_json(bool gated, bool holds, bool& any_fail) {
    Json v;
    v["status"] = gated ? (holds ? "pass" : "fail") : "observed";
    v["holds"] = holds;
    if (gated && !holds) any_fail = true;
    return v;
}

std::vector<Subspace> proper_left_ideals(const FiniteAlgebra& b, u64 budget) {
    std::vector<Subspace> out;
    for (const Subspace& l : left_ideals(b, budget))
        if (l.dim() < b.dim()) out.push_back(l);
    return out;
}

}  // namespace

std::optional<Suite> suite_from_name(const std::string& name) {
    if (name == "all") return Suite::all;
    if (name == "gamma") return Suite::gamma;
    if (name == "comatrix") return Suite::comatrix;
    if (name == "prop31") return Suite::prop31;
    if (name == "comonadicity") return Suite::comonadicity;
    return std::nullopt;
}

std::string content_hash(const InstanceSpec& spec) {
    u64 h = 14695981039346656037ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    mix(spec.source);
    mix(std::to_string(spec.seed));
    mix(report_version);
    static const char* digits = "0123456789abcdef";
    std::string hex(16, '0');
    for (int k = 15; k >= 0; --k) {
        hex[k] = digits[h & 0xf];
        h >>= 4;
    }
    return hex;
}

VerificationReport run_suite(const InstanceSpec& spec, const RunOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    Json& out = rep.json;
    out["instance"] = nullptr;
    out["certificate"] = nullptr;
    out["monoids"] = nullptr;
    out["gamma"] = nullptr;
    out["gamma0"] = nullptr;
    out["prop31"] = nullptr;
    out["verdicts"] = Json::object();
    out["timing"] = nullptr;
    out["version"] = report_version;

    const Extension& i = spec.extension;
    if (!i.injective())
        throw Error("extension must be injective (the base embeds into the target)");
    if (spec.evaluation) {
        EndAlgebra e = end_algebra(*spec.evaluation);
        if (!(e.algebra == i.target()) || !(e.unit_map.source() == i.source()) ||
            e.unit_map.matrix() != i.matrix())
            throw Error(
                "comatrix block: the declared extension is not the evaluation map of the "
                "module");
    }

    {
        Json inst;
        inst["name"] = spec.name;
        inst["p"] = spec.p;
        Json dims;
        dims["base"] = i.source().dim();
        dims["target"] = i.target().dim();
        if (spec.evaluation)
            dims["evaluation"] = spec.evaluation->dim();
        else
            dims["evaluation"] = nullptr;
        inst["dims"] = dims;
        inst["seed"] = spec.seed;
        inst["hash"] = content_hash(spec);
        inst["source"] = spec.source;
        out["instance"] = inst;
    }

    const bool run_gamma = opts.which == Suite::all || opts.which == Suite::gamma;
    const bool run_comatrix =
        (opts.which == Suite::all || opts.which == Suite::comatrix) &&
        spec.evaluation.has_value();
    const bool run_prop31 = opts.which == Suite::all || opts.which == Suite::prop31;
    const bool run_comonadicity =
        opts.which == Suite::all || opts.which == Suite::comonadicity;

    try {
        // Certificate first: it gates every asserted verdict.
        std::optional<Certificate> cert =
            spec.evaluation ? certify(i, *spec.evaluation, spec.subspace_budget)
                            : certify(i, spec.subspace_budget);
        bool verified = cert && verify_certificate(*cert, spec.subspace_budget).empty();
        if (cert && !verified) rep.verdict_failure = true;
        const bool lic_left = verified && cert->licenses_left();
        const bool lic_right = verified && cert->licenses_right();
        const bool lic_any = lic_left || lic_right;
        {
            Json cj;
            cj["present"] = cert.has_value();
            if (cert)
                cj["kind"] = evidence_name(cert->kind);
            else
                cj["kind"] = nullptr;
            cj["verified"] = verified;
            cj["licenses_left"] = cert && cert->licenses_left();
            cj["licenses_right"] = cert && cert->licenses_right();
            cj["scope_note"] = scope_note;
            cj["conservative"] = nullptr;
            cj["adjunction_unit"] = nullptr;
            cj["equalizer_preservation"] = nullptr;
            out["certificate"] = cj;
        }

        SweedlerCoring sc = build_sweedler(i);
        std::optional<SubBimoduleMonoid> monoid;
        std::vector<Matrix> endos;
        MonoidTable endo_table;
        if (run_gamma || run_prop31 || run_comatrix) {
            monoid = subbimodule_monoid(i, spec.subspace_budget);
            endos = coring_endomorphisms(sc.coring, spec.endo_budget);
            endo_table = composition_table(endos);
            Json mj;
            Json sb;
            sb["count"] = monoid->elements.size();
            sb["identity"] = monoid->table.identity;
            Json labels = Json::array();
            for (const SubBimodule& el : monoid->elements)
                labels.push_back(matrix_json(el.space.basis()));
            sb["labels"] = labels;
            sb["table"] = table_json(monoid->table);
            sb["left_invertible"] = indices_json(monoid->left);
            sb["right_invertible"] = indices_json(monoid->right);
            sb["invertible"] = indices_json(monoid->invertible);
            mj["subbimodules"] = sb;
            Json em;
            em["count"] = endos.size();
            em["identity"] = endo_table.identity;
            Json mats = Json::array();
            for (const Matrix& g : endos) mats.push_back(matrix_json(g));
            em["matrices"] = mats;
            em["table"] = table_json(endo_table);
            em["automorphisms"] = indices_json(invertible_elements(endo_table));
            mj["endomorphisms"] = em;
            out["monoids"] = mj;
        }

        Json& verdicts = out["verdicts"];
        if (run_gamma) {
            GammaWitness wl = verify_gamma_iso(sc, *monoid, endos, Side::left);
            GammaWitness wr = verify_gamma_iso(sc, *monoid, endos, Side::right);
            InvWitness iw = inv_group(sc, *monoid, endos);
            Json gj;
            gj["left"] = witness_json(wl);
            gj["right"] = witness_json(wr);
            gj["group"] = inv_json(iw);
            out["gamma"] = gj;

            bool retraction = !wl.domain.empty();
            for (u32 k = 0; k < wl.domain.size(); ++k)
                if (wl.forward[k] == no_index || wl.backward[wl.forward[k]] != k)
                    retraction = false;
            verdicts["gamma_retraction"] =
                verdict_json(lic_left, retraction, rep.verdict_failure);
            verdicts["gamma_monoid_isomorphism"] = verdict_json(
                lic_left, wl.unit_to_identity && wl.respects_products && wl.bijective,
                rep.verdict_failure);
            verdicts["gamma_prime_antiisomorphism"] = verdict_json(
                lic_right, wr.unit_to_identity && wr.respects_products && wr.bijective,
                rep.verdict_failure);
            verdicts["invertibles_group_isomorphism"] = verdict_json(
                lic_any, iw.into_automorphisms && iw.bijective, rep.verdict_failure);
        }

        if (run_comatrix) {
            ComatrixCoring cc = build_comatrix(*spec.evaluation);
            std::vector<Matrix> endos0 = coring_endomorphisms(cc.coring, spec.endo_budget);
            MonoidTable table0 = composition_table(endos0);
            TransportWitness tl = transport_witness(cc, *monoid, endos0, table0, Side::left);
            TransportWitness tr = transport_witness(cc, *monoid, endos0, table0, Side::right);
            TransportGroup tg = transport_group(cc, *monoid, endos0, table0);
            HatCheck hc = hat_check(sc, cc, endos0, table0);
            TriangleReport tri = triangle_check(sc, cc, spec.subspace_budget);
            bool left_module_ff =
                is_faithfully_flat(*spec.evaluation, Side::left, spec.subspace_budget)
                    .has_value();
            bool dual_module_ff =
                is_faithfully_flat(dual_module(*spec.evaluation).module, Side::right,
                                   spec.subspace_budget)
                    .has_value();

            Json g0;
            g0["carrier_dim"] = cc.coring.carrier.dim();
            g0["evaluation_iso_bijective"] = (cc.end.xi * cc.end.xi_inv).is_identity() &&
                                             (cc.end.xi_inv * cc.end.xi).is_identity();
            {
                Json em;
                em["count"] = endos0.size();
                em["identity"] = table0.identity;
                Json mats = Json::array();
                for (const Matrix& g : endos0) mats.push_back(matrix_json(g));
                em["matrices"] = mats;
                em["table"] = table_json(table0);
                em["automorphisms"] = indices_json(invertible_elements(table0));
                g0["endomorphisms"] = em;
            }
            auto transport_json = [](const TransportWitness& w) {
                Json j;
                j["domain"] = indices_json(w.domain);
                j["forward"] = indices_json(w.forward);
                j["unit_to_identity"] = w.unit_to_identity;
                j["respects_products"] = w.respects_products;
                j["bijective"] = w.bijective;
                j["counterexamples"] = strings_json(w.counterexamples);
                return j;
            };
            g0["left"] = transport_json(tl);
            g0["right"] = transport_json(tr);
            {
                Json gr;
                gr["invertibles"] = indices_json(tg.invertibles);
                gr["forward"] = nullable_indices_json(tg.forward);
                gr["automorphisms"] = indices_json(tg.automorphisms);
                gr["into_automorphisms"] = tg.into_automorphisms;
                gr["bijective"] = tg.bijective;
                g0["group"] = gr;
            }
            {
                Json hj;
                hj["injective"] = hc.injective;
                hj["multiplicative"] = hc.multiplicative;
                g0["hat"] = hj;
            }
            {
                Json tj;
                tj["checked"] = tri.checked;
                tj["violations"] = strings_json(tri.violations);
                g0["triangle"] = tj;
            }
            {
                Json me;
                me["left_module_faithfully_flat"] = left_module_ff;
                me["dual_module_faithfully_flat"] = dual_module_ff;
                g0["module_evidence"] = me;
            }
            out["gamma0"] = g0;

            const bool module_gate =
                left_module_ff || dual_module_ff ||
                (verified && cert->kind == EvidenceKind::separable_bimodule);
            verdicts["gamma0_monoid_isomorphism"] = verdict_json(
                lic_left, tl.unit_to_identity && tl.respects_products && tl.bijective,
                rep.verdict_failure);
            verdicts["gamma0_prime_antiisomorphism"] = verdict_json(
                lic_right, tr.unit_to_identity && tr.respects_products && tr.bijective,
                rep.verdict_failure);
            verdicts["gamma0_group_isomorphism"] = verdict_json(
                lic_any, tg.into_automorphisms && tg.bijective, rep.verdict_failure);
            verdicts["evaluation_module_group_isomorphism"] = verdict_json(
                module_gate, tg.into_automorphisms && tg.bijective, rep.verdict_failure);
        }

        if (run_prop31) {
            if (endos.empty()) endos = coring_endomorphisms(sc.coring, spec.endo_budget);
            Json rows = Json::array();
            bool all_agree = true, identities = true;
            for (u32 e = 0; e < endos.size(); ++e) {
                DescentConditions dc = descent_conditions(sc, endos[e]);
                Json r;
                r["endo"] = e;
                r["invariants_dim"] = dc.j.space.dim();
                r["left_multiplication_bijective"] = dc.j_left_invertible;
                r["counit_component_bijective"] = dc.counit_component_bijective;
                r["equalizer_preserved"] = dc.equalizer_preserved;
                r["tensored_inclusion_injective"] = dc.tensored_inclusion_injective;
                r["conditions_agree"] = dc.agree;
                r["twist_equalizer_equals_invariants"] = dc.twist_equalizer_equals_j;
                r["counit_is_left_multiplication"] = dc.counit_is_left_multiplication;
                rows.push_back(r);
                all_agree = all_agree && dc.agree;
                identities = identities && dc.twist_equalizer_equals_j &&
                             dc.counit_is_left_multiplication;
            }
            Json pj;
            pj["rows"] = rows;
            pj["all_agree"] = all_agree;
            pj["identities_hold"] = identities;
            out["prop31"] = pj;
            // The agreement of the four conditions has no flatness hypothesis,
            // so it is always asserted.
            verdicts["descent_conditions_equivalent"] =
                verdict_json(true, all_agree && identities, rep.verdict_failure);
        }

        if (run_comonadicity) {
            ConservativityLog cons = is_conservative(i, spec.subspace_budget);
            AdjunctionUnitReport unit = adjunction_unit_check(i, spec.subspace_budget);
            u32 checked = 0;
            bool all_preserved = true, all_split = true;
            for (const Subspace& l : proper_left_ideals(i.source(), spec.subspace_budget)) {
                Comodule y = comparison_comodule(i, quotient_left_module(i.source(), l).module);
                EqualizerReport er = preserves_equalizer(i, y);
                ++checked;
                all_preserved = all_preserved && er.preserved();
                all_split = all_split && er.split_fork;
            }
            for (const Matrix& g : endos) {  // empty unless another suite ran
                Comodule y = twist_comodule(sc, g);
                if (!validate_comodule(y).empty()) continue;
                EqualizerReport er = preserves_equalizer(i, y);
                ++checked;
                all_preserved = all_preserved && er.preserved();
                all_split = all_split && er.split_fork;
            }
            out["certificate"]["conservative"] = cons.conservative();
            {
                Json aj;
                aj["modules_checked"] = unit.modules_checked;
                aj["ok"] = unit.ok();
                out["certificate"]["adjunction_unit"] = aj;
            }
            {
                Json ej;
                ej["comodules_checked"] = checked;
                ej["all_preserved"] = all_preserved;
                ej["all_split_forks"] = all_split;
                out["certificate"]["equalizer_preservation"] = ej;
            }
            if (verified && (!cons.conservative() || !unit.ok() || !all_preserved))
                rep.verdict_failure = true;
        }
    } catch (const BudgetError& e) {
        rep.budget_guard = e.what();
    }

    Json timing;
    timing["recorded"] = opts.record_timing;
    if (opts.record_timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        timing["total_ms"] = ms;
    } else {
        timing["total_ms"] = 0;
    }
    timing["budget_guard"] = rep.budget_guard;
    out["timing"] = timing;
    return rep;
}

}  // namespace descent
