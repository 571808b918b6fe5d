#include "descent_forge/comonadicity.hpp"

namespace descent {

namespace {

// One linear constraint block "P * X == X * Q" on an unknown r x c matrix X,
// vectorized row-major: kron(P, I_c) - kron(I_r, Q^T).
Matrix intertwine_block(const Matrix& p, const Matrix& q, u32 r, u32 c) {
    const PrimeField& f = p.field();
    return Matrix::kron(p, Matrix::identity(c, f)) -
           Matrix::kron(Matrix::identity(r, f), q.transpose());
}

// Solve the stacked system: P_k X = X Q_k for all k, and X * post = rhs.
std::optional<Matrix> solve_intertwiner(const std::vector<Matrix>& p,
                                        const std::vector<Matrix>& q, const Matrix& post,
                                        const Matrix& rhs, u32 r, u32 c) {
    const PrimeField& f = post.field();
    Matrix system(0, r * c, f);
    for (size_t k = 0; k < p.size(); ++k)
        system = Matrix::vstack(system, intertwine_block(p[k], q[k], r, c));
    Vec target(size_t(system.rows()), 0);
    // X * post = rhs: kron(I_r, post^T) vec(X) = vec(rhs).
    Matrix eq = Matrix::kron(Matrix::identity(r, f), post.transpose());
    system = Matrix::vstack(system, eq);
    Vec vr = vec_of(rhs);
    target.insert(target.end(), vr.begin(), vr.end());
    auto sol = solve_linear(system, target);
    if (!sol) return std::nullopt;
    return unvec(sol->particular, r, c, f);
}

// The basis free cover B^k -> M for one side, with the matching actions of
// the base algebra on both spaces.
struct FreeCover {
    Matrix cover;  // m.dim() x (b.dim()*k)
    std::vector<Matrix> free_action, module_action;
};

FreeCover free_cover(const Bimodule& m, Side side) {
    const FiniteAlgebra& b = side == Side::left ? m.left_alg() : m.right_alg();
    const PrimeField& f = m.field();
    u32 k = m.dim(), bd = b.dim();
    FreeCover fc;
    fc.cover = Matrix(k, bd * k, f);
    for (u32 j = 0; j < k; ++j)
        for (u32 t = 0; t < bd; ++t) {
            const Matrix& act = side == Side::left ? m.left_action_basis(t)
                                                   : m.right_action_basis(t);
            fc.cover.set_col(j * bd + t, act.col(j));
        }
    for (u32 t = 0; t < bd; ++t) {
        const Matrix& on_b = side == Side::left ? b.left_mult_basis(t) : b.right_mult_basis(t);
        fc.free_action.push_back(Matrix::kron(Matrix::identity(k, f), on_b));
        fc.module_action.push_back(side == Side::left ? m.left_action_basis(t)
                                                      : m.right_action_basis(t));
    }
    return fc;
}

// The simple cyclic quotients on the side opposite to the tested one, i.e.
// the test objects of the tensor functor the module induces.
std::vector<Subspace> opposite_simples(const FiniteAlgebra& b, Side side, u64 budget) {
    std::vector<Subspace> ideals =
        side == Side::left ? right_ideals(b, budget) : left_ideals(b, budget);
    return maximal_proper(ideals, b.dim());
}

u32 tensor_with_quotient_dim(const Bimodule& m, Side side, const Subspace& ideal) {
    const FiniteAlgebra& b = side == Side::left ? m.left_alg() : m.right_alg();
    if (side == Side::left) {
        QuotientModule x = quotient_right_module(b, ideal);
        return tensor_over(x.module, m).dim();
    }
    QuotientModule x = quotient_left_module(b, ideal);
    return tensor_over(m, x.module).dim();
}

}  // namespace

std::optional<FlatnessWitness> is_faithfully_flat(const Bimodule& m, Side side, u64 budget) {
    const FiniteAlgebra& b = side == Side::left ? m.left_alg() : m.right_alg();
    const PrimeField& f = m.field();
    if (m.dim() == 0) return std::nullopt;  // the zero module kills everything

    FreeCover fc = free_cover(m, side);
    u32 free_dim = b.dim() * m.dim();
    // Section sigma with cover * sigma = id (a left composition, so it is
    // assembled directly) and linearity free_action_t * sigma =
    // sigma * module_action_t.
    Matrix system(0, free_dim * m.dim(), f);
    for (size_t t = 0; t < fc.free_action.size(); ++t)
        system = Matrix::vstack(
            system, intertwine_block(fc.free_action[t], fc.module_action[t], free_dim, m.dim()));
    system = Matrix::vstack(system, Matrix::kron(fc.cover, Matrix::identity(m.dim(), f)));
    Vec target(size_t(system.rows()) - size_t(m.dim()) * m.dim(), 0);
    Vec vid = vec_of(Matrix::identity(m.dim(), f));
    target.insert(target.end(), vid.begin(), vid.end());
    auto sol = solve_linear(system, target);
    if (!sol) return std::nullopt;

    FlatnessWitness w;
    w.side = side;
    w.cover = fc.cover;
    w.section = unvec(sol->particular, free_dim, m.dim(), f);

    for (const Subspace& ideal : opposite_simples(b, side, budget)) {
        u32 d = tensor_with_quotient_dim(m, side, ideal);
        if (d == 0) return std::nullopt;
        w.log.push_back("simple quotient of codim " +
                        std::to_string(b.dim() - ideal.dim()) + ": tensor dim " +
                        std::to_string(d));
        ++w.simples_checked;
    }
    return w;
}

std::optional<Matrix> is_direct_summand(const Extension& i) {
    const FiniteAlgebra& b = i.source();
    const FiniteAlgebra& s = i.target();
    const PrimeField& f = s.field();
    u32 bd = b.dim(), sd = s.dim();
    std::vector<Matrix> p, q;
    for (u32 t = 0; t < bd; ++t) {
        Vec it = i.apply(unit_vec(bd, t));
        p.push_back(b.left_mult_basis(t));
        q.push_back(s.left_mult(it));
        p.push_back(b.right_mult_basis(t));
        q.push_back(s.right_mult(it));
    }
    return solve_intertwiner(p, q, i.matrix(), Matrix::identity(bd, f), bd, sd);
}

ConservativityLog is_conservative(const Extension& i, u64 budget) {
    const FiniteAlgebra& b = i.source();
    Bimodule sb = extension_bimodule_sb(i);
    ConservativityLog out;
    for (const Subspace& ideal : left_ideals(b, budget)) {
        if (ideal.dim() == b.dim()) continue;  // improper
        QuotientModule x = quotient_left_module(b, ideal);
        ++out.ideals_checked;
        if (tensor_over(sb, x.module).dim() == 0) {
            out.counterexample = ideal;
            return out;
        }
    }
    return out;
}

EqualizerReport preserves_equalizer(const Extension& i, const Comodule& y) {
    const FiniteAlgebra& s = i.target();
    const PrimeField& f = s.field();
    u32 ns = s.dim(), ny = y.carrier.dim();

    EqualizerReport rep;
    Subspace eq = comodule_equalizer(y);
    rep.invariants_dim = eq.dim();

    // S (x) theta and S (x) eta as maps S (x)_B Y -> S (x)_B S (x)_B Y.
    Matrix ftheta(y.ssy.full_dim(), y.sy.full_dim(), f);
    Matrix feta(y.ssy.full_dim(), y.sy.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 t = 0; t < ny; ++t) {
            Vec th = y.sy.section().apply(y.coaction.col(t));
            Vec et = y.sy.section().apply(y.eta.col(t));
            ftheta.set_col(a * ny + t, kron_vec(f, unit_vec(ns, a), th));
            feta.set_col(a * ny + t, kron_vec(f, unit_vec(ns, a), et));
        }
    Matrix big_theta = induced_map(y.sy, ftheta, y.ssy);
    Matrix big_eta = induced_map(y.sy, feta, y.ssy);
    Subspace pair_equalizer = Subspace::span_of((big_theta - big_eta).kernel());

    // The tensored inclusion S (x)_B R(Y) -> S (x)_B Y.
    Bimodule eqmod = equalizer_module(y, eq);
    TensorQuotient se = tensor_over(extension_bimodule_sb(i), eqmod);
    Matrix full(y.sy.dim(), se.full_dim(), f);
    for (u32 a = 0; a < ns; ++a)
        for (u32 k = 0; k < eq.dim(); ++k)
            full.set_col(a * eq.dim() + k,
                         y.sy.pure2(unit_vec(ns, a), eq.basis().row(k)));
    Matrix incl = induced_map_to_space(se, full);
    rep.tensored_injective = incl.rank() == se.dim();
    Subspace image = Subspace::span_of(incl.transpose());
    rep.image_is_equalizer = image == pair_equalizer;

    // Split fork: theta itself equalizes the pair and embeds Y onto it.
    bool theta_inj = y.coaction.rank() == ny;
    Subspace theta_image = Subspace::span_of(y.coaction.transpose());
    rep.split_fork = theta_inj && theta_image == pair_equalizer &&
                     (big_theta * y.coaction == big_eta * y.coaction);
    return rep;
}

const char* evidence_name(EvidenceKind k) {
    switch (k) {
        case EvidenceKind::left_faithfully_flat: return "left-faithfully-flat";
        case EvidenceKind::right_faithfully_flat: return "right-faithfully-flat";
        case EvidenceKind::bimodule_retraction: return "bimodule-retraction";
        case EvidenceKind::left_ff_module: return "left-ff-module";
        case EvidenceKind::right_ff_dual_module: return "right-ff-dual-module";
        case EvidenceKind::separable_bimodule: return "separable-bimodule";
    }
    return "unknown";
}

bool Certificate::licenses_left() const {
    return kind == EvidenceKind::left_faithfully_flat ||
           kind == EvidenceKind::bimodule_retraction ||
           kind == EvidenceKind::separable_bimodule;
}

bool Certificate::licenses_right() const {
    return kind == EvidenceKind::right_faithfully_flat ||
           kind == EvidenceKind::bimodule_retraction ||
           kind == EvidenceKind::separable_bimodule;
}

std::optional<Certificate> certify(const Extension& i, u64 budget) {
    // The functor X -> S (x)_B X tensors against the right leg of S; the
    // functor X -> X (x)_B S against the left leg.
    if (auto w = is_faithfully_flat(extension_bimodule_sb(i), Side::right, budget)) {
        Certificate c;
        c.extension = i;
        c.kind = EvidenceKind::left_faithfully_flat;
        c.flatness = std::move(w);
        return c;
    }
    if (auto w = is_faithfully_flat(extension_bimodule_bs(i), Side::left, budget)) {
        Certificate c;
        c.extension = i;
        c.kind = EvidenceKind::right_faithfully_flat;
        c.flatness = std::move(w);
        return c;
    }
    if (auto r = is_direct_summand(i)) {
        Certificate c;
        c.extension = i;
        c.kind = EvidenceKind::bimodule_retraction;
        c.retraction = std::move(r);
        return c;
    }
    return std::nullopt;
}

std::optional<Certificate> certify(const Extension& i, const Bimodule& evaluation_module,
                                   u64 budget) {
    if (auto c = certify(i, budget)) return c;
    if (auto w = is_faithfully_flat(evaluation_module, Side::left, budget)) {
        Certificate c;
        c.extension = i;
        c.kind = EvidenceKind::left_ff_module;
        c.flatness = std::move(w);
        c.module = evaluation_module;
        return c;
    }
    DualModule dual = dual_module(evaluation_module);
    if (auto w = is_faithfully_flat(dual.module, Side::right, budget)) {
        Certificate c;
        c.extension = i;
        c.kind = EvidenceKind::right_ff_dual_module;
        c.flatness = std::move(w);
        c.module = evaluation_module;
        return c;
    }
    return std::nullopt;
}

namespace {

void verify_flatness(const Bimodule& m, const FlatnessWitness& w, u64 budget,
                     std::vector<std::string>& defects) {
    const FiniteAlgebra& b = w.side == Side::left ? m.left_alg() : m.right_alg();
    FreeCover fc = free_cover(m, w.side);
    if (!(w.cover == fc.cover)) defects.push_back("stored cover is not the basis free cover");
    if (w.section.rows() != fc.cover.cols() || w.section.cols() != m.dim()) {
        defects.push_back("section has the wrong shape");
        return;
    }
    if (!(fc.cover * w.section).is_identity())
        defects.push_back("section does not split the cover");
    for (size_t t = 0; t < fc.free_action.size(); ++t)
        if (!(fc.free_action[t] * w.section == w.section * fc.module_action[t])) {
            defects.push_back("section is not linear over the base action");
            break;
        }
    std::vector<Subspace> simples = opposite_simples(b, w.side, budget);
    if (w.simples_checked != simples.size())
        defects.push_back("simple-quotient count differs from the recorded log");
    for (const Subspace& ideal : simples)
        if (tensor_with_quotient_dim(m, w.side, ideal) == 0)
            defects.push_back("tensoring kills a simple quotient");
}

void verify_retraction(const Extension& i, const Matrix& pi,
                       std::vector<std::string>& defects) {
    const FiniteAlgebra& b = i.source();
    const FiniteAlgebra& s = i.target();
    if (pi.rows() != b.dim() || pi.cols() != s.dim()) {
        defects.push_back("retraction has the wrong shape");
        return;
    }
    if (!(pi * i.matrix()).is_identity()) defects.push_back("retraction does not split the unit");
    for (u32 t = 0; t < b.dim(); ++t) {
        Vec it = i.apply(unit_vec(b.dim(), t));
        if (!(b.left_mult_basis(t) * pi == pi * s.left_mult(it)))
            defects.push_back("retraction is not left linear");
        if (!(b.right_mult_basis(t) * pi == pi * s.right_mult(it)))
            defects.push_back("retraction is not right linear");
    }
}

}  // namespace

std::vector<std::string> verify_certificate(const Certificate& c, u64 budget) {
    std::vector<std::string> defects;
    switch (c.kind) {
        case EvidenceKind::left_faithfully_flat:
            if (!c.flatness) return {"missing flatness witness"};
            if (c.flatness->side != Side::right)
                defects.push_back("left functor evidence must certify the right leg of S");
            verify_flatness(extension_bimodule_sb(c.extension), *c.flatness, budget, defects);
            break;
        case EvidenceKind::right_faithfully_flat:
            if (!c.flatness) return {"missing flatness witness"};
            if (c.flatness->side != Side::left)
                defects.push_back("right functor evidence must certify the left leg of S");
            verify_flatness(extension_bimodule_bs(c.extension), *c.flatness, budget, defects);
            break;
        case EvidenceKind::bimodule_retraction:
        case EvidenceKind::separable_bimodule:
            if (!c.retraction) return {"missing retraction witness"};
            verify_retraction(c.extension, *c.retraction, defects);
            break;
        case EvidenceKind::left_ff_module:
            if (!c.flatness || !c.module) return {"missing module flatness witness"};
            if (c.flatness->side != Side::left)
                defects.push_back("module evidence must certify the left leg of M");
            verify_flatness(*c.module, *c.flatness, budget, defects);
            break;
        case EvidenceKind::right_ff_dual_module: {
            if (!c.flatness || !c.module) return {"missing module flatness witness"};
            if (c.flatness->side != Side::right)
                defects.push_back("dual evidence must certify the right leg of the dual");
            DualModule dual = dual_module(*c.module);
            verify_flatness(dual.module, *c.flatness, budget, defects);
            break;
        }
    }
    return defects;
}

AdjunctionUnitReport adjunction_unit_check(const Extension& i, u64 budget) {
    const FiniteAlgebra& b = i.source();
    const FiniteAlgebra& s = i.target();
    const PrimeField& f = s.field();
    Bimodule sb = extension_bimodule_sb(i);
    AdjunctionUnitReport rep;
    for (const Subspace& ideal : left_ideals(b, budget)) {
        if (ideal.dim() == b.dim()) continue;
        QuotientModule x = quotient_left_module(b, ideal);
        u32 nx = x.module.dim();
        Comodule y = comparison_comodule(i, x.module);
        Subspace eq = comodule_equalizer(y);
        // The carrier presentation is the deterministic quotient of
        // S (x) X, so the unit column 1 (x) e_t is reproducible here.
        TensorQuotient sx = tensor_over(sb, x.module);
        Matrix unit(y.carrier.dim(), nx, f);
        for (u32 t = 0; t < nx; ++t) unit.set_col(t, sx.pure2(s.unit(), unit_vec(nx, t)));
        std::string tag = "cyclic module of dim " + std::to_string(nx);
        bool into = true;
        for (u32 t = 0; t < nx && into; ++t)
            if (!eq.contains(unit.col(t))) {
                rep.failures.push_back(tag + ": unit image leaves the invariants");
                into = false;
            }
        if (into && unit.rank() != nx)
            rep.failures.push_back(tag + ": unit is not injective");
        else if (into && eq.dim() != nx)
            rep.failures.push_back(tag + ": invariants have dim " + std::to_string(eq.dim()));
        ++rep.modules_checked;
    }
    return rep;
}

}  // namespace descent
