// The monoid of B-subbimodules of a ring extension i : B -> S and its
// translation into endomorphisms of the canonical coring S (x)_B S.
//
// For a subbimodule I the two multiplication maps
//     m^l_I : S (x)_B I -> S,  s (x) v -> s v
//     m^r_I : I (x)_B S -> S,  v (x) s -> v s
// classify I as left- resp. right-invertible when bijective. Left-invertible
// subbimodules act on the canonical coring through the composite
//     gamma(I) = (1 (x) m^r_I) o ((m^l_I)^{-1} (x) 1),
// right-invertible ones through the reversed composite gamma_prime(I); both
// produce coring endomorphisms. The passage back sends an endomorphism g to
//     J(g)  = { s in S : g(s (x) 1) = 1 (x) s }        (left)
//     J'(g) = { s in S : s (x) 1 = g(1 (x) s) }        (right),
// always a subbimodule. verify_gamma_iso measures, on a concrete instance,
// how far these assignments are mutually inverse monoid (anti)morphisms.
#pragma once

#include "descent_forge/coring.hpp"

namespace descent {

inline constexpr u64 default_subspace_budget = 1'000'000;
inline constexpr u64 default_endo_budget = u64(1) << 20;
// Sentinel for "not in the indexed list" in witness tables.
inline constexpr u32 no_index = 0xffffffffu;

enum class Side { left, right };

struct SubBimodule {
    Extension base;  // i : B -> S
    Subspace space;  // subspace of S, canonical RREF basis
    bool operator==(const SubBimodule&) const = default;
};

// Closure of the subspace under both B-actions through i, checked on basis
// pairs. Empty result iff the subspace is a subbimodule.
std::vector<std::string> validate_subbimodule(const SubBimodule& I);

// The unit of the subbimodule monoid: i(B) as a subspace of S.
SubBimodule unit_subbimodule(const Extension& i);

// I as a (B,B)-bimodule on the coordinates of its canonical basis.
Bimodule subbimodule_as_bimodule(const SubBimodule& I);

// All subspaces of S closed under both actions, in the canonical subspace
// order. Throws BudgetError when the number of subspaces of S exceeds the
// budget, Error when i is not injective.
std::vector<SubBimodule> enumerate_subbimodules(const Extension& i,
                                                u64 budget = default_subspace_budget);

// Span of the pairwise products of basis elements (equals the span of all
// element products by bilinearity).
SubBimodule subbimodule_product(const SubBimodule& a, const SubBimodule& b);

// The multiplication maps of a subbimodule on their tensor-quotient domains.
struct MMaps {
    TensorQuotient si;  // S (x)_B I
    TensorQuotient is;  // I (x)_B S
    Matrix left;        // dim(S) x si.dim(),  s (x) v -> s v
    Matrix right;       // dim(S) x is.dim(),  v (x) s -> v s
    bool left_invertible = false;
    bool right_invertible = false;
};
MMaps m_maps(const SubBimodule& I);

// The full subbimodule monoid of an extension: every element, the product
// table, and the classification by invertibility of the multiplication maps.
struct SubBimoduleMonoid {
    std::vector<SubBimodule> elements;  // canonical order; includes 0 and i(B)
    MonoidTable table;                  // products; identity = index of i(B)
    std::vector<u32> left;              // indices with m^l bijective
    std::vector<u32> right;             // indices with m^r bijective
    std::vector<u32> invertible;        // two-sided inverse exists in the table
};
SubBimoduleMonoid subbimodule_monoid(const Extension& i,
                                     u64 budget = default_subspace_budget);

// Endomorphism of the canonical coring attached to a left-invertible
// subbimodule; throws Error when m^l is not bijective, InternalError when the
// result fails the coring-morphism laws.
Matrix gamma(const SweedlerCoring& sc, const SubBimodule& I);
// The reversed composite for a right-invertible subbimodule.
Matrix gamma_prime(const SweedlerCoring& sc, const SubBimodule& I);

// J(g) (left) or J'(g) (right) as a verified subbimodule.
SubBimodule j_of(const SweedlerCoring& sc, const Matrix& g, Side side);

// Four independently computed conditions on a coring endomorphism g, each
// detecting whether descent along i recovers J(g):
//   (a) m^l of J(g) is bijective;
//   (b) the evaluation S (x)_B R(Y) -> Y, s (x) y -> s y, is bijective for
//       the twisted comodule Y = (S, s -> g(s (x) 1)) with invariants R(Y);
//   (c) tensoring the equalizer J(g) -> S => S (x)_B S with S (x)_B -
//       again yields an equalizer;
//   (d) the tensored inclusion S (x)_B J(g) -> S (x)_B S stays injective.
// These are equivalent for every coring endomorphism; the report computes
// each from scratch and records whether they agree, together with two exact
// identities: the invariants of the twist coincide with J(g), and the
// evaluation map of (b) equals m^l of J(g) entrywise.
struct DescentConditions {
    SubBimodule j;
    bool j_left_invertible = false;
    bool counit_component_bijective = false;
    bool equalizer_preserved = false;
    bool tensored_inclusion_injective = false;
    bool agree = false;
    bool twist_equalizer_equals_j = false;
    bool counit_is_left_multiplication = false;
};
DescentConditions descent_conditions(const SweedlerCoring& sc, const Matrix& g);

// Joint witness for the translation between subbimodules and coring
// endomorphisms on one instance. side selects gamma on the left-invertible
// elements (products preserved, backward table via J) or gamma_prime on the
// right-invertible ones (products reversed, backward table via J').
struct GammaWitness {
    Side side = Side::left;
    SubBimoduleMonoid monoid;
    std::vector<u32> domain;    // monoid indices: left or right invertibles
    std::vector<Matrix> endos;  // all coring endomorphisms, canonical order
    MonoidTable endo_table;
    std::vector<u32> forward;   // per domain element: index into endos
    std::vector<u32> backward;  // per endo: position in domain, or no_index
    bool unit_to_identity = false;
    // gamma: G(ab) = G(a) G(b); gamma_prime: G(ab) = G(b) G(a); includes
    // closure of the domain under products.
    bool respects_products = false;
    // forward is a bijection onto endos and backward o forward = identity.
    bool bijective = false;
    // No strict inclusion of subbimodules becomes bijective after applying
    // S (x)_B - (left) resp. - (x)_B S (right).
    bool tensor_reflects_inclusions = false;
    std::vector<std::string> counterexamples;
};
GammaWitness verify_gamma_iso(const SweedlerCoring& sc, const SubBimoduleMonoid& monoid,
                              const std::vector<Matrix>& endos, Side side = Side::left);
GammaWitness verify_gamma_iso(const Extension& i,
                              u64 subspace_budget = default_subspace_budget,
                              u64 endo_budget = default_endo_budget,
                              Side side = Side::left);

// The group of invertible subbimodules and the restriction of gamma to it.
struct InvWitness {
    std::vector<u32> inv;         // indices into monoid.elements
    MonoidTable group;            // restricted product table
    std::vector<u32> inverse_of;  // per group element, position within inv
    // Whether the invertibles coincide with left-invertible /\ right-invertible.
    bool matches_left_cap_right = false;
    std::vector<u32> automorphisms;  // endo indices invertible in the monoid
    std::vector<u32> forward;        // per inv element: endo index, or no_index
    bool into_automorphisms = false;
    bool bijective = false;  // forward is a bijection onto the automorphisms
    std::vector<std::string> counterexamples;
};
InvWitness inv_group(const SweedlerCoring& sc, const SubBimoduleMonoid& monoid,
                     const std::vector<Matrix>& endos);
InvWitness inv_group(const Extension& i,
                     u64 subspace_budget = default_subspace_budget,
                     u64 endo_budget = default_endo_budget);

// --- Endomorphism-algebra (comatrix) translation ----------------------------
//
// When S = End_A(M) for a (B,A)-bimodule M with M_A finitely generated
// projective, subbimodules of S also act on the coring M* (x)_B M:
// decomposing (m^l_I)^{-1}(1) = sum_t x_t (x) y_t inside S (x)_B I gives
//     gamma0(I)(f (x) m) = sum_t (f o x_t) (x) y_t(m),
// and the right-sided variant uses (m^r_I)^{-1}(1) = sum_t y_t (x) x_t with
//     f (x) m -> sum_t (f o y_t) (x) x_t(m).

// Endomorphism of the comatrix coring attached to I; Error when the required
// multiplication map is not bijective, when I belongs to a different
// extension, or when B does not embed into End_A(M).
Matrix gamma0(const ComatrixCoring& cc, const SubBimodule& I, Side side);

// Transport of a comatrix-coring endomorphism to the canonical coring of
// B -> End_A(M) by conjugation with the evaluation isomorphism
// xi : M (x)_A M* -> S on both tensor legs. Verified coring endomorphism.
Matrix hat_map(const SweedlerCoring& sc, const ComatrixCoring& cc, const Matrix& g);

// gamma(I) = hat_map(gamma0(I)) for every left-invertible I; violations are
// listed with the offending element.
struct TriangleReport {
    u32 checked = 0;
    std::vector<std::string> violations;
};
TriangleReport triangle_check(const SweedlerCoring& sc, const ComatrixCoring& cc,
                              u64 budget = default_subspace_budget);

}  // namespace descent
