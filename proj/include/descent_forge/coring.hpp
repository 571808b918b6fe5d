// Corings over a finite-dimensional algebra and their comodules.
//
// A coring over R is an (R,R)-bimodule C with a coassociative
// comultiplication Delta : C -> C (x)_R C and a counit eps : C -> R, both
// bimodule maps. The canonical example here: for a ring extension i : B -> S,
// the carrier S (x)_B S with
//     Delta(s (x) s') = (s (x) 1) (x)_S (1 (x) s'),   eps(s (x) s') = s s'.
// Comodules over that coring are the same thing as descent data for i.
#pragma once

#include "descent_forge/endalg.hpp"

namespace descent {

struct Coring {
    Bimodule carrier;       // C as an (R,R)-bimodule
    TensorQuotient square;  // C (x)_R C
    Matrix comult;          // square.dim x carrier.dim
    Matrix counit;          // R.dim x carrier.dim

    const FiniteAlgebra& ring() const { return carrier.left_alg(); }
};

// Structural checks, each returning human-readable defects (empty iff ok).
// validate_coring_maps: comult and counit are bimodule maps.
// validate_counit_laws: both triangle identities (eps (x) 1) Delta = id and
//   (1 (x) eps) Delta = id, computed through the square quotient.
// validate_coassociativity: (Delta (x) 1) Delta = (1 (x) Delta) Delta on the
//   materialized triple product; cost grows with carrier.dim^3, intended for
//   small carriers.
std::vector<std::string> validate_coring_maps(const Coring& c);
std::vector<std::string> validate_counit_laws(const Coring& c);
std::vector<std::string> validate_coassociativity(const Coring& c);
std::vector<std::string> validate_coring(const Coring& c);

// Defects of a linear endomorphism g of the carrier as a coring morphism:
// bimodule-map laws, counit preservation (eps g = eps), and compatibility
// with comultiplication (Delta g = (g (x) g) Delta through the square
// quotient). Empty result iff g is a coring endomorphism.
std::vector<std::string> validate_coring_morphism(const Coring& c, const Matrix& g);

// The canonical coring of an extension i : B -> S on S (x)_B S.
struct SweedlerCoring {
    Extension base;
    TensorQuotient t2;  // S (x)_B S, the carrier's presentation
    TensorQuotient t3;  // S (x)_B S (x)_B S
    TensorQuotient t4;  // S (x)_B S (x)_B S (x)_B S
    Coring coring;
    // The canonical isomorphism (S(x)_B S) (x)_S (S(x)_B S) = S(x)_B S(x)_B S,
    // (s (x) t) (x) (u (x) v) -> s (x) tu (x) v, and its inverse.
    Matrix square_to_t3;
    Matrix t3_to_square;
};
SweedlerCoring build_sweedler(const Extension& i);
// Same guarantees as validate_coring, but coassociativity is checked through
// the chain spaces t3/t4 instead of the cubed carrier, keeping the cost at
// dim(S)^4 even when the carrier is large.
std::vector<std::string> validate_sweedler(const SweedlerCoring& sc);

// The coring of a (B,A)-bimodule M with M_A finitely generated projective:
// carrier M* (x)_B M over A,
//     Delta(f (x) m) = sum_t (f (x) m_t) (x) (f_t (x) m),
//     eps(f (x) m) = f(m),
// with (m_t, f_t) a dual basis.
struct ComatrixCoring {
    Bimodule module;         // M
    EndAlgebra end;          // S = End_A(M) with xi and the dual module
    TensorQuotient mstar_m;  // M* (x)_B M, the carrier's presentation
    Coring coring;
};
ComatrixCoring build_comatrix(const Bimodule& m);

// --- Comodules ------------------------------------------------------------
//
// For the canonical coring of i : B -> S, a comodule is a left S-module Y
// with an S-linear coaction theta : Y -> S (x)_B Y such that multiplying
// back gives the identity and
//     (S (x) theta) theta = (S (x) eta) theta,   eta(y) = 1 (x) y.

struct Comodule {
    Extension base;
    Bimodule carrier;   // Y as a left S-module (trivial right action)
    TensorQuotient sy;  // S (x)_B Y
    TensorQuotient ssy; // S (x)_B S (x)_B Y
    Matrix coaction;    // sy.dim x carrier.dim
    Matrix eta;         // sy.dim x carrier.dim, y -> 1 (x) y
};
std::vector<std::string> validate_comodule(const Comodule& c);

// The comparison comodule S (x)_B X of a left B-module X, with coaction
// s (x) x -> s (x) (1 (x) x).
Comodule comparison_comodule(const Extension& i, const Bimodule& x);

// Descended invariants R(Y) = { y : theta(y) = 1 (x) y }, as a subspace of
// the carrier and as a left B-module on that subspace.
Subspace comodule_equalizer(const Comodule& c);
Bimodule equalizer_module(const Comodule& c, const Subspace& eq);

// S itself with the coaction s -> g(s (x) 1) induced by a linear
// endomorphism g of the canonical carrier. Valid comodules arise only for
// special g; run validate_comodule on the result.
Comodule twist_comodule(const SweedlerCoring& sc, const Matrix& g);

// --- Endomorphism monoid ----------------------------------------------------

struct MonoidTable {
    u32 size = 0;
    u32 identity = 0;        // index of the neutral element
    std::vector<u32> table;  // table[i*size+j] = index of element_i * element_j
    u32 at(u32 i, u32 j) const { return table[size_t(i) * size + j]; }
};
// Defects of the closed composition data: identity laws and associativity.
std::vector<std::string> validate_monoid(const MonoidTable& t);

// All coring endomorphisms of c: bimodule endomorphisms g of the carrier
// with eps g = eps and Delta g = (g (x) g) Delta. The linear conditions are
// solved exactly; the affine solution space is then enumerated and filtered
// by the quadratic condition. Throws BudgetError when the space holds more
// than max_candidates points. Results are sorted by matrix entries.
std::vector<Matrix> coring_endomorphisms(const Coring& c, u64 max_candidates = u64(1) << 20);

// Composition table of a finite set of maps, product table[i][j] = m_i o m_j.
// Throws InternalError when the set is not closed or lacks the identity.
MonoidTable composition_table(const std::vector<Matrix>& elements);

// Indices of the elements invertible inside the monoid (two-sided).
std::vector<u32> invertible_elements(const MonoidTable& t);

}  // namespace descent
